//! Seeded property suites for the table, the translations and the
//! polarities.
//!
//! Every randomized trial draws from its own ChaCha stream (seed, suite tag,
//! trial index), so a report is identical whichever [`Exec`] runs it. The
//! first failing trial by index is shrunk greedily by dropping set members.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boxes::{FactorBox, TraitBox, ValueSet};
use crate::domain::{CattellProfile, Factor, Signature, SzondiProfile, TraitId, TraitValue};
use crate::exec::Exec;
use crate::galois::{GaloisConnection, Subspace};
use crate::lpl;
use crate::translation::{spp_formula, spp_set_formula, GlobalFactor, Reversal};

/// Traits whose low-range boxes mirror their high-range boxes under
/// signature flip.
pub const MIRRORED_TRAITS: [TraitId; 23] = {
    use TraitId::*;
    [
        A, B, C, E, F, G, H, I, L, M, N, O, Q1, Q2, Q4, PS, HC, ST, AD, SR, AW, TS, TI,
    ]
};

/// Column pairs whose cells coincide for every trait.
pub const COLLAPSED_COLUMNS: [(u8, u8); 3] = [(3, 4), (5, 6), (7, 8)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    /// Number of cases examined.
    pub trials: usize,
    /// How many of those exercised the non-trivial side of the property.
    pub witnessed: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS {} ({} cases, {} non-trivial)",
                self.name, self.trials, self.witnessed
            ),
            Some(msg) => write!(f, "FAIL {} ({} cases): {}", self.name, self.trials, msg),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub trials: usize,
    pub seed: u64,
    pub reversal: Reversal,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            trials: 1000,
            seed: 42,
            reversal: Reversal::AsPrinted,
        }
    }
}

/// Runs every suite. With zero trials nothing runs and the report is empty.
pub fn run_all(conn: &GaloisConnection<'_>, cfg: &CheckConfig) -> Vec<SuiteReport> {
    if cfg.trials == 0 {
        return Vec::new();
    }
    let (n, seed) = (cfg.trials, cfg.seed);
    let oracle_trials = n.div_ceil(10);
    vec![
        table_checksum(conn),
        signature_order(),
        column_collapse(conn),
        polarity_symmetry(conn),
        galois_biconditional(conn, n, seed),
        antitone(conn, n, seed),
        inflationary(conn, n, seed),
        polarity_identities(conn, n, seed),
        right_oracle(conn, oracle_trials, seed),
        left_oracle(conn, oracle_trials, seed),
        fact_monotone(conn, n, seed),
        spp_injective(n, seed),
        ppp_not_injective(conn),
        profile_entailment(conn, n, seed),
        global_factors(conn, n, seed, cfg.reversal),
        box_algebra(n, seed),
    ]
}

pub(crate) fn trial_rng(seed: u64, tag: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(trial);
    rng
}

/// Runs `trials` generated inputs through `check`. `check` returns
/// `Ok(true)` for a non-trivial pass, `Ok(false)` for a vacuous one and
/// `Err(description)` on violation.
#[allow(clippy::too_many_arguments)]
fn run_trials<I, G, C, S>(
    exec: Exec,
    name: &'static str,
    tag: u64,
    trials: usize,
    seed: u64,
    generate: G,
    check: C,
    shrink: S,
) -> SuiteReport
where
    I: Clone + Send,
    G: Fn(&mut ChaCha8Rng) -> I + Sync + Send,
    C: Fn(&I) -> Result<bool, String> + Sync + Send,
    S: Fn(&I) -> Vec<I>,
{
    let outcomes = exec.map_range(trials as u64, |i| {
        let input = generate(&mut trial_rng(seed, tag, i));
        match check(&input) {
            Ok(false) => 0u8,
            Ok(true) => 1,
            Err(_) => 2,
        }
    });
    let witnessed = outcomes.iter().filter(|&&o| o == 1).count();
    let failure = outcomes.iter().position(|&o| o >= 2).map(|i| {
        let mut input = generate(&mut trial_rng(seed, tag, i as u64));
        'shrink: loop {
            for smaller in shrink(&input) {
                if check(&smaller).is_err() {
                    input = smaller;
                    continue 'shrink;
                }
            }
            break;
        }
        format!(
            "trial {i}: {}",
            check(&input).expect_err("shrinking keeps the violation")
        )
    });
    SuiteReport {
        name,
        trials,
        witnessed,
        failure,
    }
}

fn no_shrink<I>(_: &I) -> Vec<I> {
    Vec::new()
}

/// Random profiles, mixed between uniform draws and draws near an anchor
/// pair of mutually consistent profiles, so that polarity images are
/// sometimes non-empty.
#[derive(Debug, Clone, Copy)]
pub struct ProfileSampler {
    anchor_spp: SzondiProfile,
    anchor_ppp: TraitBox,
}

impl ProfileSampler {
    /// Anchors on the all-zero Szondi profile and its left polarity.
    pub fn new(conn: &GaloisConnection<'_>) -> ProfileSampler {
        let anchor_spp = SzondiProfile::uniform(Signature::Zero);
        let left = conn.left_polarity(&[anchor_spp]);
        ProfileSampler {
            anchor_spp,
            anchor_ppp: if left.is_empty() {
                TraitBox::full()
            } else {
                left
            },
        }
    }

    pub fn uniform_spp<R: Rng>(rng: &mut R) -> SzondiProfile {
        SzondiProfile::new(std::array::from_fn(|_| {
            *Signature::ALL.choose(rng).expect("non-empty")
        }))
    }

    pub fn uniform_ppp<R: Rng>(rng: &mut R) -> CattellProfile {
        CattellProfile::new(std::array::from_fn(|_| uniform_value(rng)))
    }

    pub fn spp<R: Rng>(&self, rng: &mut R) -> SzondiProfile {
        match rng.gen_range(0..3) {
            0 => Self::uniform_spp(rng),
            1 => self.anchor_spp,
            _ => {
                let mut p = self.anchor_spp;
                let g = *Factor::ALL.choose(rng).expect("non-empty");
                p.set(g, *Signature::ALL.choose(rng).expect("non-empty"));
                p
            }
        }
    }

    pub fn ppp<R: Rng>(&self, rng: &mut R) -> CattellProfile {
        match rng.gen_range(0..3) {
            0 => Self::uniform_ppp(rng),
            1 => self.anchored_ppp(rng),
            _ => {
                let mut f = self.anchored_ppp(rng);
                let t = *TraitId::ALL.choose(rng).expect("non-empty");
                f.set(t, uniform_value(rng));
                f
            }
        }
    }

    /// A uniform member of the anchor's left polarity.
    pub fn anchored_ppp<R: Rng>(&self, rng: &mut R) -> CattellProfile {
        CattellProfile::new(std::array::from_fn(|i| {
            let allowed: Vec<TraitValue> =
                self.anchor_ppp.allowed(TraitId::ALL[i]).iter().collect();
            *allowed.choose(rng).expect("anchor box is non-empty")
        }))
    }

    /// Up to `max` profiles; half of the sets consist of the anchor only.
    pub fn spp_set<R: Rng>(&self, rng: &mut R, max: usize) -> Vec<SzondiProfile> {
        let n = rng.gen_range(0..=max);
        if rng.gen_bool(0.5) {
            vec![self.anchor_spp; n.min(1)]
        } else {
            (0..n).map(|_| self.spp(rng)).collect()
        }
    }

    /// Up to `max` profiles; half of the sets are drawn from the anchor's
    /// left polarity only.
    pub fn ppp_set<R: Rng>(&self, rng: &mut R, max: usize) -> Vec<CattellProfile> {
        let n = rng.gen_range(0..=max);
        if rng.gen_bool(0.5) {
            (0..n).map(|_| self.anchored_ppp(rng)).collect()
        } else {
            (0..n).map(|_| self.ppp(rng)).collect()
        }
    }
}

fn uniform_value<R: Rng>(rng: &mut R) -> TraitValue {
    TraitValue::new(rng.gen_range(1..=10)).expect("in range")
}

/// Profile sets plus optional supersets, shrunk by dropping members.
#[derive(Debug, Clone, Default)]
struct Sets {
    ppp: Vec<CattellProfile>,
    ppp_extra: Vec<CattellProfile>,
    spp: Vec<SzondiProfile>,
    spp_extra: Vec<SzondiProfile>,
}

impl Sets {
    fn ppp_union(&self) -> Vec<CattellProfile> {
        self.ppp.iter().chain(&self.ppp_extra).copied().collect()
    }

    fn spp_union(&self) -> Vec<SzondiProfile> {
        self.spp.iter().chain(&self.spp_extra).copied().collect()
    }

    fn shrink(&self) -> Vec<Sets> {
        let mut out = Vec::new();
        for i in 0..self.ppp.len() {
            let mut s = self.clone();
            s.ppp.remove(i);
            out.push(s);
        }
        for i in 0..self.ppp_extra.len() {
            let mut s = self.clone();
            s.ppp_extra.remove(i);
            out.push(s);
        }
        for i in 0..self.spp.len() {
            let mut s = self.clone();
            s.spp.remove(i);
            out.push(s);
        }
        for i in 0..self.spp_extra.len() {
            let mut s = self.clone();
            s.spp_extra.remove(i);
            out.push(s);
        }
        out
    }
}

impl fmt::Display for Sets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |items: Vec<String>| format!("{{{}}}", items.join(", "));
        write!(
            f,
            "F = {}, F+ = {}, P = {}, P+ = {}",
            list(self.ppp.iter().map(|x| x.to_string()).collect()),
            list(self.ppp_extra.iter().map(|x| x.to_string()).collect()),
            list(self.spp.iter().map(|x| x.to_string()).collect()),
            list(self.spp_extra.iter().map(|x| x.to_string()).collect()),
        )
    }
}

/// The loaded table is the built-in one.
pub fn table_checksum(conn: &GaloisConnection<'_>) -> SuiteReport {
    let table = conn.table();
    SuiteReport {
        name: "table-checksum",
        trials: 1,
        witnessed: 1,
        failure: (!table.is_standard()).then(|| {
            format!(
                "checksum {} differs from the built-in table",
                table.checksum()
            )
        }),
    }
}

/// Exhaustive partial-order laws for the signature order and its flip.
pub fn signature_order() -> SuiteReport {
    let all = Signature::ALL;
    let mut failure = None;
    let mut pairs = 0;
    'outer: for &a in &all {
        for &b in &all {
            if a.leq(b) {
                pairs += 1;
            }
            if a.leq(b) && b.leq(a) && a != b {
                failure = Some(format!("antisymmetry fails for {a}, {b}"));
                break 'outer;
            }
            if a.leq(b) != b.flip().leq(a.flip()) {
                failure = Some(format!("flip does not reverse {a} <= {b}"));
                break 'outer;
            }
            for &c in &all {
                if a.leq(b) && b.leq(c) && !a.leq(c) {
                    failure = Some(format!("transitivity fails for {a}, {b}, {c}"));
                    break 'outer;
                }
            }
        }
        if !a.leq(a) || a.flip().flip() != a {
            failure = Some(format!("reflexivity or involution fails at {a}"));
            break;
        }
    }
    if failure.is_none() && pairs != 51 {
        failure = Some(format!("{pairs} comparable ordered pairs, expected 51"));
    }
    SuiteReport {
        name: "signature-order",
        trials: all.len().pow(3),
        witnessed: pairs,
        failure,
    }
}

/// Columns 3/4, 5/6 and 7/8 hold equivalent formulas for every trait.
pub fn column_collapse(conn: &GaloisConnection<'_>) -> SuiteReport {
    let table = conn.table();
    let mut cases = 0;
    let mut failure = None;
    'outer: for t in TraitId::ALL {
        for (a, b) in COLLAPSED_COLUMNS {
            cases += 1;
            let va = TraitValue::new(a as i64).expect("in range");
            let vb = TraitValue::new(b as i64).expect("in range");
            let (fa, fb) = (table.trait_formula(t, va), table.trait_formula(t, vb));
            match lpl::equivalent(fa, fb) {
                Ok(true) => {}
                Ok(false) => {
                    failure = Some(format!(
                        "({t},{a}) = {fa} is not equivalent to ({t},{b}) = {fb}"
                    ));
                    break 'outer;
                }
                Err(e) => {
                    failure = Some(format!("({t},{a}) vs ({t},{b}): {e}"));
                    break 'outer;
                }
            }
        }
    }
    SuiteReport {
        name: "column-collapse",
        trials: cases,
        witnessed: cases,
        failure,
    }
}

/// Low-range boxes are the flipped high-range boxes, column `k` against `11 - k`.
pub fn polarity_symmetry(conn: &GaloisConnection<'_>) -> SuiteReport {
    let mut cases = 0;
    let mut failure = None;
    'outer: for t in MIRRORED_TRAITS {
        for k in 1..=4 {
            cases += 1;
            let low = TraitValue::new(k).expect("in range");
            let high = TraitValue::new(11 - k).expect("in range");
            let (lb, hb) = (conn.cell_box(t, low), conn.cell_box(t, high));
            if *lb != hb.flip() {
                failure = Some(format!(
                    "({t},{low}) = {} is not the flip of ({t},{high}) = {}",
                    conn.table().trait_formula(t, low),
                    conn.table().trait_formula(t, high)
                ));
                break 'outer;
            }
        }
    }
    SuiteReport {
        name: "polarity-symmetry",
        trials: cases,
        witnessed: cases,
        failure,
    }
}

/// `P ⊆ →G F` iff `F ⊆ ←G P`, for sets of at most three profiles.
pub fn galois_biconditional(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    run_trials(
        conn.exec(),
        "galois-biconditional",
        1,
        trials,
        seed,
        |rng| Sets {
            ppp: sampler.ppp_set(rng, 3),
            spp: sampler.spp_set(rng, 3),
            ..Sets::default()
        },
        |s| {
            let right = conn.right_polarity(&s.ppp);
            let left = conn.left_polarity(&s.spp);
            let p_in_right = s.spp.iter().all(|p| right.contains(p));
            let f_in_left = s.ppp.iter().all(|f| left.contains(f));
            if p_in_right != f_in_left {
                return Err(format!(
                    "P ⊆ →G F is {p_in_right} but F ⊆ ←G P is {f_in_left} for {s}"
                ));
            }
            Ok(p_in_right && !s.ppp.is_empty() && !s.spp.is_empty())
        },
        Sets::shrink,
    )
}

/// Both polarities reverse inclusion.
pub fn antitone(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    run_trials(
        conn.exec(),
        "antitone",
        2,
        trials,
        seed,
        |rng| {
            let ppp = sampler.ppp_set(rng, 3);
            let spp = sampler.spp_set(rng, 3);
            let extra_f = rng.gen_range(1..=2);
            let extra_p = rng.gen_range(1..=2);
            Sets {
                ppp,
                ppp_extra: (0..extra_f).map(|_| sampler.ppp(rng)).collect(),
                spp,
                spp_extra: (0..extra_p).map(|_| sampler.spp(rng)).collect(),
            }
        },
        |s| {
            let (r_small, r_big) = (
                conn.right_polarity(&s.ppp),
                conn.right_polarity(&s.ppp_union()),
            );
            if !r_big.is_subset(&r_small) {
                return Err(format!("→G F+ is not inside →G F for {s}"));
            }
            let (l_small, l_big) = (
                conn.left_polarity(&s.spp),
                conn.left_polarity(&s.spp_union()),
            );
            if !l_big.is_subset(&l_small) {
                return Err(format!("←G P+ is not inside ←G P for {s}"));
            }
            Ok(!r_big.is_empty() || !l_big.is_empty())
        },
        Sets::shrink,
    )
}

/// Both closures contain their argument.
pub fn inflationary(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    run_trials(
        conn.exec(),
        "inflationary",
        3,
        trials,
        seed,
        |rng| Sets {
            ppp: sampler.ppp_set(rng, 3),
            spp: sampler.spp_set(rng, 3),
            ..Sets::default()
        },
        |s| {
            let cs = conn.closure_spp(&s.spp);
            if let Some(p) = s.spp.iter().find(|p| !cs.contains(p)) {
                return Err(format!("{p} is outside →G(←G P) for {s}"));
            }
            let cf = conn.closure_ppp(&s.ppp);
            if let Some(f) = s.ppp.iter().find(|f| !cf.contains(f)) {
                return Err(format!("{f} is outside ←G(→G F) for {s}"));
            }
            Ok(!cs.is_full() || !cf.is_empty())
        },
        Sets::shrink,
    )
}

/// `→G ←G →G F = →G F`, `←G →G ←G P = ←G P`, and unions go to intersections.
pub fn polarity_identities(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    run_trials(
        conn.exec(),
        "polarity-identities",
        4,
        trials,
        seed,
        |rng| Sets {
            ppp: sampler.ppp_set(rng, 3),
            ppp_extra: sampler.ppp_set(rng, 2),
            spp: sampler.spp_set(rng, 3),
            spp_extra: sampler.spp_set(rng, 2),
        },
        |s| {
            let right = conn.right_polarity(&s.ppp);
            if conn.right_polarity_of_box(&conn.left_polarity_of_box(&right)) != right {
                return Err(format!("→G←G→G F differs from →G F for {s}"));
            }
            let left = conn.left_polarity(&s.spp);
            if conn.left_polarity_of_box(&conn.right_polarity_of_box(&left)) != left {
                return Err(format!("←G→G←G P differs from ←G P for {s}"));
            }
            let union = conn.right_polarity(&s.ppp_union());
            let meet = right.intersect(&conn.right_polarity(&s.ppp_extra));
            if union != meet {
                return Err(format!("→G(F ∪ F+) differs from →G F ∩ →G F+ for {s}"));
            }
            let union = conn.left_polarity(&s.spp_union());
            let meet = left.intersect(&conn.left_polarity(&s.spp_extra));
            if union != meet {
                return Err(format!("←G(P ∪ P+) differs from ←G P ∩ ←G P+ for {s}"));
            }
            Ok(!right.is_empty() && !s.ppp.is_empty())
        },
        Sets::shrink,
    )
}

/// Box right polarity agrees with subspace enumeration over `{-,0,+}^8`.
pub fn right_oracle(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    let sub = Subspace::sign_cube(TraitBox::full()).expect("non-empty cube");
    // enumeration inside each trial runs sequentially; trials run on `exec`
    let inner = conn.clone().with_exec(Exec::Sequential);
    run_trials(
        conn.exec(),
        "right-oracle",
        5,
        trials,
        seed,
        |rng| Sets {
            ppp: sampler.ppp_set(rng, 2),
            ..Sets::default()
        },
        |s| {
            let boxed: Vec<SzondiProfile> = conn
                .right_polarity(&s.ppp)
                .intersect(sub.spp())
                .members()
                .collect();
            let oracle = inner
                .right_polarity_oracle(&s.ppp, &sub)
                .map_err(|e| format!("oracle failed: {e}"))?;
            if boxed != oracle {
                return Err(format!(
                    "box gives {} profiles, enumeration gives {} for {s}",
                    boxed.len(),
                    oracle.len()
                ));
            }
            Ok(!oracle.is_empty() && !s.ppp.is_empty())
        },
        Sets::shrink,
    )
}

/// Per-trait left polarity agrees with per-cell entailment scans, and with
/// enumeration over a small Cattell subspace.
pub fn left_oracle(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    let inner = conn.clone().with_exec(Exec::Sequential);
    run_trials(
        conn.exec(),
        "left-oracle",
        6,
        trials,
        seed,
        |rng| {
            // three traits widened to three values each around a sampled base
            let base = sampler.ppp(rng);
            let mut allowed = TraitBox::singleton(&base).allowed_sets();
            for t in TraitId::ALL.choose_multiple(rng, 3) {
                allowed[t.index()] = (0..3).map(|_| uniform_value(rng)).collect::<ValueSet>();
                allowed[t.index()].insert(base.get(*t));
            }
            (
                Sets {
                    spp: sampler.spp_set(rng, 3),
                    ..Sets::default()
                },
                TraitBox::from_allowed(allowed),
            )
        },
        |(s, region)| {
            let scan = inner
                .left_allowed_oracle(&s.spp)
                .map_err(|e| format!("oracle failed: {e}"))?;
            let fast = conn.left_allowed_sets(&s.spp);
            if let Some(t) = TraitId::ALL
                .into_iter()
                .find(|t| scan[t.index()] != fast[t.index()])
            {
                return Err(format!(
                    "trait {t}: box gives {:?}, entailment scan gives {:?} for {s}",
                    fast[t.index()],
                    scan[t.index()]
                ));
            }
            let sub = Subspace::new(FactorBox::full(), *region).map_err(|e| e.to_string())?;
            let listed = inner
                .left_polarity_oracle(&s.spp, &sub)
                .map_err(|e| format!("oracle failed: {e}"))?;
            let boxed: Vec<CattellProfile> = conn
                .left_polarity(&s.spp)
                .intersect(region)
                .members()
                .collect();
            if listed != boxed {
                return Err(format!(
                    "box gives {} profiles, enumeration gives {} in {region:?} for {s}",
                    boxed.len(),
                    listed.len()
                ));
            }
            Ok(!listed.is_empty() && !s.spp.is_empty())
        },
        |(s, region)| s.shrink().into_iter().map(|x| (x, *region)).collect(),
    )
}

/// Larger Cattell sets give stronger formulas; larger Szondi sets weaker ones.
pub fn fact_monotone(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    let table = conn.table();
    run_trials(
        conn.exec(),
        "translation-monotone",
        7,
        trials,
        seed,
        |rng| {
            let ppp = sampler.ppp_set(rng, 2);
            let room = 3 - ppp.len();
            let ppp_extra = (0..rng.gen_range(1..=room))
                .map(|_| sampler.ppp(rng))
                .collect();
            Sets {
                ppp,
                ppp_extra,
                spp: sampler.spp_set(rng, 3),
                spp_extra: (0..rng.gen_range(1..=2))
                    .map(|_| sampler.spp(rng))
                    .collect(),
            }
        },
        |s| {
            let strong = table.ppp_set_formula(&s.ppp_union());
            let weak = table.ppp_set_formula(&s.ppp);
            match lpl::entails(&strong, &weak) {
                Ok(true) => {}
                Ok(false) => return Err(format!("f(F+) does not entail f(F) for {s}")),
                Err(e) => return Err(format!("f(F+) ⇒ f(F): {e} for {s}")),
            }
            let small = spp_set_formula(&s.spp);
            let big = spp_set_formula(&s.spp_union());
            match lpl::entails(&small, &big) {
                Ok(true) => {}
                Ok(false) => return Err(format!("p(P) does not entail p(P+) for {s}")),
                Err(e) => return Err(format!("p(P) ⇒ p(P+): {e} for {s}")),
            }
            // the converse fails whenever the larger side adds something new
            Ok(!lpl::entails(&weak, &strong).unwrap_or(true))
        },
        Sets::shrink,
    )
}

/// Distinct Szondi profiles translate to non-equivalent formulas.
pub fn spp_injective(trials: usize, seed: u64) -> SuiteReport {
    run_trials(
        Exec::default(),
        "spp-translation-injective",
        8,
        trials,
        seed,
        |rng| {
            let a = ProfileSampler::uniform_spp(rng);
            let mut b = ProfileSampler::uniform_spp(rng);
            if a == b {
                let g = *Factor::ALL.choose(rng).expect("non-empty");
                b.set(g, b.get(g).flip());
                if a == b {
                    b.set(g, Signature::Pm);
                    if a == b {
                        b.set(g, Signature::Zero);
                    }
                }
            }
            (a, b)
        },
        |(a, b)| match lpl::equivalent(&spp_formula(a), &spp_formula(b)) {
            Ok(false) => Ok(true),
            Ok(true) => Err(format!("{a} and {b} translate to equivalent formulas")),
            Err(e) => Err(e.to_string()),
        },
        no_shrink,
    )
}

/// Two distinct Cattell profiles, differing by 3 vs 4 on every trait,
/// translate to equivalent formulas.
pub fn ppp_not_injective(conn: &GaloisConnection<'_>) -> SuiteReport {
    let table = conn.table();
    let three = CattellProfile::uniform(TraitValue::new(3).expect("in range"));
    let four = CattellProfile::uniform(TraitValue::new(4).expect("in range"));
    let cell = |f: &CattellProfile| table.trait_formula(TraitId::A, f.get(TraitId::A)).clone();
    let witnesses = [
        (cell(&three), cell(&four)),
        (table.ppp_formula(&three), table.ppp_formula(&four)),
    ];
    let failure = witnesses
        .iter()
        .find_map(|(x, y)| match lpl::equivalent(x, y) {
            Ok(true) => None,
            Ok(false) => Some(format!("{x} and {y} are not equivalent")),
            Err(e) => Some(e.to_string()),
        });
    SuiteReport {
        name: "ppp-translation-not-injective",
        trials: witnesses.len(),
        witnessed: witnesses.len(),
        failure,
    }
}

/// Entailment from a profile's conjunction coincides with evaluation.
pub fn profile_entailment(conn: &GaloisConnection<'_>, trials: usize, seed: u64) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    let table = conn.table();
    run_trials(
        conn.exec(),
        "profile-entailment",
        9,
        trials,
        seed,
        |rng| {
            let p = sampler.spp(rng);
            let f = sampler.ppp(rng);
            let t = *TraitId::ALL.choose(rng).expect("non-empty");
            (p, f, t, uniform_value(rng))
        },
        |(p, f, t, v)| {
            let sigma = spp_formula(p);
            for phi in [table.trait_formula(*t, *v).clone(), table.ppp_formula(f)] {
                let by_entailment = lpl::entails(&sigma, &phi).map_err(|e| e.to_string())?;
                if by_entailment != phi.eval(p) {
                    return Err(format!(
                        "p({p}) ⇒ {phi} is {by_entailment} but evaluation gives {}",
                        phi.eval(p)
                    ));
                }
            }
            Ok(table.trait_formula(*t, *v).eval(p))
        },
        no_shrink,
    )
}

/// Each global-factor formula evaluates as the disjunction of its components.
pub fn global_factors(
    conn: &GaloisConnection<'_>,
    trials: usize,
    seed: u64,
    reversal: Reversal,
) -> SuiteReport {
    let sampler = ProfileSampler::new(conn);
    let table = conn.table();
    run_trials(
        conn.exec(),
        "global-factors",
        10,
        trials,
        seed,
        |rng| sampler.spp(rng),
        |p| {
            let mut any_true = false;
            for g in GlobalFactor::ALL {
                for v in TraitValue::all() {
                    let built = table.global_factor_formula(g, v, reversal);
                    let parts = g.component_values(v, reversal);
                    let undefined = reversal == Reversal::AsPrinted
                        && v.get() == 10
                        && g.has_reversed_component();
                    match (built, parts) {
                        (Err(_), Err(_)) if undefined => {}
                        (Ok(phi), Ok(parts)) if !undefined => {
                            let expected = parts
                                .iter()
                                .any(|&(t, tv)| table.trait_formula(t, tv).eval(p));
                            if phi.eval(p) != expected {
                                return Err(format!(
                                    "{g} at {v} on {p}: formula and components disagree"
                                ));
                            }
                            any_true |= expected;
                        }
                        _ => {
                            return Err(format!(
                                "{g} at {v}: unexpected definedness under {reversal:?}"
                            ))
                        }
                    }
                }
            }
            Ok(any_true)
        },
        no_shrink,
    )
}

/// Box intersection is pointwise, and cardinality matches enumeration.
pub fn box_algebra(trials: usize, seed: u64) -> SuiteReport {
    run_trials(
        Exec::default(),
        "box-algebra",
        11,
        trials,
        seed,
        |rng| {
            let random_box = |rng: &mut ChaCha8Rng| {
                FactorBox::from_allowed(std::array::from_fn(|_| {
                    if rng.gen_bool(0.5) {
                        crate::boxes::SignatureSet::FULL
                    } else {
                        crate::boxes::SignatureSet::from_bits(rng.gen::<u16>() & rng.gen::<u16>())
                    }
                }))
            };
            let a = random_box(rng);
            let b = random_box(rng);
            let small = FactorBox::from_allowed(std::array::from_fn(|_| {
                crate::boxes::SignatureSet::from_bits(
                    rng.gen::<u16>() & rng.gen::<u16>() & rng.gen::<u16>(),
                )
            }));
            (a, b, small, ProfileSampler::uniform_spp(rng))
        },
        |(a, b, small, p)| {
            let meet = a.intersect(b);
            if meet.contains(p) != (a.contains(p) && b.contains(p)) {
                return Err(format!(
                    "membership of {p} in {a:?} ∩ {b:?} is not pointwise"
                ));
            }
            if small.cardinality() <= 10_000 {
                let counted = small.members().count() as u128;
                if counted != small.cardinality() {
                    return Err(format!(
                        "{small:?}: cardinality {} but {counted} members",
                        small.cardinality()
                    ));
                }
            }
            Ok(!meet.is_empty())
        },
        no_shrink,
    )
}
