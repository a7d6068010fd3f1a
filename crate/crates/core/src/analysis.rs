//! Diagnostics: why a left polarity is empty, the norm-profile walkthrough,
//! and a search for Cattell profiles with an empty right polarity.

use std::collections::BTreeMap;

use crate::boxes::{SignatureSet, TraitBox, ValueSet};
use crate::checks::{trial_rng, ProfileSampler};
use crate::domain::{CattellProfile, Factor, SzondiProfile, TraitId, TraitValue};
use crate::galois::GaloisConnection;
use crate::lpl::Formula;
use crate::translation::{norm_profile, spp_formula};

/// Failing traits printed for the norm profile in the reference description.
/// Three of them (M, LE, TS) do have a satisfying value in the table.
pub const REFERENCE_NORM_FAILURES: [TraitId; 14] = {
    use TraitId::*;
    [B, G, H, M, Q3, PS, ST, LE, SR, PI, OT, AP, TS, TI]
};

/// One table cell and its truth value in each input profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellEvaluation {
    pub value: TraitValue,
    pub formula: Formula,
    pub holds: Vec<bool>,
}

/// A trait none of whose values is entailed by the input profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraitExplanation {
    pub trait_id: TraitId,
    pub cells: Vec<CellEvaluation>,
}

/// Explains every trait with an empty allowed set in the left polarity of
/// `ps`. Empty for an empty `ps`.
pub fn explain_left(conn: &GaloisConnection<'_>, ps: &[SzondiProfile]) -> Vec<TraitExplanation> {
    let sets = conn.left_allowed_sets(ps);
    TraitId::ALL
        .iter()
        .zip(sets)
        .filter(|(_, set)| set.is_empty())
        .map(|(&t, _)| TraitExplanation {
            trait_id: t,
            cells: TraitValue::all()
                .map(|v| CellEvaluation {
                    value: v,
                    formula: conn.table().trait_formula(t, v).clone(),
                    holds: ps.iter().map(|p| conn.cell_box(t, v).contains(p)).collect(),
                })
                .collect(),
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct NormReport {
    pub profile: SzondiProfile,
    pub formula: Formula,
    pub left: TraitBox,
    pub failing: Vec<TraitId>,
    /// Listed in [`REFERENCE_NORM_FAILURES`] but satisfiable, with the
    /// satisfying values.
    pub reference_only: Vec<(TraitId, ValueSet)>,
    /// Failing but missing from [`REFERENCE_NORM_FAILURES`].
    pub computed_only: Vec<TraitId>,
    pub explanations: Vec<TraitExplanation>,
}

pub fn norm_demo(conn: &GaloisConnection<'_>) -> NormReport {
    let profile = norm_profile();
    let explanations = explain_left(conn, &[profile]);
    let failing: Vec<TraitId> = explanations.iter().map(|e| e.trait_id).collect();
    let sets = conn.left_allowed_sets(&[profile]);
    NormReport {
        profile,
        formula: spp_formula(&profile),
        left: conn.left_polarity(&[profile]),
        reference_only: REFERENCE_NORM_FAILURES
            .iter()
            .filter(|t| !failing.contains(t))
            .map(|&t| (t, sets[t.index()]))
            .collect(),
        computed_only: failing
            .iter()
            .copied()
            .filter(|t| !REFERENCE_NORM_FAILURES.contains(t))
            .collect(),
        failing,
        explanations,
    }
}

/// Cells of one profile that jointly leave a factor with no signature.
/// Usually a pair with disjoint constraints; when no pair is disjoint, every
/// constraining cell is listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub factor: Factor,
    pub cells: Vec<(TraitId, TraitValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyImage {
    pub sample: u64,
    pub profile: CattellProfile,
    pub conflicts: Vec<Conflict>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptySearchReport {
    pub samples: u64,
    pub seed: u64,
    pub empty: Vec<EmptyImage>,
}

impl EmptySearchReport {
    /// Conflicting trait pairs, per factor, by number of profiles they occur
    /// in; most frequent first.
    pub fn pair_counts(&self) -> Vec<((Factor, TraitId, TraitId), usize)> {
        let mut counts: BTreeMap<(Factor, TraitId, TraitId), usize> = BTreeMap::new();
        for image in &self.empty {
            let mut seen = Vec::new();
            for c in image.conflicts.iter().filter(|c| c.cells.len() == 2) {
                let pair = (c.factor, c.cells[0].0, c.cells[1].0);
                if !seen.contains(&pair) {
                    seen.push(pair);
                }
            }
            for pair in seen {
                *counts.entry(pair).or_default() += 1;
            }
        }
        let mut out: Vec<_> = counts.into_iter().collect();
        out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        out
    }
}

/// Per-factor conflicts of a single profile; empty iff its right polarity is
/// non-empty.
pub fn conflicts(conn: &GaloisConnection<'_>, f: &CattellProfile) -> Vec<Conflict> {
    let mut out = Vec::new();
    for g in Factor::ALL {
        let constraints: Vec<((TraitId, TraitValue), SignatureSet)> = f
            .iter()
            .map(|(t, v)| ((t, v), conn.cell_box(t, v).allowed(g)))
            .filter(|(_, set)| !set.is_full())
            .collect();
        let meet = constraints
            .iter()
            .fold(SignatureSet::FULL, |acc, (_, s)| acc.intersection(*s));
        if !meet.is_empty() {
            continue;
        }
        let before = out.len();
        for (i, (a, sa)) in constraints.iter().enumerate() {
            for (b, sb) in &constraints[i + 1..] {
                if sa.intersection(*sb).is_empty() {
                    out.push(Conflict {
                        factor: g,
                        cells: vec![*a, *b],
                    });
                }
            }
        }
        if out.len() == before {
            out.push(Conflict {
                factor: g,
                cells: constraints.iter().map(|(c, _)| *c).collect(),
            });
        }
    }
    out
}

/// Samples `samples` uniform Cattell profiles and keeps those whose right
/// polarity is empty. Deterministic in `seed`.
pub fn find_empty(conn: &GaloisConnection<'_>, samples: u64, seed: u64) -> EmptySearchReport {
    let empty = conn.exec().filter_map_range(samples, |i| {
        let f = ProfileSampler::uniform_ppp(&mut trial_rng(seed, 0xe3, i));
        conn.profile_box(&f).is_empty().then(|| EmptyImage {
            sample: i,
            profile: f,
            conflicts: conflicts(conn, &f),
        })
    });
    EmptySearchReport {
        samples,
        seed,
        empty,
    }
}
