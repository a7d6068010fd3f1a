//! Right and left polarities between Cattell and Szondi profile sets.
//!
//! Both polarities are computed on boxes: every table cell denotes a product
//! set of Szondi profiles, so the right polarity of a profile set is an
//! intersection of cell boxes and the left polarity is decided trait by trait.
//! The `*_oracle` functions instead enumerate a bounded subspace and apply the
//! entailment check literally; they exist to cross-check the box route.

use thiserror::Error;

use crate::boxes::{FactorBox, SignatureSet, TraitBox, ValueSet};
use crate::domain::{CattellProfile, Factor, Signature, SzondiProfile, TraitId, TraitValue};
use crate::exec::Exec;
use crate::lpl::{self, LplError};
use crate::translation::{spp_formula, spp_set_formula, TableError, TranslationTable};

/// Largest subspace the oracles will enumerate.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("subspace has {size} points, above the enumeration bound {bound}")]
    SubspaceTooLarge { size: u128, bound: u128 },
    #[error("subspace has an empty dimension")]
    EmptySubspaceDimension,
    #[error(transparent)]
    Lpl(#[from] LplError),
}

/// A bounded region of both profile spaces for the enumeration oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subspace {
    spp: FactorBox,
    ppp: TraitBox,
    bound: u128,
}

impl Subspace {
    pub fn new(spp: FactorBox, ppp: TraitBox) -> Result<Subspace, GaloisError> {
        if spp.is_empty() || ppp.is_empty() {
            return Err(GaloisError::EmptySubspaceDimension);
        }
        Ok(Subspace {
            spp,
            ppp,
            bound: DEFAULT_ENUMERATION_BOUND,
        })
    }

    /// `{-, 0, +}` on every factor, paired with the given Cattell-side box.
    pub fn sign_cube(ppp: TraitBox) -> Result<Subspace, GaloisError> {
        let signs: SignatureSet = [Signature::Minus, Signature::Zero, Signature::Plus]
            .into_iter()
            .collect();
        Subspace::new(FactorBox::from_allowed([signs; 8]), ppp)
    }

    pub fn with_bound(mut self, bound: u128) -> Subspace {
        self.bound = bound;
        self
    }

    pub fn spp(&self) -> &FactorBox {
        &self.spp
    }

    pub fn ppp(&self) -> &TraitBox {
        &self.ppp
    }

    fn check_size(&self, size: u128) -> Result<u64, GaloisError> {
        if size > self.bound || size > u64::MAX as u128 {
            return Err(GaloisError::SubspaceTooLarge {
                size,
                bound: self.bound,
            });
        }
        Ok(size as u64)
    }
}

/// A translation table whose cells have all been verified to denote boxes.
#[derive(Debug, Clone)]
pub struct GaloisConnection<'t> {
    table: &'t TranslationTable,
    boxes: Vec<FactorBox>,
    exec: Exec,
}

impl GaloisConnection<'static> {
    pub fn standard() -> GaloisConnection<'static> {
        GaloisConnection::new(TranslationTable::standard())
            .expect("standard table cells are product sets")
    }
}

impl<'t> GaloisConnection<'t> {
    /// Fails if any cell is a disjunction spanning several factors, in which
    /// case polarity images would not be boxes.
    pub fn new(table: &'t TranslationTable) -> Result<GaloisConnection<'t>, TableError> {
        let boxes = table
            .cells()
            .map(|(t, v, _)| table.trait_box(t, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GaloisConnection {
            table,
            boxes,
            exec: Exec::default(),
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn table(&self) -> &'t TranslationTable {
        self.table
    }

    pub fn cell_box(&self, t: TraitId, v: TraitValue) -> &FactorBox {
        &self.boxes[t.index() * 10 + v.index()]
    }

    /// Szondi profiles satisfying a single Cattell profile's formula.
    pub fn profile_box(&self, f: &CattellProfile) -> FactorBox {
        f.iter().fold(FactorBox::full(), |acc, (t, v)| {
            acc.intersect(self.cell_box(t, v))
        })
    }

    /// Szondi profiles whose formula entails the conjunction of `fs`.
    pub fn right_polarity(&self, fs: &[CattellProfile]) -> FactorBox {
        fs.iter().fold(FactorBox::full(), |acc, f| {
            acc.intersect(&self.profile_box(f))
        })
    }

    /// Cattell profiles whose formula is entailed by the disjunction of `ps`.
    pub fn left_polarity(&self, ps: &[SzondiProfile]) -> TraitBox {
        TraitBox::from_allowed(self.left_allowed_sets(ps))
    }

    /// Per factor, the signatures every cell of every profile in `fs` allows.
    /// Unlike [`right_polarity`](Self::right_polarity) this keeps the
    /// individual sets even when one of them is empty.
    pub fn right_allowed_sets(&self, fs: &[CattellProfile]) -> [SignatureSet; 8] {
        std::array::from_fn(|i| {
            let g = Factor::ALL[i];
            fs.iter()
                .flat_map(|f| f.iter())
                .fold(SignatureSet::FULL, |acc, (t, v)| {
                    acc.intersection(self.cell_box(t, v).allowed(g))
                })
        })
    }

    /// Per trait, the values whose cell holds in every profile of `ps`. Unlike
    /// [`left_polarity`](Self::left_polarity) this keeps the individual sets
    /// even when one of them is empty.
    pub fn left_allowed_sets(&self, ps: &[SzondiProfile]) -> [ValueSet; 28] {
        std::array::from_fn(|i| {
            let t = TraitId::ALL[i];
            TraitValue::all()
                .filter(|&v| ps.iter().all(|p| self.cell_box(t, v).contains(p)))
                .collect()
        })
    }

    /// Right polarity of every member of a trait box.
    pub fn right_polarity_of_box(&self, b: &TraitBox) -> FactorBox {
        if b.is_empty() {
            return FactorBox::full();
        }
        TraitId::ALL.iter().fold(FactorBox::full(), |acc, &t| {
            b.allowed(t)
                .iter()
                .fold(acc, |acc, v| acc.intersect(self.cell_box(t, v)))
        })
    }

    /// Left polarity of every member of a factor box.
    pub fn left_polarity_of_box(&self, b: &FactorBox) -> TraitBox {
        if b.is_empty() {
            return TraitBox::full();
        }
        TraitBox::from_allowed(std::array::from_fn(|i| {
            let t = TraitId::ALL[i];
            TraitValue::all()
                .filter(|&v| b.is_subset(self.cell_box(t, v)))
                .collect()
        }))
    }

    /// Right polarity of the left polarity of `ps`; contains every member of `ps`.
    pub fn closure_spp(&self, ps: &[SzondiProfile]) -> FactorBox {
        self.right_polarity_of_box(&self.left_polarity(ps))
    }

    /// Left polarity of the right polarity of `fs`; contains every member of `fs`.
    pub fn closure_ppp(&self, fs: &[CattellProfile]) -> TraitBox {
        self.left_polarity_of_box(&self.right_polarity(fs))
    }

    pub fn kernel_equivalent_ppp(&self, a: &[CattellProfile], b: &[CattellProfile]) -> bool {
        self.right_polarity(a) == self.right_polarity(b)
    }

    pub fn kernel_equivalent_spp(&self, a: &[SzondiProfile], b: &[SzondiProfile]) -> bool {
        self.left_polarity(a) == self.left_polarity(b)
    }

    /// Enumerates the Szondi side of `sub` and keeps the profiles whose
    /// formula entails the conjunction of `fs`. Output is in canonical order.
    pub fn right_polarity_oracle(
        &self,
        fs: &[CattellProfile],
        sub: &Subspace,
    ) -> Result<Vec<SzondiProfile>, GaloisError> {
        let n = sub.check_size(sub.spp.cardinality())?;
        let target = self.table.ppp_set_formula(fs);
        let hits = self.exec.map_range(n, |i| {
            let p = sub.spp.nth(i as u128).expect("rank below cardinality");
            lpl::entails(&spp_formula(&p), &target).map(|ok| ok.then_some(p))
        });
        let mut out = Vec::new();
        for hit in hits {
            out.extend(hit?);
        }
        Ok(out)
    }

    /// Enumerates the Cattell side of `sub` and keeps the profiles whose
    /// formula is entailed by the disjunction of `ps`.
    pub fn left_polarity_oracle(
        &self,
        ps: &[SzondiProfile],
        sub: &Subspace,
    ) -> Result<Vec<CattellProfile>, GaloisError> {
        let n = sub.check_size(sub.ppp.cardinality())?;
        let models = spp_set_formula(ps).minimal_models()?;
        Ok(self.exec.filter_map_range(n, |i| {
            let f = sub.ppp.nth(i as u128).expect("rank below cardinality");
            let phi = self.table.ppp_formula(&f);
            models.iter().all(|m| phi.eval_atoms(*m)).then_some(f)
        }))
    }

    /// Per-trait scan: the values whose cell formula is entailed by the
    /// disjunction of `ps`, decided by the entailment checker.
    pub fn left_allowed_oracle(&self, ps: &[SzondiProfile]) -> Result<[ValueSet; 28], GaloisError> {
        let sigma = spp_set_formula(ps);
        let mut out = [ValueSet::EMPTY; 28];
        for (t, v, phi) in self.table.cells() {
            if lpl::entails(&sigma, phi)? {
                out[t.index()].insert(v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Factor;
    use crate::translation::norm_profile;
    use Signature::*;

    fn v(x: i64) -> TraitValue {
        TraitValue::new(x).unwrap()
    }

    fn zero() -> SzondiProfile {
        SzondiProfile::uniform(Zero)
    }

    fn fives() -> CattellProfile {
        CattellProfile::uniform(v(5))
    }

    fn pinned_to_zero() -> CattellProfile {
        fives().with(TraitId::LE, v(9))
    }

    #[test]
    fn right_polarity_examples() {
        let g = GaloisConnection::standard();
        assert!(g.right_polarity(&[]).is_full());
        assert_eq!(g.right_polarity(&[]).cardinality(), 429_981_696);
        let single = g.right_polarity(&[pinned_to_zero()]);
        assert_eq!(single, FactorBox::singleton(&zero()));
        assert_eq!(single.cardinality(), 1);
        let clash = g.right_polarity(&[fives()]);
        assert!(clash.is_empty());
        // ST=5 pins s to 0 while LE=5 asks for s+! or s-!
        let st = g.cell_box(TraitId::ST, v(5)).allowed(Factor::S);
        let le = g.cell_box(TraitId::LE, v(5)).allowed(Factor::S);
        assert!(st.intersection(le).is_empty());
    }

    #[test]
    fn left_polarity_examples() {
        let g = GaloisConnection::standard();
        let all = g.left_polarity(&[]);
        assert!(all.is_full());
        assert_eq!(all.cardinality(), 10u128.pow(28));
        assert!(g.left_polarity(&[norm_profile()]).is_empty());

        let z = g.left_polarity(&[zero()]);
        assert!(!z.is_empty());
        for t in TraitId::ALL {
            let expected: ValueSet = if t == TraitId::LE {
                [v(9), v(10)].into_iter().collect()
            } else {
                [v(5), v(6)].into_iter().collect()
            };
            assert_eq!(z.allowed(t), expected, "{t}");
        }
    }

    #[test]
    fn oracle_examples() {
        let g = GaloisConnection::standard();
        let sub = Subspace::sign_cube(TraitBox::singleton(&fives())).unwrap();
        assert_eq!(g.right_polarity_oracle(&[], &sub).unwrap().len(), 6561);
        assert!(g
            .right_polarity_oracle(&[fives()], &sub)
            .unwrap()
            .is_empty());
        assert_eq!(
            g.right_polarity_oracle(&[pinned_to_zero()], &sub).unwrap(),
            vec![zero()]
        );

        // A ∈ {1, 5, 7}, everything else pinned to a zero-compatible value
        let ppp = TraitBox::from_allowed({
            let mut a = TraitBox::singleton(&pinned_to_zero()).allowed_sets();
            a[TraitId::A.index()] = [v(1), v(5), v(7)].into_iter().collect();
            a
        });
        let sub = Subspace::sign_cube(ppp).unwrap();
        let got = g.left_polarity_oracle(&[zero()], &sub).unwrap();
        assert_eq!(got, vec![pinned_to_zero()]);
        assert!(g
            .left_polarity_oracle(&[norm_profile()], &sub)
            .unwrap()
            .is_empty());
        assert_eq!(g.left_polarity_oracle(&[], &sub).unwrap().len(), 3);
    }

    #[test]
    fn oracle_respects_bound() {
        let g = GaloisConnection::standard();
        let sub = Subspace::new(FactorBox::full(), TraitBox::full()).unwrap();
        assert!(matches!(
            g.right_polarity_oracle(&[], &sub),
            Err(GaloisError::SubspaceTooLarge { .. })
        ));
        assert!(matches!(
            g.left_polarity_oracle(&[], &sub),
            Err(GaloisError::SubspaceTooLarge { .. })
        ));
        let small = Subspace::sign_cube(TraitBox::singleton(&fives()))
            .unwrap()
            .with_bound(100);
        assert!(g.right_polarity_oracle(&[], &small).is_err());
        assert_eq!(
            Subspace::new(FactorBox::empty(), TraitBox::full()),
            Err(GaloisError::EmptySubspaceDimension)
        );
    }

    #[test]
    fn closures() {
        let g = GaloisConnection::standard();
        assert!(g.closure_spp(&[norm_profile()]).is_full());
        // no cell is a tautology, so nothing is entailed by everything
        assert!(g.closure_ppp(&[]).is_empty());
        let f = [pinned_to_zero()];
        let c = g.closure_ppp(&f);
        assert!(c.contains(&f[0]));
        assert_eq!(g.right_polarity_of_box(&c), g.right_polarity(&f));
        assert!(g.closure_spp(&[zero()]).contains(&zero()));
    }

    #[test]
    fn kernel_examples() {
        let g = GaloisConnection::standard();
        let a = [pinned_to_zero().with(TraitId::B, v(3))];
        assert!(g.kernel_equivalent_ppp(&a, &a));
        let b = [pinned_to_zero().with(TraitId::B, v(4))];
        assert!(g.kernel_equivalent_ppp(&a, &b));
        let other = SzondiProfile::uniform(PlusQ3);
        assert!(g.kernel_equivalent_spp(&[norm_profile()], &[other]));
        assert!(!g.kernel_equivalent_spp(&[norm_profile()], &[zero()]));
    }

    #[test]
    fn rejects_tables_with_cross_factor_disjunctions() {
        let t = TranslationTable::standard().with_cell(
            TraitId::A,
            v(1),
            crate::lpl::Formula::Or(vec![
                crate::lpl::Formula::atom(Factor::H, Plus),
                crate::lpl::Formula::atom(Factor::S, Plus),
            ]),
        );
        assert!(GaloisConnection::new(&t).is_err());
    }

    #[test]
    fn sequential_and_parallel_oracles_agree() {
        let seq = GaloisConnection::standard().with_exec(Exec::Sequential);
        let par = GaloisConnection::standard().with_exec(Exec::Parallel);
        let sub = Subspace::sign_cube(TraitBox::singleton(&fives())).unwrap();
        let f = [fives().with(TraitId::A, v(7))];
        assert_eq!(
            seq.right_polarity_oracle(&[], &sub).unwrap(),
            par.right_polarity_oracle(&[], &sub).unwrap()
        );
        assert_eq!(
            seq.right_polarity_oracle(&f, &sub).unwrap(),
            par.right_polarity_oracle(&f, &sub).unwrap()
        );
    }
}
