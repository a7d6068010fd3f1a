//! The trait-to-formula table, the profile translations into the pivot
//! language, and the global-factor formulas.

use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::boxes::{FactorBox, SignatureSet};
use crate::domain::{CattellProfile, Factor, Signature, SzondiProfile, TraitId, TraitValue};
use crate::lpl::{Formula, LplError};

const STANDARD_TABLE_CSV: &str = include_str!("../data/trait_table.csv");

/// SHA-256 of the canonical CSV serialization of the standard table.
pub const STANDARD_TABLE_SHA256: &str =
    "1db4b1ff122d7fa5521d5ea211cc2660ae2dfa021747e8160544ef7c558b7059";

const CSV_HEADER: &str = "trait,value,formula";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: bad formula: {source}")]
    Formula { line: usize, source: LplError },
    #[error("cell ({0},{1}) defined twice")]
    Duplicate(TraitId, TraitValue),
    #[error("cell ({0},{1}) missing")]
    Missing(TraitId, TraitValue),
    #[error("cell ({0},{1}) is not a product set: {2}")]
    NotBoxRepresentable(TraitId, TraitValue, Formula),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("{global}: reversed component {component} needs value {reversed} outside 1..=10 (v = {value})")]
    ReversedValueOutOfRange {
        global: GlobalFactor,
        component: TraitId,
        value: TraitValue,
        reversed: i64,
    },
}

/// One formula per (trait, value) cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationTable {
    cells: Vec<Formula>,
}

fn cell_index(t: TraitId, v: TraitValue) -> usize {
    t.index() * 10 + v.index()
}

impl TranslationTable {
    /// The built-in table. Its checksum is verified on first use.
    pub fn standard() -> &'static TranslationTable {
        static TABLE: OnceLock<TranslationTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let table = TranslationTable::from_csv(STANDARD_TABLE_CSV)
                .expect("embedded trait table must parse");
            assert_eq!(
                table.checksum(),
                STANDARD_TABLE_SHA256,
                "embedded trait table checksum mismatch"
            );
            table
        })
    }

    /// Parses `trait,value,formula` rows. Every one of the 280 cells must
    /// appear exactly once.
    pub fn from_csv(text: &str) -> Result<TranslationTable, TableError> {
        let mut cells: Vec<Option<Formula>> = vec![None; TraitId::COUNT * 10];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let row = raw.trim();
            if row.is_empty() || (line == 1 && row == CSV_HEADER) {
                continue;
            }
            let mut parts = row.splitn(3, ',');
            let (Some(t), Some(v), Some(phi)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(TableError::Malformed {
                    line,
                    msg: "expected three columns".into(),
                });
            };
            let t: TraitId = t.trim().parse().map_err(|e| TableError::Malformed {
                line,
                msg: format!("{e}"),
            })?;
            let v = v
                .trim()
                .parse::<i64>()
                .map_err(|e| e.to_string())
                .and_then(|v| TraitValue::new(v).map_err(|e| e.to_string()))
                .map_err(|msg| TableError::Malformed { line, msg })?;
            let phi: Formula = phi
                .trim()
                .parse()
                .map_err(|source| TableError::Formula { line, source })?;
            let slot = &mut cells[cell_index(t, v)];
            if slot.is_some() {
                return Err(TableError::Duplicate(t, v));
            }
            *slot = Some(phi);
        }
        let mut out = Vec::with_capacity(cells.len());
        for t in TraitId::ALL {
            for v in TraitValue::all() {
                match cells[cell_index(t, v)].take() {
                    Some(phi) => out.push(phi),
                    None => return Err(TableError::Missing(t, v)),
                }
            }
        }
        Ok(TranslationTable { cells: out })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for (t, v, phi) in self.cells() {
            out.push_str(&format!("{t},{v},{phi}\n"));
        }
        out
    }

    pub fn checksum(&self) -> String {
        Sha256::digest(self.to_csv().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn is_standard(&self) -> bool {
        self.checksum() == STANDARD_TABLE_SHA256
    }

    /// A copy with one cell replaced.
    pub fn with_cell(&self, t: TraitId, v: TraitValue, phi: Formula) -> TranslationTable {
        let mut out = self.clone();
        out.cells[cell_index(t, v)] = phi;
        out
    }

    pub fn trait_formula(&self, t: TraitId, v: TraitValue) -> &Formula {
        &self.cells[cell_index(t, v)]
    }

    pub fn trait_box(&self, t: TraitId, v: TraitValue) -> Result<FactorBox, TableError> {
        let phi = self.trait_formula(t, v);
        formula_box(phi).ok_or_else(|| TableError::NotBoxRepresentable(t, v, phi.clone()))
    }

    /// All cells in trait order, values ascending.
    pub fn cells(&self) -> impl Iterator<Item = (TraitId, TraitValue, &Formula)> {
        TraitId::ALL
            .into_iter()
            .flat_map(|t| TraitValue::all().map(move |v| (t, v)))
            .map(|(t, v)| (t, v, self.trait_formula(t, v)))
    }

    /// Conjunction of the 28 cells selected by `f`, in trait order.
    pub fn ppp_formula(&self, f: &CattellProfile) -> Formula {
        Formula::And(
            f.iter()
                .map(|(t, v)| self.trait_formula(t, v).clone())
                .collect(),
        )
    }

    /// Conjunction over the set; `Top` for the empty set.
    pub fn ppp_set_formula(&self, profiles: &[CattellProfile]) -> Formula {
        Formula::conjunction(profiles.iter().map(|f| self.ppp_formula(f)))
    }

    pub fn global_factor_formula(
        &self,
        g: GlobalFactor,
        v: TraitValue,
        reversal: Reversal,
    ) -> Result<Formula, TranslationError> {
        let mut parts = Vec::with_capacity(5);
        for (t, value) in g.component_values(v, reversal)? {
            parts.push(self.trait_formula(t, value).clone());
        }
        Ok(Formula::Or(parts))
    }
}

/// The product set of profiles satisfying `phi`, or `None` when that set is
/// not a product (a disjunction spanning more than one factor).
pub fn formula_box(phi: &Formula) -> Option<FactorBox> {
    match phi {
        Formula::Top => Some(FactorBox::full()),
        Formula::Bottom => Some(FactorBox::empty()),
        Formula::Atom(a) => Some(FactorBox::only(
            a.factor,
            SignatureSet::singleton(a.signature),
        )),
        Formula::And(cs) => cs.iter().try_fold(FactorBox::full(), |acc, c| {
            Some(acc.intersect(&formula_box(c)?))
        }),
        Formula::Or(cs) => {
            let mut factor: Option<Factor> = None;
            let mut union = SignatureSet::EMPTY;
            for c in cs {
                let b = formula_box(c)?;
                if b.is_empty() {
                    continue;
                }
                let mut constrained = b.constrained_factors();
                let Some(g) = constrained.next() else {
                    return Some(FactorBox::full());
                };
                if constrained.next().is_some() || factor.is_some_and(|f| f != g) {
                    return None;
                }
                factor = Some(g);
                union = union.union(b.allowed(g));
            }
            Some(match factor {
                Some(g) => FactorBox::only(g, union),
                None => FactorBox::empty(),
            })
        }
    }
}

/// Conjunction of the profile's eight atoms in factor order.
pub fn spp_formula(p: &SzondiProfile) -> Formula {
    Formula::And(p.iter().map(|(g, s)| Formula::atom(g, s)).collect())
}

/// Disjunction over the set; `Bottom` for the empty set.
pub fn spp_set_formula(profiles: &[SzondiProfile]) -> Formula {
    Formula::disjunction(profiles.iter().map(spp_formula))
}

/// Szondi's norm profile `(h+, s+, e-, hy-, k-, p-, d+, m+)`.
pub fn norm_profile() -> SzondiProfile {
    use Signature::{Minus, Plus};
    SzondiProfile::new([Plus, Plus, Minus, Minus, Minus, Minus, Plus, Plus])
}

/// How the reversed components of a global factor map `v` onto a trait value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reversal {
    /// `10 - v`; undefined for `v = 10`.
    #[default]
    AsPrinted,
    /// `11 - v`, a bijection of `1..=10` onto itself.
    Corrected,
}

/// Cattell's five global factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlobalFactor {
    Extraversion,
    HighAnxiety,
    ToughMindedness,
    Independence,
    SelfControl,
}

impl GlobalFactor {
    pub const ALL: [GlobalFactor; 5] = [
        GlobalFactor::Extraversion,
        GlobalFactor::HighAnxiety,
        GlobalFactor::ToughMindedness,
        GlobalFactor::Independence,
        GlobalFactor::SelfControl,
    ];

    /// Component traits and whether each is read in reverse.
    pub fn components(self) -> &'static [(TraitId, bool)] {
        use TraitId::*;
        match self {
            GlobalFactor::Extraversion => {
                &[(A, false), (F, false), (H, false), (N, true), (Q2, true)]
            }
            GlobalFactor::HighAnxiety => &[(C, false), (L, false), (O, false), (Q4, false)],
            GlobalFactor::ToughMindedness => &[(A, true), (I, true), (M, false), (Q1, false)],
            GlobalFactor::Independence => &[(E, false), (H, false), (L, true), (Q1, false)],
            GlobalFactor::SelfControl => &[(F, true), (G, false), (M, true), (Q3, false)],
        }
    }

    pub fn has_reversed_component(self) -> bool {
        self.components().iter().any(|&(_, rev)| rev)
    }

    /// The (trait, value) cells the global factor disjoins at `v`.
    pub fn component_values(
        self,
        v: TraitValue,
        reversal: Reversal,
    ) -> Result<Vec<(TraitId, TraitValue)>, TranslationError> {
        self.components()
            .iter()
            .map(|&(t, reversed)| {
                if !reversed {
                    return Ok((t, v));
                }
                let r = match reversal {
                    Reversal::AsPrinted => 10 - v.get() as i64,
                    Reversal::Corrected => 11 - v.get() as i64,
                };
                TraitValue::new(r).map(|rv| (t, rv)).map_err(|_| {
                    TranslationError::ReversedValueOutOfRange {
                        global: self,
                        component: t,
                        value: v,
                        reversed: r,
                    }
                })
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            GlobalFactor::Extraversion => "extraversion",
            GlobalFactor::HighAnxiety => "high-anxiety",
            GlobalFactor::ToughMindedness => "tough-mindedness",
            GlobalFactor::Independence => "independence",
            GlobalFactor::SelfControl => "self-control",
        }
    }
}

impl fmt::Display for GlobalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpl::{equivalent, Formula as Phi};
    use Factor::*;
    use Signature::*;

    fn v(x: i64) -> TraitValue {
        TraitValue::new(x).unwrap()
    }

    fn table() -> &'static TranslationTable {
        TranslationTable::standard()
    }

    #[test]
    fn standard_table_loads_all_cells() {
        assert_eq!(table().cells().count(), 280);
        assert!(table().is_standard());
        let reparsed = TranslationTable::from_csv(&table().to_csv()).unwrap();
        assert_eq!(&reparsed, table());
    }

    #[test]
    fn cell_examples() {
        assert_eq!(
            table().trait_formula(TraitId::A, v(1)),
            &Phi::atom(H, MinusQ2)
        );
        assert_eq!(
            table().trait_formula(TraitId::G, v(10)),
            &Phi::And(vec![
                Phi::atom(E, PlusQ2),
                Phi::atom(Hy, MinusQ2),
                Phi::atom(K, MinusQ2)
            ])
        );
        assert_eq!(
            table().trait_formula(TraitId::LE, v(5)),
            &Phi::Or(vec![Phi::atom(S, PlusQ1), Phi::atom(S, MinusQ1)])
        );
    }

    #[test]
    fn box_examples() {
        assert_eq!(
            table().trait_box(TraitId::A, v(1)).unwrap(),
            FactorBox::only(H, SignatureSet::singleton(MinusQ2))
        );
        assert_eq!(
            table().trait_box(TraitId::PI, v(9)).unwrap(),
            FactorBox::only(K, SignatureSet::singleton(Zero))
                .restrict(P, [PmLow, PmHigh].into_iter().collect())
        );
        assert_eq!(
            table().trait_box(TraitId::LE, v(9)).unwrap(),
            FactorBox::only(S, SignatureSet::singleton(Zero))
        );
    }

    #[test]
    fn every_cell_is_box_representable() {
        for t in TraitId::ALL {
            for x in TraitValue::all() {
                assert!(table().trait_box(t, x).is_ok(), "({t},{x})");
            }
        }
    }

    #[test]
    fn cross_factor_disjunction_is_rejected() {
        let bad = Phi::Or(vec![Phi::atom(H, Plus), Phi::atom(S, Plus)]);
        assert_eq!(formula_box(&bad), None);
        let corrupted = table().with_cell(TraitId::A, v(2), bad);
        assert!(matches!(
            corrupted.trait_box(TraitId::A, v(2)),
            Err(TableError::NotBoxRepresentable(TraitId::A, _, _))
        ));
        assert!(!corrupted.is_standard());
    }

    #[test]
    fn formula_box_edge_cases() {
        let top_branch = Phi::Or(vec![Phi::atom(H, Plus), Phi::Top]);
        assert!(formula_box(&top_branch).unwrap().is_full());
        let dead_branch = Phi::Or(vec![Phi::Bottom, Phi::atom(H, Plus)]);
        assert_eq!(
            formula_box(&dead_branch).unwrap(),
            FactorBox::only(H, SignatureSet::singleton(Plus))
        );
        // an unsatisfiable disjunct on another factor contributes nothing
        let empty_other = Phi::Or(vec![
            Phi::And(vec![Phi::atom(S, Plus), Phi::atom(S, Minus)]),
            Phi::atom(H, Plus),
        ]);
        assert_eq!(
            formula_box(&empty_other).unwrap(),
            FactorBox::only(H, SignatureSet::singleton(Plus))
        );
        assert!(formula_box(&Phi::Bottom).unwrap().is_empty());
    }

    #[test]
    fn ppp_and_spp_formulas() {
        assert_eq!(table().ppp_set_formula(&[]), Phi::Top);
        assert_eq!(spp_set_formula(&[]), Phi::Bottom);
        let f = CattellProfile::uniform(v(5));
        assert_eq!(table().ppp_set_formula(&[f]), table().ppp_formula(&f));
        let g = f.with(TraitId::LE, v(9));
        assert_eq!(
            table().ppp_set_formula(&[f, g]),
            Phi::And(vec![table().ppp_formula(&f), table().ppp_formula(&g)])
        );
        let atoms = table().ppp_formula(&g).atoms();
        let union = g
            .iter()
            .map(|(t, x)| table().trait_formula(t, x).atoms())
            .fold(crate::lpl::AtomSet::EMPTY, |a, b| a.union(b));
        assert_eq!(atoms, union);

        let n = norm_profile();
        assert_eq!(
            spp_formula(&n),
            Phi::And(vec![
                Phi::atom(H, Plus),
                Phi::atom(S, Plus),
                Phi::atom(E, Minus),
                Phi::atom(Hy, Minus),
                Phi::atom(K, Minus),
                Phi::atom(P, Minus),
                Phi::atom(D, Plus),
                Phi::atom(M, Plus),
            ])
        );
        assert_eq!(spp_formula(&n).atoms().len(), 8);
        assert_eq!(spp_set_formula(&[n]), spp_formula(&n));
        let z = SzondiProfile::uniform(Zero);
        assert_eq!(
            spp_set_formula(&[n, z]),
            Phi::Or(vec![spp_formula(&n), spp_formula(&z)])
        );
    }

    #[test]
    fn columns_three_four_coincide() {
        assert!(equivalent(
            table().trait_formula(TraitId::A, v(3)),
            table().trait_formula(TraitId::A, v(4))
        )
        .unwrap());
    }

    #[test]
    fn global_factor_examples() {
        use GlobalFactor::*;
        let t = table();
        let f = |tr, x| t.trait_formula(tr, v(x)).clone();
        assert_eq!(
            t.global_factor_formula(HighAnxiety, v(7), Reversal::AsPrinted)
                .unwrap(),
            Phi::Or(vec![
                f(TraitId::C, 7),
                f(TraitId::L, 7),
                f(TraitId::O, 7),
                f(TraitId::Q4, 7)
            ])
        );
        assert_eq!(
            t.global_factor_formula(Extraversion, v(5), Reversal::AsPrinted)
                .unwrap(),
            Phi::Or(vec![
                f(TraitId::A, 5),
                f(TraitId::F, 5),
                f(TraitId::H, 5),
                f(TraitId::N, 5),
                f(TraitId::Q2, 5)
            ])
        );
        let err = t
            .global_factor_formula(Extraversion, v(10), Reversal::AsPrinted)
            .unwrap_err();
        assert_eq!(
            err,
            TranslationError::ReversedValueOutOfRange {
                global: Extraversion,
                component: TraitId::N,
                value: v(10),
                reversed: 0
            }
        );
        assert!(t
            .global_factor_formula(HighAnxiety, v(10), Reversal::AsPrinted)
            .is_ok());
        let corrected = t
            .global_factor_formula(Extraversion, v(10), Reversal::Corrected)
            .unwrap();
        assert_eq!(
            corrected,
            Phi::Or(vec![
                f(TraitId::A, 10),
                f(TraitId::F, 10),
                f(TraitId::H, 10),
                f(TraitId::N, 1),
                f(TraitId::Q2, 1)
            ])
        );
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let csv = table().to_csv();
        let missing: String = csv.lines().take(100).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            TranslationTable::from_csv(&missing),
            Err(TableError::Missing(_, _))
        ));
        let dup = format!("{csv}A,1,(atom h 0)\n");
        assert_eq!(
            TranslationTable::from_csv(&dup),
            Err(TableError::Duplicate(TraitId::A, v(1)))
        );
        let bad_value = csv.replacen("A,1,", "A,11,", 1);
        assert!(matches!(
            TranslationTable::from_csv(&bad_value),
            Err(TableError::Malformed { .. })
        ));
        let bad_formula = csv.replacen("A,1,(atom h -!!)", "A,1,(atom h x)", 1);
        assert!(matches!(
            TranslationTable::from_csv(&bad_formula),
            Err(TableError::Formula { .. })
        ));
    }
}
