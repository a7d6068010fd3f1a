//! Product sets ("boxes") over the two profile spaces.
//!
//! A box fixes one allowed-value set per dimension and denotes every profile
//! whose coordinates all fall in their allowed sets. Any box with an empty
//! dimension is stored with every dimension empty, so structural equality is
//! set equality.

use std::fmt;

use crate::domain::{CattellProfile, Factor, Signature, SzondiProfile, TraitId, TraitValue};

/// Per-dimension bitmasks over `W` values. Shared machinery for both box types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Masks<const N: usize, const W: usize>([u16; N]);

impl<const N: usize, const W: usize> Masks<N, W> {
    const FULL: u16 = ((1u32 << W) - 1) as u16;

    fn full() -> Self {
        Masks([Self::FULL; N])
    }

    fn empty() -> Self {
        Masks([0; N])
    }

    fn canonical(mut self) -> Self {
        if self.0.contains(&0) {
            self.0 = [0; N];
        }
        self
    }

    fn is_empty(&self) -> bool {
        self.0[0] == 0
    }

    fn intersect(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a &= *b;
        }
        out.canonical()
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.is_empty() || self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    fn contains(&self, coords: &[usize; N]) -> bool {
        coords
            .iter()
            .zip(self.0.iter())
            .all(|(&c, &m)| m & (1 << c) != 0)
    }

    fn cardinality(&self) -> u128 {
        self.0.iter().map(|m| m.count_ones() as u128).product()
    }

    fn choices(&self) -> [Vec<usize>; N] {
        std::array::from_fn(|d| (0..W).filter(|&i| self.0[d] & (1 << i) != 0).collect())
    }

    /// The member at position `rank` in lexicographic order, first dimension
    /// most significant.
    fn nth(&self, mut rank: u128) -> Option<[usize; N]> {
        if rank >= self.cardinality() {
            return None;
        }
        let choices = self.choices();
        let mut out = [0usize; N];
        for d in (0..N).rev() {
            let radix = choices[d].len() as u128;
            out[d] = choices[d][(rank % radix) as usize];
            rank /= radix;
        }
        Some(out)
    }

    fn iter(&self) -> MaskIter<N> {
        let choices = self.choices();
        let done = self.is_empty();
        MaskIter {
            choices,
            cursor: [0; N],
            done,
        }
    }
}

/// Odometer over the allowed coordinates of a box.
struct MaskIter<const N: usize> {
    choices: [Vec<usize>; N],
    cursor: [usize; N],
    done: bool,
}

impl<const N: usize> Iterator for MaskIter<N> {
    type Item = [usize; N];

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = std::array::from_fn(|d| self.choices[d][self.cursor[d]]);
        let mut d = N;
        loop {
            if d == 0 {
                self.done = true;
                break;
            }
            d -= 1;
            self.cursor[d] += 1;
            if self.cursor[d] < self.choices[d].len() {
                break;
            }
            self.cursor[d] = 0;
        }
        Some(item)
    }
}

/// A set of signatures.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SignatureSet(u16);

impl SignatureSet {
    pub const FULL: SignatureSet = SignatureSet((1 << Signature::COUNT) - 1);
    pub const EMPTY: SignatureSet = SignatureSet(0);

    pub fn singleton(s: Signature) -> Self {
        SignatureSet(1 << s.index())
    }

    pub fn from_bits(bits: u16) -> Self {
        SignatureSet(bits & Self::FULL.0)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, s: Signature) -> bool {
        self.0 & (1 << s.index()) != 0
    }

    pub fn insert(&mut self, s: Signature) {
        self.0 |= 1 << s.index();
    }

    pub fn union(self, other: SignatureSet) -> Self {
        SignatureSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SignatureSet) -> Self {
        SignatureSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: SignatureSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self) -> bool {
        self == Self::FULL
    }

    pub fn flip(self) -> Self {
        self.iter().map(Signature::flip).collect()
    }

    pub fn iter(self) -> impl Iterator<Item = Signature> {
        Signature::ALL
            .into_iter()
            .filter(move |&s| self.contains(s))
    }
}

impl FromIterator<Signature> for SignatureSet {
    fn from_iter<I: IntoIterator<Item = Signature>>(iter: I) -> Self {
        let mut out = SignatureSet::EMPTY;
        for s in iter {
            out.insert(s);
        }
        out
    }
}

impl fmt::Debug for SignatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|s| s.token()))
            .finish()
    }
}

/// A set of trait values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ValueSet(u16);

impl ValueSet {
    pub const FULL: ValueSet = ValueSet((1 << 10) - 1);
    pub const EMPTY: ValueSet = ValueSet(0);

    pub fn singleton(v: TraitValue) -> Self {
        ValueSet(1 << v.index())
    }

    pub fn contains(self, v: TraitValue) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn insert(&mut self, v: TraitValue) {
        self.0 |= 1 << v.index();
    }

    pub fn intersection(self, other: ValueSet) -> Self {
        ValueSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: ValueSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self) -> bool {
        self == Self::FULL
    }

    pub fn iter(self) -> impl Iterator<Item = TraitValue> {
        TraitValue::all().filter(move |&v| self.contains(v))
    }
}

impl FromIterator<TraitValue> for ValueSet {
    fn from_iter<I: IntoIterator<Item = TraitValue>>(iter: I) -> Self {
        let mut out = ValueSet::EMPTY;
        for v in iter {
            out.insert(v);
        }
        out
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.get())).finish()
    }
}

/// A product subset of Szondi profile space.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorBox(Masks<8, 12>);

impl FactorBox {
    /// Every Szondi profile (12^8 of them).
    pub fn full() -> Self {
        FactorBox(Masks::full())
    }

    pub fn empty() -> Self {
        FactorBox(Masks::empty())
    }

    pub fn from_allowed(allowed: [SignatureSet; 8]) -> Self {
        FactorBox(Masks(allowed.map(|s| s.0)).canonical())
    }

    pub fn singleton(p: &SzondiProfile) -> Self {
        Self::from_allowed(p.signatures().map(SignatureSet::singleton))
    }

    /// The full box with one factor narrowed to `set`.
    pub fn only(factor: Factor, set: SignatureSet) -> Self {
        Self::full().restrict(factor, set)
    }

    pub fn restrict(&self, factor: Factor, set: SignatureSet) -> Self {
        let mut m = self.0;
        m.0[factor.index()] &= set.0;
        FactorBox(m.canonical())
    }

    pub fn allowed(&self, factor: Factor) -> SignatureSet {
        SignatureSet(self.0 .0[factor.index()])
    }

    pub fn allowed_sets(&self) -> [SignatureSet; 8] {
        self.0 .0.map(SignatureSet)
    }

    /// Factors whose allowed set is not the full signature set.
    pub fn constrained_factors(&self) -> impl Iterator<Item = Factor> + '_ {
        Factor::ALL
            .into_iter()
            .filter(move |&g| !self.allowed(g).is_full())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn contains(&self, p: &SzondiProfile) -> bool {
        self.0.contains(&p.signatures().map(Signature::index))
    }

    pub fn intersect(&self, other: &FactorBox) -> FactorBox {
        FactorBox(self.0.intersect(&other.0))
    }

    pub fn is_subset(&self, other: &FactorBox) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn cardinality(&self) -> u128 {
        self.0.cardinality()
    }

    /// Image of the box under signature flip on every factor.
    pub fn flip(&self) -> FactorBox {
        Self::from_allowed(self.allowed_sets().map(SignatureSet::flip))
    }

    pub fn nth(&self, rank: u128) -> Option<SzondiProfile> {
        self.0.nth(rank).map(szondi_from_coords)
    }

    /// Members in lexicographic order (factor order h..m, signature order as declared).
    pub fn members(&self) -> impl Iterator<Item = SzondiProfile> {
        self.0.iter().map(szondi_from_coords)
    }

    pub fn enumerate(&self, limit: usize) -> Vec<SzondiProfile> {
        self.members().take(limit).collect()
    }
}

fn szondi_from_coords(c: [usize; 8]) -> SzondiProfile {
    SzondiProfile::new(c.map(|i| Signature::ALL[i]))
}

impl fmt::Debug for FactorBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(Factor::ALL.iter().map(|&g| (g.token(), self.allowed(g))))
            .finish()
    }
}

/// A product subset of Cattell profile space.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraitBox(Masks<28, 10>);

impl TraitBox {
    /// Every Cattell profile (10^28 of them).
    pub fn full() -> Self {
        TraitBox(Masks::full())
    }

    pub fn empty() -> Self {
        TraitBox(Masks::empty())
    }

    pub fn from_allowed(allowed: [ValueSet; 28]) -> Self {
        TraitBox(Masks(allowed.map(|s| s.0)).canonical())
    }

    pub fn singleton(f: &CattellProfile) -> Self {
        Self::from_allowed(f.values().map(ValueSet::singleton))
    }

    pub fn restrict(&self, t: TraitId, set: ValueSet) -> Self {
        let mut m = self.0;
        m.0[t.index()] &= set.0;
        TraitBox(m.canonical())
    }

    pub fn allowed(&self, t: TraitId) -> ValueSet {
        ValueSet(self.0 .0[t.index()])
    }

    pub fn allowed_sets(&self) -> [ValueSet; 28] {
        self.0 .0.map(ValueSet)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn contains(&self, f: &CattellProfile) -> bool {
        self.0.contains(&f.values().map(TraitValue::index))
    }

    pub fn intersect(&self, other: &TraitBox) -> TraitBox {
        TraitBox(self.0.intersect(&other.0))
    }

    pub fn is_subset(&self, other: &TraitBox) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn cardinality(&self) -> u128 {
        self.0.cardinality()
    }

    pub fn nth(&self, rank: u128) -> Option<CattellProfile> {
        self.0.nth(rank).map(cattell_from_coords)
    }

    /// Members in lexicographic order (trait order A..TI, values ascending).
    pub fn members(&self) -> impl Iterator<Item = CattellProfile> {
        self.0.iter().map(cattell_from_coords)
    }

    pub fn enumerate(&self, limit: usize) -> Vec<CattellProfile> {
        self.members().take(limit).collect()
    }
}

fn cattell_from_coords(c: [usize; 28]) -> CattellProfile {
    CattellProfile::new(c.map(|i| TraitValue::new(i as i64 + 1).expect("index below 10")))
}

impl fmt::Debug for TraitBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(TraitId::ALL.iter().map(|&t| (t.token(), self.allowed(t))))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Signature::*;

    fn norm() -> SzondiProfile {
        SzondiProfile::new([Plus, Plus, Minus, Minus, Minus, Minus, Plus, Plus])
    }

    #[test]
    fn membership_examples() {
        let b = FactorBox::only(Factor::H, SignatureSet::singleton(Plus));
        assert!(b.contains(&norm()));
        let e = FactorBox::only(Factor::H, SignatureSet::EMPTY);
        assert!(!e.contains(&norm()));
        assert!(!e.contains(&SzondiProfile::uniform(Zero)));
        assert!(FactorBox::full().contains(&norm()));
        let v5 = TraitValue::new(5).unwrap();
        assert!(TraitBox::full().contains(&CattellProfile::uniform(v5)));
    }

    #[test]
    fn intersect_conflict_on_s() {
        let a = FactorBox::only(Factor::S, SignatureSet::singleton(Zero));
        let b = FactorBox::only(Factor::S, [PlusQ1, MinusQ1].into_iter().collect());
        let c = a.intersect(&b);
        assert!(c.is_empty());
        assert!(c.allowed(Factor::S).is_empty());
        assert_eq!(c.cardinality(), 0);
        assert_eq!(c, FactorBox::empty());
    }

    #[test]
    fn intersect_identity_and_idempotence() {
        let a = FactorBox::only(Factor::K, [Zero, Pm].into_iter().collect())
            .restrict(Factor::D, SignatureSet::singleton(Plus));
        assert_eq!(a.intersect(&FactorBox::full()), a);
        assert_eq!(a.intersect(&a), a);
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(FactorBox::full().cardinality(), 429_981_696);
        assert_eq!(FactorBox::full().cardinality(), 12u128.pow(8));
        assert_eq!(
            FactorBox::singleton(&SzondiProfile::uniform(Zero)).cardinality(),
            1
        );
        assert_eq!(TraitBox::full().cardinality(), 10u128.pow(28));
        assert_eq!(
            TraitBox::full()
                .restrict(TraitId::TI, ValueSet::EMPTY)
                .cardinality(),
            0
        );
    }

    #[test]
    fn enumerate_examples() {
        assert!(FactorBox::empty().enumerate(5).is_empty());
        let z = SzondiProfile::uniform(Zero);
        assert_eq!(FactorBox::singleton(&z).enumerate(10), vec![z]);

        let first = FactorBox::full().enumerate(3);
        let base = [MinusQ3; 8];
        let mut second = base;
        second[7] = MinusQ2;
        let mut third = base;
        third[7] = MinusQ1;
        assert_eq!(
            first,
            vec![
                SzondiProfile::new(base),
                SzondiProfile::new(second),
                SzondiProfile::new(third)
            ]
        );
    }

    #[test]
    fn enumeration_wraps_across_dimensions() {
        let b = FactorBox::full()
            .restrict(Factor::H, [Minus, Plus].into_iter().collect())
            .restrict(Factor::M, [Zero, Pm].into_iter().collect());
        let b = Factor::ALL[1..7]
            .iter()
            .fold(b, |acc, &g| acc.restrict(g, SignatureSet::singleton(Zero)));
        let got: Vec<(Signature, Signature)> = b
            .members()
            .map(|p| (p.get(Factor::H), p.get(Factor::M)))
            .collect();
        assert_eq!(
            got,
            vec![(Minus, Zero), (Minus, Pm), (Plus, Zero), (Plus, Pm)]
        );
        for (i, p) in b.members().enumerate() {
            assert_eq!(b.nth(i as u128), Some(p));
        }
        assert_eq!(b.nth(4), None);
    }

    #[test]
    fn subset_and_flip() {
        let small = FactorBox::only(Factor::H, SignatureSet::singleton(PlusQ2));
        let big = FactorBox::only(Factor::H, [PlusQ2, Plus].into_iter().collect());
        assert!(small.is_subset(&big));
        assert!(!big.is_subset(&small));
        assert!(FactorBox::empty().is_subset(&small));
        assert_eq!(
            small.flip(),
            FactorBox::only(Factor::H, SignatureSet::singleton(MinusQ2))
        );
        assert!(FactorBox::full().flip().is_full());
    }

    #[test]
    fn trait_box_enumeration_is_lexicographic() {
        let v = |x| TraitValue::new(x).unwrap();
        let b = TraitId::ALL.iter().fold(TraitBox::full(), |acc, &t| {
            acc.restrict(t, ValueSet::singleton(v(5)))
        });
        let b = TraitBox::from_allowed({
            let mut a = b.allowed_sets();
            a[TraitId::A.index()] = [v(1), v(5), v(7)].into_iter().collect();
            a[TraitId::TI.index()] = [v(2), v(3)].into_iter().collect();
            a
        });
        assert_eq!(b.cardinality(), 6);
        let got: Vec<(u8, u8)> = b
            .members()
            .map(|f| (f.get(TraitId::A).get(), f.get(TraitId::TI).get()))
            .collect();
        assert_eq!(got, vec![(1, 2), (1, 3), (5, 2), (5, 3), (7, 2), (7, 3)]);
    }
}
