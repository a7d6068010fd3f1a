//! Profile spaces: Szondi signatures and factors, Cattell traits and values,
//! and the two profile types built from them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown signature `{0}`")]
    Signature(String),
    #[error("unknown factor `{0}`")]
    Factor(String),
    #[error("unknown trait `{0}`")]
    Trait(String),
    #[error("trait value {0} outside 1..=10")]
    Value(i64),
}

/// One of Szondi's twelve reaction signs.
///
/// Declaration order is the canonical order: the nine-element chain from
/// `-!!!` to `+!!!`, then the ambivalence chain `pm_!`, `pm`, `pm^!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    MinusQ3,
    MinusQ2,
    MinusQ1,
    Minus,
    Zero,
    Plus,
    PlusQ1,
    PlusQ2,
    PlusQ3,
    /// Ambivalence with rejection bias.
    PmLow,
    /// Ambivalence without bias.
    Pm,
    /// Ambivalence with approval bias.
    PmHigh,
}

impl Signature {
    pub const COUNT: usize = 12;

    pub const ALL: [Signature; 12] = [
        Signature::MinusQ3,
        Signature::MinusQ2,
        Signature::MinusQ1,
        Signature::Minus,
        Signature::Zero,
        Signature::Plus,
        Signature::PlusQ1,
        Signature::PlusQ2,
        Signature::PlusQ3,
        Signature::PmLow,
        Signature::Pm,
        Signature::PmHigh,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Signature> {
        Self::ALL.get(i).copied()
    }

    pub fn token(self) -> &'static str {
        match self {
            Signature::MinusQ3 => "-!!!",
            Signature::MinusQ2 => "-!!",
            Signature::MinusQ1 => "-!",
            Signature::Minus => "-",
            Signature::Zero => "0",
            Signature::Plus => "+",
            Signature::PlusQ1 => "+!",
            Signature::PlusQ2 => "+!!",
            Signature::PlusQ3 => "+!!!",
            Signature::PmLow => "pm_!",
            Signature::Pm => "pm",
            Signature::PmHigh => "pm^!",
        }
    }

    /// Which of the two disconnected chains of the Hasse diagram the sign
    /// lives on, together with its height on that chain.
    fn chain_position(self) -> (bool, usize) {
        let i = self.index();
        if i < 9 {
            (false, i)
        } else {
            (true, i - 9)
        }
    }

    /// The partial order of the Hasse diagram: a 9-chain and a 3-chain with
    /// no comparabilities between them.
    pub fn leq(self, other: Signature) -> bool {
        let (ca, ha) = self.chain_position();
        let (cb, hb) = other.chain_position();
        ca == cb && ha <= hb
    }

    /// Swaps approval and rejection at equal quantum count.
    pub fn flip(self) -> Signature {
        match self {
            Signature::MinusQ3 => Signature::PlusQ3,
            Signature::MinusQ2 => Signature::PlusQ2,
            Signature::MinusQ1 => Signature::PlusQ1,
            Signature::Minus => Signature::Plus,
            Signature::Zero => Signature::Zero,
            Signature::Plus => Signature::Minus,
            Signature::PlusQ1 => Signature::MinusQ1,
            Signature::PlusQ2 => Signature::MinusQ2,
            Signature::PlusQ3 => Signature::MinusQ3,
            Signature::PmLow => Signature::PmHigh,
            Signature::Pm => Signature::Pm,
            Signature::PmHigh => Signature::PmLow,
        }
    }
}

pub fn signature_leq(a: Signature, b: Signature) -> bool {
    a.leq(b)
}

pub fn signature_flip(a: Signature) -> Signature {
    a.flip()
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Signature {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Signature::ALL
            .iter()
            .copied()
            .find(|sig| sig.token() == s)
            .ok_or_else(|| ParseError::Signature(s.to_string()))
    }
}

/// Szondi's four vectors, each grouping two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vector {
    S,
    P,
    Sch,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    H,
    S,
    E,
    Hy,
    K,
    P,
    D,
    M,
}

impl Factor {
    pub const COUNT: usize = 8;

    pub const ALL: [Factor; 8] = [
        Factor::H,
        Factor::S,
        Factor::E,
        Factor::Hy,
        Factor::K,
        Factor::P,
        Factor::D,
        Factor::M,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Factor> {
        Self::ALL.get(i).copied()
    }

    pub fn token(self) -> &'static str {
        match self {
            Factor::H => "h",
            Factor::S => "s",
            Factor::E => "e",
            Factor::Hy => "hy",
            Factor::K => "k",
            Factor::P => "p",
            Factor::D => "d",
            Factor::M => "m",
        }
    }

    pub fn vector(self) -> Vector {
        match self {
            Factor::H | Factor::S => Vector::S,
            Factor::E | Factor::Hy => Vector::P,
            Factor::K | Factor::P => Vector::Sch,
            Factor::D | Factor::M => Vector::C,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Factor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Factor::ALL
            .iter()
            .copied()
            .find(|g| g.token() == s)
            .ok_or_else(|| ParseError::Factor(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraitKind {
    Normal,
    Abnormal,
}

/// The 16 normal personality factors followed by the 12 abnormal traits,
/// in questionnaire order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TraitId {
    A,
    B,
    C,
    E,
    F,
    G,
    H,
    I,
    L,
    M,
    N,
    O,
    Q1,
    Q2,
    Q3,
    Q4,
    PS,
    HC,
    ST,
    AD,
    LE,
    SR,
    AW,
    PI,
    OT,
    AP,
    TS,
    TI,
}

impl TraitId {
    pub const COUNT: usize = 28;

    pub const ALL: [TraitId; 28] = [
        TraitId::A,
        TraitId::B,
        TraitId::C,
        TraitId::E,
        TraitId::F,
        TraitId::G,
        TraitId::H,
        TraitId::I,
        TraitId::L,
        TraitId::M,
        TraitId::N,
        TraitId::O,
        TraitId::Q1,
        TraitId::Q2,
        TraitId::Q3,
        TraitId::Q4,
        TraitId::PS,
        TraitId::HC,
        TraitId::ST,
        TraitId::AD,
        TraitId::LE,
        TraitId::SR,
        TraitId::AW,
        TraitId::PI,
        TraitId::OT,
        TraitId::AP,
        TraitId::TS,
        TraitId::TI,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<TraitId> {
        Self::ALL.get(i).copied()
    }

    pub fn kind(self) -> TraitKind {
        if self.index() < 16 {
            TraitKind::Normal
        } else {
            TraitKind::Abnormal
        }
    }

    pub fn token(self) -> &'static str {
        const TOKENS: [&str; 28] = [
            "A", "B", "C", "E", "F", "G", "H", "I", "L", "M", "N", "O", "Q1", "Q2", "Q3", "Q4",
            "PS", "HC", "ST", "AD", "LE", "SR", "AW", "PI", "OT", "AP", "TS", "TI",
        ];
        TOKENS[self.index()]
    }
}

impl fmt::Display for TraitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for TraitId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TraitId::ALL
            .iter()
            .copied()
            .find(|t| t.token() == s)
            .ok_or_else(|| ParseError::Trait(s.to_string()))
    }
}

/// A Cattell score in `1..=10`. Values `1..=5` form the low range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraitValue(u8);

impl TraitValue {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 10;

    pub fn new(v: i64) -> Result<TraitValue, ParseError> {
        if (Self::MIN as i64..=Self::MAX as i64).contains(&v) {
            Ok(TraitValue(v as u8))
        } else {
            Err(ParseError::Value(v))
        }
    }

    pub fn all() -> impl Iterator<Item = TraitValue> + Clone {
        (Self::MIN..=Self::MAX).map(TraitValue)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position within `1..=10`.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub fn is_low(self) -> bool {
        self.0 <= 5
    }
}

impl fmt::Display for TraitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Szondi personality profile: one signature per factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SzondiProfile([Signature; 8]);

impl SzondiProfile {
    pub fn new(signatures: [Signature; 8]) -> Self {
        SzondiProfile(signatures)
    }

    pub fn uniform(sig: Signature) -> Self {
        SzondiProfile([sig; 8])
    }

    pub fn get(&self, factor: Factor) -> Signature {
        self.0[factor.index()]
    }

    pub fn set(&mut self, factor: Factor, sig: Signature) {
        self.0[factor.index()] = sig;
    }

    pub fn signatures(&self) -> &[Signature; 8] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (Factor, Signature)> + '_ {
        Factor::ALL.iter().map(move |&g| (g, self.get(g)))
    }
}

impl fmt::Display for SzondiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (g, s)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}{s}")?;
        }
        f.write_str(")")
    }
}

/// A Cattell PsychEval profile: one value per trait.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CattellProfile([TraitValue; 28]);

impl CattellProfile {
    pub fn new(values: [TraitValue; 28]) -> Self {
        CattellProfile(values)
    }

    pub fn uniform(v: TraitValue) -> Self {
        CattellProfile([v; 28])
    }

    pub fn get(&self, t: TraitId) -> TraitValue {
        self.0[t.index()]
    }

    pub fn set(&mut self, t: TraitId, v: TraitValue) {
        self.0[t.index()] = v;
    }

    pub fn with(mut self, t: TraitId, v: TraitValue) -> Self {
        self.set(t, v);
        self
    }

    pub fn values(&self) -> &[TraitValue; 28] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (TraitId, TraitValue)> + '_ {
        TraitId::ALL.iter().map(move |&t| (t, self.get(t)))
    }
}

impl fmt::Display for CattellProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (t, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}={v}")?;
        }
        f.write_str(")")
    }
}
