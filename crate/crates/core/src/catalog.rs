//! Sequence identifications: each row ties an OEIS A-number to a family
//! evaluated along one free index.
//!
//! Rows are transcribed as published, including duplicate and suspect
//! claims. Whether a row holds is decided by comparing generated terms with
//! OEIS data, not here.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::counting::{Family, ParameterError};
use crate::numeric::BigInteger;

/// One family argument as a function of the free index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    /// `n`
    Index,
    /// `n + c`
    Offset(i32),
    /// `c`
    Const(u32),
    /// `2n`
    Twice,
}

impl Param {
    /// `None` when the expression is negative or overflows.
    pub fn eval(self, index: u32) -> Option<u32> {
        match self {
            Param::Index => Some(index),
            Param::Offset(c) => u32::try_from(i64::from(index) + i64::from(c)).ok(),
            Param::Const(c) => Some(c),
            Param::Twice => index.checked_mul(2),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Param::Index => f.write_str("n"),
            Param::Offset(c) if c < 0 => write!(f, "n-{}", -c),
            Param::Offset(c) => write!(f, "n+{c}"),
            Param::Const(c) => write!(f, "{c}"),
            Param::Twice => f.write_str("2n"),
        }
    }
}

/// Accepts `n`, `2n`, `n+c`, `n-c` and nonnegative constants.
impl core::str::FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || alloc::format!("unsupported parameter expression '{s}'");
        match t.as_str() {
            "n" => Ok(Param::Index),
            "2n" | "2*n" => Ok(Param::Twice),
            _ => {
                if let Some(rest) = t.strip_prefix("n+") {
                    rest.parse().map(Param::Offset).map_err(|_| bad())
                } else if let Some(rest) = t.strip_prefix("n-") {
                    rest.parse::<i32>().map(|c| Param::Offset(-c)).map_err(|_| bad())
                } else {
                    t.parse().map(Param::Const).map_err(|_| bad())
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Params {
    /// `(m, n, k)` for the function and injection families.
    Mnk { m: Param, n: Param, k: Param },
    /// `(n, k)` for block derangements.
    Nk { n: Param, k: Param },
    /// No parameterization is known.
    Unbound,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterBinding {
    pub family: Family,
    pub params: Params,
    pub free_index: &'static str,
    /// Smallest index at which the family's preconditions hold.
    pub start_index: u32,
}

/// Searched when looking for the first valid index of a binding.
const START_SEARCH_LIMIT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("binding is unbound; no terms can be generated")]
    Unbound,
    #[error("count must be at least 1")]
    EmptyRange,
    #[error("index {index} is before the first valid index {start}")]
    BeforeStart { index: u32, start: u32 },
    #[error("index {index}: parameter expression is negative")]
    NegativeParameter { index: u32 },
    #[error("index {index}: {source}")]
    Precondition { index: u32, source: ParameterError },
}

impl ParameterBinding {
    /// Binds `family` and computes `start_index`. Unbound bindings start at 0.
    pub fn new(family: Family, params: Params) -> Self {
        let mut binding = ParameterBinding {
            family,
            params,
            free_index: "n",
            start_index: 0,
        };
        if params != Params::Unbound {
            binding.start_index = (0..=START_SEARCH_LIMIT)
                .find(|&i| binding.evaluate(i).is_ok())
                .unwrap_or(START_SEARCH_LIMIT);
        }
        binding
    }

    pub fn mnk(family: Family, m: Param, n: Param, k: Param) -> Self {
        ParameterBinding::new(family, Params::Mnk { m, n, k })
    }

    pub fn nk(n: Param, k: Param) -> Self {
        ParameterBinding::new(Family::BlockDerangement, Params::Nk { n, k })
    }

    pub fn unbound(family: Family) -> Self {
        ParameterBinding::new(family, Params::Unbound)
    }

    pub fn is_bound(&self) -> bool {
        self.params != Params::Unbound
    }

    /// Family arguments `(m, n, k)` at `index`; `m` is 0 for `Nk` bindings.
    pub fn arguments(&self, index: u32) -> Result<(u32, u32, u32), TermError> {
        let neg = TermError::NegativeParameter { index };
        match self.params {
            Params::Mnk { m, n, k } => Ok((
                m.eval(index).ok_or(neg.clone())?,
                n.eval(index).ok_or(neg.clone())?,
                k.eval(index).ok_or(neg)?,
            )),
            Params::Nk { n, k } => Ok((0, n.eval(index).ok_or(neg.clone())?, k.eval(index).ok_or(neg)?)),
            Params::Unbound => Err(TermError::Unbound),
        }
    }

    /// The family evaluated at one index, ignoring `start_index`.
    pub fn evaluate(&self, index: u32) -> Result<BigInteger, TermError> {
        let (m, n, k) = self.arguments(index)?;
        self.family
            .evaluate(m, n, k)
            .map_err(|source| TermError::Precondition { index, source })
    }

    /// Terms at `from, from + 1, ..., from + count - 1`.
    pub fn generate_terms(&self, from: u32, count: u32) -> Result<Vec<BigInteger>, TermError> {
        if !self.is_bound() {
            return Err(TermError::Unbound);
        }
        if count == 0 {
            return Err(TermError::EmptyRange);
        }
        if from < self.start_index {
            return Err(TermError::BeforeStart {
                index: from,
                start: self.start_index,
            });
        }
        (from..from + count).map(|i| self.evaluate(i)).collect()
    }
}

impl fmt::Display for ParameterBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.params {
            Params::Mnk { m, n, k } => write!(f, "{}({m},{n},{k})", self.family),
            Params::Nk { n, k } => write!(f, "{}({n},{k})", self.family),
            Params::Unbound => write!(f, "{}(unbound)", self.family),
        }
    }
}

/// Free-function form of [`ParameterBinding::generate_terms`].
pub fn generate_terms(
    binding: &ParameterBinding,
    from: u32,
    count: u32,
) -> Result<Vec<BigInteger>, TermError> {
    binding.generate_terms(from, count)
}

/// OEIS identifier: `A` followed by exactly six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ANumber {
    Valid(u32),
    /// Printed text that is not a well-formed identifier.
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid A-number '{0}'")]
pub struct InvalidANumber(pub String);

impl ANumber {
    /// Classifies `text` without failing.
    pub fn classify(text: &str) -> Self {
        match parse_a_number(text) {
            Ok(id) => ANumber::Valid(id),
            Err(_) => ANumber::Malformed(text.into()),
        }
    }

    pub fn id(&self) -> Option<u32> {
        match self {
            ANumber::Valid(id) => Some(*id),
            ANumber::Malformed(_) => None,
        }
    }

    pub fn is_malformed(&self) -> bool {
        matches!(self, ANumber::Malformed(_))
    }
}

impl fmt::Display for ANumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ANumber::Valid(id) => write!(f, "A{id:06}"),
            ANumber::Malformed(text) => f.write_str(text),
        }
    }
}

/// Parses `"A000079"` to `79`.
pub fn parse_a_number(text: &str) -> Result<u32, InvalidANumber> {
    let invalid = || InvalidANumber(text.into());
    let digits = text.strip_prefix('A').ok_or_else(invalid)?;
    if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    digits.parse().map_err(|_| invalid())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    /// Tables 1 to 5.
    Numbered(u8),
    /// The single sequence named for the `S22` family.
    S22,
    /// Sequences attributed to block derangements without parameters.
    Note2,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::Numbered(1),
        TableId::Numbered(2),
        TableId::Numbered(3),
        TableId::Numbered(4),
        TableId::S22,
        TableId::Numbered(5),
        TableId::Note2,
    ];
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableId::Numbered(t) => write!(f, "{t}"),
            TableId::S22 => f.write_str("s22"),
            TableId::Note2 => f.write_str("note2"),
        }
    }
}

impl core::str::FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s22" => Ok(TableId::S22),
            "note2" => Ok(TableId::Note2),
            other => match other.parse::<u8>() {
                Ok(t @ 1..=5) => Ok(TableId::Numbered(t)),
                _ => Err(alloc::format!("unknown table '{s}'")),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableEntry {
    pub table: TableId,
    /// 1-based position within the table.
    pub row: u32,
    pub a_number: ANumber,
    pub binding: ParameterBinding,
}

use Param::{Const as C, Index as N};

fn rows(
    table: TableId,
    family: Family,
    spec: &'static [(&'static str, Param, Param, Param)],
) -> impl Iterator<Item = TableEntry> {
    spec.iter()
        .enumerate()
        .map(move |(i, &(a, m, n, k))| TableEntry {
            table,
            row: i as u32 + 1,
            a_number: ANumber::classify(a),
            binding: ParameterBinding::mnk(family, m, n, k),
        })
}

const TABLE1: [(&str, Param, Param, Param); 38] = [
    ("A001477", C(1), N, C(1)),
    ("A002378", C(2), N, C(1)),
    ("A045991", C(3), N, C(1)),
    ("A085537", C(4), N, C(1)),
    ("A085538", C(5), N, C(1)),
    ("A085539", C(6), N, C(1)),
    ("A000079", N, C(2), C(1)),
    ("A008776", N, C(3), C(1)),
    ("A002001", N, C(4), C(1)),
    ("A005054", N, C(5), C(1)),
    ("A052934", N, C(6), C(1)),
    ("A055272", N, C(7), C(1)),
    ("A055274", N, C(8), C(1)),
    ("A055275", N, C(9), C(1)),
    ("A052268", N, C(10), C(1)),
    ("A055276", N, C(11), C(1)),
    ("A000290", C(2), N, C(2)),
    ("A011379", C(3), N, C(2)),
    ("A035287", C(4), N, C(2)),
    ("A099762", C(5), N, C(2)),
    ("A000079", N, C(2), C(2)),
    ("A003946", N, C(3), C(2)),
    ("A002063", N, C(4), C(2)),
    ("A055842", N, C(5), C(2)),
    ("A055846", N, C(6), C(2)),
    ("A055270", N, C(7), C(2)),
    ("A055847", N, C(8), C(2)),
    ("A055995", N, C(9), C(2)),
    ("A055996", N, C(10), C(2)),
    ("A056002", N, C(11), C(2)),
    ("A056116", N, C(12), C(2)),
    ("A076728", N, N, C(2)),
    ("A000578", C(3), N, C(3)),
    ("A005051", N, C(3), C(3)),
    ("A056120", N, C(4), C(3)),
    ("A000583", C(4), N, C(4)),
    ("A101362", C(5), N, C(4)),
    ("A118265", N, C(4), C(4)),
];

const TABLE2: [(&str, Param, Param, Param); 12] = [
    ("A000027", C(1), N, C(1)),
    ("A005563", C(2), N, C(1)),
    ("A027620", C(3), N, C(1)),
    ("A000244", N, C(3), C(1)),
    ("A004171", N, C(4), C(1)),
    ("A005053", N, C(5), C(1)),
    ("A067411", N, C(6), C(1)),
    ("A000290", C(2), N, C(2)),
    ("A0002444", N, C(3), C(2)),
    ("A000578", C(3), N, C(3)),
    ("A081294", N, C(4), C(3)),
    ("A000583", C(4), N, C(4)),
];

const TABLE3: [(&str, Param, Param, Param); 5] = [
    ("A005563", C(2), N, C(1)),
    ("A007531", C(3), N, C(1)),
    ("A047982", C(4), N, C(1)),
    ("A005051", N, C(3), C(1)),
    ("A005010", N, C(2), C(2)),
];

const TABLE4: [(&str, Param, Param, Param); 3] = [
    ("A005030", N, C(3), C(1)),
    ("A002001", N, C(4), C(1)),
    ("A002063", N, C(4), C(2)),
];

/// The family's one named sequence carries no parameters; `S22(n, 3, 1)`
/// is the reading whose terms are `7 * 3^(n-2)`.
const S22_ROW: [(&str, Param, Param, Param); 1] = [("A005032", N, C(3), C(1))];

const PREV: Param = Param::Offset(-1);
const PREV2: Param = Param::Offset(-2);

const TABLE5: [(&str, Param, Param, Param); 28] = [
    ("A000290", C(2), N, C(1)),
    ("A045991", C(3), N, C(1)),
    ("A114436", C(3), N, C(1)),
    ("A047929", C(4), N, C(1)),
    ("A001563", N, N, C(1)),
    ("A001564", N, N, C(2)),
    ("A001565", N, N, C(3)),
    ("A002061", C(2), N, C(2)),
    ("A027444", C(3), N, C(2)),
    ("A058895", C(4), N, C(2)),
    ("A027444", C(3), N, C(2)),
    ("A074143", PREV, N, C(1)),
    ("A001563", PREV, N, C(1)),
    ("A094304", PREV, N, C(1)),
    ("A109074", PREV, N, C(1)),
    ("A094258", PREV, N, C(1)),
    ("A001564", PREV, N, C(2)),
    ("A001565", PREV, N, C(3)),
    ("A001688", PREV, N, C(4)),
    ("A001689", PREV, N, C(5)),
    ("A023043", PREV, N, C(6)),
    ("A023044", PREV, N, C(7)),
    ("A023045", PREV, N, C(8)),
    ("A023046", PREV, N, C(9)),
    ("A023407", PREV, N, C(10)),
    ("A001563", PREV2, N, C(1)),
    ("A001564", PREV2, N, C(2)),
    ("A061079", N, Param::Twice, C(1)),
];

const NOTE2: [&str; 5] = ["A128805", "A127888", "A116221", "A116220", "A116219"];

/// Every transcribed row, in table order.
pub fn builtin_table() -> Vec<TableEntry> {
    let mut entries: Vec<TableEntry> = Vec::with_capacity(92);
    entries.extend(rows(TableId::Numbered(1), Family::D11, &TABLE1));
    entries.extend(rows(TableId::Numbered(2), Family::D12, &TABLE2));
    entries.extend(rows(TableId::Numbered(3), Family::D21, &TABLE3));
    entries.extend(rows(TableId::Numbered(4), Family::D22, &TABLE4));
    entries.extend(rows(TableId::S22, Family::S22, &S22_ROW));
    entries.extend(rows(TableId::Numbered(5), Family::I1, &TABLE5));
    entries.extend(NOTE2.iter().enumerate().map(|(i, a)| TableEntry {
        table: TableId::Note2,
        row: i as u32 + 1,
        a_number: ANumber::classify(a),
        binding: ParameterBinding::unbound(Family::BlockDerangement),
    }));
    entries
}

/// The row `row` of `table`, if present.
pub fn lookup(table: TableId, row: u32) -> Option<TableEntry> {
    builtin_table()
        .into_iter()
        .find(|e| e.table == table && e.row == row)
}
