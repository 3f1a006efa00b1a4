//! Inclusion-exclusion counts for constraint systems and the closed-form
//! families derived from them.
//!
//! The three general counts sum a signed term over every subset `I` of the
//! constraint indices. Because domain blocks are disjoint, the term for `I`
//! only depends on the total size of the blocks in `I` and on a product of
//! per-constraint factors:
//!
//! | count | per-constraint factor | remaining positions |
//! |---|---|---|
//! | containment | `|Y_i|^|X_i|` | `n^(m-u)` |
//! | image equality | `|Y_i|! S(|X_i|, |Y_i|)` | `n^(m-u)` |
//! | injections, image equality | `|X_i|!` | `(n-u)^(m-u)` falling |
//!
//! where `u` is the size of the union of the chosen blocks.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::constraints::{Block, Constraint, ConstraintSystem, FunctionClass, Relation, Violation};
use crate::numeric::{binomial, factorial, falling_factorial, power, surjections, BigInteger};

/// Largest constraint count accepted by the subset sums.
pub const MAX_CONSTRAINTS: usize = 30;

/// A list of violations, displayed joined by `"; "`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Out-of-range parameters for a closed-form family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParameterError {
    #[error("k must not exceed m ({k} > {m})")]
    KExceedsM { m: u32, k: u32 },
    #[error("2k must not exceed m (2*{k} > {m})")]
    TwiceKExceedsM { m: u32, k: u32 },
    #[error("n must be at least {min}")]
    NTooSmall { n: u32, min: u32 },
    #[error("m must not exceed n ({m} > {n})")]
    MExceedsN { m: u32, n: u32 },
    #[error("block size k must be at least 1")]
    EmptyBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("invalid constraint system: {0}")]
    Invalid(Violations),
    #[error("{0}")]
    Unsupported(&'static str),
    #[error("constraint count too large: k = {k} exceeds {MAX_CONSTRAINTS}")]
    TooManyConstraints { k: usize },
    #[error(transparent)]
    Parameter(#[from] ParameterError),
}

/// A count together with the number of inclusion-exclusion terms summed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigInteger,
    pub terms_evaluated: u64,
}

fn check_system(
    system: &ConstraintSystem,
    class: FunctionClass,
    relation: Relation,
) -> Result<(), CountError> {
    system
        .validate()
        .map_err(|v| CountError::Invalid(Violations(v)))?;
    if system.class != class {
        return Err(CountError::Unsupported(match class {
            FunctionClass::AllFunctions => "this count applies to all functions, not injections",
            FunctionClass::Injections => "this count applies to injections only",
        }));
    }
    if system.relation().is_some_and(|r| r != relation) {
        return Err(CountError::Unsupported(match relation {
            Relation::Containment => "this count requires containment constraints",
            Relation::ImageEquality => "this count requires image-equality constraints",
        }));
    }
    if system.k() > MAX_CONSTRAINTS {
        return Err(CountError::TooManyConstraints { k: system.k() });
    }
    Ok(())
}

/// Sums `(-1)^|I| remaining(u_I) prod_{i in I} factor_i` over every subset
/// `I` of `0..sizes.len()`, where `u_I` is the summed block size.
fn signed_subset_sum(
    sizes: &[u32],
    factors: &[BigInteger],
    m: u32,
    remaining: impl Fn(u32) -> BigInteger,
) -> CountResult {
    debug_assert_eq!(sizes.len(), factors.len());
    let k = sizes.len();
    let bases: Vec<BigInteger> = (0..=m).map(remaining).collect();
    let mut total = BigInteger::zero();
    let subsets = 1u64 << k;
    for mask in 0..subsets {
        let mut union = 0u32;
        let mut product = BigInteger::one();
        for i in (0..k).filter(|i| mask >> i & 1 == 1) {
            union += sizes[i];
            product *= &factors[i];
        }
        let term = product * &bases[union as usize];
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    CountResult {
        value: total,
        terms_evaluated: subsets,
    }
}

fn domain_sizes(system: &ConstraintSystem) -> Vec<u32> {
    system
        .constraints
        .iter()
        .map(|c| c.domain.len() as u32)
        .collect()
}

/// Functions `[m] -> [n]` with `f(X_i) ⊄ Y_i` for every constraint.
pub fn count_avoiding_containment(system: &ConstraintSystem) -> Result<CountResult, CountError> {
    check_system(system, FunctionClass::AllFunctions, Relation::Containment)?;
    let factors: Vec<BigInteger> = system
        .constraints
        .iter()
        .map(|c| power(c.codomain.len() as u32, c.domain.len() as u32))
        .collect();
    let (m, n) = (system.m, system.n);
    Ok(signed_subset_sum(&domain_sizes(system), &factors, m, |u| {
        power(n, m - u)
    }))
}

/// Functions `[m] -> [n]` with `f(X_i) != Y_i` (as sets) for every constraint.
pub fn count_avoiding_image_equality(
    system: &ConstraintSystem,
) -> Result<CountResult, CountError> {
    check_system(system, FunctionClass::AllFunctions, Relation::ImageEquality)?;
    let factors: Vec<BigInteger> = system
        .constraints
        .iter()
        .map(|c| surjections(c.domain.len() as u32, c.codomain.len() as u32))
        .collect();
    let (m, n) = (system.m, system.n);
    Ok(signed_subset_sum(&domain_sizes(system), &factors, m, |u| {
        power(n, m - u)
    }))
}

/// Injections `[m] -> [n]` with `f(X_i) != Y_i` for every constraint.
/// Requires `|X_i| = |Y_i|` and pairwise disjoint `Y_i`.
pub fn count_injections_avoiding_image_equality(
    system: &ConstraintSystem,
) -> Result<CountResult, CountError> {
    check_system(system, FunctionClass::Injections, Relation::ImageEquality)?;
    let factors: Vec<BigInteger> = system
        .constraints
        .iter()
        .map(|c| factorial(c.domain.len() as u32))
        .collect();
    let (m, n) = (system.m, system.n);
    Ok(signed_subset_sum(&domain_sizes(system), &factors, m, |u| {
        falling_factorial(n - u, m - u)
    }))
}

/// Dispatches on the system's class and relation kind.
pub fn count(system: &ConstraintSystem) -> Result<CountResult, CountError> {
    match (system.class, system.relation()) {
        (FunctionClass::AllFunctions, None | Some(Relation::Containment)) => {
            count_avoiding_containment(system)
        }
        (FunctionClass::AllFunctions, Some(Relation::ImageEquality)) => {
            count_avoiding_image_equality(system)
        }
        (FunctionClass::Injections, None | Some(Relation::ImageEquality)) => {
            count_injections_avoiding_image_equality(system)
        }
        (FunctionClass::Injections, Some(Relation::Containment)) => {
            system
                .validate()
                .map_err(|v| CountError::Invalid(Violations(v)))?;
            Err(CountError::Unsupported(
                "no formula for injections with containment constraints",
            ))
        }
    }
}

/// The five function families with `k` identical point or 2-block
/// constraints. Each counts `n^(m-bk) (n^b - a)^k` functions, where `b` is
/// the domain block size and `a` the number of forbidden images per block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `f(x_i) != y_i`
    D11,
    /// `f(x_i)` not in a 2-set `Y_i`
    D12,
    /// `f(X_i) != {y_i}` for 2-blocks `X_i`
    D21,
    /// `f(X_i)` not inside a 2-set `Y_i` for 2-blocks `X_i`
    D22,
    /// `f(X_i) != Y_i` for 2-blocks `X_i` and 2-sets `Y_i`
    S22,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 5] = [
        ClosedForm::D11,
        ClosedForm::D12,
        ClosedForm::D21,
        ClosedForm::D22,
        ClosedForm::S22,
    ];

    /// Size of each domain block.
    pub fn block_size(self) -> u32 {
        match self {
            ClosedForm::D11 | ClosedForm::D12 => 1,
            ClosedForm::D21 | ClosedForm::D22 | ClosedForm::S22 => 2,
        }
    }

    /// Size of each codomain set.
    pub fn target_size(self) -> u32 {
        match self {
            ClosedForm::D11 | ClosedForm::D21 => 1,
            ClosedForm::D12 | ClosedForm::D22 | ClosedForm::S22 => 2,
        }
    }

    /// Number of functions on one block that hit the forbidden event.
    pub fn forbidden_per_block(self) -> u32 {
        match self {
            ClosedForm::D11 | ClosedForm::D21 => 1,
            ClosedForm::D12 | ClosedForm::S22 => 2,
            ClosedForm::D22 => 4,
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            ClosedForm::S22 => Relation::ImageEquality,
            _ => Relation::Containment,
        }
    }

    pub fn check(self, m: u32, n: u32, k: u32) -> Result<(), ParameterError> {
        let min_n = self.target_size();
        if n < min_n {
            return Err(ParameterError::NTooSmall { n, min: min_n });
        }
        match self.block_size() {
            1 if k > m => Err(ParameterError::KExceedsM { m, k }),
            2 if 2 * u64::from(k) > u64::from(m) => Err(ParameterError::TwiceKExceedsM { m, k }),
            _ => Ok(()),
        }
    }

    /// `n^(m-bk) (n^b - a)^k`.
    pub fn closed_form(self, m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
        self.check(m, n, k)?;
        let b = self.block_size();
        let per_block = power(n, b) - self.forbidden_per_block();
        Ok(power(n, m - b * k) * num_traits::pow(per_block, k as usize))
    }

    /// `sum_i (-a)^i C(k, i) n^(m-bi)`.
    pub fn alternating_sum(self, m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
        self.check(m, n, k)?;
        let b = self.block_size();
        let a = BigInteger::from(self.forbidden_per_block());
        let mut total = BigInteger::zero();
        let mut weight = BigInteger::one();
        for i in 0..=k {
            total += &weight * binomial(k, i) * power(n, m - b * i);
            weight *= -&a;
        }
        Ok(total)
    }

    /// A constraint system realizing the family: blocks laid out left to
    /// right in `[m]`, targets cycling through `[n]`.
    pub fn canonical_system(self, m: u32, n: u32, k: u32) -> Result<ConstraintSystem, ParameterError> {
        self.check(m, n, k)?;
        let b = self.block_size();
        let t = self.target_size();
        let constraints = (0..k)
            .map(|i| {
                let start = i % (n - t + 1) + 1;
                Constraint::new(
                    Block::range(i * b + 1, b),
                    Block::range(start, t),
                    self.relation(),
                )
            })
            .collect();
        Ok(ConstraintSystem::new(
            m,
            n,
            FunctionClass::AllFunctions,
            constraints,
        ))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedForm::D11 => "d11",
            ClosedForm::D12 => "d12",
            ClosedForm::D21 => "d21",
            ClosedForm::D22 => "d22",
            ClosedForm::S22 => "s22",
        })
    }
}

/// `n^(m-k) (n-1)^k`
pub fn d11(m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    ClosedForm::D11.closed_form(m, n, k)
}

/// `n^(m-k) (n-2)^k`
pub fn d12(m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    ClosedForm::D12.closed_form(m, n, k)
}

/// `n^(m-2k) (n^2-1)^k`
pub fn d21(m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    ClosedForm::D21.closed_form(m, n, k)
}

/// `n^(m-2k) (n^2-4)^k`
pub fn d22(m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    ClosedForm::D22.closed_form(m, n, k)
}

/// `n^(m-2k) (n^2-2)^k`
pub fn s22(m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    ClosedForm::S22.closed_form(m, n, k)
}

/// True iff the alternating-sum and product forms of `family` agree.
pub fn closed_form_vs_sum_check(
    family: ClosedForm,
    m: u32,
    n: u32,
    k: u32,
) -> Result<bool, ParameterError> {
    Ok(family.closed_form(m, n, k)? == family.alternating_sum(m, n, k)?)
}

fn check_i1(m: u32, n: u32, k: u32) -> Result<(), ParameterError> {
    if m > n {
        return Err(ParameterError::MExceedsN { m, n });
    }
    if k > m {
        return Err(ParameterError::KExceedsM { m, k });
    }
    Ok(())
}

/// Injections `[m] -> [n]` avoiding `k` point constraints `f(x_i) != y_i`
/// with distinct `x_i` and distinct `y_i`:
/// `sum_i (-1)^i C(k, i) (n-i)^(m-i)` (falling).
pub fn i1(m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    check_i1(m, n, k)?;
    let mut total = BigInteger::zero();
    for i in 0..=k {
        let term = binomial(k, i) * falling_factorial(n - i, m - i);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Permutations of `[nk]` that map no block of a fixed partition into
/// `n` blocks of size `k` onto itself:
/// `sum_i (-1)^i C(n, i) (k!)^i (nk - ik)!`.
///
/// The binomial factor counts which `i` blocks are held fixed; dropping it
/// gives 24 instead of 20 at `n = k = 2`.
pub fn block_derangements(n: u32, k: u32) -> Result<BigInteger, ParameterError> {
    if k == 0 {
        return Err(ParameterError::EmptyBlocks);
    }
    let block = factorial(k);
    let mut block_power = BigInteger::one();
    let mut total = BigInteger::zero();
    for i in 0..=n {
        let term = binomial(n, i) * &block_power * factorial((n - i) * k);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        block_power *= &block;
    }
    Ok(total)
}

/// Every named family, for catalog rows and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    D11,
    D12,
    D21,
    D22,
    S22,
    I1,
    BlockDerangement,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::D11,
        Family::D12,
        Family::D21,
        Family::D22,
        Family::S22,
        Family::I1,
        Family::BlockDerangement,
    ];

    pub fn closed_form(self) -> Option<ClosedForm> {
        match self {
            Family::D11 => Some(ClosedForm::D11),
            Family::D12 => Some(ClosedForm::D12),
            Family::D21 => Some(ClosedForm::D21),
            Family::D22 => Some(ClosedForm::D22),
            Family::S22 => Some(ClosedForm::S22),
            Family::I1 | Family::BlockDerangement => None,
        }
    }

    /// Whether the family is parameterized by `(n, k)` only.
    pub fn ignores_m(self) -> bool {
        self == Family::BlockDerangement
    }

    pub fn check(self, m: u32, n: u32, k: u32) -> Result<(), ParameterError> {
        match self {
            Family::I1 => check_i1(m, n, k),
            Family::BlockDerangement => {
                if k == 0 {
                    Err(ParameterError::EmptyBlocks)
                } else {
                    Ok(())
                }
            }
            other => other.closed_form().expect("closed form").check(m, n, k),
        }
    }

    /// Evaluates the family. `m` is ignored for block derangements, which
    /// permute `[nk]`.
    pub fn evaluate(self, m: u32, n: u32, k: u32) -> Result<BigInteger, ParameterError> {
        match self {
            Family::I1 => i1(m, n, k),
            Family::BlockDerangement => block_derangements(n, k),
            other => other.closed_form().expect("closed form").closed_form(m, n, k),
        }
    }

    /// A constraint system whose solutions the family counts.
    pub fn canonical_system(self, m: u32, n: u32, k: u32) -> Result<ConstraintSystem, ParameterError> {
        match self {
            Family::I1 => {
                check_i1(m, n, k)?;
                let constraints = (1..=k)
                    .map(|i| {
                        Constraint::new(Block::singleton(i), Block::singleton(i), Relation::ImageEquality)
                    })
                    .collect();
                Ok(ConstraintSystem::new(m, n, FunctionClass::Injections, constraints))
            }
            Family::BlockDerangement => {
                self.check(m, n, k)?;
                Ok(block_partition_system(n, k))
            }
            other => other
                .closed_form()
                .expect("closed form")
                .canonical_system(m, n, k),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::D11 => "d11",
            Family::D12 => "d12",
            Family::D21 => "d21",
            Family::D22 => "d22",
            Family::S22 => "s22",
            Family::I1 => "i1",
            Family::BlockDerangement => "blockderange",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "i" => return Ok(Family::I1),
            "blockderangement" | "block-derangement" => return Ok(Family::BlockDerangement),
            _ => {}
        }
        Family::ALL
            .into_iter()
            .find(|f| f.name() == lower)
            .ok_or_else(|| alloc::format!("unknown family '{s}'"))
    }
}

/// Permutations of `[nk]` (as injections `[nk] -> [nk]`) with
/// `f(X_i) != X_i` for the partition `X_i = {(i-1)k+1, ..., ik}`.
/// For `n = 0` the system is the empty permutation of an empty set with a
/// one-element codomain, which has the same single solution.
pub fn block_partition_system(n: u32, k: u32) -> ConstraintSystem {
    let size = n * k;
    let constraints = (0..n)
        .map(|i| {
            let block = Block::range(i * k + 1, k);
            Constraint::new(block.clone(), block, Relation::ImageEquality)
        })
        .collect();
    ConstraintSystem::new(size, size.max(1), FunctionClass::Injections, constraints)
}
