//! Brute-force counters used as ground truth for the formulas.
//!
//! Every candidate function is generated and tested against each constraint
//! literally: the image `f(X_i)` is collected as a sorted set and compared to
//! `Y_i`. Nothing here shares code with [`crate::counting`].
//!
//! Candidates are numbered in lexicographic order, so the search space can be
//! cut into contiguous index ranges and counted independently with
//! [`Enumerator::count_range`].

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::constraints::{ConstraintSystem, FunctionClass, Relation};
use crate::counting::{block_partition_system, ParameterError, Violations};
use crate::numeric::BigInteger;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest set size accepted by [`enumerate_stirling2`].
pub const MAX_PARTITION_SIZE: u32 = 12;

/// Upper bound on the number of candidates an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_search_space: u64,
}

impl EnumerationBudget {
    pub fn new(max_search_space: u64) -> Self {
        EnumerationBudget { max_search_space }
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget::new(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid constraint system: {0}")]
    Invalid(Violations),
    #[error("search space exceeds budget: {space} candidates > {budget}")]
    BudgetExceeded { space: BigInteger, budget: u64 },
    #[error("set too large to enumerate partitions: m = {m} > {MAX_PARTITION_SIZE}")]
    TooLarge { m: u32 },
    #[error(transparent)]
    Parameter(#[from] ParameterError),
}

/// `n^m` for all functions, `n (n-1) ... (n-m+1)` for injections.
pub fn search_space(system: &ConstraintSystem) -> BigInteger {
    let (m, n) = (system.m, system.n);
    match system.class {
        FunctionClass::AllFunctions => num_traits::pow(BigInt::from(n), m as usize),
        FunctionClass::Injections => (0..m).fold(BigInt::one(), |acc, i| {
            acc * BigInt::from(i64::from(n) - i64::from(i)).max(BigInt::from(0))
        }),
    }
}

/// A validated, in-budget search space.
#[derive(Debug, Clone)]
pub struct Enumerator<'a> {
    system: &'a ConstraintSystem,
    len: u64,
}

impl<'a> Enumerator<'a> {
    pub fn new(system: &'a ConstraintSystem, budget: EnumerationBudget) -> Result<Self, OracleError> {
        system
            .validate()
            .map_err(|v| OracleError::Invalid(Violations(v)))?;
        let space = search_space(system);
        match space.to_u64() {
            Some(len) if len <= budget.max_search_space => Ok(Enumerator { system, len }),
            _ => Err(OracleError::BudgetExceeded {
                space,
                budget: budget.max_search_space,
            }),
        }
    }

    /// Number of candidate functions.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Counts the admissible candidates with lexicographic index in `range`.
    pub fn count_range(&self, range: Range<u64>) -> u64 {
        let end = range.end.min(self.len);
        if range.start >= end {
            return 0;
        }
        let mut f = self.unrank(range.start);
        let mut used = vec![false; self.system.n as usize + 2];
        for &v in &f {
            used[v as usize] = true;
        }
        let mut image = Vec::new();
        let mut admissible = 0;
        for index in range.start..end {
            if self.admits(&f, &mut image) {
                admissible += 1;
            }
            if index + 1 < end {
                match self.system.class {
                    FunctionClass::AllFunctions => next_function(&mut f, self.system.n),
                    FunctionClass::Injections => {
                        next_arrangement(&mut f, &mut used, self.system.n);
                    }
                }
            }
        }
        admissible
    }

    pub fn count_all(&self) -> u64 {
        self.count_range(0..self.len)
    }

    /// The candidate with lexicographic index `index`, values in `1..=n`.
    pub fn unrank(&self, mut index: u64) -> Vec<u32> {
        let (m, n) = (self.system.m as usize, u64::from(self.system.n));
        match self.system.class {
            FunctionClass::AllFunctions => {
                let mut f = vec![1u32; m];
                for slot in f.iter_mut().rev() {
                    *slot = (index % n) as u32 + 1;
                    index /= n;
                }
                f
            }
            FunctionClass::Injections => {
                let mut available: Vec<u32> = (1..=self.system.n).collect();
                let mut f = Vec::with_capacity(m);
                for j in 0..m as u64 {
                    // arrangements of the remaining m-j-1 positions
                    let weight = (0..(m as u64 - j - 1))
                        .map(|i| n - j - 1 - i)
                        .product::<u64>();
                    let digit = (index / weight) as usize;
                    index %= weight;
                    f.push(available.remove(digit));
                }
                f
            }
        }
    }

    /// True when `f` triggers none of the forbidden events.
    fn admits(&self, f: &[u32], image: &mut Vec<u32>) -> bool {
        self.system.constraints.iter().all(|c| {
            image.clear();
            image.extend(c.domain.elements().iter().map(|&x| f[x as usize - 1]));
            image.sort_unstable();
            image.dedup();
            let forbidden = match c.relation {
                Relation::Containment => image.iter().all(|&v| c.codomain.contains(v)),
                Relation::ImageEquality => image.as_slice() == c.codomain.elements(),
            };
            !forbidden
        })
    }
}

/// Mixed-radix increment; wraps to all ones after the last function.
fn next_function(f: &mut [u32], n: u32) {
    for slot in f.iter_mut().rev() {
        if *slot < n {
            *slot += 1;
            return;
        }
        *slot = 1;
    }
}

/// Advances `f` to the next injection in lexicographic order. `used` marks
/// the values currently in `f`. Returns false after the last arrangement.
fn next_arrangement(f: &mut [u32], used: &mut [bool], n: u32) -> bool {
    for i in (0..f.len()).rev() {
        used[f[i] as usize] = false;
        if let Some(v) = (f[i] + 1..=n).find(|&v| !used[v as usize]) {
            f[i] = v;
            used[v as usize] = true;
            let mut next = 1;
            for slot in f[i + 1..].iter_mut() {
                while used[next as usize] {
                    next += 1;
                }
                *slot = next;
                used[next as usize] = true;
            }
            return true;
        }
    }
    false
}

/// Counts admissible functions of `system` by exhaustive enumeration.
pub fn enumerate_count(
    system: &ConstraintSystem,
    budget: EnumerationBudget,
) -> Result<BigInteger, OracleError> {
    Ok(Enumerator::new(system, budget)?.count_all().into())
}

/// Counts permutations of `[nk]` mapping no block `{(i-1)k+1, ..., ik}`
/// onto itself.
pub fn enumerate_block_derangements(
    n: u32,
    k: u32,
    budget: EnumerationBudget,
) -> Result<BigInteger, OracleError> {
    if k == 0 {
        return Err(ParameterError::EmptyBlocks.into());
    }
    enumerate_count(&block_partition_system(n, k), budget)
}

/// Counts partitions of `[m]` into exactly `n` nonempty blocks by walking
/// restricted growth strings.
pub fn enumerate_stirling2(m: u32, n: u32) -> Result<BigInteger, OracleError> {
    if m > MAX_PARTITION_SIZE {
        return Err(OracleError::TooLarge { m });
    }
    if m == 0 {
        return Ok(u64::from(n == 0).into());
    }
    let m = m as usize;
    // a[i] <= 1 + max(a[0..i]); prefix_max[i] = max(a[0..=i])
    let mut a = vec![0u32; m];
    let mut prefix_max = vec![0u32; m];
    let mut found = 0u64;
    loop {
        if prefix_max[m - 1] + 1 == n {
            found += 1;
        }
        let Some(i) = (1..m).rev().find(|&i| a[i] <= prefix_max[i - 1]) else {
            break;
        };
        a[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(a[i]);
        for j in i + 1..m {
            a[j] = 0;
            prefix_max[j] = prefix_max[j - 1];
        }
    }
    Ok(found.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{Block, Constraint};

    fn big(v: i64) -> BigInteger {
        BigInteger::from(v)
    }

    fn blk(v: &[u32]) -> Block {
        Block::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unconstrained_counts_everything() {
        let s = ConstraintSystem::new(2, 3, FunctionClass::AllFunctions, vec![]);
        assert_eq!(enumerate_count(&s, Default::default()).unwrap(), big(9));
        let s = ConstraintSystem::new(0, 3, FunctionClass::AllFunctions, vec![]);
        assert_eq!(enumerate_count(&s, Default::default()).unwrap(), big(1));
        let s = ConstraintSystem::new(3, 5, FunctionClass::Injections, vec![]);
        assert_eq!(enumerate_count(&s, Default::default()).unwrap(), big(60));
    }

    #[test]
    fn containment_instance() {
        let s = ConstraintSystem::new(
            3,
            3,
            FunctionClass::AllFunctions,
            vec![
                Constraint::new(blk(&[1]), blk(&[1, 2]), Relation::Containment),
                Constraint::new(blk(&[2, 3]), blk(&[2]), Relation::Containment),
            ],
        );
        assert_eq!(enumerate_count(&s, Default::default()).unwrap(), big(8));
    }

    #[test]
    fn derangements_of_four() {
        let s = ConstraintSystem::new(
            4,
            4,
            FunctionClass::Injections,
            (1..=4)
                .map(|i| Constraint::new(Block::singleton(i), Block::singleton(i), Relation::ImageEquality))
                .collect(),
        );
        assert_eq!(enumerate_count(&s, Default::default()).unwrap(), big(9));
    }

    #[test]
    fn block_derangement_instances() {
        let b = EnumerationBudget::default();
        assert_eq!(enumerate_block_derangements(2, 2, b).unwrap(), big(20));
        assert_eq!(enumerate_block_derangements(1, 2, b).unwrap(), big(0));
        assert_eq!(enumerate_block_derangements(3, 1, b).unwrap(), big(2));
        assert_eq!(enumerate_block_derangements(0, 4, b).unwrap(), big(1));
        assert!(enumerate_block_derangements(2, 0, b).is_err());
    }

    #[test]
    fn budget_is_a_hard_limit() {
        let s = ConstraintSystem::new(20, 10, FunctionClass::AllFunctions, vec![]);
        match enumerate_count(&s, Default::default()) {
            Err(OracleError::BudgetExceeded { space, budget }) => {
                assert_eq!(space, num_traits::pow(big(10), 20));
                assert_eq!(budget, DEFAULT_BUDGET);
            }
            other => panic!("unexpected {other:?}"),
        }
        let s = ConstraintSystem::new(3, 3, FunctionClass::AllFunctions, vec![]);
        assert!(enumerate_count(&s, EnumerationBudget::new(26)).is_err());
        assert_eq!(enumerate_count(&s, EnumerationBudget::new(27)).unwrap(), big(27));
    }

    #[test]
    fn stirling_enumeration() {
        assert_eq!(enumerate_stirling2(4, 2).unwrap(), big(7));
        assert_eq!(enumerate_stirling2(5, 5).unwrap(), big(1));
        assert_eq!(enumerate_stirling2(5, 1).unwrap(), big(1));
        assert_eq!(enumerate_stirling2(0, 0).unwrap(), big(1));
        assert_eq!(enumerate_stirling2(3, 0).unwrap(), big(0));
        assert_eq!(enumerate_stirling2(13, 2), Err(OracleError::TooLarge { m: 13 }));
    }

    #[test]
    fn lexicographic_walk_matches_unranking() {
        for (m, n, class) in [
            (3, 3, FunctionClass::AllFunctions),
            (2, 4, FunctionClass::AllFunctions),
            (3, 5, FunctionClass::Injections),
            (4, 4, FunctionClass::Injections),
        ] {
            let s = ConstraintSystem::new(m, n, class, vec![]);
            let e = Enumerator::new(&s, Default::default()).unwrap();
            let mut f = e.unrank(0);
            let mut used = vec![false; n as usize + 2];
            for &v in &f {
                used[v as usize] = true;
            }
            let mut previous: Option<Vec<u32>> = None;
            for index in 0..e.len() {
                assert_eq!(f, e.unrank(index), "{class:?} index {index}");
                if let Some(p) = &previous {
                    assert!(p < &f);
                }
                previous = Some(f.clone());
                match class {
                    FunctionClass::AllFunctions => next_function(&mut f, n),
                    FunctionClass::Injections => {
                        let more = next_arrangement(&mut f, &mut used, n);
                        assert_eq!(more, index + 1 < e.len());
                    }
                }
            }
        }
    }

    #[test]
    fn ranges_sum_to_the_whole() {
        let s = ConstraintSystem::new(
            5,
            5,
            FunctionClass::Injections,
            vec![Constraint::new(blk(&[1, 2]), blk(&[4, 5]), Relation::ImageEquality)],
        );
        let e = Enumerator::new(&s, Default::default()).unwrap();
        let whole = e.count_all();
        let split: u64 = (0..7)
            .map(|i| e.count_range(i * 20..(i + 1) * 20))
            .sum();
        assert_eq!(whole, split);
        assert_eq!(e.count_range(200..300), 0);
    }
}
