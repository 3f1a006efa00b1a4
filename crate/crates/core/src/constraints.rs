//! Block-constraint systems over functions `[m] -> [n]`.
//!
//! Elements are 1-indexed: a domain block is a subset of `{1, ..., m}` and
//! a codomain set is a subset of `{1, ..., n}`.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A nonempty, strictly increasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("block is empty")]
    Empty,
    #[error("block elements must be at least 1, found {0}")]
    NonPositive(u32),
    #[error("block not strictly increasing at position {position}")]
    NotIncreasing { position: usize },
}

impl Block {
    pub fn new(elements: Vec<u32>) -> Result<Self, BlockError> {
        if elements.is_empty() {
            return Err(BlockError::Empty);
        }
        if elements[0] == 0 {
            return Err(BlockError::NonPositive(0));
        }
        if let Some(position) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(BlockError::NotIncreasing {
                position: position + 1,
            });
        }
        Ok(Block(elements))
    }

    /// The block `{start, start + 1, ..., start + len - 1}`.
    pub fn range(start: u32, len: u32) -> Self {
        assert!(start >= 1 && len >= 1);
        Block((start..start + len).collect())
    }

    pub fn singleton(element: u32) -> Self {
        Block::range(element, 1)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        *self.0.last().expect("blocks are nonempty")
    }

    pub fn contains(&self, value: u32) -> bool {
        self.0.binary_search(&value).is_ok()
    }

    /// Smallest element shared with `other`, if any.
    pub fn first_common(&self, other: &Block) -> Option<u32> {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return Some(self.0[i]),
            }
        }
        None
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Which event a constraint forbids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `f(X) ⊆ Y` is forbidden.
    Containment,
    /// `f(X) = Y` (as sets) is forbidden.
    ImageEquality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionClass {
    AllFunctions,
    Injections,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub domain: Block,
    pub codomain: Block,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(domain: Block, codomain: Block, relation: Relation) -> Self {
        Constraint {
            domain,
            codomain,
            relation,
        }
    }
}

/// One broken hypothesis of a constraint system. Indices are 0-based
/// positions in the constraint list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("n must be positive")]
    EmptyCodomain,
    #[error("constraint {index}: domain block exceeds m ({max} > {m})")]
    DomainOutOfRange { index: usize, max: u32, m: u32 },
    #[error("constraint {index}: codomain set exceeds n ({max} > {n})")]
    CodomainOutOfRange { index: usize, max: u32, n: u32 },
    #[error("constraints {first} and {second}: domain blocks overlap at {element}")]
    DomainOverlap {
        first: usize,
        second: usize,
        element: u32,
    },
    #[error("constraint {index}: relation differs from constraint 0")]
    MixedRelations { index: usize },
    #[error("m exceeds n for injections ({m} > {n})")]
    InjectionsExceedCodomain { m: u32, n: u32 },
    #[error("constraints {first} and {second}: codomain sets overlap at {element}")]
    CodomainOverlap {
        first: usize,
        second: usize,
        element: u32,
    },
    #[error("constraint {index}: |x| = {domain} differs from |y| = {codomain}")]
    SizeMismatch {
        index: usize,
        domain: usize,
        codomain: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintSystem {
    pub m: u32,
    pub n: u32,
    pub class: FunctionClass,
    pub constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    /// Builds a system without checking it; see [`ConstraintSystem::validate`].
    pub fn new(m: u32, n: u32, class: FunctionClass, constraints: Vec<Constraint>) -> Self {
        ConstraintSystem {
            m,
            n,
            class,
            constraints,
        }
    }

    /// Number of constraints.
    pub fn k(&self) -> usize {
        self.constraints.len()
    }

    /// The shared relation kind, `None` when there are no constraints.
    pub fn relation(&self) -> Option<Relation> {
        self.constraints.first().map(|c| c.relation)
    }

    /// Reports every violated hypothesis. Never panics.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.n == 0 {
            violations.push(Violation::EmptyCodomain);
        }
        for (index, c) in self.constraints.iter().enumerate() {
            if c.domain.largest() > self.m {
                violations.push(Violation::DomainOutOfRange {
                    index,
                    max: c.domain.largest(),
                    m: self.m,
                });
            }
            if c.codomain.largest() > self.n {
                violations.push(Violation::CodomainOutOfRange {
                    index,
                    max: c.codomain.largest(),
                    n: self.n,
                });
            }
        }
        for (first, second, element) in overlaps(self.constraints.iter().map(|c| &c.domain)) {
            violations.push(Violation::DomainOverlap {
                first,
                second,
                element,
            });
        }
        if let Some(relation) = self.relation() {
            for (index, c) in self.constraints.iter().enumerate() {
                if c.relation != relation {
                    violations.push(Violation::MixedRelations { index });
                }
            }
        }
        if self.class == FunctionClass::Injections {
            if self.m > self.n {
                violations.push(Violation::InjectionsExceedCodomain {
                    m: self.m,
                    n: self.n,
                });
            }
            if self.relation() == Some(Relation::ImageEquality) {
                for (first, second, element) in
                    overlaps(self.constraints.iter().map(|c| &c.codomain))
                {
                    violations.push(Violation::CodomainOverlap {
                        first,
                        second,
                        element,
                    });
                }
                for (index, c) in self.constraints.iter().enumerate() {
                    if c.domain.len() != c.codomain.len() {
                        violations.push(Violation::SizeMismatch {
                            index,
                            domain: c.domain.len(),
                            codomain: c.codomain.len(),
                        });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

fn overlaps<'a>(blocks: impl Iterator<Item = &'a Block>) -> Vec<(usize, usize, u32)> {
    let blocks: Vec<&Block> = blocks.collect();
    let mut found = Vec::new();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if let Some(e) = blocks[i].first_common(blocks[j]) {
                found.push((i, j, e));
            }
        }
    }
    found
}
