//! Exact integer kernel shared by the counting formulas.
//!
//! Every function here is pure and returns a [`BigInteger`]; nothing
//! rounds and nothing overflows.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Signed arbitrary-precision integer used for every count.
pub type BigInteger = BigInt;

/// `n!`
pub fn factorial(n: u32) -> BigInteger {
    (2..=n).fold(BigInteger::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
///
/// Uses the multiplicative formula; each partial product
/// `C(n - k + i, i)` is an integer so the division is exact.
pub fn binomial(n: u32, k: u32) -> BigInteger {
    if k > n {
        return BigInteger::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInteger::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-m+1)`: 1 when `m = 0`, 0 when `m > n`.
pub fn falling_factorial(n: u32, m: u32) -> BigInteger {
    if m > n {
        return BigInteger::zero();
    }
    ((n - m + 1)..=n).fold(BigInteger::one(), |acc, i| acc * i)
}

/// `base^exponent` with `0^0 = 1`.
pub fn power(base: u32, exponent: u32) -> BigInteger {
    num_traits::pow(BigInteger::from(base), exponent as usize)
}

/// Stirling number of the second kind `S(m, n)`.
pub fn stirling2(m: u32, n: u32) -> BigInteger {
    if n > m {
        return BigInteger::zero();
    }
    Stirling2Table::new(m).get(m, n)
}

/// Rows `0..=max_m` of the Stirling triangle of the second kind, built with
/// `S(m, n) = n S(m-1, n) + S(m-1, n-1)`.
#[derive(Debug, Clone)]
pub struct Stirling2Table {
    rows: Vec<Vec<BigInteger>>,
}

impl Stirling2Table {
    pub fn new(max_m: u32) -> Self {
        let mut rows: Vec<Vec<BigInteger>> = Vec::with_capacity(max_m as usize + 1);
        rows.push(vec![BigInteger::one()]);
        for m in 1..=max_m as usize {
            let prev = &rows[m - 1];
            let mut row = vec![BigInteger::zero(); m + 1];
            for (n, slot) in row.iter_mut().enumerate().skip(1) {
                let stay = prev.get(n).map(|s| s * n).unwrap_or_default();
                *slot = stay + &prev[n - 1];
            }
            rows.push(row);
        }
        Stirling2Table { rows }
    }

    pub fn max_m(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// `S(m, n)`; zero when `n > m`.
    ///
    /// # Panics
    ///
    /// When `m` exceeds the table's `max_m`.
    pub fn get(&self, m: u32, n: u32) -> BigInteger {
        let row = &self.rows[m as usize];
        row.get(n as usize).cloned().unwrap_or_default()
    }
}

/// Number of surjections from an `m`-set onto an `n`-set: `n! S(m, n)`.
pub fn surjections(m: u32, n: u32) -> BigInteger {
    factorial(n) * stirling2(m, n)
}
