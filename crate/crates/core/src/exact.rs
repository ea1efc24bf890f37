//! Exact scalars: rationals, Bernoulli numbers, polynomials and periodic functions,
//! divisor power sums and Apostol's generalized Dedekind sums.
//!
//! Bernoulli convention: `B_1 = -1/2`, so that `B_m(0) = B_m` for every `m`. Every closed
//! form in this crate that substitutes `B_{n+1}` for `B̄_{n+1}(0)` relies on it.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)` as an exact integer (zero when `k > n`).
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Memoized Bernoulli numbers `B_0, B_1, ...`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self {
            values: vec![Rational::one()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cached value, if `m` has been computed already.
    pub fn cached(&self, m: u32) -> Option<&Rational> {
        self.values.get(m as usize)
    }

    /// Extends the table through index `m` using `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
    pub fn extend_to(&mut self, m: u32) {
        while self.values.len() <= m as usize {
            let next = self.values.len() as u32;
            if next >= 3 && next % 2 == 1 {
                self.values.push(Rational::zero());
                continue;
            }
            let mut acc = Rational::zero();
            for (j, b) in self.values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc += Rational::from_integer(binomial(next + 1, j as u32)) * b;
            }
            self.values.push(-acc / int(next as i64 + 1));
        }
    }

    pub fn get(&mut self, m: u32) -> Rational {
        self.extend_to(m);
        self.values[m as usize].clone()
    }
}

static SHARED_BERNOULLI: LazyLock<RwLock<BernoulliTable>> =
    LazyLock::new(|| RwLock::new(BernoulliTable::new()));

/// `B_m` with `B_1 = -1/2`.
pub fn bernoulli_number(m: u32) -> Rational {
    {
        let table = SHARED_BERNOULLI.read().unwrap_or_else(|e| e.into_inner());
        if let Some(v) = table.cached(m) {
            return v.clone();
        }
    }
    let mut table = SHARED_BERNOULLI.write().unwrap_or_else(|e| e.into_inner());
    table.get(m)
}

/// All of `B_0..=B_m` in one lock acquisition.
pub fn bernoulli_numbers(m: u32) -> Vec<Rational> {
    let mut table = SHARED_BERNOULLI.write().unwrap_or_else(|e| e.into_inner());
    table.extend_to(m);
    table.values[..=m as usize].to_vec()
}

/// `B_m(x) = sum_j C(m, j) B_j x^{m-j}`.
pub fn bernoulli_poly(m: u32, x: &Rational) -> Rational {
    let bs = bernoulli_numbers(m);
    // Horner in x, highest power first: coefficient of x^{m-j} is C(m,j) B_j.
    let mut acc = Rational::zero();
    for j in 0..=m {
        acc = acc * x + Rational::from_integer(binomial(m, j)) * &bs[j as usize];
    }
    acc
}

pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// `x - floor(x)`, in `[0, 1)`.
pub fn fractional_part(x: &Rational) -> Rational {
    x - Rational::from_integer(floor(x))
}

/// Periodic Bernoulli function `B̄_m(x) = B_m(x - floor(x))`, defined here for `m >= 2` only.
pub fn periodic_bernoulli(m: u32, x: &Rational) -> Result<Rational> {
    if m < 2 {
        return Err(Error::BernoulliOrder(m));
    }
    Ok(bernoulli_poly(m, &fractional_part(x)))
}

/// `B̄_m(num/den)` for `den > 0`; avoids building a rational for the argument twice.
pub(crate) fn periodic_bernoulli_at(m: u32, num: i64, den: i64) -> Rational {
    debug_assert!(m >= 2 && den > 0);
    bernoulli_poly(m, &ratio(num.rem_euclid(den), den))
}

/// Divisor power sum `sigma_k(n)`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Trial division; adequate for the index sizes this crate deals with.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

/// Apostol's generalized Dedekind sum `s_m(k, h) = sum_{mu=0}^{h-1} (mu/h) B̄_m(mu k / h)`.
///
/// `m` is the odd order `w + 1` (so `m >= 3`), `h >= 1`.
pub fn apostol_sum(m: u32, k: i64, h: i64) -> Result<Rational> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::ApostolOrder(m));
    }
    if h < 1 {
        return Err(Error::InvalidPoint { h, k });
    }
    let kr = k.rem_euclid(h);
    let mut acc = Rational::zero();
    for mu in 1..h {
        let r = (mu as i128 * kr as i128).rem_euclid(h as i128) as i64;
        acc += int(mu) * periodic_bernoulli_at(m, r, h);
    }
    Ok(acc / int(h))
}

/// Exact integer test for a rational.
pub fn to_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
