//! Truncated integer q-expansions of `Δ`, `E_4`, `E_6` and the six normalized cusp
//! eigenforms of weight `ℓ + 2`.
//!
//! Nothing here touches the symbol machinery; it is the independent reference for tau.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, sigma};
use crate::hecke::CuspSpace;

pub const DEFAULT_TRUNCATION: usize = 32;

/// `sum_{i=0}^{N} c_i q^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coefficients: Vec<BigInt>,
}

impl QSeries {
    pub fn from_coefficients(coefficients: Vec<BigInt>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coefficients })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coefficients: vec![BigInt::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coefficients[0] = BigInt::one();
        s
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Coefficient of `q^i`, or `None` past the truncation.
    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coefficients.get(i)
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self {
            coefficients: self.coefficients[..=n.min(self.truncation())].to_vec(),
        }
    }

    /// Multiplies by `q^s`, dropping what falls past the truncation.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.truncation();
        let mut out = Self::zero(n);
        for i in s..=n {
            out.coefficients[i] = self.coefficients[i - s].clone();
        }
        out
    }
}

fn check_truncation(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptySeries)
    } else {
        Ok(())
    }
}

/// Cauchy product truncated at the smaller of the two truncations.
pub fn series_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let n = a.truncation().min(b.truncation());
    let mut out = QSeries::zero(n);
    for (i, x) in a.coefficients[..=n].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coefficients[..=n - i].iter().enumerate() {
            out.coefficients[i + j] += x * y;
        }
    }
    out
}

/// `(1 - q^m)^e` truncated at `n`, from the binomial theorem.
fn binomial_factor(m: usize, e: u32, n: usize) -> QSeries {
    let mut out = QSeries::zero(n);
    for j in 0..=e {
        let pos = j as usize * m;
        if pos > n {
            break;
        }
        let c = binomial(e, j);
        out.coefficients[pos] = if j % 2 == 0 { c } else { -c };
    }
    out
}

/// `q prod_{n>=1} (1 - q^n)^24`.
pub fn qexp_delta(n: usize) -> Result<QSeries> {
    check_truncation(n)?;
    let mut product = QSeries::one(n);
    for m in 1..=n {
        product = series_mul(&product, &binomial_factor(m, 24, n));
    }
    Ok(product.shift(1))
}

/// `1 + c sum_{n>=1} sigma_k(n) q^n`.
fn eisenstein(c: i64, k: u32, n: usize) -> Result<QSeries> {
    check_truncation(n)?;
    let mut s = QSeries::one(n);
    for i in 1..=n {
        s.coefficients[i] = BigInt::from(c) * sigma(k, i as u64);
    }
    Ok(s)
}

pub fn qexp_e4(n: usize) -> Result<QSeries> {
    eisenstein(240, 3, n)
}

pub fn qexp_e6(n: usize) -> Result<QSeries> {
    eisenstein(-504, 5, n)
}

/// The normalized eigenform of weight `ℓ + 2`:
/// `Δ, E_4 Δ, E_6 Δ, E_4^2 Δ, E_4 E_6 Δ, E_4^2 E_6 Δ` for `ℓ = 10, 14, 16, 18, 20, 24`.
pub fn qexp_eigenform(space: CuspSpace, n: usize) -> Result<QSeries> {
    let (e4_power, e6_power) = match space {
        CuspSpace::W10 => (0, 0),
        CuspSpace::W14 => (1, 0),
        CuspSpace::W16 => (0, 1),
        CuspSpace::W18 => (2, 0),
        CuspSpace::W20 => (1, 1),
        CuspSpace::W24 => (2, 1),
    };
    let mut f = qexp_delta(n)?;
    let e4 = qexp_e4(n)?;
    let e6 = qexp_e6(n)?;
    for _ in 0..e4_power {
        f = series_mul(&f, &e4);
    }
    for _ in 0..e6_power {
        f = series_mul(&f, &e6);
    }
    Ok(f)
}

/// `sum_{m, d >= 1} d^{w+1} q^{md}`, the non-constant part of the weight `w + 2`
/// Eisenstein series, summed over the lattice of products rather than through divisor sums.
pub fn qexp_eisenstein_tail(w: u32, n: usize) -> Result<QSeries> {
    check_truncation(n)?;
    let mut s = QSeries::zero(n);
    for d in 1..=n {
        let term = BigInt::from(d).pow(w + 1);
        for i in (d..=n).step_by(d) {
            s.coefficients[i] += &term;
        }
    }
    Ok(s)
}

/// `τ_{ℓ+2}(m)` read from the expansion, growing the truncation when `m` exceeds the default.
pub fn oracle_tau(space: CuspSpace, m: u64) -> Result<BigInt> {
    let n = (m as usize).max(DEFAULT_TRUNCATION);
    let f = qexp_eigenform(space, n)?;
    Ok(f.coeff(m as usize).cloned().expect("truncation covers m"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|x| BigInt::from(*x)).collect()
    }

    /// Naive product of `(1 - q^m)` one factor at a time, 24 times each.
    fn delta_naive(n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::one();
        for m in 1..=n {
            for _ in 0..24 {
                for i in (m..=n).rev() {
                    let t = c[i - m].clone();
                    c[i] -= t;
                }
            }
        }
        let mut out = vec![BigInt::zero(); n + 1];
        out[1..].clone_from_slice(&c[..n]);
        out
    }

    #[test]
    fn delta_coefficients() {
        let d = qexp_delta(13).unwrap();
        assert_eq!(
            d.coefficients(),
            ints(&[
                0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612,
                -370944, -577738
            ])
            .as_slice()
        );
        assert_eq!(
            qexp_delta(20).unwrap().coefficients(),
            delta_naive(20).as_slice()
        );
    }

    #[test]
    fn eisenstein_coefficients() {
        let e4 = qexp_e4(3).unwrap();
        assert_eq!(e4.coefficients(), ints(&[1, 240, 2160, 6720]).as_slice());
        let e6 = qexp_e6(2).unwrap();
        assert_eq!(e6.coefficients(), ints(&[1, -504, -16632]).as_slice());
    }

    #[test]
    fn eigenform_normalization_and_q2() {
        let q2: Vec<BigInt> = CuspSpace::ALL
            .iter()
            .map(|s| {
                let f = qexp_eigenform(*s, 8).unwrap();
                assert!(f.coeff(0).unwrap().is_zero());
                assert!(f.coeff(1).unwrap().is_one());
                f.coeff(2).unwrap().clone()
            })
            .collect();
        assert_eq!(q2, ints(&[-24, 216, -528, 456, -288, -48]));
    }

    #[test]
    fn eigenform_multiplicativity() {
        for s in CuspSpace::ALL {
            let f = qexp_eigenform(s, 12).unwrap();
            let a = |i: usize| f.coeff(i).unwrap().clone();
            assert_eq!(a(2) * a(3), a(6), "ℓ={s}");
            assert_eq!(a(3) * a(4), a(12), "ℓ={s}");
            // a(p^2) = a(p)^2 - p^{ℓ+1}
            assert_eq!(
                a(4),
                a(2) * a(2) - BigInt::from(2).pow(s.ell() + 1),
                "ℓ={s}"
            );
        }
    }

    #[test]
    fn mul_identity_and_truncation() {
        let d = qexp_delta(6).unwrap();
        assert_eq!(series_mul(&d, &QSeries::one(6)), d);
        let a = QSeries::from_coefficients(ints(&[1, 1, 0])).unwrap();
        let b = QSeries::from_coefficients(ints(&[1, -1, 0])).unwrap();
        assert_eq!(
            series_mul(&a, &b).coefficients(),
            ints(&[1, 0, -1]).as_slice()
        );
        assert_eq!(series_mul(&d, &qexp_e4(3).unwrap()).truncation(), 3);
        assert_eq!(qexp_delta(0), Err(Error::EmptySeries));
    }

    #[test]
    fn eisenstein_tail_is_divisor_sum() {
        for w in [2, 4, 10] {
            let g = qexp_eisenstein_tail(w, 20).unwrap();
            assert!(g.coeff(0).unwrap().is_zero());
            for i in 1..=20 {
                assert_eq!(g.coeff(i).unwrap(), &sigma(w + 1, i as u64), "w={w} n={i}");
            }
        }
    }

    #[test]
    fn oracle_tau_grows() {
        assert_eq!(
            oracle_tau(CuspSpace::W10, 13).unwrap(),
            BigInt::from(-577738)
        );
        let far = oracle_tau(CuspSpace::W10, 40).unwrap();
        assert_eq!(far, qexp_delta(40).unwrap().coeff(40).unwrap().clone());
    }
}
