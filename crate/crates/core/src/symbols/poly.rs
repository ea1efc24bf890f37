//! Homogeneous polynomials in `(h, k)` with exact rational coefficients, and the
//! reciprocity polynomials `S_{w,n}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{origin_constant, SymbolFamilyParams};
use crate::exact::{bernoulli_numbers, binomial, int, Rational};

/// Degree-`d` homogeneous polynomial; `coeffs[i]` multiplies `h^i k^(d-i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    degree: u32,
    coeffs: Vec<Rational>,
}

/// One serialized monomial: `coeff * h^i * k^(degree - i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyTerm {
    pub i: u32,
    pub coeff: String,
}

impl HomogeneousPolynomial {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            coeffs: vec![Rational::zero(); degree as usize + 1],
        }
    }

    /// `coeffs[i]` is the coefficient of `h^i k^(degree - i)`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "need at least the constant monomial");
        Self {
            degree: coeffs.len() as u32 - 1,
            coeffs,
        }
    }

    /// `alpha h + beta k`.
    pub fn linear(alpha: i64, beta: i64) -> Self {
        Self::from_coeffs(vec![int(beta), int(alpha)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self, h_exp: u32) -> &Rational {
        &self.coeffs[h_exp as usize]
    }

    pub fn set_coeff(&mut self, h_exp: u32, value: Rational) {
        self.coeffs[h_exp as usize] = value;
    }

    pub fn add_to_coeff(&mut self, h_exp: u32, value: &Rational) {
        self.coeffs[h_exp as usize] += value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, h: &Rational, k: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c
                * num_traits::pow(h.clone(), i)
                * num_traits::pow(k.clone(), self.degree as usize - i);
        }
        acc
    }

    pub fn eval_int(&self, h: i64, k: i64) -> Rational {
        self.eval(&int(h), &int(k))
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degrees must match");
        Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::from_coeffs(vec![Rational::one()]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `g(alpha h + beta k, gamma h + delta k)`.
    pub fn substitute(&self, alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        let x = Self::linear(alpha, beta);
        let y = Self::linear(gamma, delta);
        let x_pows: Vec<Self> = (0..=self.degree).map(|e| x.pow(e)).collect();
        let y_pows: Vec<Self> = (0..=self.degree).map(|e| y.pow(e)).collect();
        let mut out = Self::zero(self.degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = x_pows[i].mul(&y_pows[self.degree as usize - i]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// `g(h, -k) = g(h, k)`.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (self.degree as usize - i).is_multiple_of(2) || c.is_zero())
    }

    /// `g(h, -k) = -g(h, k)`.
    pub fn is_odd(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| (self.degree as usize - i) % 2 == 1 || c.is_zero())
    }

    /// Nonzero monomials in decreasing `h` exponent.
    pub fn terms(&self) -> Vec<PolyTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| PolyTerm {
                i: i as u32,
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl Serialize for HomogeneousPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.terms().serialize(serializer)
    }
}

fn monomial(f: &mut fmt::Formatter<'_>, var: &str, e: usize) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "*{var}"),
        _ => write!(f, "*{var}^{e}"),
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            monomial(f, "h", i)?;
            monomial(f, "k", self.degree as usize - i)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `B_m(k/h) h^w` expanded: `sum_j C(m,j) B_j k^(m-j) h^(w-m+j)`.
/// With `swap`, the roles of `h` and `k` are exchanged (`B_m(h/k) k^w`).
fn homogenized_bernoulli(m: u32, w: u32, swap: bool) -> HomogeneousPolynomial {
    assert!(m <= w);
    let bs = bernoulli_numbers(m);
    let mut out = HomogeneousPolynomial::zero(w);
    for j in 0..=m {
        let c = Rational::from_integer(binomial(m, j)) * &bs[j as usize];
        let h_exp = if swap { m - j } else { w - m + j };
        out.add_to_coeff(h_exp, &c);
    }
    out
}

/// The reciprocity polynomial `S_{w,n}`, with `E_{w,n}(h,k) - E_{w,n}(k,-h) = S_{w,n}(h,k)`.
pub fn s_reciprocity_poly(params: SymbolFamilyParams) -> HomogeneousPolynomial {
    let w = params.w();
    let n = params.n();
    let nt = params.n_tilde();
    let inv = |j: u32| Rational::new(BigInt::one(), BigInt::from(j + 1));
    let (hn, kn) = (
        homogenized_bernoulli(n + 1, w, false),
        homogenized_bernoulli(n + 1, w, true),
    );
    let (hnt, knt) = (
        homogenized_bernoulli(nt + 1, w, false),
        homogenized_bernoulli(nt + 1, w, true),
    );
    if params.n_is_odd() {
        let mut edge = HomogeneousPolynomial::zero(w);
        edge.set_coeff(w, Rational::one());
        edge.set_coeff(0, -Rational::one());
        kn.sub(&hn)
            .scale(&inv(n))
            .add(&knt.sub(&hnt).scale(&inv(nt)))
            .add(&edge.scale(&origin_constant(params)))
    } else {
        hn.add(&kn)
            .scale(&inv(n))
            .sub(&hnt.add(&knt).scale(&inv(nt)))
    }
}
