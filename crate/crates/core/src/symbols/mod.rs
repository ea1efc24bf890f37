//! Weighted Dedekind symbols.
//!
//! A weighted Dedekind symbol of weight `w` is a function `E` on pairs `(h, k)` with
//! `h >= 1` that is periodic (`E(h, k + h) = E(h, k)`) and homogeneous
//! (`E(ch, ck) = c^w E(h, k)` for `c >= 1`). It is even or odd when
//! `E(h, -k) = ±E(h, k)`.
//!
//! Concrete families provided here:
//!
//! | tag       | symbol                               | parity                 |
//! |-----------|--------------------------------------|------------------------|
//! | `G:w`     | `gcd(h, k)^w`                        | even                   |
//! | `F:w`     | `h^w`                                | even                   |
//! | `E:w:n`   | `I_{w,n}` plus Bernoulli corrections | even if `n` odd, else odd |
//! | `Eis:w`   | `-(h^w / 2(w+1)) s_{w+1}(k, h)`      | odd                    |

mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

pub use poly::{s_reciprocity_poly, HomogeneousPolynomial, PolyTerm};

use crate::error::{Error, Result};
use crate::exact::{apostol_sum, bernoulli_number, int, periodic_bernoulli_at, Rational};
use crate::unimodular::{i_sum_in_box, EnumerationBox};

/// A point `(h, k)` with `h >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymbolPoint {
    h: i64,
    k: i64,
}

impl SymbolPoint {
    pub fn new(h: i64, k: i64) -> Result<Self> {
        if h < 1 {
            return Err(Error::InvalidPoint { h, k });
        }
        Ok(Self { h, k })
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `gcd(h, k)`, with `gcd(h, 0) = h`.
    pub fn gcd(&self) -> i64 {
        self.h.gcd(&self.k)
    }
}

impl fmt::Display for SymbolPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

impl Parity {
    /// `+1` for even, `-1` for odd.
    pub fn sign(&self) -> Option<i32> {
        match self {
            Parity::Even => Some(1),
            Parity::Odd => Some(-1),
            Parity::None => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::None => "none",
        })
    }
}

pub(crate) fn check_weight(w: i64) -> Result<u32> {
    if w < 2 || w % 2 != 0 || w > u32::MAX as i64 {
        return Err(Error::InvalidWeight(w));
    }
    Ok(w as u32)
}

/// Family parameters `(w, n)` with `w` even, `0 < n < w`; `ñ = w - n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SymbolFamilyParams {
    w: u32,
    n: u32,
}

impl SymbolFamilyParams {
    pub fn new(w: i64, n: i64) -> Result<Self> {
        let w = check_weight(w)?;
        if n <= 0 || n >= w as i64 {
            return Err(Error::InvalidIndex { w: w as i64, n });
        }
        Ok(Self { w, n: n as u32 })
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn n_tilde(&self) -> u32 {
        self.w - self.n
    }

    pub fn n_is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    /// Parity of `E_{w,n}`: even for odd `n`, odd for even `n`.
    pub fn e_parity(&self) -> Parity {
        if self.n_is_odd() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for SymbolFamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w={}, n={}", self.w, self.n)
    }
}

type Evaluator = dyn Fn(SymbolPoint) -> Rational + Send + Sync;

/// An evaluable symbol carrying its weight and declared parity.
#[derive(Clone)]
pub struct DedekindSymbol {
    name: String,
    weight: u32,
    parity: Parity,
    eval: Arc<Evaluator>,
}

impl fmt::Debug for DedekindSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DedekindSymbol")
            .field("name", &self.name)
            .field("weight", &self.weight)
            .field("parity", &self.parity)
            .finish_non_exhaustive()
    }
}

impl DedekindSymbol {
    pub fn new<F>(name: impl Into<String>, weight: u32, parity: Parity, eval: F) -> Self
    where
        F: Fn(SymbolPoint) -> Rational + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            weight,
            parity,
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eval(&self, point: SymbolPoint) -> Rational {
        (self.eval)(point)
    }

    /// Evaluates at raw coordinates, rejecting `h < 1`.
    pub fn eval_at(&self, h: i64, k: i64) -> Result<Rational> {
        Ok(self.eval(SymbolPoint::new(h, k)?))
    }

    pub fn zero(weight: u32) -> Self {
        Self::new(format!("0:{weight}"), weight, Parity::Even, |_| {
            Rational::zero()
        })
    }

    /// `G_w(h, k) = gcd(h, k)^w`.
    pub fn trivial_g(w: i64) -> Result<Self> {
        let w = check_weight(w)?;
        Ok(Self::new(format!("G:{w}"), w, Parity::Even, move |p| {
            trivial_g(w, p)
        }))
    }

    /// `F_w(h, k) = h^w`.
    pub fn trivial_f(w: i64) -> Result<Self> {
        let w = check_weight(w)?;
        Ok(Self::new(format!("F:{w}"), w, Parity::Even, move |p| {
            trivial_f(w, p)
        }))
    }

    /// `E_{w,n}` with the default enumeration box.
    pub fn e_family(params: SymbolFamilyParams) -> Self {
        Self::e_family_with_slack(params, 0)
    }

    pub fn e_family_with_slack(params: SymbolFamilyParams, slack: u32) -> Self {
        Self::new(
            format!("E:{}:{}", params.w(), params.n()),
            params.w(),
            params.e_parity(),
            move |p| e_symbol_with_slack(params, p, slack),
        )
    }

    /// The odd symbol of the weight `w + 2` Eisenstein series, built from Apostol sums.
    pub fn eisenstein_odd(w: i64) -> Result<Self> {
        let w = check_weight(w)?;
        Ok(Self::new(format!("Eis:{w}"), w, Parity::Odd, move |p| {
            eisenstein_odd_symbol(w, p)
        }))
    }

    /// Parses `G:w`, `F:w`, `E:w:n` or `Eis:w`.
    ///
    /// Syntax errors give [`Error::MalformedSymbolSpec`]; well-formed specs with invalid
    /// values give the corresponding precondition error.
    pub fn parse(spec: &str, slack: u32) -> Result<Self> {
        let malformed = || Error::MalformedSymbolSpec(spec.to_string());
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let num = |s: &str| s.trim().parse::<i64>().map_err(|_| malformed());
        match parts.as_slice() {
            ["G", w] => Self::trivial_g(num(w)?),
            ["F", w] => Self::trivial_f(num(w)?),
            ["Eis", w] => Self::eisenstein_odd(num(w)?),
            ["E", w, n] => {
                let params = SymbolFamilyParams::new(num(w)?, num(n)?)?;
                Ok(Self::e_family_with_slack(params, slack))
            }
            _ => Err(malformed()),
        }
    }
}

pub fn trivial_g(w: u32, point: SymbolPoint) -> Rational {
    Rational::from_integer(BigInt::from(point.gcd()).pow(w))
}

pub fn trivial_f(w: u32, point: SymbolPoint) -> Rational {
    Rational::from_integer(BigInt::from(point.h()).pow(w))
}

/// `I_{w,n}(h, k)` over the default box.
pub fn i_sum(params: SymbolFamilyParams, point: SymbolPoint) -> BigInt {
    i_sum_in_box(params, point, EnumerationBox::for_point(point, 0))
}

/// `B_{j+1} / (j+1)`.
pub(crate) fn bernoulli_ratio(j: u32) -> Rational {
    bernoulli_number(j + 1) / int(j as i64 + 1)
}

/// `((w+2) / B_{w+2}) (B_{n+1}/(n+1)) (B_{ñ+1}/(ñ+1))`, the constant term attached to
/// `E_{w,n}` for odd `n`.
pub fn origin_constant(params: SymbolFamilyParams) -> Rational {
    let b_top = bernoulli_number(params.w() + 2);
    assert!(!b_top.is_zero(), "B_(w+2) is nonzero for even w");
    int(params.w() as i64 + 2) / b_top
        * bernoulli_ratio(params.n())
        * bernoulli_ratio(params.n_tilde())
}

pub fn e_symbol(params: SymbolFamilyParams, point: SymbolPoint) -> Rational {
    e_symbol_with_slack(params, point, 0)
}

pub fn e_symbol_with_slack(params: SymbolFamilyParams, point: SymbolPoint, slack: u32) -> Rational {
    let (h, k) = (point.h(), point.k());
    let n = params.n();
    let nt = params.n_tilde();
    let hw = Rational::from_integer(BigInt::from(h).pow(params.w()));
    let i = Rational::from_integer(i_sum_in_box(
        params,
        point,
        EnumerationBox::for_point(point, slack),
    ));
    let bn = periodic_bernoulli_at(n + 1, k, h) / int(n as i64 + 1);
    let bnt = periodic_bernoulli_at(nt + 1, k, h) / int(nt as i64 + 1);
    if params.n_is_odd() {
        i + (origin_constant(params) - bn - bnt) * hw
    } else {
        i + (bn - bnt) * hw
    }
}

/// `E_{w,n}(1, 0)` for odd `n`, read off without any enumeration.
pub fn e_at_origin_closed_form(params: SymbolFamilyParams) -> Result<Rational> {
    if !params.n_is_odd() {
        return Err(Error::InvalidIndex {
            w: params.w() as i64,
            n: params.n() as i64,
        });
    }
    Ok(-bernoulli_ratio(params.n()) - bernoulli_ratio(params.n_tilde()) + origin_constant(params))
}

/// `-(h^w / (2(w+1))) s_{w+1}(k, h)`.
pub fn eisenstein_odd_symbol(w: u32, point: SymbolPoint) -> Rational {
    let s = apostol_sum(w + 1, point.k(), point.h()).expect("w even >= 2 gives an odd order >= 3");
    let hw = Rational::from_integer(BigInt::from(point.h()).pow(w));
    -(hw / int(2 * (w as i64 + 1))) * s
}
