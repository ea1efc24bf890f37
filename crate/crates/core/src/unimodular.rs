//! Enumeration of the unimodular matrices that contribute to `I_{w,n}(h, k)`.
//!
//! A matrix `(a b; c d)` with `ad - bc = 1` and `ac != 0` contributes
//! `sgn(k/h + b/a) (ak + bh)^{w-n} (ck + dh)^n` when `k/h` lies strictly between `-b/a` and
//! `-d/c`. Only matrices inside the box `|b + q a| <= |a| <= h`, `|d + q c| <= |c| <= h`
//! (with `q = floor(k/h + 1/2)`) can contribute, which makes the sum finite.
//!
//! Matrices are taken modulo `±1`; the representative with `a > 0` is used.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::symbols::{SymbolFamilyParams, SymbolPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    /// Returns `None` unless `ad - bc = 1`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Option<Self> {
        let m = Self { a, b, c, d };
        (m.det() == 1).then_some(m)
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn negated(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    /// The representative of `{M, -M}` with `a > 0` (or `a = 0, c > 0`).
    pub fn canonical(&self) -> Self {
        if self.a < 0 || (self.a == 0 && self.c < 0) {
            self.negated()
        } else {
            *self
        }
    }
}

/// Box bounds for the finite form of `I_{w,n}`.
///
/// `slack` multiplies both half-widths by `1 + slack`; it exists so tests can show that
/// enlarging the box adds nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationBox {
    pub q_shift: i64,
    pub a_max: i64,
    pub c_max: i64,
    pub slack: u32,
}

impl EnumerationBox {
    /// Default box for a point: `q = floor(k/h + 1/2)`, half-widths `h`.
    pub fn for_point(point: SymbolPoint, slack: u32) -> Self {
        let (h, k) = (point.h(), point.k());
        Self {
            q_shift: floor_div(2 * k + h, 2 * h),
            a_max: h,
            c_max: h,
            slack,
        }
    }

    pub fn a_limit(&self) -> i64 {
        self.a_max * (1 + self.slack as i64)
    }

    pub fn c_limit(&self) -> i64 {
        self.c_max * (1 + self.slack as i64)
    }
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

/// Returns `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// One solution `(b0, d0)` of `a d0 - b0 c = 1`, or `None` when `gcd(a, |c|) > 1`.
///
/// Every solution is `(b0 + a t, d0 + c t)` for integer `t`.
pub fn solve_bezout(a: i64, c: i64) -> Option<(i64, i64)> {
    if a < 1 || c == 0 {
        return None;
    }
    let (g, x, y) = extended_gcd(a, c);
    if g != 1 {
        return None;
    }
    // a x + c y = 1  =>  d0 = x, b0 = -y.
    Some((-y, x))
}

/// Integer `t` range with `lo <= coef * t <= hi`; may be empty.
fn t_window(coef: i64, lo: i64, hi: i64) -> (i64, i64) {
    if coef > 0 {
        (ceil_div(lo, coef), floor_div(hi, coef))
    } else {
        (ceil_div(hi, coef), floor_div(lo, coef))
    }
}

fn signum(x: i128) -> i32 {
    x.signum() as i32
}

/// `sgn(k/h + b/a) (ak + bh)^{w-n} (ck + dh)^n` if `(k/h + b/a)(k/h + d/c) < 0`, else 0.
///
/// Well defined for either sign of the matrix; requires `a c != 0`.
pub fn term_value(params: SymbolFamilyParams, point: SymbolPoint, m: &UnimodularMatrix) -> BigInt {
    let (h, k) = (point.h() as i128, point.k() as i128);
    let u = m.a as i128 * k + m.b as i128 * h;
    let v = m.c as i128 * k + m.d as i128 * h;
    // h > 0, so sgn(k/h + b/a) = sgn(u) sgn(a) and sgn(k/h + d/c) = sgn(v) sgn(c).
    let s1 = signum(u) * signum(m.a as i128);
    let s2 = signum(v) * signum(m.c as i128);
    if s1 * s2 >= 0 {
        return BigInt::zero();
    }
    let value = BigInt::from(u).pow(params.n_tilde()) * BigInt::from(v).pow(params.n());
    if s1 > 0 {
        value
    } else {
        -value
    }
}

fn terms_for_a(
    params: SymbolFamilyParams,
    point: SymbolPoint,
    bx: EnumerationBox,
    a: i64,
) -> impl Iterator<Item = (UnimodularMatrix, BigInt)> {
    let c_lim = bx.c_limit();
    let q = bx.q_shift;
    (1..=c_lim)
        .flat_map(|c| [c, -c])
        .filter_map(move |c| solve_bezout(a, c).map(|(b0, d0)| (c, b0, d0)))
        .flat_map(move |(c, b0, d0)| {
            let ca = c.abs();
            // |b + q a| <= a  and  |d + q c| <= |c|
            let (t1, t2) = t_window(a, -a - q * a - b0, a - q * a - b0);
            let (t3, t4) = t_window(c, -ca - q * c - d0, ca - q * c - d0);
            (t1.max(t3)..=t2.min(t4)).map(move |t| UnimodularMatrix {
                a,
                b: b0 + a * t,
                c,
                d: d0 + c * t,
            })
        })
        .map(move |m| {
            let term = term_value(params, point, &m);
            (m, term)
        })
}

/// Every canonical box matrix with its term; matrices failing the strict sign condition
/// come out with term 0.
///
/// Order: `a` ascending, then `c = 1, -1, 2, -2, ...`, then `t` ascending.
pub fn enumerate_terms(
    params: SymbolFamilyParams,
    point: SymbolPoint,
    bx: EnumerationBox,
) -> impl Iterator<Item = (UnimodularMatrix, BigInt)> {
    (1..=bx.a_limit()).flat_map(move |a| terms_for_a(params, point, bx, a))
}

/// `I_{w,n}(h, k)`, summing the `a`-slices on the worker pool.
pub fn i_sum_in_box(params: SymbolFamilyParams, point: SymbolPoint, bx: EnumerationBox) -> BigInt {
    let slices: Vec<i64> = (1..=bx.a_limit()).collect();
    par::sum(slices, |a| {
        terms_for_a(params, point, bx, a)
            .map(|(_, t)| t)
            .fold(BigInt::zero(), |acc, t| acc + t)
    })
}

/// Validating front end taking raw integers.
pub fn enumerate_terms_checked(
    w: i64,
    n: i64,
    h: i64,
    k: i64,
    slack: u32,
) -> Result<Vec<(UnimodularMatrix, BigInt)>> {
    let params = SymbolFamilyParams::new(w, n)?;
    let point = SymbolPoint::new(h, k).map_err(|_| Error::InvalidPoint { h, k })?;
    Ok(enumerate_terms(params, point, EnumerationBox::for_point(point, slack)).collect())
}
