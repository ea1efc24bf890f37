//! Hecke operators on weighted Dedekind symbols and the generalized tau functions.
//!
//! `(T_n E)(h, k) = sum_{ad = n, d > 0} sum_{b mod d} E(d h, a k + b h)`.
//!
//! For the six weights `ℓ ∈ {10, 14, 16, 18, 20, 24}` the cusp space of weight `ℓ + 2` is
//! one-dimensional and its even symbol is a multiple of `E_{ℓ,n0}` with
//! `n0 = 2 floor((ℓ+2)/4) - 1`. The Fourier coefficients `τ_{ℓ+2}(m)` are then the
//! eigenvalue ratios `T_m E_{ℓ,n0}(1,0) / E_{ℓ,n0}(1,0)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{divisors, int, is_prime, ratio, to_integer, Rational};
use crate::par;
use crate::symbols::{
    bernoulli_ratio, e_at_origin_closed_form, i_sum, origin_constant, DedekindSymbol,
    SymbolFamilyParams, SymbolPoint,
};
use crate::unimodular::{term_value, UnimodularMatrix};

/// Search bound used by [`eigenvalue`] when looking for nonzero points.
pub const DEFAULT_SEARCH_LIMIT: u32 = 64;

/// The coset triples `(a, d, b)` with `a d = n`, `d > 0`, `0 <= b < d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeckeIndex {
    pub n: u64,
    pub divisor_triples: Vec<(u64, u64, u64)>,
}

impl HeckeIndex {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroHeckeIndex);
        }
        let divisor_triples = divisors(n)
            .into_iter()
            .flat_map(|d| (0..d).map(move |b| (n / d, d, b)))
            .collect();
        Ok(Self { n, divisor_triples })
    }
}

pub fn hecke_apply(symbol: &DedekindSymbol, n: u64, point: SymbolPoint) -> Result<Rational> {
    let index = HeckeIndex::new(n)?;
    let (h, k) = (point.h(), point.k());
    Ok(par::sum(index.divisor_triples, |(a, d, b)| {
        let (a, d, b) = (a as i64, d as i64, b as i64);
        let p = SymbolPoint::new(d * h, a * k + b * h).expect("d h >= 1");
        symbol.eval(p)
    }))
}

/// `T_n E` as a symbol in its own right, with the weight and parity of `E`.
pub fn hecke_image(symbol: &DedekindSymbol, n: u64) -> Result<DedekindSymbol> {
    HeckeIndex::new(n)?;
    let inner = symbol.clone();
    Ok(DedekindSymbol::new(
        format!("T{n}({})", symbol.name()),
        symbol.weight(),
        symbol.parity(),
        move |p| hecke_apply(&inner, n, p).expect("index checked above"),
    ))
}

/// Points `(h, k)` in the order `h = 1.., k = 0..h`.
fn search_order(limit: u32) -> impl Iterator<Item = SymbolPoint> {
    (1..=limit as i64).flat_map(|h| (0..h).map(move |k| SymbolPoint::new(h, k).expect("h >= 1")))
}

pub fn find_nonzero_point(symbol: &DedekindSymbol, search_limit: u32) -> Result<SymbolPoint> {
    search_order(search_limit)
        .find(|p| !symbol.eval(*p).is_zero())
        .ok_or(Error::Exhausted(search_limit))
}

/// Nonzero points in search order, evaluated lazily.
pub fn nonzero_points(
    symbol: &DedekindSymbol,
    search_limit: u32,
) -> impl Iterator<Item = SymbolPoint> + '_ {
    search_order(search_limit).filter(|p| !symbol.eval(*p).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub base_point: SymbolPoint,
    #[serde(serialize_with = "crate::verify::ser_rational")]
    pub eigenvalue: Rational,
    pub checked_points: Vec<SymbolPoint>,
    pub consistent: bool,
}

/// Eigenvalue of `T_n` read off at a given nonzero base point, then checked at
/// `extra_checks` further nonzero points.
pub fn eigenvalue_at(
    symbol: &DedekindSymbol,
    n: u64,
    base_point: SymbolPoint,
    extra_checks: usize,
) -> Result<EigenReport> {
    let base_value = symbol.eval(base_point);
    if base_value.is_zero() {
        return Err(Error::Internal(format!(
            "{} vanishes at base point {base_point}",
            symbol.name()
        )));
    }
    let eigenvalue = hecke_apply(symbol, n, base_point)? / base_value;
    let checked_points: Vec<SymbolPoint> = nonzero_points(symbol, DEFAULT_SEARCH_LIMIT)
        .take(extra_checks + 1)
        .filter(|p| *p != base_point)
        .take(extra_checks)
        .collect();
    let mut consistent = true;
    for p in &checked_points {
        if hecke_apply(symbol, n, *p)? != &eigenvalue * symbol.eval(*p) {
            consistent = false;
            break;
        }
    }
    Ok(EigenReport {
        base_point,
        eigenvalue,
        checked_points,
        consistent,
    })
}

pub fn eigenvalue(symbol: &DedekindSymbol, n: u64, extra_checks: usize) -> Result<EigenReport> {
    let base = find_nonzero_point(symbol, DEFAULT_SEARCH_LIMIT)?;
    eigenvalue_at(symbol, n, base, extra_checks)
}

/// The six weights `ℓ` for which the weight `ℓ + 2` cusp space is one-dimensional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CuspSpace {
    W10,
    W14,
    W16,
    W18,
    W20,
    W24,
}

/// `1 / E_{ℓ,n0}(1,0)` and the `(coefficient, exponent e)` pairs multiplying
/// `(m^e - m^{ℓ+1})` in the prime closed form.
struct PrimeFormula {
    prefactor: (i64, i64),
    terms: &'static [((i64, i64), u32)],
}

impl CuspSpace {
    pub const ALL: [CuspSpace; 6] = [
        CuspSpace::W10,
        CuspSpace::W14,
        CuspSpace::W16,
        CuspSpace::W18,
        CuspSpace::W20,
        CuspSpace::W24,
    ];

    pub fn from_weight(ell: u32) -> Result<Self> {
        Ok(match ell {
            10 => CuspSpace::W10,
            14 => CuspSpace::W14,
            16 => CuspSpace::W16,
            18 => CuspSpace::W18,
            20 => CuspSpace::W20,
            24 => CuspSpace::W24,
            other => return Err(Error::UnsupportedCuspWeight(other)),
        })
    }

    /// Symbol weight `ℓ`; the modular form has weight `ℓ + 2`.
    pub fn ell(&self) -> u32 {
        match self {
            CuspSpace::W10 => 10,
            CuspSpace::W14 => 14,
            CuspSpace::W16 => 16,
            CuspSpace::W18 => 18,
            CuspSpace::W20 => 20,
            CuspSpace::W24 => 24,
        }
    }

    /// `n0 = 2 floor((ℓ+2)/4) - 1`, always odd.
    pub fn odd_index(&self) -> u32 {
        2 * ((self.ell() + 2) / 4) - 1
    }

    pub fn params(&self) -> SymbolFamilyParams {
        SymbolFamilyParams::new(self.ell() as i64, self.odd_index() as i64).expect("0 < n0 < ℓ")
    }

    pub fn symbol(&self) -> DedekindSymbol {
        DedekindSymbol::e_family(self.params())
    }

    pub fn symbol_with_slack(&self, slack: u32) -> DedekindSymbol {
        DedekindSymbol::e_family_with_slack(self.params(), slack)
    }

    /// Modulus of the congruence `τ_{ℓ+2}(m) ≡ σ_{ℓ+1}(m)`.
    pub fn congruence_modulus(&self) -> u64 {
        match self {
            CuspSpace::W10 => 691,
            CuspSpace::W14 => 3617,
            CuspSpace::W16 => 43867,
            CuspSpace::W18 => 283 * 617,
            CuspSpace::W20 => 131 * 593,
            CuspSpace::W24 => 657931,
        }
    }

    fn prime_formula(&self) -> PrimeFormula {
        match self {
            CuspSpace::W10 => PrimeFormula {
                prefactor: (-691, 6),
                terms: &[((-1, 126), 5)],
            },
            CuspSpace::W14 => PrimeFormula {
                prefactor: (3617, 30),
                terms: &[((1, 120), 7)],
            },
            CuspSpace::W16 => PrimeFormula {
                prefactor: (-43867, 150),
                terms: &[((-1, 132), 7), ((1, 240), 9)],
            },
            CuspSpace::W18 => PrimeFormula {
                prefactor: (-174611, 2646),
                terms: &[((-1, 66), 9)],
            },
            CuspSpace::W20 => PrimeFormula {
                prefactor: (77683, 1050),
                terms: &[((691, 32760), 9), ((-1, 132), 11)],
            },
            CuspSpace::W24 => PrimeFormula {
                prefactor: (-657931, 40950),
                terms: &[((-1, 12), 11), ((691, 32760), 13)],
            },
        }
    }
}

impl std::fmt::Display for CuspSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.ell())
    }
}

fn as_integer(x: &Rational, what: impl FnOnce() -> String) -> Result<BigInt> {
    to_integer(x).ok_or_else(|| Error::Internal(format!("{} is not an integer: {x}", what())))
}

/// `τ_{ℓ+2}(m)` by the operator route: `T_m E_{ℓ,n0}(1,0) / E_{ℓ,n0}(1,0)`.
///
/// Valid for every `m >= 1`.
pub fn tau(space: CuspSpace, m: u64) -> Result<BigInt> {
    tau_with_slack(space, m, 0)
}

pub fn tau_with_slack(space: CuspSpace, m: u64, slack: u32) -> Result<BigInt> {
    let origin = SymbolPoint::new(1, 0).expect("valid");
    let report = eigenvalue_at(&space.symbol_with_slack(slack), m, origin, 0)?;
    if !report.consistent {
        return Err(Error::Internal(format!(
            "T_{m} eigen check failed for ℓ={space}"
        )));
    }
    as_integer(&report.eigenvalue, || format!("τ_{}({m})", space.ell() + 2))
}

/// `sum_{b=0}^{m-1} I_{w,n}(m, b)`, the enumeration-heavy part of the closed forms.
pub fn column_sum(params: SymbolFamilyParams, m: u64) -> BigInt {
    let m = m as i64;
    par::sum((0..m).collect(), |b| {
        i_sum(params, SymbolPoint::new(m, b).expect("m >= 1"))
    })
}

fn require_prime(m: u64) -> Result<()> {
    if is_prime(m) {
        Ok(())
    } else {
        Err(Error::NotPrime(m))
    }
}

/// `τ_{ℓ+2}(m)` for prime `m` from the explicit closed form
/// `1 + m^{ℓ+1} + c {sum_e r_e (m^e - m^{ℓ+1}) + sum_b I_{ℓ,n0}(m, b)}`.
pub fn tau_prime_closed_form(space: CuspSpace, m: u64) -> Result<BigInt> {
    require_prime(m)?;
    let formula = space.prime_formula();
    let mm = Rational::from_integer(BigInt::from(m));
    let top = num_traits::pow(mm.clone(), space.ell() as usize + 1);
    let mut bracket = Rational::from_integer(column_sum(space.params(), m));
    for ((num, den), e) in formula.terms {
        bracket += ratio(*num, *den) * (num_traits::pow(mm.clone(), *e as usize) - &top);
    }
    let value = Rational::one() + &top + ratio(formula.prefactor.0, formula.prefactor.1) * bracket;
    as_integer(&value, || format!("closed form τ_{}({m})", space.ell() + 2))
}

/// Ramanujan's `τ(m)` for prime `m` with the matrix sum taken over the plain box
/// `|a|, |b|, |c|, |d| <= 2m`, all residues `i` at once.
pub fn tau12_elementary(m: u64) -> Result<BigInt> {
    require_prime(m)?;
    let params = SymbolFamilyParams::new(10, 5).expect("valid");
    let n = m as i64;
    let bound = 2 * n;
    let inner: BigInt = par::sum((1..=bound).collect(), |a| {
        let mut acc = BigInt::zero();
        for i in 0..n {
            let point = SymbolPoint::new(n, i).expect("n >= 1");
            for c in (-bound..=bound).filter(|c| *c != 0) {
                for b in -bound..=bound {
                    let num = 1 + b * c;
                    if num % a != 0 {
                        continue;
                    }
                    let d = num / a;
                    if d.abs() > bound {
                        continue;
                    }
                    let mat = UnimodularMatrix { a, b, c, d };
                    acc += term_value(params, point, &mat);
                }
            }
        }
        acc
    });
    let mm = BigInt::from(m);
    let value = Rational::from_integer(BigInt::one() + mm.pow(11))
        + ratio(691, 756) * Rational::from_integer(mm.pow(5) - mm.pow(11))
        - ratio(691, 6) * Rational::from_integer(inner);
    as_integer(&value, || format!("elementary τ({m})"))
}

/// `T_m E_{w,n}(1, 0)` for odd `n` and prime `m`, in closed form.
pub fn hecke_at_origin_closed_form(params: SymbolFamilyParams, m: u64) -> Result<Rational> {
    if !params.n_is_odd() {
        return Err(Error::InvalidIndex {
            w: params.w() as i64,
            n: params.n() as i64,
        });
    }
    require_prime(m)?;
    let mm = BigInt::from(m);
    let pw = |e: u32| Rational::from_integer(mm.pow(e));
    Ok(Rational::from_integer(column_sum(params, m))
        - bernoulli_ratio(params.n()) * (Rational::one() + pw(params.n_tilde()))
        - bernoulli_ratio(params.n_tilde()) * (Rational::one() + pw(params.n()))
        + (Rational::one() + pw(params.w() + 1)) * origin_constant(params))
}

/// `T_m E_{w,n}(h, k)` for odd `n` and prime `m` expanded through `I_{w,n}` and Bernoulli
/// functions (the distribution relation collapses the `m` shifted Bernoulli terms).
pub fn hecke_closed_form(
    params: SymbolFamilyParams,
    m: u64,
    point: SymbolPoint,
) -> Result<Rational> {
    if !params.n_is_odd() {
        return Err(Error::InvalidIndex {
            w: params.w() as i64,
            n: params.n() as i64,
        });
    }
    require_prime(m)?;
    let (h, k) = (point.h(), point.k());
    let mi = m as i64;
    let (n, nt, w) = (params.n(), params.n_tilde(), params.w());
    let mm = BigInt::from(m);
    let pw = |e: u32| Rational::from_integer(mm.pow(e));
    let hw = Rational::from_integer(BigInt::from(h).pow(w));
    let bar = |order: u32, num: i64| crate::exact::periodic_bernoulli_at(order, num, h);

    let mut i_total = Rational::from_integer(i_sum(params, SymbolPoint::new(h, mi * k)?));
    i_total += Rational::from_integer(par::sum((0..mi).collect(), |b| {
        i_sum(
            params,
            SymbolPoint::new(mi * h, k + b * h).expect("m h >= 1"),
        )
    }));
    let first = (bar(n + 1, mi * k) + pw(nt) * bar(n + 1, k)) / int(n as i64 + 1);
    let second = (bar(nt + 1, mi * k) + pw(n) * bar(nt + 1, k)) / int(nt as i64 + 1);
    Ok(i_total - (first + second) * &hw
        + (Rational::one() + pw(w + 1)) * origin_constant(params) * hw)
}

/// `T_m E(1,0) / E(1,0)` using the closed form for the numerator.
pub fn tau_prime_ratio_form(space: CuspSpace, m: u64) -> Result<BigInt> {
    let params = space.params();
    let value = hecke_at_origin_closed_form(params, m)? / e_at_origin_closed_form(params)?;
    as_integer(&value, || format!("ratio form τ_{}({m})", space.ell() + 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sigma;

    fn p(h: i64, k: i64) -> SymbolPoint {
        SymbolPoint::new(h, k).unwrap()
    }

    #[test]
    fn hecke_index_counts() {
        for n in 1..=12u64 {
            let idx = HeckeIndex::new(n).unwrap();
            let want: u64 = divisors(n).iter().sum();
            assert_eq!(idx.divisor_triples.len() as u64, want);
            assert!(idx
                .divisor_triples
                .iter()
                .all(|(a, d, b)| a * d == n && b < d));
        }
        assert_eq!(HeckeIndex::new(0), Err(Error::ZeroHeckeIndex));
    }

    #[test]
    fn t1_is_identity() {
        let e = CuspSpace::W10.symbol();
        for pt in [p(1, 0), p(3, 1), p(4, -2)] {
            assert_eq!(hecke_apply(&e, 1, pt).unwrap(), e.eval(pt));
        }
    }

    #[test]
    fn hecke_on_f() {
        let f = DedekindSymbol::trivial_f(10).unwrap();
        assert_eq!(hecke_apply(&f, 2, p(1, 1)).unwrap(), int(2049));
        let r = eigenvalue(&f, 6, 3).unwrap();
        assert_eq!(r.eigenvalue, Rational::from_integer(sigma(11, 6)));
        assert!(r.consistent);
        assert_eq!(r.base_point, p(1, 0));
    }

    #[test]
    fn hecke_on_e_10_5() {
        let e = CuspSpace::W10.symbol();
        assert_eq!(hecke_apply(&e, 2, p(1, 0)).unwrap(), ratio(144, 691));
        let r = eigenvalue(&e, 2, 4).unwrap();
        assert_eq!(r.eigenvalue, int(-24));
        assert!(r.consistent);
        assert_eq!(r.checked_points.len(), 4);
        let one = eigenvalue(&e, 1, 2).unwrap();
        assert_eq!(one.eigenvalue, int(1));
        assert!(one.consistent);
    }

    #[test]
    fn nonzero_search() {
        assert_eq!(
            find_nonzero_point(&CuspSpace::W10.symbol(), 4).unwrap(),
            p(1, 0)
        );
        assert_eq!(
            find_nonzero_point(&DedekindSymbol::trivial_f(10).unwrap(), 4).unwrap(),
            p(1, 0)
        );
        assert_eq!(
            find_nonzero_point(&DedekindSymbol::zero(10), 4),
            Err(Error::Exhausted(4))
        );
        // Odd symbols vanish at k = 0.
        let odd = DedekindSymbol::eisenstein_odd(2).unwrap();
        assert_eq!(find_nonzero_point(&odd, 8).unwrap(), p(3, 1));
    }

    #[test]
    fn non_eigen_symbol_is_flagged() {
        // Cusp part plus F: two different T_2 eigenvalues.
        let mix_params = SymbolFamilyParams::new(10, 3).unwrap();
        let e = DedekindSymbol::e_family(mix_params);
        let f = DedekindSymbol::trivial_f(10).unwrap();
        let g = DedekindSymbol::trivial_g(10).unwrap();
        let mix = DedekindSymbol::new("mix", 10, crate::Parity::Even, move |pt| {
            e.eval(pt) + f.eval(pt) + g.eval(pt)
        });
        let r = eigenvalue(&mix, 2, 4).unwrap();
        assert!(!r.consistent);
    }

    #[test]
    fn tau_small() {
        assert_eq!(tau(CuspSpace::W10, 1).unwrap(), BigInt::from(1));
        assert_eq!(tau(CuspSpace::W10, 2).unwrap(), BigInt::from(-24));
        assert_eq!(tau(CuspSpace::W16, 2).unwrap(), BigInt::from(-528));
        assert_eq!(tau(CuspSpace::W14, 2).unwrap(), BigInt::from(216));
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(
            tau_prime_closed_form(CuspSpace::W10, 2).unwrap(),
            BigInt::from(-24)
        );
        assert_eq!(
            tau_prime_closed_form(CuspSpace::W10, 5).unwrap(),
            BigInt::from(4830)
        );
        assert_eq!(
            tau_prime_closed_form(CuspSpace::W18, 2).unwrap(),
            tau(CuspSpace::W18, 2).unwrap()
        );
        assert_eq!(
            tau_prime_closed_form(CuspSpace::W10, 4),
            Err(Error::NotPrime(4))
        );
        assert_eq!(tau12_elementary(3).unwrap(), BigInt::from(252));
        assert_eq!(
            column_sum(SymbolFamilyParams::new(10, 5).unwrap(), 2),
            BigInt::from(2)
        );
    }

    #[test]
    fn origin_closed_form_matches_operator() {
        let params = SymbolFamilyParams::new(10, 5).unwrap();
        let e = DedekindSymbol::e_family(params);
        for m in [2, 3, 5] {
            assert_eq!(
                hecke_at_origin_closed_form(params, m).unwrap(),
                hecke_apply(&e, m, p(1, 0)).unwrap()
            );
        }
        assert_eq!(
            hecke_at_origin_closed_form(params, 2).unwrap(),
            ratio(144, 691)
        );
        assert!(hecke_at_origin_closed_form(SymbolFamilyParams::new(10, 4).unwrap(), 2).is_err());
        // General-point form at (1, 0) reduces to the origin form.
        assert_eq!(
            hecke_closed_form(params, 3, p(1, 0)).unwrap(),
            hecke_at_origin_closed_form(params, 3).unwrap()
        );
    }

    #[test]
    fn ratio_form_agrees() {
        for space in CuspSpace::ALL {
            assert_eq!(
                tau_prime_ratio_form(space, 3).unwrap(),
                tau(space, 3).unwrap()
            );
        }
    }

    #[test]
    fn printed_prefactors_are_reciprocal_origin_values() {
        for space in CuspSpace::ALL {
            let f = space.prime_formula();
            let origin = e_at_origin_closed_form(space.params()).unwrap();
            assert_eq!(
                ratio(f.prefactor.0, f.prefactor.1) * origin,
                int(1),
                "ℓ={space}"
            );
            // Bracket coefficients: B_{j+1}/(j+1) paired with m^{w-j}, negated.
            let n = space.odd_index();
            let nt = space.ell() - n;
            let mut derived: Vec<(Rational, u32)> =
                vec![(-bernoulli_ratio(n), nt), (-bernoulli_ratio(nt), n)];
            if n == nt {
                derived = vec![(-bernoulli_ratio(n) * int(2), n)];
            }
            derived.sort_by_key(|(_, e)| *e);
            let printed: Vec<(Rational, u32)> = f
                .terms
                .iter()
                .map(|((a, b), e)| (ratio(*a, *b), *e))
                .collect();
            assert_eq!(printed, derived, "ℓ={space}");
        }
    }

    #[test]
    fn cusp_space_table() {
        let n0: Vec<u32> = CuspSpace::ALL.iter().map(|s| s.odd_index()).collect();
        assert_eq!(n0, vec![5, 7, 7, 9, 9, 11]);
        assert_eq!(
            CuspSpace::from_weight(12),
            Err(Error::UnsupportedCuspWeight(12))
        );
        assert_eq!(CuspSpace::from_weight(24).unwrap(), CuspSpace::W24);
    }
}
