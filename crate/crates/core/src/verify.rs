//! Executable identity checks over configurable sample sets.
//!
//! Every check compares exact rationals. A failing check carries a witness with the
//! offending point and both sides rendered as `p/q`.

use std::fmt::Display;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{apostol_sum, primes_up_to, sigma, Rational};
use crate::hecke::{
    hecke_apply, hecke_closed_form, hecke_image, nonzero_points, tau, tau_prime_closed_form,
    CuspSpace, HeckeIndex,
};
use crate::par;
use crate::qoracle::oracle_tau;
use crate::symbols::{
    s_reciprocity_poly, DedekindSymbol, HomogeneousPolynomial, SymbolFamilyParams, SymbolPoint,
};
use crate::unimodular::{i_sum_in_box, EnumerationBox};

pub(crate) fn ser_rational<S: Serializer>(
    x: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub relation: String,
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    pub parameters: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn from_outcome(
        check_name: impl Into<String>,
        parameters: impl Into<String>,
        witness: Option<Witness>,
    ) -> Self {
        Self {
            check_name: check_name.into(),
            parameters: parameters.into(),
            passed: witness.is_none(),
            witness,
        }
    }
}

/// `Some(witness)` when `lhs != rhs`.
fn compare(relation: &str, point: impl Display, lhs: &Rational, rhs: &Rational) -> Option<Witness> {
    (lhs != rhs).then(|| Witness {
        relation: relation.to_string(),
        point: point.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub h_max: u32,
    pub k_max: u32,
    pub c_max: u32,
    pub n_max: u32,
    pub prime_max: u32,
    pub eigen_points: u32,
    pub explicit_points: Option<Vec<SymbolPoint>>,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            h_max: 6,
            k_max: 12,
            c_max: 3,
            n_max: 6,
            prime_max: 13,
            eigen_points: 5,
            explicit_points: None,
        }
    }
}

impl SampleSpec {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("h_max", self.h_max),
            ("k_max", self.k_max),
            ("c_max", self.c_max),
            ("n_max", self.n_max),
            ("prime_max", self.prime_max),
            ("eigen_points", self.eigen_points),
        ];
        match fields.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(Error::InvalidSample(format!("{name} must be at least 1"))),
            None => Ok(()),
        }
    }

    /// Same spec with `h_max` and `k_max` capped.
    pub fn capped(&self, h_max: u32, k_max: u32) -> Self {
        Self {
            h_max: self.h_max.min(h_max),
            k_max: self.k_max.min(k_max),
            ..self.clone()
        }
    }

    /// `1 <= h <= h_max`, `-k_max <= k <= k_max`, then the explicit points.
    pub fn points(&self) -> Vec<SymbolPoint> {
        let (h_max, k_max) = (self.h_max as i64, self.k_max as i64);
        let mut out: Vec<SymbolPoint> = (1..=h_max)
            .flat_map(|h| (-k_max..=k_max).map(move |k| SymbolPoint::new(h, k).expect("h >= 1")))
            .collect();
        out.extend(self.explicit_points.iter().flatten().copied());
        out
    }

    /// `1 <= h <= h_max`, `1 <= k <= min(k_max, h_max)`, then explicit points with `k >= 1`.
    pub fn positive_points(&self) -> Vec<SymbolPoint> {
        let (h_max, k_max) = (self.h_max as i64, self.k_max.min(self.h_max) as i64);
        let mut out: Vec<SymbolPoint> = (1..=h_max)
            .flat_map(|h| (1..=k_max).map(move |k| SymbolPoint::new(h, k).expect("h >= 1")))
            .collect();
        out.extend(
            self.explicit_points
                .iter()
                .flatten()
                .filter(|p| p.k() >= 1)
                .copied(),
        );
        out
    }

    fn describe(&self) -> String {
        format!("h<={}, |k|<={}, c<={}", self.h_max, self.k_max, self.c_max)
    }
}

fn pt(h: i64, k: i64) -> SymbolPoint {
    SymbolPoint::new(h, k).expect("h >= 1")
}

/// First failure in point order; the points are evaluated on the worker pool.
fn first_failure<F>(points: Vec<SymbolPoint>, f: F) -> Option<Witness>
where
    F: Fn(SymbolPoint) -> Option<Witness> + Send + Sync,
{
    par::map(points, f).into_iter().flatten().next()
}

/// Periodicity, homogeneity for `2 <= c <= c_max`, and the declared parity.
pub fn check_symbol_axioms(symbol: &DedekindSymbol, spec: &SampleSpec) -> CheckResult {
    check_symbol_axioms_named("axioms", symbol, spec)
}

fn check_symbol_axioms_named(
    check_name: &str,
    symbol: &DedekindSymbol,
    spec: &SampleSpec,
) -> CheckResult {
    let w = symbol.weight();
    let parity = symbol.parity().sign();
    let c_max = spec.c_max as i64;
    let witness = first_failure(spec.points(), |p| {
        let (h, k) = (p.h(), p.k());
        let value = symbol.eval(p);
        if let Some(x) = compare("periodicity", p, &symbol.eval(pt(h, k + h)), &value) {
            return Some(x);
        }
        for c in 2..=c_max {
            let scaled = Rational::from_integer(BigInt::from(c).pow(w)) * &value;
            if let Some(x) = compare(
                &format!("homogeneity c={c}"),
                p,
                &symbol.eval(pt(c * h, c * k)),
                &scaled,
            ) {
                return Some(x);
            }
        }
        if let Some(s) = parity {
            let reflected = symbol.eval(pt(h, -k));
            let expected = if s > 0 { value.clone() } else { -value.clone() };
            if let Some(x) = compare("parity", p, &reflected, &expected) {
                return Some(x);
            }
        }
        None
    });
    CheckResult::from_outcome(
        check_name,
        format!(
            "symbol={}, parity={}, {}",
            symbol.name(),
            symbol.parity(),
            spec.describe()
        ),
        witness,
    )
}

/// Axioms for the image `T_n E`.
pub fn check_hecke_closure(
    symbol: &DedekindSymbol,
    n: u64,
    spec: &SampleSpec,
) -> Result<CheckResult> {
    let image = hecke_image(symbol, n)?;
    Ok(check_symbol_axioms_named("hecke-closure", &image, spec))
}

/// `E(h, k) - E(k, -h) = S(h, k)` for `h, k >= 1`.
pub fn check_reciprocity_against(
    symbol: &DedekindSymbol,
    poly: &HomogeneousPolynomial,
    spec: &SampleSpec,
) -> CheckResult {
    let witness = first_failure(spec.positive_points(), |p| {
        let (h, k) = (p.h(), p.k());
        let lhs = symbol.eval(p) - symbol.eval(pt(k, -h));
        compare("E(h,k) - E(k,-h) = S(h,k)", p, &lhs, &poly.eval_int(h, k))
    });
    CheckResult::from_outcome(
        "reciprocity",
        format!(
            "symbol={}, S={poly}, h<={}, k<={}",
            symbol.name(),
            spec.h_max,
            spec.k_max.min(spec.h_max)
        ),
        witness,
    )
}

pub fn check_reciprocity(params: SymbolFamilyParams, spec: &SampleSpec) -> CheckResult {
    let mut r = check_reciprocity_against(
        &DedekindSymbol::e_family(params),
        &s_reciprocity_poly(params),
        spec,
    );
    r.parameters = format!(
        "{params}, h<={}, k<={}",
        spec.h_max,
        spec.k_max.min(spec.h_max)
    );
    r
}

/// `g(h+k, k) + g(h, h+k) = g(h, k)` coefficientwise, and `g(1, 1) = 0`.
pub fn check_cocycle_poly(poly: &HomogeneousPolynomial) -> CheckResult {
    let lhs = poly
        .substitute(1, 1, 0, 1)
        .add(&poly.substitute(1, 0, 1, 1));
    let witness = if lhs != *poly {
        Some(Witness {
            relation: "g(h+k,k) + g(h,h+k) = g(h,k)".to_string(),
            point: "polynomial identity".to_string(),
            lhs: lhs.to_string(),
            rhs: poly.to_string(),
        })
    } else {
        compare(
            "g(1,1) = 0",
            pt(1, 1),
            &poly.eval_int(1, 1),
            &Rational::zero(),
        )
    };
    CheckResult::from_outcome("cocycle", format!("g={poly}"), witness)
}

pub fn check_cocycle(params: SymbolFamilyParams) -> CheckResult {
    let mut r = check_cocycle_poly(&s_reciprocity_poly(params));
    r.parameters = params.to_string();
    r
}

/// `T_m E_{ℓ,n0} = τ E_{ℓ,n0}` at `num_points` nonzero coprime points, `τ` read at `(1, 0)`
/// and compared with the q-expansion.
pub fn check_eigen(space: CuspSpace, m: u64, num_points: usize) -> Result<CheckResult> {
    let symbol = space.symbol();
    let origin = pt(1, 0);
    let tau_symbol = hecke_apply(&symbol, m, origin)? / symbol.eval(origin);
    let tau_oracle = Rational::from_integer(oracle_tau(space, m)?);
    let parameters = format!("ℓ={space}, m={m}, points={num_points}");
    if let Some(x) = compare(
        "T_m E(1,0) / E(1,0) = oracle τ",
        origin,
        &tau_symbol,
        &tau_oracle,
    ) {
        return Ok(CheckResult::from_outcome("eigen", parameters, Some(x)));
    }
    let points: Vec<SymbolPoint> = nonzero_points(&symbol, crate::hecke::DEFAULT_SEARCH_LIMIT)
        .filter(|p| p.gcd() == 1)
        .take(num_points)
        .collect();
    if points.len() < num_points {
        return Ok(CheckResult::from_outcome(
            "eigen",
            parameters,
            Some(Witness {
                relation: "enough nonzero points".to_string(),
                point: "-".to_string(),
                lhs: points.len().to_string(),
                rhs: num_points.to_string(),
            }),
        ));
    }
    let witness = first_failure(points, |p| {
        let lhs = hecke_apply(&symbol, m, p).expect("m >= 1 checked above");
        compare(
            "T_m E(p) = τ E(p)",
            p,
            &lhs,
            &(&tau_symbol * symbol.eval(p)),
        )
    });
    Ok(CheckResult::from_outcome("eigen", parameters, witness))
}

/// `sum_{ad=n} sum_{b mod d} d^w s_{w+1}(ak+bh, dh) = sigma_{w+1}(n) s_{w+1}(k, h)`.
pub fn check_kpr(w: i64, n: u64, spec: &SampleSpec) -> Result<CheckResult> {
    let wu = crate::symbols::check_weight(w)?;
    let index = HeckeIndex::new(n)?;
    let factor = Rational::from_integer(sigma(wu + 1, n));
    let witness = first_failure(spec.points(), |p| {
        let (h, k) = (p.h(), p.k());
        let mut lhs = Rational::zero();
        for (a, d, b) in &index.divisor_triples {
            let (a, d, b) = (*a as i64, *d as i64, *b as i64);
            let s = apostol_sum(wu + 1, a * k + b * h, d * h).expect("order w+1 >= 3");
            lhs += Rational::from_integer(BigInt::from(d).pow(wu)) * s;
        }
        let rhs = &factor * apostol_sum(wu + 1, k, h).expect("order w+1 >= 3");
        compare("sum d^w s(ak+bh, dh) = sigma(n) s(k, h)", p, &lhs, &rhs)
    });
    Ok(CheckResult::from_outcome(
        "kpr",
        format!("w={w}, n={n}, {}", spec.describe()),
        witness,
    ))
}

/// `T_n` acting on the Eisenstein odd symbol with eigenvalue `sigma_{w+1}(n)`.
pub fn check_eisenstein_eigen(w: i64, n: u64, spec: &SampleSpec) -> Result<CheckResult> {
    let symbol = DedekindSymbol::eisenstein_odd(w)?;
    HeckeIndex::new(n)?;
    let factor = Rational::from_integer(sigma(symbol.weight() + 1, n));
    let points: Vec<SymbolPoint> = spec
        .points()
        .into_iter()
        .filter(|p| !symbol.eval(*p).is_zero())
        .collect();
    let parameters = format!("w={w}, n={n}, {}", spec.describe());
    if points.is_empty() {
        return Ok(CheckResult::from_outcome(
            "eisenstein-eigen",
            parameters,
            Some(Witness {
                relation: "some sampled point is nonzero".to_string(),
                point: "-".to_string(),
                lhs: "0".to_string(),
                rhs: ">0".to_string(),
            }),
        ));
    }
    let witness = first_failure(points, |p| {
        let lhs = hecke_apply(&symbol, n, p).expect("n >= 1 checked above");
        compare(
            "T_n Eis(p) = sigma(n) Eis(p)",
            p,
            &lhs,
            &(&factor * symbol.eval(p)),
        )
    });
    Ok(CheckResult::from_outcome(
        "eisenstein-eigen",
        parameters,
        witness,
    ))
}

/// `τ_{ℓ+2}(m) ≡ sigma_{ℓ+1}(m)` modulo the weight-specific modulus, `τ` from the operator route.
pub fn check_congruence(space: CuspSpace, m: u64) -> Result<CheckResult> {
    if !crate::exact::is_prime(m) {
        return Err(Error::NotPrime(m));
    }
    let modulus = BigInt::from(space.congruence_modulus());
    let t = tau(space, m)?.mod_floor(&modulus);
    let s = sigma(space.ell() + 1, m).mod_floor(&modulus);
    let witness = compare(
        "τ(m) ≡ sigma(m)",
        format!("m={m}"),
        &Rational::from_integer(t),
        &Rational::from_integer(s),
    );
    Ok(CheckResult::from_outcome(
        "congruence",
        format!("ℓ={space}, m={m}, modulus={modulus}"),
        witness,
    ))
}

/// Operator route, closed form and q-expansion agree on `τ_{ℓ+2}(m)` for prime `m`.
pub fn check_route_equivalence(space: CuspSpace, m: u64) -> Result<CheckResult> {
    let operator = Rational::from_integer(tau(space, m)?);
    let closed = Rational::from_integer(tau_prime_closed_form(space, m)?);
    let oracle = Rational::from_integer(oracle_tau(space, m)?);
    let witness = compare(
        "operator = closed form",
        format!("m={m}"),
        &operator,
        &closed,
    )
    .or_else(|| {
        compare(
            "operator = q-expansion",
            format!("m={m}"),
            &operator,
            &oracle,
        )
    });
    Ok(CheckResult::from_outcome(
        "route-equivalence",
        format!("ℓ={space}, m={m}"),
        witness,
    ))
}

/// `T_m E_{w,n}(h, k)` against its expansion through `I_{w,n}` and Bernoulli functions.
pub fn check_hecke_closed_form(
    params: SymbolFamilyParams,
    m: u64,
    spec: &SampleSpec,
) -> Result<CheckResult> {
    let symbol = DedekindSymbol::e_family(params);
    hecke_closed_form(params, m, pt(1, 0))?;
    let witness = first_failure(spec.points(), |p| {
        let lhs = hecke_apply(&symbol, m, p).expect("m >= 1");
        let rhs = hecke_closed_form(params, m, p).expect("preconditions checked above");
        compare("T_m E(p) = closed form", p, &lhs, &rhs)
    });
    Ok(CheckResult::from_outcome(
        "hecke-closed-form",
        format!("{params}, m={m}, {}", spec.describe()),
        witness,
    ))
}

/// `I_{w,n}` is unchanged when the enumeration box grows by every slack up to `max_slack`.
pub fn check_box_stability(
    params: SymbolFamilyParams,
    spec: &SampleSpec,
    max_slack: u32,
) -> CheckResult {
    let witness = first_failure(spec.points(), |p| {
        let base = Rational::from_integer(i_sum_in_box(params, p, EnumerationBox::for_point(p, 0)));
        (1..=max_slack).find_map(|s| {
            let wide =
                Rational::from_integer(i_sum_in_box(params, p, EnumerationBox::for_point(p, s)));
            compare(&format!("I(slack={s}) = I(slack=0)"), p, &wide, &base)
        })
    });
    CheckResult::from_outcome(
        "box-stability",
        format!("{params}, max_slack={max_slack}, {}", spec.describe()),
        witness,
    )
}

/// Check families in the default suite, in run order.
pub const FAMILIES: [&str; 11] = [
    "axioms",
    "hecke-closure",
    "reciprocity",
    "cocycle",
    "eigen",
    "route-equivalence",
    "hecke-closed-form",
    "kpr",
    "eisenstein-eigen",
    "congruence",
    "box-stability",
];

/// `(w, n)` pairs exercised by the reciprocity, cocycle and axiom checks.
pub const FAMILY_PARAMS: [(i64, i64); 6] = [(10, 4), (10, 5), (14, 7), (16, 7), (12, 3), (12, 6)];

type Job = Box<dyn Fn(&SampleSpec) -> CheckResult + Send + Sync>;

fn family(w: i64, n: i64) -> SymbolFamilyParams {
    SymbolFamilyParams::new(w, n).expect("table entries are valid")
}

fn ok(r: Result<CheckResult>) -> CheckResult {
    r.expect("suite parameters satisfy every precondition")
}

fn jobs_for(name: &str, spec: &SampleSpec) -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    let n_max = spec.n_max as u64;
    let primes = primes_up_to(spec.prime_max as u64);
    match name {
        "axioms" => {
            let mut symbols = vec![
                DedekindSymbol::trivial_g(2).expect("valid"),
                DedekindSymbol::trivial_g(10).expect("valid"),
                DedekindSymbol::trivial_f(10).expect("valid"),
                DedekindSymbol::eisenstein_odd(2).expect("valid"),
                DedekindSymbol::eisenstein_odd(10).expect("valid"),
            ];
            symbols.extend(
                FAMILY_PARAMS
                    .iter()
                    .map(|(w, n)| DedekindSymbol::e_family(family(*w, *n))),
            );
            for s in symbols {
                jobs.push(Box::new(move |spec| check_symbol_axioms(&s, spec)));
            }
            // The kernel symbol G_w has zero reciprocity function.
            jobs.push(Box::new(|spec| {
                let g = DedekindSymbol::trivial_g(10).expect("valid");
                let mut r = check_reciprocity_against(&g, &HomogeneousPolynomial::zero(10), spec);
                r.check_name = "axioms".to_string();
                r
            }));
        }
        "hecke-closure" => {
            let symbols = [
                DedekindSymbol::e_family(family(10, 5)),
                DedekindSymbol::e_family(family(10, 4)),
                DedekindSymbol::trivial_g(10).expect("valid"),
                DedekindSymbol::eisenstein_odd(2).expect("valid"),
            ];
            for s in symbols {
                for n in 2..=n_max.min(3) {
                    let s = s.clone();
                    jobs.push(Box::new(move |spec| {
                        ok(check_hecke_closure(&s, n, &spec.capped(3, 4)))
                    }));
                }
            }
        }
        "reciprocity" => {
            for (w, n) in FAMILY_PARAMS {
                jobs.push(Box::new(move |spec| {
                    check_reciprocity(family(w, n), &spec.capped(5, 5))
                }));
            }
        }
        "cocycle" => {
            for (w, n) in FAMILY_PARAMS {
                jobs.push(Box::new(move |_| check_cocycle(family(w, n))));
            }
        }
        "eigen" => {
            let points = spec.eigen_points as usize;
            for space in CuspSpace::ALL {
                for m in 1..=n_max {
                    jobs.push(Box::new(move |_| ok(check_eigen(space, m, points))));
                }
            }
        }
        "route-equivalence" => {
            for space in CuspSpace::ALL {
                for &m in &primes {
                    jobs.push(Box::new(move |_| ok(check_route_equivalence(space, m))));
                }
            }
        }
        "hecke-closed-form" => {
            for (w, n) in [(10, 5), (12, 3)] {
                for m in [2, 3] {
                    jobs.push(Box::new(move |spec| {
                        ok(check_hecke_closed_form(family(w, n), m, &spec.capped(4, 4)))
                    }));
                }
            }
        }
        "kpr" => {
            for w in [2, 4, 10] {
                for n in 1..=n_max {
                    jobs.push(Box::new(move |spec| {
                        ok(check_kpr(w, n, &spec.capped(5, 12)))
                    }));
                }
            }
        }
        "eisenstein-eigen" => {
            for w in [2, 10] {
                for n in 1..=n_max {
                    jobs.push(Box::new(move |spec| {
                        ok(check_eisenstein_eigen(w, n, &spec.capped(5, 6)))
                    }));
                }
            }
        }
        "congruence" => {
            for space in CuspSpace::ALL {
                for &m in &primes {
                    jobs.push(Box::new(move |_| ok(check_congruence(space, m))));
                }
            }
        }
        "box-stability" => {
            for (w, n) in [(10, 5), (14, 7)] {
                jobs.push(Box::new(move |spec| {
                    check_box_stability(family(w, n), &spec.capped(4, 6), 3)
                }));
            }
        }
        _ => {}
    }
    jobs
}

/// Runs the default suite, optionally restricted to a comma-separated list of families.
///
/// Unknown family names select nothing; an all-unknown filter yields an empty report.
pub fn run_suite(filter: Option<&str>, spec: &SampleSpec) -> Result<Vec<CheckResult>> {
    spec.validate()?;
    let selected: Vec<&str> = match filter {
        None => FAMILIES.to_vec(),
        Some(f) => {
            let wanted: Vec<&str> = f.split(',').map(str::trim).collect();
            FAMILIES
                .iter()
                .copied()
                .filter(|name| wanted.contains(name))
                .collect()
        }
    };
    let jobs: Vec<Job> = selected
        .iter()
        .flat_map(|name| jobs_for(name, spec))
        .collect();
    Ok(par::map(jobs, |job| job(spec)))
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
