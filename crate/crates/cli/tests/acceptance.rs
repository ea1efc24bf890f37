//! Acceptance criteria, one line each. All comparisons are exact.
//!
//! Runs without the libtest harness so the per-criterion lines always print.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use hecke_dedekind::exact::{apostol_sum, int, primes_up_to, ratio, Rational};
use hecke_dedekind::hecke::{
    hecke_apply, tau, tau12_elementary, tau_prime_closed_form, CuspSpace, HeckeIndex,
};
use hecke_dedekind::symbols::{e_symbol, s_reciprocity_poly, HomogeneousPolynomial};
use hecke_dedekind::verify::{
    check_box_stability, check_congruence, check_eigen, check_eisenstein_eigen,
    check_hecke_closure, check_kpr, check_reciprocity, check_reciprocity_against,
    check_symbol_axioms, CheckResult, SampleSpec,
};
use hecke_dedekind::{DedekindSymbol, SymbolFamilyParams, SymbolPoint};
use num_bigint::BigInt;
use num_traits::Zero;

const FAMILIES: [(i64, i64); 6] = [(10, 4), (10, 5), (14, 7), (16, 7), (12, 3), (12, 6)];

fn fam(w: i64, n: i64) -> SymbolFamilyParams {
    SymbolFamilyParams::new(w, n).unwrap()
}

fn p(h: i64, k: i64) -> SymbolPoint {
    SymbolPoint::new(h, k).unwrap()
}

fn spec(h_max: u32, k_max: u32, c_max: u32) -> SampleSpec {
    SampleSpec {
        h_max,
        k_max,
        c_max,
        ..SampleSpec::default()
    }
}

fn require(results: &[CheckResult]) -> Result<(), String> {
    match results.iter().find(|r| !r.passed) {
        None => Ok(()),
        Some(r) => Err(format!(
            "{} [{}] witness {:?}",
            r.check_name, r.parameters, r.witness
        )),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Reference q-expansions built the slow way: `(1 - q^m)` applied one factor at a time and
/// divisor sums by trial division.
mod reference {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().min(b.len());
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += &a[i] * &b[j];
            }
        }
        out
    }

    fn delta(n: usize) -> Vec<BigInt> {
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

    fn eisenstein(c: i64, k: u32, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::one()];
        for i in 1..=n {
            let s: BigInt = (1..=i)
                .filter(|d| i % d == 0)
                .map(|d| BigInt::from(d).pow(k))
                .sum();
            out.push(BigInt::from(c) * s);
        }
        out
    }

    pub fn tau(ell: u32, m: usize) -> BigInt {
        let n = m.max(2);
        let (e4, e6) = match ell {
            10 => (0, 0),
            14 => (1, 0),
            16 => (0, 1),
            18 => (2, 0),
            20 => (1, 1),
            24 => (2, 1),
            _ => unreachable!(),
        };
        let mut f = delta(n);
        for _ in 0..e4 {
            f = mul(&f, &eisenstein(240, 3, n));
        }
        for _ in 0..e6 {
            f = mul(&f, &eisenstein(-504, 5, n));
        }
        f[m].clone()
    }
}

fn criterion_1() -> Result<(), String> {
    let expected = [
        (10, 5, ratio(-6, 691)),
        (14, 7, ratio(30, 3617)),
        (16, 7, ratio(-150, 43867)),
        (18, 9, ratio(-2646, 174611)),
        (20, 9, ratio(1050, 77683)),
        (24, 11, ratio(-40950, 657931)),
    ];
    for (w, n, want) in expected {
        let got = e_symbol(fam(w, n), p(1, 0));
        ensure(got == want, || {
            format!("E_{{{w},{n}}}(1,0) = {got}, expected {want}")
        })?;
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let poly = |d: u32, terms: &[(u32, Rational)]| {
        let mut g = HomogeneousPolynomial::zero(d);
        for (i, c) in terms {
            g.set_coeff(*i, c.clone());
        }
        g
    };
    let s_10_4 = poly(
        10,
        &[
            (9, ratio(-2, 35)),
            (7, ratio(5, 14)),
            (5, ratio(-3, 5)),
            (3, ratio(5, 14)),
            (1, ratio(-2, 35)),
        ],
    );
    let s_10_5 = poly(
        10,
        &[
            (10, ratio(-6, 691)),
            (8, ratio(1, 6)),
            (6, ratio(-1, 2)),
            (4, ratio(1, 2)),
            (2, ratio(-1, 6)),
            (0, ratio(6, 691)),
        ],
    );
    for (n, want) in [(4, s_10_4), (5, s_10_5)] {
        let got = s_reciprocity_poly(fam(10, n));
        ensure(got == want, || {
            format!("S_{{10,{n}}} = {got}, expected {want}")
        })?;
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let expected = [
        (2, -24),
        (3, 252),
        (5, 4830),
        (7, -16744),
        (11, 534612),
        (13, -577738),
    ];
    for (m, want) in expected {
        let got = tau(CuspSpace::W10, m).map_err(|e| e.to_string())?;
        let oracle = reference::tau(10, m as usize);
        ensure(got == oracle && oracle == BigInt::from(want), || {
            format!("τ({m}) = {got}, oracle {oracle}, expected {want}")
        })?;
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    for space in CuspSpace::ALL {
        for m in [2u64, 3] {
            let got = tau(space, m).map_err(|e| e.to_string())?;
            let oracle = reference::tau(space.ell(), m as usize);
            ensure(got == oracle, || {
                format!("ℓ={space} m={m}: {got} vs oracle {oracle}")
            })?;
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    for space in CuspSpace::ALL {
        for m in primes_up_to(7) {
            let closed = tau_prime_closed_form(space, m).map_err(|e| e.to_string())?;
            let operator = tau(space, m).map_err(|e| e.to_string())?;
            ensure(closed == operator, || {
                format!("ℓ={space} m={m}: closed {closed}, operator {operator}")
            })?;
        }
    }
    for m in primes_up_to(7) {
        let elementary = tau12_elementary(m).map_err(|e| e.to_string())?;
        let closed = tau_prime_closed_form(CuspSpace::W10, m).map_err(|e| e.to_string())?;
        ensure(elementary == closed, || {
            format!("m={m}: elementary {elementary}, closed {closed}")
        })?;
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let s = spec(5, 5, 1);
    let results: Vec<_> = FAMILIES
        .iter()
        .map(|(w, n)| check_reciprocity(fam(*w, *n), &s))
        .collect();
    require(&results)
}

fn criterion_7() -> Result<(), String> {
    let s = spec(6, 12, 3);
    ensure(s.points().iter().any(|q| q.gcd() > 1), || {
        "sample has no non-coprime point".into()
    })?;
    let mut symbols = Vec::new();
    for w in [2, 10, 12] {
        symbols.push(DedekindSymbol::trivial_g(w).unwrap());
        symbols.push(DedekindSymbol::trivial_f(w).unwrap());
        symbols.push(DedekindSymbol::eisenstein_odd(w).unwrap());
    }
    symbols.extend(
        FAMILIES
            .iter()
            .map(|(w, n)| DedekindSymbol::e_family(fam(*w, *n))),
    );
    let mut results: Vec<_> = symbols.iter().map(|e| check_symbol_axioms(e, &s)).collect();
    for w in [2, 10] {
        let g = DedekindSymbol::trivial_g(w).unwrap();
        results.push(check_reciprocity_against(
            &g,
            &HomogeneousPolynomial::zero(w as u32),
            &s,
        ));
    }
    require(&results)
}

fn criterion_8() -> Result<(), String> {
    let s = spec(3, 4, 2);
    let symbols = [
        DedekindSymbol::e_family(fam(10, 5)),
        DedekindSymbol::e_family(fam(10, 4)),
        DedekindSymbol::trivial_g(10).unwrap(),
        DedekindSymbol::trivial_f(10).unwrap(),
        DedekindSymbol::eisenstein_odd(2).unwrap(),
    ];
    let mut results = Vec::new();
    for e in &symbols {
        for n in 1..=6 {
            results.push(check_hecke_closure(e, n, &s).map_err(|x| x.to_string())?);
        }
    }
    require(&results)
}

fn criterion_9() -> Result<(), String> {
    let mut results = Vec::new();
    for space in CuspSpace::ALL {
        for m in 1..=7 {
            results.push(check_eigen(space, m, 5).map_err(|e| e.to_string())?);
        }
    }
    require(&results)
}

fn criterion_10() -> Result<(), String> {
    // Hand instance: w = 2, n = 2, (h, k) = (3, 1), both sides -1/9.
    let index = HeckeIndex::new(2).unwrap();
    let mut lhs = Rational::zero();
    for (a, d, b) in &index.divisor_triples {
        let (a, d, b) = (*a as i64, *d as i64, *b as i64);
        lhs += int(d * d) * apostol_sum(3, a + 3 * b, 3 * d).unwrap();
    }
    let rhs = int(9) * apostol_sum(3, 1, 3).unwrap();
    ensure(lhs == ratio(-1, 9) && rhs == ratio(-1, 9), || {
        format!("hand instance: {lhs} vs {rhs}")
    })?;

    let s = SampleSpec {
        explicit_points: Some(vec![p(3, 1)]),
        ..spec(5, 10, 1)
    };
    let mut results = Vec::new();
    for w in [2, 4, 10] {
        for n in 1..=6 {
            results.push(check_kpr(w, n, &s).map_err(|e| e.to_string())?);
        }
    }
    require(&results)
}

fn criterion_11() -> Result<(), String> {
    let s = spec(5, 6, 1);
    let mut results = Vec::new();
    for w in [2, 10] {
        for n in 1..=6 {
            results.push(check_eisenstein_eigen(w, n, &s).map_err(|e| e.to_string())?);
        }
    }
    // Direct spot value of the relation at a point where the symbol is nonzero.
    let eis = DedekindSymbol::eisenstein_odd(2).unwrap();
    let lhs = hecke_apply(&eis, 2, p(3, 1)).unwrap();
    ensure(lhs == int(9) * eis.eval(p(3, 1)) && !lhs.is_zero(), || {
        format!("T_2 Eis_2(3,1) = {lhs}")
    })?;
    require(&results)
}

fn criterion_12() -> Result<(), String> {
    let mut results = Vec::new();
    for space in CuspSpace::ALL {
        for m in primes_up_to(29) {
            results.push(check_congruence(space, m).map_err(|e| e.to_string())?);
        }
    }
    require(&results)
}

fn criterion_13() -> Result<(), String> {
    let s = spec(4, 8, 1);
    let results: Vec<_> = [(10, 5), (14, 7)]
        .iter()
        .map(|(w, n)| check_box_stability(fam(*w, *n), &s, 3))
        .collect();
    require(&results)
}

fn criterion_14() -> Result<(), String> {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hecke-dedekind"))
            .args(["verify", "--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("verify --threads {threads} exited {:?}", out.status.code())
        })?;
        Ok::<Vec<u8>, String>(out.stdout)
    };
    let one = run("1")?;
    let four = run("4")?;
    ensure(!one.is_empty(), || "empty report".into())?;
    ensure(one == four, || {
        "reports differ between --threads 1 and 4".into()
    })
}

type Criterion = (
    u32,
    &'static str,
    Option<Duration>,
    fn() -> Result<(), String>,
);

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 14] = [
        (1, "origin constants", secs(1), criterion_1),
        (2, "printed reciprocity polynomials", secs(1), criterion_2),
        (3, "tau reproduction, weight 12", secs(60), criterion_3),
        (
            4,
            "tau(2), tau(3) for all six weights",
            secs(60),
            criterion_4,
        ),
        (5, "route equivalence", secs(60), criterion_5),
        (6, "reciprocity", secs(120), criterion_6),
        (7, "symbol axioms", secs(120), criterion_7),
        (8, "Hecke closure and parity", None, criterion_8),
        (9, "eigen consistency", None, criterion_9),
        (10, "Knopp-Parson-Rosen", None, criterion_10),
        (11, "Eisenstein eigen-symbol", None, criterion_11),
        (12, "congruences", secs(600), criterion_12),
        (13, "box stability", None, criterion_13),
        (14, "determinism across --threads", None, criterion_14),
    ];
    let mut failures = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(l)) if elapsed >= l => Err(format!("took {elapsed:?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!(
                "criterion {id:>2} PASS  {name} ({} ms)",
                elapsed.as_millis()
            ),
            Err(msg) => {
                failures += 1;
                println!(
                    "criterion {id:>2} FAIL  {name} ({} ms): {msg}",
                    elapsed.as_millis()
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 14 acceptance criteria passed");
}
