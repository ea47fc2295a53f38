//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fail.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigstrength::charset::{autoreduce, is_reduced, proportional};
use sigstrength::diffpoly::{Ranking, Shift, SigmaPolynomial, Term};
use sigstrength::lattice::{omega, phi, phi_empty, Ambient, LatticeSet};
use sigstrength::numpoly::NumericalPolynomial;
use sigstrength::oracle::{free_counts, randomized_verify};
use sigstrength::schemes::{self, catalog_lookup, CatalogEntry, SchemeKind};
use sigstrength::strength::strength_of_system;
use sigstrength::{BigRational, ConstantExpr};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn poly(c: &[i64]) -> NumericalPolynomial {
    NumericalPolynomial::from_ints(c)
}

fn zset(points: &[[i64; 2]]) -> LatticeSet {
    LatticeSet::integers(2, points.iter().map(|p| p.to_vec())).unwrap()
}

fn nset(points: &[[i64; 4]]) -> LatticeSet {
    LatticeSet::naturals(4, points.iter().map(|p| p.to_vec())).unwrap()
}

fn expect_eq(what: &str, got: &NumericalPolynomial, want: &NumericalPolynomial) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn within(what: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    }
}

fn psi_of(entry: &CatalogEntry, scheme: SchemeKind, rk: Option<Ranking>) -> Result<NumericalPolynomial, String> {
    let form = entry.form(scheme).map_err(|e| e.to_string())?;
    let rk = rk.unwrap_or_else(|| form.ranking.clone());
    strength_of_system(&form.system, &rk).map(|r| r.psi).map_err(|e| format!("{} {scheme}: {e}", entry.name))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = phi(&zset(&[[2, 0], [-1, 1], [1, -1], [-2, -1]])).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    expect_eq("phi", &p, &poly(&[0, 5]))?;
    within("phi", elapsed, Duration::from_secs(1))?;
    Ok(format!("phi = {p} in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let e = nset(&[[1, 0, 0, 0], [0, 0, 2, 0], [1, 0, 1, 0], [0, 1, 0, 1]]);
    let w = omega(&e).map_err(|e| e.to_string())?;
    expect_eq("omega", &w, &poly(&[0, 4]))?;
    let psi = psi_of(&catalog_lookup("diffusion").unwrap(), SchemeKind::Symmetric, None)?;
    expect_eq("pipeline", &psi, &poly(&[0, 4]))?;
    Ok(format!("omega = {w}, pipeline = {psi}"))
}

fn criterion_3() -> Outcome {
    let p = phi(&zset(&[[1, 1], [-2, 1], [1, -1], [-2, -1]])).map_err(|e| e.to_string())?;
    expect_eq("phi", &p, &poly(&[-1, 6]))?;
    Ok(format!("phi = {p}"))
}

fn criterion_4() -> Outcome {
    let e1 = omega(&nset(&[[2, 0, 0, 0], [1, 0, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]])).map_err(|e| e.to_string())?;
    let e2 = omega(&nset(&[[0, 1, 1, 0], [0, 0, 2, 1], [1, 0, 1, 0], [0, 1, 0, 1]])).map_err(|e| e.to_string())?;
    expect_eq("omega E1", &e1, &poly(&[1, 3, 1]))?;
    expect_eq("omega E2", &e2, &poly(&[0, 4, 1]))?;
    let sum = &e1 + &e2;
    expect_eq("sum", &sum, &poly(&[1, 7, 2]))?;
    Ok(format!("{e1} + {e2} = {sum}"))
}

fn criterion_5() -> Outcome {
    let closed = phi_empty(2);
    let direct = phi(&LatticeSet::empty(Ambient::Integers, 2)).map_err(|e| e.to_string())?;
    expect_eq("phi_empty vs phi(empty)", &closed, &direct)?;
    let total = &closed + &phi(&zset(&[[1, 0], [-2, 0]])).map_err(|e| e.to_string())?;
    expect_eq("sum", &total, &poly(&[1, 6, 2]))?;
    Ok(format!("{closed} + 4t = {total}"))
}

const FAMILY: [&str; 7] =
    ["murray", "burgers", "fisher", "huxley", "burgers-fisher", "burgers-huxley", "fitzhugh-nagumo"];

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut run = |entry: &CatalogEntry, scheme: SchemeKind, rk: Option<Ranking>, want: NumericalPolynomial| {
        let got = psi_of(entry, scheme, rk)?;
        checked += 1;
        if got.to_string() == want.to_string() {
            Ok(())
        } else {
            Err(format!("{} {scheme}: got {got}, expected {want}", entry.name))
        }
    };
    run(&catalog_lookup("diffusion").unwrap(), SchemeKind::Forward, None, poly(&[0, 5]))?;
    let flipped = Ranking::with_translation_priority(vec![1, 0], 1).unwrap();
    for name in FAMILY {
        let entry = catalog_lookup(name).unwrap();
        run(&entry, SchemeKind::Forward, Some(Ranking::standard(2, 1)), poly(&[0, 5]))?;
        run(&entry, SchemeKind::Symmetric, Some(flipped.clone()), poly(&[0, 4]))?;
    }
    let reaction = catalog_lookup("reaction-kinetics").unwrap();
    run(&reaction, SchemeKind::Forward, None, poly(&[0, 15]))?;
    run(&reaction, SchemeKind::Symmetric, None, poly(&[0, 12]))?;
    run(&reaction, SchemeKind::CrankNicholson, None, poly(&[-3, 18]))?;
    let elapsed = start.elapsed();
    within("suite", elapsed, Duration::from_secs(30))?;
    Ok(format!("{checked} systems in {elapsed:?}"))
}

fn criterion_7() -> Outcome {
    let entry = catalog_lookup("diffusion").unwrap();
    let names = &entry.form(SchemeKind::Forward).unwrap().system.names;
    let leaders = |scheme: SchemeKind| -> Result<(Vec<SigmaPolynomial>, Vec<Term>), String> {
        let form = entry.form(scheme).unwrap();
        let report = strength_of_system(&form.system, &form.ranking).map_err(|e| e.to_string())?;
        Ok((report.charset.elements().to_vec(), report.charset.leaders()))
    };
    let t = |e: [i64; 2]| Term::new(Shift::new(e.to_vec()), 0);
    let sorted = |mut v: Vec<Term>| {
        v.sort();
        v
    };

    let (elements, got) = leaders(SchemeKind::Forward)?;
    let want = sorted(vec![t([2, 0]), t([-1, 1]), t([1, -1]), t([-2, -1])]);
    if elements.len() != 4 || sorted(got.clone()) != want {
        return Err(format!("forward leaders {:?}", got.iter().map(|u| names.term(u)).collect::<Vec<_>>()));
    }

    let (elements, got) = leaders(SchemeKind::Symmetric)?;
    let b = &entry.form(SchemeKind::Symmetric).unwrap().system.polynomials[0];
    let expected = [b.clone(), b.apply_shift(&Shift::new(vec![-1, 0]))];
    let same = elements.len() == 2 && expected.iter().all(|x| elements.iter().any(|e| proportional(e, x)));
    if !same || sorted(got.clone()) != sorted(vec![t([1, 0]), t([-2, 0])]) {
        return Err(format!("symmetric leaders {:?}", got.iter().map(|u| names.term(u)).collect::<Vec<_>>()));
    }
    Ok("forward: 4 elements with the listed leaders; symmetric: {B, a1^-1 B}".into())
}

fn random_set(rng: &mut ChaCha8Rng, ambient: Ambient) -> LatticeSet {
    let m = rng.gen_range(1..=3);
    let q = rng.gen_range(0..=5);
    let lo = if ambient == Ambient::Naturals { 0 } else { -4 };
    let points: Vec<Vec<i64>> = (0..q).map(|_| (0..m).map(|_| rng.gen_range(lo..=4)).collect()).collect();
    LatticeSet::new(ambient, m, points).unwrap()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut evaluations = 0;
    for ambient in [Ambient::Naturals, Ambient::Integers] {
        for _ in 0..200 {
            let set = random_set(&mut rng, ambient);
            let p = match ambient {
                Ambient::Naturals => omega(&set),
                Ambient::Integers => phi(&set),
            }
            .map_err(|e| e.to_string())?;
            let t = set.total_order() as usize;
            let counts = free_counts(&set, t + set.dim() + 2).map_err(|e| e.to_string())?;
            for (r, &count) in counts.iter().enumerate().skip(t) {
                evaluations += 1;
                if p.evaluate(r as i64) != BigRational::from_integer(count.into()) {
                    return Err(format!(
                        "{ambient:?} set {:?}: r = {r}, polynomial {p}, count {count}",
                        set.points().collect::<Vec<_>>()
                    ));
                }
            }
        }
    }
    Ok(format!("400 sets, {evaluations} evaluations agree"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let forms: Vec<(CatalogEntry, SchemeKind)> = vec![
        (schemes::diffusion(), SchemeKind::Forward),
        (schemes::diffusion(), SchemeKind::Symmetric),
        (schemes::diffusion(), SchemeKind::CrankNicholson),
        (schemes::chromatography(1), SchemeKind::Forward),
        (schemes::chromatography(1), SchemeKind::Symmetric),
        (schemes::reaction_kinetics_linear(), SchemeKind::Forward),
        (schemes::reaction_kinetics_linear(), SchemeKind::Symmetric),
        (schemes::reaction_kinetics_linear(), SchemeKind::CrankNicholson),
    ];
    let mut total = 0;
    let mut beyond_origin = 0;
    let mut failures = Vec::new();
    for (entry, scheme) in &forms {
        let report = randomized_verify(entry, *scheme, 3, 3, 1).map_err(|e| e.to_string())?;
        total += report.total();
        beyond_origin += report.mismatches().filter(|c| c.r > 0).count();
        let mut bad: Vec<String> =
            report.mismatches().map(|c| format!("r={} S_r={} psi(r)={}", c.r, c.observed, c.expected)).collect();
        bad.dedup();
        if !bad.is_empty() {
            failures.push(format!("{} {scheme}: {}", entry.name, bad.join(", ")));
        }
    }
    let elapsed = start.elapsed();
    within("grid suite", elapsed, Duration::from_secs(60))?;
    if failures.is_empty() {
        Ok(format!("{total} checks in {elapsed:?}"))
    } else {
        Err(format!(
            "mismatches in {} of {} forms, {beyond_origin} of them at r > 0 [{}] ({elapsed:?})",
            failures.len(),
            forms.len(),
            failures.join("; ")
        ))
    }
}

fn fail<T: std::fmt::Debug>(what: &str, e: proptest::test_runner::TestError<T>) -> String {
    format!("{what}: {e}")
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn arb_ranking(m: usize, n: usize) -> impl Strategy<Value = Ranking> {
    (Just((0..m).collect::<Vec<_>>()).prop_shuffle(), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|(t, i)| Ranking::new(t, i).unwrap())
}

/// Two terms and a shift in one orthant, with a ranking.
fn arb_ranking_case() -> impl Strategy<Value = (Ranking, Term, Term, Shift)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| {
        let signs = proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], m);
        (arb_ranking(m, n), signs, proptest::collection::vec(0i64..=4, 3 * m), 0..n, 0..n).prop_map(
            move |(rk, s, mags, i, j)| {
                let pick = |k: usize| -> Vec<i64> { (0..m).map(|c| s[c] * mags[k * m + c]).collect() };
                (rk, Term::new(Shift::new(pick(0)), i), Term::new(Shift::new(pick(1)), j), Shift::new(pick(2)))
            },
        )
    })
}

fn arb_linear(n: usize, terms: std::ops::RangeInclusive<usize>, reach: i64) -> impl Strategy<Value = SigmaPolynomial> {
    proptest::collection::vec((-reach..=reach, -reach..=reach, 0..n, prop_oneof![-3i64..=-1, 1i64..=3]), terms)
        .prop_map(move |parts| {
            parts.into_iter().fold(SigmaPolynomial::zero(2, n), |acc, (x, y, i, c)| {
                acc.add(&SigmaPolynomial::shifted_var(n, &[x, y], i, ConstantExpr::integer(c)))
            })
        })
}

fn quasi_linear_pool() -> Vec<(SigmaPolynomial, Ranking)> {
    let flipped = Ranking::with_translation_priority(vec![1, 0], 1).unwrap();
    let mut pool = Vec::new();
    for name in FAMILY {
        let e = catalog_lookup(name).unwrap();
        pool.push((e.form(SchemeKind::Forward).unwrap().system.polynomials[0].clone(), Ranking::standard(2, 1)));
        pool.push((e.form(SchemeKind::Symmetric).unwrap().system.polynomials[0].clone(), flipped.clone()));
    }
    let r = catalog_lookup("reaction-kinetics").unwrap();
    pool.push((r.form(SchemeKind::Forward).unwrap().system.polynomials[2].clone(), Ranking::standard(2, 3)));
    pool
}

fn criterion_10() -> Outcome {
    runner(1000)
        .run(&arb_ranking_case(), |(rk, u, v, g)| {
            if !g.is_identity() {
                prop_assert_eq!(rk.compare(&u, &u.shifted(&g)), Ordering::Less);
            }
            prop_assert_eq!(rk.compare(&u, &v), rk.compare(&u.shifted(&g), &v.shifted(&g)));
            prop_assert_eq!(rk.compare(&u, &v) == Ordering::Equal, u == v);
            Ok(())
        })
        .map_err(|e| fail("ranking axioms", e))?;

    let case = (1usize..=2)
        .prop_flat_map(|n| (proptest::collection::vec(arb_linear(n, 2..=4, 2), 1..=3), arb_linear(n, 1..=6, 3)));
    runner(200)
        .run(&case, |(basis, d)| {
            let rk = Ranking::standard(2, d.n());
            let set = autoreduce(&basis, &rk).map_err(|e| TestCaseError::reject(e.to_string()))?;
            let red = set.reduce(&d);
            for b in set.elements() {
                prop_assert!(is_reduced(&rk, &red.remainder, b), "{} not reduced w.r.t. {}", red.remainder, b);
            }
            prop_assert!(red.check(&d, set.elements()));
            Ok(())
        })
        .map_err(|e| fail("reduce postcondition", e))?;

    let pool = quasi_linear_pool();
    let combo = (
        0..pool.len(),
        proptest::collection::btree_map((-2i64..=2, -2i64..=2), prop_oneof![-3i64..=-1, 1i64..=3], 1..=3),
    );
    runner(100)
        .run(&combo, |(k, parts)| {
            let (a, rk) = &pool[k];
            let shifts: Vec<(Shift, i64)> = parts.into_iter().map(|((x, y), c)| (Shift::new(vec![x, y]), c)).collect();
            let m = shifts.iter().fold(SigmaPolynomial::zero(2, a.n()), |acc, (g, c)| {
                acc.add(&a.apply_shift(g).scale(&ConstantExpr::integer(*c)))
            });
            prop_assume!(!m.is_zero());
            let terms = m.terms();
            prop_assert!(shifts.iter().any(|(g, _)| terms.contains(&a.apply_shift(g).leader(rk).unwrap())));
            Ok(())
        })
        .map_err(|e| fail("leader containment", e))?;

    let rational = (-20i64..=20, 1i64..=6).prop_map(|(p, q)| BigRational::new(p.into(), q.into()));
    runner(500)
        .run(&proptest::collection::vec(rational, 0..=7), |coeffs| {
            let p = NumericalPolynomial::from_coeffs(coeffs);
            prop_assert_eq!(NumericalPolynomial::from_binomial_basis(&p.binomial_basis()), p);
            Ok(())
        })
        .map_err(|e| fail("binomial round trip", e))?;

    Ok("1000 ranking, 200 reduction, 100 leader-containment, 500 round-trip cases".into())
}

fn criterion_11() -> Outcome {
    let d = catalog_lookup("diffusion").unwrap();
    let (f, s, cn) = (
        psi_of(&d, SchemeKind::Forward, None)?,
        psi_of(&d, SchemeKind::Symmetric, None)?,
        psi_of(&d, SchemeKind::CrankNicholson, None)?,
    );
    let c = catalog_lookup("chromatography").unwrap();
    let (cf, cs) = (psi_of(&c, SchemeKind::Forward, None)?, psi_of(&c, SchemeKind::Symmetric, None)?);
    let ok = s.eventual_cmp(&f) == Ordering::Less
        && f.eventual_cmp(&cn) == Ordering::Less
        && cs.eventual_cmp(&cf) == Ordering::Less;
    if ok {
        Ok(format!("{s} < {f} < {cn}; {cs} < {cf}"))
    } else {
        Err(format!("diffusion {s}, {f}, {cn}; chromatography {cs}, {cf}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("forward leader set gives 5t", criterion_1),
        ("symmetric set in N^4 and pipeline give 4t", criterion_2),
        ("Crank-Nicholson leader set gives 6t - 1", criterion_3),
        ("chromatography forward N^4 sets", criterion_4),
        ("chromatography symmetric identity", criterion_5),
        ("full-pipeline strengths", criterion_6),
        ("diffusion characteristic-set shapes", criterion_7),
        ("lattice enumeration oracle", criterion_8),
        ("grid oracle equals psi for r in 0..=3", criterion_9),
        ("property suites", criterion_10),
        ("scheme ordering", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
