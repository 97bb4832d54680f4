//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs under `cargo test` (custom harness).

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};

use pickup_sticks::closedform::{p_auto, p_formula1, p_formula2, Problem};
use pickup_sticks::exactmath::{factorial, int, to_f64, Rational};
use pickup_sticks::montecarlo::{can_form_kgon, can_form_kgon_subset_oracle, estimate, SimConfig};
use pickup_sticks::polytope::{build_transform, lemma_coeffs, volume_oracle};
use pickup_sticks::sequences::{s_spec, t_spec};

const FORMULA_N_MAX: usize = 40;
const FORMULA_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_N_MAX: usize = 9;
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
const SPECIAL_N_MAX: usize = 20;
const K4_N_MAX: usize = 50;
const LEMMA_N_MAX: usize = 12;
const PREDICATE_N_MAX: usize = 8;
const PREDICATE_SAMPLES: usize = 10_000;
const MC_SAMPLES: u64 = 1_000_000;
const MC_SIGMAS: f64 = 4.0;
const MC_FLAG_SIGMAS: f64 = 3.0;
const MC_BUDGET: Duration = Duration::from_secs(60);
/// (n, k, seed)
const MC_CASES: [(usize, usize, u64); 4] = [(3, 3, 42), (4, 3, 7), (5, 4, 9), (6, 4, 1)];
const MC_CHUNKS: u64 = 4;

/// Success counts from the single-chunk run of criterion 7.
static SINGLE_CHUNK_COUNTS: OnceLock<Vec<u64>> = OnceLock::new();

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn problem(n: usize, k: usize) -> Problem {
    Problem::new(n, k).expect("valid problem")
}

fn exact(n: usize, k: usize) -> Result<Rational, String> {
    p_auto(problem(n, k))
        .map(|p| p.into_rational())
        .map_err(|e| e.to_string())
}

fn reciprocal(d: BigInt) -> Rational {
    Rational::new(BigInt::one(), d)
}

fn within(budget: Duration, start: Instant, summary: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed > budget {
        Err(format!("{summary}, but took {elapsed:.2?} > {budget:?}"))
    } else {
        Ok(format!("{summary} in {elapsed:.2?}"))
    }
}

fn formula_equivalence() -> Outcome {
    let start = Instant::now();
    let problems = Problem::all_up_to(FORMULA_N_MAX);
    if problems.len() != 741 {
        return Err(format!("expected 741 problems, enumerated {}", problems.len()));
    }
    for &p in &problems {
        let a = p_formula1(p).map_err(|e| e.to_string())?;
        let b = p_formula2(p).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{p}: formula 1 = {a}, formula 2 = {b}"));
        }
    }
    within(
        FORMULA_BUDGET,
        start,
        format!("{} problems with n <= {FORMULA_N_MAX} agree exactly", problems.len()),
    )
}

fn independent_oracle() -> Outcome {
    let start = Instant::now();
    let problems = Problem::all_up_to(ORACLE_N_MAX);
    if problems.len() != 28 {
        return Err(format!("expected 28 problems, enumerated {}", problems.len()));
    }
    for &p in &problems {
        let volume = volume_oracle(p).map_err(|e| format!("{p}: {e}"))?;
        let scaled = volume * int(factorial(p.n() as u64));
        let closed = exact(p.n(), p.k())?;
        if scaled != closed {
            return Err(format!("{p}: n!·volume = {scaled}, closed form = {closed}"));
        }
    }
    within(
        ORACLE_BUDGET,
        start,
        format!("n!·vol = p for all {} problems with n <= {ORACLE_N_MAX}", problems.len()),
    )
}

fn known_values() -> Outcome {
    let mut checked = 0;
    let mut check = |n: usize, k: usize, expected: Rational| -> Result<(), String> {
        let got = exact(n, k)?;
        checked += 1;
        if got != expected {
            return Err(format!("p({n},{k}) = {got}, expected {expected}"));
        }
        Ok(())
    };
    check(3, 3, reciprocal(BigInt::from(2)))?;
    check(4, 3, reciprocal(BigInt::from(6)))?;
    check(5, 3, reciprocal(BigInt::from(30)))?;
    for n in 3..=SPECIAL_N_MAX {
        check(n, n, reciprocal(factorial(n as u64 - 1)))?;
    }
    for n in 4..=SPECIAL_N_MAX {
        let d = BigInt::from(2 * n - 5) * (BigInt::one() << (n - 3)) * factorial(n as u64 - 3);
        check(n, n - 1, reciprocal(d))?;
    }
    Ok(format!("{checked} exact values match"))
}

fn k4_identity() -> Outcome {
    let t = t_spec(4, 1).map_err(|e| e.to_string())?;
    let s = s_spec(4).map_err(|e| e.to_string())?;
    for n in 3..=K4_N_MAX {
        let lhs = t.eval(n).map_err(|e| e.to_string())?;
        let rhs = s.eval(n).map_err(|e| e.to_string())? - s.eval(n - 2).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("n = {n}: T(4,1) = {lhs}, S(4)(n) - S(4)(n-2) = {rhs}"));
        }
    }
    Ok(format!("T(4,1)(n) = S(4)(n) - S(4)(n-2) for 3 <= n <= {K4_N_MAX}"))
}

fn lemma_fidelity() -> Outcome {
    let problems = Problem::all_up_to(LEMMA_N_MAX);
    for &p in &problems {
        let t = build_transform(p).map_err(|e| format!("{p}: {e}"))?;
        let det = t.forward.det().map_err(|e| e.to_string())?;
        if det != Rational::one() {
            return Err(format!("{p}: det(forward) = {det}"));
        }
        for m in 1..=p.n() {
            let coeffs = lemma_coeffs(p, m).map_err(|e| e.to_string())?;
            if t.inverse.row(m - 1) != &coeffs[..] {
                return Err(format!("{p}: inverse row {m} differs from sequence coefficients"));
            }
        }
    }
    Ok(format!(
        "inverse rows = sequence coefficients and det = 1 for {} problems with n <= {LEMMA_N_MAX}",
        problems.len()
    ))
}

fn predicate_reduction() -> Outcome {
    let mut rng = seeded_rng(0x5eed);
    let mut pairs = 0;
    for p in Problem::all_up_to(PREDICATE_N_MAX) {
        let mut sticks = vec![0.0; p.n()];
        for i in 0..PREDICATE_SAMPLES {
            for s in sticks.iter_mut() {
                *s = 1.0 - rng.random::<f64>();
            }
            let fast = can_form_kgon(&sticks, p.k()).map_err(|e| e.to_string())?;
            let brute = can_form_kgon_subset_oracle(&sticks, p.k()).map_err(|e| e.to_string())?;
            if fast != brute {
                return Err(format!("{p} sample {i}: windows {fast}, subsets {brute}: {sticks:?}"));
            }
        }
        pairs += 1;
    }
    Ok(format!(
        "0 disagreements over {PREDICATE_SAMPLES} samples for each of {pairs} (n,k) pairs"
    ))
}

fn seeded_rng(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}

fn monte_carlo(chunks: u64) -> Result<Vec<u64>, String> {
    let mut counts = Vec::new();
    for (n, k, seed) in MC_CASES {
        let config = SimConfig::new(problem(n, k), MC_SAMPLES, seed, chunks).map_err(|e| e.to_string())?;
        let result = estimate(&config);
        let truth = to_f64(&exact(n, k)?);
        let z = result.z_score(truth);
        if z.abs() > MC_SIGMAS {
            return Err(format!(
                "p({n},{k}) seed {seed}: estimate {} vs {truth}, z = {z:.3}",
                result.estimate
            ));
        }
        if z.abs() > MC_FLAG_SIGMAS {
            println!("  note: p({n},{k}) seed {seed} deviates by {z:.3} sigma");
        }
        counts.push(result.successes);
    }
    Ok(counts)
}

fn monte_carlo_agreement() -> Outcome {
    let start = Instant::now();
    let counts = monte_carlo(1)?;
    let _ = SINGLE_CHUNK_COUNTS.set(counts.clone());
    within(
        MC_BUDGET,
        start,
        format!("all within {MC_SIGMAS} standard errors (successes {counts:?})"),
    )
}

fn determinism() -> Outcome {
    let first = match SINGLE_CHUNK_COUNTS.get() {
        Some(counts) => counts.clone(),
        None => monte_carlo(1)?,
    };
    let chunked = monte_carlo(MC_CHUNKS)?;
    let again = monte_carlo(MC_CHUNKS)?;
    if first != chunked || chunked != again {
        return Err(format!("chunks=1 {first:?}, chunks={MC_CHUNKS} {chunked:?} then {again:?}"));
    }
    Ok(format!("identical success counts for chunks 1 and {MC_CHUNKS}: {first:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 formula equivalence", formula_equivalence),
        ("2 independent volume oracle", independent_oracle),
        ("3 known values", known_values),
        ("4 k=4 identity", k4_identity),
        ("5 lemma fidelity", lemma_fidelity),
        ("6 predicate reduction", predicate_reduction),
        ("7 Monte Carlo agreement", monte_carlo_agreement),
        ("8 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
