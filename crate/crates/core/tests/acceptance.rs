//! Acceptance run: one line per criterion, exit status 1 if any fails.
//!
//! Every comparison is exact. Time budgets are pinned below and count
//! towards the verdict.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use morava_hopf::algebra::Presentation;
use morava_hopf::base::{binom_mod2, TheoryFlavor};
use morava_hopf::dual::{idempotents, verify_duality, DualPresentation};
use morava_hopf::hopf::{comul, verify_hopf};
use morava_hopf::ideals::{
    check_impossible_equation, enumerate_saturated_bi_ideals, ideal_from_tuple, is_bi_ideal, restriction_holds,
    Ideal, Strategy,
};
use morava_hopf::motives::{chain_check, morava_violations, motive_summary, validate_chow_j, ChowJInput};
use morava_hopf::algebra::VScalar;

const BUDGET_HOPF: Duration = Duration::from_secs(60);
const BUDGET_DUALITY: Duration = Duration::from_secs(120);
const BUDGET_IDEMPOTENTS: Duration = Duration::from_secs(60);
const IDEMPOTENT_CANDIDATE_BOUND: u128 = 1 << 20;
const BUDGET_BI_IDEALS: Duration = Duration::from_secs(120);
const BUDGET_EQUATION: Duration = Duration::from_secs(10);
const BUDGET_J_PIPELINE: Duration = Duration::from_secs(30);
const RANDOM_J_SAMPLES: usize = 200;
const RANDOM_J_SEED: u64 = 0x5eed_0007;
const BUDGET_STEENROD: Duration = Duration::from_secs(10);
const PASCAL_LIMIT: u64 = 256;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn k(n: u32) -> TheoryFlavor {
    TheoryFlavor::PeriodicMorava { n }
}

fn ck(n: u32) -> TheoryFlavor {
    TheoryFlavor::ConnectiveMorava { n }
}

fn pres(f: TheoryFlavor, m: u32) -> Presentation {
    Presentation::new(f, m).expect("valid presentation")
}

fn hopf_axioms() -> Outcome {
    let mut o = Outcome::new();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for n in 1..=3u32 {
        let hi = ((1u32 << (n + 1)) + 6).min(23);
        for m in 3..=hi {
            for f in [TheoryFlavor::Chow, ck(n), k(n)] {
                if !seen.insert((f.to_string(), m)) {
                    continue;
                }
                count += 1;
                match verify_hopf(&pres(f, m)) {
                    Ok(r) => {
                        for ax in r.axioms.iter().filter(|a| !a.passed) {
                            o.failures.push(format!("{} {}: {:?}", r.presentation, ax.axiom, ax.witness));
                        }
                    }
                    Err(e) => o.failures.push(format!("{f} m={m}: {e}")),
                }
            }
        }
    }
    o.detail = format!("{count} presentations");
    o
}

fn duality() -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for n in 1..=3u32 {
        for m in 3..=1u32 << (n + 1) {
            for f in [ck(n), k(n)] {
                count += 1;
                match verify_duality(&pres(f, m)) {
                    Ok(r) => {
                        for ax in r.axioms.iter().filter(|a| !a.passed) {
                            o.failures.push(format!("{} {}: {:?}", r.presentation, ax.axiom, ax.witness));
                        }
                    }
                    Err(e) => o.failures.push(format!("{f} m={m}: {e}")),
                }
            }
        }
    }
    o.detail = format!("{count} presentations");
    o
}

fn idempotent_classification() -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for n in 1..=3u32 {
        let hi = ((1u32 << (n + 1)) + 6).min(23);
        let p_idx = (1u32 << n) - 1;
        for m in 3..=hi {
            count += 1;
            let dp = DualPresentation::new(&pres(k(n), m)).expect("dual");
            let found = match idempotents(&dp, None, IDEMPOTENT_CANDIDATE_BOUND) {
                Ok(f) => f,
                Err(e) => {
                    o.failures.push(format!("n={n} m={m}: {e}"));
                    continue;
                }
            };
            let texts: BTreeSet<String> = found.iter().map(|x| dp.format(x)).collect();
            let expected: BTreeSet<String> = if m <= (1 << (n + 1)) - 2 {
                ["0", "1"].map(String::from).into()
            } else {
                let alpha = dp.alpha(p_idx).expect("alpha_{2^n-1} exists");
                let e = dp.term(alpha, -1).expect("degree zero term");
                let e1 = dp.add(&dp.one(), &e).expect("same degree");
                ["0".to_string(), "1".to_string(), dp.format(&e), dp.format(&e1)].into()
            };
            o.check(texts == expected, || format!("n={n} m={m}: {texts:?} != {expected:?}"));
            if m >= (1 << (n + 1)) - 1 {
                let j: Vec<u32> = (0..).map(|b| p_idx << b).take_while(|&i| i <= (m - 1) / 2).collect();
                let input = ChowJInput::new(n, m, j);
                let tuple = validate_chow_j(&input).expect("admissible chain");
                match idempotents(&dp, Some(&tuple[..dp.r()]), IDEMPOTENT_CANDIDATE_BOUND) {
                    Ok(f) => o.check(f.len() == 2, || format!("n={n} m={m} restricted: {} idempotents", f.len())),
                    Err(e) => o.failures.push(format!("n={n} m={m} restricted: {e}")),
                }
            }
        }
    }
    o.detail = format!("{count} presentations, candidate bound 2^20");
    o
}

fn bi_ideals() -> Outcome {
    let mut o = Outcome::new();
    for (n, m) in [(1u32, 3u32), (1, 4), (2, 5), (2, 7)] {
        let p = pres(k(n), m);
        let run = |s| enumerate_saturated_bi_ideals(&p, s, u128::MAX);
        match (run(Strategy::Lattice), run(Strategy::Tuple)) {
            (Ok(lat), Ok(tup)) => {
                let lat_set: BTreeSet<_> = lat.accepted_tuples().into_iter().collect();
                let tup_set: BTreeSet<_> = tup.accepted_tuples().into_iter().collect();
                o.check(lat_set == tup_set, || format!("(n={n}, m={m}): LATTICE {lat_set:?} != TUPLE {tup_set:?}"));
            }
            (l, t) => o.failures.push(format!("(n={n}, m={m}): {:?} / {:?}", l.err(), t.err())),
        }
    }
    for f in [k(3), ck(3)] {
        let p = pres(f, 15);
        let e = enumerate_saturated_bi_ideals(&p, Strategy::Tuple, u128::MAX).expect("tuple walk");
        o.check(e.records.len() == 48, || format!("{}: {} tuples", p.label(), e.records.len()));
        for rec in &e.records {
            if rec.bi_ideal && rec.saturated {
                o.check(rec.restriction == Some(true), || format!("{} {:?} violates restriction", p.label(), rec.tuple));
            }
        }
        let e5 = Ideal::from_generators(&p, vec![p.generator(5)]).expect("ideal");
        o.check(!is_bi_ideal(&e5).expect("bi-ideal test"), || format!("{}: (e5) is a bi-ideal", p.label()));
        o.check(!restriction_holds(&e5, 3), || format!("{}: (e5) satisfies the restriction", p.label()));
    }
    o.detail = "4 lattice walks, 2 tuple walks".into();
    o
}

fn impossible_equation() -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0u64;
    for n in 1..=4u32 {
        for m in 3..=1u32 << (n + 1) {
            match check_impossible_equation(n, m) {
                Ok(r) => {
                    checked += r.checked;
                    o.check(r.passed(), || format!("n={n} m={m}: solutions {:?}", r.solutions));
                }
                Err(e) => o.failures.push(format!("n={n} m={m}: {e}")),
            }
        }
    }
    o.detail = format!("{checked} tuples searched");
    o
}

fn random_admissible(rng: &mut ChaCha8Rng) -> ChowJInput {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(3..=23);
    let ks = pres(TheoryFlavor::Chow, m).truncations;
    let a: Vec<u32> = ks.iter().map(|&k| rng.gen_range(0..=k)).collect();
    ChowJInput::from_tuple(n, m, &a).expect("tuple in range")
}

fn j_pipeline() -> Outcome {
    let mut o = Outcome::new();
    let summary = |n, m| motive_summary(&ChowJInput::new(n, m, [])).expect("generic J");
    let s = summary(2, 7);
    o.check(s.indecomposable && s.summand_count == 1 && s.summand_rank == 8, || {
        format!("(n=2, m=7) expected indecomposable of rank 8, got {s:?}")
    });
    for (m, count) in [(9u32, 4u64), (13, 16)] {
        let s = summary(2, m);
        o.check((s.summand_count, s.summand_rank) == (count, 4), || {
            format!("(n=2, m={m}) expected {count} summands of rank 4, got {s:?}")
        });
    }
    for m in 3..=23u32 {
        let s = summary(1, m);
        o.check((s.summand_rank, s.summand_count) == (1, 1 << ((m - 1) / 2)), || format!("(n=1, m={m}) got {s:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_J_SEED);
    for _ in 0..RANDOM_J_SAMPLES {
        let input = random_admissible(&mut rng);
        match motive_summary(&input) {
            Ok(s) => o.check(s.layer_rank * s.layer_count == 1 << ((input.m - 1) / 2), || {
                format!("bookkeeping fails for {input:?}: {s:?}")
            }),
            Err(e) => o.failures.push(format!("{input:?}: {e}")),
        }
    }
    o.detail = format!("{RANDOM_J_SAMPLES} random J, seed {RANDOM_J_SEED:#x}");
    o
}

fn pascal_rows(limit: u64) -> Vec<Vec<bool>> {
    let mut rows: Vec<Vec<bool>> = vec![vec![true]];
    for a in 1..=limit as usize {
        let prev = &rows[a - 1];
        let row = (0..=a)
            .map(|b| {
                let left = b > 0 && prev[b - 1];
                let right = b < a && prev[b];
                left ^ right
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn steenrod() -> Outcome {
    let mut o = Outcome::new();
    let rows = pascal_rows(PASCAL_LIMIT);
    for a in 0..=PASCAL_LIMIT {
        for b in 0..=PASCAL_LIMIT {
            let oracle = b <= a && rows[a as usize][b as usize];
            o.check(binom_mod2(a, b) == oracle, || format!("binom_mod2({a}, {b})"));
        }
    }
    for n in 1..=4u32 {
        for kk in 1..(1u32 << (n - 1)) {
            o.check(chain_check(n, kk).passed, || format!("chain n={n} k={kk}"));
        }
    }
    let mut bi = 0;
    for n in 1..=3u32 {
        for m in 3..=1u32 << (n + 1) {
            let chow = pres(TheoryFlavor::Chow, m);
            let p = pres(ck(n), m);
            for tuple in morava_hopf::ideals::all_tuples(&chow) {
                let input = ChowJInput::from_tuple(n, m, &tuple).expect("tuple");
                if is_bi_ideal(&ideal_from_tuple(&p, &tuple).expect("ideal")).expect("bi-ideal test") {
                    bi += 1;
                    let v = morava_violations(n, m, &input.j);
                    o.check(v.is_empty(), || format!("n={n} m={m} J={:?}: {v:?}", input.j));
                }
            }
        }
    }
    o.detail = format!("{bi} connective bi-ideals checked");
    o
}

fn cross_validation() -> Outcome {
    let mut o = Outcome::new();
    let p = pres(k(2), 7);
    let dp = DualPresentation::new(&p).expect("dual");
    let g = dp.parse("g2(a1)").expect("gamma_2(alpha_1)");
    let e1 = p.generator(1);
    let left = dp.pairing_tensor(&p, &comul(&p, &e1).expect("comul"), &g, &g).expect("tensor pairing");
    let right = dp.pairing(&p, &e1, &dp.gamma_mul(&g, &g)).expect("pairing");
    o.check(left == Some(VScalar(1)) && right == Some(VScalar(1)), || {
        format!("<Delta(e1), g2(a1) (x) g2(a1)> = {left:?}, <e1, g2(a1)^2> = {right:?}, expected v on both sides")
    });
    o.detail = format!("both sides {}", left.map_or("0".to_string(), |v| format!("v^{}", v.0)));
    o
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "Hopf axioms", BUDGET_HOPF, hopf_axioms),
        (2, "duality", BUDGET_DUALITY, duality),
        (3, "idempotent classification", BUDGET_IDEMPOTENTS, idempotent_classification),
        (4, "bi-ideal classification", BUDGET_BI_IDEALS, bi_ideals),
        (5, "impossible equation", BUDGET_EQUATION, impossible_equation),
        (6, "J-invariant pipeline", BUDGET_J_PIPELINE, j_pipeline),
        (7, "Lucas and Steenrod", BUDGET_STEENROD, steenrod),
        (8, "cross-validation", Duration::MAX, cross_validation),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            outcome.failures.push(format!("took {elapsed:.1?}, budget {budget:?}"));
        }
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id} [{name}]: {verdict} ({}, {:.2} s)", outcome.detail, elapsed.as_secs_f64());
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
