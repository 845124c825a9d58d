//! Acceptance run: one line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::Rng;
use superirr::bounds::{all_hold, check_larged, check_wan_bound, check_weil_autocorr};
use superirr::counting::{
    gauss_s1, s1_enumeration, s2_bruteforce, s2_formula, s2_roots, shift_product_sum_by_subsets,
    shift_product_sum_q, tower_for,
};
use superirr::papercheck::{search_weak3_f2, verify_example_4_1, verify_f2_list, F2_WEAK3_LIST};
use superirr::poly::{factor_degree_multiset, Poly};
use superirr::superirr::{extension_lemma_check, witness_highk, DEFAULT_BUDGET};

const LIMIT_AGREEMENT: Duration = Duration::from_secs(300);
const LIMIT_ZERO_EACH: Duration = Duration::from_secs(60);
const LIMIT_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_F2: Duration = Duration::from_secs(60);
const LIMIT_LARGED: Duration = Duration::from_secs(600);
const LIMIT_WEIL: Duration = Duration::from_secs(60);
const LIMIT_WAN: Duration = Duration::from_secs(60);
const LIMIT_ROOTS_3_12: Duration = Duration::from_secs(10);

const GAUSS_MAX_SIZE: u64 = 1_000_000;
const HIGHK_INSTANCES: usize = 200;
const EXTENSION_INSTANCES: usize = 100;
const DIVISIBILITY_INSTANCES: usize = 100;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        o.pass = false;
    }
    o.detail = format!(
        "{}; {:.2}s (limit {}s)",
        o.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    o
}

fn three_way_agreement() -> Outcome {
    timed(LIMIT_AGREEMENT, || {
        let grid = [
            (3, 2),
            (3, 4),
            (3, 6),
            (5, 2),
            (5, 4),
            (7, 2),
            (7, 4),
            (9, 2),
            (9, 4),
        ];
        let mut bad = Vec::new();
        let mut values = Vec::new();
        for (q, d) in grid {
            let a = s2_formula(q, d).unwrap().value;
            let b = s2_roots(q, d).unwrap().value;
            let c = s2_bruteforce(q, d, DEFAULT_BUDGET).unwrap().value;
            if a != b || b != c {
                bad.push(format!("({q},{d}): {a}/{b}/{c}"));
            }
            values.push(format!("s2({q},{d})={a}"));
        }
        outcome(
            bad.is_empty(),
            if bad.is_empty() {
                values.join(" ")
            } else {
                bad.join(", ")
            },
        )
    })
}

fn vanishing_zeros() -> Outcome {
    let mut grid: Vec<(u64, u32)> = Vec::new();
    for q in [2, 4] {
        grid.extend((1..=6).map(|d| (q, d)));
    }
    for q in [3, 5] {
        grid.extend([1, 3, 5].map(|d| (q, d)));
    }
    grid.extend([(11, 4), (13, 4)]);
    let mut bad = Vec::new();
    let mut slowest = 0.0f64;
    for (q, d) in &grid {
        let start = Instant::now();
        let rec = s2_bruteforce(*q, *d, DEFAULT_BUDGET).unwrap();
        let t = start.elapsed();
        slowest = slowest.max(t.as_secs_f64());
        if !rec.is_zero() || t > LIMIT_ZERO_EACH {
            bad.push(format!(
                "({q},{d})={} in {:.2}s",
                rec.value,
                t.as_secs_f64()
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} pairs, slowest {slowest:.2}s (limit {}s each) {}",
            grid.len(),
            LIMIT_ZERO_EACH.as_secs(),
            bad.join(", ")
        ),
    )
}

fn gauss_count() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let mut d = 1u32;
        while q.pow(d) <= GAUSS_MAX_SIZE {
            let formula = gauss_s1(q, d).unwrap();
            let counted = BigUint::from(s1_enumeration(q, d).unwrap());
            if formula != counted {
                bad.push(format!("({q},{d}): {formula} vs {counted}"));
            }
            checked += 1;
            d += 1;
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} pairs with q^d <= {GAUSS_MAX_SIZE} {}",
            bad.join(", ")
        ),
    )
}

fn example_quartic() -> Outcome {
    timed(LIMIT_EXAMPLE, || {
        let reports = verify_example_4_1().unwrap();
        let failed: Vec<_> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.item.clone())
            .collect();
        outcome(
            failed.is_empty(),
            format!("{} checks {}", reports.len(), failed.join(", ")),
        )
    })
}

fn f2_corpus() -> Outcome {
    timed(LIMIT_F2, || {
        let reports = verify_f2_list().unwrap();
        let listed_ok = reports.iter().all(|r| r.pass);
        let field = superirr::Field::prime(2).unwrap();
        let target = Poly::parse(&field, F2_WEAK3_LIST[0]).unwrap();
        let found = search_weak3_f2(6).unwrap();
        let contains = found.contains(&target);
        outcome(
            listed_ok && contains,
            format!(
                "5 listed ok={listed_ok}; degree-6 search {} found, contains={contains}",
                found.len()
            ),
        )
    })
}

fn larged() -> Outcome {
    timed(LIMIT_LARGED, || {
        let grid = [
            (3, 2),
            (3, 4),
            (3, 6),
            (3, 8),
            (3, 10),
            (3, 12),
            (5, 2),
            (5, 4),
            (5, 6),
            (7, 2),
            (7, 4),
        ];
        let mut bad = Vec::new();
        for (q, d) in grid {
            let s2 = BigInt::from(s2_roots(q, d).unwrap().value);
            let r = check_larged(q, d, &s2).unwrap();
            if !r.holds {
                bad.push(format!("({q},{d}) s2={s2}"));
            }
        }
        outcome(
            bad.is_empty(),
            format!("{} pairs {}", grid.len(), bad.join(", ")),
        )
    })
}

fn weil_autocorr() -> Outcome {
    timed(LIMIT_WEIL, || {
        let mut reports = 0;
        let mut bad = Vec::new();
        for q in [3u64, 5] {
            for e in 1..=4u32 {
                for mask in 1u32..(1 << q) {
                    let u: Vec<u64> = (0..q).filter(|&i| mask >> i & 1 == 1).collect();
                    reports += 1;
                    if !check_weil_autocorr(q, e, &u).unwrap().holds {
                        bad.push(format!("q={q} e={e} U={u:?}"));
                    }
                }
                let direct = BigInt::from(shift_product_sum_q(q, e).unwrap());
                let expanded = shift_product_sum_by_subsets(&tower_for(q, e).unwrap()).unwrap();
                if direct != expanded {
                    bad.push(format!("T({q},{e}) {direct} vs {expanded}"));
                }
            }
        }
        outcome(
            bad.is_empty(),
            format!(
                "{reports} subsets, 8 expansion identities {}",
                bad.join(", ")
            ),
        )
    })
}

fn wan_sweep() -> Outcome {
    timed(LIMIT_WAN, || {
        let mut count = 0;
        let mut bad = Vec::new();
        for (q, d) in [(3, 2), (3, 4), (5, 2), (5, 4), (7, 2)] {
            let reports = check_wan_bound(q, d).unwrap();
            count += reports.len();
            if !all_hold(&reports) {
                bad.push(format!("({q},{d})"));
            }
        }
        outcome(
            bad.is_empty(),
            format!("{count} generating elements {}", bad.join(", ")),
        )
    })
}

fn lemma_properties() -> Outcome {
    let mut failures = Vec::new();

    let mut rng = common::rng(1);
    for i in 0..HIGHK_INSTANCES {
        let field = common::random_field(&mut rng, &[2, 3, 4, 5, 7]);
        let d = rng.gen_range(2..=5);
        let r = rng.gen_range(0..=3);
        let f = common::random_irreducible(&mut rng, &field, d);
        let g = witness_highk(&f, d + r).unwrap();
        let (_, rem) = f.compose(&g).unwrap().divrem(&f).unwrap();
        if !rem.is_zero() || g.degree() != Some(d + r) {
            failures.push(format!("highk #{i}: f={f} r={r}"));
        }
    }

    let mut rng = common::rng(2);
    for i in 0..EXTENSION_INSTANCES {
        let field = common::random_field(&mut rng, &[2, 3, 4, 5]);
        let d = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=3);
        let f = common::random_irreducible(&mut rng, &field, d);
        let g = common::random_of_degree(&mut rng, &field, k);
        let (naive, root) = extension_lemma_check(&f, &g).unwrap();
        if naive != root {
            failures.push(format!("extension #{i}: f={f} g={g}"));
        }
    }

    let mut rng = common::rng(3);
    for i in 0..DIVISIBILITY_INSTANCES {
        let field = common::random_field(&mut rng, &[2, 3, 4, 5, 7]);
        let d = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=3);
        let f = common::random_irreducible(&mut rng, &field, d);
        let g = common::random_of_degree(&mut rng, &field, k);
        let m = factor_degree_multiset(&f.compose(&g).unwrap()).unwrap();
        if m.total_degree() != d * k || m.0.keys().any(|deg| deg % d != 0) {
            failures.push(format!("divisibility #{i}: f={f} g={g} -> {m}"));
        }
    }

    outcome(
        failures.is_empty(),
        format!(
            "seed {:#x}: {HIGHK_INSTANCES} highk, {EXTENSION_INSTANCES} extension, {DIVISIBILITY_INSTANCES} divisibility; {} failures {}",
            common::seed(),
            failures.len(),
            failures.join(", ")
        ),
    )
}

fn roots_benchmark() -> Outcome {
    timed(LIMIT_ROOTS_3_12, || {
        let rec = s2_roots(3, 12).unwrap();
        let formula = s2_formula(3, 12).unwrap();
        outcome(
            rec.value == formula.value,
            format!("s2(3,12)={} (roots {:.2}s)", rec.value, rec.elapsed),
        )
    })
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 three-way s2 agreement", three_way_agreement),
        ("2 vanishing by brute force", vanishing_zeros),
        ("3 Gauss count vs enumeration", gauss_count),
        ("4 integer quartic example", example_quartic),
        ("5 F2 weak-3 corpus", f2_corpus),
        ("6 large-d inequality", larged),
        ("7 Weil autocorrelation bound", weil_autocorr),
        ("8 Wan bound sweep", wan_sweep),
        ("9 lemma property suites", lemma_properties),
        ("10 s2_roots(3,12) performance", roots_benchmark),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let o = run();
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
