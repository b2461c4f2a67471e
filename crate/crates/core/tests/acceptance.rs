//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the summary is always printed; exits nonzero if any line fails.

mod common;

use std::collections::HashMap;
use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use uddpir::bounds::{ceil_u64, check_demand_inequalities, column_counts, fractional_bound, griesmer_sum};
use uddpir::codes::{separation_of_matrix, sorted_dominates, LinearCode};
use uddpir::ilp::{build_model, solution_to_matrix, solve};
use uddpir::pir::{max_disjoint_recovery_sets, minimal_recovery_sets, pir_level, verify_t_pir};
use uddpir::search::{concatenation_baseline, shortest_udd_pir, shortest_uep_bruteforce};
use uddpir::{DemandVector, Matrix, SearchStatus, Verdict};

use common::*;

fn eq1() -> Matrix {
    Matrix::from_rows(&gf(2), &[[1, 0, 1, 1], [0, 1, 1, 0]]).unwrap()
}

fn demand(v: &[u64]) -> DemandVector {
    DemandVector::new(v.to_vec()).unwrap()
}

fn one_based(sets: &[uddpir::RecoverySet]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|s| s.positions.iter().map(|p| p + 1).collect())
        .collect()
}

fn sorted_sets(mut v: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    v.sort();
    v
}

/// Random full-rank binary corpus: k in 1..=3, n in k..=8.
fn binary_corpus(seed: u64, size: usize) -> Vec<(usize, Vec<u32>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let n = rng.gen_range(k..=8);
            (k, random_full_rank(&mut rng, k, n))
        })
        .collect()
}

fn criterion_1() {
    let g = eq1();
    let s1 = one_based(&minimal_recovery_sets(&g, 0).unwrap());
    let s2 = one_based(&minimal_recovery_sets(&g, 1).unwrap());
    assert_eq!(sorted_sets(s1), sorted_sets(vec![vec![1], vec![4], vec![2, 3]]));
    assert_eq!(sorted_sets(s2), sorted_sets(vec![vec![2], vec![1, 3], vec![3, 4]]));
    assert_eq!(pir_level(&g).unwrap(), vec![3, 2]);
    assert!(verify_t_pir(&g, &demand(&[3, 2])).unwrap().is_satisfied());
    let refuted = verify_t_pir(&g, &demand(&[3, 3])).unwrap();
    assert_eq!(refuted.verdict, Verdict::Refuted { symbol: 1, maximum: 2 });
}

fn criterion_2() {
    let code = LinearCode::new(eq1()).unwrap();
    assert_eq!(code.separation_vector().0, vec![3, 2]);
    assert_eq!(code.min_distance(), 2);
    assert_eq!(concatenation_baseline(&demand(&[3, 2]), &gf(2)).unwrap().0, 5);
}

fn criterion_3() {
    let f = gf(2);
    let mut count = 0;
    for t1 in 0..=6u64 {
        for t2 in 0..=t1 {
            let mu = solve(&build_model(&demand(&[t1, t2]), &f).unwrap()).objective;
            assert_eq!(mu, t1 + t2.div_ceil(2), "T=({t1},{t2})");
            count += 1;
        }
    }
    assert_eq!(count, 28);
}

fn criterion_4() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for _ in 0..200 {
        let q = if rng.gen_bool(0.5) { 2 } else { 3 };
        let k = rng.gen_range(1..=3);
        let mut t: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=5)).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        let t = demand(&t);
        let mu = solve(&build_model(&t, &gf(q)).unwrap()).objective;
        let gs = griesmer_sum(&t, q);
        let frac = ceil_u64(&fractional_bound(&t, q));
        assert!(mu >= gs && gs >= frac, "q={q} T={:?}: {mu} {gs} {frac}", t.values());
    }
}

fn criterion_5() {
    for (k, cols) in binary_corpus(0x5eed_0005, 200) {
        let g = binary_matrix(k, &cols);
        let (t, order) = DemandVector::sorted_from(&pir_level(&g).unwrap());
        let gp = g.permute_rows(&order).unwrap();
        let violations = check_demand_inequalities(&column_counts(&gp), &t).unwrap();
        assert!(violations.is_empty(), "{cols:?}: {violations:?}");
    }
}

fn criterion_6() {
    for (k, cols) in binary_corpus(0x5eed_0005, 200) {
        let g = binary_matrix(k, &cols);
        let s = LinearCode::new(g.clone()).unwrap().separation_vector();
        assert_eq!(s.0, separation_bruteforce(k, &cols));
        let level = pir_level(&g).unwrap();
        assert!(s.meets(&level), "{cols:?}: {:?} vs {level:?}", s.0);
    }
}

fn criterion_7() {
    let f = gf(2);
    for t in demand_grid(2, 4, 8) {
        let t = demand(&t);
        let model = build_model(&t, &f).unwrap();
        let sol = solve(&model);
        let g = solution_to_matrix(&sol, &model).unwrap();
        assert_eq!(g.cols() as u64, sol.objective);
        assert!(separation_of_matrix(&g).meets(t.values()), "T={:?}", t.values());
        let uep = shortest_uep_bruteforce(&t, &f, 10).unwrap();
        assert_eq!(uep as u64, sol.objective, "T={:?}", t.values());
    }
}

fn criterion_8() {
    // group every full-rank 2 x n binary matrix by its row space
    let mut checked = 0;
    for n in 1..=5usize {
        let mut codes: HashMap<Vec<Vec<u32>>, Vec<Matrix>> = HashMap::new();
        for bits in 0..1u32 << (2 * n) {
            let cols: Vec<u32> = (0..n).map(|c| bits >> (2 * c) & 3).collect();
            if rank_gf2(&cols) < 2 {
                continue;
            }
            let g = binary_matrix(2, &cols);
            codes.entry(g.rref().matrix.row_values()).or_default().push(g);
        }
        for generators in codes.values() {
            let opt = LinearCode::new(generators[0].clone()).unwrap().optimal_generator();
            let s_opt = separation_of_matrix(&opt);
            for g in generators {
                assert!(
                    sorted_dominates(&s_opt, &separation_of_matrix(g)).unwrap(),
                    "{:?} against {:?}",
                    opt.row_values(),
                    g.row_values()
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

fn criterion_9() {
    for (k, cols) in binary_corpus(0x5eed_0009, 100) {
        let g = binary_matrix(k, &cols);
        for j in 0..k {
            let (count, _) = max_disjoint_recovery_sets(&g, j).unwrap();
            assert_eq!(count, max_disjoint_bruteforce(&cols, j), "{cols:?} symbol {j}");
        }
    }
    let f = gf(2);
    for k in 1..=3 {
        for t in demand_grid(k, 8, 8) {
            let sol = solve(&build_model(&demand(&t), &f).unwrap());
            let (mu, smallest) = ilp_bruteforce(&t);
            assert_eq!(sol.objective, mu, "T={t:?}");
            assert_eq!(sol.values(), smallest, "T={t:?}");
        }
    }
}

/// Does any binary k x n matrix satisfy T, by the oracle alone?
fn some_binary_code_meets(t: &[u64], n: usize) -> bool {
    let k = t.len();
    let total = 1usize << (k * n);
    (0..total).any(|bits| {
        let cols: Vec<u32> = (0..n).map(|c| (bits >> (k * c)) as u32 & ((1 << k) - 1)).collect();
        rank_gf2(&cols) == k && (0..k).all(|j| max_disjoint_bruteforce(&cols, j) >= t[j])
    })
}

fn criterion_10() {
    let f = gf(2);
    let r = shortest_udd_pir(&demand(&[3, 2]), &f, 6).unwrap();
    assert_eq!((r.status, r.length), (SearchStatus::Found, Some(4)));
    let w = r.witness.unwrap();
    assert_eq!(counts_of(&column_masks(&w)), counts_of(&column_masks(&eq1())));
    assert_eq!(
        counts_of(&column_masks(&w)),
        HashMap::from([(0b01, 2), (0b10, 1), (0b11, 1)])
    );
    assert!(verify_t_pir(&w, &demand(&[3, 2])).unwrap().is_satisfied());
    assert_eq!(griesmer_sum(&demand(&[3, 2]), 2), 4);
    assert!(!some_binary_code_meets(&[3, 2], 3));

    let r = shortest_udd_pir(&demand(&[2, 2]), &f, 6).unwrap();
    assert_eq!(r.length, Some(3));
    let w = r.witness.unwrap();
    assert_eq!(
        counts_of(&column_masks(&w)),
        HashMap::from([(0b01, 1), (0b10, 1), (0b11, 1)])
    );
    assert_eq!(griesmer_sum(&demand(&[2, 2]), 2), 3);
    assert!(some_binary_code_meets(&[2, 2], 3));
    assert!(!some_binary_code_meets(&[2, 2], 2));
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run_json(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_uddpir"))
        .args(args)
        .arg("--json")
        .current_dir(dir)
        .output()
        .unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), doc)
}

fn criterion_11() {
    let schema_doc: Value =
        serde_json::from_str(&fs::read_to_string(manifest().join("schema/report-v1.json")).unwrap()).unwrap();
    let schema = jsonschema::JSONSchema::compile(&schema_doc).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let cases: &[(&str, &str)] = &[
        ("2", "3,2"),
        ("2", "2,2"),
        ("2", "1,1"),
        ("2", "3,3,2"),
        ("2", "4,2,1"),
        ("3", "3,2"),
        ("4", "3,3"),
    ];
    for (i, (q, t)) in cases.iter().enumerate() {
        let file = format!("w{i}.txt");
        let (code, found) = run_json(
            dir,
            &["search", "--q", q, "--demand", t, "--nmax", "9", "--emit", &file],
        );
        assert_eq!(code, 0, "search q={q} T={t}");
        let (code2, again) = run_json(dir, &["analyze", &file, "--demand", t]);
        assert_eq!(code2, code);
        assert_eq!(again["pir_level"], found["pir_level"], "q={q} T={t}");
        assert_eq!(again["verdicts"], found["verdicts"], "q={q} T={t}");
        assert!(schema.is_valid(&found) && schema.is_valid(&again));
    }
    let mut goldens = 0;
    for entry in fs::read_dir(manifest().join("tests/golden")).unwrap() {
        let path = entry.unwrap().path();
        let doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(schema.is_valid(&doc), "{}", path.display());
        goldens += 1;
    }
    assert!(goldens > 0);
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else {
        "panicked".to_string()
    }
}

/// Description, check, and time limit in seconds.
type Criterion = (&'static str, fn(), Option<u64>);

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "example matrix recovery sets, levels, certificate",
            criterion_1,
            Some(1),
        ),
        ("example separation, distance, concatenation length", criterion_2, None),
        (
            "binary two-symbol optimum t1 + ceil(t2/2), 28 instances",
            criterion_3,
            Some(10),
        ),
        (
            "mu >= Griesmer sum >= ceil(fractional), 200 demands",
            criterion_4,
            Some(60),
        ),
        (
            "hyperplane inequalities at own PIR level, 200 matrices",
            criterion_5,
            None,
        ),
        ("separation dominates PIR level, 200 matrices", criterion_6, None),
        (
            "ILP optimum realizes and equals UEP minimum, q=2 k=2 t1<=4",
            criterion_7,
            Some(30),
        ),
        (
            "optimal generator sorted-dominates every generator, k=2 n<=5",
            criterion_8,
            Some(60),
        ),
        ("packing and ILP agree with exhaustive oracles", criterion_9, None),
        ("shortest PIR codes for (3,2) and (2,2)", criterion_10, None),
        (
            "CLI search/analyze round trip and schema validation",
            criterion_11,
            None,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check);
        let elapsed = start.elapsed();
        let status = match (result, limit) {
            (Err(e), _) => Err(panic_message(e)),
            (Ok(()), Some(s)) if elapsed >= Duration::from_secs(s) => Err(format!("took longer than {s} s")),
            (Ok(()), _) => Ok(()),
        };
        let secs = elapsed.as_secs_f64();
        match status {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} of 11 criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
