//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use egqldpc::analysis::{
    claim_check, exact_distance, verify_distance_floor, CheckOptions, DistanceKind, Verdict,
    DEFAULT_DIM_CAP, DEFAULT_WEIGHT_BUDGET,
};
use egqldpc::binmat::{permutation_equivalent, BinMatrix};
use egqldpc::builder::{
    build_code, build_core, paper_params, BuildError, CodeFamily, DEFAULT_SIZE_CAP,
};
use egqldpc::field::FieldSpec;
use egqldpc::geometry::GeometrySpec;
use egqldpc::io::{parse_alist, write_alist};
use std::process::Command;
use std::time::Instant;

const CENSUS: [(usize, u32); 7] = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)];

fn check_default(family: CodeFamily, m: usize, q: u32) -> egqldpc::ClaimReport {
    claim_check(family, m, q, DEFAULT_SIZE_CAP, CheckOptions::default()).unwrap()
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_egqldpc"))
}

/// Naive integer rank oracle, independent of the packed implementation.
#[allow(clippy::needless_range_loop)]
fn rank_oracle(m: &BinMatrix) -> usize {
    let mut a: Vec<Vec<i64>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as i64).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..m.rows()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..m.rows() {
            if r != rank && a[r][c] != 0 {
                for k in 0..m.cols() {
                    a[r][k] = (a[r][k] + a[rank][k]) % 2;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Naive integer product oracle for H * H^T mod 2.
fn gram_oracle(m: &BinMatrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| {
            (0..m.rows())
                .map(|j| {
                    let dot: usize = (0..m.cols())
                        .filter(|&c| m.get(i, c) && m.get(j, c))
                        .count();
                    (dot % 2) as u8
                })
                .collect()
        })
        .collect()
}

fn all_census_codes() -> Vec<(CodeFamily, usize, u32, egqldpc::CssCode)> {
    let mut out = Vec::new();
    for (m, q) in CENSUS {
        let classes = ((q as u64).pow(m as u32) - 1) / (q as u64 - 1);
        let mut families = vec![CodeFamily::Punctured, CodeFamily::Full];
        for i in 0..classes as usize {
            families.push(CodeFamily::ParallelClass(i));
        }
        for fam in families {
            match build_code(fam, m, q, DEFAULT_SIZE_CAP) {
                Ok(code) => out.push((fam, m, q, code)),
                Err(BuildError::NonpositiveDimension { .. }) => continue,
                Err(e) => panic!("unexpected build error for {fam} m={m} q={q}: {e}"),
            }
        }
    }
    out
}

#[test]
fn criterion_01_steane_reproduction() {
    let start = Instant::now();
    let r = check_default(CodeFamily::Punctured, 2, 2);
    assert_eq!(r.n, 7);
    assert_eq!(r.computed_rank, 3);
    assert_eq!(r.computed_k, 1);
    assert_eq!(r.distance.kind, DistanceKind::Exact);
    assert_eq!(r.distance.value, 3);
    assert!(r.self_orth.ok);
    assert!(r.all_confirmed());
    assert!(
        start.elapsed().as_secs_f64() < 0.1,
        "took {:?}",
        start.elapsed()
    );
    let out = cli()
        .args(["check", "--family", "h1", "--m", "2", "--q", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    println!("criterion 1 (steane [[7,1,3]] reproduction): PASS");
}

#[test]
fn criterion_02_full_geometry_code() {
    let start = Instant::now();
    let r = check_default(CodeFamily::Full, 2, 2);
    assert_eq!((r.n, r.computed_k), (15, 7));
    assert_eq!(r.paper.k, 7);
    assert_eq!(r.distance.kind, DistanceKind::Exact);
    assert_eq!(r.distance.value, 2);
    let witness = r
        .distance
        .witness
        .as_ref()
        .expect("weight-2 witness stored");
    assert_eq!(witness.weight(), 2);
    assert!(r.all_confirmed());
    assert!(
        start.elapsed().as_secs_f64() < 0.1,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 2 ([[15,7,2]] reproduction with witness): PASS");
}

#[test]
fn criterion_03_parallel_class_codes() {
    let start = Instant::now();
    let mut signatures = Vec::new();
    for i in 0..3 {
        let r = check_default(CodeFamily::ParallelClass(i), 2, 2);
        assert_eq!((r.n, r.computed_k, r.distance.value), (8, 4, 2));
        assert!(r.all_confirmed());
        signatures.push((r.n, r.computed_rank, r.computed_k, r.distance.value));
    }
    assert!(signatures.windows(2).all(|w| w[0] == w[1]));
    assert!(
        start.elapsed().as_secs_f64() < 0.1,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 3 (three parallel-class [[8,4,2]] codes agree): PASS");
}

#[test]
fn criterion_04_example3_adjudication() {
    let start = Instant::now();
    // printed 8x8 incidence matrix, rows = lines
    let printed = BinMatrix::from_dense(&[
        vec![0, 1, 0, 0, 1, 0, 1, 0],
        vec![0, 0, 1, 0, 0, 1, 0, 1],
        vec![1, 0, 0, 0, 1, 0, 0, 1],
        vec![0, 0, 1, 1, 0, 0, 1, 0],
        vec![1, 0, 0, 0, 0, 1, 1, 0],
        vec![0, 1, 0, 1, 0, 0, 0, 1],
        vec![1, 1, 1, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 1, 1, 0, 0],
    ]);
    let core = build_core(CodeFamily::Punctured, 2, 3, DEFAULT_SIZE_CAP).unwrap();
    assert!(permutation_equivalent(&core, &printed.transpose()));

    // overlap split of the core rows, from naive pairwise popcount on the print
    let t = printed.transpose();
    let mut zero_pairs = 0;
    let mut one_pairs = 0;
    for i in 0..8 {
        for j in i + 1..8 {
            match (0..8).filter(|&c| t.get(i, c) && t.get(j, c)).count() {
                0 => zero_pairs += 1,
                1 => one_pairs += 1,
                other => panic!("unexpected overlap {other}"),
            }
        }
    }
    assert_eq!((zero_pairs, one_pairs), (4, 24));

    // verdicts must equal the brute-force gram-matrix oracle outcome
    let r = check_default(CodeFamily::Punctured, 2, 3);
    let params = paper_params(CodeFamily::Punctured, 2, 3).unwrap();
    assert_eq!((params.n, params.k, params.d_bound), (25, 9, 2));
    let code = build_code(CodeFamily::Punctured, 2, 3, DEFAULT_SIZE_CAP).unwrap();
    let gram = gram_oracle(&code.h_orth);
    let oracle_ok = gram.iter().all(|row| row.iter().all(|&x| x == 0));
    assert_eq!(
        r.verdicts["self-orthogonality"] == Verdict::Confirmed,
        oracle_ok
    );
    let mut oracle_pairs = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        for (j, &x) in row.iter().enumerate().skip(i + 1) {
            if x == 1 {
                oracle_pairs.push((i, j));
            }
        }
    }
    assert_eq!(r.self_orth.violating_pairs, oracle_pairs);
    let oracle_odd: Vec<usize> = (0..code.gen_rows()).filter(|&i| gram[i][i] == 1).collect();
    assert_eq!(r.self_orth.odd_weight_rows, oracle_odd);
    if !oracle_ok {
        assert!(r.any_refuted());
        assert_eq!(r.verdicts["dimension"], Verdict::Refuted);
    }
    assert!(
        start.elapsed().as_secs_f64() < 0.5,
        "took {:?}",
        start.elapsed()
    );
    println!(
        "criterion 4 (example-3 adjudication, oracle agreement, self-orth {}): PASS",
        if oracle_ok { "holds" } else { "violated" }
    );
}

#[test]
fn criterion_05_geometry_census() {
    let start = Instant::now();
    for (m, q) in CENSUS {
        let g = GeometrySpec::for_order(m, q).unwrap();
        let s = g.stats();
        let qq = q as usize;
        let n_points = qq.pow(m as u32);
        let n_classes = (n_points - 1) / (qq - 1);
        assert_eq!(s.n_points, n_points);
        assert_eq!(s.n_lines, qq.pow(m as u32 - 1) * n_classes);
        assert_eq!(s.n_classes, n_classes);
        assert_eq!(s.lines_per_point, n_classes);
        assert_eq!(s.points_per_line, qq);
        assert_eq!(s.parallels_per_line, qq.pow(m as u32 - 1) - 1);
        // enumerations agree with the closed forms
        assert_eq!(g.points().len(), n_points);
        assert_eq!(g.lines().len(), s.n_lines);
        assert_eq!(g.parallel_classes().len(), n_classes);
    }
    assert!(
        start.elapsed().as_secs_f64() < 2.0,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 5 (geometry census over 7 geometries): PASS");
}

#[test]
fn criterion_06_self_orthogonality_sweep() {
    let start = Instant::now();
    let mut checked = 0;
    for (m, q) in CENSUS {
        let classes = ((q as u64).pow(m as u32) - 1) / (q as u64 - 1);
        let mut families = vec![CodeFamily::Full];
        for i in 0..classes as usize {
            families.push(CodeFamily::ParallelClass(i));
        }
        for fam in families {
            let code = match build_code(fam, m, q, DEFAULT_SIZE_CAP) {
                Ok(c) => c,
                Err(BuildError::NonpositiveDimension { .. }) => continue,
                Err(e) => panic!("unexpected build error: {e}"),
            };
            let product = code.h_orth.mul(&code.h_orth.transpose()).unwrap();
            assert!(product.is_zero(), "{fam} m={m} q={q} not self-orthogonal");
            assert!(code.h_orth.self_orth_check().ok);
            checked += 1;
        }
    }
    assert!(checked > 7);
    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 6 (self-orthogonality sweep, {checked} matrices): PASS");
}

#[test]
fn criterion_07_distance_floor_full_m3_q2() {
    let start = Instant::now();
    let code = build_code(CodeFamily::Full, 3, 2, DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(code.n(), 29);
    let d = verify_distance_floor(&code.h_orth, 2, DEFAULT_WEIGHT_BUDGET);
    assert_eq!(d.kind, DistanceKind::LowerBoundVerified);
    assert_eq!(d.value, 3); // no nonzero codeword of weight <= 2
    let params = paper_params(CodeFamily::Full, 3, 2).unwrap();
    assert_eq!(params.k, 13);
    let rank = rank_oracle(&code.h_orth);
    let k_oracle = code.n() as i64 - 2 * rank as i64;
    let r = check_default(CodeFamily::Full, 3, 2);
    assert_eq!(r.computed_k, k_oracle);
    assert_eq!(
        r.verdicts["dimension"] == Verdict::Confirmed,
        k_oracle == params.k && r.self_orth.ok
    );
    assert!(
        start.elapsed().as_secs_f64() < 1.0,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 7 (distance floor d >= 3 and k = {k_oracle} for the 29-column code): PASS");
}

#[test]
fn criterion_08_cross_oracle_distance() {
    let start = Instant::now();
    let mut checked = 0;
    for (fam, m, q, code) in all_census_codes() {
        if code.n() > 30 {
            continue;
        }
        let exact = exact_distance(&code.h_orth, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(exact.kind, DistanceKind::Exact);
        assert_ne!(
            exact.value,
            u64::MAX,
            "{fam} m={m} q={q} has a trivial kernel"
        );
        let floor =
            verify_distance_floor(&code.h_orth, exact.value as usize, DEFAULT_WEIGHT_BUDGET);
        assert_eq!(floor.kind, DistanceKind::Exact, "{fam} m={m} q={q}");
        assert_eq!(floor.value, exact.value, "{fam} m={m} q={q}");
        checked += 1;
    }
    assert!(checked >= 5);

    let mut state = 2024u64;
    let mut next = || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    for _ in 0..20 {
        let mut m = BinMatrix::zeros(8, 16);
        for r in 0..8 {
            for c in 0..16 {
                if next() & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        let exact = exact_distance(&m, DEFAULT_DIM_CAP).unwrap();
        if exact.value == u64::MAX {
            continue; // full column rank never happens for 8x16, but keep honest
        }
        let floor = verify_distance_floor(&m, exact.value as usize, DEFAULT_WEIGHT_BUDGET);
        assert_eq!(
            (floor.kind, floor.value),
            (DistanceKind::Exact, exact.value)
        );
    }
    assert!(
        start.elapsed().as_secs_f64() < 10.0,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 8 (cross-oracle distance agreement, {checked} codes + 20 random): PASS");
}

#[test]
fn criterion_09_round_trip_and_determinism() {
    let start = Instant::now();
    for (fam, m, q, code) in all_census_codes() {
        for matrix in [&code.core, &code.h_orth] {
            let text = write_alist(matrix);
            assert_eq!(&parse_alist(&text).unwrap(), matrix, "{fam} m={m} q={q}");
        }
    }
    let mut state = 77u64;
    let mut next = || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    for _ in 0..200 {
        let rows = 1 + (next() % 40) as usize;
        let cols = 1 + (next() % 40) as usize;
        let mut m = BinMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if next() % 3 == 0 {
                    m.set(r, c, true);
                }
            }
        }
        let text = write_alist(&m);
        assert_eq!(parse_alist(&text).unwrap(), m);
    }

    let run = || {
        cli()
            .args(["check", "--family", "h1", "--m", "2", "--q", "3"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 9 (alist round-trip + byte-identical check runs): PASS");
}

#[test]
fn criterion_10_field_axioms() {
    let start = Instant::now();
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let f = FieldSpec::of_order(q).unwrap();
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            if !a.is_zero() {
                assert_eq!(
                    f.mul(a, f.inv(a).unwrap()),
                    egqldpc::field::FieldElement::ONE
                );
            }
        }
    }
    assert!(
        start.elapsed().as_secs_f64() < 1.0,
        "took {:?}",
        start.elapsed()
    );
    println!("criterion 10 (field axioms for q in {{2,3,4,5,7,8,9}}): PASS");
}
