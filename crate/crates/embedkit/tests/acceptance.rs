//! Acceptance suite: one test per criterion, each printing a pass line with
//! its wall time. Golden data (check matrices, rotation rows, face
//! sequences) is transcribed from the worked K_5, K_9, and K_{4,4}
//! examples.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use embedkit::core::{
    build_css, faces_match_cyclically, is_self_dual, pair_equal_up_to_permutation, scheme_k4r1,
    scheme_k4s, search_self_dual_bipartite, trace_faces, BinaryMatrix, BitVec, CssCode,
    DistanceBound, FamilyError, FamilySpec, RotationSystem, SchemeError, SearchOutcome,
    SurfaceMap,
};

fn finish(criterion: usize, what: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its time budget: {elapsed:?} >= {budget:?}"
    );
    println!("criterion {criterion}: pass - {what} ({} ms)", elapsed.as_millis());
}

const K5_HX: &str = "1111000000\n1000111000\n0100100110\n0010010101\n0001001011";
const K5_HZ: &str = "1100010100\n1010001001\n0011000110\n0101101000\n0000110011";

#[rustfmt::skip]
const K9_HX: &str = concat!(
    "111111110000000000000000000000000000\n",
    "100000001111111000000000000000000000\n",
    "010000001000000111111000000000000000\n",
    "001000000100000100000111110000000000\n",
    "000100000010000010000100001111000000\n",
    "000010000001000001000010001000111000\n",
    "000001000000100000100001000100100110\n",
    "000000100000010000010000100010010101\n",
    "000000010000001000001000010001001011",
);

#[rustfmt::skip]
const K9_HZ: &str = concat!(
    "111100000100000100000000100010000000\n",
    "000000001111000010000100000001001000\n",
    "000011000000000111100010001000000000\n",
    "000000000000110000000111100100100000\n",
    "000000000000000000011000001111010100\n",
    "001010000000000000000000010000111011\n",
    "000101110010100000000000000000000110\n",
    "100000100001011001010000000000000001\n",
    "010000011000001000101001010000000000",
);

const K9_ROWS: [[usize; 8]; 9] = [
    [1, 7, 8, 2, 3, 5, 6, 4],
    [2, 8, 0, 3, 4, 6, 7, 5],
    [3, 0, 1, 4, 5, 7, 8, 6],
    [4, 1, 2, 5, 6, 8, 0, 7],
    [5, 2, 3, 6, 7, 0, 1, 8],
    [6, 3, 4, 7, 8, 1, 2, 0],
    [7, 4, 5, 8, 0, 2, 3, 1],
    [8, 5, 6, 0, 1, 3, 4, 2],
    [0, 6, 7, 1, 2, 4, 5, 3],
];

const K9_FACES: [[usize; 8]; 9] = [
    [0, 1, 3, 2, 0, 3, 7, 4],
    [1, 2, 4, 3, 1, 4, 8, 5],
    [2, 3, 5, 4, 2, 5, 0, 6],
    [3, 4, 6, 5, 3, 6, 1, 7],
    [4, 5, 7, 6, 4, 7, 2, 8],
    [5, 6, 8, 7, 5, 8, 3, 0],
    [6, 7, 0, 8, 6, 0, 4, 1],
    [7, 8, 1, 0, 7, 1, 5, 2],
    [8, 0, 2, 1, 8, 2, 6, 3],
];

fn certified(code: &CssCode, cap: usize) -> usize {
    code.min_distance(cap)
        .expect("distance is defined")
        .certified()
        .unwrap_or_else(|| panic!("distance not certified at cap {cap}"))
}

#[test]
fn criterion_1_k5_golden_reproduction() {
    let start = Instant::now();
    let map = trace_faces(&scheme_k4r1(1).unwrap());
    let code = build_css(&map).expect("K_5 code assembles");
    assert_eq!((code.n(), code.k()), (10, 2));
    assert_eq!(certified(&code, 6), 3);
    assert!(code.hx().mul_transpose(code.hz()).is_zero());
    let paper_hx = BinaryMatrix::parse_rows(K5_HX).unwrap();
    let paper_hz = BinaryMatrix::parse_rows(K5_HZ).unwrap();
    assert!(
        pair_equal_up_to_permutation(code.hx(), code.hz(), &paper_hx, &paper_hz),
        "computed K_5 pair is not a row/column permutation of the published pair"
    );
    finish(
        1,
        "K_5 [[10,2,3]] with published H_X/H_Z up to permutation",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_k9_golden_reproduction() {
    let start = Instant::now();
    let rot = scheme_k4r1(2).unwrap();
    for (i, row) in K9_ROWS.iter().enumerate() {
        assert_eq!(rot.rotation(i), row, "rotation row {i}");
    }
    let map = trace_faces(&rot);
    let expected: Vec<Vec<usize>> = K9_FACES.iter().map(|f| f.to_vec()).collect();
    assert!(
        faces_match_cyclically(&map, &expected),
        "traced faces differ from the published sequences"
    );
    let code = build_css(&map).expect("K_9 code assembles");
    assert_eq!((code.n(), code.k()), (36, 20));
    assert_eq!(certified(&code, 4), 3);
    let paper_hx = BinaryMatrix::parse_rows(K9_HX).unwrap();
    let paper_hz = BinaryMatrix::parse_rows(K9_HZ).unwrap();
    assert!(
        pair_equal_up_to_permutation(code.hx(), code.hz(), &paper_hx, &paper_hz),
        "computed K_9 pair is not a row/column permutation of the published pair"
    );
    finish(
        2,
        "K_9 rotation rows, face sequences, and [[36,20,3]] at cap 4",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_3_class_ii_smallest_instance() {
    let start = Instant::now();
    let scheme = scheme_k4s(8).expect("K_8 scheme validates");
    let map = trace_faces(&scheme.rotation);
    assert_eq!(map.face_count(), 8);
    assert!(map.faces().iter().all(|f| f.len() == 7));
    assert_eq!(map.genus(), 7);
    assert!(is_self_dual(&map));
    let code = build_css(&map).expect("K_8 code assembles");
    assert_eq!((code.n(), code.k()), (28, 14));
    assert_eq!(certified(&code, 4), 3);
    let formula = FamilySpec::Class2 { s: 2 }.predicted_params().unwrap();
    assert_eq!((formula.n, formula.k, formula.d), (28, 14, 3));
    finish(
        3,
        "K_8 self-dual map (8 heptagons, g=7) and [[28,14,3]]",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_4_k44_search() {
    let start = Instant::now();
    let outcome = search_self_dual_bipartite(4, 4, None).unwrap();
    let SearchOutcome::Found { map, .. } = outcome else {
        panic!("exhaustive search failed to find a self-dual K_4,4 map: {outcome:?}");
    };
    assert_eq!(map.genus(), 1);
    assert!(is_self_dual(&map));
    let code = build_css(&map).expect("K_4,4 code assembles");
    assert_eq!((code.n(), code.k()), (16, 2));
    assert_eq!(certified(&code, 6), 4);
    finish(
        4,
        "K_4,4 genus-1 self-dual map and [[16,2,4]] at cap 6",
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_5_formula_table() {
    let start = Instant::now();
    // Class I for n <= 200.
    for r in 1u64..=4 {
        let p = FamilySpec::Class1 { r }.predicted_params().unwrap();
        assert_eq!(p.n, 2 * r * (4 * r + 1));
        assert_eq!(p.k, 2 * r * (4 * r - 3));
        assert_eq!(p.d, 3);
        assert!(p.n <= 200 && p.k <= p.n);
    }
    // Class II for n <= 200.
    for s in 2u64..=5 {
        let p = FamilySpec::Class2 { s }.predicted_params().unwrap();
        assert_eq!(p.n, 2 * s * (4 * s - 1));
        assert_eq!(p.k, 2 * (s - 1) * (4 * s - 1));
        assert_eq!(p.d, 3);
        assert!(p.n <= 200 && p.k <= p.n);
    }
    // Class III over multiples of 4 with n <= 200.
    for r in (4u64..=48).step_by(4) {
        for s in (4u64..=48).step_by(4) {
            if r * s > 200 {
                continue;
            }
            let p = FamilySpec::Class3 { r, s }.predicted_params().unwrap();
            assert_eq!(p.n, r * s);
            assert_eq!(p.k, (r - 2) * (s - 2) / 2);
            assert_eq!(p.d, 4);
            assert!(p.k <= p.n);
        }
    }
    // Class IV with n <= 200.
    for r in 2u64..=24 {
        for s in 2u64..=6 {
            if (2 * r + 1) * s * s > 200 {
                continue;
            }
            let p = FamilySpec::Class4 { r, s }.predicted_params().unwrap();
            assert_eq!(p.n, (2 * r + 1) * s * s);
            assert_eq!(p.k, (r * s - 2) * (s - 1));
            assert_eq!(p.d, 3);
            assert!(p.k <= p.n);
        }
    }

    // Every generated instance agrees with its formula exactly.
    let instances: [(FamilySpec, SurfaceMap, usize); 4] = [
        (
            FamilySpec::Class1 { r: 1 },
            trace_faces(&scheme_k4r1(1).unwrap()),
            6,
        ),
        (
            FamilySpec::Class1 { r: 2 },
            trace_faces(&scheme_k4r1(2).unwrap()),
            4,
        ),
        (
            FamilySpec::Class2 { s: 2 },
            trace_faces(&scheme_k4s(8).unwrap().rotation),
            4,
        ),
        (
            FamilySpec::Class3 { r: 4, s: 4 },
            match search_self_dual_bipartite(4, 4, None).unwrap() {
                SearchOutcome::Found { map, .. } => map,
                other => panic!("search failed: {other:?}"),
            },
            6,
        ),
    ];
    for (spec, map, cap) in instances {
        let predicted = spec.predicted_params().unwrap();
        let code = build_css(&map).unwrap();
        assert_eq!(code.n() as u64, predicted.n, "{spec}: n");
        assert_eq!(code.k() as u64, predicted.k, "{spec}: k");
        assert_eq!(certified(&code, cap) as u64, predicted.d, "{spec}: d");
    }
    finish(
        5,
        "four family formulas over n<=200 plus exact agreement on generated instances",
        start,
        Duration::from_secs(300),
    );
}

/// Full kernel enumeration: minimum weight over all nonzero kernel vectors
/// of `kernel_of` outside the row space of `boundary_of`, walking the
/// kernel by Gray code.
fn oracle_side_min(kernel_of: &BinaryMatrix, boundary_of: &BinaryMatrix) -> Option<usize> {
    let basis = kernel_of.kernel_basis();
    let dim = basis.len();
    assert!(dim <= 22, "oracle restricted to kernel dimension <= 22");
    let mut v = BitVec::zeros(kernel_of.cols());
    let mut best: Option<usize> = None;
    for step in 1u64..(1u64 << dim) {
        v.xor_assign(&basis[step.trailing_zeros() as usize]);
        let w = v.weight();
        if best.is_none_or(|b| w < b) && !boundary_of.row_space_contains(&v).unwrap() {
            best = Some(w);
        }
    }
    best
}

#[test]
fn criterion_6_distance_oracle_equivalence() {
    let start = Instant::now();
    let k44 = match search_self_dual_bipartite(4, 4, None).unwrap() {
        SearchOutcome::Found { map, .. } => map,
        other => panic!("search failed: {other:?}"),
    };
    let instances: [(&str, SurfaceMap); 3] = [
        ("K_5", trace_faces(&scheme_k4r1(1).unwrap())),
        ("K_8", trace_faces(&scheme_k4s(8).unwrap().rotation)),
        ("K_4,4", k44),
    ];
    for (name, map) in instances {
        let code = build_css(&map).unwrap();
        let dim_z = code.hx().kernel_basis().len();
        let dim_x = code.hz().kernel_basis().len();
        assert!(
            dim_z <= 22 && dim_x <= 22,
            "{name}: kernel dimension out of oracle range"
        );
        let oracle = oracle_side_min(code.hx(), code.hz())
            .into_iter()
            .chain(oracle_side_min(code.hz(), code.hx()))
            .min()
            .unwrap_or_else(|| panic!("{name}: oracle found no logical operator"));
        assert_eq!(
            code.min_distance(6).unwrap(),
            DistanceBound::Certified(oracle),
            "{name}: enumerative distance disagrees with the kernel oracle"
        );
    }
    finish(
        6,
        "min_distance equals full kernel enumeration on K_5, K_8, K_4,4",
        start,
        Duration::from_secs(120),
    );
}

fn random_rotation_system(rng: &mut ChaCha8Rng, n: usize) -> RotationSystem {
    let mut adjacent = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        adjacent[u][v] = true;
        adjacent[v][u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.4) {
                adjacent[u][v] = true;
                adjacent[v][u] = true;
            }
        }
    }
    let rotations = (0..n)
        .map(|v| {
            let mut nbrs: Vec<usize> = (0..n).filter(|&w| adjacent[v][w]).collect();
            nbrs.shuffle(rng);
            nbrs
        })
        .collect();
    RotationSystem::new(rotations).expect("random construction is valid")
}

#[test]
fn criterion_7_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    for trial in 0..50 {
        let n = rng.gen_range(2..=8);
        let map = trace_faces(&random_rotation_system(&mut rng, n));
        let total: usize = map.faces().iter().map(|f| f.len()).sum();
        assert_eq!(total, 2 * map.edge_count(), "trial {trial}: orbit partition");
        let mut seen = vec![[false; 2]; map.edge_count()];
        for face in map.faces() {
            for (step, &e) in face.boundary().iter().zip(face.edge_ids()) {
                let dir = usize::from(step.tail != map.edges()[e].0);
                assert!(!seen[e][dir], "trial {trial}: repeated directed edge");
                seen[e][dir] = true;
            }
        }
        assert_eq!(map.euler_characteristic() % 2, 0, "trial {trial}: odd Euler characteristic");
        let code = build_css(&map)
            .unwrap_or_else(|e| panic!("trial {trial}: k=2g or orthogonality failed: {e}"));
        assert!(code.hx().mul_transpose(code.hz()).is_zero(), "trial {trial}");
        assert_eq!(code.k(), 2 * map.genus(), "trial {trial}");
    }
    finish(
        7,
        "50 random rotation systems: orbits partition, even Euler, k=2g, orthogonal checks",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_8_nonexistence_and_degenerate_handling() {
    let start = Instant::now();
    assert_eq!(
        search_self_dual_bipartite(6, 6, None).unwrap(),
        SearchOutcome::Nonexistent
    );
    assert_eq!(
        FamilySpec::Class3 { r: 6, s: 6 }.predicted_params().unwrap_err(),
        FamilyError::BipartiteNonexistent
    );
    assert_eq!(
        scheme_k4s(6).unwrap_err(),
        SchemeError::NotMultipleOfFour { n: 6 }
    );
    assert_eq!(
        scheme_k4s(10).unwrap_err(),
        SchemeError::NotMultipleOfFour { n: 10 }
    );
    assert_eq!(scheme_k4r1(0).unwrap_err(), SchemeError::RankTooSmall { r: 0 });
    assert!(FamilySpec::Class1 { r: 0 }.predicted_params().is_err());
    assert!(FamilySpec::Class2 { s: 1 }.predicted_params().is_err());
    assert!(FamilySpec::Class4 { r: 1, s: 3 }.predicted_params().is_err());
    // A budget-starved search is not-found, never a malformed map.
    assert_eq!(
        search_self_dual_bipartite(4, 4, Some(0)).unwrap(),
        SearchOutcome::NotFound {
            examined: 0,
            space_exhausted: false
        }
    );
    finish(
        8,
        "K_6,6 nonexistence and rejection of degenerate parameters",
        start,
        Duration::from_secs(10),
    );
}
