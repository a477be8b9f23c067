use std::f64::consts::{PI, TAU};

use affdim::dimension::{affinity_dimension, solve_sj_lower, solve_sj_upper, SolverOptions};
use affdim::ifs::{compose_word, fixed_point};
use affdim::linalg::{singular_values, svf, Linear, Mat2, RankOneFactor, Vec2};
use affdim::presets;
use affdim::separation::{admissible_projections, ConvexBody};
use affdim::sum::bisect_decreasing;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mat() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(|[a, b, c, d]| Mat2::new(a, b, c, d))
}

fn rank_one() -> impl Strategy<Value = RankOneFactor> {
    (0.01..2.0f64, 0.0..PI, 0.0..TAU).prop_map(|(r, v, w)| RankOneFactor::new(r, v, w))
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn singular_values_match_invariants(m in mat()) {
        let (s1, s2) = singular_values(&m);
        prop_assert!(s1 >= s2 && s2 >= 0.0);
        prop_assert!((s1 * s2 - m.det().abs()).abs() <= 1e-12 * (1.0 + s1 * s1));
        prop_assert!((s1 * s1 + s2 * s2 - m.frobenius_sq()).abs() <= 1e-12 * (1.0 + s1 * s1));
    }

    #[test]
    fn svf_is_submultiplicative(a in mat(), b in mat(), t in 0.0..2.0f64) {
        prop_assert!(svf(&(a * b), t) <= svf(&a, t) * svf(&b, t) * (1.0 + 1e-9) + 1e-300);
    }

    #[test]
    fn factored_products_match_dense(a in mat(), r in rank_one(), q in rank_one()) {
        let dense = a * r.to_dense() * q.to_dense();
        let tagged = Linear::Full(a).mul(&Linear::from(r)).mul(&Linear::from(q));
        prop_assert!(tagged.is_rank_one());
        prop_assert!(tagged.to_dense().sub(&dense).max_abs() <= 1e-12 * (1.0 + dense.max_abs()));
        prop_assert!(close(tagged.norm(), singular_values(&dense).0, 1e-9) || dense.max_abs() < 1e-12);
    }

    #[test]
    fn fixed_points_are_fixed(seed in any::<u64>(), word in prop::collection::vec(0usize..4, 1..6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = presets::random_admissible(&mut rng);
        let ifs = p.family.at(p.alpha);
        let word: Vec<usize> = word.into_iter().map(|l| l % ifs.len()).collect();
        let f = compose_word(&ifs, &word);
        let x = fixed_point(&f).unwrap();
        prop_assert!((f.apply(x) - x).norm() <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn bisection_brackets_root(root in 0.05..1.95f64, tol in 1e-12..1e-3f64) {
        let (lo, hi) = bisect_decreasing(|s| root - s + 1.0, 1.0, 0.0, 2.0, tol);
        prop_assert!(lo <= root && root <= hi && hi - lo <= tol);
    }

    #[test]
    fn admissible_directions_separate(
        cx in -3.0..3.0f64, cy in -3.0..3.0f64, r1 in 0.1..1.0f64, r2 in 0.1..1.0f64, k in 1usize..40,
    ) {
        let a = ConvexBody::disk64(Vec2::ZERO, r1);
        let b = ConvexBody::disk64(Vec2::new(cx, cy), r2);
        prop_assume!(a.distance(&b) > 1e-9);
        let arcs = admissible_projections(&a, &b).unwrap();
        for z in arcs.sample(k) {
            let (a0, a1) = a.projected_interval(z);
            let (b0, b1) = b.projected_interval(z);
            prop_assert!(a1 < b0 || b1 < a0);
        }
    }
}

#[test]
fn brackets_tighten_with_depth_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for k in 0..20 {
        let p = presets::random_admissible(&mut rng);
        let ifs = p.family.at(p.alpha);
        for j in 0..ifs.n_singular() {
            let lo6 = solve_sj_lower(&ifs, j, 6, 1e-10, 1e-18).value;
            let lo9 = solve_sj_lower(&ifs, j, 9, 1e-10, 1e-18).value;
            assert!(lo9 >= lo6, "family {k} j={j}: {lo9} < {lo6}");
            let up = solve_sj_upper(&ifs, j, 9, 1e-10, 1e-18);
            if up.certified {
                assert!(up.value + 1e-9 >= lo9, "family {k} j={j}: upper {} below lower {lo9}", up.value);
            }
        }
        let rep = affinity_dimension(&ifs, &SolverOptions { depth: 8, ..Default::default() }).unwrap();
        assert!(rep.bracket.lower <= rep.bracket.upper);
        assert!(rep.bracket.lower >= rep.s_reg.lower - 1e-12);
        assert!(rep.bracket.upper <= 1.0);
    }
}
