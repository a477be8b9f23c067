//! Ready-made families used by tests, examples and the acceptance suite.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;

use crate::ifs::{IfsFamily, RegularMap, SingularMap};
use crate::linalg::{Mat2, Vec2};
use crate::separation::ConvexBody;

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub family: IfsFamily,
    /// Parameter on the line `w(c_j + β_j α)` the preset is meant to be used at.
    pub alpha: f64,
    pub region: Option<ConvexBody>,
}

fn reg(matrix: Mat2, t: (f64, f64)) -> RegularMap {
    RegularMap { matrix, translation: Vec2::new(t.0, t.1) }
}

fn sing(rho: f64, v_angle: f64, c: f64, t: (f64, f64)) -> SingularMap {
    SingularMap { rho, v_angle, c, beta: 1.0, translation: Vec2::new(t.0, t.1) }
}

/// `I = {x/3}`, `J = {½ e₁e₁ᵀ x + (1, 0)}`. Its dimension solves `2⁻ˢ + 3⁻ˢ = 1`.
pub fn fam_scalar() -> Preset {
    let family = IfsFamily::new(vec![reg(Mat2::scalar(1.0 / 3.0), (0.0, 0.0))], vec![sing(0.5, 0.0, 0.0, (1.0, 0.0))])
        .expect("valid preset");
    Preset { name: "fam-scalar", family, alpha: 0.0, region: None }
}

/// Two rotation-similarities and one rank-one map, separated inside the unit disk.
pub fn fam_rot() -> Preset {
    let family = IfsFamily::new(
        vec![
            reg(Mat2::rotation_scaled(0.3, 1.0), (-0.5, 0.35)),
            reg(Mat2::rotation_scaled(0.25, 2.0), (0.5, 0.35)),
        ],
        vec![sing(0.3, 0.4, 0.2, (0.0, -0.5))],
    )
    .expect("valid preset");
    Preset { name: "fam-rot", family, alpha: 0.0, region: Some(ConvexBody::disk64(Vec2::ZERO, 1.0)) }
}

/// The middle-thirds Cantor set on `[−1, 1]`, realised as `x/3 + (2/3, 0)`
/// and the rank-one map `⅓ e₁e₁ᵀ x − (2/3, 0)` at `α = 0`.
pub fn cantor_rank_one() -> Preset {
    let family = IfsFamily::new(
        vec![reg(Mat2::scalar(1.0 / 3.0), (2.0 / 3.0, 0.0))],
        vec![sing(1.0 / 3.0, 0.0, 0.0, (-2.0 / 3.0, 0.0))],
    )
    .expect("valid preset");
    Preset { name: "cantor-rank-one", family, alpha: 0.0, region: Some(ConvexBody::disk64(Vec2::ZERO, 1.05)) }
}

/// Strongly contracting family whose exceptional parameter is `α = 0`.
///
/// At `α = 0` the rank-one map fixes the origin and `f_j ∘ f_i` does too,
/// so `f_j∘f_j∘f_i` and `f_j∘f_i∘f_j` coincide.
pub fn exceptional_demo() -> Preset {
    let family = IfsFamily::new(vec![reg(Mat2::scalar(0.2), (0.0, 0.5))], vec![sing(0.2, 0.0, 0.0, (0.0, 0.0))])
        .expect("valid preset");
    Preset { name: "exceptional-demo", family, alpha: 0.0, region: Some(ConvexBody::disk64(Vec2::ZERO, 1.0)) }
}

/// `#J = 2` with the second rank-one map the quarter-turn conjugate of the
/// first, and a quarter-turn similarity as regular part. Both `s_j` agree exactly.
pub fn symmetric_two_j() -> Preset {
    let family = IfsFamily::new(
        vec![reg(Mat2::rotation_scaled(0.3, FRAC_PI_2), (0.0, 0.0))],
        vec![sing(0.3, 0.3, 0.9, (0.6, 0.0)), sing(0.3, 0.3 + FRAC_PI_2, 0.9 + FRAC_PI_2, (-0.6, 0.0))],
    )
    .expect("valid preset");
    Preset { name: "symmetric-two-j", family, alpha: 0.0, region: Some(ConvexBody::disk64(Vec2::ZERO, 1.0)) }
}

/// `#J = 2` without symmetry; irreducible regular part.
pub fn generic_two_j() -> Preset {
    let family = IfsFamily::new(
        vec![reg(Mat2::rotation_scaled(0.2, 1.0), (0.0, 0.55))],
        vec![sing(0.2, 0.2, 0.4, (-0.5, -0.3)), sing(0.15, 1.3, 2.1, (0.5, -0.3))],
    )
    .expect("valid preset");
    Preset { name: "generic-two-j", family, alpha: 0.7, region: Some(ConvexBody::disk64(Vec2::ZERO, 1.0)) }
}

/// `R(θ₁) diag(σ₁, σ₂) R(θ₂)` with `σ₂ ≤ σ₁`.
fn random_matrix<R: Rng>(rng: &mut R) -> Mat2 {
    let s1 = rng.gen_range(0.1..0.45);
    let s2 = rng.gen_range(0.05..=s1);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Mat2::rotation_scaled(1.0, rng.gen_range(0.0..TAU)) * Mat2::diag(s1, sign * s2) * Mat2::rotation_scaled(1.0, rng.gen_range(0.0..TAU))
}

/// A valid family with one or two maps of each kind and all norms below 0.45.
/// Separation is not guaranteed.
pub fn random_admissible<R: Rng>(rng: &mut R) -> Preset {
    let n_reg = rng.gen_range(1..=2);
    let n_sing = rng.gen_range(1..=2);
    let mut t = || (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let ts: Vec<(f64, f64)> = (0..n_reg + n_sing).map(|_| t()).collect();
    let regular = (0..n_reg).map(|k| reg(random_matrix(rng), ts[k])).collect();
    let singular = (0..n_sing)
        .map(|k| SingularMap {
            rho: rng.gen_range(0.1..0.45),
            v_angle: rng.gen_range(0.0..PI),
            c: rng.gen_range(0.0..TAU),
            beta: rng.gen_range(0.5..2.0),
            translation: Vec2::new(ts[n_reg + k].0, ts[n_reg + k].1),
        })
        .collect();
    let family = IfsFamily::new(regular, singular).expect("random matrices are contracting and invertible");
    Preset { name: "random", family, alpha: rng.gen_range(0.0..TAU), region: None }
}

pub fn all_named() -> Vec<Preset> {
    vec![fam_scalar(), fam_rot(), cantor_rank_one(), exceptional_demo(), symmetric_two_j(), generic_two_j()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separation::check_convex_separation;

    #[test]
    fn regions_separate() {
        for p in all_named() {
            if let Some(u) = &p.region {
                let c = check_convex_separation(&p.family, u);
                assert!(c.passed, "{}: {c:?}", p.name);
            }
        }
    }
}
