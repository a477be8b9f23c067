//! Planar linear algebra with exact rank tagging.
//!
//! Rank-one matrices are carried in factored form `scale · image · rowᵀ` and
//! are never detected from numerics. Dense [`Mat2`] values are only used for
//! invertible maps and for oracles/reporting.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Tolerance used when canonicalizing line directions at the wrap boundary.
pub const LINE_WRAP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// `(cos a, sin a)`.
    #[inline]
    pub fn from_angle(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| Vec2::new(self.x / n, self.y / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

/// Dense 2×2 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Self::new(a, 0.0, 0.0, b)
    }

    pub fn scalar(k: f64) -> Self {
        Self::diag(k, k)
    }

    /// `k · R(theta)`, a rotation-similarity.
    pub fn rotation_scaled(k: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(k * c, -k * s, k * s, k * c)
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: Vec2, v: Vec2) -> Self {
        Self::new(u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22
    }

    #[inline]
    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.a11 * v.x + self.a12 * v.y, self.a21 * v.x + self.a22 * v.y)
    }

    #[inline]
    pub fn transpose_apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.a11 * v.x + self.a21 * v.y, self.a12 * v.x + self.a22 * v.y)
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        Mat2::new(self.a11 * k, self.a12 * k, self.a21 * k, self.a22 * k)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }

    pub fn max_abs(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a21.abs()).max(self.a22.abs())
    }

    /// Operator (spectral) norm.
    pub fn norm(&self) -> f64 {
        singular_values(self).0
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    pub fn is_scalar(&self, tol: f64) -> bool {
        self.a12.abs() <= tol && self.a21.abs() <= tol && (self.a11 - self.a22).abs() <= tol
    }

    /// Real eigendirections (at most two), sorted by canonical angle.
    pub fn eigen_directions(&self) -> Vec<LineDir> {
        let tr = self.trace();
        let disc = tr * tr - 4.0 * self.det();
        if disc < 0.0 {
            return Vec::new();
        }
        let root = disc.sqrt();
        let mut dirs: Vec<LineDir> = Vec::new();
        for lambda in [0.5 * (tr + root), 0.5 * (tr - root)] {
            let c1 = Vec2::new(self.a12, lambda - self.a11);
            let c2 = Vec2::new(lambda - self.a22, self.a21);
            let v = if c1.norm() >= c2.norm() { c1 } else { c2 };
            if let Some(d) = LineDir::from_vector(v) {
                if dirs.iter().all(|e| e.distance(d) > 1e-12) {
                    dirs.push(d);
                }
            }
        }
        dirs.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
        dirs
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

/// Singular values `(α₁, α₂)` with `α₁ ≥ α₂ ≥ 0`, in closed form.
///
/// Writes `m` as the sum of a rotation-similarity and a reflection-similarity;
/// the singular values are the sum and the absolute difference of their
/// scale factors. No subtraction of nearly equal squares is involved.
pub fn singular_values(m: &Mat2) -> (f64, f64) {
    let e = 0.5 * (m.a11 + m.a22);
    let f = 0.5 * (m.a11 - m.a22);
    let g = 0.5 * (m.a21 + m.a12);
    let h = 0.5 * (m.a21 - m.a12);
    let q = e.hypot(h);
    let r = f.hypot(g);
    (q + r, (q - r).abs())
}

/// Singular value function from precomputed singular values.
#[inline]
pub fn svf_from_singular_values(a1: f64, a2: f64, t: f64) -> f64 {
    if t <= 1.0 {
        a1.powf(t)
    } else if t <= 2.0 {
        a1 * a2.powf(t - 1.0)
    } else {
        (a1 * a2).powf(0.5 * t)
    }
}

/// The singular value function φᵗ.
pub fn svf(m: &Mat2, t: f64) -> f64 {
    let (a1, a2) = singular_values(m);
    svf_from_singular_values(a1, a2, t)
}

/// ‖m|V‖ for a line V: the length of `m u` for a unit vector `u` spanning V.
pub fn conditional_norm(m: &Mat2, v: LineDir) -> f64 {
    m.apply(v.unit()).norm()
}

/// A one-dimensional subspace, stored as an angle in `[0, π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineDir {
    angle: f64,
}

impl LineDir {
    pub fn new(angle: f64) -> Self {
        let mut a = angle.rem_euclid(PI);
        if PI - a < LINE_WRAP_TOL || a < 0.0 {
            a = 0.0;
        }
        Self { angle: a }
    }

    pub fn from_vector(v: Vec2) -> Option<Self> {
        (v.norm() > 0.0).then(|| Self::new(v.angle()))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn unit(&self) -> Vec2 {
        Vec2::from_angle(self.angle)
    }

    /// The orthogonal line.
    pub fn perp(&self) -> LineDir {
        LineDir::new(self.angle + 0.5 * PI)
    }

    /// Angular distance between lines, in `[0, π/2]`.
    pub fn distance(&self, o: LineDir) -> f64 {
        let d = (self.angle - o.angle).abs();
        d.min(PI - d)
    }
}

/// `ρ v wᵀ` with `v = (cos v_angle, sin v_angle)` and `w = (cos w_angle, sin w_angle)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankOneFactor {
    pub rho: f64,
    pub v_angle: f64,
    pub w_angle: f64,
}

impl RankOneFactor {
    pub fn new(rho: f64, v_angle: f64, w_angle: f64) -> Self {
        Self { rho, v_angle, w_angle }
    }

    pub fn v(&self) -> Vec2 {
        Vec2::from_angle(self.v_angle)
    }

    pub fn w(&self) -> Vec2 {
        Vec2::from_angle(self.w_angle)
    }

    pub fn factored(&self) -> RankOne {
        RankOne { scale: self.rho, image: self.v(), row: self.w() }
    }

    /// Dense reconstruction, for oracles and output only.
    pub fn to_dense(&self) -> Mat2 {
        Mat2::outer(self.v(), self.w()).scale(self.rho)
    }
}

pub fn image_dir(r: &RankOneFactor) -> LineDir {
    LineDir::new(r.v_angle)
}

/// Kernel of `ρ v wᵀ`: the line perpendicular to `w`.
pub fn kernel_dir(r: &RankOneFactor) -> LineDir {
    LineDir::new(r.w_angle + 0.5 * PI)
}

/// General factored rank-≤1 matrix `scale · image · rowᵀ` with unit `image`
/// and `row`. A zero `scale` represents the zero matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankOne {
    pub scale: f64,
    pub image: Vec2,
    pub row: Vec2,
}

impl RankOne {
    pub fn norm(&self) -> f64 {
        self.scale.abs()
    }

    #[inline]
    pub fn apply(&self, x: Vec2) -> Vec2 {
        self.image * (self.scale * self.row.dot(x))
    }

    #[inline]
    pub fn transpose_apply(&self, x: Vec2) -> Vec2 {
        self.row * (self.scale * self.image.dot(x))
    }

    pub fn to_dense(&self) -> Mat2 {
        Mat2::outer(self.image, self.row).scale(self.scale)
    }

    pub fn image_dir(&self) -> LineDir {
        LineDir::new(self.image.angle())
    }

    pub fn kernel_dir(&self) -> LineDir {
        LineDir::new(self.row.angle() + 0.5 * PI)
    }
}

/// Linear part of an affine map, with its rank fixed at construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Linear {
    Full(Mat2),
    RankOne(RankOne),
}

impl Linear {
    pub const IDENTITY: Linear = Linear::Full(Mat2::IDENTITY);

    pub fn is_rank_one(&self) -> bool {
        matches!(self, Linear::RankOne(_))
    }

    /// Matrix product `self · other`, keeping factored form when either side is rank one.
    pub fn mul(&self, other: &Linear) -> Linear {
        match (self, other) {
            (Linear::Full(a), Linear::Full(b)) => Linear::Full(*a * *b),
            (Linear::Full(a), Linear::RankOne(r)) => {
                let img = a.apply(r.image);
                let n = img.norm();
                if n > 0.0 {
                    Linear::RankOne(RankOne { scale: r.scale * n, image: img * (1.0 / n), row: r.row })
                } else {
                    Linear::RankOne(RankOne { scale: 0.0, ..*r })
                }
            }
            (Linear::RankOne(r), Linear::Full(b)) => {
                let row = b.transpose_apply(r.row);
                let n = row.norm();
                if n > 0.0 {
                    Linear::RankOne(RankOne { scale: r.scale * n, image: r.image, row: row * (1.0 / n) })
                } else {
                    Linear::RankOne(RankOne { scale: 0.0, ..*r })
                }
            }
            (Linear::RankOne(p), Linear::RankOne(q)) => Linear::RankOne(RankOne {
                scale: p.scale * q.scale * p.row.dot(q.image),
                image: p.image,
                row: q.row,
            }),
        }
    }

    #[inline]
    pub fn apply(&self, x: Vec2) -> Vec2 {
        match self {
            Linear::Full(m) => m.apply(x),
            Linear::RankOne(r) => r.apply(x),
        }
    }

    #[inline]
    pub fn transpose_apply(&self, x: Vec2) -> Vec2 {
        match self {
            Linear::Full(m) => m.transpose_apply(x),
            Linear::RankOne(r) => r.transpose_apply(x),
        }
    }

    pub fn singular_values(&self) -> (f64, f64) {
        match self {
            Linear::Full(m) => singular_values(m),
            Linear::RankOne(r) => (r.norm(), 0.0),
        }
    }

    pub fn norm(&self) -> f64 {
        self.singular_values().0
    }

    pub fn svf(&self, t: f64) -> f64 {
        let (a1, a2) = self.singular_values();
        svf_from_singular_values(a1, a2, t)
    }

    pub fn conditional_norm(&self, v: LineDir) -> f64 {
        self.apply(v.unit()).norm()
    }

    pub fn to_dense(&self) -> Mat2 {
        match self {
            Linear::Full(m) => *m,
            Linear::RankOne(r) => r.to_dense(),
        }
    }
}

impl From<RankOneFactor> for Linear {
    fn from(r: RankOneFactor) -> Self {
        Linear::RankOne(r.factored())
    }
}
