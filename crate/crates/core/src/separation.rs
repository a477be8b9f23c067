//! Convex separation certificates and admissible projection directions.
//!
//! Bodies are convex polygons or segments. Directions are projective: an
//! angle is taken mod π. `proj_z` is the orthogonal projection onto the line
//! `⟨z⟩⊥`, so two bodies have overlapping projections exactly when some
//! difference vector `b − a` is parallel to `z`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ifs::{AffineMap2, IfsFamily, SingularMap};
use crate::linalg::{Linear, Mat2, Vec2};

/// Sides of the polygon used for a disk.
pub const DISK_SIDES: usize = 64;
/// Angular margin a witness direction must keep from the arc boundary.
pub const WITNESS_MARGIN: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum SeparationError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("non-finite vertex")]
    NonFinite,
    #[error("bodies intersect (distance {0})")]
    Intersecting(f64),
    #[error("indices must differ")]
    SameIndex,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("word letter {0} is not an invertible map")]
    NotRegularWord(usize),
    #[error("no admissible direction found on a grid of {0} samples")]
    NoWitness(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Polygon,
    Segment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexBody {
    pub kind: BodyKind,
    /// Counterclockwise for polygons; the two endpoints for segments.
    pub vertices: Vec<Vec2>,
    /// Hausdorff distance to the smooth body this polygon stands in for.
    pub approx_error: f64,
}

impl ConvexBody {
    /// Strictly convex polygon; clockwise input is reversed.
    pub fn polygon(mut vertices: Vec<Vec2>) -> Result<Self, SeparationError> {
        let n = vertices.len();
        if n < 3 {
            return Err(SeparationError::TooFewVertices(n));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(SeparationError::NonFinite);
        }
        let area2: f64 = (0..n).map(|k| vertices[k].cross(vertices[(k + 1) % n])).sum();
        if area2 < 0.0 {
            vertices.reverse();
        }
        let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        for k in 0..n {
            let a = vertices[k];
            let b = vertices[(k + 1) % n];
            let c = vertices[(k + 2) % n];
            if (b - a).cross(c - b) <= 1e-14 * scale * scale {
                return Err(SeparationError::NotConvex((k + 1) % n));
            }
        }
        Ok(Self { kind: BodyKind::Polygon, vertices, approx_error: 0.0 })
    }

    pub fn segment(a: Vec2, b: Vec2) -> Self {
        Self { kind: BodyKind::Segment, vertices: vec![a, b], approx_error: 0.0 }
    }

    /// Regular 64-gon inscribed in the disk.
    pub fn disk64(center: Vec2, radius: f64) -> Self {
        let vertices = (0..DISK_SIDES)
            .map(|k| center + Vec2::from_angle(TAU * k as f64 / DISK_SIDES as f64) * radius)
            .collect();
        let approx_error = radius * (1.0 - (PI / DISK_SIDES as f64).cos());
        Self { kind: BodyKind::Polygon, vertices, approx_error }
    }

    pub fn is_point(&self) -> bool {
        self.kind == BodyKind::Segment && self.vertices[0] == self.vertices[1]
    }

    pub fn max_vertex_norm(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn edges(&self) -> Vec<(Vec2, Vec2)> {
        match self.kind {
            BodyKind::Segment => vec![(self.vertices[0], self.vertices[1])],
            BodyKind::Polygon => {
                let n = self.vertices.len();
                (0..n).map(|k| (self.vertices[k], self.vertices[(k + 1) % n])).collect()
            }
        }
    }

    /// Signed distance of `p` from the boundary, positive inside (polygons only).
    fn inner_margin(&self, p: Vec2) -> f64 {
        self.edges()
            .iter()
            .map(|&(a, b)| {
                let e = b - a;
                e.cross(p - a) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_point(&self, p: Vec2) -> bool {
        match self.kind {
            BodyKind::Polygon => self.inner_margin(p) >= 0.0,
            BodyKind::Segment => point_segment_distance(p, self.vertices[0], self.vertices[1]) == 0.0,
        }
    }

    /// Smallest distance from a vertex of `inner` to the boundary of `self`,
    /// negative when some vertex lies outside. `self` must be a polygon.
    pub fn containment_margin(&self, inner: &ConvexBody) -> f64 {
        inner.vertices.iter().map(|&p| self.inner_margin(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains_body(&self, inner: &ConvexBody) -> bool {
        self.kind == BodyKind::Polygon && self.containment_margin(inner) >= 0.0
    }

    pub fn intersects(&self, other: &ConvexBody) -> bool {
        let ea = self.edges();
        let eb = other.edges();
        if ea.iter().any(|&(a, b)| eb.iter().any(|&(c, d)| segments_intersect(a, b, c, d))) {
            return true;
        }
        (self.kind == BodyKind::Polygon && self.contains_point(other.vertices[0]))
            || (other.kind == BodyKind::Polygon && other.contains_point(self.vertices[0]))
    }

    /// Euclidean distance between the bodies; 0 when they meet.
    pub fn distance(&self, other: &ConvexBody) -> f64 {
        if self.intersects(other) {
            return 0.0;
        }
        let one_way = |p: &ConvexBody, q: &ConvexBody| {
            let edges = q.edges();
            p.vertices
                .iter()
                .flat_map(|&v| edges.iter().map(move |&(a, b)| point_segment_distance(v, a, b)))
                .fold(f64::INFINITY, f64::min)
        };
        one_way(self, other).min(one_way(other, self))
    }

    /// Interval of `⟨u, x⟩` over the body.
    pub fn support_interval(&self, u: Vec2) -> (f64, f64) {
        self.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let x = u.dot(*v);
            (lo.min(x), hi.max(x))
        })
    }

    /// `proj_z`: the interval covered on `⟨z⟩⊥`, measured along `z⊥`.
    pub fn projected_interval(&self, z_angle: f64) -> (f64, f64) {
        self.support_interval(Vec2::from_angle(z_angle).perp())
    }

    pub fn map(&self, f: &AffineMap2) -> ConvexBody {
        image_body(f, self)
    }
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(a, c, d))
        || (d2 == 0.0 && on_segment(b, c, d))
        || (d3 == 0.0 && on_segment(c, a, b))
        || (d4 == 0.0 && on_segment(d, a, b))
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let e = b - a;
    let len2 = e.dot(e);
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(e) / len2).clamp(0.0, 1.0);
    (p - (a + e * t)).norm()
}

/// Convex hull, counterclockwise, collinear points dropped (Andrew's monotone chain).
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec2>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Vertices of `B ⊕ (−A)`, the set of differences `b − a`.
pub fn minkowski_difference(a: &ConvexBody, b: &ConvexBody) -> Vec<Vec2> {
    let diffs: Vec<Vec2> = b.vertices.iter().flat_map(|&q| a.vertices.iter().map(move |&p| q - p)).collect();
    convex_hull(&diffs)
}

/// Open arcs of directions mod π. Each arc is `(start, width)` with
/// `start ∈ [0, π)` and `0 < width ≤ π`; an arc may wrap past π.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ArcSet {
    pub arcs: Vec<(f64, f64)>,
}

impl ArcSet {
    pub fn single(start: f64, width: f64) -> Self {
        Self { arcs: vec![(start.rem_euclid(PI), width)] }
    }

    fn offset(start: f64, theta: f64) -> f64 {
        (theta - start).rem_euclid(PI)
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.contains_with_margin(theta, 0.0)
    }

    /// Whether `theta` lies in some arc at angular distance `> margin` from its ends.
    pub fn contains_with_margin(&self, theta: f64, margin: f64) -> bool {
        self.arcs.iter().any(|&(s, w)| {
            let d = Self::offset(s, theta);
            d > margin && d < w - margin
        })
    }

    /// `k` evenly spaced interior directions per arc.
    pub fn sample(&self, k: usize) -> Vec<f64> {
        self.arcs
            .iter()
            .flat_map(|&(s, w)| (0..k).map(move |i| (s + w * (i as f64 + 0.5) / k as f64).rem_euclid(PI)))
            .collect()
    }

    pub fn total_width(&self) -> f64 {
        self.arcs.iter().map(|a| a.1).sum()
    }
}

/// Closed direction cone `(start, width)` of the differences between two
/// disjoint bodies.
pub fn difference_cone(a: &ConvexBody, b: &ConvexBody) -> (f64, f64) {
    cone_of(&minkowski_difference(a, b))
}

fn cone_of(points: &[Vec2]) -> (f64, f64) {
    let c = points.iter().fold(Vec2::ZERO, |acc, &p| acc + p) * (1.0 / points.len() as f64);
    let rel = |p: Vec2| c.cross(p).atan2(c.dot(p));
    let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
        let r = rel(p);
        (lo.min(r), hi.max(r))
    });
    ((c.angle() + lo).rem_euclid(PI), hi - lo)
}

/// Same cone from every vertex pair, without the hull.
pub fn difference_cone_brute_force(a: &ConvexBody, b: &ConvexBody) -> (f64, f64) {
    let diffs: Vec<Vec2> = b.vertices.iter().flat_map(|&q| a.vertices.iter().map(move |&p| q - p)).collect();
    cone_of(&diffs)
}

/// Directions `z` for which `proj_z(A)` and `proj_z(B)` are disjoint: the
/// complement mod π of the difference cone.
pub fn admissible_projections(a: &ConvexBody, b: &ConvexBody) -> Result<ArcSet, SeparationError> {
    let d = a.distance(b);
    if d <= 0.0 {
        return Err(SeparationError::Intersecting(d));
    }
    let (start, width) = difference_cone(a, b);
    Ok(ArcSet::single(start + width, PI - width))
}

/// `f(U)`: a polygon for invertible maps, a segment along `Im A` for rank-one maps.
pub fn image_body(f: &AffineMap2, u: &ConvexBody) -> ConvexBody {
    match &f.linear {
        Linear::Full(_) => {
            let vertices: Vec<Vec2> = u.vertices.iter().map(|&p| f.apply(p)).collect();
            let mut body = match u.kind {
                BodyKind::Polygon => ConvexBody::polygon(vertices).unwrap_or_else(|_| hull_body(&u.vertices, f)),
                BodyKind::Segment => ConvexBody::segment(vertices[0], vertices[1]),
            };
            body.approx_error = u.approx_error * f.norm();
            body
        }
        Linear::RankOne(r) => {
            let (lo, hi) = u.support_interval(r.row);
            let a = f.translation + r.image * (r.scale * lo);
            let b = f.translation + r.image * (r.scale * hi);
            let (a, b) = if r.scale >= 0.0 { (a, b) } else { (b, a) };
            ConvexBody { kind: BodyKind::Segment, vertices: vec![a, b], approx_error: u.approx_error * r.scale.abs() }
        }
    }
}

fn hull_body(vertices: &[Vec2], f: &AffineMap2) -> ConvexBody {
    let pts: Vec<Vec2> = vertices.iter().map(|&p| f.apply(p)).collect();
    ConvexBody { kind: BodyKind::Polygon, vertices: convex_hull(&pts), approx_error: 0.0 }
}

/// Union over all row directions of `f_j(U)`: `t_j ± ρ_j R v_j` with `R` the
/// largest vertex norm of `U`.
pub fn swept_segment(s: &SingularMap, u: &ConvexBody) -> ConvexBody {
    let half = Vec2::from_angle(s.v_angle) * (s.rho * u.max_vertex_norm());
    let mut seg = ConvexBody::segment(s.translation - half, s.translation + half);
    seg.approx_error = u.approx_error * s.rho;
    seg
}

/// The bodies compared by the separation check: regular images, then swept segments.
pub fn family_bodies(fam: &IfsFamily, u: &ConvexBody) -> Vec<ConvexBody> {
    let mut bodies: Vec<ConvexBody> =
        fam.regular().iter().map(|r| image_body(&AffineMap2::regular(r.matrix, r.translation), u)).collect();
    bodies.extend(fam.singular().iter().map(|s| swept_segment(s, u)));
    bodies
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    /// One entry per map, regular maps first.
    pub contained: Vec<bool>,
    pub min_pairwise_distance: f64,
    /// Smallest distance from an image vertex to the boundary of `U`.
    pub margin: f64,
    pub polygonization_error: f64,
    pub passed: bool,
}

/// Uniform convex separation check on `U`.
///
/// When `U` stands in for a smooth body, the margin must exceed the
/// polygonization error and the gaps must exceed twice that error.
pub fn check_convex_separation(fam: &IfsFamily, u: &ConvexBody) -> SeparationCertificate {
    let bodies = family_bodies(fam, u);
    let margins: Vec<f64> = bodies.iter().map(|b| u.containment_margin(b)).collect();
    let contained: Vec<bool> = margins.iter().map(|&m| m >= 0.0).collect();
    let margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let mut min_pairwise_distance = f64::INFINITY;
    for i in 0..bodies.len() {
        for k in i + 1..bodies.len() {
            min_pairwise_distance = min_pairwise_distance.min(bodies[i].distance(&bodies[k]));
        }
    }
    let err = u.approx_error;
    let passed = u.kind == BodyKind::Polygon
        && contained.iter().all(|&c| c)
        && min_pairwise_distance > 2.0 * err
        && min_pairwise_distance > 0.0
        && (err == 0.0 || margin > err);
    SeparationCertificate { contained, min_pairwise_distance, margin, polygonization_error: err, passed }
}

/// A parameter `α` such that `z(α) = A_īᵀ w(c_j + αβ_j)` is an admissible
/// direction for the bodies of maps `k1` and `k2`, with margin [`WITNESS_MARGIN`].
///
/// `iword` uses flat letters and must only contain invertible maps. The grid
/// over `[0, 2π/β_j)` starts at 2⁸ samples and doubles up to 2¹⁶.
pub fn projection_witness(
    fam: &IfsFamily,
    u: &ConvexBody,
    iword: &[usize],
    j: usize,
    k1: usize,
    k2: usize,
) -> Result<f64, SeparationError> {
    if k1 == k2 {
        return Err(SeparationError::SameIndex);
    }
    let bodies = family_bodies(fam, u);
    for k in [k1, k2] {
        if k >= bodies.len() {
            return Err(SeparationError::BadIndex(k));
        }
    }
    let sj = fam.singular().get(j).ok_or(SeparationError::BadIndex(j))?;
    let mut a = Mat2::IDENTITY;
    for &l in iword {
        let r = fam.regular().get(l).ok_or(SeparationError::NotRegularWord(l))?;
        a = a * r.matrix;
    }
    let arcs = admissible_projections(&bodies[k1], &bodies[k2])?;
    let period = TAU / sj.beta;
    let mut samples = 1usize << 8;
    while samples <= 1 << 16 {
        for k in 0..samples {
            let alpha = period * k as f64 / samples as f64;
            let z = a.transpose_apply(Vec2::from_angle(sj.c + alpha * sj.beta));
            if arcs.contains_with_margin(z.angle(), WITNESS_MARGIN) {
                return Ok(alpha);
            }
        }
        samples <<= 1;
    }
    Err(SeparationError::NoWitness(samples >> 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::RegularMap;
    use crate::linalg::RankOneFactor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn square(x0: f64, y0: f64, side: f64) -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(x0, y0),
            Vec2::new(x0 + side, y0),
            Vec2::new(x0 + side, y0 + side),
            Vec2::new(x0, y0 + side),
        ])
        .unwrap()
    }

    fn overlap(a: (f64, f64), b: (f64, f64)) -> bool {
        a.0 <= b.1 && b.0 <= a.1
    }

    #[test]
    fn polygon_validation() {
        assert_eq!(ConvexBody::polygon(vec![Vec2::ZERO, Vec2::new(1.0, 0.0)]), Err(SeparationError::TooFewVertices(2)));
        let cw = ConvexBody::polygon(vec![Vec2::ZERO, Vec2::new(0.0, 1.0), Vec2::new(1.0, 1.0), Vec2::new(1.0, 0.0)]).unwrap();
        assert_eq!(cw.vertices[1], Vec2::new(1.0, 1.0));
        let dent = vec![Vec2::ZERO, Vec2::new(2.0, 0.0), Vec2::new(1.0, 0.2), Vec2::new(1.0, 2.0)];
        assert!(matches!(ConvexBody::polygon(dent), Err(SeparationError::NotConvex(_))));
        let d = ConvexBody::disk64(Vec2::ZERO, 1.0);
        assert_eq!(d.vertices.len(), 64);
        assert!((d.approx_error - (1.0 - (PI / 64.0).cos())).abs() < 1e-16);
    }

    #[test]
    fn distances() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(2.0, 0.0, 1.0);
        assert!((a.distance(&b) - 1.0).abs() < 1e-15);
        assert_eq!(a.distance(&square(0.5, 0.5, 1.0)), 0.0);
        assert_eq!(a.distance(&square(0.25, 0.25, 0.5)), 0.0);
        let s = ConvexBody::segment(Vec2::new(-1.0, 0.5), Vec2::new(2.0, 0.5));
        assert_eq!(a.distance(&s), 0.0);
        let p = ConvexBody::segment(Vec2::new(3.0, 3.0), Vec2::new(3.0, 3.0));
        assert!(p.is_point());
        assert!((b.distance(&p) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn image_body_examples() {
        let u = square(-1.0, -1.0, 2.0);
        let half = image_body(&AffineMap2::regular(Mat2::scalar(0.5), Vec2::ZERO), &square(0.0, 0.0, 1.0));
        assert_eq!(half.vertices[2], Vec2::new(0.5, 0.5));
        let t = Vec2::new(0.3, -0.2);
        let seg = image_body(&AffineMap2::rank_one(RankOneFactor::new(0.5, 0.0, 0.0), t), &u);
        assert_eq!(seg.kind, BodyKind::Segment);
        assert!((seg.vertices[0] - (t - Vec2::new(0.5, 0.0))).norm() < 1e-15);
        assert!((seg.vertices[1] - (t + Vec2::new(0.5, 0.0))).norm() < 1e-15);
    }

    #[test]
    fn image_body_matches_boundary_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = ConvexBody::disk64(Vec2::new(0.1, 0.0), 1.0);
        for _ in 0..10 {
            let m = Mat2::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let f = if m.det().abs() > 1e-3 {
                AffineMap2::regular(m, Vec2::new(0.2, 0.1))
            } else {
                AffineMap2::rank_one(RankOneFactor::new(0.4, 1.0, 2.0), Vec2::ZERO)
            };
            let body = image_body(&f, &u);
            let n = u.vertices.len();
            for k in 0..1000 {
                let x = k as f64 * n as f64 / 1000.0;
                let (i, frac) = (x.floor() as usize % n, x.fract());
                let p = u.vertices[i] * (1.0 - frac) + u.vertices[(i + 1) % n] * frac;
                let q = f.apply(p);
                let d = ConvexBody::segment(q, q).distance(&body);
                assert!(d < 1e-12, "{d}");
            }
        }
    }

    fn fam_with(singular: Vec<SingularMap>) -> IfsFamily {
        IfsFamily::new(vec![RegularMap { matrix: Mat2::scalar(0.2), translation: Vec2::new(0.0, 0.6) }], singular).unwrap()
    }

    #[test]
    fn swept_segment_examples() {
        let u = ConvexBody::disk64(Vec2::ZERO, 1.0);
        let s = SingularMap { rho: 0.5, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::ZERO };
        let seg = swept_segment(&s, &u);
        assert!((seg.vertices[0] - Vec2::new(-0.5, 0.0)).norm() < 1e-15);
        let shifted = ConvexBody::disk64(Vec2::new(1.0, 0.0), 1.0);
        let seg = swept_segment(&s, &shifted);
        assert!((seg.vertices[1].x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn swept_segment_contains_every_instance() {
        let u = ConvexBody::disk64(Vec2::new(0.2, -0.1), 0.9);
        let s = SingularMap { rho: 0.4, v_angle: 0.7, c: 0.3, beta: 2.0, translation: Vec2::new(0.1, 0.1) };
        let sw = swept_segment(&s, &u);
        let r = u.max_vertex_norm();
        let mut far = 0.0f64;
        for k in 0..64 {
            let f = AffineMap2::rank_one(s.factor(TAU * k as f64 / 64.0), s.translation);
            let seg = image_body(&f, &u);
            for &p in &seg.vertices {
                assert!(point_segment_distance(p, sw.vertices[0], sw.vertices[1]) < 1e-14);
                far = far.max((p - s.translation).norm());
            }
        }
        assert!(s.rho * r - far < 0.4 * 0.9 * (1.0 - (PI / 64.0).cos()) + 1e-3);
        // dense sweep attains the endpoint
        let best = (0..1 << 16)
            .map(|k| {
                let f = AffineMap2::rank_one(s.factor(TAU * k as f64 / 65536.0), s.translation);
                image_body(&f, &u).vertices.iter().map(|p| (*p - s.translation).norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        assert!((s.rho * r - best).abs() < 1e-6, "{}", s.rho * r - best);
    }

    #[test]
    fn admissible_examples() {
        let a = square(0.0, 0.0, 1.0);
        let b = square(2.0, 0.0, 1.0);
        let arcs = admissible_projections(&a, &b).unwrap();
        let (s, w) = arcs.arcs[0];
        assert!((s - PI / 4.0).abs() < 1e-12 && (w - PI / 2.0).abs() < 1e-12);
        assert!(arcs.contains(PI / 2.0) && !arcs.contains(0.1) && !arcs.contains(PI - 0.1));
        let h1 = ConvexBody::segment(Vec2::ZERO, Vec2::new(1.0, 0.0));
        let h2 = ConvexBody::segment(Vec2::new(2.0, 0.0), Vec2::new(3.0, 0.0));
        let arcs = admissible_projections(&h1, &h2).unwrap();
        assert!(arcs.contains(1e-9) && arcs.contains(PI - 1e-9) && !arcs.contains(0.0));
        assert!(matches!(admissible_projections(&a, &square(0.5, 0.5, 1.0)), Err(SeparationError::Intersecting(_))));
    }

    fn random_polygon(rng: &mut ChaCha8Rng, center: Vec2) -> ConvexBody {
        loop {
            let n = rng.gen_range(3..9);
            let r = rng.gen_range(0.1..1.0);
            let pts: Vec<Vec2> = (0..n).map(|_| center + Vec2::from_angle(rng.gen_range(0.0..TAU)) * r).collect();
            let hull = convex_hull(&pts);
            if let Ok(p) = ConvexBody::polygon(hull) {
                return p;
            }
        }
    }

    #[test]
    fn admissible_soundness_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut pairs = 0;
        while pairs < 200 {
            let a = random_polygon(&mut rng, Vec2::ZERO);
            let off = Vec2::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
            let b = random_polygon(&mut rng, off);
            if a.distance(&b) <= 0.0 {
                continue;
            }
            pairs += 1;
            let arcs = admissible_projections(&a, &b).unwrap();
            for z in arcs.sample(50) {
                assert!(!overlap(a.projected_interval(z), b.projected_interval(z)));
            }
            let (s, w) = difference_cone(&a, &b);
            for k in 0..50 {
                let z = s + w * (k as f64 + 0.5) / 50.0;
                assert!(overlap(a.projected_interval(z), b.projected_interval(z)));
            }
            let (s2, w2) = difference_cone_brute_force(&a, &b);
            let ds = (s - s2).rem_euclid(PI);
            assert!(ds.min(PI - ds) < 1e-9 && (w - w2).abs() < 1e-9);
        }
    }

    #[test]
    fn certificate_examples() {
        let u = ConvexBody::disk64(Vec2::ZERO, 1.0);
        let same = IfsFamily::new(
            vec![RegularMap { matrix: Mat2::scalar(0.3), translation: Vec2::ZERO }],
            vec![SingularMap { rho: 0.3, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::ZERO }],
        )
        .unwrap();
        let c = check_convex_separation(&same, &u);
        assert!(!c.passed && c.min_pairwise_distance == 0.0);
        let outside = fam_with(vec![SingularMap { rho: 0.3, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::new(2.0, 0.0) }]);
        let c = check_convex_separation(&outside, &u);
        assert_eq!(c.contained, vec![true, false]);
        assert!(!c.passed);
        let good = fam_with(vec![SingularMap { rho: 0.3, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::new(0.0, -0.4) }]);
        let c = check_convex_separation(&good, &u);
        assert!(c.passed, "{c:?}");
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"min_pairwise_distance\""));
    }

    #[test]
    fn witness_examples() {
        let u = ConvexBody::disk64(Vec2::ZERO, 1.0);
        let fam = fam_with(vec![SingularMap { rho: 0.3, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::new(0.0, -0.4) }]);
        assert_eq!(projection_witness(&fam, &u, &[], 0, 1, 1), Err(SeparationError::SameIndex));
        let bodies = family_bodies(&fam, &u);
        for iword in [vec![], vec![0], vec![0, 0, 0]] {
            let alpha = projection_witness(&fam, &u, &iword, 0, 0, 1).unwrap();
            let a = iword.iter().fold(Mat2::IDENTITY, |acc, _| acc * Mat2::scalar(0.2));
            let z = a.transpose_apply(Vec2::from_angle(alpha)).angle();
            let (p, q) = (bodies[0].projected_interval(z), bodies[1].projected_interval(z));
            assert!(p.1 < q.0 || q.1 < p.0);
        }
    }
}
