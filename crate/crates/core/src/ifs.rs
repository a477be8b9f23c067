//! IFS data model: affine maps, families with rank-one members, words,
//! composition, fixed points and natural projections.
//!
//! Letters are flat indices into [`Ifs::maps`]. Families built from an
//! [`IfsFamily`] list the invertible maps first and the rank-one maps after
//! them, so flat index `n_regular + j` is singular map `j`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LineDir, Linear, Mat2, RankOneFactor, Vec2};

/// Minimum `|det|` accepted for an invertible linear part.
pub const MIN_REGULAR_DET: f64 = 1e-12;
/// Angular tolerance for the full-plane kernel case and invariant-line tests.
pub const ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum IfsError {
    #[error("family needs at least one rank-one map")]
    NoSingularMaps,
    #[error("family needs at least two maps in total")]
    TooFewMaps,
    #[error("regular map {index}: |det| = {det:e} is not invertible")]
    SingularMatrix { index: usize, det: f64 },
    #[error("map {index}: norm {norm} is not a contraction")]
    NotContracting { index: usize, norm: f64 },
    #[error("singular map {index}: rho = {rho} outside (0, 1), contraction violated")]
    RhoOutOfRange { index: usize, rho: f64 },
    #[error("singular map {index}: beta = {beta} must be positive")]
    BadBeta { index: usize, beta: f64 },
    #[error("map {index}: non-finite entry")]
    NonFinite { index: usize },
    #[error("parameter point has {got} angles, family has {expected} rank-one maps")]
    ParamArity { expected: usize, got: usize },
    #[error("letter {letter} out of range for alphabet of size {size}")]
    BadLetter { letter: usize, size: usize },
}

/// `x ↦ linear · x + translation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap2 {
    pub linear: Linear,
    pub translation: Vec2,
}

impl AffineMap2 {
    pub const IDENTITY: AffineMap2 = AffineMap2 { linear: Linear::IDENTITY, translation: Vec2::ZERO };

    pub fn new(linear: Linear, translation: Vec2) -> Self {
        Self { linear, translation }
    }

    pub fn regular(m: Mat2, t: Vec2) -> Self {
        Self::new(Linear::Full(m), t)
    }

    pub fn rank_one(r: RankOneFactor, t: Vec2) -> Self {
        Self::new(r.into(), t)
    }

    #[inline]
    pub fn apply(&self, x: Vec2) -> Vec2 {
        self.linear.apply(x) + self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap2) -> AffineMap2 {
        AffineMap2 {
            linear: self.linear.mul(&other.linear),
            translation: self.linear.apply(other.translation) + self.translation,
        }
    }

    pub fn norm(&self) -> f64 {
        self.linear.norm()
    }

    /// Largest absolute difference over the six affine coefficients.
    pub fn coefficient_distance(&self, other: &AffineMap2) -> f64 {
        let d = self.linear.to_dense().sub(&other.linear.to_dense()).max_abs();
        let t = self.translation - other.translation;
        d.max(t.x.abs()).max(t.y.abs())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularMap {
    pub matrix: Mat2,
    pub translation: Vec2,
}

/// Rank-one map `x ↦ ρ v w(c + β α)ᵀ x + t` with the row direction left free.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularMap {
    pub rho: f64,
    pub v_angle: f64,
    pub c: f64,
    pub beta: f64,
    pub translation: Vec2,
}

impl SingularMap {
    pub fn w_angle(&self, alpha: f64) -> f64 {
        (self.c + self.beta * alpha).rem_euclid(TAU)
    }

    pub fn factor(&self, alpha: f64) -> RankOneFactor {
        RankOneFactor::new(self.rho, self.v_angle, self.w_angle(alpha))
    }
}

/// A point of the parameter torus: one angle per rank-one map, or a single
/// angle shared through `c_j + β_j α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ParamPoint {
    Line(f64),
    PerMap(Vec<f64>),
}

impl ParamPoint {
    pub fn alpha(&self, j: usize) -> f64 {
        match self {
            ParamPoint::Line(a) => a.rem_euclid(TAU),
            ParamPoint::PerMap(v) => v[j].rem_euclid(TAU),
        }
    }
}

/// The fixed data of a parametrized family; rank-one row directions are
/// supplied later through a [`ParamPoint`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IfsFamily {
    regular: Vec<RegularMap>,
    singular: Vec<SingularMap>,
}

impl IfsFamily {
    pub fn new(regular: Vec<RegularMap>, singular: Vec<SingularMap>) -> Result<Self, IfsError> {
        if singular.is_empty() {
            return Err(IfsError::NoSingularMaps);
        }
        if regular.len() + singular.len() < 2 {
            return Err(IfsError::TooFewMaps);
        }
        for (index, r) in regular.iter().enumerate() {
            if !r.matrix.is_finite() || !r.translation.is_finite() {
                return Err(IfsError::NonFinite { index });
            }
            let det = r.matrix.det();
            if det.abs() <= MIN_REGULAR_DET {
                return Err(IfsError::SingularMatrix { index, det });
            }
            let norm = r.matrix.norm();
            if norm >= 1.0 {
                return Err(IfsError::NotContracting { index, norm });
            }
        }
        for (k, s) in singular.iter().enumerate() {
            let index = regular.len() + k;
            if ![s.rho, s.v_angle, s.c, s.beta].iter().all(|x| x.is_finite()) || !s.translation.is_finite() {
                return Err(IfsError::NonFinite { index });
            }
            if !(s.rho > 0.0 && s.rho < 1.0) {
                return Err(IfsError::RhoOutOfRange { index, rho: s.rho });
            }
            if s.beta <= 0.0 {
                return Err(IfsError::BadBeta { index, beta: s.beta });
            }
        }
        Ok(Self { regular, singular })
    }

    pub fn regular(&self) -> &[RegularMap] {
        &self.regular
    }

    pub fn singular(&self) -> &[SingularMap] {
        &self.singular
    }

    pub fn len(&self) -> usize {
        self.regular.len() + self.singular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn regular_matrices(&self) -> Vec<Mat2> {
        self.regular.iter().map(|r| r.matrix).collect()
    }

    /// Flat letter index of singular map `j`.
    pub fn singular_letter(&self, j: usize) -> usize {
        self.regular.len() + j
    }

    pub fn instantiate(&self, p: &ParamPoint) -> Result<Ifs, IfsError> {
        if let ParamPoint::PerMap(v) = p {
            if v.len() != self.singular.len() {
                return Err(IfsError::ParamArity { expected: self.singular.len(), got: v.len() });
            }
        }
        let mut maps: Vec<AffineMap2> =
            self.regular.iter().map(|r| AffineMap2::regular(r.matrix, r.translation)).collect();
        for (j, s) in self.singular.iter().enumerate() {
            maps.push(AffineMap2::rank_one(s.factor(p.alpha(j)), s.translation));
        }
        Ok(Ifs { maps, n_regular: self.regular.len() })
    }

    /// Shorthand for the one-parameter line `w(c_j + β_j α)`.
    pub fn at(&self, alpha: f64) -> Ifs {
        self.instantiate(&ParamPoint::Line(alpha)).expect("line parameters always fit")
    }

    /// Copy with every `ρ_j` multiplied by `k`.
    pub fn with_rho_scaled(&self, k: f64) -> Result<Self, IfsError> {
        let singular = self.singular.iter().map(|s| SingularMap { rho: s.rho * k, ..s.clone() }).collect();
        Self::new(self.regular.clone(), singular)
    }
}

/// An instantiated IFS: concrete affine maps with the regular ones first.
#[derive(Clone, Debug, PartialEq)]
pub struct Ifs {
    pub maps: Vec<AffineMap2>,
    n_regular: usize,
}

impl Ifs {
    /// Arbitrary list of maps; the regular prefix is the leading run of
    /// invertible linear parts. Every map must contract.
    pub fn from_maps(maps: Vec<AffineMap2>) -> Result<Self, IfsError> {
        for (index, m) in maps.iter().enumerate() {
            let norm = m.norm();
            if !norm.is_finite() || !m.translation.is_finite() {
                return Err(IfsError::NonFinite { index });
            }
            if norm >= 1.0 {
                return Err(IfsError::NotContracting { index, norm });
            }
        }
        let n_regular = maps.iter().take_while(|m| !m.linear.is_rank_one()).count();
        Ok(Self { maps, n_regular })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn n_regular(&self) -> usize {
        self.n_regular
    }

    pub fn n_singular(&self) -> usize {
        self.maps.len() - self.n_regular
    }

    pub fn regular_letters(&self) -> Vec<usize> {
        (0..self.n_regular).collect()
    }

    pub fn singular_letter(&self, j: usize) -> usize {
        self.n_regular + j
    }

    pub fn linears(&self) -> Vec<Linear> {
        self.maps.iter().map(|m| m.linear).collect()
    }

    pub fn max_norm(&self) -> f64 {
        self.maps.iter().map(AffineMap2::norm).fold(0.0, f64::max)
    }

    /// `D = max‖t_i‖ / (1 − max‖A_i‖)`; every attractor point has norm ≤ D.
    pub fn attractor_bound(&self) -> f64 {
        let t = self.maps.iter().map(|m| m.translation.norm()).fold(0.0, f64::max);
        t / (1.0 - self.max_norm())
    }

    pub fn check_word(&self, word: &[usize]) -> Result<(), IfsError> {
        match word.iter().find(|&&l| l >= self.maps.len()) {
            Some(&letter) => Err(IfsError::BadLetter { letter, size: self.maps.len() }),
            None => Ok(()),
        }
    }
}

/// `f_{i₁} ∘ ⋯ ∘ f_{iₙ}`; the empty word gives the identity.
pub fn compose_word(ifs: &Ifs, word: &[usize]) -> AffineMap2 {
    word.iter().fold(AffineMap2::IDENTITY, |acc, &l| acc.compose(&ifs.maps[l]))
}

/// Depth-first, preorder stream over all words of length `0..=max_len`.
///
/// Only the current word is held in memory. Calling [`WordStream::skip_subtree`]
/// after receiving a word drops every proper extension of it.
pub struct WordStream {
    alphabet: usize,
    max_len: usize,
    word: Vec<usize>,
    started: bool,
    done: bool,
    skip: bool,
}

impl WordStream {
    pub fn skip_subtree(&mut self) {
        self.skip = true;
    }
}

impl Iterator for WordStream {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        let skip = std::mem::take(&mut self.skip);
        if !skip && self.word.len() < self.max_len && self.alphabet > 0 {
            self.word.push(0);
            return Some(self.word.clone());
        }
        while let Some(last) = self.word.pop() {
            if last + 1 < self.alphabet {
                self.word.push(last + 1);
                return Some(self.word.clone());
            }
        }
        self.done = true;
        None
    }
}

pub fn enumerate_words(alphabet_size: usize, max_len: usize) -> WordStream {
    WordStream { alphabet: alphabet_size, max_len, word: Vec::new(), started: false, done: false, skip: false }
}

/// The unique fixed point of a contracting affine map.
pub fn fixed_point(map: &AffineMap2) -> Result<Vec2, IfsError> {
    let norm = map.norm();
    if norm >= 1.0 {
        return Err(IfsError::NotContracting { index: 0, norm });
    }
    let t = map.translation;
    Ok(match &map.linear {
        Linear::Full(a) => {
            let m = Mat2::IDENTITY.sub(a);
            let det = m.det();
            Vec2::new((m.a22 * t.x - m.a12 * t.y) / det, (m.a11 * t.y - m.a21 * t.x) / det)
        }
        // Sherman-Morrison on I - s v wᵀ
        Linear::RankOne(r) => t + r.image * (r.scale * r.row.dot(t) / (1.0 - r.scale * r.row.dot(r.image))),
    })
}

/// `f_ī(0)` together with a radius containing Π of every extension of `prefix`.
pub fn natural_projection(ifs: &Ifs, prefix: &[usize]) -> (Vec2, f64) {
    let point = compose_word(ifs, prefix).translation;
    let radius = prefix.iter().map(|&l| ifs.maps[l].norm()).product::<f64>() * ifs.attractor_bound();
    (point, radius)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelClass {
    /// The word only uses invertible maps.
    Trivial,
    Line(LineDir),
    /// The product vanishes.
    FullPlane,
}

pub fn word_kernel(ifs: &Ifs, word: &[usize]) -> KernelClass {
    let singular_positions: Vec<usize> =
        word.iter().enumerate().filter(|(_, &l)| ifs.maps[l].linear.is_rank_one()).map(|(p, _)| p).collect();
    let Some(&last) = singular_positions.last() else {
        return KernelClass::Trivial;
    };
    let rank_one = |p: usize| match ifs.maps[word[p]].linear {
        Linear::RankOne(r) => r,
        Linear::Full(_) => unreachable!("position filtered as rank one"),
    };
    let regular_product = |a: usize, b: usize| {
        word[a..b].iter().fold(Mat2::IDENTITY, |acc, &l| acc * ifs.maps[l].linear.to_dense())
    };
    for pair in singular_positions.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        let r_p = rank_one(p);
        let r_q = rank_one(q);
        let image = regular_product(p + 1, q).apply(r_q.image);
        let aligned = match image.normalized() {
            Some(u) => r_p.row.dot(u).abs() <= ANGLE_TOL,
            None => true,
        };
        if aligned || r_p.scale == 0.0 || r_q.scale == 0.0 {
            return KernelClass::FullPlane;
        }
    }
    let row = regular_product(last + 1, word.len()).transpose_apply(rank_one(last).row);
    match LineDir::from_vector(row) {
        Some(d) => KernelClass::Line(d.perp()),
        None => KernelClass::FullPlane,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible,
    Reducible(LineDir),
}

fn preserves(m: &Mat2, d: LineDir) -> bool {
    let u = d.unit();
    let image = m.apply(u);
    let n = image.norm();
    n == 0.0 || (u.cross(image) / n).abs() <= ANGLE_TOL
}

/// Looks for a line invariant under every matrix.
///
/// Only eigendirections of one non-scalar matrix can be common invariant
/// lines, so those are the candidates. With only scalar matrices every line is
/// invariant and angle 0 is returned as witness.
pub fn check_irreducibility(mats: &[Mat2]) -> Irreducibility {
    let tol = ANGLE_TOL * mats.iter().map(Mat2::max_abs).fold(0.0, f64::max);
    let Some(pivot) = mats.iter().find(|m| !m.is_scalar(tol)) else {
        return Irreducibility::Reducible(LineDir::new(0.0));
    };
    if mats.iter().any(|m| m.eigen_directions().is_empty()) {
        return Irreducibility::Irreducible;
    }
    for d in pivot.eigen_directions() {
        if mats.iter().all(|m| preserves(m, d)) {
            return Irreducibility::Reducible(d);
        }
    }
    Irreducibility::Irreducible
}

/// `w(α) = (cos α, sin α)`.
pub fn w_of(alpha: f64) -> Vec2 {
    Vec2::from_angle(alpha)
}

/// Period of `α ↦ w(c + βα)` as a line direction, i.e. `π/β`.
pub fn projective_period(beta: f64) -> f64 {
    PI / beta
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cantor_pair() -> Ifs {
        Ifs::from_maps(vec![
            AffineMap2::regular(Mat2::scalar(1.0 / 3.0), Vec2::ZERO),
            AffineMap2::regular(Mat2::scalar(1.0 / 3.0), Vec2::new(2.0 / 3.0, 0.0)),
        ])
        .unwrap()
    }

    fn scalar_family() -> IfsFamily {
        IfsFamily::new(
            vec![RegularMap { matrix: Mat2::scalar(1.0 / 3.0), translation: Vec2::ZERO }],
            vec![SingularMap { rho: 0.5, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::new(1.0, 0.0) }],
        )
        .unwrap()
    }

    #[test]
    fn instantiate_row_directions() {
        let fam = scalar_family();
        let ifs = fam.at(0.0);
        let Linear::RankOne(r) = ifs.maps[1].linear else { panic!() };
        assert_eq!(r.row, Vec2::new(1.0, 0.0));
        let ifs = fam.at(0.5 * PI);
        let Linear::RankOne(r) = ifs.maps[1].linear else { panic!() };
        assert!((r.row - Vec2::new(0.0, 1.0)).norm() < 1e-16);
        for a in [0.1, 1.0, 4.0] {
            let Linear::RankOne(r) = fam.at(a).maps[1].linear else { panic!() };
            assert_eq!(r.image_dir().angle(), 0.0);
        }
        assert!(matches!(
            fam.instantiate(&ParamPoint::PerMap(vec![])),
            Err(IfsError::ParamArity { expected: 1, got: 0 })
        ));
    }

    #[test]
    fn family_validation() {
        let reg = RegularMap { matrix: Mat2::scalar(0.5), translation: Vec2::ZERO };
        let sing = SingularMap { rho: 0.5, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::ZERO };
        assert_eq!(IfsFamily::new(vec![reg.clone()], vec![]), Err(IfsError::NoSingularMaps));
        assert_eq!(IfsFamily::new(vec![], vec![sing.clone()]), Err(IfsError::TooFewMaps));
        let bad = RegularMap { matrix: Mat2::diag(0.5, 0.0), translation: Vec2::ZERO };
        assert!(matches!(IfsFamily::new(vec![bad], vec![sing.clone()]), Err(IfsError::SingularMatrix { .. })));
        let rho1 = SingularMap { rho: 1.0, ..sing.clone() };
        assert!(matches!(IfsFamily::new(vec![reg.clone()], vec![rho1]), Err(IfsError::RhoOutOfRange { .. })));
        let beta0 = SingularMap { beta: 0.0, ..sing.clone() };
        assert!(matches!(IfsFamily::new(vec![reg], vec![beta0]), Err(IfsError::BadBeta { .. })));
    }

    #[test]
    fn compose_word_examples() {
        let ifs = Ifs::from_maps(vec![AffineMap2::regular(Mat2::scalar(1.0 / 3.0), Vec2::new(1.0, 0.0))]).unwrap();
        assert_eq!(compose_word(&ifs, &[]), AffineMap2::IDENTITY);
        let f = compose_word(&ifs, &[0, 0]);
        assert!(f.linear.to_dense().sub(&Mat2::scalar(1.0 / 9.0)).max_abs() < 1e-16);
        assert!((f.translation - Vec2::new(4.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compose_word_matches_dense_oracle_and_is_a_morphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ifs = scalar_family().at(0.7);
        for _ in 0..200 {
            let n = rng.gen_range(0..8);
            let word: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let f = compose_word(&ifs, &word);
            let dense = word.iter().fold(Mat2::IDENTITY, |acc, &l| acc * ifs.maps[l].linear.to_dense());
            assert!(f.linear.to_dense().sub(&dense).max_abs() < 1e-14);
            let split = rng.gen_range(0..=n);
            let g = compose_word(&ifs, &word[..split]).compose(&compose_word(&ifs, &word[split..]));
            assert!(f.coefficient_distance(&g) <= 1e-12 * (1.0 + f.translation.norm()));
        }
    }

    #[test]
    fn word_counts() {
        assert_eq!(enumerate_words(2, 2).count(), 7);
        assert_eq!(enumerate_words(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(enumerate_words(2, 10).count(), 2047);
        assert_eq!(enumerate_words(0, 5).count(), 1);
        let words: Vec<_> = enumerate_words(2, 2).collect();
        assert_eq!(words, vec![vec![], vec![0], vec![0, 0], vec![0, 1], vec![1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn word_stream_skips_subtrees() {
        let mut s = enumerate_words(2, 3);
        let mut seen = Vec::new();
        while let Some(w) = s.next() {
            if w == vec![0] {
                s.skip_subtree();
            }
            seen.push(w);
        }
        assert_eq!(seen.len(), 1 + 1 + 7);
        assert!(seen.iter().all(|w| w.len() < 2 || w[0] == 1));
    }

    #[test]
    fn fixed_point_examples() {
        let f = AffineMap2::regular(Mat2::diag(0.5, 1.0 / 3.0), Vec2::new(1.0, 1.0));
        let x = fixed_point(&f).unwrap();
        assert!((x - Vec2::new(2.0, 1.5)).norm() < 1e-14);
        let g = AffineMap2::regular(Mat2::diag(0.5, 0.2), Vec2::ZERO);
        assert_eq!(fixed_point(&g).unwrap(), Vec2::ZERO);
        let h = AffineMap2::regular(Mat2::scalar(1.5), Vec2::ZERO);
        assert!(fixed_point(&h).is_err());
    }

    #[test]
    fn rank_one_fixed_point_matches_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let r = RankOneFactor::new(rng.gen_range(0.05..0.95), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let f = AffineMap2::rank_one(r, Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let x = fixed_point(&f).unwrap();
            assert!((f.apply(x) - x).norm() <= 1e-10 * (1.0 + x.norm()));
            let mut y = Vec2::ZERO;
            for _ in 0..1000 {
                y = f.apply(y);
            }
            assert!((y - x).norm() < 1e-9);
        }
    }

    #[test]
    fn natural_projection_radii() {
        let ifs = cantor_pair();
        let d = ifs.attractor_bound();
        for n in 1..8 {
            let prefix = vec![1; n];
            let (_, r) = natural_projection(&ifs, &prefix);
            assert!((r - d * 3f64.powi(-(n as i32))).abs() < 1e-14);
        }
        let zero = Ifs::from_maps(vec![AffineMap2::regular(Mat2::scalar(0.3), Vec2::ZERO); 2]).unwrap();
        assert_eq!(natural_projection(&zero, &[0, 1, 1]).0, Vec2::ZERO);
    }

    #[test]
    fn natural_projection_extensions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ifs = scalar_family().at(0.4);
        for _ in 0..50 {
            let prefix: Vec<usize> = (0..5).map(|_| rng.gen_range(0..2)).collect();
            let (p, r) = natural_projection(&ifs, &prefix);
            let mut ext = prefix.clone();
            ext.extend((0..35).map(|_| rng.gen_range(0..2)));
            let q = compose_word(&ifs, &ext).translation;
            assert!((p - q).norm() <= r);
            let (q2, r2) = natural_projection(&ifs, &ext[1..]);
            let lifted = ifs.maps[ext[0]].apply(q2);
            assert!((lifted - q).norm() <= r2 + 1e-15);
        }
    }

    #[test]
    fn kernel_cases() {
        let fam = IfsFamily::new(
            vec![RegularMap { matrix: Mat2::scalar(0.3), translation: Vec2::ZERO }],
            vec![
                SingularMap { rho: 0.5, v_angle: 0.0, c: 0.5 * PI, beta: 1.0, translation: Vec2::ZERO },
                SingularMap { rho: 0.5, v_angle: 0.0, c: 0.0, beta: 1.0, translation: Vec2::ZERO },
            ],
        )
        .unwrap();
        let ifs = fam.at(0.0);
        assert_eq!(word_kernel(&ifs, &[0, 0]), KernelClass::Trivial);
        match word_kernel(&ifs, &[1]) {
            KernelClass::Line(d) => assert!(d.angle().abs() < 1e-15),
            k => panic!("{k:?}"),
        }
        // ⟨w₁, v₂⟩ = ⟨e₂, e₁⟩ = 0
        assert_eq!(word_kernel(&ifs, &[1, 0, 2]), KernelClass::FullPlane);
        match word_kernel(&ifs, &[2, 0, 1, 0]) {
            KernelClass::Line(d) => assert!(d.angle().abs() < 1e-15),
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(check_irreducibility(&[Mat2::rotation_scaled(0.3, 1.0)]), Irreducibility::Irreducible);
        assert_eq!(check_irreducibility(&[Mat2::diag(0.5, 0.3)]), Irreducibility::Reducible(LineDir::new(0.0)));
        let tri = [Mat2::new(0.5, 0.2, 0.0, 0.3), Mat2::new(0.4, -0.1, 0.0, 0.2)];
        assert_eq!(check_irreducibility(&tri), Irreducibility::Reducible(LineDir::new(0.0)));
        let diag_pair = [Mat2::diag(0.5, 0.3), Mat2::new(0.4, 0.1, 0.1, 0.2)];
        assert_eq!(check_irreducibility(&diag_pair), Irreducibility::Irreducible);
        assert!(matches!(check_irreducibility(&[Mat2::scalar(0.2)]), Irreducibility::Reducible(_)));
    }
}
