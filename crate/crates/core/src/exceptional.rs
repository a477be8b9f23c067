//! Exceptional parameters: row directions where `f_j` and `f_j ∘ f_i` share
//! a fixed point, the rewritten family `F′` and the strict dimension drop.
//!
//! On the line `L = t_j + ℝ v_j` every map `f_j ∘ f_ī` acts as the affine
//! map `x ↦ λ x + a` of [`LineMap`].

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dimension::{affinity_dimension, pressure_upper_root, DimensionBracket, DimensionError, SolverOptions};
use crate::ifs::{compose_word, enumerate_words, AffineMap2, Ifs, IfsError, IfsFamily, ParamPoint};
use crate::linalg::{Linear, Vec2};

pub const DEFAULT_GRID: usize = 1 << 8;
pub const ROOT_TOL: f64 = 1e-12;
pub const IDENTITY_TOL: f64 = 1e-10;
/// Cap on the number of words per fixed-length sum for `F′`.
pub const REDUCED_BUDGET: u64 = 1 << 14;

#[derive(Debug, Error, PartialEq)]
pub enum ExceptionalError {
    #[error("|lambda| = {lambda} >= 1 at alpha = {alpha}")]
    Excluded { alpha: f64, lambda: f64 },
    #[error("no sign change of the fixed-point gap on a grid of {grid} (min |delta| = {min_abs:e})")]
    NoSignChange { grid: usize, min_abs: f64 },
    #[error("i and j must be different maps")]
    SameIndex,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("affinity upper bound {0} is not below 1")]
    NotSubcritical(f64),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error(transparent)]
    Ifs(#[from] IfsError),
}

/// `x ↦ lambda · x + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineMap {
    pub lambda: f64,
    pub offset: f64,
}

impl LineMap {
    pub fn apply(&self, x: f64) -> f64 {
        self.lambda * x + self.offset
    }

    pub fn fixed_point(&self) -> f64 {
        self.offset / (1.0 - self.lambda)
    }
}

fn rank_one_parts(ifs: &Ifs, j: usize) -> (f64, Vec2, Vec2, Vec2) {
    let m = &ifs.maps[ifs.singular_letter(j)];
    match m.linear {
        Linear::RankOne(r) => (r.scale, r.image, r.row, m.translation),
        Linear::Full(_) => panic!("singular index {j} is not rank one"),
    }
}

/// The conjugate of `f_j ∘ f_ī` on `L`: `λ = ρ_j⟨w_j, A_ī v_j⟩`,
/// `a = ρ_j⟨w_j, f_ī(t_j)⟩`. `iword` uses flat letters.
pub fn line_map(ifs: &Ifs, j: usize, iword: &[usize]) -> LineMap {
    let (rho, v, w, t) = rank_one_parts(ifs, j);
    let f = compose_word(ifs, iword);
    LineMap { lambda: rho * w.dot(f.linear.apply(v)), offset: rho * w.dot(f.apply(t)) }
}

/// Parameter point with `α_j` replaced and the other angles taken from `base`.
pub fn vary(fam: &IfsFamily, base: &ParamPoint, j: usize, alpha: f64) -> ParamPoint {
    let mut alphas: Vec<f64> = (0..fam.singular().len()).map(|k| base.alpha(k)).collect();
    alphas[j] = alpha;
    ParamPoint::PerMap(alphas)
}

/// `δ(α) = fix(g_∅) − fix(g_i)` along `v_j`; `i` is a flat letter.
pub fn fixed_point_gap(fam: &IfsFamily, base: &ParamPoint, j: usize, i: usize, alpha: f64) -> Result<f64, ExceptionalError> {
    let ifs = fam.instantiate(&vary(fam, base, j, alpha))?;
    check_pair(&ifs, j, i)?;
    let g0 = line_map(&ifs, j, &[]);
    let gi = line_map(&ifs, j, &[i]);
    for g in [g0, gi] {
        if g.lambda.abs() >= 1.0 {
            return Err(ExceptionalError::Excluded { alpha, lambda: g.lambda });
        }
    }
    Ok(g0.fixed_point() - gi.fixed_point())
}

fn check_pair(ifs: &Ifs, j: usize, i: usize) -> Result<(), ExceptionalError> {
    if j >= ifs.n_singular() {
        return Err(ExceptionalError::BadIndex(j));
    }
    if i >= ifs.len() {
        return Err(ExceptionalError::BadIndex(i));
    }
    if i == ifs.singular_letter(j) {
        return Err(ExceptionalError::SameIndex);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommonFixedPoint {
    pub alpha_star: f64,
    pub delta: f64,
    /// Largest coefficient of `f_j∘f_j∘f_i − f_j∘f_i∘f_j` in the plane.
    pub identity_residual: f64,
    /// Same difference restricted to the line `L`.
    pub line_residual: f64,
    pub grid: usize,
}

/// Scans `[0, 2π)` for a sign change of `δ`, skipping grid cells that touch
/// an excluded point, and bisects to `|δ| ≤ 1e-12`.
pub fn find_common_fixed_point_angle(
    fam: &IfsFamily,
    base: &ParamPoint,
    j: usize,
    i: usize,
    grid: usize,
) -> Result<CommonFixedPoint, ExceptionalError> {
    let probe = fam.instantiate(base)?;
    check_pair(&probe, j, i)?;
    let delta = |a: f64| fixed_point_gap(fam, base, j, i, a).ok();
    let alphas: Vec<f64> = (0..=grid).map(|k| TAU * k as f64 / grid as f64).collect();
    let values: Vec<Option<f64>> = alphas.iter().map(|&a| delta(a)).collect();
    let min_abs = values.iter().flatten().fold(f64::INFINITY, |m, d| m.min(d.abs()));
    for k in 0..grid {
        let (Some(d0), Some(d1)) = (values[k], values[k + 1]) else { continue };
        let root = if d0.abs() <= ROOT_TOL {
            Some(alphas[k])
        } else if d0 * d1 < 0.0 {
            bisect_root(&delta, alphas[k], alphas[k + 1], d0)
        } else {
            None
        };
        if let Some(alpha_star) = root {
            let d = delta(alpha_star).unwrap_or(f64::NAN);
            let (identity_residual, line_residual) = commutation_residuals(fam, base, j, i, alpha_star)?;
            return Ok(CommonFixedPoint { alpha_star, delta: d, identity_residual, line_residual, grid });
        }
    }
    Err(ExceptionalError::NoSignChange { grid, min_abs })
}

fn bisect_root(delta: &impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64, mut d_lo: f64) -> Option<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let d = delta(mid)?;
        if d.abs() <= ROOT_TOL {
            return Some(mid);
        }
        if mid <= lo || mid >= hi {
            break;
        }
        if d_lo * d < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            d_lo = d;
        }
    }
    // a pole masquerading as a sign change never gets small
    None
}

/// `(plane, line)` residuals of `f_j∘f_j∘f_i ≡ f_j∘f_i∘f_j` at `alpha`.
pub fn commutation_residuals(
    fam: &IfsFamily,
    base: &ParamPoint,
    j: usize,
    i: usize,
    alpha: f64,
) -> Result<(f64, f64), ExceptionalError> {
    let ifs = fam.instantiate(&vary(fam, base, j, alpha))?;
    let jl = ifs.singular_letter(j);
    let jji = compose_word(&ifs, &[jl, jl, i]);
    let jij = compose_word(&ifs, &[jl, i, jl]);
    let (_, v, _, t) = rank_one_parts(&ifs, j);
    let line = [-1.0, 0.0, 1.0]
        .iter()
        .map(|&x| {
            let p = t + v * x;
            (jji.apply(p) - jij.apply(p)).norm()
        })
        .fold(0.0, f64::max);
    Ok((jji.coefficient_distance(&jij), line))
}

/// `F′`: every three-letter composition except `f_j∘f_j∘f_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalFamily {
    pub words: Vec<[usize; 3]>,
    pub maps: Vec<AffineMap2>,
    pub removed: [usize; 3],
    /// The retained word whose map duplicates the removed one.
    pub twin: [usize; 3],
}

impl ExceptionalFamily {
    pub fn ifs(&self) -> Ifs {
        Ifs::from_maps(self.maps.clone()).expect("compositions of contractions contract")
    }

    /// Position of `word` in `words`, if retained.
    pub fn index_of(&self, word: [usize; 3]) -> Option<usize> {
        self.words.iter().position(|w| *w == word)
    }
}

pub fn exceptional_family(ifs: &Ifs, j: usize, i: usize) -> Result<ExceptionalFamily, ExceptionalError> {
    check_pair(ifs, j, i)?;
    let jl = ifs.singular_letter(j);
    let removed = [jl, jl, i];
    let mut words = Vec::new();
    let mut maps = Vec::new();
    for w in enumerate_words(ifs.len(), 3).filter(|w| w.len() == 3) {
        let word = [w[0], w[1], w[2]];
        if word != removed {
            maps.push(compose_word(ifs, &word));
            words.push(word);
        }
    }
    Ok(ExceptionalFamily { words, maps, removed, twin: [jl, i, jl] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DropStatus {
    StrictGap,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub alpha_star: f64,
    pub identity_residual: f64,
    pub line_residual: f64,
    pub bracket_original: DimensionBracket,
    /// Only the upper end is computed; `lower` is 0.
    pub bracket_reduced: DimensionBracket,
    pub strict_gap: bool,
    /// `bracket_original.lower − bracket_reduced.upper`.
    pub margin: f64,
    pub status: DropStatus,
}

/// Largest `n ≤ max_depth` with `letters^n ≤ budget` (at least 1).
pub fn reduced_depth(letters: usize, max_depth: usize, budget: u64) -> usize {
    let mut n = 1;
    while n < max_depth && (letters as f64).powi(n as i32 + 1) <= budget as f64 {
        n += 1;
    }
    n
}

/// Finds `α*`, brackets `s(F)` there and bounds `s(F′)` from above.
pub fn dimension_drop(
    fam: &IfsFamily,
    base: &ParamPoint,
    j: usize,
    i: usize,
    grid: usize,
    opts: &SolverOptions,
) -> Result<ExceptionalReport, ExceptionalError> {
    let cfp = find_common_fixed_point_angle(fam, base, j, i, grid)?;
    let ifs = fam.instantiate(&vary(fam, base, j, cfp.alpha_star))?;
    let original = affinity_dimension(&ifs, opts)?.bracket;
    if original.upper >= 1.0 {
        return Err(ExceptionalError::NotSubcritical(original.upper));
    }
    let reduced_family = exceptional_family(&ifs, j, i)?;
    let linears: Vec<Linear> = reduced_family.maps.iter().map(|m| m.linear).collect();
    let budget = opts.budget.min(REDUCED_BUDGET);
    let n = reduced_depth(linears.len(), opts.depth, budget);
    let upper = pressure_upper_root(&linears, n, opts.tol, budget)?;
    let reduced = DimensionBracket { lower: 0.0, upper, depth: n, certified_upper: true };
    let strict_gap = upper < original.lower;
    Ok(ExceptionalReport {
        alpha_star: cfp.alpha_star,
        identity_residual: cfp.identity_residual,
        line_residual: cfp.line_residual,
        bracket_original: original,
        bracket_reduced: reduced,
        strict_gap,
        margin: original.lower - upper,
        status: if strict_gap { DropStatus::StrictGap } else { DropStatus::Inconclusive },
    })
}

/// The line IFS `{g_ī : ī ∈ (I ∪ J∖{j})^k, k ≤ n}` in depth-first word order.
pub fn line_system(ifs: &Ifs, j: usize, n: usize) -> Vec<LineMap> {
    let jl = ifs.singular_letter(j);
    let alphabet: Vec<usize> = (0..ifs.len()).filter(|&l| l != jl).collect();
    enumerate_words(alphabet.len(), n)
        .map(|w| {
            let word: Vec<usize> = w.iter().map(|&k| alphabet[k]).collect();
            line_map(ifs, j, &word)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaValue {
    pub value: f64,
    /// Bound on `|Δ − value|` from the two dropped tails.
    pub tail_bound: f64,
}

/// `Δ_{ī,j̄}` truncated to `k` terms: `Σ_{m<k} a_{i_m} ∏_{l<m} λ_{i_l}` minus
/// the same sum along `jword`. Short words repeat periodically.
pub fn delta_truncated(system: &[LineMap], iword: &[usize], jword: &[usize], k: usize) -> Result<DeltaValue, ExceptionalError> {
    if iword.is_empty() || jword.is_empty() || k == 0 {
        return Err(ExceptionalError::EmptyWord);
    }
    if let Some(&bad) = iword.iter().chain(jword).find(|&&l| l >= system.len()) {
        return Err(ExceptionalError::BadIndex(bad));
    }
    let orbit = |word: &[usize]| {
        let mut sum = 0.0;
        let mut prod = 1.0;
        for m in 0..k {
            let g = system[word[m % word.len()]];
            sum += g.offset * prod;
            prod *= g.lambda;
        }
        sum
    };
    let a_max = system.iter().map(|g| g.offset.abs()).fold(0.0, f64::max);
    let l_max = system.iter().map(|g| g.lambda.abs()).fold(0.0, f64::max);
    let tail = if l_max < 1.0 { 2.0 * a_max * l_max.powi(k as i32) / (1.0 - l_max) } else { f64::INFINITY };
    Ok(DeltaValue { value: orbit(iword) - orbit(jword), tail_bound: tail })
}
