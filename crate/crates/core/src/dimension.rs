//! Pressure-type sums and bisection brackets.
//!
//! Lower bounds come from truncated sums (fewer nonnegative terms push the
//! root down); upper bounds from submultiplicativity of φˢ or from an
//! explicit geometric tail bound. Each bound reports whether it is certified.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ifs::{check_irreducibility, Ifs, Irreducibility};
use crate::linalg::{svf_from_singular_values, Linear, Vec2};
use crate::sum::{bisect_decreasing, word_sum, Visit, WordSum, WordVisitor};

/// Upper end of every dimension bracket in the plane.
pub const MAX_DIM: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Truncation word length.
    pub depth: usize,
    /// Bisection tolerance in `s`.
    pub tol: f64,
    /// Subtrees whose bound drops below this are pruned.
    pub prune: f64,
    /// Largest number of words of one length a fixed-length sum may visit.
    pub budget: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { depth: 12, tol: 1e-9, prune: 1e-18, budget: 1 << 22 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionBracket {
    pub lower: f64,
    pub upper: f64,
    pub depth: usize,
    pub certified_upper: bool,
}

impl DimensionBracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DimensionError {
    #[error("{words} words of length {depth} exceed the budget of {budget}")]
    BudgetExceeded { words: f64, depth: usize, budget: u64 },
    #[error("the family has no invertible maps")]
    EmptyRegular,
    #[error("s_reg lower bound {lower} is not below 1")]
    SregTooLarge { lower: f64 },
    #[error("brackets disagree across rank-one maps: lower {lower} > certified upper {upper}; increase depth")]
    Inconsistent { lower: f64, upper: f64 },
    #[error("invalid sum spec: {0}")]
    BadSpec(String),
}

fn check_budget(alphabet: usize, n: usize, budget: u64) -> Result<(), DimensionError> {
    let words = (alphabet as f64).powi(n as i32);
    if words > budget as f64 {
        return Err(DimensionError::BudgetExceeded { words, depth: n, budget });
    }
    Ok(())
}

/// φˢ with zero matrices contributing 0 even at `s = 0`.
fn svf_or_zero(a1: f64, a2: f64, s: f64) -> f64 {
    if a1 == 0.0 {
        0.0
    } else {
        svf_from_singular_values(a1, a2, s)
    }
}

/// Sums `leaf(A_ī)` over words whose length lies in `from..=to`.
struct ProductVisitor<'a, F> {
    maps: &'a [Linear],
    from: usize,
    leaf: F,
}

impl<F: Fn(&Linear) -> f64 + Sync> WordVisitor for ProductVisitor<'_, F> {
    type State = Linear;

    fn root(&self) -> Linear {
        Linear::IDENTITY
    }

    fn step(&self, state: &Linear, letter: usize) -> Linear {
        state.mul(&self.maps[letter])
    }

    fn visit(&self, state: &Linear, depth: usize) -> Visit {
        Visit::Keep(if depth >= self.from { (self.leaf)(state) } else { 0.0 })
    }
}

fn product_sum<F: Fn(&Linear) -> f64 + Sync>(maps: &[Linear], from: usize, to: usize, leaf: F) -> f64 {
    let alphabet: Vec<usize> = (0..maps.len()).collect();
    word_sum(&ProductVisitor { maps, from, leaf }, &alphabet, to).total
}

/// `Σ_{|ī|=n} φˢ(A_ī)`.
pub fn partition_sum(maps: &[Linear], n: usize, s: f64, budget: u64) -> Result<f64, DimensionError> {
    check_budget(maps.len(), n, budget)?;
    Ok(product_sum(maps, n, n, |m| {
        let (a1, a2) = m.singular_values();
        svf_or_zero(a1, a2, s)
    }))
}

/// `Σ_{1≤|ī|≤n} φˢ(A_ī)`.
pub fn cumulative_partition_sum(maps: &[Linear], n: usize, s: f64, budget: u64) -> Result<f64, DimensionError> {
    check_budget(maps.len(), n, budget)?;
    Ok(product_sum(maps, 1, n, |m| {
        let (a1, a2) = m.singular_values();
        svf_or_zero(a1, a2, s)
    }))
}

/// Root of `partition_sum(n, s) = 1` in `[0, 2]`, an upper bound for the
/// affinity dimension. Returns 0 when the sum at `s = 0` is at most 1 and 2
/// when the sum stays above 1.
pub fn pressure_upper_root(maps: &[Linear], n: usize, tol: f64, budget: u64) -> Result<f64, DimensionError> {
    check_budget(maps.len(), n, budget)?;
    let g = |s: f64| partition_sum(maps, n, s, budget).expect("budget checked");
    Ok(bisect_decreasing(g, 1.0, 0.0, MAX_DIM, tol).1)
}

/// Conditional-norm sum `Σ ρ_{j′} |⟨w_{j′}, A_ī v_{j″}⟩|ˢ` over words on
/// `alphabet`. The state is the row vector `ρ_{j′} A_īᵀ w_{j′}`.
struct CondVisitor<'a> {
    maps: &'a [Linear],
    start: Vec2,
    end: Vec2,
    s: f64,
    prune: f64,
}

impl WordVisitor for CondVisitor<'_> {
    type State = Vec2;

    fn root(&self) -> Vec2 {
        self.start
    }

    fn step(&self, r: &Vec2, letter: usize) -> Vec2 {
        self.maps[letter].transpose_apply(*r)
    }

    fn visit(&self, r: &Vec2, _: usize) -> Visit {
        let n = r.norm();
        if n == 0.0 {
            return Visit::Prune(0.0);
        }
        let bound = n.powf(self.s);
        if bound < self.prune {
            return Visit::Prune(bound);
        }
        let x = resolved_dot(*r, self.end);
        Visit::Keep(if x == 0.0 { 0.0 } else { x.powf(self.s) })
    }
}

/// Which conditional-norm sum to evaluate: words over `I ∪ allowed`,
/// anchored at rank-one maps `start` and `end` (indices into J).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HSumSpec {
    pub allowed: Vec<usize>,
    pub start: usize,
    pub end: usize,
    pub max_len: usize,
}

impl HSumSpec {
    /// The sum behind `s_j`: `J′ = J ∖ {j}`, both anchors `j`.
    pub fn for_sj(ifs: &Ifs, j: usize, max_len: usize) -> Self {
        Self { allowed: (0..ifs.n_singular()).filter(|&k| k != j).collect(), start: j, end: j, max_len }
    }

    fn alphabet(&self, ifs: &Ifs) -> Vec<usize> {
        let mut a = ifs.regular_letters();
        a.extend(self.allowed.iter().map(|&k| ifs.singular_letter(k)));
        a
    }

    fn validate(&self, ifs: &Ifs) -> Result<(), DimensionError> {
        let nj = ifs.n_singular();
        if self.start >= nj || self.end >= nj || self.allowed.iter().any(|&k| k >= nj) {
            return Err(DimensionError::BadSpec("rank-one index out of range".into()));
        }
        if self.allowed.contains(&self.start) || self.allowed.contains(&self.end) {
            return Err(DimensionError::BadSpec("anchors must not be in the allowed set".into()));
        }
        Ok(())
    }
}

/// `|⟨r, v⟩|`, with values inside the rounding error of the dot product
/// flushed to zero so that exact orthogonality survives trig roundoff.
fn resolved_dot(r: Vec2, v: Vec2) -> f64 {
    let x = r.dot(v).abs();
    if x <= 8.0 * f64::EPSILON * r.norm() * v.norm() {
        0.0
    } else {
        x
    }
}

fn rank_one_parts(ifs: &Ifs, j: usize) -> (f64, Vec2, Vec2) {
    match ifs.maps[ifs.singular_letter(j)].linear {
        Linear::RankOne(r) => (r.scale, r.image, r.row),
        Linear::Full(_) => panic!("singular index {j} is not rank one"),
    }
}

fn h_sum_raw(ifs: &Ifs, spec: &HSumSpec, s: f64, prune: f64) -> WordSum {
    let maps = ifs.linears();
    let (rho, _, w) = rank_one_parts(ifs, spec.start);
    let (_, v, _) = rank_one_parts(ifs, spec.end);
    let visitor = CondVisitor { maps: &maps, start: w * rho, end: v, s, prune };
    word_sum(&visitor, &spec.alphabet(ifs), spec.max_len)
}

/// Truncated `H_{J′,j′,j″}(s)`.
pub fn h_sum(ifs: &Ifs, spec: &HSumSpec, s: f64, prune: f64) -> Result<f64, DimensionError> {
    spec.validate(ifs)?;
    Ok(h_sum_raw(ifs, spec, s, prune).total)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SjLower {
    pub value: f64,
    /// Every term vanished: the kernel swallows all returns to `Im(A_j)`.
    pub degenerate: bool,
}

/// `s⁽ⁿ⁾`: root of the truncated conditional-norm sum, a lower bound for `s_j`.
pub fn solve_sj_lower(ifs: &Ifs, j: usize, max_len: usize, tol: f64, prune: f64) -> SjLower {
    let spec = HSumSpec::for_sj(ifs, j, max_len);
    let g = |s: f64| h_sum_raw(ifs, &spec, s, prune).total;
    let degenerate = g(0.0) == 0.0;
    let (lo, _) = bisect_decreasing(g, 1.0, 0.0, MAX_DIM, tol);
    SjLower { value: lo, degenerate }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SjUpper {
    pub value: f64,
    pub certified: bool,
}

/// `θ(s) = Σ_{k∈alphabet} ‖A_k‖ˢ`.
fn theta(ifs: &Ifs, alphabet: &[usize], s: f64) -> f64 {
    alphabet.iter().map(|&k| ifs.maps[k].norm().powf(s)).sum()
}

/// Upper bound for `s_j` from the truncated sum plus a geometric tail, valid
/// where `θ(s) < 1`. Falls back to an Aitken extrapolation of the lower
/// sequence, flagged uncertified, when no such `s` certifies.
pub fn solve_sj_upper(ifs: &Ifs, j: usize, max_len: usize, tol: f64, prune: f64) -> SjUpper {
    let spec = HSumSpec::for_sj(ifs, j, max_len);
    let alphabet = spec.alphabet(ifs);
    let (rho, _, _) = rank_one_parts(ifs, j);
    let bound = |s: f64| {
        let th = theta(ifs, &alphabet, s);
        if th >= 1.0 {
            return f64::INFINITY;
        }
        let part = h_sum_raw(ifs, &spec, s, prune);
        part.total + part.pruned / (1.0 - th) + rho.powf(s) * th.powi(max_len as i32 + 1) / (1.0 - th)
    };
    let th_ok = theta(ifs, &alphabet, MAX_DIM) < 1.0;
    if th_ok && bound(MAX_DIM) <= 1.0 {
        let s_theta = bisect_decreasing(|s| theta(ifs, &alphabet, s), 1.0, 0.0, MAX_DIM, tol).1;
        let (_, hi) = bisect_decreasing(bound, 1.0, s_theta, MAX_DIM, tol);
        return SjUpper { value: hi, certified: true };
    }
    SjUpper { value: aitken_upper(ifs, j, max_len, tol, prune), certified: false }
}

fn aitken_upper(ifs: &Ifs, j: usize, n: usize, tol: f64, prune: f64) -> f64 {
    let x2 = solve_sj_lower(ifs, j, n, tol, prune).value;
    if n < 2 {
        return x2;
    }
    let x1 = solve_sj_lower(ifs, j, n - 1, tol, prune).value;
    let x0 = solve_sj_lower(ifs, j, n - 2, tol, prune).value;
    let d = x2 - 2.0 * x1 + x0;
    let extrapolated = if d.abs() > 1e-15 { x2 - (x2 - x1).powi(2) / d } else { x2 };
    extrapolated.clamp(x2, MAX_DIM)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerJ {
    pub j: usize,
    pub lower: f64,
    pub upper: f64,
    pub certified: bool,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffinityReport {
    pub bracket: DimensionBracket,
    pub s_reg: DimensionBracket,
    pub per_j: Vec<PerJ>,
    pub irreducible: bool,
}

/// Bracket for the affinity dimension from the per-`j` brackets.
///
/// With an irreducible regular part all `s_j` coincide, so the per-`j`
/// brackets are intersected. Otherwise the lower bound is the largest lower
/// bound and the upper bound is `min(1, max(s_reg, max_j s_j))`.
pub fn affinity_dimension(ifs: &Ifs, opts: &SolverOptions) -> Result<AffinityReport, DimensionError> {
    let s_reg = if ifs.n_regular() == 0 {
        DimensionBracket { lower: 0.0, upper: 0.0, depth: opts.depth, certified_upper: true }
    } else {
        s_reg_bracket(ifs, opts)?
    };
    if s_reg.lower >= 1.0 {
        return Err(DimensionError::SregTooLarge { lower: s_reg.lower });
    }
    let mats: Vec<_> = ifs.maps[..ifs.n_regular()].iter().map(|m| m.linear.to_dense()).collect();
    let irreducible = check_irreducibility(&mats) == Irreducibility::Irreducible;

    let per_j: Vec<PerJ> = (0..ifs.n_singular())
        .map(|j| {
            let lo = solve_sj_lower(ifs, j, opts.depth, opts.tol, opts.prune);
            let hi = solve_sj_upper(ifs, j, opts.depth, opts.tol, opts.prune);
            PerJ {
                j,
                lower: lo.value.min(1.0),
                upper: hi.value.min(1.0),
                certified: hi.certified,
                degenerate: lo.degenerate,
            }
        })
        .collect();

    let lower = per_j.iter().map(|p| p.lower).fold(s_reg.lower, f64::max);
    let all_certified = per_j.iter().all(|p| p.certified);
    let (mut upper, certified) = if irreducible {
        let certified: Vec<f64> = per_j.iter().filter(|p| p.certified).map(|p| p.upper).collect();
        if certified.is_empty() {
            (per_j.iter().map(|p| p.upper).fold(1.0, f64::min), false)
        } else {
            (certified.into_iter().fold(1.0, f64::min), true)
        }
    } else {
        (per_j.iter().map(|p| p.upper).fold(s_reg.upper, f64::max).min(1.0), all_certified)
    };
    if lower > upper + opts.tol {
        if certified {
            return Err(DimensionError::Inconsistent { lower, upper });
        }
        upper = lower;
    }
    upper = upper.max(lower);
    Ok(AffinityReport {
        bracket: DimensionBracket { lower, upper, depth: opts.depth, certified_upper: certified },
        s_reg,
        per_j,
        irreducible,
    })
}

/// Bracket for the affinity dimension of the invertible sub-system.
///
/// Upper: [`pressure_upper_root`] at `opts.depth`. Lower: root of
/// `Σ_{|ī|=n} α₂(A_ī)ˢ = 1`, valid because `φˢ(AB) ≥ φˢ(A)·α₂(B)ˢ`.
pub fn s_reg_bracket(ifs: &Ifs, opts: &SolverOptions) -> Result<DimensionBracket, DimensionError> {
    let regs: Vec<Linear> = ifs.maps[..ifs.n_regular()].iter().map(|m| m.linear).collect();
    if regs.is_empty() {
        return Err(DimensionError::EmptyRegular);
    }
    let n = opts.depth.max(1);
    check_budget(regs.len(), n, opts.budget)?;
    let upper = pressure_upper_root(&regs, n, opts.tol, opts.budget)?;
    let g = |s: f64| product_sum(&regs, n, n, |m| m.singular_values().1.powf(s));
    let lower = bisect_decreasing(g, 1.0, 0.0, MAX_DIM, opts.tol).0.min(upper);
    Ok(DimensionBracket { lower, upper, depth: n, certified_upper: true })
}

/// Root of `Σ|λ_k|ˢ = 1` for nonzero ratios `|λ_k| < 1`; 0 for a single map.
pub fn similarity_dimension_1d(ratios: &[f64], tol: f64) -> f64 {
    let r: Vec<f64> = ratios.iter().map(|x| x.abs()).filter(|&x| x > 0.0).collect();
    let g = |s: f64| r.iter().map(|x| x.powf(s)).sum::<f64>();
    if g(0.0) <= 1.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    while g(hi) > 1.0 && hi < 1e6 {
        hi *= 2.0;
    }
    let (lo, hi) = bisect_decreasing(g, 1.0, 0.0, hi, tol);
    0.5 * (lo + hi)
}

/// Empirical constant of quasi-multiplicativity:
/// `min_{ī, i, j} max_{j̄∈I*, |j̄|≤K} ‖A_i A_ī A_j̄ | Im A_j‖ / ‖A_ī‖`
/// over the sampled regular words `ī` and rank-one indices `i, j`.
pub fn quasi_multiplicativity_probe(ifs: &Ifs, k: usize, sample_words: &[Vec<usize>]) -> f64 {
    let regs: Vec<usize> = ifs.regular_letters();
    let mut extensions: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        layer = layer
            .iter()
            .flat_map(|w| regs.iter().map(move |&l| w.iter().copied().chain([l]).collect()))
            .collect();
        extensions.extend(layer.iter().cloned());
    }
    let product = |w: &[usize]| w.iter().fold(Linear::IDENTITY, |acc, &l| acc.mul(&ifs.maps[l].linear));
    let mut floor = f64::INFINITY;
    for word in sample_words {
        let a_i = product(word);
        let denom = a_i.norm();
        for i in 0..ifs.n_singular() {
            let (rho_i, _, w_i) = rank_one_parts(ifs, i);
            for j in 0..ifs.n_singular() {
                let (_, v_j, _) = rank_one_parts(ifs, j);
                let best = extensions
                    .iter()
                    .map(|e| rho_i * resolved_dot(w_i, a_i.apply(product(e).apply(v_j))) / denom)
                    .fold(0.0, f64::max);
                floor = floor.min(best);
            }
        }
    }
    floor
}
