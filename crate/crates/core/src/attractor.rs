//! Attractor sampling, box counting and cylinder rendering.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ifs::{compose_word, enumerate_words, AffineMap2, Ifs, IfsFamily, ParamPoint};
use crate::linalg::Vec2;
use crate::separation::{image_body, swept_segment, BodyKind, ConvexBody};

pub const DEFAULT_BURN_IN: usize = 64;
pub const DEFAULT_CYLINDER_BUDGET: u64 = 1 << 20;
/// Points per independently seeded chaos-game stream.
const CHUNK: usize = 1 << 16;

#[derive(Debug, Error, PartialEq)]
pub enum AttractorError {
    #[error("{words} words exceed the budget of {budget}")]
    BudgetExceeded { words: f64, budget: u64 },
    #[error("need at least 3 scales, got k in [{k_min}, {k_max}]")]
    TooFewScales { k_min: u32, k_max: u32 },
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("levels must be 1, 2 or 3, got {0}")]
    BadLevels(usize),
    #[error("depth must be at least 1")]
    ZeroDepth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CloudMethod {
    Chaos,
    Cylinder,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Vec2>,
    pub seed: u64,
    pub method: CloudMethod,
    pub depth_or_count: usize,
}

impl PointCloud {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,y")?;
        for p in &self.points {
            writeln!(w, "{:.11e},{:.11e}", p.x, p.y)?;
        }
        Ok(())
    }
}

/// Uniform random map choices starting at the origin. The cloud is built in
/// chunks of 2¹⁶ points; chunk `c` uses stream `c` of the seeded generator
/// and its own burn-in, so chunks can run in parallel.
pub fn chaos_game(ifs: &Ifs, n_points: usize, seed: u64, burn_in: usize) -> PointCloud {
    let n_maps = ifs.len();
    let chunks = n_points.div_ceil(CHUNK);
    let parts: Vec<Vec<Vec2>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(n_points - c * CHUNK);
            let mut x = Vec2::ZERO;
            for _ in 0..burn_in {
                x = ifs.maps[rng.gen_range(0..n_maps)].apply(x);
            }
            (0..len)
                .map(|_| {
                    x = ifs.maps[rng.gen_range(0..n_maps)].apply(x);
                    x
                })
                .collect()
        })
        .collect();
    PointCloud { points: parts.concat(), seed, method: CloudMethod::Chaos, depth_or_count: n_points }
}

/// Drives `maps` with an explicit choice sequence from the origin and keeps
/// the points after `burn_in`. Used to couple two systems on one random stream.
pub fn orbit(maps: &[AffineMap2], choices: &[usize], burn_in: usize) -> Vec<Vec2> {
    let mut x = Vec2::ZERO;
    let mut out = Vec::with_capacity(choices.len().saturating_sub(burn_in));
    for (step, &k) in choices.iter().enumerate() {
        x = maps[k].apply(x);
        if step >= burn_in {
            out.push(x);
        }
    }
    out
}

/// `f_ī(0)` for every word of length `depth`, in lexicographic order.
pub fn cylinder_points(ifs: &Ifs, depth: usize, budget: u64) -> Result<PointCloud, AttractorError> {
    if depth == 0 {
        return Err(AttractorError::ZeroDepth);
    }
    let words = (ifs.len() as f64).powi(depth as i32);
    if words > budget as f64 {
        return Err(AttractorError::BudgetExceeded { words, budget });
    }
    let mut points = Vec::with_capacity(words as usize);
    fn walk(ifs: &Ifs, f: &AffineMap2, left: usize, out: &mut Vec<Vec2>) {
        if left == 0 {
            out.push(f.translation);
            return;
        }
        for m in &ifs.maps {
            walk(ifs, &f.compose(m), left - 1, out);
        }
    }
    walk(ifs, &AffineMap2::IDENTITY, depth, &mut points);
    Ok(PointCloud { points, seed: 0, method: CloudMethod::Cylinder, depth_or_count: depth })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCountSeries {
    pub ks: Vec<u32>,
    /// `ε = 2⁻ᵏ`.
    pub scales: Vec<f64>,
    pub counts: Vec<u64>,
    /// Scales `ks[fit.0..fit.1]` entered the fit; later ones were saturated.
    pub fit: (usize, usize),
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl BoxCountSeries {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,count")?;
        for (k, n) in self.ks.iter().zip(&self.counts) {
            writeln!(w, "{k},{n}")?;
        }
        Ok(())
    }
}

/// Grid cell of `x` at scale `2⁻ᵏ`; a point on an edge goes to the lower cell.
#[inline]
fn cell(x: f64, scale: f64) -> i64 {
    (x * scale).ceil() as i64 - 1
}

pub fn occupied_cells(points: &[Vec2], k: u32) -> u64 {
    let scale = (k as f64).exp2();
    let mut cells: Vec<(i64, i64)> = points.iter().map(|p| (cell(p.x, scale), cell(p.y, scale))).collect();
    cells.par_sort_unstable();
    cells.dedup();
    cells.len() as u64
}

/// Least-squares slope of `log₂ N(2⁻ᵏ)` against `k` over `k_min..=k_max`.
///
/// Scales with at least `n/16` occupied cells are treated as saturated by the
/// finite sample and left out of the fit, keeping at least three scales.
pub fn box_dim_estimate(cloud: &PointCloud, k_min: u32, k_max: u32) -> Result<BoxCountSeries, AttractorError> {
    if k_max < k_min + 2 {
        return Err(AttractorError::TooFewScales { k_min, k_max });
    }
    if cloud.points.is_empty() {
        return Err(AttractorError::EmptyCloud);
    }
    let ks: Vec<u32> = (k_min..=k_max).collect();
    let counts: Vec<u64> = ks.iter().map(|&k| occupied_cells(&cloud.points, k)).collect();
    let saturation = (cloud.points.len() as u64 / 16).max(1);
    let first_saturated = counts.iter().position(|&n| n >= saturation && n > 1).unwrap_or(ks.len());
    let end = first_saturated.max(3);
    let xs: Vec<f64> = ks[..end].iter().map(|&k| k as f64).collect();
    let ys: Vec<f64> = counts[..end].iter().map(|&n| (n as f64).log2()).collect();
    let (slope, intercept, r_squared) = linear_fit(&xs, &ys);
    Ok(BoxCountSeries {
        scales: ks.iter().map(|&k| (-(k as f64)).exp2()).collect(),
        ks,
        counts,
        fit: (0, end),
        slope,
        intercept,
        r_squared,
    })
}

fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, intercept, r2)
}

/// Nearest-neighbour lookup on a uniform grid.
struct GridIndex {
    points: Vec<Vec2>,
    cell: f64,
    origin: Vec2,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    extent: i64,
}

impl GridIndex {
    fn new(points: &[Vec2]) -> Self {
        // orbits of rank-one systems repeat points exactly; duplicates only slow the buckets
        let mut points = points.to_vec();
        points.sort_unstable_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        points.dedup();
        let (lo, hi) = points.iter().fold((Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)), |(lo, hi), p| {
            (Vec2::new(lo.x.min(p.x), lo.y.min(p.y)), Vec2::new(hi.x.max(p.x), hi.y.max(p.y)))
        });
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-300);
        let per_side = (points.len() as f64).sqrt().ceil().max(1.0);
        let cell = span / per_side;
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(Self::key(lo, cell, *p)).or_default().push(i);
        }
        Self { points, cell, origin: lo, buckets, extent: per_side as i64 + 1 }
    }

    fn key(origin: Vec2, cell: f64, p: Vec2) -> (i64, i64) {
        (((p.x - origin.x) / cell).floor() as i64, ((p.y - origin.y) / cell).floor() as i64)
    }

    fn nearest(&self, q: Vec2) -> f64 {
        let (cx, cy) = Self::key(self.origin, self.cell, q);
        let mut best = f64::INFINITY;
        let mut ring = 0i64;
        loop {
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    if let Some(ids) = self.buckets.get(&(cx + dx, cy + dy)) {
                        for &i in ids {
                            best = best.min((self.points[i] - q).norm());
                        }
                    }
                }
            }
            // every unvisited cell is at least `ring · cell` away
            if best == 0.0 || best <= ring as f64 * self.cell {
                return best;
            }
            if ring > cx.abs().max(cy.abs()) + self.extent {
                return best;
            }
            ring += 1;
        }
    }
}

/// `sup_{p∈a} d(p, b)`.
pub fn directed_hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    let index = GridIndex::new(b);
    a.par_iter().map(|&p| index.nearest(p)).reduce(|| 0.0, f64::max)
}

pub fn hausdorff_distance(a: &[Vec2], b: &[Vec2]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Style {
    Region,
    Cylinder,
    Swept,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DrawItem {
    pub level: usize,
    pub word: Vec<usize>,
    pub body: ConvexBody,
    pub style: Style,
}

/// Vector drawing of `U`, its cylinder images and the swept segments.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Drawing {
    pub items: Vec<DrawItem>,
}

impl Drawing {
    pub fn count(&self, level: usize, style: Style) -> usize {
        self.items.iter().filter(|i| i.level == level && i.style == style).count()
    }

    pub fn to_svg(&self, size_px: u32) -> String {
        let pts = self.items.iter().flat_map(|i| i.body.vertices.iter());
        let (lo, hi) = pts.fold(
            (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
            |(lo, hi), p| (Vec2::new(lo.x.min(p.x), lo.y.min(p.y)), Vec2::new(hi.x.max(p.x), hi.y.max(p.y))),
        );
        let pad = 0.05 * (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let (x0, y0) = (lo.x - pad, lo.y - pad);
        let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
        let stroke = 0.002 * w.max(h);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size_px}" height="{size_px}" viewBox="{x0:.6} {:.6} {w:.6} {h:.6}">"#,
            -(y0 + h)
        );
        let _ = writeln!(s, r#"<g transform="scale(1,-1)" stroke-width="{stroke:.6}">"#);
        let colors = ["#222222", "#1f77b4", "#2ca02c", "#9467bd"];
        for item in &self.items {
            let (color, fill, dash) = match item.style {
                Style::Region => ("#000000", "none", ""),
                Style::Cylinder => (colors[item.level.min(3)], colors[item.level.min(3)], ""),
                Style::Swept => ("#d62728", "none", " stroke-dasharray=\"0.02,0.01\""),
            };
            match item.body.kind {
                BodyKind::Polygon => {
                    let pts: Vec<String> = item.body.vertices.iter().map(|p| format!("{:.6},{:.6}", p.x, p.y)).collect();
                    let opacity = if item.style == Style::Cylinder { 0.35 } else { 1.0 };
                    let _ = writeln!(
                        s,
                        r#"<polygon points="{}" stroke="{color}" fill="{fill}" fill-opacity="{opacity}"{dash}/>"#,
                        pts.join(" ")
                    );
                }
                BodyKind::Segment => {
                    let (a, b) = (item.body.vertices[0], item.body.vertices[1]);
                    let _ = writeln!(
                        s,
                        r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{color}"{dash}/>"#,
                        a.x, a.y, b.x, b.y
                    );
                }
            }
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

/// `U`, every image `f_ī(U)` with `1 ≤ |ī| ≤ levels`, and the level-1 swept
/// segments of the rank-one maps.
pub fn render_levels(fam: &IfsFamily, p: &ParamPoint, u: &ConvexBody, levels: usize) -> Result<Drawing, AttractorError> {
    if !(1..=3).contains(&levels) {
        return Err(AttractorError::BadLevels(levels));
    }
    let ifs = fam.instantiate(p).expect("parameter arity checked by caller");
    let mut items = vec![DrawItem { level: 0, word: vec![], body: u.clone(), style: Style::Region }];
    for word in enumerate_words(ifs.len(), levels).filter(|w| !w.is_empty()) {
        let body = image_body(&compose_word(&ifs, &word), u);
        items.push(DrawItem { level: word.len(), word, body, style: Style::Cylinder });
    }
    for (j, s) in fam.singular().iter().enumerate() {
        items.push(DrawItem { level: 1, word: vec![fam.singular_letter(j)], body: swept_segment(s, u), style: Style::Swept });
    }
    Ok(Drawing { items })
}
