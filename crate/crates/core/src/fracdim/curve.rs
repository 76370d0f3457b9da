//! Polylines and spirals with a filled core.
//!
//! A finite piece of an infinite spiral misses every winding inside its last
//! one. The missing part is replaced by the region bounded by an inner
//! winding. For a given `eps` that winding is the outermost one beyond which
//! every radial gap is at most `eps/2`. Grid cells of side `eps` inside it
//! all meet the full spiral, and every point in it lies within `eps` of the
//! spiral, so box counts and neighbourhood areas do not change.

use std::f64::consts::TAU;

/// Number of rays used to sample the radial gaps.
const GAP_RAYS: usize = 64;
/// Windings whose gap is at most `FILL_RATIO·eps` are filled in.
const FILL_RATIO: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct SpiralCurve {
    pub(crate) x: Vec<f64>,
    pub(crate) y: Vec<f64>,
    spiral: Option<SpiralData>,
}

#[derive(Debug, Clone)]
struct SpiralData {
    /// Angle swept since the first point, increasing.
    prog: Vec<f64>,
    phi0: f64,
    /// +1 counter-clockwise, −1 clockwise.
    orient: f64,
    /// `(progress, gap)` sorted by progress.
    gap_at: Vec<f64>,
    /// Largest gap at or after each entry of `gap_at`.
    gap_suffix_max: Vec<f64>,
    start_ray: Vec<f64>,
}

/// A closed loop of one winding, with its closing radial segment, bounding a
/// region star-shaped about the origin.
#[derive(Debug, Clone)]
pub(crate) struct Core<'a> {
    curve: &'a SpiralCurve,
    /// Vertex range `lo..=hi` of the loop.
    pub(crate) lo: usize,
    pub(crate) hi: usize,
}

impl SpiralCurve {
    /// A plain polyline, counted as is.
    pub fn polyline(points: &[(f64, f64)]) -> Self {
        Self {
            x: points.iter().map(|p| p.0).collect(),
            y: points.iter().map(|p| p.1).collect(),
            spiral: None,
        }
    }

    /// A spiral around the origin with unwrapped polar angles `phi`, which
    /// must be monotone. Gets a filled core once it has a full winding.
    pub fn spiral(x: Vec<f64>, y: Vec<f64>, phi: &[f64]) -> Self {
        assert!(x.len() == y.len() && x.len() == phi.len());
        if x.len() < 2 {
            return Self { x, y, spiral: None };
        }
        let orient = if phi[phi.len() - 1] >= phi[0] { 1.0 } else { -1.0 };
        let prog: Vec<f64> = phi.iter().map(|p| (p - phi[0]) * orient).collect();
        debug_assert!(prog.windows(2).all(|w| w[1] >= w[0]), "phi is not monotone");
        let mut s = SpiralData {
            prog,
            phi0: phi[0],
            orient,
            gap_at: Vec::new(),
            gap_suffix_max: Vec::new(),
            start_ray: Vec::new(),
        };
        s.sample_gaps(&x, &y);
        Self {
            x,
            y,
            spiral: Some(s),
        }
    }

    pub fn from_trajectory(traj: &crate::flowint::Trajectory) -> Self {
        Self::spiral(traj.x.clone(), traj.y.clone(), &traj.phi)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn point(&self, i: usize) -> (f64, f64) {
        (self.x[i], self.y[i])
    }

    pub fn is_spiral(&self) -> bool {
        self.spiral.is_some()
    }

    /// Total winding angle, 0 for plain polylines.
    pub fn winding_angle(&self) -> f64 {
        self.spiral.as_ref().map_or(0.0, |s| s.prog[s.prog.len() - 1])
    }

    /// Radii where the spiral meets the ray through its first point, outermost
    /// first (the first point itself excluded).
    pub fn start_ray_radii(&self) -> &[f64] {
        self.spiral.as_ref().map_or(&[], |s| &s.start_ray)
    }

    /// The loop used as filled core at scale `eps`, `None` when the spiral
    /// has no full winding or the curve is a plain polyline.
    pub(crate) fn core(&self, eps: f64) -> Option<Core<'_>> {
        let s = self.spiral.as_ref()?;
        let end = s.prog[s.prog.len() - 1];
        if end < TAU {
            return None;
        }
        // Outermost gap sample with everything after it small enough; the
        // gap at progress P involves the winding up to P + 2π ≤ end.
        let k = s.gap_suffix_max.partition_point(|&g| g > FILL_RATIO * eps);
        let start = if k < s.gap_at.len() {
            s.gap_at[k].min(end - TAU)
        } else {
            end - TAU
        };
        let lo = s.prog.partition_point(|&p| p < start);
        let hi = s.prog.partition_point(|&p| p <= start + TAU) - 1;
        (hi > lo + 1).then_some(Core { curve: self, lo, hi })
    }

    /// Largest deviation between the polyline and a smooth curve through its
    /// vertices, estimated from the turning angle and segment lengths.
    pub fn sagitta_estimate(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..self.len().saturating_sub(1) {
            let (ax, ay) = (self.x[i] - self.x[i - 1], self.y[i] - self.y[i - 1]);
            let (bx, by) = (self.x[i + 1] - self.x[i], self.y[i + 1] - self.y[i]);
            let (la, lb) = (ax.hypot(ay), bx.hypot(by));
            if la == 0.0 || lb == 0.0 {
                continue;
            }
            let turn = (ax * by - ay * bx).atan2(ax * bx + ay * by).abs();
            worst = worst.max(la.max(lb) * turn / 8.0);
        }
        worst
    }
}

impl SpiralData {
    fn sample_gaps(&mut self, x: &[f64], y: &[f64]) {
        let end = self.prog[self.prog.len() - 1];
        let mut samples: Vec<(f64, f64)> = Vec::new();
        for k in 0..GAP_RAYS {
            let offset = TAU * k as f64 / GAP_RAYS as f64;
            let mut radii = Vec::new();
            let mut level = offset;
            let mut i = 0;
            while level <= end {
                i += self.prog[i..].partition_point(|&p| p < level);
                if i >= self.prog.len() {
                    break;
                }
                let r = if i == 0 {
                    x[0].hypot(y[0])
                } else {
                    ray_hit(self.angle(level), (x[i - 1], y[i - 1]), (x[i], y[i]))
                };
                radii.push((level, r));
                level += TAU;
            }
            for w in radii.windows(2) {
                samples.push((w[0].0, (w[0].1 - w[1].1).abs()));
            }
            if k == 0 {
                self.start_ray = radii.iter().skip(1).map(|p| p.1).collect();
            }
        }
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        self.gap_at = samples.iter().map(|s| s.0).collect();
        let mut m: f64 = 0.0;
        let mut suffix = vec![0.0; samples.len()];
        for i in (0..samples.len()).rev() {
            m = m.max(samples[i].1);
            suffix[i] = m;
        }
        self.gap_suffix_max = suffix;
    }

    fn angle(&self, prog: f64) -> f64 {
        self.phi0 + self.orient * prog
    }
}

/// Distance from the origin to where the ray at angle `a` meets segment `p→q`
/// (clamped to the segment).
fn ray_hit(a: f64, p: (f64, f64), q: (f64, f64)) -> f64 {
    let (ux, uy) = (a.cos(), a.sin());
    let (ex, ey) = (q.0 - p.0, q.1 - p.1);
    let den = ux * ey - uy * ex;
    let s = if den.abs() > 0.0 {
        (-(ux * p.1 - uy * p.0) / den).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p.0 + s * ex).hypot(p.1 + s * ey)
}

impl Core<'_> {
    /// Closed polygon edges: the loop plus the segment back to its start.
    pub(crate) fn edges(&self) -> impl Iterator<Item = ((f64, f64), (f64, f64))> + '_ {
        let c = self.curve;
        (self.lo..self.hi)
            .map(move |i| (c.point(i), c.point(i + 1)))
            .chain(std::iter::once((c.point(self.hi), c.point(self.lo))))
    }

    /// The closing segment, which is not part of the curve itself.
    pub(crate) fn closing_segment(&self) -> ((f64, f64), (f64, f64)) {
        (self.curve.point(self.hi), self.curve.point(self.lo))
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, p: (f64, f64)) -> bool {
        let c = self.curve;
        let s = c.spiral.as_ref().expect("core of a spiral");
        let start = s.prog[self.lo];
        let rel = (s.orient * (p.1.atan2(p.0) - s.phi0) - start).rem_euclid(TAU);
        let level = start + rel;
        let i = s.prog[self.lo..=self.hi].partition_point(|&q| q <= level) + self.lo;
        let (a, b) = if i > self.hi {
            (c.point(self.hi), c.point(self.lo))
        } else if i == self.lo {
            (c.point(self.lo), c.point(self.lo))
        } else {
            (c.point(i - 1), c.point(i))
        };
        let boundary = ray_hit(p.1.atan2(p.0), a, b);
        p.0.hypot(p.1) < boundary
    }

    /// Number of cells `[i·eps + ax, …) × [j·eps + ay, …)` whose centre lies
    /// inside, together with per-row crossing lists for later lookups.
    pub(crate) fn scanline(&self, eps: f64, anchor: (f64, f64)) -> Scanline {
        let mut hits: Vec<(i64, f64)> = Vec::new();
        for (p, q) in self.edges() {
            if p.1 == q.1 {
                continue;
            }
            let (y0, y1) = (p.1.min(q.1), p.1.max(q.1));
            // Rows whose centre y_c = (j + ½)eps + ay satisfies y0 ≤ y_c < y1.
            let j0 = ((y0 - anchor.1) / eps - 0.5).ceil() as i64;
            let j1 = ((y1 - anchor.1) / eps - 0.5).ceil() as i64;
            for j in j0..j1 {
                let yc = (j as f64 + 0.5) * eps + anchor.1;
                let xc = p.0 + (yc - p.1) * (q.0 - p.0) / (q.1 - p.1);
                hits.push((j, xc));
            }
        }
        hits.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let row0 = hits.first().map_or(0, |h| h.0);
        let nrows = hits.last().map_or(0, |h| (h.0 - row0 + 1) as usize);
        let mut rows = vec![Vec::new(); nrows];
        for (j, x) in hits {
            rows[(j - row0) as usize].push(x);
        }
        let mut inside = 0u64;
        for xs in &rows {
            for pair in xs.chunks_exact(2) {
                let a = ((pair[0] - anchor.0) / eps - 0.5).ceil() as i64;
                let b = ((pair[1] - anchor.0) / eps - 0.5).ceil() as i64;
                inside += (b - a).max(0) as u64;
            }
        }
        Scanline {
            row0,
            rows,
            eps,
            anchor,
            inside,
        }
    }
}

/// Even-odd rasterisation of a core polygon at cell centres.
#[derive(Debug, Clone)]
pub(crate) struct Scanline {
    row0: i64,
    rows: Vec<Vec<f64>>,
    eps: f64,
    anchor: (f64, f64),
    pub(crate) inside: u64,
}

impl Scanline {
    /// Sorted crossing abscissae on row `j` (pairs bound the inside).
    pub(crate) fn row(&self, j: i64) -> &[f64] {
        let r = j - self.row0;
        if r < 0 || r as usize >= self.rows.len() {
            return &[];
        }
        &self.rows[r as usize]
    }

    pub(crate) fn row_range(&self) -> Option<(i64, i64)> {
        (!self.rows.is_empty()).then(|| (self.row0, self.row0 + self.rows.len() as i64 - 1))
    }

    pub(crate) fn cell_inside(&self, i: i64, j: i64) -> bool {
        let r = j - self.row0;
        if r < 0 || r as usize >= self.rows.len() {
            return false;
        }
        let xc = (i as f64 + 0.5) * self.eps + self.anchor.0;
        self.rows[r as usize].partition_point(|&x| x <= xc) % 2 == 1
    }
}
