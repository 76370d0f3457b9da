//! Grid-cell counting.

use super::curve::SpiralCurve;
use crate::error::{Error, Result};

/// Packs a cell index into a sortable key.
#[inline]
pub(crate) fn key(i: i64, j: i64) -> u64 {
    (((j + (1 << 31)) as u64) << 32) | ((i + (1 << 31)) as u64 & 0xffff_ffff)
}

#[inline]
pub(crate) fn unkey(k: u64) -> (i64, i64) {
    (
        ((k & 0xffff_ffff) as i64) - (1 << 31),
        ((k >> 32) as i64) - (1 << 31),
    )
}

/// Appends every half-open cell of side `eps` (grid shifted by `anchor`)
/// met by segment `p→q`. Exact corner passes add one extra neighbour.
pub(crate) fn segment_cells(p: (f64, f64), q: (f64, f64), eps: f64, anchor: (f64, f64), out: &mut Vec<u64>) {
    let gx0 = (p.0 - anchor.0) / eps;
    let gy0 = (p.1 - anchor.1) / eps;
    let gx1 = (q.0 - anchor.0) / eps;
    let gy1 = (q.1 - anchor.1) / eps;
    let (mut i, mut j) = (gx0.floor() as i64, gy0.floor() as i64);
    let (i1, j1) = (gx1.floor() as i64, gy1.floor() as i64);
    let push = |out: &mut Vec<u64>, k: u64| {
        if out.last() != Some(&k) {
            out.push(k);
        }
    };
    push(out, key(i, j));
    if i == i1 && j == j1 {
        return;
    }
    let (dx, dy) = (gx1 - gx0, gy1 - gy0);
    let (si, sj) = (dx.signum() as i64, dy.signum() as i64);
    let next = |g: f64, c: i64, s: i64| if s > 0 { (c + 1) as f64 - g } else { g - c as f64 };
    let mut tx = if dx != 0.0 {
        next(gx0, i, si) / dx.abs()
    } else {
        f64::INFINITY
    };
    let mut ty = if dy != 0.0 {
        next(gy0, j, sj) / dy.abs()
    } else {
        f64::INFINITY
    };
    let (ddx, ddy) = (1.0 / dx.abs(), 1.0 / dy.abs());
    let steps = (i1 - i).abs() + (j1 - j).abs();
    for _ in 0..steps {
        if tx < ty {
            i += si;
            tx += ddx;
        } else if ty < tx {
            j += sj;
            ty += ddy;
        } else {
            push(out, key(i + si, j));
            i += si;
            j += sj;
            tx += ddx;
            ty += ddy;
        }
        push(out, key(i, j));
        if i == i1 && j == j1 {
            break;
        }
    }
    push(out, key(i1, j1));
}

/// Vertices `0..=last` of `curve`, thinned for scale `eps` (all of them
/// when `eps` is 0). A run of vertices is replaced by its chord while the
/// chord is at most `eps` and `chord·turn/8`, with `turn` the total tangent
/// turning along the run, stays below `eps/64`.
pub(crate) fn thinned(curve: &SpiralCurve, last: usize, eps: f64) -> Vec<(f64, f64)> {
    let angle = |a: (f64, f64), b: (f64, f64)| (a.0 * b.1 - a.1 * b.0).atan2(a.0 * b.0 + a.1 * b.1).abs();
    let mut out = vec![curve.point(0)];
    let mut q = curve.point(0);
    let mut prev = q;
    let mut dir: Option<(f64, f64)> = None;
    let mut turn = 0.0;
    for i in 1..=last {
        let p = curve.point(i);
        let d = (p.0 - prev.0, p.1 - prev.1);
        let t = dir.map_or(turn, |o| turn + angle(o, d));
        let chord = (p.0 - q.0).hypot(p.1 - q.1);
        if chord > eps || chord * t > eps / 8.0 {
            if prev != q {
                out.push(prev);
                q = prev;
            }
            turn = 0.0;
            dir = Some(d);
            if d.0.hypot(d.1) > eps {
                out.push(p);
                q = p;
                dir = None;
            }
        } else {
            turn = t;
            dir = Some(d);
        }
        prev = p;
    }
    if (out.len() == 1 || *out.last().unwrap() != prev) && last > 0 {
        out.push(prev);
    }
    out
}

/// Sorted unique cells met by the polyline `pts[0..=last]`, thinned for
/// scale `thin`.
pub(crate) fn curve_cells(
    curve: &SpiralCurve,
    last: usize,
    eps: f64,
    anchor: (f64, f64),
    thin: f64,
) -> Vec<u64> {
    let mut out = Vec::new();
    let mut prev = curve.point(0);
    segment_cells(prev, prev, eps, anchor, &mut out);
    for p in thinned(curve, last, thin).into_iter().skip(1) {
        segment_cells(prev, p, eps, anchor, &mut out);
        prev = p;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Cells of side `eps` met by `curve` and its filled core, on the grid
/// through `anchor`. Core cells are those whose centre lies inside.
pub(crate) fn count_with_core(curve: &SpiralCurve, eps: f64, anchor: (f64, f64)) -> u64 {
    let core = curve.core(eps);
    let last = core.as_ref().map_or(curve.len() - 1, |c| c.hi);
    let mut cells = curve_cells(curve, last, eps, anchor, eps);
    match core {
        None => cells.len() as u64,
        Some(core) => {
            let (p, q) = core.closing_segment();
            let mut extra = Vec::new();
            segment_cells(p, q, eps, anchor, &mut extra);
            cells.extend(extra);
            cells.sort_unstable();
            cells.dedup();
            let scan = core.scanline(eps, anchor);
            let outside = cells
                .iter()
                .filter(|&&k| {
                    let (i, j) = unkey(k);
                    !scan.cell_inside(i, j)
                })
                .count() as u64;
            scan.inside + outside
        }
    }
}

/// Mean count over the grid through the origin and the one shifted by
/// `(eps/2, eps/2)`.
pub(crate) fn averaged_count(curve: &SpiralCurve, eps: f64) -> f64 {
    let a = count_with_core(curve, eps, (0.0, 0.0));
    let b = count_with_core(curve, eps, (0.5 * eps, 0.5 * eps));
    0.5 * (a + b) as f64
}

/// Number of half-open grid cells of side `eps` (grid through the origin)
/// met by the polyline, with every segment covered conservatively.
pub fn box_count(points: &[(f64, f64)], eps: f64) -> Result<u64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::BadParameter(format!("eps must be positive, got {eps}")));
    }
    if points.is_empty() {
        return Ok(0);
    }
    let curve = SpiralCurve::polyline(points);
    Ok(curve_cells(&curve, points.len() - 1, eps, (0.0, 0.0), 0.0).len() as u64)
}
