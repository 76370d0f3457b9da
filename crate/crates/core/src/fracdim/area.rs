//! Area of the `eps`-neighbourhood of a polyline.
//!
//! The neighbourhood is the union of one stadium per segment (plus the
//! filled core). It is sampled on horizontal lines spaced `eps/16` apart:
//! each stadium meets a line in one interval, computed exactly, and the
//! union length on each line times the spacing gives the area.

use super::boxcount::thinned;
use super::curve::{Core, SpiralCurve};
use crate::error::{Error, Result};

/// Lines are spaced `eps / ROWS_PER_EPS` apart.
const ROWS_PER_EPS: f64 = 16.0;

type Seg = ((f64, f64), (f64, f64));

/// `{x : dist((x, y), seg) < eps}` as `(lo, hi)`, if nonempty. The stadium
/// is convex, so this is the hull of its pieces: the two end discs and the
/// strip along the segment.
fn stadium_row(seg: &Seg, y: f64, eps: f64) -> Option<(f64, f64)> {
    let (a, b) = *seg;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in [a, b] {
        let dy = y - p.1;
        if dy.abs() < eps {
            let w = (eps * eps - dy * dy).sqrt();
            lo = lo.min(p.0 - w);
            hi = hi.max(p.0 + w);
        }
    }
    let (ex, ey) = (b.0 - a.0, b.1 - a.1);
    let len = ex.hypot(ey);
    if len > 0.0 {
        let (ux, uy) = (ex / len, ey / len);
        // Offset across the segment: (x − a.x)(−uy) + (y − a.y)ux ∈ (−eps, eps).
        // Offset along it: (x − a.x)ux + (y − a.y)uy ∈ [0, len].
        let (mut l, mut h) = (f64::NEG_INFINITY, f64::INFINITY);
        let mut clip = |coef: f64, base: f64, min: f64, max: f64| -> bool {
            if coef == 0.0 {
                return base >= min && base <= max;
            }
            let (t0, t1) = ((min - base) / coef, (max - base) / coef);
            l = l.max(t0.min(t1));
            h = h.min(t0.max(t1));
            true
        };
        let dy = y - a.1;
        let ok = clip(-uy, dy * ux, -eps, eps) && clip(ux, dy * uy, 0.0, len);
        if ok && l < h {
            lo = lo.min(a.0 + l);
            hi = hi.max(a.0 + h);
        }
    }
    (lo < hi).then_some((lo, hi))
}

fn neighbourhood_area(segs: &[Seg], core: Option<&Core<'_>>, eps: f64) -> f64 {
    let h = eps / ROWS_PER_EPS;
    let row_of = |y: f64| (y / h - 0.5).ceil() as i64;
    // Each segment touches the lines with index in [first, last].
    let mut order: Vec<(i64, i64, u32)> = segs
        .iter()
        .enumerate()
        .map(|(n, s)| {
            let (y0, y1) = (s.0 .1.min(s.1 .1), s.0 .1.max(s.1 .1));
            (row_of(y0 - eps), row_of(y1 + eps) - 1, n as u32)
        })
        .collect();
    order.sort_unstable();
    let scan = core.map(|c| c.scanline(h, (0.0, 0.0)));

    let mut first = order.first().map_or(0, |o| o.0);
    let mut last = order.iter().map(|o| o.1).max().unwrap_or(-1);
    if let Some(sc) = &scan {
        if let Some((a, b)) = sc.row_range() {
            first = first.min(a);
            last = last.max(b);
        }
    }

    let mut active: Vec<(i64, u32)> = Vec::new();
    let mut next = 0;
    let mut spans: Vec<(f64, f64)> = Vec::new();
    let mut total = 0.0;
    for m in first..=last {
        while next < order.len() && order[next].0 <= m {
            active.push((order[next].1, order[next].2));
            next += 1;
        }
        active.retain(|a| a.0 >= m);
        let y = (m as f64 + 0.5) * h;
        spans.clear();
        spans.extend(
            active
                .iter()
                .filter_map(|a| stadium_row(&segs[a.1 as usize], y, eps)),
        );
        if let Some(sc) = &scan {
            spans.extend(sc.row(m).chunks_exact(2).map(|p| (p[0], p[1])));
        }
        total += union_length(&mut spans);
    }
    total * h
}

fn union_length(spans: &mut [(f64, f64)]) -> f64 {
    if spans.is_empty() {
        return 0.0;
    }
    spans.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut len = 0.0;
    let (mut lo, mut hi) = spans[0];
    for &(a, b) in &spans[1..] {
        if a > hi {
            len += hi - lo;
            lo = a;
            hi = b;
        } else {
            hi = hi.max(b);
        }
    }
    len + hi - lo
}

/// Segments of `curve` that remain at scale `eps` (with the core's closing
/// segment), after thinning the vertices.
fn visible_segments(curve: &SpiralCurve, core: Option<&Core<'_>>, eps: f64) -> Vec<Seg> {
    let last = core.map_or(curve.len() - 1, |c| c.hi);
    let mut segs = Vec::new();
    if last == 0 {
        segs.push((curve.point(0), curve.point(0)));
    }
    let mut prev = curve.point(0);
    for p in thinned(curve, last, eps).into_iter().skip(1) {
        segs.push((prev, p));
        prev = p;
    }
    if let Some(c) = core {
        segs.push(c.closing_segment());
    }
    segs
}

pub(crate) fn area_with_core(curve: &SpiralCurve, eps: f64) -> f64 {
    let core = curve.core(eps);
    let segs = visible_segments(curve, core.as_ref(), eps);
    neighbourhood_area(&segs, core.as_ref(), eps)
}

/// Area of `{p : dist(p, polyline) < eps}`, to within about 2%.
pub fn eps_area(points: &[(f64, f64)], eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::BadParameter(format!("eps must be positive, got {eps}")));
    }
    if points.is_empty() {
        return Ok(0.0);
    }
    Ok(area_with_core(&SpiralCurve::polyline(points), eps))
}
