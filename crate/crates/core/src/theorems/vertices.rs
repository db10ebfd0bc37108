//! Kepler vertices, nested osculating orbits and intersection counts.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::curves::{dual_curve, osculating_orbit, polar_jet, ParametricCurve};
use crate::error::{Error, Result};
use crate::minkowski::Causal;
use crate::orbit::{KeplerOrbit, OrbitClass};

/// Default number of grid points for vertex detection.
pub const VERTEX_GRID: usize = 2048;
/// Grid for sampling-based comparisons of two orbits.
const ORBIT_GRID: usize = 4096;

/// Parameters where the curve has third-order contact with its osculating
/// Kepler orbit: the critical points of the curvature of the dual curve.
pub fn kepler_vertices(curve: &ParametricCurve) -> Result<Vec<f64>> {
    kepler_vertices_with_grid(curve, VERTEX_GRID)
}

pub fn kepler_vertices_with_grid(curve: &ParametricCurve, grid: usize) -> Result<Vec<f64>> {
    if grid < 8 {
        return Err(Error::TooFewPoints { needed: 8, got: grid });
    }
    let dual = dual_curve(curve)?;
    let ts = dual.grid(grid);
    let kappa: Vec<f64> = ts.iter().map(|&t| dual.curvature(t)).collect();
    let mean = kappa.iter().map(|k| k.abs()).sum::<f64>() / grid as f64;
    let spread = kappa.iter().map(|k| (k - kappa[0]).abs()).fold(0.0, f64::max);
    if spread <= 1e-9 * mean.max(1e-300) {
        return Err(Error::DegenerateCurve);
    }
    let g: Vec<f64> = ts.iter().map(|&t| dual.curvature_derivative(t)).collect();
    let (start, end) = curve.interval();
    let period = end - start;
    let pairs = if curve.is_closed() { grid } else { grid - 1 };
    let mut out = Vec::new();
    for i in 0..pairs {
        let j = (i + 1) % grid;
        let (lo, hi) = (ts[i], if j == 0 { ts[0] + period } else { ts[j] });
        if (g[i] > 0.0) != (g[j] > 0.0) {
            let root = bisect(|t| dual.curvature_derivative(t), lo, hi, g[i] > 0.0);
            out.push(if curve.is_closed() { wrap(root, start, period) } else { root });
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

fn wrap(t: f64, start: f64, period: f64) -> f64 {
    start + (t - start).rem_euclid(period)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, lo_positive: bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Whether two orbits are disjoint with one focal region `a x + b y + c r < 1`
/// inside the other, decided by the sign of `ρ₁ − ρ₂` on a dense grid of
/// directions from the focus. Directions with `ρ ≤ 0` leave the region
/// unbounded, so the test applies to every class.
pub fn nested(o1: &KeplerOrbit, o2: &KeplerOrbit) -> Result<bool> {
    let diff = rho_gap(o1, o2);
    let scale = o1.c().max(o2.c());
    let min = diff.iter().copied().fold(f64::INFINITY, f64::min);
    let max = diff.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(min > 1e-12 * scale || max < -1e-12 * scale)
}

fn rho_gap(o1: &KeplerOrbit, o2: &KeplerOrbit) -> Vec<f64> {
    (0..ORBIT_GRID)
        .map(|i| {
            let theta = 2.0 * PI * i as f64 / ORBIT_GRID as f64;
            o1.rho(theta) - o2.rho(theta)
        })
        .collect()
}

fn ellipse_gap(o1: &KeplerOrbit, o2: &KeplerOrbit) -> Result<Vec<f64>> {
    if o1.class() != OrbitClass::Ellipse || o2.class() != OrbitClass::Ellipse {
        return Err(Error::NotEllipse);
    }
    Ok(rho_gap(o1, o2))
}

/// Number of common points of two ellipses counted by sampling: sign changes
/// of `ρ₁ − ρ₂` around the focus, or one when the orbits touch without
/// crossing.
pub fn intersection_count(o1: &KeplerOrbit, o2: &KeplerOrbit) -> Result<u8> {
    let diff = ellipse_gap(o1, o2)?;
    let n = diff.len();
    let changes = (0..n).filter(|&i| (diff[i] > 0.0) != (diff[(i + 1) % n] > 0.0)).count();
    if changes > 0 {
        return Ok(changes.min(u8::MAX as usize) as u8);
    }
    let scale = o1.c().max(o2.c());
    let min_abs = diff.iter().map(|d| d.abs()).fold(f64::INFINITY, f64::min);
    Ok(if min_abs <= 1e-6 * scale { 1 } else { 0 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaitKneserReport {
    pub parameters: Vec<f64>,
    pub orbits: Vec<KeplerOrbit>,
    pub pairs: usize,
    pub nested_pairs: usize,
    pub timelike_chords: usize,
    /// Largest `norm2` of a dual chord; negative when all are timelike.
    pub max_chord_norm2: f64,
}

impl TaitKneserReport {
    pub fn holds(&self) -> bool {
        self.nested_pairs == self.pairs && self.timelike_chords == self.pairs
    }
}

/// Osculating orbits at `k` interior points of the arc `(t₀, t₁)`, of any
/// class, checked pairwise for nesting and for timelike dual chords. The arc
/// must be free of Kepler vertices.
pub fn tait_kneser(curve: &ParametricCurve, arc: (f64, f64), k: usize) -> Result<TaitKneserReport> {
    let (t0, t1) = arc;
    if !(t1 > t0) || k < 2 {
        return Err(Error::InvalidArgument(format!("arc ({t0}, {t1}) with {k} points")));
    }
    let (start, end) = curve.interval();
    let period = end - start;
    let len = t1 - t0;
    let margin = 1e-9 * period;
    for v in kepler_vertices(curve)? {
        let offset = if curve.is_closed() { (v - t0).rem_euclid(period) } else { v - t0 };
        if offset > margin && offset < len - margin {
            return Err(Error::VertexInArc { t: v });
        }
    }
    let parameters: Vec<f64> = (1..=k).map(|i| t0 + len * i as f64 / (k + 1) as f64).collect();
    let orbits = parameters.iter().map(|&t| osculating_orbit(&polar_jet(curve, t)?)).collect::<Result<Vec<_>>>()?;
    let (mut pairs, mut nested_pairs, mut timelike_chords) = (0, 0, 0);
    let mut max_chord_norm2 = f64::NEG_INFINITY;
    for i in 0..k {
        for j in i + 1..k {
            pairs += 1;
            if nested(&orbits[i], &orbits[j])? {
                nested_pairs += 1;
            }
            let chord = orbits[j].dual() - orbits[i].dual();
            max_chord_norm2 = max_chord_norm2.max(chord.norm2());
            if chord.classify()? == Causal::Timelike {
                timelike_chords += 1;
            }
        }
    }
    Ok(TaitKneserReport { parameters, orbits, pairs, nested_pairs, timelike_chords, max_chord_norm2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::pencil_classify;
    use crate::orbit::PlanePoint;
    use crate::theorems::curves::trig_rho;

    fn offset_circle() -> ParametricCurve {
        ParametricCurve::circle(PlanePoint::new(0.6, 0.0), 1.0).unwrap()
    }

    #[test]
    fn offset_circle_has_four_vertices_on_the_axes() {
        let vs = kepler_vertices(&offset_circle()).unwrap();
        let a = (-0.6f64).acos();
        let expected = [0.0, a, PI, 2.0 * PI - a];
        assert_eq!(vs.len(), 4, "{vs:?}");
        for e in expected {
            let hit = vs.iter().any(|v| {
                let d = (v - e).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d) <= 1e-6
            });
            assert!(hit, "no vertex near {e}: {vs:?}");
        }
    }

    #[test]
    fn centered_circle_is_degenerate() {
        let c = ParametricCurve::circle(PlanePoint::new(0.0, 0.0), 1.0).unwrap();
        assert_eq!(kepler_vertices(&c), Err(Error::DegenerateCurve));
    }

    #[test]
    fn centered_ellipse_has_at_least_four_vertices() {
        let c = ParametricCurve::ellipse(PlanePoint::new(0.0, 0.0), 2.0, 1.0).unwrap();
        assert!(kepler_vertices(&c).unwrap().len() >= 4);
    }

    #[test]
    fn vertices_are_zeros_of_the_polar_contact_function() {
        // For r = 1/ρ(θ), third-order contact with a Kepler orbit means ρ‴ + ρ′ = 0.
        let h = [(0.0, 0.0), (0.08, 0.03), (-0.02, 0.04)];
        let c = ParametricCurve::trig(1.0, &h).unwrap();
        let vs = kepler_vertices(&c).unwrap();
        assert!(vs.len() >= 4);
        for t in vs {
            let [_, r1, _, r3] = trig_rho(1.0, &h, t);
            assert!((r1 + r3).abs() <= 1e-8, "at {t}: {}", r1 + r3);
        }
    }

    #[test]
    fn tait_kneser_between_adjacent_vertices() {
        let c = offset_circle();
        let a = (-0.6f64).acos();
        let r = tait_kneser(&c, (0.0, a), 12).unwrap();
        assert_eq!(r.pairs, 66);
        assert!(r.holds(), "{r:?}");
        assert!(r.max_chord_norm2 < 0.0);
        assert!(matches!(tait_kneser(&c, (-0.5, 0.5), 12), Err(Error::VertexInArc { .. })));
    }

    #[test]
    fn nesting_examples() {
        let o = |a, b, c| KeplerOrbit::new(a, b, c).unwrap();
        assert!(nested(&o(0.0, 0.0, 1.0), &o(0.0, 0.0, 2.0)).unwrap());
        assert!(!nested(&o(0.0, 0.0, 1.0), &o(0.5, 0.0, 1.0)).unwrap());
        // A parabola crossing the unit circle, and two confocal hyperbolas.
        assert!(!nested(&o(0.0, 0.0, 1.0), &o(1.0, 0.0, 1.0)).unwrap());
        assert!(nested(&o(2.0, 0.0, 1.0), &o(2.0, 0.0, 0.5)).unwrap());
        assert!(!nested(&o(2.0, 0.0, 1.0), &o(-2.0, 0.0, 1.0)).unwrap());
        assert_eq!(intersection_count(&o(0.0, 0.0, 1.0), &o(1.0, 0.0, 1.0)), Err(Error::NotEllipse));
    }

    #[test]
    fn tait_kneser_on_every_arc() {
        let c = offset_circle();
        let vs = kepler_vertices(&c).unwrap();
        for i in 0..vs.len() {
            let t1 = if i + 1 == vs.len() { vs[0] + 2.0 * PI } else { vs[i + 1] };
            let r = tait_kneser(&c, (vs[i], t1), 8).unwrap();
            assert!(r.holds(), "arc {i}: {r:?}");
        }
    }

    #[test]
    fn sampled_counts_match_pencil_type() {
        let o = |a, b, c| KeplerOrbit::new(a, b, c).unwrap();
        for (p, q) in [
            (o(0.0, 0.0, 1.0), o(0.0, 0.0, 2.0)),
            (o(0.0, 0.0, 1.0), o(0.5, 0.0, 1.0)),
            (o(0.0, 0.0, 1.0), o(0.5, 0.0, 1.5)),
            (o(0.2, 0.1, 1.0), o(-0.3, 0.4, 1.1)),
        ] {
            let predicted = pencil_classify(p.dual(), q.dual()).unwrap().common_points;
            assert_eq!(intersection_count(&p, &q).unwrap(), predicted, "{p} {q}");
        }
    }
}
