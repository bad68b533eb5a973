//! Zero set of `Im T_n` by marching squares.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pell::TnTupleConfig;

pub type Polyline = Vec<Complex64>;

/// Axis-aligned rectangle of the `z`-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    /// Window symmetric about the real axis that holds `[-1, 1]`, `a3` and `a4`
    /// with a 25% margin.
    pub fn around(cfg: &TnTupleConfig) -> Window {
        let a3 = cfg.a3();
        let re_lo = (-1.0f64).min(-a3.re.abs());
        let re_hi = 1.0f64.max(a3.re.abs());
        let im = a3.im.abs().max(0.5);
        let pad_re = 0.25 * (re_hi - re_lo);
        let pad_im = 0.25 * im;
        Window {
            re_min: re_lo - pad_re,
            re_max: re_hi + pad_re,
            im_min: -(im + pad_im),
            im_max: im + pad_im,
        }
    }

    fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }
}

/// Edge identifier: `(vertical, i, j)` with node `(i, j)` as the lower-left end.
type EdgeKey = (u8, usize, usize);

/// Zero contours of a sampled scalar field.
///
/// `field(z)` may return `None` to mask a node; cells touching a masked node
/// are skipped. Saddle cells are resolved with an extra sample at the cell centre.
pub fn zero_contours<F>(mut field: F, window: Window, resolution: usize) -> Vec<Polyline>
where
    F: FnMut(Complex64) -> Option<f64>,
{
    let nx = resolution;
    let ny = resolution;
    let dx = (window.re_max - window.re_min) / nx as f64;
    let dy = (window.im_max - window.im_min) / ny as f64;
    let node = |i: usize, j: usize| Complex64::new(window.re_min + dx * i as f64, window.im_min + dy * j as f64);
    let mut values = vec![None; (nx + 1) * (ny + 1)];
    for j in 0..=ny {
        for i in 0..=nx {
            values[j * (nx + 1) + i] = field(node(i, j)).filter(|v| v.is_finite());
        }
    }
    let value = |i: usize, j: usize| values[j * (nx + 1) + i];

    let crossing = |a: (usize, usize), b: (usize, usize), fa: f64, fb: f64| {
        let t = fa / (fa - fb);
        node(a.0, a.1) + (node(b.0, b.1) - node(a.0, a.1)) * t
    };

    let mut points: BTreeMap<EdgeKey, Complex64> = BTreeMap::new();
    let mut links: BTreeMap<EdgeKey, Vec<EdgeKey>> = BTreeMap::new();
    let link = |a: EdgeKey, b: EdgeKey, links: &mut BTreeMap<EdgeKey, Vec<EdgeKey>>| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };

    for j in 0..ny {
        for i in 0..nx {
            let (Some(f00), Some(f10), Some(f11), Some(f01)) =
                (value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1))
            else {
                continue;
            };
            // edges: bottom, right, top, left
            let edges: [(EdgeKey, (usize, usize), (usize, usize), f64, f64); 4] = [
                ((0, i, j), (i, j), (i + 1, j), f00, f10),
                ((1, i + 1, j), (i + 1, j), (i + 1, j + 1), f10, f11),
                ((0, i, j + 1), (i, j + 1), (i + 1, j + 1), f01, f11),
                ((1, i, j), (i, j), (i, j + 1), f00, f01),
            ];
            let mut hits: Vec<EdgeKey> = Vec::with_capacity(4);
            for &(key, a, b, fa, fb) in &edges {
                if (fa < 0.0) != (fb < 0.0) {
                    points.entry(key).or_insert_with(|| crossing(a, b, fa, fb));
                    hits.push(key);
                }
            }
            match hits.len() {
                2 => link(hits[0], hits[1], &mut links),
                4 => {
                    // saddle: the centre sample decides which corners are joined
                    let centre = field(node(i, j) + Complex64::new(0.5 * dx, 0.5 * dy))
                        .unwrap_or(0.25 * (f00 + f10 + f11 + f01));
                    if (centre < 0.0) == (f00 < 0.0) {
                        // f00 joins the centre: cut off corners 10 and 01
                        link(hits[0], hits[1], &mut links);
                        link(hits[2], hits[3], &mut links);
                    } else {
                        link(hits[0], hits[3], &mut links);
                        link(hits[1], hits[2], &mut links);
                    }
                }
                _ => {}
            }
        }
    }

    chain(&points, &links)
}

/// Joins linked crossing points into polylines, open chains first.
fn chain(points: &BTreeMap<EdgeKey, Complex64>, links: &BTreeMap<EdgeKey, Vec<EdgeKey>>) -> Vec<Polyline> {
    let mut used: BTreeMap<(EdgeKey, EdgeKey), bool> = BTreeMap::new();
    let edge_used = |a: EdgeKey, b: EdgeKey, used: &mut BTreeMap<(EdgeKey, EdgeKey), bool>| {
        let key = if a <= b { (a, b) } else { (b, a) };
        let hit = used.get(&key).copied().unwrap_or(false);
        if !hit {
            used.insert(key, true);
        }
        hit
    };
    let mut out = Vec::new();
    let starts: Vec<EdgeKey> = links
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, _)| *k)
        .chain(links.keys().copied())
        .collect();
    for start in starts {
        let mut line = vec![points[&start]];
        let mut cur = start;
        loop {
            let next = links[&cur].iter().copied().find(|&nb| !edge_used(cur, nb, &mut used));
            match next {
                Some(nb) => {
                    line.push(points[&nb]);
                    cur = nb;
                }
                None => break,
            }
        }
        if line.len() >= 2 {
            out.push(line);
        }
    }
    out
}

/// `T_n^{-1}(R)` inside `window`, as polylines of the zero set of `Im T_n`.
///
/// Nodes where `T_n` cannot be evaluated are masked.
pub fn trace_real_preimage(cfg: &TnTupleConfig, window: Window, resolution: usize) -> Result<Vec<Polyline>> {
    if resolution < 64 {
        return Err(Error::Domain("contouring needs a resolution of at least 64"));
    }
    if !(window.contains(Complex64::new(-1.0, 0.0)) && window.contains(Complex64::new(1.0, 0.0)) && window.contains(cfg.a3())) {
        return Err(Error::Domain("window must contain [-1, 1] and a3"));
    }
    // an even resolution keeps grid rows off the real axis of a symmetric window
    let res = resolution + resolution % 2;
    Ok(zero_contours(|z| cfg.tn_eval(z).ok().map(|t| t.im), window, res))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pell::build_config;

    #[test]
    fn circle_contour_is_closed() {
        let w = Window {
            re_min: -2.0,
            re_max: 2.0,
            im_min: -2.0,
            im_max: 2.0,
        };
        let lines = zero_contours(|z| Some(z.norm_sqr() - 1.0), w, 64);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert!((l[0] - l[l.len() - 1]).norm() < 1e-12);
        for p in l {
            assert!((p.norm() - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn saddle_of_hyperbola() {
        let w = Window {
            re_min: -1.0,
            re_max: 1.0,
            im_min: -1.0,
            im_max: 1.0,
        };
        // two branches of the hyperbola xy = -1e-3
        let lines = zero_contours(|z| Some(z.re * z.im + 1e-3), w, 65);
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn preimage_contains_real_axis_and_is_symmetric() {
        let cfg = build_config(8, 2, 0.7, 1e-12).unwrap();
        let w = Window::around(&cfg);
        let lines = trace_real_preimage(&cfg, w, 64).unwrap();
        let on_axis: Vec<f64> = lines.iter().flatten().filter(|p| p.im.abs() < 1e-9).map(|p| p.re).collect();
        let dx = (w.re_max - w.re_min) / 64.0;
        let mut xs = on_axis.clone();
        xs.sort_by(|a, b| a.total_cmp(b));
        assert!(xs[0] < w.re_min + 1.5 * dx && *xs.last().unwrap() > w.re_max - 1.5 * dx);
        for pair in xs.windows(2) {
            assert!(pair[1] - pair[0] < 2.5 * dx);
        }
        // every vertex has a mirror vertex
        let all: Vec<Complex64> = lines.iter().flatten().copied().collect();
        for p in &all {
            assert!(all.iter().any(|q| (q - p.conj()).norm() < 1e-8), "{p}");
        }
        // a branch passes through z*
        let near_star = all.iter().any(|p| (p - Complex64::new(cfg.z_star(), 0.0)).norm() < 2.0 * dx);
        assert!(near_star);
    }
}
