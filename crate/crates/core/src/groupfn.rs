//! Sampled functions on a group.
//!
//! A [`GroupGrid`] is a uniform lattice in one of two charts. The exponential
//! chart samples `exp(X)` for `X` on a lattice symmetric about zero, with right
//! Haar weight `Theta(X) dX`. The orbit chart samples `kappa^{-1}(Y)` for `Y` on
//! the dual lattice restricted to the open orbit, with weight
//! `|Pf| Delta(kappa^{-1} Y) dY`. Fourier-Wigner output lives on the
//! exponential chart, symbols (Fourier-Kirillov output) on the orbit chart.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{AlgebraVec, DualVec, Group, GroupPoint, OrbitSign, MAX_DIM};
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Exponential,
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeAxis {
    pub min: f64,
    pub step: f64,
    pub count: usize,
}

impl LatticeAxis {
    /// Odd number of nodes `k step`, `|k| <= (count - 1) / 2`.
    pub fn symmetric(step: f64, count: usize) -> Result<Self> {
        if count % 2 == 0 || !(step > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "symmetric axis needs odd count and positive step, got {} / {}",
                count, step
            )));
        }
        Ok(LatticeAxis { min: -(((count - 1) / 2) as f64) * step, step, count })
    }

    pub fn node(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }

    pub fn max(&self) -> f64 {
        self.node(self.count - 1)
    }
}

#[derive(Clone, Debug)]
pub struct GroupGrid {
    pub group: Group,
    pub chart: Chart,
    pub sign: OrbitSign,
    pub axes: Vec<LatticeAxis>,
    /// Group element at each lattice point.
    pub elements: Vec<GroupPoint>,
    /// Right Haar quadrature weight at each lattice point.
    pub weights: Vec<f64>,
    /// Modular function at each lattice point.
    pub modular: Vec<f64>,
}

impl PartialEq for GroupGrid {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.chart == other.chart
            && self.sign == other.sign
            && self.axes == other.axes
    }
}

/// Catmull-Rom weights for nodes `-1, 0, 1, 2` at fractional offset `s`.
pub fn catmull_rom(s: f64) -> [f64; 4] {
    let s2 = s * s;
    let s3 = s2 * s;
    [
        (-s3 + 2.0 * s2 - s) / 2.0,
        (3.0 * s3 - 5.0 * s2 + 2.0) / 2.0,
        (-3.0 * s3 + 4.0 * s2 + s) / 2.0,
        (s3 - s2) / 2.0,
    ]
}

/// Snap positions within `1e-9` of a node, so grid-compatible points are exact.
pub fn split_position(p: f64) -> (i64, f64) {
    let r = p.round();
    if (p - r).abs() < 1e-9 {
        (r as i64, 0.0)
    } else {
        let k = p.floor();
        (k as i64, p - k)
    }
}

impl GroupGrid {
    pub fn exponential(group: Group, axes: Vec<LatticeAxis>) -> Result<Self> {
        if axes.len() != group.dim() {
            return Err(Error::DimensionMismatch { expected: group.dim(), got: axes.len() });
        }
        for a in &axes {
            if a.count % 2 == 0 || (a.min + a.max()).abs() > 1e-9 * a.step {
                return Err(Error::InvalidGrid("exponential lattice must be symmetric".into()));
            }
        }
        let cell: f64 = axes.iter().map(|a| a.step).product();
        let mut grid = GroupGrid {
            group,
            chart: Chart::Exponential,
            sign: OrbitSign::Plus,
            axes,
            elements: Vec::new(),
            weights: Vec::new(),
            modular: Vec::new(),
        };
        for i in 0..grid.len() {
            let x = grid.algebra_point(i);
            let g = group.exp(&x);
            grid.weights.push(group.theta(&x) * cell);
            grid.modular.push(group.modular(&g));
            grid.elements.push(g);
        }
        Ok(grid)
    }

    /// Dual lattice of an exponential lattice restricted to the selected orbit.
    pub fn orbit_dual(exp: &GroupGrid, sign: OrbitSign) -> Result<Self> {
        if exp.chart != Chart::Exponential {
            return Err(Error::InvalidGrid("orbit lattice is built from an exponential lattice".into()));
        }
        let group = exp.group;
        let k = group.orbit_axis()?;
        let pf = group.pfaffian(sign)?.abs();
        let axes: Vec<LatticeAxis> = exp
            .axes
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let d = 1.0 / (a.count as f64 * a.step);
                let half = (a.count - 1) / 2;
                if i == k && sign == OrbitSign::Plus {
                    LatticeAxis { min: d, step: d, count: half }
                } else if i == k {
                    LatticeAxis { min: -(half as f64) * d, step: d, count: half }
                } else {
                    LatticeAxis { min: a.min / a.step * d, step: d, count: a.count }
                }
            })
            .collect();
        let cell: f64 = axes.iter().map(|a| a.step).product();
        let mut grid = GroupGrid {
            group,
            chart: Chart::Orbit,
            sign,
            axes,
            elements: Vec::new(),
            weights: Vec::new(),
            modular: Vec::new(),
        };
        for i in 0..grid.len() {
            let y = grid.dual_point(i);
            let g = group.orbit_inverse(&y, sign)?;
            let m = group.modular(&g);
            grid.weights.push(pf * m * cell);
            grid.modular.push(m);
            grid.elements.push(g);
        }
        Ok(grid)
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    /// Row-major multi-index.
    pub fn unflatten(&self, mut i: usize) -> [usize; MAX_DIM] {
        let mut idx = [0; MAX_DIM];
        for d in (0..self.dim()).rev() {
            idx[d] = i % self.axes[d].count;
            i /= self.axes[d].count;
        }
        idx
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        let mut i = 0;
        for d in 0..self.dim() {
            i = i * self.axes[d].count + idx[d];
        }
        i
    }

    /// Chart coordinates of lattice point `i`.
    pub fn coords(&self, i: usize) -> [f64; MAX_DIM] {
        let idx = self.unflatten(i);
        let mut c = [0.0; MAX_DIM];
        for d in 0..self.dim() {
            c[d] = self.axes[d].node(idx[d]);
        }
        c
    }

    pub fn algebra_point(&self, i: usize) -> AlgebraVec {
        AlgebraVec::new(&self.coords(i)[..self.dim()])
    }

    pub fn dual_point(&self, i: usize) -> DualVec {
        DualVec::new(&self.coords(i)[..self.dim()])
    }

    /// Index of `-X` (exponential chart).
    pub fn mirror(&self, i: usize) -> usize {
        let mut idx = self.unflatten(i);
        for d in 0..self.dim() {
            idx[d] = self.axes[d].count - 1 - idx[d];
        }
        self.flatten(&idx[..self.dim()])
    }

    pub fn left_weight(&self, i: usize) -> f64 {
        self.weights[i] * self.modular[i]
    }

    /// Chart coordinates of an arbitrary group element, `None` off-chart.
    pub fn chart_coords(&self, g: &GroupPoint) -> Option<[f64; MAX_DIM]> {
        let v = match self.chart {
            Chart::Exponential => self.group.log(g).ok()?.as_slice().to_vec(),
            Chart::Orbit => self.group.orbit_map(g, self.sign).ok()?.as_slice().to_vec(),
        };
        let mut c = [0.0; MAX_DIM];
        c[..v.len()].copy_from_slice(&v);
        Some(c)
    }

    /// Separable Catmull-Rom stencil at chart coordinates; entries outside the lattice are dropped.
    pub fn stencil(&self, c: &[f64; MAX_DIM]) -> Vec<(usize, f64)> {
        let d = self.dim();
        let mut base = [0i64; MAX_DIM];
        let mut w = [[0.0; 4]; MAX_DIM];
        let mut taps = [4usize; MAX_DIM];
        for k in 0..d {
            let a = &self.axes[k];
            let p = (c[k] - a.min) / a.step;
            if !p.is_finite() || p < -2.0 || p > a.count as f64 + 1.0 {
                return Vec::new();
            }
            let (i0, s) = split_position(p);
            if s == 0.0 {
                base[k] = i0;
                w[k] = [1.0, 0.0, 0.0, 0.0];
                taps[k] = 1;
            } else {
                base[k] = i0 - 1;
                w[k] = catmull_rom(s);
            }
        }
        let mut out = Vec::new();
        let total: usize = taps[..d].iter().product();
        'outer: for t in 0..total {
            let mut rem = t;
            let mut idx = [0usize; MAX_DIM];
            let mut wt = 1.0;
            for k in (0..d).rev() {
                let o = rem % taps[k];
                rem /= taps[k];
                let j = base[k] + o as i64;
                if j < 0 || j >= self.axes[k].count as i64 {
                    continue 'outer;
                }
                idx[k] = j as usize;
                wt *= w[k][o];
            }
            out.push((self.flatten(&idx[..d]), wt));
        }
        out
    }

    pub fn stencil_at(&self, g: &GroupPoint) -> Vec<(usize, f64)> {
        match self.chart_coords(g) {
            Some(c) => self.stencil(&c),
            None => Vec::new(),
        }
    }

    pub fn sample<F: Fn(&GroupPoint) -> C64>(self: &Arc<Self>, f: F) -> GroupFunction {
        GroupFunction { grid: self.clone(), values: self.elements.iter().map(f).collect() }
    }

    /// Samples a function given in chart coordinates.
    pub fn sample_coords<F: Fn(&[f64]) -> C64>(self: &Arc<Self>, f: F) -> GroupFunction {
        let d = self.dim();
        GroupFunction {
            grid: self.clone(),
            values: (0..self.len()).map(|i| f(&self.coords(i)[..d])).collect(),
        }
    }

    pub fn zeros(self: &Arc<Self>) -> GroupFunction {
        GroupFunction { grid: self.clone(), values: vec![C64::new(0.0, 0.0); self.len()] }
    }
}

#[derive(Clone, Debug)]
pub struct GroupFunction {
    pub grid: Arc<GroupGrid>,
    pub values: Vec<C64>,
}

fn same(a: &GroupGrid, b: &GroupGrid) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!("{:?} lattice vs {:?} lattice", a.chart, b.chart)))
    }
}

impl GroupFunction {
    pub fn new(grid: Arc<GroupGrid>, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(GroupFunction { grid, values })
    }

    fn with(&self, values: Vec<C64>) -> GroupFunction {
        GroupFunction { grid: self.grid.clone(), values }
    }

    pub fn integrate(&self, side: Side) -> C64 {
        let g = &self.grid;
        match side {
            Side::Right => self.values.iter().zip(&g.weights).map(|(v, w)| v * w).sum(),
            Side::Left => (0..g.len()).map(|i| self.values[i] * g.left_weight(i)).sum(),
        }
    }

    /// Weighted `L^p` norm; `p = inf` is the max over samples.
    pub fn lp_norm(&self, p: f64, side: Side) -> f64 {
        if p.is_infinite() {
            return self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        }
        let g = &self.grid;
        let s: f64 = (0..g.len())
            .map(|i| {
                let w = match side {
                    Side::Right => g.weights[i],
                    Side::Left => g.left_weight(i),
                };
                self.values[i].norm().powf(p) * w
            })
            .sum();
        s.powf(1.0 / p)
    }

    pub fn norm(&self) -> f64 {
        self.lp_norm(2.0, Side::Right)
    }

    /// `<f, g>_{L^2_r}`.
    pub fn inner(&self, other: &GroupFunction) -> Result<C64> {
        same(&self.grid, &other.grid)?;
        Ok((0..self.values.len())
            .map(|i| self.values[i] * other.values[i].conj() * self.grid.weights[i])
            .sum())
    }

    pub fn add(&self, other: &GroupFunction) -> Result<GroupFunction> {
        same(&self.grid, &other.grid)?;
        Ok(self.with(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        same(&self.grid, &other.grid)?;
        Ok(self.with(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: C64) -> GroupFunction {
        self.with(self.values.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &GroupFunction) -> Result<GroupFunction> {
        same(&self.grid, &other.grid)?;
        Ok(self.with(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect()))
    }

    /// Relative `L^2_r` distance to a reference.
    pub fn rel_dist(&self, reference: &GroupFunction) -> Result<f64> {
        Ok(self.sub(reference)?.norm() / reference.norm())
    }

    pub fn conj(&self) -> GroupFunction {
        self.with(self.values.iter().map(|v| v.conj()).collect())
    }

    /// Pointwise multiplication by `Delta^p`.
    pub fn weight_modular(&self, p: f64) -> GroupFunction {
        self.with(self.values.iter().zip(&self.grid.modular).map(|(v, m)| v * m.powf(p)).collect())
    }

    pub fn map<F: Fn(C64) -> C64>(&self, f: F) -> GroupFunction {
        self.with(self.values.iter().map(|&v| f(v)).collect())
    }

    /// Interpolated value at an arbitrary element, zero outside the lattice.
    pub fn evaluate(&self, g: &GroupPoint) -> C64 {
        self.grid.stencil_at(g).into_iter().map(|(i, w)| self.values[i] * w).sum()
    }

    /// Resamples `x -> f(h(x))` on the same lattice.
    pub fn pullback<H: Fn(&GroupPoint) -> GroupPoint>(&self, h: H) -> GroupFunction {
        self.with(self.grid.elements.iter().map(|x| self.evaluate(&h(x))).collect())
    }

    /// `f^vee(x) = f(x^{-1})`; exact index reversal on the exponential chart.
    pub fn involution(&self) -> GroupFunction {
        match self.grid.chart {
            Chart::Exponential => {
                self.with((0..self.values.len()).map(|i| self.values[self.grid.mirror(i)]).collect())
            }
            Chart::Orbit => {
                let grp = self.grid.group;
                self.pullback(|x| grp.inv(x))
            }
        }
    }

    /// `R_y f(x) = f(x y)` or `L_y f(x) = f(y^{-1} x)`.
    pub fn translate(&self, y: &GroupPoint, side: Side) -> GroupFunction {
        let grp = self.grid.group;
        match side {
            Side::Right => self.pullback(|x| grp.mul(x, y)),
            Side::Left => {
                let yi = grp.inv(y);
                self.pullback(|x| grp.mul(&yi, x))
            }
        }
    }

    /// `(Psi_y f)(x) = f(y x y^{-1})`.
    pub fn conjugate_by(&self, y: &GroupPoint) -> GroupFunction {
        let grp = self.grid.group;
        let yi = grp.inv(y);
        self.pullback(|x| grp.mul(&grp.mul(y, x), &yi))
    }

    /// Right convolution `(f * g)(x) = sum_y f(y) g(x y^{-1}) w_r(y)`; `g` is interpolated.
    pub fn convolve(&self, g: &GroupFunction) -> Result<GroupFunction> {
        same(&self.grid, &g.grid)?;
        let grid = &self.grid;
        let grp = grid.group;
        let support: Vec<(GroupPoint, C64)> = (0..grid.len())
            .filter(|&i| self.values[i] != C64::new(0.0, 0.0))
            .map(|i| (grp.inv(&grid.elements[i]), self.values[i] * grid.weights[i]))
            .collect();
        use rayon::prelude::*;
        let values = grid
            .elements
            .par_iter()
            .map(|x| support.iter().map(|(yi, fw)| fw * g.evaluate(&grp.mul(x, yi))).sum())
            .collect();
        Ok(self.with(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn affine_grid() -> Arc<GroupGrid> {
        let axes = vec![
            LatticeAxis::symmetric(1.0 / 16.0, 65).unwrap(),
            LatticeAxis::symmetric(1.0 / 8.0, 65).unwrap(),
        ];
        Arc::new(GroupGrid::exponential(Group::Affine, axes).unwrap())
    }

    #[test]
    fn gaussian_integral() {
        let axes = vec![
            LatticeAxis::symmetric(1.0 / 16.0, 129).unwrap(),
            LatticeAxis::symmetric(1.0 / 16.0, 129).unwrap(),
        ];
        let grid = Arc::new(GroupGrid::exponential(Group::Affine, axes).unwrap());
        let f = grid.sample_coords(|x| {
            C64::new((-std::f64::consts::PI * (x[0] * x[0] + x[1] * x[1])).exp() / crate::groups::lambda(x[0]), 0.0)
        });
        assert!((f.integrate(Side::Right).re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn involution_is_exact() {
        let grid = affine_grid();
        let f = grid.sample_coords(|x| C64::new(x[0].sin(), x[1] * x[0]));
        let ff = f.involution().involution();
        assert_eq!(ff.values, f.values);
        let a = f.involution().lp_norm(1.0, Side::Right);
        let b = f.lp_norm(1.0, Side::Left);
        assert!((a - b).abs() < 1e-12 * b);
        let g = &grid.elements[17];
        let gi = &grid.elements[grid.mirror(17)];
        assert!(Group::Affine.mul(g, gi).max_abs_diff(&Group::Affine.identity()) < 1e-12);
    }

    #[test]
    fn evaluate_reproduces_nodes() {
        let grid = affine_grid();
        let f = grid.sample_coords(|x| C64::new(x[0], x[1]));
        for i in [0, 100, 2000, grid.len() - 1] {
            assert!((f.evaluate(&grid.elements[i]) - f.values[i]).norm() < 1e-12);
        }
        let e = f.conjugate_by(&Group::Affine.identity());
        assert!(e.sub(&f).unwrap().lp_norm(f64::INFINITY, Side::Right) < 1e-12);
    }

    #[test]
    fn orbit_lattice_weights() {
        let grid = affine_grid();
        let orb = GroupGrid::orbit_dual(&grid, OrbitSign::Plus).unwrap();
        assert_eq!(orb.len(), 65 * 32);
        let i = orb.len() - 1;
        let y = orb.dual_point(i);
        let g = orb.elements[i];
        assert!((g[0] - y[1]).abs() < 1e-15 && (g[1] + y[0]).abs() < 1e-15);
        assert!((orb.weights[i] - orb.axes[0].step * orb.axes[1].step / g[0]).abs() < 1e-15);
    }
}
