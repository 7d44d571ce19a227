//! Fourier-Wigner and Fourier-Kirillov transforms.
//!
//! `F_W(A)(g) = tr(A D pi(g))` lands on the exponential lattice and
//! `F_W^{-1}(f) = sum_i f(g_i) pi(g_i^{-1}) D w_i` is its exact discrete adjoint.
//! `F_KO(f)(Y) = sum_i f(exp X_i) sqrt(Theta(X_i)) e^{2 pi i <Y, X_i>} dX / sqrt(|Pf| Delta)`
//! evaluated on the dual lattice restricted to the orbit, so that
//! `F_KO F_KO^{-1} = id` holds to rounding.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::groupfn::{Chart, GroupFunction, GroupGrid, LatticeAxis};
use crate::groups::{DualVec, GroupPoint};
use crate::hilbert::KernelOperator;
use crate::rep::Representation;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FkoMode {
    Fft,
    Direct,
}

#[derive(Clone, Debug)]
pub struct TransformContext {
    pub rep: Arc<Representation>,
    pub exp: Arc<GroupGrid>,
    pub orbit: Arc<GroupGrid>,
    pub pf: f64,
}

/// Centered DFT `out_k = sum_i x_i e^{s 2 pi i (i - c)(k - c) / M}` along one axis of a
/// row-major array.
fn centered_dft(data: &mut [C64], shape: &[usize], axis: usize, sign: f64, planner: &mut FftPlanner<f64>) {
    let m = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let c = ((m - 1) / 2) as f64;
    let dir = if sign > 0.0 { FftDirection::Inverse } else { FftDirection::Forward };
    let fft = planner.plan_fft(m, dir);
    let tw = |j: usize| C64::from_polar(1.0, -sign * 2.0 * PI * j as f64 * c / m as f64);
    let pre: Vec<C64> = (0..m).map(tw).collect();
    let cc = C64::from_polar(1.0, sign * 2.0 * PI * c * c / m as f64);
    let post: Vec<C64> = pre.iter().map(|p| p * cc).collect();
    let mut line = vec![C64::new(0.0, 0.0); m];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * m * inner + i;
            for j in 0..m {
                line[j] = data[base + j * inner] * pre[j];
            }
            fft.process(&mut line);
            for j in 0..m {
                data[base + j * inner] = line[j] * post[j];
            }
        }
    }
}

impl TransformContext {
    pub fn new(rep: Arc<Representation>, exp: Arc<GroupGrid>) -> Result<Self> {
        if exp.chart != Chart::Exponential || exp.group != rep.group {
            return Err(Error::GridMismatch("context needs an exponential lattice of the same group".into()));
        }
        let orbit = Arc::new(GroupGrid::orbit_dual(&exp, rep.sign)?);
        let pf = rep.group.pfaffian(rep.sign)?;
        if pf == 0.0 {
            return Err(Error::Ineligible("degenerate orbit base point".into()));
        }
        Ok(TransformContext { rep, exp, orbit, pf })
    }

    /// Builds a context from symmetric axis specs `(step, count)`.
    pub fn from_axes(rep: Representation, axes: &[(f64, usize)]) -> Result<Self> {
        let la = axes.iter().map(|&(h, m)| LatticeAxis::symmetric(h, m)).collect::<Result<Vec<_>>>()?;
        let exp = GroupGrid::exponential(rep.group, la)?;
        Self::new(Arc::new(rep), Arc::new(exp))
    }

    fn check_op(&self, a: &KernelOperator) -> Result<()> {
        if *a.grid != *self.rep.carrier {
            return Err(Error::GridMismatch("operator is not on the representation carrier".into()));
        }
        Ok(())
    }

    /// `tr(A D pi(g))` at one element.
    pub fn fw_at(&self, a: &KernelOperator, g: &GroupPoint) -> C64 {
        let w = a.grid.weight();
        let d = &self.rep.duflo;
        let mut s = C64::new(0.0, 0.0);
        self.rep.for_each_entry(g, |k, j, v| s += a.kernel[(j, k)] * d[k] * v);
        s * w
    }

    /// `F_W(A)` sampled on an arbitrary lattice.
    pub fn fourier_wigner_on(&self, a: &KernelOperator, grid: &Arc<GroupGrid>) -> Result<GroupFunction> {
        self.check_op(a)?;
        use rayon::prelude::*;
        let values = grid.elements.par_iter().map(|g| self.fw_at(a, g)).collect();
        GroupFunction::new(grid.clone(), values)
    }

    pub fn fourier_wigner(&self, a: &KernelOperator) -> Result<GroupFunction> {
        self.fourier_wigner_on(a, &self.exp)
    }

    /// Second route to `F_W`: interpolate the kernel along the orbit of the carrier point,
    /// `sum_s K_A(s . g, s) D(s) chi_g(s) w`.
    pub fn fourier_wigner_kernel(&self, a: &KernelOperator) -> Result<GroupFunction> {
        self.check_op(a)?;
        let rep = &self.rep;
        let c = &rep.carrier;
        let w = c.weight();
        let sg = -2.0 * PI * rep.sign.factor();
        let pts: Vec<[f64; 2]> = (0..c.len()).map(|k| c.point(k)).collect();
        let group = rep.group;
        use rayon::prelude::*;
        let values = self
            .exp
            .elements
            .par_iter()
            .map(|g| {
                let mut s = C64::new(0.0, 0.0);
                for (k, p) in pts.iter().enumerate() {
                    let (src, phase) = match group {
                        crate::groups::Group::Affine => ([g[0] * p[0], 0.0], sg * g[1] * p[0]),
                        _ => {
                            let rb = p[0].sqrt();
                            ([p[0] * g[0], p[1] + g[1] * rb], sg * (p[0] * g[2] + rb * p[1] * g[3]))
                        }
                    };
                    let kv: C64 = c.stencil(&src).into_iter().map(|(j, wt)| a.kernel[(j, k)] * wt).sum();
                    s += kv * rep.duflo[k] * C64::from_polar(1.0, phase);
                }
                s * w
            })
            .collect();
        GroupFunction::new(self.exp.clone(), values)
    }

    /// `F_W^{-1}(f) = sum_i f(g_i) pi(g_i^{-1}) D w_i` over the lattice of `f`.
    pub fn fourier_wigner_inv(&self, f: &GroupFunction) -> Result<KernelOperator> {
        if f.grid.group != self.rep.group {
            return Err(Error::GridMismatch("function lives on another group".into()));
        }
        let grid = &f.grid;
        let group = grid.group;
        let n = self.rep.carrier.len();
        let d = &self.rep.duflo;
        let mut p = DMatrix::<C64>::zeros(n, n);
        for i in 0..grid.len() {
            let c = f.values[i] * grid.weights[i];
            if c == C64::new(0.0, 0.0) {
                continue;
            }
            let gi = group.inv(&grid.elements[i]);
            self.rep.for_each_entry(&gi, |k, j, v| p[(k, j)] += c * v * d[j]);
        }
        KernelOperator::from_matrix(self.rep.carrier.clone(), p)
    }

    fn check_exp(&self, f: &GroupFunction) -> Result<()> {
        if *f.grid != *self.exp {
            return Err(Error::GridMismatch("expected a function on the exponential lattice".into()));
        }
        Ok(())
    }

    fn check_orbit(&self, f: &GroupFunction) -> Result<()> {
        if *f.grid != *self.orbit {
            return Err(Error::GridMismatch("expected a function on the orbit lattice".into()));
        }
        Ok(())
    }

    /// Flat index in the full dual lattice for each orbit-lattice point.
    fn orbit_embedding(&self) -> Vec<usize> {
        let k = self.rep.group.orbit_axis().expect("eligible group");
        let shape = self.exp.shape();
        let half = (shape[k] - 1) / 2;
        let offset = match self.rep.sign {
            crate::groups::OrbitSign::Plus => half + 1,
            crate::groups::OrbitSign::Minus => 0,
        };
        (0..self.orbit.len())
            .map(|i| {
                let mut idx = self.orbit.unflatten(i);
                idx[k] += offset;
                let mut flat = 0;
                for d in 0..shape.len() {
                    flat = flat * shape[d] + idx[d];
                }
                flat
            })
            .collect()
    }

    fn cell(&self) -> f64 {
        self.exp.axes.iter().map(|a| a.step).product()
    }

    fn dual_cell(&self) -> f64 {
        self.orbit.axes.iter().map(|a| a.step).product()
    }

    pub fn fourier_kirillov(&self, f: &GroupFunction, mode: FkoMode) -> Result<GroupFunction> {
        self.check_exp(f)?;
        match mode {
            FkoMode::Fft => {
                let shape = self.exp.shape();
                let cell = self.cell();
                let mut data: Vec<C64> = (0..f.values.len())
                    .map(|i| f.values[i] * (self.exp.weights[i] / cell).sqrt() * cell)
                    .collect();
                let mut planner = FftPlanner::new();
                for ax in 0..shape.len() {
                    centered_dft(&mut data, &shape, ax, 1.0, &mut planner);
                }
                let emb = self.orbit_embedding();
                let pf = self.pf.abs();
                let values = emb
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| data[j] / (pf * self.orbit.modular[i]).sqrt())
                    .collect();
                GroupFunction::new(self.orbit.clone(), values)
            }
            FkoMode::Direct => {
                let ys: Vec<DualVec> = (0..self.orbit.len()).map(|i| self.orbit.dual_point(i)).collect();
                let values = self.fourier_kirillov_at(f, &ys)?;
                GroupFunction::new(self.orbit.clone(), values)
            }
        }
    }

    /// Direct quadrature of `F_KO(f)` at arbitrary orbit points.
    pub fn fourier_kirillov_at(&self, f: &GroupFunction, ys: &[DualVec]) -> Result<Vec<C64>> {
        self.check_exp(f)?;
        let group = self.rep.group;
        let sign = self.rep.sign;
        for y in ys {
            if !group.on_orbit(y, sign) {
                return Err(Error::OffOrbit(format!("{:?}", y.as_slice())));
            }
        }
        let cell = self.cell();
        let src: Vec<C64> = (0..f.values.len())
            .map(|i| f.values[i] * (self.exp.weights[i] / cell).sqrt() * cell)
            .collect();
        let axes = &self.exp.axes;
        let shape = self.exp.shape();
        let pf = self.pf.abs();
        use rayon::prelude::*;
        let out = ys
            .par_iter()
            .map(|y| {
                let mut buf = src.clone();
                let mut len = buf.len();
                for d in (0..shape.len()).rev() {
                    let m = shape[d];
                    let ph: Vec<C64> =
                        (0..m).map(|j| C64::from_polar(1.0, 2.0 * PI * y[d] * axes[d].node(j))).collect();
                    let outer = len / m;
                    for o in 0..outer {
                        let mut s = C64::new(0.0, 0.0);
                        for j in 0..m {
                            s += buf[o * m + j] * ph[j];
                        }
                        buf[o] = s;
                    }
                    len = outer;
                }
                let g = group.orbit_inverse(y, sign).expect("checked above");
                buf[0] / (pf * group.modular(&g)).sqrt()
            })
            .collect();
        Ok(out)
    }

    /// Direct quadrature of `F_KO(f)` at group elements, via `kappa`.
    pub fn fourier_kirillov_at_points(&self, f: &GroupFunction, gs: &[GroupPoint]) -> Result<Vec<C64>> {
        let ys = gs
            .iter()
            .map(|g| self.rep.group.orbit_map(g, self.rep.sign))
            .collect::<Result<Vec<_>>>()?;
        self.fourier_kirillov_at(f, &ys)
    }

    pub fn fourier_kirillov_inv(&self, f: &GroupFunction) -> Result<GroupFunction> {
        self.check_orbit(f)?;
        let shape = self.exp.shape();
        let mut data = vec![C64::new(0.0, 0.0); self.exp.len()];
        let pf = self.pf.abs();
        let dc = self.dual_cell();
        for (i, &j) in self.orbit_embedding().iter().enumerate() {
            data[j] = f.values[i] * (pf * self.orbit.modular[i]).sqrt() * dc;
        }
        let mut planner = FftPlanner::new();
        for ax in 0..shape.len() {
            centered_dft(&mut data, &shape, ax, -1.0, &mut planner);
        }
        let cell = self.cell();
        let values = (0..data.len()).map(|i| data[i] / (self.exp.weights[i] / cell).sqrt()).collect();
        GroupFunction::new(self.exp.clone(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Group, OrbitSign};
    use crate::hilbert::CarrierGrid;
    use crate::signals::gaussian_log;

    fn ctx() -> TransformContext {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 128).unwrap());
        let rep = Representation::new(Group::Affine, c, OrbitSign::Plus).unwrap();
        TransformContext::from_axes(rep, &[(1.0 / 32.0, 33), (1.0 / 8.0, 33)]).unwrap()
    }

    #[test]
    fn fko_inverse_is_exact() {
        let t = ctx();
        let f = t.orbit.sample_coords(|y| C64::new((-(y[0] * y[0] + (y[1] - 1.0).powi(2))).exp(), y[0]));
        let g = t.fourier_kirillov(&t.fourier_kirillov_inv(&f).unwrap(), FkoMode::Fft).unwrap();
        assert!(g.rel_dist(&f).unwrap() < 1e-12);
        let h = t.fourier_kirillov_inv(&f).unwrap();
        assert!((h.norm() - f.norm()).abs() < 1e-12 * f.norm());
    }

    #[test]
    fn fft_matches_direct() {
        let t = ctx();
        let f = t.exp.sample_coords(|x| C64::new((-(x[0] * x[0] + x[1] * x[1])).exp(), x[1]));
        let a = t.fourier_kirillov(&f, FkoMode::Fft).unwrap();
        let b = t.fourier_kirillov(&f, FkoMode::Direct).unwrap();
        assert!(a.rel_dist(&b).unwrap() < 1e-12);
        assert!(t.fourier_kirillov_at(&f, &[DualVec::new(&[0.0, -1.0])]).is_err());
    }

    #[test]
    fn fw_paths_agree() {
        let t = ctx();
        let psi = gaussian_log(&t.rep.carrier, 0.1, 0.2);
        let phi = gaussian_log(&t.rep.carrier, -0.1, 0.25);
        let a = KernelOperator::rank_one(&psi, &phi).unwrap();
        let f1 = t.fourier_wigner(&a).unwrap();
        let f2 = t.fourier_wigner_kernel(&a).unwrap();
        assert!(f1.rel_dist(&f2).unwrap() < 1e-12);
        let w = t.rep.wavelet(&psi, &phi, &t.exp).unwrap();
        let b = KernelOperator::rank_one(&psi, &t.rep.apply_duflo(&phi, -1)).unwrap();
        assert!(t.fourier_wigner(&b).unwrap().rel_dist(&w).unwrap() < 1e-12);
    }

    #[test]
    fn fw_inverse_is_adjoint() {
        let t = ctx();
        let psi = gaussian_log(&t.rep.carrier, 0.1, 0.2);
        let phi = gaussian_log(&t.rep.carrier, -0.1, 0.25);
        let a = KernelOperator::rank_one(&psi, &phi).unwrap();
        let f = t.exp.sample_coords(|x| C64::new((-(x[0] * x[0] + x[1] * x[1] / 4.0)).exp(), x[0]));
        let lhs = t.fourier_wigner(&a).unwrap().inner(&f).unwrap();
        let rhs = a.hs_inner(&t.fourier_wigner_inv(&f).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0));
    }
}
