//! Discretized carrier spaces, vectors and kernel operators.
//!
//! A carrier is a product of one or two uniform axes. Log axes sample
//! `r = e^t` on a uniform `t` grid (so the measure `dr / r` becomes `dt`),
//! linear axes sample the coordinate directly. Quadrature weights are the
//! product of the steps and therefore constant over the grid.
//!
//! Operators are stored as kernel matrices `M` with
//! `(A psi)_j = sum_k M[j, k] psi_k w`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisKind {
    Log,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub kind: AxisKind,
    pub min: f64,
    pub step: f64,
    pub count: usize,
}

impl Axis {
    pub fn log(tmin: f64, tmax: f64, count: usize) -> Self {
        Axis { kind: AxisKind::Log, min: tmin, step: (tmax - tmin) / count as f64, count }
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Axis { kind: AxisKind::Linear, min, step: (max - min) / count as f64, count }
    }

    /// Grid coordinate of sample `j` (`t` for log axes).
    pub fn node(&self, j: usize) -> f64 {
        self.min + j as f64 * self.step
    }

    /// Physical coordinate of sample `j` (`e^t` for log axes).
    pub fn point(&self, j: usize) -> f64 {
        match self.kind {
            AxisKind::Log => self.node(j).exp(),
            AxisKind::Linear => self.node(j),
        }
    }

    /// Fractional sample index of a physical coordinate.
    pub fn locate(&self, p: f64) -> f64 {
        let t = match self.kind {
            AxisKind::Log => p.ln(),
            AxisKind::Linear => p,
        };
        (t - self.min) / self.step
    }
}

/// Dense operators are `N x N`; larger carriers are refused.
pub const MAX_CARRIER: usize = 1024;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarrierGrid {
    pub axes: Vec<Axis>,
}

impl CarrierGrid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::InvalidGrid(format!("carrier needs 1 or 2 axes, got {}", axes.len())));
        }
        for a in &axes {
            if a.count == 0 || !(a.step > 0.0) || !a.min.is_finite() {
                return Err(Error::InvalidGrid(format!("bad axis {:?}", a)));
            }
        }
        let n: usize = axes.iter().map(|a| a.count).product();
        if n > MAX_CARRIER {
            return Err(Error::InvalidGrid(format!("{} carrier points exceed {}", n, MAX_CARRIER)));
        }
        Ok(CarrierGrid { axes })
    }

    pub fn log_1d(tmin: f64, tmax: f64, n: usize) -> Result<Self> {
        Self::new(vec![Axis::log(tmin, tmax, n)])
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Constant quadrature weight of every sample.
    pub fn weight(&self) -> f64 {
        self.axes.iter().map(|a| a.step).product()
    }

    /// Row-major multi-index of a flat index.
    pub fn unflatten(&self, k: usize) -> (usize, usize) {
        match self.axes.len() {
            1 => (k, 0),
            _ => (k / self.axes[1].count, k % self.axes[1].count),
        }
    }

    /// Physical coordinates of sample `k`.
    pub fn point(&self, k: usize) -> [f64; 2] {
        let (i, j) = self.unflatten(k);
        match self.axes.len() {
            1 => [self.axes[0].point(i), 0.0],
            _ => [self.axes[0].point(i), self.axes[1].point(j)],
        }
    }

    /// Catmull-Rom stencil `(flat index, weight)` at physical coordinates;
    /// nodes outside the carrier are dropped.
    pub fn stencil(&self, p: &[f64; 2]) -> Vec<(usize, f64)> {
        let mut per_axis: Vec<Vec<(usize, f64)>> = Vec::with_capacity(self.axes.len());
        for (d, a) in self.axes.iter().enumerate() {
            let q = a.locate(p[d]);
            if !q.is_finite() {
                return Vec::new();
            }
            let (k, s) = crate::groupfn::split_position(q);
            let mut v = Vec::with_capacity(4);
            if s == 0.0 {
                if k >= 0 && (k as usize) < a.count {
                    v.push((k as usize, 1.0));
                }
            } else {
                let w = crate::groupfn::catmull_rom(s);
                for (o, wo) in w.iter().enumerate() {
                    let j = k - 1 + o as i64;
                    if j >= 0 && (j as usize) < a.count {
                        v.push((j as usize, *wo));
                    }
                }
            }
            per_axis.push(v);
        }
        match per_axis.len() {
            1 => per_axis.pop().unwrap_or_default(),
            _ => {
                let n1 = self.axes[1].count;
                let mut out = Vec::with_capacity(16);
                for &(i, wi) in &per_axis[0] {
                    for &(j, wj) in &per_axis[1] {
                        out.push((i * n1 + j, wi * wj));
                    }
                }
                out
            }
        }
    }

    pub fn sample<F: Fn(&[f64; 2]) -> C64>(self: &Arc<Self>, f: F) -> StateVector {
        let v = DVector::from_iterator(self.len(), (0..self.len()).map(|k| f(&self.point(k))));
        StateVector { grid: self.clone(), values: v }
    }
}

fn same_grid(a: &CarrierGrid, b: &CarrierGrid) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch("operands live on different carriers".into()))
    }
}

#[derive(Clone, Debug)]
pub struct StateVector {
    pub grid: Arc<CarrierGrid>,
    pub values: DVector<C64>,
}

impl StateVector {
    pub fn new(grid: Arc<CarrierGrid>, values: DVector<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(StateVector { grid, values })
    }

    /// `<self, other> = sum self_k conj(other_k) w`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.values.dotc(&other.values).conj() * self.grid.weight())
    }

    pub fn norm(&self) -> f64 {
        (self.values.norm_squared() * self.grid.weight()).sqrt()
    }

    pub fn normalized(&self) -> StateVector {
        let n = self.norm();
        StateVector { grid: self.grid.clone(), values: &self.values / C64::new(n, 0.0) }
    }

    pub fn scale(&self, c: C64) -> StateVector {
        StateVector { grid: self.grid.clone(), values: &self.values * c }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        same_grid(&self.grid, &other.grid)?;
        Ok(StateVector { grid: self.grid.clone(), values: &self.values + &other.values })
    }

    /// Pointwise multiplication by a real function of the physical coordinates.
    pub fn multiply<F: Fn(&[f64; 2]) -> f64>(&self, f: F) -> StateVector {
        let mut v = self.values.clone();
        for (k, z) in v.iter_mut().enumerate() {
            *z *= f(&self.grid.point(k));
        }
        StateVector { grid: self.grid.clone(), values: v }
    }
}

#[derive(Clone, Debug)]
pub struct KernelOperator {
    pub grid: Arc<CarrierGrid>,
    pub kernel: DMatrix<C64>,
}

impl KernelOperator {
    pub fn new(grid: Arc<CarrierGrid>, kernel: DMatrix<C64>) -> Result<Self> {
        let n = grid.len();
        if kernel.nrows() != n || kernel.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: kernel.nrows() });
        }
        Ok(KernelOperator { grid, kernel })
    }

    pub fn zeros(grid: Arc<CarrierGrid>) -> Self {
        let n = grid.len();
        KernelOperator { grid, kernel: DMatrix::zeros(n, n) }
    }

    pub fn identity(grid: Arc<CarrierGrid>) -> Self {
        let n = grid.len();
        let w = grid.weight();
        KernelOperator { grid, kernel: DMatrix::identity(n, n) / C64::new(w, 0.0) }
    }

    /// Operator given by the matrix acting on sample values.
    pub fn from_matrix(grid: Arc<CarrierGrid>, p: DMatrix<C64>) -> Result<Self> {
        let w = grid.weight();
        Self::new(grid, p / C64::new(w, 0.0))
    }

    /// Matrix acting on sample values, `M w`.
    pub fn matrix(&self) -> DMatrix<C64> {
        &self.kernel * C64::new(self.grid.weight(), 0.0)
    }

    /// `psi (x) phi : chi -> <chi, phi> psi`.
    pub fn rank_one(psi: &StateVector, phi: &StateVector) -> Result<Self> {
        same_grid(&psi.grid, &phi.grid)?;
        Ok(KernelOperator { grid: psi.grid.clone(), kernel: &psi.values * phi.values.adjoint() })
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        same_grid(&self.grid, &psi.grid)?;
        Ok(StateVector {
            grid: self.grid.clone(),
            values: &self.kernel * &psi.values * C64::new(self.grid.weight(), 0.0),
        })
    }

    pub fn compose(&self, other: &KernelOperator) -> Result<KernelOperator> {
        same_grid(&self.grid, &other.grid)?;
        Ok(KernelOperator {
            grid: self.grid.clone(),
            kernel: &self.kernel * &other.kernel * C64::new(self.grid.weight(), 0.0),
        })
    }

    pub fn adjoint(&self) -> KernelOperator {
        KernelOperator { grid: self.grid.clone(), kernel: self.kernel.adjoint() }
    }

    pub fn trace(&self) -> C64 {
        self.kernel.trace() * self.grid.weight()
    }

    /// `<A, B>_HS = tr(A B^*)`.
    pub fn hs_inner(&self, other: &KernelOperator) -> Result<C64> {
        same_grid(&self.grid, &other.grid)?;
        let w = self.grid.weight();
        let s: C64 = self.kernel.iter().zip(other.kernel.iter()).map(|(a, b)| a * b.conj()).sum();
        Ok(s * w * w)
    }

    pub fn hs_norm(&self) -> f64 {
        self.kernel.norm() * self.grid.weight()
    }

    pub fn add(&self, other: &KernelOperator) -> Result<KernelOperator> {
        same_grid(&self.grid, &other.grid)?;
        Ok(KernelOperator { grid: self.grid.clone(), kernel: &self.kernel + &other.kernel })
    }

    pub fn sub(&self, other: &KernelOperator) -> Result<KernelOperator> {
        same_grid(&self.grid, &other.grid)?;
        Ok(KernelOperator { grid: self.grid.clone(), kernel: &self.kernel - &other.kernel })
    }

    pub fn scale(&self, c: C64) -> KernelOperator {
        KernelOperator { grid: self.grid.clone(), kernel: &self.kernel * c }
    }

    /// Relative HS distance `||A - B|| / ||B||`.
    pub fn rel_dist(&self, reference: &KernelOperator) -> Result<f64> {
        Ok(self.sub(reference)?.hs_norm() / reference.hs_norm())
    }

    /// Self-adjoint part `(A + A^*) / 2`.
    pub fn hermitian_part(&self) -> KernelOperator {
        let k = (&self.kernel + self.kernel.adjoint()) * C64::new(0.5, 0.0);
        KernelOperator { grid: self.grid.clone(), kernel: k }
    }

    /// Eigenpairs of a self-adjoint operator, eigenvalues in decreasing order.
    /// Eigenvectors are normalized in the carrier inner product.
    pub fn eig_hermitian(&self) -> Result<Vec<(f64, StateVector)>> {
        let p = self.matrix();
        let scale = p.norm().max(f64::MIN_POSITIVE);
        let defect = (&p - p.adjoint()).norm() / scale;
        if defect > 1e-8 {
            return Err(Error::NotSelfAdjoint(defect));
        }
        let h = (&p + p.adjoint()) * C64::new(0.5, 0.0);
        let eig = nalgebra::SymmetricEigen::new(h);
        let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let inv_sqrt_w = C64::new(1.0 / self.grid.weight().sqrt(), 0.0);
        Ok(idx
            .into_iter()
            .map(|i| {
                let v = eig.eigenvectors.column(i) * inv_sqrt_w;
                (eig.eigenvalues[i], StateVector { grid: self.grid.clone(), values: v })
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Arc<CarrierGrid> {
        Arc::new(CarrierGrid::log_1d(-1.0, 1.0, 4).unwrap())
    }

    #[test]
    fn constant_vector_norm() {
        let g = grid();
        let psi = g.sample(|_| C64::new(1.0, 0.0));
        assert!((psi.inner(&psi).unwrap().re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rank_one_identities() {
        let g = grid();
        let psi = g.sample(|p| C64::new(p[0], 0.3));
        let phi = g.sample(|p| C64::new(1.0, -p[0]));
        let a = KernelOperator::rank_one(&psi, &phi).unwrap();
        assert!((a.hs_norm() - psi.norm() * phi.norm()).abs() < 1e-12);
        let tr = a.trace();
        let ip = psi.inner(&phi).unwrap();
        assert!((tr - ip).norm() < 1e-12);
        let chi = a.apply(&phi).unwrap();
        let expect = psi.scale(phi.inner(&phi).unwrap());
        assert!((chi.values - expect.values).norm() < 1e-12);
        let id = KernelOperator::identity(g.clone());
        assert!(id.compose(&a).unwrap().rel_dist(&a).unwrap() < 1e-14);
    }

    #[test]
    fn eigen_of_rank_one() {
        let g = grid();
        let psi = g.sample(|p| C64::new(p[0], 0.3)).normalized();
        let a = KernelOperator::rank_one(&psi, &psi).unwrap().scale(C64::new(3.0, 0.0));
        let e = a.eig_hermitian().unwrap();
        assert!((e[0].0 - 3.0).abs() < 1e-12);
        assert!((e[0].1.inner(&psi).unwrap().norm() - 1.0).abs() < 1e-12);
        let b = KernelOperator::rank_one(&psi, &g.sample(|_| C64::new(1.0, 0.0))).unwrap();
        assert!(b.eig_hermitian().is_err());
    }

    #[test]
    fn grid_mismatch_rejected() {
        let a = grid().sample(|_| C64::new(1.0, 0.0));
        let b = Arc::new(CarrierGrid::log_1d(-1.0, 1.0, 5).unwrap()).sample(|_| C64::new(1.0, 0.0));
        assert!(a.inner(&b).is_err());
    }
}
