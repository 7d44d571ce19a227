//! Square-integrable representations on discretized carriers.
//!
//! Affine: `pi(a, x) psi(r) = e^{-2 pi i x r} psi(a r)` on `L^2(R+, dr/r)`.
//! Shearlet: `pi(a, s, x1, x2) phi(b, t) = e^{-2 pi i (b x1 + sqrt(b) t x2)} phi(b a, t + s sqrt(b))`
//! on `L^2(R+ x R, db dt / b)`. The minus-orbit representation is the complex
//! conjugate. Dilations and shears are interpolated with Catmull-Rom stencils
//! and snap to exact index shifts when the argument lands on a node.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::groupfn::{catmull_rom, split_position, GroupFunction, GroupGrid, Side};
use crate::groups::{Group, GroupPoint, OrbitSign};
use crate::hilbert::{AxisKind, CarrierGrid, KernelOperator, StateVector};
use crate::C64;

#[derive(Clone, Debug)]
pub struct Representation {
    pub group: Group,
    pub sign: OrbitSign,
    pub carrier: Arc<CarrierGrid>,
    /// Duflo-Moore multiplier `D` at each carrier point.
    pub duflo: Vec<f64>,
}

/// Stencil along one carrier axis: base index and up to four weights.
struct Taps {
    base: i64,
    w: [f64; 4],
    n: usize,
}

fn taps(p: f64) -> Taps {
    let (k, s) = split_position(p);
    if s == 0.0 {
        Taps { base: k, w: [1.0, 0.0, 0.0, 0.0], n: 1 }
    } else {
        Taps { base: k - 1, w: catmull_rom(s), n: 4 }
    }
}

impl Representation {
    pub fn new(group: Group, carrier: Arc<CarrierGrid>, sign: OrbitSign) -> Result<Self> {
        let kinds: Vec<AxisKind> = carrier.axes.iter().map(|a| a.kind).collect();
        let duflo: Vec<f64> = match group {
            Group::Heisenberg => {
                return Err(Error::Ineligible(
                    "the heisenberg representation is not square integrable".into(),
                ))
            }
            Group::Affine => {
                if kinds != [AxisKind::Log] {
                    return Err(Error::InvalidGrid("affine carrier is one log axis".into()));
                }
                (0..carrier.len()).map(|k| carrier.point(k)[0].sqrt()).collect()
            }
            Group::Shearlet => {
                if kinds != [AxisKind::Log, AxisKind::Linear] {
                    return Err(Error::InvalidGrid("shearlet carrier is log x linear".into()));
                }
                (0..carrier.len()).map(|k| carrier.point(k)[0]).collect()
            }
        };
        Ok(Representation { group, sign, carrier, duflo })
    }

    fn check(&self, g: &GroupPoint) -> Result<()> {
        self.group.validate(g)
    }

    /// Visits the nonzero entries `(row, col, value)` of the matrix of `pi(g)`
    /// acting on sample values.
    pub fn for_each_entry<F: FnMut(usize, usize, C64)>(&self, g: &GroupPoint, mut f: F) {
        let c = &self.carrier;
        let ax0 = &c.axes[0];
        let sg = -2.0 * PI * self.sign.factor();
        let t0 = taps(g[0].ln() / ax0.step);
        match self.group {
            Group::Affine => {
                let n = ax0.count as i64;
                for k in 0..ax0.count {
                    let r = ax0.point(k);
                    let ph = C64::from_polar(1.0, sg * g[1] * r);
                    for o in 0..t0.n {
                        let j = k as i64 + t0.base + o as i64;
                        if j >= 0 && j < n {
                            f(k, j as usize, ph * t0.w[o]);
                        }
                    }
                }
            }
            Group::Shearlet => {
                let ax1 = &c.axes[1];
                let (n0, n1) = (ax0.count as i64, ax1.count as i64);
                for i in 0..ax0.count {
                    let b = ax0.point(i);
                    let rb = b.sqrt();
                    let shift = taps(g[1] * rb / ax1.step);
                    for j in 0..ax1.count {
                        let t = ax1.point(j);
                        let ph = C64::from_polar(1.0, sg * (b * g[2] + rb * t * g[3]));
                        let row = i * ax1.count + j;
                        for o in 0..t0.n {
                            let ii = i as i64 + t0.base + o as i64;
                            if ii < 0 || ii >= n0 {
                                continue;
                            }
                            for q in 0..shift.n {
                                let jj = j as i64 + shift.base + q as i64;
                                if jj < 0 || jj >= n1 {
                                    continue;
                                }
                                let col = ii as usize * ax1.count + jj as usize;
                                f(row, col, ph * (t0.w[o] * shift.w[q]));
                            }
                        }
                    }
                }
            }
            Group::Heisenberg => unreachable!(),
        }
    }

    /// `pi(g)` as a kernel operator.
    pub fn pi(&self, g: &GroupPoint) -> Result<KernelOperator> {
        self.check(g)?;
        let n = self.carrier.len();
        let mut p = DMatrix::zeros(n, n);
        self.for_each_entry(g, |k, j, v| p[(k, j)] += v);
        KernelOperator::from_matrix(self.carrier.clone(), p)
    }

    pub fn apply_pi(&self, g: &GroupPoint, psi: &StateVector) -> Result<StateVector> {
        self.check(g)?;
        let mut out = nalgebra::DVector::zeros(self.carrier.len());
        self.for_each_entry(g, |k, j, v| out[k] += v * psi.values[j]);
        StateVector::new(self.carrier.clone(), out)
    }

    /// Diagonal multiplier `D^power`.
    pub fn duflo_op(&self, power: i32) -> Result<KernelOperator> {
        if ![-2, -1, 1, 2].contains(&power) {
            return Err(Error::InvalidPoint(format!("duflo power {} not in {{-2,-1,1,2}}", power)));
        }
        let d = nalgebra::DVector::from_iterator(
            self.duflo.len(),
            self.duflo.iter().map(|v| C64::new(v.powi(power), 0.0)),
        );
        KernelOperator::from_matrix(self.carrier.clone(), DMatrix::from_diagonal(&d))
    }

    pub fn apply_duflo(&self, psi: &StateVector, power: i32) -> StateVector {
        let mut v = psi.values.clone();
        for (z, d) in v.iter_mut().zip(&self.duflo) {
            *z *= d.powi(power);
        }
        StateVector { grid: psi.grid.clone(), values: v }
    }

    /// `A D^power` (right multiplication by the diagonal).
    pub fn right_duflo(&self, a: &KernelOperator, power: i32) -> KernelOperator {
        let mut k = a.kernel.clone();
        for (j, mut col) in k.column_iter_mut().enumerate() {
            col *= C64::new(self.duflo[j].powi(power), 0.0);
        }
        KernelOperator { grid: a.grid.clone(), kernel: k }
    }

    /// `D^power A`.
    pub fn left_duflo(&self, a: &KernelOperator, power: i32) -> KernelOperator {
        let mut k = a.kernel.clone();
        for (i, mut row) in k.row_iter_mut().enumerate() {
            row *= C64::new(self.duflo[i].powi(power), 0.0);
        }
        KernelOperator { grid: a.grid.clone(), kernel: k }
    }

    /// `W_phi psi(x) = <psi, pi(x)^* phi> = <pi(x) psi, phi>` on the lattice.
    pub fn wavelet(&self, psi: &StateVector, phi: &StateVector, grid: &Arc<GroupGrid>) -> Result<GroupFunction> {
        if psi.grid != self.carrier || phi.grid != self.carrier {
            return Err(Error::GridMismatch("wavelet inputs must live on the carrier".into()));
        }
        let w = self.carrier.weight();
        use rayon::prelude::*;
        let values = grid
            .elements
            .par_iter()
            .map(|g| {
                let mut s = C64::new(0.0, 0.0);
                self.for_each_entry(g, |k, j, v| s += v * psi.values[j] * phi.values[k].conj());
                s * w
            })
            .collect();
        GroupFunction::new(grid.clone(), values)
    }

    /// `sum_i f(g_i) pi(g_i) w_i` with left (`pi(f)`) or right (`pi_r(f)`) Haar weights.
    pub fn integrated(&self, f: &GroupFunction, side: Side) -> Result<KernelOperator> {
        let grid = &f.grid;
        let n = self.carrier.len();
        let mut p = DMatrix::<C64>::zeros(n, n);
        for i in 0..grid.len() {
            if f.values[i] == C64::new(0.0, 0.0) {
                continue;
            }
            let w = match side {
                Side::Right => grid.weights[i],
                Side::Left => grid.left_weight(i),
            };
            let c = f.values[i] * w;
            self.for_each_entry(&grid.elements[i], |k, j, v| p[(k, j)] += c * v);
        }
        KernelOperator::from_matrix(self.carrier.clone(), p)
    }

    pub fn integrated_left(&self, f: &GroupFunction) -> Result<KernelOperator> {
        self.integrated(f, Side::Left)
    }

    pub fn integrated_right(&self, f: &GroupFunction) -> Result<KernelOperator> {
        self.integrated(f, Side::Right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::gaussian_log;

    fn affine() -> Representation {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 128).unwrap());
        Representation::new(Group::Affine, c, OrbitSign::Plus).unwrap()
    }

    #[test]
    fn identity_and_shift() {
        let rep = affine();
        let id = rep.pi(&Group::Affine.identity()).unwrap();
        let e = KernelOperator::identity(rep.carrier.clone());
        assert!(id.rel_dist(&e).unwrap() < 1e-15);
        let dt = rep.carrier.axes[0].step;
        let p = rep.pi(&GroupPoint::new(&[(3.0 * dt).exp(), 0.0])).unwrap().matrix();
        for k in 0..rep.carrier.len() {
            for j in 0..rep.carrier.len() {
                let expect = if j == k + 3 { 1.0 } else { 0.0 };
                assert_eq!(p[(k, j)], C64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn unitary_and_duflo_commutation() {
        let rep = affine();
        let psi = gaussian_log(&rep.carrier, 0.0, 0.25);
        let dt = rep.carrier.axes[0].step;
        let g = GroupPoint::new(&[(5.0 * dt).exp(), 0.7]);
        let out = rep.apply_pi(&g, &psi).unwrap();
        assert!((out.norm() - psi.norm()).abs() < 1e-10);
        let lhs = rep.apply_duflo(&rep.apply_pi(&g, &psi).unwrap(), 1);
        let rhs = rep.apply_pi(&g, &rep.apply_duflo(&psi, 1)).unwrap().scale(C64::new(
            Group::Affine.modular(&g).sqrt(),
            0.0,
        ));
        assert!((lhs.values - rhs.values).norm() < 1e-10);
        assert!(Representation::new(Group::Heisenberg, rep.carrier.clone(), OrbitSign::Plus).is_err());
    }

    #[test]
    fn homomorphism_interpolated() {
        let rep = affine();
        let grp = Group::Affine;
        let psi = gaussian_log(&rep.carrier, 0.0, 0.25);
        let g = GroupPoint::new(&[1.13, 0.4]);
        let h = GroupPoint::new(&[0.91, -0.3]);
        let a = rep.apply_pi(&g, &rep.apply_pi(&h, &psi).unwrap()).unwrap();
        let b = rep.apply_pi(&grp.mul(&g, &h), &psi).unwrap();
        assert!((&a.values - &b.values).norm() / b.values.norm() < 1e-2);
    }
}
