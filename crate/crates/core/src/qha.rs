//! Operator convolutions `f * S = int f(x) pi(x)^* S pi(x) dmu_r(x)` and
//! `T * S(x) = tr(T pi(x)^* S pi(x))`, trace formulas and Young bounds.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::groupfn::{GroupFunction, GroupGrid, Side};
use crate::groups::{Group, GroupPoint};
use crate::hilbert::KernelOperator;
use crate::quant::Quantizer;
use crate::rep::Representation;
use crate::C64;

fn entries(rep: &Representation, g: &GroupPoint) -> Vec<(usize, usize, C64)> {
    let mut e = Vec::new();
    rep.for_each_entry(g, |k, j, v| e.push((k, j, v)));
    e
}

/// `pi(g)^H P pi(g)` on plain matrices, using the sparsity of `pi(g)`.
fn conjugate_plain(p: &DMatrix<C64>, e: &[(usize, usize, C64)]) -> DMatrix<C64> {
    let n = p.nrows();
    let mut t = DMatrix::<C64>::zeros(n, n);
    for &(k, j, v) in e {
        let src = p.column(k) * v;
        let mut col = t.column_mut(j);
        col += src;
    }
    let mut out = DMatrix::<C64>::zeros(n, n);
    for &(k, j, v) in e {
        let src = t.row(k) * v.conj();
        let mut row = out.row_mut(j);
        row += src;
    }
    out
}

/// `f * S`, integrating against the right Haar weights of `f`'s lattice.
pub fn conv_fn_op(rep: &Representation, f: &GroupFunction, s: &KernelOperator) -> Result<KernelOperator> {
    if *s.grid != *rep.carrier {
        return Err(Error::GridMismatch("operator is not on the representation carrier".into()));
    }
    let p = s.matrix();
    let n = p.nrows();
    let grid = &f.grid;
    let mut acc = DMatrix::<C64>::zeros(n, n);
    for i in 0..grid.len() {
        if f.values[i] == C64::new(0.0, 0.0) {
            continue;
        }
        let c = f.values[i] * grid.weights[i];
        acc += conjugate_plain(&p, &entries(rep, &grid.elements[i])) * c;
    }
    KernelOperator::from_matrix(rep.carrier.clone(), acc)
}

/// `T * S` sampled on a lattice.
pub fn conv_op_op(
    rep: &Representation,
    t: &KernelOperator,
    s: &KernelOperator,
    grid: &Arc<GroupGrid>,
) -> Result<GroupFunction> {
    conv_op_op_at(rep, t, s, &grid.elements).and_then(|v| GroupFunction::new(grid.clone(), v))
}

pub fn conv_op_op_at(
    rep: &Representation,
    t: &KernelOperator,
    s: &KernelOperator,
    points: &[GroupPoint],
) -> Result<Vec<C64>> {
    if *s.grid != *rep.carrier || *t.grid != *rep.carrier {
        return Err(Error::GridMismatch("operators are not on the representation carrier".into()));
    }
    let pt = t.matrix();
    let ps = s.matrix();
    let n = pt.nrows();
    use rayon::prelude::*;
    Ok(points
        .par_iter()
        .map(|g| {
            let e = entries(rep, g);
            // U = P_S pi, then tr(P_T pi^H U) = sum_{(k,j,v)} conj(v) sum_a P_T[a, j] U[k, a]
            let mut u = DMatrix::<C64>::zeros(n, n);
            for &(k, j, v) in &e {
                let src = ps.column(k) * v;
                let mut col = u.column_mut(j);
                col += src;
            }
            let mut acc = C64::new(0.0, 0.0);
            for &(k, j, v) in &e {
                let mut d = C64::new(0.0, 0.0);
                for a in 0..n {
                    d += pt[(a, j)] * u[(k, a)];
                }
                acc += v.conj() * d;
            }
            acc
        })
        .collect())
}

/// Smallest eigenvalue of the Hermitian part.
pub fn min_eigenvalue(a: &KernelOperator) -> Result<f64> {
    let eig = a.hermitian_part().eig_hermitian()?;
    Ok(eig.last().map(|e| e.0).unwrap_or(0.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceCheck {
    pub trace: C64,
    pub integral_right: C64,
    pub trace_left: C64,
    pub integral_left: C64,
}

impl TraceCheck {
    pub fn right_error(&self) -> f64 {
        rel(self.trace, self.integral_right)
    }

    pub fn left_error(&self) -> f64 {
        rel(self.trace_left, self.integral_left)
    }
}

fn rel(a: C64, b: C64) -> f64 {
    if b.norm() == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / b.norm()
    }
}

/// `tr(A_f)` against `int f dmu_r`, and `tr(D^{-1} A_f D^{-1})` against `int f dmu_l`.
pub fn trace_formula_check(q: &Quantizer, f: &GroupFunction) -> Result<TraceCheck> {
    let rep = &q.ctx.rep;
    if rep.group != Group::Affine {
        return Err(Error::Ineligible("the trace formula is checked on the affine group".into()));
    }
    let a = q.quantize(f)?;
    let left = rep.left_duflo(&rep.right_duflo(&a, -1), -1);
    Ok(TraceCheck {
        trace: a.trace(),
        integral_right: f.integrate(Side::Right),
        trace_left: left.trace(),
        integral_left: f.integrate(Side::Left),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct YoungCheck {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl YoungCheck {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn pass(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + 1e-6)
    }
}

/// `||T * S||_{L^r_r} <= ||a_T Delta^{1/q'}||_{L^p_r} ||a_S||_{L^q_l}` with `1/p + 1/q = 1 + 1/r`.
/// `T * S` is sampled on the exponential lattice, the symbols on the orbit lattice.
pub fn young_bound_check(
    qz: &Quantizer,
    t: &KernelOperator,
    s: &KernelOperator,
    p: f64,
    q: f64,
    r: f64,
) -> Result<YoungCheck> {
    let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
    if p < 1.0 || q < 1.0 || r < 1.0 || (inv(p) + inv(q) - 1.0 - inv(r)).abs() > 1e-12 {
        return Err(Error::Exponents { p, q, r });
    }
    let ts = conv_op_op(&qz.ctx.rep, t, s, &qz.ctx.exp)?;
    let lhs = ts.lp_norm(r, Side::Right);
    // 1/q' = 1 - 1/q
    let at = qz.dequantize(t)?.weight_modular(1.0 - inv(q));
    let as_ = qz.dequantize(s)?;
    let rhs = at.lp_norm(p, Side::Right) * as_.lp_norm(q, Side::Left);
    Ok(YoungCheck { p, q, r, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::OrbitSign;
    use crate::hilbert::CarrierGrid;
    use crate::signals::gaussian_log;
    use crate::transforms::TransformContext;

    fn rep() -> Representation {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 64).unwrap());
        Representation::new(Group::Affine, c, OrbitSign::Plus).unwrap()
    }

    #[test]
    fn rank_one_convolution_is_scalogram() {
        let rep = rep();
        let ctx = TransformContext::from_axes(rep.clone(), &[(1.0 / 16.0, 17), (1.0 / 4.0, 17)]).unwrap();
        let psi = gaussian_log(&rep.carrier, 0.1, 0.3);
        let phi = gaussian_log(&rep.carrier, -0.1, 0.3);
        let t = KernelOperator::rank_one(&psi, &psi).unwrap();
        let s = KernelOperator::rank_one(&phi, &phi).unwrap();
        let c = conv_op_op(&rep, &t, &s, &ctx.exp).unwrap();
        let w = rep.wavelet(&psi, &phi, &ctx.exp).unwrap().map(|z| C64::new(z.norm_sqr(), 0.0));
        assert!(c.rel_dist(&w).unwrap() < 1e-12);
    }

    #[test]
    fn positive_function_gives_positive_operator() {
        let rep = rep();
        let ctx = TransformContext::from_axes(rep.clone(), &[(1.0 / 16.0, 9), (1.0 / 4.0, 9)]).unwrap();
        let f = ctx.exp.sample_coords(|x| C64::new((-(x[0] * x[0] * 8.0 + x[1] * x[1])).exp(), 0.0));
        let psi = gaussian_log(&rep.carrier, 0.0, 0.3);
        let s = KernelOperator::rank_one(&psi, &psi).unwrap();
        let out = conv_fn_op(&rep, &f, &s).unwrap();
        assert!(min_eigenvalue(&out).unwrap() > -1e-10);
        let adj = conv_fn_op(&rep, &f.conj(), &s.adjoint()).unwrap();
        assert!(out.adjoint().rel_dist(&adj).unwrap() < 1e-12);
    }
}
