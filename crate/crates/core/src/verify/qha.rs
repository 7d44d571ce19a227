use std::sync::Arc;

use rand::Rng;

use super::{max_abs, rel, Verifier, L0, L1};
use crate::error::Result;
use crate::groupfn::{GroupFunction, GroupGrid, LatticeAxis, Side};
use crate::groups::GroupPoint;
use crate::hilbert::KernelOperator;
use crate::qha::{conv_fn_op, conv_op_op, conv_op_op_at, min_eigenvalue, trace_formula_check, young_bound_check};
use crate::signals::{gaussian_log, gaussian_log_modulated};
use crate::C64;

pub fn run(v: &mut Verifier) -> Result<()> {
    coarse(v)?;
    trace(v)?;
    Ok(())
}

fn coarse(v: &mut Verifier) -> Result<()> {
    let q = L0.quantizer()?;
    let label = L0.label();
    let rep = q.ctx.rep.clone();
    let c = rep.carrier.clone();
    let group = rep.group;

    let psi = gaussian_log_modulated(&c, 0.1, 0.25, 0.2);
    let phi = gaussian_log(&c, -0.1, 0.3);
    let tp = KernelOperator::rank_one(&psi, &psi)?;
    let sp = KernelOperator::rank_one(&phi, &phi)?;
    let conv = conv_op_op(&rep, &tp, &sp, &q.ctx.exp)?;
    let scal = rep.wavelet(&psi, &phi, &q.ctx.exp)?.map(|z| C64::new(z.norm_sqr(), 0.0));
    v.check("qha.scalogram", "(psi (x) psi) * (phi (x) phi) = |W_phi psi|^2", conv.rel_dist(&scal)?, 1e-10, &label);

    // f * a_S with a bump f on a small lattice; a_S evaluated by exact trigonometric sums
    let small = Arc::new(GroupGrid::exponential(
        group,
        vec![LatticeAxis::symmetric(2.0 * c.axes[0].step, 9)?, LatticeAxis::symmetric(0.25, 9)?],
    )?);
    let bump = small.sample_coords(|x| {
        let r2 = (x[0] / 0.3).powi(2) + (x[1] / 1.2).powi(2);
        C64::new(if r2 < 1.0 { (-1.0 / (1.0 - r2)).exp() } else { 0.0 }, 0.0)
    });
    let s = KernelOperator::rank_one(&gaussian_log(&c, 0.05, 0.25), &gaussian_log_modulated(&c, -0.05, 0.25, 0.3))?;
    let lhs = q.dequantize(&conv_fn_op(&rep, &bump, &s)?)?;
    let orbit = q.orbit().clone();
    let mut pts = Vec::with_capacity(orbit.len() * small.len());
    for x in &orbit.elements {
        for y in &small.elements {
            pts.push(group.mul(x, &group.inv(y)));
        }
    }
    let vals = q.symbol_at(&s, &pts)?;
    let m = small.len();
    let rhs: Vec<C64> = (0..orbit.len())
        .map(|i| (0..m).map(|j| bump.values[j] * small.weights[j] * vals[i * m + j]).sum())
        .collect();
    let rhs = GroupFunction::new(orbit.clone(), rhs)?;
    v.check("qha.fn_op", "A_{f * g} = f * A_g", lhs.rel_dist(&rhs)?, 1e-2, &label);

    // A_f * A_g (x) = int a_T(y) a_S(y x^-1) dmu_r(y) at fixed test points
    let t = KernelOperator::rank_one(&gaussian_log(&c, 0.1, 0.25), &gaussian_log(&c, 0.0, 0.25))?;
    let quad = Arc::new(GroupGrid::exponential(
        group,
        vec![LatticeAxis::symmetric(2.0 * c.axes[0].step, 49)?, LatticeAxis::symmetric(0.125, 97)?],
    )?);
    let tests: Vec<GroupPoint> = (0..5)
        .flat_map(|i| (0..5).map(move |j| GroupPoint::new(&[(0.15 * (i as f64 - 2.0)).exp(), 0.4 * (j as f64 - 2.0)])))
        .collect();
    let direct = conv_op_op_at(&rep, &t, &s, &tests)?;
    let at = q.symbol_at(&t, &quad.elements)?;
    let mut shifted = Vec::with_capacity(tests.len() * quad.len());
    for x in &tests {
        let xi = group.inv(x);
        shifted.extend(quad.elements.iter().map(|y| group.mul(y, &xi)));
    }
    let as_ = q.symbol_at(&s, &shifted)?;
    let n = quad.len();
    let via: Vec<C64> = (0..tests.len())
        .map(|k| (0..n).map(|i| at[i] * as_[k * n + i] * quad.weights[i]).sum())
        .collect();
    let d: Vec<C64> = direct.iter().zip(&via).map(|(a, b)| a - b).collect();
    v.check(
        "qha.op_op",
        "A_f * A_g = f * g check",
        max_abs(&d) / max_abs(&direct),
        1e-2,
        &format!("{}; quadrature u 49x{} v 97x0.125, 25 points", label, 2.0 * c.axes[0].step),
    );

    // positivity and the adjoint rule
    let fpos = q.ctx.exp.sample_coords(|x| C64::new((-(x[0] * x[0] * 8.0 + x[1] * x[1] / 2.0)).exp(), 0.0));
    let pos = conv_fn_op(&rep, &fpos, &sp)?;
    let eig = pos.hermitian_part().eig_hermitian()?;
    let top = eig[0].0;
    v.check("qha.positivity.fn_op", "f >= 0, S >= 0 => f * S >= 0", (-min_eigenvalue(&pos)? / top).max(0.0), 1e-10, &label);
    let floor = conv.values.iter().map(|z| (-z.re).max(z.im.abs())).fold(0.0, f64::max) / max_abs(&conv.values);
    v.check("qha.positivity.op_op", "T, S >= 0 => T * S >= 0", floor, 1e-10, &label);
    let fc = q.ctx.exp.sample_coords(|x| C64::new((-(x[0] * x[0] * 8.0)).exp(), 0.3 * x[1] * (-(x[1] * x[1]) / 4.0).exp()));
    let a1 = conv_fn_op(&rep, &fc, &s)?.adjoint();
    let a2 = conv_fn_op(&rep, &fc.conj(), &s.adjoint())?;
    v.check("qha.adjoint", "(f * S)^* = conj f * S^*", a1.rel_dist(&a2)?, 1e-10, &label);

    for (p, qq, r) in [(1.0, 1.0, 1.0), (2.0, 1.0, 2.0), (2.0, 2.0, f64::INFINITY)] {
        let y = young_bound_check(&q, &t, &s, p, qq, r)?;
        v.check(
            &format!("qha.young.{}_{}_{}", p, qq, r),
            "||T * S||_{L^r_r} <= ||a_T Delta^{1/q'}||_{L^p_r} ||a_S||_{L^q_l}",
            y.lhs / y.rhs,
            1.0 + 1e-6,
            &label,
        );
    }
    Ok(())
}

fn trace(v: &mut Verifier) -> Result<()> {
    let q = L1.quantizer()?;
    let label = L1.label();
    let mut rng = v.rng("qha.trace");
    let mut right = 0.0f64;
    let mut left = 0.0f64;
    for _ in 0..5 {
        let (c1, c2) = (rng.gen_range(-0.3..0.3), rng.gen_range(-1.0..1.0));
        let (s1, s2) = (rng.gen_range(0.3..0.5), rng.gen_range(0.5..1.5));
        let f = q.orbit().sample(|g| {
            C64::new((-(g[0].ln() - c1).powi(2) / (2.0 * s1 * s1) - (g[1] - c2).powi(2) / (2.0 * s2 * s2)).exp(), 0.0)
        });
        let t = trace_formula_check(&q, &f)?;
        right = right.max(t.right_error());
        left = left.max(t.left_error());
    }
    let grid = format!("{}; 5 seeded Gaussian symbols in (ln a, x)", label);
    v.check("qha.trace.right", "tr(A_f) = int f dmu_r", right, 1e-2, &grid);
    v.check("qha.trace.left", "tr(D^-1 A_f D^-1) = int f dmu_l", left, 1e-2, &grid);

    let c = q.ctx.rep.carrier.clone();
    let psi = gaussian_log_modulated(&c, 0.1, 0.25, 0.3);
    let phi = gaussian_log(&c, -0.05, 0.3);
    let mass = q.wigner(&psi, &phi)?.integrate(Side::Right);
    v.check("qha.wigner_mass", "int W(psi, phi) dmu_r = <psi, phi>", rel(mass, psi.inner(&phi)?), 1e-2, &label);
    Ok(())
}
