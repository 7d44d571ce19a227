use nalgebra::DMatrix;

use super::{max_abs, rel, Verifier, L1, WIDE};
use crate::error::Result;
use crate::groupfn::GroupFunction;
use crate::groups::GroupPoint;
use crate::hilbert::{KernelOperator, StateVector};
use crate::quant::Quantizer;
use crate::signals::{gaussian_log, gaussian_log_modulated, SignalSpec};
use crate::C64;

/// Gram-Schmidt on Hermite-log functions of orders `0..m`.
pub(crate) fn hermite_family(c: &std::sync::Arc<crate::hilbert::CarrierGrid>, m: usize, width: f64) -> Result<Vec<StateVector>> {
    let mut out: Vec<StateVector> = Vec::new();
    for k in 0..m {
        let mut h = SignalSpec::HermiteLog { order: k, center: 0.0, width }.sample(c)?;
        for e in &out {
            let p = h.inner(e)?;
            h = h.add(&e.scale(-p))?;
        }
        out.push(h.normalized());
    }
    Ok(out)
}

pub fn run(v: &mut Verifier) -> Result<()> {
    main_grid(v)?;
    parity(v)?;
    hstar(v)?;
    Ok(())
}

fn main_grid(v: &mut Verifier) -> Result<()> {
    let q = L1.quantizer()?;
    let label = L1.label();
    let c = q.ctx.rep.carrier.clone();
    let psi = gaussian_log_modulated(&c, 0.1, 0.25, 0.3);
    let phi = gaussian_log(&c, -0.1, 0.25);
    let s = KernelOperator::rank_one(&psi, &phi)?;
    let w = q.dequantize(&s)?;

    let back = q.quantize(&w)?;
    v.check("quant.wigner_inverse", "A_{W(psi, phi)} = psi (x) phi", back.rel_dist(&s)?, 1e-2, &label);

    let psi2 = gaussian_log(&c, 0.05, 0.3);
    let phi2 = gaussian_log_modulated(&c, 0.0, 0.3, -0.2);
    let w2 = q.wigner(&psi2, &phi2)?;
    let lhs = w.inner(&w2)?;
    let rhs = psi.inner(&psi2)? * phi.inner(&phi2)?.conj();
    v.check("quant.moyal", "<W(psi1, phi1), W(psi2, phi2)> = <psi1, psi2> conj<phi1, phi2>", rel(lhs, rhs), 1e-2, &label);

    let swapped = q.wigner(&phi, &psi)?;
    v.check("quant.wigner_conjugate", "conj W(psi, phi) = W(phi, psi)", swapped.rel_dist(&w.conj())?, 1e-8, &label);
    let wd = q.wigner(&psi, &psi)?;
    let imag = wd.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / max_abs(&wd.values);
    v.check("quant.wigner_real", "W(psi, psi) is real", imag, 1e-10, &label);

    let f = q.orbit().sample_coords(|y| {
        let b = y[1];
        C64::new((-(y[0] / 3.0).powi(2) - ((b - 1.0) / 0.4).powi(2)).exp(), 0.5 * (y[0] / 3.0) * (-(b - 1.0).powi(2) * 4.0).exp())
    });
    let af = q.quantize(&f)?;
    v.check("quant.adjoint_covariance", "A_f^* = A_{conj f}", af.adjoint().rel_dist(&q.quantize(&f.conj())?)?, 1e-8, &label);

    // pi(x)^* A_f pi(x) = A_{R_{x^-1} f}, with a grid-compatible dilation
    let group = q.ctx.rep.group;
    let h = c.axes[0].step;
    for (k, x) in [GroupPoint::new(&[(8.0 * h).exp(), 0.3]), GroupPoint::new(&[(-12.0 * h).exp(), -0.5])].iter().enumerate() {
        let xi = group.inv(x);
        let t = KernelOperator::rank_one(&q.ctx.rep.apply_pi(&xi, &psi)?, &q.ctx.rep.apply_pi(&xi, &phi)?)?;
        let lhs = q.dequantize(&t)?;
        let pts: Vec<GroupPoint> = q.orbit().elements.iter().map(|y| group.mul(y, &xi)).collect();
        let rhs = GroupFunction::new(q.orbit().clone(), q.symbol_at(&s, &pts)?)?;
        v.check(
            &format!("quant.translation_covariance.{}", k),
            "pi(x)^* A_f pi(x) = A_{R_{x^-1} f}",
            lhs.rel_dist(&rhs)?,
            1e-2,
            &label,
        );
    }

    // closed-form dequantization against the transform path, interior window
    let cf = q.dequantize_closed_form(&s)?;
    let inside: Vec<usize> = (0..q.orbit().len())
        .filter(|&i| {
            let g = &q.orbit().elements[i];
            g[0] > 0.6 && g[0] < 1.6 && g[1].abs() < 3.0
        })
        .collect();
    let diff = inside.iter().map(|&i| (cf.values[i] - w.values[i]).norm()).fold(0.0, f64::max);
    let scale = inside.iter().map(|&i| w.values[i].norm()).fold(0.0, f64::max);
    v.check(
        "quant.closed_form",
        "a_S(a, x) = int K_S(a e^u / lambda(u), a / lambda(u)) e^{-2 pi i x u} du",
        diff / scale,
        1e-4,
        &format!("{}; 0.6 < a < 1.6, |x| < 3", label),
    );

    let fam = hermite_family(&c, 4, 0.2)?;
    let mut ws = Vec::new();
    for a in &fam {
        for b in &fam {
            ws.push(q.wigner(a, b)?);
        }
    }
    let mut worst = 0.0f64;
    for (i, a) in ws.iter().enumerate() {
        for (j, b) in ws.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b)? - target).norm());
        }
    }
    v.check("quant.wigner_basis", "{W(e_i, e_j)} is orthonormal in L^2_r", worst, 1e-2, &label);

    // quantized partial sums of W(e_k, e_k), compressed to span(e_1..e_m)
    let m = 3;
    let mut errs = Vec::new();
    let mut acc = q.orbit().zeros();
    for k in 0..m {
        acc = acc.add(&ws[k * 4 + k])?;
        let a = q.quantize(&acc)?;
        let mut b = DMatrix::<C64>::zeros(m, m);
        for i in 0..m {
            let ai = a.apply(&fam[i])?;
            for j in 0..m {
                b[(j, i)] = ai.inner(&fam[j])?;
            }
        }
        errs.push((b - DMatrix::<C64>::identity(m, m)).norm());
    }
    v.check_decreasing("quant.weak_identity", "sum_k A_{W(e_k)} -> I weakly", &errs, &label);

    let phase = psi.scale(C64::from_polar(1.0, 0.7));
    let wp = q.wigner(&phase, &phase)?;
    let ratio = wp.sub(&wd)?.norm() / wd.norm();
    let fid = psi.inner(&phase)?.norm() / (psi.norm() * phase.norm());
    let witness = if ratio <= 1e-6 { (1.0 - fid).max(0.0) } else { 1.0 };
    v.check("quant.wigner_uniqueness", "W(psi) = W(phi) iff psi = c phi, |c| = 1", witness, 1e-4, &label);
    let other = gaussian_log(&c, 0.3, 0.25);
    let separated = q.wigner(&other, &other)?.sub(&wd)?.norm() / wd.norm();
    v.check(
        "quant.wigner_uniqueness.separated",
        "W(psi) = W(phi) iff psi = c phi, |c| = 1",
        if separated > 1e-6 { 0.0 } else { 1.0 },
        0.0,
        &label,
    );
    Ok(())
}

fn parity(v: &mut Verifier) -> Result<()> {
    let q = L1.quantizer()?;
    let label = L1.label();
    let c = q.ctx.rep.carrier.clone();
    let psi = gaussian_log(&c, 0.1, 0.25);
    let s = KernelOperator::rank_one(&psi, &gaussian_log_modulated(&c, -0.1, 0.3, 0.2))?;
    let p = q.parity(&s)?;
    let inv = q.symbol_involution(&s)?;
    v.check("quant.parity.symbol", "a_{S check} = (a_S) check", q.dequantize(&p)?.rel_dist(&inv)?, 1e-2, &label);
    v.check("quant.parity.involutive", "(S check) check = S", q.parity(&p)?.rel_dist(&s)?, 1e-2, &label);
    let pp = q.parity(&KernelOperator::rank_one(&psi, &psi)?)?;
    v.check("quant.parity.self_adjoint", "(psi (x) psi) check is self-adjoint", pp.adjoint().rel_dist(&pp)?, 1e-8, &label);
    Ok(())
}

fn ops(q: &Quantizer) -> Result<Vec<KernelOperator>> {
    let c = q.ctx.rep.carrier.clone();
    Ok(vec![
        KernelOperator::rank_one(&gaussian_log(&c, 0.1, 0.2), &gaussian_log_modulated(&c, -0.05, 0.2, 0.3))?,
        KernelOperator::rank_one(&gaussian_log_modulated(&c, 0.0, 0.25, -0.2), &gaussian_log(&c, 0.1, 0.2))?
            .add(&KernelOperator::rank_one(&gaussian_log(&c, -0.1, 0.2), &gaussian_log(&c, 0.0, 0.2))?.scale(C64::new(0.0, 0.5)))?,
        KernelOperator::rank_one(&gaussian_log(&c, -0.05, 0.2), &gaussian_log(&c, 0.05, 0.25))?,
    ])
}

fn hstar(v: &mut Verifier) -> Result<()> {
    let q = WIDE.quantizer()?;
    let label = WIDE.label();
    let o = ops(&q)?;
    let fs = o.iter().map(|s| q.dequantize(s)).collect::<Result<Vec<_>>>()?;
    let (f, g, h) = (&fs[0], &fs[1], &fs[2]);

    let rt = q.quantize(f)?.rel_dist(&o[0])?;
    v.check("quant.hstar.range", "A_{a_S} = S", rt, 1e-8, &label);

    let fg = q.twisted_mul(f, g)?;
    let left = q.twisted_mul(&fg, h)?;
    let right = q.twisted_mul(f, &q.twisted_mul(g, h)?)?;
    v.check("quant.hstar.associativity", "(f # g) # h = f # (g # h)", left.rel_dist(&right)?, 1e-8, &label);
    let adj = q.twisted_mul(&g.conj(), &f.conj())?;
    v.check("quant.hstar.adjoint", "conj(f # g) = conj g # conj f", adj.rel_dist(&fg.conj())?, 1e-8, &label);
    let a = fg.inner(h)?;
    let b = g.inner(&q.twisted_mul(&f.conj(), h)?)?;
    v.check("quant.hstar.inner", "<f # g, h> = <g, conj f # h>", rel(a, b), 1e-8, &label);
    let ops_prod = q.dequantize(&o[0].compose(&o[1])?)?;
    v.check("quant.hstar.product", "A_{f # g} = A_f A_g", fg.rel_dist(&ops_prod)?, 1e-8, &label);

    let mut ratio = 0.0f64;
    for (x, y) in [(f, g), (g, h), (h, f), (f, f), (g, g)] {
        ratio = ratio.max(q.twisted_mul(x, y)?.norm() / (x.norm() * y.norm()));
    }
    v.check("quant.hstar.submultiplicative", "||f # g|| <= ||f|| ||g||", ratio, 1.0, &label);

    let fw = q.ctx.fourier_wigner(&o[0])?;
    let conv = q.ctx.fourier_wigner(&o[0].compose(&o[0])?)?;
    v.check("quant.twisted_conv", "F_W^-1(f ~ g) = F_W^-1(f) F_W^-1(g)", q.twisted_conv(&fw, &fw)?.rel_dist(&conv)?, 1e-8, &label);
    Ok(())
}
