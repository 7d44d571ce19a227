use std::f64::consts::PI;
use std::sync::Arc;

use super::{max_abs, rel, Verifier, L1, LEVELS};
use crate::error::Result;
use crate::groups::{Group, OrbitSign};
use crate::hilbert::{CarrierGrid, KernelOperator};
use crate::rep::Representation;
use crate::signals::{gaussian_log, gaussian_log_modulated};
use crate::transforms::{FkoMode, TransformContext};
use crate::C64;

const DM: &str = "<W_phi1 psi1, W_phi2 psi2> = <psi1, psi2> conj<D^-1 phi1, D^-1 phi2>";
const ISO: &str = "||F_W(A)||_{L^2_r} = ||A||_{S^2}";
const LEFT: &str = "F_W^-1 F_W = id on S^2";
const PROJ: &str = "F_KO^-1 F_KO = F_W F_W^-1";

pub fn run(v: &mut Verifier) -> Result<()> {
    refinement(v)?;
    exact(v)?;
    Ok(())
}

fn refinement(v: &mut Verifier) -> Result<()> {
    let mut dm = Vec::new();
    let mut iso = [Vec::new(), Vec::new()];
    let mut left = [Vec::new(), Vec::new()];
    let mut proj = Vec::new();
    for p in LEVELS {
        let ctx = p.context(OrbitSign::Plus)?;
        let rep = &ctx.rep;
        let c = &rep.carrier;
        let label = p.label();
        // the coarse level only feeds the refinement records
        let per_level = p.name != "L0";

        let (psi1, psi2) = (gaussian_log(c, 0.1, 0.25), gaussian_log_modulated(c, -0.05, 0.3, 0.2));
        let (phi1, phi2) = (gaussian_log(c, 0.0, 0.25), gaussian_log(c, 0.15, 0.3));
        let lhs = rep.wavelet(&psi1, &phi1, &ctx.exp)?.inner(&rep.wavelet(&psi2, &phi2, &ctx.exp)?)?;
        let rhs = psi1.inner(&psi2)? * rep.apply_duflo(&phi1, -1).inner(&rep.apply_duflo(&phi2, -1))?.conj();
        let e = rel(lhs, rhs);
        if per_level {
            v.check(&format!("transforms.duflo_moore.{}", p.name), DM, e, 1e-2, &label);
        }
        dm.push(e);

        let a1 = KernelOperator::rank_one(&psi1, &phi1)?;
        let a3 = KernelOperator::rank_one(&psi1, &phi1)?
            .add(&KernelOperator::rank_one(&psi2, &phi2)?.scale(C64::new(0.5, -0.25)))?
            .add(&KernelOperator::rank_one(&gaussian_log(c, -0.1, 0.2), &gaussian_log(c, 0.05, 0.25))?.scale(C64::new(0.0, 0.7)))?;
        for (k, (a, tag)) in [(a1, "rank1"), (a3, "rank3")].into_iter().enumerate() {
            let f = ctx.fourier_wigner(&a)?;
            let ei = (f.norm() - a.hs_norm()).abs() / a.hs_norm();
            let el = ctx.fourier_wigner_inv(&f)?.rel_dist(&a)?;
            if per_level {
                v.check(&format!("transforms.fw_isometry.{}.{}", tag, p.name), ISO, ei, 1e-2, &label);
                v.check(&format!("transforms.fw_left_inverse.{}.{}", tag, p.name), LEFT, el, 1e-2, &label);
            }
            iso[k].push(ei);
            left[k].push(el);
        }

        // smooth compact function with its orbit frequencies inside the carrier range
        let f = ctx.exp.sample_coords(|x| {
            let env = (-(x[0] * x[0]) / (2.0 * 0.2 * 0.2) - x[1] * x[1] / 8.0).exp();
            C64::from_polar(env, -2.0 * PI * x[1])
        });
        let pk = ctx.fourier_kirillov_inv(&ctx.fourier_kirillov(&f, FkoMode::Fft)?)?;
        let pw = ctx.fourier_wigner(&ctx.fourier_wigner_inv(&f)?)?;
        let e = pw.rel_dist(&pk)?;
        if per_level {
            v.check(&format!("transforms.projection.{}", p.name), PROJ, e, 1e-2, &label);
        }
        proj.push(e);
    }
    let lv = "L0, L1, L2";
    v.check_decreasing("transforms.duflo_moore.refinement", DM, &dm, lv);
    for (k, tag) in ["rank1", "rank3"].into_iter().enumerate() {
        v.check_decreasing(&format!("transforms.fw_isometry.{}.refinement", tag), ISO, &iso[k], lv);
        v.check_decreasing(&format!("transforms.fw_left_inverse.{}.refinement", tag), LEFT, &left[k], lv);
    }
    v.check_decreasing("transforms.projection.refinement", PROJ, &proj, lv);
    Ok(())
}

fn exact(v: &mut Verifier) -> Result<()> {
    for sign in [OrbitSign::Plus, OrbitSign::Minus] {
        let ctx = if sign == OrbitSign::Plus { L1.context(sign)? } else { super::L0.context(sign)? };
        let tag = format!("{:?}", sign).to_lowercase();
        let label = if sign == OrbitSign::Plus { L1.label() } else { super::L0.label() } + &format!(" orbit {}", tag);
        let c = ctx.rep.carrier.clone();

        let f = ctx.orbit.sample_coords(|y| {
            let b = y[1].abs();
            C64::new((-(y[0] / 4.0).powi(2) - ((b - 1.0) / 0.5).powi(2)).exp(), 0.3 * y[0] * (-(b - 1.0).powi(2)).exp())
        });
        let h = ctx.fourier_kirillov_inv(&f)?;
        let back = ctx.fourier_kirillov(&h, FkoMode::Fft)?;
        v.check(&format!("transforms.fko_roundtrip.{}", tag), "F_KO F_KO^-1 = id", back.rel_dist(&f)?, 1e-10, &label);
        v.check(
            &format!("transforms.fko_inverse_unitary.{}", tag),
            "||F_KO^-1 f|| = ||f||",
            (h.norm() - f.norm()).abs() / f.norm(),
            1e-10,
            &label,
        );

        let g = ctx.exp.sample_coords(|x| C64::new((-(x[0] * x[0] + x[1] * x[1] / 4.0)).exp(), x[1] / 3.0 * (-x[0] * x[0]).exp()));
        let proj = |f: &crate::groupfn::GroupFunction| -> Result<crate::groupfn::GroupFunction> {
            ctx.fourier_kirillov_inv(&ctx.fourier_kirillov(f, FkoMode::Fft)?)
        };
        let pg = proj(&g)?;
        v.check(&format!("transforms.fko_projection_idempotent.{}", tag), "(F_KO^-1 F_KO)^2 = F_KO^-1 F_KO", proj(&pg)?.rel_dist(&pg)?, 1e-10, &label);
        let lhs = ctx.fourier_kirillov(&g.involution().weight_modular(0.5), FkoMode::Fft)?;
        let rhs = ctx.fourier_kirillov(&g.conj(), FkoMode::Fft)?.conj();
        v.check(&format!("transforms.fko_conjugation.{}", tag), "F_KO(sqrt(Delta) f^check) = conj F_KO(conj f)", lhs.rel_dist(&rhs)?, 1e-10, &label);
        let direct = ctx.fourier_kirillov(&g, FkoMode::Direct)?;
        let fft = ctx.fourier_kirillov(&g, FkoMode::Fft)?;
        v.check(&format!("transforms.fko_fft_vs_direct.{}", tag), "F_KO fft = F_KO quadrature", fft.rel_dist(&direct)?, 1e-10, &label);

        let psi = gaussian_log_modulated(&c, 0.1, 0.25, 0.3);
        let phi = gaussian_log(&c, -0.1, 0.25);
        let w = ctx.rep.wavelet(&psi, &phi, &ctx.exp)?;
        let fw = ctx.fourier_wigner(&KernelOperator::rank_one(&psi, &ctx.rep.apply_duflo(&phi, -1))?)?;
        v.check(&format!("transforms.fw_wavelet.{}", tag), "F_W(psi (x) D^-1 phi) = W_phi psi", fw.rel_dist(&w)?, 1e-10, &label);

        let a = KernelOperator::rank_one(&psi, &phi)?
            .add(&KernelOperator::rank_one(&gaussian_log(&c, 0.2, 0.2), &psi)?.scale(C64::new(0.3, 0.4)))?
            .add(&KernelOperator::rank_one(&phi, &gaussian_log(&c, -0.2, 0.3))?.scale(C64::new(-0.6, 0.0)))?;
        let trace = ctx.fourier_wigner(&a)?;
        let kernel = ctx.fourier_wigner_kernel(&a)?;
        v.check(&format!("transforms.fw_dual_path.{}", tag), "tr(A D pi(x)) = kernel formula", kernel.rel_dist(&trace)?, 1e-8, &label);
    }

    // Gaussian example on a dedicated wide lattice
    let carrier = Arc::new(CarrierGrid::log_1d(-1.0, 1.0, 16)?);
    let rep = Representation::new(Group::Affine, carrier, OrbitSign::Plus)?;
    let ctx = TransformContext::from_axes(rep, &[(0.125, 129), (0.125, 129)])?;
    let mut f = ctx.exp.sample_coords(|x| C64::new((-PI * (x[0] * x[0] + x[1] * x[1])).exp(), 0.0));
    for (i, z) in f.values.iter_mut().enumerate() {
        *z /= Group::Affine.theta(&ctx.exp.algebra_point(i)).sqrt();
    }
    let out = ctx.fourier_kirillov(&f, FkoMode::Fft)?;
    let expect: Vec<C64> =
        ctx.orbit.elements.iter().map(|g| C64::new(g[0].sqrt() * (-PI * (g[0] * g[0] + g[1] * g[1])).exp(), 0.0)).collect();
    let err = out.values.iter().zip(&expect).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / max_abs(&expect);
    v.check(
        "transforms.fko_gaussian",
        "F_KO(f)(a, x) = sqrt(a) exp(-pi (a^2 + x^2))",
        err,
        1e-6,
        "affine lattice u 129x0.125 v 129x0.125",
    );
    let zero = ctx.fourier_kirillov(&ctx.exp.zeros(), FkoMode::Fft)?;
    v.check("transforms.fko_zero", "F_KO(0) = 0", max_abs(&zero.values), 0.0, "affine lattice u 129x0.125 v 129x0.125");
    Ok(())
}
