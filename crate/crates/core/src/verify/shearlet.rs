use std::sync::Arc;

use super::Verifier;
use crate::error::Result;
use crate::groups::{Group, OrbitSign};
use crate::hilbert::{Axis, CarrierGrid, KernelOperator, StateVector};
use crate::rep::Representation;
use crate::signals::SignalSpec;
use crate::transforms::{FkoMode, TransformContext};
use crate::C64;

/// Shearlet tier: carrier `log b in [-4, 4)` x `t in [-4, 4)` at 32 x 32, lattice 17^4.
pub const CARRIER: (f64, f64, usize) = (-4.0, 4.0, 32);
pub const LATTICE: (f64, usize) = (0.375, 17);

fn carrier() -> Result<Arc<CarrierGrid>> {
    let (lo, hi, n) = CARRIER;
    Ok(Arc::new(CarrierGrid::new(vec![Axis::log(lo, hi, n), Axis::linear(lo, hi, n)])?))
}

fn label() -> String {
    let (lo, hi, n) = CARRIER;
    format!(
        "shearlet carrier log b [{},{}) x t [{},{}) {}x{}, lattice {}^4 step {}",
        lo, hi, lo, hi, n, n, LATTICE.1, LATTICE.0
    )
}

fn gaussian(c: &Arc<CarrierGrid>, center: f64, width: f64) -> Result<StateVector> {
    SignalSpec::GaussianLog { center, width, chirp: 0.0 }.sample(c)
}

pub fn run(v: &mut Verifier) -> Result<()> {
    let c = carrier()?;
    let label = label();
    let rep = Representation::new(Group::Shearlet, c.clone(), OrbitSign::Plus)?;
    let group = rep.group;
    let psi = gaussian(&c, 0.2, 0.9)?;
    let phi = gaussian(&c, -0.1, 0.8)?;

    let mut rng = v.rng("shearlet.unitarity");
    let mut unit = 0.0f64;
    let mut inner = 0.0f64;
    let mut hom = 0.0f64;
    for _ in 0..10 {
        let mut g = group.sample_point(&mut rng, 0.5);
        let mut h = group.sample_point(&mut rng, 0.5);
        for k in 2..4 {
            g[k] *= 0.3;
            h[k] *= 0.3;
        }
        let pg = rep.apply_pi(&g, &psi)?;
        unit = unit.max((pg.norm() - psi.norm()).abs() / psi.norm());
        let ip = pg.inner(&rep.apply_pi(&g, &phi)?)?;
        let ref_ = psi.inner(&phi)?;
        inner = inner.max((ip - ref_).norm() / ref_.norm());
        let two = rep.apply_pi(&g, &rep.apply_pi(&h, &psi)?)?;
        let one = rep.apply_pi(&group.mul(&g, &h), &psi)?;
        let d = two.add(&one.scale(C64::new(-1.0, 0.0)))?;
        hom = hom.max(d.norm() / one.norm());
    }
    let grid = format!("{}; 10 random elements", label);
    v.check("shearlet.unitarity", "||pi(x) psi|| = ||psi||", unit, 5e-2, &grid);
    v.check("shearlet.unitarity.inner", "<pi(x) psi, pi(x) phi> = <psi, phi>", inner, 5e-2, &grid);
    v.check(
        "shearlet.homomorphism",
        "pi(x) pi(y) = pi(xy)",
        hom,
        5e-2,
        &format!("{}; translations |x1|, |x2| < 0.15 keep modulations below the carrier Nyquist rate", grid),
    );

    let ctx = TransformContext::from_axes(rep, &[LATTICE; 4])?;
    let a = KernelOperator::rank_one(&psi, &phi)?;
    let trace = ctx.fourier_wigner(&a)?;
    let kernel = ctx.fourier_wigner_kernel(&a)?;
    v.check("shearlet.fw_dual_path", "tr(A D pi(x)) = kernel formula", kernel.rel_dist(&trace)?, 5e-2, &label);
    let w = ctx.rep.wavelet(&psi, &phi, &ctx.exp)?;
    let fw = ctx.fourier_wigner(&KernelOperator::rank_one(&psi, &ctx.rep.apply_duflo(&phi, -1))?)?;
    v.check("shearlet.fw_wavelet", "F_W(psi (x) D^-1 phi) = W_phi psi", fw.rel_dist(&w)?, 1e-10, &label);

    let f = ctx.orbit.sample_coords(|y| {
        let r2: f64 = y.iter().map(|z| z * z).sum();
        C64::new((-r2 / 4.0).exp(), 0.2 * y[0] * (-r2 / 2.0).exp())
    });
    let back = ctx.fourier_kirillov(&ctx.fourier_kirillov_inv(&f)?, FkoMode::Fft)?;
    v.check("shearlet.fko_roundtrip", "F_KO F_KO^-1 = id", back.rel_dist(&f)?, 1e-10, &label);
    Ok(())
}
