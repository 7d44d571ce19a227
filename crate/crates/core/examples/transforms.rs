//! Fourier-Wigner and Fourier-Kirillov transforms on the affine group.
//!
//! `cargo run --release --example transforms`

use orbitquant::groups::OrbitSign;
use orbitquant::hilbert::KernelOperator;
use orbitquant::signals::{gaussian_log, gaussian_log_modulated};
use orbitquant::transforms::FkoMode;
use orbitquant::verify::L0;
use orbitquant::C64;

fn main() -> orbitquant::Result<()> {
    let ctx = L0.context(OrbitSign::Plus)?;
    let c = ctx.rep.carrier.clone();
    let psi = gaussian_log_modulated(&c, 0.1, 0.25, 0.3);
    let phi = gaussian_log(&c, -0.1, 0.25);
    println!("carrier {} points, exponential lattice {:?}, orbit lattice {:?}", c.len(), ctx.exp.shape(), ctx.orbit.shape());

    // F_W is an isometry from Hilbert-Schmidt operators into L^2_r, with F_W^-1 as left inverse
    let a = KernelOperator::rank_one(&psi, &phi)?;
    let fw = ctx.fourier_wigner(&a)?;
    println!("||F_W A|| / ||A||_HS = {:.6}", fw.norm() / a.hs_norm());
    println!("F_W^-1 F_W A vs A: {:.3e}", ctx.fourier_wigner_inv(&fw)?.rel_dist(&a)?);
    println!("trace vs kernel formula: {:.3e}", ctx.fourier_wigner_kernel(&a)?.rel_dist(&fw)?);

    // F_KO^-1 is an exact isometry and F_KO its left inverse; F_KO^-1 F_KO is a projection
    let g = ctx.orbit.sample_coords(|y| C64::new((-(y[0] * y[0] / 4.0) - (y[1] - 1.0).powi(2) * 4.0).exp(), 0.0));
    let f = ctx.fourier_kirillov_inv(&g)?;
    println!("||F_KO^-1 g|| / ||g|| = {:.12}", f.norm() / g.norm());
    println!("F_KO F_KO^-1 g vs g: {:.3e}", ctx.fourier_kirillov(&f, FkoMode::Fft)?.rel_dist(&g)?);
    let h = ctx.exp.sample_coords(|x| C64::new((-(x[0] * x[0] * 4.0 + x[1] * x[1] / 4.0)).exp(), 0.0));
    let p = ctx.fourier_kirillov_inv(&ctx.fourier_kirillov(&h, FkoMode::Fft)?)?;
    let pp = ctx.fourier_kirillov_inv(&ctx.fourier_kirillov(&p, FkoMode::Fft)?)?;
    println!("projection idempotence: {:.3e}", pp.rel_dist(&p)?);
    println!("FFT vs direct sum: {:.3e}", ctx.fourier_kirillov(&h, FkoMode::Direct)?.rel_dist(&ctx.fourier_kirillov(&h, FkoMode::Fft)?)?);
    Ok(())
}
