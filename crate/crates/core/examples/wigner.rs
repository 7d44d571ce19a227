//! Quantization and dequantization: Wigner functions, Moyal identity and the
//! closed-form affine symbol.
//!
//! `cargo run --release --example wigner`

use orbitquant::hilbert::KernelOperator;
use orbitquant::signals::{gaussian_log, gaussian_log_modulated};
use orbitquant::verify::{L1, WIDE};

fn main() -> orbitquant::Result<()> {
    let q = L1.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let psi = gaussian_log_modulated(&c, 0.1, 0.25, 0.3);
    let phi = gaussian_log(&c, -0.1, 0.25);
    let h = gaussian_log(&c, 0.05, 0.3);

    let w = q.wigner(&psi, &phi)?;
    let back = q.quantize(&w)?;
    println!("A_W(psi,phi) vs psi (x) phi: {:.3e}", back.rel_dist(&KernelOperator::rank_one(&psi, &phi)?)?);

    let lhs = w.inner(&q.wigner(&h, &psi)?)?;
    let rhs = psi.inner(&h)? * phi.inner(&psi)?.conj();
    println!("Moyal: <W, W> = {:.6e}, <psi1, psi2> conj<phi1, phi2> = {:.6e}", lhs, rhs);

    let wd = q.wigner(&psi, &psi)?;
    let imag = wd.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    println!("W(psi, psi) max |imag| = {:.1e}", imag);

    let cf = q.dequantize_closed_form(&KernelOperator::rank_one(&psi, &phi)?)?;
    println!("closed-form symbol vs transform path (whole lattice): {:.3e}", cf.rel_dist(&w)?);

    // the twisted product needs symbols in the range of dequantization
    let q = WIDE.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let psi = gaussian_log(&c, 0.1, 0.2);
    let h = gaussian_log(&c, -0.05, 0.2);
    let wd = q.wigner(&psi, &psi)?;
    let g = q.wigner(&h, &h)?;
    let prod = q.twisted_mul(&wd, &g)?;
    let direct = q.dequantize(&KernelOperator::rank_one(&psi, &psi)?.compose(&KernelOperator::rank_one(&h, &h)?)?)?;
    println!("twisted product a_S # a_T vs a_ST: {:.3e}", prod.rel_dist(&direct)?);
    Ok(())
}
