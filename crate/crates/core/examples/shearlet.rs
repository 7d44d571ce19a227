//! The shearlet group on a two-dimensional carrier.
//!
//! `cargo run --release --example shearlet`

use orbitquant::config::RunConfig;
use orbitquant::groups::GroupPoint;
use orbitquant::hilbert::KernelOperator;

fn main() -> orbitquant::Result<()> {
    let cfg = RunConfig::load(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/shearlet.json"))?;
    let ctx = cfg.context()?;
    let rep = ctx.rep.clone();
    let c = rep.carrier.clone();
    let psi = cfg.signal("g0", &c)?;
    let phi = cfg.signal("g1", &c)?;

    let g = GroupPoint::new(&[1.3, 0.2, 0.05, -0.1]);
    let h = GroupPoint::new(&[0.8, -0.3, 0.1, 0.02]);
    let pg = rep.apply_pi(&g, &psi)?;
    println!("||pi(g) psi|| = {:.6}", pg.norm());
    let two = rep.apply_pi(&g, &rep.apply_pi(&h, &psi)?)?;
    let one = rep.apply_pi(&rep.group.mul(&g, &h), &psi)?;
    println!("pi(g) pi(h) vs pi(gh): {:.3e}", two.add(&one.scale((-1.0).into()))?.norm());

    let a = KernelOperator::rank_one(&psi, &phi)?;
    let fw = ctx.fourier_wigner(&a)?;
    println!("lattice {:?}: trace vs kernel formula {:.3e}", ctx.exp.shape(), ctx.fourier_wigner_kernel(&a)?.rel_dist(&fw)?);
    let w = rep.wavelet(&psi, &phi, &ctx.exp)?;
    println!("peak |W_phi psi| = {:.4}", w.values.iter().map(|z| z.norm()).fold(0.0, f64::max));
    Ok(())
}
