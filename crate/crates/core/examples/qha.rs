//! Quantum harmonic analysis: convolutions of functions and operators, the
//! scalogram identity, the trace formula and a Young bound.
//!
//! `cargo run --release --example qha`

use orbitquant::apps::scalogram;
use orbitquant::config::RunConfig;
use orbitquant::groupfn::Side;
use orbitquant::hilbert::KernelOperator;
use orbitquant::qha::{conv_fn_op, conv_op_op, min_eigenvalue, trace_formula_check, young_bound_check};
use orbitquant::C64;

fn main() -> orbitquant::Result<()> {
    let cfg = RunConfig::load(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/affine.json"))?;
    let q = cfg.quantizer()?;
    let rep = q.ctx.rep.clone();
    let c = rep.carrier.clone();
    let psi = cfg.signal("g1", &c)?;
    let phi = cfg.signal("g0", &c)?;
    let t = KernelOperator::rank_one(&psi, &psi)?;
    let s = KernelOperator::rank_one(&phi, &phi)?;

    let conv = conv_op_op(&rep, &t, &s, &q.ctx.exp)?;
    println!("(psi (x) psi) * (phi (x) phi) vs |W_phi psi|^2: {:.3e}", conv.rel_dist(&scalogram(&q, &psi, &phi)?)?);

    let f = q.ctx.exp.sample_coords(|x| C64::new((-(x[0] * x[0] * 8.0 + x[1] * x[1] / 2.0)).exp(), 0.0));
    let fs = conv_fn_op(&rep, &f, &s)?;
    println!("f * S for f >= 0, S >= 0: smallest eigenvalue {:.2e}, trace {:.6}", min_eigenvalue(&fs)?, fs.trace().re);

    let sym = q.orbit().sample(|g| C64::new((-(g[0].ln() / 0.3).powi(2) - (g[1] / 1.5).powi(2)).exp(), 0.0));
    let tr = trace_formula_check(&q, &sym)?;
    println!("tr(A_f) vs int f dmu_r: {:.3e}; left version: {:.3e}", tr.right_error(), tr.left_error());
    println!("int f dmu_l = {:.6}", sym.integrate(Side::Left).re);

    let y = young_bound_check(&q, &t, &s, 2.0, 1.0, 2.0)?;
    println!("Young (2, 1, 2): {:.4e} <= {:.4e} ({})", y.lhs, y.rhs, if y.pass() { "holds" } else { "violated" });
    Ok(())
}
