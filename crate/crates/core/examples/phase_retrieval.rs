//! Recovers a signal, up to a global phase, from its scalogram.
//!
//! `cargo run --release --example phase_retrieval`

use orbitquant::apps::{fidelity, phase_retrieve, scalogram, RetrievalConfig};
use orbitquant::config::RunConfig;
use orbitquant::C64;

fn main() -> orbitquant::Result<()> {
    let cfg = RunConfig::load(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/affine.json"))?;
    let q = cfg.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let window = cfg.signal("g0", &c)?;
    let truth = cfg.signal("g0", &c)?.scale(C64::from_polar(1.0, 2.1));

    let s = scalogram(&q, &truth, &window)?;
    let rc = RetrievalConfig { regularization: cfg.retrieval.cutoff, ..RetrievalConfig::default() };
    let out = phase_retrieve(&q, &s, &window, &rc)?;
    println!("kept {} of {} singular values", out.kept_rank, out.singular_values.len());
    println!("fidelity |<psi, psi_rec>| = {:.6}", fidelity(&out.signal, &truth)?);
    for cutoff in [0.1, 1e-2, 1e-3] {
        let rc = RetrievalConfig { regularization: cutoff, ..RetrievalConfig::default() };
        let r = phase_retrieve(&q, &s, &window, &rc)?;
        println!("  cutoff {:e}: rank {}, fidelity {:.6}", cutoff, r.kept_rank, fidelity(&r.signal, &truth)?);
    }
    Ok(())
}
