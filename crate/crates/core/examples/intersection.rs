//! Wavelet spaces of non-collinear windows meet only in zero.
//!
//! `cargo run --release --example intersection`

use orbitquant::apps::intersection_test;
use orbitquant::config::RunConfig;
use orbitquant::signals::{gaussian_log, gaussian_log_modulated};
use orbitquant::C64;

fn main() -> orbitquant::Result<()> {
    let cfg = RunConfig::load(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/affine.json"))?;
    let q = cfg.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let grid = q.ctx.exp.clone();
    let psis = vec![gaussian_log_modulated(&c, 0.1, 0.25, 0.3), gaussian_log(&c, -0.2, 0.3)];

    let phi1 = gaussian_log(&c, 0.0, 0.3);
    let phi2 = gaussian_log(&c, 0.4, 0.25);
    for t in intersection_test(&q, &grid, &phi1, &phi2, &psis)? {
        println!("separate windows: residual {:.3e}, collinearity defect {:.3e}", t.residual, t.defect);
    }
    let twin = phi1.scale(C64::from_polar(1.5, 0.4));
    for t in intersection_test(&q, &grid, &phi1, &twin, &psis)? {
        println!("collinear windows: residual {:.3e}, scale {:.4}", t.residual, t.scale);
    }
    Ok(())
}
