//! Writes a Wigner function as CSV + OQF1 + metadata and reads the binary back.
//!
//! `cargo run --release --example export -- /tmp/oq`

use std::path::PathBuf;

use orbitquant::config::RunConfig;
use orbitquant::io::{export_function, read_oqf};

fn main() -> orbitquant::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    let cfg = RunConfig::load(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/affine.json"))?;
    let q = cfg.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let w = q.wigner(&cfg.signal("g0", &c)?, &cfg.signal("g1", &c)?)?;
    let files = export_function(&dir, "wigner", &w, "W(psi, phi) = a_{psi (x) phi}")?;
    for f in &files {
        println!("wrote {}", f.display());
    }
    let (shape, values) = read_oqf(&files[1])?;
    let same = values == w.values;
    println!("OQF1 shape {:?}, bit-exact round trip: {}", shape, same);
    Ok(())
}
