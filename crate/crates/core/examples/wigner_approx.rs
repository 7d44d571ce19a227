//! Best approximation of a symbol by a single Wigner distribution.
//!
//! `cargo run --release --example wigner_approx`

use orbitquant::apps::{fidelity, random_hermite_direction, wigner_approx};
use orbitquant::hilbert::KernelOperator;
use orbitquant::signals::SignalSpec;
use orbitquant::verify::WIDE;
use orbitquant::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> orbitquant::Result<()> {
    let q = WIDE.quantizer()?;
    let c = q.ctx.rep.carrier.clone();
    let e0 = SignalSpec::HermiteLog { order: 0, center: 0.0, width: 0.15 }.sample(&c)?;
    let e1 = SignalSpec::HermiteLog { order: 1, center: 0.0, width: 0.15 }.sample(&c)?;

    // eigenvalues 3 and 1: the best Wigner fit is sqrt(3) e0, at distance 1
    let s = KernelOperator::rank_one(&e0, &e0)?.scale(C64::new(3.0, 0.0)).add(&KernelOperator::rank_one(&e1, &e1)?)?;
    let f = q.dequantize(&s)?.map(|z| C64::new(z.re, 0.0));
    let wa = wigner_approx(&q, &f)?;
    println!("lambda_max = {:.6}, distance = {:.6}, multiplicity {}", wa.lambda, wa.distance, wa.multiplicity);
    println!("minimizer norm {:.6}, alignment with e0 {:.6}", wa.minimizer.norm(), fidelity(&wa.minimizer, &e0)?);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut best = f64::INFINITY;
    for _ in 0..200 {
        let x = wa.scaled_probe(&random_hermite_direction(&c, 4, 0.15, &mut rng)?)?;
        best = best.min(wa.probe_distance(&x)?);
    }
    println!("best of 200 random probes: {:.6}", best);
    Ok(())
}
