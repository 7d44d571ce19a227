//! Group laws, exponential charts, the Theta determinant and coadjoint orbits.
//!
//! `cargo run --release --example groups`

use orbitquant::groups::{Group, GroupPoint, OrbitSign};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> orbitquant::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for group in [Group::Affine, Group::Shearlet, Group::Heisenberg] {
        let g = group.sample_point(&mut rng, 0.5);
        let h = group.sample_point(&mut rng, 0.5);
        let x = group.sample_algebra(&mut rng, 0.5);
        let assoc = group.mul(&group.mul(&g, &h), &g).max_abs_diff(&group.mul(&g, &group.mul(&h, &g)));
        let round = group.log(&group.exp(&x))?.max_abs_diff(&x);
        let theta = (group.theta(&x) - group.theta_series(&x)).abs();
        let modular = (group.modular(&group.exp(&x)) * group.theta(&x) - group.theta(&x.scale(-1.0))).abs();
        println!("{:<10} dim {}  quantizable {}", group.name(), group.dim(), group.is_eligible());
        println!("  associativity {:.1e}  log(exp X) - X {:.1e}", assoc, round);
        println!("  Theta closed form vs series {:.1e}  Delta(exp X) Theta(X) - Theta(-X) {:.1e}", theta, modular);
    }

    // the affine group has two open coadjoint orbits, a > 0 on each
    let affine = Group::Affine;
    let g = GroupPoint::new(&[1.7, -0.4]);
    for sign in [OrbitSign::Plus, OrbitSign::Minus] {
        let y = affine.orbit_map(&g, sign)?;
        let back = affine.orbit_inverse(&y, sign)?;
        println!("orbit {:?}: kappa(g) = {:?}, recovered {:?}, Pf = {}", sign, y.as_slice(), back.as_slice(), affine.pfaffian(sign)?);
    }
    Ok(())
}
