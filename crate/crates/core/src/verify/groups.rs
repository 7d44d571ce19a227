use nalgebra::DMatrix;

use super::Verifier;
use crate::error::Result;
use crate::groups::{lambda, AlgebraVec, DualVec, Group, GroupPoint, OrbitSign};

const SAMPLES: usize = 1000;
const THETA_SAMPLES: usize = 200;

fn mat_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

pub fn run(v: &mut Verifier) -> Result<()> {
    for group in [Group::Affine, Group::Shearlet, Group::Heisenberg] {
        let name = group.name();
        let grid = format!("{} random samples, seed {}", SAMPLES, v.seed);
        let mut rng = v.rng(&format!("groups.{}", name));
        let e = group.identity();
        let n = group.dim();

        let (mut axioms, mut explog, mut ad, mut k, mut kappa) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let eye = DMatrix::<f64>::identity(n, n);
        ad = ad.max(mat_diff(&group.ad_matrix(&e), &eye));
        for _ in 0..SAMPLES {
            let g = group.sample_point(&mut rng, 1.0);
            let h = group.sample_point(&mut rng, 1.0);
            let c = group.sample_point(&mut rng, 1.0);
            let gi = group.inv(&g);
            axioms = axioms
                .max(group.mul(&group.mul(&g, &h), &c).max_abs_diff(&group.mul(&g, &group.mul(&h, &c))))
                .max(group.mul(&g, &e).max_abs_diff(&g))
                .max(group.mul(&e, &g).max_abs_diff(&g))
                .max(group.mul(&g, &gi).max_abs_diff(&e))
                .max(group.mul(&gi, &g).max_abs_diff(&e));

            let x = group.sample_algebra(&mut rng, 1.0);
            explog = explog
                .max(group.log(&group.exp(&x))?.max_abs_diff(&x))
                .max(group.exp(&group.log(&g)?).max_abs_diff(&g));

            let gh = group.mul(&g, &h);
            ad = ad.max(mat_diff(&group.ad_matrix(&gh), &(group.ad_matrix(&g) * group.ad_matrix(&h))));
            k = k.max(mat_diff(&group.k_matrix(&gh), &(group.k_matrix(&g) * group.k_matrix(&h))));

            if group.is_eligible() {
                for sign in [OrbitSign::Plus, OrbitSign::Minus] {
                    let y = group.orbit_map(&g, sign)?;
                    kappa = kappa.max(group.orbit_inverse(&y, sign)?.max_abs_diff(&g));
                    // kappa(g) = K(g^{-1}) F
                    let f = group.orbit_base(sign)?;
                    kappa = kappa.max(group.coadjoint(&gi, &f).max_abs_diff(&y));
                }
            }
        }
        v.check(&format!("groups.{}.axioms", name), "(gh)k = g(hk), ge = eg = g, g g^-1 = e", axioms, 1e-12, &grid);
        v.check(&format!("groups.{}.exp_log", name), "log(exp X) = X, exp(log g) = g", explog, 1e-12, &grid);
        v.check(&format!("groups.{}.ad_homomorphism", name), "Ad_{gh} = Ad_g Ad_h, Ad_e = I", ad, 1e-12, &grid);
        v.check(&format!("groups.{}.k_homomorphism", name), "K(gh) = K(g) K(h)", k, 1e-12, &grid);
        if group.is_eligible() {
            v.check(
                &format!("groups.{}.kappa", name),
                "kappa(x) = K(x^-1) F, kappa^-1 kappa = id",
                kappa,
                1e-12,
                &grid,
            );
        }

        let tgrid = format!("{} algebra vectors in [-3,3]^{}, seed {}", THETA_SAMPLES, n, v.seed);
        let mut rng = v.rng(&format!("groups.{}.theta", name));
        let (mut theta, mut modular, mut det) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..THETA_SAMPLES {
            let x = group.sample_algebra(&mut rng, 3.0);
            let closed = group.theta(&x);
            theta = theta.max((closed - group.theta_series(&x)).abs() / closed);
            let minus = group.theta(&x.scale(-1.0));
            let g = group.exp(&x);
            modular = modular.max((group.modular(&g) * closed - minus).abs() / minus);
            det = det.max((group.ad_matrix(&g).determinant().abs() * group.modular(&g) - 1.0).abs());
        }
        v.check(
            &format!("groups.{}.theta_determinant", name),
            "Theta(X) = |det((e^{ad X} - 1) / ad X)|",
            theta,
            1e-10,
            &tgrid,
        );
        v.check(
            &format!("groups.{}.theta_modular", name),
            "Delta(exp X) Theta(X) = Theta(-X)",
            modular,
            1e-12,
            &tgrid,
        );
        // which convention det(Ad) follows: |det Ad_g| = 1 / Delta(g)
        v.check(&format!("groups.{}.det_ad", name), "|det Ad_g| Delta(g) = 1", det, 1e-10, &tgrid);
    }

    let lam = (lambda(1e-9) - 1.0).abs().max((lambda(-1e-9) - 1.0).abs());
    let cont = (lambda(1e-3 - 1e-12) - lambda(1e-3 + 1e-12)).abs();
    v.check("groups.lambda_series", "lambda(u) = (e^u - 1) / u near u = 0", lam.max(cont), 1e-8, "u = +-1e-9, 1e-3");

    // closed-form examples
    let p = |c: &[f64]| GroupPoint::new(c);
    let d = |c: &[f64]| DualVec::new(c);
    let (a, s, h) = (Group::Affine, Group::Shearlet, Group::Heisenberg);
    let e1 = std::f64::consts::E;
    let errs = [
        a.mul(&p(&[2.0, 1.0]), &p(&[3.0, 4.0])).max_abs_diff(&p(&[6.0, 9.0])),
        s.mul(&p(&[4.0, 0.0, 0.0, 0.0]), &p(&[1.0, 1.0, 0.0, 0.0])).max_abs_diff(&p(&[4.0, 2.0, 0.0, 0.0])),
        a.inv(&p(&[2.0, 4.0])).max_abs_diff(&p(&[0.5, -2.0])),
        a.exp(&AlgebraVec::new(&[1.0, 1.0])).max_abs_diff(&p(&[e1, e1 - 1.0])),
        h.exp(&AlgebraVec::new(&[1.0, 1.0, 0.0])).max_abs_diff(&p(&[1.0, 1.0, 0.5])),
        (a.modular(&p(&[2.0, 7.0])) - 0.5).abs(),
        (s.modular(&p(&[4.0, 1.0, 0.0, 0.0])) - 1.0 / 16.0).abs(),
        a.coadjoint(&p(&[2.0, 4.0]), &d(&[0.0, 1.0])).max_abs_diff(&d(&[2.0, 0.5])),
        h.coadjoint(&p(&[1.0, 2.0, 0.0]), &d(&[0.0, 0.0, 1.0])).max_abs_diff(&d(&[2.0, -1.0, 1.0])),
        a.orbit_map(&p(&[3.0, 2.0]), OrbitSign::Plus)?.max_abs_diff(&d(&[-2.0, 3.0])),
        (a.pfaffian(OrbitSign::Plus)? - 1.0).abs(),
        (s.pfaffian(OrbitSign::Plus)?.abs() - 1.0).abs(),
        (s.pfaffian(OrbitSign::Minus)?.abs() - 1.0).abs(),
        (a.theta(&AlgebraVec::new(&[1.0, 0.0])) - (e1 - 1.0)).abs(),
    ];
    let worst = errs.iter().copied().fold(0.0, f64::max);
    v.check("groups.examples", "closed-form group laws, exp, Delta, K, kappa, Pf", worst, 1e-14, "exact inputs");
    let heis_rejected = crate::rep::Representation::new(
        Group::Heisenberg,
        std::sync::Arc::new(crate::hilbert::CarrierGrid::log_1d(-1.0, 1.0, 8)?),
        OrbitSign::Plus,
    )
    .is_err();
    v.check(
        "groups.heisenberg.ineligible",
        "Heisenberg representation is not square integrable",
        if heis_rejected { 0.0 } else { 1.0 },
        0.0,
        "flag",
    );
    Ok(())
}
