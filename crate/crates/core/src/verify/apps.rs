use rand::Rng;

use super::quant::hermite_family;
use super::{Verifier, L0, RETRIEVAL, WIDE};
use crate::apps::{fidelity, intersection_test, phase_retrieve, random_hermite_direction, scalogram, wigner_approx, RetrievalConfig};
use crate::error::Result;
use crate::hilbert::KernelOperator;
use crate::signals::{gaussian_log, gaussian_log_modulated};
use crate::C64;

const RETRIEVE: &str = "W(psi) = F_W(pi(|W_phi psi|^2 check) pi_r(W(phi) Delta)^-1 D), psi = A_{W(psi)} xi / ||A_{W(psi)} xi||";
const APPROX: &str = "inf_psi ||f - W(psi)|| = sqrt(||f||^2 - lambda_max^+(A_f)^2)";
const INTERSECT: &str = "W_{phi1}(H) cap W_{phi2}(H) = {0} unless phi1, phi2 collinear";

/// Window and signal of the retrieval test case.
pub const RETRIEVAL_CENTER: f64 = 0.0;
pub const RETRIEVAL_WIDTH: f64 = 0.3;

pub fn run(v: &mut Verifier) -> Result<()> {
    retrieval(v)?;
    approximation(v)?;
    intersection(v)?;
    Ok(())
}

fn retrieval(v: &mut Verifier) -> Result<()> {
    let cfg = RetrievalConfig::default();
    let mut fids = Vec::new();
    for (k, p) in RETRIEVAL.iter().enumerate() {
        let q = p.quantizer()?;
        let c = q.ctx.rep.carrier.clone();
        let psi = gaussian_log(&c, RETRIEVAL_CENTER, RETRIEVAL_WIDTH);
        let phi = psi.clone();
        let out = phase_retrieve(&q, &scalogram(&q, &psi, &phi)?, &phi, &cfg)?;
        let e = 1.0 - fidelity(&out.signal, &psi)?;
        fids.push(1.0 - e);
        let label = format!("{}; cutoff {}, kept rank {}", p.label(), cfg.regularization, out.kept_rank);
        if k == 0 {
            v.check("apps.retrieval.fidelity", RETRIEVE, e, 1e-2, &label);
            let turned = psi.scale(C64::from_polar(1.0, 1.3));
            let again = phase_retrieve(&q, &scalogram(&q, &turned, &phi)?, &phi, &cfg)?;
            let f1 = fidelity(&out.signal, &psi)?;
            let f2 = fidelity(&again.signal, &turned)?;
            v.check("apps.retrieval.global_phase", "|W_phi (c psi)|^2 = |W_phi psi|^2, |c| = 1", (f1 - f2).abs(), 1e-10, &label);
        }
    }
    // fidelity must not drop as the carrier is refined
    let drop = fids.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    v.check("apps.retrieval.refinement", RETRIEVE, drop, 0.0, "R0, R1, R2");
    Ok(())
}

fn approximation(v: &mut Verifier) -> Result<()> {
    let q = WIDE.quantizer()?;
    let label = WIDE.label();
    let c = q.ctx.rep.carrier.clone();
    let fam = hermite_family(&c, 2, 0.15)?;
    let s = KernelOperator::rank_one(&fam[0], &fam[0])?
        .scale(C64::new(2.0, 0.0))
        .add(&KernelOperator::rank_one(&fam[1], &fam[1])?)?;
    let f = q.dequantize(&s)?.map(|z| C64::new(z.re, 0.0));
    let wa = wigner_approx(&q, &f)?;
    v.check("apps.wigner_approx.distance", APPROX, (wa.distance - 1.0).abs(), 1e-6, &label);
    let align = 1.0 - fidelity(&wa.minimizer, &fam[0])?;
    let amp = (wa.minimizer.norm() - 2f64.sqrt()).abs();
    v.check("apps.wigner_approx.minimizer", "minimizer sqrt(lambda) e_1", align.max(amp), 1e-6, &label);
    v.check(
        "apps.wigner_approx.multiplicity",
        "minimizer unique up to phase iff lambda_max simple",
        (wa.multiplicity as f64 - 1.0).abs(),
        0.0,
        &label,
    );
    let direct = f.sub(&q.wigner(&wa.minimizer, &wa.minimizer)?)?.norm();
    v.check("apps.wigner_approx.direct", APPROX, (direct - wa.distance).abs(), 1e-6, &label);

    let mut rng = v.rng("apps.probes");
    let mut best = f64::INFINITY;
    let mut formula = 0.0f64;
    for i in 0..1000 {
        let dir = random_hermite_direction(&c, 4, 0.15, &mut rng)?;
        let x = wa.scaled_probe(&dir)?;
        let d = wa.probe_distance(&x)?;
        best = best.min(d);
        if i < 3 {
            let actual = f.sub(&q.wigner(&x, &x)?)?.norm();
            formula = formula.max((actual - d).abs());
        }
    }
    v.check(
        "apps.wigner_approx.probes",
        APPROX,
        (wa.distance - best).max(0.0),
        1e-6,
        &format!("{}; 1000 Hermite-log probes", label),
    );
    v.check(
        "apps.wigner_approx.probe_formula",
        "||f - W(x)||^2 = ||f||^2 - 2 Re<A_f, x (x) x> + ||x||^4",
        formula,
        1e-6,
        &label,
    );

    let psi = gaussian_log_modulated(&c, 0.05, 0.2, 0.3);
    let w = q.wigner(&psi, &psi)?.map(|z| C64::new(z.re, 0.0));
    let own = wigner_approx(&q, &w)?;
    let along = 1.0 - fidelity(&own.minimizer, &psi)?;
    v.check("apps.wigner_approx.self", APPROX, own.distance.max(along), 1e-6, &label);
    let neg = wigner_approx(&q, &w.scale(C64::new(-1.0, 0.0)))?;
    v.check(
        "apps.wigner_approx.nonpositive",
        "lambda_max^+ = 0 => distance = ||f||",
        (neg.distance - w.norm()).abs() + neg.lambda,
        1e-8,
        &label,
    );
    Ok(())
}

fn intersection(v: &mut Verifier) -> Result<()> {
    let q = L0.quantizer()?;
    let label = L0.label();
    let c = q.ctx.rep.carrier.clone();
    let grid = q.ctx.exp.clone();
    let mut rng = v.rng("apps.intersection");
    let mut failures = 0usize;
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let c1: f64 = rng.gen_range(-0.5..0.5);
        let mut c2: f64 = rng.gen_range(-0.5..0.5);
        while (c2 - c1).abs() < 0.3 {
            c2 = rng.gen_range(-0.5..0.5);
        }
        let phi1 = gaussian_log(&c, c1, rng.gen_range(0.2..0.35));
        let phi2 = gaussian_log(&c, c2, rng.gen_range(0.2..0.35));
        let psis = (0..3)
            .map(|_| gaussian_log_modulated(&c, rng.gen_range(-0.4..0.4), rng.gen_range(0.2..0.35), rng.gen_range(-0.5..0.5)))
            .collect::<Vec<_>>();
        for t in intersection_test(&q, &grid, &phi1, &phi2, &psis)? {
            worst = worst.min(t.residual);
            // near-equality only allowed for collinear windows
            if t.residual < 0.1 && t.defect > 1e-6 {
                failures += 1;
            }
        }
    }
    v.check(
        "apps.intersection.random",
        INTERSECT,
        failures as f64,
        0.0,
        &format!("{}; 20 seeded window pairs, 3 signals each, min residual {:.3}", label, worst),
    );

    let phi = gaussian_log(&c, 0.0, 0.3);
    let psi = gaussian_log_modulated(&c, 0.2, 0.25, 0.3);
    let t = &intersection_test(&q, &grid, &phi, &phi.scale(C64::new(2.0, 0.0)), &[psi.clone()])?[0];
    v.check(
        "apps.intersection.collinear",
        INTERSECT,
        t.residual.max((t.scale - C64::new(0.5, 0.0)).norm()),
        1e-8,
        &label,
    );

    let fam = hermite_family(&c, 2, 0.3)?;
    let (a, b) = (psi.clone(), gaussian_log(&c, -0.1, 0.25));
    let ip = q.wigner(&a, &fam[0])?.inner(&q.wigner(&b, &fam[1])?)?.norm();
    v.check(
        "apps.intersection.orthogonal_windows",
        "<W(psi1, phi1), W(psi2, phi2)> = <psi1, psi2> conj<phi1, phi2> = 0",
        ip,
        1e-2,
        &label,
    );
    Ok(())
}
