use std::sync::{Arc, OnceLock};

use orbitquant::groups::{AlgebraVec, Group, GroupPoint, OrbitSign};
use orbitquant::hilbert::{CarrierGrid, KernelOperator, StateVector};
use orbitquant::io::{decode_oqf, encode_oqf};
use orbitquant::quant::Quantizer;
use orbitquant::rep::Representation;
use orbitquant::signals::{gaussian_log, gaussian_log_modulated};
use orbitquant::transforms::{FkoMode, TransformContext};
use orbitquant::C64;
use proptest::prelude::*;

fn point(group: Group, c: &[f64]) -> GroupPoint {
    let mut g = GroupPoint::new(&c[..group.dim()]);
    if group != Group::Heisenberg {
        g[0] = g[0].exp();
    }
    g
}

fn groups() -> impl Strategy<Value = Group> {
    prop_oneof![Just(Group::Affine), Just(Group::Shearlet), Just(Group::Heisenberg)]
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.5f64..1.5, 4)
}

/// Small affine context: carrier t in [-2, 2) at 16 points, u step equal to the carrier step.
fn small() -> &'static Quantizer {
    static Q: OnceLock<Quantizer> = OnceLock::new();
    Q.get_or_init(|| {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 16).unwrap());
        let rep = Representation::new(Group::Affine, c, OrbitSign::Plus).unwrap();
        Quantizer::new(TransformContext::from_axes(rep, &[(0.25, 17), (0.125, 33)]).unwrap())
    })
}

fn profile() -> &'static Quantizer {
    static Q: OnceLock<Quantizer> = OnceLock::new();
    Q.get_or_init(|| orbitquant::verify::L1.quantizer().unwrap())
}

fn state(q: &Quantizer, re: &[f64], im: &[f64]) -> StateVector {
    let c = q.ctx.rep.carrier.clone();
    let v = re.iter().zip(im).map(|(a, b)| C64::new(*a, *b)).collect::<Vec<_>>();
    StateVector::new(c, nalgebra::DVector::from_vec(v)).unwrap()
}

fn cvec(n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (prop::collection::vec(-1.0f64..1.0, n), prop::collection::vec(-1.0f64..1.0, n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_is_associative_with_inverses(group in groups(), a in coords(), b in coords(), c in coords()) {
        let (g, h, k) = (point(group, &a), point(group, &b), point(group, &c));
        let lhs = group.mul(&group.mul(&g, &h), &k);
        let rhs = group.mul(&g, &group.mul(&h, &k));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let e = group.mul(&g, &group.inv(&g));
        prop_assert!(e.max_abs_diff(&group.identity()) < 1e-12);
    }

    #[test]
    fn exp_and_log_are_inverse(group in groups(), a in coords()) {
        let x = AlgebraVec::new(&a[..group.dim()]);
        prop_assert!(group.log(&group.exp(&x)).unwrap().max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn ad_and_k_are_homomorphisms(group in groups(), a in coords(), b in coords()) {
        let (g, h) = (point(group, &a), point(group, &b));
        let gh = group.mul(&g, &h);
        let ad = group.ad_matrix(&gh) - group.ad_matrix(&g) * group.ad_matrix(&h);
        let k = group.k_matrix(&gh) - group.k_matrix(&g) * group.k_matrix(&h);
        prop_assert!(ad.amax() < 1e-12 && k.amax() < 1e-12);
    }

    #[test]
    fn theta_matches_series_and_modular_rule(group in groups(), a in prop::collection::vec(-1.0f64..1.0, 4)) {
        let x = AlgebraVec::new(&a[..group.dim()]);
        let t = group.theta(&x);
        prop_assert!((t - group.theta_series(&x)).abs() <= 1e-10 * t.abs().max(1.0));
        let lhs = group.modular(&group.exp(&x)) * t;
        prop_assert!((lhs - group.theta(&x.scale(-1.0))).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn orbit_map_inverts(a in coords(), plus in any::<bool>()) {
        let sign = if plus { OrbitSign::Plus } else { OrbitSign::Minus };
        let g = point(Group::Affine, &a);
        let y = Group::Affine.orbit_map(&g, sign).unwrap();
        prop_assert!(Group::Affine.on_orbit(&y, sign));
        prop_assert!(Group::Affine.orbit_inverse(&y, sign).unwrap().max_abs_diff(&g) < 1e-12);
    }

    #[test]
    fn oqf_roundtrip_is_bit_exact(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let values: Vec<C64> = (0..rows * cols)
            .map(|i| C64::new(f64::from_bits(seed.wrapping_mul(i as u64 + 1) >> 2), -(i as f64) / 3.0))
            .collect();
        let (shape, back) = decode_oqf(&encode_oqf(&[rows, cols], &values).unwrap()).unwrap();
        prop_assert_eq!(shape, vec![rows, cols]);
        prop_assert!(back.iter().zip(&values).all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fko_inverse_is_isometric_and_right_inverse(v in cvec(17 * 16)) {
        let q = small();
        let f = orbitquant::groupfn::GroupFunction::new(
            q.orbit().clone(),
            v.0.iter().zip(&v.1).map(|(a, b)| C64::new(*a, *b)).collect(),
        ).unwrap();
        let g = q.ctx.fourier_kirillov_inv(&f).unwrap();
        prop_assert!((g.norm() - f.norm()).abs() < 1e-10 * f.norm());
        prop_assert!(q.ctx.fourier_kirillov(&g, FkoMode::Fft).unwrap().rel_dist(&f).unwrap() < 1e-10);
    }

    #[test]
    fn fw_inverse_is_the_adjoint(a in cvec(16), b in cvec(16), f in cvec(17 * 33)) {
        let q = small();
        let op = KernelOperator::rank_one(&state(q, &a.0, &a.1), &state(q, &b.0, &b.1)).unwrap();
        let h = orbitquant::groupfn::GroupFunction::new(
            q.ctx.exp.clone(),
            f.0.iter().zip(&f.1).map(|(x, y)| C64::new(*x, *y)).collect(),
        ).unwrap();
        let lhs = q.ctx.fourier_wigner(&op).unwrap().inner(&h).unwrap();
        let rhs = op.hs_inner(&q.ctx.fourier_wigner_inv(&h).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn wigner_is_conjugate_symmetric(a in cvec(16), b in cvec(16)) {
        let q = small();
        let (psi, phi) = (state(q, &a.0, &a.1), state(q, &b.0, &b.1));
        let w = q.wigner(&psi, &phi).unwrap();
        prop_assert!(q.wigner(&phi, &psi).unwrap().rel_dist(&w.conj()).unwrap() < 1e-10);
        let wd = q.wigner(&psi, &psi).unwrap();
        let imag = wd.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        let top = wd.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(imag <= 1e-10 * top);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn wigner_quantizes_back_for_smooth_signals(
        c in (-0.2f64..0.2, -0.2f64..0.2),
        w in (0.2f64..0.35, 0.2f64..0.35),
        xi in -0.5f64..0.5,
    ) {
        let q = profile();
        let g = q.ctx.rep.carrier.clone();
        let psi = gaussian_log_modulated(&g, c.0, w.0, xi);
        let phi = gaussian_log(&g, c.1, w.1);
        let back = q.quantize(&q.wigner(&psi, &phi).unwrap()).unwrap();
        prop_assert!(back.rel_dist(&KernelOperator::rank_one(&psi, &phi).unwrap()).unwrap() < 1e-2);
    }
}
