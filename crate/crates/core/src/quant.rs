//! Quantization `A_f = F_W^{-1} F_KO^{-1} f` and dequantization `a_S = F_KO F_W S`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupfn::{GroupFunction, GroupGrid};
use crate::groups::{lambda, Group, GroupPoint, OrbitSign};
use crate::hilbert::{KernelOperator, StateVector};
use crate::transforms::{FkoMode, TransformContext};
use crate::C64;

#[derive(Clone, Debug)]
pub struct Quantizer {
    pub ctx: TransformContext,
    pub mode: FkoMode,
}

impl Quantizer {
    pub fn new(ctx: TransformContext) -> Self {
        Quantizer { ctx, mode: FkoMode::Fft }
    }

    pub fn orbit(&self) -> &Arc<GroupGrid> {
        &self.ctx.orbit
    }

    pub fn quantize(&self, f: &GroupFunction) -> Result<KernelOperator> {
        let h = self.ctx.fourier_kirillov_inv(f)?;
        self.ctx.fourier_wigner_inv(&h)
    }

    pub fn dequantize(&self, s: &KernelOperator) -> Result<GroupFunction> {
        let h = self.ctx.fourier_wigner(s)?;
        self.ctx.fourier_kirillov(&h, self.mode)
    }

    /// `W(psi, phi) = a_{psi (x) phi}`.
    pub fn wigner(&self, psi: &StateVector, phi: &StateVector) -> Result<GroupFunction> {
        self.dequantize(&KernelOperator::rank_one(psi, phi)?)
    }

    /// Exact values of `a_S` at arbitrary group elements (trigonometric sums, no
    /// interpolation on the orbit lattice).
    pub fn symbol_at(&self, s: &KernelOperator, gs: &[GroupPoint]) -> Result<Vec<C64>> {
        let h = self.ctx.fourier_wigner(s)?;
        self.ctx.fourier_kirillov_at_points(&h, gs)
    }

    /// Affine closed form `a_S(a, x) = int K_S(a e^u / lambda(u), a / lambda(u)) e^{-2 pi i x u} du`,
    /// discretized on the u-nodes of the exponential lattice.
    pub fn dequantize_closed_form(&self, s: &KernelOperator) -> Result<GroupFunction> {
        let rep = &self.ctx.rep;
        if rep.group != Group::Affine || rep.sign != OrbitSign::Plus {
            return Err(Error::Ineligible("closed form is implemented for the positive affine orbit".into()));
        }
        let carrier = &rep.carrier;
        let uax = &self.ctx.exp.axes[0];
        let us: Vec<f64> = (0..uax.count).map(|i| uax.node(i)).collect();
        let orbit = self.ctx.orbit.clone();
        use rayon::prelude::*;
        let values = orbit
            .elements
            .par_iter()
            .map(|g| {
                let (a, x) = (g[0], g[1]);
                let mut acc = C64::new(0.0, 0.0);
                for &u in &us {
                    let l = lambda(u);
                    let rs = carrier.stencil(&[a * u.exp() / l, 0.0]);
                    let ss = carrier.stencil(&[a / l, 0.0]);
                    let mut k = C64::new(0.0, 0.0);
                    for &(i, wi) in &rs {
                        for &(j, wj) in &ss {
                            k += s.kernel[(i, j)] * (wi * wj);
                        }
                    }
                    acc += k * C64::from_polar(1.0, -2.0 * PI * x * u);
                }
                acc * uax.step
            })
            .collect();
        GroupFunction::new(orbit, values)
    }

    /// `f # g = a_{A_f A_g}`.
    pub fn twisted_mul(&self, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
        let a = self.quantize(f)?.compose(&self.quantize(g)?)?;
        self.dequantize(&a)
    }

    /// `f ~ g = F_W(F_W^{-1} f F_W^{-1} g)` on the exponential lattice.
    pub fn twisted_conv(&self, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
        let c = &self.ctx;
        let a = c.fourier_wigner_inv(f)?.compose(&c.fourier_wigner_inv(g)?)?;
        c.fourier_wigner(&a)
    }

    /// Symbol involution `a_S(g^{-1})` on the orbit lattice, evaluated exactly.
    pub fn symbol_involution(&self, s: &KernelOperator) -> Result<GroupFunction> {
        let group = self.ctx.rep.group;
        let inv: Vec<GroupPoint> = self.orbit().elements.iter().map(|g| group.inv(g)).collect();
        let values = self.symbol_at(s, &inv)?;
        GroupFunction::new(self.orbit().clone(), values)
    }

    /// Parity `S -> A_{check(a_S)}`.
    pub fn parity(&self, s: &KernelOperator) -> Result<KernelOperator> {
        self.quantize(&self.symbol_involution(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::CarrierGrid;
    use crate::rep::Representation;
    use crate::signals::gaussian_log;

    fn quantizer() -> Quantizer {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 128).unwrap());
        let rep = Representation::new(Group::Affine, c, OrbitSign::Plus).unwrap();
        Quantizer::new(TransformContext::from_axes(rep, &[(1.0 / 32.0, 65), (1.0 / 8.0, 65)]).unwrap())
    }

    #[test]
    fn wigner_is_real_and_closed_form_agrees() {
        let q = quantizer();
        let psi = gaussian_log(&q.ctx.rep.carrier, 0.1, 0.25);
        let w = q.wigner(&psi, &psi).unwrap();
        let im = w.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        let re = w.values.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
        assert!(im < 1e-10 * re);
        let s = KernelOperator::rank_one(&psi, &psi).unwrap();
        let cf = q.dequantize_closed_form(&s).unwrap();
        assert!(cf.rel_dist(&w).unwrap() < 1e-3, "{}", cf.rel_dist(&w).unwrap());
    }

    #[test]
    fn adjoint_covariance() {
        let q = quantizer();
        let psi = gaussian_log(&q.ctx.rep.carrier, 0.1, 0.25);
        let phi = gaussian_log(&q.ctx.rep.carrier, -0.2, 0.3);
        let f = q.wigner(&psi, &phi).unwrap();
        let a = q.quantize(&f).unwrap().adjoint();
        let b = q.quantize(&f.conj()).unwrap();
        assert!(a.rel_dist(&b).unwrap() < 1e-8);
    }
}
