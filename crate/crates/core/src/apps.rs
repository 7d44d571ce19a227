//! Scalogram phase retrieval, best Wigner approximation and wavelet-space intersections.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};
use crate::groupfn::{GroupFunction, GroupGrid};
use crate::hilbert::{KernelOperator, StateVector};
use crate::quant::Quantizer;
use crate::signals::SignalSpec;
use crate::C64;

#[derive(Clone, Debug)]
pub struct RetrievalConfig {
    /// Relative singular-value cutoff for the right inverse.
    pub regularization: f64,
    /// Optional reference vector; without one the leading eigenvector is returned.
    pub reference: Option<StateVector>,
    pub fidelity_floor: f64,
}

impl Default for RetrievalConfig {
    fn default() -> Self {
        RetrievalConfig { regularization: 1e-2, reference: None, fidelity_floor: 0.99 }
    }
}

#[derive(Clone, Debug)]
pub struct Retrieval {
    pub signal: StateVector,
    pub kept_rank: usize,
    pub singular_values: Vec<f64>,
}

/// `|<psi, phi>| / (||psi|| ||phi||)`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm() / (a.norm() * b.norm()))
}

/// Right inverse of a plain matrix by truncated SVD; returns the inverse and the kept rank.
fn right_inverse(p: &DMatrix<C64>, cutoff: f64) -> Result<(DMatrix<C64>, usize, Vec<f64>)> {
    let svd = p.clone().svd(true, true);
    let u = svd.u.as_ref().ok_or_else(|| Error::Numeric("svd failed".into()))?;
    let vt = svd.v_t.as_ref().ok_or_else(|| Error::Numeric("svd failed".into()))?;
    let s: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = s.iter().copied().fold(0.0, f64::max);
    if !(smax > 0.0) {
        return Err(Error::Numeric("right inversion leaves rank 0".into()));
    }
    let n = p.nrows();
    let mut out = DMatrix::<C64>::zeros(p.ncols(), n);
    let mut rank = 0;
    for (i, &si) in s.iter().enumerate() {
        if si > cutoff * smax {
            rank += 1;
            let v = vt.row(i).adjoint();
            let uh = u.column(i).adjoint();
            out += (v * uh) * C64::new(1.0 / si, 0.0);
        }
    }
    Ok((out, rank, s))
}

/// Recovers `psi` up to a global phase from `|W_phi psi|^2` sampled on the exponential lattice.
pub fn phase_retrieve(
    q: &Quantizer,
    scalogram: &GroupFunction,
    phi: &StateVector,
    cfg: &RetrievalConfig,
) -> Result<Retrieval> {
    let ctx = &q.ctx;
    let rep = &ctx.rep;
    if *scalogram.grid != *ctx.exp {
        return Err(Error::GridMismatch("scalogram must live on the exponential lattice".into()));
    }
    if !(cfg.regularization >= 0.0 && cfg.regularization < 1.0) {
        return Err(Error::Config(format!("cutoff {} outside [0, 1)", cfg.regularization)));
    }
    if scalogram.norm() == 0.0 {
        return Err(Error::Numeric("zero scalogram leaves rank 0".into()));
    }
    let l = rep.right_duflo(&ctx.fourier_wigner_inv(scalogram)?, -1);
    let wphi = q.symbol_at(&KernelOperator::rank_one(phi, phi)?, &ctx.exp.elements)?;
    let mirrored: Vec<C64> = (0..ctx.exp.len()).map(|i| wphi[ctx.exp.mirror(i)]).collect();
    let r = rep.right_duflo(&ctx.fourier_wigner_inv(&GroupFunction::new(ctx.exp.clone(), mirrored)?)?, -1);
    let (rinv, kept_rank, singular_values) = right_inverse(&r.matrix(), cfg.regularization)?;
    let b = KernelOperator::from_matrix(rep.carrier.clone(), l.matrix() * rinv)?;
    let b = rep.right_duflo(&b, 1);
    let g = ctx.fourier_wigner_on(&b, &ctx.orbit)?;
    let a = q.quantize(&g)?.hermitian_part();
    let signal = match &cfg.reference {
        Some(xi) => a.apply(xi)?,
        None => {
            let eig = a.eig_hermitian()?;
            eig.into_iter().next().map(|e| e.1).ok_or_else(|| Error::Numeric("empty spectrum".into()))?
        }
    };
    let n = signal.norm();
    if !(n > 0.0) {
        return Err(Error::Numeric("reconstruction vanished".into()));
    }
    Ok(Retrieval { signal: signal.normalized(), kept_rank, singular_values })
}

/// `|W_phi psi|^2` on the exponential lattice.
pub fn scalogram(q: &Quantizer, psi: &StateVector, phi: &StateVector) -> Result<GroupFunction> {
    let w = q.ctx.rep.wavelet(psi, phi, &q.ctx.exp)?;
    Ok(w.map(|z| C64::new(z.norm_sqr(), 0.0)))
}

#[derive(Clone, Debug)]
pub struct WignerApprox {
    pub distance: f64,
    pub lambda: f64,
    pub minimizer: StateVector,
    pub multiplicity: usize,
    pub symbol_norm: f64,
    /// `A_f` (Hermitian part), kept for probe comparisons.
    pub operator: KernelOperator,
}

impl WignerApprox {
    /// Distance from `f` to the symbol of `psi (x) psi`, using `<f, a_X> = <A_f, X>`
    /// and `||a_X|| = ||X||` on the quantization range.
    pub fn probe_distance(&self, psi: &StateVector) -> Result<f64> {
        let x = KernelOperator::rank_one(psi, psi)?;
        let cross = self.operator.hs_inner(&x)?.re;
        let d2 = self.symbol_norm.powi(2) - 2.0 * cross + x.hs_norm().powi(2);
        Ok(d2.max(0.0).sqrt())
    }

    /// Best probe amplitude along a unit direction.
    pub fn scaled_probe(&self, dir: &StateVector) -> Result<StateVector> {
        let c = self.operator.apply(dir)?.inner(dir)?.re.max(0.0);
        Ok(dir.scale(C64::new(c.sqrt(), 0.0)))
    }
}

pub const MULTIPLICITY_TOL: f64 = 1e-8;

/// `inf_psi ||f - W(psi)|| = sqrt(||f||^2 - lambda_max^+(A_f)^2)`.
pub fn wigner_approx(q: &Quantizer, f: &GroupFunction) -> Result<WignerApprox> {
    let norm = f.norm();
    let imag = f.values.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
    let real = f.values.iter().map(|z| z.re * z.re).sum::<f64>().sqrt();
    if imag > 1e-8 * real.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSelfAdjoint(imag / real));
    }
    let a = q.quantize(f)?.hermitian_part();
    let eig = a.eig_hermitian()?;
    let top = eig[0].0;
    let grid = a.grid.clone();
    if top <= 0.0 {
        let zero = StateVector::new(grid.clone(), DVector::zeros(grid.len()))?;
        return Ok(WignerApprox {
            distance: norm,
            lambda: 0.0,
            minimizer: zero,
            multiplicity: 0,
            symbol_norm: norm,
            operator: a,
        });
    }
    let multiplicity = eig.iter().filter(|e| (e.0 - top).abs() <= MULTIPLICITY_TOL * top.max(1.0)).count();
    let minimizer = eig[0].1.scale(C64::new(top.sqrt(), 0.0));
    let distance = (norm * norm - top * top).max(0.0).sqrt();
    Ok(WignerApprox { distance, lambda: top, minimizer, multiplicity, symbol_norm: norm, operator: a })
}

/// Random unit vector in the span of the first `order` Hermite-log functions.
pub fn random_hermite_direction<R: Rng>(
    grid: &Arc<crate::hilbert::CarrierGrid>,
    order: usize,
    width: f64,
    rng: &mut R,
) -> Result<StateVector> {
    let mut acc = StateVector::new(grid.clone(), DVector::zeros(grid.len()))?;
    for k in 0..order {
        let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let h = SignalSpec::HermiteLog { order: k, center: 0.0, width }.sample(grid)?;
        acc = acc.add(&h.scale(c))?;
    }
    Ok(acc.normalized())
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionTrial {
    /// `min_c ||W_{phi1} psi - c W_{phi2} psi|| / ||W_{phi1} psi||`.
    pub residual: f64,
    /// Collinearity defect `sqrt(1 - cos^2)` of `D^{-1} phi1` and `D^{-1} phi2`.
    pub defect: f64,
    pub scale: C64,
}

/// Compares the wavelet transforms of each `psi` under the two windows.
pub fn intersection_test(
    q: &Quantizer,
    grid: &Arc<GroupGrid>,
    phi1: &StateVector,
    phi2: &StateVector,
    psis: &[StateVector],
) -> Result<Vec<IntersectionTrial>> {
    if psis.is_empty() {
        return Err(Error::Config("intersection test needs at least one trial".into()));
    }
    let rep = &q.ctx.rep;
    let u1 = rep.apply_duflo(phi1, -1);
    let u2 = rep.apply_duflo(phi2, -1);
    let cos2 = u1.inner(&u2)?.norm_sqr() / (u1.norm().powi(2) * u2.norm().powi(2));
    let defect = (1.0 - cos2).max(0.0).sqrt();
    psis.iter()
        .map(|psi| {
            let w1 = rep.wavelet(psi, phi1, grid)?;
            let w2 = rep.wavelet(psi, phi2, grid)?;
            let n2 = w2.norm().powi(2);
            let scale = if n2 > 0.0 { w1.inner(&w2)? / n2 } else { C64::new(0.0, 0.0) };
            let residual = w1.sub(&w2.scale(scale))?.norm() / w1.norm();
            Ok(IntersectionTrial { residual, defect, scale })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{Group, OrbitSign};
    use crate::hilbert::CarrierGrid;
    use crate::rep::Representation;
    use crate::signals::gaussian_log;
    use crate::transforms::TransformContext;

    #[test]
    fn zero_scalogram_is_rejected() {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 32).unwrap());
        let rep = Representation::new(Group::Affine, c.clone(), OrbitSign::Plus).unwrap();
        let q = Quantizer::new(TransformContext::from_axes(rep, &[(1.0 / 8.0, 17), (1.0 / 4.0, 17)]).unwrap());
        let phi = gaussian_log(&c, 0.0, 0.3);
        let z = q.ctx.exp.zeros();
        assert!(phase_retrieve(&q, &z, &phi, &RetrievalConfig::default()).is_err());
    }

    #[test]
    fn collinear_windows_share_the_space() {
        let c = Arc::new(CarrierGrid::log_1d(-2.0, 2.0, 64).unwrap());
        let rep = Representation::new(Group::Affine, c.clone(), OrbitSign::Plus).unwrap();
        let q = Quantizer::new(TransformContext::from_axes(rep, &[(1.0 / 16.0, 17), (1.0 / 4.0, 17)]).unwrap());
        let phi = gaussian_log(&c, 0.0, 0.3);
        let psi = gaussian_log(&c, 0.2, 0.25);
        let t = intersection_test(&q, &q.ctx.exp.clone(), &phi, &phi.scale(C64::new(2.0, 0.0)), &[psi]).unwrap();
        assert!(t[0].residual < 1e-8 && t[0].defect < 1e-7);
        assert!((t[0].scale - C64::new(0.5, 0.0)).norm() < 1e-12);
    }
}
