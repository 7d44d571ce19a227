//! Exponential Lie groups in exponential coordinates.
//!
//! Three groups are supported: the affine group `(a, x)`, the shearlet group
//! `(a, s, x1, x2)` and the Heisenberg group `(x, y, z)`. Points, algebra
//! vectors and dual vectors are small fixed-capacity coordinate tuples.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 4;

macro_rules! coord_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name {
            c: [f64; MAX_DIM],
            n: usize,
        }

        impl $name {
            pub fn new(c: &[f64]) -> Self {
                assert!(c.len() <= MAX_DIM, "at most {} coordinates", MAX_DIM);
                let mut v = [0.0; MAX_DIM];
                v[..c.len()].copy_from_slice(c);
                $name { c: v, n: c.len() }
            }

            pub fn zeros(n: usize) -> Self {
                $name { c: [0.0; MAX_DIM], n }
            }

            pub fn dim(&self) -> usize {
                self.n
            }

            pub fn as_slice(&self) -> &[f64] {
                &self.c[..self.n]
            }

            pub fn scale(&self, t: f64) -> Self {
                let mut out = *self;
                for v in out.c[..self.n].iter_mut() {
                    *v *= t;
                }
                out
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.as_slice()
                    .iter()
                    .zip(other.as_slice())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            }
        }

        impl std::ops::Index<usize> for $name {
            type Output = f64;
            fn index(&self, i: usize) -> &f64 {
                &self.as_slice()[i]
            }
        }

        impl std::ops::IndexMut<usize> for $name {
            fn index_mut(&mut self, i: usize) -> &mut f64 {
                let n = self.n;
                &mut self.c[..n][i]
            }
        }
    };
}

coord_type!(
    /// A group element in the native coordinates of its group.
    GroupPoint
);
coord_type!(
    /// A Lie algebra vector in the fixed basis of the group.
    AlgebraVec
);
coord_type!(
    /// A dual vector in the basis dual to the algebra basis.
    DualVec
);

/// `(e^u - 1) / u`, with a Taylor branch near zero.
pub fn lambda(u: f64) -> f64 {
    if u.abs() < 1e-3 {
        1.0 + u / 2.0 + u * u / 6.0 + u * u * u / 24.0 + u * u * u * u / 120.0
    } else {
        u.exp_m1() / u
    }
}

/// Selects the orbit of `F` or of `-F`, and with it `pi_+` or `pi_-`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitSign {
    #[default]
    Plus,
    Minus,
}

impl OrbitSign {
    pub fn factor(&self) -> f64 {
        match self {
            OrbitSign::Plus => 1.0,
            OrbitSign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Affine,
    Shearlet,
    Heisenberg,
}

impl Group {
    pub fn dim(&self) -> usize {
        match self {
            Group::Affine => 2,
            Group::Shearlet => 4,
            Group::Heisenberg => 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Group::Affine => "affine",
            Group::Shearlet => "shearlet",
            Group::Heisenberg => "heisenberg",
        }
    }

    /// Groups with an open coadjoint orbit of full dimension and a
    /// square-integrable irreducible representation.
    pub fn is_eligible(&self) -> bool {
        !matches!(self, Group::Heisenberg)
    }

    pub fn identity(&self) -> GroupPoint {
        match self {
            Group::Affine => GroupPoint::new(&[1.0, 0.0]),
            Group::Shearlet => GroupPoint::new(&[1.0, 0.0, 0.0, 0.0]),
            Group::Heisenberg => GroupPoint::new(&[0.0, 0.0, 0.0]),
        }
    }

    pub fn validate(&self, g: &GroupPoint) -> Result<()> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: g.dim() });
        }
        if g.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidPoint(format!("{:?}", g.as_slice())));
        }
        match self {
            Group::Affine | Group::Shearlet if g[0] <= 0.0 => {
                Err(Error::InvalidPoint(format!("dilation must be positive, got {}", g[0])))
            }
            _ => Ok(()),
        }
    }

    pub fn mul(&self, g: &GroupPoint, h: &GroupPoint) -> GroupPoint {
        match self {
            Group::Affine => GroupPoint::new(&[g[0] * h[0], g[0] * h[1] + g[1]]),
            Group::Shearlet => {
                let (a, s, x1, x2) = (g[0], g[1], g[2], g[3]);
                let (b, t, y1, y2) = (h[0], h[1], h[2], h[3]);
                let ra = a.sqrt();
                GroupPoint::new(&[a * b, s + ra * t, x1 + a * y1 + ra * s * y2, x2 + ra * y2])
            }
            Group::Heisenberg => {
                GroupPoint::new(&[g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]])
            }
        }
    }

    pub fn inv(&self, g: &GroupPoint) -> GroupPoint {
        match self {
            Group::Affine => GroupPoint::new(&[1.0 / g[0], -g[1] / g[0]]),
            Group::Shearlet => {
                let (a, s, x1, x2) = (g[0], g[1], g[2], g[3]);
                let ra = a.sqrt();
                GroupPoint::new(&[1.0 / a, -s / ra, (s * x2 - x1) / a, -x2 / ra])
            }
            Group::Heisenberg => {
                GroupPoint::new(&[-g[0], -g[1], -g[2] + g[0] * g[1]])
            }
        }
    }

    pub fn exp(&self, x: &AlgebraVec) -> GroupPoint {
        match self {
            Group::Affine => {
                let (u, v) = (x[0], x[1]);
                GroupPoint::new(&[u.exp(), v * lambda(u)])
            }
            Group::Shearlet => {
                let (al, si, k1, k2) = (x[0], x[1], x[2], x[3]);
                let lh = lambda(al / 2.0);
                GroupPoint::new(&[
                    al.exp(),
                    si * lh,
                    k1 * lambda(al) + si * k2 * lh * lh / 2.0,
                    k2 * lh,
                ])
            }
            Group::Heisenberg => {
                GroupPoint::new(&[x[0], x[1], x[2] + x[0] * x[1] / 2.0])
            }
        }
    }

    pub fn log(&self, g: &GroupPoint) -> Result<AlgebraVec> {
        self.validate(g)?;
        Ok(match self {
            Group::Affine => {
                let u = g[0].ln();
                AlgebraVec::new(&[u, g[1] / lambda(u)])
            }
            Group::Shearlet => {
                let al = g[0].ln();
                let lh = lambda(al / 2.0);
                let si = g[1] / lh;
                let k2 = g[3] / lh;
                let k1 = (g[2] - si * k2 * lh * lh / 2.0) / lambda(al);
                AlgebraVec::new(&[al, si, k1, k2])
            }
            Group::Heisenberg => AlgebraVec::new(&[g[0], g[1], g[2] - g[0] * g[1] / 2.0]),
        })
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, x: &AlgebraVec, y: &AlgebraVec) -> AlgebraVec {
        match self {
            Group::Affine => AlgebraVec::new(&[0.0, x[0] * y[1] - y[0] * x[1]]),
            Group::Shearlet => AlgebraVec::new(&[
                0.0,
                (x[0] * y[1] - y[0] * x[1]) / 2.0,
                (x[0] * y[2] - y[0] * x[2]) + (x[1] * y[3] - y[1] * x[3]),
                (x[0] * y[3] - y[0] * x[3]) / 2.0,
            ]),
            Group::Heisenberg => AlgebraVec::new(&[0.0, 0.0, x[0] * y[1] - y[0] * x[1]]),
        }
    }

    fn basis(&self, i: usize) -> AlgebraVec {
        let mut e = AlgebraVec::zeros(self.dim());
        e[i] = 1.0;
        e
    }

    /// Matrix of `ad X` in the algebra basis (column j is `[X, E_j]`).
    pub fn ad_x(&self, x: &AlgebraVec) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            let c = self.bracket(x, &self.basis(j));
            for i in 0..n {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    /// Matrix of `Ad_g` in the algebra basis.
    pub fn ad_matrix(&self, g: &GroupPoint) -> DMatrix<f64> {
        match self {
            Group::Affine => DMatrix::from_row_slice(2, 2, &[1.0, 0.0, -g[1], g[0]]),
            Group::Shearlet => {
                let (a, s, x1, x2) = (g[0], g[1], g[2], g[3]);
                let ra = a.sqrt();
                DMatrix::from_row_slice(
                    4,
                    4,
                    &[
                        1.0, 0.0, 0.0, 0.0,
                        -s / 2.0, ra, 0.0, 0.0,
                        s * x2 / 2.0 - x1, -ra * x2, a, ra * s,
                        -x2 / 2.0, 0.0, 0.0, ra,
                    ],
                )
            }
            Group::Heisenberg => DMatrix::from_row_slice(
                3,
                3,
                &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -g[1], g[0], 1.0],
            ),
        }
    }

    pub fn ad(&self, g: &GroupPoint, x: &AlgebraVec) -> AlgebraVec {
        let m = self.ad_matrix(g);
        let n = self.dim();
        let mut out = AlgebraVec::zeros(n);
        for i in 0..n {
            out[i] = (0..n).map(|j| m[(i, j)] * x[j]).sum();
        }
        out
    }

    /// Matrix of the coadjoint action `K(g) = (Ad_{g^-1})^T`.
    pub fn k_matrix(&self, g: &GroupPoint) -> DMatrix<f64> {
        self.ad_matrix(&self.inv(g)).transpose()
    }

    pub fn coadjoint(&self, g: &GroupPoint, y: &DualVec) -> DualVec {
        let m = self.k_matrix(g);
        let n = self.dim();
        let mut out = DualVec::zeros(n);
        for i in 0..n {
            out[i] = (0..n).map(|j| m[(i, j)] * y[j]).sum();
        }
        out
    }

    /// Modular function, `dmu_l = Delta dmu_r`.
    pub fn modular(&self, g: &GroupPoint) -> f64 {
        match self {
            Group::Affine => 1.0 / g[0],
            Group::Shearlet => 1.0 / (g[0] * g[0]),
            Group::Heisenberg => 1.0,
        }
    }

    /// Density of the right Haar measure in exponential coordinates.
    pub fn theta(&self, x: &AlgebraVec) -> f64 {
        match self {
            Group::Affine => lambda(x[0]),
            Group::Shearlet => {
                let lh = lambda(x[0] / 2.0);
                lambda(x[0]) * lh * lh
            }
            Group::Heisenberg => 1.0,
        }
    }

    /// `|det((e^{ad X} - 1) / ad X)|` summed as a power series in `ad X`.
    pub fn theta_series(&self, x: &AlgebraVec) -> f64 {
        let n = self.dim();
        let ad = self.ad_x(x);
        let mut term = DMatrix::<f64>::identity(n, n);
        let mut sum = term.clone();
        for k in 1..400 {
            term = &ad * &term / (k as f64 + 1.0);
            sum += &term;
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
        }
        sum.determinant().abs()
    }

    /// Distinguished dual vector whose coadjoint orbit carries the representation.
    pub fn orbit_base(&self, sign: OrbitSign) -> Result<DualVec> {
        let e = sign.factor();
        match self {
            Group::Affine => Ok(DualVec::new(&[0.0, e])),
            Group::Shearlet => Ok(DualVec::new(&[0.0, 0.0, e, 0.0])),
            Group::Heisenberg => Err(Error::Ineligible(
                "heisenberg group has no open coadjoint orbit".into(),
            )),
        }
    }

    /// Index of the dual coordinate whose sign selects the orbit.
    pub fn orbit_axis(&self) -> Result<usize> {
        match self {
            Group::Affine => Ok(1),
            Group::Shearlet => Ok(2),
            Group::Heisenberg => Err(Error::Ineligible("heisenberg".into())),
        }
    }

    /// Orbit map `kappa(g) = K(g^-1) F`.
    pub fn orbit_map(&self, g: &GroupPoint, sign: OrbitSign) -> Result<DualVec> {
        let y = match self {
            Group::Affine => DualVec::new(&[-g[1], g[0]]),
            Group::Shearlet => {
                let (a, s, x1, x2) = (g[0], g[1], g[2], g[3]);
                let ra = a.sqrt();
                DualVec::new(&[s * x2 / 2.0 - x1, -ra * x2, a, ra * s])
            }
            Group::Heisenberg => return Err(Error::Ineligible("heisenberg".into())),
        };
        Ok(y.scale(sign.factor()))
    }

    pub fn on_orbit(&self, y: &DualVec, sign: OrbitSign) -> bool {
        match self.orbit_axis() {
            Ok(k) => y.dim() == self.dim() && sign.factor() * y[k] > 0.0,
            Err(_) => false,
        }
    }

    /// Inverse of the orbit map on the open orbit.
    pub fn orbit_inverse(&self, y: &DualVec, sign: OrbitSign) -> Result<GroupPoint> {
        if !self.on_orbit(y, sign) {
            return Err(Error::OffOrbit(format!("{:?}", y.as_slice())));
        }
        let y = y.scale(sign.factor());
        Ok(match self {
            Group::Affine => GroupPoint::new(&[y[1], -y[0]]),
            Group::Shearlet => {
                let a = y[2];
                let ra = a.sqrt();
                let s = y[3] / ra;
                let x2 = -y[1] / ra;
                GroupPoint::new(&[a, s, s * x2 / 2.0 - y[0], x2])
            }
            Group::Heisenberg => unreachable!(),
        })
    }

    /// Pfaffian of the form `(X, Y) -> F([X, Y])` at the orbit base point.
    pub fn pfaffian(&self, sign: OrbitSign) -> Result<f64> {
        let f = self.orbit_base(sign)?;
        let n = self.dim();
        let b = |i: usize, j: usize| -> f64 {
            let c = self.bracket(&self.basis(i), &self.basis(j));
            (0..n).map(|k| f[k] * c[k]).sum()
        };
        Ok(match n {
            2 => b(0, 1),
            4 => b(0, 1) * b(2, 3) - b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2),
            _ => return Err(Error::Ineligible(format!("odd dimension {}", n))),
        })
    }

    /// Random element with dilation `e^{U(-scale, scale)}` and translations in `[-scale, scale]`.
    pub fn sample_point<R: Rng>(&self, rng: &mut R, scale: f64) -> GroupPoint {
        let mut g = GroupPoint::zeros(self.dim());
        for i in 0..self.dim() {
            g[i] = rng.gen_range(-scale..scale);
        }
        if matches!(self, Group::Affine | Group::Shearlet) {
            g[0] = g[0].exp();
        }
        g
    }

    pub fn sample_algebra<R: Rng>(&self, rng: &mut R, scale: f64) -> AlgebraVec {
        let mut x = AlgebraVec::zeros(self.dim());
        for i in 0..self.dim() {
            x[i] = rng.gen_range(-scale..scale);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn affine_examples() {
        let g = Group::Affine;
        let p = g.mul(&GroupPoint::new(&[2.0, 1.0]), &GroupPoint::new(&[3.0, 4.0]));
        assert_eq!(p.as_slice(), &[6.0, 9.0]);
        assert_eq!(g.inv(&GroupPoint::new(&[2.0, 4.0])).as_slice(), &[0.5, -2.0]);
        let e = g.exp(&AlgebraVec::new(&[1.0, 1.0]));
        assert!((e[0] - 1f64.exp()).abs() < 1e-15 && (e[1] - (1f64.exp() - 1.0)).abs() < 1e-15);
        let k = g.coadjoint(&GroupPoint::new(&[2.0, 4.0]), &DualVec::new(&[0.0, 1.0]));
        assert!(k.max_abs_diff(&DualVec::new(&[2.0, 0.5])) < 1e-15);
        let o = g.orbit_map(&GroupPoint::new(&[3.0, 2.0]), OrbitSign::Plus).unwrap();
        assert_eq!(o.as_slice(), &[-2.0, 3.0]);
        assert_eq!(g.modular(&GroupPoint::new(&[2.0, 7.0])), 0.5);
        assert_eq!(g.pfaffian(OrbitSign::Plus).unwrap(), 1.0);
    }

    #[test]
    fn shearlet_and_heisenberg_examples() {
        let s = Group::Shearlet;
        let p = s.mul(&GroupPoint::new(&[4.0, 0.0, 0.0, 0.0]), &GroupPoint::new(&[1.0, 1.0, 0.0, 0.0]));
        assert_eq!(p.as_slice(), &[4.0, 2.0, 0.0, 0.0]);
        assert_eq!(s.modular(&GroupPoint::new(&[4.0, 1.0, 0.0, 0.0])), 1.0 / 16.0);
        assert_eq!(s.pfaffian(OrbitSign::Plus).unwrap().abs(), 1.0);
        assert_eq!(s.pfaffian(OrbitSign::Minus).unwrap().abs(), 1.0);

        let h = Group::Heisenberg;
        assert_eq!(h.exp(&AlgebraVec::new(&[1.0, 1.0, 0.0])).as_slice(), &[1.0, 1.0, 0.5]);
        let k = h.coadjoint(&GroupPoint::new(&[1.0, 2.0, 0.0]), &DualVec::new(&[0.0, 0.0, 1.0]));
        assert_eq!(k.as_slice(), &[2.0, -1.0, 1.0]);
        assert!(h.orbit_map(&h.identity(), OrbitSign::Plus).is_err());
        assert!(!h.is_eligible());
    }

    #[test]
    fn ad_of_exp_is_exp_of_ad() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for grp in [Group::Affine, Group::Shearlet, Group::Heisenberg] {
            for _ in 0..20 {
                let x = grp.sample_algebra(&mut rng, 1.5);
                let ad = grp.ad_x(&x);
                let mut term = DMatrix::<f64>::identity(grp.dim(), grp.dim());
                let mut e = term.clone();
                for k in 1..80 {
                    term = &ad * &term / k as f64;
                    e += &term;
                }
                let a = grp.ad_matrix(&grp.exp(&x));
                assert!((a - e).amax() < 1e-11, "{:?}", grp);
            }
        }
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(Group::Affine.log(&GroupPoint::new(&[-1.0, 0.0])).is_err());
        assert!(Group::Shearlet.validate(&GroupPoint::new(&[1.0, 0.0])).is_err());
        assert!(Group::Affine.orbit_inverse(&DualVec::new(&[0.0, -1.0]), OrbitSign::Plus).is_err());
        assert!(Group::Affine.orbit_inverse(&DualVec::new(&[0.0, -1.0]), OrbitSign::Minus).is_ok());
    }
}
