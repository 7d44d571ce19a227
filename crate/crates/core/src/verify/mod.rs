//! Identity suites run by `verify`.
//!
//! Every check lands in a [`Record`]; grids are fixed per check (see [`Profile`]),
//! randomness comes from per-section ChaCha streams derived from the seed, and
//! all reductions run in a fixed order so two runs give byte-identical reports.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{Group, OrbitSign};
use crate::hilbert::CarrierGrid;
use crate::quant::Quantizer;
use crate::rep::Representation;
use crate::report::{Record, Report, Timings};
use crate::transforms::TransformContext;
use crate::C64;

mod apps;
mod groups;
mod qha;
mod quant;
mod shearlet;
mod transforms;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Groups,
    Transforms,
    Quant,
    Qha,
    Apps,
    Shearlet,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 6] =
        [Suite::Groups, Suite::Transforms, Suite::Quant, Suite::Qha, Suite::Apps, Suite::Shearlet];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Groups => "groups",
            Suite::Transforms => "transforms",
            Suite::Quant => "quant",
            Suite::Qha => "qha",
            Suite::Apps => "apps",
            Suite::Shearlet => "shearlet",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "groups" => Suite::Groups,
            "transforms" => Suite::Transforms,
            "quant" => Suite::Quant,
            "qha" => Suite::Qha,
            "apps" => Suite::Apps,
            "shearlet" => Suite::Shearlet,
            "all" => Suite::All,
            _ => return Err(Error::Config(format!("unknown suite '{}'", s))),
        })
    }
}

/// Affine verification grid: carrier `t in [tmin, tmax)` with `n` samples and a
/// symmetric exponential lattice `(step, count)` per algebra axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Profile {
    pub name: &'static str,
    pub tmin: f64,
    pub tmax: f64,
    pub n: usize,
    pub u: (f64, usize),
    pub v: (f64, usize),
}

/// Refinement ladder; `L1` is the main verification grid. The `u` step always equals
/// the carrier step so dilations land on carrier nodes.
pub const L0: Profile = Profile { name: "L0", tmin: -2.0, tmax: 2.0, n: 128, u: (1.0 / 32.0, 81), v: (0.125, 65) };
pub const L1: Profile = Profile { name: "L1", tmin: -2.0, tmax: 2.0, n: 256, u: (1.0 / 64.0, 193), v: (0.125, 97) };
pub const L2: Profile = Profile { name: "L2", tmin: -2.0, tmax: 2.0, n: 512, u: (1.0 / 128.0, 449), v: (0.125, 129) };
pub const LEVELS: [Profile; 3] = [L0, L1, L2];

/// Wide lattice on which `quantize o dequantize` is the identity to ~1e-10 for
/// localized operators.
pub const WIDE: Profile =
    Profile { name: "wide", tmin: -1.5, tmax: 1.5, n: 192, u: (1.0 / 64.0, 257), v: (1.0 / 16.0, 385) };

/// Phase-retrieval grids (the carrier extends towards small `r`).
pub const RETRIEVAL: [Profile; 3] = [
    Profile { name: "R0", tmin: -3.0, tmax: 1.0, n: 64, u: (1.0 / 16.0, 65), v: (1.0 / 16.0, 65) },
    Profile { name: "R1", tmin: -3.0, tmax: 1.0, n: 128, u: (1.0 / 32.0, 129), v: (1.0 / 16.0, 65) },
    Profile { name: "R2", tmin: -3.0, tmax: 1.0, n: 256, u: (1.0 / 64.0, 257), v: (1.0 / 16.0, 65) },
];

impl Profile {
    pub fn carrier(&self) -> Result<Arc<CarrierGrid>> {
        Ok(Arc::new(CarrierGrid::log_1d(self.tmin, self.tmax, self.n)?))
    }

    pub fn context(&self, sign: OrbitSign) -> Result<TransformContext> {
        let rep = Representation::new(Group::Affine, self.carrier()?, sign)?;
        TransformContext::from_axes(rep, &[self.u, self.v])
    }

    pub fn quantizer(&self) -> Result<Quantizer> {
        Ok(Quantizer::new(self.context(OrbitSign::Plus)?))
    }

    pub fn label(&self) -> String {
        format!(
            "{} affine carrier t[{},{}) N={} lattice u {}x{} v {}x{}",
            self.name, self.tmin, self.tmax, self.n, self.u.1, self.u.0, self.v.1, self.v.0
        )
    }
}

pub struct Verifier {
    pub seed: u64,
    pub tolerance_scale: f64,
    pub overrides: BTreeMap<String, f64>,
    records: Vec<Record>,
    timings: Timings,
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

impl Verifier {
    pub fn new(seed: u64, tolerance_scale: f64, overrides: BTreeMap<String, f64>) -> Self {
        Verifier { seed, tolerance_scale, overrides, records: Vec::new(), timings: Timings::new() }
    }

    /// Independent random stream per section name.
    pub fn rng(&self, stream: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv(stream))
    }

    fn tolerance(&self, id: &str, default: f64) -> f64 {
        let base = self
            .overrides
            .iter()
            .filter(|(k, _)| id.starts_with(k.as_str()))
            .max_by_key(|(k, _)| k.len())
            .map(|(_, v)| *v)
            .unwrap_or(default);
        base * self.tolerance_scale
    }

    /// Records `error <= tolerance`.
    pub fn check(&mut self, id: &str, anchor: &str, error: f64, tolerance: f64, grid: &str) {
        let tolerance = self.tolerance(id, tolerance);
        let pass = error.is_finite() && error <= tolerance;
        self.records.push(Record {
            id: id.to_string(),
            anchor: anchor.to_string(),
            error,
            tolerance,
            grid: grid.to_string(),
            pass,
        });
    }

    /// Records that a sequence of errors decreases: error is the worst ratio of consecutive levels.
    pub fn check_decreasing(&mut self, id: &str, anchor: &str, errors: &[f64], grid: &str) {
        let worst = errors.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
        self.check(id, anchor, worst, 1.0, grid);
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn run(&mut self, suite: Suite) -> Result<()> {
        let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
        for part in parts {
            let t = Instant::now();
            match part {
                Suite::Groups => groups::run(self)?,
                Suite::Transforms => transforms::run(self)?,
                Suite::Quant => quant::run(self)?,
                Suite::Qha => qha::run(self)?,
                Suite::Apps => apps::run(self)?,
                Suite::Shearlet => shearlet::run(self)?,
                Suite::All => unreachable!(),
            }
            self.timings.insert(part.name().to_string(), t.elapsed().as_secs_f64());
        }
        Ok(())
    }

    pub fn finish(self, suite: Suite) -> (Report, Timings) {
        (Report::new(suite.name(), self.seed, self.tolerance_scale, self.records), self.timings)
    }
}

/// Runs a suite and returns the report and section timings.
pub fn run_suite(
    suite: Suite,
    seed: u64,
    tolerance_scale: f64,
    overrides: BTreeMap<String, f64>,
) -> Result<(Report, Timings)> {
    let mut v = Verifier::new(seed, tolerance_scale, overrides);
    v.run(suite)?;
    Ok(v.finish(suite))
}

pub(crate) fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

pub(crate) fn max_abs(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
