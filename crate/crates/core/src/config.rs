//! JSON run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupfn::{GroupFunction, LatticeAxis};
use crate::groups::{Group, OrbitSign};
use crate::hilbert::{Axis, AxisKind, CarrierGrid, StateVector};
use crate::quant::Quantizer;
use crate::rep::Representation;
use crate::signals::SignalSpec;
use crate::transforms::TransformContext;
use crate::C64;

/// Carrier axis `[min, max)` with `count` samples; log axes take `t = ln r` bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarrierAxisSpec {
    pub kind: AxisKind,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

/// Symmetric lattice axis with an odd number of nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub step: f64,
    pub count: usize,
}

/// Functions on the exponential lattice, given in algebra coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionSpec {
    Zero,
    /// `f(exp X) sqrt(Theta(X)) = exp(-pi |X|^2 / width^2)`.
    Gaussian { width: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RetrievalSpec {
    #[serde(default = "default_cutoff")]
    pub cutoff: f64,
    #[serde(default = "default_floor")]
    pub fidelity_floor: f64,
}

fn default_cutoff() -> f64 {
    1e-2
}

fn default_floor() -> f64 {
    0.99
}

impl Default for RetrievalSpec {
    fn default() -> Self {
        RetrievalSpec { cutoff: default_cutoff(), fidelity_floor: default_floor() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: Group,
    #[serde(default)]
    pub orbit_sign: OrbitSign,
    pub carrier: Vec<CarrierAxisSpec>,
    pub group_grid: Vec<LatticeSpec>,
    #[serde(default)]
    pub signals: BTreeMap<String, SignalSpec>,
    #[serde(default)]
    pub functions: BTreeMap<String, FunctionSpec>,
    #[serde(default)]
    pub suite: Option<String>,
    /// Tolerance overrides keyed by record id or id prefix.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub retrieval: RetrievalSpec,
}

/// Upper bound on lattice points times carrier points for a single transform.
pub const WORK_BUDGET: usize = 400_000_000;

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.group_grid.len() != self.group.dim() {
            return Err(Error::Config(format!(
                "group grid has {} axes, {} needs {}",
                self.group_grid.len(),
                self.group.name(),
                self.group.dim()
            )));
        }
        let carrier = self.carrier_grid()?;
        let lattice: usize = self.group_grid.iter().map(|a| a.count).product();
        if lattice.saturating_mul(carrier.len()) > WORK_BUDGET {
            return Err(Error::Config(format!(
                "grid too large: {} lattice points x {} carrier points",
                lattice,
                carrier.len()
            )));
        }
        if !(0.0..1.0).contains(&self.retrieval.cutoff) {
            return Err(Error::Config("retrieval cutoff must lie in [0, 1)".into()));
        }
        Ok(())
    }

    pub fn carrier_grid(&self) -> Result<CarrierGrid> {
        CarrierGrid::new(
            self.carrier
                .iter()
                .map(|a| match a.kind {
                    AxisKind::Log => Axis::log(a.min, a.max, a.count),
                    AxisKind::Linear => Axis::linear(a.min, a.max, a.count),
                })
                .collect(),
        )
    }

    pub fn representation(&self) -> Result<Representation> {
        Representation::new(self.group, Arc::new(self.carrier_grid()?), self.orbit_sign)
    }

    pub fn lattice_axes(&self) -> Result<Vec<LatticeAxis>> {
        self.group_grid.iter().map(|a| LatticeAxis::symmetric(a.step, a.count)).collect()
    }

    pub fn context(&self) -> Result<TransformContext> {
        let rep = self.representation()?;
        let axes: Vec<(f64, usize)> = self.group_grid.iter().map(|a| (a.step, a.count)).collect();
        TransformContext::from_axes(rep, &axes)
    }

    pub fn quantizer(&self) -> Result<Quantizer> {
        Ok(Quantizer::new(self.context()?))
    }

    pub fn signal(&self, name: &str, carrier: &Arc<CarrierGrid>) -> Result<StateVector> {
        let spec = self
            .signals
            .get(name)
            .ok_or_else(|| Error::Config(format!("unknown signal '{}'", name)))?;
        spec.sample(carrier)
    }

    /// Named function on the exponential lattice; `zero` is always defined.
    pub fn function(&self, name: &str, ctx: &TransformContext) -> Result<GroupFunction> {
        let spec = match self.functions.get(name) {
            Some(s) => s.clone(),
            None if name == "zero" => FunctionSpec::Zero,
            None => return Err(Error::Config(format!("unknown function '{}'", name))),
        };
        let grid = ctx.exp.clone();
        Ok(match spec {
            FunctionSpec::Zero => grid.zeros(),
            FunctionSpec::Gaussian { width } => {
                let g = grid.clone();
                let mut f = grid.sample_coords(|x| {
                    let r2: f64 = x.iter().map(|v| v * v).sum();
                    C64::new((-std::f64::consts::PI * r2 / (width * width)).exp(), 0.0)
                });
                for (i, v) in f.values.iter_mut().enumerate() {
                    *v /= g.group.theta(&g.algebra_point(i)).sqrt();
                }
                f
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "group": "affine",
        "carrier": [{"kind": "log", "min": -2.0, "max": 2.0, "count": 64}],
        "group_grid": [{"step": 0.0625, "count": 33}, {"step": 0.25, "count": 33}],
        "signals": {"g0": {"kind": "gaussian_log", "center": 0.0, "width": 0.3}},
        "seed": 7
    }"#;

    #[test]
    fn parses_and_builds() {
        let cfg = RunConfig::from_json(SAMPLE).unwrap();
        assert_eq!(cfg.orbit_sign, OrbitSign::Plus);
        let q = cfg.quantizer().unwrap();
        assert_eq!(q.ctx.exp.len(), 33 * 33);
        assert!(cfg.signal("g0", &q.ctx.rep.carrier).is_ok());
        assert!(cfg.signal("nope", &q.ctx.rep.carrier).is_err());
        assert!(cfg.function("zero", &q.ctx).unwrap().values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::from_json("{ not json").is_err());
        let wrong_dim = SAMPLE.replace(r#", {"step": 0.25, "count": 33}"#, "");
        assert!(RunConfig::from_json(&wrong_dim).is_err());
        let unknown = SAMPLE.replace("\"seed\": 7", "\"seed\": 7, \"colour\": 1");
        assert!(RunConfig::from_json(&unknown).is_err());
    }
}
