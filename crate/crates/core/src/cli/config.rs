use std::f64::consts::PI;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coupler::CouplerParams;
use crate::error::{KerrError, Result};
use crate::phase_space::GridBounds;

/// Coupler parameters in the `(κ, χ, Δ, α₁, α₂)` form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub kappa: f64,
    pub chi: f64,
    pub delta: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl ParamSpec {
    pub fn to_params(&self) -> Result<CouplerParams> {
        CouplerParams::new(self.kappa, self.chi, self.delta, self.alpha1, self.alpha2)
    }
}

impl Default for ParamSpec {
    fn default() -> Self {
        Self { kappa: 1.0, chi: 0.5, delta: 0.0, alpha1: 2.0, alpha2: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeRange {
    pub tmin: f64,
    pub tmax: f64,
    pub tsteps: usize,
}

impl TimeRange {
    /// Sample times, endpoints included. A zero-width range yields one time.
    pub fn times(&self) -> Vec<f64> {
        if self.tmax == self.tmin {
            return vec![self.tmin];
        }
        let h = (self.tmax - self.tmin) / (self.tsteps - 1) as f64;
        (0..self.tsteps).map(|i| self.tmin + i as f64 * h).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = KerrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(KerrError::Config(format!("unknown format {other:?} (expected csv or json)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepColumn {
    S,
    Q,
    #[serde(rename = "eta")]
    Eta,
    #[serde(rename = "phase_variance")]
    PhaseVariance,
}

impl SweepColumn {
    pub fn label(self) -> &'static str {
        match self {
            Self::S => "S",
            Self::Q => "Q",
            Self::Eta => "eta",
            Self::PhaseVariance => "phase_variance",
        }
    }
}

/// Parameter sets compared by `validate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// The four built-in sets.
    Default,
    /// Only the set given by `params`.
    Params,
}

/// Everything a subcommand needs. Resolved from a preset, then a JSON config
/// file merged on top, then command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub params: ParamSpec,
    /// Ordering parameter; each command has its own default when unset
    /// (`0` for `wigner`, `-1` for the phase commands).
    pub s: Option<f64>,
    /// Single evaluation time for `wigner`, `quaddist` and `phasedist`.
    pub t: f64,
    pub times: TimeRange,
    pub grid: GridBounds,
    /// `[x_min, x_max]` for `quaddist`.
    pub x_range: [f64; 2],
    /// Number of nodes for `quaddist` and `phasedist`.
    pub nodes: usize,
    pub columns: Vec<SweepColumn>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub suite: Suite,
    /// Overrides every tolerance of `validate`.
    pub tolerance: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            preset: None,
            params: ParamSpec::default(),
            s: None,
            t: PI,
            times: TimeRange { tmin: 0.0, tmax: 4.0 * PI, tsteps: 1001 },
            grid: GridBounds { x_min: -5.0, x_max: 5.0, y_min: -5.0, y_max: 5.0, nx: 101, ny: 101 },
            x_range: [-5.0, 5.0],
            nodes: 501,
            columns: vec![SweepColumn::S, SweepColumn::Q, SweepColumn::Eta],
            format: OutputFormat::Csv,
            out: None,
            suite: Suite::Default,
            tolerance: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.params.to_params().map_err(|e| KerrError::Config(e.to_string()))?;
        let tr = &self.times;
        if !(tr.tmin.is_finite() && tr.tmax.is_finite()) || tr.tmin < 0.0 || tr.tmin > tr.tmax {
            return Err(KerrError::Config(format!("time range [{}, {}] must satisfy 0 <= tmin <= tmax", tr.tmin, tr.tmax)));
        }
        if tr.tsteps < 2 {
            return Err(KerrError::Config(format!("tsteps = {} must be >= 2", tr.tsteps)));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(KerrError::Config(format!("t = {} must be finite and >= 0", self.t)));
        }
        if let Some(s) = self.s {
            if !(s.is_finite() && s < 1.0) {
                return Err(KerrError::Config(format!("s = {s} must be < 1")));
            }
        }
        self.grid.validate().map_err(|e| KerrError::Config(e.to_string()))?;
        if !(self.x_range[0] < self.x_range[1]) {
            return Err(KerrError::Config(format!("x range {:?} is empty", self.x_range)));
        }
        if self.nodes < 2 {
            return Err(KerrError::Config(format!("nodes = {} must be >= 2", self.nodes)));
        }
        if self.columns.is_empty() {
            return Err(KerrError::Config("at least one sweep column is required".into()));
        }
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0) {
                return Err(KerrError::Config(format!("tolerance {tol} must be positive")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Applies a `key=value` list such as `"alpha1=2 alpha2=0 delta=0"`.
    pub fn apply_set(&mut self, assignments: &str) -> Result<()> {
        for item in assignments.split_whitespace() {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| KerrError::Config(format!("expected key=value, got {item:?}")))?;
            let v: f64 = value
                .parse()
                .map_err(|_| KerrError::Config(format!("{key}: {value:?} is not a number")))?;
            match key {
                "kappa" => self.params.kappa = v,
                "chi" => self.params.chi = v,
                "delta" => self.params.delta = v,
                "alpha1" => self.params.alpha1 = v,
                "alpha2" => self.params.alpha2 = v,
                "s" => self.s = Some(v),
                "t" => self.t = v,
                other => return Err(KerrError::Config(format!("unknown parameter {other:?}"))),
            }
        }
        Ok(())
    }
}

/// Recursively overlays `top` onto `base`; objects merge key by key, any
/// other value replaces.
pub fn merge_json(base: &mut Value, top: Value) {
    match (base, top) {
        (Value::Object(b), Value::Object(t)) => {
            for (k, v) in t {
                match b.get_mut(&k) {
                    Some(slot) => merge_json(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// Overlays a JSON config document onto `base`.
pub fn overlay_config(base: &RunConfig, doc: &str) -> Result<RunConfig> {
    let top: Value = serde_json::from_str(doc).map_err(|e| KerrError::Config(format!("config file: {e}")))?;
    let mut merged = serde_json::to_value(base)?;
    merge_json(&mut merged, top);
    serde_json::from_value(merged).map_err(|e| KerrError::Config(format!("config file: {e}")))
}

/// `"xmin,xmax,ymin,ymax,nx,ny"`.
pub fn parse_grid(spec: &str) -> Result<GridBounds> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = || KerrError::Config(format!("grid {spec:?} must be xmin,xmax,ymin,ymax,nx,ny"));
    if parts.len() != 6 {
        return Err(bad());
    }
    let f = |i: usize| parts[i].parse::<f64>().map_err(|_| bad());
    let u = |i: usize| parts[i].parse::<usize>().map_err(|_| bad());
    Ok(GridBounds { x_min: f(0)?, x_max: f(1)?, y_min: f(2)?, y_max: f(3)?, nx: u(4)?, ny: u(5)? })
}

/// `"xmin,xmax"`.
pub fn parse_range(spec: &str) -> Result<[f64; 2]> {
    let bad = || KerrError::Config(format!("range {spec:?} must be min,max"));
    let (a, b) = spec.split_once(',').ok_or_else(bad)?;
    Ok([a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.preset = Some("fig2b".into());
        cfg.s = Some(-0.5);
        cfg.columns = vec![SweepColumn::Q];
        cfg.out = Some("out.csv".into());
        let back: RunConfig = serde_json::from_str(&cfg.to_json().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn overlay_is_partial() {
        let base = RunConfig::default();
        let merged = overlay_config(&base, r#"{"params": {"delta": 50.0}, "format": "json"}"#).unwrap();
        assert_eq!(merged.params.delta, 50.0);
        assert_eq!(merged.params.alpha1, base.params.alpha1);
        assert_eq!(merged.format, OutputFormat::Json);
        assert!(overlay_config(&base, r#"{"bogus": 1}"#).is_err());
        assert!(overlay_config(&base, "not json").is_err());
    }

    #[test]
    fn set_assignments() {
        let mut cfg = RunConfig::default();
        cfg.apply_set("alpha1=0.2 alpha2=0.2  delta=50 t=1.5").unwrap();
        assert_eq!(cfg.params.alpha1, 0.2);
        assert_eq!(cfg.params.delta, 50.0);
        assert_eq!(cfg.t, 1.5);
        assert!(cfg.apply_set("gamma=1").is_err());
        assert!(cfg.apply_set("alpha1").is_err());
        assert!(cfg.apply_set("alpha1=x").is_err());
    }

    #[test]
    fn grid_and_range_parsing() {
        let g = parse_grid("-4, 4, -3, 3, 81, 61").unwrap();
        assert_eq!((g.nx, g.ny, g.y_min), (81, 61, -3.0));
        assert!(parse_grid("1,2,3").is_err());
        assert_eq!(parse_range("-2,2.5").unwrap(), [-2.0, 2.5]);
        assert!(parse_range("2").is_err());
    }

    #[test]
    fn time_ranges() {
        let single = TimeRange { tmin: 1.0, tmax: 1.0, tsteps: 50 };
        assert_eq!(single.times(), vec![1.0]);
        let r = TimeRange { tmin: 0.0, tmax: 1.0, tsteps: 5 };
        assert_eq!(r.times(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let mut cfg = RunConfig::default();
        cfg.times.tsteps = 1;
        assert!(cfg.validate().is_err());
        cfg.times = TimeRange { tmin: 2.0, tmax: 1.0, tsteps: 5 };
        assert!(cfg.validate().is_err());
    }
}
