//! Figure presets. Every figure uses `κ = 1`, `χ = 0.5`; times such as
//! `3.139997` and `6.36005` are kept exactly as captioned.

use std::f64::consts::PI;

use super::config::{ParamSpec, RunConfig, SweepColumn};
use crate::phase_space::GridBounds;

pub const PRESET_NAMES: &[&str] = &[
    "fig1a",
    "fig1b",
    "fig2a",
    "fig2b",
    "fig2c",
    "fig3a",
    "fig3b",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig5a-solid",
    "fig5a-short",
    "fig5a-long",
    "fig5b-solid",
    "fig5b-short",
    "fig5b-long",
    "fig6",
    "fig7a",
    "fig7b",
];

fn params(delta: f64, alpha1: f64, alpha2: f64) -> ParamSpec {
    ParamSpec { kappa: 1.0, chi: 0.5, delta, alpha1, alpha2 }
}

pub fn preset(name: &str) -> Option<RunConfig> {
    use SweepColumn::*;
    let base = RunConfig { preset: Some(name.to_string()), ..RunConfig::default() };
    let sweep = |p: ParamSpec, columns: Vec<SweepColumn>| RunConfig { params: p, columns, ..base.clone() };
    let wide_grid = GridBounds { x_min: -5.0, x_max: 5.0, y_min: -5.0, y_max: 5.0, nx: 201, ny: 201 };
    let grid = |p: ParamSpec, t: f64, g: GridBounds| RunConfig { params: p, t, grid: g, ..base.clone() };
    let at = |p: ParamSpec, t: f64| RunConfig { params: p, t, ..base.clone() };
    let cfg = match name {
        "fig1a" => sweep(params(0.0, 0.2, 0.2), vec![S, Q, Eta]),
        "fig1b" => sweep(params(50.0, 0.2, 0.2), vec![Q]),
        "fig2a" => sweep(params(0.0, 2.0, 0.0), vec![S, Q, Eta]),
        "fig2b" => sweep(params(50.0, 2.0, 0.0), vec![Q]),
        "fig2c" => sweep(params(50.0, 2.0, 0.0), vec![Eta]),
        "fig3a" => grid(params(0.0, 2.0, 0.0), PI, wide_grid),
        "fig3b" => grid(params(0.0, 2.0, 2.0), PI, wide_grid),
        "fig4a" => grid(params(0.0, 0.2, 0.2), 3.139997, base.grid),
        "fig4b" => grid(params(0.0, 2.0, 0.0), 6.36005, base.grid),
        "fig4c" => grid(params(50.0, 2.0, 0.0), 6.36005, base.grid),
        "fig5a-solid" => at(params(0.0, 2.0, 0.0), PI),
        "fig5a-short" => at(params(0.0, 2.0, 2.0), PI),
        "fig5a-long" => at(params(5f64.sqrt(), 2.0, 0.0), PI),
        "fig5b-solid" => at(params(0.0, 0.2, 0.2), 3.139997),
        "fig5b-short" => at(params(0.0, 2.0, 0.0), 6.36005),
        "fig5b-long" => at(params(50.0, 2.0, 0.0), 6.36005),
        // captioned times: 0, π/4, 2.94 and π
        "fig6" => RunConfig { nodes: 721, ..at(params(0.0, 2.0, 2.0), PI) },
        "fig7a" => sweep(params(0.0, 2.0, 2.0), vec![PhaseVariance]),
        "fig7b" => sweep(params(50.0, 2.0, 2.0), vec![PhaseVariance]),
        _ => return None,
    };
    Some(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves_and_validates() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap_or_else(|| panic!("{name}"));
            cfg.validate().unwrap();
            assert_eq!(cfg.preset.as_deref(), Some(*name));
            assert_eq!((cfg.params.kappa, cfg.params.chi), (1.0, 0.5));
        }
        assert!(preset("fig8").is_none());
    }

    #[test]
    fn captioned_values() {
        assert_eq!(preset("fig4a").unwrap().t, 3.139997);
        assert_eq!(preset("fig4c").unwrap().t, 6.36005);
        assert_eq!(preset("fig4c").unwrap().params.delta, 50.0);
        assert_eq!(preset("fig2b").unwrap().columns, vec![SweepColumn::Q]);
        assert_eq!(preset("fig1a").unwrap().params.alpha2, 0.2);
    }
}
