use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{OrderingParam, QuasiprobSeries, SeriesControl};
use crate::coupler::{evolve_amplitude, CouplerParams};
use crate::error::{KerrError, Result};

/// Rectangular grid `[x_min, x_max] × [y_min, y_max]` with `nx × ny` nodes,
/// endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridBounds {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridBounds {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = Self { x_min, x_max, y_min, y_max, nx, ny };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || self.x_max <= self.x_min || self.y_max <= self.y_min {
            return Err(KerrError::InvalidParams(format!("degenerate grid extent {self:?}")));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(KerrError::InvalidParams("grid needs at least 2 nodes per axis".into()));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x_axis(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.x_min + i as f64 * self.dx()).collect()
    }

    pub fn y_axis(&self) -> Vec<f64> {
        (0..self.ny).map(|j| self.y_min + j as f64 * self.dy()).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Axes {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Quasiprobability sampled on a grid. `values` is row-major with `y` as the
/// outer index: `values[j * nx + i]` is the value at `(x_i, y_j)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseSpaceGrid {
    pub axes: Axes,
    pub s: f64,
    pub t: f64,
    pub params: CouplerParams,
    pub values: Vec<f64>,
    /// Riemann sum `Σ W dx dy`; close to one when the grid covers the state.
    pub normalization: f64,
}

impl PhaseSpaceGrid {
    pub fn nx(&self) -> usize {
        self.axes.x.len()
    }

    pub fn ny(&self) -> usize {
        self.axes.y.len()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx() + i]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# s={:.16e} t={:.16e}", self.s, self.t);
        let _ = writeln!(out, "# normalization={:.16e}", self.normalization);
        out.push_str("x,y,value\n");
        for (j, y) in self.axes.y.iter().enumerate() {
            for (i, x) in self.axes.x.iter().enumerate() {
                let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", x, y, self.value(i, j));
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Evaluates the quasiprobability series on every node of `bounds` in
/// parallel. A failing node aborts the grid with its coordinates attached.
pub fn quasiprob_grid(
    params: &CouplerParams,
    t: f64,
    s: OrderingParam,
    bounds: &GridBounds,
    ctrl: &SeriesControl,
) -> Result<PhaseSpaceGrid> {
    params.validate()?;
    bounds.validate()?;
    let xs = bounds.x_axis();
    let ys = bounds.y_axis();
    let abar = evolve_amplitude(params, t).as_complex();
    let series = QuasiprobSeries::new(params, t, s, abar);
    let values: Vec<f64> = (0..bounds.nx * bounds.ny)
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (xs[idx % bounds.nx], ys[idx / bounds.nx]);
            series
                .eval(C64::new(x, y), ctrl)
                .map_err(|e| KerrError::GridPoint { x, y, source: Box::new(e) })
        })
        .collect::<Result<_>>()?;
    let normalization = values.iter().sum::<f64>() * bounds.dx() * bounds.dy();
    Ok(PhaseSpaceGrid { axes: Axes { x: xs, y: ys }, s: s.value(), t, params: *params, values, normalization })
}
