use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qaoa::{ScheduleKind, Warp, DEFAULT_TANGENT_C};

pub const DEFAULT_DELTA_RANGE: (f64, f64) = (0.01, 6.0);
pub const DEFAULT_DELTA_COUNT: usize = 60;
pub const DEFAULT_P_MAX: usize = 100;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaSpacing {
    #[default]
    Linear,
    Log,
    /// Arbitrary user-supplied values.
    Custom,
}

/// `count` evenly spaced points over `[lo, hi]`, endpoints exact.
pub fn linear_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| {
                if k == count - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

/// `count` geometrically spaced points over `[lo, hi]`.
pub fn log_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    linear_points(a, b, count)
        .into_iter()
        .enumerate()
        .map(|(k, x)| match k {
            0 => lo,
            k if k == count - 1 => hi,
            _ => x.exp(),
        })
        .collect()
}

pub fn p_range(lo: usize, hi: usize, stride: usize) -> Vec<usize> {
    (lo..=hi).step_by(stride.max(1)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    delta_values: Vec<f64>,
    p_values: Vec<usize>,
    delta_spacing: DeltaSpacing,
    schedule: ScheduleKind,
    tangent_c: f64,
    instance_label: String,
}

impl GridSpec {
    pub fn new(
        delta_values: Vec<f64>,
        p_values: Vec<usize>,
        schedule: ScheduleKind,
        instance_label: impl Into<String>,
    ) -> Result<Self> {
        let g = Self {
            delta_values,
            p_values,
            delta_spacing: DeltaSpacing::Custom,
            schedule,
            tangent_c: DEFAULT_TANGENT_C,
            instance_label: instance_label.into(),
        };
        g.validate()?;
        Ok(g)
    }

    /// 60 linear Δ points over `[0.01, 6]` and `p = 1..=100`.
    pub fn default_grid(schedule: ScheduleKind, instance_label: impl Into<String>) -> Self {
        let (lo, hi) = DEFAULT_DELTA_RANGE;
        Self::new(
            linear_points(lo, hi, DEFAULT_DELTA_COUNT),
            p_range(1, DEFAULT_P_MAX, 1),
            schedule,
            instance_label,
        )
        .expect("default grid is valid")
        .with_spacing(DeltaSpacing::Linear)
    }

    pub fn with_spacing(mut self, spacing: DeltaSpacing) -> Self {
        self.delta_spacing = spacing;
        self
    }

    pub fn with_tangent_c(mut self, c: f64) -> Result<Self> {
        Warp::new(self.schedule, c)?;
        self.tangent_c = c;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta_values.is_empty() || self.p_values.is_empty() {
            return Err(Error::InvalidArgument("grid axes must be non-empty".into()));
        }
        if self
            .delta_values
            .iter()
            .any(|d| !(*d > 0.0 && d.is_finite()))
        {
            return Err(Error::InvalidArgument(
                "grid Δ values must be positive".into(),
            ));
        }
        if self.delta_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "grid Δ values must be strictly increasing".into(),
            ));
        }
        if self.p_values[0] == 0 || self.p_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "grid p values must be strictly increasing and at least 1".into(),
            ));
        }
        Warp::new(self.schedule, self.tangent_c)?;
        Ok(())
    }

    pub fn delta_values(&self) -> &[f64] {
        &self.delta_values
    }

    pub fn p_values(&self) -> &[usize] {
        &self.p_values
    }

    pub fn delta_spacing(&self) -> DeltaSpacing {
        self.delta_spacing
    }

    pub fn schedule(&self) -> ScheduleKind {
        self.schedule
    }

    pub fn tangent_c(&self) -> f64 {
        self.tangent_c
    }

    pub fn warp(&self) -> Warp {
        Warp {
            kind: self.schedule,
            tangent_c: self.tangent_c,
        }
    }

    pub fn instance_label(&self) -> &str {
        &self.instance_label
    }

    pub fn n_cells(&self) -> usize {
        self.delta_values.len() * self.p_values.len()
    }
}
