use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TANGENT_C: f64 = 0.37;

const WARP_CHECK_POINTS: usize = 1001;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    #[default]
    Linear,
    Root,
    Tangent,
}

impl ScheduleKind {
    pub fn name(self) -> &'static str {
        match self {
            ScheduleKind::Linear => "linear",
            ScheduleKind::Root => "root",
            ScheduleKind::Tangent => "tangent",
        }
    }
}

impl std::str::FromStr for ScheduleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(ScheduleKind::Linear),
            "root" => Ok(ScheduleKind::Root),
            "tangent" => Ok(ScheduleKind::Tangent),
            other => Err(Error::InvalidArgument(format!(
                "unknown schedule `{other}`"
            ))),
        }
    }
}

/// Monotone map `F: [0, 1] -> [0, 1]` shaping the ramps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Warp {
    pub kind: ScheduleKind,
    pub tangent_c: f64,
}

impl Warp {
    pub fn new(kind: ScheduleKind, tangent_c: f64) -> Result<Self> {
        let w = Self { kind, tangent_c };
        w.validate()?;
        Ok(w)
    }

    pub fn eval(&self, f: f64) -> f64 {
        match self.kind {
            ScheduleKind::Linear => f,
            ScheduleKind::Root => f.sqrt(),
            ScheduleKind::Tangent => {
                let c = self.tangent_c;
                let edge = (0.5 / c).tan();
                (((f - 0.5) / c).tan() + edge) / (2.0 * edge)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tangent_c > 0.0 && self.tangent_c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tangent constant must be positive, got {}",
                self.tangent_c
            )));
        }
        let f0 = self.eval(0.0);
        let f1 = self.eval(1.0);
        if f0.abs() > 1e-12 || (f1 - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "{} warp maps the endpoints to ({f0}, {f1})",
                self.kind.name()
            )));
        }
        let mut prev = f0;
        for k in 1..WARP_CHECK_POINTS {
            let v = self.eval(k as f64 / (WARP_CHECK_POINTS - 1) as f64);
            if !(v > prev) || !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "{} warp with c = {} is not strictly increasing on [0, 1]",
                    self.kind.name(),
                    self.tangent_c
                )));
            }
            prev = v;
        }
        Ok(())
    }
}

/// Ramp shape, magnitude `delta` and step count `p`. `p = 0` is the empty protocol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    warp: Warp,
    delta: f64,
    p: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleJson {
    pub kind: ScheduleKind,
    pub delta: f64,
    pub p: usize,
    #[serde(default = "default_c")]
    pub c: f64,
}

fn default_c() -> f64 {
    DEFAULT_TANGENT_C
}

impl Schedule {
    pub fn new(kind: ScheduleKind, delta: f64, p: usize) -> Result<Self> {
        Self::with_tangent_c(kind, delta, p, DEFAULT_TANGENT_C)
    }

    pub fn with_tangent_c(
        kind: ScheduleKind,
        delta: f64,
        p: usize,
        tangent_c: f64,
    ) -> Result<Self> {
        Self::from_warp(Warp::new(kind, tangent_c)?, delta, p)
    }

    pub fn from_warp(warp: Warp, delta: f64, p: usize) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "delta must be positive, got {delta}"
            )));
        }
        Ok(Self { warp, delta, p })
    }

    pub fn kind(&self) -> ScheduleKind {
        self.warp.kind
    }

    pub fn warp(&self) -> Warp {
        self.warp
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn tangent_c(&self) -> f64 {
        self.warp.tangent_c
    }

    pub fn to_json(&self) -> ScheduleJson {
        ScheduleJson {
            kind: self.kind(),
            delta: self.delta,
            p: self.p,
            c: self.tangent_c(),
        }
    }

    pub fn from_json(doc: &ScheduleJson) -> Result<Self> {
        Self::with_tangent_c(doc.kind, doc.delta, doc.p, doc.c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleSequence {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
}

impl AngleSequence {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// `f_j = j/(p+1)`, `γ_j = Δ·F(f_j)`, `β_j = Δ·(1 - F(f_j))` for `j = 1..p`.
pub fn schedule_angles(s: &Schedule) -> AngleSequence {
    let (gammas, betas) = (1..=s.p)
        .map(|j| {
            let f = s.warp.eval(j as f64 / (s.p + 1) as f64);
            (s.delta * f, s.delta * (1.0 - f))
        })
        .unzip();
    AngleSequence { gammas, betas }
}
