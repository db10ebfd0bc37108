//! Direct integration of `r̈ = −r/r³`, used to cross-check the closed forms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{KeplerOrbit, OrbitClass, PlanePoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryState {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
}

impl TrajectoryState {
    pub fn point(&self) -> PlanePoint {
        PlanePoint::new(self.x, self.y)
    }

    pub fn energy(&self) -> f64 {
        0.5 * (self.vx * self.vx + self.vy * self.vy) - 1.0 / self.x.hypot(self.y)
    }

    pub fn angular_momentum(&self) -> f64 {
        self.x * self.vy - self.y * self.vx
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowConfig {
    /// Number of RK4 steps; `None` covers one time scale (see [`time_scale`]).
    pub steps: Option<usize>,
    /// Step size; `None` uses `1e-4` of the time scale.
    pub dt: Option<f64>,
    /// Keep every `stride`-th state.
    pub stride: usize,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { steps: None, dt: None, stride: 1 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub states: Vec<TrajectoryState>,
}

impl Trajectory {
    /// Largest `|a x + b y + c r − 1|` along the trajectory.
    pub fn max_membership_residual(&self, o: &KeplerOrbit) -> f64 {
        self.states.iter().map(|s| o.residual(s.point()).abs()).fold(0.0, f64::max)
    }

    pub fn max_energy_drift(&self, reference: f64) -> f64 {
        self.states.iter().map(|s| (s.energy() - reference).abs()).fold(0.0, f64::max)
    }

    pub fn max_momentum_drift(&self, reference: f64) -> f64 {
        self.states.iter().map(|s| (s.angular_momentum() - reference).abs()).fold(0.0, f64::max)
    }
}

/// The orbital period for ellipses, otherwise `2π r₀^{3/2}` with `r₀` the
/// pericenter distance.
pub fn time_scale(o: &KeplerOrbit) -> f64 {
    match o.class() {
        OrbitClass::Ellipse => 2.0 * PI * o.geometry().semi_major.unwrap().powf(1.5),
        _ => 2.0 * PI * o.pericenter_distance().powf(1.5),
    }
}

fn accel(x: f64, y: f64) -> (f64, f64) {
    let r2 = x * x + y * y;
    let inv_r3 = 1.0 / (r2 * r2.sqrt());
    (-x * inv_r3, -y * inv_r3)
}

/// RK4 trajectory from the pericenter, moving counterclockwise.
pub fn newton_flow(o: &KeplerOrbit, config: &FlowConfig) -> Result<Trajectory> {
    let scale = time_scale(o);
    let dt = config.dt.unwrap_or(1e-4 * scale);
    let steps = config.steps.unwrap_or_else(|| (scale / dt).round() as usize);
    let stride = config.stride.max(1);
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("step size {dt}")));
    }

    let theta0 = o.pericenter_angle();
    let r0 = o.pericenter_distance();
    let speed = o.angular_momentum() / r0;
    let (s0, c0) = theta0.sin_cos();
    let mut s = [r0 * c0, r0 * s0, -speed * s0, speed * c0];
    let mut t = 0.0;
    let mut states = Vec::with_capacity(steps / stride + 2);
    let push = |states: &mut Vec<TrajectoryState>, t: f64, s: &[f64; 4]| {
        states.push(TrajectoryState { t, x: s[0], y: s[1], vx: s[2], vy: s[3] })
    };
    push(&mut states, t, &s);

    let deriv = |s: &[f64; 4]| {
        let (ax, ay) = accel(s[0], s[1]);
        [s[2], s[3], ax, ay]
    };
    let add = |s: &[f64; 4], k: &[f64; 4], h: f64| [s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2], s[3] + h * k[3]];

    for i in 1..=steps {
        let k1 = deriv(&s);
        let k2 = deriv(&add(&s, &k1, dt / 2.0));
        let k3 = deriv(&add(&s, &k2, dt / 2.0));
        let k4 = deriv(&add(&s, &k3, dt));
        for j in 0..4 {
            s[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        t = i as f64 * dt;
        let r = s[0].hypot(s[1]);
        if !s.iter().all(|v| v.is_finite()) {
            return Err(Error::StepFailure { t, reason: "non-finite state".into() });
        }
        if r < 1e-12 {
            return Err(Error::StepFailure { t, reason: "collision with the center".into() });
        }
        if i % stride == 0 || i == steps {
            push(&mut states, t, &s);
        }
    }
    Ok(Trajectory { states })
}
