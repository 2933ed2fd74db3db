//! Cart-pole dynamics with the cart acceleration as input.
//!
//! The cart is assumed fully actuated, so its dynamics are cancelled and the
//! commanded acceleration `u = ẍ` drives the pendulum through the coupling term.

use std::ops::{Add, Mul, Neg};

use nalgebra::{Matrix4, Vector4};

use crate::error::{invalid, Error, Result};

/// Physical parameters of the pendulum and the controller sampling time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartPoleParams {
    /// Pendulum mass (kg).
    pub mass: f64,
    /// Pivot to centre-of-gravity length (m).
    pub length: f64,
    /// Moment of inertia about the centre of gravity (kg·m²).
    pub inertia: f64,
    /// Gravitational acceleration (m/s²).
    pub gravity: f64,
    /// Viscous joint damping (N·s/rad).
    pub damping: f64,
    /// Sampling time (s).
    pub sample_time: f64,
}

impl Default for CartPoleParams {
    /// Parameters measured on the reference rig.
    fn default() -> Self {
        CartPoleParams {
            mass: 0.116527,
            length: 0.15,
            inertia: 8.7395e-4,
            gravity: 9.80665,
            damping: 0.000161,
            sample_time: 0.001,
        }
    }
}

impl CartPoleParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mass", self.mass),
            ("length", self.length),
            ("inertia", self.inertia),
            ("gravity", self.gravity),
            ("sample_time", self.sample_time),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("{v} must be finite and > 0")));
            }
        }
        if !(self.damping.is_finite() && self.damping >= 0.0) {
            return Err(invalid("damping", format!("{} must be >= 0", self.damping)));
        }
        Ok(())
    }

    /// Inertia about the pivot, `I + m·L²`.
    pub fn pivot_inertia(&self) -> f64 {
        self.inertia + self.mass * self.length * self.length
    }
}

/// Cart position (m), cart velocity (m/s), pendulum angle from upright (rad)
/// and angular velocity (rad/s).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlantState {
    pub x: f64,
    pub x_dot: f64,
    pub q: f64,
    pub q_dot: f64,
}

impl PlantState {
    pub const ZERO: PlantState = PlantState {
        x: 0.0,
        x_dot: 0.0,
        q: 0.0,
        q_dot: 0.0,
    };

    pub fn new(x: f64, x_dot: f64, q: f64, q_dot: f64) -> Self {
        PlantState { x, x_dot, q, q_dot }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x, self.x_dot, self.q, self.q_dot]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        PlantState::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_vector(self) -> Vector4<f64> {
        Vector4::from(self.to_array())
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

impl Add for PlantState {
    type Output = PlantState;
    fn add(self, o: PlantState) -> PlantState {
        PlantState::new(self.x + o.x, self.x_dot + o.x_dot, self.q + o.q, self.q_dot + o.q_dot)
    }
}

impl Mul<PlantState> for f64 {
    type Output = PlantState;
    fn mul(self, s: PlantState) -> PlantState {
        PlantState::new(self * s.x, self * s.x_dot, self * s.q, self * s.q_dot)
    }
}

impl Neg for PlantState {
    type Output = PlantState;
    fn neg(self) -> PlantState {
        PlantState::new(-self.x, -self.x_dot, -self.q, -self.q_dot)
    }
}

/// State-space model `ẋ = A·x + B·u` (or `x⁺ = A·x + B·u` when discrete).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearModel {
    pub a: Matrix4<f64>,
    pub b: Vector4<f64>,
    pub discrete: bool,
}

/// Time derivative of the state under cart acceleration `u` (m/s²).
pub fn nonlinear_derivative(s: &PlantState, u: f64, p: &CartPoleParams) -> PlantState {
    let ml = p.mass * p.length;
    let q_ddot = (ml * p.gravity * s.q.sin() - ml * s.q.cos() * u - p.damping * s.q_dot)
        / p.pivot_inertia();
    PlantState::new(s.x_dot, u, s.q_dot, q_ddot)
}

/// Jacobian of the dynamics at the upright equilibrium.
pub fn linearize(p: &CartPoleParams) -> LinearModel {
    let j = p.pivot_inertia();
    let ml = p.mass * p.length;
    #[rustfmt::skip]
    let a = Matrix4::new(
        0.0, 1.0, 0.0,                0.0,
        0.0, 0.0, 0.0,                0.0,
        0.0, 0.0, 0.0,                1.0,
        0.0, 0.0, ml * p.gravity / j, -p.damping / j,
    );
    let b = Vector4::new(0.0, 1.0, 0.0, -ml / j);
    LinearModel {
        a,
        b,
        discrete: false,
    }
}

/// Forward-Euler discretization: `A_d = I + A·Ts`, `B_d = B·Ts`.
pub fn discretize(model: &LinearModel, ts: f64) -> Result<LinearModel> {
    if model.discrete {
        return Err(invalid("model", "already discrete"));
    }
    if !(ts.is_finite() && ts > 0.0) {
        return Err(invalid("sample_time", format!("{ts} must be > 0")));
    }
    Ok(LinearModel {
        a: Matrix4::identity() + model.a * ts,
        b: model.b * ts,
        discrete: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    Euler,
    #[default]
    Rk4,
}

impl std::str::FromStr for Integrator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euler" => Ok(Integrator::Euler),
            "rk4" => Ok(Integrator::Rk4),
            other => Err(invalid("integrator", format!("`{other}` is not rk4 or euler"))),
        }
    }
}

impl std::fmt::Display for Integrator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Integrator::Euler => "euler",
            Integrator::Rk4 => "rk4",
        })
    }
}

/// Advances the nonlinear dynamics by one sample with `u` held constant.
pub fn integrate_step(
    s: &PlantState,
    u: f64,
    p: &CartPoleParams,
    method: Integrator,
) -> Result<PlantState> {
    let h = p.sample_time;
    let f = |st: &PlantState| nonlinear_derivative(st, u, p);
    let next = match method {
        Integrator::Euler => *s + h * f(s),
        Integrator::Rk4 => {
            let k1 = f(s);
            let k2 = f(&(*s + (0.5 * h) * k1));
            let k3 = f(&(*s + (0.5 * h) * k2));
            let k4 = f(&(*s + h * k3));
            *s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        }
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::NonFinite(format!("plant step produced {next:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upright_is_fixed_point() {
        let p = CartPoleParams::default();
        assert_eq!(nonlinear_derivative(&PlantState::ZERO, 0.0, &p), PlantState::ZERO);
        for m in [Integrator::Euler, Integrator::Rk4] {
            assert_eq!(integrate_step(&PlantState::ZERO, 0.0, &p, m).unwrap(), PlantState::ZERO);
        }
    }

    #[test]
    fn horizontal_pendulum_acceleration() {
        let p = CartPoleParams::default();
        let s = PlantState::new(0.0, 0.0, std::f64::consts::FRAC_PI_2, 0.0);
        let d = nonlinear_derivative(&s, 0.0, &p);
        // m g L / (I + m L²) by hand: 0.171413... / 0.0034958075
        assert!((d.q_dot - 49.033285).abs() < 1e-5, "{}", d.q_dot);
    }

    #[test]
    fn unit_acceleration_coupling() {
        let p = CartPoleParams::default();
        let d = nonlinear_derivative(&PlantState::ZERO, 1.0, &p);
        assert_eq!(d.x_dot, 1.0);
        assert!((d.q_dot + 5.000004).abs() < 1e-5, "{}", d.q_dot);
    }

    #[test]
    fn linear_model_entries() {
        let p = CartPoleParams::default();
        let m = linearize(&p);
        assert!((m.a[(3, 2)] - 49.033285).abs() < 1e-5);
        assert!((m.a[(3, 3)] + 0.046055).abs() < 1e-5);
        assert!((m.b[3] + 5.000004).abs() < 1e-5);
        assert_eq!(m.a[(0, 1)], 1.0);
        assert_eq!(m.a[(2, 3)], 1.0);
        assert!(!m.discrete);

        let undamped = linearize(&CartPoleParams {
            damping: 0.0,
            ..p
        });
        assert_eq!(undamped.a[(3, 3)], 0.0);
    }

    #[test]
    fn euler_discretization() {
        let p = CartPoleParams::default();
        let d = discretize(&linearize(&p), 0.001).unwrap();
        assert!((d.a[(3, 2)] - 0.049033285).abs() < 1e-8);
        assert_eq!(d.a[(0, 1)], 0.001);
        assert_eq!(d.a[(0, 0)], 1.0);
        assert!(d.discrete);
        assert!(discretize(&d, 0.001).is_err());
        assert!(discretize(&linearize(&p), 0.0).is_err());

        let zero = LinearModel {
            a: Matrix4::zeros(),
            b: Vector4::zeros(),
            discrete: false,
        };
        assert_eq!(discretize(&zero, 0.01).unwrap().a, Matrix4::identity());
    }

    #[test]
    fn one_euler_step_by_hand() {
        let p = CartPoleParams::default();
        let s = integrate_step(&PlantState::ZERO, 1.0, &p, Integrator::Euler).unwrap();
        assert_eq!(s.x, 0.0);
        assert_eq!(s.x_dot, 0.001);
        assert!((s.q_dot + 0.005).abs() < 1e-8);
    }

    #[test]
    fn rk4_and_euler_agree_to_second_order() {
        let p = CartPoleParams::default();
        let s0 = PlantState::new(0.0, 0.0, 0.1, 0.0);
        let e = integrate_step(&s0, 0.0, &p, Integrator::Euler).unwrap();
        let r = integrate_step(&s0, 0.0, &p, Integrator::Rk4).unwrap();
        let h2 = p.sample_time * p.sample_time;
        for (a, b) in e.to_array().iter().zip(r.to_array()) {
            assert!((a - b).abs() < 100.0 * h2, "{a} vs {b}");
        }
    }

    #[test]
    fn blow_up_is_reported() {
        let p = CartPoleParams::default();
        let s = PlantState::new(0.0, f64::MAX, 0.0, 0.0);
        assert!(matches!(
            integrate_step(&s, f64::MAX, &p, Integrator::Euler),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn params_validation() {
        assert!(CartPoleParams::default().validate().is_ok());
        let bad = CartPoleParams {
            mass: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = CartPoleParams {
            damping: -1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn integrator_parsing() {
        assert_eq!("RK4".parse::<Integrator>().unwrap(), Integrator::Rk4);
        assert_eq!("euler".parse::<Integrator>().unwrap(), Integrator::Euler);
        assert!("midpoint".parse::<Integrator>().is_err());
    }
}
