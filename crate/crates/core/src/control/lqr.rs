//! Linear quadratic regulator on the Euler-discretized upright model.
//!
//! The gain follows the usual discrete convention `K = (R + BᵀPB)⁻¹BᵀPA` and
//! is applied as `u = −K·(X − X_ref)`, so the closed loop is `A − B·K`.

use nalgebra::{Matrix4, RowVector4, SMatrix, SVector, Vector4};

use super::{saturate, ChannelSet, ControlOutput, Controller, ControllerKind};
use crate::error::{invalid, Error, Result};
use crate::plant::{discretize, linearize, CartPoleParams, LinearModel, PlantState};

/// Gain reported for the reference rig, in `[x, ẋ, q, q̇]` order.
pub const PUBLISHED_GAIN: [f64; 4] = [-13.95, -11.69, -56.16, -7.89];

const DARE_TOLERANCE: f64 = 1e-10;
const DARE_MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GainSource {
    /// Use [`PUBLISHED_GAIN`].
    Published,
    /// Solve the Riccati equation for the configured penalties.
    Computed,
    Custom([f64; 4]),
}

impl std::str::FromStr for GainSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "published" => Ok(GainSource::Published),
            "computed" => Ok(GainSource::Computed),
            other => Err(invalid(
                "gain_source",
                format!("`{other}` is not `published` or `computed`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LqrConfig {
    /// Diagonal of the state penalty.
    pub q_diag: [f64; 4],
    /// Input penalty.
    pub r: f64,
    pub gain_source: GainSource,
    pub u_min: f64,
    pub u_max: f64,
}

impl Default for LqrConfig {
    fn default() -> Self {
        LqrConfig {
            q_diag: [40.0, 1.0, 100.0, 2.0],
            r: 2.0,
            gain_source: GainSource::Published,
            u_min: -29.42,
            u_max: 29.42,
        }
    }
}

impl LqrConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_diag.iter().any(|q| !(q.is_finite() && *q >= 0.0)) {
            return Err(invalid("q", "diagonal entries must be finite and >= 0"));
        }
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(invalid("r", format!("{} must be > 0", self.r)));
        }
        if !(self.u_min < self.u_max) {
            return Err(invalid("u_range", "u_min must be below u_max"));
        }
        if let GainSource::Custom(k) = self.gain_source {
            if k.iter().any(|v| !v.is_finite()) {
                return Err(invalid("gain", "entries must be finite"));
            }
        }
        Ok(())
    }

    pub fn q_matrix(&self) -> Matrix4<f64> {
        Matrix4::from_diagonal(&Vector4::from(self.q_diag))
    }
}

/// Iterates the discrete Riccati recursion from `P = Q` to its fixed point.
///
/// Stops once an update moves no entry by more than `1e-10`, or by more than
/// rounding noise when `P` is large enough that `1e-10` is below its resolution.
pub fn solve_dare<const N: usize>(
    a: &SMatrix<f64, N, N>,
    b: &SVector<f64, N>,
    q: &SMatrix<f64, N, N>,
    r: f64,
) -> Result<SMatrix<f64, N, N>> {
    if !(r > 0.0) {
        return Err(invalid("r", format!("{r} must be > 0")));
    }
    let mut p = *q;
    let mut delta = f64::INFINITY;
    for _ in 0..DARE_MAX_ITERATIONS {
        let next = riccati_step(a, b, q, r, &p);
        delta = (next - p).abs().max();
        if !delta.is_finite() {
            break;
        }
        p = next;
        if delta < DARE_TOLERANCE.max(16.0 * f64::EPSILON * p.abs().max()) {
            return Ok(p);
        }
    }
    Err(Error::RiccatiDiverged {
        iterations: DARE_MAX_ITERATIONS,
        last_delta: delta,
    })
}

fn riccati_step<const N: usize>(
    a: &SMatrix<f64, N, N>,
    b: &SVector<f64, N>,
    q: &SMatrix<f64, N, N>,
    r: f64,
    p: &SMatrix<f64, N, N>,
) -> SMatrix<f64, N, N> {
    let at_p = a.transpose() * p;
    let denom = r + b.dot(&(p * b));
    let g = at_p * b;
    let next = at_p * a - g * g.transpose() / denom + q;
    // rounding drift away from symmetry grows geometrically if left alone
    (next + next.transpose()) * 0.5
}

/// Max-norm of the Riccati equation residual at `p`.
pub fn dare_residual<const N: usize>(
    a: &SMatrix<f64, N, N>,
    b: &SVector<f64, N>,
    q: &SMatrix<f64, N, N>,
    r: f64,
    p: &SMatrix<f64, N, N>,
) -> f64 {
    (riccati_step(a, b, q, r, p) - p).abs().max()
}

/// Eigenvalue magnitudes of `A − B·K`, largest first.
pub fn closed_loop_eigenvalue_magnitudes(model: &LinearModel, k: &RowVector4<f64>) -> [f64; 4] {
    let closed = model.a - model.b * k;
    let eig = closed.complex_eigenvalues();
    let mut mags = [eig[0].norm(), eig[1].norm(), eig[2].norm(), eig[3].norm()];
    mags.sort_by(|a, b| b.total_cmp(a));
    mags
}

/// Largest eigenvalue magnitude of `A − B·K`.
pub fn closed_loop_spectral_radius(model: &LinearModel, k: &RowVector4<f64>) -> f64 {
    closed_loop_eigenvalue_magnitudes(model, k)[0]
}

/// Optimal gain for a discrete model; fails if the resulting loop is unstable.
pub fn lqr_gain(cfg: &LqrConfig, model: &LinearModel) -> Result<RowVector4<f64>> {
    cfg.validate()?;
    if !model.discrete {
        return Err(invalid("model", "LQR gain needs the discrete model"));
    }
    let p = solve_dare(&model.a, &model.b, &cfg.q_matrix(), cfg.r)?;
    let pb = p * model.b;
    let k = (pb.transpose() * model.a) / (cfg.r + model.b.dot(&pb));
    let rho = closed_loop_spectral_radius(model, &k);
    if rho >= 1.0 {
        return Err(Error::UnstableClosedLoop(rho));
    }
    Ok(k)
}

/// State feedback `u = −K·(X − X_ref)`, saturated.
pub fn lqr_control(
    s: &PlantState,
    x_ref: f64,
    k: &RowVector4<f64>,
    bounds: (f64, f64),
) -> ControlOutput {
    let err = [s.x - x_ref, s.x_dot, s.q, s.q_dot];
    let parts = ChannelSet::new(-k[0] * err[0], -k[1] * err[1], -k[2] * err[2], -k[3] * err[3]);
    ControlOutput {
        u: saturate(parts.sum(), bounds.0, bounds.1),
        intermediates: parts,
        weights: ChannelSet::new(0.25, 0.25, 0.25, 0.25),
    }
}

#[derive(Debug, Clone)]
pub struct LqrController {
    gain: RowVector4<f64>,
    bounds: (f64, f64),
}

impl LqrController {
    pub fn new(cfg: &LqrConfig, params: &CartPoleParams) -> Result<Self> {
        cfg.validate()?;
        let gain = match cfg.gain_source {
            GainSource::Published => RowVector4::from(PUBLISHED_GAIN),
            GainSource::Custom(k) => RowVector4::from(k),
            GainSource::Computed => {
                let model = discretize(&linearize(params), params.sample_time)?;
                lqr_gain(cfg, &model)?
            }
        };
        Ok(LqrController {
            gain,
            bounds: (cfg.u_min, cfg.u_max),
        })
    }

    pub fn gain(&self) -> RowVector4<f64> {
        self.gain
    }
}

impl Controller for LqrController {
    fn kind(&self) -> ControllerKind {
        ControllerKind::Lqr
    }

    fn control(&self, state: &PlantState, x_ref: f64) -> Result<ControlOutput> {
        if !state.is_finite() || !x_ref.is_finite() {
            return Err(Error::NonFinite(format!("state {state:?}, x_ref {x_ref}")));
        }
        Ok(lqr_control(state, x_ref, &self.gain, self.bounds))
    }
}
