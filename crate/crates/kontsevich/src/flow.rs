use std::io::Write;

use nalgebra::DMatrix;
use ncalg::{q_to_f64, Element};
use repspace::{max_abs, IndexTables, Mode, RepPoint};
use serde::Serialize;

use crate::error::KError;
use crate::system::{vector_field, HamiltonianSpec, KSystem, VectorField};

/// Inverses along the flow are refused beyond this 1-norm condition number.
pub const COND_LIMIT: f64 = 1e10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowConfig {
    pub dt: f64,
    pub steps: usize,
    /// Highest trace power `M` monitored.
    pub max_power: u32,
    /// Record a sample every this many steps (the last step is always kept).
    pub sample_every: usize,
    /// Upper bound on `dt · steps`.
    pub horizon: f64,
    pub seed: u64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { dt: 1e-3, steps: 10_000, max_power: 4, sample_every: 100, horizon: 1e3, seed: 0 }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<(), KError> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(KError::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if self.max_power == 0 {
            return Err(KError::Config("max_power must be at least 1".into()));
        }
        if self.sample_every == 0 {
            return Err(KError::Config("sample_every must be at least 1".into()));
        }
        if self.dt * self.steps as f64 > self.horizon {
            return Err(KError::Config(format!("dt·steps = {} exceeds the horizon {}", self.dt * self.steps as f64, self.horizon)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub step: usize,
    pub time: f64,
    /// Relative drift of `tr(h^m)`, `m = 1..M`.
    pub trace_drift: Vec<f64>,
    /// Largest entry drift of `X(vuv⁻¹u⁻¹)`, relative to its initial size.
    pub phi_drift: f64,
    /// `max ‖XΘXᵀΘᵀ − Id‖` over `u, v`; absent on GL points.
    pub constraint: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConservationReport {
    pub hamiltonian: String,
    pub dt: f64,
    pub steps: usize,
    pub initial_traces: Vec<f64>,
    pub max_trace_drift: Vec<f64>,
    pub max_phi_drift: f64,
    pub max_constraint: Option<f64>,
    pub max_cond: f64,
}

impl ConservationReport {
    /// Worst drift over all monitored observables.
    pub fn max_drift(&self) -> f64 {
        self.max_trace_drift.iter().copied().fold(self.max_phi_drift, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub report: ConservationReport,
    #[serde(skip)]
    pub final_u: DMatrix<f64>,
    #[serde(skip)]
    pub final_v: DMatrix<f64>,
}

impl Trajectory {
    pub fn to_json(&self) -> Result<String, KError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per sample: `step,time,tr1..trM,phi,constraint`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), KError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["step".to_string(), "time".to_string()];
        header.extend((1..=self.report.max_trace_drift.len()).map(|m| format!("trace_drift_{m}")));
        header.extend(["phi_drift".to_string(), "constraint".to_string()]);
        w.write_record(&header)?;
        for s in &self.samples {
            let mut row = vec![s.step.to_string(), s.time.to_string()];
            row.extend(s.trace_drift.iter().map(|d| d.to_string()));
            row.push(s.phi_drift.to_string());
            row.push(s.constraint.map(|c| c.to_string()).unwrap_or_default());
            w.write_record(&row)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Matrices for every letter of the two-generator algebra.
struct Letters {
    mats: Vec<[DMatrix<f64>; 2]>,
}

impl Letters {
    fn eval(&self, x: &Element, n: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(n, n);
        for (w, c) in x.iter() {
            let mut m = DMatrix::identity(n, n);
            for l in w.letters() {
                m = &m * &self.mats[l.gen as usize][l.inv as usize];
            }
            out += m * q_to_f64(c);
        }
        out
    }
}

fn norm1(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Inverse through LU, with the 1-norm condition number.
fn inverse(m: &DMatrix<f64>) -> Option<(DMatrix<f64>, f64)> {
    let inv = m.clone().lu().try_inverse()?;
    let cond = norm1(m) * norm1(&inv);
    cond.is_finite().then_some((inv, cond))
}

struct Integrator<'a> {
    sys: &'a KSystem,
    field: VectorField,
    n: usize,
    max_cond: f64,
}

impl Integrator<'_> {
    fn letters(&mut self, u: &DMatrix<f64>, v: &DMatrix<f64>, step: usize) -> Result<Letters, KError> {
        let mut mats = vec![[DMatrix::zeros(0, 0), DMatrix::zeros(0, 0)], [DMatrix::zeros(0, 0), DMatrix::zeros(0, 0)]];
        for (g, m, name) in [(self.sys.u, u, "X(u)"), (self.sys.v, v, "X(v)")] {
            let (inv, cond) = inverse(m).ok_or(KError::Singular { step, which: name.into(), cond: f64::INFINITY })?;
            if cond > COND_LIMIT {
                return Err(KError::Singular { step, which: name.into(), cond });
            }
            self.max_cond = self.max_cond.max(cond);
            mats[g as usize] = [m.clone(), inv];
        }
        Ok(Letters { mats })
    }

    fn rhs(&mut self, u: &DMatrix<f64>, v: &DMatrix<f64>, step: usize) -> Result<(DMatrix<f64>, DMatrix<f64>), KError> {
        let l = self.letters(u, v, step)?;
        Ok((l.eval(&self.field.u, self.n), l.eval(&self.field.v, self.n)))
    }

    fn rk4(&mut self, u: &DMatrix<f64>, v: &DMatrix<f64>, dt: f64, step: usize) -> Result<(DMatrix<f64>, DMatrix<f64>), KError> {
        let (k1u, k1v) = self.rhs(u, v, step)?;
        let (k2u, k2v) = self.rhs(&(u + &k1u * (dt / 2.0)), &(v + &k1v * (dt / 2.0)), step)?;
        let (k3u, k3v) = self.rhs(&(u + &k2u * (dt / 2.0)), &(v + &k2v * (dt / 2.0)), step)?;
        let (k4u, k4v) = self.rhs(&(u + &k3u * dt), &(v + &k3v * dt), step)?;
        let s = dt / 6.0;
        let nu = u + (k1u + k2u * 2.0 + k3u * 2.0 + k4u) * s;
        let nv = v + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * s;
        Ok((nu, nv))
    }
}

struct Observables {
    traces: Vec<f64>,
    phi: DMatrix<f64>,
}

fn observe(sys: &KSystem, spec: &HamiltonianSpec, l: &Letters, n: usize, max_power: u32) -> Observables {
    let h = l.eval(&spec.h, n);
    let mut pow = h.clone();
    let mut traces = vec![pow.trace()];
    for _ in 1..max_power {
        pow = &pow * &h;
        traces.push(pow.trace());
    }
    Observables { traces, phi: l.eval(&sys.phi_element(), n) }
}

fn constraint(t: &IndexTables, m: &DMatrix<f64>) -> f64 {
    max_abs(&(m * t.theta_conj(m) - DMatrix::identity(m.nrows(), m.nrows())))
}

/// Integrates `ẋ = X(m∘⟪h, x⟫)` from `p` with fixed-step RK4 and measures
/// how far the conserved quantities move. Nothing is projected back.
pub fn flow(sys: &KSystem, p: &RepPoint, spec: &HamiltonianSpec, cfg: &FlowConfig) -> Result<Trajectory, KError> {
    cfg.validate()?;
    let n = p.n();
    let twisted = p.dims().mode() == Mode::Twisted;
    let tables = p.tables();
    let mut it = Integrator { sys, field: vector_field(sys, spec), n, max_cond: 0.0 };
    let (mut u, mut v) = (p.matrix(sys.u).clone(), p.matrix(sys.v).clone());

    let l0 = it.letters(&u, &v, 0)?;
    let o0 = observe(sys, spec, &l0, n, cfg.max_power);
    let phi_scale = max_abs(&o0.phi).max(1.0);
    let measure = |l: &Letters, u: &DMatrix<f64>, v: &DMatrix<f64>, step: usize| {
        let o = observe(sys, spec, l, n, cfg.max_power);
        let trace_drift = o.traces.iter().zip(&o0.traces).map(|(a, b)| (a - b).abs() / b.abs().max(1.0)).collect();
        let phi_drift = max_abs(&(&o.phi - &o0.phi)) / phi_scale;
        let constraint = twisted.then(|| constraint(tables, u).max(constraint(tables, v)));
        Sample { step, time: step as f64 * cfg.dt, trace_drift, phi_drift, constraint }
    };

    let first = measure(&l0, &u, &v, 0);
    let mut report = ConservationReport {
        hamiltonian: spec.label(),
        dt: cfg.dt,
        steps: cfg.steps,
        initial_traces: o0.traces.clone(),
        max_trace_drift: first.trace_drift.clone(),
        max_phi_drift: first.phi_drift,
        max_constraint: first.constraint,
        max_cond: 0.0,
    };
    let mut samples = vec![first];
    for step in 1..=cfg.steps {
        (u, v) = it.rk4(&u, &v, cfg.dt, step)?;
        if !(u.iter().chain(v.iter()).all(|x| x.is_finite())) {
            return Err(KError::NonFinite(step));
        }
        let l = it.letters(&u, &v, step)?;
        let s = measure(&l, &u, &v, step);
        for (m, d) in report.max_trace_drift.iter_mut().zip(&s.trace_drift) {
            *m = m.max(*d);
        }
        report.max_phi_drift = report.max_phi_drift.max(s.phi_drift);
        report.max_constraint = s.constraint.map(|c| report.max_constraint.unwrap_or(0.0).max(c));
        if step % cfg.sample_every == 0 || step == cfg.steps {
            samples.push(s);
        }
    }
    report.max_cond = it.max_cond;
    Ok(Trajectory { samples, report, final_u: u, final_v: v })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderCheck {
    pub drift_dt: f64,
    pub drift_half: f64,
    pub ratio: f64,
}

/// Max `tr(h)` drift at `dt` and at `dt/2` over the same horizon.
pub fn order_check(sys: &KSystem, p: &RepPoint, spec: &HamiltonianSpec, cfg: &FlowConfig) -> Result<OrderCheck, KError> {
    let coarse = flow(sys, p, spec, cfg)?;
    let fine_cfg = FlowConfig { dt: cfg.dt / 2.0, steps: cfg.steps * 2, sample_every: cfg.sample_every * 2, ..cfg.clone() };
    let fine = flow(sys, p, spec, &fine_cfg)?;
    let (a, b) = (coarse.report.max_trace_drift[0], fine.report.max_trace_drift[0]);
    Ok(OrderCheck { drift_dt: a, drift_half: b, ratio: if b > 0.0 { a / b } else { f64::INFINITY } })
}
