//! Oracle-equivalence suite behind `cvtele verify`.
//!
//! Every check compares a function under test with an independent route
//! (Fock-space numerics, a second closed form, or a quoted value) and records
//! the worst deviation together with the parameters where it occurred. The
//! functions under test are held in [`Subjects`] so a test can swap one out
//! and confirm the suite notices.

use std::f64::consts::PI;

use cvtele::entanglement::{logneg_closed, LogNegativity};
use cvtele::fock::{
    basis_change_5050, build_state, herald_tps, numeric_characteristic, numeric_logneg, numeric_quadrature,
    numeric_squeezing, numeric_wigner, overlap, tps_plus_minus, HeraldingSetup,
};
use cvtele::numerics::{integrate_phase_plane, Envelope, QuadratureSpec};
use cvtele::states::{
    chi_input, chi_resource, coincidence_ratio, photon_number_prob, quadrature_amplitude, squeezing_closed,
    wigner_catlike, wigner_resource,
};
use cvtele::teleport::{
    fidelity_closed, fidelity_numeric, negativity_minimum, threshold, wigner_output_field, CROSS_CHECK_TOLERANCE,
};
use cvtele::{
    BogoliubovMap, Complex64, Cutoff, FidelityResult, FockState, Grid2D, InputKind, ResourceKind, SqueezeParams,
    StateSpec, TeleportJob,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Tier;

type Result<T> = cvtele::Result<T>;

/// The library functions exercised by the suite.
#[derive(Clone, Copy)]
pub struct Subjects {
    pub chi_input: fn(InputKind, Complex64) -> Result<Complex64>,
    pub chi_resource: fn(ResourceKind, SqueezeParams, Complex64, Complex64) -> Result<Complex64>,
    pub wigner_resource: fn(ResourceKind, SqueezeParams, Complex64, Complex64) -> Result<f64>,
    pub wigner_catlike: fn(f64, f64, Complex64) -> Result<f64>,
    pub quadrature_amplitude: fn(ResourceKind, SqueezeParams, f64, f64) -> Result<Complex64>,
    pub photon_number_prob: fn(ResourceKind, SqueezeParams, u64) -> Result<f64>,
    pub squeezing_closed: fn(ResourceKind, f64) -> Result<f64>,
    pub coincidence_ratio: fn(f64) -> Result<f64>,
    pub logneg_closed: fn(ResourceKind, f64) -> Result<LogNegativity>,
    pub fidelity_closed: fn(&TeleportJob) -> Result<FidelityResult>,
    pub fidelity_numeric: fn(&TeleportJob) -> Result<FidelityResult>,
}

impl Default for Subjects {
    fn default() -> Self {
        Self {
            chi_input,
            chi_resource,
            wigner_resource,
            wigner_catlike,
            quadrature_amplitude,
            photon_number_prob,
            squeezing_closed,
            coincidence_ratio,
            logneg_closed,
            fidelity_closed,
            fidelity_numeric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Outside tolerance against a quoted value known to be inconsistent
    /// with its own defining expression.
    ExpectedDivergence,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Parameters at the worst deviation, or of the failing evaluation.
    pub parameters: Value,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tier: String,
    pub passed: usize,
    pub failed: usize,
    pub expected_divergences: usize,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Running maximum of one check's deviations.
struct Probe {
    worst: f64,
    parameters: Value,
    samples: usize,
}

impl Probe {
    fn record(&mut self, parameters: Value, deviation: f64) {
        self.samples += 1;
        // NaN counts as the worst possible deviation.
        let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        if deviation > self.worst || self.samples == 1 {
            self.worst = deviation;
            self.parameters = parameters;
        }
    }
}

/// Collects check records.
struct Suite {
    records: Vec<CheckRecord>,
}

impl Suite {
    fn run<F>(&mut self, name: &str, tolerance: f64, body: F) -> &mut CheckRecord
    where
        F: FnOnce(&mut Probe) -> Result<()>,
    {
        let mut probe = Probe {
            worst: 0.0,
            parameters: Value::Null,
            samples: 0,
        };
        let (status, note) = match body(&mut probe) {
            Ok(()) if probe.worst <= tolerance => (Status::Pass, None),
            Ok(()) => (Status::Fail, None),
            Err(e) => {
                probe.worst = f64::INFINITY;
                (Status::Fail, Some(format!("evaluation failed: {e}")))
            }
        };
        self.records.push(CheckRecord {
            name: name.to_owned(),
            status,
            max_deviation: probe.worst,
            tolerance,
            parameters: probe.parameters,
            samples: probe.samples,
            note,
        });
        self.records.last_mut().expect("just pushed")
    }

    /// A check whose quoted reference is known to be off: exceeding the
    /// tolerance is reported as an expected divergence rather than a failure.
    fn documented<F>(&mut self, name: &str, tolerance: f64, note: &str, body: F)
    where
        F: FnOnce(&mut Probe) -> Result<()>,
    {
        let record = self.run(name, tolerance, body);
        if record.status == Status::Fail && record.note.is_none() {
            record.status = Status::ExpectedDivergence;
            record.note = Some(note.to_owned());
        }
    }
}

const RESOURCES: [ResourceKind; 2] = [ResourceKind::Tmsv, ResourceKind::Tps];

/// Parameter grids for a tier.
struct Grids {
    squeezing: Vec<f64>,
    phases: Vec<f64>,
    basis_change: (f64, usize),
    heralding: bool,
}

impl Grids {
    fn for_tier(tier: Tier) -> Self {
        match tier {
            Tier::Fast => Self {
                squeezing: vec![0.5, 1.0],
                phases: vec![0.0],
                basis_change: (0.5, 40),
                heralding: false,
            },
            Tier::Full => Self {
                squeezing: vec![0.25, 0.5, 1.0, 1.5],
                phases: vec![0.0, PI],
                basis_change: (0.8, 60),
                heralding: true,
            },
        }
    }
}

fn distance_outside(x: f64, lo: f64, hi: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        (lo - x).max(x - hi).max(0.0)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct ResourceState {
    kind: ResourceKind,
    sq: SqueezeParams,
    state: FockState,
}

fn resource_states(grids: &Grids) -> Result<Vec<ResourceState>> {
    let mut out = Vec::new();
    for kind in RESOURCES {
        for &r in &grids.squeezing {
            for &phi in &grids.phases {
                let sq = SqueezeParams::new(r, phi)?;
                let state = build_state(StateSpec::resource(kind, sq), Cutoff::Auto)?;
                out.push(ResourceState { kind, sq, state });
            }
        }
    }
    Ok(out)
}

fn resource_json(s: &ResourceState) -> Value {
    json!({ "kind": s.kind.label(), "r": s.sq.r(), "phi": s.sq.phi() })
}

fn with(base: &Value, extra: Value) -> Value {
    let mut merged = base.clone();
    if let (Value::Object(m), Value::Object(e)) = (&mut merged, extra) {
        m.extend(e);
    }
    merged
}

/// Quoted coincidence ratio at `r = 1`, inconsistent with the ratio of the
/// photon-number distributions it is stated for.
const QUOTED_COINCIDENCE_RATIO: f64 = 0.3;

/// Band quoted for the coincidence ratio at `r = 5`.
const COINCIDENCE_BAND_R5: (f64, f64) = (5e-8, 8e-8);

/// Quoted crossing points of `W(0)` for the optimised cat, with tolerance.
const THRESHOLDS: [(ResourceKind, f64); 2] = [(ResourceKind::Tps, 0.20), (ResourceKind::Tmsv, 0.35)];
const THRESHOLD_BAND: f64 = 0.02;

/// Quoted output Wigner minima at `r = 0.5`, with tolerances.
const MINIMA: [(ResourceKind, f64, f64); 2] = [(ResourceKind::Tps, -0.20, 0.03), (ResourceKind::Tmsv, -0.05, 0.02)];

pub fn run(tier: Tier, subjects: &Subjects) -> Report {
    let grids = Grids::for_tier(tier);
    let mut suite = Suite { records: Vec::new() };
    let s = subjects;

    suite.run("numerics.linearity", 1e-10, |p| {
        let spec = QuadratureSpec::new(64, Envelope::isotropic(1.0));
        let f = |a: Complex64| Complex64::from((-a.norm_sqr()).exp());
        let g = |a: Complex64| Complex64::from((-2.0 * a.norm_sqr()).exp() * a.norm_sqr());
        let (wa, wb) = (0.7, -1.3);
        let combined = integrate_phase_plane(|a| f(a) * wa + g(a) * wb, &spec)?.value;
        let split = integrate_phase_plane(f, &spec)?.value * wa + integrate_phase_plane(g, &spec)?.value * wb;
        p.record(json!({ "a": wa, "b": wb }), (combined - split).norm());
        Ok(())
    });

    let states = resource_states(&grids);
    let states = match states {
        Ok(states) => states,
        Err(e) => {
            suite.run("fock.build_state", 0.0, |_| Err(e));
            Vec::new()
        }
    };

    suite.run("states.chi_normalization", 1e-10, |p| {
        for st in &states {
            let chi = (s.chi_resource)(st.kind, st.sq, Complex64::default(), Complex64::default())?;
            p.record(resource_json(st), (chi - 1.0).norm());
        }
        for input in inputs() {
            let chi = (s.chi_input)(input, Complex64::default())?;
            p.record(json!({ "input": input.label() }), (chi - 1.0).norm());
        }
        Ok(())
    });

    let two_mode_points = [
        (c(0.0, 0.0), c(0.0, 0.0)),
        (c(0.184, 0.0), c(-0.184, 0.0)),
        (c(0.2, 0.3), c(0.1, -0.4)),
        (c(-0.5, 0.2), c(0.3, 0.6)),
    ];

    suite.run("states.chi_resource", 1e-6, |p| {
        for st in &states {
            for &(a1, a2) in &two_mode_points {
                let fock = numeric_characteristic(&st.state, &[a1, a2])?.value;
                let closed = (s.chi_resource)(st.kind, st.sq, a1, a2)?;
                let params = with(&resource_json(st), json!({ "alpha1": [a1.re, a1.im], "alpha2": [a2.re, a2.im] }));
                p.record(params, (fock - closed).norm());
            }
        }
        Ok(())
    });

    suite.run("states.wigner_resource", 1e-6, |p| {
        for st in &states {
            for &(a, b) in &two_mode_points {
                let fock = numeric_wigner(&st.state, &[a, b])?.value;
                let closed = (s.wigner_resource)(st.kind, st.sq, a, b)?;
                let params = with(&resource_json(st), json!({ "alpha": [a.re, a.im], "beta": [b.re, b.im] }));
                p.record(params, (fock - closed).abs());
            }
        }
        Ok(())
    });

    suite.run("states.quadrature_amplitude", 1e-6, |p| {
        for st in &states {
            for (xa, xb) in [(0.0, 0.0), (0.5, -0.3), (1.2, 0.9), (-2.0, 1.0)] {
                let fock = numeric_quadrature(&st.state, &[xa, xb])?.value;
                let closed = (s.quadrature_amplitude)(st.kind, st.sq, xa, xb)?;
                p.record(with(&resource_json(st), json!({ "x_a": xa, "x_b": xb })), (fock - closed).norm());
            }
        }
        Ok(())
    });

    suite.run("states.photon_number_prob", 1e-6, |p| {
        for st in &states {
            for n in 0..8u64 {
                let fock = st.state.amplitude2(n as usize, n as usize).norm_sqr();
                let closed = (s.photon_number_prob)(st.kind, st.sq, n)?;
                p.record(with(&resource_json(st), json!({ "n": n })), (fock - closed).abs());
            }
        }
        Ok(())
    });

    suite.run("states.photon_number_normalization", 1e-10, |p| {
        for kind in RESOURCES {
            for &r in &grids.squeezing {
                let sq = SqueezeParams::new(r, 0.0)?;
                let mut total = 0.0;
                let mut n = 0u64;
                // Terms fall off like tanh^{2n} r; stop well past round-off.
                loop {
                    let term = (s.photon_number_prob)(kind, sq, n)?;
                    total += term;
                    n += 1;
                    if (term < 1e-18 && n > 10) || n > 5000 {
                        break;
                    }
                }
                p.record(json!({ "kind": kind.label(), "r": r, "terms": n }), (total - 1.0).abs());
            }
        }
        Ok(())
    });

    suite.run("states.squeezing_closed", 1e-6, |p| {
        for st in &states {
            let numeric = numeric_squeezing(&st.state, 0.5 * st.sq.phi() + 0.5 * PI)?;
            let closed = (s.squeezing_closed)(st.kind, st.sq.r())?;
            p.record(resource_json(st), (numeric - closed).abs());
        }
        Ok(())
    });

    suite.run("states.squeezing_ordering", 0.0, |p| {
        for k in 1..=20 {
            let r = 0.1 * k as f64;
            let tmsv = (s.squeezing_closed)(ResourceKind::Tmsv, r)?.abs();
            let tps = (s.squeezing_closed)(ResourceKind::Tps, r)?.abs();
            p.record(json!({ "r": r }), (tmsv - tps).max(0.0));
        }
        Ok(())
    });

    suite.run("states.wigner_catlike", 1e-6, |p| {
        for (rho, phase) in [(0.313, 0.0), (0.5, 1.3)] {
            let state = build_state(StateSpec::CatLike { rho, phase }, Cutoff::Fixed(60))?;
            for a in [c(0.0, 0.0), c(0.8, 0.0), c(-0.4, 0.6), c(0.3, -1.1)] {
                let fock = numeric_wigner(&state, &[a])?.value;
                let closed = (s.wigner_catlike)(rho, phase, a)?;
                p.record(json!({ "rho": rho, "phase": phase, "alpha": [a.re, a.im] }), (fock - closed).abs());
            }
        }
        Ok(())
    });

    suite.run("states.chi_input", 1e-6, |p| {
        for input in inputs() {
            let state = build_state(input.into(), Cutoff::Fixed(60))?;
            for a in [c(0.0, 1.0), c(0.8, 0.0), c(-0.4, 0.6)] {
                let fock = numeric_characteristic(&state, &[a])?.value;
                let closed = (s.chi_input)(input, a)?;
                p.record(json!({ "input": input.label(), "alpha": [a.re, a.im] }), (fock - closed).norm());
            }
        }
        Ok(())
    });

    suite.run("states.bogoliubov_determinant", 1e-12, |p| {
        // Entries grow like e^r, so the cancellation costs eps cosh^2 r beyond this.
        for r in [0.1, 1.0, 2.0, 3.0] {
            for phi in [0.0, 1.0, PI] {
                let sq = SqueezeParams::new(r, phi)?;
                p.record(json!({ "r": r, "phi": phi }), (BogoliubovMap::new(&sq).determinant() - 1.0).abs());
            }
        }
        Ok(())
    });

    suite.run("states.chi_continuity", 1e-6, |p| {
        let (a1, a2) = (c(0.6, -0.2), c(-0.3, 0.5));
        for r in [1e-6, 1e-7] {
            let sq = SqueezeParams::new(r, 0.0)?;
            let tps = (s.chi_resource)(ResourceKind::Tps, sq, a1, a2)?;
            let tmsv = (s.chi_resource)(ResourceKind::Tmsv, sq, a1, a2)?;
            p.record(json!({ "r": r }), (tps - tmsv).norm());
        }
        Ok(())
    });

    suite.run("states.coincidence_ratio", 1e-6, |p| {
        let pairs: Vec<_> = states.iter().filter(|st| st.sq.phi() == 0.0).collect();
        for tps in pairs.iter().filter(|st| st.kind == ResourceKind::Tps) {
            let Some(tmsv) = pairs.iter().find(|st| st.kind == ResourceKind::Tmsv && st.sq.r() == tps.sq.r()) else {
                continue;
            };
            let fock = tps.state.amplitude2(1, 1).norm_sqr() / tmsv.state.amplitude2(1, 1).norm_sqr();
            let closed = (s.coincidence_ratio)(tps.sq.r())?;
            p.record(json!({ "r": tps.sq.r() }), (fock - closed).abs());
        }
        Ok(())
    });

    suite.run("states.coincidence_ratio_large_r", 0.0, |p| {
        let value = (s.coincidence_ratio)(5.0)?;
        let (lo, hi) = COINCIDENCE_BAND_R5;
        p.record(json!({ "r": 5.0, "value": value, "band": [lo, hi] }), distance_outside(value, lo, hi));
        Ok(())
    });

    suite.documented(
        "states.coincidence_ratio_quoted",
        0.05,
        "the quoted ratio at r = 1 is about 0.3; the photon-number distributions give 0.447",
        |p| {
            let value = (s.coincidence_ratio)(1.0)?;
            p.record(json!({ "r": 1.0, "value": value, "quoted": QUOTED_COINCIDENCE_RATIO }), (value - QUOTED_COINCIDENCE_RATIO).abs());
            Ok(())
        },
    );

    suite.run("entanglement.logneg_closed", 1e-6, |p| {
        for st in states.iter().filter(|st| st.sq.phi() == 0.0) {
            let numeric = numeric_logneg(&st.state)?.bits();
            let closed = (s.logneg_closed)(st.kind, st.sq.r())?.bits();
            p.record(resource_json(st), (numeric - closed).abs());
        }
        Ok(())
    });

    suite.run("entanglement.ordering", 0.0, |p| {
        let mut previous = [f64::NEG_INFINITY; 2];
        for k in 1..=50 {
            let r = 0.1 * k as f64;
            let tmsv = (s.logneg_closed)(ResourceKind::Tmsv, r)?.bits();
            let tps = (s.logneg_closed)(ResourceKind::Tps, r)?.bits();
            let ordered = (tmsv - tps).max(0.0);
            let falling = (previous[0] - tmsv).max(previous[1] - tps).max(0.0);
            p.record(json!({ "r": r }), ordered.max(falling));
            previous = [tmsv, tps];
        }
        Ok(())
    });

    suite.run("fock.global_phase", 1e-12, |p| {
        let sq = SqueezeParams::new(0.7, 0.3)?;
        let state = build_state(StateSpec::Tps(sq), Cutoff::Auto)?;
        let shifted = state.clone().with_global_phase(1.9);
        let a = [c(0.2, 0.1), c(-0.3, 0.4)];
        let chi = numeric_characteristic(&state, &a)?.value - numeric_characteristic(&shifted, &a)?.value;
        let w = numeric_wigner(&state, &a)?.value - numeric_wigner(&shifted, &a)?.value;
        let l = numeric_logneg(&state)?.bits() - numeric_logneg(&shifted)?.bits();
        p.record(json!({ "r": 0.7, "phi": 0.3, "phase": 1.9 }), chi.norm().max(w.abs()).max(l.abs()));
        Ok(())
    });

    suite.run("fock.basis_change", 1e-8, |p| {
        let (r, cutoff) = grids.basis_change;
        let sq = SqueezeParams::new(r, 0.0)?;
        let rotated = basis_change_5050(&build_state(StateSpec::Tps(sq), Cutoff::Fixed(cutoff))?)?;
        let direct = tps_plus_minus(sq, 2 * cutoff)?;
        let o = overlap(&rotated, &direct)?.norm_sqr();
        p.record(json!({ "r": r, "cutoff": cutoff, "overlap": o }), 1.0 - o);
        Ok(())
    });

    if grids.heralding {
        suite.run("fock.herald_monotone", 0.0, |p| {
            let sq = SqueezeParams::new(0.8, 0.0)?;
            let ideal = build_state(StateSpec::Tps(sq), Cutoff::Auto)?;
            let mut previous = 0.0;
            for t in [0.5, 0.7, 0.9, 0.99] {
                let (state, probability) = herald_tps(sq, HeraldingSetup::new(t, Cutoff::Auto)?)?;
                let f = overlap(&state, &ideal)?.norm_sqr();
                let floor = if t == 0.99 { 0.999 } else { 0.0 };
                let deviation = (previous - f).max(floor - f).max(0.0);
                p.record(json!({ "r": 0.8, "transmissivity": t, "fidelity": f, "probability": probability }), deviation);
                previous = f;
            }
            Ok(())
        });
    }

    teleport_checks(&mut suite, &grids, s);

    let count = |status| suite.records.iter().filter(|c| c.status == status).count();
    Report {
        tier: match tier {
            Tier::Fast => "fast".into(),
            Tier::Full => "full".into(),
        },
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        expected_divergences: count(Status::ExpectedDivergence),
        checks: suite.records,
    }
}

fn inputs() -> [InputKind; 3] {
    [
        InputKind::Coherent { alpha0: c(2.0, 0.0) },
        InputKind::SqueezedVacuum { rho: 0.4, phase: 0.7 },
        InputKind::CatLike { rho: 0.313, phase: 0.0 },
    ]
}

fn job_json(job: &TeleportJob) -> Value {
    json!({ "input": job.input.label(), "resource": job.resource.label(), "r": job.sq.r() })
}

fn teleport_checks(suite: &mut Suite, grids: &Grids, s: &Subjects) {
    let coherent = |alpha0| InputKind::Coherent { alpha0 };
    let cat = |rho| InputKind::CatLike { rho, phase: 0.0 };

    suite.run("teleport.route_agreement", CROSS_CHECK_TOLERANCE, |p| {
        for input in [coherent(c(0.0, 0.0)), coherent(c(1.0, 0.5)), cat(0.0), cat(0.313)] {
            for kind in RESOURCES {
                for &r in &grids.squeezing {
                    let job = TeleportJob::new(input, kind, r)?;
                    let closed = (s.fidelity_closed)(&job)?.value;
                    let numeric = (s.fidelity_numeric)(&job)?.value;
                    p.record(with(&job_json(&job), json!({ "rho": rho_of(input) })), (closed - numeric).abs());
                }
            }
        }
        for rho in [0.0, 0.313] {
            for &r in &grids.squeezing {
                let job = TeleportJob::new(InputKind::SqueezedVacuum { rho, phase: 0.0 }, ResourceKind::Tmsv, r)?;
                let closed = (s.fidelity_closed)(&job)?.value;
                let numeric = (s.fidelity_numeric)(&job)?.value;
                p.record(with(&job_json(&job), json!({ "rho": rho })), (closed - numeric).abs());
            }
        }
        Ok(())
    });

    suite.documented(
        "teleport.squeezed_tps_tabulated",
        CROSS_CHECK_TOLERANCE,
        "the tabulated squeezed-vacuum entry for the subtracted resource differs from the fidelity integral",
        |p| {
            for &r in &grids.squeezing {
                let job = TeleportJob::new(InputKind::SqueezedVacuum { rho: 0.313, phase: 0.0 }, ResourceKind::Tps, r)?;
                let closed = (s.fidelity_closed)(&job)?.value;
                let numeric = (s.fidelity_numeric)(&job)?.value;
                p.record(with(&job_json(&job), json!({ "rho": 0.313 })), (closed - numeric).abs());
            }
            Ok(())
        },
    );

    suite.run("teleport.fidelity_range", 1e-3, |p| {
        for input in [coherent(c(1.0, 0.0)), cat(0.313), InputKind::SqueezedVacuum { rho: 0.313, phase: 0.0 }] {
            for kind in RESOURCES {
                for r in [0.1, 0.5, 1.0, 5.0] {
                    let job = TeleportJob::new(input, kind, r)?;
                    let f = (s.fidelity_numeric)(&job)?.value;
                    let mut deviation = distance_outside(f, 0.0, 1.0);
                    if r == 5.0 {
                        deviation = deviation.max(1.0 - f);
                    }
                    p.record(job_json(&job), deviation);
                }
            }
        }
        Ok(())
    });

    suite.run("teleport.coherent_independence", 1e-9, |p| {
        for kind in RESOURCES {
            for &r in &grids.squeezing {
                let f = |alpha0| -> Result<f64> { Ok((s.fidelity_numeric)(&TeleportJob::new(coherent(alpha0), kind, r)?)?.value) };
                let reference = f(c(0.0, 0.0))?;
                for alpha0 in [c(1.0, 0.0), c(2.0, 1.0)] {
                    p.record(json!({ "resource": kind.label(), "r": r, "alpha0": [alpha0.re, alpha0.im] }), (f(alpha0)? - reference).abs());
                }
            }
        }
        Ok(())
    });

    suite.run("teleport.vacuum_reduction", 1e-12, |p| {
        for &r in &grids.squeezing {
            let squeezed = (s.fidelity_closed)(&TeleportJob::new(InputKind::SqueezedVacuum { rho: 0.0, phase: 0.0 }, ResourceKind::Tmsv, r)?)?;
            let vacuum = (s.fidelity_closed)(&TeleportJob::new(coherent(c(0.0, 0.0)), ResourceKind::Tmsv, r)?)?;
            p.record(json!({ "r": r }), (squeezed.value - vacuum.value).abs());
        }
        Ok(())
    });

    suite.run("teleport.fidelity_ordering", 0.0, |p| {
        for k in 1..=20 {
            let r = 0.1 * k as f64;
            let f1 = (s.fidelity_closed)(&TeleportJob::new(cat(0.313), ResourceKind::Tmsv, r)?)?.value;
            let f2 = (s.fidelity_closed)(&TeleportJob::new(cat(0.313), ResourceKind::Tps, r)?)?.value;
            p.record(json!({ "rho": 0.313, "r": r, "f1": f1, "f2": f2 }), (f1 - f2).max(0.0));
        }
        Ok(())
    });

    suite.run("teleport.wigner_normalization", 1e-6, |p| {
        for kind in RESOURCES {
            let job = TeleportJob::new(cat(0.313), kind, 0.5)?.with_grid(Grid2D::new(6.0, 121)?);
            let integral = wigner_output_field(&job)?.integral();
            p.record(with(&job_json(&job), json!({ "extent": 6.0, "grid": 121 })), (integral - 1.0).abs());
        }
        Ok(())
    });

    suite.run("teleport.negativity_minimum", 0.0, |p| {
        for (kind, quoted, band) in MINIMA {
            let job = TeleportJob::new(cat(0.313), kind, 0.5)?;
            let minimum = negativity_minimum(&job)?;
            let params = with(&job_json(&job), json!({ "minimum": minimum.value, "quoted": quoted, "band": band }));
            p.record(params, distance_outside(minimum.value, quoted - band, quoted + band));
        }
        Ok(())
    });

    suite.run("teleport.threshold", 0.0, |p| {
        for (kind, quoted) in THRESHOLDS {
            let r_star = threshold(0.313, 0.0, kind, 0.05, 1.5, 30)?.unwrap_or(f64::NAN);
            let params = json!({ "resource": kind.label(), "rho": 0.313, "r_star": r_star, "quoted": quoted });
            p.record(params, distance_outside(r_star, quoted - THRESHOLD_BAND, quoted + THRESHOLD_BAND));
        }
        Ok(())
    });
}

fn rho_of(input: InputKind) -> Option<f64> {
    match input {
        InputKind::CatLike { rho, .. } | InputKind::SqueezedVacuum { rho, .. } => Some(rho),
        _ => None,
    }
}
