//! Acceptance criteria, one line each. Tolerances are fixed here.

use std::f64::consts::PI;
use std::process::ExitCode;

use cvtele::entanglement::{logneg, logneg_closed, EntangledResource};
use cvtele::fock::{
    basis_change_5050, build_state, herald_tps, numeric_logneg, optimize_cat_rho, overlap, tps_plus_minus,
    HeraldingSetup,
};
use cvtele::states::{chi_input, chi_resource, coincidence_ratio, photon_number_prob, squeezing_closed};
use cvtele::teleport::{fidelity_closed, fidelity_numeric, negativity_minimum, threshold, wigner_output_field};
use cvtele::{Complex64, Cutoff, FidelityRoute, Grid2D, InputKind, ResourceKind, SqueezeParams, StateSpec, TeleportJob};
use cvtele_cli::args::Tier;
use cvtele_cli::verify::{self, Status, Subjects};

const RESOURCES: [ResourceKind; 2] = [ResourceKind::Tmsv, ResourceKind::Tps];
const STANDARD_R: [f64; 4] = [0.25, 0.5, 1.0, 1.5];

const LOGNEG_TOLERANCE: f64 = 1e-6;
const ROUTE_TOLERANCE: f64 = 1e-6;
const CAT_RHO: (f64, f64) = (0.313, 0.005);
const CAT_FIDELITY: (f64, f64) = (0.997, 0.001);
const THRESHOLD_TPS: (f64, f64) = (0.20, 0.02);
const THRESHOLD_TMSV: (f64, f64) = (0.35, 0.02);
const MINIMUM_TPS: (f64, f64) = (-0.20, 0.03);
const MINIMUM_TMSV: (f64, f64) = (-0.05, 0.02);
const RATIO_BAND_R5: (f64, f64) = (5e-8, 8e-8);
const RATIO_FORMULA_TOLERANCE: f64 = 1e-12;
const RATIO_QUOTED_R1: (f64, f64) = (0.447, 5e-4);
const HERALD_FLOOR: f64 = 0.999;
const BASIS_CHANGE_FLOOR: f64 = 1.0 - 1e-8;
const INDEPENDENCE_TOLERANCE: f64 = 1e-9;
const FIELD_NORM_TOLERANCE: f64 = 1e-6;
const CHI_NORM_TOLERANCE: f64 = 1e-10;
const PND_NORM_TOLERANCE: f64 = 1e-10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(value: f64, (target, tol): (f64, f64)) -> bool {
    (value - target).abs() <= tol
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lib<T>(r: cvtele::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn logneg_against_fock() -> Outcome {
    let mut worst = 0.0f64;
    for kind in RESOURCES {
        for r in STANDARD_R {
            let sq = lib(SqueezeParams::new(r, 0.0))?;
            let state = lib(build_state(StateSpec::resource(kind, sq), Cutoff::Auto))?;
            let numeric = lib(numeric_logneg(&state))?.bits();
            let closed = lib(logneg_closed(kind, r))?.bits();
            worst = worst.max((numeric - closed).abs());
        }
    }
    verdict(worst <= LOGNEG_TOLERANCE, format!("max |closed - fock| = {worst:.3e} (tol {LOGNEG_TOLERANCE:e})"))
}

fn fidelity_routes() -> Outcome {
    let mut worst = 0.0f64;
    let mut gamma_routes = 0;
    let inputs = [
        InputKind::Coherent { alpha0: Complex64::new(1.0, 0.5) },
        InputKind::CatLike { rho: 0.0, phase: 0.0 },
        InputKind::CatLike { rho: 0.313, phase: 0.0 },
    ];
    for input in inputs {
        for kind in RESOURCES {
            for r in STANDARD_R {
                let job = lib(TeleportJob::new(input, kind, r))?;
                let closed = lib(fidelity_closed(&job))?;
                let integral = lib(fidelity_numeric(&job))?;
                if closed.route == FidelityRoute::GammaOperator {
                    gamma_routes += 1;
                }
                worst = worst.max((closed.value - integral.value).abs());
            }
        }
    }
    verdict(
        worst <= ROUTE_TOLERANCE && gamma_routes == 8,
        format!("max |closed - integral| = {worst:.3e} (tol {ROUTE_TOLERANCE:e}); {gamma_routes} gamma-operator rows"),
    )
}

fn cat_optimum() -> Outcome {
    let (rho, f) = lib(optimize_cat_rho(Complex64::new(1.0, 0.0), PI))?;
    verdict(
        within(rho, CAT_RHO) && within(f, CAT_FIDELITY),
        format!("rho* = {rho:.4}, overlap = {f:.5}"),
    )
}

fn thresholds() -> Outcome {
    let tps = lib(threshold(0.313, 0.0, ResourceKind::Tps, 0.05, 1.5, 30))?.unwrap_or(f64::NAN);
    let tmsv = lib(threshold(0.313, 0.0, ResourceKind::Tmsv, 0.05, 1.5, 30))?.unwrap_or(f64::NAN);
    verdict(
        within(tps, THRESHOLD_TPS) && within(tmsv, THRESHOLD_TMSV),
        format!("r* tps = {tps:.4}, r* tmsv = {tmsv:.4}"),
    )
}

fn minima() -> Outcome {
    let cat = InputKind::CatLike { rho: 0.313, phase: 0.0 };
    let tps = lib(negativity_minimum(&lib(TeleportJob::new(cat, ResourceKind::Tps, 0.5))?))?.value;
    let tmsv = lib(negativity_minimum(&lib(TeleportJob::new(cat, ResourceKind::Tmsv, 0.5))?))?.value;
    verdict(
        within(tps, MINIMUM_TPS) && within(tmsv, MINIMUM_TMSV),
        format!("min W2 = {tps:.4}, min W1 = {tmsv:.4} at r = 0.5"),
    )
}

fn coincidence_ratios() -> Outcome {
    // One-pair probabilities: 4 t^2 / (cosh^6 r (1 + t^2)) against t^2 / cosh^2 r.
    let formula = |r: f64| 4.0 / (r.cosh().powi(4) * (1.0 + r.tanh().powi(2)));
    let at5 = lib(coincidence_ratio(5.0))?;
    let at1 = lib(coincidence_ratio(1.0))?;
    let gap = (at1 - formula(1.0)).abs().max((at5 / formula(5.0) - 1.0).abs());
    verdict(
        at5 >= RATIO_BAND_R5.0 && at5 <= RATIO_BAND_R5.1 && gap <= RATIO_FORMULA_TOLERANCE && within(at1, RATIO_QUOTED_R1),
        format!("ratio(5) = {at5:.3e}, ratio(1) = {at1:.4}, formula gap {gap:.1e}"),
    )
}

fn heralding() -> Outcome {
    let sq = lib(SqueezeParams::new(0.8, 0.0))?;
    let ideal = lib(build_state(StateSpec::Tps(sq), Cutoff::Auto))?;
    let mut fidelities = Vec::new();
    for t in [0.5, 0.7, 0.9, 0.99] {
        let (state, _) = lib(herald_tps(sq, lib(HeraldingSetup::new(t, Cutoff::Auto))?))?;
        fidelities.push(lib(overlap(&state, &ideal))?.norm_sqr());
    }
    let monotone = fidelities.windows(2).all(|w| w[1] >= w[0]);
    let last = *fidelities.last().unwrap();
    verdict(
        monotone && last >= HERALD_FLOOR,
        format!("fidelity over T = 0.5, 0.7, 0.9, 0.99: {fidelities:.5?}"),
    )
}

fn basis_change() -> Outcome {
    let sq = lib(SqueezeParams::new(0.8, 0.0))?;
    let rotated = lib(basis_change_5050(&lib(build_state(StateSpec::Tps(sq), Cutoff::Fixed(60)))?))?;
    let direct = lib(tps_plus_minus(sq, 120))?;
    let o = lib(overlap(&rotated, &direct))?.norm_sqr();
    verdict(o >= BASIS_CHANGE_FLOOR, format!("|<rotated|plus-minus>|^2 = 1 - {:.1e}", (1.0 - o).max(0.0)))
}

fn orderings() -> Outcome {
    let cat = InputKind::CatLike { rho: 0.313, phase: 0.0 };
    let mut problems = Vec::new();
    let mut independence = 0.0f64;
    for k in 1..=20 {
        let r = 0.1 * k as f64;
        let f1 = lib(fidelity_closed(&lib(TeleportJob::new(cat, ResourceKind::Tmsv, r))?))?.value;
        let f2 = lib(fidelity_closed(&lib(TeleportJob::new(cat, ResourceKind::Tps, r))?))?.value;
        if f2 < f1 {
            problems.push(format!("F2 < F1 at r = {r}"));
        }
        if lib(squeezing_closed(ResourceKind::Tps, r))?.abs() < lib(squeezing_closed(ResourceKind::Tmsv, r))?.abs() {
            problems.push(format!("|S_TPS| < |S_TMSV| at r = {r}"));
        }
        for kind in RESOURCES {
            let f = |alpha0| -> Result<f64, String> {
                let job = lib(TeleportJob::new(InputKind::Coherent { alpha0 }, kind, r))?;
                Ok(lib(fidelity_numeric(&job))?.value)
            };
            let reference = f(Complex64::default())?;
            for alpha0 in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0)] {
                independence = independence.max((f(alpha0)? - reference).abs());
            }
        }
    }
    let eps = |kind| lib(logneg(kind, 1.0)).map(|l| l.bits());
    let (tps, added, tmsv) = (eps(EntangledResource::Tps)?, eps(EntangledResource::PhotonAdded)?, eps(EntangledResource::Tmsv)?);
    if !(tps > added && added > tmsv) {
        problems.push(format!("entanglement order at r = 1: {tps} {added} {tmsv}"));
    }
    if independence > INDEPENDENCE_TOLERANCE {
        problems.push(format!("coherent fidelity varies by {independence:.1e}"));
    }
    verdict(
        problems.is_empty(),
        if problems.is_empty() {
            format!("eps(1): tps {tps:.4} > added {added:.4} > tmsv {tmsv:.4}; alpha0 spread {independence:.1e}")
        } else {
            problems.join("; ")
        },
    )
}

fn normalization() -> Outcome {
    let mut field = 0.0f64;
    for input in [InputKind::CatLike { rho: 0.313, phase: 0.0 }, InputKind::SqueezedVacuum { rho: 0.5, phase: 0.0 }] {
        for kind in RESOURCES {
            let job = lib(TeleportJob::new(input, kind, 0.5))?.with_grid(lib(Grid2D::new(6.0, 121))?);
            field = field.max((lib(wigner_output_field(&job))?.integral() - 1.0).abs());
        }
    }
    let zero = Complex64::default();
    let mut chi = 0.0f64;
    let mut pnd = 0.0f64;
    for kind in RESOURCES {
        for r in STANDARD_R {
            for phi in [0.0, PI] {
                let sq = lib(SqueezeParams::new(r, phi))?;
                chi = chi.max((lib(chi_resource(kind, sq, zero, zero))? - 1.0).norm());
            }
            let sq = lib(SqueezeParams::new(r, 0.0))?;
            let total: f64 = (0..2000u64).map(|n| photon_number_prob(kind, sq, n).unwrap_or(f64::NAN)).sum();
            pnd = pnd.max((total - 1.0).abs());
        }
    }
    for input in [
        InputKind::Coherent { alpha0: Complex64::new(2.0, 0.0) },
        InputKind::SqueezedVacuum { rho: 0.4, phase: 0.7 },
        InputKind::CatLike { rho: 0.313, phase: 0.0 },
    ] {
        chi = chi.max((lib(chi_input(input, zero))? - 1.0).norm());
    }
    verdict(
        field <= FIELD_NORM_TOLERANCE && chi <= CHI_NORM_TOLERANCE && pnd <= PND_NORM_TOLERANCE,
        format!("field {field:.1e}, chi(0) {chi:.1e}, photon sums {pnd:.1e}"),
    )
}

fn verify_report() -> Outcome {
    let report = verify::run(Tier::Full, &Subjects::default());
    let divergent: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::ExpectedDivergence)
        .map(|c| c.name.as_str())
        .collect();
    let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    verdict(
        divergent.len() == 2 && failed.is_empty(),
        format!("{} passed, failed {failed:?}, expected divergences {divergent:?}", report.passed),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("log-negativity closed form vs Fock oracle", logneg_against_fock),
        ("fidelity routes agree", fidelity_routes),
        ("optimal cat approximation", cat_optimum),
        ("negativity thresholds", thresholds),
        ("teleported Wigner minima", minima),
        ("coincidence ratio", coincidence_ratios),
        ("heralded subtraction limit", heralding),
        ("50:50 basis change", basis_change),
        ("orderings", orderings),
        ("normalization", normalization),
        ("verify report", verify_report),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
