//! `state` and `teleport` subcommands.

use cvtele::numerics::{Envelope, QuadratureSpec, ScanSeries, WignerField};
use cvtele::states::{
    chi_resource, photon_number_prob, quadrature_amplitude_rotated, squeezing_closed, wigner_resource,
};
use cvtele::teleport::{
    fidelity_closed, fidelity_numeric, negativity_minimum, threshold, wigner_output, wigner_output_closed,
    wigner_output_numeric, CROSS_CHECK_TOLERANCE,
};
use cvtele::{Complex64, FidelityRoute, Grid2D, InputKind, ResourceKind, SqueezeParams, TeleportJob};

use crate::args::{ControlArgs, GridArgs, InputArgs, ResourceArgs, RouteArg, ScanQuantity, StateCommand, TeleportCommand};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Document, Params, Table};

/// Result of a command: the table, plus an error to report after it is written.
pub struct Outcome {
    pub document: Document,
    pub deferred: Option<CliError>,
}

impl From<Document> for Outcome {
    fn from(document: Document) -> Self {
        Self {
            document,
            deferred: None,
        }
    }
}

fn resource_params(args: &ResourceArgs) -> CliResult<(ResourceKind, SqueezeParams, Params)> {
    let kind = ResourceKind::from(args.kind);
    let sq = SqueezeParams::new(args.r, args.phi)?;
    kind.check(&sq)?;
    let params = Params::new().with("kind", kind.label()).with("r", args.r).with("phi", args.phi);
    Ok((kind, sq, params))
}

fn grid(args: &GridArgs) -> CliResult<Grid2D> {
    Ok(Grid2D::new(args.extent, args.grid)?)
}

fn grid_params(params: Params, args: &GridArgs) -> Params {
    params.with("grid", args.grid).with("extent", args.extent)
}

/// Samples `f(x, y)` with `x` along columns and `y` along rows.
fn real_field<F>(grid: Grid2D, columns: &[&str], f: F) -> CliResult<Table>
where
    F: Fn(f64, f64) -> cvtele::Result<Vec<f64>>,
{
    let axis = grid.coordinates();
    let mut table = Table::new(columns);
    for &y in &axis {
        for &x in &axis {
            let mut row = vec![Cell::from(x), Cell::from(y)];
            row.extend(f(x, y)?.into_iter().map(Cell::from));
            table.push(row);
        }
    }
    Ok(table)
}

fn field_table(field: &WignerField) -> Table {
    let mut table = Table::new(&["re_alpha", "im_alpha", "w"]);
    let n = field.grid.resolution;
    for i in 0..n {
        for j in 0..n {
            let p = field.grid.point(i, j);
            table.push(vec![p.re.into(), p.im.into(), field.at(i, j).into()]);
        }
    }
    table
}

pub fn state(cmd: &StateCommand, echo: &[String]) -> CliResult<Outcome> {
    let none = Params::new();
    Ok(match cmd {
        StateCommand::Wigner { resource, grid: g } => {
            let (kind, sq, params) = resource_params(resource)?;
            let table = real_field(grid(g)?, &["x", "y", "w"], |x, y| {
                Ok(vec![wigner_resource(kind, sq, Complex64::new(x, 0.0), Complex64::new(y, 0.0))?])
            })?;
            let min = table.column("w").unwrap_or_default().into_iter().fold(f64::INFINITY, f64::min);
            Document::new(echo, grid_params(params, g).with("slice", "alpha = x, beta = y"), none, table)
                .with_summary(Params::new().with("minimum", min))
        }
        StateCommand::Quadrature { resource, grid: g } => {
            let (kind, sq, params) = resource_params(resource)?;
            let table = real_field(grid(g)?, &["x1", "x2", "intensity"], |x1, x2| {
                Ok(vec![quadrature_amplitude_rotated(kind, sq, x1, x2)?.norm_sqr()])
            })?;
            Document::new(echo, grid_params(params, g).with("x_a", "(x1 + x2)/sqrt 2"), none, table)
        }
        StateCommand::Pnd { resource, nmax } => {
            let (kind, sq, params) = resource_params(resource)?;
            let mut table = Table::new(&["n", "p"]);
            for n in 0..=*nmax {
                table.push(vec![n.into(), photon_number_prob(kind, sq, n)?.into()]);
            }
            Document::new(echo, params.with("nmax", *nmax), none, table)
        }
        StateCommand::Squeezing { rmax, steps } => {
            if *steps < 1 || !(*rmax > 0.0) {
                return Err(CliError::Usage("squeezing scan needs rmax > 0 and steps >= 1".into()));
            }
            let mut table = Table::new(&["r", "tmsv", "tps"]);
            for k in 1..=*steps {
                let r = rmax * k as f64 / *steps as f64;
                table.push(vec![
                    r.into(),
                    squeezing_closed(ResourceKind::Tmsv, r)?.into(),
                    squeezing_closed(ResourceKind::Tps, r)?.into(),
                ]);
            }
            Document::new(echo, Params::new().with("rmax", *rmax).with("steps", *steps), none, table)
        }
        StateCommand::Chi { resource, grid: g } => {
            let (kind, sq, params) = resource_params(resource)?;
            let table = real_field(grid(g)?, &["re_alpha", "im_alpha", "chi_re", "chi_im"], |x, y| {
                let a = Complex64::new(x, y);
                let chi = chi_resource(kind, sq, a.conj(), a)?;
                Ok(vec![chi.re, chi.im])
            })?;
            Document::new(echo, grid_params(params, g).with("slice", "(alpha*, alpha)"), none, table)
        }
    }
    .into())
}

fn input_params(args: &InputArgs) -> Params {
    let params = Params::new().with("input", args.kind().label());
    match args.kind() {
        InputKind::Coherent { alpha0 } => params.with("alpha0_re", alpha0.re).with("alpha0_im", alpha0.im),
        InputKind::SqueezedVacuum { rho, phase } | InputKind::CatLike { rho, phase } => {
            params.with("rho", rho).with("phase", phase)
        }
        InputKind::IdealCat { .. } => params,
    }
}

fn controls(args: &ControlArgs) -> Params {
    Params::new().with("quadrature_order", args.order).with("escalate", true)
}

fn job(input: InputKind, resource: ResourceKind, r: f64, phi: f64, controls: &ControlArgs) -> CliResult<TeleportJob> {
    Ok(TeleportJob::new(input, resource, r)?
        .with_phase(phi)?
        .with_quadrature(QuadratureSpec::new(controls.order, Envelope::default())))
}

pub fn teleport(cmd: &TeleportCommand, echo: &[String]) -> CliResult<Outcome> {
    match cmd {
        TeleportCommand::Fidelity {
            input,
            resource,
            r,
            phi,
            controls: c,
        } => {
            let resource = ResourceKind::from(*resource);
            let mut table = Table::new(&[
                "r",
                "gamma",
                "integral",
                "integral_error",
                "closed",
                "closed_route",
                "deviation",
                "status",
            ]);
            let mut diagnostics = Vec::new();
            for &r in r {
                let job = job(input.kind(), resource, r, *phi, c)?;
                let numeric = fidelity_numeric(&job)?;
                let closed = if job.at_optimal_phase() {
                    Some(fidelity_closed(&job)?)
                } else {
                    None
                };
                let (closed_value, route, deviation, status) = match closed {
                    None => (f64::NAN, "none", f64::NAN, "closed-unavailable"),
                    Some(f) => {
                        let deviation = (f.value - numeric.value).abs();
                        let status = if deviation <= CROSS_CHECK_TOLERANCE {
                            "agree"
                        } else if f.discrepancy.is_some() && f.route == FidelityRoute::ClosedForm {
                            "expected-divergence"
                        } else {
                            diagnostics.push(format!(
                                "  input={} resource={} r={r}: {} {} vs integral {} (deviation {deviation:.3e})",
                                input.kind().label(),
                                resource.label(),
                                f.route.label(),
                                f.value,
                                numeric.value
                            ));
                            "disagree"
                        };
                        (f.value, f.route.label(), deviation, status)
                    }
                };
                table.push(vec![
                    r.into(),
                    job.gamma().into(),
                    numeric.value.into(),
                    numeric.error_estimate.into(),
                    closed_value.into(),
                    route.into(),
                    deviation.into(),
                    status.into(),
                ]);
            }
            let params = input_params(input)
                .with("resource", resource.label())
                .with("r", r.clone())
                .with("phi", *phi);
            let document = Document::new(
                echo,
                params,
                controls(c).with("agreement_tolerance", CROSS_CHECK_TOLERANCE),
                table,
            );
            let deferred = (!diagnostics.is_empty()).then(|| CliError::RouteDisagreement(diagnostics.join("\n")));
            Ok(Outcome { document, deferred })
        }
        TeleportCommand::Wigner {
            input,
            resource,
            r,
            phi,
            grid: g,
            route,
            controls: c,
        } => {
            let resource = ResourceKind::from(*resource);
            let job = job(input.kind(), resource, *r, *phi, c)?.with_grid(grid(g)?);
            let eval = |a: Complex64| match route {
                RouteArg::Auto => wigner_output(&job, a),
                RouteArg::Closed => wigner_output_closed(&job, a),
                RouteArg::Numeric => wigner_output_numeric(&job, a),
            };
            let field = WignerField::sample(job.grid, eval)?;
            let minimum = field.refined_minimum(eval)?;
            let params = grid_params(
                input_params(input)
                    .with("resource", resource.label())
                    .with("r", *r)
                    .with("phi", *phi)
                    .with("route", format!("{route:?}").to_lowercase()),
                g,
            );
            let summary = Params::new()
                .with("minimum", minimum.value)
                .with("minimum_re", minimum.location.re)
                .with("minimum_im", minimum.location.im)
                .with("grid_integral", field.integral());
            Ok(Document::new(echo, params, controls(c), field_table(&field))
                .with_summary(summary)
                .into())
        }
        TeleportCommand::Threshold {
            input,
            resource,
            r_min,
            r_max,
            steps,
        } => {
            let InputKind::CatLike { rho, phase } = input.kind() else {
                return Err(CliError::Library(cvtele::Error::Unsupported(
                    "threshold scans need a cat-like input".into(),
                )));
            };
            let resource = ResourceKind::from(*resource);
            let found = threshold(rho, phase, resource, *r_min, *r_max, *steps)?;
            let mut table = Table::new(&["resource", "r_star", "found"]);
            table.push(vec![resource.label().into(), found.unwrap_or(f64::NAN).into(), found.is_some().into()]);
            let params = input_params(input)
                .with("resource", resource.label())
                .with("r_min", *r_min)
                .with("r_max", *r_max)
                .with("steps", *steps);
            Ok(Document::new(
                echo,
                params,
                Params::new().with("bisection_tolerance", cvtele::teleport::THRESHOLD_TOLERANCE),
                table,
            )
            .into())
        }
        TeleportCommand::Scan {
            input,
            resource,
            quantity,
            r_min,
            r_max,
            steps,
            controls: c,
        } => {
            let resource = ResourceKind::from(*resource);
            let kind = input.kind();
            let label = format!("{quantity:?}").to_lowercase();
            let series = ScanSeries::sample(label.clone(), *r_min, *r_max, *steps, |r| {
                let job = TeleportJob::new(kind, resource, r)?
                    .with_quadrature(QuadratureSpec::new(c.order, Envelope::default()));
                match quantity {
                    ScanQuantity::Fidelity => Ok(fidelity_numeric(&job)?.value),
                    ScanQuantity::W0 => wigner_output(&job, Complex64::default()),
                    ScanQuantity::Negativity => Ok(negativity_minimum(&job)?.value),
                }
            })?;
            let mut table = Table::new(&["r", label.as_str()]);
            for (r, v) in series.parameter.iter().zip(&series.values) {
                table.push(vec![(*r).into(), (*v).into()]);
            }
            let params = input_params(input)
                .with("resource", resource.label())
                .with("quantity", label.as_str())
                .with("r_min", *r_min)
                .with("r_max", *r_max)
                .with("steps", *steps);
            Ok(Document::new(echo, params, controls(c), table).into())
        }
    }
}
