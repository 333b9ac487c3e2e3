//! Data series behind each figure and the fidelity table.

use std::f64::consts::PI;

use cvtele::entanglement::{logneg, logneg_ratio, EntangledResource};
use cvtele::fock::optimize_cat_rho;
use cvtele::numerics::{Grid2D, WignerField};
use cvtele::states::{
    photon_number_prob, quadrature_amplitude_rotated, squeezing_closed, wigner_input, wigner_resource,
};
use cvtele::teleport::{fidelity_closed, fidelity_numeric, negativity_minimum, w0_scan, wigner_output_field, zero_crossing};
use cvtele::{Complex64, InputKind, ResourceKind, SqueezeParams, TeleportJob};

use crate::args::FigureId;
use crate::error::CliResult;
use crate::output::{Cell, Document, Params, Table};

const RESOURCES: [ResourceKind; 2] = [ResourceKind::Tmsv, ResourceKind::Tps];

/// The cat amplitude and phase whose squeezed-photon approximation is
/// teleported in the cat figures.
const CAT_ALPHA0: f64 = 1.0;
const CAT_THETA: f64 = PI;

/// One output file.
pub struct Artifact {
    pub file_name: String,
    pub document: Document,
}

fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| start + (end - start) * k as f64 / (steps - 1) as f64)
        .collect()
}

struct Builder {
    echo: Vec<String>,
    artifacts: Vec<Artifact>,
}

impl Builder {
    fn add(&mut self, file_name: &str, parameters: Params, table: Table) {
        self.add_with_summary(file_name, parameters, table, Params::new());
    }

    fn add_with_summary(&mut self, file_name: &str, parameters: Params, table: Table, summary: Params) {
        self.artifacts.push(Artifact {
            file_name: file_name.to_owned(),
            document: Document::new(&self.echo, parameters, Params::new(), table).with_summary(summary),
        });
    }
}

fn optimal_cat() -> CliResult<(f64, f64)> {
    Ok(optimize_cat_rho(Complex64::new(CAT_ALPHA0, 0.0), CAT_THETA)?)
}

fn cat_params(rho: f64) -> Params {
    Params::new()
        .with("alpha0", CAT_ALPHA0)
        .with("theta", CAT_THETA)
        .with("rho", rho)
        .with("phase", 0.0)
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

pub fn reproduce(figure: FigureId, echo: &[String]) -> CliResult<Vec<Artifact>> {
    let name = figure.name();
    let mut b = Builder {
        echo: echo.to_vec(),
        artifacts: Vec::new(),
    };
    match figure {
        FigureId::Fig2 => {
            let r = 1.0f64;
            let t = r.tanh();
            // Polynomial factor of the subtracted-resource Wigner function with
            // x = |alpha~|, y = |beta~| and the cross term at its most negative.
            let mut table = Table::new(&["x", "y", "prefactor"]);
            for y in linspace(0.0, 2.0, 81) {
                for x in linspace(0.0, 2.0, 81) {
                    let p = 1.0 - 8.0 * x * y * t + (4.0 * x * x - 1.0) * (4.0 * y * y - 1.0) * t * t;
                    table.push(vec![x.into(), y.into(), p.into()]);
                }
            }
            b.add(&format!("{name}_prefactor.csv"), Params::new().with("r", r), table);
            let sq = SqueezeParams::new(r, 0.0)?;
            let mut table = Table::new(&["x", "y", "w"]);
            for y in linspace(-2.0, 2.0, 101) {
                for x in linspace(-2.0, 2.0, 101) {
                    let w = wigner_resource(ResourceKind::Tps, sq, Complex64::new(x, 0.0), Complex64::new(y, 0.0))?;
                    table.push(vec![x.into(), y.into(), w.into()]);
                }
            }
            b.add(
                &format!("{name}_slice.csv"),
                Params::new().with("r", r).with("phi", 0.0).with("slice", "alpha = x, beta = y"),
                table,
            );
        }
        FigureId::Fig3 => {
            let r = 1.0;
            let sq = SqueezeParams::new(r, 0.0)?;
            let mut table = Table::new(&["n", "tmsv", "tps"]);
            for n in 0..=20u64 {
                table.push(vec![
                    n.into(),
                    photon_number_prob(ResourceKind::Tmsv, sq, n)?.into(),
                    photon_number_prob(ResourceKind::Tps, sq, n)?.into(),
                ]);
            }
            b.add(&format!("{name}.csv"), Params::new().with("r", r), table);
        }
        FigureId::Fig4 => {
            for kind in RESOURCES {
                for r in [1.0f64, 5.0] {
                    let sq = SqueezeParams::new(r, PI)?;
                    // The ridge is e^{-r} wide across x1 and e^{r} wide along x2.
                    let half_x1 = 3.0 * (-r).exp();
                    let mut table = Table::new(&["x1", "x2", "intensity"]);
                    for x2 in linspace(-3.0, 3.0, 121) {
                        for x1 in linspace(-half_x1, half_x1, 121) {
                            let psi = quadrature_amplitude_rotated(kind, sq, x1, x2)?;
                            table.push(vec![x1.into(), x2.into(), psi.norm_sqr().into()]);
                        }
                    }
                    b.add(
                        &format!("{name}_{}_r{r}.csv", kind.label()),
                        Params::new().with("kind", kind.label()).with("r", r).with("phi", PI),
                        table,
                    );
                }
            }
        }
        FigureId::Fig5 => {
            let mut table = Table::new(&["r", "tmsv", "tps"]);
            for r in linspace(0.02, 2.0, 100) {
                table.push(vec![
                    r.into(),
                    squeezing_closed(ResourceKind::Tmsv, r)?.into(),
                    squeezing_closed(ResourceKind::Tps, r)?.into(),
                ]);
            }
            b.add(&format!("{name}.csv"), Params::new().with("r_min", 0.02).with("r_max", 2.0), table);
        }
        FigureId::Fig6 => {
            let mut table = Table::new(&["r", "tmsv", "tps", "photon_added", "ratio_tps", "ratio_photon_added"]);
            for r in linspace(0.05, 1.5, 30) {
                table.push(vec![
                    r.into(),
                    logneg(EntangledResource::Tmsv, r)?.bits().into(),
                    logneg(EntangledResource::Tps, r)?.bits().into(),
                    logneg(EntangledResource::PhotonAdded, r)?.bits().into(),
                    logneg_ratio(EntangledResource::Tps, r)?.into(),
                    logneg_ratio(EntangledResource::PhotonAdded, r)?.into(),
                ]);
            }
            b.add(
                &format!("{name}.csv"),
                Params::new().with("r_min", 0.05).with("r_max", 1.5).with("photon_added", "fock oracle"),
                table,
            );
        }
        FigureId::Fig7 => {
            let input = InputKind::Coherent {
                alpha0: Complex64::default(),
            };
            let mut table = Table::new(&["r", "f1", "f2", "f2_integral"]);
            for r in linspace(0.05, 3.0, 60) {
                let f1 = fidelity_closed(&TeleportJob::new(input, ResourceKind::Tmsv, r)?)?;
                let tps = TeleportJob::new(input, ResourceKind::Tps, r)?;
                table.push(vec![
                    r.into(),
                    f1.value.into(),
                    fidelity_closed(&tps)?.value.into(),
                    fidelity_numeric(&tps)?.value.into(),
                ]);
            }
            b.add(&format!("{name}.csv"), Params::new().with("input", "coherent"), table);
        }
        FigureId::Fig8 => {
            let mut table = Table::new(&["rho", "r", "f1", "f2_tabulated", "f2_integral"]);
            for rho in linspace(0.0, 1.5, 16) {
                for r in linspace(0.05, 2.0, 40) {
                    let input = InputKind::SqueezedVacuum { rho, phase: 0.0 };
                    let f1 = fidelity_closed(&TeleportJob::new(input, ResourceKind::Tmsv, r)?)?;
                    let tps = TeleportJob::new(input, ResourceKind::Tps, r)?;
                    let f2 = fidelity_closed(&tps)?;
                    let integral = f2.discrepancy.map_or(f2.value, |d| d.integral);
                    table.push(vec![rho.into(), r.into(), f1.value.into(), f2.value.into(), integral.into()]);
                }
            }
            b.add(&format!("{name}.csv"), Params::new().with("input", "squeezed vacuum"), table);
        }
        FigureId::Fig9 => {
            let (rho, overlap) = optimal_cat()?;
            let input = InputKind::CatLike { rho, phase: 0.0 };
            let mut table = Table::new(&["r", "f1", "f2", "f2_integral", "ratio"]);
            for r in linspace(0.05, 2.0, 40) {
                let f1 = fidelity_closed(&TeleportJob::new(input, ResourceKind::Tmsv, r)?)?.value;
                let tps = TeleportJob::new(input, ResourceKind::Tps, r)?;
                let f2 = fidelity_closed(&tps)?.value;
                table.push(vec![
                    r.into(),
                    f1.into(),
                    f2.into(),
                    fidelity_numeric(&tps)?.value.into(),
                    (f2 / f1).into(),
                ]);
            }
            b.add(&format!("{name}.csv"), cat_params(rho).with("cat_overlap", overlap), table);
        }
        FigureId::Fig10 => {
            let (rho, _) = optimal_cat()?;
            let input = InputKind::CatLike { rho, phase: 0.0 };
            for kind in RESOURCES {
                let job = TeleportJob::new(input, kind, 0.5)?;
                let field = wigner_output_field(&job)?;
                let minimum = negativity_minimum(&job)?;
                let params = cat_params(rho)
                    .with("resource", kind.label())
                    .with("r", 0.5)
                    .with("grid", job.grid.resolution)
                    .with("extent", job.grid.extent);
                let summary = Params::new()
                    .with("minimum", minimum.value)
                    .with("minimum_re", minimum.location.re)
                    .with("minimum_im", minimum.location.im);
                b.add_with_summary(&format!("{name}_{}.csv", kind.label()), params, field_table(&field), summary);
            }
        }
        FigureId::Fig11 => {
            let (rho, _) = optimal_cat()?;
            let input = InputKind::CatLike { rho, phase: 0.0 };
            let field = WignerField::sample(Grid2D::new(3.0, 121)?, |a| wigner_input(input, a))?;
            b.add(&format!("{name}.csv"), cat_params(rho), field_table(&field));
        }
        FigureId::Fig12 => {
            let mut table = Table::new(&["alpha0", "rho", "r", "f1", "f2"]);
            for alpha0 in linspace(0.2, 2.0, 10) {
                let (rho, _) = optimize_cat_rho(Complex64::new(alpha0, 0.0), CAT_THETA)?;
                let input = InputKind::CatLike { rho, phase: 0.0 };
                for r in linspace(0.05, 2.0, 40) {
                    let f1 = fidelity_closed(&TeleportJob::new(input, ResourceKind::Tmsv, r)?)?.value;
                    let f2 = fidelity_closed(&TeleportJob::new(input, ResourceKind::Tps, r)?)?.value;
                    table.push(vec![alpha0.into(), rho.into(), r.into(), f1.into(), f2.into()]);
                }
            }
            b.add(&format!("{name}.csv"), Params::new().with("theta", CAT_THETA), table);
        }
        FigureId::Fig13 => {
            let (rho, _) = optimal_cat()?;
            let (start, end, steps) = (0.05, 1.5, 59);
            let mut columns: Vec<Vec<f64>> = Vec::new();
            let mut summary = Params::new();
            for kind in RESOURCES {
                let series = w0_scan(rho, 0.0, kind, start, end, steps)?;
                let crossing = zero_crossing(&series, rho, 0.0, kind)?;
                summary = summary.with(&format!("r_star_{}", kind.label()), crossing.unwrap_or(f64::NAN));
                if columns.is_empty() {
                    columns.push(series.parameter.clone());
                }
                columns.push(series.values);
            }
            let mut table = Table::new(&["r", "w0_tmsv", "w0_tps"]);
            for k in 0..columns[0].len() {
                table.push(columns.iter().map(|c| Cell::from(c[k])).collect());
            }
            let params = cat_params(rho).with("r_min", start).with("r_max", end);
            b.add_with_summary(&format!("{name}.csv"), params, table, summary);
        }
        FigureId::Table1 => {
            let mut table = Table::new(&["input", "rho", "resource", "r", "closed", "integral", "deviation", "status"]);
            let inputs = [
                InputKind::Coherent {
                    alpha0: Complex64::default(),
                },
                InputKind::SqueezedVacuum { rho: 0.0, phase: 0.0 },
                InputKind::SqueezedVacuum { rho: 0.313, phase: 0.0 },
            ];
            for input in inputs {
                let rho = match input {
                    InputKind::SqueezedVacuum { rho, .. } => rho,
                    _ => f64::NAN,
                };
                for kind in RESOURCES {
                    for r in [0.25, 0.5, 1.0, 1.5] {
                        let job = TeleportJob::new(input, kind, r)?;
                        let closed = fidelity_closed(&job)?;
                        let integral = fidelity_numeric(&job)?.value;
                        let deviation = (closed.value - integral).abs();
                        let status = if closed.discrepancy.is_some() { "expected-divergence" } else { "agree" };
                        table.push(vec![
                            input.label().into(),
                            rho.into(),
                            kind.label().into(),
                            r.into(),
                            closed.value.into(),
                            integral.into(),
                            deviation.into(),
                            status.into(),
                        ]);
                    }
                }
            }
            b.add(&format!("{name}.csv"), Params::new().with("alpha0", 0.0), table);
        }
    }
    Ok(b.artifacts)
}
