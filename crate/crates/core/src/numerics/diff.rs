//! Central differences with Richardson extrapolation.

use crate::error::{domain, validation, Error, Result};

/// Step control for [`derivative`].
///
/// Steps are `base_step / 2^k` for `k = 0..levels`; the widest evaluation
/// reaches `x +- base_step`. An optional open domain guards the stencil.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffSpec {
    pub base_step: f64,
    pub levels: usize,
    pub domain: Option<(f64, f64)>,
}

impl DiffSpec {
    pub fn new(base_step: f64, levels: usize) -> Result<Self> {
        let spec = Self {
            base_step,
            levels,
            domain: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_domain(self, lo: f64, hi: f64) -> Self {
        Self {
            domain: Some((lo, hi)),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.base_step > 1e-6 && self.base_step < 1e-1) {
            return Err(validation(format!(
                "base step {} outside (1e-6, 1e-1)",
                self.base_step
            )));
        }
        if !(2..=6).contains(&self.levels) {
            return Err(validation(format!("levels {} outside 2..=6", self.levels)));
        }
        Ok(())
    }

    /// Step no larger than `fraction` of the distance from `x` to the domain edge.
    pub fn fitted_to(self, x: f64, fraction: f64) -> Self {
        let Some((lo, hi)) = self.domain else {
            return self;
        };
        let room = (x - lo).min(hi - x) * fraction;
        if room < self.base_step {
            Self {
                base_step: room.max(1.000_001e-6),
                ..self
            }
        } else {
            self
        }
    }
}

impl Default for DiffSpec {
    fn default() -> Self {
        Self {
            base_step: 1e-2,
            levels: 4,
            domain: None,
        }
    }
}

/// Derivative order supported by [`derivative`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

fn stencil<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64, order: DerivOrder) -> Result<f64> {
    let plus = f(x + h);
    let minus = f(x - h);
    let value = match order {
        DerivOrder::First => (plus - minus) / (2.0 * h),
        DerivOrder::Second => (plus - 2.0 * f(x) + minus) / (h * h),
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Numeric(format!("non-finite difference at x = {x}, h = {h}")))
    }
}

/// First or second derivative of `f` at `x`.
///
/// Both stencils have an error series in even powers of the step, so the
/// tableau eliminates one power of four per level.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, order: DerivOrder, spec: &DiffSpec) -> Result<f64> {
    spec.validate()?;
    if let Some((lo, hi)) = spec.domain {
        if x - spec.base_step <= lo || x + spec.base_step >= hi {
            return Err(domain(format!(
                "stencil [{}, {}] leaves the domain ({lo}, {hi})",
                x - spec.base_step,
                x + spec.base_step
            )));
        }
    }
    let mut previous: Vec<f64> = Vec::with_capacity(spec.levels);
    let mut h = spec.base_step;
    for _ in 0..spec.levels {
        let mut row = vec![stencil(&f, x, h, order)?];
        let mut factor = 1.0;
        for j in 1..=previous.len() {
            factor *= 4.0;
            let refined = row[j - 1] + (row[j - 1] - previous[j - 1]) / (factor - 1.0);
            row.push(refined);
        }
        previous = row;
        h *= 0.5;
    }
    Ok(*previous.last().expect("at least two levels"))
}
