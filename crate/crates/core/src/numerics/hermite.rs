//! Gauss-Hermite rules and normalised Hermite functions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{validation, Result};

/// Largest rule order the quadrature will construct.
pub const MAX_ORDER: usize = 512;

/// Normalised Hermite functions `psi_k(x)` for `k = 0..=n_max`.
///
/// `psi_k(x) = H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi))`, computed by the
/// stable three-term recurrence so no factorials are formed.
pub fn hermite_functions(x: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let psi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(psi0);
    if n_max == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * psi0);
    for k in 1..n_max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Gauss-Hermite rule for the weight `exp(-x^2)`.
///
/// Weights are stored premultiplied by `exp(x_i^2)` so that
/// `sum_i scaled_weights[i] * g(x_i) * exp(-x_i^2)` approximates
/// `int g(x) exp(-x^2) dx` and `sum_i scaled_weights[i] * h(x_i)` approximates
/// `int h(x) dx` for any `h` decaying like a Gaussian. Large orders never
/// underflow the weights this way.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(validation(format!(
                "Gauss-Hermite order {order} outside 1..={MAX_ORDER}"
            )));
        }
        let n = order;
        let nf = n as f64;
        let mut nodes = vec![0.0; n];
        let mut scaled_weights = vec![0.0; n];
        let half = n.div_ceil(2);
        let mut z = 0.0_f64;
        for i in 0..half {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[0],
                3 => 1.91 * z - 0.91 * nodes[1],
                _ => 2.0 * z - nodes[i - 2],
            };
            let mut deriv = 0.0;
            for _ in 0..200 {
                let psi = hermite_functions(z, n);
                // d/dx of the polynomial part, evaluated through the functions.
                deriv = (2.0 * nf).sqrt() * psi[n - 1];
                let step = psi[n] / (deriv - z * psi[n]);
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    let psi = hermite_functions(z, n);
                    deriv = (2.0 * nf).sqrt() * psi[n - 1];
                    break;
                }
            }
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            let w = 2.0 / (deriv * deriv);
            scaled_weights[i] = w;
            scaled_weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[half - 1] = 0.0;
        }
        // Ascending order keeps summation order independent of the build.
        nodes.reverse();
        scaled_weights.reverse();
        Ok(Self {
            nodes,
            scaled_weights,
        })
    }

    /// Cached rule for `order`.
    pub fn cached(order: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussHermite>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&order) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(Self::new(order)?);
        cache
            .lock()
            .expect("rule cache poisoned")
            .insert(order, Arc::clone(&rule));
        Ok(rule)
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}
