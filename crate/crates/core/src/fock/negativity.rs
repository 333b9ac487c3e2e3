use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::state::{FockState, Modes};
use crate::entanglement::LogNegativity;
use crate::error::{validation, Error, Result};
use crate::numerics::CompensatedSum;

/// Eigenvalues smaller than this in magnitude count as zero.
pub const EIGEN_ZERO: f64 = 1e-12;

/// Largest connected block of the partial transpose that is diagonalised.
pub const MAX_BLOCK: usize = 1600;

/// Mixed two-mode state on a truncated Fock basis, indexed like
/// [`FockState`] amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    cutoff: usize,
    data: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(cutoff: usize, data: DMatrix<Complex64>) -> Result<Self> {
        let dim = (cutoff + 1) * (cutoff + 1);
        if data.nrows() != dim || data.ncols() != dim {
            return Err(validation(format!("density matrix is not {dim} x {dim}")));
        }
        let asymmetry = (&data - data.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asymmetry > 1e-12 {
            return Err(validation(format!("density matrix deviates from Hermitian by {asymmetry:e}")));
        }
        let trace = data.trace();
        if (trace - 1.0).norm() > 1e-10 {
            return Err(validation(format!("density matrix trace {trace}")));
        }
        let lowest = hermitian_eigenvalues(&data)?.into_iter().fold(f64::INFINITY, f64::min);
        if lowest < -1e-10 {
            return Err(validation(format!("density matrix has eigenvalue {lowest:e}")));
        }
        Ok(Self { cutoff, data })
    }

    /// `|psi><psi|` of a normalised two-mode state.
    pub fn from_pure(state: &FockState) -> Result<Self> {
        if state.modes() != Modes::Two {
            return Err(validation("density matrices are two-mode"));
        }
        let psi = nalgebra::DVector::from_column_slice(state.amplitudes());
        Ok(Self {
            cutoff: state.cutoff(),
            data: &psi * psi.adjoint(),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn data(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    /// Logarithmic negativity from the partial transpose on the second mode.
    pub fn log_negativity(&self) -> Result<LogNegativity> {
        let dim = self.cutoff + 1;
        let mut entries = Vec::new();
        for i in 0..dim * dim {
            for j in 0..dim * dim {
                let value = self.data[(i, j)];
                if value != Complex64::default() {
                    let (a, b, c, d) = (i / dim, i % dim, j / dim, j % dim);
                    entries.push((a * dim + d, c * dim + b, value));
                }
            }
        }
        negativity_to_epsilon(partial_transpose_negativity(entries)?)
    }
}

/// Real symmetric embedding `[[A, -B], [B, A]]` of `H = A + iB`; every
/// eigenvalue of `H` appears twice.
fn real_embedding(h: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = h.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let eigen = SymmetricEigen::try_new(real_embedding(h), f64::EPSILON, 0)
        .ok_or_else(|| Error::Numeric("symmetric eigen-solver did not converge".into()))?;
    let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    // Keep one copy of each doubled eigenvalue.
    Ok(values.into_iter().step_by(2).collect())
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Sum of the magnitudes of the negative eigenvalues of a Hermitian matrix
/// given as sparse entries. The matrix splits into connected blocks which
/// are diagonalised independently.
fn partial_transpose_negativity(entries: Vec<(usize, usize, Complex64)>) -> Result<f64> {
    let mut local: HashMap<usize, usize> = HashMap::new();
    for &(r, c, _) in &entries {
        let next = local.len();
        local.entry(r).or_insert(next);
        let next = local.len();
        local.entry(c).or_insert(next);
    }
    let mut parent: Vec<usize> = (0..local.len()).collect();
    for &(r, c, _) in &entries {
        let (ri, ci) = (find(&mut parent, local[&r]), find(&mut parent, local[&c]));
        if ri != ci {
            parent[ri.max(ci)] = ri.min(ci);
        }
    }
    // Group indices by component, in order of first appearance.
    let mut component_of: Vec<usize> = vec![usize::MAX; local.len()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<(usize, usize)> = local.iter().map(|(&g, &l)| (l, g)).collect();
    order.sort_unstable();
    let mut root_slot: HashMap<usize, usize> = HashMap::new();
    for &(l, _) in &order {
        let root = find(&mut parent, l);
        let slot = *root_slot.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        component_of[l] = components[slot].len();
        components[slot].push(l);
    }
    let mut block_entries: Vec<Vec<(usize, usize, Complex64)>> = vec![Vec::new(); components.len()];
    for (r, c, v) in entries {
        let (lr, lc) = (local[&r], local[&c]);
        let slot = root_slot[&find(&mut parent, lr)];
        block_entries[slot].push((component_of[lr], component_of[lc], v));
    }
    if let Some(big) = components.iter().map(Vec::len).find(|&n| n > MAX_BLOCK) {
        return Err(Error::Unsupported(format!(
            "partial-transpose block of size {big} exceeds {MAX_BLOCK}"
        )));
    }
    let sums: Vec<Result<f64>> = components
        .par_iter()
        .zip(block_entries.par_iter())
        .map(|(indices, entries)| {
            let n = indices.len();
            let mut block = DMatrix::<Complex64>::zeros(n, n);
            for &(i, j, v) in entries {
                block[(i, j)] += v;
            }
            let values = hermitian_eigenvalues(&block)?;
            Ok(values.iter().filter(|&&x| x < -EIGEN_ZERO).map(|x| -x).sum())
        })
        .collect();
    let mut total = CompensatedSum::default();
    for s in sums {
        total.add(s?);
    }
    Ok(total.value())
}

fn negativity_to_epsilon(negativity: f64) -> Result<LogNegativity> {
    LogNegativity::new((1.0 + 2.0 * negativity).log2())
}

/// Logarithmic negativity of a pure two-mode state.
pub fn numeric_logneg(state: &FockState) -> Result<LogNegativity> {
    if state.modes() != Modes::Two {
        return Err(validation("log-negativity needs a two-mode state"));
    }
    let dim = state.dim();
    let support: Vec<(usize, usize, Complex64)> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| **z != Complex64::default())
        .map(|(k, &z)| (k / dim, k % dim, z))
        .collect();
    let norm = state.norm_sqr();
    let mut entries = Vec::with_capacity(support.len() * support.len());
    for &(a, b, x) in &support {
        for &(c, d, y) in &support {
            // <a,b| rho |c,d> lands at (a,d),(c,b) after transposing mode b.
            entries.push((a * dim + d, c * dim + b, x * y.conj() / norm));
        }
    }
    negativity_to_epsilon(partial_transpose_negativity(entries)?)
}
