use nalgebra::DMatrix;
use num_complex::Complex64;

/// `ln n!` for the Laguerre prefactor.
fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Generalised Laguerre polynomial `L_n^{(k)}(x)` by upward recurrence.
fn laguerre(n: usize, k: usize, x: f64) -> f64 {
    let k = k as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + k - x) * cur - (jf + k) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `<m| D(alpha) |n>` from the associated-Laguerre closed form.
pub fn displacement_matrix_element(m: usize, n: usize, alpha: Complex64) -> Complex64 {
    let x = alpha.norm_sqr();
    let (lo, hi) = (m.min(n), m.max(n));
    let log_pref = 0.5 * (ln_factorial(lo) - ln_factorial(hi)) - 0.5 * x;
    let base = if m >= n { alpha } else { -alpha.conj() };
    let power = if hi == lo {
        Complex64::new(1.0, 0.0)
    } else if x == 0.0 {
        Complex64::default()
    } else {
        Complex64::from_polar(1.0, (hi - lo) as f64 * base.arg()) * ((hi - lo) as f64 * 0.5 * x.ln()).exp()
    };
    power * log_pref.exp() * laguerre(lo, hi - lo, x)
}

/// Rectangular block `<m| D(alpha) |n>` for `m < rows`, `n < cols`.
///
/// Filled by the stable recurrences
/// `D_{m+1,0} = alpha D_{m,0} / sqrt(m+1)` and
/// `D_{m,n+1} = (sqrt(m) D_{m-1,n} - alpha* D_{m,n}) / sqrt(n+1)`.
pub fn displacement_matrix(alpha: Complex64, rows: usize, cols: usize) -> DMatrix<Complex64> {
    let mut d = DMatrix::<Complex64>::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return d;
    }
    let sqrt: Vec<f64> = (0..=rows.max(cols)).map(|k| (k as f64).sqrt()).collect();
    d[(0, 0)] = Complex64::from((-0.5 * alpha.norm_sqr()).exp());
    for m in 1..rows {
        d[(m, 0)] = alpha * d[(m - 1, 0)] / sqrt[m];
    }
    let ac = alpha.conj();
    for n in 0..cols - 1 {
        for m in 0..rows {
            let up = if m > 0 { d[(m - 1, n)] * sqrt[m] } else { Complex64::default() };
            d[(m, n + 1)] = (up - ac * d[(m, n)]) / sqrt[n + 1];
        }
    }
    d
}
