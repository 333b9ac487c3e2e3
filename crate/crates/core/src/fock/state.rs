use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{validation, Error, Result};
use crate::numerics::CompensatedSum;

/// Number of modes a [`FockState`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modes {
    One,
    Two,
}

impl Modes {
    pub fn count(self) -> usize {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }
}

/// Largest cutoff the oracle constructs.
pub const MAX_CUTOFF: usize = 400;

/// Largest mass allowed in the top two levels of a healthy truncation.
pub const TOP_LEVEL_TOLERANCE: f64 = 1e-8;

/// Truncated pure state in the Fock basis.
///
/// Two-mode amplitudes are stored row-major: the amplitude of `|a, b>` sits
/// at `a * (cutoff + 1) + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    modes: Modes,
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl FockState {
    pub fn single_mode(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(validation("a single-mode state needs at least one amplitude"));
        }
        Ok(Self {
            modes: Modes::One,
            cutoff: amplitudes.len() - 1,
            amplitudes,
        })
    }

    pub fn two_mode(cutoff: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != (cutoff + 1) * (cutoff + 1) {
            return Err(validation(format!(
                "{} amplitudes do not fill a two-mode cutoff of {cutoff}",
                amplitudes.len()
            )));
        }
        Ok(Self {
            modes: Modes::Two,
            cutoff,
            amplitudes,
        })
    }

    pub fn vacuum(modes: Modes, cutoff: usize) -> Self {
        Self::number_state(modes, &[0, 0][..modes.count()], cutoff).expect("vacuum fits any cutoff")
    }

    /// `|n>` or `|n_a, n_b>`.
    pub fn number_state(modes: Modes, photons: &[usize], cutoff: usize) -> Result<Self> {
        if photons.len() != modes.count() || photons.iter().any(|&n| n > cutoff) {
            return Err(validation(format!("number state {photons:?} does not fit cutoff {cutoff}")));
        }
        let dim = cutoff + 1;
        let mut amplitudes = vec![Complex64::default(); dim.pow(modes.count() as u32)];
        let index = photons.iter().fold(0, |acc, &n| acc * dim + n);
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            modes,
            cutoff,
            amplitudes,
        })
    }

    pub fn modes(&self) -> Modes {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Levels per mode, `cutoff + 1`.
    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude of `|n>`; zero beyond the cutoff.
    pub fn amplitude1(&self, n: usize) -> Complex64 {
        debug_assert_eq!(self.modes, Modes::One);
        self.amplitudes.get(n).copied().unwrap_or_default()
    }

    /// Amplitude of `|a, b>`; zero beyond the cutoff.
    pub fn amplitude2(&self, a: usize, b: usize) -> Complex64 {
        debug_assert_eq!(self.modes, Modes::Two);
        if a > self.cutoff || b > self.cutoff {
            return Complex64::default();
        }
        self.amplitudes[a * self.dim() + b]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .collect::<CompensatedSum>()
            .value()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numeric(format!("cannot normalise a state of norm {norm}")));
        }
        self.amplitudes.iter_mut().for_each(|z| *z /= norm);
        Ok(self)
    }

    pub fn with_global_phase(mut self, phase: f64) -> Self {
        let u = Complex64::from_polar(1.0, phase);
        self.amplitudes.iter_mut().for_each(|z| *z *= u);
        self
    }

    /// Norm in each level `k = max(photon numbers)`.
    pub fn level_masses(&self) -> Vec<f64> {
        let mut levels = vec![0.0; self.dim()];
        match self.modes {
            Modes::One => {
                for (n, z) in self.amplitudes.iter().enumerate() {
                    levels[n] += z.norm_sqr();
                }
            }
            Modes::Two => {
                let dim = self.dim();
                for (k, z) in self.amplitudes.iter().enumerate() {
                    levels[(k / dim).max(k % dim)] += z.norm_sqr();
                }
            }
        }
        levels
    }

    /// Fraction of the norm in the top two levels of any mode.
    pub fn top_level_mass(&self) -> f64 {
        let levels = self.level_masses();
        let total: f64 = levels.iter().sum();
        let top: f64 = levels.iter().rev().take(2).sum();
        top / total
    }

    /// Same state with a different cutoff; amplitudes beyond it are dropped.
    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        match self.modes {
            Modes::One => {
                let mut amplitudes = self.amplitudes.clone();
                amplitudes.resize(cutoff + 1, Complex64::default());
                Self {
                    modes: Modes::One,
                    cutoff,
                    amplitudes,
                }
            }
            Modes::Two => {
                let dim = cutoff + 1;
                let mut amplitudes = vec![Complex64::default(); dim * dim];
                for a in 0..dim.min(self.dim()) {
                    for b in 0..dim.min(self.dim()) {
                        amplitudes[a * dim + b] = self.amplitude2(a, b);
                    }
                }
                Self {
                    modes: Modes::Two,
                    cutoff,
                    amplitudes,
                }
            }
        }
    }

    /// Tensor product of two single-mode states; the shorter one is zero-padded.
    pub fn product(first: &Self, second: &Self) -> Result<Self> {
        if first.modes != Modes::One || second.modes != Modes::One {
            return Err(validation("a product needs two single-mode factors"));
        }
        let cutoff = first.cutoff.max(second.cutoff);
        let dim = cutoff + 1;
        let mut amplitudes = vec![Complex64::default(); dim * dim];
        for a in 0..=first.cutoff {
            for b in 0..=second.cutoff {
                amplitudes[a * dim + b] = first.amplitudes[a] * second.amplitudes[b];
            }
        }
        Self::two_mode(cutoff, amplitudes)
    }

    /// Applies the annihilation operator of `mode` (0 or 1).
    pub fn lower(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let mut out = vec![Complex64::default(); self.amplitudes.len()];
        match self.modes {
            Modes::One => {
                for n in 0..self.cutoff {
                    out[n] = self.amplitudes[n + 1] * ((n + 1) as f64).sqrt();
                }
            }
            Modes::Two => {
                let dim = self.dim();
                for a in 0..dim {
                    for b in 0..dim {
                        let (src, weight) = if mode == 0 { ((a + 1, b), a + 1) } else { ((a, b + 1), b + 1) };
                        if src.0 < dim && src.1 < dim {
                            out[a * dim + b] = self.amplitudes[src.0 * dim + src.1] * (weight as f64).sqrt();
                        }
                    }
                }
            }
        }
        Ok(Self {
            amplitudes: out,
            ..self.clone()
        })
    }

    /// Applies the creation operator of `mode`; the cutoff grows by one so
    /// nothing is lost.
    pub fn raise(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        let grown = self.with_cutoff(self.cutoff + 1);
        let mut out = vec![Complex64::default(); grown.amplitudes.len()];
        let dim = grown.dim();
        match self.modes {
            Modes::One => {
                for n in 1..dim {
                    out[n] = grown.amplitudes[n - 1] * (n as f64).sqrt();
                }
            }
            Modes::Two => {
                for a in 0..dim {
                    for b in 0..dim {
                        let (src, weight) = if mode == 0 { ((a.wrapping_sub(1), b), a) } else { ((a, b.wrapping_sub(1)), b) };
                        if weight > 0 {
                            out[a * dim + b] = grown.amplitudes[src.0 * dim + src.1] * (weight as f64).sqrt();
                        }
                    }
                }
            }
        }
        Ok(Self {
            amplitudes: out,
            ..grown
        })
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes.count() {
            return Err(validation(format!("mode {mode} does not exist in a {:?}-mode state", self.modes)));
        }
        Ok(())
    }

    /// Text dump: a header line, then one line per basis element with the
    /// photon numbers, real part and imaginary part.
    pub fn to_dump(&self) -> String {
        let mut out = format!("# fock-state modes={} cutoff={}\n", self.modes.count(), self.cutoff);
        let dim = self.dim();
        for (k, z) in self.amplitudes.iter().enumerate() {
            match self.modes {
                Modes::One => writeln!(out, "{k} {:.16e} {:.16e}", z.re, z.im),
                Modes::Two => writeln!(out, "{} {} {:.16e} {:.16e}", k / dim, k % dim, z.re, z.im),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// Parses the output of [`FockState::to_dump`].
    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| validation("empty dump"))?;
        let field = |key: &str| -> Result<usize> {
            header
                .split_whitespace()
                .find_map(|w| w.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| validation(format!("dump header lacks {key}")))
        };
        let modes = match field("modes=")? {
            1 => Modes::One,
            2 => Modes::Two,
            m => return Err(validation(format!("unsupported mode count {m}"))),
        };
        let cutoff = field("cutoff=")?;
        let dim = cutoff + 1;
        let mut amplitudes = vec![Complex64::default(); dim.pow(modes.count() as u32)];
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let words: Vec<&str> = line.split_whitespace().collect();
            let parse_err = || validation(format!("malformed dump line `{line}`"));
            if words.len() != modes.count() + 2 {
                return Err(parse_err());
            }
            let mut index = 0;
            for w in &words[..modes.count()] {
                let n: usize = w.parse().map_err(|_| parse_err())?;
                if n > cutoff {
                    return Err(parse_err());
                }
                index = index * dim + n;
            }
            let re: f64 = words[modes.count()].parse().map_err(|_| parse_err())?;
            let im: f64 = words[modes.count() + 1].parse().map_err(|_| parse_err())?;
            amplitudes[index] = Complex64::new(re, im);
        }
        Ok(Self {
            modes,
            cutoff,
            amplitudes,
        })
    }
}

/// `<s1|s2>`; the state with the smaller cutoff is zero-padded.
pub fn overlap(s1: &FockState, s2: &FockState) -> Result<Complex64> {
    if s1.modes != s2.modes {
        return Err(validation("overlap of states with different mode counts"));
    }
    let cutoff = s1.cutoff.max(s2.cutoff);
    let (a, b) = (s1.with_cutoff(cutoff), s2.with_cutoff(cutoff));
    let mut acc = crate::numerics::CompensatedComplexSum::default();
    for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
        acc.add(x.conj() * y);
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_operators() {
        let s = FockState::number_state(Modes::Two, &[2, 1], 3).unwrap();
        let lowered = s.lower(0).unwrap();
        assert!((lowered.amplitude2(1, 1) - 2f64.sqrt()).norm() < 1e-15);
        let raised = s.raise(1).unwrap();
        assert_eq!(raised.cutoff(), 4);
        assert!((raised.amplitude2(2, 2) - 2f64.sqrt()).norm() < 1e-15);
        assert!(s.lower(2).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let s = FockState::single_mode(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, -0.8)]).unwrap();
        let text = s.to_dump();
        assert!(text.starts_with("# fock-state modes=1 cutoff=1\n"));
        assert_eq!(FockState::from_dump(&text).unwrap(), s);
        let p = FockState::product(&s, &s).unwrap();
        assert_eq!(FockState::from_dump(&p.to_dump()).unwrap(), p);
    }

    #[test]
    fn overlap_pads_cutoffs() {
        let a = FockState::number_state(Modes::One, &[1], 2).unwrap();
        let b = FockState::number_state(Modes::One, &[1], 5).unwrap();
        assert!((overlap(&a, &b).unwrap() - 1.0).norm() < 1e-15);
        assert!(overlap(&a, &FockState::vacuum(Modes::Two, 2)).is_err());
    }
}
