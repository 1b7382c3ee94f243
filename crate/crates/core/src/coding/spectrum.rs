use serde::{Deserialize, Serialize};

use crate::divergences::Distribution;
use crate::error::{Error, Result};
use crate::numeric;

/// Largest generator dimension accepted for exhaustive enumeration.
pub const MAX_GENERATOR_ROWS: usize = 28;

/// Weight distribution `S_0..S_N` of a code, or the average spectrum of an
/// ensemble (so counts are real-valued). `S_0 = 1` counts the all-zero
/// codeword.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSpectrum {
    counts: Vec<f64>,
}

impl DistanceSpectrum {
    pub fn new(counts: Vec<f64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidSpectrum(
                "need counts for weights 0..N with N >= 1".into(),
            ));
        }
        if counts.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidSpectrum(
                "counts must be finite and nonnegative".into(),
            ));
        }
        if counts[0] != 1.0 {
            return Err(Error::InvalidSpectrum(format!(
                "S_0 must be 1 (the all-zero codeword), got {}",
                counts[0]
            )));
        }
        Ok(Self { counts })
    }

    /// Builds a spectrum from `(weight, count)` pairs; weights not listed are
    /// zero and a missing weight 0 defaults to the all-zero codeword.
    pub fn from_pairs(n: usize, pairs: &[(usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpectrum("block length must be positive".into()));
        }
        let mut counts = vec![0.0; n + 1];
        let mut seen = vec![false; n + 1];
        for &(l, c) in pairs {
            if l > n {
                return Err(Error::InvalidSpectrum(format!(
                    "weight {l} exceeds block length {n}"
                )));
            }
            if seen[l] {
                return Err(Error::InvalidSpectrum(format!("weight {l} listed twice")));
            }
            seen[l] = true;
            counts[l] = c;
        }
        if !seen[0] {
            counts[0] = 1.0;
        }
        Self::new(counts)
    }

    /// Average spectrum of the fully random ensemble with `M = e^{N·rate}`
    /// codewords: `S_l = (M - 1)·2^{-N}·C(N, l)` for `l ≥ 1`.
    pub fn random_ensemble(n: usize, rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(crate::error::invalid("rate", rate, "must be positive"));
        }
        let binom = binomial_pmf(n)?;
        let nonzero = (n as f64 * rate).exp_m1();
        let mut counts: Vec<f64> = binom.probs().iter().map(|q| nonzero * q).collect();
        counts[0] = 1.0;
        Self::new(counts)
    }

    /// Block length `N`.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    /// `M - 1 = Σ_{l≥1} S_l`.
    pub fn nonzero_codewords(&self) -> f64 {
        numeric::sum(self.counts[1..].iter().copied())
    }

    /// `M = 1 + Σ_{l≥1} S_l`.
    pub fn codewords(&self) -> f64 {
        1.0 + self.nonzero_codewords()
    }

    /// `log(M)/N` in nats per channel use.
    pub fn rate(&self) -> f64 {
        self.codewords().ln() / self.n() as f64
    }

    /// Keeps weights with `keep(l)` (plus the zero codeword).
    pub fn restricted<F: Fn(usize) -> bool>(&self, keep: F) -> Self {
        let counts = self
            .counts
            .iter()
            .enumerate()
            .map(|(l, &c)| if l == 0 || keep(l) { c } else { 0.0 })
            .collect();
        Self { counts }
    }
}

/// A probability mass function over Hamming weights `0..=N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPmf {
    pub n: usize,
    pub dist: Distribution,
}

impl SpectrumPmf {
    pub fn probs(&self) -> &[f64] {
        self.dist.probs()
    }
}

/// `Q_N(l) = 2^{-N}·C(N, l)`, evaluated in the log domain.
pub fn binomial_pmf(n: usize) -> Result<SpectrumPmf> {
    if n == 0 {
        return Err(Error::InvalidSpectrum("block length must be positive".into()));
    }
    let ln2 = std::f64::consts::LN_2;
    let mut log_c = 0.0f64;
    let mut weights = Vec::with_capacity(n + 1);
    for l in 0..=n {
        if l > 0 {
            log_c += ((n - l + 1) as f64).ln() - (l as f64).ln();
        }
        weights.push((log_c - n as f64 * ln2).exp());
    }
    Ok(SpectrumPmf {
        n,
        dist: Distribution::from_weights(&weights)?,
    })
}

/// `P_N(l) = S_l/(M - 1)` for `l ≥ 1`, with `P_N(0) = 0`.
pub fn spectrum_pmf(spec: &DistanceSpectrum) -> Result<SpectrumPmf> {
    let m = spec.codewords();
    if m < 2.0 {
        return Err(Error::EmptySpectrum(m));
    }
    let total = spec.nonzero_codewords();
    let mut probs: Vec<f64> = spec.counts().iter().map(|s| s / total).collect();
    probs[0] = 0.0;
    Ok(SpectrumPmf {
        n: spec.n(),
        dist: Distribution::from_weights(&probs)?,
    })
}

/// Parses a generator matrix written as lines of `0`/`1` characters. Blank
/// lines, whitespace inside rows and `#` comments are ignored.
pub fn parse_generator(text: &str) -> Result<Vec<Vec<u8>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for ch in line.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '0' => row.push(0),
                '1' => row.push(1),
                other => {
                    return Err(Error::InvalidGenerator(format!(
                        "line {}: unexpected character `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Weight distribution of the binary linear code spanned by `rows`, by
/// enumerating all `2^k` codewords in Gray-code order.
pub fn spectrum_from_generator(rows: &[Vec<u8>]) -> Result<DistanceSpectrum> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::InvalidGenerator("no rows".into()));
    }
    if k > MAX_GENERATOR_ROWS {
        return Err(Error::InvalidGenerator(format!(
            "{k} rows exceed the enumeration limit of {MAX_GENERATOR_ROWS}"
        )));
    }
    let n = rows[0].len();
    if n == 0 {
        return Err(Error::InvalidGenerator("rows are empty".into()));
    }
    let words = n.div_ceil(64);
    let mut packed = Vec::with_capacity(k);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidGenerator(format!(
                "row {} has length {}, expected {n}",
                i + 1,
                row.len()
            )));
        }
        let mut bits = vec![0u64; words];
        for (j, &b) in row.iter().enumerate() {
            match b {
                0 => {}
                1 => bits[j / 64] |= 1 << (j % 64),
                other => {
                    return Err(Error::InvalidGenerator(format!(
                        "row {} holds non-binary entry {other}",
                        i + 1
                    )))
                }
            }
        }
        packed.push(bits);
    }

    let mut tally = vec![0u64; n + 1];
    let mut word = vec![0u64; words];
    tally[0] += 1;
    for step in 1u64..(1u64 << k) {
        let flip = step.trailing_zeros() as usize;
        for (w, g) in word.iter_mut().zip(&packed[flip]) {
            *w ^= g;
        }
        let weight: u32 = word.iter().map(|w| w.count_ones()).sum();
        tally[weight as usize] += 1;
    }
    // a rank-deficient generator repeats the zero word
    let counts = tally.into_iter().map(|c| c as f64).collect::<Vec<_>>();
    if counts[0] != 1.0 {
        return Err(Error::InvalidGenerator(
            "rows are linearly dependent over GF(2)".into(),
        ));
    }
    DistanceSpectrum::new(counts)
}
