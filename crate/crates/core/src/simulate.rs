// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded piecewise ARMA generation and the nine benchmark models.
//!
//! Randomness comes from ChaCha12 (`rand_chacha`), which produces the same
//! stream on every platform. A master seed selects the key; replicate `r` of a
//! Monte Carlo run reads ChaCha stream `r` under that key, so replicates are
//! independent and can be generated in any order.

use crate::ar::TimeSeries;
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Zero-state samples generated and discarded before the first observation.
pub const BURN_IN: usize = 512;

/// `x_t = Σ ar_j x_{t-j} + ε_t + Σ ma_j ε_{t-j}`, `ε_t ~ N(0, noise_sd²)`.
///
/// Note the sign: `ar` is in the simulation convention, the negation of the
/// fitted coefficients in [`crate::ar::ArFit`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArmaSpec {
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    pub noise_sd: f64,
}

impl ArmaSpec {
    pub fn ar(ar: &[f64]) -> Self {
        Self {
            ar: ar.to_vec(),
            ma: Vec::new(),
            noise_sd: 1.0,
        }
    }

    pub fn arma(ar: &[f64], ma: &[f64]) -> Self {
        Self {
            ar: ar.to_vec(),
            ma: ma.to_vec(),
            noise_sd: 1.0,
        }
    }

    pub fn with_noise_sd(mut self, sd: f64) -> Self {
        self.noise_sd = sd;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.noise_sd >= 0.0) || !self.noise_sd.is_finite() {
            return Err(Error::invalid(format!(
                "noise_sd must be finite and non-negative, got {}",
                self.noise_sd
            )));
        }
        if self.ar.iter().chain(&self.ma).any(|c| !c.is_finite()) {
            return Err(Error::invalid("ARMA coefficients must be finite"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub process: ArmaSpec,
    /// Last observation (1-based) generated by this segment.
    pub end: usize,
}

/// Consecutive segments tiling `1..=T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseSpec {
    segments: Vec<Segment>,
}

impl PiecewiseSpec {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::invalid(
                "a piecewise spec needs at least one segment",
            ));
        }
        let mut prev = 0;
        for (i, seg) in segments.iter().enumerate() {
            if seg.end <= prev {
                return Err(Error::invalid(format!(
                    "segment {i} ends at {} which does not exceed the previous end {prev}",
                    seg.end
                )));
            }
            seg.process.validate()?;
            prev = seg.end;
        }
        Ok(Self { segments })
    }

    /// Single stationary segment of length `len`.
    pub fn stationary(process: ArmaSpec, len: usize) -> Result<Self> {
        Self::new(vec![Segment { process, end: len }])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_length(&self) -> usize {
        self.segments.last().map_or(0, |s| s.end)
    }

    /// Interior segment ends.
    pub fn true_cps(&self) -> Vec<usize> {
        let n = self.segments.len();
        self.segments[..n - 1].iter().map(|s| s.end).collect()
    }
}

/// Generator for replicate `replicate` under `seed`.
pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

pub fn simulate_piecewise(spec: &PiecewiseSpec, seed: u64) -> TimeSeries {
    simulate_with(spec, &mut replicate_rng(seed, 0))
}

pub fn simulate_replicate(spec: &PiecewiseSpec, seed: u64, replicate: u64) -> TimeSeries {
    simulate_with(spec, &mut replicate_rng(seed, replicate))
}

/// Runs the recursion with state carried across segment boundaries. The
/// burn-in uses the first segment's process.
pub fn simulate_with<R: rand::Rng + ?Sized>(spec: &PiecewiseSpec, rng: &mut R) -> TimeSeries {
    let total = BURN_IN + spec.total_length();
    let mut x = vec![0.0; total];
    let mut eps = vec![0.0; total];
    let mut seg_idx = 0;
    for t in 0..total {
        while t >= BURN_IN + spec.segments[seg_idx].end {
            seg_idx += 1;
        }
        let proc = &spec.segments[seg_idx].process;
        let z: f64 = StandardNormal.sample(rng);
        eps[t] = proc.noise_sd * z;
        let mut v = eps[t];
        for (j, a) in proc.ar.iter().enumerate() {
            if t > j {
                v += a * x[t - j - 1];
            }
        }
        for (j, m) in proc.ma.iter().enumerate() {
            if t > j {
                v += m * eps[t - j - 1];
            }
        }
        x[t] = v;
    }
    x.drain(..BURN_IN);
    TimeSeries::new(x).expect("simulated values are finite for finite coefficients")
}

/// Benchmark models A–I.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinModel {
    /// Stationary AR(1), `x_t = β x_{t-1} + ε_t`, T = 1024. The benchmark
    /// uses β ∈ {-0.7, -0.1, 0.4, 0.7}.
    A(f64),
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl BuiltinModel {
    /// Every benchmark configuration, in table order.
    pub fn all() -> Vec<BuiltinModel> {
        use BuiltinModel::*;
        vec![A(-0.7), A(-0.1), A(0.4), A(0.7), B, C, D, E, F, G, H, I]
    }

    pub fn spec(&self) -> PiecewiseSpec {
        builtin_model(*self)
    }
}

impl fmt::Display for BuiltinModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BuiltinModel::*;
        let s = match self {
            A(beta) => return write!(f, "A:{beta}"),
            B => "B",
            C => "C",
            D => "D",
            E => "E",
            F => "F",
            G => "G",
            H => "H",
            I => "I",
        };
        f.write_str(s)
    }
}

impl FromStr for BuiltinModel {
    type Err = Error;

    /// Accepts `B`, `c`, `A:0.4`, `A(0.4)` and `A=0.4`.
    fn from_str(s: &str) -> Result<Self> {
        use BuiltinModel::*;
        let s = s.trim();
        let unknown = || {
            Error::invalid(format!(
                "unknown model '{s}'; expected A:<beta> or one of B..I"
            ))
        };
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let rest = chars.as_str();
        if head == 'A' {
            let arg = rest
                .strip_prefix(':')
                .or_else(|| rest.strip_prefix('='))
                .or_else(|| rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
                .ok_or_else(|| {
                    Error::invalid(format!(
                        "model A needs a coefficient, e.g. A:0.4 (got '{s}')"
                    ))
                })?;
            let beta: f64 = arg.trim().parse().map_err(|_| {
                Error::invalid(format!("model A coefficient '{arg}' is not a number"))
            })?;
            if !(beta.abs() < 1.0) {
                return Err(Error::invalid(format!(
                    "model A coefficient must satisfy |beta| < 1, got {beta}"
                )));
            }
            return Ok(A(beta));
        }
        if !rest.is_empty() {
            return Err(unknown());
        }
        Ok(match head {
            'B' => B,
            'C' => C,
            'D' => D,
            'E' => E,
            'F' => F,
            'G' => G,
            'H' => H,
            'I' => I,
            _ => return Err(unknown()),
        })
    }
}

fn seg(process: ArmaSpec, end: usize) -> Segment {
    Segment { process, end }
}

pub fn builtin_model(model: BuiltinModel) -> PiecewiseSpec {
    use BuiltinModel::*;
    let segments = match model {
        A(beta) => vec![seg(ArmaSpec::ar(&[beta]), 1024)],
        B => vec![
            seg(ArmaSpec::ar(&[0.9]), 512),
            seg(ArmaSpec::ar(&[1.69, -0.81]), 768),
            seg(ArmaSpec::ar(&[1.32, -0.81]), 1024),
        ],
        C => vec![
            seg(ArmaSpec::ar(&[0.4]), 400),
            seg(ArmaSpec::ar(&[-0.6]), 612),
            seg(ArmaSpec::ar(&[0.5]), 1024),
        ],
        D => vec![
            seg(ArmaSpec::ar(&[0.75]), 50),
            seg(ArmaSpec::ar(&[-0.5]), 1024),
        ],
        E => vec![
            seg(ArmaSpec::ar(&[0.999]), 400),
            seg(ArmaSpec::ar(&[0.999]).with_noise_sd(1.5), 750),
            seg(ArmaSpec::ar(&[0.999]), 1024),
        ],
        F => vec![
            seg(ArmaSpec::ar(&[1.399, -0.4]), 400),
            seg(ArmaSpec::ar(&[0.999]).with_noise_sd(1.5), 750),
            seg(ArmaSpec::ar(&[0.699, 0.3]), 1024),
        ],
        G => vec![
            seg(ArmaSpec::ar(&[0.7]), 125),
            seg(ArmaSpec::ar(&[0.3]), 532),
            seg(ArmaSpec::ar(&[0.9]), 704),
            seg(ArmaSpec::ar(&[0.1]), 1024),
        ],
        H => vec![
            seg(ArmaSpec::arma(&[0.7], &[0.6]), 125),
            seg(ArmaSpec::arma(&[0.3], &[0.3]), 532),
            seg(ArmaSpec::ar(&[0.9]), 704),
            seg(ArmaSpec::arma(&[0.1], &[-0.5]), 1024),
        ],
        I => vec![
            seg(ArmaSpec::arma(&[], &[0.8]), 128),
            seg(ArmaSpec::arma(&[], &[1.68, -0.81]), 256),
        ],
    };
    PiecewiseSpec::new(segments).expect("builtin specs are valid")
}
