//! Timing of the blockwise n-ary product against the dense embedding.
//!
//! Works over `f64`, so results are approximate; the blockwise result is
//! compared entrywise with the dense one.

use std::time::{Duration, Instant};

use polyadic_core::blockshift::{nary_product, BlockShiftMatrix};
use polyadic_core::verify::{trial_rng, Rng64};
use polyadic_core::{Error, Matrix, Result};
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub mean_ms: f64,
    pub median_ms: f64,
}

impl Timing {
    fn from_samples(samples: &mut [Duration]) -> Self {
        samples.sort();
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        let mid = samples.len() / 2;
        let median_ms = if samples.len() % 2 == 0 {
            (ms(samples[mid - 1]) + ms(samples[mid])) / 2.0
        } else {
            ms(samples[mid])
        };
        Self {
            mean_ms: samples.iter().copied().map(ms).sum::<f64>() / samples.len() as f64,
            median_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub arity: usize,
    pub block_size: usize,
    pub repetitions: usize,
    pub blockwise: Timing,
    pub dense: Timing,
    /// Dense median over blockwise median.
    pub ratio: f64,
    /// Largest entrywise difference between the two results.
    pub max_deviation: f64,
}

pub fn random_factors(n: usize, p: usize, rng: &mut Rng64) -> Result<Vec<BlockShiftMatrix<f64>>> {
    if n < 2 {
        return Err(Error::Arity(n));
    }
    (0..n)
        .map(|_| {
            let blocks = (0..n - 1)
                .map(|_| {
                    let entries = (0..p * p).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    Matrix::new(p, p, entries)
                })
                .collect::<Result<Vec<_>>>()?;
            BlockShiftMatrix::from_blocks(n, blocks)
        })
        .collect()
}

/// Plain dense chain product of the embeddings, with no zero skipping.
pub fn dense_chain(dense: &[Matrix<f64>]) -> Result<Matrix<f64>> {
    let (first, rest) = dense
        .split_first()
        .ok_or_else(|| Error::Dimension("empty product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| acc.mul_dense(m))
}

pub fn max_deviation(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Times `repetitions` blockwise and dense n-fold products of random
/// `p x p`-block factors. The dense inputs are embedded once, outside the
/// timed region.
pub fn bench_blockwise(n: usize, p: usize, repetitions: usize, seed: u64) -> Result<BenchReport> {
    if p == 0 {
        return Err(Error::Dimension("block size must be positive".into()));
    }
    if repetitions == 0 {
        return Err(Error::Dimension("at least one repetition is needed".into()));
    }
    let mut rng = trial_rng(seed, 0);
    let factors = random_factors(n, p, &mut rng)?;
    let dense: Vec<_> = factors.iter().map(BlockShiftMatrix::to_dense).collect();

    // Warm-up, and the results used for the deviation.
    let blockwise_result = nary_product(&factors)?.to_dense();
    let dense_result = dense_chain(&dense)?;

    let mut blockwise = Vec::with_capacity(repetitions);
    let mut full = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        std::hint::black_box(nary_product(std::hint::black_box(&factors))?);
        blockwise.push(start.elapsed());
        let start = Instant::now();
        std::hint::black_box(dense_chain(std::hint::black_box(&dense))?);
        full.push(start.elapsed());
    }
    let blockwise = Timing::from_samples(&mut blockwise);
    let dense = Timing::from_samples(&mut full);
    Ok(BenchReport {
        arity: n,
        block_size: p,
        repetitions,
        ratio: dense.median_ms / blockwise.median_ms.max(f64::MIN_POSITIVE),
        blockwise,
        dense,
        max_deviation: max_deviation(&blockwise_result, &dense_result),
    })
}
