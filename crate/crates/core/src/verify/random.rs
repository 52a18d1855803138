use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{rat, ParameterPoint, Rational};

/// Seeded source of random rational parameter points.
///
/// Numerators and denominators are bounded by 40. Points are positive and
/// avoid the degenerate value 1; in orthogonality mode every parameter lies
/// in `(0, 3/4)`.
#[derive(Clone, Debug)]
pub struct ParamSampler {
    rng: ChaCha8Rng,
    in_domain: bool,
}

pub const RATIONAL_BOUND: i64 = 40;

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            in_domain: false,
        }
    }

    /// Stream `stream` of `seed`: independent samplers for parallel work that
    /// stay reproducible.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, in_domain: false }
    }

    pub fn orthogonality_domain(mut self) -> Self {
        self.in_domain = true;
        self
    }

    pub fn rational(&mut self) -> Rational {
        loop {
            let den = self.rng.gen_range(1..=RATIONAL_BOUND);
            let num = self.rng.gen_range(1..=RATIONAL_BOUND);
            if self.in_domain && 4 * num >= 3 * den {
                continue;
            }
            if num != den {
                return rat(num, den);
            }
        }
    }

    pub fn draw(&mut self) -> ParameterPoint {
        let q = self.rational();
        let t = self.rational();
        let tl = [self.rational(), self.rational(), self.rational(), self.rational()];
        ParameterPoint::new(q, t, tl).expect("sampled parameters are nonzero")
    }
}

/// Run `f` at fresh points until it does not hit a resonance. Returns the
/// point used, the result and how many resonant points were skipped.
pub fn retry_resonant<T>(
    sampler: &mut ParamSampler,
    attempts: usize,
    mut f: impl FnMut(&ParameterPoint) -> Result<T>,
) -> Result<(ParameterPoint, T, usize)> {
    let mut last = None;
    for skipped in 0..attempts {
        let params = sampler.draw();
        match f(&params) {
            Ok(v) => return Ok((params, v, skipped)),
            Err(e @ Error::Resonant { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::invalid("no attempts allowed")))
}
