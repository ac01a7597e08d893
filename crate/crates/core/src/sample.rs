//! Seeded random rational draws with rejection of degenerate specializations.
//!
//! All identity checks evaluate rational functions at random points; the draws here keep
//! numerators/denominators small (so big-rational arithmetic stays fast) and reject values
//! that would make some denominator of the tested identity vanish: q ∈ {0, ±1}, coinciding
//! parameters a_i = b_j, and ratios a_i/a_j landing in small powers of q.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::partitions::{ParamSeq, SeqLabel};
use crate::scalar::{is_degenerate_unit, Rat, Scalar};

/// Deterministic source of random rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A nonzero rational with numerator in ±[1,12] and denominator in [1,12].
    pub fn rational(&mut self) -> Rat {
        loop {
            let num = self.rng.gen_range(-12i64..=12);
            let den = self.rng.gen_range(1i64..=12);
            if num != 0 {
                return Rat::new(num.into(), den.into());
            }
        }
    }

    /// A rational avoiding 0 and ±1 (suitable for q).
    pub fn unit_free_rational(&mut self) -> Rat {
        loop {
            let r = self.rational();
            if !is_degenerate_unit(&r) {
                return r;
            }
        }
    }

    /// A small positive integer in the given inclusive range.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Draws q and parameter prefixes 𝒜, ℬ of the given length such that no value or
    /// pairwise ratio degenerates within `pow_range` powers of q: all entries distinct,
    /// a_i ≠ b_j, and χ_i/χ_j ∉ {q^k : |k| ≤ pow_range} for any two drawn entries.
    pub fn parameter_pair(&mut self, len: usize, pow_range: i64) -> (Rat, ParamSeq, ParamSeq) {
        'outer: loop {
            let q = self.unit_free_rational();
            let mut drawn: Vec<Rat> = Vec::with_capacity(2 * len);
            for _ in 0..2 * len {
                'draw: for _attempt in 0..200 {
                    let cand = self.unit_free_rational();
                    for prev in &drawn {
                        let ratio = &cand / prev;
                        for k in -pow_range..=pow_range {
                            if ratio == Scalar::powi(&q, k).unwrap() {
                                continue 'draw;
                            }
                        }
                    }
                    drawn.push(cand);
                    break;
                }
            }
            if drawn.len() != 2 * len {
                continue 'outer;
            }
            let a = ParamSeq::new(SeqLabel::A, drawn[..len].to_vec());
            let b = ParamSeq::new(SeqLabel::B, drawn[len..].to_vec());
            return (q, a, b);
        }
    }

    /// Draws a slope d ≠ 0 and a length-`len` sequence 𝒞 such that c_i − c_j ∉ {kd : |k| ≤ range}
    /// for all i ≠ j (the non-degeneracy needed by linear evaluation grids).
    pub fn linear_parameters(&mut self, len: usize, range: i64) -> (Rat, ParamSeq) {
        'outer: loop {
            let d = self.unit_free_rational();
            let mut drawn: Vec<Rat> = Vec::with_capacity(len);
            for _ in 0..len {
                'draw: for _attempt in 0..200 {
                    let cand = self.rational();
                    for prev in &drawn {
                        let diff = &cand - prev;
                        for k in -range..=range {
                            if diff == &d * Rat::from_integer(k.into()) {
                                continue 'draw;
                            }
                        }
                    }
                    drawn.push(cand);
                    break;
                }
            }
            if drawn.len() != len {
                continue 'outer;
            }
            return (d, ParamSeq::new(SeqLabel::C, drawn));
        }
    }

    /// A sequence of pairwise-distinct rationals avoiding 0 and ±1.
    pub fn distinct_rationals(&mut self, len: usize) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::with_capacity(len);
        while out.len() < len {
            let cand = self.unit_free_rational();
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
        out
    }
}

/// Resolves the effective seed: the SQW_SEED env var overrides any configured seed;
/// otherwise the explicit CLI value, else the default.
pub fn resolve_seed(cli: Option<u64>, default: u64) -> u64 {
    if let Ok(v) = std::env::var("SQW_SEED") {
        if let Ok(n) = v.parse::<u64>() {
            return n;
        }
    }
    cli.unwrap_or(default)
}

/// A small deterministic perturbation: adds a nonzero rational in ±[1,5]/[1,5].
pub fn perturb(r: &Rat, sampler: &mut Sampler) -> Rat {
    loop {
        let num = sampler.int_in(-5, 5);
        if num == 0 {
            continue;
        }
        let den = sampler.int_in(1, 5);
        return r + Rat::new(num.into(), den.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_draws() {
        let mut s1 = Sampler::new(42);
        let mut s2 = Sampler::new(42);
        for _ in 0..20 {
            assert_eq!(s1.rational(), s2.rational());
        }
    }

    #[test]
    fn parameter_pair_avoids_degeneracies() {
        let mut s = Sampler::new(7);
        let (q, a, b) = s.parameter_pair(4, 3);
        assert!(!is_degenerate_unit(&q));
        for i in 0..4 {
            for j in 0..4 {
                assert_ne!(a.get(i).unwrap(), b.get(j).unwrap());
                if i != j {
                    let ratio = a.get(i).unwrap() / a.get(j).unwrap();
                    for k in -3i64..=3 {
                        assert_ne!(ratio, Scalar::powi(&q, k).unwrap());
                    }
                }
            }
        }
    }
}
