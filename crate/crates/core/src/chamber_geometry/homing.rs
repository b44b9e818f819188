//! Greedy descent of `u·w″` under the involutions `z_g` (and `z_w` when a
//! Keum table is supplied).

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::{omega_membership, Membership};
use crate::exec::Execution;
use crate::isometry_group::keum::KeumActionTable;
use crate::isometry_group::{all_hg_types, LatticeIsometry};
use crate::rational::Q;
use crate::surface_lattice::{in_a, w_double_prime, SurfaceClass};

const MAX_STEPS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomingError {
    #[error("input is not in A")]
    NotInA,
    #[error("input is not in the positive cone")]
    NotPositive,
    #[error("descent stopped outside Ω; the Keum generators are missing")]
    MissingKeum,
    #[error("descent stopped outside Ω")]
    Stuck,
    #[error("no termination after {0} steps")]
    TooLong(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct HomingStep {
    pub generator: String,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomingTrace {
    pub steps: Vec<HomingStep>,
    pub result: SurfaceClass,
    pub keum_used: bool,
    #[serde(skip)]
    pub word: LatticeIsometry,
}

struct Generator {
    name: String,
    map: LatticeIsometry,
    /// `y(w″)`, so that `y(u)·w″ = u·y(w″)` for an involutive isometry.
    image: SurfaceClass,
}

fn generators(keum: Option<&KeumActionTable>) -> Vec<Generator> {
    let w = w_double_prime();
    let mut out: Vec<Generator> = all_hg_types()
        .into_iter()
        .map(|(g, z)| Generator { name: format!("z_g{}", g.labels), image: z.apply(&w), map: z })
        .collect();
    if let Some(t) = keum {
        for (h, z) in t.entries() {
            out.push(Generator { name: format!("z_w{}", h.labels), image: z.apply(&w), map: z.clone() });
        }
    }
    out
}

/// Applies the generator giving the smallest `y(u)·w″` while it improves.
pub fn homing(u: &SurfaceClass, keum: Option<&KeumActionTable>) -> Result<HomingTrace, HomingError> {
    if !in_a(u) {
        return Err(HomingError::NotInA);
    }
    let w = w_double_prime();
    if !u.square().is_positive() || !u.pair(&w).is_positive() {
        return Err(HomingError::NotPositive);
    }
    let gens = generators(keum);
    let mut x = u.clone();
    let mut word = LatticeIsometry::identity();
    let mut steps = Vec::new();
    loop {
        if steps.len() >= MAX_STEPS {
            return Err(HomingError::TooLong(MAX_STEPS));
        }
        let current = x.pair(&w);
        let best = gens
            .iter()
            .map(|g| (x.pair(&g.image), g))
            .filter(|(v, _)| *v < current)
            .min_by(|a, b| a.0.cmp(&b.0));
        let Some((value, g)) = best else { break };
        x = g.map.apply(&x);
        word = g.map.compose(&word);
        steps.push(HomingStep { generator: g.name.clone(), value });
    }
    if omega_membership(&x) == Membership::Outside {
        return Err(if keum.is_none() { HomingError::MissingKeum } else { HomingError::Stuck });
    }
    Ok(HomingTrace { steps, result: x, keum_used: keum.is_some(), word })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub word: Vec<String>,
    #[serde(with = "crate::rational::serde_q")]
    pub start_value: Q,
    pub homing_steps: usize,
    /// Homing returned exactly `w″`.
    pub recovered: bool,
    /// The homing word composed with the applied word is the identity.
    pub identity: bool,
    pub error: Option<String>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.recovered && self.identity
    }
}

/// Applies `count` seeded random words of length `1..=max_len` to `w″` and
/// homes each image back. Words use the `z_w` only when `keum` is given.
pub fn round_trips(
    count: usize,
    max_len: usize,
    seed: u64,
    keum: Option<&KeumActionTable>,
    exec: Execution,
) -> Vec<RoundTrip> {
    let gens = generators(keum);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let mut w: Vec<usize> = Vec::with_capacity(len);
            while w.len() < len {
                let g = rng.gen_range(0..gens.len());
                // Adjacent repeats cancel.
                if w.last() != Some(&g) {
                    w.push(g);
                }
            }
            w
        })
        .collect();
    let w = w_double_prime();
    exec.map(&words, |word| {
        let mut map = LatticeIsometry::identity();
        for &g in word {
            map = gens[g].map.compose(&map);
        }
        let u = map.apply(&w);
        let names = word.iter().map(|&g| gens[g].name.clone()).collect();
        let start_value = u.pair(&w);
        match homing(&u, keum) {
            Ok(t) => RoundTrip {
                word: names,
                start_value,
                homing_steps: t.steps.len(),
                recovered: t.result == w,
                identity: t.word.compose(&map).is_identity(),
                error: None,
            },
            Err(e) => RoundTrip {
                word: names,
                start_value,
                homing_steps: 0,
                recovered: false,
                identity: false,
                error: Some(e.to_string()),
            },
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::GopelTetrad;
    use crate::isometry_group::hg_type;
    use crate::surface_lattice::r_gopel;

    #[test]
    fn fixed_point() {
        let t = homing(&w_double_prime(), None).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.result, w_double_prime());
    }

    #[test]
    fn single_step() {
        let g = GopelTetrad::base();
        let z = hg_type(&g).unwrap();
        let u = z.apply(&w_double_prime());
        assert_eq!(u, w_double_prime() + r_gopel(&g) * 2);
        let t = homing(&u, None).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].generator, format!("z_g{}", g.labels));
        assert_eq!(t.result, w_double_prime());
        assert!(t.word.compose(&z).is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(homing(&SurfaceClass::lambda(), None).unwrap_err(), HomingError::NotInA);
        let neg = w_double_prime() * -1;
        assert_eq!(homing(&neg, None).unwrap_err(), HomingError::NotPositive);
    }

    #[test]
    fn seeded_round_trips() {
        let trips = round_trips(8, 4, 3, None, Execution::default());
        assert_eq!(trips.len(), 8);
        for t in &trips {
            assert!(t.passed(), "{:?}", t.word);
        }
    }
}
