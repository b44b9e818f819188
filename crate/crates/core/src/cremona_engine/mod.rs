//! Exact verification of the quintic Cremona involution `φ_D` of `P^3`
//! attached to the base Göpel tetrad.
//!
//! Every identity is checked as an exact polynomial identity at seeded
//! rational specializations of `(a, b, c)`, or over `Q(a, b, c)` in symbolic
//! mode. "Up to scalar" always means proportional over the parameter field,
//! with the scalar recorded.

mod certify;
pub mod geometry;
pub mod pmatrix;
pub mod poly;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exec::Execution;

pub use certify::{
    compose_self, exceptional_images, jacobian_factorization, line_permutation,
    linear_system, noncontraction_after_blowup, rational_curve_transport, sections_report,
    Context,
};
pub use geometry::{build_sections, Condition, Parameters, PointConfig, Quadrics, Variant};
pub use poly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CremonaError {
    #[error("configuration not generic: {0}")]
    NotGeneric(String),
    #[error("points p{0}, p{1}, p{2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("{what}: kernel dimension {dim}, expected 1")]
    KernelDimension { what: String, dim: usize },
    #[error("{0}")]
    Degenerate(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Certificate {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Certificate {
        Certificate {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CremonaReport {
    pub params: Parameters,
    pub certificates: Vec<Certificate>,
}

impl CremonaReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Certificate> {
        self.certificates.iter().filter(|c| !c.passed).collect()
    }
}

/// All certificates for one parameter choice.
pub fn verify(params: Parameters) -> Result<CremonaReport, CremonaError> {
    let ctx = Context::build(params.clone())?;
    let mut certificates = Vec::new();
    certificates.extend(sections_report(&ctx));
    certificates.extend(linear_system(&ctx));
    certificates.extend(exceptional_images(&ctx));
    certificates.extend(compose_self(&ctx));
    certificates.extend(jacobian_factorization(&ctx));
    certificates.extend(noncontraction_after_blowup(&ctx));
    certificates.extend(rational_curve_transport(&ctx));
    certificates.extend(line_permutation(&ctx));
    Ok(CremonaReport { params, certificates })
}

/// `samples` seeded specializations, in parallel under `exec`.
pub fn specializations(samples: usize, seed: u64) -> Vec<Parameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| Parameters::random(&mut rng)).collect()
}

pub fn run_suite(
    samples: usize,
    seed: u64,
    symbolic: bool,
    exec: Execution,
) -> Vec<Result<CremonaReport, CremonaError>> {
    let mut params = specializations(samples, seed);
    if symbolic {
        params.push(Parameters::Symbolic);
    }
    exec.map(&params, |p| verify(p.clone()))
}
