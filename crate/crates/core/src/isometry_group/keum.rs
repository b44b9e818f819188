//! Externally supplied Keum actions `z_w` and the gate that validates them.
//!
//! File format (JSON):
//!
//! ```json
//! { "entries": [ { "hexad": ["00", "16", "26", "13", "34", "24"],
//!                  "matrix": [["1/1", "0/1", …], …] } ] }
//! ```
//!
//! `matrix` has 17 rows of 17 rationals and acts on column vectors in the
//! `{Λ, N_α}` basis. The SHA-256 digest of the raw bytes identifies the table.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{LatticeIsometry, Provenance};
use crate::configuration::{type_one_weber, IncidenceType, TwoTorsionLabel, WeberHexad};
use crate::exec::Execution;
use crate::linalg::QMatrix;
use crate::rational::{format_q, parse_q, q, Q};
use crate::surface_lattice::{c_class, integral_basis, r_class, r_weber, w_double_prime, RANK};

/// `z_w(w″) = w″ + KEUM_WEYL_MULTIPLIER · r_w`.
///
/// An isometry with `z(x)·r_w = −x·r_{w′}` and `z(w″) = w″ + k r_w` must
/// have `k = 2`: see [`weyl_multiplier_constraints`].
pub const KEUM_WEYL_MULTIPLIER: i64 = 2;

pub const TABLE_SIZE: usize = 120;

#[derive(Debug, Error)]
pub enum KeumError {
    #[error("cannot parse Keum data: {0}")]
    Parse(String),
    #[error("entry {index}: {message}")]
    Shape { index: usize, message: String },
    #[error("table has {got} entries, expected {expected}")]
    Count { got: usize, expected: usize },
    #[error("hexad {0} appears more than once")]
    Duplicate(String),
    #[error("{} entries failed validation", .0.len())]
    Invalid(Vec<KeumValidation>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KeumProperty {
    GramIsometry,
    Integrality,
    FixesT0,
    FixesC,
    WeylShift,
    RootExchange,
    BasisPairing,
}

impl fmt::Display for KeumProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KeumProperty::GramIsometry => "Gram isometry",
            KeumProperty::Integrality => "integral lattice preserved both ways",
            KeumProperty::FixesT0 => "z(T_0) = T_0",
            KeumProperty::FixesC => "z(c) = c",
            KeumProperty::WeylShift => "z(w'') = w'' + 2 r_w",
            KeumProperty::RootExchange => "z(r_w') = -r_w",
            KeumProperty::BasisPairing => "z(x).r_w = -x.r_w' on a lattice basis",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KeumValidation {
    pub hexad: WeberHexad,
    pub failures: Vec<KeumProperty>,
}

impl KeumValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every property an admissible `z_w` must have.
pub fn validate_keum(z: &LatticeIsometry, w: &WeberHexad) -> KeumValidation {
    let mut failures = Vec::new();
    let Some(dual) = w.dual() else {
        return KeumValidation {
            hexad: *w,
            failures: vec![KeumProperty::RootExchange],
        };
    };
    let rw = r_weber(w);
    let rw_dual = r_weber(&dual);
    if !z.is_gram_isometry() {
        failures.push(KeumProperty::GramIsometry);
    }
    if !z.preserves_integrality() {
        failures.push(KeumProperty::Integrality);
    }
    let t0 = r_class();
    if z.apply(&t0) != t0 {
        failures.push(KeumProperty::FixesT0);
    }
    let c = c_class();
    if z.apply(&c) != c {
        failures.push(KeumProperty::FixesC);
    }
    let wpp = w_double_prime();
    if z.apply(&wpp) != &wpp + &(rw.clone() * KEUM_WEYL_MULTIPLIER) {
        failures.push(KeumProperty::WeylShift);
    }
    if z.apply(&rw_dual) != -rw.clone() {
        failures.push(KeumProperty::RootExchange);
    }
    let pairing_ok = integral_basis()
        .iter()
        .all(|x| z.apply(x).pair(&rw) == -x.pair(&rw_dual));
    if !pairing_ok {
        failures.push(KeumProperty::BasisPairing);
    }
    KeumValidation {
        hexad: *w,
        failures,
    }
}

/// For `z(w″) = w″ + k r_w`, the values of `k` allowed by
/// (norm preservation, the pairing identity at `x = w″`).
///
/// Norm: `(w″ + k r_w)² = w″²` gives `2k (w″·r_w) + k² r_w² = 0`.
/// Pairing: `(w″ + k r_w)·r_w = −w″·r_{w′}`.
pub fn weyl_multiplier_constraints(w: &WeberHexad) -> (Vec<Q>, Option<Q>) {
    let dual = w.dual().expect("type-1 hexad");
    let wpp = w_double_prime();
    let rw = r_weber(w);
    let a = wpp.pair(&rw);
    let rr = rw.square();
    // k (2a + k rr) = 0
    let norm_roots = vec![q(0), -(q(2) * &a) / &rr];
    let pairing_root = if rr == q(0) {
        None
    } else {
        Some((-wpp.pair(&r_weber(&dual)) - &a) / &rr)
    };
    (norm_roots, pairing_root)
}

/// Serialized form of one entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeumRecord {
    pub hexad: Vec<TwoTorsionLabel>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KeumFile {
    pub entries: Vec<KeumRecord>,
}

impl KeumRecord {
    pub fn from_isometry(w: &WeberHexad, z: &LatticeIsometry) -> KeumRecord {
        KeumRecord {
            hexad: w.labels.labels(),
            matrix: z
                .matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_q).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KeumActionTable {
    entries: Vec<(WeberHexad, LatticeIsometry)>,
    digest: String,
}

impl KeumActionTable {
    pub fn entries(&self) -> &[(WeberHexad, LatticeIsometry)] {
        &self.entries
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn get(&self, w: &WeberHexad) -> Option<&LatticeIsometry> {
        self.entries.iter().find(|(h, _)| h == w).map(|(_, z)| z)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses records into `(hexad, isometry)` pairs without validating them.
pub fn parse_keum(bytes: &[u8]) -> Result<Vec<(WeberHexad, LatticeIsometry)>, KeumError> {
    let file: KeumFile =
        serde_json::from_slice(bytes).map_err(|e| KeumError::Parse(e.to_string()))?;
    let mut out = Vec::with_capacity(file.entries.len());
    for (index, rec) in file.entries.iter().enumerate() {
        let shape = |message: String| KeumError::Shape { index, message };
        let labels = rec.hexad.iter().copied().collect();
        let w = WeberHexad::new(labels)
            .filter(|w| w.kind == IncidenceType::One)
            .ok_or_else(|| shape(format!("{labels} is not a type-1 Weber hexad")))?;
        if rec.matrix.len() != RANK || rec.matrix.iter().any(|r| r.len() != RANK) {
            return Err(shape("matrix must be 17 x 17".into()));
        }
        let rows = rec
            .matrix
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| shape(e.to_string()))?;
        let z = LatticeIsometry::from_matrix(
            QMatrix::from_rows(&rows),
            Provenance::External(w.to_string()),
        );
        out.push((w, z));
    }
    Ok(out)
}

/// Parses, validates every entry with `exec`, and accepts the table only if
/// it covers all 120 type-1 hexads and every entry passes.
pub fn load_keum_actions(bytes: &[u8], exec: Execution) -> Result<KeumActionTable, KeumError> {
    let entries = parse_keum(bytes)?;
    let mut seen = HashSet::new();
    for (w, _) in &entries {
        if !seen.insert(w.labels) {
            return Err(KeumError::Duplicate(w.to_string()));
        }
    }
    if entries.len() != TABLE_SIZE {
        return Err(KeumError::Count {
            got: entries.len(),
            expected: TABLE_SIZE,
        });
    }
    let reports = exec.map(&entries, |(w, z)| validate_keum(z, w));
    let failed: Vec<KeumValidation> = reports.into_iter().filter(|r| !r.passed()).collect();
    if !failed.is_empty() {
        return Err(KeumError::Invalid(failed));
    }
    let mut entries = entries;
    entries.sort_by_key(|(w, _)| *w);
    debug_assert_eq!(
        entries.iter().map(|(w, _)| *w).collect::<Vec<_>>(),
        type_one_weber()
    );
    Ok(KeumActionTable {
        entries,
        digest: sha256_hex(bytes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::Relabeling;
    use crate::isometry_group::{reflection, relabel_isometry};
    use crate::rational::qf;
    use crate::surface_lattice::SurfaceClass;

    fn example() -> WeberHexad {
        WeberHexad::parse(&["0", "16", "26", "13", "34", "24"]).unwrap()
    }

    /// A node relabeling carrying `w′` onto `w` followed by the reflection
    /// in `r_w`: satisfies every property except integrality.
    fn reflection_candidate(w: &WeberHexad) -> LatticeIsometry {
        let dual = w.dual().unwrap();
        let r = Relabeling::all()
            .into_iter()
            .find(|r| r.nodes(dual.labels) == w.labels)
            .expect("some relabeling swaps the halves on T_0");
        reflection(&r_weber(w)).compose(&relabel_isometry(&r))
    }

    #[test]
    fn identity_fails_weyl_shift() {
        let v = validate_keum(&LatticeIsometry::identity(), &example());
        assert!(v.failures.contains(&KeumProperty::WeylShift));
        assert!(v.failures.contains(&KeumProperty::RootExchange));
        assert!(!v.failures.contains(&KeumProperty::GramIsometry));
    }

    #[test]
    fn reflection_candidate_fails_only_integrality() {
        for w in type_one_weber().into_iter().step_by(17) {
            let z = reflection_candidate(&w);
            let v = validate_keum(&z, &w);
            assert_eq!(v.failures, vec![KeumProperty::Integrality], "{w}");
        }
    }

    #[test]
    fn multiplier_must_be_two() {
        for w in type_one_weber() {
            let (norm, pairing) = weyl_multiplier_constraints(&w);
            assert_eq!(norm, vec![q(0), q(2)]);
            assert_eq!(pairing, Some(q(2)));
        }
        // With multiplier 3 the shifted class changes norm.
        let w = example();
        let shifted = &w_double_prime() + &(r_weber(&w) * 3);
        assert_ne!(shifted.square(), w_double_prime().square());
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(parse_keum(b""), Err(KeumError::Parse(_))));
        let bad = br#"{"entries":[{"hexad":["00","16"],"matrix":[]}]}"#;
        assert!(matches!(parse_keum(bad), Err(KeumError::Shape { .. })));
    }

    #[test]
    fn table_gate_reports_property() {
        let file = KeumFile {
            entries: type_one_weber()
                .iter()
                .map(|w| KeumRecord::from_isometry(w, &reflection_candidate(w)))
                .collect(),
        };
        let bytes = serde_json::to_vec(&file).unwrap();
        match load_keum_actions(&bytes, Execution::default()) {
            Err(KeumError::Invalid(reports)) => {
                assert_eq!(reports.len(), 120);
                assert!(reports
                    .iter()
                    .all(|r| r.failures == vec![KeumProperty::Integrality]));
            }
            other => panic!("unexpected {other:?}"),
        }
        let short = KeumFile {
            entries: file.entries[..3].to_vec(),
        };
        let bytes = serde_json::to_vec(&short).unwrap();
        assert!(matches!(
            load_keum_actions(&bytes, Execution::Sequential),
            Err(KeumError::Count { got: 3, .. })
        ));
    }

    #[test]
    fn record_round_trip() {
        let w = example();
        let z = reflection_candidate(&w);
        let rec = KeumRecord::from_isometry(&w, &z);
        let bytes = serde_json::to_vec(&KeumFile { entries: vec![rec] }).unwrap();
        let parsed = parse_keum(&bytes).unwrap();
        assert_eq!(parsed[0].0, w);
        assert_eq!(parsed[0].1, z);
        let x = SurfaceClass::node(TwoTorsionLabel::ZERO) * qf(1, 1);
        assert_eq!(parsed[0].1.apply(&x), z.apply(&x));
        assert_eq!(sha256_hex(b"abc").len(), 64);
    }
}
