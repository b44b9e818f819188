//! The rank-17 Néron–Severi lattice of the Kummer surface.
//!
//! Classes are stored in the rational basis `{Λ, N_α}` (Λ first, nodes in
//! canonical label order). `Λ² = 4`, `N_α² = −2`, all other products vanish.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::configuration::{
    trope_incidence, ConfigurationError, GopelTetrad, IncidenceType, LabelSet, TwoTorsionLabel,
    WeberHexad,
};
use crate::linalg::{inertia, Inertia, IntLattice, QMatrix};
use crate::rational::{format_q, parse_q, q, qf, Q};

pub const RANK: usize = 17;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown class name {0:?}")]
    UnknownName(String),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Configuration(#[from] ConfigurationError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SurfaceClass {
    coords: Vec<Q>,
}

impl SurfaceClass {
    pub fn zero() -> SurfaceClass {
        SurfaceClass {
            coords: vec![Q::zero(); RANK],
        }
    }

    pub fn from_coords(coords: Vec<Q>) -> Result<SurfaceClass, LatticeError> {
        if coords.len() != RANK {
            return Err(LatticeError::WrongLength {
                expected: RANK,
                got: coords.len(),
            });
        }
        Ok(SurfaceClass { coords })
    }

    pub fn from_ints(coords: &[i64]) -> SurfaceClass {
        SurfaceClass::from_coords(coords.iter().map(|&c| q(c)).collect()).expect("17 entries")
    }

    pub fn lambda() -> SurfaceClass {
        let mut x = SurfaceClass::zero();
        x.coords[0] = Q::one();
        x
    }

    pub fn node(alpha: TwoTorsionLabel) -> SurfaceClass {
        let mut x = SurfaceClass::zero();
        x.coords[1 + alpha.index()] = Q::one();
        x
    }

    pub fn nodes(set: LabelSet) -> SurfaceClass {
        let mut x = SurfaceClass::zero();
        for a in set.iter() {
            x.coords[1 + a.index()] += Q::one();
        }
        x
    }

    /// `T_β = (Λ − Σ_{α ∈ I(T_β)} N_α) / 2`.
    pub fn trope(beta: TwoTorsionLabel) -> SurfaceClass {
        (SurfaceClass::lambda() - SurfaceClass::nodes(trope_incidence(beta))) * qf(1, 2)
    }

    pub fn all_nodes() -> SurfaceClass {
        SurfaceClass::nodes(LabelSet::from_bits(u16::MAX))
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn lambda_coeff(&self) -> &Q {
        &self.coords[0]
    }

    pub fn node_coeff(&self, alpha: TwoTorsionLabel) -> &Q {
        &self.coords[1 + alpha.index()]
    }

    pub fn pair(&self, other: &SurfaceClass) -> Q {
        let mut s = q(4) * &self.coords[0] * &other.coords[0];
        for i in 1..RANK {
            s -= q(2) * &self.coords[i] * &other.coords[i];
        }
        s
    }

    pub fn square(&self) -> Q {
        self.pair(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Membership in the integer span of `{N_α} ∪ {T_β}`.
    pub fn is_integral(&self) -> bool {
        integral_lattice().contains(&self.coords)
    }

    pub fn scale(&self, s: &Q) -> SurfaceClass {
        SurfaceClass {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }
}

impl fmt::Debug for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.coords[0].is_zero() {
            terms.push(format!("{}·Λ", self.coords[0]));
        }
        for a in TwoTorsionLabel::all() {
            let c = self.node_coeff(a);
            if !c.is_zero() {
                terms.push(format!("{}·N{}", c, a));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: &SurfaceClass) -> SurfaceClass {
        SurfaceClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for SurfaceClass {
    type Output = SurfaceClass;
    fn add(self, rhs: SurfaceClass) -> SurfaceClass {
        &self + &rhs
    }
}

impl Sub for &SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, rhs: &SurfaceClass) -> SurfaceClass {
        SurfaceClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for SurfaceClass {
    type Output = SurfaceClass;
    fn sub(self, rhs: SurfaceClass) -> SurfaceClass {
        &self - &rhs
    }
}

impl Neg for SurfaceClass {
    type Output = SurfaceClass;
    fn neg(self) -> SurfaceClass {
        SurfaceClass {
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<Q> for SurfaceClass {
    type Output = SurfaceClass;
    fn mul(self, s: Q) -> SurfaceClass {
        self.scale(&s)
    }
}

impl Mul<i64> for SurfaceClass {
    type Output = SurfaceClass;
    fn mul(self, s: i64) -> SurfaceClass {
        self.scale(&q(s))
    }
}

impl Serialize for SurfaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(format_q))
    }
}

impl<'de> Deserialize<'de> for SurfaceClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coords = v
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        SurfaceClass::from_coords(coords).map_err(serde::de::Error::custom)
    }
}

/// The Gram matrix `diag(4, −2, …, −2)`.
pub fn gram() -> QMatrix {
    let mut d = vec![q(-2); RANK];
    d[0] = q(4);
    QMatrix::diagonal(&d)
}

pub fn signature() -> Inertia {
    inertia(&gram())
}

fn integral_lattice() -> &'static IntLattice {
    static L: OnceLock<IntLattice> = OnceLock::new();
    L.get_or_init(|| {
        let gens: Vec<Vec<Q>> = TwoTorsionLabel::all()
            .map(|a| SurfaceClass::node(a).into_coords())
            .chain(TwoTorsionLabel::all().map(|b| SurfaceClass::trope(b).into_coords()))
            .collect();
        IntLattice::from_generators(&gens)
    })
}

/// A lattice basis of NS(S) as 17 coordinate vectors.
pub fn integral_basis() -> Vec<SurfaceClass> {
    integral_lattice()
        .basis()
        .into_iter()
        .map(|v| SurfaceClass::from_coords(v).expect("17 entries"))
        .collect()
}

/// `R = T_0`.
pub fn r_class() -> SurfaceClass {
    SurfaceClass::trope(TwoTorsionLabel::ZERO)
}

/// `b = (3Λ − Σ_{i=1}^{6} N_{i6} − 2 Σ_{1≤i<j≤5} N_{ij}) / 2`.
pub fn b_class() -> SurfaceClass {
    let t0 = trope_incidence(TwoTorsionLabel::ZERO);
    let rest = LabelSet::from_bits(!t0.bits());
    (SurfaceClass::lambda() * 3 - SurfaceClass::nodes(t0) - SurfaceClass::nodes(rest) * 2)
        * qf(1, 2)
}

/// `c = 2Λ − Σ_α N_α`.
pub fn c_class() -> SurfaceClass {
    SurfaceClass::lambda() * 2 - SurfaceClass::all_nodes()
}

/// `w′ = (Σ N_α + Σ T_α)/4`.
pub fn w_prime() -> SurfaceClass {
    let mut s = SurfaceClass::all_nodes();
    for b in TwoTorsionLabel::all() {
        s = s + SurfaceClass::trope(b);
    }
    s * qf(1, 4)
}

/// `w″ = (13Λ − 3Σ_α N_α + 4R)/7`.
pub fn w_double_prime() -> SurfaceClass {
    (SurfaceClass::lambda() * 13 - SurfaceClass::all_nodes() * 3 + r_class() * 4) * qf(1, 7)
}

/// `r_g = Λ − Σ_{α∈g} N_α`.
pub fn r_gopel(g: &GopelTetrad) -> SurfaceClass {
    SurfaceClass::lambda() - SurfaceClass::nodes(g.labels)
}

/// `r_w = 3Λ − 2 Σ_{α∈w} N_α`.
pub fn r_weber(w: &WeberHexad) -> SurfaceClass {
    SurfaceClass::lambda() * 3 - SurfaceClass::nodes(w.labels) * 2
}

/// `C_i = 5Λ − 5N_{i6} − Σ_{α≠i6} N_α` for `i` in `1..=6` (`N_66 = N_0`).
pub fn c_i(i: u8) -> SurfaceClass {
    let n = SurfaceClass::node(TwoTorsionLabel::pair(i, 6));
    SurfaceClass::lambda() * 5 - n.clone() * 4 - SurfaceClass::all_nodes()
}

/// `F_g = 6Λ − 2 Σ_{I(T_0)} N − 3 Σ_{α∈g} N_α` for a type-2 tetrad.
pub fn f_g(g: &GopelTetrad) -> Result<SurfaceClass, LatticeError> {
    if g.kind != IncidenceType::Two {
        return Err(LatticeError::Invalid(format!("F_g needs a type-2 tetrad, got {g}")));
    }
    Ok(SurfaceClass::lambda() * 6
        - SurfaceClass::nodes(trope_incidence(TwoTorsionLabel::ZERO)) * 2
        - SurfaceClass::nodes(g.labels) * 3)
}

/// The (−4)-root `Λ − 2N_α` of the projection `p_α`.
pub fn proj_root(alpha: TwoTorsionLabel) -> SurfaceClass {
    SurfaceClass::lambda() - SurfaceClass::node(alpha) * 2
}

/// `σ(Λ − 2N_α)`, the root of the correlation `q_α`.
pub fn corr_root(alpha: TwoTorsionLabel) -> SurfaceClass {
    crate::isometry_group::switch().apply(&proj_root(alpha))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedClass {
    Lambda,
    Node(TwoTorsionLabel),
    Trope(TwoTorsionLabel),
    R,
    B,
    C,
    WPrime,
    WDoublePrime,
    RGopel(GopelTetrad),
    RWeber(WeberHexad),
    CI(u8),
    FG(GopelTetrad),
    ProjRoot(TwoTorsionLabel),
    CorrRoot(TwoTorsionLabel),
}

impl NamedClass {
    pub fn class(&self) -> Result<SurfaceClass, LatticeError> {
        Ok(match self {
            NamedClass::Lambda => SurfaceClass::lambda(),
            NamedClass::Node(a) => SurfaceClass::node(*a),
            NamedClass::Trope(b) => SurfaceClass::trope(*b),
            NamedClass::R => r_class(),
            NamedClass::B => b_class(),
            NamedClass::C => c_class(),
            NamedClass::WPrime => w_prime(),
            NamedClass::WDoublePrime => w_double_prime(),
            NamedClass::RGopel(g) => r_gopel(g),
            NamedClass::RWeber(w) => r_weber(w),
            NamedClass::CI(i) => c_i(*i),
            NamedClass::FG(g) => f_g(g)?,
            NamedClass::ProjRoot(a) => proj_root(*a),
            NamedClass::CorrRoot(a) => corr_root(*a),
        })
    }
}

fn split_labels(s: &str) -> Vec<&str> {
    s.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(str::trim)
        .collect()
}

impl FromStr for NamedClass {
    type Err = LatticeError;

    /// Accepted forms: `Lambda`, `R`, `b`, `c`, `w'`, `w''`, `N_46`, `T_0`,
    /// `C_3`, `proj_12`, `corr_12`, `r_g{46,56,14,15}`, `r_w{…}`, `F_g{…}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || LatticeError::UnknownName(s.to_string());
        let s = s.trim();
        Ok(match s {
            "Lambda" | "Λ" => NamedClass::Lambda,
            "R" => NamedClass::R,
            "b" => NamedClass::B,
            "c" => NamedClass::C,
            "w'" | "w′" => NamedClass::WPrime,
            "w''" | "w″" => NamedClass::WDoublePrime,
            _ => {
                if let Some(rest) = s.strip_prefix("r_g") {
                    NamedClass::RGopel(GopelTetrad::parse(&split_labels(rest))?)
                } else if let Some(rest) = s.strip_prefix("r_w") {
                    NamedClass::RWeber(WeberHexad::parse(&split_labels(rest))?)
                } else if let Some(rest) = s.strip_prefix("F_g") {
                    NamedClass::FG(GopelTetrad::parse(&split_labels(rest))?)
                } else if let Some(rest) = s.strip_prefix("N_") {
                    NamedClass::Node(rest.parse()?)
                } else if let Some(rest) = s.strip_prefix("T_") {
                    NamedClass::Trope(rest.parse()?)
                } else if let Some(rest) = s.strip_prefix("proj_") {
                    NamedClass::ProjRoot(rest.parse()?)
                } else if let Some(rest) = s.strip_prefix("corr_") {
                    NamedClass::CorrRoot(rest.parse()?)
                } else if let Some(rest) = s.strip_prefix("C_") {
                    let i: u8 = rest.parse().map_err(|_| unknown())?;
                    if !(1..=6).contains(&i) {
                        return Err(unknown());
                    }
                    NamedClass::CI(i)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

pub fn named_class(name: &str) -> Result<SurfaceClass, LatticeError> {
    name.parse::<NamedClass>()?.class()
}

/// Every `x = (v/2)c + tR` with `x² = −2` and `x` integral.
///
/// `x² = −2(2v² + tv + t²)` and `2v² + tv + t² ≥ (v² + t²)/2`, so a solution
/// has `v² + t² ≤ 2`; the search box below is wider than that bound.
pub fn neg2_classes_in_b() -> Vec<SurfaceClass> {
    const BOX: i64 = 4;
    let c = c_class();
    let r = r_class();
    let mut out = Vec::new();
    for v in -BOX..=BOX {
        for t in -BOX..=BOX {
            let x = c.scale(&qf(v, 2)) + r.scale(&q(t));
            if x.square() == q(-2) && x.is_integral() {
                out.push(x);
            }
        }
    }
    out
}

/// A basis of `A = B^⊥ = {x : x·b = x·R = 0}`.
pub fn a_basis() -> Vec<SurfaceClass> {
    let g = gram();
    let rows = vec![g.mul_vec(b_class().coords()), g.mul_vec(r_class().coords())];
    QMatrix::from_rows(&rows)
        .nullspace()
        .into_iter()
        .map(|v| SurfaceClass::from_coords(v).expect("17 entries"))
        .collect()
}

pub fn in_a(x: &SurfaceClass) -> bool {
    x.pair(&b_class()).is_zero() && x.pair(&r_class()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> TwoTorsionLabel {
        s.parse().expect("static label")
    }

    #[test]
    fn pairing_examples() {
        let lam = SurfaceClass::lambda();
        assert_eq!(lam.square(), q(4));
        assert_eq!(r_class().pair(&lam), q(2));
        assert_eq!(r_class().pair(&SurfaceClass::node(l("16"))), q(1));
        assert_eq!(r_class().pair(&SurfaceClass::node(l("12"))), q(0));
    }

    #[test]
    fn tropes() {
        for b in TwoTorsionLabel::all() {
            assert_eq!(SurfaceClass::trope(b).square(), q(-2));
            for b2 in TwoTorsionLabel::all() {
                if b != b2 {
                    assert_eq!(SurfaceClass::trope(b).pair(&SurfaceClass::trope(b2)), q(0));
                }
            }
        }
    }

    #[test]
    fn signature_is_one_sixteen() {
        let s = signature();
        assert_eq!((s.positive, s.negative, s.zero), (1, 16, 0));
    }

    #[test]
    fn named_values() {
        assert_eq!(c_class(), SurfaceClass::lambda() * 2 - SurfaceClass::all_nodes());
        assert_eq!(c_class(), b_class() + r_class());
        assert_eq!(c_class().square(), q(-16));
        assert_eq!(w_prime(), SurfaceClass::lambda() * 2 - SurfaceClass::all_nodes() * qf(1, 2));
        let w = w_double_prime();
        assert_eq!(w.pair(&r_class()), q(0));
        assert_eq!(w.pair(&c_class()), q(0));
        for i in 1..=6 {
            let ci = c_i(i);
            assert_eq!(ci.pair(&proj_root(TwoTorsionLabel::pair(i, 6))), q(0));
        }
        assert_eq!(named_class("w''").unwrap(), w);
        assert_eq!(named_class("T_12").unwrap(), SurfaceClass::trope(l("12")));
        assert!(named_class("nonsense").is_err());
        assert!(named_class("C_7").is_err());
    }

    #[test]
    fn w_double_prime_is_projection_of_w_prime() {
        // w′ − w″ lies in span(b, R) = span(c, R).
        let d = w_prime() - w_double_prime();
        let rows = vec![
            c_class().into_coords(),
            r_class().into_coords(),
            d.into_coords(),
        ];
        assert_eq!(QMatrix::from_rows(&rows).rank(), 2);
    }

    #[test]
    fn integrality() {
        assert!(r_class().is_integral());
        assert!(SurfaceClass::lambda().is_integral());
        assert!(!SurfaceClass::lambda().scale(&qf(1, 2)).is_integral());
        assert!(!w_double_prime().is_integral());
        assert!(b_class().is_integral());
        assert_eq!(integral_basis().len(), 17);
    }

    #[test]
    fn neg2_in_b() {
        let found = neg2_classes_in_b();
        assert_eq!(found.len(), 2);
        assert!(found.contains(&r_class()));
        assert!(found.contains(&-r_class()));
        assert_eq!(c_class().square(), q(-16));
    }

    #[test]
    fn a_has_rank_fifteen() {
        let basis = a_basis();
        assert_eq!(basis.len(), 15);
        for x in &basis {
            assert!(in_a(x));
        }
    }

    #[test]
    fn serde_round_trip() {
        let w = w_double_prime();
        let text = serde_json::to_string(&w).unwrap();
        let back: SurfaceClass = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert!(text.contains("\"15/7\""));
    }
}
