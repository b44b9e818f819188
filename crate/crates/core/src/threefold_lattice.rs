//! Pic(X) for the blow-up of P³ at six points `p_0..p_5` and the fifteen
//! lines through them, the restriction to the anticanonical Kummer surface,
//! and the actions Φ_g of the HG-type pseudo-automorphisms.
//!
//! Coordinates: `H; E_0..E_5; E_01, E_02, …, E_45` (lexicographic). Point
//! `0` corresponds to Weierstrass index 6, so `E_0 ↦ N_0`, `E_i ↦ N_{i6}`
//! and `E_{0j} ↦ T_{j6}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::configuration::{
    gopel_complement, relabeling_between, ConfigurationError, GopelTetrad, LabelSet,
    Relabeling, TwoTorsionLabel,
};
use crate::exec::Execution;
use crate::isometry_group::hg_type;
use crate::linalg::QMatrix;
use crate::rational::{format_q, parse_q, q, Q};
use crate::surface_lattice::{b_class, SurfaceClass};

pub const RANK: usize = 22;

/// The fifteen lines `(i, j)`, `i < j`, in coordinate order.
pub fn lines() -> Vec<(u8, u8)> {
    let mut out = Vec::with_capacity(15);
    for i in 0..6u8 {
        for j in i + 1..6 {
            out.push((i, j));
        }
    }
    out
}

fn line_index(i: u8, j: u8) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    assert!(i < j && j < 6);
    7 + lines().iter().position(|&l| l == (i, j)).unwrap()
}

fn weierstrass(point: u8) -> u8 {
    if point == 0 {
        6
    } else {
        point
    }
}

fn point_of(weierstrass_index: u8) -> u8 {
    if weierstrass_index == 6 {
        0
    } else {
        weierstrass_index
    }
}

/// The trope index restricted from `E_{ij}`.
pub fn line_to_label(i: u8, j: u8) -> TwoTorsionLabel {
    let (a, b) = (weierstrass(i), weierstrass(j));
    TwoTorsionLabel::pair(a.min(b), a.max(b))
}

/// The line whose exceptional divisor restricts to `T_β`, for `β ≠ 0`.
pub fn label_to_line(beta: TwoTorsionLabel) -> Option<(u8, u8)> {
    let (a, b) = beta.indices()?;
    let (i, j) = (point_of(a), point_of(b));
    Some((i.min(j), i.max(j)))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThreefoldError {
    #[error(transparent)]
    Configuration(#[from] ConfigurationError),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ThreefoldClass {
    coords: Vec<Q>,
}

impl ThreefoldClass {
    pub fn zero() -> ThreefoldClass {
        ThreefoldClass {
            coords: vec![Q::zero(); RANK],
        }
    }

    pub fn from_coords(coords: Vec<Q>) -> Result<ThreefoldClass, ThreefoldError> {
        if coords.len() != RANK {
            return Err(ThreefoldError::WrongLength {
                expected: RANK,
                got: coords.len(),
            });
        }
        Ok(ThreefoldClass { coords })
    }

    fn unit(i: usize) -> ThreefoldClass {
        let mut x = ThreefoldClass::zero();
        x.coords[i] = Q::one();
        x
    }

    pub fn h() -> ThreefoldClass {
        ThreefoldClass::unit(0)
    }

    pub fn e_point(i: u8) -> ThreefoldClass {
        assert!(i < 6);
        ThreefoldClass::unit(1 + i as usize)
    }

    pub fn e_line(i: u8, j: u8) -> ThreefoldClass {
        ThreefoldClass::unit(line_index(i, j))
    }

    pub fn basis() -> Vec<ThreefoldClass> {
        (0..RANK).map(ThreefoldClass::unit).collect()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn degree(&self) -> &Q {
        &self.coords[0]
    }

    pub fn scale(&self, s: &Q) -> ThreefoldClass {
        ThreefoldClass {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    fn sum_points() -> ThreefoldClass {
        (0..6).fold(ThreefoldClass::zero(), |acc, i| acc + ThreefoldClass::e_point(i))
    }

    fn sum_all_lines() -> ThreefoldClass {
        lines()
            .into_iter()
            .fold(ThreefoldClass::zero(), |acc, (i, j)| acc + ThreefoldClass::e_line(i, j))
    }

    fn sum_lines(ls: &[(u8, u8)]) -> ThreefoldClass {
        ls.iter()
            .fold(ThreefoldClass::zero(), |acc, &(i, j)| acc + ThreefoldClass::e_line(i, j))
    }
}

impl fmt::Debug for ThreefoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ThreefoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = vec!["H".to_string()];
        names.extend((0..6).map(|i| format!("E{i}")));
        names.extend(lines().iter().map(|(i, j)| format!("E{i}{j}")));
        let terms: Vec<String> = self
            .coords
            .iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("{c}·{n}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for ThreefoldClass {
    type Output = ThreefoldClass;
    fn add(self, rhs: ThreefoldClass) -> ThreefoldClass {
        ThreefoldClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for ThreefoldClass {
    type Output = ThreefoldClass;
    fn sub(self, rhs: ThreefoldClass) -> ThreefoldClass {
        ThreefoldClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for ThreefoldClass {
    type Output = ThreefoldClass;
    fn neg(self) -> ThreefoldClass {
        self.scale(&q(-1))
    }
}

impl Mul<i64> for ThreefoldClass {
    type Output = ThreefoldClass;
    fn mul(self, s: i64) -> ThreefoldClass {
        self.scale(&q(s))
    }
}

impl Serialize for ThreefoldClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(format_q))
    }
}

impl<'de> Deserialize<'de> for ThreefoldClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coords = v
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        ThreefoldClass::from_coords(coords).map_err(serde::de::Error::custom)
    }
}

/// `K_X = −4H + 2ΣE_i + ΣE_{ij}`.
pub fn canonical_class() -> ThreefoldClass {
    ThreefoldClass::h() * -4 + ThreefoldClass::sum_points() * 2 + ThreefoldClass::sum_all_lines()
}

fn restrict_basis(i: usize) -> SurfaceClass {
    match i {
        0 => {
            let t0 = crate::configuration::trope_incidence(TwoTorsionLabel::ZERO);
            let off = LabelSet::from_bits(!t0.bits());
            (SurfaceClass::lambda() * 3 - SurfaceClass::nodes(off)) * Q::new(1.into(), 2.into())
        }
        1..=6 => {
            let p = (i - 1) as u8;
            SurfaceClass::node(TwoTorsionLabel::pair(weierstrass(p), 6))
        }
        _ => {
            let (a, b) = lines()[i - 7];
            SurfaceClass::trope(line_to_label(a, b))
        }
    }
}

/// The 17×22 matrix of the restriction map.
pub fn restriction_matrix() -> QMatrix {
    let cols: Vec<Vec<Q>> = (0..RANK).map(|i| restrict_basis(i).into_coords()).collect();
    QMatrix::from_columns(&cols)
}

pub fn restrict(x: &ThreefoldClass) -> SurfaceClass {
    let mut out = SurfaceClass::zero();
    for (i, c) in x.coords.iter().enumerate() {
        if !c.is_zero() {
            out = out + restrict_basis(i).scale(c);
        }
    }
    out
}

/// `+1` if `restrict(K_X) = b`, `−1` if it is `−b`, `0` otherwise.
pub fn canonical_restriction_sign() -> i8 {
    let k = restrict(&canonical_class());
    let b = b_class();
    if k == b {
        1
    } else if k == -b {
        -1
    } else {
        0
    }
}

/// `g′` as threefold lines.
pub fn complement_lines(g: &GopelTetrad) -> Result<Vec<(u8, u8)>, ThreefoldError> {
    let gp = gopel_complement(g)?;
    Ok(gp
        .iter()
        .map(|b| label_to_line(b).expect("g′ avoids 0"))
        .collect())
}

/// `D_g = 5H − 2ΣE_i − 2Σ_{α∈g′} E_α`.
pub fn d_class(g: &GopelTetrad) -> Result<ThreefoldClass, ThreefoldError> {
    let gp = complement_lines(g)?;
    Ok(ThreefoldClass::h() * 5
        - ThreefoldClass::sum_points() * 2
        - ThreefoldClass::sum_lines(&gp) * 2)
}

fn quadric_base(gp: &[(u8, u8)]) -> ThreefoldClass {
    ThreefoldClass::h() * 2 - ThreefoldClass::sum_points() - ThreefoldClass::sum_lines(gp)
}

/// `F_i = 2H − ΣE_k + E_i − Σ_{g′}E`.
pub fn f_class(i: u8, g: &GopelTetrad) -> Result<ThreefoldClass, ThreefoldError> {
    let gp = complement_lines(g)?;
    Ok(quadric_base(&gp) + ThreefoldClass::e_point(i))
}

/// `H_β = 2H − ΣE_k − Σ_{g′}E + E_β` for a line `β ∈ g′`.
pub fn h_class(beta: (u8, u8), g: &GopelTetrad) -> Result<ThreefoldClass, ThreefoldError> {
    let gp = complement_lines(g)?;
    Ok(quadric_base(&gp) + ThreefoldClass::e_line(beta.0, beta.1))
}

/// A linear endomorphism of Pic(X) as a 22×22 matrix acting on columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PseudoAction {
    matrix: QMatrix,
}

impl PseudoAction {
    pub fn identity() -> PseudoAction {
        PseudoAction {
            matrix: QMatrix::identity(RANK),
        }
    }

    pub fn from_images(images: &[ThreefoldClass]) -> PseudoAction {
        assert_eq!(images.len(), RANK);
        let cols: Vec<Vec<Q>> = images.iter().map(|x| x.coords.clone()).collect();
        PseudoAction {
            matrix: QMatrix::from_columns(&cols),
        }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &ThreefoldClass) -> ThreefoldClass {
        ThreefoldClass {
            coords: self.matrix.mul_vec(&x.coords),
        }
    }

    pub fn compose(&self, other: &PseudoAction) -> PseudoAction {
        PseudoAction {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> Option<PseudoAction> {
        self.matrix.inverse().map(|matrix| PseudoAction { matrix })
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).matrix.is_identity()
    }
}

/// The permutation action of a relabeling on Pic(X): fixes H and permutes
/// exceptional divisors through the induced permutation of the six points.
pub fn point_permutation_action(r: &Relabeling) -> PseudoAction {
    let s = r.point_permutation();
    let images: Vec<ThreefoldClass> = (0..RANK)
        .map(|i| match i {
            0 => ThreefoldClass::h(),
            1..=6 => ThreefoldClass::e_point(s[i - 1]),
            _ => {
                let (a, b) = lines()[i - 7];
                ThreefoldClass::e_line(s[a as usize], s[b as usize])
            }
        })
        .collect();
    PseudoAction::from_images(&images)
}

/// Φ for `g = {46, 56, 14, 15}` from its exchange table.
pub fn hg_pseudo_action_base() -> PseudoAction {
    let g = GopelTetrad::base();
    let d = d_class(&g).expect("type 1");
    let f = |i| f_class(i, &g).expect("type 1");
    let hb = |l: (u8, u8)| h_class(l, &g).expect("type 1");
    let line_image = |l: (u8, u8)| -> ThreefoldClass {
        match l {
            (0, 4) => ThreefoldClass::e_line(1, 5),
            (1, 5) => ThreefoldClass::e_line(0, 4),
            (0, 5) => ThreefoldClass::e_line(1, 4),
            (1, 4) => ThreefoldClass::e_line(0, 5),
            (2, 4) => ThreefoldClass::e_line(3, 5),
            (3, 5) => ThreefoldClass::e_line(2, 4),
            (3, 4) => ThreefoldClass::e_line(2, 5),
            (2, 5) => ThreefoldClass::e_line(3, 4),
            (0, 2) => hb((1, 3)),
            (1, 3) => hb((0, 2)),
            (0, 3) => hb((1, 2)),
            (1, 2) => hb((0, 3)),
            (0, 1) | (2, 3) | (4, 5) => ThreefoldClass::e_line(l.0, l.1),
            _ => unreachable!(),
        }
    };
    let images: Vec<ThreefoldClass> = (0..RANK)
        .map(|i| match i {
            0 => d.clone(),
            1 => ThreefoldClass::e_point(1),
            2 => ThreefoldClass::e_point(0),
            3 => ThreefoldClass::e_point(3),
            4 => ThreefoldClass::e_point(2),
            5 => f(5),
            6 => f(4),
            _ => line_image(lines()[i - 7]),
        })
        .collect();
    PseudoAction::from_images(&images)
}

/// Φ_g: the base action conjugated by the point permutation of a relabeling
/// carrying the base tetrad to `g`.
pub fn hg_pseudo_action(g: &GopelTetrad) -> Result<PseudoAction, ThreefoldError> {
    complement_lines(g)?;
    let base = GopelTetrad::base();
    let r = relabeling_between(&base, g).expect("type-1 tetrads form one orbit");
    let p = point_permutation_action(&r);
    let inv = p.inverse().expect("permutation");
    Ok(p.compose(&hg_pseudo_action_base()).compose(&inv))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CompatibilityFailure {
    /// `restrict(Φ(e)) ≠ z_g(restrict(e))` for this basis index.
    Square { basis_index: usize },
    NotInvolution,
    MovesCanonical,
}

/// Checks `restrict ∘ Φ_g = z_g ∘ restrict` on the 22 basis classes, then
/// `Φ_g² = id` and `Φ_g(K_X) = K_X`.
pub fn compatibility_check(g: &GopelTetrad) -> Result<(), CompatibilityFailure> {
    let phi = hg_pseudo_action(g).map_err(|_| CompatibilityFailure::Square { basis_index: 0 })?;
    let z = hg_type(g).map_err(|_| CompatibilityFailure::Square { basis_index: 0 })?;
    for (i, e) in ThreefoldClass::basis().iter().enumerate() {
        if restrict(&phi.apply(e)) != z.apply(&restrict(e)) {
            return Err(CompatibilityFailure::Square { basis_index: i });
        }
    }
    if !phi.is_involution() {
        return Err(CompatibilityFailure::NotInvolution);
    }
    let k = canonical_class();
    if phi.apply(&k) != k {
        return Err(CompatibilityFailure::MovesCanonical);
    }
    Ok(())
}

/// Runs [`compatibility_check`] for all 45 type-1 tetrads.
pub fn compatibility_all(exec: Execution) -> Vec<(GopelTetrad, Result<(), CompatibilityFailure>)> {
    let gs = crate::configuration::type_one_gopel();
    let results = exec.map(&gs, compatibility_check);
    gs.into_iter().zip(results).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> TwoTorsionLabel {
        s.parse().unwrap()
    }

    #[test]
    fn restriction_table() {
        let t0 = crate::configuration::trope_incidence(TwoTorsionLabel::ZERO);
        let off = LabelSet::from_bits(!t0.bits());
        assert_eq!(
            restrict(&ThreefoldClass::h()),
            (SurfaceClass::lambda() * 3 - SurfaceClass::nodes(off)) * crate::rational::qf(1, 2)
        );
        assert_eq!(restrict(&ThreefoldClass::e_point(0)), SurfaceClass::node(l("0")));
        assert_eq!(restrict(&ThreefoldClass::e_point(3)), SurfaceClass::node(l("36")));
        assert_eq!(restrict(&ThreefoldClass::e_line(1, 2)), SurfaceClass::trope(l("12")));
        assert_eq!(restrict(&ThreefoldClass::e_line(0, 5)), SurfaceClass::trope(l("56")));
        assert_eq!(restriction_matrix().rank(), 17);
    }

    #[test]
    fn canonical_restricts_to_b() {
        assert_eq!(canonical_restriction_sign(), 1);
    }

    #[test]
    fn base_d_class() {
        let g = GopelTetrad::base();
        let d = d_class(&g).unwrap();
        let expected = ThreefoldClass::h() * 5
            - ThreefoldClass::sum_points() * 2
            - (ThreefoldClass::e_line(0, 2)
                + ThreefoldClass::e_line(0, 3)
                + ThreefoldClass::e_line(1, 2)
                + ThreefoldClass::e_line(1, 3))
                * 2;
        assert_eq!(d, expected);
        assert_eq!(*d.degree(), q(5));
        let z = hg_type(&g).unwrap();
        assert_eq!(restrict(&d), z.apply(&restrict(&ThreefoldClass::h())));
    }

    #[test]
    fn quadric_restrictions() {
        let g = GopelTetrad::base();
        let f4 = restrict(&f_class(4, &g).unwrap());
        let f5 = restrict(&f_class(5, &g).unwrap());
        let n = |s: &str| SurfaceClass::node(l(s));
        // F_4 has no E_4 term, so its restriction avoids N_46; F_5 = Φ(E_4)
        // restricts to z_g(N_46).
        assert_eq!(f4, SurfaceClass::lambda() - n("56") - n("14") - n("15"));
        assert_eq!(f5, SurfaceClass::lambda() - n("46") - n("14") - n("15"));
        let z = hg_type(&g).unwrap();
        assert_eq!(f5, z.apply(&n("46")));
        assert_eq!(f4, z.apply(&n("56")));
        for (a, b) in [((0, 2), (1, 3)), ((0, 3), (1, 2))] {
            for (alpha, beta) in [(a, b), (b, a)] {
                let hb = restrict(&h_class(beta, &g).unwrap());
                assert_eq!(hb, z.apply(&restrict(&ThreefoldClass::e_line(alpha.0, alpha.1))));
            }
        }
    }

    #[test]
    fn base_action() {
        let phi = hg_pseudo_action_base();
        assert!(phi.is_involution());
        for (i, j) in [(0, 1), (2, 3), (4, 5)] {
            let e = ThreefoldClass::e_line(i, j);
            assert_eq!(phi.apply(&e), e);
        }
        let g = GopelTetrad::base();
        assert_eq!(phi.apply(&ThreefoldClass::e_point(4)), f_class(5, &g).unwrap());
        assert_eq!(phi.apply(&canonical_class()), canonical_class());
    }

    #[test]
    fn all_compatible() {
        for (g, r) in compatibility_all(Execution::default()) {
            assert_eq!(r, Ok(()), "{g}");
        }
    }

    #[test]
    fn type_two_rejected() {
        let g = GopelTetrad::parse(&["13", "15", "23", "25"]).unwrap();
        assert!(d_class(&g).is_err());
        assert!(hg_pseudo_action(&g).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let k = canonical_class();
        let s = serde_json::to_string(&k).unwrap();
        let back: ThreefoldClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }
}
