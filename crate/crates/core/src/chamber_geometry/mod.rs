//! The chamber `Ω = D̄′ ∩ A`: walls, membership, face dimensions and homing.

mod faces;
mod homing;
pub mod lp;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::configuration::{
    enumerate_gopel, enumerate_weber, GopelTetrad, IncidenceType, LabelSet, Relabeling,
    TwoTorsionLabel, WeberHexad,
};
use crate::isometry_group::relabel_isometry;
use crate::linalg::rank_of;
use crate::surface_lattice::{
    c_class, c_i, corr_root, f_g, proj_root, r_class, r_gopel, r_weber, SurfaceClass,
};

pub use faces::{
    face_dimension, face_of, face_program, face_sweep, omega_face, orbit_representatives,
    FaceReport,
};
pub use homing::{homing, round_trips, HomingError, HomingStep, HomingTrace, RoundTrip};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WallTag {
    Node,
    Trope,
    Projection,
    Correlation,
    Gopel,
    Weber,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WallKind {
    Node(TwoTorsionLabel),
    Trope(TwoTorsionLabel),
    Projection(TwoTorsionLabel),
    Correlation(TwoTorsionLabel),
    Gopel(LabelSet),
    Weber(LabelSet),
}

impl WallKind {
    pub fn tag(&self) -> WallTag {
        match self {
            WallKind::Node(_) => WallTag::Node,
            WallKind::Trope(_) => WallTag::Trope,
            WallKind::Projection(_) => WallTag::Projection,
            WallKind::Correlation(_) => WallTag::Correlation,
            WallKind::Gopel(_) => WallTag::Gopel,
            WallKind::Weber(_) => WallTag::Weber,
        }
    }

    /// Incidence type for Göpel/Weber walls.
    pub fn incidence(&self) -> Option<IncidenceType> {
        match self {
            WallKind::Gopel(s) => GopelTetrad::new(*s).map(|g| g.kind),
            WallKind::Weber(s) => WeberHexad::new(*s).map(|w| w.kind),
            _ => None,
        }
    }
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallKind::Node(a) => write!(f, "N_{a}"),
            WallKind::Trope(a) => write!(f, "T_{a}"),
            WallKind::Projection(a) => write!(f, "proj_{a}"),
            WallKind::Correlation(a) => write!(f, "corr_{a}"),
            WallKind::Gopel(s) => write!(f, "r_g{s}"),
            WallKind::Weber(s) => write!(f, "r_w{s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Wall {
    pub kind: WallKind,
    pub class: SurfaceClass,
}

pub struct WallSystem {
    walls: Vec<Wall>,
    equalities: Vec<SurfaceClass>,
    index: HashMap<SurfaceClass, usize>,
}

impl WallSystem {
    fn build() -> WallSystem {
        let mut walls = Vec::with_capacity(316);
        for a in TwoTorsionLabel::all() {
            walls.push(Wall { kind: WallKind::Node(a), class: SurfaceClass::node(a) });
        }
        for a in TwoTorsionLabel::all() {
            walls.push(Wall { kind: WallKind::Trope(a), class: SurfaceClass::trope(a) });
        }
        for a in TwoTorsionLabel::all() {
            walls.push(Wall { kind: WallKind::Projection(a), class: proj_root(a) });
        }
        for a in TwoTorsionLabel::all() {
            walls.push(Wall { kind: WallKind::Correlation(a), class: corr_root(a) });
        }
        for g in enumerate_gopel() {
            walls.push(Wall { kind: WallKind::Gopel(g.labels), class: r_gopel(&g) });
        }
        for w in enumerate_weber() {
            walls.push(Wall { kind: WallKind::Weber(w.labels), class: r_weber(&w) });
        }
        let index = walls.iter().enumerate().map(|(i, w)| (w.class.clone(), i)).collect();
        WallSystem { walls, equalities: vec![r_class(), c_class()], index }
    }

    pub fn get() -> &'static WallSystem {
        static SYSTEM: OnceLock<WallSystem> = OnceLock::new();
        SYSTEM.get_or_init(WallSystem::build)
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }

    pub fn wall(&self, i: usize) -> &Wall {
        &self.walls[i]
    }

    /// `{R, c}`.
    pub fn equalities(&self) -> &[SurfaceClass] {
        &self.equalities
    }

    pub fn find(&self, class: &SurfaceClass) -> Option<usize> {
        self.index.get(class).copied()
    }

    pub fn find_kind(&self, kind: &WallKind) -> Option<usize> {
        self.walls.iter().position(|w| &w.kind == kind)
    }

    pub fn count(&self, tag: WallTag) -> usize {
        self.walls.iter().filter(|w| w.kind.tag() == tag).count()
    }

    /// Walls whose class lies in the span of the equalities. On `Ω` these
    /// vanish identically (only `T_0 = R`).
    pub fn implied_by_equalities(&self) -> Vec<usize> {
        let base = rank_of(&self.eq_coords());
        (0..self.walls.len())
            .filter(|&i| {
                let mut v = self.eq_coords();
                v.push(self.walls[i].class.coords().to_vec());
                rank_of(&v) == base
            })
            .collect()
    }

    fn eq_coords(&self) -> Vec<Vec<crate::Q>> {
        self.equalities.iter().map(|e| e.coords().to_vec()).collect()
    }

    /// Image of wall `i` under a relabeling, as a wall index.
    pub fn relabel(&self, r: &Relabeling, i: usize) -> usize {
        let f = relabel_isometry(r);
        self.find(&f.apply(&self.walls[i].class)).expect("relabeling permutes walls")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Interior,
    Boundary(Vec<usize>),
    Outside,
}

/// Evaluates `x·R`, `x·c` and the sign of `x·r` on all 316 walls.
///
/// Walls implied by the equalities (`T_0`) vanish on all of `Ω`, so they do
/// not count against interiority.
pub fn omega_membership(x: &SurfaceClass) -> Membership {
    let sys = WallSystem::get();
    if sys.equalities.iter().any(|e| !x.pair(e).is_zero()) {
        return Membership::Outside;
    }
    let implied = sys.implied_by_equalities();
    let mut tight = Vec::new();
    for (i, w) in sys.walls.iter().enumerate() {
        let v = x.pair(&w.class);
        if v.is_negative() {
            return Membership::Outside;
        }
        if v.is_zero() && !implied.contains(&i) {
            tight.push(i);
        }
    }
    if tight.is_empty() {
        Membership::Interior
    } else {
        Membership::Boundary(tight)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub rows: Vec<String>,
    pub all_in_omega: bool,
    pub f_g_on_wall: bool,
}

/// Rank of `{C_i} ∪ {F_g : g type 2}`, together with membership of each row.
pub fn dimension_certificate() -> RankCertificate {
    let mut rows = Vec::new();
    let mut names = Vec::new();
    for i in 1..=6 {
        rows.push(c_i(i));
        names.push(format!("C_{i}"));
    }
    let mut on_wall = true;
    for g in enumerate_gopel().into_iter().filter(|g| g.kind == IncidenceType::Two) {
        let f = f_g(&g).expect("type 2");
        on_wall &= f.pair(&r_gopel(&g)).is_zero();
        rows.push(f);
        names.push(format!("F_g{}", g.labels));
    }
    let all_in_omega = rows.iter().all(|x| omega_membership(x) != Membership::Outside);
    let rank = rank_of(&rows.iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>());
    RankCertificate { rank, rows: names, all_in_omega, f_g_on_wall: on_wall }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_lattice::w_double_prime;

    fn l(s: &str) -> TwoTorsionLabel {
        s.parse().unwrap()
    }

    #[test]
    fn wall_counts() {
        let sys = WallSystem::get();
        assert_eq!(sys.len(), 316);
        let counts: Vec<usize> = [
            WallTag::Node,
            WallTag::Trope,
            WallTag::Projection,
            WallTag::Correlation,
            WallTag::Gopel,
            WallTag::Weber,
        ]
        .iter()
        .map(|&t| sys.count(t))
        .collect();
        assert_eq!(counts, vec![16, 16, 16, 16, 60, 192]);
        assert!(sys.walls().iter().all(|w| w.class.is_integral()));
        assert_eq!(sys.index.len(), 316, "wall classes are distinct");
        assert_eq!(sys.implied_by_equalities(), vec![16]);
    }

    #[test]
    fn membership_examples() {
        assert_eq!(omega_membership(&w_double_prime()), Membership::Interior);
        assert_eq!(omega_membership(&SurfaceClass::lambda()), Membership::Outside);
        let sys = WallSystem::get();
        for i in 1..=6u8 {
            let Membership::Boundary(tight) = omega_membership(&c_i(i)) else {
                panic!("C_{i} should be on the boundary");
            };
            let p = sys.find_kind(&WallKind::Projection(TwoTorsionLabel::pair(i, 6))).unwrap();
            assert!(tight.contains(&p));
        }
        let Membership::Boundary(tight) = omega_membership(&c_i(6)) else { unreachable!() };
        for j in 1..=5 {
            let t = sys.find_kind(&WallKind::Trope(TwoTorsionLabel::pair(j, 6))).unwrap();
            assert!(tight.contains(&t));
        }
        let _ = l("0");
    }

    #[test]
    fn w_double_prime_strict_on_all_but_t0() {
        let w = w_double_prime();
        let sys = WallSystem::get();
        for (i, wall) in sys.walls().iter().enumerate() {
            let v = w.pair(&wall.class);
            if i == 16 {
                assert!(v.is_zero());
            } else {
                assert!(v.is_positive(), "{}", wall.kind);
            }
        }
    }

    #[test]
    fn rank_certificate() {
        let cert = dimension_certificate();
        assert_eq!(cert.rank, 15);
        assert!(cert.all_in_omega);
        assert!(cert.f_g_on_wall);
        assert_eq!(cert.rows.len(), 21);
    }

    #[test]
    fn relabeling_permutes_walls() {
        let sys = WallSystem::get();
        let r = Relabeling::new([2, 3, 1, 5, 6, 4]).unwrap();
        let mut seen = vec![false; sys.len()];
        for i in 0..sys.len() {
            let j = sys.relabel(&r, i);
            assert_eq!(sys.wall(i).kind.tag(), sys.wall(j).kind.tag());
            seen[j] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
