//! Face dimensions of `Ω` by rounds of implied-equality detection.
//!
//! One round maximizes `t` subject to `x·q ≥ t` on the remaining walls, the
//! current equalities, `x·w″ = 1` and `t ≤ 1`. If `t* > 0` the optimum is a
//! relative-interior point; if `t* = 0` every wall with positive dual weight
//! vanishes on the whole face and moves to the equalities; if `t* < 0` the
//! normalized face is empty.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lp::{LinearProgram, LpOutcome};
use super::{WallKind, WallSystem};
use crate::configuration::Relabeling;
use crate::exec::Execution;
use crate::linalg::rank_of;
use crate::rational::Q;
use crate::surface_lattice::{gram, w_double_prime, SurfaceClass, RANK};

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    /// `None` for `Ω` itself.
    pub wall: Option<WallKind>,
    pub wall_index: Option<usize>,
    pub nonempty: bool,
    /// Dimension of the face as a cone; `-1` if only the apex remains.
    pub dimension: i32,
    /// Every wall vanishing on the face, including the defining one.
    pub tight_set: Vec<usize>,
    pub witness: Option<SurfaceClass>,
    pub rounds: usize,
}

/// Linear functional `x ↦ x·r` as a coefficient vector.
fn functional(r: &SurfaceClass) -> Vec<Q> {
    gram().mul_vec(r.coords())
}

fn extend(mut v: Vec<Q>, t: Q) -> Vec<Q> {
    v.push(t);
    v
}

/// The normalized section of the face cut out by `forced`: equalities
/// `R, c`, `x·r = 0` for `r ∈ forced`, all walls `≥ 0` and `x·w″ = 1`.
pub fn face_program(forced: &[usize]) -> LinearProgram {
    let sys = WallSystem::get();
    let mut lp = LinearProgram::new(RANK);
    for e in sys.equalities() {
        lp.equal(functional(e), Q::zero());
    }
    for &i in forced {
        lp.equal(functional(&sys.wall(i).class), Q::zero());
    }
    for w in sys.walls() {
        lp.at_least(functional(&w.class), Q::zero());
    }
    lp.equal(functional(&w_double_prime()), Q::one());
    lp
}

pub fn face_of(forced: &[usize]) -> FaceReport {
    let sys = WallSystem::get();
    let wdp = functional(&w_double_prime());
    let mut tight: BTreeSet<usize> = forced.iter().copied().collect();
    let mut rounds = 0;
    let mut t_obj = vec![Q::zero(); RANK];
    t_obj.push(Q::one());

    let (nonempty, witness) = loop {
        rounds += 1;
        let remaining: Vec<usize> = (0..sys.len()).filter(|i| !tight.contains(i)).collect();
        let mut lp = LinearProgram::new(RANK + 1);
        lp.maximize(t_obj.clone());
        for e in sys.equalities() {
            lp.equal(extend(functional(e), Q::zero()), Q::zero());
        }
        for &i in &tight {
            lp.equal(extend(functional(&sys.wall(i).class), Q::zero()), Q::zero());
        }
        lp.equal(extend(wdp.clone(), Q::zero()), Q::one());
        for &i in &remaining {
            lp.at_least(extend(functional(&sys.wall(i).class), -Q::one()), Q::zero());
        }
        let mut bound = vec![Q::zero(); RANK];
        bound.push(-Q::one());
        lp.at_least(bound, -Q::one());

        let sol = match lp.solve() {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Infeasible => break (false, None),
            // t ≤ 1 and the objective only involves t.
            LpOutcome::Unbounded => unreachable!("objective is bounded by t ≤ 1"),
        };
        if sol.value.is_negative() {
            break (false, None);
        }
        if sol.value.is_positive() {
            let x = SurfaceClass::from_coords(sol.x[..RANK].to_vec()).expect("17 coordinates");
            break (true, Some(x));
        }
        let implied: Vec<usize> = remaining
            .iter()
            .zip(&sol.inequality_duals)
            .filter(|(_, w)| w.is_positive())
            .map(|(&i, _)| i)
            .collect();
        assert!(!implied.is_empty(), "t* = 0 needs a positive dual weight on some wall");
        tight.extend(implied);
    };

    let dimension = if nonempty {
        let mut rows: Vec<Vec<Q>> = sys.equalities().iter().map(|e| e.coords().to_vec()).collect();
        rows.extend(tight.iter().map(|&i| sys.wall(i).class.coords().to_vec()));
        (RANK - rank_of(&rows)) as i32
    } else {
        -1
    };
    let (wall, wall_index) = match forced {
        [i] => (Some(sys.wall(*i).kind), Some(*i)),
        _ => (None, None),
    };
    FaceReport {
        wall,
        wall_index,
        nonempty,
        dimension,
        tight_set: tight.into_iter().collect(),
        witness,
        rounds,
    }
}

/// `Ω` itself.
pub fn omega_face() -> FaceReport {
    face_of(&[])
}

pub fn face_dimension(wall: usize) -> FaceReport {
    face_of(&[wall])
}

pub fn face_sweep(walls: &[usize], exec: Execution) -> Vec<FaceReport> {
    exec.map(walls, |&i| face_dimension(i))
}

/// Orbits of the `S_6` relabeling action on the walls, as
/// `(smallest index, orbit size)` in index order.
pub fn orbit_representatives() -> Vec<(usize, usize)> {
    let sys = WallSystem::get();
    let group = Relabeling::all();
    let mut orbit_of = vec![usize::MAX; sys.len()];
    let mut out = Vec::new();
    for i in 0..sys.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut members = BTreeSet::new();
        for r in &group {
            members.insert(sys.relabel(r, i));
        }
        for &m in &members {
            orbit_of[m] = i;
        }
        out.push((i, members.len()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber_geometry::WallTag;
    use crate::configuration::{GopelTetrad, IncidenceType, TwoTorsionLabel};

    fn idx(kind: WallKind) -> usize {
        WallSystem::get().find_kind(&kind).unwrap()
    }

    fn l(s: &str) -> TwoTorsionLabel {
        s.parse().unwrap()
    }

    #[test]
    fn omega_is_fifteen_dimensional() {
        let f = omega_face();
        assert!(f.nonempty);
        assert_eq!(f.dimension, 15);
        assert_eq!(f.tight_set, vec![16]);
        let w = f.witness.unwrap();
        assert_eq!(super::super::omega_membership(&w), super::super::Membership::Interior);
    }

    #[test]
    fn contradictory_system_is_infeasible() {
        let mut lp = LinearProgram::new(RANK);
        let r = functional(&crate::surface_lattice::r_class());
        lp.equal(r.clone(), Q::zero());
        lp.equal(r, Q::one());
        assert!(matches!(lp.solve(), LpOutcome::Infeasible));
    }

    #[test]
    fn projection_root_at_zero() {
        let p = idx(WallKind::Projection(TwoTorsionLabel::ZERO));
        let f = face_dimension(p);
        assert!(f.dimension <= 10, "dimension {}", f.dimension);
        for j in 1..=5 {
            assert!(f.tight_set.contains(&idx(WallKind::Trope(TwoTorsionLabel::pair(j, 6)))));
        }
        if f.nonempty {
            // A node in the tight set has maximum 0 over the normalized face.
            let mut lp = face_program(&f.tight_set);
            if let Some(&n) = f.tight_set.iter().find(|&&i| i < 16) {
                lp.maximize(functional(&WallSystem::get().wall(n).class));
                assert_eq!(lp.solve().optimal().unwrap().value, Q::zero());
            }
        }
    }

    #[test]
    fn type_one_gopel_is_a_facet() {
        let g = GopelTetrad::parse(&["46", "56", "14", "15"]).unwrap();
        assert_eq!(g.kind, IncidenceType::One);
        let f = face_dimension(idx(WallKind::Gopel(g.labels)));
        assert_eq!(f.dimension, 14);
        let w = f.witness.unwrap();
        let sys = WallSystem::get();
        for (i, wall) in sys.walls().iter().enumerate() {
            let v = w.pair(&wall.class);
            if f.tight_set.contains(&i) {
                assert!(v.is_zero());
            } else {
                assert!(v.is_positive());
            }
        }
        let _ = l("0");
    }

    #[test]
    fn orbit_structure() {
        let sys = WallSystem::get();
        let orbits = orbit_representatives();
        let total: usize = orbits.iter().map(|o| o.1).sum();
        assert_eq!(total, 316);
        let count = |tag: WallTag| orbits.iter().filter(|o| sys.wall(o.0).kind.tag() == tag).count();
        assert_eq!(count(WallTag::Projection), 2);
        assert_eq!(count(WallTag::Gopel), 2);
    }
}
