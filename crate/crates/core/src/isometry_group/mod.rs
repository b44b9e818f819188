//! Automorphisms of the Kummer surface as isometries of NS(S).
//!
//! A matrix acts on column vectors of `SurfaceClass` coordinates, so column
//! `j` is the image of basis vector `j` and `compose(f, g)` is `f ∘ g`.

pub mod keum;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::configuration::{
    enumerate_gopel, hg_translation, relabeling_between, trope_incidence,
    ConfigurationError, GopelTetrad, IncidenceType, LabelSet, Relabeling, TwoTorsionLabel,
};
use crate::exec::Execution;
use crate::linalg::QMatrix;
use crate::rational::{q, Q};
use crate::surface_lattice::{gram, integral_basis, proj_root, SurfaceClass, RANK};

/// Which constructor produced an isometry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Identity,
    Translation(TwoTorsionLabel),
    Switch,
    Projection(TwoTorsionLabel),
    Correlation(TwoTorsionLabel),
    Relabel([u8; 6]),
    HgInvolution(LabelSet),
    HgType(LabelSet),
    Reflection,
    External(String),
    Composite,
}

#[derive(Clone)]
pub struct LatticeIsometry {
    matrix: QMatrix,
    provenance: Provenance,
}

impl PartialEq for LatticeIsometry {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for LatticeIsometry {}

impl fmt::Debug for LatticeIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeIsometry({:?})", self.provenance)
    }
}

impl LatticeIsometry {
    pub fn identity() -> LatticeIsometry {
        LatticeIsometry {
            matrix: QMatrix::identity(RANK),
            provenance: Provenance::Identity,
        }
    }

    /// Wraps a matrix without checking anything; see [`LatticeIsometry::is_gram_isometry`].
    pub fn from_matrix(matrix: QMatrix, provenance: Provenance) -> LatticeIsometry {
        assert_eq!((matrix.rows(), matrix.cols()), (RANK, RANK));
        LatticeIsometry { matrix, provenance }
    }

    /// Builds the matrix whose columns are the images of `Λ, N_0, …, N_45`.
    pub fn from_images(images: &[SurfaceClass], provenance: Provenance) -> LatticeIsometry {
        assert_eq!(images.len(), RANK);
        let cols: Vec<Vec<Q>> = images.iter().map(|x| x.coords().to_vec()).collect();
        LatticeIsometry::from_matrix(QMatrix::from_columns(&cols), provenance)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn apply(&self, x: &SurfaceClass) -> SurfaceClass {
        SurfaceClass::from_coords(self.matrix.mul_vec(x.coords())).expect("17 entries")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeIsometry) -> LatticeIsometry {
        LatticeIsometry {
            matrix: self.matrix.mul(&other.matrix),
            provenance: Provenance::Composite,
        }
    }

    pub fn inverse(&self) -> Option<LatticeIsometry> {
        self.matrix.inverse().map(|m| LatticeIsometry {
            matrix: m,
            provenance: Provenance::Composite,
        })
    }

    /// `Π ∘ self ∘ Π⁻¹`.
    pub fn conjugate_by(&self, p: &LatticeIsometry) -> LatticeIsometry {
        let inv = p.inverse().expect("invertible");
        p.compose(self).compose(&inv)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// `Mᵀ G M = G`.
    pub fn is_gram_isometry(&self) -> bool {
        let g = gram();
        self.matrix.transpose().mul(&g).mul(&self.matrix) == g
    }

    /// Maps the integral lattice into itself, and so does the inverse.
    pub fn preserves_integrality(&self) -> bool {
        let Some(inv) = self.inverse() else {
            return false;
        };
        integral_basis()
            .iter()
            .all(|x| self.apply(x).is_integral() && inv.apply(x).is_integral())
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> LatticeIsometry {
        self.provenance = provenance;
        self
    }

    /// Row-major entries, used as a hash key.
    pub fn key(&self) -> Vec<Q> {
        self.matrix.entries().to_vec()
    }
}

fn basis_classes() -> Vec<SurfaceClass> {
    std::iter::once(SurfaceClass::lambda())
        .chain(TwoTorsionLabel::all().map(SurfaceClass::node))
        .collect()
}

fn node_map(f: impl Fn(TwoTorsionLabel) -> SurfaceClass, lambda: SurfaceClass) -> Vec<SurfaceClass> {
    std::iter::once(lambda)
        .chain(TwoTorsionLabel::all().map(f))
        .collect()
}

/// `t_α`: fixes Λ and sends `N_β` to `N_{β+α}`.
pub fn translation(alpha: TwoTorsionLabel) -> LatticeIsometry {
    LatticeIsometry::from_images(
        &node_map(|b| SurfaceClass::node(b.add(alpha)), SurfaceClass::lambda()),
        Provenance::Translation(alpha),
    )
}

/// The switch σ: `N_α ↔ T_α`, `Λ ↦ 3Λ − Σ N_α`.
pub fn switch() -> LatticeIsometry {
    LatticeIsometry::from_images(
        &node_map(
            SurfaceClass::trope,
            SurfaceClass::lambda() * 3 - SurfaceClass::all_nodes(),
        ),
        Provenance::Switch,
    )
}

/// Reflection `x ↦ x − 2 (x·r)/(r·r) r`.
pub fn reflection(r: &SurfaceClass) -> LatticeIsometry {
    let rr = r.square();
    assert!(!rr.is_zero(), "reflection in an isotropic vector");
    let images: Vec<SurfaceClass> = basis_classes()
        .into_iter()
        .map(|x| {
            let k = q(2) * x.pair(r) / &rr;
            &x - &r.scale(&k)
        })
        .collect();
    LatticeIsometry::from_images(&images, Provenance::Reflection)
}

/// `p_α`: reflection in the (−4)-root `Λ − 2N_α`, i.e. `x ↦ x + (x·r/2) r`.
pub fn projection(alpha: TwoTorsionLabel) -> LatticeIsometry {
    reflection(&proj_root(alpha)).with_provenance(Provenance::Projection(alpha))
}

/// `q_α = σ ∘ p_α ∘ σ`.
pub fn correlation(alpha: TwoTorsionLabel) -> LatticeIsometry {
    let s = switch();
    s.compose(&projection(alpha))
        .compose(&s)
        .with_provenance(Provenance::Correlation(alpha))
}

/// The configuration symmetry: fixes Λ and permutes nodes by `r.node`.
pub fn relabel_isometry(r: &Relabeling) -> LatticeIsometry {
    LatticeIsometry::from_images(
        &node_map(|a| SurfaceClass::node(r.node(a)), SurfaceClass::lambda()),
        Provenance::Relabel(r.point_permutation()),
    )
}

fn l(s: &str) -> TwoTorsionLabel {
    s.parse().expect("static label")
}

/// φ_g for `g = {46, 56, 14, 15}`, entered from its exchange table.
pub fn hg_involution_base() -> LatticeIsometry {
    let g = GopelTetrad::base();
    let sum_g = SurfaceClass::nodes(g.labels);
    let swaps = [
        ("00", "23"),
        ("16", "45"),
        ("26", "12"),
        ("36", "13"),
        ("24", "25"),
        ("34", "35"),
    ];
    let mut partner: HashMap<TwoTorsionLabel, TwoTorsionLabel> = HashMap::new();
    for (a, b) in swaps {
        partner.insert(l(a), l(b));
        partner.insert(l(b), l(a));
    }
    let lambda_image = SurfaceClass::lambda() * 3 - sum_g.clone() * 2;
    let images = node_map(
        |b| {
            if g.labels.contains(b) {
                SurfaceClass::lambda() - sum_g.clone() + SurfaceClass::node(b)
            } else {
                SurfaceClass::node(partner[&b])
            }
        },
        lambda_image,
    );
    LatticeIsometry::from_images(&images, Provenance::HgInvolution(g.labels))
}

/// z_g for the base tetrad: `φ_g ∘ t_45`.
pub fn hg_type_base() -> LatticeIsometry {
    let g = GopelTetrad::base();
    hg_involution_base()
        .compose(&translation(l("45")))
        .with_provenance(Provenance::HgType(g.labels))
}

fn reject_type_two(g: &GopelTetrad) -> Result<(), ConfigurationError> {
    if g.kind != IncidenceType::One {
        return Err(ConfigurationError::NotTypeOne(g.to_string()));
    }
    Ok(())
}

fn hg_type_table() -> &'static HashMap<LabelSet, LatticeIsometry> {
    static TABLE: OnceLock<HashMap<LabelSet, LatticeIsometry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let base = GopelTetrad::base();
        let z = hg_type_base();
        enumerate_gopel()
            .into_iter()
            .filter(|g| g.kind == IncidenceType::One)
            .map(|g| {
                let r = relabeling_between(&base, &g).expect("type-1 tetrads form one orbit");
                let zg = z
                    .conjugate_by(&relabel_isometry(&r))
                    .with_provenance(Provenance::HgType(g.labels));
                (g.labels, zg)
            })
            .collect()
    })
}

/// z_g for a type-1 tetrad: the base z conjugated by a relabeling that
/// carries the base tetrad to `g`.
pub fn hg_type(g: &GopelTetrad) -> Result<LatticeIsometry, ConfigurationError> {
    reject_type_two(g)?;
    Ok(hg_type_table()[&g.labels].clone())
}

/// φ_g = z_g ∘ t_α, with α from [`hg_translation`].
pub fn hg_involution(g: &GopelTetrad) -> Result<LatticeIsometry, ConfigurationError> {
    let z = hg_type(g)?;
    let alpha = hg_translation(g)?;
    Ok(z.compose(&translation(alpha))
        .with_provenance(Provenance::HgInvolution(g.labels)))
}

/// All 45 z_g in canonical tetrad order.
pub fn all_hg_types() -> Vec<(GopelTetrad, LatticeIsometry)> {
    enumerate_gopel()
        .into_iter()
        .filter(|g| g.kind == IncidenceType::One)
        .map(|g| {
            let z = hg_type(&g).expect("type 1");
            (g, z)
        })
        .collect()
}

/// Every relabeling isometry sending the base tetrad to `g` conjugates the
/// base z to the same matrix.
pub fn hg_type_well_defined(g: &GopelTetrad) -> bool {
    let base = GopelTetrad::base();
    let z = hg_type_base();
    let mut images = Relabeling::all()
        .into_iter()
        .filter(|r| r.nodes(base.labels) == g.labels)
        .map(|r| z.conjugate_by(&relabel_isometry(&r)));
    let Some(first) = images.next() else {
        return false;
    };
    images.all(|m| m == first)
}

/// The trope `T_0` is exchanged with by φ_g: `T_{i6}` or `T_{ij}`.
pub fn hg_exchanged_trope(g: &GopelTetrad) -> Result<TwoTorsionLabel, ConfigurationError> {
    hg_translation(g)
}

/// The group generated by the 16 translations and the switch.
pub fn aut_dprime_group(exec: Execution) -> Vec<LatticeIsometry> {
    let gens: Vec<LatticeIsometry> = TwoTorsionLabel::all()
        .filter(|a| !a.is_zero())
        .map(translation)
        .chain(std::iter::once(switch()))
        .collect();
    closure(&gens, exec)
}

/// Closure of a finite generating set under composition. Each BFS layer is
/// expanded with `exec`.
pub fn closure(gens: &[LatticeIsometry], exec: Execution) -> Vec<LatticeIsometry> {
    let id = LatticeIsometry::identity();
    let mut seen: HashSet<Vec<Q>> = HashSet::new();
    seen.insert(id.key());
    let mut out = vec![id.clone()];
    let mut frontier: VecDeque<LatticeIsometry> = VecDeque::from([id]);
    while !frontier.is_empty() {
        let layer: Vec<LatticeIsometry> = frontier.drain(..).collect();
        let products: Vec<Vec<LatticeIsometry>> =
            exec.map(&layer, |m| gens.iter().map(|g| g.compose(m)).collect());
        for p in products.into_iter().flatten() {
            if seen.insert(p.key()) {
                out.push(p.clone());
                frontier.push_back(p);
            }
        }
    }
    out
}

pub fn stabilizer_of(x: &SurfaceClass, group: &[LatticeIsometry]) -> Vec<LatticeIsometry> {
    group.iter().filter(|f| &f.apply(x) == x).cloned().collect()
}

/// Whether `f` permutes the 32 classes `{N_α} ∪ {T_α}`.
pub fn permutes_nodes_and_tropes(f: &LatticeIsometry) -> bool {
    let curves: Vec<SurfaceClass> = TwoTorsionLabel::all()
        .map(SurfaceClass::node)
        .chain(TwoTorsionLabel::all().map(SurfaceClass::trope))
        .collect();
    let images: HashSet<SurfaceClass> = curves.iter().map(|c| f.apply(c)).collect();
    images.len() == curves.len() && curves.iter().all(|c| images.contains(c))
}

/// `Λ = 2T_β + Σ_{I(T_β)} N_α`.
pub fn lambda_from_trope(beta: TwoTorsionLabel) -> SurfaceClass {
    SurfaceClass::trope(beta) * 2 + SurfaceClass::nodes(trope_incidence(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_lattice::{c_class, r_class, r_gopel, w_double_prime};

    #[test]
    fn translations() {
        assert!(translation(TwoTorsionLabel::ZERO).is_identity());
        assert_eq!(
            translation(l("12")).compose(&translation(l("23"))),
            translation(l("13"))
        );
        for a in TwoTorsionLabel::all() {
            let t = translation(a);
            assert!(t.is_involution());
            assert!(t.is_gram_isometry());
            for b in TwoTorsionLabel::all() {
                let u = translation(b);
                assert_eq!(t.compose(&u), u.compose(&t));
            }
        }
        assert_eq!(
            translation(l("12")).apply(&SurfaceClass::node(l("16"))),
            SurfaceClass::node(l("26"))
        );
    }

    #[test]
    fn switch_properties() {
        let s = switch();
        assert!(s.is_involution());
        assert!(s.is_gram_isometry());
        assert!(s.preserves_integrality());
        assert_eq!(s.apply(&c_class()), -c_class());
        for a in TwoTorsionLabel::all() {
            assert_eq!(s.apply(&SurfaceClass::trope(a)), SurfaceClass::node(a));
        }
    }

    #[test]
    fn projections_and_correlations() {
        for a in TwoTorsionLabel::all() {
            let p = projection(a);
            let r = proj_root(a);
            assert_eq!(p.apply(&r), -r.clone());
            assert!(p.is_gram_isometry() && p.is_involution() && p.preserves_integrality());
            let x = SurfaceClass::node(a.add(l("12")));
            if x.pair(&r).is_zero() {
                assert_eq!(p.apply(&x), x);
            }
            let qa = correlation(a);
            assert!(qa.is_gram_isometry() && qa.is_involution() && qa.preserves_integrality());
        }
    }

    #[test]
    fn base_phi_table() {
        let phi = hg_involution_base();
        assert!(phi.is_gram_isometry());
        assert!(phi.is_involution());
        assert!(phi.preserves_integrality());
        assert_eq!(phi.apply(&SurfaceClass::node(l("0"))), SurfaceClass::node(l("23")));
        let sum_g = SurfaceClass::nodes(GopelTetrad::base().labels);
        let trope_pairs = [
            ("0", "45"),
            ("16", "23"),
            ("46", "14"),
            ("56", "15"),
            ("24", "34"),
            ("25", "35"),
        ];
        for (a, b) in trope_pairs {
            assert_eq!(
                phi.apply(&SurfaceClass::trope(l(a))),
                SurfaceClass::trope(l(b)),
                "T_{a}"
            );
        }
        for b in ["26", "36", "12", "13"] {
            assert_eq!(
                phi.apply(&SurfaceClass::trope(l(b))),
                SurfaceClass::lambda() - sum_g.clone() + SurfaceClass::trope(l(b))
            );
        }
    }

    #[test]
    fn base_z_properties() {
        let z = hg_type_base();
        let g = GopelTetrad::base();
        let sum_g = SurfaceClass::nodes(g.labels);
        for t in ["0", "16", "23", "45"] {
            assert_eq!(z.apply(&SurfaceClass::trope(l(t))), SurfaceClass::trope(l(t)));
        }
        for n in ["24", "34", "25", "35"] {
            assert_eq!(z.apply(&SurfaceClass::node(l(n))), SurfaceClass::node(l(n)));
        }
        assert_eq!(
            z.apply(&SurfaceClass::lambda()),
            SurfaceClass::lambda() * 3 - sum_g.clone() * 2
        );
        for b in g.labels.iter() {
            assert_eq!(
                z.apply(&SurfaceClass::node(b)),
                SurfaceClass::lambda() - sum_g.clone() + SurfaceClass::node(b.add(l("45")))
            );
        }
        for b in ["26", "36", "12", "13"] {
            assert_eq!(
                z.apply(&SurfaceClass::trope(l(b))),
                SurfaceClass::lambda() - sum_g.clone() + SurfaceClass::trope(l(b).add(l("45")))
            );
        }
        for (a, b) in [("0", "16"), ("26", "36"), ("12", "13"), ("23", "45")] {
            assert_eq!(z.apply(&SurfaceClass::node(l(a))), SurfaceClass::node(l(b)));
        }
        for (a, b) in [("46", "15"), ("56", "14"), ("24", "35"), ("25", "34")] {
            assert_eq!(z.apply(&SurfaceClass::trope(l(a))), SurfaceClass::trope(l(b)));
        }
        assert_eq!(z.apply(&r_gopel(&g)), -r_gopel(&g));
    }

    #[test]
    fn relabel_isometries_fix_lambda_and_move_tropes() {
        for r in Relabeling::all().into_iter().step_by(11) {
            let p = relabel_isometry(&r);
            assert!(p.is_gram_isometry());
            assert!(p.preserves_integrality());
            for b in TwoTorsionLabel::all() {
                assert_eq!(p.apply(&SurfaceClass::trope(b)), SurfaceClass::trope(r.trope(b)));
                assert_eq!(p.apply(&lambda_from_trope(b)), SurfaceClass::lambda());
            }
        }
    }

    #[test]
    fn all_z_g() {
        let w = w_double_prime();
        for (g, z) in all_hg_types() {
            assert!(z.is_gram_isometry(), "{g}");
            assert!(z.is_involution(), "{g}");
            assert_eq!(z.apply(&r_class()), r_class(), "{g}");
            assert_eq!(z.apply(&c_class()), c_class(), "{g}");
            let rg = r_gopel(&g);
            assert_eq!(z.apply(&rg), -rg.clone(), "{g}");
            assert_eq!(z.apply(&w), &w + &(rg * 2), "{g}");
        }
    }

    #[test]
    fn phi_g_exchanges_t0() {
        for (g, _) in all_hg_types() {
            let phi = hg_involution(&g).unwrap();
            let t = hg_exchanged_trope(&g).unwrap();
            assert!(phi.is_involution());
            assert_eq!(phi.apply(&r_class()), SurfaceClass::trope(t), "{g}");
        }
    }

    #[test]
    fn conjugation_is_well_defined() {
        for (g, _) in all_hg_types() {
            assert!(hg_type_well_defined(&g), "{g}");
        }
    }

    #[test]
    fn type_two_rejected() {
        let g = GopelTetrad::parse(&["13", "15", "23", "25"]).unwrap();
        assert!(hg_type(&g).is_err());
        assert!(hg_involution(&g).is_err());
    }

    #[test]
    fn aut_dprime() {
        let group = aut_dprime_group(Execution::default());
        assert_eq!(group.len(), 32);
        for f in &group {
            assert!(permutes_nodes_and_tropes(f));
        }
        let stab = stabilizer_of(&r_class(), &group);
        assert_eq!(stab.len(), 1);
        assert!(stab[0].is_identity());
    }

    #[test]
    fn inverse_and_compose() {
        let z = hg_type_base();
        assert!(z.compose(&z.inverse().unwrap()).is_identity());
        assert!(switch().compose(&switch()).is_identity());
    }

    #[test]
    fn phi_conjugation_matches_z_route() {
        // φ_g from conjugating the base φ agrees with z_g ∘ t_α for every
        // relabeling carrying the base tetrad to g.
        let base = GopelTetrad::base();
        let phi = hg_involution_base();
        for (g, _) in all_hg_types() {
            let expected = hg_involution(&g).unwrap();
            for r in Relabeling::all()
                .into_iter()
                .filter(|r| r.nodes(base.labels) == g.labels)
            {
                assert_eq!(phi.conjugate_by(&relabel_isometry(&r)), expected, "{g}");
            }
        }
    }
}
