use proptest::prelude::*;

use kummer_core::chamber_geometry::lp::{LinearProgram, LpOutcome};
use kummer_core::configuration::{trope_incidence, GopelTetrad, Relabeling, TwoTorsionLabel};
use kummer_core::cremona_engine::poly::MultiPoly;
use kummer_core::isometry_group::{all_hg_types, hg_type, relabel_isometry};
use kummer_core::rational::{q, Q};
use kummer_core::surface_lattice::{r_gopel, SurfaceClass, RANK};

fn relabeling() -> impl Strategy<Value = Relabeling> {
    Just((1u8..=6).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Relabeling::new(v.try_into().unwrap()).unwrap())
}

fn label() -> impl Strategy<Value = TwoTorsionLabel> {
    (0usize..16).prop_map(TwoTorsionLabel::from_index)
}

fn class() -> impl Strategy<Value = SurfaceClass> {
    prop::collection::vec(-5i64..=5, RANK).prop_map(|v| SurfaceClass::from_ints(&v))
}

fn tetrad() -> impl Strategy<Value = GopelTetrad> {
    (0usize..45).prop_map(|i| all_hg_types()[i].0)
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    // Small polynomials in x0, x1 and the parameter a.
    prop::collection::vec(((0u16..3), (0u16..3), (0u16..2), -4i64..=4), 1..5).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (e0, e1, ea, c)| {
            let mut e = [0u16; 7];
            e[0] = e0;
            e[1] = e1;
            e[4] = ea;
            &acc + &MultiPoly::term(q(c), kummer_core::cremona_engine::poly::Monomial::from_exponents(&e))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_is_a_group_action(p in relabeling(), s in relabeling(), a in label()) {
        let ps = p.compose(&s);
        prop_assert_eq!(ps.node(a), p.node(s.node(a)));
        prop_assert_eq!(ps.trope(a), p.trope(s.trope(a)));
        prop_assert_eq!(p.inverse().node(p.node(a)), a);
    }

    #[test]
    fn relabeling_preserves_incidence(p in relabeling(), b in label()) {
        prop_assert_eq!(p.nodes(trope_incidence(b)), trope_incidence(p.trope(b)));
        prop_assert!(p.trope(TwoTorsionLabel::ZERO).is_zero());
    }

    #[test]
    fn z_g_conjugates_under_relabeling(p in relabeling(), g in tetrad()) {
        let z = hg_type(&g).unwrap();
        let moved = hg_type(&p.tetrad(&g)).unwrap();
        prop_assert_eq!(z.conjugate_by(&relabel_isometry(&p)), moved);
    }

    #[test]
    fn z_g_exchanges_half_spaces(g in tetrad(), x in class()) {
        let z = hg_type(&g).unwrap();
        let rg = r_gopel(&g);
        prop_assert_eq!(z.apply(&x).pair(&rg), -x.pair(&rg));
        prop_assert_eq!(z.apply(&x).square(), x.square());
    }

    #[test]
    fn pairing_is_symmetric_bilinear(x in class(), y in class(), z in class(), k in -6i64..=6) {
        prop_assert_eq!(x.pair(&y), y.pair(&x));
        prop_assert_eq!((&x + &y).pair(&z), x.pair(&z) + y.pair(&z));
        prop_assert_eq!((x.clone() * k).pair(&y), x.pair(&y) * q(k));
    }

    #[test]
    fn polynomial_division_inverts_multiplication(f in poly(), g in poly()) {
        prop_assume!(!g.is_zero());
        let fg = &f * &g;
        prop_assert_eq!(fg.div_exact(&g), Some(f.clone()));
        let (quot, scale) = fg.div_over_params(&g).unwrap();
        prop_assert_eq!(&quot * &g, &fg * &scale);
    }

    #[test]
    fn proportionality_is_symmetric(f in poly(), k in 1i64..=9) {
        prop_assume!(!f.is_zero());
        let g = f.scale(&q(k));
        let (l, m) = f.proportional(&g).unwrap();
        prop_assert_eq!(&f * &m, &g * &l);
        prop_assert!(g.proportional(&f).is_some());
    }

    #[test]
    fn lp_solutions_are_feasible_and_tight(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..6),
        obj in prop::collection::vec(-3i64..=3, 3),
    ) {
        // max obj.x over the box |x_i| <= 2 intersected with rows.x >= -1.
        let mut lp = LinearProgram::new(3);
        for i in 0..3 {
            let mut e = vec![Q::from_integer(0.into()); 3];
            e[i] = q(1);
            lp.at_least(e.clone(), q(-2));
            e[i] = q(-1);
            lp.at_least(e, q(-2));
        }
        for r in &rows {
            lp.at_least(r.iter().map(|&v| q(v)).collect(), q(-1));
        }
        lp.maximize(obj.iter().map(|&v| q(v)).collect());
        // x = 0 is feasible and the box is bounded, so an optimum exists.
        match lp.solve() {
            LpOutcome::Optimal(s) => {
                prop_assert!(lp.is_feasible_point(&s.x));
                let value: Q = obj.iter().zip(&s.x).map(|(&c, x)| q(c) * x).sum();
                prop_assert_eq!(value, s.value.clone());
                prop_assert!(s.value >= q(0));
            }
            other => prop_assert!(false, "unexpected outcome {:?}", other),
        }
    }
}
