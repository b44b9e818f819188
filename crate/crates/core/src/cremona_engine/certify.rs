//! The individual certificates.

use super::geometry::{
    build_sections, coefficient_matrix, d_conditions, f_conditions, h_conditions,
    kernel_dimension, quadric_rank, satisfies, Condition, Parameters, Point, PointConfig,
    Quadrics, Variant, GPRIME_LINES,
};
use super::pmatrix::{determinant, laplace_determinant, rank, PMatrix};
use super::poly::{product, Monomial, MultiPoly, NCOORDS, NVARS};
use super::{Certificate, CremonaError};
use crate::rational::format_q;

/// Everything built once per parameter choice.
pub struct Context {
    pub cfg: PointConfig,
    pub quadrics: Quadrics,
    pub s01: [MultiPoly; 4],
    pub s02: [MultiPoly; 4],
    pub s03: [MultiPoly; 4],
    /// `φ_D(F_5)` and `φ_D(F_4)` in the coordinates `s01`.
    pub q4: Vec<MultiPoly>,
    pub q5: Vec<MultiPoly>,
    /// `ψ = T ∘ φ_D` with `T` diagonal sending `q_4` to `p_4`.
    pub psi: [MultiPoly; 4],
}

fn x(i: usize) -> MultiPoly {
    MultiPoly::var(i)
}

/// `a/b` as text; a plain rational when both are constants.
fn ratio(a: &MultiPoly, b: &MultiPoly) -> String {
    match (a.as_constant(), b.as_constant()) {
        (Some(p), Some(q)) => format_q(&(p / q)),
        _ => format!("({a})/({b})"),
    }
}

fn proportional_cert(name: &str, lhs: &MultiPoly, rhs: &MultiPoly, label: &str) -> Certificate {
    match lhs.proportional(rhs) {
        Some((l, m)) => Certificate::new(
            name,
            true,
            format!("{label}: scalar {} (degree {:?})", ratio(&l, &m), lhs.coord_degree()),
        ),
        None => Certificate::new(name, false, format!("{label}: not proportional")),
    }
}

/// Lowest-order form at `p` in the affine chart `X_chart = p_chart`.
pub fn lowest_form(f: &MultiPoly, p: &Point, chart: usize) -> MultiPoly {
    let mut images: [Option<MultiPoly>; NVARS] = Default::default();
    for k in 0..NCOORDS {
        images[k] = Some(if k == chart {
            p[k].clone()
        } else {
            &p[k] + &x(k)
        });
    }
    let local = f.substitute(&images);
    match local.min_coord_degree() {
        Some(d) => local.coord_component(d),
        None => MultiPoly::zero(),
    }
}

/// Rational parametrization of a quadric through `p_0 = e_0` by projection
/// from `p_0`: `X = −Q(V)·e_0 + L(V)·V` with `V = (0, X_1, X_2, X_3)` and
/// `L = ∇Q(e_0)·V`.
pub fn parametrize_from_e0(q: &MultiPoly) -> Result<Point, CremonaError> {
    let mut at_e0: [Option<MultiPoly>; NVARS] = Default::default();
    at_e0[0] = Some(MultiPoly::one());
    for slot in at_e0.iter_mut().take(NCOORDS).skip(1) {
        *slot = Some(MultiPoly::zero());
    }
    if !q.substitute(&at_e0).is_zero() {
        return Err(CremonaError::Degenerate("quadric misses p0".into()));
    }
    let mut l = MultiPoly::zero();
    for k in 1..NCOORDS {
        let g = q.derivative(k).substitute(&at_e0);
        l = &l + &(&g * &x(k));
    }
    let g0 = q.derivative(0).substitute(&at_e0);
    if l.is_zero() && g0.is_zero() {
        return Err(CremonaError::Degenerate("quadric singular at p0".into()));
    }
    let mut v_only: [Option<MultiPoly>; NVARS] = Default::default();
    v_only[0] = Some(MultiPoly::zero());
    let qv = q.substitute(&v_only);
    Ok([-qv, &l * &x(1), &l * &x(2), &l * &x(3)])
}

/// If all polynomials are proportional, the common point.
pub fn constant_image(polys: &[MultiPoly]) -> Option<Vec<MultiPoly>> {
    let r = polys.iter().find(|p| !p.is_zero())?;
    let coeffs = r.coord_coefficients();
    let (m, _) = coeffs.iter().next_back()?;
    let point: Vec<MultiPoly> =
        polys.iter().map(|p| p.coord_coefficients().get(m).cloned().unwrap_or_default()).collect();
    let rc = point[polys.iter().position(|p| !p.is_zero())?].clone();
    for (p, c) in polys.iter().zip(&point) {
        if p * &rc != r * c {
            return None;
        }
    }
    Some(point)
}

/// Two tuples are the same projective point.
pub fn same_point(p: &[MultiPoly], q: &[MultiPoly]) -> bool {
    if p.iter().all(|v| v.is_zero()) || q.iter().all(|v| v.is_zero()) {
        return false;
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if &p[i] * &q[j] != &p[j] * &q[i] {
                return false;
            }
        }
    }
    true
}

fn unit(i: usize) -> Vec<MultiPoly> {
    (0..4).map(|k| if k == i { MultiPoly::one() } else { MultiPoly::zero() }).collect()
}

/// Jacobian rank 2 of the two ratio functions `P/Q` in the listed
/// variables: some 2×2 minor of `(Q∇P − P∇Q)` is a nonzero polynomial.
pub fn rank_two(ratios: &[(MultiPoly, MultiPoly); 2], vars: &[usize]) -> bool {
    let rows: Vec<Vec<MultiPoly>> = ratios
        .iter()
        .map(|(p, q)| {
            vars.iter()
                .map(|&v| &(q * &p.derivative(v)) - &(p * &q.derivative(v)))
                .collect()
        })
        .collect();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let minor = &(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i]);
            if !minor.is_zero() {
                return true;
            }
        }
    }
    false
}

fn compose_all(f: &MultiPoly, map: &[MultiPoly; 4]) -> MultiPoly {
    f.compose(map)
}

/// Divide by `f` as many times as all members allow.
fn divide_out(polys: &[MultiPoly], f: &MultiPoly) -> (Vec<MultiPoly>, usize) {
    let mut cur = polys.to_vec();
    let mut power = 0;
    loop {
        let next: Option<Vec<MultiPoly>> = cur
            .iter()
            .map(|p| if p.is_zero() { Some(MultiPoly::zero()) } else { p.div_over_params(f).map(|(q, _)| q) })
            .collect();
        match next {
            Some(n) if cur.iter().any(|p| !p.is_zero()) => {
                cur = n;
                power += 1;
            }
            _ => return (cur, power),
        }
    }
}

impl Context {
    pub fn build(params: Parameters) -> Result<Context, CremonaError> {
        let cfg = PointConfig::new(params);
        cfg.genericity()?;
        let quadrics = Quadrics::build(&cfg)?;
        let s01 = build_sections(&cfg, &quadrics, Variant::S01)?;
        let s02 = build_sections(&cfg, &quadrics, Variant::S02)?;
        let s03 = build_sections(&cfg, &quadrics, Variant::S03)?;
        let image_of = |q: &MultiPoly, what: &str| -> Result<Vec<MultiPoly>, CremonaError> {
            let param = parametrize_from_e0(q)?;
            let restricted: Vec<MultiPoly> = s01.iter().map(|s| s.compose(&param)).collect();
            constant_image(&restricted)
                .ok_or_else(|| CremonaError::Degenerate(format!("{what} is not contracted to a point")))
        };
        let q4 = image_of(&quadrics.f5, "F_5")?;
        let q5 = image_of(&quadrics.f4, "F_4")?;
        if q4.iter().any(|c| c.is_zero()) {
            return Err(CremonaError::Degenerate("q4 lies on a coordinate plane".into()));
        }
        let t: Vec<MultiPoly> = (0..4)
            .map(|i| product((0..4).filter(|&j| j != i).map(|j| &q4[j])))
            .collect();
        let psi = std::array::from_fn(|i| &t[i] * &s01[i]);
        Ok(Context { cfg, quadrics, s01, s02, s03, q4, q5, psi })
    }

    fn plane(&self, name: &str) -> MultiPoly {
        self.cfg.plane_named(name).expect("generic configuration")
    }

    fn t_diag(&self) -> Vec<MultiPoly> {
        (0..4)
            .map(|i| product((0..4).filter(|&j| j != i).map(|j| &self.q4[j])))
            .collect()
    }
}

/// Section ranks, span equality, coprimality and quadric checks.
pub fn sections_report(ctx: &Context) -> Vec<Certificate> {
    let mut out = Vec::new();
    for (v, s) in [(Variant::S01, &ctx.s01), (Variant::S02, &ctx.s02), (Variant::S03, &ctx.s03)] {
        let degs: Vec<_> = s.iter().map(|p| p.coord_degree()).collect();
        let r = rank(&coefficient_matrix(5, s));
        out.push(Certificate::new(
            &format!("section_rank_{v}"),
            r == 4 && degs.iter().all(|d| *d == Some(5)),
            format!("rank {r}, degrees {degs:?}"),
        ));
    }
    let all: Vec<MultiPoly> = ctx.s01.iter().chain(&ctx.s02).chain(&ctx.s03).cloned().collect();
    let r = rank(&coefficient_matrix(5, &all));
    out.push(Certificate::new("sections_span_one_system", r == 4, format!("rank of all twelve {r}")));

    // gcd(s01) = 1: its only candidate factors are those of s_0.
    let s0_factors = [("p023", ctx.plane("023")), ("h02", ctx.quadrics.h(0, 2).clone()), ("h03", ctx.quadrics.h(0, 3).clone())];
    let dividing: Vec<&str> = s0_factors
        .iter()
        .filter(|(_, f)| ctx.s01[1..].iter().all(|s| s.div_over_params(f).is_some()))
        .map(|(n, _)| *n)
        .collect();
    let irreducible = [&ctx.quadrics.h(0, 2), &ctx.quadrics.h(0, 3)].iter().all(|q| quadric_rank(q) >= 3);
    out.push(Certificate::new(
        "sections_gcd_trivial",
        dividing.is_empty() && irreducible,
        format!("factors of s0 dividing all sections: {dividing:?}"),
    ));

    let mut dims = Vec::new();
    let mut ok = true;
    let mut conds: Vec<(String, Vec<Condition>)> = vec![
        ("F4".into(), f_conditions(4)),
        ("F5".into(), f_conditions(5)),
    ];
    for &l in &GPRIME_LINES {
        conds.push((format!("H{}{}", l.0, l.1), h_conditions(l)));
    }
    for (name, c) in &conds {
        let d = kernel_dimension(&ctx.cfg, 2, c);
        ok &= d == 1;
        dims.push(format!("{name}:{d}"));
    }
    out.push(Certificate::new("quadric_kernels", ok, dims.join(" ")));

    let ranks: Vec<String> = ctx.quadrics.named().iter().map(|(n, q)| format!("{n}:{}", quadric_rank(q))).collect();
    let irreducible = ctx.quadrics.named().iter().all(|(_, q)| quadric_rank(q) >= 3);
    let named = ctx.quadrics.named();
    let mut distinct = true;
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            distinct &= named[i].1.proportional(named[j].1).is_none();
        }
    }
    out.push(Certificate::new(
        "quadrics_irreducible_distinct",
        irreducible && distinct,
        ranks.join(" "),
    ));

    // Adding any further point, double point or line kills each quadric.
    let mut failures = Vec::new();
    for (name, c) in &conds {
        let mut extras: Vec<Condition> = Vec::new();
        for k in 0..6 {
            if c.contains(&Condition::Point(k)) {
                extras.push(Condition::Double(k));
            } else {
                extras.push(Condition::Point(k));
            }
        }
        for i in 0..6 {
            for j in i + 1..6 {
                if !c.contains(&Condition::Line(i, j)) {
                    extras.push(Condition::Line(i, j));
                }
            }
        }
        for e in extras {
            let mut more = c.clone();
            more.push(e);
            if kernel_dimension(&ctx.cfg, 2, &more) != 0 {
                failures.push(format!("{name}+{e:?}"));
            }
        }
    }
    out.push(Certificate::new(
        "quadric_non_effectivity",
        failures.is_empty(),
        if failures.is_empty() { "every augmented system has kernel 0".to_string() } else { failures.join(", ") },
    ));
    out
}

/// The constraint-count oracle for `h^0(X, D)`.
pub fn linear_system(ctx: &Context) -> Vec<Certificate> {
    let conds = d_conditions();
    let dim = kernel_dimension(&ctx.cfg, 5, &conds);
    let mut dropped: Vec<Condition> = conds.clone();
    dropped.retain(|c| *c != Condition::DoubleLine(0, 2));
    let dim_dropped = kernel_dimension(&ctx.cfg, 5, &dropped);
    let inside = ctx.s01.iter().all(|s| satisfies(&ctx.cfg, 5, s, &conds));
    vec![
        Certificate::new("h0_oracle", dim == 4, format!("dimension {dim}")),
        Certificate::new(
            "h0_without_l02",
            dim_dropped > dim,
            format!("dimension {dim_dropped}"),
        ),
        Certificate::new("sections_in_system", inside, "s01 satisfies all conditions"),
    ]
}

/// Images of `E_0..E_3`, `F_4`, `F_5` and the four `H_ij`.
pub fn exceptional_images(ctx: &Context) -> Vec<Certificate> {
    let mut out = Vec::new();
    let expected = [1usize, 0, 3, 2];
    let mut ok = true;
    let mut detail = Vec::new();
    for (i, &target) in expected.iter().enumerate() {
        let forms: Vec<MultiPoly> = ctx.s01.iter().map(|s| lowest_form(s, ctx.cfg.point(i), i)).collect();
        let orders: Vec<u32> = forms.iter().map(|f| f.min_coord_degree().unwrap_or(u32::MAX)).collect();
        let min = *orders.iter().min().unwrap();
        let at_min: Vec<usize> = (0..4).filter(|&k| orders[k] == min).collect();
        ok &= at_min == vec![target];
        detail.push(format!("E{i}->q{} orders {orders:?}", at_min.first().copied().unwrap_or(9)));
    }
    out.push(Certificate::new("exceptional_points", ok, detail.join("; ")));

    let q4_ok = !same_point(&ctx.q4, &ctx.q5) && ctx.q5.iter().all(|c| !c.is_zero());
    out.push(Certificate::new(
        "f5_contracted",
        true,
        format!("q4 = [{}]", ctx.q4.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" : ")),
    ));
    out.push(Certificate::new(
        "f4_contracted",
        q4_ok,
        format!("q5 = [{}]", ctx.q5.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" : ")),
    ));

    // In the basis s03, three sections carry f_5, so F_5 goes to [0:0:0:1].
    let via_s03 = parametrize_from_e0(&ctx.quadrics.f5).ok().and_then(|param| {
        let r: Vec<MultiPoly> = ctx.s03.iter().map(|s| s.compose(&param)).collect();
        constant_image(&r)
    });
    out.push(Certificate::new(
        "f5_contracted_via_s03",
        via_s03.as_ref().is_some_and(|p| same_point(p, &unit(3))),
        "image [0:0:0:1] in the basis s03",
    ));

    // H_ij lands in the line q_k q_l = {X_m = 0 : m ∉ {k, l}} and is not a point.
    let mut ok = true;
    let mut detail = Vec::new();
    for &(i, j) in &GPRIME_LINES {
        let others: Vec<usize> = (0..4).filter(|&m| m != i && m != j).collect();
        let (k, l) = (others[0], others[1]);
        let mut good = false;
        if let Ok(param) = parametrize_from_e0(ctx.quadrics.h(i, j)) {
            let r: Vec<MultiPoly> = ctx.s01.iter().map(|s| s.compose(&param)).collect();
            let vanish = (0..4).filter(|m| *m != k && *m != l).all(|m| r[m].is_zero());
            let line = !r[k].is_zero() && !r[l].is_zero() && r[k].proportional(&r[l]).is_none();
            good = vanish && line;
        }
        ok &= good;
        detail.push(format!("H{i}{j}->line(q{k},q{l}):{good}"));
    }
    out.push(Certificate::new("quadrics_to_lines", ok, detail.join(" ")));

    // {p_i} and {q_i} are projectively equivalent: T sends q_4 to p_4, check q_5.
    let t = ctx.t_diag();
    let tq5: Vec<MultiPoly> = (0..4).map(|i| &t[i] * &ctx.q5[i]).collect();
    out.push(Certificate::new(
        "projective_equivalence",
        q4_ok && same_point(&tq5, ctx.cfg.point(5)),
        "diagonal T with T(q_i) = p_i for i < 5 also sends q_5 to p_5",
    ));
    out
}

/// A proportionality scalar `num/den`.
type Scalar = (MultiPoly, MultiPoly);

fn scalar_mul(a: &Scalar, b: &Scalar) -> Scalar {
    (&a.0 * &b.0, &a.1 * &b.1)
}

fn quadric_name(l: (usize, usize)) -> String {
    format!("h{}{}", l.0, l.1)
}

/// Pullback factorizations and `ψ∘ψ = id` after clearing `A²`.
///
/// The identity is certified twice: by assembling `ψ∘ψ` from the certified
/// factors of each `s_i(ψ)` (bookkeeping of factor multisets and scalars,
/// cheap enough for symbolic mode), and by expanding the degree-25
/// composition and dividing by `A` twice (specialized mode only).
pub fn compose_self(ctx: &Context) -> Vec<Certificate> {
    let q = &ctx.quadrics;
    let psi = &ctx.psi;
    let mut out = Vec::new();
    let partner = |l: (usize, usize)| (1 - l.0, 5 - l.1);
    let a_names: Vec<String> = ["f4", "f5"]
        .iter()
        .map(|s| s.to_string())
        .chain(GPRIME_LINES.iter().map(|&l| quadric_name(l)))
        .collect();

    let mut h_psi = std::collections::BTreeMap::new();
    let mut ok = true;
    let mut detail = Vec::new();
    for &l in &GPRIME_LINES {
        let hp = compose_all(q.h(l.0, l.1), psi);
        let p = partner(l);
        let mut factors = vec![&q.f4, &q.f5];
        let mut names = vec!["f4".to_string(), "f5".to_string()];
        for &m in &GPRIME_LINES {
            if m != p {
                factors.push(q.h(m.0, m.1));
                names.push(quadric_name(m));
            }
        }
        let expected = product(factors);
        let c = proportional_cert("", &hp, &expected, &format!("h{}{}(psi)", l.0, l.1));
        ok &= c.passed;
        detail.push(c.detail);
        h_psi.insert(l, (hp.proportional(&expected), names));
    }
    out.push(Certificate::new("pullback_quadrics", ok, detail.join("; ")));

    let plane_rules = [
        ("023", (1, 2), (1, 3), "123"),
        ("123", (0, 2), (0, 3), "023"),
        ("012", (0, 3), (1, 3), "013"),
        ("013", (0, 2), (1, 2), "012"),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    let mut p_psi = std::collections::BTreeMap::new();
    for (src, a, b, tgt) in plane_rules {
        let pp = compose_all(&ctx.plane(src), psi);
        let expected = product([q.h(a.0, a.1), q.h(b.0, b.1), &ctx.plane(tgt)]);
        let c = proportional_cert("", &pp, &expected, &format!("p{src}(psi)"));
        ok &= c.passed;
        detail.push(c.detail);
        p_psi.insert(src, (pp.proportional(&expected), vec![quadric_name(a), quadric_name(b)], tgt));
    }
    out.push(Certificate::new("pullback_planes", ok, detail.join("; ")));

    // s_i = p · h_a · h_b, and ψ∘ψ_i = T_i s_i(ψ).
    let layout = [("023", (0, 2), (0, 3)), ("123", (1, 2), (1, 3)), ("012", (0, 2), (1, 2)), ("013", (0, 3), (1, 3))];
    let t = ctx.t_diag();
    let mut kappas: Vec<Option<Scalar>> = Vec::new();
    let mut factor_ok = true;
    for (i, (p, a, b)) in layout.iter().enumerate() {
        let (p_scalar, p_quadrics, tgt) = &p_psi[p];
        let (a_scalar, a_names_i) = &h_psi[a];
        let (b_scalar, b_names_i) = &h_psi[b];
        // Quadric factors must make up A² exactly; the plane left over must be X_i.
        let mut got: Vec<String> = p_quadrics.iter().chain(a_names_i).chain(b_names_i).cloned().collect();
        let mut want: Vec<String> = a_names.iter().chain(&a_names).cloned().collect();
        got.sort();
        want.sort();
        factor_ok &= got == want;
        let plane = ctx.plane(tgt);
        let kappa = match (p_scalar, a_scalar, b_scalar, plane.proportional(&x(i))) {
            (Some(ps), Some(asc), Some(bs), Some(rho)) => {
                let k = scalar_mul(&scalar_mul(ps, asc), &scalar_mul(bs, &rho));
                Some(scalar_mul(&k, &(t[i].clone(), MultiPoly::one())))
            }
            _ => None,
        };
        kappas.push(kappa);
    }
    let equal_scalars = kappas.iter().all(|k| k.is_some()) && {
        let k: Vec<&Scalar> = kappas.iter().flatten().collect();
        k.iter().all(|ki| &ki.0 * &k[0].1 == &k[0].0 * &ki.1)
    };
    let a = q.a_factor();
    out.push(Certificate::new(
        "self_composition_factors",
        factor_ok && equal_scalars,
        format!(
            "psi(psi)_i = kappa * x_i * A^2 with one common kappa; deg = 5 + 10 + 10 = 25, deg A = {:?}",
            a.coord_degree()
        ),
    ));

    if matches!(ctx.cfg.params, Parameters::Specialized(_)) {
        let composed: Vec<MultiPoly> = layout
            .iter()
            .enumerate()
            .map(|(i, (p, a, b))| {
                let s = product([&ctx.plane(p), q.h(a.0, a.1), q.h(b.0, b.1)]);
                &t[i] * &compose_all(&s, psi)
            })
            .collect();
        let degs: Vec<Option<u32>> = composed.iter().map(|c| c.coord_degree()).collect();
        let a2 = &a * &a;
        let mut cleared = Vec::new();
        let mut ok = true;
        for c in &composed {
            match c.div_over_params(&a).and_then(|(q1, _)| q1.div_over_params(&a)) {
                Some((r, _)) => cleared.push(r),
                None => ok = false,
            }
        }
        let identity: Vec<MultiPoly> = (0..4).map(x).collect();
        let is_identity = ok && same_point(&composed, &identity.iter().map(|xi| xi * &a2).collect::<Vec<_>>());
        let cleared_identity = ok && same_point(&cleared, &identity);
        out.push(Certificate::new(
            "self_composition",
            is_identity && cleared_identity && degs.iter().all(|d| *d == Some(25)),
            format!(
                "deg psi(psi)_i = {:?}, deg A = {:?}, common factor A^2 (degree 24), cleared tuple = [x0:x1:x2:x3]",
                degs,
                a.coord_degree()
            ),
        ));
    }
    out
}

/// `J = f_4² f_5² h_02 h_03 h_12 h_13` up to scalar.
pub fn jacobian_factorization(ctx: &Context) -> Vec<Certificate> {
    let m: PMatrix = ctx.s01.iter().map(|s| (0..4).map(|v| s.derivative(v)).collect()).collect();
    let j = laplace_determinant(&m);
    let q = &ctx.quadrics;
    let expected = product([&q.f4, &q.f4, &q.f5, &q.f5, q.h(0, 2), q.h(0, 3), q.h(1, 2), q.h(1, 3)]);
    let mut c = proportional_cert("jacobian", &j, &expected, "J / (f4^2 f5^2 h02 h03 h12 h13)");
    c.passed &= !j.is_zero() && j.coord_degree() == Some(16);
    vec![c]
}

/// Rank-2 certificates for `F_5` and `H_02`, and the plane Cremona on `E_0`.
pub fn noncontraction_after_blowup(ctx: &Context) -> Vec<Certificate> {
    let mut out = Vec::new();
    let q = &ctx.quadrics;
    let vars = [1usize, 2, 3];

    // F_5 toward the exceptional plane over q_4, in the basis s02.
    let f5_cert = (|| -> Option<String> {
        let param = parametrize_from_e0(&q.f5).ok()?;
        let restricted: Vec<MultiPoly> = ctx.s02.iter().map(|s| s.compose(&param)).collect();
        let pt = constant_image(&restricted)?;
        let k0 = (0..4).find(|&k| !pt[k].is_zero())?;
        let w: Vec<MultiPoly> = (0..4)
            .filter(|&k| k != k0)
            .map(|k| &(&pt[k0] * &ctx.s02[k]) - &(&pt[k] * &ctx.s02[k0]))
            .collect();
        let (g, power) = divide_out(&w, &q.f5);
        if power == 0 {
            return None;
        }
        let c: Vec<MultiPoly> = g.iter().map(|p| p.compose(&param)).collect();
        let den = c.iter().position(|p| !p.is_zero())?;
        let nums: Vec<usize> = (0..c.len()).filter(|&k| k != den).collect();
        let ratios = [(c[nums[0]].clone(), c[den].clone()), (c[nums[1]].clone(), c[den].clone())];
        rank_two(&ratios, &vars).then(|| format!("f5 power {power}, rank 2"))
    })();
    out.push(Certificate::new(
        "noncontraction_f5",
        f5_cert.is_some(),
        f5_cert.unwrap_or_else(|| "rank < 2 or no contraction".into()),
    ));

    // H_02 toward the exceptional surface over the line q_1 q_3.
    let h_cert = (|| -> Option<String> {
        let h02 = q.h(0, 2);
        let param = parametrize_from_e0(h02).ok()?;
        let (g, power) = divide_out(&[ctx.s01[0].clone(), ctx.s01[2].clone()], h02);
        if power == 0 {
            return None;
        }
        let r = |p: &MultiPoly| p.compose(&param);
        let ratios = [(r(&ctx.s01[1]), r(&ctx.s01[3])), (r(&g[0]), r(&g[1]))];
        if ratios.iter().any(|(_, d)| d.is_zero()) {
            return None;
        }
        rank_two(&ratios, &vars).then(|| format!("h02 power {power}, rank 2"))
    })();
    out.push(Certificate::new(
        "noncontraction_h02",
        h_cert.is_some(),
        h_cert.unwrap_or_else(|| "rank < 2 or no contraction".into()),
    ));

    out.push(e0_cremona(ctx));
    out
}

fn cross3(u: &[MultiPoly], v: &[MultiPoly]) -> Vec<MultiPoly> {
    vec![
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

/// Coefficients of a linear form in `X_1, X_2, X_3`.
fn linear_coeffs(l: &MultiPoly) -> Vec<MultiPoly> {
    let c = l.coord_coefficients();
    (1..4).map(|v| c.get(&Monomial::var(v)).cloned().unwrap_or_default()).collect()
}

fn eval_local(f: &MultiPoly, pt: &[MultiPoly]) -> MultiPoly {
    let mut images: [Option<MultiPoly>; NVARS] = Default::default();
    for k in 0..3 {
        images[k + 1] = Some(pt[k].clone());
    }
    f.substitute(&images)
}

fn e0_cremona(ctx: &Context) -> Certificate {
    let p0 = ctx.cfg.point(0);
    let q = &ctx.quadrics;
    let lf = |f: &MultiPoly| lowest_form(f, p0, 0);
    let l23 = lf(&ctx.plane("023"));
    let c = lf(q.h(0, 2));
    let d = lf(q.h(0, 3));
    let l12 = lf(&ctx.plane("012"));
    let l13 = lf(&ctx.plane("013"));
    let table = lf(q.h(1, 2)).proportional(&l23).is_some() && lf(q.h(1, 3)).proportional(&l23).is_some();
    let forms: Vec<MultiPoly> = [0usize, 2, 3].iter().map(|&i| lf(&ctx.s01[i])).collect();
    let orders_ok = forms.iter().all(|f| f.coord_degree() == Some(3)) && lf(&ctx.s01[1]).coord_degree() == Some(2);
    let reduced: Option<Vec<MultiPoly>> = forms.iter().map(|f| f.div_over_params(&l23).map(|(q, _)| q)).collect();
    let Some(reduced) = reduced else {
        return Certificate::new("e0_standard_cremona", false, "common factor l23 missing");
    };
    let shape = reduced[0].proportional(&(&c * &d)).is_some()
        && reduced[1].proportional(&(&c * &l12)).is_some()
        && reduced[2].proportional(&(&d * &l13)).is_some();

    let lines = [&c, &d, &l12, &l13].map(linear_coeffs);
    let mut base: Vec<Vec<MultiPoly>> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let p = cross3(&lines[i], &lines[j]);
            if p.iter().all(|v| v.is_zero()) {
                continue;
            }
            if reduced.iter().all(|f| eval_local(f, &p).is_zero()) && !base.iter().any(|b| same_point(b, &p)) {
                base.push(p);
            }
        }
    }
    let mut standard = false;
    if base.len() == 3 {
        let bm: PMatrix = (0..3).map(|k| (0..3).map(|i| base[i][k].clone()).collect()).collect();
        if !determinant(&bm).is_zero() {
            // Y = B·Z; base points move to the coordinate points.
            let sub: Vec<MultiPoly> = (0..3)
                .map(|k| (0..3).fold(MultiPoly::zero(), |acc, i| &acc + &(&bm[k][i] * &x(i + 1))))
                .collect();
            let moved: Vec<MultiPoly> = reduced.iter().map(|f| eval_local(f, &sub)).collect();
            let mixed = [(2usize, 3usize), (1, 3), (1, 2)];
            let no_squares = moved.iter().all(|f| {
                (1..4).all(|v| {
                    let mut e = [0u16; 7];
                    e[v] = 2;
                    !f.coord_coefficients().contains_key(&Monomial::from_exponents(&e))
                })
            });
            let cm: PMatrix = moved
                .iter()
                .map(|f| {
                    let co = f.coord_coefficients();
                    mixed
                        .iter()
                        .map(|&(a, b)| {
                            let mut e = [0u16; 7];
                            e[a] = 1;
                            e[b] = 1;
                            co.get(&Monomial::from_exponents(&e)).cloned().unwrap_or_default()
                        })
                        .collect()
                })
                .collect();
            standard = no_squares && !determinant(&cm).is_zero();
        }
    }
    Certificate::new(
        "e0_standard_cremona",
        table && orders_ok && shape && standard,
        format!(
            "restricted map [cd : c*l12 : d*l13] after removing l23; {} base points; standard {standard}",
            base.len()
        ),
    )
}

/// The rational normal curve through the six points and its image.
pub fn rational_curve_transport(ctx: &Context) -> Vec<Certificate> {
    let [a, b, c] = ctx.cfg.params.values();
    let lambda = [MultiPoly::one(), a, b, c];
    let (u, v) = (x(0), x(1));
    let lin: Vec<MultiPoly> = lambda.iter().map(|l| &(l * &u) + &v).collect();
    let curve: [MultiPoly; 4] =
        std::array::from_fn(|i| product((0..4).filter(|&j| j != i).map(|j| &lin[j])));
    let q = &ctx.quadrics;
    let mut out = Vec::new();

    let all_lin = product(lin.iter());
    let uv_all = product([&u, &v, &all_lin]);
    let mut ok = true;
    let mut detail = Vec::new();
    for &(i, j) in &GPRIME_LINES {
        let r = q.h(i, j).compose(&curve);
        let cert = proportional_cert("", &r, &uv_all, &format!("h{i}{j},R"));
        ok &= cert.passed;
        detail.push(cert.detail);
    }
    out.push(Certificate::new("curve_quadric_factors", ok, detail.join("; ")));

    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["023", "123", "012", "013"] {
        let idx: Vec<usize> = name.bytes().map(|b| (b - b'0') as usize).collect();
        let expected = product(idx.iter().map(|&k| &lin[k]));
        let cert = proportional_cert("", &ctx.plane(name).compose(&curve), &expected, &format!("p{name},R"));
        ok &= cert.passed;
        detail.push(cert.detail);
    }
    out.push(Certificate::new("curve_plane_factors", ok, detail.join("; ")));

    // Image curve [1/(au+v) : 1/(u+v) : 1/(cu+v) : 1/(bu+v)], after removing
    // the common factor and up to a diagonal change of coordinates.
    let sigma = [1usize, 0, 3, 2];
    let image: Vec<MultiPoly> = ctx.psi.iter().map(|s| s.compose(&curve)).collect();
    let (image, _) = divide_out(&image, &uv_all);
    let target: Vec<MultiPoly> = sigma.iter().map(|&k| curve[k].clone()).collect();
    let scalars: Option<Vec<String>> = image
        .iter()
        .zip(&target)
        .map(|(i, t)| i.proportional(t).map(|(l, m)| ratio(&l, &m)))
        .collect();
    out.push(Certificate::new(
        "curve_image",
        scalars.is_some(),
        match scalars {
            Some(s) => format!("psi(R)_i / [1/(au+v) : 1/(u+v) : 1/(cu+v) : 1/(bu+v)]_i = {}", s.join(", ")),
            None => "coordinate not proportional".to_string(),
        },
    ));

    // Parameters of p_i: u/v = −1/λ_i, 0, ∞.
    let at = |pu: MultiPoly, pv: MultiPoly, f: &[MultiPoly]| -> Vec<MultiPoly> {
        let mut images: [Option<MultiPoly>; NVARS] = Default::default();
        images[0] = Some(pu);
        images[1] = Some(pv);
        f.iter().map(|p| p.substitute(&images)).collect()
    };
    let mut params: Vec<(MultiPoly, MultiPoly)> =
        lambda.iter().map(|l| (MultiPoly::int(-1), l.clone())).collect();
    params.push((MultiPoly::zero(), MultiPoly::one()));
    params.push((MultiPoly::one(), MultiPoly::zero()));
    let ok = params
        .iter()
        .enumerate()
        .all(|(i, (pu, pv))| same_point(&at(pu.clone(), pv.clone(), &curve), ctx.cfg.point(i)));
    out.push(Certificate::new(
        "curve_parameters",
        ok,
        "u/v = (-1, -1/a, -1/b, -1/c, 0, inf) give p0..p5",
    ));

    // q_i sit on the image at the parameters of p1, p0, p3, p2, F5∩R, F4∩R.
    let residual = |f: &MultiPoly, known: &[&MultiPoly]| -> Option<(MultiPoly, MultiPoly)> {
        let r = f.compose(&curve);
        let (l, _) = r.div_over_params(&product(known.iter().copied()))?;
        let co = l.coord_coefficients();
        let cu = co.get(&Monomial::var(0)).cloned().unwrap_or_default();
        let cv = co.get(&Monomial::var(1)).cloned().unwrap_or_default();
        (l.coord_degree() == Some(1)).then(|| (-cv, cu))
    };
    let mut ok = (0..4).all(|i| {
        let (pu, pv) = &params[sigma[i]];
        same_point(&at(pu.clone(), pv.clone(), &image), &unit(i))
    });
    let x_pt = residual(&q.f5, &[&lin[0], &lin[1], &lin[2], &lin[3], &u]);
    let y_pt = residual(&q.f4, &[&lin[0], &lin[1], &lin[2], &lin[3], &v]);
    match (x_pt, y_pt) {
        (Some((xu, xv)), Some((yu, yv))) => {
            let t = ctx.t_diag();
            let moved = |q: &[MultiPoly]| -> Vec<MultiPoly> { (0..4).map(|i| &t[i] * &q[i]).collect() };
            ok &= same_point(&at(xu, xv, &image), &moved(&ctx.q4));
            ok &= same_point(&at(yu, yv, &image), &moved(&ctx.q5));
        }
        _ => ok = false,
    }
    out.push(Certificate::new(
        "curve_q_parameters",
        ok,
        "q0..q5 lie on the image at the parameters of p1, p0, p3, p2, F5∩R, F4∩R",
    ));
    out
}

/// Plane pullbacks under `ψ` and the action on the eleven remaining lines.
pub fn line_permutation(ctx: &Context) -> Vec<Certificate> {
    let psi = &ctx.psi;
    let named = ctx.quadrics.named();
    let mut out = Vec::new();
    let pairs = [
        ("034", "125", Some(("f4", "h03"))),
        ("134", "025", None),
        ("024", "135", None),
        ("124", "035", None),
        ("045", "145", Some(("f4", "f5"))),
        ("245", "345", None),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (src, tgt, expect) in pairs {
        let pulled = ctx.plane(tgt).compose(psi);
        let Some((cof, _)) = pulled.div_over_params(&ctx.plane(src)) else {
            ok = false;
            detail.push(format!("p{tgt}(psi) not divisible by p{src}"));
            continue;
        };
        let mut found = None;
        for i in 0..named.len() {
            for j in i..named.len() {
                if cof.proportional(&(named[i].1 * named[j].1)).is_some() {
                    found = Some((named[i].0.clone(), named[j].0.clone()));
                }
            }
        }
        let good = match (&found, expect) {
            (Some((f1, f2)), Some((e1, e2))) => {
                (f1 == e1 && f2 == e2) || (f1 == e2 && f2 == e1)
            }
            (Some(_), None) => true,
            (None, _) => false,
        };
        ok &= good;
        let (f1, f2) = found.unwrap_or_default();
        detail.push(format!("p{tgt}(psi) = p{src}*{f1}*{f2}"));
    }
    out.push(Certificate::new("plane_pullbacks", ok, detail.join("; ")));

    let table = [
        ((0, 1), (0, 1)),
        ((2, 3), (2, 3)),
        ((4, 5), (4, 5)),
        ((0, 4), (1, 5)),
        ((1, 5), (0, 4)),
        ((0, 5), (1, 4)),
        ((1, 4), (0, 5)),
        ((2, 4), (3, 5)),
        ((3, 5), (2, 4)),
        ((3, 4), (2, 5)),
        ((2, 5), (3, 4)),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for ((i, j), (k, l)) in table {
        let p = ctx.cfg.point(i);
        let q = ctx.cfg.point(j);
        let line: [MultiPoly; 4] = std::array::from_fn(|m| &(&p[m] * &x(0)) + &(&q[m] * &x(1)));
        let image: Vec<MultiPoly> = psi.iter().map(|f| f.compose(&line)).collect();
        let others: Vec<usize> = (0..6).filter(|&m| m != k && m != l).take(2).collect();
        let inside = others.iter().all(|&m| {
            let mut idx = [k, l, m];
            idx.sort_unstable();
            let plane = ctx.cfg.plane(idx[0], idx[1], idx[2]).expect("generic");
            plane.compose(&image).is_zero()
        });
        let degree = map_degree(&image);
        let good = inside && degree == Some(1);
        ok &= good;
        detail.push(format!("l{i}{j}->l{k}{l} degree {degree:?}"));
    }
    out.push(Certificate::new("line_permutation", ok, detail.join("; ")));
    out
}

/// Degree of a map from a line, given by binary forms in `X_0, X_1`: the rank
/// of the Bezout matrix of two independent coordinates.
pub fn map_degree(image: &[MultiPoly]) -> Option<usize> {
    let nz: Vec<&MultiPoly> = image.iter().filter(|p| !p.is_zero()).collect();
    let (p, q) = nz
        .iter()
        .enumerate()
        .flat_map(|(i, a)| nz[i + 1..].iter().map(move |b| (*a, *b)))
        .find(|(a, b)| a.proportional(b).is_none())?;
    let mut dehom: [Option<MultiPoly>; NVARS] = Default::default();
    dehom[1] = Some(MultiPoly::one());
    let (p, q) = (p.substitute(&dehom), q.substitute(&dehom));
    let mut swap: [Option<MultiPoly>; NVARS] = Default::default();
    swap[0] = Some(x(1));
    let (py, qy) = (p.substitute(&swap), q.substitute(&swap));
    let k = &(&p * &qy) - &(&py * &q);
    let (bez, _) = k.div_over_params(&(&x(0) - &x(1)))?;
    let n = p.coord_degree()?.max(q.coord_degree()?) as usize;
    let co = bez.coord_coefficients();
    let m: PMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = [0u16; 7];
                    e[0] = i as u16;
                    e[1] = j as u16;
                    co.get(&Monomial::from_exponents(&e)).cloned().unwrap_or_default()
                })
                .collect()
        })
        .collect();
    Some(rank(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ctx() -> Context {
        Context::build(Parameters::Specialized(vec![q(2), q(3), q(5)])).unwrap()
    }

    fn all_pass(certs: &[Certificate]) {
        for c in certs {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn sections_and_system() {
        let c = ctx();
        all_pass(&sections_report(&c));
        all_pass(&linear_system(&c));
    }

    #[test]
    fn exceptional() {
        all_pass(&exceptional_images(&ctx()));
    }

    #[test]
    fn composition_and_jacobian() {
        let c = ctx();
        all_pass(&compose_self(&c));
        all_pass(&jacobian_factorization(&c));
    }

    #[test]
    fn blowups() {
        all_pass(&noncontraction_after_blowup(&ctx()));
    }

    #[test]
    fn curve() {
        all_pass(&rational_curve_transport(&ctx()));
    }

    #[test]
    fn lines() {
        all_pass(&line_permutation(&ctx()));
    }

    #[test]
    fn bezout_degree() {
        // [s^2 : t^2] has degree 2, [s t : t^2] degree 1.
        let s = x(0);
        let t = x(1);
        assert_eq!(map_degree(&[&s * &s, &t * &t]), Some(2));
        assert_eq!(map_degree(&[&s * &t, &t * &t]), Some(1));
    }
}
