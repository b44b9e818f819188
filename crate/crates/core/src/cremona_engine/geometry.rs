//! Six points in projective 3-space, the planes and quadrics through them,
//! and the quintic sections of `D`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::pmatrix::{kernel_line, rank, PMatrix};
use super::poly::{coord_monomials, product, Monomial, MultiPoly, A, B, C, NCOORDS};
use super::CremonaError;
use crate::linalg::QMatrix;
use crate::rational::{format_q, Q};

pub type Point = [MultiPoly; NCOORDS];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Parameters {
    Symbolic,
    Specialized(#[serde(with = "crate::rational::serde_q_vec")] Vec<Q>),
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameters::Symbolic => write!(f, "symbolic"),
            Parameters::Specialized(v) => {
                write!(f, "a={}, b={}, c={}", format_q(&v[0]), format_q(&v[1]), format_q(&v[2]))
            }
        }
    }
}

impl Parameters {
    /// `a, b, c` as parameter polynomials.
    pub fn values(&self) -> [MultiPoly; 3] {
        match self {
            Parameters::Symbolic => [MultiPoly::var(A), MultiPoly::var(B), MultiPoly::var(C)],
            Parameters::Specialized(v) => [
                MultiPoly::constant(v[0].clone()),
                MultiPoly::constant(v[1].clone()),
                MultiPoly::constant(v[2].clone()),
            ],
        }
    }

    /// Random rationals `n/d`, `0 < |n| ≤ 40`, `1 ≤ d ≤ 12`, redrawn until
    /// the configuration is generic.
    pub fn random<R: Rng>(rng: &mut R) -> Parameters {
        loop {
            let mut draw = || {
                let mut n = 0;
                while n == 0 {
                    n = rng.gen_range(-40i64..=40);
                }
                let d = rng.gen_range(1i64..=12);
                Q::new(n.into(), d.into())
            };
            let p = Parameters::Specialized(vec![draw(), draw(), draw()]);
            if PointConfig::new(p.clone()).genericity().is_ok() {
                return p;
            }
        }
    }
}

/// `p_0..p_3` the coordinate simplex, `p_4 = [1:1:1:1]`,
/// `p_5 = [abc : bc : ac : ab] = [1 : 1/a : 1/b : 1/c]`.
#[derive(Clone, Debug)]
pub struct PointConfig {
    pub params: Parameters,
    pub points: Vec<Point>,
}

fn unit(i: usize) -> Point {
    std::array::from_fn(|k| if k == i { MultiPoly::one() } else { MultiPoly::zero() })
}

impl PointConfig {
    pub fn new(params: Parameters) -> PointConfig {
        let [a, b, c] = params.values();
        let mut points: Vec<Point> = (0..4).map(unit).collect();
        points.push(std::array::from_fn(|_| MultiPoly::one()));
        points.push([product([&a, &b, &c]), &b * &c, &a * &c, &a * &b]);
        PointConfig { params, points }
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// `a, b, c` distinct, nonzero, `≠ 1`, and no four of the six points
    /// coplanar.
    pub fn genericity(&self) -> Result<(), CremonaError> {
        let [a, b, c] = self.params.values();
        let one = MultiPoly::one();
        for (name, v) in [
            ("a", a.clone()),
            ("b", b.clone()),
            ("c", c.clone()),
            ("a-1", &a - &one),
            ("b-1", &b - &one),
            ("c-1", &c - &one),
            ("a-b", &a - &b),
            ("a-c", &a - &c),
            ("b-c", &b - &c),
        ] {
            if v.is_zero() {
                return Err(CremonaError::NotGeneric(format!("{name} = 0")));
            }
        }
        for i in 0..6 {
            for j in i + 1..6 {
                for k in j + 1..6 {
                    for l in k + 1..6 {
                        let m: PMatrix = [i, j, k, l].iter().map(|&t| self.points[t].to_vec()).collect();
                        if super::pmatrix::determinant(&m).is_zero() {
                            return Err(CremonaError::NotGeneric(format!(
                                "p{i}, p{j}, p{k}, p{l} coplanar"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `p_i + t·p_j`.
    pub fn line_point(&self, i: usize, j: usize, t: i64) -> Point {
        let t = MultiPoly::int(t);
        std::array::from_fn(|k| &self.points[i][k] + &(&t * &self.points[j][k]))
    }

    /// The linear form through three points, content-normalized.
    pub fn plane(&self, i: usize, j: usize, k: usize) -> Result<MultiPoly, CremonaError> {
        let rows: Vec<&Point> = vec![&self.points[i], &self.points[j], &self.points[k]];
        let mut form = MultiPoly::zero();
        for l in 0..NCOORDS {
            let minor: PMatrix = rows
                .iter()
                .map(|p| (0..NCOORDS).filter(|&m| m != l).map(|m| p[m].clone()).collect())
                .collect();
            let d = super::pmatrix::determinant(&minor);
            let t = &d * &MultiPoly::var(l);
            form = if l % 2 == 0 { &form + &t } else { &form - &t };
        }
        if form.is_zero() {
            return Err(CremonaError::Collinear(i, j, k));
        }
        Ok(form.strip_parameter_content())
    }

    pub fn plane_named(&self, name: &str) -> Result<MultiPoly, CremonaError> {
        let d: Vec<usize> = name.bytes().map(|b| (b - b'0') as usize).collect();
        self.plane(d[0], d[1], d[2])
    }
}

/// Linear conditions on forms of a fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Vanish at `p_k`.
    Point(usize),
    /// Vanish to order two at `p_k` (value and four partials).
    Double(usize),
    /// Contain the line `p_i p_j` (vanish at `p_i`, `p_j`, `p_i + p_j`).
    Line(usize, usize),
    /// Vanish to order two along the line, via six sample points.
    DoubleLine(usize, usize),
}

fn value_row(monos: &[Monomial], p: &Point) -> Vec<MultiPoly> {
    monos
        .iter()
        .map(|m| MultiPoly::term(Q::from_integer(1.into()), *m).eval_coords(p))
        .collect()
}

fn partial_rows(monos: &[Monomial], p: &Point) -> Vec<Vec<MultiPoly>> {
    (0..NCOORDS)
        .map(|v| {
            monos
                .iter()
                .map(|m| MultiPoly::term(Q::from_integer(1.into()), *m).derivative(v).eval_coords(p))
                .collect()
        })
        .collect()
}

pub fn condition_rows(cfg: &PointConfig, degree: u16, conds: &[Condition]) -> PMatrix {
    let monos = coord_monomials(degree);
    let mut rows = Vec::new();
    let double = |rows: &mut PMatrix, p: &Point| {
        rows.push(value_row(&monos, p));
        rows.extend(partial_rows(&monos, p));
    };
    for c in conds {
        match *c {
            Condition::Point(k) => rows.push(value_row(&monos, cfg.point(k))),
            Condition::Double(k) => double(&mut rows, cfg.point(k)),
            Condition::Line(i, j) => {
                rows.push(value_row(&monos, cfg.point(i)));
                rows.push(value_row(&monos, cfg.point(j)));
                rows.push(value_row(&monos, &cfg.line_point(i, j, 1)));
            }
            Condition::DoubleLine(i, j) => {
                for t in 1..=6 {
                    double(&mut rows, &cfg.line_point(i, j, t));
                }
            }
        }
    }
    rows
}

/// Polynomial with the given coefficient vector over `coord_monomials(d)`.
pub fn from_coefficients(degree: u16, coeffs: &[MultiPoly]) -> MultiPoly {
    coord_monomials(degree)
        .into_iter()
        .zip(coeffs)
        .fold(MultiPoly::zero(), |acc, (m, c)| &acc + &c.mul_monomial(m))
}

/// Coefficient vector of a coordinate-homogeneous polynomial.
pub fn coefficients(degree: u16, p: &MultiPoly) -> Vec<MultiPoly> {
    let coeffs = p.coord_coefficients();
    coord_monomials(degree)
        .into_iter()
        .map(|m| coeffs.get(&m).cloned().unwrap_or_default())
        .collect()
}

/// Dimension of the space of degree-`d` forms satisfying `conds`.
///
/// Rows free of parameters are reduced over `Q` first; the remaining rows
/// are restricted to that kernel and ranked by fraction-free elimination.
pub fn kernel_dimension(cfg: &PointConfig, degree: u16, conds: &[Condition]) -> usize {
    let rows = condition_rows(cfg, degree, conds);
    let n = coord_monomials(degree).len();
    let (constant, symbolic): (Vec<_>, Vec<_>) =
        rows.into_iter().partition(|r| r.iter().all(|e| e.is_constant()));
    let qrows: Vec<Vec<Q>> = constant
        .iter()
        .map(|r| r.iter().map(|e| e.as_constant().expect("constant")).collect())
        .collect();
    let basis = if qrows.is_empty() {
        QMatrix::identity(n).to_rows()
    } else {
        QMatrix::from_rows(&qrows).nullspace()
    };
    if symbolic.is_empty() || basis.is_empty() {
        return basis.len();
    }
    let restricted: PMatrix = symbolic
        .iter()
        .map(|r| {
            basis
                .iter()
                .map(|v| {
                    r.iter()
                        .zip(v)
                        .fold(MultiPoly::zero(), |acc, (e, c)| &acc + &e.scale(c))
                })
                .collect()
        })
        .collect();
    basis.len() - rank(&restricted)
}

/// The unique form of the given degree satisfying `conds`.
pub fn unique_form(
    cfg: &PointConfig,
    degree: u16,
    conds: &[Condition],
    what: &str,
) -> Result<MultiPoly, CremonaError> {
    let rows = condition_rows(cfg, degree, conds);
    let k = kernel_line(&rows).map_err(|dim| CremonaError::KernelDimension {
        what: what.to_string(),
        dim,
    })?;
    Ok(from_coefficients(degree, &k).strip_parameter_content())
}

/// The complement lines of the base tetrad, as point pairs.
pub const GPRIME_LINES: [(usize, usize); 4] = [(0, 2), (0, 3), (1, 2), (1, 3)];

pub fn f_conditions(i: usize) -> Vec<Condition> {
    let mut c: Vec<Condition> = (0..6).filter(|&k| k != i).map(Condition::Point).collect();
    c.extend(GPRIME_LINES.iter().map(|&(a, b)| Condition::Line(a, b)));
    c
}

pub fn h_conditions(beta: (usize, usize)) -> Vec<Condition> {
    let mut c: Vec<Condition> = (0..6).map(Condition::Point).collect();
    c.extend(GPRIME_LINES.iter().filter(|&&l| l != beta).map(|&(a, b)| Condition::Line(a, b)));
    c
}

/// The conditions defining `|D|`: double at all six points and along the
/// four complement lines.
pub fn d_conditions() -> Vec<Condition> {
    let mut c: Vec<Condition> = (0..6).map(Condition::Double).collect();
    c.extend(GPRIME_LINES.iter().map(|&(a, b)| Condition::DoubleLine(a, b)));
    c
}

/// `f_4, f_5, h_02, h_03, h_12, h_13`.
#[derive(Clone, Debug)]
pub struct Quadrics {
    pub f4: MultiPoly,
    pub f5: MultiPoly,
    pub h: BTreeMap<(usize, usize), MultiPoly>,
}

impl Quadrics {
    pub fn build(cfg: &PointConfig) -> Result<Quadrics, CremonaError> {
        let f4 = unique_form(cfg, 2, &f_conditions(4), "F_4")?;
        let f5 = unique_form(cfg, 2, &f_conditions(5), "F_5")?;
        let mut h = BTreeMap::new();
        for &l in &GPRIME_LINES {
            h.insert(l, unique_form(cfg, 2, &h_conditions(l), &format!("H_{}{}", l.0, l.1))?);
        }
        Ok(Quadrics { f4, f5, h })
    }

    pub fn h(&self, i: usize, j: usize) -> &MultiPoly {
        &self.h[&(i, j)]
    }

    /// All six with names, in a fixed order.
    pub fn named(&self) -> Vec<(String, &MultiPoly)> {
        let mut out = vec![("f4".to_string(), &self.f4), ("f5".to_string(), &self.f5)];
        for (l, q) in &self.h {
            out.push((format!("h{}{}", l.0, l.1), q));
        }
        out
    }

    /// `A = f_4 f_5 h_12 h_13 h_02 h_03`.
    pub fn a_factor(&self) -> MultiPoly {
        product([&self.f4, &self.f5, self.h(1, 2), self.h(1, 3), self.h(0, 2), self.h(0, 3)])
    }
}

/// The symmetric 4×4 matrix of a quadric and its rank.
pub fn quadric_rank(q: &MultiPoly) -> usize {
    let half = Q::new(1.into(), 2.into());
    let coeffs = q.coord_coefficients();
    let get = |i: usize, j: usize| {
        let mut e = [0u16; 7];
        e[i] += 1;
        e[j] += 1;
        let c = coeffs.get(&Monomial::from_exponents(&e)).cloned().unwrap_or_default();
        if i == j {
            c
        } else {
            c.scale(&half)
        }
    };
    let m: PMatrix = (0..4).map(|i| (0..4).map(|j| get(i, j)).collect()).collect();
    rank(&m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    S01,
    S02,
    S03,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::S01, Variant::S02, Variant::S03];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::S01 => "s01",
            Variant::S02 => "s02",
            Variant::S03 => "s03",
        };
        write!(f, "{s}")
    }
}

/// The four quintic polynomial parts of a section basis of `D`.
pub fn build_sections(
    cfg: &PointConfig,
    q: &Quadrics,
    variant: Variant,
) -> Result<[MultiPoly; 4], CremonaError> {
    let p = |s: &str| cfg.plane_named(s);
    Ok(match variant {
        Variant::S01 => [
            product([&p("023")?, q.h(0, 2), q.h(0, 3)]),
            product([&p("123")?, q.h(1, 2), q.h(1, 3)]),
            product([&p("012")?, q.h(0, 2), q.h(1, 2)]),
            product([&p("013")?, q.h(0, 3), q.h(1, 3)]),
        ],
        Variant::S02 => [
            product([&p("035")?, &q.f5, q.h(0, 3)]),
            product([&p("025")?, &q.f5, q.h(0, 2)]),
            product([&p("134")?, &q.f4, q.h(1, 3)]),
            product([&p("124")?, &q.f4, q.h(1, 2)]),
        ],
        Variant::S03 => [
            product([&p("035")?, &q.f5, q.h(0, 3)]),
            product([&p("025")?, &q.f5, q.h(0, 2)]),
            product([&p("125")?, &q.f5, q.h(1, 2)]),
            product([&p("124")?, &q.f4, q.h(1, 2)]),
        ],
    })
}

pub fn coefficient_matrix(degree: u16, polys: &[MultiPoly]) -> PMatrix {
    polys.iter().map(|p| coefficients(degree, p)).collect()
}

/// True if `p` satisfies every condition.
pub fn satisfies(cfg: &PointConfig, degree: u16, p: &MultiPoly, conds: &[Condition]) -> bool {
    let coeffs = coefficients(degree, p);
    condition_rows(cfg, degree, conds).iter().all(|row| {
        row.iter()
            .zip(&coeffs)
            .fold(MultiPoly::zero(), |acc, (r, c)| &acc + &(r * c))
            .is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn cfg() -> PointConfig {
        PointConfig::new(Parameters::Specialized(vec![q(2), q(3), q(5)]))
    }

    #[test]
    fn planes() {
        let c = cfg();
        assert_eq!(c.plane(1, 2, 3).unwrap(), MultiPoly::var(0));
        assert_eq!(c.plane(0, 2, 3).unwrap(), MultiPoly::var(1));
        let p = c.plane(0, 3, 4).unwrap();
        for k in [0, 3, 4] {
            assert!(p.eval_coords(c.point(k)).is_zero());
        }
        assert!(c.genericity().is_ok());
    }

    #[test]
    fn quadric_kernels() {
        let c = cfg();
        assert_eq!(kernel_dimension(&c, 2, &f_conditions(5)), 1);
        assert_eq!(kernel_dimension(&c, 2, &h_conditions((0, 2))), 1);
        let mut more = f_conditions(5);
        more.push(Condition::Point(5));
        assert_eq!(kernel_dimension(&c, 2, &more), 0);
        let qs = Quadrics::build(&c).unwrap();
        for (_, f) in qs.named() {
            assert!(quadric_rank(f) >= 3);
        }
    }

    #[test]
    fn linear_system_dimension() {
        let c = cfg();
        assert_eq!(kernel_dimension(&c, 5, &d_conditions()), 4);
        let qs = Quadrics::build(&c).unwrap();
        for s in build_sections(&c, &qs, Variant::S01).unwrap() {
            assert!(satisfies(&c, 5, &s, &d_conditions()));
        }
    }

    #[test]
    fn symbolic_quadric() {
        let c = PointConfig::new(Parameters::Symbolic);
        assert!(c.genericity().is_ok());
        assert_eq!(kernel_dimension(&c, 2, &f_conditions(4)), 1);
        let f4 = unique_form(&c, 2, &f_conditions(4), "F_4").unwrap();
        assert!(satisfies(&c, 2, &f4, &f_conditions(4)));
    }
}
