//! Sparse multivariate polynomials over the rationals in seven variables.
//!
//! Variables `0..4` are the projective coordinates `X_0..X_3` (reused for
//! curve and surface parameters), and `4..7` are the parameters `a, b, c`.
//! Monomials are packed 16 bits per exponent into a `u128` with variable 0
//! most significant, so integer order is lexicographic order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_q, Q};

pub const NVARS: usize = 7;
pub const NCOORDS: usize = 4;
pub const A: usize = 4;
pub const B: usize = 5;
pub const C: usize = 6;

const BITS: u32 = 16;
const FIELD: u128 = 0xFFFF;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        (NVARS - 1 - var) as u32 * BITS
    }

    pub fn var(var: usize) -> Monomial {
        Monomial(1u128 << Self::shift(var))
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        let mut m = 0u128;
        for (v, &e) in exps.iter().enumerate() {
            m |= (e as u128) << Self::shift(v);
        }
        Monomial(m)
    }

    pub fn exponent(self, var: usize) -> u16 {
        ((self.0 >> Self::shift(var)) & FIELD) as u16
    }

    pub fn exponents(self) -> [u16; NVARS] {
        let mut out = [0u16; NVARS];
        for (v, slot) in out.iter_mut().enumerate() {
            *slot = self.exponent(v);
        }
        out
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..NVARS).all(|v| self.exponent(v) <= other.exponent(v))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0 - other.0)
    }

    /// Degree in the coordinate variables `0..4`.
    pub fn coord_degree(self) -> u32 {
        (0..NCOORDS).map(|v| self.exponent(v) as u32).sum()
    }

    pub fn degree(self) -> u32 {
        (0..NVARS).map(|v| self.exponent(v) as u32).sum()
    }

    /// Split into the coordinate part and the parameter part.
    pub fn split(self) -> (Monomial, Monomial) {
        let low_bits = (NVARS - NCOORDS) as u32 * BITS;
        let mask = (1u128 << low_bits) - 1;
        (Monomial(self.0 & !mask), Monomial(self.0 & mask))
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> MultiPoly {
        MultiPoly::term(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> MultiPoly {
        MultiPoly::constant(Q::from_integer(c.into()))
    }

    pub fn var(v: usize) -> MultiPoly {
        MultiPoly::term(Q::one(), Monomial::var(v))
    }

    pub fn term(c: Q, m: Monomial) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> Q {
        self.terms.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.coeff(Monomial::ONE))
        } else {
            None
        }
    }

    /// True if no coordinate variable occurs.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|m| m.coord_degree() == 0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Total degree in the coordinate variables; `None` for zero.
    pub fn coord_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.coord_degree()).max()
    }

    pub fn min_coord_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.coord_degree()).min()
    }

    pub fn is_coord_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.coord_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Terms of coordinate degree exactly `d`.
    pub fn coord_component(&self, d: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.coord_degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to the coordinate variables, as polynomials
    /// in the parameters, keyed by coordinate monomial.
    pub fn coord_coefficients(&self) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (x, p) = m.split();
            out.entry(x).or_default().terms.insert(p, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &MultiPoly, c: &Q, mono: Monomial) {
        for (m, v) in &other.terms {
            self.add_term(m.mul(mono), v * c);
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.div(Monomial::var(var)), c * Q::from_integer(e.into()));
            }
        }
        out
    }

    /// Substitutes `images[v]` for every variable `v` with `Some` image.
    pub fn substitute(&self, images: &[Option<MultiPoly>; NVARS]) -> MultiPoly {
        let mut cache: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]; NVARS];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            let mut kept = Monomial::ONE;
            for (v, image) in images.iter().enumerate() {
                let e = m.exponent(v) as usize;
                if e == 0 {
                    continue;
                }
                match image {
                    None => kept = kept.mul(Monomial(Monomial::var(v).0 * e as u128)),
                    Some(img) => {
                        while cache[v].len() <= e {
                            let next = cache[v].last().unwrap() * img;
                            cache[v].push(next);
                        }
                        t = &t * &cache[v][e];
                    }
                }
            }
            out.add_scaled(&t, &Q::one(), kept);
        }
        out
    }

    /// Substitutes polynomials for the four coordinates, keeping parameters.
    pub fn compose(&self, xs: &[MultiPoly]) -> MultiPoly {
        let mut images: [Option<MultiPoly>; NVARS] = Default::default();
        for (slot, x) in images.iter_mut().zip(xs) {
            *slot = Some(x.clone());
        }
        self.substitute(&images)
    }

    /// Specializes the parameters `a, b, c`.
    pub fn specialize(&self, params: &[Q; 3]) -> MultiPoly {
        let mut images: [Option<MultiPoly>; NVARS] = Default::default();
        for (i, p) in params.iter().enumerate() {
            images[A + i] = Some(MultiPoly::constant(p.clone()));
        }
        self.substitute(&images)
    }

    /// Evaluates the coordinate variables at a point whose entries are
    /// parameter polynomials.
    pub fn eval_coords(&self, point: &[MultiPoly]) -> MultiPoly {
        self.compose(point)
    }

    /// Exact division in `Q[vars]` under lex order; `None` if not exact.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(*m) {
                return None;
            }
            let tm = m.div(lm);
            let tc = c / &lc;
            rem.add_scaled(divisor, &-&tc, tm);
            quot.add_term(tm, tc);
        }
        Some(quot)
    }

    /// Division over the parameter fraction field: returns `(q, s)` with
    /// `s·self = q·divisor`, `s` a nonzero parameter polynomial.
    pub fn div_over_params(&self, divisor: &MultiPoly) -> Option<(MultiPoly, MultiPoly)> {
        let dcoeffs = divisor.coord_coefficients();
        let (&lx, lc) = dcoeffs.iter().next_back()?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        let mut scale = MultiPoly::one();
        loop {
            let rc = rem.coord_coefficients();
            let Some((&mx, c)) = rc.iter().next_back() else { break };
            if !lx.divides(mx) {
                return None;
            }
            let shift = mx.div(lx);
            let factor = match c.div_exact(&lc) {
                Some(f) => f,
                None => {
                    rem = &rem * &lc;
                    quot = &quot * &lc;
                    scale = &scale * &lc;
                    c.clone()
                }
            };
            let t = factor.mul_monomial(shift);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some((quot, scale))
    }

    /// `Some((λ, μ))` with `μ·self = λ·other` when the two are proportional
    /// over the parameter field, both nonzero.
    pub fn proportional(&self, other: &MultiPoly) -> Option<(MultiPoly, MultiPoly)> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let sc = self.coord_coefficients();
        let (mx, cs) = sc.iter().next_back()?;
        let co = other.coord_coefficients().get(mx).cloned()?;
        if self * &co == other * cs {
            Some((cs.clone(), co))
        } else {
            None
        }
    }

    /// Primitive part with positive leading coefficient (rational content).
    pub fn normalized(&self) -> MultiPoly {
        let Some((_, lead)) = self.leading() else {
            return MultiPoly::zero();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut s = Q::new(den_lcm, num_gcd);
        if lead.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Removes common factors among `a, b, c, a−1, …, b−c` from the
    /// coordinate coefficients. Only shrinks representatives.
    pub fn strip_parameter_content(&self) -> MultiPoly {
        let mut p = self.clone();
        if p.is_zero() || p.is_constant() {
            return p;
        }
        for f in genericity_factors() {
            loop {
                let coeffs = p.coord_coefficients();
                if coeffs.values().all(|c| c.is_constant()) {
                    return p.normalized();
                }
                match p.div_exact(&f) {
                    Some(q) if !q.is_zero() => p = q,
                    _ => break,
                }
            }
        }
        p.normalized()
    }
}

/// `a, b, c, a−1, b−1, c−1, a−b, a−c, b−c`.
pub fn genericity_factors() -> Vec<MultiPoly> {
    let (a, b, c) = (MultiPoly::var(A), MultiPoly::var(B), MultiPoly::var(C));
    let one = MultiPoly::one();
    vec![
        a.clone(),
        b.clone(),
        c.clone(),
        &a - &one,
        &b - &one,
        &c - &one,
        &a - &b,
        &a - &c,
        &b - &c,
    ]
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Monomial, Q> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(*m2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

pub fn product<'a>(factors: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    factors.into_iter().fold(MultiPoly::one(), |acc, f| &acc * f)
}

const NAMES: [&str; NVARS] = ["x0", "x1", "x2", "x3", "a", "b", "c"];

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (v, name) in NAMES.iter().enumerate() {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All coordinate monomials of degree `d` in `X_0..X_3`, lex order.
pub fn coord_monomials(d: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            for e2 in (0..=d - e0 - e1).rev() {
                out.push(Monomial::from_exponents(&[e0, e1, e2, d - e0 - e1 - e2]));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn arithmetic_and_division() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(2));
        let d = &x(0) - &x(2);
        assert_eq!(p.div_exact(&d).unwrap(), &x(0) + &x(1));
        assert!(p.div_exact(&(&x(0) + &x(3))).is_none());
        assert_eq!(p.coord_degree(), Some(2));
        assert_eq!(coord_monomials(2).len(), 10);
        assert_eq!(coord_monomials(5).len(), 56);
    }

    #[test]
    fn substitution() {
        // (x0 + x1)^2 at x0 -> x1*x2, x1 -> 1
        let p = (&x(0) + &x(1)).pow(2);
        let r = p.compose(&[&x(1) * &x(2), MultiPoly::one(), x(2), x(3)]);
        assert_eq!(r, (&(&x(1) * &x(2)) + &MultiPoly::one()).pow(2));
        let s = (&x(A) * &x(0)).specialize(&[q(3), q(0), q(0)]);
        assert_eq!(s, x(0).scale(&q(3)));
    }

    #[test]
    fn proportional_over_parameters() {
        let p = &x(0) * &x(A);
        let r = x(0).scale(&q(2));
        let (l, m) = p.proportional(&r).unwrap();
        assert_eq!(&p * &m, &r * &l);
        assert!(x(0).proportional(&x(1)).is_none());
        let (qq, s) = (&p * &(&x(1) + &x(A))).div_over_params(&(&x(1).scale(&q(2)) + &x(A).scale(&q(2)))).unwrap();
        assert_eq!(&(&p * &(&x(1) + &x(A))) * &s, &qq * &(&x(1).scale(&q(2)) + &x(A).scale(&q(2))));
    }

    #[test]
    fn normalization() {
        let p = &x(0).scale(&crate::rational::qf(-2, 3)) + &x(1).scale(&crate::rational::qf(4, 9));
        let n = p.normalized();
        assert_eq!(n, &x(0).scale(&q(3)) - &x(1).scale(&q(2)));
        let s = (&(&x(A) - &x(B)) * &x(0)).strip_parameter_content();
        assert_eq!(s, x(0));
    }
}
