//! The (16,6) configuration: two-torsion labels, trope incidence, Göpel
//! tetrads, Weber hexads and the relabeling symmetries fixing `T_0`.
//!
//! Labels are the sixteen elements of the group `J(C)_2`, written `0` (also
//! `66`) or `ij` with `1 <= i < j <= 6`. Internally a label is the even
//! subset `{i, j}` of the six Weierstrass indices modulo complement, so the
//! group law is symmetric difference.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Canonical order of the sixteen labels as `(i, j)` pairs, `(6, 6)` for 0.
const CANONICAL: [(u8, u8); 16] = [
    (6, 6),
    (1, 6),
    (2, 6),
    (3, 6),
    (4, 6),
    (5, 6),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

const FULL: u8 = 0b11_1111;

fn pair_mask(i: u8, j: u8) -> u8 {
    if i == j {
        0
    } else {
        (1 << (i - 1)) | (1 << (j - 1))
    }
}

fn normalize_mask(m: u8) -> u8 {
    match m.count_ones() {
        4 | 6 => m ^ FULL,
        _ => m,
    }
}

fn index_of_mask(m: u8) -> usize {
    CANONICAL
        .iter()
        .position(|&(i, j)| pair_mask(i, j) == m)
        .expect("normalized even mask")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigurationError {
    #[error("invalid two-torsion label {0:?}")]
    BadLabel(String),
    #[error("{0} is not a Göpel tetrad of type 1")]
    NotTypeOne(String),
    #[error("not a permutation of 1..=6: {0:?}")]
    BadPermutation(Vec<u8>),
}

/// One of the sixteen two-torsion points, stored by its canonical index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoTorsionLabel(u8);

impl TwoTorsionLabel {
    pub const ZERO: TwoTorsionLabel = TwoTorsionLabel(0);

    pub fn all() -> impl Iterator<Item = TwoTorsionLabel> + Clone {
        (0..16u8).map(TwoTorsionLabel)
    }

    pub fn from_index(index: usize) -> TwoTorsionLabel {
        assert!(index < 16);
        TwoTorsionLabel(index as u8)
    }

    /// Label `ij` for Weierstrass indices in `1..=6`; `i == j` gives 0.
    pub fn pair(i: u8, j: u8) -> TwoTorsionLabel {
        assert!((1..=6).contains(&i) && (1..=6).contains(&j));
        TwoTorsionLabel(index_of_mask(pair_mask(i, j)) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The normalized pair `(i, j)`, `i < j`, or `None` for 0.
    pub fn indices(self) -> Option<(u8, u8)> {
        let (i, j) = CANONICAL[self.index()];
        (i != j).then_some((i, j))
    }

    fn mask(self) -> u8 {
        let (i, j) = CANONICAL[self.index()];
        pair_mask(i, j)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: TwoTorsionLabel) -> TwoTorsionLabel {
        TwoTorsionLabel(index_of_mask(normalize_mask(self.mask() ^ other.mask())) as u8)
    }

    /// Whether the label contains the Weierstrass index `k` (0 contains none).
    pub fn involves(self, k: u8) -> bool {
        self.indices().is_some_and(|(i, j)| i == k || j == k)
    }
}

impl fmt::Display for TwoTorsionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.indices() {
            None => write!(f, "00"),
            Some((i, j)) => write!(f, "{i}{j}"),
        }
    }
}

impl fmt::Debug for TwoTorsionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for TwoTorsionLabel {
    type Err = ConfigurationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigurationError::BadLabel(s.to_string());
        let t = s.trim();
        if t == "0" || t == "00" || t == "66" {
            return Ok(TwoTorsionLabel::ZERO);
        }
        let digits: Vec<u8> = t
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        match digits[..] {
            [i, j] if (1..=6).contains(&i) && (1..=6).contains(&j) && i != j => {
                Ok(TwoTorsionLabel::pair(i.min(j), i.max(j)))
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for TwoTorsionLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TwoTorsionLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of labels as a 16-bit mask over canonical indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelSet(u16);

impl LabelSet {
    pub fn empty() -> LabelSet {
        LabelSet(0)
    }

    pub fn from_bits(bits: u16) -> LabelSet {
        LabelSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, l: TwoTorsionLabel) -> bool {
        self.0 & (1 << l.index()) != 0
    }

    pub fn insert(&mut self, l: TwoTorsionLabel) {
        self.0 |= 1 << l.index();
    }

    pub fn intersection(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & other.0)
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn symmetric_difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = TwoTorsionLabel> {
        TwoTorsionLabel::all().filter(move |l| self.contains(*l))
    }

    pub fn translate(self, by: TwoTorsionLabel) -> LabelSet {
        self.iter().map(|l| l.add(by)).collect()
    }

    pub fn labels(self) -> Vec<TwoTorsionLabel> {
        self.iter().collect()
    }

    pub fn parse_labels(items: &[&str]) -> Result<LabelSet, ConfigurationError> {
        items.iter().map(|s| s.parse::<TwoTorsionLabel>()).collect()
    }
}

impl FromIterator<TwoTorsionLabel> for LabelSet {
    fn from_iter<I: IntoIterator<Item = TwoTorsionLabel>>(iter: I) -> Self {
        let mut s = LabelSet::empty();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for LabelSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<TwoTorsionLabel>::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

/// `I(T_beta)`: the six nodes on the trope `T_beta`.
pub fn trope_incidence(beta: TwoTorsionLabel) -> LabelSet {
    // I(T_0) = {0, 16, 26, 36, 46, 56}: the first six canonical labels.
    LabelSet(0b11_1111).translate(beta)
}

/// Type relative to the trope `T_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IncidenceType {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GopelTetrad {
    pub labels: LabelSet,
    pub kind: IncidenceType,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeberHexad {
    pub labels: LabelSet,
    pub kind: IncidenceType,
}

impl GopelTetrad {
    /// Classifies a 4-set; `None` unless it is a Göpel tetrad.
    pub fn new(labels: LabelSet) -> Option<GopelTetrad> {
        if !is_gopel(labels) {
            return None;
        }
        let kind = match labels.intersection(trope_incidence(TwoTorsionLabel::ZERO)).len() {
            2 => IncidenceType::One,
            0 => IncidenceType::Two,
            _ => return None,
        };
        Some(GopelTetrad { labels, kind })
    }

    pub fn parse(items: &[&str]) -> Result<GopelTetrad, ConfigurationError> {
        let set = LabelSet::parse_labels(items)?;
        GopelTetrad::new(set).ok_or_else(|| ConfigurationError::BadLabel(set.to_string()))
    }

    /// The base tetrad `{46, 56, 14, 15}` used for the worked example.
    pub fn base() -> GopelTetrad {
        GopelTetrad::parse(&["46", "56", "14", "15"]).expect("base tetrad")
    }
}

impl fmt::Display for GopelTetrad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels)
    }
}

impl WeberHexad {
    pub fn new(labels: LabelSet) -> Option<WeberHexad> {
        if !is_weber(labels) {
            return None;
        }
        let kind = match labels.intersection(trope_incidence(TwoTorsionLabel::ZERO)).len() {
            3 => IncidenceType::One,
            1 => IncidenceType::Two,
            _ => return None,
        };
        Some(WeberHexad { labels, kind })
    }

    pub fn parse(items: &[&str]) -> Result<WeberHexad, ConfigurationError> {
        let set = LabelSet::parse_labels(items)?;
        WeberHexad::new(set).ok_or_else(|| ConfigurationError::BadLabel(set.to_string()))
    }

    /// The dual `w'` with `w △ w' = I(T_0)`, defined for type 1.
    pub fn dual(&self) -> Option<WeberHexad> {
        if self.kind != IncidenceType::One {
            return None;
        }
        let other = self
            .labels
            .symmetric_difference(trope_incidence(TwoTorsionLabel::ZERO));
        WeberHexad::new(other).filter(|w| w.kind == IncidenceType::One)
    }
}

impl fmt::Display for WeberHexad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.labels)
    }
}

fn lies_in_some_trope(set: LabelSet) -> bool {
    TwoTorsionLabel::all().any(|b| set.is_subset(trope_incidence(b)))
}

fn subsets_of_size(set: LabelSet, k: usize) -> impl Iterator<Item = LabelSet> {
    let labels = set.labels();
    let n = labels.len();
    (0u32..(1 << n))
        .filter(move |m| m.count_ones() as usize == k)
        .map(move |m| {
            (0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| labels[i])
                .collect()
        })
}

/// No three of the four labels lie on a common trope.
pub fn is_gopel(set: LabelSet) -> bool {
    set.len() == 4 && subsets_of_size(set, 3).all(|t| !lies_in_some_trope(t))
}

/// No four of the six labels lie on a trope or form a Göpel tetrad.
pub fn is_weber(set: LabelSet) -> bool {
    set.len() == 6 && subsets_of_size(set, 4).all(|t| !lies_in_some_trope(t) && !is_gopel(t))
}

fn p(i: u8, j: u8) -> TwoTorsionLabel {
    TwoTorsionLabel::pair(i, j)
}

fn zero() -> TwoTorsionLabel {
    TwoTorsionLabel::ZERO
}

/// All orderings `(i, j, k, l, m)` of `{1, ..., 5}`.
fn orderings_of_five() -> Vec<[u8; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut cur = [1u8, 2, 3, 4, 5];
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute<const N: usize>(a: &mut [u8; N], k: usize, out: &mut Vec<[u8; N]>) {
    if k == N {
        out.push(*a);
        return;
    }
    for i in k..N {
        a.swap(k, i);
        permute(a, k + 1, out);
        a.swap(k, i);
    }
}

/// All 60 Göpel tetrads, generated from the closed-form patterns
/// `{0,i6,jk,lm}`, `{i6,j6,ik,jk}` (type 1) and `{ik,il,jk,jl}` (type 2).
pub fn enumerate_gopel() -> Vec<GopelTetrad> {
    let mut out: Vec<GopelTetrad> = Vec::new();
    for [i, j, k, l, _m] in orderings_of_five() {
        let patterns = [
            [zero(), p(i, 6), p(j, k), p(l, _m)],
            [p(i, 6), p(j, 6), p(i, k), p(j, k)],
            [p(i, k), p(i, l), p(j, k), p(j, l)],
        ];
        for pat in patterns {
            let set: LabelSet = pat.into_iter().collect();
            let g = GopelTetrad::new(set).expect("pattern yields a Göpel tetrad");
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.sort();
    out
}

/// All 192 Weber hexads from the closed-form patterns.
pub fn enumerate_weber() -> Vec<WeberHexad> {
    let mut out: Vec<WeberHexad> = Vec::new();
    for [i, j, k, l, m] in orderings_of_five() {
        let patterns = [
            [zero(), p(i, 6), p(j, 6), p(i, k), p(k, l), p(l, j)],
            [p(i, 6), p(j, 6), p(k, 6), p(i, j), p(i, l), p(j, m)],
            [zero(), p(i, j), p(j, k), p(k, l), p(l, m), p(m, i)],
            [p(i, 6), p(i, j), p(j, k), p(k, i), p(j, l), p(k, m)],
        ];
        for pat in patterns {
            let set: LabelSet = pat.into_iter().collect();
            let w = WeberHexad::new(set).expect("pattern yields a Weber hexad");
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

/// Type-1 hexads paired with their duals, each pair listed once.
pub fn weber_dual_pairs() -> Vec<(WeberHexad, WeberHexad)> {
    let mut pairs = Vec::new();
    for w in enumerate_weber() {
        if let Some(d) = w.dual() {
            if w < d {
                pairs.push((w, d));
            }
        }
    }
    pairs
}

/// The four trope indices `g'` attached to a type-1 tetrad.
pub fn gopel_complement(g: &GopelTetrad) -> Result<LabelSet, ConfigurationError> {
    if g.kind != IncidenceType::One {
        return Err(ConfigurationError::NotTypeOne(g.to_string()));
    }
    let on_t0: Vec<u8> = g
        .labels
        .iter()
        .filter(|l| l.involves(6))
        .map(|l| l.indices().unwrap().0)
        .collect();
    let off_t0: Vec<(u8, u8)> = g
        .labels
        .iter()
        .filter(|l| !l.is_zero() && !l.involves(6))
        .map(|l| l.indices().unwrap())
        .collect();
    let set = if g.labels.contains(TwoTorsionLabel::ZERO) {
        // {0, i6, jk, lm} -> {jl, jm, kl, km}
        let (j, k) = off_t0[0];
        let (l, m) = off_t0[1];
        [p(j, l), p(j, m), p(k, l), p(k, m)].into_iter().collect()
    } else {
        // {i6, j6, ik, jk} -> {l6, m6, kl, km}
        let (i, j) = (on_t0[0], on_t0[1]);
        let (a, b) = off_t0[0];
        let k = if a == i || a == j { b } else { a };
        let rest: Vec<u8> = (1..=5).filter(|&x| x != i && x != j && x != k).collect();
        let (l, m) = (rest[0], rest[1]);
        [p(l, 6), p(m, 6), p(k.min(l), k.max(l)), p(k.min(m), k.max(m))]
            .into_iter()
            .collect()
    };
    Ok(set)
}

/// The translation `α` with `z_g = φ_g ∘ t_α`: `i6` for `{0,i6,jk,lm}`
/// and `ij` for `{i6,j6,ik,jk}`.
pub fn hg_translation(g: &GopelTetrad) -> Result<TwoTorsionLabel, ConfigurationError> {
    if g.kind != IncidenceType::One {
        return Err(ConfigurationError::NotTypeOne(g.to_string()));
    }
    let on_t0: Vec<u8> = g
        .labels
        .iter()
        .filter(|l| l.involves(6))
        .map(|l| l.indices().unwrap().0)
        .collect();
    Ok(if g.labels.contains(TwoTorsionLabel::ZERO) {
        p(on_t0[0], 6)
    } else {
        p(on_t0[0], on_t0[1])
    })
}

/// The translation `α` with `z_w = φ_w ∘ σ ∘ t_α` for a type-1 hexad:
/// `ij` for `{0,i6,j6,ik,kl,lj}` and `lm` for `{i6,j6,k6,ij,il,jm}`.
pub fn keum_translation(w: &WeberHexad) -> Option<TwoTorsionLabel> {
    if w.kind != IncidenceType::One {
        return None;
    }
    let on_t0: Vec<u8> = w
        .labels
        .iter()
        .filter(|l| l.involves(6))
        .map(|l| l.indices().unwrap().0)
        .collect();
    if w.labels.contains(TwoTorsionLabel::ZERO) {
        Some(p(on_t0[0], on_t0[1]))
    } else {
        // {i6, j6, k6, ij, il, jm}: l and m are the indices outside {i,j,k}.
        let rest: Vec<u8> = (1..=5).filter(|x| !on_t0.contains(x)).collect();
        Some(p(rest[0], rest[1]))
    }
}

/// A permutation of the six Weierstrass indices, acting on the
/// configuration so that `T_0` is fixed and the node `N_{i6}` (with
/// `N_{66} = N_0`) goes to `N_{π(i)6}`.
///
/// On pair labels this is the natural relabeling followed by the
/// translation by `π(6)6`; tropes transform by the natural relabeling alone.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Relabeling {
    /// `image[i - 1] = π(i)` for `i` in `1..=6`.
    image: [u8; 6],
}

impl Relabeling {
    pub fn identity() -> Relabeling {
        Relabeling {
            image: [1, 2, 3, 4, 5, 6],
        }
    }

    pub fn new(image: [u8; 6]) -> Result<Relabeling, ConfigurationError> {
        let mut seen = [false; 7];
        for &x in &image {
            if !(1..=6).contains(&x) || seen[x as usize] {
                return Err(ConfigurationError::BadPermutation(image.to_vec()));
            }
            seen[x as usize] = true;
        }
        Ok(Relabeling { image })
    }

    /// Transposition of two Weierstrass indices.
    pub fn transposition(a: u8, b: u8) -> Relabeling {
        let mut image = [1, 2, 3, 4, 5, 6];
        image.swap((a - 1) as usize, (b - 1) as usize);
        Relabeling { image }
    }

    /// From a permutation of the six blown-up points `p_0..p_5`, with point
    /// `0` standing for Weierstrass index 6.
    pub fn from_point_permutation(points: [u8; 6]) -> Result<Relabeling, ConfigurationError> {
        let to_w = |x: u8| if x == 0 { 6 } else { x };
        let mut image = [0u8; 6];
        for (pt, &target) in points.iter().enumerate() {
            image[(to_w(pt as u8) - 1) as usize] = to_w(target);
        }
        Relabeling::new(image)
    }

    /// The induced permutation of the points `p_0..p_5`.
    pub fn point_permutation(&self) -> [u8; 6] {
        let from_w = |x: u8| if x == 6 { 0 } else { x };
        let mut out = [0u8; 6];
        for (pt, slot) in out.iter_mut().enumerate() {
            let w = if pt == 0 { 6 } else { pt as u8 };
            *slot = from_w(self.apply_index(w));
        }
        out
    }

    /// All 720 relabelings in lexicographic order of their images.
    pub fn all() -> Vec<Relabeling> {
        let mut out = Vec::with_capacity(720);
        let mut cur = [1u8, 2, 3, 4, 5, 6];
        permute(&mut cur, 0, &mut out);
        out.sort();
        out.into_iter().map(|image| Relabeling { image }).collect()
    }

    pub fn apply_index(&self, i: u8) -> u8 {
        self.image[(i - 1) as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Relabeling) -> Relabeling {
        let mut image = [0u8; 6];
        for (i, slot) in image.iter_mut().enumerate() {
            *slot = self.apply_index(other.image[i]);
        }
        Relabeling { image }
    }

    pub fn inverse(&self) -> Relabeling {
        let mut image = [0u8; 6];
        for (i, &x) in self.image.iter().enumerate() {
            image[(x - 1) as usize] = (i + 1) as u8;
        }
        Relabeling { image }
    }

    fn natural(&self, l: TwoTorsionLabel) -> TwoTorsionLabel {
        match l.indices() {
            None => l,
            Some((i, j)) => {
                let (a, b) = (self.apply_index(i), self.apply_index(j));
                p(a.min(b), a.max(b))
            }
        }
    }

    fn shift(&self) -> TwoTorsionLabel {
        p(self.apply_index(6), 6)
    }

    /// Image of a node label.
    pub fn node(&self, l: TwoTorsionLabel) -> TwoTorsionLabel {
        self.natural(l).add(self.shift())
    }

    /// Image of a trope index.
    pub fn trope(&self, l: TwoTorsionLabel) -> TwoTorsionLabel {
        self.natural(l)
    }

    pub fn nodes(&self, s: LabelSet) -> LabelSet {
        s.iter().map(|l| self.node(l)).collect()
    }

    pub fn tropes(&self, s: LabelSet) -> LabelSet {
        s.iter().map(|l| self.trope(l)).collect()
    }

    pub fn tetrad(&self, g: &GopelTetrad) -> GopelTetrad {
        GopelTetrad::new(self.nodes(g.labels)).expect("relabeling preserves Göpel tetrads")
    }

    pub fn hexad(&self, w: &WeberHexad) -> WeberHexad {
        WeberHexad::new(self.nodes(w.labels)).expect("relabeling preserves Weber hexads")
    }
}

/// Some relabeling carrying tetrad `from` onto `to`, if one exists.
pub fn relabeling_between(from: &GopelTetrad, to: &GopelTetrad) -> Option<Relabeling> {
    Relabeling::all()
        .into_iter()
        .find(|r| r.nodes(from.labels) == to.labels)
}

pub fn type_one_gopel() -> Vec<GopelTetrad> {
    enumerate_gopel()
        .into_iter()
        .filter(|g| g.kind == IncidenceType::One)
        .collect()
}

pub fn type_one_weber() -> Vec<WeberHexad> {
    enumerate_weber()
        .into_iter()
        .filter(|w| w.kind == IncidenceType::One)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> TwoTorsionLabel {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> LabelSet {
        LabelSet::parse_labels(items).unwrap()
    }

    #[test]
    fn group_law_examples() {
        assert_eq!(l("12").add(l("23")), l("13"));
        assert_eq!(l("0").add(l("46")), l("46"));
        assert_eq!(l("12").add(l("34")), l("56"));
        assert_eq!(l("16").add(l("16")), TwoTorsionLabel::ZERO);
    }

    #[test]
    fn group_axioms() {
        for a in TwoTorsionLabel::all() {
            assert_eq!(a.add(a), TwoTorsionLabel::ZERO);
            assert_eq!(a.add(TwoTorsionLabel::ZERO), a);
            for b in TwoTorsionLabel::all() {
                assert_eq!(a.add(b), b.add(a));
                for c in TwoTorsionLabel::all() {
                    assert_eq!(a.add(b).add(c), a.add(b.add(c)));
                }
            }
        }
    }

    #[test]
    fn label_text() {
        let texts: Vec<String> = TwoTorsionLabel::all().map(|x| x.to_string()).collect();
        assert_eq!(
            texts,
            [
                "00", "16", "26", "36", "46", "56", "12", "13", "14", "15", "23", "24", "25",
                "34", "35", "45"
            ]
        );
        assert_eq!(l("66"), TwoTorsionLabel::ZERO);
        assert_eq!(l("61"), l("16"));
        assert!("17".parse::<TwoTorsionLabel>().is_err());
        assert!("11".parse::<TwoTorsionLabel>().is_err());
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(trope_incidence(l("0")), set(&["0", "16", "26", "36", "46", "56"]));
        assert_eq!(trope_incidence(l("16")), set(&["0", "16", "12", "13", "14", "15"]));
        assert_eq!(trope_incidence(l("12")), set(&["16", "26", "12", "34", "35", "45"]));
    }

    #[test]
    fn incidence_display_for_pair_tropes() {
        // I(T_ij) = {i6, j6, ij} plus the pairs inside {1..5} \ {i, j}.
        for i in 1..=5u8 {
            for j in i + 1..=5 {
                let rest: Vec<u8> = (1..=5).filter(|&x| x != i && x != j).collect();
                let expected: LabelSet = [
                    p(i, 6),
                    p(j, 6),
                    p(i, j),
                    p(rest[0], rest[1]),
                    p(rest[0], rest[2]),
                    p(rest[1], rest[2]),
                ]
                .into_iter()
                .collect();
                assert_eq!(trope_incidence(p(i, j)), expected);
            }
        }
    }

    #[test]
    fn sixteen_six_configuration() {
        for b in TwoTorsionLabel::all() {
            assert_eq!(trope_incidence(b).len(), 6);
        }
        for a in TwoTorsionLabel::all() {
            let n = TwoTorsionLabel::all()
                .filter(|&b| trope_incidence(b).contains(a))
                .count();
            assert_eq!(n, 6);
        }
    }

    #[test]
    fn gopel_examples() {
        let all = enumerate_gopel();
        assert_eq!(all.len(), 60);
        let g = all
            .iter()
            .find(|g| g.labels == set(&["46", "56", "14", "15"]))
            .unwrap();
        assert_eq!(g.kind, IncidenceType::One);
        let g2 = all
            .iter()
            .find(|g| g.labels == set(&["13", "15", "23", "25"]))
            .unwrap();
        assert_eq!(g2.kind, IncidenceType::Two);
    }

    #[test]
    fn gopel_meets_tropes_in_zero_or_two() {
        for g in enumerate_gopel() {
            for b in TwoTorsionLabel::all() {
                let k = g.labels.intersection(trope_incidence(b)).len();
                assert!(k == 0 || k == 2);
            }
        }
    }

    #[test]
    fn weber_meets_tropes_in_one_or_three() {
        for w in enumerate_weber() {
            for b in TwoTorsionLabel::all() {
                let k = w.labels.intersection(trope_incidence(b)).len();
                assert!(k == 1 || k == 3, "{w} meets T_{b} in {k}");
            }
        }
    }

    #[test]
    fn dual_hexad_example() {
        let w = WeberHexad::parse(&["0", "16", "26", "13", "34", "24"]).unwrap();
        let d = w.dual().unwrap();
        assert_eq!(d.labels, set(&["36", "46", "56", "13", "34", "24"]));
        assert_eq!(d.dual().unwrap(), w);
        // {0,16,26,13,34,14} has 0, 16, 13, 14 on T_16.
        assert!(WeberHexad::parse(&["0", "16", "26", "13", "34", "14"]).is_err());
    }

    #[test]
    fn complement_examples() {
        let g = GopelTetrad::base();
        assert_eq!(gopel_complement(&g).unwrap(), set(&["26", "36", "12", "13"]));
        let g = GopelTetrad::parse(&["0", "16", "23", "45"]).unwrap();
        assert_eq!(gopel_complement(&g).unwrap(), set(&["24", "25", "34", "35"]));
        let g2 = GopelTetrad::parse(&["13", "15", "23", "25"]).unwrap();
        assert!(gopel_complement(&g2).is_err());
    }

    #[test]
    fn translations_used_by_hg_and_keum() {
        assert_eq!(hg_translation(&GopelTetrad::base()).unwrap(), l("45"));
        let g = GopelTetrad::parse(&["0", "16", "23", "45"]).unwrap();
        assert_eq!(hg_translation(&g).unwrap(), l("16"));
        let w = WeberHexad::parse(&["0", "16", "26", "13", "34", "24"]).unwrap();
        assert_eq!(keum_translation(&w).unwrap(), l("12"));
    }

    #[test]
    fn relabel_identity_and_transposition() {
        let id = Relabeling::identity();
        for a in TwoTorsionLabel::all() {
            assert_eq!(id.node(a), a);
            assert_eq!(id.trope(a), a);
        }
        let t = Relabeling::transposition(4, 5);
        let g = set(&["46", "56", "14", "15"]);
        assert_eq!(t.nodes(g), g);
    }

    #[test]
    fn relabel_fixes_t0_and_permutes_its_nodes() {
        let t0 = trope_incidence(TwoTorsionLabel::ZERO);
        for r in Relabeling::all() {
            assert_eq!(r.nodes(t0), t0);
            assert_eq!(r.trope(TwoTorsionLabel::ZERO), TwoTorsionLabel::ZERO);
            for i in 1..=6u8 {
                assert_eq!(r.node(p(i, 6)), p(r.apply_index(i), 6));
            }
        }
    }

    #[test]
    fn point_permutation_round_trip() {
        for r in Relabeling::all().into_iter().step_by(37) {
            let pts = r.point_permutation();
            assert_eq!(Relabeling::from_point_permutation(pts).unwrap(), r);
        }
    }
}
