//! Diagram calculus in the associated graded: TAMA diagrams (monomials in
//! the `𝖮_ij`), AMA-exterior diagrams (monomials in the `𝖫_ij` and `𝖾_k`),
//! uncrossable diagrams for `n = 4, 5`, rewriting and independence witnesses.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::gr::{gr_l, gr_o};
use crate::linalg::{sparse_integer_row, ColumnIndex, IntEchelon, RationalSolver};
use crate::monomial::MAX_DIM;
use crate::scalar::{int, ratio, Rational};
use crate::tama::{ascending_quads, sort_sign, tableau_top_symbolic};
use crate::Gr;

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j <= n);
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Chords `{i, j}` and `{k, l}` of the `n`-gon cross in the interior.
pub fn chords_interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let (i, k) = a;
    let (j, l) = b;
    (i < j && j < k && k < l) || (j < i && i < l && l < k)
}

/// Chord multiplicities `m_ij` (`i < j`) on `n` vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TamaDiagram {
    n: usize,
    m: Vec<u16>,
}

impl TamaDiagram {
    pub fn empty(n: usize) -> Result<TamaDiagram> {
        if !(2..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension { n, max: MAX_DIM });
        }
        Ok(TamaDiagram { n, m: vec![0; n * (n - 1) / 2] })
    }

    pub fn from_multiplicities(n: usize, entries: &[((usize, usize), u16)]) -> Result<TamaDiagram> {
        let mut d = TamaDiagram::empty(n)?;
        for &((i, j), k) in entries {
            d.add_chord(i, j, k)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(&self, i: usize, j: usize) -> Result<usize> {
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(Error::IndexOutOfRange { index: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::DegenerateChord(i));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Ok(pair_index(self.n, a, b))
    }

    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.slot(i, j).map_or(0, |s| self.m[s])
    }

    pub fn add_chord(&mut self, i: usize, j: usize, k: u16) -> Result<()> {
        let s = self.slot(i, j)?;
        self.m[s] += k;
        Ok(())
    }

    /// Removes one copy of the chord; `false` if it is absent.
    pub fn remove_chord(&mut self, i: usize, j: usize) -> bool {
        match self.slot(i, j) {
            Ok(s) if self.m[s] > 0 => {
                self.m[s] -= 1;
                true
            }
            _ => false,
        }
    }

    pub fn degree(&self) -> u32 {
        self.m.iter().map(|&v| v as u32).sum()
    }

    /// `(i, j, m_ij)` for the chords present, in lexicographic order.
    pub fn chords(&self) -> Vec<(usize, usize, u16)> {
        pairs(self.n).into_iter().zip(&self.m).filter(|(_, &k)| k > 0).map(|((i, j), &k)| (i, j, k)).collect()
    }

    pub fn multiply(&self, other: &TamaDiagram) -> TamaDiagram {
        assert_eq!(self.n, other.n);
        TamaDiagram { n: self.n, m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &TamaDiagram) -> bool {
        self.m.iter().zip(&other.m).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &TamaDiagram) -> TamaDiagram {
        TamaDiagram { n: self.n, m: self.m.iter().zip(&other.m).map(|(a, b)| b - a).collect() }
    }

    /// All diagrams with total multiplicity `d`, in increasing order.
    pub fn enumerate(n: usize, d: u32) -> Vec<TamaDiagram> {
        let k = n * (n - 1) / 2;
        let mut out = Vec::new();
        let mut cur = vec![0u16; k];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u16>, n: usize, out: &mut Vec<TamaDiagram>) {
            if pos == cur.len() - 1 {
                cur[pos] = left as u16;
                out.push(TamaDiagram { n, m: cur.clone() });
                cur[pos] = 0;
                return;
            }
            for v in 0..=left {
                cur[pos] = v as u16;
                rec(pos + 1, left - v, cur, n, out);
            }
            cur[pos] = 0;
        }
        if k == 0 {
            return out;
        }
        rec(0, d, &mut cur, n, &mut out);
        out.sort();
        out
    }

    /// `∏ 𝖮_ij^{m_ij}` in gr.
    pub fn to_gr(&self) -> Gr {
        let mut acc = Gr::one(self.n);
        for (i, j, k) in self.chords() {
            let o = gr_o(self.n, i, j).expect("valid chord");
            for _ in 0..k {
                acc = &acc * &o;
            }
        }
        acc
    }

    /// `∏ 𝖫_ij^{m_ij}` in gr.
    pub fn to_gr_l(&self) -> Gr {
        let mut acc = Gr::one(self.n);
        for (i, j, k) in self.chords() {
            let l = gr_l(self.n, i, j).expect("valid chord");
            for _ in 0..k {
                acc = &acc * &l;
            }
        }
        acc
    }

    fn chord_label(&self, i: usize, j: usize) -> String {
        if self.n < 10 {
            format!("{i}{j}")
        } else {
            format!("{i}.{j}")
        }
    }

    fn body(&self) -> String {
        let parts: Vec<String> = self.chords().iter().map(|&(i, j, k)| format!("{}^{k}", self.chord_label(i, j))).collect();
        parts.join(" ")
    }

    /// Whether the polygon side or diagonal `{i,j}` is a diagonal.
    pub fn is_diagonal(n: usize, i: usize, j: usize) -> bool {
        let d = i.abs_diff(j);
        d != 1 && d != n - 1
    }

    /// Total multiplicity carried by diagonals.
    pub fn diagonal_weight(&self) -> u32 {
        self.chords().iter().filter(|&&(i, j, _)| Self::is_diagonal(self.n, i, j)).map(|&(_, _, k)| k as u32).sum()
    }
}

impl fmt::Display for TamaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T[n={}]: {}", self.n, self.body())
    }
}

impl fmt::Debug for TamaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Some pair of present chords cross.
pub fn is_uncrossed(d: &TamaDiagram) -> bool {
    let present = d.chords();
    for (s, &(i, j, _)) in present.iter().enumerate() {
        for &(k, l, _) in &present[s + 1..] {
            if chords_interleave((i, j), (k, l)) {
                return false;
            }
        }
    }
    true
}

/// Uncrossed, or uncrossed after removing one copy of a single chord.
pub fn is_uncrossable(d: &TamaDiagram) -> bool {
    is_uncrossed(d) || removable_chords(d).next().is_some()
}

/// Chords whose single removal leaves an uncrossed diagram.
pub fn removable_chords(d: &TamaDiagram) -> impl Iterator<Item = (usize, usize)> + '_ {
    d.chords().into_iter().filter_map(move |(i, j, _)| {
        let mut e = d.clone();
        e.remove_chord(i, j);
        is_uncrossed(&e).then_some((i, j))
    })
}

/// `m_13 ≤ 1 or m_24 ≤ 1`.
pub fn uncrossable_closed_form_n4(d: &TamaDiagram) -> bool {
    d.get(1, 3) <= 1 || d.get(2, 4) <= 1
}

/// The five-vertex condition: at most three distinct diagonals are present,
/// and whenever `m_{i,i+2} ≥ 2` the two diagonals crossing it satisfy
/// `m_{i+1,i+3} + m_{i+1,i+4} ≤ 1` (indices mod 5).
pub fn uncrossable_closed_form_n5(d: &TamaDiagram) -> bool {
    let w = |v: usize| (v - 1) % 5 + 1;
    let diag = |i: usize, j: usize| d.get(w(i), w(j));
    let present = (1..=5).filter(|&i| diag(i, i + 2) > 0).count();
    if present > 3 {
        return false;
    }
    (1..=5).all(|i| diag(i, i + 2) < 2 || diag(i + 1, i + 3) + diag(i + 1, i + 4) <= 1)
}

/// The uncrossable diagrams of O-degree `degree` for `n ∈ {4, 5}`.
pub fn enumerate_uncrossable(n: usize, degree: u32) -> Result<Vec<TamaDiagram>> {
    if n != 4 && n != 5 {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(TamaDiagram::enumerate(n, degree).into_iter().filter(is_uncrossable).collect())
}

/// Commutative polynomial in symbols `X_ij` (`i < j`), keyed by TAMA
/// diagrams; evaluated in gr by `X_ij ↦ 𝖮_ij`.
#[derive(Clone, PartialEq, Eq)]
pub struct OPoly {
    n: usize,
    terms: BTreeMap<TamaDiagram, Rational>,
}

impl OPoly {
    pub fn zero(n: usize) -> OPoly {
        OPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> OPoly {
        OPoly::monomial(TamaDiagram::empty(n).expect("valid n"), int(1))
    }

    pub fn monomial(d: TamaDiagram, c: Rational) -> OPoly {
        let mut p = OPoly::zero(d.n);
        p.add_term(d, c);
        p
    }

    /// `X_ij`, with `X_ii = 0` and `X_ji = −X_ij`.
    pub fn x(n: usize, i: usize, j: usize) -> OPoly {
        if i == j {
            return OPoly::zero(n);
        }
        let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let d = TamaDiagram::from_multiplicities(n, &[((a, b), 1)]).expect("valid chord");
        OPoly::monomial(d, int(s))
    }

    /// `c · X_{i1 j1} ⋯ X_{ik jk}` with arbitrary orientations.
    pub fn product(n: usize, c: Rational, factors: &[(usize, usize)]) -> OPoly {
        factors.iter().fold(OPoly::monomial(TamaDiagram::empty(n).expect("valid n"), c), |acc, &(i, j)| &acc * &OPoly::x(n, i, j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TamaDiagram, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TamaDiagram) -> Rational {
        self.terms.get(d).cloned().unwrap_or_else(|| int(0))
    }

    pub fn add_term(&mut self, d: TamaDiagram, c: Rational) {
        if c == int(0) {
            return;
        }
        let e = self.terms.entry(d.clone()).or_insert_with(|| int(0));
        *e += c;
        if *e == int(0) {
            self.terms.remove(&d);
        }
    }

    pub fn scale(&self, c: &Rational) -> OPoly {
        let mut out = OPoly::zero(self.n);
        for (d, v) in &self.terms {
            out.add_term(d.clone(), v * c);
        }
        out
    }

    pub fn to_gr(&self) -> Gr {
        let mut out = Gr::zero(self.n);
        for (d, c) in &self.terms {
            out += &d.to_gr().scale(c);
        }
        out
    }

    /// The monomial that is largest for `(diagonal weight, diagram)`.
    pub fn leading(&self) -> Option<(&TamaDiagram, &Rational)> {
        self.terms.iter().max_by(|a, b| monomial_order(a.0, b.0))
    }
}

/// Order used for rewriting: diagonal weight first, then the diagram order.
pub fn monomial_order(a: &TamaDiagram, b: &TamaDiagram) -> std::cmp::Ordering {
    a.diagonal_weight().cmp(&b.diagonal_weight()).then_with(|| a.cmp(b))
}

impl fmt::Display for OPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let body: Vec<String> = d
                    .chords()
                    .iter()
                    .map(|&(i, j, k)| if k == 1 { format!("O{}", d.chord_label(i, j)) } else { format!("O{}^{k}", d.chord_label(i, j)) })
                    .collect();
                if body.is_empty() {
                    format!("{}/{}", c.numer(), c.denom())
                } else {
                    format!("{}/{} * {}", c.numer(), c.denom(), body.join(" "))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for OPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add for &'a OPoly {
    type Output = OPoly;
    fn add(self, rhs: Self) -> OPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub for &'a OPoly {
    type Output = OPoly;
    fn sub(self, rhs: Self) -> OPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Neg for &'a OPoly {
    type Output = OPoly;
    fn neg(self) -> OPoly {
        self.scale(&int(-1))
    }
}

impl<'a> Mul for &'a OPoly {
    type Output = OPoly;
    fn mul(self, rhs: Self) -> OPoly {
        let mut out = OPoly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.multiply(b), ca * cb);
            }
        }
        out
    }
}

impl AddAssign<&OPoly> for OPoly {
    fn add_assign(&mut self, rhs: &OPoly) {
        for (d, c) in &rhs.terms {
            self.add_term(d.clone(), c.clone());
        }
    }
}

impl SubAssign<&OPoly> for OPoly {
    fn sub_assign(&mut self, rhs: &OPoly) {
        for (d, c) in &rhs.terms {
            self.add_term(d.clone(), -c.clone());
        }
    }
}

/// `∏ 𝖫_ij^{n_ij} ∏ 𝖾_k^{γ_k}`: chord multiplicities plus black vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmaExtDiagram {
    pub chords: TamaDiagram,
    pub black: u16,
}

impl AmaExtDiagram {
    pub fn new(chords: TamaDiagram, black: &[usize]) -> Result<AmaExtDiagram> {
        let mut mask = 0u16;
        for &k in black {
            if k == 0 || k > chords.n {
                return Err(Error::IndexOutOfRange { index: k, n: chords.n });
            }
            mask |= 1 << (k - 1);
        }
        Ok(AmaExtDiagram { chords, black: mask })
    }

    pub fn n(&self) -> usize {
        self.chords.n
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (1..=self.n()).filter(|k| self.black & (1 << (k - 1)) != 0).collect()
    }

    /// `∏ 𝖫_ij^{n_ij} · 𝖾_{k_1} ∧ ⋯` with black vertices ascending.
    pub fn to_gr(&self) -> Gr {
        let n = self.n();
        let mut acc = self.chords.to_gr_l();
        for k in self.black_vertices() {
            acc = &acc * &Gr::e(n, k);
        }
        acc
    }
}

impl fmt::Display for AmaExtDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let black: Vec<String> = self.black_vertices().iter().map(|k| k.to_string()).collect();
        write!(f, "AE[n={}]: {} | black={{{}}}", self.n(), self.chords.body(), black.join(","))
    }
}

impl fmt::Debug for AmaExtDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Expands `𝖫`-monomials onto uncrossed ones with the Plücker rule
/// `𝖫_ik 𝖫_jl = 𝖫_ij 𝖫_kl + 𝖫_il 𝖫_jk` (`i < j < k < l`), memoised.
#[derive(Default)]
pub struct AmaExtExpander {
    cache: HashMap<TamaDiagram, Vec<(TamaDiagram, Rational)>>,
}

impl AmaExtExpander {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uncross_l(&mut self, d: &TamaDiagram) -> Vec<(TamaDiagram, Rational)> {
        if let Some(v) = self.cache.get(d) {
            return v.clone();
        }
        let result = match first_crossing(d) {
            None => vec![(d.clone(), int(1))],
            Some(((i, k), (j, l))) => {
                let mut acc: BTreeMap<TamaDiagram, Rational> = BTreeMap::new();
                for (a, b) in [((i, j), (k, l)), ((i, l), (j, k))] {
                    let mut e = d.clone();
                    e.remove_chord(i, k);
                    e.remove_chord(j, l);
                    e.add_chord(a.0, a.1, 1).expect("valid chord");
                    e.add_chord(b.0, b.1, 1).expect("valid chord");
                    for (f, c) in self.uncross_l(&e) {
                        *acc.entry(f).or_insert_with(|| int(0)) += c;
                    }
                }
                acc.into_iter().filter(|(_, c)| *c != int(0)).collect()
            }
        };
        self.cache.insert(d.clone(), result.clone());
        result
    }

    /// Coordinates of `u` (evaluated in gr) on uncrossed AMA-exterior
    /// diagrams.
    pub fn expand(&mut self, u: &OPoly) -> BTreeMap<AmaExtDiagram, Rational> {
        let mut out: BTreeMap<AmaExtDiagram, Rational> = BTreeMap::new();
        for (d, c) in u.terms() {
            let present = d.chords();
            let k = present.len();
            for choice in 0u32..(1 << k) {
                let mut mask = 0u16;
                let mut seq = Vec::new();
                let mut coef = c.clone();
                let mut rest = d.clone();
                let mut ok = true;
                for (s, &(i, j, m)) in present.iter().enumerate() {
                    if choice & (1 << s) == 0 {
                        continue;
                    }
                    let bits = (1u16 << (i - 1)) | (1u16 << (j - 1));
                    if mask & bits != 0 {
                        ok = false;
                        break;
                    }
                    mask |= bits;
                    seq.push(i);
                    seq.push(j);
                    coef = coef * int(m as i64) * ratio(1, 2);
                    rest.remove_chord(i, j);
                }
                if !ok {
                    continue;
                }
                coef = coef * int(sort_sign(&seq));
                for (l, t) in self.uncross_l(&rest) {
                    let key = AmaExtDiagram { chords: l, black: mask };
                    let e = out.entry(key).or_insert_with(|| int(0));
                    *e += &coef * &t;
                }
            }
        }
        out.retain(|_, v| *v != int(0));
        out
    }
}

fn first_crossing(d: &TamaDiagram) -> Option<((usize, usize), (usize, usize))> {
    let present = d.chords();
    for (s, &(i, k, _)) in present.iter().enumerate() {
        for &(j, l, _) in &present[s + 1..] {
            if i < j && j < k && k < l {
                return Some(((i, k), (j, l)));
            }
        }
    }
    None
}

/// One-shot form of [`AmaExtExpander::expand`].
pub fn expand_to_ama_ext(u: &OPoly) -> BTreeMap<AmaExtDiagram, Rational> {
    AmaExtExpander::new().expand(u)
}

/// All uncrossed `𝖫`-diagrams with `p` chords.
pub fn enumerate_uncrossed(n: usize, p: u32) -> Vec<TamaDiagram> {
    TamaDiagram::enumerate(n, p).into_iter().filter(is_uncrossed).collect()
}

/// Independent route to the same coordinates: evaluate `u` in gr and solve
/// against the gr images of all uncrossed AMA-exterior diagrams of the
/// matching degree. `None` if `u` is not homogeneous or not in their span.
pub fn expand_to_ama_ext_by_solving(u: &OPoly) -> Option<BTreeMap<AmaExtDiagram, Rational>> {
    let n = u.n();
    let g = u.to_gr();
    if g.is_zero() {
        return Some(BTreeMap::new());
    }
    if !g.is_homogeneous() {
        return None;
    }
    let deg = g.degree()? as usize;
    let mut basis = Vec::new();
    for mask in 0u16..(1 << n) {
        let b = mask.count_ones() as usize;
        if b > deg || (deg - b) % 2 == 1 {
            continue;
        }
        for l in enumerate_uncrossed(n, ((deg - b) / 2) as u32) {
            basis.push(AmaExtDiagram { chords: l, black: mask });
        }
    }
    let mut cols = ColumnIndex::new();
    let mut solver = RationalSolver::new();
    for ae in &basis {
        let row: Vec<(usize, Rational)> = ae.to_gr().terms().map(|(m, c)| (cols.index(m), c.clone())).collect();
        solver.insert(&row);
    }
    let mut target = Vec::new();
    for (m, c) in g.terms() {
        target.push((cols.get(m)?, c.clone()));
    }
    let combo = solver.express(&target)?;
    Some(combo.into_iter().filter(|(_, c)| *c != int(0)).map(|(id, c)| (basis[id].clone(), c)).collect())
}

/// The AMA-exterior diagram with the chords of `D − (i,j)` and exactly `i`,
/// `j` black.
pub fn witness_diagram(d: &TamaDiagram, removable: (usize, usize)) -> Result<AmaExtDiagram> {
    if !is_uncrossable(d) {
        return Err(Error::NotUncrossable);
    }
    let (i, j) = removable;
    let mut rest = d.clone();
    if !rest.remove_chord(i, j) || !is_uncrossed(&rest) {
        return Err(Error::BadRemovableChord(i, j));
    }
    AmaExtDiagram::new(rest, &[i, j])
}

/// Kind of a derived rewrite rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    /// `A = B`: the square of a four-vertex Pfaffian.
    DoubleCross,
    /// `|A ∩ B| = 3` with the common vertices consecutive mod 5.
    A,
    /// `|A ∩ B| = 3`, common vertices not consecutive.
    Star,
    Other,
}

/// `pattern = replacement` in gr, read off from the top part of the
/// tableau relation for `(a, b)`.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    pub kind: RuleKind,
    pub source: ([usize; 4], [usize; 4]),
    pub pattern: TamaDiagram,
    pub replacement: OPoly,
    /// The top part of the tableau relation the rule was derived from.
    pub relation: OPoly,
}

impl RewriteRule {
    /// `relation = c · (pattern − replacement)` for the pattern coefficient
    /// `c`, and the relation vanishes in gr.
    pub fn certify(&self) -> bool {
        let c = self.relation.coeff(&self.pattern);
        let lhs = &OPoly::monomial(self.pattern.clone(), int(1)) - &self.replacement;
        c != int(0) && lhs.scale(&c) == self.relation && self.relation.to_gr().is_zero()
    }

    /// The relation normalised so the pattern has coefficient 1.
    pub fn normalised(&self) -> OPoly {
        &OPoly::monomial(self.pattern.clone(), int(1)) - &self.replacement
    }
}

fn classify(n: usize, a: &[usize; 4], b: &[usize; 4]) -> RuleKind {
    if a == b {
        return RuleKind::DoubleCross;
    }
    let common: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    if common.len() != 3 || n != 5 {
        return RuleKind::Other;
    }
    let consecutive = (1..=5).any(|s| (0..3).all(|t| common.contains(&((s + t - 1) % 5 + 1))));
    if consecutive {
        RuleKind::A
    } else {
        RuleKind::Star
    }
}

/// Rewrite rules from all tableau relations on ascending 4-subsets
/// `A ≤ B` of `1..=n` with nonzero top part. Each pattern is the strict
/// leading monomial of its relation.
pub fn derive_rules(n: usize) -> Result<Vec<RewriteRule>> {
    if n != 4 && n != 5 {
        return Err(Error::UnsupportedDimension(n));
    }
    let quads = ascending_quads(n);
    let mut rules = Vec::new();
    for (x, a) in quads.iter().enumerate() {
        for b in &quads[x..] {
            let rel = tableau_top_symbolic(n, *a, *b);
            if rel.is_zero() {
                continue;
            }
            let (lead, c) = rel.leading().map(|(d, c)| (d.clone(), c.clone())).expect("nonzero");
            let w = lead.diagonal_weight();
            let ties = rel.terms().filter(|(d, _)| d.diagonal_weight() == w).count();
            if ties != 1 {
                return Err(Error::InvalidSequence { seq: a.iter().chain(b).copied().collect(), reason: "leading term is not unique" });
            }
            let mut replacement = rel.scale(&(-int(1) / c.clone()));
            replacement.add_term(lead.clone(), int(1));
            rules.push(RewriteRule { kind: classify(n, a, b), source: (*a, *b), pattern: lead, replacement, relation: rel });
        }
    }
    rules.sort_by(|x, y| x.kind.cmp(&y.kind).then_with(|| x.source.cmp(&y.source)));
    Ok(rules)
}

/// Number of pattern occurrences in a monomial, `Σ_rules ∏_c C(m_c, p_c)`.
pub fn pattern_count(rules: &[RewriteRule], d: &TamaDiagram) -> u64 {
    let mut total = 0u64;
    for r in rules {
        let mut occ = 1u64;
        for (i, j, p) in r.pattern.chords() {
            occ *= binom(d.get(i, j) as u64, p as u64);
        }
        total += occ;
    }
    total
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// One rewrite step, for auditing.
#[derive(Debug, Clone)]
pub struct RewriteStep {
    pub monomial: TamaDiagram,
    pub rule: usize,
    pub measure_before: u64,
    pub measure_after_max: u64,
}

#[derive(Debug, Clone)]
pub struct RewriteOutcome {
    pub result: OPoly,
    pub steps: Vec<RewriteStep>,
}

/// Rewrites onto uncrossable monomials by repeatedly replacing the largest
/// monomial (diagonal weight, then diagram order) divisible by a rule
/// pattern, trying rules in their derived order.
pub fn rewrite_to_uncrossable(u: &OPoly, rules: &[RewriteRule], max_steps: usize) -> Result<RewriteOutcome> {
    let n = u.n();
    if n != 4 && n != 5 {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut work = u.clone();
    let mut done = OPoly::zero(n);
    let mut steps = Vec::new();
    loop {
        let Some((m, c)) = work.leading().map(|(d, c)| (d.clone(), c.clone())) else { break };
        work.add_term(m.clone(), -c.clone());
        let Some(idx) = rules.iter().position(|r| r.pattern.divides(&m)) else {
            done.add_term(m, c);
            continue;
        };
        if steps.len() >= max_steps {
            return Err(Error::RewriteBudget(max_steps));
        }
        let rule = &rules[idx];
        let cof = rule.pattern.quotient_of(&m);
        let repl = &OPoly::monomial(cof, c) * &rule.replacement;
        let before = pattern_count(rules, &m);
        let after = repl.terms().map(|(d, _)| pattern_count(rules, d)).max().unwrap_or(0);
        steps.push(RewriteStep { monomial: m, rule: idx, measure_before: before, measure_after_max: after });
        work += &repl;
    }
    Ok(RewriteOutcome { result: done, steps })
}

/// Default step budget for [`rewrite_to_uncrossable`].
pub const DEFAULT_REWRITE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub n: usize,
    pub degree: u32,
    pub monomials: usize,
    pub uncrossable: usize,
    /// Monomials whose rewrite landed on uncrossable support with equal
    /// AMA-exterior expansion.
    pub spanning_ok: usize,
    /// Uncrossable diagrams with a witness found in no other uncrossable
    /// diagram's support.
    pub witnessed: usize,
    /// Diagrams whose first removable chord (lexicographic) already gives
    /// a unique witness.
    pub witnessed_first_choice: usize,
    /// Exact rank of the AMA-exterior expansions of the uncrossable diagrams.
    pub expansion_rank: usize,
    pub rewrite_steps: usize,
    /// Steps where some output monomial did not have a smaller pattern count.
    pub measure_violations: usize,
}

impl BasisReport {
    pub fn spanning(&self) -> bool {
        self.spanning_ok == self.monomials
    }

    pub fn independent(&self) -> bool {
        self.witnessed == self.uncrossable
    }

    pub fn passed(&self) -> bool {
        self.spanning() && self.independent()
    }
}

/// Spanning and independence certificate for one O-degree slice.
pub fn independence_and_spanning_report(n: usize, degree: u32, rules: &[RewriteRule]) -> Result<BasisReport> {
    if n != 4 && n != 5 {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut exp = AmaExtExpander::new();
    let all = TamaDiagram::enumerate(n, degree);
    let mut spanning_ok = 0;
    let mut steps = 0;
    let mut violations = 0;
    for d in &all {
        let input = OPoly::monomial(d.clone(), int(1));
        let out = rewrite_to_uncrossable(&input, rules, DEFAULT_REWRITE_BUDGET)?;
        steps += out.steps.len();
        violations += out.steps.iter().filter(|s| s.measure_after_max >= s.measure_before).count();
        let support_ok = out.result.terms().all(|(m, _)| is_uncrossable(m));
        if support_ok && exp.expand(&input) == exp.expand(&out.result) {
            spanning_ok += 1;
        }
    }
    let unc: Vec<TamaDiagram> = all.iter().filter(|d| is_uncrossable(d)).cloned().collect();
    let supports: Vec<BTreeMap<AmaExtDiagram, Rational>> = unc.iter().map(|d| exp.expand(&OPoly::monomial(d.clone(), int(1)))).collect();
    let mut owners: HashMap<AmaExtDiagram, usize> = HashMap::new();
    for s in &supports {
        for k in s.keys() {
            *owners.entry(k.clone()).or_insert(0) += 1;
        }
    }
    let mut witnessed = 0;
    let mut first_choice = 0;
    for (d, s) in unc.iter().zip(&supports) {
        let candidates: Vec<AmaExtDiagram> = removable_chords(d).filter_map(|c| witness_diagram(d, c).ok()).collect();
        let unique = |w: &AmaExtDiagram| s.contains_key(w) && owners.get(w) == Some(&1);
        if candidates.iter().any(unique) {
            witnessed += 1;
        }
        if candidates.first().is_some_and(unique) {
            first_choice += 1;
        }
    }
    let mut cols = ColumnIndex::new();
    let mut ech = IntEchelon::new();
    for s in &supports {
        let row: Vec<(usize, Rational)> = s.iter().map(|(k, c)| (cols.index(k), c.clone())).collect();
        ech.insert(sparse_integer_row(&row));
    }
    Ok(BasisReport {
        n,
        degree,
        monomials: all.len(),
        uncrossable: unc.len(),
        spanning_ok,
        witnessed,
        witnessed_first_choice: first_choice,
        expansion_rank: ech.rank(),
        rewrite_steps: steps,
        measure_violations: violations,
    })
}

/// The relations as printed, written as `lhs − rhs` in the `X_ij`.
pub mod printed {
    use super::*;

    fn poly(n: usize, terms: &[(i64, &[(usize, usize)])]) -> OPoly {
        let mut out = OPoly::zero(n);
        for (c, f) in terms {
            out += &OPoly::product(n, int(*c), f);
        }
        out
    }

    /// `(𝖮12𝖮34 − 𝖮13𝖮42 + 𝖮14𝖮32)²`.
    pub fn double_crossing() -> OPoly {
        let base = poly(4, &[(1, &[(1, 2), (3, 4)]), (-1, &[(1, 3), (4, 2)]), (1, &[(1, 4), (3, 2)])]);
        &base * &base
    }

    /// `−𝖮13𝖮24²𝖮35 − (right-hand side)`.
    pub fn a_relation() -> OPoly {
        let lhs = poly(5, &[(-1, &[(1, 3), (2, 4), (2, 4), (3, 5)])]);
        let rhs = poly(
            5,
            &[
                (1, &[(1, 2), (2, 3), (3, 4), (4, 5)]),
                (1, &[(1, 2), (2, 4), (3, 4), (3, 5)]),
                (-1, &[(1, 2), (2, 5), (3, 4), (3, 4)]),
                (1, &[(1, 3), (2, 3), (2, 4), (4, 5)]),
                (1, &[(1, 3), (2, 4), (2, 5), (4, 3)]),
                (-1, &[(1, 4), (2, 3), (2, 3), (4, 5)]),
                (1, &[(1, 4), (2, 3), (2, 4), (3, 5)]),
                (1, &[(1, 4), (2, 3), (2, 5), (4, 3)]),
            ],
        );
        &lhs - &rhs
    }

    /// `−𝖮13𝖮14𝖮24𝖮35 − (right-hand side)`.
    pub fn star_relation() -> OPoly {
        let lhs = poly(5, &[(-1, &[(1, 3), (1, 4), (2, 4), (3, 5)])]);
        let rhs = poly(
            5,
            &[
                (1, &[(1, 2), (1, 3), (3, 4), (4, 5)]),
                (1, &[(1, 2), (1, 4), (3, 4), (3, 5)]),
                (-1, &[(1, 2), (1, 5), (3, 4), (3, 4)]),
                (1, &[(1, 3), (1, 3), (2, 4), (4, 5)]),
                (1, &[(1, 3), (1, 5), (2, 4), (4, 3)]),
                (-1, &[(1, 4), (1, 3), (2, 4), (4, 5)]),
                (1, &[(1, 4), (2, 3), (1, 4), (3, 5)]),
                (1, &[(1, 4), (1, 5), (2, 3), (4, 3)]),
            ],
        );
        &lhs - &rhs
    }
}

/// Comparison of a printed relation with the derived one, both normalised so
/// that the shared pattern has coefficient 1.
#[derive(Debug, Clone)]
pub struct RelationDiff {
    pub name: &'static str,
    pub printed: OPoly,
    pub derived: OPoly,
    /// `printed − derived` after normalisation.
    pub difference: OPoly,
    pub printed_vanishes_in_gr: bool,
    pub derived_vanishes_in_gr: bool,
}

fn normalise_on(p: &OPoly, pattern: &TamaDiagram) -> OPoly {
    let c = p.coeff(pattern);
    if c == int(0) {
        p.clone()
    } else {
        p.scale(&(int(1) / c))
    }
}

pub fn printed_vs_derived() -> Result<Vec<RelationDiff>> {
    let mut out = Vec::new();
    let cases: [(&'static str, usize, OPoly, [usize; 4], [usize; 4]); 3] = [
        ("double-crossing", 4, printed::double_crossing(), [1, 2, 3, 4], [1, 2, 3, 4]),
        ("A", 5, printed::a_relation(), [1, 2, 3, 4], [2, 3, 4, 5]),
        ("uncapped-star", 5, printed::star_relation(), [1, 2, 3, 4], [1, 3, 4, 5]),
    ];
    for (name, n, printed, a, b) in cases {
        let derived_raw = tableau_top_symbolic(n, a, b);
        let pattern = derived_raw.leading().map(|(d, _)| d.clone()).ok_or(Error::ZeroElement)?;
        let derived = normalise_on(&derived_raw, &pattern);
        let printed = normalise_on(&printed, &pattern);
        let difference = &printed - &derived;
        out.push(RelationDiff {
            name,
            printed_vanishes_in_gr: printed.to_gr().is_zero(),
            derived_vanishes_in_gr: derived.to_gr().is_zero(),
            printed,
            derived,
            difference,
        });
    }
    Ok(out)
}

/// Coefficients of `𝖮13² 𝖮24` on uncrossed AMA-exterior diagrams, in the
/// order of [`figure6_printed`].
pub fn figure6_support() -> Vec<AmaExtDiagram> {
    let t = |e: &[((usize, usize), u16)]| TamaDiagram::from_multiplicities(4, e).expect("valid");
    vec![
        AmaExtDiagram::new(t(&[((1, 2), 1), ((1, 3), 1), ((3, 4), 1)]), &[]).unwrap(),
        AmaExtDiagram::new(t(&[((1, 3), 1), ((1, 4), 1), ((2, 3), 1)]), &[]).unwrap(),
        AmaExtDiagram::new(t(&[((1, 3), 2)]), &[2, 4]).unwrap(),
        AmaExtDiagram::new(t(&[((1, 2), 1), ((3, 4), 1)]), &[1, 3]).unwrap(),
        AmaExtDiagram::new(t(&[((1, 4), 1), ((2, 3), 1)]), &[1, 3]).unwrap(),
        AmaExtDiagram::new(t(&[((1, 3), 1)]), &[1, 2, 3, 4]).unwrap(),
    ]
}

/// Reference coefficients for the diagrams of [`figure6_support`], in order.
pub fn figure6_printed() -> Vec<Rational> {
    vec![int(-1), int(-1), ratio(-1, 2), ratio(-1, 2), ratio(1, 2), ratio(1, 4)]
}

/// Chords in `D` that cross some other chord of `D`.
pub fn crossing_pairs(d: &TamaDiagram) -> BTreeSet<((usize, usize), (usize, usize))> {
    let present = d.chords();
    let mut out = BTreeSet::new();
    for (s, &(i, j, _)) in present.iter().enumerate() {
        for &(k, l, _) in &present[s + 1..] {
            if chords_interleave((i, j), (k, l)) {
                out.insert(((i, j), (k, l)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, e: &[((usize, usize), u16)]) -> TamaDiagram {
        TamaDiagram::from_multiplicities(n, e).unwrap()
    }

    #[test]
    fn text_forms() {
        let d = t(4, &[((1, 3), 2), ((2, 4), 1)]);
        assert_eq!(d.to_string(), "T[n=4]: 13^2 24^1");
        let ae = AmaExtDiagram::new(t(4, &[((1, 3), 2)]), &[2, 4]).unwrap();
        assert_eq!(ae.to_string(), "AE[n=4]: 13^2 | black={2,4}");
    }

    #[test]
    fn uncrossable_examples() {
        assert!(!is_uncrossable(&t(4, &[((1, 3), 2), ((2, 4), 2)])));
        assert!(is_uncrossable(&t(4, &[((1, 3), 2), ((2, 4), 1)])));
        assert!(!is_uncrossable(&t(5, &[((1, 3), 1), ((2, 4), 2), ((3, 5), 1)])));
        assert!(is_uncrossable(&t(4, &[((1, 3), 1), ((2, 4), 1)])));
        assert!(!is_uncrossed(&t(4, &[((1, 3), 1), ((2, 4), 1)])));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_uncrossable(4, 1).unwrap().len(), 6);
        assert_eq!(enumerate_uncrossable(4, 2).unwrap().len(), 21);
        assert!(matches!(enumerate_uncrossable(6, 1), Err(Error::UnsupportedDimension(6))));
    }

    #[test]
    fn single_o_expansion() {
        let e = expand_to_ama_ext(&OPoly::x(4, 1, 2));
        let l12 = AmaExtDiagram::new(t(4, &[((1, 2), 1)]), &[]).unwrap();
        let black = AmaExtDiagram::new(TamaDiagram::empty(4).unwrap(), &[1, 2]).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[&l12], int(1));
        assert_eq!(e[&black], ratio(1, 2));
    }

    #[test]
    fn witness_examples() {
        let d = t(4, &[((1, 3), 2), ((2, 4), 1)]);
        assert_eq!(witness_diagram(&d, (1, 3)), Err(Error::BadRemovableChord(1, 3)));
        let w = witness_diagram(&d, (2, 4)).unwrap();
        assert_eq!(w.to_string(), "AE[n=4]: 13^2 | black={2,4}");
        assert_eq!(witness_diagram(&t(4, &[((1, 3), 2), ((2, 4), 2)]), (1, 3)), Err(Error::NotUncrossable));
    }

    #[test]
    fn n4_has_one_rule() {
        let rules = derive_rules(4).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].pattern, t(4, &[((1, 3), 2), ((2, 4), 2)]));
        assert!(rules[0].certify());
    }
}
