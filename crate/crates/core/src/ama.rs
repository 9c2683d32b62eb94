//! The angular momentum algebra: `L_ij`, chord diagrams, the non-crossing
//! basis and the uncrossing rewriter.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::gr::{leading_part, GrElement};
use crate::linalg::RationalSolver;
use crate::monomial::Monomial;
use crate::scalar::{int, Rational};
use crate::{Gr, Wc};

/// Oriented chord `i → j` on the `n`-gon, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub i: usize,
    pub j: usize,
}

impl Chord {
    pub fn new(i: usize, j: usize) -> Result<Chord> {
        if i == j {
            return Err(Error::DegenerateChord(i));
        }
        Ok(Chord { i, j })
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn reversed(&self) -> Chord {
        Chord { i: self.j, j: self.i }
    }

    /// The positive representative and whether the orientation flipped.
    pub fn normalised(&self) -> (Chord, bool) {
        if self.is_positive() {
            (*self, false)
        } else {
            (self.reversed(), true)
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        for v in [self.i, self.j] {
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Chords `(i,k)` and `(j,l)` cross when `i < j < k < l` (after sorting the
/// pair lexicographically).
pub fn chords_cross(a: &Chord, b: &Chord) -> bool {
    let (s, t) = if a <= b { (a, b) } else { (b, a) };
    s.i < t.i && t.i < s.j && t.j > s.j
}

/// An arbitrary finite sequence of chords, in product order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordWord {
    pub n: usize,
    pub chords: Vec<Chord>,
}

impl ChordWord {
    pub fn new(n: usize, chords: Vec<Chord>) -> Result<ChordWord> {
        for c in &chords {
            c.check(n)?;
        }
        Ok(ChordWord { n, chords })
    }
}

/// A weakly ⪯-sorted chord sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: usize,
    chords: Vec<Chord>,
}

impl Diagram {
    /// Sorts the chords; orientation is kept.
    pub fn new(n: usize, mut chords: Vec<Chord>) -> Result<Diagram> {
        for c in &chords {
            c.check(n)?;
        }
        chords.sort();
        Ok(Diagram { n, chords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn initial(&self) -> Vec<usize> {
        self.chords.iter().map(|c| c.i).collect()
    }

    pub fn terminal(&self) -> Vec<usize> {
        self.chords.iter().map(|c| c.j).collect()
    }

    pub fn to_word(&self) -> ChordWord {
        ChordWord { n: self.n, chords: self.chords.clone() }
    }
}

impl Ord for Diagram {
    /// Shorter diagrams first, then lexicographic on the chord sequence.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.chords.len().cmp(&other.chords.len()).then_with(|| self.chords.cmp(&other.chords))
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[n={}]: ", self.n)?;
        for c in &self.chords {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L_ij = x_i y_j − x_j y_i`.
pub fn l_of_chord(n: usize, c: Chord) -> Result<Wc> {
    c.check(n)?;
    if c.i == c.j {
        return Err(Error::DegenerateChord(c.i));
    }
    let mut a = Monomial::ONE;
    a.x[c.i - 1] = 1;
    a.y[c.j - 1] = 1;
    let mut b = Monomial::ONE;
    b.x[c.j - 1] = 1;
    b.y[c.i - 1] = 1;
    Ok(Wc::from_terms(n, [(a, int(1)), (b, int(-1))]))
}

/// `L_ij` from indices; `L_ii` is rejected.
pub fn l(n: usize, i: usize, j: usize) -> Result<Wc> {
    l_of_chord(n, Chord::new(i, j)?)
}

/// Ordered product `L_{c_1} ⋯ L_{c_p}`.
pub fn l_of_word(word: &ChordWord) -> Result<Wc> {
    let mut acc = Wc::one(word.n);
    for c in &word.chords {
        acc = &acc * &l_of_chord(word.n, *c)?;
    }
    Ok(acc)
}

pub fn l_of_diagram(d: &Diagram) -> Result<Wc> {
    l_of_word(&d.to_word())
}

/// `m_D = x^{α(D)} y^{β(D)}`.
pub fn monomial_of_diagram(d: &Diagram) -> Monomial {
    let mut m = Monomial::ONE;
    for c in &d.chords {
        m.x[c.i - 1] += 1;
        m.y[c.j - 1] += 1;
    }
    m
}

pub fn is_noncrossing(d: &Diagram) -> bool {
    if !d.chords.iter().all(|c| c.is_positive()) {
        return false;
    }
    for s in &d.chords {
        for t in &d.chords {
            if s.i < t.i && t.i < s.j && t.j > s.j {
                return false;
            }
        }
    }
    true
}

/// `L_ij L_kl + L_ik L_lj + L_il L_jk − (δ_ij L_kl + δ_ik L_lj + δ_il L_jk)`,
/// with `L_ii = 0`. This vanishes identically in `W`.
pub fn crossing_relation_element(n: usize, i: usize, j: usize, k: usize, l_: usize) -> Result<Wc> {
    crossing_relation_with(n, [i, j, k, l_], false)
}

/// The same quadratic part with the lower-order terms attached the other
/// way round, `L_ij δ_kl + L_ik δ_lj + L_il δ_jk`. It does not vanish when
/// `i` is distinct from a repeated pair, e.g. `(1,2,2,3)` leaves `-L_13`.
pub fn crossing_relation_element_swapped_deltas(n: usize, i: usize, j: usize, k: usize, l_: usize) -> Result<Wc> {
    crossing_relation_with(n, [i, j, k, l_], true)
}

fn crossing_relation_with(n: usize, idx: [usize; 4], swapped: bool) -> Result<Wc> {
    for v in idx {
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
    }
    let [i, j, k, l_] = idx;
    let lz = |a: usize, b: usize| if a == b { Wc::zero(n) } else { l(n, a, b).unwrap() };
    let delta = |a: usize, b: usize| int((a == b) as i64);
    let mut out = &(&lz(i, j) * &lz(k, l_)) + &(&lz(i, k) * &lz(l_, j));
    out += &(&lz(i, l_) * &lz(j, k));
    if swapped {
        out -= &lz(i, j).scale(&delta(k, l_));
        out -= &lz(i, k).scale(&delta(l_, j));
        out -= &lz(i, l_).scale(&delta(j, k));
    } else {
        out -= &lz(k, l_).scale(&delta(i, j));
        out -= &lz(l_, j).scale(&delta(i, k));
        out -= &lz(j, k).scale(&delta(i, l_));
    }
    Ok(out)
}

/// Output of [`uncross_to_basis`]: `L_w = Σ c_D L_D + remainder` with every
/// `D` non-crossing of the same length and the remainder of lower degree.
#[derive(Debug, Clone)]
pub struct UncrossResult {
    pub coefficients: BTreeMap<Diagram, Rational>,
    pub remainder: Wc,
}

/// Rewrites `L_w` onto non-crossing diagrams by orientation normalisation and
/// repeated replacement of the ⪯-smallest crossing pair `(i,k)(j,l)` by
/// `(i,j)(k,l) + (i,l)(j,k)`.
pub fn uncross_to_basis(word: &ChordWord) -> Result<UncrossResult> {
    let n = word.n;
    let mut start = Vec::with_capacity(word.chords.len());
    let mut sign = 1i64;
    for c in &word.chords {
        c.check(n)?;
        let (p, flipped) = c.normalised();
        if flipped {
            sign = -sign;
        }
        start.push(p);
    }
    let mut work: BTreeMap<Diagram, Rational> = BTreeMap::new();
    let mut done: BTreeMap<Diagram, Rational> = BTreeMap::new();
    work.insert(Diagram::new(n, start)?, int(sign));
    while let Some((d, c)) = work.pop_first() {
        match smallest_crossing(&d) {
            None => {
                *done.entry(d).or_insert_with(|| int(0)) += c;
            }
            Some((s, t)) => {
                let (a, b) = (d.chords[s], d.chords[t]);
                let rest: Vec<Chord> = d.chords.iter().enumerate().filter(|&(u, _)| u != s && u != t).map(|(_, c)| *c).collect();
                // a = (i,k), b = (j,l) with i < j < k < l
                for pair in [[Chord { i: a.i, j: b.i }, Chord { i: a.j, j: b.j }], [Chord { i: a.i, j: b.j }, Chord { i: b.i, j: a.j }]] {
                    let mut chords = rest.clone();
                    chords.extend(pair);
                    let nd = Diagram::new(n, chords)?;
                    *work.entry(nd).or_insert_with(|| int(0)) += c.clone();
                }
            }
        }
    }
    done.retain(|_, v| *v != int(0));
    let mut remainder = l_of_word(word)?;
    for (d, c) in &done {
        remainder -= &l_of_diagram(d)?.scale(c);
    }
    Ok(UncrossResult { coefficients: done, remainder })
}

fn smallest_crossing(d: &Diagram) -> Option<(usize, usize)> {
    for s in 0..d.chords.len() {
        for t in s + 1..d.chords.len() {
            if chords_cross(&d.chords[s], &d.chords[t]) {
                return Some((s, t));
            }
        }
    }
    None
}

/// All non-crossing diagrams with `p` chords on `n` vertices, in ⪯ order.
pub fn enumerate_noncrossing(n: usize, p: usize) -> Vec<Diagram> {
    let positive: Vec<Chord> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| Chord { i, j })).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    multisets(&positive, p, 0, &mut cur, &mut |chords| {
        let d = Diagram { n, chords: chords.to_vec() };
        if is_noncrossing(&d) {
            out.push(d);
        }
    });
    out
}

pub(crate) fn multisets<T: Copy>(items: &[T], k: usize, from: usize, cur: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for idx in from..items.len() {
        cur.push(items[idx]);
        multisets(items, k, idx, cur, f);
        cur.pop();
    }
}

/// Pairwise distinct monomial keys on the non-crossing diagrams of length `p`.
pub fn check_injectivity(n: usize, p: usize) -> bool {
    let mut seen = HashMap::new();
    for d in enumerate_noncrossing(n, p) {
        if seen.insert(monomial_of_diagram(&d), d).is_some() {
            return false;
        }
    }
    true
}

/// Checks that the top-degree part of `L_D` is `m_D` plus `±m_{D'}` for
/// chord-reversed diagrams `D' ≻ D` only.
pub fn check_triangularity(d: &Diagram) -> Result<bool> {
    let n = d.n;
    let top = leading_part(&l_of_diagram(d)?)?;
    let mut predicted = Gr::zero(n);
    let p = d.chords.len();
    for mask in 0u32..(1 << p) {
        let chords: Vec<Chord> =
            d.chords.iter().enumerate().map(|(s, c)| if mask & (1 << s) != 0 { c.reversed() } else { *c }).collect();
        let dp = Diagram::new(n, chords)?;
        if mask != 0 && dp <= *d {
            return Ok(false);
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        predicted.add_term(monomial_of_diagram(&dp), int(sign));
    }
    Ok(top == predicted && top.coeff(&monomial_of_diagram(d)) == int(1))
}

/// Exact expansion of an element of the angular momentum algebra on the
/// basis `{L_D : D non-crossing}`; `None` when `u` is not in the span.
pub struct AmaBasis {
    n: usize,
    per_length: HashMap<usize, (Vec<Diagram>, RationalSolver, crate::linalg::ColumnIndex<Monomial>)>,
}

impl AmaBasis {
    pub fn new(n: usize) -> AmaBasis {
        AmaBasis { n, per_length: HashMap::new() }
    }

    fn level(&mut self, p: usize) -> Result<&(Vec<Diagram>, RationalSolver, crate::linalg::ColumnIndex<Monomial>)> {
        if !self.per_length.contains_key(&p) {
            let diagrams = enumerate_noncrossing(self.n, p);
            let mut solver = RationalSolver::new();
            let mut cols = crate::linalg::ColumnIndex::new();
            for d in &diagrams {
                let top = leading_part(&l_of_diagram(d)?)?;
                let row: Vec<(usize, Rational)> = top.terms().map(|(m, c)| (cols.index(m), c.clone())).collect();
                solver.insert(&row);
            }
            self.per_length.insert(p, (diagrams, solver, cols));
        }
        Ok(&self.per_length[&p])
    }

    pub fn express(&mut self, u: &Wc) -> Result<Option<BTreeMap<Diagram, Rational>>> {
        let mut rest = u.clone();
        let mut out = BTreeMap::new();
        while let Some(deg) = rest.degree() {
            if deg % 2 == 1 {
                return Ok(None);
            }
            let top: GrElement<Rational> = crate::gr::graded_component(&rest, deg);
            let (diagrams, solver, cols) = self.level(deg as usize / 2)?;
            let mut row = Vec::new();
            for (m, c) in top.terms() {
                match cols.get(m) {
                    Some(idx) => row.push((idx, c.clone())),
                    None => return Ok(None),
                }
            }
            let Some(combo) = solver.express(&row) else { return Ok(None) };
            let chosen: Vec<(Diagram, Rational)> = combo.into_iter().map(|(id, c)| (diagrams[id].clone(), c)).collect();
            for (d, c) in chosen {
                rest -= &l_of_diagram(&d)?.scale(&c);
                *out.entry(d).or_insert_with(|| int(0)) += c;
            }
        }
        out.retain(|_, v| *v != int(0));
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(i: usize, j: usize) -> Chord {
        Chord::new(i, j).unwrap()
    }

    fn diag(n: usize, cs: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, cs.iter().map(|&(i, j)| ch(i, j)).collect()).unwrap()
    }

    #[test]
    fn l_examples() {
        let n = 6;
        assert_eq!(l(n, 2, 1).unwrap(), -&l(n, 1, 2).unwrap());
        assert_eq!(l(n, 1, 1), Err(Error::DegenerateChord(1)));
        let d = diag(n, &[(1, 3), (1, 4), (2, 3), (3, 5)]);
        let prod = &(&(&l(n, 1, 3).unwrap() * &l(n, 1, 4).unwrap()) * &l(n, 2, 3).unwrap()) * &l(n, 3, 5).unwrap();
        assert_eq!(l_of_diagram(&d).unwrap(), prod);
        assert_eq!(d.to_string(), "D[n=6]: (1,3)(1,4)(2,3)(3,5)");
    }

    #[test]
    fn monomial_keys() {
        let n = 6;
        let a = monomial_of_diagram(&diag(n, &[(1, 3), (2, 4)]));
        let b = monomial_of_diagram(&diag(n, &[(1, 4), (2, 3)]));
        assert_eq!(a, b);
        assert_eq!(format!("{a}"), "x1 x2 y3 y4");
        let c = monomial_of_diagram(&diag(n, &[(1, 3), (1, 4), (2, 3), (3, 5)]));
        assert_eq!(format!("{c}"), "x1^2 x2 x3 y3^2 y4 y5");
    }

    #[test]
    fn noncrossing_examples() {
        assert!(!is_noncrossing(&diag(5, &[(1, 3), (2, 5)])));
        assert!(is_noncrossing(&diag(5, &[(1, 2), (3, 5)])));
        assert!(is_noncrossing(&diag(5, &[(1, 5), (2, 3)])));
        assert!(!is_noncrossing(&diag(5, &[(2, 1)])));
    }

    #[test]
    fn crossing_relations_vanish() {
        assert!(crossing_relation_element(4, 1, 2, 3, 4).unwrap().is_zero());
        assert!(crossing_relation_element(5, 1, 2, 3, 5).unwrap().is_zero());
        assert!(crossing_relation_element(5, 1, 2, 2, 3).unwrap().is_zero());
        assert!(crossing_relation_element(5, 1, 1, 2, 3).unwrap().is_zero());
        assert_eq!(crossing_relation_element_swapped_deltas(5, 1, 2, 2, 3).unwrap(), -&l(5, 1, 3).unwrap());
        let lhs = &l(5, 1, 3).unwrap() * &l(5, 2, 5).unwrap();
        let rhs = &(&l(5, 1, 2).unwrap() * &l(5, 3, 5).unwrap()) + &(&l(5, 1, 5).unwrap() * &l(5, 2, 3).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn uncrossing_examples() {
        let n = 5;
        let r = uncross_to_basis(&ChordWord::new(n, vec![ch(1, 3), ch(2, 5)]).unwrap()).unwrap();
        let expected: BTreeMap<Diagram, Rational> =
            [(diag(n, &[(1, 2), (3, 5)]), int(1)), (diag(n, &[(1, 5), (2, 3)]), int(1))].into_iter().collect();
        assert_eq!(r.coefficients, expected);
        assert!(r.remainder.is_zero());
        let r = uncross_to_basis(&ChordWord::new(n, vec![ch(2, 1)]).unwrap()).unwrap();
        assert_eq!(r.coefficients, [(diag(n, &[(1, 2)]), int(-1))].into_iter().collect());
        let fixed = diag(n, &[(1, 2), (3, 5)]);
        let r = uncross_to_basis(&fixed.to_word()).unwrap();
        assert_eq!(r.coefficients, [(fixed, int(1))].into_iter().collect());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_noncrossing(4, 1).len(), 6);
        assert!(check_injectivity(4, 1));
        assert!(check_injectivity(4, 2));
        // all 21 multisets of size 2 except the single crossing pair (1,3)(2,4)
        assert_eq!(enumerate_noncrossing(4, 2).len(), 20);
    }

    #[test]
    fn triangularity_on_small_cases() {
        for d in enumerate_noncrossing(4, 2) {
            assert!(check_triangularity(&d).unwrap(), "{d}");
        }
    }

    #[test]
    fn basis_expression_round_trips() {
        let n = 4;
        let mut basis = AmaBasis::new(n);
        let w = &(&l(n, 2, 4).unwrap() * &l(n, 1, 3).unwrap()) * &l(n, 3, 1).unwrap();
        let combo = basis.express(&w).unwrap().unwrap();
        let mut back = Wc::zero(n);
        for (d, c) in &combo {
            assert!(is_noncrossing(d));
            back += &l_of_diagram(d).unwrap().scale(c);
        }
        assert_eq!(back, w);
        assert!(basis.express(&Wc::x(n, 1)).unwrap().is_none());
    }
}
