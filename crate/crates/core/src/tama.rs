//! The total angular momentum algebra: the `osp(1|2)` generators, the
//! extremal projector, k-index symmetries, their identities, the tableau
//! relations and the Gram-rank certificates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gr::{gr_o, GrElement};
use crate::linalg::{rank_rational, sparse_integer_row, ColumnIndex, IntEchelon, RationalSolver};
use crate::monomial::Monomial;
use crate::pairing::kostant_monomial;
use crate::scalar::{half, int, ratio, Rational};
use crate::uncross::{OPoly, TamaDiagram};
use crate::wc::{clifford_word, Parity};
use crate::{ama, Gr, Wc};

/// Default cap on the projected number of monomials an enumeration may touch.
pub const DEFAULT_CAP: u64 = 2_000_000;

/// `∂x = Σ y_j e_j` and `x̲ = Σ x_j e_j`.
#[derive(Debug, Clone)]
pub struct OspGenerators {
    pub dirac: Wc,
    pub coord: Wc,
}

impl OspGenerators {
    pub fn new(n: usize) -> OspGenerators {
        let mut dirac = Wc::zero(n);
        let mut coord = Wc::zero(n);
        for j in 1..=n {
            dirac += &(&Wc::y(n, j) * &Wc::e(n, j));
            coord += &(&Wc::x(n, j) * &Wc::e(n, j));
        }
        OspGenerators { dirac, coord }
    }

    /// `∂x² = Σ y_j²` and `x̲² = Σ x_j²`.
    pub fn squares_close(&self) -> bool {
        let n = self.dirac.n();
        let mut lap = Wc::zero(n);
        let mut norm = Wc::zero(n);
        for j in 1..=n {
            lap += &Wc::y(n, j).pow(2);
            norm += &Wc::x(n, j).pow(2);
        }
        self.dirac.parity() == Parity::Odd
            && self.coord.parity() == Parity::Odd
            && &self.dirac * &self.dirac == lap
            && &self.coord * &self.coord == norm
    }
}

/// `ad_P(a) = a − ½ ad_{∂x}(ad_{x̲}(a))`, both adjoint actions graded.
pub fn ad_p(osp: &OspGenerators, a: &Wc) -> Result<Wc> {
    let inner = osp.coord.graded_commutator(a)?;
    let outer = osp.dirac.graded_commutator(&inner)?;
    Ok(a - &outer.scale(&half()))
}

/// Graded commutator with `P = 1 − ½ ∂x x̲` itself. `P` is even, so this is
/// the plain commutator and it annihilates constants.
pub fn ad_p_literal(osp: &OspGenerators, a: &Wc) -> Result<Wc> {
    if a.parity() == Parity::Inhomogeneous {
        return Err(Error::InhomogeneousParity);
    }
    let n = a.n();
    let p = &Wc::one(n) - &(&osp.dirac * &osp.coord).scale(&half());
    Ok(a.commutator(&p))
}

fn check_sequence(n: usize, seq: &[usize], ascending: bool) -> Result<()> {
    for &v in seq {
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
    }
    for (t, w) in seq.windows(2).enumerate() {
        let _ = t;
        if ascending && w[0] >= w[1] {
            return Err(Error::InvalidSequence { seq: seq.to_vec(), reason: "entries must be strictly increasing" });
        }
    }
    let mut sorted = seq.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidSequence { seq: seq.to_vec(), reason: "entries must be distinct" });
    }
    Ok(())
}

/// `O_A = −½ ad_P(e_A)` for a strictly increasing `A` with `2 ≤ |A| ≤ n`.
pub fn o_symmetry(osp: &OspGenerators, a: &[usize]) -> Result<Wc> {
    let n = osp.dirac.n();
    check_sequence(n, a, true)?;
    if a.len() < 2 {
        return Err(Error::InvalidSequence { seq: a.to_vec(), reason: "need at least two entries" });
    }
    Ok(ad_p(osp, &clifford_word(n, a))?.scale(&ratio(-1, 2)))
}

/// `(k−1)/2 e_A − Σ_{p<q} L_{a_p a_q} e_{a_p} e_{a_q} e_A`.
pub fn o_symmetry_closed_form(n: usize, a: &[usize]) -> Result<Wc> {
    check_sequence(n, a, true)?;
    let k = a.len() as i64;
    let ea: Wc = clifford_word(n, a);
    let mut out = ea.scale(&ratio(k - 1, 2));
    for p in 0..a.len() {
        for q in p + 1..a.len() {
            let term = &ama::l(n, a[p], a[q])? * &(&clifford_word(n, &[a[p], a[q]]) * &ea);
            out -= &term;
        }
    }
    Ok(out)
}

/// Sign of the permutation sorting a sequence of distinct entries.
pub fn sort_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `O_A` for distinct entries in any order: the sorting sign times `O_sorted`.
pub fn o_of_sequence(osp: &OspGenerators, a: &[usize]) -> Result<Wc> {
    let mut sorted = a.to_vec();
    sorted.sort();
    check_sequence(osp.dirac.n(), a, false)?;
    Ok(o_symmetry(osp, &sorted)?.scale(&int(sort_sign(a))))
}

/// `O_ij = L_ij + ½ e_i e_j`, extended by `O_ii = 0`.
pub fn o2(n: usize, i: usize, j: usize) -> Result<Wc> {
    for v in [i, j] {
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
    }
    if i == j {
        return Ok(Wc::zero(n));
    }
    let ee: Wc = clifford_word(n, &[i, j]);
    Ok(&ama::l(n, i, j)? + &ee.scale(&half()))
}

/// `O_ij O_kl + O_ik O_lj + O_il O_jk` for any four slots in `1..=n`. For
/// distinct entries this is `½ O_ijkl`.
pub fn o4_of_sequence(n: usize, s: [usize; 4]) -> Result<Wc> {
    let [i, j, k, l] = s;
    let mut out = &o2(n, i, j)? * &o2(n, k, l)?;
    out += &(&o2(n, i, k)? * &o2(n, l, j)?);
    out += &(&o2(n, i, l)? * &o2(n, j, k)?);
    Ok(out)
}

/// `Σ_{p<q} (−1)^{p+q+1} O_{s_p s_q} O_{s∖{s_p,s_q}}` over four slots. For
/// distinct entries this equals `O_s` (sorting sign included); it vanishes
/// when an entry repeats.
pub fn o4_alternating(n: usize, s: [usize; 4]) -> Result<Wc> {
    let mut out = Wc::zero(n);
    for p in 0..4 {
        for q in p + 1..4 {
            let r: Vec<usize> = (0..4).filter(|&t| t != p && t != q).map(|t| s[t]).collect();
            let term = &o2(n, s[p], s[q])? * &o2(n, r[0], r[1])?;
            if (p + q) % 2 == 0 {
                out -= &term;
            } else {
                out += &term;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecursionFit {
    pub k: usize,
    /// Fitted `λ` with `O_A = λ Σ_{p<q} (−1)^{p+q+1} O_{a_p a_q} O_{A∖{a_p,a_q}}`.
    pub scalar: Option<Rational>,
    /// Number of monomials left in `O_A − λ·Σ` (zero when the fit is exact).
    pub residual_terms: usize,
    /// The constant `4/(k(k−3))` as printed alongside the recursion.
    pub printed: Rational,
}

impl RecursionFit {
    pub fn fits(&self) -> bool {
        self.scalar.is_some() && self.residual_terms == 0
    }
}

/// Fits the scalar in the recursion for `k`-index symmetries, `k ≥ 4`.
pub fn higher_recursion_check(osp: &OspGenerators, a: &[usize]) -> Result<RecursionFit> {
    let k = a.len();
    if k < 4 {
        return Err(Error::InvalidSequence { seq: a.to_vec(), reason: "recursion needs k >= 4" });
    }
    let n = osp.dirac.n();
    let oa = o_symmetry(osp, a)?;
    let mut sum = Wc::zero(n);
    for p in 0..k {
        for q in p + 1..k {
            let rest: Vec<usize> = a.iter().enumerate().filter(|&(t, _)| t != p && t != q).map(|(_, &v)| v).collect();
            let sign = if (p + q) % 2 == 0 { -1 } else { 1 };
            let term = &o2(n, a[p], a[q])? * &o_symmetry(osp, &rest)?;
            sum += &term.scale(&int(sign));
        }
    }
    let printed = ratio(4, (k * (k - 3)) as i64);
    let fit = fit_scalar(&oa, &sum);
    let residual = match &fit {
        Some(l) => (&oa - &sum.scale(l)).len(),
        None => oa.len(),
    };
    Ok(RecursionFit { k, scalar: fit, residual_terms: residual, printed })
}

fn fit_scalar(target: &Wc, basis: &Wc) -> Option<Rational> {
    let (m, c) = basis.terms().next()?;
    Some(target.coeff(m) / c.clone())
}

/// `[O_ij, O_pqr]` for index sets of sizes 2 and 3 (taken in increasing
/// order).
pub fn comm_2_3(osp: &OspGenerators, ij: [usize; 2], pqr: [usize; 3]) -> Result<Wc> {
    let (a, b) = sorted_sets(osp.dirac.n(), ij, pqr)?;
    Ok(o_symmetry(osp, &a)?.commutator(&o_symmetry(osp, &b)?))
}

fn sorted_sets(n: usize, ij: [usize; 2], pqr: [usize; 3]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut a = ij.to_vec();
    let mut b = pqr.to_vec();
    a.sort();
    b.sort();
    check_sequence(n, &a, true)?;
    check_sequence(n, &b, true)?;
    Ok((a, b))
}

/// The predicted value of `[O_ij, O_pqr]`: zero for an even intersection;
/// for a single shared index `s`, writing `O_ij = ε O_{ts}` and
/// `O_pqr = ε' O_{suv}`, it is `ε ε' O_{tuv}`.
pub fn comm_2_3_prediction(osp: &OspGenerators, ij: [usize; 2], pqr: [usize; 3]) -> Result<Wc> {
    let n = osp.dirac.n();
    let (a, b) = sorted_sets(n, ij, pqr)?;
    let shared: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    if shared.len() % 2 == 0 {
        return Ok(Wc::zero(n));
    }
    let s = shared[0];
    let t = if a[0] == s { a[1] } else { a[0] };
    let eps = sort_sign(&[t, s]);
    let rest: Vec<usize> = b.iter().copied().filter(|&v| v != s).collect();
    let mut moved = vec![s];
    moved.extend(&rest);
    let eps2 = sort_sign(&moved);
    let mut target = vec![t];
    target.extend(&rest);
    Ok(o_of_sequence(osp, &target)?.scale(&int(eps * eps2)))
}

/// Whether the bare product `O_ts O_suv` equals `O_tuv` for a single shared
/// index (the statement read without a bracket).
pub fn comm_2_3_bare_product_holds(osp: &OspGenerators, ij: [usize; 2], pqr: [usize; 3]) -> Result<bool> {
    let n = osp.dirac.n();
    let (a, b) = sorted_sets(n, ij, pqr)?;
    let shared: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    if shared.len() != 1 {
        return Ok(false);
    }
    let s = shared[0];
    let t = if a[0] == s { a[1] } else { a[0] };
    let rest: Vec<usize> = b.iter().copied().filter(|&v| v != s).collect();
    let lhs = &o_of_sequence(osp, &[t, s])? * &o_of_sequence(osp, &[s, rest[0], rest[1]])?;
    Ok(lhs == o_of_sequence(osp, &[t, rest[0], rest[1]])?)
}

/// `𝒯 = ⟨(15),(26),(37),(48)⟩`: bit `s` of a mask swaps slot `s` of `A`
/// with slot `s` of `B`.
#[derive(Debug, Clone, Copy)]
pub struct TableauGroup;

impl TableauGroup {
    pub const ORDER: usize = 16;

    pub fn elements() -> impl Iterator<Item = u8> {
        0u8..16
    }

    pub fn act(mask: u8, a: [usize; 4], b: [usize; 4]) -> ([usize; 4], [usize; 4]) {
        let (mut a2, mut b2) = (a, b);
        for s in 0..4 {
            if mask & (1 << s) != 0 {
                std::mem::swap(&mut a2[s], &mut b2[s]);
            }
        }
        (a2, b2)
    }
}

/// How the intersection sum `Σ_{(a,b) ⊂ A∩B} O_{A∖(a,b)} O_{B∖(a,b)}` is
/// carried through the `𝒯`-sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairSumMode {
    /// Recompute the intersection on each permuted pair `σ(A,B)`.
    Permuted,
    /// Fix the slots of the common values in the original `(A,B)` and let
    /// `σ` relabel them.
    Transported,
}

/// Evaluates tableau relations, caching the quartic pieces.
pub struct TableauEvaluator {
    n: usize,
    o4_cache: HashMap<[usize; 4], Wc>,
    o2_cache: HashMap<(usize, usize), Wc>,
}

impl TableauEvaluator {
    pub fn new(n: usize) -> Self {
        TableauEvaluator { n, o4_cache: HashMap::new(), o2_cache: HashMap::new() }
    }

    fn o4(&mut self, s: [usize; 4]) -> Result<Wc> {
        if let Some(v) = self.o4_cache.get(&s) {
            return Ok(v.clone());
        }
        let v = o4_alternating(self.n, s)?;
        self.o4_cache.insert(s, v.clone());
        Ok(v)
    }

    fn o2(&mut self, i: usize, j: usize) -> Result<Wc> {
        if let Some(v) = self.o2_cache.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = o2(self.n, i, j)?;
        self.o2_cache.insert((i, j), v.clone());
        Ok(v)
    }

    /// `Σ_{σ∈𝒯} F(σ·(A,B)) − 12 δ_{A,B}` with
    /// `F(A',B') = O_{A'} O_{B'} + Σ ±O_{A'∖(a,b)} O_{B'∖(a,b)}`, where
    /// `O_{A'}` is [`o4_alternating`] and the sign is `(−1)^{p+q+p'+q'}` for
    /// the slots `p,q` of `a,b` in `A'` and `p',q'` in `B'`, flipped once more
    /// when `a,b` occur in opposite orders in `A'` and `B'`.
    pub fn relation(&mut self, a: [usize; 4], b: [usize; 4], mode: PairSumMode) -> Result<Wc> {
        let n = self.n;
        check_sequence(n, &a, false)?;
        check_sequence(n, &b, false)?;
        let mut quartic: HashMap<([usize; 4], [usize; 4]), i64> = HashMap::new();
        let mut quadratic: HashMap<((usize, usize), (usize, usize)), i64> = HashMap::new();
        let pairs = pair_slots(&a, &b);
        for mask in TableauGroup::elements() {
            let (a2, b2) = TableauGroup::act(mask, a, b);
            *quartic.entry((a2, b2)).or_insert(0) += 1;
            let slot_pairs = match mode {
                PairSumMode::Permuted => pair_slots(&a2, &b2),
                PairSumMode::Transported => pairs.clone(),
            };
            for (pa, pb) in slot_pairs {
                let ra = residual(&a2, pa);
                let rb = residual(&b2, pb);
                let swapped = (pa[0] < pa[1]) != (pb[0] < pb[1]);
                let sign = if ((pa[0] + pa[1] + pb[0] + pb[1]) % 2 == 0) != swapped { 1 } else { -1 };
                *quadratic.entry((ra, rb)).or_insert(0) += sign;
            }
        }
        let mut out = Wc::zero(n);
        let mut keys: Vec<_> = quartic.into_iter().collect();
        keys.sort();
        for ((a2, b2), c) in keys {
            let t = &self.o4(a2)? * &self.o4(b2)?;
            out += &t.scale(&int(c));
        }
        let mut keys: Vec<_> = quadratic.into_iter().collect();
        keys.sort();
        for ((ra, rb), c) in keys {
            let t = &self.o2(ra.0, ra.1)? * &self.o2(rb.0, rb.1)?;
            out += &t.scale(&int(c));
        }
        if a == b {
            out -= &Wc::scalar(n, int(12));
        }
        Ok(out)
    }
}

/// Slots of each unordered pair `a < b` of common values, as
/// `([pos_A(a), pos_A(b)], [pos_B(a), pos_B(b)])`.
fn pair_slots(a: &[usize; 4], b: &[usize; 4]) -> Vec<([usize; 2], [usize; 2])> {
    let mut common: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    common.sort();
    common.dedup();
    let mut out = Vec::new();
    for x in 0..common.len() {
        for y in x + 1..common.len() {
            let (u, v) = (common[x], common[y]);
            let pa = slots_of(a, u, v);
            let pb = slots_of(b, u, v);
            out.push((pa, pb));
        }
    }
    out
}

fn slots_of(s: &[usize; 4], u: usize, v: usize) -> [usize; 2] {
    let p = s.iter().position(|&w| w == u).unwrap();
    let q = s.iter().position(|&w| w == v).unwrap();
    [p, q]
}

fn residual(s: &[usize; 4], drop: [usize; 2]) -> (usize, usize) {
    let rest: Vec<usize> = (0..4).filter(|t| !drop.contains(t)).map(|t| s[t]).collect();
    (rest[0], rest[1])
}

/// `tableau_relation(A, B)` with the pair sum recomputed on each permuted
/// pair.
pub fn tableau_relation(n: usize, a: [usize; 4], b: [usize; 4]) -> Result<Wc> {
    TableauEvaluator::new(n).relation(a, b, PairSumMode::Permuted)
}

/// Top (quartic) part of the tableau relation as a commutative polynomial in
/// symbols `X_ij`, with `X_ii = 0` and `X_ji = −X_ij`. Each `O_{A'}` has top
/// part `2·o4`.
pub fn tableau_top_symbolic(n: usize, a: [usize; 4], b: [usize; 4]) -> OPoly {
    let mut out = OPoly::zero(n);
    for mask in TableauGroup::elements() {
        let (a2, b2) = TableauGroup::act(mask, a, b);
        out += &(&o4_symbolic(n, a2) * &o4_symbolic(n, b2));
    }
    out.scale(&int(4))
}

/// `X_ij X_kl + X_ik X_lj + X_il X_jk` as a commutative polynomial.
pub fn o4_symbolic(n: usize, s: [usize; 4]) -> OPoly {
    let [i, j, k, l] = s;
    let x = |a, b| OPoly::x(n, a, b);
    let mut out = &x(i, j) * &x(k, l);
    out += &(&x(i, k) * &x(l, j));
    out += &(&x(i, l) * &x(j, k));
    out
}

/// Constant term of `Σ_σ σ(O_A e_B)` for `A = B`, the quantity the relation's
/// `12` comes from after applying `−½ ad_P`.
pub fn tableau_intermediate_constant(osp: &OspGenerators, a: [usize; 4]) -> Result<Rational> {
    let n = osp.dirac.n();
    let oa = o_of_sequence(osp, &a)?;
    let eb: Wc = clifford_word(n, &a);
    let c = (&oa * &eb).coeff(&Monomial::ONE);
    Ok(c * int(TableauGroup::ORDER as i64))
}

/// `[u, ∂x] = 0` and `[u, x̲] = 0` (graded).
pub fn centraliser_check(osp: &OspGenerators, u: &Wc) -> Result<bool> {
    Ok(u.graded_commutator(&osp.dirac)?.is_zero() && u.graded_commutator(&osp.coord)?.is_zero())
}

/// `β` on the associated graded: `κ` on the polynomial part, `δ` on the
/// exterior part.
pub fn beta_gr(u: &Gr, v: &Gr) -> Rational {
    let mut total = int(0);
    for (m, c) in u.terms() {
        let partner = m.swap_xy();
        let d = v.coeff(&partner);
        if d != int(0) {
            total += c.clone() * d * kostant_monomial::<Rational>(&m.weyl_part(), &partner.weyl_part());
        }
    }
    total
}

/// Keeps the nonzero elements that are not proportional to an earlier one.
fn distinct_up_to_scalar(elems: Vec<Gr>) -> Vec<Gr> {
    let mut kept: Vec<Gr> = Vec::new();
    for e in elems {
        if e.is_zero() {
            continue;
        }
        let proportional = kept.iter().any(|k| {
            k.len() == e.len() && {
                let (m, c) = k.terms().next().unwrap();
                let l = e.coeff(m) / c.clone();
                l != int(0) && k.scale(&l) == e
            }
        });
        if !proportional {
            kept.push(e);
        }
    }
    kept
}

fn gram_rank(elems: &[Gr]) -> usize {
    let gram: Vec<Vec<Rational>> = elems.iter().map(|u| elems.iter().map(|v| beta_gr(u, v)).collect()).collect();
    rank_rational(&gram)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramRank {
    pub size: usize,
    pub rank: usize,
}

impl GramRank {
    pub fn full(&self) -> bool {
        self.size == self.rank
    }
}

fn go(n: usize, i: usize, j: usize) -> Gr {
    if i == j {
        Gr::zero(n)
    } else {
        gr_o(n, i, j).expect("indices checked")
    }
}

fn check_tuple(n: usize, t: &[usize]) -> Result<()> {
    for &v in t {
        if v == 0 || v > n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
    }
    Ok(())
}

/// Gram matrix of `{O_ij O_kl, O_ik O_jl, O_il O_jk}` (leading parts).
pub fn gram_rank_degree2(n: usize, t: [usize; 4]) -> Result<GramRank> {
    check_tuple(n, &t)?;
    let [i, j, k, l] = t;
    let elems = vec![&go(n, i, j) * &go(n, k, l), &go(n, i, k) * &go(n, j, l), &go(n, i, l) * &go(n, j, k)];
    let kept = distinct_up_to_scalar(elems);
    Ok(GramRank { size: kept.len(), rank: gram_rank(&kept) })
}

/// The 15 perfect matchings of six slots, each as three slot pairs.
pub fn perfect_matchings_6() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&v| v != b).collect();
        let c = rest[0];
        for &d in &rest[1..] {
            let last: Vec<usize> = rest.iter().copied().filter(|&v| v != c && v != d).collect();
            out.push([(0, b), (c, d), (last[0], last[1])]);
        }
    }
    out
}

/// Gram matrix of the triple products indexed by perfect matchings of the
/// six slots.
pub fn gram_rank_degree3(n: usize, t: [usize; 6]) -> Result<GramRank> {
    check_tuple(n, &t)?;
    let elems: Vec<Gr> = perfect_matchings_6()
        .iter()
        .map(|m| {
            let f = |(p, q): (usize, usize)| go(n, t[p], t[q]);
            &(&f(m[0]) * &f(m[1])) * &f(m[2])
        })
        .collect();
    let kept = distinct_up_to_scalar(elems);
    Ok(GramRank { size: kept.len(), rank: gram_rank(&kept) })
}

/// All chords `(i,j)`, `i < j`, in lexicographic order.
pub fn positive_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// Dimension of the graded piece of degree `deg` of `S(V⊕V*) ⊗ ∧V`.
pub fn graded_dimension(n: usize, deg: usize) -> u64 {
    (0..=n.min(deg)).map(|e| binom(n as u64, e as u64).saturating_mul(binom((2 * n + deg - e - 1) as u64, (deg - e) as u64))).fold(0u64, |a, b| a.saturating_add(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelProbe {
    pub monomials: usize,
    pub rank: usize,
    pub kernel: usize,
}

/// Dimension of the space of degree-`d` combinations of commuting
/// `O_ij`-monomials whose top (degree `2d`) part vanishes.
pub fn kernel_probe_degree(n: usize, d: usize, cap: u64) -> Result<KernelProbe> {
    let projected = graded_dimension(n, 2 * d);
    if projected > cap {
        return Err(Error::ResourceGuard { what: "kernel probe basis", needed: projected as usize, cap: cap as usize });
    }
    let monos = TamaDiagram::enumerate(n, d as u32);
    let mut cols = ColumnIndex::new();
    let mut ech = IntEchelon::new();
    for m in &monos {
        let g = m.to_gr();
        let row: Vec<(usize, Rational)> = g.terms().map(|(mm, c)| (cols.index(mm), c.clone())).collect();
        ech.insert(sparse_integer_row(&row));
    }
    Ok(KernelProbe { monomials: monos.len(), rank: ech.rank(), kernel: monos.len() - ech.rank() })
}

/// Rank of the top parts of the tableau relations of degree 4 (all ascending
/// 4-subsets `A`, `B`), as polynomials in the `X_ij`.
pub fn tableau_top_rank(n: usize) -> usize {
    let subsets = ascending_quads(n);
    let mut cols = ColumnIndex::new();
    let mut ech = IntEchelon::new();
    for a in &subsets {
        for b in &subsets {
            let p = tableau_top_symbolic(n, *a, *b);
            let row: Vec<(usize, Rational)> = p.terms().map(|(m, c)| (cols.index(m), c.clone())).collect();
            ech.insert(sparse_integer_row(&row));
        }
    }
    ech.rank()
}

/// All strictly increasing 4-tuples in `1..=n`.
pub fn ascending_quads(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                for d in c + 1..=n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Ordered (PBW) products `O_{c_1} ⋯ O_{c_r}`, `c_1 ⪯ ⋯ ⪯ c_r`, of length at
/// most `max_len`, expanded in `WC`, used as a spanning set for the image of
/// `U(so(n))` up to that filtration degree.
pub struct PbwSpan {
    n: usize,
    solver: RationalSolver,
    cols: ColumnIndex<Monomial>,
    labels: Vec<Vec<(usize, usize)>>,
}

impl PbwSpan {
    pub fn new(n: usize, max_len: usize) -> Result<PbwSpan> {
        let pairs = positive_pairs(n);
        let mut span = PbwSpan { n, solver: RationalSolver::new(), cols: ColumnIndex::new(), labels: Vec::new() };
        for r in 0..=max_len {
            let mut cur = Vec::new();
            let mut words = Vec::new();
            ama::multisets(&pairs, r, 0, &mut cur, &mut |w: &[(usize, usize)]| words.push(w.to_vec()));
            for w in words {
                let mut prod = Wc::one(n);
                for &(i, j) in &w {
                    prod = &prod * &o2(n, i, j)?;
                }
                let row: Vec<(usize, Rational)> = prod.terms().map(|(m, c)| (span.cols.index(m), c.clone())).collect();
                span.solver.insert(&row);
                span.labels.push(w);
            }
        }
        Ok(span)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    /// Coefficients on the ordered `O`-monomials, if `u` lies in the span.
    pub fn express(&self, u: &Wc) -> Option<Vec<(Vec<(usize, usize)>, Rational)>> {
        let mut row = Vec::new();
        for (m, c) in u.terms() {
            row.push((self.cols.get(m)?, c.clone()));
        }
        let combo = self.solver.express(&row)?;
        Some(combo.into_iter().map(|(id, c)| (self.labels[id].clone(), c)).collect())
    }
}

/// Cross-check helper: the degree `2d` component of the ordered `WC` product
/// of the `O_ij` in `m` equals the commutative product in gr.
pub fn o_monomial_top_in_wc(m: &TamaDiagram) -> Result<GrElement<Rational>> {
    let n = m.n();
    let mut prod = Wc::one(n);
    for (i, j, k) in m.chords() {
        for _ in 0..k {
            prod = &prod * &o2(n, i, j)?;
        }
    }
    Ok(crate::gr::graded_component(&prod, 2 * m.degree()))
}
