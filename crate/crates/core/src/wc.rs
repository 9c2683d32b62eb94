//! Exact arithmetic in the Weyl-Clifford algebra `WC = W ⊗ C`.
//!
//! Relations: `[y_i, x_j] = δ_ij`, `{e_i, e_j} = 2δ_ij`, Weyl and Clifford
//! generators commute. Elements are kept in the normal-ordered basis
//! `x^α y^β e^γ`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::monomial::{reorder_sign, Monomial, MAX_DIM};
use crate::scalar::{binomial, factorial, Scalar};

/// The dimension `n` of `V` shared by every element built under it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    n: usize,
}

impl AlgebraContext {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidDimension { n, max: MAX_DIM });
        }
        Ok(AlgebraContext { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.n {
            Err(Error::IndexOutOfRange { index, n: self.n })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Inhomogeneous,
}

impl Parity {
    pub fn sign_exponent(self) -> Option<u32> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Inhomogeneous => None,
        }
    }
}

/// A single generator, 1-based: `x_i`, `y_i` (Weyl) or `e_i` (Clifford).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X(usize),
    Y(usize),
    E(usize),
}

impl Generator {
    pub fn index(&self) -> usize {
        match *self {
            Generator::X(i) | Generator::Y(i) | Generator::E(i) => i,
        }
    }
}

/// Finite rational combination of normal-ordered monomials.
#[derive(Clone, PartialEq)]
pub struct WcElement<S: Scalar> {
    n: usize,
    terms: HashMap<Monomial, S>,
}

impl<S: Scalar> WcElement<S> {
    pub fn zero(n: usize) -> Self {
        WcElement { n, terms: HashMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, c: S) -> Self {
        Self::monomial(n, Monomial::ONE, c)
    }

    pub fn monomial(n: usize, m: Monomial, c: S) -> Self {
        debug_assert!(m.max_index() <= n);
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WcElement { n, terms }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        let i = g.index();
        assert!(i >= 1 && i <= n, "generator index {i} out of range 1..={n}");
        let mut m = Monomial::ONE;
        match g {
            Generator::X(_) => m.x[i - 1] = 1,
            Generator::Y(_) => m.y[i - 1] = 1,
            Generator::E(_) => m.e = 1 << (i - 1),
        }
        Self::monomial(n, m, S::one())
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::generator(n, Generator::X(i))
    }

    pub fn y(n: usize, i: usize) -> Self {
        Self::generator(n, Generator::Y(i))
    }

    pub fn e(n: usize, i: usize) -> Self {
        Self::generator(n, Generator::E(i))
    }

    /// Product of the generators in the given order.
    pub fn from_word(n: usize, word: &[Generator]) -> Self {
        word.iter().fold(Self::one(n), |acc, &g| &acc * &Self::generator(n, g))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    /// Terms in canonical (graded-lexicographic) monomial order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, S)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_index() <= self.n);
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        WcElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect(),
        }
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for m in self.terms.keys() {
            if m.is_odd() {
                odd = true;
            } else {
                even = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Inhomogeneous,
        }
    }

    /// Maximal total filtration degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_weyl_only(&self) -> bool {
        self.terms.keys().all(|m| m.e == 0)
    }

    pub fn is_clifford_only(&self) -> bool {
        self.terms.keys().all(|m| m.weyl_degree() == 0)
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::ContextMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut acc: HashMap<Monomial, S> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.clone() * cb.clone();
                monomial_product(ma, mb, |m, k, neg| {
                    let mut v = if k == 1 { c.clone() } else { c.clone() * S::from_u128(k) };
                    if neg {
                        v = -v;
                    }
                    accumulate(&mut acc, m, v);
                });
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(WcElement { n: self.n, terms: acc })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// Ordinary commutator `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `uv - (-1)^{p(u)p(v)} vu` for parity-homogeneous `u`, `v`.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let pu = self.parity().sign_exponent().ok_or(Error::InhomogeneousParity)?;
        let pv = other.parity().sign_exponent().ok_or(Error::InhomogeneousParity)?;
        let uv = self * other;
        let vu = other * self;
        Ok(if pu * pv == 1 { &uv + &vu } else { &uv - &vu })
    }

    /// Terms of maximal total degree.
    pub fn top_terms(&self) -> Vec<(Monomial, S)> {
        let Some(d) = self.degree() else { return Vec::new() };
        self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect()
    }

    /// Render with coefficients through [`Scalar::to_text`], terms in canonical
    /// order: `1/2 * x1 y2 e1 + -1/1 * e2`.
    pub fn to_canonical_string(&self) -> String {
        render_terms(&self.sorted_terms())
    }
}

pub(crate) fn render_terms<S: Scalar>(terms: &[(Monomial, S)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|(m, c)| {
            let body = m.render();
            if body.is_empty() {
                c.to_text()
            } else {
                format!("{} * {}", c.to_text(), body)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub(crate) fn accumulate<S: Scalar>(acc: &mut HashMap<Monomial, S>, m: Monomial, v: S) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut o) => {
            let cur = std::mem::replace(o.get_mut(), S::zero());
            *o.get_mut() = cur + v;
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(v);
        }
    }
}

/// Product of two normal-ordered monomials. Emits `(monomial, multiplicity,
/// negate)` triples; the Weyl part uses the closed form
/// `y^b x^c = Σ_k C(b,k) C(c,k) k! x^{c-k} y^{b-k}` per index.
pub(crate) fn monomial_product(a: &Monomial, b: &Monomial, mut emit: impl FnMut(Monomial, u128, bool)) {
    let neg = reorder_sign(a.e, b.e);
    let mut base = Monomial { e: a.e ^ b.e, ..Monomial::ONE };
    let mut contract: [(usize, u8, u8); MAX_DIM] = [(0, 0, 0); MAX_DIM];
    let mut nc = 0;
    for i in 0..MAX_DIM {
        base.x[i] = a.x[i].checked_add(b.x[i]).expect("exponent overflow");
        base.y[i] = a.y[i].checked_add(b.y[i]).expect("exponent overflow");
        if a.y[i] > 0 && b.x[i] > 0 {
            contract[nc] = (i, a.y[i], b.x[i]);
            nc += 1;
        }
    }
    if nc == 0 {
        emit(base, 1, neg);
        return;
    }
    let mut ks = [0u8; MAX_DIM];
    loop {
        let mut m = base;
        let mut coef: u128 = 1;
        for t in 0..nc {
            let (i, yb, xc) = contract[t];
            let k = ks[t];
            if k > 0 {
                m.x[i] -= k;
                m.y[i] -= k;
                let f = binomial(yb as u32, k as u32)
                    .checked_mul(binomial(xc as u32, k as u32))
                    .and_then(|v| v.checked_mul(factorial(k as u32)))
                    .expect("coefficient overflow");
                coef = coef.checked_mul(f).expect("coefficient overflow");
            }
        }
        emit(m, coef, neg);
        // odometer
        let mut t = 0;
        loop {
            if t == nc {
                return;
            }
            let (_, yb, xc) = contract[t];
            if ks[t] < yb.min(xc) {
                ks[t] += 1;
                break;
            }
            ks[t] = 0;
            t += 1;
        }
    }
}

impl<S: Scalar> fmt::Display for WcElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<S: Scalar> fmt::Debug for WcElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WC[n={}]({})", self.n, self.to_canonical_string())
    }
}

impl<'a, S: Scalar> Add for &'a WcElement<S> {
    type Output = WcElement<S>;
    fn add(self, rhs: Self) -> WcElement<S> {
        self.try_add(rhs).expect("context mismatch in addition")
    }
}

impl<'a, S: Scalar> Sub for &'a WcElement<S> {
    type Output = WcElement<S>;
    fn sub(self, rhs: Self) -> WcElement<S> {
        self.try_add(&-rhs).expect("context mismatch in subtraction")
    }
}

impl<'a, S: Scalar> Mul for &'a WcElement<S> {
    type Output = WcElement<S>;
    fn mul(self, rhs: Self) -> WcElement<S> {
        self.try_mul(rhs).expect("context mismatch in multiplication")
    }
}

impl<'a, S: Scalar> Neg for &'a WcElement<S> {
    type Output = WcElement<S>;
    fn neg(self) -> WcElement<S> {
        WcElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<S: Scalar> AddAssign<&WcElement<S>> for WcElement<S> {
    fn add_assign(&mut self, rhs: &WcElement<S>) {
        assert_eq!(self.n, rhs.n, "context mismatch in addition");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&WcElement<S>> for WcElement<S> {
    fn sub_assign(&mut self, rhs: &WcElement<S>) {
        assert_eq!(self.n, rhs.n, "context mismatch in subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

/// `e_{a_1} ⋯ e_{a_k}` reduced to a signed canonical monomial. Repeated
/// indices are allowed and cancel (`e_i² = 1`).
pub fn clifford_word<S: Scalar>(n: usize, indices: &[usize]) -> WcElement<S> {
    let mut mask = 0u16;
    let mut neg = false;
    for &i in indices {
        assert!(i >= 1 && i <= n, "index {i} out of range 1..={n}");
        let bit = 1u16 << (i - 1);
        neg ^= reorder_sign(mask, bit);
        mask ^= bit;
    }
    let c = if neg { -S::one() } else { S::one() };
    WcElement::monomial(n, Monomial { e: mask, ..Monomial::ONE }, c)
}

/// Weyl symmetrisation of a commuting monomial (its Clifford part is carried
/// along unchanged):
/// `Q_w(x^a y^b) = Σ_k C(a,k) C(b,k) k! / 2^k · x^{a-k} y^{b-k}` per index.
pub fn weyl_quantize_monomial<S: Scalar>(n: usize, m: &Monomial) -> WcElement<S> {
    let mut out = WcElement::zero(n);
    for_each_symmetrisation_term(m, |t, num, pow2| {
        out.add_term(t, S::from_u128(num) / S::from_u128(1u128 << pow2));
    });
    out
}

fn for_each_symmetrisation_term(m: &Monomial, mut emit: impl FnMut(Monomial, u128, u32)) {
    let idx: Vec<usize> = (0..MAX_DIM).filter(|&i| m.x[i] > 0 && m.y[i] > 0).collect();
    let mut ks = vec![0u8; idx.len()];
    loop {
        let mut t = *m;
        let mut num: u128 = 1;
        let mut pow2 = 0u32;
        for (slot, &i) in idx.iter().enumerate() {
            let k = ks[slot];
            if k > 0 {
                t.x[i] -= k;
                t.y[i] -= k;
                num *= binomial(m.x[i] as u32, k as u32) * binomial(m.y[i] as u32, k as u32) * factorial(k as u32);
                pow2 += k as u32;
            }
        }
        emit(t, num, pow2);
        let mut s = 0;
        loop {
            if s == idx.len() {
                return;
            }
            let i = idx[s];
            if ks[s] < m.x[i].min(m.y[i]) {
                ks[s] += 1;
                break;
            }
            ks[s] = 0;
            s += 1;
        }
    }
}

/// `Q_w(v_1 ⋯ v_m)` for a word over `{x_i, y_i}`: the symmetrised product.
pub fn quantize_w<S: Scalar>(n: usize, word: &[Generator]) -> WcElement<S> {
    let mut m = Monomial::ONE;
    for g in word {
        match *g {
            Generator::X(i) => m.x[i - 1] += 1,
            Generator::Y(i) => m.y[i - 1] += 1,
            Generator::E(_) => panic!("quantize_w takes Weyl generators only"),
        }
    }
    weyl_quantize_monomial(n, &m)
}

/// `Q_c(y_{a_1} ∧ ⋯ ∧ y_{a_m})`: antisymmetrised Clifford product.
pub fn quantize_c<S: Scalar>(n: usize, indices: &[usize]) -> WcElement<S> {
    let mut seen = 0u16;
    for &i in indices {
        let bit = 1u16 << (i - 1);
        if seen & bit != 0 {
            return WcElement::zero(n);
        }
        seen |= bit;
    }
    clifford_word(n, indices)
}

/// Inverse of the quantisation map: coefficients of `u` on the basis
/// `Q_w(x^α y^β) ⊗ e^γ`, keyed by the commuting monomial `x^α y^β e^γ`.
pub fn weyl_symbol<S: Scalar>(u: &WcElement<S>) -> HashMap<Monomial, S> {
    let mut remaining = u.terms.clone();
    let mut symbol = HashMap::new();
    let Some(top) = remaining.keys().map(|m| m.weyl_degree()).max() else { return symbol };
    for d in (0..=top).rev() {
        let level: Vec<(Monomial, S)> =
            remaining.iter().filter(|(m, _)| m.weyl_degree() == d).map(|(m, c)| (*m, c.clone())).collect();
        for (m, c) in level {
            remaining.remove(&m);
            for_each_symmetrisation_term(&m, |t, num, pow2| {
                if t != m {
                    let v = c.clone() * S::from_u128(num) / S::from_u128(1u128 << pow2);
                    accumulate(&mut remaining, t, -v);
                }
            });
            symbol.insert(m, c);
        }
        remaining.retain(|_, v| !v.is_zero());
    }
    symbol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type W = WcElement<Rational>;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    #[test]
    fn weyl_relation() {
        let n = 1;
        let yx = &W::y(n, 1) * &W::x(n, 1);
        let expected = &(&W::x(n, 1) * &W::y(n, 1)) + &W::one(n);
        assert_eq!(yx, expected);
        assert_eq!(yx.to_string(), "1/1 + 1/1 * x1 y1");
    }

    #[test]
    fn clifford_relations() {
        let e1 = W::e(2, 1);
        let e2 = W::e(2, 2);
        assert_eq!(&e1 * &e1, W::one(2));
        assert_eq!(&e2 * &e1, -&(&e1 * &e2));
        assert_eq!((&e2 * &e1).to_string(), "-1/1 * e1 e2");
    }

    #[test]
    fn graded_commutator_examples() {
        let n = 2;
        assert_eq!(W::y(n, 1).graded_commutator(&W::x(n, 1)).unwrap(), W::one(n));
        assert!(W::e(n, 1).graded_commutator(&W::e(n, 2)).unwrap().is_zero());
        let mixed = &W::one(n) + &W::e(n, 1);
        assert_eq!(mixed.graded_commutator(&W::e(n, 2)), Err(Error::InhomogeneousParity));
    }

    #[test]
    fn context_mismatch_is_reported() {
        assert_eq!(W::x(2, 1).try_mul(&W::x(3, 1)), Err(Error::ContextMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn higher_power_contraction() {
        // y^2 x^2 = x^2 y^2 + 4 x y + 2
        let n = 1;
        let lhs = &W::y(n, 1).pow(2) * &W::x(n, 1).pow(2);
        let xy = &W::x(n, 1) * &W::y(n, 1);
        let rhs = &(&(&W::x(n, 1).pow(2) * &W::y(n, 1).pow(2)) + &xy.scale(&q(4, 1))) + &W::scalar(n, q(2, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quantization_examples() {
        let n = 2;
        let yx = quantize_w::<Rational>(n, &[Generator::Y(1), Generator::X(1)]);
        assert_eq!(yx, &(&W::x(n, 1) * &W::y(n, 1)) + &W::scalar(n, q(1, 2)));
        assert_eq!(quantize_w::<Rational>(n, &[Generator::X(1), Generator::X(1)]), W::x(n, 1).pow(2));
        assert_eq!(quantize_w::<Rational>(n, &[Generator::X(1), Generator::Y(2)]), &W::x(n, 1) * &W::y(n, 2));
        assert_eq!(quantize_c::<Rational>(n, &[1, 2]), &W::e(n, 1) * &W::e(n, 2));
        assert!(quantize_c::<Rational>(n, &[1, 1]).is_zero());
        assert_eq!(quantize_c::<Rational>(n, &[2, 1]), -&(&W::e(n, 1) * &W::e(n, 2)));
    }

    #[test]
    fn clifford_word_examples() {
        let n = 4;
        let e123 = &(&W::e(n, 1) * &W::e(n, 2)) * &W::e(n, 3);
        assert_eq!(clifford_word::<Rational>(n, &[1, 2, 3]), e123);
        assert_eq!(clifford_word::<Rational>(n, &[2, 1]), -&clifford_word::<Rational>(n, &[1, 2]));
        assert_eq!(clifford_word::<Rational>(n, &[1, 1]), W::one(n));
        let lhs = &clifford_word::<Rational>(n, &[1, 2]) * &clifford_word::<Rational>(n, &[1, 2, 3, 4]);
        assert_eq!(lhs, -&clifford_word::<Rational>(n, &[3, 4]));
    }

    #[test]
    fn symbol_inverts_quantization() {
        let n = 2;
        let m = Monomial::new(&[2, 1], &[1, 3], &[true, false]);
        let qm = weyl_quantize_monomial::<Rational>(n, &m);
        let sym = weyl_symbol(&qm);
        assert_eq!(sym.len(), 1);
        assert_eq!(sym[&m], q(1, 1));
    }

    #[test]
    fn parity_classification() {
        let n = 2;
        assert_eq!(W::x(n, 1).parity(), Parity::Even);
        assert_eq!(W::e(n, 1).parity(), Parity::Odd);
        assert_eq!((&W::e(n, 1) + &W::x(n, 2)).parity(), Parity::Inhomogeneous);
    }

    #[test]
    fn float_scalars_work_for_quick_experiments() {
        let n = 1;
        let yx = &WcElement::<f64>::y(n, 1) * &WcElement::<f64>::x(n, 1);
        assert_eq!(yx.coeff(&Monomial::ONE), 1.0);
    }
}
