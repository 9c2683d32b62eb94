//! The associated graded algebra `gr(WC) ≅ S(V ⊕ V*) ⊗ ∧(V)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::monomial::{reorder_sign, Monomial};
use crate::scalar::Scalar;
use crate::wc::{accumulate, render_terms, WcElement};

/// Supercommutative element: polynomial part commutes with everything, the
/// exterior part anticommutes and squares to zero.
#[derive(Clone, PartialEq)]
pub struct GrElement<S: Scalar> {
    n: usize,
    terms: HashMap<Monomial, S>,
}

/// Product of two gr monomials, `None` when the exterior parts overlap.
pub fn gr_monomial_product(a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
    if a.e & b.e != 0 {
        return None;
    }
    let mut m = a.mul_commutative(b);
    m.e = a.e | b.e;
    Some((m, reorder_sign(a.e, b.e)))
}

impl<S: Scalar> GrElement<S> {
    pub fn zero(n: usize) -> Self {
        GrElement { n, terms: HashMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::ONE, S::one())
    }

    pub fn scalar(n: usize, c: S) -> Self {
        Self::monomial(n, Monomial::ONE, c)
    }

    pub fn monomial(n: usize, m: Monomial, c: S) -> Self {
        let mut out = Self::zero(n);
        out.add_term(m, c);
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.x[i - 1] = 1;
        Self::monomial(n, m, S::one())
    }

    pub fn y(n: usize, i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.y[i - 1] = 1;
        Self::monomial(n, m, S::one())
    }

    pub fn e(n: usize, i: usize) -> Self {
        Self::monomial(n, Monomial { e: 1 << (i - 1), ..Monomial::ONE }, S::one())
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

    pub fn sorted_terms(&self) -> Vec<(Monomial, S)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        accumulate(&mut self.terms, m, c);
        if self.terms[&m].is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        GrElement { n: self.n, terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())).collect() }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| !m.is_odd())
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.is_odd())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ContextMismatch { left: self.n, right: other.n });
        }
        let mut acc = HashMap::with_capacity(self.len() * other.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, neg)) = gr_monomial_product(a, b) {
                    let v = ca.clone() * cb.clone();
                    accumulate(&mut acc, m, if neg { -v } else { v });
                }
            }
        }
        acc.retain(|_, v: &mut S| !v.is_zero());
        Ok(GrElement { n: self.n, terms: acc })
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    pub fn to_canonical_string(&self) -> String {
        format!("gr: {}", render_terms(&self.sorted_terms()))
    }
}

/// `gr_multiply`.
pub fn gr_multiply<S: Scalar>(u: &GrElement<S>, v: &GrElement<S>) -> Result<GrElement<S>> {
    u.try_mul(v)
}

/// Top-degree part of `u`, viewed in the associated graded.
pub fn leading_part<S: Scalar>(u: &WcElement<S>) -> Result<GrElement<S>> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(GrElement::from_terms(u.n(), u.top_terms()))
}

/// Terms of `u` in filtration degree exactly `d`, viewed in gr. Zero when `u`
/// has no such terms.
pub fn graded_component<S: Scalar>(u: &WcElement<S>, d: u32) -> GrElement<S> {
    GrElement::from_terms(u.n(), u.terms().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())))
}

/// `𝖫_ij = 𝗑_i 𝗒_j − 𝗑_j 𝗒_i`.
pub fn gr_l<S: Scalar>(n: usize, i: usize, j: usize) -> Result<GrElement<S>> {
    check_pair(n, i, j)?;
    Ok(&(&GrElement::x(n, i) * &GrElement::y(n, j)) - &(&GrElement::x(n, j) * &GrElement::y(n, i)))
}

/// `𝖮_ij = 𝖫_ij + ½ 𝖾_i 𝖾_j`.
pub fn gr_o<S: Scalar>(n: usize, i: usize, j: usize) -> Result<GrElement<S>> {
    let l = gr_l(n, i, j)?;
    let ee = &GrElement::e(n, i) * &GrElement::e(n, j);
    Ok(&l + &ee.scale(&crate::scalar::half()))
}

pub(crate) fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
    }
    if i == j {
        return Err(Error::DegenerateChord(i));
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for GrElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<S: Scalar> fmt::Debug for GrElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {}", self.n, self.to_canonical_string())
    }
}

impl<'a, S: Scalar> Add for &'a GrElement<S> {
    type Output = GrElement<S>;
    fn add(self, rhs: Self) -> GrElement<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, S: Scalar> Sub for &'a GrElement<S> {
    type Output = GrElement<S>;
    fn sub(self, rhs: Self) -> GrElement<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, S: Scalar> Mul for &'a GrElement<S> {
    type Output = GrElement<S>;
    fn mul(self, rhs: Self) -> GrElement<S> {
        self.try_mul(rhs).expect("context mismatch in multiplication")
    }
}

impl<'a, S: Scalar> Neg for &'a GrElement<S> {
    type Output = GrElement<S>;
    fn neg(self) -> GrElement<S> {
        GrElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<S: Scalar> AddAssign<&GrElement<S>> for GrElement<S> {
    fn add_assign(&mut self, rhs: &GrElement<S>) {
        assert_eq!(self.n, rhs.n, "context mismatch in addition");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&GrElement<S>> for GrElement<S> {
    fn sub_assign(&mut self, rhs: &GrElement<S>) {
        assert_eq!(self.n, rhs.n, "context mismatch in subtraction");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type G = GrElement<Rational>;
    type W = WcElement<Rational>;

    #[test]
    fn exterior_rules() {
        let n = 4;
        assert!((&G::e(n, 1) * &G::e(n, 1)).is_zero());
        assert_eq!(&G::e(n, 2) * &G::e(n, 1), -&(&G::e(n, 1) * &G::e(n, 2)));
        let e12 = &G::e(n, 1) * &G::e(n, 2);
        let e34 = &G::e(n, 3) * &G::e(n, 4);
        assert_eq!(&e12 * &e34, &e34 * &e12);
        assert_eq!((&e12 * &e34).to_string(), "gr: 1/1 * e1 e2 e3 e4");
    }

    #[test]
    fn leading_parts() {
        let n = 5;
        let xy = &(&W::x(n, 1) * &W::y(n, 1)) + &W::one(n);
        assert_eq!(leading_part(&xy).unwrap(), &G::x(n, 1) * &G::y(n, 1));
        assert_eq!(leading_part(&W::zero(n)), Err(Error::ZeroElement));
        let l = |i, j| &(&W::x(n, i) * &W::y(n, j)) - &(&W::x(n, j) * &W::y(n, i));
        let prod = &l(1, 3) * &l(2, 5);
        let gl = &gr_l::<Rational>(n, 1, 3).unwrap() * &gr_l(n, 2, 5).unwrap();
        assert_eq!(leading_part(&prod).unwrap(), gl);
        assert_eq!(gl.degree(), Some(4));
    }

    #[test]
    fn l_and_o() {
        let n = 4;
        assert_eq!(gr_l::<Rational>(n, 2, 1).unwrap(), -&gr_l(n, 1, 2).unwrap());
        assert_eq!(gr_l::<Rational>(n, 1, 1), Err(Error::DegenerateChord(1)));
        let l = |i, j| gr_l::<Rational>(n, i, j).unwrap();
        let pl = &(&(&l(1, 2) * &l(3, 4)) + &(&l(1, 3) * &l(4, 2))) + &(&l(1, 4) * &l(2, 3));
        assert!(pl.is_zero());
        let o = gr_o::<Rational>(n, 1, 2).unwrap();
        let expected = &(&l(1, 2) * &l(1, 2)) + &(&l(1, 2) * &(&G::e(n, 1) * &G::e(n, 2)));
        assert_eq!(&o * &o, expected);
    }
}
