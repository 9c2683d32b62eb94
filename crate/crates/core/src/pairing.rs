//! The Kostant, determinant and product pairings.
//!
//! On `W` the Kostant pairing is the one induced from `S(𝒱)` by the
//! quantisation map: an element is first written on the symmetrised basis
//! `Q_w(x^α y^β)` and then paired by
//! `κ(x^α y^β, x^μ y^ν) = (-1)^{|α|} δ_{α,ν} δ_{β,μ} α! β!`.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{factorial, Scalar};
use crate::wc::{weyl_symbol, WcElement};

fn multi_factorial<S: Scalar>(exps: &[u8]) -> S {
    exps.iter().fold(S::one(), |acc, &a| acc * S::from_u128(factorial(a as u32)))
}

/// `κ` on a pair of symmetric monomials (Clifford parts ignored).
pub fn kostant_monomial<S: Scalar>(a: &Monomial, b: &Monomial) -> S {
    if a.x != b.y || a.y != b.x {
        return S::zero();
    }
    let v = multi_factorial::<S>(&a.x) * multi_factorial::<S>(&a.y);
    let ax: u32 = a.x.iter().map(|&v| v as u32).sum();
    if ax % 2 == 1 {
        -v
    } else {
        v
    }
}

fn check_same_n<S: Scalar>(u: &WcElement<S>, v: &WcElement<S>) -> Result<()> {
    if u.n() != v.n() {
        return Err(Error::ContextMismatch { left: u.n(), right: v.n() });
    }
    Ok(())
}

fn symbol_pair<S: Scalar>(u: &WcElement<S>, v: &WcElement<S>) -> S {
    let su = weyl_symbol(u);
    let sv = weyl_symbol(v);
    let mut total = S::zero();
    for (m, c) in &su {
        let partner = Monomial { x: m.y, y: m.x, e: m.e };
        if let Some(d) = sv.get(&partner) {
            total = total + c.clone() * d.clone() * kostant_monomial::<S>(&m.weyl_part(), &partner.weyl_part());
        }
    }
    total
}

pub fn kostant_pairing<S: Scalar>(u: &WcElement<S>, v: &WcElement<S>) -> Result<S> {
    check_same_n(u, v)?;
    if !u.is_weyl_only() || !v.is_weyl_only() {
        return Err(Error::CliffordFactorsPresent);
    }
    Ok(symbol_pair(u, v))
}

/// `δ` on `C`: the basis `e^γ` is orthonormal.
pub fn det_pairing<S: Scalar>(u: &WcElement<S>, v: &WcElement<S>) -> Result<S> {
    check_same_n(u, v)?;
    if !u.is_clifford_only() || !v.is_clifford_only() {
        return Err(Error::WeylFactorsPresent);
    }
    Ok(u.terms().fold(S::zero(), |acc, (m, c)| acc + c.clone() * v.coeff(m)))
}

/// `β = κ ⊗ δ`.
pub fn beta_pairing<S: Scalar>(u: &WcElement<S>, v: &WcElement<S>) -> Result<S> {
    check_same_n(u, v)?;
    Ok(symbol_pair(u, v))
}
