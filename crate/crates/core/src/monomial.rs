//! Monomials `x^α y^β e^γ` shared by the Weyl-Clifford algebra and its
//! associated graded algebra.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported dimension `n`.
pub const MAX_DIM: usize = 16;

/// A monomial `x^α y^β e^γ` with x-factors before y-factors before ascending
/// Clifford (or exterior) factors. Indices are stored 0-based; all public
/// constructors and text forms are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) x: [u8; MAX_DIM],
    pub(crate) y: [u8; MAX_DIM],
    pub(crate) e: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: [0; MAX_DIM], y: [0; MAX_DIM], e: 0 };

    pub fn new(alpha: &[u8], beta: &[u8], gamma: &[bool]) -> Monomial {
        assert!(alpha.len() <= MAX_DIM && beta.len() <= MAX_DIM && gamma.len() <= MAX_DIM);
        let mut m = Monomial::ONE;
        m.x[..alpha.len()].copy_from_slice(alpha);
        m.y[..beta.len()].copy_from_slice(beta);
        for (i, &g) in gamma.iter().enumerate() {
            if g {
                m.e |= 1 << i;
            }
        }
        m
    }

    pub fn x_exp(&self, i: usize) -> u8 {
        self.x[i - 1]
    }

    pub fn y_exp(&self, i: usize) -> u8 {
        self.y[i - 1]
    }

    pub fn has_e(&self, i: usize) -> bool {
        self.e & (1 << (i - 1)) != 0
    }

    pub fn alpha(&self) -> &[u8; MAX_DIM] {
        &self.x
    }

    pub fn beta(&self) -> &[u8; MAX_DIM] {
        &self.y
    }

    pub fn gamma_mask(&self) -> u16 {
        self.e
    }

    pub fn weyl_degree(&self) -> u32 {
        self.x.iter().chain(self.y.iter()).map(|&v| v as u32).sum()
    }

    pub fn clifford_degree(&self) -> u32 {
        self.e.count_ones()
    }

    /// `|α| + |β| + |γ|`.
    pub fn degree(&self) -> u32 {
        self.weyl_degree() + self.clifford_degree()
    }

    pub fn is_odd(&self) -> bool {
        self.e.count_ones() % 2 == 1
    }

    pub fn weyl_part(&self) -> Monomial {
        Monomial { e: 0, ..*self }
    }

    pub fn clifford_part(&self) -> Monomial {
        Monomial { e: self.e, ..Monomial::ONE }
    }

    /// Largest index (1-based) appearing in the monomial, 0 for the unit.
    pub fn max_index(&self) -> usize {
        (0..MAX_DIM)
            .rev()
            .find(|&i| self.x[i] > 0 || self.y[i] > 0 || self.e & (1 << i) != 0)
            .map_or(0, |i| i + 1)
    }

    /// Exchange the roles of x and y; the partner of `self` under the
    /// Kostant pairing.
    pub fn swap_xy(&self) -> Monomial {
        Monomial { x: self.y, y: self.x, e: self.e }
    }

    pub(crate) fn gamma_key(&self) -> u16 {
        self.e.reverse_bits()
    }

    pub(crate) fn mul_commutative(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_DIM {
            out.x[i] = out.x[i].checked_add(other.x[i]).expect("exponent overflow");
            out.y[i] = out.y[i].checked_add(other.y[i]).expect("exponent overflow");
        }
        out.e = 0;
        out
    }

    pub(crate) fn render(&self) -> String {
        let mut parts = Vec::new();
        for (letter, exps) in [("x", &self.x), ("y", &self.y)] {
            for (i, &a) in exps.iter().enumerate() {
                match a {
                    0 => {}
                    1 => parts.push(format!("{letter}{}", i + 1)),
                    _ => parts.push(format!("{letter}{}^{a}", i + 1)),
                }
            }
        }
        for i in 0..MAX_DIM {
            if self.e & (1 << i) != 0 {
                parts.push(format!("e{}", i + 1));
            }
        }
        parts.join(" ")
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree, then α, then β, then γ.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.y.cmp(&other.y))
            .then_with(|| self.gamma_key().cmp(&other.gamma_key()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.render();
        if r.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&r)
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Sign of `e^a e^b` after sorting into ascending order, ignoring the
/// cancellation of repeated factors: `(-1)^{#{(i,j) : i ∈ a, j ∈ b, i > j}}`.
pub(crate) fn reorder_sign(a: u16, b: u16) -> bool {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 15 { 0 } else { a & (u16::MAX << (j + 1)) };
        swaps += above.count_ones();
    }
    swaps % 2 == 1
}
