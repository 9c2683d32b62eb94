//! Slow reference implementations used to cross-check the fast paths.

use std::collections::HashMap;

use crate::monomial::Monomial;
use crate::scalar::Scalar;
use crate::wc::{Generator, WcElement};

fn rank(g: &Generator) -> (u8, usize) {
    match *g {
        Generator::X(i) => (0, i),
        Generator::Y(i) => (1, i),
        Generator::E(i) => (2, i),
    }
}

/// Normal-orders a word by applying the defining relations one adjacent swap
/// at a time.
pub fn normal_order_by_swaps<S: Scalar>(n: usize, word: &[Generator]) -> WcElement<S> {
    let mut pending: Vec<(Vec<Generator>, S)> = vec![(word.to_vec(), S::one())];
    let mut done: HashMap<Vec<Generator>, S> = HashMap::new();
    while let Some((w, c)) = pending.pop() {
        let pos = (0..w.len().saturating_sub(1)).find(|&t| rank(&w[t]) >= rank(&w[t + 1]) && !is_commuting_equal(&w[t], &w[t + 1]));
        let Some(t) = pos else {
            let slot = done.entry(w).or_insert_with(S::zero);
            *slot = slot.clone() + c;
            continue;
        };
        let (a, b) = (w[t], w[t + 1]);
        let mut swapped = w.clone();
        swapped.swap(t, t + 1);
        match (a, b) {
            (Generator::E(i), Generator::E(j)) if i == j => {
                let mut shorter = w.clone();
                shorter.drain(t..t + 2);
                pending.push((shorter, c));
            }
            (Generator::E(_), Generator::E(_)) => pending.push((swapped, -c)),
            (Generator::Y(i), Generator::X(j)) => {
                if i == j {
                    let mut shorter = w.clone();
                    shorter.drain(t..t + 2);
                    pending.push((shorter, c.clone()));
                }
                pending.push((swapped, c));
            }
            _ => pending.push((swapped, c)),
        }
    }
    WcElement::from_terms(n, done.into_iter().map(|(w, c)| (word_to_monomial(&w), c)))
}

fn is_commuting_equal(a: &Generator, b: &Generator) -> bool {
    // x_i x_i and y_i y_i are already in order; e_i e_i must still reduce.
    a == b && !matches!(a, Generator::E(_))
}

fn word_to_monomial(w: &[Generator]) -> Monomial {
    let mut m = Monomial::ONE;
    for g in w {
        match *g {
            Generator::X(i) => m.x[i - 1] += 1,
            Generator::Y(i) => m.y[i - 1] += 1,
            Generator::E(i) => m.e |= 1 << (i - 1),
        }
    }
    m
}

/// `ω(u, v)` on generators of `𝒱`: `ω(y_i, x_j) = δ_ij = -ω(x_j, y_i)`.
pub fn omega(u: &Generator, v: &Generator) -> i64 {
    match (*u, *v) {
        (Generator::Y(i), Generator::X(j)) if i == j => 1,
        (Generator::X(i), Generator::Y(j)) if i == j => -1,
        _ => 0,
    }
}

/// Permanent of a square integer matrix by Ryser's formula.
pub fn permanent(m: &[Vec<i64>]) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut total: i128 = 0;
    for subset in 1u32..(1 << k) {
        let mut prod: i128 = 1;
        for row in m {
            let s: i128 = (0..k).filter(|&c| subset & (1 << c) != 0).map(|c| row[c] as i128).sum();
            prod *= s;
            if prod == 0 {
                break;
            }
        }
        let sign = if (k as u32 - subset.count_ones()) % 2 == 0 { 1 } else { -1 };
        total += sign * prod;
    }
    total
}

/// `κ(u_1 ⋯ u_p, v_1 ⋯ v_p)` evaluated literally as the permanent of
/// `ω(u_i, v_j)`.
pub fn kostant_bruteforce<S: Scalar>(u: &[Generator], v: &[Generator]) -> S {
    if u.len() != v.len() {
        return S::zero();
    }
    let m: Vec<Vec<i64>> = u.iter().map(|a| v.iter().map(|b| omega(a, b)).collect()).collect();
    let p = permanent(&m);
    S::from_integer(i64::try_from(p).expect("permanent too large"))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    heap_permute(k, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, a, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, a, out);
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// `1/m! Σ_π v_{π(1)} ⋯ v_{π(m)}` by explicit multiplication.
pub fn quantize_w_literal<S: Scalar>(n: usize, word: &[Generator]) -> WcElement<S> {
    let perms = permutations(word.len());
    let mut sum = WcElement::zero(n);
    for p in &perms {
        let w: Vec<Generator> = p.iter().map(|&i| word[i]).collect();
        sum += &WcElement::from_word(n, &w);
    }
    sum.scale(&(S::one() / S::from_u128(perms.len() as u128)))
}

/// `1/m! Σ_π sgn(π) e_{a_{π(1)}} ⋯ e_{a_{π(m)}}` by explicit multiplication.
pub fn quantize_c_literal<S: Scalar>(n: usize, indices: &[usize]) -> WcElement<S> {
    let perms = permutations(indices.len());
    let mut sum = WcElement::zero(n);
    for p in &perms {
        let w: Vec<Generator> = p.iter().map(|&i| Generator::E(indices[i])).collect();
        let t = WcElement::from_word(n, &w);
        if permutation_is_odd(p) {
            sum -= &t;
        } else {
            sum += &t;
        }
    }
    sum.scale(&(S::one() / S::from_u128(perms.len() as u128)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wc::{quantize_c, quantize_w};
    use crate::Rational;
    use Generator::*;

    #[test]
    fn swap_rewriter_matches_relations() {
        let w = normal_order_by_swaps::<Rational>(1, &[Y(1), X(1)]);
        assert_eq!(w.to_string(), "1/1 + 1/1 * x1 y1");
        let e = normal_order_by_swaps::<Rational>(2, &[E(2), E(1), E(2)]);
        assert_eq!(e.to_string(), "-1/1 * e1");
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(kostant_bruteforce::<Rational>(&[X(1), X(1)], &[Y(1), Y(1)]), crate::scalar::int(2));
        assert_eq!(kostant_bruteforce::<Rational>(&[Y(1)], &[X(1)]), crate::scalar::int(1));
        assert_eq!(kostant_bruteforce::<Rational>(&[X(1)], &[Y(2)]), crate::scalar::int(0));
        assert_eq!(kostant_bruteforce::<Rational>(&[X(1)], &[Y(1), X(1)]), crate::scalar::int(0));
        assert_eq!(permanent(&[vec![1, 2], vec![3, 4]]), 10);
    }

    #[test]
    fn literal_quantisations_agree() {
        let n = 2;
        let word = [Y(1), X(1), Y(1), X(2)];
        assert_eq!(quantize_w_literal::<Rational>(n, &word), quantize_w::<Rational>(n, &word));
        assert_eq!(quantize_c_literal::<Rational>(n, &[2, 1]), quantize_c::<Rational>(n, &[2, 1]));
        assert!(quantize_c_literal::<Rational>(n, &[1, 1]).is_zero());
    }
}
