use proptest::prelude::*;
use tama_core::oracle::{kostant_bruteforce, normal_order_by_swaps};
use tama_core::pairing::{beta_pairing, kostant_pairing};
use tama_core::wc::{clifford_word, quantize_w, weyl_quantize_monomial};
use tama_core::{Generator, Monomial, Rational, Wc};

fn generator(n: usize) -> impl Strategy<Value = Generator> {
    (0..3u8, 1..=n).prop_map(|(k, i)| match k {
        0 => Generator::X(i),
        1 => Generator::Y(i),
        _ => Generator::E(i),
    })
}

fn weyl_words(n: usize, max_len: usize) -> Vec<Vec<Generator>> {
    let letters: Vec<Generator> = (1..=n).flat_map(|i| [Generator::X(i), Generator::Y(i)]).collect();
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in &letters {
                let mut v: Vec<Generator> = w.clone();
                v.push(*g);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

fn sorted_key(w: &[Generator]) -> Vec<Generator> {
    let mut v = w.to_vec();
    v.sort();
    v
}

#[test]
fn kostant_closed_form_matches_permanent() {
    for n in 1..=3 {
        for len in 0..=4usize {
            // Q_w only depends on the multiset of factors.
            let mut reps: Vec<Vec<Generator>> = weyl_words(n, len).into_iter().filter(|w| w.len() == len).map(|w| sorted_key(&w)).collect();
            reps.sort();
            reps.dedup();
            let q: Vec<Wc> = reps.iter().map(|w| quantize_w(n, w)).collect();
            for (a, qa) in reps.iter().zip(&q) {
                for (b, qb) in reps.iter().zip(&q) {
                    assert_eq!(kostant_pairing(qa, qb).unwrap(), kostant_bruteforce::<Rational>(a, b), "{a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn kostant_basis_is_orthogonal() {
    let n = 2;
    let mut monos = Vec::new();
    for a in 0..3u8 {
        for b in 0..2u8 {
            for c in 0..3u8 {
                for d in 0..2u8 {
                    monos.push(Monomial::new(&[a, b], &[c, d], &[]));
                }
            }
        }
    }
    for m in &monos {
        for p in &monos {
            let v = kostant_pairing(&weyl_quantize_monomial::<Rational>(n, m), &weyl_quantize_monomial(n, p)).unwrap();
            assert_eq!(v != tama_core::scalar::int(0), *p == m.swap_xy(), "{m:?} {p:?}");
        }
    }
}

#[test]
fn beta_gram_is_nondegenerate_through_degree_three() {
    let n = 2;
    let mut basis = Vec::new();
    for a0 in 0..=3u8 {
        for a1 in 0..=3u8 {
            for b0 in 0..=3u8 {
                for b1 in 0..=3u8 {
                    for g in 0..4u8 {
                        let m = Monomial::new(&[a0, a1], &[b0, b1], &[g & 1 != 0, g & 2 != 0]);
                        if m.degree() <= 3 {
                            basis.push(Wc::monomial(n, m, tama_core::scalar::int(1)));
                        }
                    }
                }
            }
        }
    }
    let gram: Vec<Vec<Rational>> = basis.iter().map(|u| basis.iter().map(|v| beta_pairing(u, v).unwrap()).collect()).collect();
    assert_eq!(tama_core::linalg::rank_rational(&gram), basis.len());
}

#[test]
fn clifford_identities_hold() {
    for n in 2..=5usize {
        let seqs = distinct_sequences(n, 5);
        for a in &seqs {
            let k = a.len();
            let ea: Wc = clifford_word(n, a);
            for p in 0..k {
                for q in p + 1..k {
                    let pair: Wc = clifford_word(n, &[a[p], a[q]]);
                    let rest: Vec<usize> = a.iter().enumerate().filter(|&(t, _)| t != p && t != q).map(|(_, &v)| v).collect();
                    let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
                    let rhs = clifford_word::<Rational>(n, &rest).scale(&tama_core::scalar::int(sign));
                    assert_eq!(&pair * &ea, rhs, "{a:?} {p} {q}");
                    let rev: Wc = clifford_word(n, &[a[q], a[p]]);
                    let e_rest: Wc = clifford_word(n, &rest);
                    assert_eq!(&rev * &e_rest, ea.scale(&tama_core::scalar::int(sign)));
                    let sign2 = if (k * (k - 1) / 2 + p + q) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(&e_rest * &ea, pair.scale(&tama_core::scalar::int(sign2)));
                    assert_eq!(&ea * &pair, rhs, "{a:?} {p} {q}");
                    let single: Wc = clifford_word(n, &[a[p]]);
                    let rest_p: Vec<usize> = a.iter().enumerate().filter(|&(t, _)| t != p).map(|(_, &v)| v).collect();
                    let sign_p = if p % 2 == 0 { 1 } else { -1 };
                    assert_eq!(&single * &ea, clifford_word::<Rational>(n, &rest_p).scale(&tama_core::scalar::int(sign_p)));
                }
            }
        }
    }
}

fn distinct_sequences(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len.min(n) {
        let mut next = Vec::new();
        for s in &layer {
            for i in 1..=n {
                if !s.contains(&i) {
                    let mut t = s.clone();
                    t.push(i);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

proptest! {
    #[test]
    fn fast_product_matches_swap_rewriter(word in (1..=4usize).prop_flat_map(|n| (Just(n), prop::collection::vec(generator(n), 0..=6)))) {
        let (n, w) = word;
        let fast = Wc::from_word(n, &w);
        let slow = normal_order_by_swaps::<Rational>(n, &w);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn multiplication_is_associative(words in (1..=4usize).prop_flat_map(|n| (Just(n), prop::collection::vec(generator(n), 0..=4), prop::collection::vec(generator(n), 0..=4), prop::collection::vec(generator(n), 0..=4)))) {
        let (n, a, b, c) = words;
        let (a, b, c) = (Wc::from_word(n, &a), Wc::from_word(n, &b), Wc::from_word(n, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
}
