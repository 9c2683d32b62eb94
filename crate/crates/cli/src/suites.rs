//! Verification suites. Each suite returns its records in a deterministic
//! order; independent instances run on the rayon pool.

use std::collections::HashMap;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use tama_core::ama::{check_injectivity, check_triangularity, crossing_relation_element, crossing_relation_element_swapped_deltas, enumerate_noncrossing};
use tama_core::gr::gr_l;
use tama_core::oracle::{kostant_bruteforce, normal_order_by_swaps};
use tama_core::pairing::kostant_pairing;
use tama_core::scalar::{int, ratio};
use tama_core::tama::{self as t, OspGenerators, PairSumMode, TableauEvaluator};
use tama_core::uncross::{self as u, OPoly, TamaDiagram};
use tama_core::wc::{clifford_word, quantize_w};
use tama_core::{Generator, Gr, Rational, Wc};

use crate::expr;
use crate::report::Record;

#[derive(Debug, Clone)]
pub struct Options {
    pub n: Option<usize>,
    pub degree: Option<u32>,
    pub max_degree: Option<u32>,
    pub seed: u64,
    pub cap: u64,
    pub count: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { n: None, degree: None, max_degree: None, seed: 0x7a3a, cap: t::DEFAULT_CAP, count: 500 }
    }
}

pub const SUITES: &[&str] = &[
    "normal-order",
    "kostant",
    "crossing",
    "noncrossing",
    "projector",
    "centraliser",
    "commutation",
    "recursion",
    "tableau",
    "gram",
    "kernel",
    "gr-identities",
    "figure6",
    "uncrossable",
    "rules",
    "basis",
    "pbw",
    "parser",
];

pub fn run_suite(name: &str, o: &Options) -> Result<Vec<Record>, String> {
    match name {
        "normal-order" => Ok(normal_order(o)),
        "kostant" => Ok(kostant(o)),
        "crossing" => Ok(crossing(o)),
        "noncrossing" => Ok(noncrossing(o)),
        "projector" => Ok(projector(o)),
        "centraliser" => Ok(centraliser(o)),
        "commutation" => Ok(commutation(o)),
        "recursion" => Ok(recursion(o)),
        "tableau" => Ok(tableau(o)),
        "gram" => gram(o),
        "kernel" => Ok(kernel(o)),
        "gr-identities" => Ok(gr_identities(o)),
        "figure6" => Ok(figure6()),
        "uncrossable" => uncrossable(o),
        "rules" => rules(o),
        "basis" => basis(o),
        "pbw" => Ok(pbw(o)),
        "parser" => Ok(parser(o)),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, &Options { seed: o.seed, cap: o.cap, count: o.count, ..Options::default() })?);
            }
            Ok(out)
        }
        other => Err(format!("unknown suite `{other}`; known: {}, all", SUITES.join(", "))),
    }
}

fn timed(f: impl FnOnce() -> Record) -> Record {
    let start = Instant::now();
    let mut r = f();
    r.runtime_ms = start.elapsed().as_millis() as u64;
    r
}

fn dims(o: &Options, default: usize) -> Vec<usize> {
    match o.n {
        Some(n) => vec![n],
        None => (1..=default).collect(),
    }
}

fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> Vec<Generator> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            match rng.gen_range(0..3) {
                0 => Generator::X(i),
                1 => Generator::Y(i),
                _ => Generator::E(i),
            }
        })
        .collect()
}

fn normal_order(o: &Options) -> Vec<Record> {
    let max_n = o.n.unwrap_or(4);
    vec![timed(|| {
        let mut rng = StdRng::seed_from_u64(o.seed);
        let mut mismatches = Vec::new();
        for _ in 0..o.count {
            let n = rng.gen_range(1..=max_n);
            let w = random_word(&mut rng, n, 6);
            let fast = Wc::from_word(n, &w);
            let slow: Wc = normal_order_by_swaps(n, &w);
            if fast != slow {
                mismatches.push(format!("{w:?}"));
            }
        }
        Record::new("normal-order", json!({"count": o.count, "max_n": max_n, "max_len": 6, "seed": o.seed}), mismatches.is_empty())
            .residual(mismatches.len())
            .detail(json!({"mismatches": mismatches}))
    })]
}

fn weyl_words(n: usize, len: usize) -> Vec<Vec<Generator>> {
    let letters: Vec<Generator> = (1..=n).flat_map(|i| [Generator::X(i), Generator::Y(i)]).collect();
    let mut layer = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Generator>| {
                letters.iter().map(move |g| {
                    let mut v = w.clone();
                    v.push(*g);
                    v
                })
            })
            .collect();
    }
    layer
}

fn kostant(o: &Options) -> Vec<Record> {
    dims(o, 3)
        .into_iter()
        .map(|n| {
            timed(|| {
                let mut words: Vec<Vec<Generator>> = (0..=4).flat_map(|len| weyl_words(n, len)).collect();
                // Q_w depends only on the multiset of factors.
                for w in words.iter_mut() {
                    w.sort();
                }
                words.sort();
                words.dedup();
                let q: Vec<Wc> = words.iter().map(|w| quantize_w(n, w)).collect();
                let bad: usize = (0..words.len())
                    .into_par_iter()
                    .map(|a| (0..words.len()).filter(|&b| kostant_pairing(&q[a], &q[b]).ok() != Some(kostant_bruteforce::<Rational>(&words[a], &words[b]))).count())
                    .sum();
                Record::new("kostant", json!({"n": n, "max_len": 4}), bad == 0).residual(bad).detail(json!({"pairs": words.len() * words.len()}))
            })
        })
        .collect()
}

fn crossing(o: &Options) -> Vec<Record> {
    let n = o.n.unwrap_or(5);
    let tuples: Vec<[usize; 4]> = (0..n.pow(4)).map(|k| [k / n.pow(3) % n + 1, k / (n * n) % n + 1, k / n % n + 1, k % n + 1]).collect();
    let mut out: Vec<Record> = tuples
        .par_iter()
        .map(|&[i, j, k, l]| {
            timed(|| {
                let r = crossing_relation_element(n, i, j, k, l).expect("valid indices");
                Record::new("crossing", json!({"n": n, "ijkl": [i, j, k, l]}), r.is_zero()).residual(r.len())
            })
        })
        .collect();
    out.push(timed(|| {
        let failing = tuples.iter().filter(|&&[i, j, k, l]| !crossing_relation_element_swapped_deltas(n, i, j, k, l).unwrap().is_zero()).count();
        Record::new("crossing/printed-deltas", json!({"n": n}), true).detail(json!({"tuples": tuples.len(), "printed_form_nonzero": failing}))
    }));
    out
}

fn noncrossing(o: &Options) -> Vec<Record> {
    let max_p = o.max_degree.unwrap_or(3) as usize;
    let mut cases = Vec::new();
    for n in dims(o, 5).into_iter().filter(|&n| n >= 2) {
        for p in 1..=max_p {
            cases.push((n, p));
        }
    }
    cases
        .par_iter()
        .map(|&(n, p)| {
            timed(|| {
                let ds = enumerate_noncrossing(n, p);
                let inj = check_injectivity(n, p);
                let tri = ds.iter().filter(|d| !check_triangularity(d).unwrap_or(false)).count();
                Record::new("noncrossing", json!({"n": n, "p": p}), inj && tri == 0).residual(tri).detail(json!({"diagrams": ds.len(), "injective": inj}))
            })
        })
        .collect()
}

fn subsets(n: usize, min: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n)).map(|m| (1..=n).filter(|k| m & (1 << (k - 1)) != 0).collect::<Vec<usize>>()).filter(|a| a.len() >= min).collect()
}

fn projector(o: &Options) -> Vec<Record> {
    dims(o, 6)
        .into_par_iter()
        .map(|n| {
            timed(|| {
                let osp = OspGenerators::new(n);
                let mut bad = Vec::new();
                for i in 1..=n {
                    if !t::ad_p(&osp, &Wc::e(n, i)).unwrap().is_zero() {
                        bad.push(format!("ad_P(e{i})"));
                    }
                }
                for i in 1..=n {
                    for j in i + 1..=n {
                        let lhs = t::ad_p(&osp, &clifford_word(n, &[i, j])).unwrap().scale(&ratio(-1, 2));
                        if lhs != t::o2(n, i, j).unwrap() {
                            bad.push(format!("O{i}{j}"));
                        }
                    }
                }
                let sets = subsets(n, 2);
                for a in &sets {
                    if t::o_symmetry(&osp, a).unwrap() != t::o_symmetry_closed_form(n, a).unwrap() {
                        bad.push(format!("closed form {a:?}"));
                    }
                }
                let literal_differs = (1..=n).filter(|&i| t::ad_p_literal(&osp, &Wc::e(n, i)).map(|v| !v.is_zero()).unwrap_or(true)).count();
                Record::new("projector", json!({"n": n}), bad.is_empty())
                    .residual(bad.len())
                    .detail(json!({"subsets": sets.len(), "failures": bad, "literal_commutator_nonzero_on_e_i": literal_differs, "literal_commutator_on_1": t::ad_p_literal(&osp, &Wc::one(n)).unwrap().len()}))
            })
        })
        .collect()
}

fn centraliser(o: &Options) -> Vec<Record> {
    dims(o, 6)
        .into_par_iter()
        .filter(|&n| n >= 2)
        .map(|n| {
            timed(|| {
                let osp = OspGenerators::new(n);
                let sets = subsets(n, 2);
                let bad: Vec<String> = sets.iter().filter(|a| !t::centraliser_check(&osp, &t::o_symmetry(&osp, a).unwrap()).unwrap()).map(|a| format!("{a:?}")).collect();
                Record::new("centraliser", json!({"n": n}), bad.is_empty()).residual(bad.len()).detail(json!({"symmetries": sets.len()}))
            })
        })
        .collect()
}

fn commutation(o: &Options) -> Vec<Record> {
    dims(o, 6)
        .into_par_iter()
        .filter(|&n| n >= 3)
        .map(|n| {
            timed(|| {
                let osp = OspGenerators::new(n);
                let (mut total, mut bad, mut single, mut bare) = (0, 0, 0, 0);
                for i in 1..=n {
                    for j in i + 1..=n {
                        for p in 1..=n {
                            for q in p + 1..=n {
                                for r in q + 1..=n {
                                    total += 1;
                                    let c = t::comm_2_3(&osp, [i, j], [p, q, r]).unwrap();
                                    if c != t::comm_2_3_prediction(&osp, [i, j], [p, q, r]).unwrap() {
                                        bad += 1;
                                    }
                                    if [p, q, r].iter().filter(|&&v| v == i || v == j).count() == 1 {
                                        single += 1;
                                        if t::comm_2_3_bare_product_holds(&osp, [i, j], [p, q, r]).unwrap() {
                                            bare += 1;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                Record::new("commutation", json!({"n": n}), bad == 0)
                    .residual(bad)
                    .detail(json!({"configurations": total, "single_shared": single, "bare_product_holds": bare}))
            })
        })
        .collect()
}

fn recursion(o: &Options) -> Vec<Record> {
    let n = o.n.unwrap_or(6);
    (4..=n)
        .into_par_iter()
        .map(|k| {
            timed(|| {
                let osp = OspGenerators::new(n);
                let a: Vec<usize> = (1..=k).collect();
                let fit = t::higher_recursion_check(&osp, &a).unwrap();
                let fitted = fit.scalar.as_ref().map(|s| s.to_string());
                Record::new("recursion", json!({"n": n, "k": k}), fit.fits())
                    .residual(fit.residual_terms)
                    .detail(json!({"fitted": fitted, "printed": fit.printed.to_string(), "printed_matches": fit.scalar.as_ref() == Some(&fit.printed)}))
            })
        })
        .collect()
}

fn tableau(o: &Options) -> Vec<Record> {
    let ns = match o.n {
        Some(n) => vec![n],
        None => vec![4, 5, 6],
    };
    let mut out = Vec::new();
    for n in ns {
        if n < 4 {
            continue;
        }
        let quads = t::ascending_quads(n);
        let pairs: Vec<([usize; 4], [usize; 4])> = quads.iter().enumerate().flat_map(|(x, a)| quads[x..].iter().map(move |b| (*a, *b))).collect();
        out.extend(pairs.par_iter().map(|&(a, b)| {
            timed(|| {
                let r = TableauEvaluator::new(n).relation(a, b, PairSumMode::Permuted).unwrap();
                Record::new("tableau", json!({"n": n, "a": a, "b": b}), r.is_zero()).residual(r.len())
            })
        }).collect::<Vec<_>>());
        out.push(timed(|| {
            let transported_nonzero = pairs.par_iter().filter(|&&(a, b)| !TableauEvaluator::new(n).relation(a, b, PairSumMode::Transported).unwrap().is_zero()).count();
            Record::new("tableau/transported-pair-sum", json!({"n": n}), true).detail(json!({"pairs": pairs.len(), "nonzero": transported_nonzero}))
        }));
        out.extend(tableau_examples(n));
    }
    out
}

/// The two worked examples, in the form they are stated.
pub fn tableau_examples(n: usize) -> Vec<Record> {
    let mut out = Vec::new();
    let osp = OspGenerators::new(n);
    out.push(timed(|| {
        let oa = t::o_symmetry(&osp, &[1, 2, 3, 4]).unwrap();
        let mut rhs = Wc::scalar(n, ratio(3, 4));
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let o = t::o2(n, i, j).unwrap();
            rhs -= &(&o * &o);
        }
        let diff = &(&oa * &oa) - &rhs;
        Record::new("tableau-example/square", json!({"n": n, "a": [1, 2, 3, 4]}), diff.is_zero()).residual(diff.len())
    }));
    if n >= 5 {
        out.push(timed(|| {
            let oa = t::o_symmetry(&osp, &[1, 2, 3, 4]).unwrap();
            let ob = t::o_symmetry(&osp, &[1, 2, 3, 5]).unwrap();
            let mut diff = &(&oa * &ob) + &(&ob * &oa);
            for a in 1..=3 {
                let x = t::o2(n, a, 4).unwrap();
                let y = t::o2(n, a, 5).unwrap();
                diff += &(&(&x * &y) + &(&y * &x));
            }
            Record::new("tableau-example/anticommutator", json!({"n": n, "a": [1, 2, 3, 4], "b": [1, 2, 3, 5]}), diff.is_zero()).residual(diff.len())
        }));
    }
    out.push(timed(|| {
        let c = t::tableau_intermediate_constant(&osp, [1, 2, 3, 4]).unwrap();
        let e: Wc = clifford_word(n, &[1, 2, 3, 4]);
        let leading_only = (&e * &e).coeff(&tama_core::Monomial::ONE) * int(-24);
        Record::new("tableau/intermediate-constant", json!({"n": n, "a": [1, 2, 3, 4]}), c == int(24))
            .detail(json!({"sum_sigma_constant": c.to_string(), "from_e_A_e_B_term": leading_only.to_string()}))
    }));
    out
}

fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    (0..n.pow(len as u32))
        .map(|mut k| {
            let mut v = vec![0; len];
            for s in (0..len).rev() {
                v[s] = k % n + 1;
                k /= n;
            }
            v
        })
        .collect()
}

fn gram(o: &Options) -> Result<Vec<Record>, String> {
    let degree = o.degree.unwrap_or(2);
    let n = o.n.unwrap_or(if degree == 2 { 6 } else { 5 });
    let all = match degree {
        2 | 3 => tuples(n, 2 * degree as usize),
        d => return Err(format!("gram supports --degree 2 or 3, got {d}")),
    };
    // The element set depends only on the multiset of the tuple.
    let mut keys: Vec<Vec<usize>> = all
        .iter()
        .map(|v| {
            let mut s = v.clone();
            s.sort();
            s
        })
        .collect();
    keys.sort();
    keys.dedup();
    let ranks: HashMap<Vec<usize>, (t::GramRank, u64)> = keys
        .par_iter()
        .map(|k| {
            let start = Instant::now();
            let g = if degree == 2 {
                t::gram_rank_degree2(n, [k[0], k[1], k[2], k[3]])
            } else {
                t::gram_rank_degree3(n, [k[0], k[1], k[2], k[3], k[4], k[5]])
            }
            .expect("indices in range");
            (k.clone(), (g, start.elapsed().as_millis() as u64))
        })
        .collect();
    let mut out: Vec<Record> = all
        .iter()
        .map(|v| {
            let mut s = v.clone();
            s.sort();
            let (g, ms) = ranks[&s];
            let mut r = Record::new("gram", json!({"n": n, "degree": degree, "tuple": v}), g.full()).matrix(g.size, g.rank);
            r.runtime_ms = ms;
            r
        })
        .collect();
    if degree == 3 && n < 6 && o.n.is_none() {
        out.push(timed(|| {
            let g = t::gram_rank_degree3(6, [1, 2, 3, 4, 5, 6]).unwrap();
            Record::new("gram", json!({"n": 6, "degree": 3, "tuple": [1, 2, 3, 4, 5, 6]}), g.full()).matrix(g.size, g.rank)
        }));
    }
    Ok(out)
}

fn kernel(o: &Options) -> Vec<Record> {
    let n = o.n.unwrap_or(4);
    let max_d = o.max_degree.or(o.degree).unwrap_or(4) as usize;
    (2..=max_d)
        .map(|d| {
            timed(|| match t::kernel_probe_degree(n, d, o.cap) {
                Ok(k) => {
                    let (pass, expected) = if d <= 3 {
                        (k.kernel == 0, json!(0))
                    } else if d == 4 {
                        let top = t::tableau_top_rank(n);
                        (k.kernel == top, json!({"tableau_top_rank": top}))
                    } else {
                        (true, Value::Null)
                    };
                    Record::new("kernel", json!({"n": n, "d": d, "cap": o.cap}), pass)
                        .matrix(k.monomials, k.rank)
                        .detail(json!({"kernel": k.kernel, "expected": expected}))
                }
                Err(e) => {
                    let mut r = Record::new("kernel", json!({"n": n, "d": d, "cap": o.cap}), true).detail(json!({"error": e.to_string()}));
                    r.status = crate::report::Status::Skipped;
                    r
                }
            })
        })
        .collect()
}

fn plucker_zero(n: usize) -> (usize, usize) {
    let mut total = 0;
    let mut bad = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    total += 1;
                    let g = |a, b| -> Gr { gr_l(n, a, b).unwrap() };
                    let v = &(&(&g(i, j) * &g(k, l)) - &(&g(i, k) * &g(j, l))) + &(&g(i, l) * &g(j, k));
                    if !v.is_zero() {
                        bad += 1;
                    }
                }
            }
        }
    }
    (total, bad)
}

fn gr_identities(o: &Options) -> Vec<Record> {
    let n = o.n.unwrap_or(5).max(4);
    let mut out = vec![timed(|| {
        let (total, bad) = plucker_zero(n);
        Record::new("gr/plucker", json!({"n": n}), bad == 0).residual(bad).detail(json!({"quadruples": total}))
    })];
    out.push(timed(|| {
        let top = t::tableau_top_symbolic(4, [1, 2, 3, 4], [1, 2, 3, 4]);
        let g = top.to_gr();
        let wc_top = tama_core::gr::graded_component(&t::tableau_relation(4, [1, 2, 3, 4], [1, 2, 3, 4]).unwrap(), 8);
        Record::new("gr/double-crossing", json!({"n": 4, "a": [1, 2, 3, 4], "b": [1, 2, 3, 4]}), g.is_zero() && !top.is_zero() && wc_top.is_zero())
            .residual(g.len())
            .detail(json!({"relation": top.to_string()}))
    }));
    out.push(timed(|| match u::derive_rules(5) {
        Ok(rules) => {
            let bad = rules.iter().filter(|r| !r.certify()).count();
            let kinds: Vec<String> = rules.iter().map(|r| format!("{:?} {}", r.kind, r.pattern)).collect();
            Record::new("gr/n5-rules", json!({"n": 5}), bad == 0 && rules.len() == 15).residual(bad).detail(json!({"rules": kinds}))
        }
        Err(e) => Record::new("gr/n5-rules", json!({"n": 5}), false).detail(json!({"error": e.to_string()})),
    }));
    for d in u::printed_vs_derived().expect("derivable") {
        out.push(timed(|| {
            Record::new("gr/printed-vs-derived", json!({"relation": d.name}), d.derived_vanishes_in_gr).residual(d.difference.len()).detail(json!({
                "printed_vanishes_in_gr": d.printed_vanishes_in_gr,
                "derived_vanishes_in_gr": d.derived_vanishes_in_gr,
                "printed": d.printed.to_string(),
                "derived": d.derived.to_string(),
                "printed_minus_derived": d.difference.to_string(),
            }))
        }));
    }
    out
}

fn figure6() -> Vec<Record> {
    vec![timed(|| {
        let p = OPoly::product(4, int(1), &[(1, 3), (1, 3), (2, 4)]);
        let exp = u::expand_to_ama_ext(&p);
        let solved = u::expand_to_ama_ext_by_solving(&p);
        let support = u::figure6_support();
        let printed = u::figure6_printed();
        let same_support = exp.len() == 6 && support.iter().all(|d| exp.contains_key(d));
        let rows: Vec<Value> = support
            .iter()
            .zip(&printed)
            .map(|(d, pc)| {
                let derived = exp.get(d).cloned().unwrap_or_else(|| int(0));
                json!({"diagram": d.to_string(), "derived": derived.to_string(), "printed": pc.to_string(), "agrees": &derived == pc})
            })
            .collect();
        let discrepancies = rows.iter().filter(|r| r["agrees"] == json!(false)).count();
        Record::new("figure6", json!({"n": 4, "monomial": "O13^2 O24"}), same_support && solved.as_ref() == Some(&exp))
            .detail(json!({"support_size": exp.len(), "oracle_agrees": solved.as_ref() == Some(&exp), "coefficients": rows, "printed_discrepancies": discrepancies}))
    })]
}

fn uncrossable(o: &Options) -> Result<Vec<Record>, String> {
    let ns = match o.n {
        Some(n) => vec![n],
        None => vec![4, 5],
    };
    let mut out = Vec::new();
    for n in ns {
        let max_d = o.max_degree.unwrap_or(if n == 4 { 6 } else { 5 });
        for d in 1..=max_d {
            out.push(timed(|| {
                let all = TamaDiagram::enumerate(n, d);
                let closed: fn(&TamaDiagram) -> bool = if n == 4 { u::uncrossable_closed_form_n4 } else { u::uncrossable_closed_form_n5 };
                let bad = all.iter().filter(|x| u::is_uncrossable(x) != closed(x)).count();
                let count = all.iter().filter(|x| u::is_uncrossable(x)).count();
                Record::new("uncrossable", json!({"n": n, "d": d}), bad == 0).residual(bad).detail(json!({"monomials": all.len(), "uncrossable": count}))
            }));
        }
        if n != 4 && n != 5 {
            return Err(format!("uncrossable supports n = 4 or 5, got {n}"));
        }
    }
    Ok(out)
}

fn rules(o: &Options) -> Result<Vec<Record>, String> {
    let ns = match o.n {
        Some(n) => vec![n],
        None => vec![4, 5],
    };
    let mut out = Vec::new();
    for n in ns {
        let rs = u::derive_rules(n).map_err(|e| e.to_string())?;
        for r in &rs {
            out.push(timed(|| {
                Record::new("rule", json!({"n": n, "a": r.source.0, "b": r.source.1}), r.certify()).detail(json!({
                    "kind": format!("{:?}", r.kind),
                    "pattern": r.pattern.to_string(),
                    "replacement": r.replacement.to_string(),
                }))
            }));
        }
    }
    Ok(out)
}

fn basis(o: &Options) -> Result<Vec<Record>, String> {
    let ns = match o.n {
        Some(n) => vec![n],
        None => vec![4, 5],
    };
    let mut out = Vec::new();
    for n in ns {
        let rules = u::derive_rules(n).map_err(|e| e.to_string())?;
        let max_d = o.max_degree.unwrap_or(if n == 4 { 5 } else { 4 });
        let reports: Vec<(u32, u::BasisReport, u64)> = (1..=max_d)
            .into_par_iter()
            .map(|d| {
                let start = Instant::now();
                let r = u::independence_and_spanning_report(n, d, &rules).expect("n checked by derive_rules");
                (d, r, start.elapsed().as_millis() as u64)
            })
            .collect();
        for (d, r, ms) in reports {
            let params = json!({"n": n, "d": d});
            let mut s = Record::new("basis/spanning", params.clone(), r.spanning()).residual(r.monomials - r.spanning_ok).detail(json!({
                "monomials": r.monomials,
                "rewrite_steps": r.rewrite_steps,
                "measure_violations": r.measure_violations,
            }));
            s.runtime_ms = ms;
            out.push(s);
            out.push(Record::new("basis/witness-uniqueness", params.clone(), r.independent()).residual(r.uncrossable - r.witnessed).detail(json!({
                "uncrossable": r.uncrossable,
                "witnessed_some_choice": r.witnessed,
                "witnessed_first_choice": r.witnessed_first_choice,
            })));
            out.push(Record::new("basis/expansion-rank", params, r.expansion_rank == r.uncrossable).matrix(r.uncrossable, r.expansion_rank));
        }
    }
    Ok(out)
}

fn pbw(o: &Options) -> Vec<Record> {
    let n = o.n.unwrap_or(5);
    let span = match t::PbwSpan::new(n, 3) {
        Ok(s) => s,
        Err(e) => return vec![Record::new("pbw", json!({"n": n}), false).detail(json!({"error": e.to_string()}))],
    };
    let osp = OspGenerators::new(n);
    let choices: [([usize; 3], [usize; 3]); 3] = [([1, 2, 3], [1, 2, 3]), ([1, 2, 3], [1, 4, 5]), ([1, 2, 3], [3, 4, 5])];
    choices
        .iter()
        .filter(|(a, b)| a.iter().chain(b).all(|&v| v <= n))
        .map(|(a, b)| {
            timed(|| {
                let prod = &t::o_symmetry(&osp, a).unwrap() * &t::o_symmetry(&osp, b).unwrap();
                let coeffs = span.express(&prod);
                Record::new("pbw", json!({"n": n, "a": a, "b": b}), coeffs.is_some())
                    .detail(json!({"span_rank": span.rank(), "terms": coeffs.map(|c| c.len())}))
            })
        })
        .collect()
}

/// Random expression of depth at most `depth` over `n` variables.
pub fn random_expr(rng: &mut StdRng, depth: u32, n: usize) -> expr::Expr {
    use expr::Expr;
    if depth == 0 || rng.gen_range(0..4) == 0 {
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(1..=n);
        return match rng.gen_range(0..8) {
            0 => Expr::Num(Rational::new(rng.gen_range(0..20i64).into(), rng.gen_range(1..5i64).into())),
            1 => Expr::X(i),
            2 => Expr::Y(i),
            3 => Expr::E(i),
            4 => Expr::L(i, j),
            5 => Expr::O(vec![i, j]),
            6 => Expr::Dirac,
            _ => Expr::Coord,
        };
    }
    let sub = |rng: &mut StdRng| Box::new(random_expr(rng, depth - 1, n));
    match rng.gen_range(0..5) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        _ => Expr::Pow(sub(rng), rng.gen_range(0..4)),
    }
}

fn parser(o: &Options) -> Vec<Record> {
    vec![timed(|| {
        let mut rng = StdRng::seed_from_u64(o.seed);
        let mut failures = Vec::new();
        for _ in 0..o.count {
            let e = random_expr(&mut rng, 6, 4);
            let text = expr::render(&e);
            match expr::parse(&text) {
                Ok(back) if back == e => {}
                _ => failures.push(text),
            }
        }
        Record::new("parser/round-trip", json!({"count": o.count, "max_depth": 6, "seed": o.seed}), failures.is_empty())
            .residual(failures.len())
            .detail(json!({"failures": failures}))
    })]
}

/// `O`-monomial degree of a TAMA diagram as used by the rewrite command.
pub fn rewrite_report(p: &OPoly) -> Result<(OPoly, usize, bool), String> {
    let n = p.n();
    let rules = u::derive_rules(n).map_err(|e| e.to_string())?;
    let out = u::rewrite_to_uncrossable(p, &rules, u::DEFAULT_REWRITE_BUDGET).map_err(|e| e.to_string())?;
    let mut exp = u::AmaExtExpander::new();
    let certified = exp.expand(p) == exp.expand(&out.result);
    Ok((out.result, out.steps.len(), certified))
}
