//! Exact linear algebra: fraction-free rank, incremental echelon forms and
//! rational solving with provenance.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Rank of a dense integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Scales a rational row to a primitive integer row.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for v in row {
        l = l.lcm(v.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|v| v / &g).collect()
    }
}

/// Exact rank of a dense rational matrix.
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    bareiss_rank(m.iter().map(|r| integer_row(r)).collect())
}

/// Sparse integer row, sorted by column, without zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Converts a sparse rational row to a primitive integer row.
pub fn sparse_integer_row(row: &[(usize, Rational)]) -> SparseRow {
    let mut sorted: Vec<(usize, Rational)> = row.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
    sorted.sort_by_key(|(c, _)| *c);
    let values: Vec<Rational> = sorted.iter().map(|(_, v)| v.clone()).collect();
    let ints = integer_row(&values);
    sorted.into_iter().map(|(c, _)| c).zip(ints).collect()
}

fn combine(a: &BigInt, r: &SparseRow, b: &BigInt, p: &SparseRow) -> SparseRow {
    // a*r - b*p
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j == p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i == r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let g = out.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in out.iter_mut() {
            *v /= &g;
        }
    }
    out
}

/// Row-echelon form over the integers built one row at a time, with content
/// normalisation after every elimination step.
#[derive(Debug, Default, Clone)]
pub struct IntEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((lead, lv)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let pv = &p[0].1;
            let g = pv.gcd(&lv);
            row = combine(&(pv / &g), &row, &(&lv / &g), p);
        }
        row
    }

    /// Adds a row; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        if r[0].1.is_negative() {
            for (_, v) in r.iter_mut() {
                *v = -v.clone();
            }
        }
        self.pivots.insert(r[0].0, r);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Assigns dense column indices to arbitrary keys.
#[derive(Debug, Clone)]
pub struct ColumnIndex<K: Hash + Eq + Clone> {
    map: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> Default for ColumnIndex<K> {
    fn default() -> Self {
        ColumnIndex { map: HashMap::new() }
    }
}

impl<K: Hash + Eq + Clone> ColumnIndex<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, k: &K) -> usize {
        let next = self.map.len();
        *self.map.entry(k.clone()).or_insert(next)
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.map.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

type RatRow = Vec<(usize, Rational)>;

fn rat_axpy(row: &RatRow, c: &Rational, p: &RatRow) -> RatRow {
    // row - c * p
    let mut out = Vec::with_capacity(row.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < p.len() {
        if j == p.len() || (i < row.len() && row[i].0 < p[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || p[j].0 < row[i].0 {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - c * &p[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rational echelon form that remembers, for every pivot, which inserted
/// vectors it came from. Used to express a target in terms of a spanning
/// family.
#[derive(Debug, Default, Clone)]
pub struct RationalSolver {
    pivots: BTreeMap<usize, (RatRow, RatRow)>,
    inserted: usize,
}

impl RationalSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts vector number `self.inserted` (returned), independent or not.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> usize {
        let id = self.inserted;
        self.inserted += 1;
        let mut r = normalise(row);
        let mut prov: RatRow = vec![(id, Rational::one())];
        while let Some((lead, lv)) = r.first().cloned() {
            let Some((p, pprov)) = self.pivots.get(&lead) else { break };
            r = rat_axpy(&r, &lv, p);
            prov = rat_axpy(&prov, &lv, pprov);
        }
        if let Some((lead, lv)) = r.first().cloned() {
            let inv = lv.recip();
            let r: RatRow = r.into_iter().map(|(c, v)| (c, v * &inv)).collect();
            let prov: RatRow = prov.into_iter().map(|(c, v)| (c, v * &inv)).collect();
            self.pivots.insert(lead, (r, prov));
        }
        id
    }

    /// Coefficients `c_id` with `Σ c_id · vector_id = target`, if any.
    pub fn express(&self, target: &[(usize, Rational)]) -> Option<Vec<(usize, Rational)>> {
        let mut r = normalise(target);
        let mut combo: RatRow = Vec::new();
        while let Some((lead, lv)) = r.first().cloned() {
            let (p, pprov) = self.pivots.get(&lead)?;
            r = rat_axpy(&r, &lv, p);
            combo = rat_axpy(&combo, &-lv, pprov);
        }
        Some(combo)
    }
}

fn normalise(row: &[(usize, Rational)]) -> RatRow {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in row {
        *acc.entry(*c).or_insert_with(Rational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn bareiss_examples() {
        let m = vec![vec![big(1), big(2), big(3)], vec![big(2), big(4), big(6)], vec![big(1), big(0), big(1)]];
        assert_eq!(bareiss_rank(m), 2);
        let id: Vec<Vec<BigInt>> = (0..4).map(|i| (0..4).map(|j| big((i == j) as i64)).collect()).collect();
        assert_eq!(bareiss_rank(id), 4);
        assert_eq!(rank_rational(&[vec![ratio(1, 2), ratio(1, 3)], vec![int(3), int(2)]]), 1);
    }

    #[test]
    fn echelon_matches_dense_rank() {
        let rows = vec![vec![(0, int(1)), (2, int(1))], vec![(1, int(2)), (2, int(4))], vec![(0, int(2)), (1, int(2)), (2, int(6))]];
        let mut e = IntEchelon::new();
        let flags: Vec<bool> = rows.iter().map(|r| e.insert(sparse_integer_row(r))).collect();
        assert_eq!(flags, vec![true, true, false]);
        assert!(e.contains(sparse_integer_row(&[(0, int(3)), (2, int(3))])));
        assert!(!e.contains(sparse_integer_row(&[(0, int(1))])));
    }

    #[test]
    fn solver_expresses_targets() {
        let mut s = RationalSolver::new();
        s.insert(&[(0, int(1)), (1, int(1))]);
        s.insert(&[(1, int(1)), (2, int(1))]);
        s.insert(&[(0, int(1)), (1, int(2)), (2, int(1))]);
        let combo = s.express(&[(0, int(2)), (1, int(3)), (2, int(1))]).unwrap();
        let mut total = vec![int(0), int(0), int(0)];
        let vecs = [[1, 1, 0], [0, 1, 1], [1, 2, 1]];
        for (id, c) in combo {
            for k in 0..3 {
                total[k] += &c * int(vecs[id][k]);
            }
        }
        assert_eq!(total, vec![int(2), int(3), int(1)]);
        assert!(s.express(&[(0, int(1))]).is_none());
    }
}
