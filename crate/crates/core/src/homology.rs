//! Integer simplicial homology through Smith normal form.
//!
//! Elimination first removes unit pivots sparsely with machine integers
//! (falling back to big integers on overflow); what remains is reduced by a
//! dense arbitrary-precision Smith normal form.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::simplicial::{Label, Simplex, SimplicialComplex};

/// Sparse integer matrix, stored by rows with strictly increasing column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                t.data[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                d[i][*j] = x.clone();
            }
        }
        d
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (k, a) in r {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(BigInt::zero) += a * b;
                }
            }
            let mut row: Vec<(usize, BigInt)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            row.sort_by_key(|e| e.0);
            out.data[i] = row;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }
}

/// Entry type for the sparse elimination phase.
trait Entry: Clone + Debug + Send + Sync {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_unit(&self) -> bool;
    /// `self - q * b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn mul(&self, b: &Self) -> Option<Self>;
    fn vanishes(&self) -> bool;
}

impl Entry for i64 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        self.checked_mul(*b)
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
}

impl Entry for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

struct Overflow;

/// Eliminates unit pivots (smallest row first, then smallest column).
/// Returns the number of unit pivots and the remaining nonzero rows.
fn eliminate_units<T: Entry>(
    m: &IntegerMatrix,
) -> Result<(usize, Vec<Vec<(usize, T)>>), Overflow> {
    let mut rows: Vec<Vec<(usize, T)>> = Vec::with_capacity(m.rows);
    for r in &m.data {
        let mut row = Vec::with_capacity(r.len());
        for (j, x) in r {
            row.push((*j, T::from_big(x).ok_or(Overflow)?));
        }
        rows.push(row);
    }
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j].push(i);
        }
    }
    let mut active = vec![true; m.rows];
    let mut pending: BTreeSet<usize> = (0..m.rows).collect();
    let mut units = 0;
    while let Some(r) = pending.pop_first() {
        if !active[r] {
            continue;
        }
        let Some(&(c, ref p)) = rows[r].iter().find(|e| e.1.is_unit()) else {
            continue;
        };
        let p = p.clone();
        active[r] = false;
        units += 1;
        let pivot_row = std::mem::take(&mut rows[r]);
        let mut touched = std::mem::take(&mut col_rows[c]);
        touched.sort_unstable();
        touched.dedup();
        for i in touched {
            if !active[i] {
                continue;
            }
            let Ok(k) = rows[i].binary_search_by_key(&c, |e| e.0) else {
                continue;
            };
            // p is ±1, so p⁻¹ = p
            let q = rows[i][k].1.mul(&p).ok_or(Overflow)?;
            let old = std::mem::take(&mut rows[i]);
            let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < pivot_row.len() {
                let ca = old.get(a).map_or(usize::MAX, |e| e.0);
                let cb = pivot_row.get(b).map_or(usize::MAX, |e| e.0);
                if ca < cb {
                    merged.push(old[a].clone());
                    a += 1;
                } else if cb < ca {
                    let zero = T::from_big(&BigInt::zero()).unwrap();
                    let x = zero.sub_mul(&q, &pivot_row[b].1).ok_or(Overflow)?;
                    col_rows[cb].push(i);
                    merged.push((cb, x));
                    b += 1;
                } else {
                    let x = old[a].1.sub_mul(&q, &pivot_row[b].1).ok_or(Overflow)?;
                    if !x.vanishes() {
                        merged.push((ca, x));
                    }
                    a += 1;
                    b += 1;
                }
            }
            rows[i] = merged;
            pending.insert(i);
        }
    }
    let rest = rows
        .into_iter()
        .enumerate()
        .filter(|(i, r)| active[*i] && !r.is_empty())
        .map(|(_, r)| r)
        .collect();
    Ok((units, rest))
}

/// Dense Smith normal form by repeated minimum-absolute-value pivoting.
/// Ties are broken by smallest row, then smallest column.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(out);
            };
            a.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let x = &a[t][j] * &q;
                    a[i][j] -= x;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..rows {
                    let x = &a[i][t] * &q;
                    a[i][j] -= x;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    finish(out)
}

fn finish(mut d: Vec<BigInt>) -> Vec<BigInt> {
    d.sort();
    d
}

/// Invariant factors d_1 | d_2 | … | d_r of `m` (r = rank).
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let (units, rest) = match eliminate_units::<i64>(m) {
        Ok((u, rest)) => (u, rest.into_iter().map(|r| r.into_iter().map(|(j, x)| (j, x.to_big())).collect()).collect()),
        Err(Overflow) => match eliminate_units::<BigInt>(m) {
            Ok(x) => x,
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    };
    let rest: Vec<Vec<(usize, BigInt)>> = rest;
    let mut cols: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    let mut dense = vec![vec![BigInt::zero(); cols.len()]; rest.len()];
    for (i, r) in rest.iter().enumerate() {
        for (j, x) in r {
            dense[i][cols.binary_search(j).unwrap()] = x.clone();
        }
    }
    let mut d = vec![BigInt::one(); units];
    d.extend(dense_smith(dense));
    d
}

/// Simplices per dimension with boundary matrices ∂_1 … ∂_d.
#[derive(Debug, Clone)]
pub struct ChainComplex<V> {
    pub bases: Vec<Vec<Simplex<V>>>,
    /// `boundaries[i - 1]` is ∂_i: rows are (i−1)-simplices, columns i-simplices.
    pub boundaries: Vec<IntegerMatrix>,
}

impl<V: Label> ChainComplex<V> {
    pub fn boundary(&self, i: usize) -> Option<&IntegerMatrix> {
        if i == 0 {
            None
        } else {
            self.boundaries.get(i - 1)
        }
    }

    pub fn is_chain_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

pub fn boundary_matrices<V: Label + Send + Sync>(k: &SimplicialComplex<V>) -> ChainComplex<V> {
    let bases = k.faces();
    let boundaries: Vec<IntegerMatrix> = (1..bases.len())
        .into_par_iter()
        .map(|i| {
            let index: HashMap<&Simplex<V>, usize> = bases[i - 1].iter().enumerate().map(|(j, s)| (s, j)).collect();
            let mut t = IntegerMatrix::zeros(bases[i].len(), bases[i - 1].len());
            for (c, s) in bases[i].iter().enumerate() {
                let mut row: Vec<(usize, BigInt)> = s
                    .boundary()
                    .enumerate()
                    .map(|(j, f)| (index[&f], if j % 2 == 0 { BigInt::one() } else { -BigInt::one() }))
                    .collect();
                row.sort_by_key(|e| e.0);
                t.data[c] = row;
            }
            t.transpose()
        })
        .collect();
    let cc = ChainComplex { bases, boundaries };
    assert!(cc.is_chain_complex(), "boundary of a boundary is nonzero");
    cc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    /// Torsion coefficients per degree, each dividing the next.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }
}

pub fn homology_of_chain_complex<V: Label + Sync>(cc: &ChainComplex<V>) -> HomologyProfile {
    // SNF of the transpose: rows are the higher simplices, which keeps pivot rows short
    let factors: Vec<Vec<BigInt>> = cc.boundaries.par_iter().map(|m| smith_normal_form(&m.transpose())).collect();
    let top = cc.bases.len();
    let rank = |i: usize| -> usize { if i == 0 || i > factors.len() { 0 } else { factors[i - 1].len() } };
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for i in 0..top {
        betti.push(cc.bases[i].len() - rank(i) - rank(i + 1));
        let t = if i < factors.len() {
            factors[i].iter().filter(|d| !d.is_one()).cloned().collect()
        } else {
            Vec::new()
        };
        torsion.push(t);
    }
    HomologyProfile { betti, torsion }
}

pub fn homology<V: Label + Send + Sync>(k: &SimplicialComplex<V>) -> HomologyProfile {
    homology_of_chain_complex(&boundary_matrices(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntegerMatrix::from_dense(rows)).iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[vec![6, 0, 0], vec![0, 10, 0], vec![0, 0, 15]]), vec![1, 30, 30]);
    }

    #[test]
    fn snf_overflow_falls_back_to_bigints() {
        let big = i64::MAX / 2 + 7;
        let m = IntegerMatrix::from_dense(&[vec![1i64, big], vec![big, 1]]);
        let d = smith_normal_form(&m);
        let det = BigInt::one() - BigInt::from(big) * BigInt::from(big);
        assert_eq!(d, vec![BigInt::one(), det.abs()]);
    }

    #[test]
    fn matrix_basics() {
        let m = IntegerMatrix::from_dense(&[vec![1i64, 0, 2], vec![0, 3, 0]]);
        assert_eq!(m.shape(), (2, 3));
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.transpose().get(2, 0), BigInt::from(2));
        assert!(m.mul(&IntegerMatrix::zeros(3, 1)).is_zero());
    }

    #[test]
    fn boundary_shapes() {
        let t = SimplicialComplex::new(vec![vec![1u32, 2, 3]]).unwrap();
        let cc = boundary_matrices(&t);
        assert_eq!(cc.boundary(1).unwrap().shape(), (3, 3));
        assert_eq!(cc.boundary(2).unwrap().shape(), (3, 1));
        let h = SimplicialComplex::new(vec![vec![1u32, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let cc = boundary_matrices(&h);
        assert_eq!(smith_normal_form(cc.boundary(1).unwrap()).len(), 2);
    }

    #[test]
    fn homology_small() {
        let t = SimplicialComplex::new(vec![vec![1u32, 2, 3]]).unwrap();
        assert_eq!(homology(&t).betti, vec![1, 0, 0]);
        let h = SimplicialComplex::new(vec![vec![1u32, 2], vec![2, 3], vec![1, 3]]).unwrap();
        assert_eq!(homology(&h).betti, vec![1, 1]);
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex RP^2
        let rp2 = SimplicialComplex::new(vec![
            vec![1u32, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![1, 5, 6], vec![1, 2, 6],
            vec![2, 3, 5], vec![3, 4, 6], vec![2, 4, 5], vec![3, 5, 6], vec![2, 4, 6],
        ])
        .unwrap();
        let h = homology(&rp2);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(h.euler_characteristic(), rp2.euler_characteristic());
    }
}
