//! Invariant factors of integer matrices.
//!
//! Unit pivots are eliminated sparsely first, then the remainder is
//! diagonalized densely. Arithmetic runs in checked `i128`; on overflow the
//! whole computation is redone with arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, Zero};

use crate::homology::complex::Column;

trait Int: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64> + Into<BigInt> {}

impl Int for i128 {}
impl Int for BigInt {}

/// Nonzero invariant factors `d_1 | d_2 | …` of the matrix with the given
/// columns and `rows` rows.
pub fn invariant_factors(cols: &[Column], rows: usize) -> Vec<BigUint> {
    let factors = match diagonal::<i128>(cols, rows) {
        Some(d) => d.into_iter().map(Into::into).collect(),
        None => diagonal::<BigInt>(cols, rows).expect("arbitrary precision never overflows"),
    };
    divisibility_chain(factors)
}

/// `a - q b`, or `None` on overflow.
fn sub_mul<T: Int>(a: &T, q: &T, b: &T) -> Option<T> {
    a.checked_sub(&q.checked_mul(b)?)
}

/// Diagonal entries (absolute values, nonzero) of some equivalent diagonal
/// matrix.
fn diagonal<T: Int>(cols: &[Column], rows: usize) -> Option<Vec<T>> {
    let mut columns: Vec<BTreeMap<usize, T>> =
        cols.iter().map(|c| c.iter().map(|&(r, v)| (r, T::from(v))).collect()).collect();
    let mut in_row: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (j, c) in columns.iter().enumerate() {
        for &r in c.keys() {
            in_row[r].insert(j);
        }
    }
    let mut alive_col = vec![true; columns.len()];
    let mut alive_row = vec![true; rows];
    let mut out: Vec<T> = Vec::new();

    let mut queue: Vec<usize> = (0..columns.len()).rev().collect();
    while let Some(c) = queue.pop() {
        if !alive_col[c] {
            continue;
        }
        let Some((r, u)) = columns[c].iter().find(|(_, v)| v.abs().is_one()).map(|(&r, v)| (r, v.clone())) else {
            continue;
        };
        let others: Vec<usize> = in_row[r].iter().copied().filter(|&j| j != c).collect();
        let pivot_col = columns[c].clone();
        for j in others {
            // column j -= (a / u) column c, with u = ±1
            let q = columns[j][&r].clone() * u.clone();
            for (&row, v) in &pivot_col {
                let cur = columns[j].get(&row).cloned().unwrap_or_else(T::zero);
                let next = sub_mul(&cur, &q, v)?;
                if next.is_zero() {
                    columns[j].remove(&row);
                    in_row[row].remove(&j);
                } else {
                    if cur.is_zero() {
                        in_row[row].insert(j);
                    }
                    columns[j].insert(row, next);
                }
            }
            queue.push(j);
        }
        for &row in pivot_col.keys() {
            in_row[row].remove(&c);
        }
        alive_col[c] = false;
        alive_row[r] = false;
        out.push(T::one());
    }

    let row_ids: Vec<usize> = (0..rows).filter(|&r| alive_row[r] && !in_row[r].is_empty()).collect();
    let col_ids: Vec<usize> = (0..columns.len()).filter(|&j| alive_col[j] && !columns[j].is_empty()).collect();
    let mut dense: Vec<Vec<T>> = row_ids
        .iter()
        .map(|&r| col_ids.iter().map(|&j| columns[j].get(&r).cloned().unwrap_or_else(T::zero)).collect())
        .collect();
    out.extend(dense_diagonal(&mut dense)?);
    Some(out)
}

fn dense_diagonal<T: Int>(a: &mut [Vec<T>]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Some(out);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = sub_mul(&a[i][j], &q, &a[t][j])?;
                    a[i][j] = v;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let v = sub_mul(&row[j], &q, &row[t])?;
                    row[j] = v;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                out.push(p.abs());
                break;
            }
        }
    }
    Some(out)
}

/// Rearranges diagonal entries into invariant factors by repeated
/// `(a, b) ↦ (gcd, lcm)`.
fn divisibility_chain(entries: Vec<BigInt>) -> Vec<BigUint> {
    let mut d: Vec<BigInt> = entries.into_iter().map(|e| e.abs()).filter(|e| !e.is_zero()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (g, l) = (d[i].gcd(&d[j]), d[i].lcm(&d[j]));
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().map(|e| e.to_biguint().expect("nonnegative")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_to_cols(m: &[&[i64]]) -> (Vec<Column>, usize) {
        let cols = (0..m[0].len())
            .map(|j| (0..m.len()).filter(|&i| m[i][j] != 0).map(|i| (i, m[i][j])).collect())
            .collect();
        (cols, m.len())
    }

    fn factors(m: &[&[i64]]) -> Vec<u64> {
        let (c, r) = dense_to_cols(m);
        invariant_factors(&c, r).into_iter().map(|d| u64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn classic_examples() {
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(factors(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(&[&[1, 1], &[1, 1]]), vec![1]);
        assert_eq!(factors(&[&[0, 0], &[0, 0]]), Vec::<u64>::new());
    }

    #[test]
    fn big_entries_agree_across_precisions() {
        let big = i64::MAX / 3;
        let (c, r) = dense_to_cols(&[&[big, big - 1], &[big - 2, big - 3]]);
        let small: Vec<BigInt> = diagonal::<i128>(&c, r).unwrap().into_iter().map(Into::into).collect();
        assert_eq!(divisibility_chain(small), divisibility_chain(diagonal::<BigInt>(&c, r).unwrap()));
        // determinant is -2, so the factors are 1 and 2
        assert_eq!(invariant_factors(&c, r), vec![BigUint::from(1u8), BigUint::from(2u8)]);
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        assert_eq!(sub_mul(&0i128, &i128::MAX, &2), None);
        let big: BigInt = BigInt::from(i128::MAX);
        assert_eq!(sub_mul(&BigInt::zero(), &big, &BigInt::from(2)), Some(-(big * BigInt::from(2))));
    }
}
