//! Ranks, kernels and homology over prime fields and the rationals, plus
//! the integral profile through Smith normal form.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::complex::{ChainComplex, Column};
use crate::homology::snf::invariant_factors;
use crate::simplicial::sset::SimplicialMap;

/// Arithmetic of a field on an element type.
pub trait Field: Sync {
    type E: Clone + PartialEq + Send + Sync + fmt::Debug;
    fn from_int(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Format(format!("{p} is not a prime")));
        }
        Ok(Self { p })
    }
}

impl Field for PrimeField {
    type E = u64;

    fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Rationals with `i64` numerator and denominator. Arithmetic that would
/// leave that range raises `overflowed` and yields zero; the result of a
/// computation is only meaningful when the flag stayed down.
#[derive(Debug, Default)]
pub struct SmallRationals {
    overflowed: AtomicBool,
}

impl SmallRationals {
    pub fn overflowed(&self) -> bool {
        self.overflowed.load(Ordering::Relaxed)
    }

    fn make(&self, n: i128, d: i128) -> (i64, i64) {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (n / g, d / g) };
        if d < 0 {
            (n, d) = (-n, -d);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => (n, d),
            _ => {
                self.overflowed.store(true, Ordering::Relaxed);
                (0, 1)
            }
        }
    }
}

impl Field for SmallRationals {
    type E = (i64, i64);

    fn from_int(&self, v: i64) -> (i64, i64) {
        (v, 1)
    }

    fn is_zero(&self, a: &(i64, i64)) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        let (an, ad, bn, bd) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128);
        // i64 products fit in i128, and so does their sum
        self.make(an * bd + bn * ad, ad * bd)
    }

    fn mul(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        self.make(a.0 as i128 * b.0 as i128, a.1 as i128 * b.1 as i128)
    }

    fn neg(&self, a: &(i64, i64)) -> (i64, i64) {
        self.make(-(a.0 as i128), a.1 as i128)
    }

    fn inv(&self, a: &(i64, i64)) -> (i64, i64) {
        self.make(a.1 as i128, a.0 as i128)
    }
}

/// Runs over the word-sized rationals, and again over the big ones if
/// anything overflowed.
fn over_q<T>(small: impl FnOnce(&SmallRationals) -> T, big: impl FnOnce(&Rationals) -> T) -> T {
    let k = SmallRationals::default();
    let out = small(&k);
    if k.overflowed() {
        big(&Rationals)
    } else {
        out
    }
}

type Vector<E> = Vec<(usize, E)>;

/// `v + c w` for sorted sparse vectors.
fn axpy<K: Field>(k: &K, v: &Vector<K::E>, c: &K::E, w: &Vector<K::E>) -> Vector<K::E> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            out.push((w[j].0, k.mul(c, &w[j].1)));
            j += 1;
        } else {
            let s = k.add(&v[i].1, &k.mul(c, &w[j].1));
            if !k.is_zero(&s) {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental column echelon form keyed by the lowest nonzero row.
pub struct Echelon<'k, K: Field> {
    k: &'k K,
    pivots: HashMap<usize, usize>,
    columns: Vec<Vector<K::E>>,
    combos: Vec<Vector<K::E>>,
}

impl<'k, K: Field> Echelon<'k, K> {
    pub fn new(k: &'k K) -> Self {
        Self { k, pivots: HashMap::new(), columns: Vec::new(), combos: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Reduces `v` (tracking the combination `combo`); stores it and returns
    /// `None` when independent, otherwise returns the combination that
    /// reduces to zero.
    fn reduce(&mut self, mut v: Vector<K::E>, mut combo: Vector<K::E>) -> Option<Vector<K::E>> {
        let k = self.k;
        while let Some((low, val)) = v.last().cloned() {
            match self.pivots.get(&low) {
                Some(&c) => {
                    let pivot = &self.columns[c].last().unwrap().1;
                    let factor = k.neg(&k.mul(&val, &k.inv(pivot)));
                    v = axpy(k, &v, &factor, &self.columns[c]);
                    combo = axpy(k, &combo, &factor, &self.combos[c]);
                }
                None => {
                    self.pivots.insert(low, self.columns.len());
                    self.columns.push(v);
                    self.combos.push(combo);
                    return None;
                }
            }
        }
        Some(combo)
    }

    /// Adds a column; true when it raised the rank.
    pub fn insert(&mut self, v: Vector<K::E>) -> bool {
        self.reduce(v, Vec::new()).is_none()
    }
}

fn lift<K: Field>(k: &K, col: &Column) -> Vector<K::E> {
    col.iter().map(|&(r, v)| (r, k.from_int(v))).filter(|e| !k.is_zero(&e.1)).collect()
}

/// Rank of a boundary matrix over `k`.
pub fn rank<K: Field>(k: &K, cols: &[Column]) -> usize {
    let mut e = Echelon::new(k);
    for c in cols {
        e.insert(lift(k, c));
    }
    e.rank()
}

/// A basis of the kernel, as combinations of the columns.
pub fn kernel<K: Field>(k: &K, cols: &[Column]) -> Vec<Vector<K::E>> {
    let mut e = Echelon::new(k);
    cols.iter()
        .enumerate()
        .filter_map(|(j, c)| e.reduce(lift(k, c), vec![(j, k.from_int(1))]))
        .collect()
}

/// Coefficient systems for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(Coefficients::Rationals),
            "z" | "Z" => Ok(Coefficients::Integers),
            other => {
                let p: u64 = other.parse().map_err(|_| Error::Format(format!("unknown coefficients `{other}`")))?;
                PrimeField::new(p)?;
                Ok(Coefficients::Prime(p))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    /// Free rank, or the dimension over a field.
    pub rank: usize,
    /// Invariant factors above 1; integral coefficients only.
    pub torsion: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }
}

fn field_ranks<K: Field>(k: &K, c: &ChainComplex) -> Vec<usize> {
    c.boundary.iter().map(|b| rank(k, b)).collect()
}

/// Boundary ranks `rank ∂_n` for every degree.
pub fn boundary_ranks(c: &ChainComplex, coefficients: Coefficients) -> Result<Vec<usize>> {
    Ok(match coefficients {
        Coefficients::Prime(p) => field_ranks(&PrimeField::new(p)?, c),
        Coefficients::Rationals | Coefficients::Integers => over_q(|k| field_ranks(k, c), |k| field_ranks(k, c)),
    })
}

/// Homology in degrees `0..top`.
pub fn homology(c: &ChainComplex, coefficients: Coefficients) -> Result<HomologyProfile> {
    let top = c.top();
    let degrees = if coefficients == Coefficients::Integers {
        let factors: Vec<Vec<BigUint>> = (0..=top).map(|n| invariant_factors(&c.boundary[n], rows(c, n))).collect();
        (0..top)
            .map(|n| {
                let rank = c.rank(n) - factors[n].len() - factors[n + 1].len();
                let torsion = factors[n + 1].iter().filter(|d| !d.is_one()).cloned().collect();
                DegreeHomology { degree: n, rank, torsion }
            })
            .collect()
    } else {
        let r = boundary_ranks(c, coefficients)?;
        (0..top)
            .map(|n| DegreeHomology { degree: n, rank: c.rank(n) - r[n] - r[n + 1], torsion: Vec::new() })
            .collect()
    };
    Ok(HomologyProfile { coefficients, degrees })
}

fn rows(c: &ChainComplex, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        c.rank(n - 1)
    }
}

/// Betti numbers of both sides and per-degree verdicts for
/// `f_*: H_k(X) → H_k(Y)` being bijective, `k ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub iso: Vec<bool>,
}

fn induced_iso_field<K: Field>(k: &K, f: &SimplicialMap, cx: &ChainComplex, cy: &ChainComplex, max_degree: usize) -> Comparison {
    let on_basis = cx.chain_map(&f.levels, cy);
    let mut out = Comparison { source: Vec::new(), target: Vec::new(), iso: Vec::new() };
    let mut cycles = kernel(k, &cx.boundary[0]);
    let mut by_below = rank(k, &cy.boundary[0]);
    for n in 0..=max_degree {
        // the next kernel also yields the rank of the next boundary
        let (next, bx) = if n < max_degree {
            let z = kernel(k, &cx.boundary[n + 1]);
            let r = cx.boundary[n + 1].len() - z.len();
            (z, r)
        } else {
            (Vec::new(), rank(k, &cx.boundary[n + 1]))
        };
        let hx = cycles.len() - bx;
        let mut e = Echelon::new(k);
        for b in &cy.boundary[n + 1] {
            e.insert(lift(k, b));
        }
        let by = e.rank();
        let hy = cy.rank(n) - by_below - by;
        let mut iso = hx == hy;
        if iso {
            for z in std::mem::take(&mut cycles) {
                let image: Vec<(usize, K::E)> =
                    z.into_iter().filter_map(|(j, v)| on_basis[n][j].map(|r| (r, v))).collect();
                e.insert(sum_duplicates(k, image));
            }
            iso = e.rank() - by == hx;
        }
        out.source.push(hx);
        out.target.push(hy);
        out.iso.push(iso);
        cycles = next;
        by_below = by;
    }
    out
}

fn sum_duplicates<K: Field>(k: &K, mut v: Vector<K::E>) -> Vector<K::E> {
    v.sort_by_key(|e| e.0);
    let mut out: Vector<K::E> = Vec::with_capacity(v.len());
    for (r, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = k.add(&last.1, &x),
            _ => out.push((r, x)),
        }
    }
    out.retain(|e| !k.is_zero(&e.1));
    out
}

/// Per-degree verdicts in degrees `0..=max_degree` (at most `top − 1`).
/// Integral coefficients are answered by the rational verdict; callers
/// combine it with prime verdicts.
pub fn induced_iso(f: &SimplicialMap, coefficients: Coefficients, max_degree: usize) -> Result<Vec<bool>> {
    let cx = ChainComplex::new(&f.source);
    let cy = ChainComplex::new(&f.target);
    Ok(induced_iso_complexes(f, &cx, &cy, coefficients, max_degree)?.iso)
}

pub fn induced_iso_complexes(
    f: &SimplicialMap,
    cx: &ChainComplex,
    cy: &ChainComplex,
    coefficients: Coefficients,
    max_degree: usize,
) -> Result<Comparison> {
    if max_degree >= cx.top() {
        return Err(Error::OutOfRange(format!("degree {max_degree} is not below the truncation {}", cx.top())));
    }
    Ok(match coefficients {
        Coefficients::Prime(p) => induced_iso_field(&PrimeField::new(p)?, f, cx, cy, max_degree),
        Coefficients::Rationals | Coefficients::Integers => {
            over_q(|k| induced_iso_field(k, f, cx, cy, max_degree), |k| induced_iso_field(k, f, cx, cy, max_degree))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::sset::{LevelMap, SSet};
    use std::sync::Arc;

    #[test]
    fn interval_and_circle() {
        let d1 = ChainComplex::new(&SSet::standard(1, 3));
        assert_eq!(homology(&d1, Coefficients::Integers).unwrap().ranks(), vec![1, 0, 0]);
        let circle = ChainComplex::new(&SSet::boundary(2, 3));
        assert_eq!(homology(&circle, Coefficients::Integers).unwrap().ranks(), vec![1, 1, 0]);
        assert_eq!(homology(&circle, Coefficients::Prime(2)).unwrap().ranks(), vec![1, 1, 0]);
    }

    #[test]
    fn prime_field_inverse() {
        let k = PrimeField::new(7).unwrap();
        assert!((1..7).all(|a| k.mul(&a, &k.inv(&a)) == 1));
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn collapse_of_two_points_fails_in_degree_zero() {
        let two = Arc::new(SSet::discrete(2, 2));
        let one = Arc::new(SSet::point(2));
        let f = SimplicialMap::new(two.clone(), one, LevelMap::to_point(&two)).unwrap();
        assert_eq!(induced_iso(&f, Coefficients::Rationals, 1).unwrap(), vec![false, true]);
    }

    #[test]
    fn small_rationals_flag_overflow() {
        let k = SmallRationals::default();
        let third = k.inv(&(3, 1));
        assert_eq!(k.add(&third, &third), (2, 3));
        assert!(!k.overflowed());
        k.mul(&(i64::MAX, 1), &(2, 1));
        assert!(k.overflowed());
    }

    #[test]
    fn small_and_big_rationals_agree_on_ranks() {
        let c = ChainComplex::new(&SSet::boundary(3, 4));
        assert_eq!(field_ranks(&SmallRationals::default(), &c), field_ranks(&Rationals, &c));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("q".parse::<Coefficients>().unwrap(), Coefficients::Rationals);
        assert_eq!("5".parse::<Coefficients>().unwrap(), Coefficients::Prime(5));
        assert!("4".parse::<Coefficients>().is_err());
    }
}
