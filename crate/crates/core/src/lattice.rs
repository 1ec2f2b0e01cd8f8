//! Exact integer linear algebra over lattices.
//!
//! Hermite normal form convention (used everywhere in the crate): row style,
//! `u * m = h` with `u` unimodular; `h` is in row echelon form, every pivot is
//! positive, and every entry above a pivot lies in `0..pivot`.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a lattice `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(#[serde(with = "crate::io::ints")] Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn zero(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    /// The `i`-th standard basis vector of `Z^len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        assert_eq!(self.len(), other.len(), "dot product of vectors of different length");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Concatenation `(self, other)` in the direct sum lattice.
    pub fn concat(&self, other: &IntVector) -> IntVector {
        let mut entries = self.0.clone();
        entries.extend(other.0.iter().cloned());
        IntVector(entries)
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|e| -e).collect())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;

    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// True iff the gcd of the entries is 1. The zero vector is not primitive.
pub fn is_primitive(v: &IntVector) -> bool {
    let g = v.entries().iter().fold(BigInt::zero(), |g, e| g.gcd(e));
    g.is_one()
}

/// A rectangular integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<IntVector>,
}

impl IntMatrix {
    /// Builds a matrix from rows, all of which must have length `ncols`.
    pub fn from_rows(ncols: usize, rows: Vec<IntVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has length {}, expected {ncols}",
                rows[bad].len()
            )));
        }
        Ok(IntMatrix { ncols, rows })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| IntVector::from_i64s(r)).collect();
        Self::from_rows(ncols, rows).expect("ragged literal matrix")
    }

    /// The matrix whose columns are the given vectors (all of length `nrows`).
    pub fn from_columns(nrows: usize, cols: &[IntVector]) -> Result<Self> {
        let m = Self::from_rows(nrows, cols.to_vec())?;
        Ok(m.transpose())
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix { ncols: n, rows: (0..n).map(|i| IntVector::unit(n, i)).collect() }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { ncols, rows: vec![IntVector::zero(ncols); nrows] }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i].0[j]
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector(self.rows.iter().map(|r| r.0[j].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols).map(|j| self.column(j)).collect();
        IntMatrix { ncols: self.nrows(), rows }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.ncols != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols,
                other.nrows(),
                other.ncols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                IntVector(
                    (0..other.ncols)
                        .map(|j| {
                            r.0.iter().zip(&other.rows).map(|(a, orow)| a * &orow.0[j]).sum()
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(IntMatrix { ncols: other.ncols, rows })
    }

    pub fn mul_vec(&self, v: &IntVector) -> Result<IntVector> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.nrows(),
                self.ncols,
                v.len()
            )));
        }
        Ok(IntVector(self.rows.iter().map(|r| r.dot(v)).collect()))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.rows[source].0.clone();
        for (t, s) in self.rows[target].0.iter_mut().zip(&src) {
            *t -= q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for e in self.rows[i].0.iter_mut() {
            *e = -&*e;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Result of [`hermite_normal_form`]: `u * m = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

/// Row-style Hermite normal form with its unimodular transformation.
pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut r = 0;
    for j in 0..m.ncols() {
        if r == h.nrows() {
            break;
        }
        // Euclid on column j among rows r.. until a single nonzero remains.
        loop {
            let pivot = (r..h.nrows())
                .filter(|&i| !h.get(i, j).is_zero())
                .min_by(|&a, &b| h.get(a, j).abs().cmp(&h.get(b, j).abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.nrows() {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let q = h.get(i, j).div_floor(h.get(r, j));
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
                if !h.get(i, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h.get(r, j).is_zero() {
            if h.get(r, j).is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            for i in 0..r {
                let q = h.get(i, j).div_floor(h.get(r, j));
                h.sub_row_multiple(i, r, &q);
                u.sub_row_multiple(i, r, &q);
            }
            r += 1;
        }
    }
    Hnf { h, u }
}

/// Exact inverse of a matrix with determinant ±1.
pub fn invert_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let det = determinant(m)?;
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular { det });
    }
    // For a unimodular matrix the HNF is the identity, so `u` is the inverse.
    let Hnf { h, u } = hermite_normal_form(m);
    debug_assert_eq!(h, IntMatrix::identity(m.nrows()));
    Ok(u)
}

/// A random matrix in GL_n(Z): a product of elementary row operations with
/// small multipliers, a random permutation and random signs.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..steps {
        if n > 1 {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let q = BigInt::from(rng.gen_range(-2i64..=2));
            m.sub_row_multiple(i, j, &q);
        }
    }
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        m.swap_rows(i, j);
    }
    for i in 0..n {
        if rng.gen_bool(0.5) {
            m.negate_row(i);
        }
    }
    m
}

/// Why [`cokernel_basis`] failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CokernelFailure {
    /// `Z^ncols / rowspan` has torsion.
    Torsion,
    /// The quotient is free but no set of coordinate vectors is a basis of it.
    NoCoordinateBasis,
}

/// A basis of `Z^ncols / rowspan` made of images of coordinate vectors.
#[derive(Clone, Debug)]
pub struct CokernelBasis {
    /// Chosen columns, ascending; `images` use this order.
    pub basis: Vec<usize>,
    /// `images[j]`: the class of `e_j` expanded over the chosen columns.
    pub images: Vec<Vec<BigInt>>,
}

/// Computes the quotient of `Z^ncols` by the span of `rows` and picks
/// coordinate vectors forming a basis of it. Among all such choices the one
/// whose column indices, read from the largest down, are lexicographically
/// greatest wins, so the basis favours the last columns.
pub fn cokernel_basis(ncols: usize, rows: &[Vec<BigInt>]) -> std::result::Result<CokernelBasis, CokernelFailure> {
    // Independent generators of the row lattice.
    let rows: Vec<IntVector> = rows.iter().map(|r| IntVector::new(r.clone())).collect();
    let gens: Vec<IntVector> = if rows.is_empty() {
        Vec::new()
    } else {
        let m = IntMatrix::from_rows(ncols, rows).expect("rows have ncols entries");
        hermite_normal_form(&m).h.rows().iter().filter(|r| !r.is_zero()).cloned().collect()
    };
    let r = gens.len();
    // u * B^T = [T; 0]; the quotient is free iff T is unimodular, and then the
    // last ncols - r rows of u give coordinates on it.
    let coords: Vec<Vec<BigInt>> = if r == 0 {
        (0..ncols).map(|j| IntVector::unit(ncols, j).into_entries()).collect()
    } else {
        let bt = IntMatrix::from_columns(ncols, &gens).expect("generators have ncols entries");
        let Hnf { h, u } = hermite_normal_form(&bt);
        if (0..r).any(|i| !h.get(i, i).is_one()) {
            return Err(CokernelFailure::Torsion);
        }
        (0..ncols).map(|j| (r..ncols).map(|k| u.get(k, j).clone()).collect()).collect()
    };
    let f = ncols - r;
    let mut chosen = Vec::with_capacity(f);
    let w: Vec<Vec<BigInt>> = (0..f).map(|i| IntVector::unit(f, i).into_entries()).collect();
    if !choose_basis(&coords, f, ncols, &w, &mut chosen) {
        return Err(CokernelFailure::NoCoordinateBasis);
    }
    chosen.sort_unstable();
    let cols: Vec<IntVector> = chosen.iter().map(|&j| IntVector::new(coords[j].clone())).collect();
    let images = if f == 0 {
        vec![Vec::new(); ncols]
    } else {
        let inv = invert_unimodular(&IntMatrix::from_columns(f, &cols).expect("square"))
            .expect("chosen columns are unimodular");
        coords
            .iter()
            .map(|c| inv.mul_vec(&IntVector::new(c.clone())).expect("shapes agree").into_entries())
            .collect()
    };
    Ok(CokernelBasis { basis: chosen, images })
}

/// Depth-first search over columns `< below`, largest first, keeping the
/// chosen images a saturated (primitive) set at every step.
///
/// `w` is unimodular and sends the `i`-th chosen image to `e_i`, so a new
/// image `c` keeps the set saturated iff the tail of `w * c` (coordinates
/// `chosen.len()..`) is a primitive vector.
fn choose_basis(coords: &[Vec<BigInt>], f: usize, below: usize, w: &[Vec<BigInt>], chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == f {
        return true;
    }
    for j in (0..below).rev() {
        if j + 1 < f - k {
            break;
        }
        let mut v: Vec<BigInt> = w.iter().map(|row| dot(row, &coords[j])).collect();
        let g = v[k..].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            continue;
        }
        let mut next = w.to_vec();
        reduce_tail(&mut next, &mut v, k);
        chosen.push(j);
        if choose_basis(coords, f, j, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Row operations on `w` (mirrored on `v`) that turn `v` into `e_k`, given
/// that `v[k..]` is primitive. Rows below `k` only change by multiples of row `k`.
fn reduce_tail(w: &mut [Vec<BigInt>], v: &mut [BigInt], k: usize) {
    let f = v.len();
    loop {
        let p = (k..f)
            .filter(|&i| !v[i].is_zero())
            .min_by(|&a, &b| v[a].abs().cmp(&v[b].abs()))
            .expect("primitive tail is nonzero");
        let done = (k..f).all(|i| i == p || v[i].is_zero());
        if done {
            w.swap(k, p);
            v.swap(k, p);
            if v[k].is_negative() {
                v[k] = -&v[k];
                for x in w[k].iter_mut() {
                    *x = -&*x;
                }
            }
            break;
        }
        for i in k..f {
            if i == p || v[i].is_zero() {
                continue;
            }
            let q = v[i].div_floor(&v[p]);
            let (vp, rp) = (v[p].clone(), w[p].clone());
            v[i] -= &q * vp;
            for (x, y) in w[i].iter_mut().zip(&rp) {
                *x -= &q * y;
            }
        }
    }
    debug_assert!(v[k].is_one());
    for i in 0..k {
        if v[i].is_zero() {
            continue;
        }
        let q = v[i].clone();
        let rk = w[k].clone();
        for (x, y) in w[i].iter_mut().zip(&rk) {
            *x -= &q * y;
        }
        v[i] = BigInt::zero();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&IntVector::from_i64s(&[1, 0])));
        assert!(!is_primitive(&IntVector::from_i64s(&[2, 4])));
        assert!(!is_primitive(&IntVector::from_i64s(&[0, 0])));
        assert!(is_primitive(&IntVector::from_i64s(&[-1, -1])));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&IntMatrix::identity(2)).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[1, 0], &[1, 2]])).unwrap(), BigInt::from(2));
        assert_eq!(determinant(&m(&[&[1, 1], &[0, 1]])).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), BigInt::from(-1));
        assert_eq!(
            determinant(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])).unwrap(),
            BigInt::from(4)
        );
        assert!(matches!(
            determinant(&m(&[&[1, 2, 3]])),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id), Hnf { h: id.clone(), u: id.clone() });

        let swap = m(&[&[0, 1], &[1, 0]]);
        let Hnf { h, u } = hermite_normal_form(&swap);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u.mul(&swap).unwrap(), h);

        let diag = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(hermite_normal_form(&diag).h, diag);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = m(&[&[2, 3, 1], &[4, 1, 5]]);
        let Hnf { h, u } = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(h, m(&[&[2, 3, 1], &[0, 5, -3]]));
        assert!(determinant(&u).unwrap().abs().is_one());
    }

    #[test]
    fn inverses() {
        assert_eq!(invert_unimodular(&IntMatrix::identity(2)).unwrap(), IntMatrix::identity(2));
        assert_eq!(invert_unimodular(&m(&[&[1, 1], &[0, 1]])).unwrap(), m(&[&[1, -1], &[0, 1]]));
        assert!(matches!(
            invert_unimodular(&m(&[&[1, 0], &[1, 2]])),
            Err(Error::NotUnimodular { det }) if det == BigInt::from(2)
        ));
        assert_eq!(invert_unimodular(&m(&[&[-1]])).unwrap(), m(&[&[-1]]));
    }

    #[test]
    fn cokernel_basis_skips_non_unit_columns() {
        // Relations of the a = 2 Hirzebruch fan: {2, 3} spans an index-2
        // sublattice of the quotient, so the basis is {1, 3}.
        let rows = vec![
            IntVector::from_i64s(&[1, -1, 0, 0]).into_entries(),
            IntVector::from_i64s(&[2, 0, 1, -1]).into_entries(),
        ];
        let c = cokernel_basis(4, &rows).unwrap();
        assert_eq!(c.basis, vec![1, 3]);
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(c.images[0], ints(&[1, 0]));
        assert_eq!(c.images[2], ints(&[-2, 1]));
    }

    #[test]
    fn cokernel_failures() {
        let rows = vec![IntVector::from_i64s(&[2, 4]).into_entries()];
        assert_eq!(cokernel_basis(2, &rows).unwrap_err(), CokernelFailure::Torsion);
        let rows = vec![IntVector::from_i64s(&[2, 3]).into_entries()];
        assert_eq!(cokernel_basis(2, &rows).unwrap_err(), CokernelFailure::NoCoordinateBasis);
        let rows = vec![IntVector::from_i64s(&[1, 1]).into_entries()];
        let c = cokernel_basis(2, &rows).unwrap();
        assert_eq!(c.basis, vec![1]);
        assert_eq!(c.images, vec![vec![BigInt::from(-1)], vec![BigInt::from(1)]]);
        assert_eq!(cokernel_basis(2, &[]).unwrap().basis, vec![0, 1]);
    }
}
