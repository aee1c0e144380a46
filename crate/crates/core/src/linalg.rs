//! Dense exact linear algebra over Q. Vectors are rows; matrices act on the right
//! (`v * M`) wherever a module action is involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QVec = Vec<BigRational>;
pub type QMat = Vec<QVec>;

pub fn qint(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn zero_vec(n: usize) -> QVec {
    vec![BigRational::zero(); n]
}

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            let mut r = zero_vec(n);
            r[i] = BigRational::one();
            r
        })
        .collect()
}

pub fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Row vector times matrix.
pub fn vec_mat(v: &[BigRational], m: &QMat) -> QVec {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = zero_vec(cols);
    for (a, row) in v.iter().zip(m) {
        if a.is_zero() {
            continue;
        }
        for (o, b) in out.iter_mut().zip(row) {
            *o += a * b;
        }
    }
    out
}

pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    a.iter().map(|row| vec_mat(row, b)).collect()
}

pub fn mat_add(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn mat_scale(a: &QMat, c: &BigRational) -> QMat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn transpose(a: &QMat) -> QMat {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].clone()).collect()).collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a: QMat = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &QMat) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : M x = 0}` (column-vector convention), one vector per free column.
pub fn right_kernel(m: &QMat, cols: usize) -> QMat {
    let (r, pivots) = rref(m);
    let mut out = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = zero_vec(cols);
        v[free] = BigRational::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Basis of `{v : v M = 0}`.
pub fn left_kernel(m: &QMat) -> QMat {
    let rows = m.len();
    right_kernel(&transpose(m), rows)
}

/// A subspace of `Q^n` held as an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub dim_ambient: usize,
    pub basis: QMat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(rows: &QMat, n: usize) -> Self {
        let (basis, pivots) = rref(rows);
        Subspace { dim_ambient: n, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduce `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[BigRational]) -> QVec {
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Add `v` if it is new; returns whether the space grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        if self.contains(v) {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        *self = Subspace::span(&rows, self.dim_ambient);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(&rows, self.dim_ambient)
    }
}

/// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier, coefficients
/// lowest degree first (monic).
pub fn charpoly(m: &QMat) -> QVec {
    let n = m.len();
    let mut coeffs = zero_vec(n + 1);
    coeffs[n] = BigRational::one();
    let mut mk = zero_mat(n);
    let id = identity(n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let inner = mat_add(&mk, &mat_scale(&id, &coeffs[n - k + 1]));
        mk = mat_mul(m, &inner);
        let tr: BigRational = (0..n).map(|i| mk[i][i].clone()).sum();
        coeffs[n - k] = -tr / qint(k as i64);
    }
    coeffs
}

pub fn zero_mat(n: usize) -> QMat {
    vec![zero_vec(n); n]
}

/// Evaluate a polynomial (coefficients lowest first) at a square matrix.
pub fn poly_at_matrix(coeffs: &[BigRational], m: &QMat) -> QMat {
    let n = m.len();
    let mut acc = zero_mat(n);
    let id = identity(n);
    for c in coeffs.iter().rev() {
        acc = mat_add(&mat_mul(&acc, m), &mat_scale(&id, c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QMat {
        rows.iter().map(|r| r.iter().map(|&x| qint(x)).collect()).collect()
    }

    #[test]
    fn rref_and_kernels() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = right_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: BigRational = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        let lk = left_kernel(&a);
        assert_eq!(lk.len(), 1);
        assert!(is_zero_vec(&vec_mat(&lk[0], &a)));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion matrix of x^3 - 2x + 5 (row convention)
        let c = m(&[&[0, 1, 0], &[0, 0, 1], &[-5, 2, 0]]);
        assert_eq!(charpoly(&c), vec![qint(5), qint(-2), qint(0), qint(1)]);
        assert!(poly_at_matrix(&charpoly(&c), &c).iter().all(|r| is_zero_vec(r)));
    }

    #[test]
    fn subspaces() {
        let mut s = Subspace::span(&m(&[&[1, 1, 0]]), 3);
        assert!(s.contains(&[qint(2), qint(2), qint(0)]));
        assert!(s.insert(&[qint(0), qint(1), qint(1)]));
        assert!(!s.insert(&[qint(1), qint(2), qint(1)]));
        assert_eq!(s.dim(), 2);
    }
}
