//! Integral LLL (all arithmetic exact in Z), delta = 99/100.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduce the rows of `basis` in place. Rows must be linearly independent.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    // d[i] for i in 0..=n, d[0] = 1; lambda[k][j] for j < k (0-based rows)
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::from(1);
    d[1] = dot(&basis[0], &basis[0]);
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&basis[k], &basis[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll_reduce: dependent rows");
                    d[k + 1] = u;
                }
            }
        }
        loop {
            reduce(basis, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(100) * &d[k + 1] * &d[k - 1];
            let rhs = BigInt::from(99) * &d[k] * &d[k] - BigInt::from(100) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swap(basis, &mut lam, &mut d, k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k - 1).rev() {
                    reduce(basis, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
}

fn reduce(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let two_abs = lam[k][l].abs() * 2;
    if two_abs <= d[l + 1] {
        return;
    }
    // q = round(lam / d)
    let num: BigInt = &lam[k][l] * 2 + &d[l + 1];
    let den: BigInt = &d[l + 1] * 2;
    let q = num.div_floor(&den);
    let (lo, hi) = b.split_at_mut(k);
    for (x, y) in hi[0].iter_mut().zip(&lo[l]) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = bb;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn cohen_example_is_reduced() {
        let mut b = v(&[&[1, 0, 0, 1234], &[0, 1, 0, 2345], &[0, 0, 1, 3456]]);
        lll_reduce(&mut b);
        // 1234*x + 2345*y + 3456*z small: the first vector should be short
        let n0: i64 = b[0].iter().map(|x| (x * x).to_string().parse::<i64>().unwrap()).sum();
        assert!(n0 < 100, "{:?}", b);
    }

    #[test]
    fn finds_integer_relation() {
        // relation 3*a - 2*b = 0 for a = 2000, b = 3000 in the last column
        let mut b = v(&[&[1, 0, 2_000_000], &[0, 1, 3_000_000]]);
        lll_reduce(&mut b);
        let first: Vec<i64> = b[0].iter().map(|x| x.to_string().parse().unwrap()).collect();
        assert!(first == vec![3, -2, 0] || first == vec![-3, 2, 0], "{first:?}");
    }
}
