//! Root transforms computed through power sums and Newton's identities: Graeffe
//! powers, root quotients, subset-sum resolvents, Tschirnhaus transforms. Also
//! Sylvester resultants and discriminants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Poly;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Power sums `p_0 .. p_count` of the roots of `f` (with multiplicity); `p_0 = deg f`.
pub fn power_sums(f: &Poly, count: usize) -> Vec<BigRational> {
    let n = f.degree();
    let a = f.monic_rationals();
    // elementary symmetric e_k = (-1)^k a_{n-k}
    let e: Vec<BigRational> = (0..=n)
        .map(|k| if k % 2 == 0 { a[n - k].clone() } else { -a[n - k].clone() })
        .collect();
    let mut p = Vec::with_capacity(count + 1);
    p.push(q(n as i64));
    for k in 1..=count {
        let mut s = if k <= n {
            let t = &e[k] * q(k as i64);
            if k % 2 == 1 {
                t
            } else {
                -t
            }
        } else {
            BigRational::zero()
        };
        for i in 1..k.min(n + 1) {
            let t = &e[i] * &p[k - i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        p.push(s);
    }
    p
}

/// Monic polynomial of degree `n` with the given power sums `p[1..=n]`, returned in
/// primitive integer form. Panics if the result is not in Q[x] (it always is).
pub(crate) fn from_power_sums(n: usize, p: &[BigRational]) -> Poly {
    let mut e = vec![BigRational::one()];
    for k in 1..=n {
        let mut s = BigRational::zero();
        for i in 1..=k {
            let t = &e[k - i] * &p[i];
            if i % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        e.push(s / q(k as i64));
    }
    let coeffs: Vec<BigRational> = (0..=n)
        .map(|i| {
            let k = n - i;
            if k.is_multiple_of(2) {
                e[k].clone()
            } else {
                -e[k].clone()
            }
        })
        .collect();
    Poly::from_rationals(&coeffs).1
}

/// Polynomial whose roots are the `m`-th powers of the roots of `f`, primitive.
pub fn graeffe(f: &Poly, m: usize) -> Poly {
    assert!(m >= 1 && !f.is_zero());
    let n = f.degree();
    if m == 1 || n == 0 {
        return f.primitive_part();
    }
    let p = power_sums(f, n * m);
    let sub: Vec<BigRational> = (0..=n).map(|j| p[j * m].clone()).collect();
    from_power_sums(n, &sub)
}

/// Polynomial of degree `n(n-1)` whose roots are the quotients `r_i / r_j`, `i != j`.
/// Requires `f(0) != 0`.
pub fn quotient_poly(f: &Poly) -> Poly {
    let n = f.degree();
    assert!(!f.constant_term().is_zero());
    let big = n * n;
    let pf = power_sums(f, big);
    let pr = power_sums(&f.reverse(), big);
    let all: Vec<BigRational> = (0..=big).map(|k| &pf[k] * &pr[k]).collect();
    let full = from_power_sums(big, &all);
    let mut out = full;
    let xm1 = Poly::from_i64(&[-1, 1]);
    for _ in 0..n {
        out = out.div_exact(&xm1).expect("(x - 1)^n divides the full quotient polynomial");
    }
    out
}

/// Polynomial of degree `C(n, k)` whose roots are the sums of `k`-element subsets of
/// roots of `f`.
pub fn subset_sum_resolvent(f: &Poly, k: usize) -> Poly {
    let n = f.degree();
    assert!(k >= 1 && k <= n);
    let big = binom(n, k);
    let p = power_sums(f, big);
    // factorials 0..=big
    let mut fact = vec![BigRational::one()];
    for i in 1..=big {
        let v = &fact[i - 1] * q(i as i64);
        fact.push(v);
    }
    // P_j(t) = sum_m p_m (j t)^m / m!, truncated at degree `big`
    let series = |j: usize| -> Vec<BigRational> {
        let mut pw = BigRational::one();
        let jj = q(j as i64);
        (0..=big)
            .map(|m| {
                let v = &p[m] * &pw / &fact[m];
                pw *= &jj;
                v
            })
            .collect()
    };
    let ps: Vec<Vec<BigRational>> = (1..=k).map(series).collect();
    let mul = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); big + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(big + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut one = vec![BigRational::zero(); big + 1];
    one[0] = BigRational::one();
    let mut e = vec![one];
    for kk in 1..=k {
        let mut acc = vec![BigRational::zero(); big + 1];
        for i in 1..=kk {
            let t = mul(&e[kk - i], &ps[i - 1]);
            for (a, b) in acc.iter_mut().zip(t) {
                if i % 2 == 1 {
                    *a += b;
                } else {
                    *a -= b;
                }
            }
        }
        let kq = q(kk as i64);
        e.push(acc.into_iter().map(|c| c / &kq).collect());
    }
    let sums: Vec<BigRational> = (0..=big).map(|m| &e[k][m] * &fact[m]).collect();
    from_power_sums(big, &sums)
}

/// Characteristic polynomial of `x^2 + c x` over the roots of `f`.
pub fn tschirnhaus(f: &Poly, c: i64) -> Poly {
    tschirnhaus_by(f, &Poly::from_i64(&[0, c, 1]))
}

/// Characteristic polynomial of `t(x)` over the roots of `f`: the polynomial whose
/// roots are `t(r_i)`.
pub fn tschirnhaus_by(f: &Poly, t: &Poly) -> Poly {
    let n = f.degree();
    let p = power_sums(f, n * t.degree().max(1));
    let mut tj = Poly::one();
    let mut sums = vec![q(n as i64)];
    for _ in 1..=n {
        tj = tj.mul(t);
        let s: BigRational = tj
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| BigRational::from_integer(c.clone()) * &p[m])
            .sum();
        sums.push(s);
    }
    from_power_sums(n, &sums)
}

pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub(crate) fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &Poly, g: &Poly) -> BigRational {
    if f.is_zero() || g.is_zero() {
        return BigRational::zero();
    }
    let (m, n) = (f.degree(), g.degree());
    if m == 0 && n == 0 {
        return BigRational::one();
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    BigRational::from_integer(det_bareiss(rows))
}

/// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
pub fn discriminant(f: &Poly) -> BigRational {
    let n = f.degree();
    let r = resultant(f, &f.derivative()) / BigRational::from_integer(f.lc());
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// `f / gcd(f, f')` in primitive form.
pub fn squarefree_part(f: &Poly) -> Poly {
    let g = f.primitive_part();
    if g.degree() == 0 {
        return g;
    }
    g.div_q(&g.gcd(&g.derivative()))
}
