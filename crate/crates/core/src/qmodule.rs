//! The rational permutation module `V_0 = {v : sum v(i) = 0}` of a permutation
//! group, with basis `e_i - e_n`: spinning, commutants and a Q-irreducibility
//! decision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::linalg::{
    charpoly, left_kernel, mat_add, mat_mul, mat_scale, poly_at_matrix, qint, right_kernel, transpose,
    vec_mat, zero_mat, zero_vec, QMat, QVec, Subspace,
};
use crate::permgroup::{Permutation, PermutationGroup};
use crate::poly::{factor_z, Poly};
use crate::rng::SplitMix64;

/// Generator matrices (row convention: `v -> v M`) of a permutation group acting on `V_0`.
#[derive(Debug, Clone)]
pub struct QModuleAction {
    group: PermutationGroup,
    dim: usize,
    matrices: Vec<QMat>,
}

/// An invariant subspace, held in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    space: Subspace,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.dim_ambient
    }

    pub fn basis(&self) -> &QMat {
        &self.space.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.space.contains(v)
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.space.basis.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("Submodule", 2)?;
        st.serialize_field("ambient_dim", &self.space.dim_ambient)?;
        st.serialize_field("basis", &rows)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", content = "witness")]
pub enum Irreducibility {
    Irreducible,
    Reducible(Submodule),
    Undecided,
}

pub const DEFAULT_ROUNDS: usize = 64;

/// Matrix of `g` on `V_0`: row `i` holds the coordinates of `(e_i - e_n) g`.
pub fn permutation_matrix_v0(g: &Permutation) -> QMat {
    let n = g.degree();
    let d = n - 1;
    let last = g.apply(n - 1);
    (0..d)
        .map(|i| {
            let mut row = zero_vec(d);
            let gi = g.apply(i);
            if gi < d {
                row[gi] += BigRational::one();
            }
            if last < d {
                row[last] -= BigRational::one();
            }
            row
        })
        .collect()
}

/// Coordinates in the `e_i - e_n` basis of a sum-zero vector of `Q^n`.
pub fn v0_coordinates(v: &[BigRational]) -> QVec {
    debug_assert!(v.iter().sum::<BigRational>().is_zero());
    v[..v.len() - 1].to_vec()
}

impl QModuleAction {
    /// Build the action; the generator-to-matrix map is checked to be a homomorphism
    /// on a few seeded random words.
    pub fn new(group: &PermutationGroup) -> Self {
        let n = group.degree();
        assert!(n >= 2, "V_0 needs at least two points");
        let matrices: Vec<QMat> = group.generators().iter().map(permutation_matrix_v0).collect();
        let action = QModuleAction { group: group.clone(), dim: n - 1, matrices };
        action.check_homomorphism(&mut SplitMix64::new(n as u64));
        action
    }

    fn check_homomorphism(&self, rng: &mut SplitMix64) {
        let k = self.matrices.len();
        if k == 0 {
            return;
        }
        for _ in 0..4 {
            let mut perm = Permutation::identity(self.group.degree());
            let mut mat = crate::linalg::identity(self.dim);
            for _ in 0..5 {
                let j = rng.below(k as u64) as usize;
                perm = perm.mul(&self.group.generators()[j]);
                mat = mat_mul(&mat, &self.matrices[j]);
            }
            assert_eq!(permutation_matrix_v0(&perm), mat, "V_0 action is not a homomorphism");
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn matrices(&self) -> &[QMat] {
        &self.matrices
    }

    /// Smallest invariant subspace containing `u` (coordinates in the `V_0` basis).
    pub fn spin(&self, u: &[BigRational]) -> Submodule {
        Submodule { space: spin_with(&self.matrices, u, self.dim) }
    }

    /// Basis of the commutant algebra `{X : X M = M X}`.
    pub fn commutant(&self) -> Vec<QMat> {
        let d = self.dim;
        // unknown X[a][b] at index a*d + b; (XM - MX)[i][j] = sum_k X[i][k] M[k][j] - M[i][k] X[k][j]
        let mut eqs: QMat = Vec::new();
        for m in &self.matrices {
            for i in 0..d {
                for j in 0..d {
                    let mut row = zero_vec(d * d);
                    for k in 0..d {
                        row[i * d + k] += &m[k][j];
                        row[k * d + j] -= &m[i][k];
                    }
                    eqs.push(row);
                }
            }
        }
        if eqs.is_empty() {
            eqs.push(zero_vec(d * d));
        }
        right_kernel(&eqs, d * d)
            .into_iter()
            .map(|x| x.chunks(d).map(|c| c.to_vec()).collect())
            .collect()
    }

    fn is_invariant(&self, sub: &Submodule) -> bool {
        sub.basis().iter().all(|v| self.matrices.iter().all(|m| sub.contains(&vec_mat(v, m))))
    }

    /// Decide Q-irreducibility of `V_0`: 2-transitivity, trivial commutant, splitting
    /// by commutant elements, then Norton's certificate, for at most `rounds` rounds.
    pub fn is_q_irreducible(&self, seed: u64, rounds: usize) -> Irreducibility {
        self.is_q_irreducible_with(seed, rounds, true)
    }

    /// As [`Self::is_q_irreducible`]; `transitivity_shortcut = false` skips stage 1 so
    /// the algebraic stages are exercised on 2-transitive groups too.
    pub fn is_q_irreducible_with(&self, seed: u64, rounds: usize, transitivity_shortcut: bool) -> Irreducibility {
        let d = self.dim;
        if d <= 1 || (transitivity_shortcut && self.group.is_2transitive().unwrap_or(false)) {
            return Irreducibility::Irreducible;
        }
        let comm = self.commutant();
        if comm.len() == 1 {
            return Irreducibility::Irreducible;
        }
        let mut rng = SplitMix64::new(seed);
        let elements = self.group.enumerate_elements(crate::permgroup::DEFAULT_ELEMENT_CAP).ok();
        for round in 0..rounds {
            let c = if round < comm.len() {
                comm[round].clone()
            } else {
                random_combination(&comm, &mut rng)
            };
            if let Some(w) = self.split_by(&c) {
                assert!(self.is_invariant(&w) && w.dim() > 0 && w.dim() < d, "bad witness");
                return Irreducibility::Reducible(w);
            }
            let theta = self.random_algebra_element(elements.as_deref(), &mut rng);
            if self.norton_certifies(&theta) {
                return Irreducibility::Irreducible;
            }
        }
        Irreducibility::Undecided
    }

    /// A proper invariant subspace cut out by a commuting matrix, if its
    /// characteristic polynomial is not a power of an irreducible one (or it is,
    /// but the matrix is not semisimple).
    fn split_by(&self, c: &QMat) -> Option<Submodule> {
        let d = self.dim;
        let (_, cp_int) = Poly::from_rationals(&charpoly(c));
        let mut best: Option<Submodule> = None;
        for (q, _) in factor_z(&cp_int).factors {
            let kernel = left_kernel(&poly_at_matrix(&int_coeffs(&q), c));
            if kernel.is_empty() || kernel.len() == d {
                continue;
            }
            let w = self.spin(&kernel[0]);
            if w.dim() < d && best.as_ref().is_none_or(|b| w.dim() < b.dim()) {
                best = Some(w);
            }
        }
        best
    }

    fn random_algebra_element(&self, elements: Option<&[Permutation]>, rng: &mut SplitMix64) -> QMat {
        let d = self.dim;
        let mut theta = zero_mat(d);
        let terms = 2 + rng.below(3) as usize;
        for _ in 0..terms {
            let g = match elements {
                Some(els) => els[rng.below(els.len() as u64) as usize].clone(),
                None => {
                    let mut p = Permutation::identity(self.group.degree());
                    for _ in 0..4 {
                        let gens = self.group.generators();
                        p = p.mul(&gens[rng.below(gens.len() as u64) as usize]);
                    }
                    p
                }
            };
            let coef = qint(rng.range_i64(-3, 3));
            theta = mat_add(&theta, &mat_scale(&permutation_matrix_v0(&g), &coef));
        }
        theta
    }

    /// Norton's irreducibility test for `theta` and an irreducible factor `q` of its
    /// characteristic polynomial with `dim ker q(theta) = deg q`.
    fn norton_certifies(&self, theta: &QMat) -> bool {
        let d = self.dim;
        let (_, cp_int) = Poly::from_rationals(&charpoly(theta));
        let fac = factor_z(&cp_int);
        let Some((q, _)) = fac.factors.iter().min_by_key(|(q, _)| q.degree()) else {
            return false;
        };
        let qt = poly_at_matrix(&int_coeffs(q), theta);
        let ker = left_kernel(&qt);
        if ker.len() != q.degree() {
            return false;
        }
        if spin_with(&self.matrices, &ker[0], d).dim() != d {
            return false;
        }
        let dual_ker = right_kernel(&qt, d);
        let dual: Vec<QMat> = self.matrices.iter().map(transpose).collect();
        spin_with(&dual, &dual_ker[0], d).dim() == d
    }
}

fn int_coeffs(q: &Poly) -> QVec {
    q.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn random_combination(basis: &[QMat], rng: &mut SplitMix64) -> QMat {
    let d = basis[0].len();
    let mut acc = zero_mat(d);
    for b in basis {
        acc = mat_add(&acc, &mat_scale(b, &qint(rng.range_i64(-4, 4))));
    }
    acc
}

fn spin_with(mats: &[QMat], u: &[BigRational], d: usize) -> Subspace {
    let mut space = Subspace::span(&Vec::new(), d);
    let mut queue = vec![u.to_vec()];
    while let Some(v) = queue.pop() {
        if space.insert(&v) {
            for m in mats {
                queue.push(vec_mat(&v, m));
            }
        }
    }
    space
}

/// Sum-zero vector `e_s - e_t` of `Q^n` in `V_0` coordinates.
pub fn root_difference(n: usize, s: usize, t: usize) -> QVec {
    let mut v = vec![BigRational::zero(); n];
    v[s] += BigRational::one();
    v[t] -= BigRational::one();
    v0_coordinates(&v)
}

/// Integer helper for tests and fixtures.
pub fn qvec_from_i64(v: &[i64]) -> QVec {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}
