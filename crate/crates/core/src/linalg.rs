//! Dense complex matrices sized for few-qubit operators (at most 64×64),
//! with a cyclic Jacobi eigensolver for Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

pub type C64 = Complex64;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Outer product `v v†` of a column vector.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Element-wise complex conjugate (no transpose).
    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self::from_fn(self.n, |i, j| self[(i, j)] * s)
    }

    pub fn scaled_re(&self, s: f64) -> Self {
        self.scaled(C64::new(s, 0.0))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matmul on mismatched dimensions");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[self.at(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// Kronecker product; the left factor addresses the high-order index bits.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (na, nb) = (self.n, rhs.n);
        Self::from_fn(na * nb, |i, j| {
            self[(i / nb, j / nb)] * rhs[(i % nb, j % nb)]
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation `|a_ij − conj(a_ji)|` from Hermitian symmetry.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                let dev = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.jacobi(false).0
    }

    /// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
    /// the unitary whose columns are the matching eigenvectors.
    pub fn hermitian_eigen(&self) -> (Vec<f64>, CMatrix) {
        let (vals, vecs) = self.jacobi(true);
        (vals, vecs.expect("vectors requested"))
    }

    /// Principal square root of a Hermitian PSD matrix; tiny negative
    /// eigenvalues from round-off are clamped to zero.
    pub fn hermitian_sqrt_psd(&self) -> CMatrix {
        let (vals, vecs) = self.hermitian_eigen();
        let roots: Vec<f64> = vals.iter().map(|&l| l.max(0.0).sqrt()).collect();
        CMatrix::from_fn(self.n, |i, j| {
            (0..self.n)
                .map(|k| vecs[(i, k)] * roots[k] * vecs[(j, k)].conj())
                .sum()
        })
    }

    /// Cyclic Jacobi for Hermitian matrices. Off-diagonal elements are
    /// annihilated pairwise with complex Givens rotations until the
    /// off-diagonal Frobenius norm falls below `1e-14 × ‖A‖`.
    fn jacobi(&self, want_vectors: bool) -> (Vec<f64>, Option<CMatrix>) {
        let n = self.n;
        let mut a = self.clone();
        let mut v = if want_vectors {
            Some(CMatrix::identity(n))
        } else {
            None
        };

        let norm = a.frobenius_norm();
        if norm > 0.0 && n > 1 {
            let tol = 1e-14 * norm;
            for _ in 0..JACOBI_MAX_SWEEPS {
                let mut off = 0.0f64;
                for p in 0..n {
                    for q in (p + 1)..n {
                        off += a[(p, q)].norm_sqr();
                    }
                }
                if off.sqrt() <= tol {
                    break;
                }
                for p in 0..n {
                    for q in (p + 1)..n {
                        rotate(&mut a, v.as_mut(), p, q);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&i, &j| {
            a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("real diag")
        });
        let vals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
        let vecs = v.map(|v| CMatrix::from_fn(n, |i, j| v[(i, order[j])]));
        (vals, vecs)
    }
}

/// One Jacobi rotation annihilating `a[(p, q)]`.
fn rotate(a: &mut CMatrix, v: Option<&mut CMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq.unscale(r); // e^{iα} with a_pq = r e^{iα}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // J differs from the identity only in (p, q) rows/columns:
    //   J_pp = c, J_pq = s, J_qp = −s e^{−iα}, J_qq = c e^{−iα},
    // and A ← J† A J keeps A Hermitian while zeroing a_pq.
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    // The rotated diagonal is real and the target element exactly zero.
    a[(p, p)] = C64::new(app - t * r, 0.0);
    a[(q, q)] = C64::new(aqq + t * r, 0.0);
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c + vkq * jqp;
            v[(k, q)] = vkp * s + vkq * jqq;
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] + rhs[(i, j)])
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix::from_fn(self.n, |i, j| self[(i, j)] - rhs[(i, j)])
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}
