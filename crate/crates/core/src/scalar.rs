//! Scalar abstraction over the float width.
//!
//! All physics code is generic over [`Real`]; the two dense linear-algebra
//! kernels the solvers need (symmetric eigendecomposition, complex LU solve)
//! are attached to the trait so each width dispatches to a concrete faer
//! backend. Concrete type aliases for `f64`/`f32` live at the crate root.

use faer::prelude::Solve;
use faer::Mat;
use num_complex::Complex;

/// Real scalar: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FloatConst
    + num_traits::NumAssign
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` literal; panics only for values unrepresentable in `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in this scalar type")
    }

    /// Eigendecomposition of a dense symmetric matrix (column-major, `n * n`).
    ///
    /// Returns eigenvalues in ascending order together with the matching
    /// orthonormal eigenvectors, stored as columns (column-major). `None`
    /// signals a backend failure.
    fn sym_eigen(n: usize, col_major: &[Self]) -> Option<(Vec<Self>, Vec<Self>)>;

    /// Solve the dense complex system `A x = b` (`A` column-major, `n * n`).
    ///
    /// Returns `None` when the factorization does not produce a finite
    /// solution.
    fn solve_complex(
        n: usize,
        a_col_major: &[Complex<Self>],
        rhs: &[Complex<Self>],
    ) -> Option<Vec<Complex<Self>>>;
}

fn eigen_via_faer<T>(n: usize, col_major: &[T]) -> Option<(Vec<T>, Vec<T>)>
where
    T: faer::traits::RealField + Copy,
{
    assert_eq!(col_major.len(), n * n, "matrix buffer size mismatch");
    let a = Mat::<T>::from_fn(n, n, |i, j| col_major[j * n + i]);
    let eig = a.self_adjoint_eigen(faer::Side::Lower).ok()?;
    let s = eig.S();
    let u = eig.U();
    let mut values: Vec<T> = (0..n).map(|i| s[i]).collect();
    let mut vectors: Vec<T> = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            vectors.push(u[(i, j)]);
        }
    }
    // faer returns ascending eigenvalues; enforce the ordering in case a
    // backend change ever relaxes it.
    if values.windows(2).any(|w| w[0] > w[1]) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let old_vals = values.clone();
        let old_vecs = vectors.clone();
        for (new, &old) in perm.iter().enumerate() {
            values[new] = old_vals[old];
            vectors[new * n..(new + 1) * n].copy_from_slice(&old_vecs[old * n..(old + 1) * n]);
        }
    }
    Some((values, vectors))
}

fn solve_complex_via_faer<T>(
    n: usize,
    a_col_major: &[Complex<T>],
    rhs: &[Complex<T>],
) -> Option<Vec<Complex<T>>>
where
    T: faer::traits::RealField + num_traits::Float,
    Complex<T>: faer::traits::ComplexField,
{
    assert_eq!(a_col_major.len(), n * n, "matrix buffer size mismatch");
    assert_eq!(rhs.len(), n, "rhs size mismatch");
    let a = Mat::<Complex<T>>::from_fn(n, n, |i, j| a_col_major[j * n + i]);
    let b = Mat::<Complex<T>>::from_fn(n, 1, |i, _| rhs[i]);
    let x = a.partial_piv_lu().solve(&b);
    let out: Vec<Complex<T>> = (0..n).map(|i| x[(i, 0)]).collect();
    if out
        .iter()
        .all(|z| num_traits::Float::is_finite(z.re) && num_traits::Float::is_finite(z.im))
    {
        Some(out)
    } else {
        None
    }
}

impl Real for f64 {
    fn sym_eigen(n: usize, col_major: &[Self]) -> Option<(Vec<Self>, Vec<Self>)> {
        eigen_via_faer(n, col_major)
    }

    fn solve_complex(
        n: usize,
        a_col_major: &[Complex<Self>],
        rhs: &[Complex<Self>],
    ) -> Option<Vec<Complex<Self>>> {
        solve_complex_via_faer(n, a_col_major, rhs)
    }
}

impl Real for f32 {
    fn sym_eigen(n: usize, col_major: &[Self]) -> Option<(Vec<Self>, Vec<Self>)> {
        eigen_via_faer(n, col_major)
    }

    fn solve_complex(
        n: usize,
        a_col_major: &[Complex<Self>],
        rhs: &[Complex<Self>],
    ) -> Option<Vec<Complex<Self>>> {
        solve_complex_via_faer(n, a_col_major, rhs)
    }
}
