//! Small exact linear algebra over `Rat` and `BigInt`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`, computed by
/// fraction-free (Bareiss) elimination without row exchanges. Once a minor
/// vanishes the remaining ones are not determined by this scheme, so the
/// returned vector stops at the first zero.
pub fn leading_principal_minors(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            let lead_zero = a[i][k].is_zero();
            for j in k + 1..n {
                // dual graphs are sparse; a zero stays zero unless both
                // a[i][k] and a[k][j] are nonzero
                if a[i][j].is_zero() && (lead_zero || a[k][j].is_zero()) {
                    continue;
                }
                let v = if lead_zero {
                    &a[i][j] * &pivot / &prev
                } else {
                    (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev
                };
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Negative definiteness by Sylvester's criterion: the k-th leading minor
/// must have sign `(-1)^k`.
pub fn is_negative_definite(matrix: &[Vec<i64>]) -> bool {
    let minors = leading_principal_minors(matrix);
    minors.len() == matrix.len()
        && minors.iter().enumerate().all(|(k, d)| {
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}

/// Solves `A x = b` exactly by Gaussian elimination with row pivoting.
pub fn solve(matrix: &[Vec<i64>], rhs: &[Rat]) -> Result<Vec<Rat>> {
    let n = matrix.len();
    debug_assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Rat>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            row.iter()
                .map(|&x| Rat::integer(x))
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..=n {
                if a[col][c].is_zero() {
                    continue;
                }
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - delta;
            }
        }
    }
    Ok((0..n).map(|i| &a[i][n] / &a[i][i]).collect())
}

/// Leaf-first elimination of a symmetric matrix on a tree: diagonal `diag`,
/// `-1` on every edge, 0 elsewhere. Eliminating a leaf into its parent
/// creates no fill-in, so factoring and solving are linear in the size.
#[derive(Debug, Clone)]
pub struct TreeElimination {
    /// Vertices in breadth-first order from vertex 0.
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    pivots: Vec<Rat>,
}

impl TreeElimination {
    /// Factors the matrix, or returns `None` if some pivot is not positive,
    /// which happens exactly when the matrix is not positive definite.
    /// `edges` must form a spanning tree on `diag.len()` vertices.
    pub fn new(diag: &[i64], edges: &[(usize, usize)]) -> Option<Self> {
        let n = diag.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        if n > 0 {
            let mut seen = vec![false; n];
            seen[0] = true;
            order.push(0);
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        order.push(w);
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), n, "edges must span a tree");
        let mut pivots: Vec<Rat> = diag.iter().map(|&d| Rat::integer(d)).collect();
        for &v in order.iter().rev() {
            if !pivots[v].is_positive() {
                return None;
            }
            if let Some(p) = parent[v] {
                let shift = pivots[v].recip();
                pivots[p] = &pivots[p] - shift;
            }
        }
        Some(TreeElimination { order, parent, pivots })
    }

    pub fn solve(&self, rhs: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(rhs.len(), self.pivots.len());
        let mut y = rhs.to_vec();
        for &v in self.order.iter().rev() {
            if let Some(p) = self.parent[v] {
                let carried = &y[v] / &self.pivots[v];
                y[p] = &y[p] + carried;
            }
        }
        let mut x = vec![Rat::zero(); y.len()];
        for &v in &self.order {
            let from_parent = self.parent[v].map_or_else(Rat::zero, |p| x[p].clone());
            x[v] = (&y[v] + from_parent) / &self.pivots[v];
        }
        x
    }
}
