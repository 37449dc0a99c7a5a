//! Fraction-free Gaussian elimination over `F_p[T_1^{1/p^D}, ...]`.
//!
//! Rows are cleared to polynomial entries, then reduced Bareiss-style: each
//! combination step multiplies by the current pivot and divides exactly by
//! the previous one, so entries stay polynomial and never grow denominators.
//! Pivots are chosen by minimal total degree among candidates.

use crate::field::{FieldCtx, FracPoly, RatFunc};

/// Result of eliminating a matrix: the rank, plus a kernel vector of the
/// original matrix when it is rank-deficient and square.
pub struct Elimination {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub kernel: Option<Vec<RatFunc>>,
}

/// Clears denominators row by row, then runs Bareiss elimination.
pub fn eliminate(ctx: FieldCtx, matrix: &[Vec<RatFunc>]) -> Elimination {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<FracPoly>> = matrix.iter().map(|row| clear_row(ctx, row)).collect();

    let mut rank = 0;
    let mut prev_pivot = FracPoly::one(ctx);
    let mut col_perm: Vec<usize> = (0..cols).collect();
    for step in 0..rows.min(cols) {
        // pivot of minimal total degree among the remaining block
        let mut best: Option<(usize, usize, u64)> = None;
        for (i, row) in m.iter().enumerate().skip(step) {
            for jj in step..cols {
                let entry = &row[col_perm[jj]];
                if entry.is_zero() {
                    continue;
                }
                let deg = entry.total_degree().unwrap_or(0);
                if best.map_or(true, |(_, _, d)| deg < d) {
                    best = Some((i, jj, deg));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(step, pi);
        col_perm.swap(step, pj);
        rank += 1;
        let pivot = m[step][col_perm[step]].clone();
        for i in step + 1..rows {
            if m[i].iter().all(|e| e.is_zero()) {
                continue;
            }
            let factor = m[i][col_perm[step]].clone();
            for jj in step..cols {
                let j = col_perm[jj];
                let a = m[i][j].mul(&pivot);
                let b = m[step][j].mul(&factor);
                let num = a.sub(&b);
                m[i][j] = if num.is_zero() || prev_pivot.is_one() {
                    num
                } else {
                    num.div_exact(&prev_pivot)
                };
            }
            m[i][col_perm[step]] = FracPoly::zero(ctx);
        }
        prev_pivot = pivot;
    }

    let kernel = if rank < cols && rows == cols {
        Some(kernel_vector(ctx, matrix))
    } else {
        None
    };

    Elimination {
        rows,
        cols,
        rank,
        kernel,
    }
}

fn clear_row(ctx: FieldCtx, row: &[RatFunc]) -> Vec<FracPoly> {
    let mut scale = FracPoly::one(ctx);
    for e in row {
        if !e.is_zero() && !e.den().is_one() {
            scale = scale.mul(e.den());
        }
    }
    row.iter()
        .map(|e| {
            if e.is_zero() {
                FracPoly::zero(ctx)
            } else if e.den().is_one() {
                e.num().mul(&scale)
            } else {
                e.num().mul(&scale.div_exact(e.den()))
            }
        })
        .collect()
}

/// A nonzero kernel vector of a singular square matrix, by plain Gauss-Jordan
/// over the fraction field. Only used on failure paths, where matrices are
/// small.
fn kernel_vector(ctx: FieldCtx, matrix: &[Vec<RatFunc>]) -> Vec<RatFunc> {
    let n = matrix.len();
    let mut m: Vec<Vec<RatFunc>> = matrix.to_vec();
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inverse().expect("pivot nonzero");
        for j in 0..n {
            m[row][j] = m[row][j].mul(&inv);
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let sub = m[row][j].mul(&f);
                    m[r][j] = m[r][j].sub(&sub);
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.iter().flatten().copied().collect();
    let free_col = (0..n)
        .find(|c| !pivot_cols.contains(c))
        .expect("matrix was not singular");
    let mut v = vec![RatFunc::zero(ctx); n];
    v[free_col] = RatFunc::one(ctx);
    for (r, pc) in pivot_col_of_row.iter().enumerate() {
        if let Some(pc) = pc {
            v[*pc] = m[r][free_col].neg();
        }
    }
    v
}

/// Exact rank of a matrix of field elements.
pub fn rank(ctx: FieldCtx, matrix: &[Vec<RatFunc>]) -> usize {
    eliminate(ctx, matrix).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn ctx() -> FieldCtx {
        FieldCtx::new(3, 1, 0).unwrap()
    }

    fn c(n: i64) -> RatFunc {
        RatFunc::from_i64(ctx(), n)
    }

    fn t_pow(k: u64) -> RatFunc {
        RatFunc::var(ctx(), 0).pow(k)
    }

    #[test]
    fn identity_full_rank() {
        let n = 5;
        let m: Vec<Vec<RatFunc>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c(1) } else { c(0) }).collect())
            .collect();
        assert_eq!(rank(ctx(), &m), n);
    }

    #[test]
    fn singular_matrix_yields_kernel() {
        // row 2 = T * row 0
        let m = vec![
            vec![c(1), t_pow(1), c(2)],
            vec![c(0), c(1), t_pow(2)],
            vec![t_pow(1), t_pow(2), t_pow(1).mul(&c(2))],
        ];
        let e = eliminate(ctx(), &m);
        assert_eq!(e.rank, 2);
        let k = e.kernel.expect("kernel vector");
        for row in &m {
            let mut acc = RatFunc::zero(ctx());
            for (a, x) in row.iter().zip(&k) {
                acc = acc.add(&a.mul(x));
            }
            assert!(acc.is_zero(), "kernel vector not annihilated");
        }
        assert!(k.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn rational_entries_cleared() {
        let inv_t = RatFunc::one(ctx()).div(&t_pow(1)).unwrap();
        // det = 1/T * T - 1 = 0
        let m = vec![vec![inv_t.clone(), c(1)], vec![c(1), t_pow(1)]];
        let e = eliminate(ctx(), &m);
        assert_eq!(e.rank, 1);
        assert!(e.kernel.is_some());
        let m2 = vec![vec![inv_t, c(2)], vec![c(1), t_pow(1)]];
        assert_eq!(rank(ctx(), &m2), 2);
    }

    #[test]
    fn outer_product_rank() {
        let u1 = [c(1), t_pow(1), c(2), t_pow(2)];
        let v1 = [t_pow(1), c(1), c(1), c(0)];
        let u2 = [c(0), c(1), t_pow(1), c(1)];
        let v2 = [c(2), t_pow(2), c(0), c(1)];
        let m: Vec<Vec<RatFunc>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| u1[i].mul(&v1[j]).add(&u2[i].mul(&v2[j])))
                    .collect()
            })
            .collect();
        assert_eq!(eliminate(ctx(), &m).rank, 2);
    }
}
