//! Small dense exact linear algebra over a quadratic field.

use super::quad::QuadExt;

/// Outcome of solving a linear system `A x = b`.
#[derive(Debug, Clone)]
pub enum LinearSolution {
    Unique(Vec<QuadExt>),
    /// Rank deficit: the system has this many remaining degrees of freedom.
    Underdetermined(usize),
    Inconsistent,
}

/// Gaussian elimination on an augmented system; rows may outnumber columns.
pub fn solve_linear(rows: &[(Vec<QuadExt>, QuadExt)], ncols: usize) -> LinearSolution {
    let mut m: Vec<Vec<QuadExt>> = rows
        .iter()
        .map(|(r, rhs)| {
            assert_eq!(r.len(), ncols);
            let mut v = r.clone();
            v.push(rhs.clone());
            v
        })
        .collect();
    let nrows = m.len();
    let mut pivot_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("pivot nonzero");
        for j in col..=ncols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for i in 0..nrows {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=ncols {
                    let t = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // inconsistent if a zero row has nonzero rhs
    for row in m.iter().skip(rank) {
        if !row[ncols].is_zero() {
            return LinearSolution::Inconsistent;
        }
    }
    if rank < ncols {
        return LinearSolution::Underdetermined(ncols - rank);
    }
    let mut x = vec![QuadExt::zero(); ncols];
    for (col, x_val) in x.iter_mut().enumerate() {
        *x_val = m[pivot_of_col[col]][ncols].clone();
    }
    LinearSolution::Unique(x)
}
