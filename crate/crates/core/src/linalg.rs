//! Row reduction over exact rationals. Matrices here are tiny (at most
//! `(N+1) x (N+1)`), so plain Gauss-Jordan with first-nonzero pivoting is enough.

use crate::exactmath::Rational;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
pub fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work, ncols).len()
}

/// Basis of `{x : A x = 0}`; one vector per free column, with that free
/// coordinate set to 1.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&work[row][free];
        }
        basis.push(v);
    }
    basis
}
