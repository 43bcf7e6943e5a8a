//! Exact linear algebra over a field: fraction-free elimination, reduced
//! row echelon form, rank and kernels.

use crate::scalar::Field;

pub type Matrix<K> = Vec<Vec<K>>;

/// Fraction-free (Bareiss) forward elimination in place. Pivots are chosen
/// as the leftmost column with a nonzero entry at or below the current row,
/// taking the first such row. Returns the pivot columns.
pub fn bareiss<K: Field>(rows: &mut Matrix<K>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = K::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let pivot = rows[r][c].clone();
        let inv_prev = prev.inverse().expect("previous pivot is nonzero");
        for i in r + 1..rows.len() {
            let lead = rows[i][c].clone();
            for j in c + 1..ncols {
                let val = pivot.clone() * rows[i][j].clone() - lead.clone() * rows[r][j].clone();
                rows[i][j] = val * inv_prev.clone();
            }
            rows[i][c] = K::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form, with zero rows removed. Returns the reduced
/// rows and their pivot columns.
pub fn rref<K: Field>(m: &[Vec<K>], ncols: usize) -> (Matrix<K>, Vec<usize>) {
    let mut rows: Matrix<K> = m.to_vec();
    let pivots = bareiss(&mut rows, ncols);
    rows.truncate(pivots.len());
    for (i, &c) in pivots.iter().enumerate().rev() {
        let inv = rows[i][c].inverse().expect("pivot is nonzero");
        for x in rows[i].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for k in 0..i {
            let f = rows[k][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let val = rows[k][j].clone() - f.clone() * rows[i][j].clone();
                rows[k][j] = val;
            }
        }
    }
    (rows, pivots)
}

pub fn rank<K: Field>(m: &[Vec<K>], ncols: usize) -> usize {
    let mut rows = m.to_vec();
    bareiss(&mut rows, ncols).len()
}

/// A basis of `{x : m x = 0}`, in canonical form: the reduced row echelon
/// form of the basis vectors taken as rows. Empty when the kernel is
/// trivial.
pub fn kernel<K: Field>(m: &[Vec<K>], ncols: usize) -> Matrix<K> {
    let (rows, pivots) = rref(m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![K::zero(); ncols];
        v[free] = K::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(v);
    }
    rref(&basis, ncols).0
}

pub fn mat_vec<K: Field>(m: &[Vec<K>], x: &[K]) -> Vec<K> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_empty_and_identity() {
        assert_eq!(
            kernel::<Rational>(&[], 3),
            m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        assert!(kernel(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn kernel_annihilates() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = kernel(&a, 4);
        assert_eq!(k.len(), 2);
        assert_eq!(rank(&a, 4) + k.len(), 4);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn rref_is_reduced() {
        let (r, piv) = rref(&m(&[&[0, 2, 4], &[1, 1, 1]]), 3);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, -1], &[0, 1, 2]]));
    }
}
