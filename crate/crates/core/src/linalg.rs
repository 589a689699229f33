//! Exact dense linear algebra over a [`Field`].
//!
//! Forward elimination is fraction-free (Bareiss): every update has the form
//! `(pivot * a_ij - a_ic * a_rj) / previous_pivot`, and the division is exact.
//! Pivots are chosen as the first nonzero entry of a column, so the kernel basis
//! returned for a given matrix is deterministic.

use crate::scalar::{Field, Scalar};

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Scalar>>;

/// Row echelon form together with the pivot column of each nonzero row.
struct Echelon {
    rows: Matrix,
    pivots: Vec<usize>,
}

fn echelon(field: Field, matrix: &[Vec<Scalar>], ncols: usize) -> Echelon {
    let mut rows: Matrix = matrix.to_vec();
    for r in &rows {
        debug_assert_eq!(r.len(), ncols);
    }
    let mut pivots = Vec::new();
    let mut prev = field.one();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let pivot = rows[r][c].clone();
        let prev_inv = prev.inv().expect("previous pivot is nonzero");
        for i in (r + 1)..rows.len() {
            let lead = rows[i][c].clone();
            for j in (c + 1)..ncols {
                let t = &(&pivot * &rows[i][j]) - &(&lead * &rows[r][j]);
                rows[i][j] = &t * &prev_inv;
            }
            rows[i][c] = field.zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank(field: Field, matrix: &[Vec<Scalar>], ncols: usize) -> usize {
    echelon(field, matrix, ncols).pivots.len()
}

/// A basis of `{x : matrix * x = 0}`, one vector per free column, with the free
/// coordinate set to 1 and the other free coordinates 0.
pub fn kernel(field: Field, matrix: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let ech = echelon(field, matrix, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![field.zero(); ncols];
            x[fc] = field.one();
            back_substitute(field, &ech, &mut x, None);
            x
        })
        .collect()
}

/// Solves the pivot variables of `x` from the bottom row up, given the free
/// variables already set in `x`. `rhs` is the reduced right-hand side.
fn back_substitute(field: Field, ech: &Echelon, x: &mut [Scalar], rhs: Option<&[Scalar]>) {
    for (row_idx, &pc) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[row_idx];
        let mut acc = match rhs {
            Some(b) => b[row_idx].clone(),
            None => field.zero(),
        };
        for j in (pc + 1)..row.len() {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc = &acc - &(&row[j] * &x[j]);
            }
        }
        x[pc] = &acc * &row[pc].inv().expect("pivot is nonzero");
    }
}

/// Solves `matrix * x = rhs`, returning one solution (free variables zero) or
/// `None` if the system is inconsistent.
pub fn solve(field: Field, matrix: &[Vec<Scalar>], rhs: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    assert_eq!(matrix.len(), rhs.len(), "row count must match right-hand side");
    let augmented: Matrix = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let ech = echelon(field, &augmented, ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let coeff_rows: Matrix = ech.rows.iter().map(|r| r[..ncols].to_vec()).collect();
    let b: Vec<Scalar> = ech.rows.iter().map(|r| r[ncols].clone()).collect();
    let reduced = Echelon {
        rows: coeff_rows,
        pivots: ech.pivots.clone(),
    };
    let mut x = vec![field.zero(); ncols];
    back_substitute(field, &reduced, &mut x, Some(&b));
    Some(x)
}

pub fn mat_vec(field: Field, matrix: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    matrix
        .iter()
        .map(|row| {
            row.iter().zip(x).fold(field.zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
        .collect()
}

pub fn transpose(matrix: &[Vec<Scalar>], ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| matrix.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Field::Rational.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(Field::Rational, &m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vector(&mat_vec(Field::Rational, &m, v)));
        }
        assert_eq!(rank(Field::Rational, &m, 3), 1);
    }

    #[test]
    fn kernel_of_invertible_matrix_is_trivial() {
        let m = q(&[&[2, 1], &[1, 1]]);
        assert!(kernel(Field::Rational, &m, 2).is_empty());
    }

    #[test]
    fn kernel_with_no_rows_is_everything() {
        let k = kernel(Field::Rational, &[], 3);
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(&[&[1, 1], &[1, -1]]);
        let b = vec![Field::Rational.from_i64(3), Field::Rational.from_i64(1)];
        let x = solve(Field::Rational, &m, &b, 2).unwrap();
        assert_eq!(x, vec![Field::Rational.from_i64(2), Field::Rational.from_i64(1)]);
        let m = q(&[&[1, 1], &[2, 2]]);
        let b = vec![Field::Rational.from_i64(1), Field::Rational.from_i64(3)];
        assert!(solve(Field::Rational, &m, &b, 2).is_none());
    }

    #[test]
    fn modular_rank() {
        let f2 = Field::prime(2).unwrap();
        let m: Matrix = [[1, 1], [1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| f2.from_i64(x)).collect())
            .collect();
        assert_eq!(rank(f2, &m, 2), 1);
        let f3 = Field::prime(3).unwrap();
        let m: Matrix = [[1, 1], [1, -1]]
            .iter()
            .map(|r| r.iter().map(|&x| f3.from_i64(x)).collect())
            .collect();
        assert_eq!(rank(f3, &m, 2), 2);
    }
}
