//! Rank and kernel of polynomial matrices over the fraction field of the
//! parameter ring, by fraction-free (Bareiss) elimination.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::coeff::{Coeff, Point, Poly};
use crate::error::Error;

pub type PolyMatrix = Matrix<Poly>;

/// Upper echelon form from fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: PolyMatrix,
    pub pivots: Vec<usize>,
}

/// Bareiss elimination with row pivoting and column skipping. Each division
/// by the previous pivot is exact; a failure is reported as an internal error.
pub fn fraction_free_echelon(m: &PolyMatrix) -> Result<Echelon, Error> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut prev: Option<Poly> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // prefer the sparsest nonzero pivot candidate, ties by row index
        let Some(p) = (r..rows).filter(|&i| !a.get(i, c).is_zero()).min_by_key(|&i| a.get(i, c).num_terms()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let x = a.get(p, j).clone();
                let y = a.get(r, j).clone();
                a.set(p, j, y);
                a.set(r, j, x);
            }
        }
        let pivot = a.get(r, c).clone();
        for i in r + 1..rows {
            let f = a.get(i, c).clone();
            for j in c..cols {
                let num = pivot.mul_ref(a.get(i, j)).sub_ref(&f.mul_ref(a.get(r, j)));
                let v = match &prev {
                    None => num,
                    Some(d) => num.div_exact(d).ok_or_else(|| {
                        Error::Internal(format!("inexact division by {d} in fraction-free elimination"))
                    })?,
                };
                a.set(i, j, v);
            }
        }
        prev = Some(pivot);
        pivots.push(c);
        r += 1;
    }
    Ok(Echelon { matrix: a, pivots })
}

/// Rank over the fraction field of the parameter ring.
pub fn generic_rank(m: &PolyMatrix) -> Result<usize, Error> {
    Ok(fraction_free_echelon(m)?.pivots.len())
}

/// Rank after evaluating every entry at `point`.
pub fn specialized_rank(m: &PolyMatrix, point: &Point) -> Result<usize, Error> {
    Ok(m.eval(point)?.rank())
}

/// Polynomial vectors spanning the kernel over the fraction field, one per
/// free column; denominators are cleared by back-substitution without division.
pub fn generic_kernel_basis(m: &PolyMatrix) -> Result<Vec<Vec<Poly>>, Error> {
    let Echelon { matrix: u, pivots } = fraction_free_echelon(m)?;
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let zero = || Poly::zero();
    let mut out = Vec::new();
    for &f in &free {
        let mut y: Vec<Poly> = vec![zero(); cols];
        y[f] = Poly::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut s = zero();
            for j in pc + 1..cols {
                if !y[j].is_zero() {
                    s = s.sub_ref(&u.get(r, j).mul_ref(&y[j]));
                }
            }
            let piv = u.get(r, pc).clone();
            for v in y.iter_mut() {
                if !v.is_zero() {
                    *v = v.mul_ref(&piv);
                }
            }
            y[pc] = s;
        }
        out.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{parse_poly, GaussianRational};

    fn pm(rows: &[&[&str]], names: &[&str]) -> PolyMatrix {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|e| parse_poly(e, &names).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn single_parameter() {
        let m = pm(&[&["t"]], &["t"]);
        assert_eq!(generic_rank(&m).unwrap(), 1);
        assert!(generic_kernel_basis(&m).unwrap().is_empty());
        let mut p = Point::default();
        p.set("t", GaussianRational::zero());
        assert_eq!(specialized_rank(&m, &p).unwrap(), 0);
    }

    #[test]
    fn two_by_two_generic() {
        let names = ["t11", "t12", "t21", "t22"];
        let m = pm(&[&["t11", "t12"], &["t21", "t22"]], &names);
        assert_eq!(generic_rank(&m).unwrap(), 2);
        let mut p = Point::default();
        for (k, v) in names.iter().zip([1, 0, 0, 0]) {
            p.set(k, GaussianRational::from_integer(v));
        }
        assert_eq!(specialized_rank(&m, &p).unwrap(), 1);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = pm(&[&["0", "0"], &["0", "0"]], &["t"]);
        assert_eq!(generic_rank(&m).unwrap(), 0);
        assert_eq!(generic_kernel_basis(&m).unwrap().len(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = pm(&[&["t", "1", "s"], &["t^2", "t", "s*t"]], &["s", "t"]);
        assert_eq!(generic_rank(&m).unwrap(), 1);
        let k = generic_kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }
}
