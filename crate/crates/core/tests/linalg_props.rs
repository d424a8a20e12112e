use hodgejump::coeff::{GaussianRational, Params, Point, Poly};
use hodgejump::linalg::{generic_kernel_basis, generic_rank, specialized_rank, CohomologyBasis, PolyMatrix, ScalarMatrix};
use num_traits::Zero;
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -1i64..=1).prop_map(|(re, im)| GaussianRational::from_parts((re, 1), (im, 1)))
}

fn scalar_matrix(max: usize) -> impl Strategy<Value = ScalarMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(gaussian(), c), r).prop_map(|rows| ScalarMatrix::from_rows(rows).unwrap())
    })
}

fn params() -> Params {
    Params::new(["a", "b"])
}

/// Entries are affine in two parameters with small integer coefficients.
fn poly_matrix() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), c), r).prop_map(|rows| {
            let p = params();
            let rows = rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|(k, x, y)| {
                            Poly::constant_in(&p, GaussianRational::from_integer(k))
                                + Poly::var(&p, "a").unwrap().scale(&GaussianRational::from_integer(x))
                                + Poly::var(&p, "b").unwrap().scale(&GaussianRational::from_integer(y))
                        })
                        .collect()
                })
                .collect();
            PolyMatrix::from_rows(rows).unwrap()
        })
    })
}

fn point(a: i64, b: i64) -> Point {
    let mut p = Point::zeros(&params());
    p.set("a", GaussianRational::from_integer(a));
    p.set("b", GaussianRational::from_integer(b));
    p
}

proptest! {
    #[test]
    fn rank_nullity(m in scalar_matrix(5)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in kernel {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_returns_a_solution(m in scalar_matrix(4), x in prop::collection::vec(gaussian(), 4)) {
        let x = &x[..m.cols()];
        let b = m.mul_vec(x).unwrap();
        let y = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn specialized_rank_is_at_most_generic(m in poly_matrix(), a in -3i64..=3, b in -3i64..=3) {
        let generic = generic_rank(&m).unwrap();
        prop_assert!(specialized_rank(&m, &point(a, b)).unwrap() <= generic);
        // generic rank is attained at one of a few sample points
        let best = [(5, 7), (11, -3), (-13, 17), (19, 23)].iter().map(|&(a, b)| specialized_rank(&m, &point(a, b)).unwrap()).max().unwrap();
        prop_assert_eq!(best, generic);
    }

    #[test]
    fn generic_kernel_is_annihilated(m in poly_matrix()) {
        let kernel = generic_kernel_basis(&m).unwrap();
        prop_assert_eq!(kernel.len() + generic_rank(&m).unwrap(), m.cols());
        for v in kernel {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn cohomology_dimension(a in scalar_matrix(3), c in scalar_matrix(3)) {
        // d_in lands in the kernel of d_out
        let d_out = a;
        let kernel = d_out.kernel_basis();
        if kernel.is_empty() {
            return Ok(());
        }
        let d_in = ScalarMatrix::from_columns(d_out.cols(), &kernel).unwrap().try_mul(&c.submatrix(0..kernel.len().min(c.rows()), 0..c.cols())
            .vstack(&ScalarMatrix::zeros(kernel.len().saturating_sub(c.rows()), c.cols())).unwrap()).unwrap();
        let h = CohomologyBasis::new(&d_in, &d_out).unwrap();
        prop_assert_eq!(h.len(), d_out.cols() - d_out.rank() - d_in.rank());
        for r in h.representatives() {
            prop_assert!(h.is_closed(r).unwrap());
            prop_assert!(!h.is_exact(r).unwrap());
        }
    }
}
