#![allow(dead_code)]

use hodgejump::coeff::{GaussianRational, Params, Point, Poly};
use hodgejump::exterior::VectorForm;
use hodgejump::lab::FreeComplex;
use hodgejump::linalg::PolyMatrix;
use rand::Rng;

pub const IWASAWA_PARAMS: [&str; 6] = ["t11", "t12", "t21", "t22", "t31", "t32"];

pub fn g(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

/// The general first-order deformation `sum t_il theta_i (x) phibar_l`, l = 1, 2.
pub fn iwasawa_psi1() -> (Params, VectorForm<Poly>) {
    let params = Params::new(IWASAWA_PARAMS);
    let mut psi = VectorForm::zero(3, 1);
    for name in IWASAWA_PARAMS {
        let i: usize = name[1..2].parse().unwrap();
        let l: usize = name[2..3].parse().unwrap();
        psi = psi.add(&VectorForm::term(3, i, &[l], Poly::var(&params, name).unwrap()).unwrap());
    }
    (params, psi)
}

pub fn point(params: &Params, values: &[i64]) -> Point {
    let mut p = Point::zeros(params);
    for (name, v) in params.names().iter().zip(values) {
        p.set(name, g(*v));
    }
    p
}

pub fn small_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
    GaussianRational::from_parts((re, 1), (im, 1))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R) -> GaussianRational {
    loop {
        let c = small_gaussian(rng);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// A random complex `E^0 -> E^1 -> E^2` obtained from a diagonal one by
/// unimodular changes of basis, together with the diagonal entries of each
/// differential before the change.
pub struct RandomComplex {
    pub complex: FreeComplex,
    pub diagonals: Vec<Vec<Poly>>,
}

impl RandomComplex {
    /// Number of diagonal entries of `d^q` that are nonzero.
    pub fn generic_rank(&self, q: usize) -> usize {
        self.diagonals.get(q).map_or(0, |d| d.iter().filter(|e| !num_traits::Zero::is_zero(*e)).count())
    }

    /// Number of diagonal entries of `d^q` that are nonzero at `t = 0`.
    pub fn rank_at_zero(&self, q: usize) -> usize {
        self.diagonals.get(q).map_or(0, |d| d.iter().filter(|e| !num_traits::Zero::is_zero(&e.univariate_coeff(0))).count())
    }
}

fn t_params() -> Params {
    Params::new(["t"])
}

fn diagonal_entry<R: Rng>(rng: &mut R) -> Poly {
    let params = t_params();
    let c = nonzero_gaussian(rng);
    match rng.gen_range(0..6) {
        0 => Poly::zero_in(&params),
        1 => Poly::constant_in(&params, c),
        2 | 3 => Poly::monomial(&params, vec![1], c),
        4 => Poly::monomial(&params, vec![2], c),
        _ => Poly::monomial(&params, vec![1], c.clone()) + Poly::monomial(&params, vec![2], nonzero_gaussian(rng)),
    }
}

/// A unimodular matrix and its inverse, as a product of elementary matrices
/// `I + p(t) e_ij` with `p` of degree at most one.
fn unimodular<R: Rng>(rng: &mut R, n: usize) -> (PolyMatrix, PolyMatrix) {
    let params = t_params();
    let mut u = PolyMatrix::identity(n).map(|x: &Poly| x.lift_to(&params).unwrap());
    let mut inv = u.clone();
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..rng.gen_range(1..=2) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let p = Poly::constant_in(&params, small_gaussian(rng)) + Poly::monomial(&params, vec![1], small_gaussian(rng));
        let mut e = PolyMatrix::identity(n).map(|x: &Poly| x.lift_to(&params).unwrap());
        let mut e_inv = e.clone();
        e.set(i, j, p.clone());
        e_inv.set(i, j, -p);
        u = e.try_mul(&u).unwrap();
        inv = inv.try_mul(&e_inv).unwrap();
    }
    (u, inv)
}

/// Ranks are drawn from `1..=max_rank`.
pub fn random_complex<R: Rng>(rng: &mut R, max_rank: usize) -> RandomComplex {
    let params = t_params();
    let ranks: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=max_rank)).collect();
    let s0 = rng.gen_range(0..=ranks[0].min(ranks[1]));
    let s1 = rng.gen_range(0..=(ranks[1] - s0).min(ranks[2]));
    let mut diagonals = vec![Vec::new(), Vec::new()];
    let mut d0 = PolyMatrix::zeros(ranks[1], ranks[0]).map(|x: &Poly| x.lift_to(&params).unwrap());
    for k in 0..s0 {
        let e = diagonal_entry(rng);
        d0.set(k, k, e.clone());
        diagonals[0].push(e);
    }
    let mut d1 = PolyMatrix::zeros(ranks[2], ranks[1]).map(|x: &Poly| x.lift_to(&params).unwrap());
    for k in 0..s1 {
        let e = diagonal_entry(rng);
        d1.set(k, s0 + k, e.clone());
        diagonals[1].push(e);
    }
    let (u0, u0_inv) = unimodular(rng, ranks[0]);
    let (u1, u1_inv) = unimodular(rng, ranks[1]);
    let (u2, _) = unimodular(rng, ranks[2]);
    let _ = u0;
    let d0 = u1.try_mul(&d0).unwrap().try_mul(&u0_inv).unwrap();
    let d1 = u2.try_mul(&d1).unwrap().try_mul(&u1_inv).unwrap();
    let complex = FreeComplex::new("t", ranks, vec![d0, d1]).unwrap();
    RandomComplex { complex, diagonals }
}
