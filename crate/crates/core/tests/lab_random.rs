mod common;

use common::{g, random_complex, small_gaussian, RandomComplex};
use hodgejump::coeff::{GaussianRational, Poly};
use hodgejump::lab::*;
use hodgejump::linalg::{ScalarMatrix, Vector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: u64 = 120;

fn suite() -> impl Iterator<Item = (u64, RandomComplex)> {
    (0..CASES).map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (seed, random_complex(&mut rng, 2))
    })
}

/// Generic rank as the largest rank over several integer values of `t`.
fn sampled_rank(c: &FreeComplex, q: Option<usize>) -> usize {
    (2..9).map(|t| c.at(q, &g(t)).unwrap().rank()).max().unwrap()
}

#[test]
fn composition_is_zero_by_construction() {
    for (seed, r) in suite() {
        assert!(r.complex.validate().is_none(), "seed {seed}");
    }
}

#[test]
fn semicontinuity_and_ranks_match_construction() {
    for (seed, r) in suite() {
        let c = &r.complex;
        let dims = h_dims(c).unwrap();
        for (q, h) in dims.iter().enumerate() {
            assert!(h.at_zero >= h.generic, "seed {seed} q {q}");
            let rin = if q == 0 { (0, 0) } else { (r.generic_rank(q - 1), r.rank_at_zero(q - 1)) };
            let expected_generic = c.rank(q) - r.generic_rank(q) - rin.0;
            let expected_zero = c.rank(q) - r.rank_at_zero(q) - rin.1;
            assert_eq!((h.at_zero, h.generic), (expected_zero, expected_generic), "seed {seed} q {q}");
            assert_eq!(sampled_rank(c, Some(q)), r.generic_rank(q), "seed {seed} q {q}");
        }
    }
}

#[test]
fn accounting_holds_on_every_instance() {
    for (seed, r) in suite() {
        for q in 0..r.complex.len() {
            let a = jump_accounting(&r.complex, q).unwrap();
            assert!(a.consistent(), "seed {seed}: {a}");
            assert_eq!(a.kernel_drop, r.generic_rank(q) - r.rank_at_zero(q), "seed {seed}: {a}");
            if q > 0 {
                assert_eq!(a.image_rise, r.generic_rank(q - 1) - r.rank_at_zero(q - 1), "seed {seed}: {a}");
            }
        }
    }
}

#[test]
fn second_class_methods_agree() {
    for (seed, r) in suite() {
        for q in 1..r.complex.len() {
            let s = classify_second_class(&r.complex, q, r.complex.order_bound()).unwrap();
            assert!(s.agree(), "seed {seed} q {q}: {:?}", s);
        }
    }
}

/// Extend greedily until an obstruction appears.
fn first_obstruction(c: &FreeComplex, alpha: JetCochain, bound: u32) -> Option<(JetCochain, u32)> {
    let mut a = alpha;
    for n in 1..=bound {
        match extend_step(c, &a, n).unwrap() {
            Step::Extended(next) => a = next,
            Step::Obstructed(_) => return Some((a, n)),
        }
    }
    None
}

/// Obstructed cochains of the suite: each first-class obstructed basis class,
/// extended greedily to its first obstruction.
fn obstructed_cases() -> Vec<(u64, FreeComplex, JetCochain, u32)> {
    let mut out = Vec::new();
    for (seed, r) in suite() {
        let c = r.complex;
        for q in 0..c.len() {
            let h = c.cohomology_at_zero(q).unwrap();
            let first = classify_first_class(&c, q, c.order_bound()).unwrap();
            for coords in &first.obstructed {
                let alpha = JetCochain::constant(&c, q, &h.lift(coords)).unwrap();
                if let Some((a, n)) = first_obstruction(&c, alpha, c.order_bound()) {
                    out.push((seed, c.clone(), a, n));
                }
            }
        }
    }
    out
}

#[test]
fn reduce_to_primitive_terminates_with_nonzero_leading_term() {
    let cases = obstructed_cases();
    assert!(cases.len() >= 20, "only {} obstructed cases", cases.len());
    for (seed, c, a, n) in cases {
        let start = o_n_q(&c, &a, n).unwrap();
        let p = reduce_to_primitive(&c, &a, n).unwrap();
        assert!(p.n >= 1 && p.n <= n, "seed {seed}");
        assert!(!p.leading.is_zero(), "seed {seed}");
        assert_eq!(o_n_q(&c, &p.alpha, p.n).unwrap().class, start.class, "seed {seed}");
        assert_eq!(o_n_i(&c, &p.alpha, p.n, p.n - 1).unwrap(), p.leading, "seed {seed}");
    }
}

fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vector {
    (0..len).map(|_| small_gaussian(rng)).collect()
}

#[test]
fn obstruction_depends_only_on_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for (seed, c, a, n) in obstructed_cases() {
        let q = a.q;
        let base = o_n_q(&c, &a, n).unwrap();
        for _ in 0..3 {
            // add d^{q-1} of a random jet and t^n times anything
            let mut blocks: Vec<Vector> = (0..=n).map(|k| a.block(k)).collect();
            let extra: Vec<Vector> = (0..=n + 1).map(|_| random_vector(&mut rng, c.rank(q))).collect();
            blocks.push(extra[0].clone());
            let mut perturbed = JetCochain::from_blocks(&c, q, &blocks, n + 1).unwrap();
            if q > 0 {
                let beta: Vec<Poly> = (0..c.rank(q - 1))
                    .map(|_| {
                        let params = c.params();
                        (0..=n).fold(Poly::zero_in(&params), |acc, k| acc + Poly::monomial(&params, vec![k], small_gaussian(&mut rng)))
                    })
                    .collect();
                let exact = c.d(Some(q - 1)).mul_vec(&beta).unwrap();
                let sum: Vec<Poly> = perturbed.entries().iter().zip(&exact).map(|(x, y)| x.clone() + y.clone()).collect();
                perturbed = JetCochain::new(&c, q, sum, n + 1).unwrap();
            }
            let mut with_top: Vec<Vector> = (0..n).map(|k| perturbed.block(k)).collect();
            with_top.push(extra[1].clone());
            let shifted = JetCochain::from_blocks(&c, q, &with_top, n).unwrap();
            assert_eq!(o_n_q(&c, &shifted, n).unwrap().class, base.class, "seed {seed}");
            checked += 1;
        }
    }
    assert!(checked >= 100, "only {checked} perturbations");
}

/// `o_{n,n-i}(alpha) = 0` exactly when a correction divisible by `t^i`
/// extends `alpha` to order `n`.
#[test]
fn rho_compatibility_against_direct_extension() {
    for (seed, c, a, n) in obstructed_cases() {
        let o = o_n_q(&c, &a, n).unwrap();
        for i in 1..=n {
            let via_rho = o_n_i(&c, &a, n, n - i).unwrap().is_zero();
            let direct = correction_exists(&c, &a, n, i);
            assert_eq!(via_rho, direct, "seed {seed} n {n} i {i}");
            assert_eq!(rho(&c, a.q + 1, &o.representative, n - i).unwrap().is_zero(), via_rho);
        }
    }
}

/// Brute force: unknown coefficients of `t^i, ..., t^n` in the correction,
/// equations for the coefficients `t^0, ..., t^n` of `d(alpha + correction)`.
fn correction_exists(c: &FreeComplex, a: &JetCochain, n: u32, i: u32) -> bool {
    let q = a.q;
    let (p, r) = (c.rank(q), c.rank(q + 1));
    let image = c.d(Some(q)).mul_vec(a.truncated(n - 1).entries()).unwrap();
    let unknowns = p * (n - i + 1) as usize;
    let mut m = ScalarMatrix::zeros(r * (n as usize + 1), unknowns);
    let mut rhs = vec![GaussianRational::zero(); r * (n as usize + 1)];
    for k in 0..=n {
        for (row, e) in image.iter().enumerate() {
            rhs[k as usize * r + row] = -e.univariate_coeff(k);
        }
        for m_idx in 0..=(n - i) {
            let deg = i + m_idx;
            if deg > k {
                continue;
            }
            let dk = c.coefficient(Some(q), k - deg);
            for row in 0..r {
                for col in 0..p {
                    m.set(k as usize * r + row, m_idx as usize * p + col, dk.get(row, col).clone());
                }
            }
        }
    }
    m.solve(&rhs).unwrap().is_some()
}
