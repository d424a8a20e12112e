mod common;

use common::{g, iwasawa_psi1, point, small_gaussian};
use hodgejump::coeff::{GaussianRational, Params, Poly};
use hodgejump::defo::*;
use hodgejump::exterior::*;
use hodgejump::linalg::{form_basis, DolbeaultCohomology, HodgeTable};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family(order: u32) -> DeformationFamily {
    let (params, psi) = iwasawa_psi1();
    match mc_extend(&ScalarSpec::iwasawa(), &psi, &params, order).unwrap() {
        McOutcome::Family(f) => f,
        McOutcome::Obstructed { order, monomial, .. } => panic!("obstructed at order {order} in {monomial}"),
    }
}

fn var(params: &Params, name: &str) -> Poly {
    Poly::var(params, name).unwrap()
}

fn wedge_all(forms: &[InvariantForm<Poly>]) -> InvariantForm<Poly> {
    forms.iter().skip(1).fold(forms[0].clone(), |acc, f| acc.wedge(f))
}

#[test]
fn baseline_hodge_numbers() {
    let table = HodgeTable::compute(&ScalarSpec::iwasawa()).unwrap();
    assert_eq!(table.standard_row(), vec![3, 2, 3, 6, 2, 1, 6, 6, 1]);
}

#[test]
fn d_squared_identities_on_builtin_structures() {
    for spec in [ScalarSpec::iwasawa(), ScalarSpec::torus(3)] {
        let n = spec.dim();
        for p in 0..=n {
            for q in 0..=n {
                for mask in form_basis(n, p, q) {
                    let a = ScalarForm::monomial(n, mask, g(1));
                    assert!(spec.d(&spec.d(&a)).is_zero());
                    assert!(spec.del(&spec.del(&a)).is_zero());
                    assert!(spec.delbar(&spec.delbar(&a)).is_zero());
                    assert!(spec.del(&spec.delbar(&a)).add(&spec.delbar(&spec.del(&a))).is_zero());
                }
            }
        }
    }
}

#[test]
fn obstructions_out_of_h20() {
    let spec = ScalarSpec::iwasawa();
    let (params, psi) = iwasawa_psi1();
    let h21 = DolbeaultCohomology::new(&spec, 2, 1).unwrap();
    let phi = |i| InvariantForm::<Poly>::phi(3, i);
    let phibar = |i| InvariantForm::<Poly>::phibar(3, i);
    let o1 = |a: &InvariantForm<Poly>| h21.project_poly(&o1_form(&spec, &psi, a).unwrap()).unwrap();

    assert!(o1(&wedge_all(&[phi(1), phi(2)])).iter().all(|c| c.is_zero()));

    let expected = wedge_all(&[phi(1), phi(2), phibar(1)])
        .mul_coeff(&-var(&params, "t21"))
        .add(&wedge_all(&[phi(1), phi(2), phibar(2)]).mul_coeff(&-var(&params, "t22")));
    assert_eq!(o1(&wedge_all(&[phi(2), phi(3)])), h21.project_poly(&expected).unwrap());

    // direct expansion gives t12 (not t21) in the second term
    let expected13 = wedge_all(&[phi(1), phi(2), phibar(1)])
        .mul_coeff(&-var(&params, "t11"))
        .add(&wedge_all(&[phi(1), phi(2), phibar(2)]).mul_coeff(&-var(&params, "t12")));
    assert_eq!(o1(&wedge_all(&[phi(1), phi(3)])), h21.project_poly(&expected13).unwrap());

    let combo = wedge_all(&[phi(2), phi(3)])
        .mul_coeff(&var(&params, "t11"))
        .sub(&wedge_all(&[phi(1), phi(3)]).mul_coeff(&var(&params, "t21")));
    let det = var(&params, "t11") * var(&params, "t22") - var(&params, "t21") * var(&params, "t12");
    let x2 = h21.project_poly(&wedge_all(&[phi(1), phi(2), phibar(2)]).mul_coeff(&-det)).unwrap();
    assert_eq!(o1(&combo), x2);
}

#[test]
fn maurer_cartan_second_order_term() {
    let f = family(3);
    let (params, _) = iwasawa_psi1();
    let det = var(&params, "t11") * var(&params, "t22") - var(&params, "t21") * var(&params, "t12");
    let psi2 = VectorForm::term(3, 3, &[3], -det).unwrap();
    assert_eq!(f.psi().homogeneous_part(2), psi2);
    assert!(f.psi().homogeneous_part(3).is_zero());
    assert!(f.defect().unwrap().iter().all(|d| d.is_zero()));
}

#[test]
fn jump_rows_and_oracle() {
    let spec = ScalarSpec::iwasawa();
    let (params, psi) = iwasawa_psi1();
    let f = family(2);
    let rows = [([1, 0, 0, 0, 0, 0], [2, 2, 2, 5, 2, 1, 5, 5, 1]), ([1, 0, 0, 1, 0, 0], [2, 2, 1, 5, 2, 1, 4, 4, 1])];
    for (values, expected) in rows {
        let pt = point(&params, &values);
        let table = jump_report(&spec, &psi, &pt).unwrap();
        assert_eq!(table.predicted().standard_row(), expected.to_vec());
        assert_eq!(table.baseline().standard_row(), vec![3, 2, 3, 6, 2, 1, 6, 6, 1]);
        for (num, den) in [(1, 2), (1, 3), (2, 1)] {
            let oracle = oracle_along_ray(&f, &pt, &GaussianRational::from_ratio(num, den)).unwrap();
            assert_eq!(oracle.standard_row(), expected.to_vec(), "scale {num}/{den}");
        }
        assert!(matches!(oracle_hodge_at_point(&f, &pt), Err(hodgejump::Error::DegenerateCoframe(_))));
    }
    let origin = jump_report(&spec, &psi, &point(&params, &[0; 6])).unwrap();
    assert_eq!(origin.predicted(), origin.baseline());
}

#[test]
fn jumping_from_six_to_five() {
    let spec = ScalarSpec::iwasawa();
    let (params, psi) = iwasawa_psi1();
    let pt = point(&params, &[1, 0, 0, 0, 0, 0]);
    let second = second_class_subspace(&spec, &psi, 1, 1).unwrap();
    assert_eq!(second.dim_at(&pt).unwrap(), 1);
    assert_eq!(second.generic_dim().unwrap(), 1);
    let h11 = DolbeaultCohomology::new(&spec, 1, 1).unwrap();
    let phi3 = InvariantForm::<Poly>::phi(3, 3);
    let o1_phi3 = h11.project_poly(&o1_form(&spec, &psi, &phi3).unwrap()).unwrap();
    let at: Vec<GaussianRational> = o1_phi3.iter().map(|c| c.eval(&pt).unwrap()).collect();
    assert!(at.iter().any(|c| !c.is_zero()));
    let basis = second.basis_at(&pt).unwrap();
    assert_eq!(basis.len(), 1);
    let k = at.iter().position(|c| !c.is_zero()).unwrap();
    let ratio = basis[0][k].checked_div(&at[k]).unwrap();
    assert!(basis[0].iter().zip(&at).all(|(b, a)| *b == &ratio * a));
    assert_eq!(obstruction_o1(&spec, &psi, 1, 1).unwrap().rank_at(&pt).unwrap(), 0);
}

#[test]
fn witness_for_iwasawa_and_none_for_torus() {
    let w = parallelisable_witness(&ScalarSpec::iwasawa()).unwrap().expect("iwasawa has a witness");
    let h11 = DolbeaultCohomology::new(&ScalarSpec::iwasawa(), 1, 1).unwrap();
    assert!(h11.project(&w.obstruction).unwrap().iter().any(|c| !c.is_zero()));
    assert_eq!(parallelisable_witness(&ScalarSpec::torus(3)).unwrap(), None);
}

#[test]
fn torus_obstructions_vanish_for_random_directions() {
    let torus = ScalarSpec::torus(3);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let params = Params::new(["s"]);
    for _ in 0..50 {
        let table: Vec<Vec<Poly>> = (0..3).map(|_| (0..3).map(|_| var(&params, "s").scale(&small_gaussian(&mut rng))).collect()).collect();
        let psi = VectorForm::from_matrix(3, &table).unwrap();
        assert!(validate_first_order(&torus, &psi).unwrap().is_empty());
        for p in 0..=3 {
            for q in 0..=3 {
                assert!(obstruction_o1(&torus, &psi, p, q).unwrap().matrix.is_zero());
            }
        }
    }
    assert!(!frolicher_d1(&ScalarSpec::iwasawa(), 1, 0).unwrap().is_zero());
}

/// `o1` only depends on the class: adding `dbar beta` leaves the projection fixed.
#[test]
fn o1_is_well_defined_on_classes() {
    let spec = ScalarSpec::iwasawa();
    let (_, psi) = iwasawa_psi1();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = 0;
    while cases < 120 {
        let p = rng.gen_range(0..=3);
        let q = rng.gen_range(1..=2);
        let source = DolbeaultCohomology::new(&spec, p, q).unwrap();
        if source.is_empty() {
            continue;
        }
        let target = DolbeaultCohomology::new(&spec, p, q + 1).unwrap();
        let coords: Vec<GaussianRational> = (0..source.len()).map(|_| small_gaussian(&mut rng)).collect();
        let alpha = source.lift(&coords);
        let beta = ScalarForm::from_coordinates(3, &form_basis(3, p, q - 1), &(0..form_basis(3, p, q - 1).len()).map(|_| small_gaussian(&mut rng)).collect::<Vec<_>>());
        let shifted = alpha.add(&spec.delbar(&beta));
        let o = |a: &ScalarForm| target.project_poly(&o1_form(&spec, &psi, &InvariantForm::<Poly>::from_scalar_form(a)).unwrap()).unwrap();
        assert_eq!(o(&alpha), o(&shifted), "bidegree ({p},{q})");
        cases += 1;
    }
}

#[test]
fn extension_order_one_matches_o1_for_every_class() {
    let spec = ScalarSpec::iwasawa();
    let (_, psi) = iwasawa_psi1();
    let f = family(2);
    for p in 0..=3 {
        for q in 0..3 {
            let report = obstruction_o1(&spec, &psi, p, q).unwrap();
            for (k, rep) in report.source.representatives().iter().enumerate() {
                match extend_class(&f, rep, 1).unwrap() {
                    Extension::Obstructed { order, class, .. } => {
                        assert_eq!(order, 1);
                        assert_eq!(class, report.matrix.column(k), "({p},{q}) {rep}");
                    }
                    Extension::Extended { .. } => assert!(report.matrix.column(k).iter().all(|c| c.is_zero()), "({p},{q}) {rep}"),
                }
            }
        }
    }
}

#[test]
fn holomorphic_two_form_extends_to_second_order() {
    let f = family(2);
    let a = ScalarForm::phi(3, 1).wedge(&ScalarForm::phi(3, 2));
    assert!(!extend_class(&f, &a, 2).unwrap().is_obstructed());
}
