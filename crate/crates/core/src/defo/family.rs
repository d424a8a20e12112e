use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::{Coeff, GaussianRational, Jet, Params, Point, Poly};
use crate::error::Error;
use crate::exterior::{deformed_coframe, monomial, ComplexStructureSpec, DeformedStructure, Diagnostic, InvariantForm, ScalarForm, ScalarSpec, Severity, VectorForm};
use crate::linalg::{form_basis, ScalarMatrix};

/// `dbar` of a `T^{1,0}`-valued `(0,1)`-form, as a vector of `(0,2)`-forms:
/// `(dbar psi)^i = dbar(psi^i) + iota_psi(dbar phi_i)`.
///
/// This is the linear part of the integrability defect of the deformed coframe.
pub fn vector_delbar<R: Coeff>(spec: &ComplexStructureSpec<R>, psi: &VectorForm<R>) -> Result<Vec<InvariantForm<R>>, Error> {
    let n = spec.dim();
    if psi.dim() != n || psi.q() != 1 {
        return Err(Error::SpecMismatch("expected a (0,1)-vector form on the structure's dimension".to_string()));
    }
    Ok((0..n)
        .map(|i| {
            let own = spec.delbar(&psi.component(i));
            let phi = InvariantForm::generator(n, i);
            own.add(&psi.contract(&spec.delbar(&phi)))
        })
        .collect())
}

/// Checks that a first-order deformation is `dbar`-closed and linear in the
/// parameters. Diagnostics name the failing component as `th<i>`.
pub fn validate_first_order(spec: &ScalarSpec, psi1: &VectorForm<Poly>) -> Result<Vec<Diagnostic>, Error> {
    let mut out = Vec::new();
    if psi1.q() != 1 {
        out.push(Diagnostic { severity: Severity::Error, generator: None, message: "deformation is not a (0,1)-form".to_string() });
        return Ok(out);
    }
    for ((i, j), c) in psi1.terms() {
        if !c.is_homogeneous(1) {
            out.push(Diagnostic {
                severity: Severity::Error,
                generator: Some(format!("th{}", i + 1)),
                message: format!("coefficient {c} of th{}*{} is not linear in the parameters", i + 1, monomial::render(*j, psi1.dim())),
            });
        }
    }
    let lifted = ComplexStructureSpec::<Poly>::lift(spec);
    for (i, f) in vector_delbar(&lifted, psi1)?.into_iter().enumerate() {
        if !f.is_zero() {
            out.push(Diagnostic {
                severity: Severity::Error,
                generator: Some(format!("th{}", i + 1)),
                message: format!("dbar of the component is {f}, not zero"),
            });
        }
    }
    Ok(out)
}

/// The `n`-th order Kodaira-Spencer class: the degree-`n` part of the family.
#[derive(Clone, Debug, PartialEq)]
pub struct KSClass {
    pub order: u32,
    pub value: VectorForm<Poly>,
}

/// A family of complex structures `psi(t)` through the central structure,
/// integrable modulo terms of degree above `order`.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    spec: ScalarSpec,
    params: Params,
    psi: VectorForm<Poly>,
    order: u32,
}

impl DeformationFamily {
    /// Wrap an explicit family, checking the vanishing constant term and the
    /// integrability defect modulo degree `order + 1`.
    pub fn new(spec: ScalarSpec, params: Params, psi: VectorForm<Poly>, order: u32) -> Result<Self, Error> {
        if psi.terms().any(|(_, c)| !c.constant_term().is_zero()) {
            return Err(Error::Invalid("the family must pass through the central structure (zero constant term)".to_string()));
        }
        let family = DeformationFamily { spec, params, psi, order };
        let defect = family.defect()?;
        if let Some((i, f)) = defect.iter().enumerate().find(|(_, f)| !f.is_zero()) {
            return Err(Error::NotIntegrable(format!("integrability defect of g{} modulo degree {}: {f}", i + 1, order + 1)));
        }
        Ok(family)
    }

    pub fn spec(&self) -> &ScalarSpec {
        &self.spec
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn psi(&self) -> &VectorForm<Poly> {
        &self.psi
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The family as a vector form with jet coefficients of the family's order.
    pub fn psi_jets(&self) -> VectorForm<Jet> {
        self.psi.map_coeffs(|c| Jet::new(c.clone(), self.order))
    }

    pub fn kodaira_spencer(&self, k: u32) -> KSClass {
        KSClass { order: k, value: self.psi.homogeneous_part(k) }
    }

    pub fn first_order(&self) -> VectorForm<Poly> {
        self.psi.homogeneous_part(1)
    }

    /// Deformed structure equations with polynomial coefficients (not truncated).
    pub fn deformed(&self) -> Result<DeformedStructure<Poly>, Error> {
        deformed_coframe(&ComplexStructureSpec::<Poly>::lift(&self.spec), &self.psi)
    }

    /// Integrability defect truncated at the family's order.
    pub fn defect(&self) -> Result<Vec<InvariantForm<Poly>>, Error> {
        let jets = self.psi_jets();
        let deformed = deformed_coframe(&ComplexStructureSpec::<Jet>::lift(&self.spec), &jets)?;
        Ok(deformed.defects().iter().map(|f| f.to_poly()).collect())
    }

    /// The family restricted to the line through `direction`, in one
    /// parameter `s`: every parameter `t` is replaced by `direction[t] * s`.
    pub fn restrict_to_line(&self, direction: &Point) -> Result<DeformationFamily, Error> {
        let line = Params::new(["s"]);
        let s = Poly::var(&line, "s")?;
        let images: Vec<Poly> = self
            .params
            .names()
            .iter()
            .map(|name| {
                let v = direction.get(name).ok_or_else(|| Error::MissingAssignment(name.clone()))?;
                Ok(s.scale(v))
            })
            .collect::<Result<_, Error>>()?;
        let psi = self.psi.try_map_coeffs(|c| c.lift_to(&self.params)?.substitute(&images))?;
        DeformationFamily::new(self.spec.clone(), line, psi, self.order)
    }
}

/// Outcome of order-by-order Maurer-Cartan extension.
#[derive(Clone, Debug)]
pub enum McOutcome {
    Family(DeformationFamily),
    /// The degree-`order` defect is not `dbar`-exact for the parameter
    /// monomial `monomial`; `defect[i]` is the failing part of `d(g_i)`.
    Obstructed { order: u32, monomial: String, defect: Vec<ScalarForm> },
}

/// Matrix of `psi -> dbar psi` from `(0,1)`-vector forms (coordinates
/// `(i, lambda)` in lexicographic order) to `n` stacked `(0,2)`-forms.
fn vector_delbar_matrix(spec: &ScalarSpec) -> Result<(ScalarMatrix, Vec<crate::exterior::Mask>), Error> {
    let n = spec.dim();
    let target = form_basis(n, 0, 2);
    let rows = n * target.len();
    let mut m = ScalarMatrix::zeros(rows, n * n);
    for i in 0..n {
        for l in 0..n {
            let psi = VectorForm::term(n, i + 1, &[l + 1], GaussianRational::from_integer(1))?;
            for (a, f) in vector_delbar(spec, &psi)?.into_iter().enumerate() {
                for (b, c) in f.coordinates(&target)?.into_iter().enumerate() {
                    m.set(a * target.len() + b, i * n + l, c);
                }
            }
        }
    }
    Ok((m, target))
}

/// Extend a first-order deformation to a family integrable modulo degree
/// `target + 1`, solving for one homogeneous correction per order.
///
/// Corrections are particular solutions of an exact linear system (free
/// coordinates set to zero), so the result is deterministic.
pub fn mc_extend(spec: &ScalarSpec, psi1: &VectorForm<Poly>, params: &Params, target: u32) -> Result<McOutcome, Error> {
    let diags = validate_first_order(spec, psi1)?;
    if let Some(d) = diags.first() {
        return Err(Error::Invalid(format!("first-order deformation rejected: {d}")));
    }
    let n = spec.dim();
    let lifted = ComplexStructureSpec::<Poly>::lift(spec);
    let (lin, target_basis) = vector_delbar_matrix(spec)?;
    let mut psi = psi1.clone();
    for k in 2..=target {
        let jets = psi.map_coeffs(|c| Jet::new(c.clone(), k));
        let defect = deformed_coframe(&ComplexStructureSpec::<Jet>::lift(spec), &jets)?;
        let mut by_monomial: BTreeMap<Vec<u32>, Vec<ScalarForm>> = BTreeMap::new();
        for (i, f) in defect.defects().iter().enumerate() {
            for (exp, scalar) in f.homogeneous_part(k).by_monomial() {
                by_monomial.entry(exp).or_insert_with(|| vec![ScalarForm::zero(n); n])[i] = scalar;
            }
        }
        for (exp, forms) in by_monomial {
            let mut rhs = Vec::with_capacity(lin.rows());
            for f in &forms {
                rhs.extend(f.neg().coordinates(&target_basis)?);
            }
            match lin.solve(&rhs)? {
                Some(x) => {
                    for i in 0..n {
                        for l in 0..n {
                            let c = &x[i * n + l];
                            if !c.is_zero() {
                                let coeff = Poly::monomial(params, exp.clone(), c.clone());
                                psi = psi.add(&VectorForm::term(n, i + 1, &[l + 1], coeff)?);
                            }
                        }
                    }
                }
                None => {
                    let monomial = Poly::monomial(params, exp, GaussianRational::from_integer(1)).to_string();
                    return Ok(McOutcome::Obstructed { order: k, monomial, defect: forms });
                }
            }
        }
        // lower-order parts never move, so only the new order needs re-checking
        let check = deformed_coframe(&lifted, &psi)?;
        for f in check.defects() {
            if !f.homogeneous_part(k).is_zero() {
                return Err(Error::Internal(format!("defect survives at order {k} after correction")));
            }
        }
    }
    Ok(McOutcome::Family(DeformationFamily::new(spec.clone(), params.clone(), psi, target.max(1))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse_poly;

    fn iwasawa_family_first_order() -> (Params, VectorForm<Poly>) {
        let names = ["t11", "t12", "t21", "t22", "t31", "t32"];
        let params = Params::new(names);
        let mut psi = VectorForm::zero(3, 1);
        for name in names {
            let i: usize = name[1..2].parse().unwrap();
            let l: usize = name[2..3].parse().unwrap();
            psi = psi.add(&VectorForm::term(3, i, &[l], Poly::var(&params, name).unwrap()).unwrap());
        }
        (params, psi)
    }

    #[test]
    fn iwasawa_first_order_is_closed() {
        let (_, psi) = iwasawa_family_first_order();
        assert!(validate_first_order(&ScalarSpec::iwasawa(), &psi).unwrap().is_empty());
    }

    #[test]
    fn theta1_phibar3_is_not_closed() {
        let params = Params::new(["t"]);
        let psi = VectorForm::term(3, 1, &[3], Poly::var(&params, "t").unwrap()).unwrap();
        let diags = validate_first_order(&ScalarSpec::iwasawa(), &psi).unwrap();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].generator.as_deref(), Some("th1"));
    }

    #[test]
    fn iwasawa_second_order_term() {
        let (params, psi1) = iwasawa_family_first_order();
        let McOutcome::Family(fam) = mc_extend(&ScalarSpec::iwasawa(), &psi1, &params, 2).unwrap() else {
            panic!("unexpected obstruction")
        };
        let det = parse_poly("t11*t22-t21*t12", params.names()).unwrap();
        let expect = VectorForm::term(3, 3, &[3], -det).unwrap();
        assert_eq!(fam.kodaira_spencer(2).value, expect);
    }

    #[test]
    fn iwasawa_third_order_term_vanishes() {
        let (params, psi1) = iwasawa_family_first_order();
        let McOutcome::Family(fam) = mc_extend(&ScalarSpec::iwasawa(), &psi1, &params, 3).unwrap() else {
            panic!("unexpected obstruction")
        };
        assert!(fam.kodaira_spencer(3).value.is_zero());
    }
}
