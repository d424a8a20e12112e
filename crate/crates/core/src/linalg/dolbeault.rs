use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::cohomology::CohomologyBasis;
use super::matrix::{Matrix, ScalarMatrix};
use crate::coeff::{Coeff, GaussianRational, Poly};
use crate::error::Error;
use crate::exterior::{monomial, ComplexStructureSpec, InvariantForm, Mask, ScalarForm, ScalarSpec};

/// Canonical basis of `Lambda^{p,q}`, empty when out of range.
pub fn form_basis(n: usize, p: usize, q: usize) -> Vec<Mask> {
    if p > n || q > n {
        return Vec::new();
    }
    monomial::basis(n, p, q)
}

fn operator_matrix<R: Coeff>(
    spec: &ComplexStructureSpec<R>,
    source: &[Mask],
    target: &[Mask],
    op: impl Fn(&InvariantForm<R>) -> InvariantForm<R>,
) -> Result<Matrix<R>, Error> {
    let n = spec.dim();
    let mut m = Matrix::zeros(target.len(), source.len());
    for (j, mask) in source.iter().enumerate() {
        let image = op(&InvariantForm::monomial(n, *mask, R::one()));
        for (i, c) in image.coordinates(target)?.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Matrix of `dbar: Lambda^{p,q} -> Lambda^{p,q+1}` in the canonical bases.
pub fn delbar_matrix<R: Coeff>(spec: &ComplexStructureSpec<R>, p: usize, q: usize) -> Result<Matrix<R>, Error> {
    let n = spec.dim();
    operator_matrix(spec, &form_basis(n, p, q), &form_basis(n, p, q + 1), |f| spec.delbar(f))
}

/// Matrix of `del: Lambda^{p,q} -> Lambda^{p+1,q}` in the canonical bases.
pub fn del_matrix<R: Coeff>(spec: &ComplexStructureSpec<R>, p: usize, q: usize) -> Result<Matrix<R>, Error> {
    let n = spec.dim();
    operator_matrix(spec, &form_basis(n, p, q), &form_basis(n, p + 1, q), |f| spec.del(f))
}

/// `H^{p,q}` of the invariant Dolbeault complex, with form representatives.
#[derive(Clone, Debug)]
pub struct DolbeaultCohomology {
    n: usize,
    p: usize,
    q: usize,
    basis: Vec<Mask>,
    cohomology: CohomologyBasis,
}

impl DolbeaultCohomology {
    pub fn new(spec: &ScalarSpec, p: usize, q: usize) -> Result<Self, Error> {
        let n = spec.dim();
        if p > n || q > n {
            return Err(Error::Invalid(format!("bidegree ({p},{q}) out of range for dimension {n}")));
        }
        let basis = form_basis(n, p, q);
        let d_in = if q == 0 { ScalarMatrix::zeros(basis.len(), 0) } else { delbar_matrix(spec, p, q - 1)? };
        let d_out = delbar_matrix(spec, p, q)?;
        let cohomology = CohomologyBasis::new(&d_in, &d_out)?;
        Ok(DolbeaultCohomology { n, p, q, basis, cohomology })
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn len(&self) -> usize {
        self.cohomology.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cohomology.is_empty()
    }

    pub fn basis(&self) -> &[Mask] {
        &self.basis
    }

    pub fn cohomology(&self) -> &CohomologyBasis {
        &self.cohomology
    }

    pub fn representatives(&self) -> Vec<ScalarForm> {
        self.cohomology
            .representatives()
            .iter()
            .map(|v| ScalarForm::from_coordinates(self.n, &self.basis, v))
            .collect()
    }

    pub fn representative(&self, k: usize) -> ScalarForm {
        ScalarForm::from_coordinates(self.n, &self.basis, &self.cohomology.representatives()[k])
    }

    fn coords(&self, form: &ScalarForm) -> Result<Vec<GaussianRational>, Error> {
        if form.dim() != self.n {
            return Err(Error::SpecMismatch(format!("form on dimension {} for cohomology of dimension {}", form.dim(), self.n)));
        }
        form.coordinates(&self.basis).map_err(|_| {
            Error::Invalid(format!("form {form} is not of bidegree ({},{})", self.p, self.q))
        })
    }

    /// Coordinates of the class of a `dbar`-closed `(p,q)`-form.
    pub fn project(&self, form: &ScalarForm) -> Result<Vec<GaussianRational>, Error> {
        self.cohomology.project(&self.coords(form)?)
    }

    /// Coordinates of a form with polynomial coefficients, projected one
    /// parameter monomial at a time.
    pub fn project_poly(&self, form: &InvariantForm<Poly>) -> Result<Vec<Poly>, Error> {
        let params = form.terms().map(|(_, c)| c.params().clone()).find(|p| !p.is_empty());
        let mut out = vec![Poly::zero(); self.len()];
        for (exp, scalar) in form.by_monomial() {
            let coords = self.project(&scalar)?;
            for (o, c) in out.iter_mut().zip(coords) {
                if !c.is_zero() {
                    let params = params.as_ref().expect("nonconstant term implies parameters");
                    *o = o.add_ref(&Poly::monomial(params, exp.clone(), c));
                }
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self, form: &ScalarForm) -> Result<bool, Error> {
        self.cohomology.is_closed(&self.coords(form)?)
    }

    pub fn is_exact(&self, form: &ScalarForm) -> Result<bool, Error> {
        self.cohomology.is_exact(&self.coords(form)?)
    }

    pub fn lift(&self, coords: &[GaussianRational]) -> ScalarForm {
        ScalarForm::from_coordinates(self.n, &self.basis, &self.cohomology.lift(coords))
    }
}

/// All Dolbeault cohomology groups of a structure.
pub fn dolbeault_groups(spec: &ScalarSpec) -> Result<BTreeMap<(usize, usize), DolbeaultCohomology>, Error> {
    let n = spec.dim();
    let mut out = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            out.insert((p, q), DolbeaultCohomology::new(spec, p, q)?);
        }
    }
    Ok(out)
}

/// Hodge numbers `h^{p,q}` for `0 <= p, q <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    n: usize,
    numbers: BTreeMap<(usize, usize), usize>,
}

impl HodgeTable {
    pub fn compute(spec: &ScalarSpec) -> Result<Self, Error> {
        let groups = dolbeault_groups(spec)?;
        Ok(HodgeTable { n: spec.dim(), numbers: groups.into_iter().map(|(k, g)| (k, g.len())).collect() })
    }

    pub fn from_numbers(n: usize, numbers: BTreeMap<(usize, usize), usize>) -> Self {
        HodgeTable { n, numbers }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.numbers.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn numbers(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.numbers
    }

    /// The bidegrees of total degree `1..=n`, by degree and then decreasing `p`:
    /// `(1,0), (0,1), (2,0), (1,1), (0,2), ...`.
    pub fn standard_bidegrees(n: usize) -> Vec<(usize, usize)> {
        (1..=n).flat_map(|k| (0..=k).rev().map(move |p| (p, k - p))).collect()
    }

    /// Hodge numbers in [`HodgeTable::standard_bidegrees`] order.
    pub fn standard_row(&self) -> Vec<usize> {
        HodgeTable::standard_bidegrees(self.n).into_iter().map(|(p, q)| self.get(p, q)).collect()
    }
}

impl fmt::Display for HodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = HodgeTable::standard_bidegrees(self.n)
            .into_iter()
            .map(|(p, q)| format!("h{p}{q}={}", self.get(p, q)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
