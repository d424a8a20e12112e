use num_traits::Zero;

use crate::coeff::{GaussianRational, Point, Poly};
use crate::error::Error;
use crate::exterior::{ComplexStructureSpec, InvariantForm, ScalarForm, ScalarSpec, VectorForm};
use crate::linalg::{fraction_free_echelon, generic_kernel_basis, generic_rank, DolbeaultCohomology, PolyMatrix, ScalarMatrix};

/// `del(iota_psi alpha) + iota_psi(del alpha)`: the cochain-level first-order
/// obstruction of `alpha` along `psi`.
pub fn o1_form(spec: &ScalarSpec, psi1: &VectorForm<Poly>, alpha: &InvariantForm<Poly>) -> Result<InvariantForm<Poly>, Error> {
    let lifted = ComplexStructureSpec::<Poly>::lift(spec);
    let first = lifted.del(&psi1.try_contract(alpha)?);
    let second = psi1.contract(&lifted.del(alpha));
    Ok(first.add(&second))
}

/// Matrix of the first-order obstruction map `H^{p,q} -> H^{p,q+1}`.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub bidegree: (usize, usize),
    pub source: DolbeaultCohomology,
    pub target: Option<DolbeaultCohomology>,
    /// Column `k` holds the coordinates of `o1` of the `k`-th source class.
    pub matrix: PolyMatrix,
    /// Cochain-level images of the source representatives.
    pub images: Vec<InvariantForm<Poly>>,
}

impl ObstructionReport {
    pub fn generic_rank(&self) -> Result<usize, Error> {
        generic_rank(&self.matrix)
    }

    pub fn rank_at(&self, point: &Point) -> Result<usize, Error> {
        Ok(self.matrix.eval(point)?.rank())
    }

    /// Kernel over the fraction field: classes unobstructed at first order
    /// for generic parameters.
    pub fn generic_kernel(&self) -> Result<Vec<Vec<Poly>>, Error> {
        generic_kernel_basis(&self.matrix)
    }

    /// Kernel at a point, in source-class coordinates.
    pub fn kernel_at(&self, point: &Point) -> Result<Vec<Vec<GaussianRational>>, Error> {
        Ok(self.matrix.eval(point)?.kernel_basis())
    }

    /// Image at a point, in target-class coordinates.
    pub fn image_at(&self, point: &Point) -> Result<Vec<Vec<GaussianRational>>, Error> {
        Ok(self.matrix.eval(point)?.rref_column_space())
    }

    /// `o1` applied to a class given by source coordinates.
    pub fn apply(&self, coords: &[Poly]) -> Result<Vec<Poly>, Error> {
        self.matrix.mul_vec(coords)
    }
}

/// The first-order obstruction map `o1: H^{p,q} -> H^{p,q+1}` induced by
/// `alpha -> del(iota_psi alpha) + iota_psi(del alpha)`.
pub fn obstruction_o1(spec: &ScalarSpec, psi1: &VectorForm<Poly>, p: usize, q: usize) -> Result<ObstructionReport, Error> {
    let n = spec.dim();
    let source = DolbeaultCohomology::new(spec, p, q)?;
    let target = if q < n { Some(DolbeaultCohomology::new(spec, p, q + 1)?) } else { None };
    let rows = target.as_ref().map_or(0, |t| t.len());
    let mut matrix = PolyMatrix::zeros(rows, source.len());
    let mut images = Vec::with_capacity(source.len());
    for (k, rep) in source.representatives().iter().enumerate() {
        let image = o1_form(spec, psi1, &InvariantForm::<Poly>::from_scalar_form(rep))?;
        if let Some(t) = &target {
            for (_, scalar) in image.by_monomial() {
                if !t.is_closed(&scalar)? {
                    return Err(Error::Internal(format!("first-order obstruction of {rep} is not dbar-closed")));
                }
            }
            for (i, c) in t.project_poly(&image)?.into_iter().enumerate() {
                matrix.set(i, k, c);
            }
        }
        images.push(image);
    }
    Ok(ObstructionReport { bidegree: (p, q), source, target, matrix, images })
}

/// Image of `o1: H^{p,q-1} -> H^{p,q}`, the first-order second-class
/// obstructed subspace of `H^{p,q}`.
#[derive(Clone, Debug)]
pub struct SecondClassSubspace {
    pub report: ObstructionReport,
}

impl SecondClassSubspace {
    /// Spanning vectors over the fraction field (pivot columns of the map).
    pub fn generic_basis(&self) -> Result<Vec<Vec<Poly>>, Error> {
        let ech = fraction_free_echelon(&self.report.matrix)?;
        Ok(ech.pivots.iter().map(|&j| self.report.matrix.column(j)).collect())
    }

    pub fn generic_dim(&self) -> Result<usize, Error> {
        self.report.generic_rank()
    }

    pub fn basis_at(&self, point: &Point) -> Result<Vec<Vec<GaussianRational>>, Error> {
        self.report.image_at(point)
    }

    pub fn dim_at(&self, point: &Point) -> Result<usize, Error> {
        self.report.rank_at(point)
    }
}

pub fn second_class_subspace(spec: &ScalarSpec, psi1: &VectorForm<Poly>, p: usize, q: usize) -> Result<SecondClassSubspace, Error> {
    if q == 0 {
        return Err(Error::Invalid("second-class obstructions need q >= 1".to_string()));
    }
    Ok(SecondClassSubspace { report: obstruction_o1(spec, psi1, p, q - 1)? })
}

/// `d1` of the Frolicher spectral sequence: `H^{p,q} -> H^{p+1,q}` induced by `del`.
pub fn frolicher_d1(spec: &ScalarSpec, p: usize, q: usize) -> Result<ScalarMatrix, Error> {
    let n = spec.dim();
    let source = DolbeaultCohomology::new(spec, p, q)?;
    if p == n {
        return Ok(ScalarMatrix::zeros(0, source.len()));
    }
    let target = DolbeaultCohomology::new(spec, p + 1, q)?;
    let mut m = ScalarMatrix::zeros(target.len(), source.len());
    for (k, rep) in source.representatives().iter().enumerate() {
        for (i, c) in target.project(&spec.del(rep))?.into_iter().enumerate() {
            m.set(i, k, c);
        }
    }
    Ok(m)
}

/// A first-order deformation `theta_k (x) phibar_j` along which the class of
/// `phi_i` is obstructed.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// 1-based indices.
    pub k: usize,
    pub j: usize,
    pub i: usize,
    /// `o1(phi_i)`, a `(1,1)`-form that is not `dbar`-exact.
    pub obstruction: ScalarForm,
}

/// For a complex parallelisable structure, find `theta_k (x) phibar_j` with
/// `dbar phibar_j = 0` and `o1(phi_i)` nonzero in `H^{1,1}`. Returns `None`
/// when `del` vanishes on every generator; failing to find a witness
/// otherwise is an error.
pub fn parallelisable_witness(spec: &ScalarSpec) -> Result<Option<Witness>, Error> {
    if !spec.is_parallelisable() {
        return Err(Error::Invalid("structure is not complex parallelisable".to_string()));
    }
    let n = spec.dim();
    let h11 = DolbeaultCohomology::new(spec, 1, 1)?;
    let mut any_del = false;
    for i in 1..=n {
        let phi_i = ScalarForm::phi(n, i);
        let del_i = spec.del(&phi_i);
        if del_i.is_zero() {
            continue;
        }
        any_del = true;
        for k in 1..=n {
            for j in 1..=n {
                if !spec.delbar(&ScalarForm::phibar(n, j)).is_zero() {
                    continue;
                }
                let psi = VectorForm::term(n, k, &[j], GaussianRational::from_integer(1))?;
                let value = spec.del(&psi.contract(&phi_i)).add(&psi.contract(&del_i));
                if h11.project(&value)?.iter().any(|c| !c.is_zero()) {
                    return Ok(Some(Witness { k, j, i, obstruction: value }));
                }
            }
        }
    }
    if any_del {
        return Err(Error::Invalid("no closed direction obstructs a generator with nonzero del".to_string()));
    }
    Ok(None)
}
