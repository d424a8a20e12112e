use std::fmt;

use num_traits::Zero;

use super::complex::FreeComplex;
use crate::coeff::{GaussianRational, Poly};
use crate::error::Error;
use crate::linalg::{fraction_free_echelon, generic_rank, CohomologyBasis, PolyMatrix, ScalarMatrix, Vector};

/// A subspace of `H^q(E_0)`, as a reduced basis in class coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSubspace {
    pub q: usize,
    pub ambient: usize,
    pub basis: Vec<Vector>,
}

impl ClassSubspace {
    fn spanned_by(q: usize, ambient: usize, vectors: &[Vector]) -> Self {
        ClassSubspace { q, ambient, basis: reduced_span(ambient, vectors) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard coordinate vectors completing this subspace to the whole space.
    pub fn complement(&self) -> Vec<Vector> {
        let mut basis = self.basis.clone();
        let mut out = Vec::new();
        for k in 0..self.ambient {
            let mut e = vec![GaussianRational::zero(); self.ambient];
            e[k] = GaussianRational::from_integer(1);
            basis.push(e.clone());
            if reduced_span(self.ambient, &basis).len() == basis.len() {
                out.push(e);
            } else {
                basis.pop();
            }
        }
        out
    }
}

/// Nonzero rows of the reduced row echelon form of the given vectors.
fn reduced_span(ambient: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() || ambient == 0 {
        return Vec::new();
    }
    let m = ScalarMatrix::from_rows(vectors.to_vec()).expect("vectors share a length");
    let r = m.rref();
    (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect()
}

fn classes(h: &CohomologyBasis, vectors: impl IntoIterator<Item = Vector>) -> Result<Vec<Vector>, Error> {
    vectors.into_iter().map(|v| h.project(&v)).collect()
}

/// Classes of `H^q(E_0)` that extend to order `order` and the complement of
/// that subspace, the first-class obstructed part.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstClass {
    pub order: u32,
    pub extendable: ClassSubspace,
    /// Basis classes of a complement to `extendable`.
    pub obstructed: Vec<Vector>,
}

/// First-class obstructed classes of `H^q(E_0)`: a cocycle at `t = 0` extends
/// to order `order` exactly when it is the constant block of a solution of the
/// truncated system, with every higher coefficient free.
pub fn classify_first_class(c: &FreeComplex, q: usize, order: u32) -> Result<FirstClass, Error> {
    let h = c.cohomology_at_zero(q)?;
    let p = c.rank(q);
    let kernel = c.toeplitz(Some(q), order).kernel_basis();
    let constant_blocks = kernel.into_iter().map(|v| v[..p].to_vec());
    let extendable = ClassSubspace::spanned_by(q, h.len(), &classes(&h, constant_blocks)?);
    let obstructed = extendable.complement();
    Ok(FirstClass { order, extendable, obstructed })
}

/// Second-class obstructed classes computed two independent ways.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondClass {
    /// Limit at `t = 0` of the saturated image of `d^{q-1}` over the fraction field.
    pub saturation: ClassSubspace,
    /// `t^n` coefficients of `d^{q-1}(alpha)` for jets with lower coefficients zero,
    /// up to `order`.
    pub jet_search: ClassSubspace,
    pub order: u32,
}

impl SecondClass {
    pub fn agree(&self) -> bool {
        self.saturation == self.jet_search
    }

    pub fn dim(&self) -> usize {
        self.saturation.dim()
    }
}

/// Columns spanning the image of `m` over the fraction field, made saturated:
/// their values at `t = 0` are independent.
pub fn saturated_image(m: &PolyMatrix) -> Result<PolyMatrix, Error> {
    let ech = fraction_free_echelon(m)?;
    let columns: Vec<Vec<Poly>> = ech.pivots.iter().map(|&j| m.column(j)).collect();
    let mut b = PolyMatrix::from_columns(m.rows(), &columns)?;
    let r = columns.len();
    loop {
        let at_zero = b.map(|x| x.univariate_coeff(0));
        if at_zero.rank() == r {
            return Ok(b);
        }
        let relation = at_zero.kernel_basis().swap_remove(0);
        let j = relation.iter().rposition(|x| !x.is_zero()).expect("kernel vectors are nonzero");
        let params = b.get(0, 0).params().clone();
        let coeffs: Vec<Poly> = relation.iter().map(|x| Poly::constant_in(&params, x.clone())).collect();
        let combo = b.mul_vec(&coeffs)?;
        for (i, e) in combo.iter().enumerate() {
            let shifted = e
                .univariate_shift_down(1)
                .ok_or_else(|| Error::Internal("relation at t = 0 left a constant term".to_string()))?;
            b.set(i, j, shifted);
        }
    }
}

/// Second-class obstructed classes of `H^q(E_0)`: nontrivial at `t = 0` but
/// limits of cocycles exact for `t != 0`. Method (a) saturates the generic
/// image of `d^{q-1}`; method (b) collects obstructions `o_n` of jets in degree
/// `q - 1` up to `order`.
pub fn classify_second_class(c: &FreeComplex, q: usize, order: u32) -> Result<SecondClass, Error> {
    if q == 0 {
        return Err(Error::Invalid("second-class obstructions need q >= 1".to_string()));
    }
    let h = c.cohomology_at_zero(q)?;
    let d_in = c.d(Some(q - 1));
    let sat = saturated_image(&d_in)?;
    let limits = (0..sat.cols()).map(|j| sat.column(j).iter().map(|x| x.univariate_coeff(0)).collect());
    let saturation = ClassSubspace::spanned_by(q, h.len(), &classes(&h, limits)?);

    let p = c.rank(q);
    let t = c.toeplitz(Some(q - 1), order);
    let top = p * order as usize;
    let lower = t.submatrix(0..top, 0..t.cols());
    let last = t.submatrix(top..t.rows(), 0..t.cols());
    let kernel = if top == 0 { ScalarMatrix::identity(t.cols()).rref_column_space() } else { lower.kernel_basis() };
    let tops = kernel.iter().map(|v| last.mul_vec(v)).collect::<Result<Vec<_>, _>>()?;
    let jet_search = ClassSubspace::spanned_by(q, h.len(), &classes(&h, tops)?);
    Ok(SecondClass { saturation, jet_search, order })
}

/// Decomposition of the drop `h^q(0) - h^q(generic)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpAccounting {
    pub q: usize,
    pub h0: usize,
    pub h_generic: usize,
    /// `rank_generic d^q - rank_0 d^q`.
    pub kernel_drop: usize,
    /// `rank_generic d^{q-1} - rank_0 d^{q-1}`.
    pub image_rise: usize,
    pub first_class: usize,
    pub second_class: usize,
    pub second_class_jets: usize,
    pub order: u32,
}

impl JumpAccounting {
    pub fn consistent(&self) -> bool {
        self.h0 == self.h_generic + self.kernel_drop + self.image_rise
            && self.first_class == self.kernel_drop
            && self.second_class == self.image_rise
            && self.second_class_jets == self.second_class
    }
}

impl fmt::Display for JumpAccounting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H^{}: h0={} generic={} kernel-drop={} image-rise={} first-class={} second-class={} (jets {}) order={} {}",
            self.q,
            self.h0,
            self.h_generic,
            self.kernel_drop,
            self.image_rise,
            self.first_class,
            self.second_class,
            self.second_class_jets,
            self.order,
            if self.consistent() { "ok" } else { "MISMATCH" }
        )
    }
}

pub fn jump_accounting(c: &FreeComplex, q: usize) -> Result<JumpAccounting, Error> {
    let order = c.order_bound();
    let rank_pair = |m: Option<usize>| -> Result<(usize, usize), Error> { Ok((generic_rank(&c.d(m))?, c.at_zero(m).rank())) };
    let (out_g, out_0) = rank_pair(Some(q))?;
    let (in_g, in_0) = rank_pair(q.checked_sub(1))?;
    let first = classify_first_class(c, q, order)?;
    let (second, jets) = if q == 0 {
        (0, 0)
    } else {
        let s = classify_second_class(c, q, order)?;
        (s.saturation.dim(), s.jet_search.dim())
    };
    Ok(JumpAccounting {
        q,
        h0: c.rank(q) - out_0 - in_0,
        h_generic: c.rank(q) - out_g - in_g,
        kernel_drop: out_g - out_0,
        image_rise: in_g - in_0,
        first_class: first.obstructed.len(),
        second_class: second,
        second_class_jets: jets,
        order,
    })
}
