use num_traits::Zero;

use super::matrix::ScalarMatrix;
use crate::coeff::GaussianRational;
use crate::error::Error;

pub type Vector = Vec<GaussianRational>;

/// Basis of `ker(d_out) / im(d_in)` on a cochain space of dimension `dim`.
///
/// Representatives are kernel vectors (one per free column of `d_out`, in
/// increasing column order) kept greedily when independent modulo the image,
/// so the choice is deterministic.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    dim: usize,
    image: Vec<Vector>,
    representatives: Vec<Vector>,
    kernel_dim: usize,
    // [image | representatives], used for projection
    frame: ScalarMatrix,
    d_out: ScalarMatrix,
}

impl CohomologyBasis {
    /// Cohomology at the middle of `A --d_in--> C --d_out--> B`, where `C` has
    /// dimension `d_in.rows() == d_out.cols()`.
    pub fn new(d_in: &ScalarMatrix, d_out: &ScalarMatrix) -> Result<Self, Error> {
        let dim = d_in.rows();
        if d_out.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "incoming map lands in dimension {dim}, outgoing map starts from {}",
                d_out.cols()
            )));
        }
        let comp = d_out.try_mul(d_in)?;
        if let Some(col) = (0..comp.cols()).find(|&j| (0..comp.rows()).any(|i| !comp.get(i, j).is_zero())) {
            return Err(Error::NonzeroComposition(format!("d_out * d_in is nonzero on column {col}")));
        }
        let image: Vec<Vector> = d_in.rref_column_space();
        let kernel = d_out.kernel_basis();
        let kernel_dim = kernel.len();
        let mut frame_cols = image.clone();
        let mut representatives = Vec::new();
        for v in kernel {
            let mut trial = frame_cols.clone();
            trial.push(v.clone());
            let m = ScalarMatrix::from_columns(dim, &trial)?;
            if m.rank() == trial.len() {
                frame_cols = trial;
                representatives.push(v);
            }
        }
        let frame = ScalarMatrix::from_columns(dim, &frame_cols)?;
        Ok(CohomologyBasis { dim, image, representatives, kernel_dim, frame, d_out: d_out.clone() })
    }

    /// Dimension of the cohomology group.
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Dimension of the ambient cochain space.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn image_rank(&self) -> usize {
        self.image.len()
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    /// Basis of the image of the incoming map.
    pub fn image(&self) -> &[Vector] {
        &self.image
    }

    pub fn is_closed(&self, v: &[GaussianRational]) -> Result<bool, Error> {
        Ok(self.d_out.mul_vec(v)?.iter().all(|x| x.is_zero()))
    }

    /// Coordinates of the class of a closed vector in the representative basis.
    pub fn project(&self, v: &[GaussianRational]) -> Result<Vector, Error> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("vector of length {} in a space of dimension {}", v.len(), self.dim)));
        }
        if !self.is_closed(v)? {
            return Err(Error::Invalid("projecting a vector that is not closed".to_string()));
        }
        if self.frame.cols() == 0 {
            return Ok(Vec::new());
        }
        let x = self
            .frame
            .solve(v)?
            .ok_or_else(|| Error::Internal("closed vector outside image plus representatives".to_string()))?;
        Ok(x[self.image.len()..].to_vec())
    }

    /// Whether a closed vector is exact.
    pub fn is_exact(&self, v: &[GaussianRational]) -> Result<bool, Error> {
        Ok(self.project(v)?.iter().all(|x| x.is_zero()))
    }

    /// The closed vector `sum coords_k * rep_k`.
    pub fn lift(&self, coords: &[GaussianRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); self.dim];
        for (c, r) in coords.iter().zip(&self.representatives) {
            for (o, x) in out.iter_mut().zip(r) {
                *o = &*o + &(c * x);
            }
        }
        out
    }
}

impl ScalarMatrix {
    /// Basis of the column space: the pivot columns of the matrix itself.
    pub fn rref_column_space(&self) -> Vec<Vector> {
        self.rref().pivots.into_iter().map(|j| self.column(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn rank_nullity() {
        // C = Q^3, d_in hits e1, d_out kills e1, e2
        let d_in = ScalarMatrix::from_rows(vec![vec![g(1)], vec![g(0)], vec![g(0)]]).unwrap();
        let d_out = ScalarMatrix::from_rows(vec![vec![g(0), g(0), g(1)]]).unwrap();
        let h = CohomologyBasis::new(&d_in, &d_out).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.representatives()[0], vec![g(0), g(1), g(0)]);
        assert_eq!(h.project(&[g(5), g(2), g(0)]).unwrap(), vec![g(2)]);
    }

    #[test]
    fn nonzero_composition_is_reported() {
        let d_in = ScalarMatrix::from_rows(vec![vec![g(1)], vec![g(0)]]).unwrap();
        let d_out = ScalarMatrix::from_rows(vec![vec![g(1), g(0)]]).unwrap();
        assert!(matches!(CohomologyBasis::new(&d_in, &d_out), Err(Error::NonzeroComposition(_))));
    }
}
