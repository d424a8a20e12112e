use std::fmt;

use num_traits::Zero;

use crate::coeff::{GaussianRational, Params, Point, Poly};
use crate::error::Error;
use crate::linalg::{generic_rank, CohomologyBasis, PolyMatrix, ScalarMatrix};

/// A finite complex `0 -> O^{P_0} -> ... -> O^{P_N} -> 0` of free modules over
/// the polynomial ring in one parameter. `d[q]` is `P_{q+1} x P_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    param: String,
    ranks: Vec<usize>,
    d: Vec<PolyMatrix>,
}

/// First nonzero entry of a composition `d^{q+1} d^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionDefect {
    pub q: usize,
    pub row: usize,
    pub col: usize,
    pub value: Poly,
}

impl fmt::Display for CompositionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^{} * d^{} has entry ({}, {}) = {}", self.q + 1, self.q, self.row, self.col, self.value)
    }
}

impl FreeComplex {
    /// Build a complex; shapes are checked here, composition in [`FreeComplex::validate`].
    pub fn new(param: impl Into<String>, ranks: Vec<usize>, d: Vec<PolyMatrix>) -> Result<Self, Error> {
        let param = param.into();
        if ranks.is_empty() {
            return Err(Error::Invalid("a complex needs at least one term".to_string()));
        }
        if d.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!("{} ranks need {} differentials, got {}", ranks.len(), ranks.len() - 1, d.len())));
        }
        let params = Params::new([param.as_str()]);
        let mut lifted = Vec::with_capacity(d.len());
        for (q, m) in d.into_iter().enumerate() {
            if m.rows() != ranks[q + 1] || m.cols() != ranks[q] {
                return Err(Error::DimensionMismatch(format!(
                    "d^{q} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    ranks[q + 1],
                    ranks[q]
                )));
            }
            lifted.push(m.try_map(|x| x.lift_to(&params))?);
        }
        Ok(FreeComplex { param, ranks, d: lifted })
    }

    pub fn param(&self) -> &str {
        &self.param
    }

    pub fn params(&self) -> Params {
        Params::new([self.param.as_str()])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.d
    }

    /// `d^q`, with zero maps outside the stored range (`q` may be -1 via `None`).
    pub fn d(&self, q: Option<usize>) -> PolyMatrix {
        match q {
            Some(q) if q < self.d.len() => self.d[q].clone(),
            Some(q) => PolyMatrix::zeros(self.rank(q + 1), self.rank(q)),
            None => PolyMatrix::zeros(self.rank(0), 0),
        }
    }

    /// `d^{q-1}`, the map into degree `q`.
    pub fn d_into(&self, q: usize) -> PolyMatrix {
        self.d(q.checked_sub(1))
    }

    /// Largest degree in `t` among all entries.
    pub fn max_degree(&self) -> u32 {
        self.d
            .iter()
            .flat_map(|m| (0..m.rows()).flat_map(move |i| (0..m.cols()).map(move |j| m.get(i, j).total_degree().unwrap_or(0))))
            .max()
            .unwrap_or(0)
    }

    /// Order bound for the classification searches: `max degree * total rank + 1`.
    pub fn order_bound(&self) -> u32 {
        self.max_degree() * self.ranks.iter().sum::<usize>() as u32 + 1
    }

    /// First nonzero entry of some `d^{q+1} d^q`, if any.
    pub fn validate(&self) -> Option<CompositionDefect> {
        for q in 0..self.d.len().saturating_sub(1) {
            let prod = self.d[q + 1].try_mul(&self.d[q]).expect("shapes checked on construction");
            for row in 0..prod.rows() {
                for col in 0..prod.cols() {
                    if !prod.get(row, col).is_zero() {
                        return Some(CompositionDefect { q, row, col, value: prod.get(row, col).clone() });
                    }
                }
            }
        }
        None
    }

    /// Coefficient matrix of `t^k` in `d^q`.
    pub fn coefficient(&self, q: Option<usize>, k: u32) -> ScalarMatrix {
        self.d(q).map(|x| x.univariate_coeff(k))
    }

    /// `d^q` at `t = 0`.
    pub fn at_zero(&self, q: Option<usize>) -> ScalarMatrix {
        self.coefficient(q, 0)
    }

    fn point(&self, value: GaussianRational) -> Point {
        let mut p = Point::default();
        p.set(&self.param, value);
        p
    }

    /// `d^q` at `t = value`.
    pub fn at(&self, q: Option<usize>, value: &GaussianRational) -> Result<ScalarMatrix, Error> {
        self.d(q).eval(&self.point(value.clone()))
    }

    /// `H^q(E_0)`: cohomology of the complex at `t = 0`.
    pub fn cohomology_at_zero(&self, q: usize) -> Result<CohomologyBasis, Error> {
        CohomologyBasis::new(&self.at_zero(q.checked_sub(1)), &self.at_zero(Some(q)))
    }

    /// Block lower-triangular matrix of `d^q` acting on coefficient vectors
    /// `(x_0, ..., x_order)` modulo `t^{order+1}`.
    pub fn toeplitz(&self, q: Option<usize>, order: u32) -> ScalarMatrix {
        let coeffs: Vec<ScalarMatrix> = (0..=order).map(|k| self.coefficient(q, k)).collect();
        let (r, c) = (coeffs[0].rows(), coeffs[0].cols());
        let blocks = order as usize + 1;
        let mut m = ScalarMatrix::zeros(r * blocks, c * blocks);
        for bi in 0..blocks {
            for bj in 0..=bi {
                let dk = &coeffs[bi - bj];
                for i in 0..r {
                    for j in 0..c {
                        let v = dk.get(i, j);
                        if !v.is_zero() {
                            m.set(bi * r + i, bj * c + j, v.clone());
                        }
                    }
                }
            }
        }
        m
    }
}

/// Dimensions of `H^q` at `t = 0` and for generic `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HDims {
    pub at_zero: usize,
    pub generic: usize,
}

pub fn h_dims(c: &FreeComplex) -> Result<Vec<HDims>, Error> {
    let mut out = Vec::with_capacity(c.len());
    for q in 0..c.len() {
        let out_0 = c.at_zero(Some(q)).rank();
        let in_0 = c.at_zero(q.checked_sub(1)).rank();
        let out_g = generic_rank(&c.d(Some(q)))?;
        let in_g = generic_rank(&c.d_into(q))?;
        out.push(HDims { at_zero: c.rank(q) - out_0 - in_0, generic: c.rank(q) - out_g - in_g });
    }
    Ok(out)
}
