use std::fmt;

use num_traits::Zero;

use super::complex::FreeComplex;
use crate::coeff::{GaussianRational, Poly};
use crate::error::Error;
use crate::linalg::{CohomologyBasis, Vector};

/// A cochain of degree `q` with entries truncated at `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetCochain {
    pub q: usize,
    pub order: u32,
    entries: Vec<Poly>,
}

impl JetCochain {
    pub fn new(c: &FreeComplex, q: usize, entries: Vec<Poly>, order: u32) -> Result<Self, Error> {
        if entries.len() != c.rank(q) {
            return Err(Error::DimensionMismatch(format!("cochain of length {} in degree {q} of rank {}", entries.len(), c.rank(q))));
        }
        let params = c.params();
        let entries = entries.iter().map(|e| Ok(e.lift_to(&params)?.truncate(order))).collect::<Result<_, Error>>()?;
        Ok(JetCochain { q, order, entries })
    }

    /// The constant cochain `v`.
    pub fn constant(c: &FreeComplex, q: usize, v: &[GaussianRational]) -> Result<Self, Error> {
        let params = c.params();
        JetCochain::new(c, q, v.iter().map(|x| Poly::constant_in(&params, x.clone())).collect(), 0)
    }

    /// `sum_k t^k blocks[k]`, truncated at `order`.
    pub fn from_blocks(c: &FreeComplex, q: usize, blocks: &[Vector], order: u32) -> Result<Self, Error> {
        let params = c.params();
        let mut entries = vec![Poly::zero_in(&params); c.rank(q)];
        for (k, block) in blocks.iter().enumerate() {
            for (e, x) in entries.iter_mut().zip(block) {
                if !x.is_zero() {
                    *e = e.try_add(&Poly::monomial(&params, vec![k as u32], x.clone()))?;
                }
            }
        }
        JetCochain::new(c, q, entries, order)
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// Coefficient vector of `t^k`.
    pub fn block(&self, k: u32) -> Vector {
        self.entries.iter().map(|e| e.univariate_coeff(k)).collect()
    }

    pub fn truncated(&self, order: u32) -> JetCochain {
        JetCochain { q: self.q, order, entries: self.entries.iter().map(|e| e.truncate(order)).collect() }
    }
}

impl fmt::Display for JetCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({}) mod t^{}", parts.join(", "), self.order + 1)
    }
}

/// The class of the `t^n` coefficient of `d^q(alpha)` in `H^{q+1}(E_0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LabObstruction {
    pub n: u32,
    /// Degree of the cochain being extended.
    pub q: usize,
    /// The `t^n` coefficient itself, closed at `t = 0`.
    pub representative: Vector,
    /// Coordinates in the representative basis of `H^{q+1}(E_0)`.
    pub class: Vector,
}

impl LabObstruction {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|x| x.is_zero())
    }
}

fn apply(c: &FreeComplex, q: usize, alpha: &JetCochain) -> Result<Vec<Poly>, Error> {
    c.d(Some(q)).mul_vec(alpha.entries())
}

/// `o_n^q`: the obstruction to extending the `(n-1)`-th order extension
/// `alpha` one more order. `alpha` is read modulo `t^n`.
pub fn o_n_q(c: &FreeComplex, alpha: &JetCochain, n: u32) -> Result<LabObstruction, Error> {
    if n == 0 {
        return Err(Error::Invalid("obstruction orders start at 1".to_string()));
    }
    let q = alpha.q;
    let image = apply(c, q, &alpha.truncated(n - 1))?;
    for k in 0..n {
        if image.iter().any(|e| !e.univariate_coeff(k).is_zero()) {
            return Err(Error::NotClosed { order: k, required: n });
        }
    }
    let representative: Vector = image.iter().map(|e| e.univariate_coeff(n)).collect();
    let class = c.cohomology_at_zero(q + 1)?.project(&representative)?;
    Ok(LabObstruction { n, q, representative, class })
}

/// Class of `t^i sigma` in the cohomology of the complex modulo `t^{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedClass {
    pub i: u32,
    pub q: usize,
    pub coords: Vector,
}

impl TruncatedClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

fn truncated_cohomology(c: &FreeComplex, q: usize, i: u32) -> Result<CohomologyBasis, Error> {
    CohomologyBasis::new(&c.toeplitz(q.checked_sub(1), i), &c.toeplitz(Some(q), i))
}

fn place(block: &[GaussianRational], at: u32, blocks: u32) -> Vector {
    let len = block.len();
    let mut v = vec![GaussianRational::zero(); len * (blocks as usize + 1)];
    v[at as usize * len..(at as usize + 1) * len].clone_from_slice(block);
    v
}

/// `rho_i^q: H^q(E_0) -> H^q(E (x) O/t^{i+1})`, `[sigma] -> [t^i sigma]`, applied to
/// a `t = 0` cocycle of degree `q`.
pub fn rho(c: &FreeComplex, q: usize, sigma: &[GaussianRational], i: u32) -> Result<TruncatedClass, Error> {
    if sigma.len() != c.rank(q) {
        return Err(Error::DimensionMismatch(format!("vector of length {} in degree {q} of rank {}", sigma.len(), c.rank(q))));
    }
    let coords = truncated_cohomology(c, q, i)?.project(&place(sigma, i, i))?;
    Ok(TruncatedClass { i, q, coords })
}

/// `o_{n,i} = rho_i^{q+1} o_n^q`.
pub fn o_n_i(c: &FreeComplex, alpha: &JetCochain, n: u32, i: u32) -> Result<TruncatedClass, Error> {
    let o = o_n_q(c, alpha, n)?;
    rho(c, alpha.q + 1, &o.representative, i)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Extended(JetCochain),
    Obstructed(LabObstruction),
}

/// Extend an `(n-1)`-th order extension to order `n` by adding `t^n gamma`
/// with `d^q(0) gamma = -(t^n coefficient of d^q alpha)`.
pub fn extend_step(c: &FreeComplex, alpha: &JetCochain, n: u32) -> Result<Step, Error> {
    let o = o_n_q(c, alpha, n)?;
    if !o.is_zero() {
        return Ok(Step::Obstructed(o));
    }
    let rhs: Vector = o.representative.iter().map(|x| -x).collect();
    let gamma = c
        .at_zero(Some(alpha.q))
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal("exact defect has no preimage".to_string()))?;
    let mut blocks: Vec<Vector> = (0..n).map(|k| alpha.block(k)).collect();
    blocks.push(gamma);
    JetCochain::from_blocks(c, alpha.q, &blocks, n).map(Step::Extended)
}

/// Result of [`reduce_to_primitive`].
#[derive(Clone, Debug, PartialEq)]
pub struct Primitive {
    pub n: u32,
    pub alpha: JetCochain,
    pub obstruction: LabObstruction,
    /// `o_{n,n-1}` of the returned cochain; never zero.
    pub leading: TruncatedClass,
}

/// Lower the order of a nonzero obstruction until its leading part
/// `o_{n,n-1}` is nonzero. At most `n - 1` descents are made.
pub fn reduce_to_primitive(c: &FreeComplex, alpha: &JetCochain, n: u32) -> Result<Primitive, Error> {
    let q = alpha.q;
    let start = o_n_q(c, alpha, n)?;
    if start.is_zero() {
        return Err(Error::Invalid(format!("o_{n} vanishes; nothing to reduce")));
    }
    let beta = start.representative.clone();
    let mut n = n;
    let mut alpha = alpha.truncated(n - 1);
    loop {
        let leading = rho(c, q + 1, &beta, n - 1)?;
        if !leading.is_zero() {
            let obstruction = o_n_q(c, &alpha, n)?;
            if obstruction.class != start.class {
                return Err(Error::Internal(format!("descent changed the obstruction class at order {n}")));
            }
            return Ok(Primitive { n, alpha, obstruction, leading });
        }
        if n == 1 {
            return Err(Error::Internal("rho_0 of a nonzero class vanished".to_string()));
        }
        // t^{n-1} beta is exact modulo t^n: its preimage obstructs one order lower
        let m = n - 1;
        let x = c
            .toeplitz(Some(q), m)
            .solve(&place(&beta, m, m))?
            .ok_or_else(|| Error::Internal(format!("no preimage of t^{m} beta modulo t^{n}")))?;
        let p = c.rank(q);
        let blocks: Vec<Vector> = x.chunks(p.max(1)).take(m as usize + 1).map(|b| b.to_vec()).collect();
        alpha = JetCochain::from_blocks(c, q, &blocks, m - 1)?;
        n = m;
    }
}
