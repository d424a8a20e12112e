use std::collections::BTreeMap;
use std::fmt;

use super::form::{render_term, InvariantForm};
use super::monomial::{self, Mask};
use crate::coeff::{Coeff, Evaluate, GaussianRational, Point, Poly};
use crate::error::Error;

/// A `T^{1,0}`-valued invariant `(0,q)`-form `sum psi^i_J theta_i (x) phibar_J`,
/// where `theta_i` is the frame dual to `phi_i`.
///
/// Keys are `(i, J)` with `i` 0-based and `J` an antiholomorphic mask in the
/// same bit layout as [`InvariantForm`].
#[derive(Clone, PartialEq)]
pub struct VectorForm<R> {
    n: usize,
    q: usize,
    coeffs: BTreeMap<(usize, Mask), R>,
}

pub type ScalarVectorForm = VectorForm<GaussianRational>;

impl<R: Coeff> VectorForm<R> {
    pub fn zero(n: usize, q: usize) -> Self {
        assert!(q <= n && n <= monomial::MAX_DIM);
        VectorForm { n, q, coeffs: BTreeMap::new() }
    }

    /// `c * theta_i (x) phibar_J`, `i` 1-based, `J` a list of 1-based indices.
    pub fn term(n: usize, i: usize, j: &[usize], c: R) -> Result<Self, Error> {
        if i == 0 || i > n || j.iter().any(|&l| l == 0 || l > n) {
            return Err(Error::Invalid(format!("vector form index out of range 1..={n}")));
        }
        let mut sorted = j.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != j.len() {
            return Err(Error::Invalid("repeated antiholomorphic index".to_string()));
        }
        // reorder sign for the antiholomorphic factor
        let mut sign = 1;
        for a in 0..j.len() {
            for b in a + 1..j.len() {
                if j[a] > j[b] {
                    sign = -sign;
                }
            }
        }
        let mask = sorted.iter().fold(0, |m, &l| m | monomial::antiholomorphic_bit(n, l - 1));
        let mut v = VectorForm::zero(n, j.len());
        v.add_term(i - 1, mask, &if sign < 0 { c.neg() } else { c });
        Ok(v)
    }

    /// The first-order family `sum c_{i,lambda} theta_i (x) phibar_lambda` from
    /// an `n x n` coefficient table (row `i`, column `lambda`).
    pub fn from_matrix(n: usize, table: &[Vec<R>]) -> Result<Self, Error> {
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected a {n}x{n} coefficient table")));
        }
        let mut v = VectorForm::zero(n, 1);
        for (i, row) in table.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                v.add_term(i, monomial::antiholomorphic_bit(n, l), c);
            }
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, Mask), &R)> {
        self.coeffs.iter()
    }

    /// Coefficient of `theta_i (x) phibar_J` (`i` 0-based, `J` a mask).
    pub fn coefficient(&self, i: usize, j: Mask) -> R {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(R::zero)
    }

    /// `n x n` table of a `q = 1` form: entry `[i][lambda]`.
    pub fn matrix(&self) -> Vec<Vec<R>> {
        assert_eq!(self.q, 1, "coefficient table only defined for q = 1");
        (0..self.n)
            .map(|i| (0..self.n).map(|l| self.coefficient(i, monomial::antiholomorphic_bit(self.n, l))).collect())
            .collect()
    }

    pub(crate) fn add_term(&mut self, i: usize, j: Mask, c: &R) {
        if c.is_zero() {
            return;
        }
        let key = (i, j);
        let sum = match self.coeffs.get(&key) {
            Some(e) => e.add_ref(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::SpecMismatch(format!(
                "vector forms of shape (n={}, q={}) and (n={}, q={})",
                self.n, self.q, other.n, other.q
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let mut out = self.clone();
        for ((i, j), c) in &other.coeffs {
            out.add_term(*i, *j, c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("vector forms of different shape")
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.clone().neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|a| a.scale(c))
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        self.map_coeffs(|a| a.mul_ref(c))
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> VectorForm<S> {
        let mut out = VectorForm::zero(self.n, self.q);
        for ((i, j), c) in &self.coeffs {
            out.add_term(*i, *j, &f(c));
        }
        out
    }

    pub fn try_map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> Result<S, Error>) -> Result<VectorForm<S>, Error> {
        let mut out = VectorForm::zero(self.n, self.q);
        for ((i, j), c) in &self.coeffs {
            out.add_term(*i, *j, &f(c)?);
        }
        Ok(out)
    }

    /// Component `i` (0-based) as the `(0,q)`-form `sum_J psi^i_J phibar_J`.
    pub fn component(&self, i: usize) -> InvariantForm<R> {
        InvariantForm::from_terms(self.n, self.coeffs.iter().filter(|((a, _), _)| *a == i).map(|((_, j), c)| (*j, c.clone())))
    }

    /// Assemble from components: `forms[i]` is the `(0,q)`-form multiplying `theta_i`.
    pub fn from_components(n: usize, q: usize, forms: &[InvariantForm<R>]) -> Result<Self, Error> {
        if forms.len() != n {
            return Err(Error::DimensionMismatch(format!("expected {n} components")));
        }
        let mut out = VectorForm::zero(n, q);
        for (i, f) in forms.iter().enumerate() {
            for (m, c) in f.terms() {
                if monomial::bidegree(*m, n) != (0, q) {
                    return Err(Error::Invalid(format!("component {} is not a (0,{q})-form", i + 1)));
                }
                out.add_term(i, *m, c);
            }
        }
        Ok(out)
    }

    /// Interior product `iota_psi(alpha)`: on `theta_i (x) phibar_J` it sends
    /// `alpha` to `(theta_i -| alpha) ^ phibar_J`. Bidegree `(p, q') -> (p-1, q'+q)`.
    pub fn try_contract(&self, alpha: &InvariantForm<R>) -> Result<InvariantForm<R>, Error> {
        if alpha.dim() != self.n {
            return Err(Error::SpecMismatch(format!("vector form on dimension {} contracted with form on dimension {}", self.n, alpha.dim())));
        }
        let mut out = InvariantForm::zero(self.n);
        for ((i, j), c) in &self.coeffs {
            let bit = monomial::holomorphic_bit(*i);
            for (m, a) in alpha.terms() {
                if m & bit == 0 {
                    continue;
                }
                let position = (m & (bit - 1)).count_ones();
                let rest = m & !bit;
                let Some(sign) = monomial::wedge_sign(rest, *j) else { continue };
                let mut v = c.mul_ref(a);
                if (position % 2 == 1) != (sign < 0) {
                    v = v.neg();
                }
                out.add_term(rest | j, &v);
            }
        }
        Ok(out)
    }

    pub fn contract(&self, alpha: &InvariantForm<R>) -> InvariantForm<R> {
        self.try_contract(alpha).expect("dimension mismatch in contraction")
    }
}

impl<R: Coeff + Evaluate> VectorForm<R> {
    pub fn eval(&self, point: &Point) -> Result<ScalarVectorForm, Error> {
        self.try_map_coeffs(|c| c.eval_at(point))
    }
}

impl VectorForm<Poly> {
    pub fn homogeneous_part(&self, k: u32) -> Self {
        self.map_coeffs(|c| c.homogeneous_part(k))
    }

    /// Largest total degree among the coefficients (0 for the zero form).
    pub fn degree(&self) -> u32 {
        self.coeffs.values().map(|c| c.total_degree().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Smallest total degree among the nonzero coefficients.
    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(|c| c.min_degree()).min()
    }
}

impl<R: Coeff> fmt::Display for VectorForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.coeffs.iter().map(|((i, j), c)| {
            let basis = if *j == 0 {
                format!("th{}", i + 1)
            } else {
                format!("th{}*{}", i + 1, monomial::render(*j, self.n))
            };
            render_term(&c.to_string(), &basis)
        });
        write!(f, "{}", crate::coeff::join_signed(parts))
    }
}

impl<R: Coeff> fmt::Debug for VectorForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorForm[n={}, q={}]({})", self.n, self.q, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::ScalarForm;

    type F = ScalarForm;
    type V = ScalarVectorForm;

    fn one() -> GaussianRational {
        GaussianRational::from_integer(1)
    }

    #[test]
    fn theta2_phibar1_on_phi2_phi3() {
        let psi = V::term(3, 2, &[1], one()).unwrap();
        let alpha = F::phi(3, 2).wedge(&F::phi(3, 3));
        let expect = F::phi(3, 3).wedge(&F::phibar(3, 1));
        assert_eq!(psi.contract(&alpha), expect);
    }

    #[test]
    fn theta3_phibar1_on_phi1_phi3() {
        let psi = V::term(3, 3, &[1], one()).unwrap();
        let alpha = F::phi(3, 1).wedge(&F::phi(3, 3));
        let expect = F::phi(3, 1).wedge(&F::phibar(3, 1)).neg();
        assert_eq!(psi.contract(&alpha), expect);
    }

    #[test]
    fn no_holomorphic_factor_contracts_to_zero() {
        let psi = V::term(3, 1, &[2], one()).unwrap().add(&V::term(3, 3, &[1], one()).unwrap());
        assert!(psi.contract(&F::phibar(3, 1)).is_zero());
    }

    #[test]
    fn repeated_contraction_vanishes() {
        let psi = V::term(3, 1, &[2], one()).unwrap();
        let alpha = F::phi(3, 1).wedge(&F::phi(3, 2)).wedge(&F::phibar(3, 3));
        assert!(psi.contract(&psi.contract(&alpha)).is_zero());
    }

    #[test]
    fn rendering() {
        let v = V::term(3, 1, &[2], one()).unwrap().add(&V::term(3, 3, &[3], GaussianRational::from_integer(-2)).unwrap());
        assert_eq!(v.to_string(), "th1*c2-2*th3*c3");
    }

    #[test]
    fn unsorted_antiholomorphic_indices_carry_a_sign() {
        let a = V::term(3, 1, &[2, 1], one()).unwrap();
        let b = V::term(3, 1, &[1, 2], one()).unwrap();
        assert_eq!(a, b.neg());
    }
}
