use std::collections::BTreeMap;
use std::fmt;

use super::monomial::{self, Mask};
use crate::coeff::{Coeff, Evaluate, GaussianRational, Jet, Point, Poly};
use crate::error::Error;

/// An invariant form on a Lie algebra of complex dimension `n`, written in
/// the basis `phi_I ^ phibar_J` with exact coefficients.
///
/// Forms may mix bidegrees (differentials of generators do, in a general
/// frame); [`InvariantForm::bidegree`] reports the bidegree when homogeneous.
#[derive(Clone, PartialEq)]
pub struct InvariantForm<R> {
    n: usize,
    terms: BTreeMap<Mask, R>,
}

pub type ScalarForm = InvariantForm<GaussianRational>;

impl<R: Coeff> InvariantForm<R> {
    pub fn zero(n: usize) -> Self {
        assert!(n <= monomial::MAX_DIM, "complex dimension {n} exceeds {}", monomial::MAX_DIM);
        InvariantForm { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        InvariantForm::monomial(n, 0, R::one())
    }

    pub fn monomial(n: usize, mask: Mask, c: R) -> Self {
        let mut f = InvariantForm::zero(n);
        f.add_term(mask, &c);
        f
    }

    /// `phi_i` (1-based, matching the usual notation).
    pub fn phi(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n);
        InvariantForm::monomial(n, monomial::holomorphic_bit(i - 1), R::one())
    }

    /// `phibar_i` (1-based).
    pub fn phibar(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n);
        InvariantForm::monomial(n, monomial::antiholomorphic_bit(n, i - 1), R::one())
    }

    /// The `k`-th generator (0-based over all `2n` generators).
    pub fn generator(n: usize, k: usize) -> Self {
        InvariantForm::monomial(n, 1 << k, R::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mask, R)>) -> Self {
        let mut f = InvariantForm::zero(n);
        for (m, c) in terms {
            f.add_term(m, &c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mask, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: Mask) -> R {
        self.terms.get(&mask).cloned().unwrap_or_else(R::zero)
    }

    pub(crate) fn add_term(&mut self, mask: Mask, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(existing) => {
                let sum = existing.add_ref(c);
                if sum.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mask, c.clone());
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::SpecMismatch(format!("forms on dimension {} and {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("forms of different dimension")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        InvariantForm { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.clone().neg())).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        InvariantForm::from_terms(self.n, self.terms.iter().map(|(m, a)| (*m, a.scale(c))))
    }

    pub fn mul_coeff(&self, c: &R) -> Self {
        InvariantForm::from_terms(self.n, self.terms.iter().map(|(m, a)| (*m, a.mul_ref(c))))
    }

    /// Exterior product in the canonical basis.
    pub fn try_wedge(&self, other: &Self) -> Result<Self, Error> {
        self.check_dim(other)?;
        let mut out = InvariantForm::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(sign) = monomial::wedge_sign(*ma, *mb) {
                    let c = ca.mul_ref(cb);
                    out.add_term(ma | mb, &if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("forms of different dimension")
    }

    /// Bidegree if all terms share one, `None` for zero or mixed forms.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|m| monomial::bidegree(*m, self.n));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: usize, q: usize) -> Self {
        let n = self.n;
        InvariantForm {
            n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial::bidegree(**m, n) == (p, q))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> InvariantForm<S> {
        InvariantForm::from_terms(self.n, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn try_map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> Result<S, Error>) -> Result<InvariantForm<S>, Error> {
        let mut out = InvariantForm::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    /// Lift a form with scalar coefficients into this coefficient ring.
    pub fn from_scalar_form(form: &ScalarForm) -> Self {
        form.map_coeffs(R::from_scalar)
    }

    /// Coordinates in the given basis list; terms outside the list are an error.
    pub fn coordinates(&self, basis: &[Mask]) -> Result<Vec<R>, Error> {
        for m in self.terms.keys() {
            if !basis.contains(m) {
                return Err(Error::DimensionMismatch(format!(
                    "monomial {} outside the requested basis",
                    monomial::render(*m, self.n)
                )));
            }
        }
        Ok(basis.iter().map(|m| self.coefficient(*m)).collect())
    }

    pub fn from_coordinates(n: usize, basis: &[Mask], coords: &[R]) -> Self {
        InvariantForm::from_terms(n, basis.iter().copied().zip(coords.iter().cloned()))
    }
}

impl<R: Coeff + Evaluate> InvariantForm<R> {
    pub fn eval(&self, point: &Point) -> Result<ScalarForm, Error> {
        self.try_map_coeffs(|c| c.eval_at(point))
    }
}

impl ScalarForm {
    /// Complex conjugate: conjugate coefficients and swap `phi <-> phibar`.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        let mut out = InvariantForm::zero(n);
        for (m, c) in &self.terms {
            let (cm, sign) = monomial::conjugate(*m, n);
            let cc = c.conj();
            out.add_term(cm, &if sign < 0 { -cc } else { cc });
        }
        out
    }
}

impl InvariantForm<Poly> {
    /// Keep the degree-`k` homogeneous part of every coefficient.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        self.map_coeffs(|c| c.homogeneous_part(k))
    }

    /// Split into scalar forms, one per parameter monomial.
    pub fn by_monomial(&self) -> BTreeMap<Vec<u32>, ScalarForm> {
        let mut out: BTreeMap<Vec<u32>, ScalarForm> = BTreeMap::new();
        for (m, c) in &self.terms {
            for (e, v) in c.terms() {
                out.entry(e.clone()).or_insert_with(|| InvariantForm::zero(self.n)).add_term(*m, v);
            }
        }
        out
    }
}

impl InvariantForm<Jet> {
    pub fn to_poly(&self) -> InvariantForm<Poly> {
        self.map_coeffs(|c| c.poly().clone())
    }

    pub fn homogeneous_part(&self, k: u32) -> InvariantForm<Poly> {
        self.map_coeffs(|c| c.homogeneous_part(k))
    }
}

/// Render `coeff*mono`, parenthesizing compound coefficients.
pub(crate) fn render_term(c: &str, mono: &str) -> String {
    if mono == "1" {
        return c.to_string();
    }
    match c {
        "1" => mono.to_string(),
        "-1" => format!("-{mono}"),
        _ => {
            let compound = c.chars().skip(1).any(|ch| ch == '+' || ch == '-');
            if compound && !(c.starts_with('(') && c.ends_with(')')) {
                format!("({c})*{mono}")
            } else {
                format!("{c}*{mono}")
            }
        }
    }
}

impl<R: Coeff> fmt::Display for InvariantForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<Mask> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| monomial::display_key(*m));
        let parts = keys
            .into_iter()
            .map(|m| render_term(&self.terms[&m].to_string(), &monomial::render(m, self.n)));
        write!(f, "{}", crate::coeff::join_signed(parts))
    }
}

impl<R: Coeff> fmt::Debug for InvariantForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}]({})", self.n, self)
    }
}
