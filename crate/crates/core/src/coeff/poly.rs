use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{GaussianRational, Point};
use crate::error::Error;

/// Ordered list of parameter names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Params(Arc<[String]>);

impl Params {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        Params(names.into_iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|p| p == name)
    }
}

impl fmt::Debug for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector, one entry per parameter.
pub type Exponent = Vec<u32>;

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Sparse multivariate polynomial over Q(i).
///
/// A polynomial with an empty parameter list is a constant and combines with
/// polynomials over any parameter list; two polynomials with different
/// nonempty parameter lists do not mix.
#[derive(Clone, Default)]
pub struct Poly {
    params: Params,
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl Poly {
    pub fn zero_in(params: &Params) -> Self {
        Poly { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { params: Params::default(), terms }
    }

    pub fn constant_in(params: &Params, c: GaussianRational) -> Self {
        Poly::monomial(params, vec![0; params.len()], c)
    }

    pub fn monomial(params: &Params, exp: Exponent, c: GaussianRational) -> Self {
        assert_eq!(exp.len(), params.len(), "exponent length must match parameter count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { params: params.clone(), terms }
    }

    /// The parameter `name` as a degree-one polynomial.
    pub fn var(params: &Params, name: &str) -> Result<Self, Error> {
        let idx = params.index_of(name).ok_or_else(|| Error::UnknownParameter(name.to_string()))?;
        let mut exp = vec![0; params.len()];
        exp[idx] = 1;
        Ok(Poly::monomial(params, exp, GaussianRational::one()))
    }

    pub fn from_terms(
        params: &Params,
        terms: impl IntoIterator<Item = (Exponent, GaussianRational)>,
    ) -> Self {
        let mut p = Poly::zero_in(params);
        for (e, c) in terms {
            assert_eq!(e.len(), params.len());
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &[u32]) -> GaussianRational {
        if self.params.is_empty() {
            if exp.iter().all(|&e| e == 0) {
                return self.terms.get(&Vec::new()).cloned().unwrap_or_default();
            }
            return GaussianRational::zero();
        }
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// The value if this polynomial has no non-constant terms.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == n)
    }

    /// Sum of the monomials of total degree exactly `n`.
    pub fn homogeneous_part(&self, n: u32) -> Poly {
        self.filter_terms(|e| e.iter().sum::<u32>() == n)
    }

    /// Sum of the monomials of total degree at most `n`.
    pub fn truncate(&self, n: u32) -> Poly {
        self.filter_terms(|e| e.iter().sum::<u32>() <= n)
    }

    fn filter_terms(&self, keep: impl Fn(&Exponent) -> bool) -> Poly {
        Poly {
            params: self.params.clone(),
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero_in(&self.params);
        }
        Poly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Re-express over `params`, which must extend the current list (or the
    /// current list must be empty).
    pub fn lift_to(&self, params: &Params) -> Result<Poly, Error> {
        if &self.params == params {
            return Ok(self.clone());
        }
        if !self.params.is_empty() {
            return Err(Error::ParamMismatch(format!("{:?} vs {:?}", self.params, params)));
        }
        let zero = vec![0; params.len()];
        Ok(Poly {
            params: params.clone(),
            terms: self.terms.iter().map(|(_, c)| (zero.clone(), c.clone())).collect(),
        })
    }

    fn aligned(&self, other: &Poly) -> Result<(Poly, Poly), Error> {
        if self.params == other.params {
            Ok((self.clone(), other.clone()))
        } else if self.params.is_empty() {
            Ok((self.lift_to(&other.params)?, other.clone()))
        } else if other.params.is_empty() {
            Ok((self.clone(), other.lift_to(&self.params)?))
        } else {
            Err(Error::ParamMismatch(format!("{:?} vs {:?}", self.params, other.params)))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, Error> {
        let (mut a, b) = self.aligned(other)?;
        for (e, c) in b.terms {
            a.add_term(e, &c);
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, Error> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, Error> {
        let (a, b) = self.aligned(other)?;
        let mut out = Poly::zero_in(&a.params);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Product with all monomials of total degree above `order` dropped.
    pub fn mul_truncated(&self, other: &Poly, order: u32) -> Result<Poly, Error> {
        let (a, b) = self.aligned(other)?;
        let mut out = Poly::zero_in(&a.params);
        for (ea, ca) in &a.terms {
            let da: u32 = ea.iter().sum();
            if da > order {
                continue;
            }
            for (eb, cb) in &b.terms {
                if da + eb.iter().sum::<u32>() > order {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(GaussianRational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every parameter must be assigned.
    pub fn eval(&self, point: &Point) -> Result<GaussianRational, Error> {
        let values: Vec<GaussianRational> = self
            .params
            .names()
            .iter()
            .map(|n| point.get(n).cloned().ok_or_else(|| Error::MissingAssignment(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    term = &term * &v.pow(k);
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Substitute `params[i] -> images[i]`; the images share one parameter list.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, Error> {
        if self.params.is_empty() {
            return Ok(self.clone());
        }
        assert_eq!(images.len(), self.params.len());
        let mut acc = Poly::zero();
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (img, &k) in images.iter().zip(e) {
                for _ in 0..k {
                    term = term.try_mul(img)?;
                }
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponent, &GaussianRational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder (or `divisor` is zero).
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (mut rem, d) = self.aligned(divisor).ok()?;
        let (lead_e, lead_c) = {
            let (e, c) = d.leading_term()?;
            (e.clone(), c.clone())
        };
        let lead_inv = lead_c.inv().ok()?;
        let mut quot = Poly::zero_in(&rem.params);
        while let Some((re, rc)) = rem.leading_term() {
            if re.len() != lead_e.len() || re.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponent = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = rc * &lead_inv;
            let step = Poly::monomial(&rem.params, qe.clone(), qc.clone());
            rem = rem.try_sub(&step.try_mul(&d).ok()?).ok()?;
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Coefficient of `t^k` for a polynomial in at most one parameter.
    pub fn univariate_coeff(&self, k: u32) -> GaussianRational {
        debug_assert!(self.params.len() <= 1);
        if self.params.is_empty() {
            return if k == 0 { self.constant_term() } else { GaussianRational::zero() };
        }
        self.terms.get(&vec![k]).cloned().unwrap_or_default()
    }

    /// `self / t^k` for a univariate polynomial divisible by `t^k`.
    pub fn univariate_shift_down(&self, k: u32) -> Option<Poly> {
        if self.params.is_empty() {
            return if k == 0 || self.is_zero() { Some(self.clone()) } else { None };
        }
        let mut out = Poly::zero_in(&self.params);
        for (e, c) in &self.terms {
            if e[0] < k {
                return None;
            }
            out.add_term(vec![e[0] - k], c);
        }
        Some(out)
    }

    fn fmt_monomial(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (name, &k) in self.params.names().iter().zip(e) {
            match k {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        parts.join("*")
    }

    /// Terms in descending graded lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &GaussianRational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        ts
    }
}

pub(crate) fn fmt_scaled(c: &GaussianRational, mono: &str) -> String {
    if mono.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return mono.to_string();
    }
    if c == &-GaussianRational::one() {
        return format!("-{mono}");
    }
    if c.is_real() {
        format!("{c}*{mono}")
    } else {
        format!("({c})*{mono}")
    }
}

pub(crate) fn join_signed(parts: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for p in parts {
        if !out.is_empty() && !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(&p);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.sorted_terms().into_iter().map(|(e, c)| fmt_scaled(c, &self.fmt_monomial(e)));
        write!(f, "{}", join_signed(parts))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        match self.aligned(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl Eq for Poly {}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }
}

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial parameter mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial parameter mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial parameter mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse::parse_poly;

    fn params() -> Params {
        Params::new(["t11", "t12", "t21", "t22", "t31", "t32"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, params().names()).unwrap()
    }

    #[test]
    fn grlex_rendering() {
        assert_eq!(p("t22*t11 - t21*t12").to_string(), "t11*t22-t12*t21");
        assert_eq!(p("t11^2*t22 + 3 - 1/2*t12").to_string(), "t11^2*t22-1/2*t12+3");
        assert_eq!(p("(1+i)*t11").to_string(), "(1+i)*t11");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn homogeneous_parts() {
        let a = p("3 + t11 + t11*t22");
        assert_eq!(a.homogeneous_part(1), p("t11"));
        assert_eq!(p("t11*t22").homogeneous_part(2), p("t11*t22"));
        assert!(p("t11").homogeneous_part(0).is_zero());
    }

    #[test]
    fn evaluation() {
        let det = p("t11*t22 - t21*t12");
        let mut pt = Point::zeros(&params());
        pt.set("t11", 1.into());
        pt.set("t22", 1.into());
        assert_eq!(det.eval(&pt).unwrap(), 1.into());
        pt.set("t22", 0.into());
        assert_eq!(det.eval(&pt).unwrap(), 0.into());
        assert_eq!(Poly::zero().eval(&pt).unwrap(), 0.into());
        let mut partial = Point::default();
        partial.set("t11", 1.into());
        assert!(matches!(det.eval(&partial), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn exact_division() {
        let a = p("t11^2 - t12^2");
        let b = p("t11 + t12");
        assert_eq!(a.div_exact(&b).unwrap(), p("t11 - t12"));
        assert!(p("t11^2 + 1").div_exact(&b).is_none());
        assert!(a.div_exact(&Poly::zero()).is_none());
    }

    #[test]
    fn constants_mix_with_any_parameter_list() {
        let one = Poly::one();
        assert_eq!(&one + &p("t11"), p("1 + t11"));
        assert_eq!(Poly::constant(2.into()), p("2"));
        let other = Poly::var(&Params::new(["s"]), "s").unwrap();
        assert!(p("t11").try_add(&other).is_err());
    }
}
