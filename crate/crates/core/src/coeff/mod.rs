//! Exact coefficient arithmetic: Gaussian rationals, polynomials in the
//! deformation parameters, and truncated jets.

mod gaussian;
mod jet;
pub mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Neg, Sub};

use num_traits::{One, Zero};

pub use gaussian::GaussianRational;
pub use jet::Jet;
pub use parse::{parse_gaussian, parse_poly};
pub use poly::{grlex, Exponent, Params, Poly};

pub(crate) use poly::join_signed;

use crate::error::Error;

/// Coefficient ring for forms and matrices: Q(i), Q(i)[t..] or jets over it.
///
/// The by-reference methods exist so generic code does not need
/// higher-ranked operator bounds.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_scalar(c: &GaussianRational) -> Self;
    fn scale(&self, c: &GaussianRational) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.clone().neg())
    }
}

impl Coeff for GaussianRational {
    fn from_scalar(c: &GaussianRational) -> Self {
        c.clone()
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        self * c
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

impl Coeff for Poly {
    fn from_scalar(c: &GaussianRational) -> Self {
        Poly::constant(c.clone())
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        Poly::scale(self, c)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

impl Coeff for Jet {
    fn from_scalar(c: &GaussianRational) -> Self {
        Jet::scalar(c.clone())
    }
    fn scale(&self, c: &GaussianRational) -> Self {
        Jet::scale(self, c)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
}

/// Coefficients that can be specialized at a point of the parameter space.
pub trait Evaluate {
    fn eval_at(&self, point: &Point) -> Result<GaussianRational, Error>;
}

impl Evaluate for GaussianRational {
    fn eval_at(&self, _: &Point) -> Result<GaussianRational, Error> {
        Ok(self.clone())
    }
}

impl Evaluate for Poly {
    fn eval_at(&self, point: &Point) -> Result<GaussianRational, Error> {
        self.eval(point)
    }
}

impl Evaluate for Jet {
    fn eval_at(&self, point: &Point) -> Result<GaussianRational, Error> {
        self.eval(point)
    }
}

/// An assignment of values to named parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Point(BTreeMap<String, GaussianRational>);

impl Point {
    /// Every parameter of `params` set to zero.
    pub fn zeros(params: &Params) -> Self {
        Point(params.names().iter().map(|n| (n.clone(), GaussianRational::zero())).collect())
    }

    /// Parameters of `params` taken from `values`, unassigned ones set to zero.
    pub fn with_defaults<'a>(
        params: &Params,
        values: impl IntoIterator<Item = (&'a str, GaussianRational)>,
    ) -> Result<Self, Error> {
        let mut p = Point::zeros(params);
        for (k, v) in values {
            if params.index_of(k).is_none() {
                return Err(Error::UnknownParameter(k.to_string()));
            }
            p.set(k, v);
        }
        Ok(p)
    }

    pub fn set(&mut self, name: &str, value: GaussianRational) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&GaussianRational> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &GaussianRational)> {
        self.0.iter()
    }

    /// Every coordinate multiplied by `s`.
    pub fn scaled(&self, s: &GaussianRational) -> Point {
        Point(self.0.iter().map(|(k, v)| (k.clone(), v * s)).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}
