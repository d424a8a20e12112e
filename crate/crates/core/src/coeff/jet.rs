use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational, Params, Point, Poly};
use crate::error::Error;

/// A polynomial truncated above total degree `order`: an element of
/// `O_{B,0} / m^(order+1)`.
///
/// Jets built from bare scalars (`Jet::zero()`, `Jet::one()`, `Coeff::from_scalar`)
/// carry no order and adopt the order of whatever they are combined with.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Jet {
    poly: Poly,
    order: Option<u32>,
}

impl Jet {
    pub fn new(poly: Poly, order: u32) -> Self {
        Jet { poly: poly.truncate(order), order: Some(order) }
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Jet { poly: Poly::constant(c), order: None }
    }

    pub fn var(params: &Params, name: &str, order: u32) -> Result<Self, Error> {
        Ok(Jet::new(Poly::var(params, name)?, order))
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn order(&self) -> Option<u32> {
        self.order
    }

    /// Same polynomial, re-truncated at `order`.
    pub fn with_order(&self, order: u32) -> Jet {
        Jet::new(self.poly.clone(), order)
    }

    fn joint_order(&self, other: &Jet) -> Result<Option<u32>, Error> {
        match (self.order, other.order) {
            (Some(a), Some(b)) if a != b => Err(Error::OrderMismatch(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet, Error> {
        let order = self.joint_order(other)?;
        let poly = self.poly.try_add(&other.poly)?;
        Ok(match order {
            Some(n) => Jet::new(poly, n),
            None => Jet { poly, order: None },
        })
    }

    /// Truncated product; both factors must share parameters and order.
    pub fn try_mul(&self, other: &Jet) -> Result<Jet, Error> {
        let order = self.joint_order(other)?;
        Ok(match order {
            Some(n) => Jet { poly: self.poly.mul_truncated(&other.poly, n)?, order: Some(n) },
            None => Jet { poly: self.poly.try_mul(&other.poly)?, order: None },
        })
    }

    pub fn eval(&self, point: &Point) -> Result<GaussianRational, Error> {
        self.poly.eval(point)
    }

    pub fn homogeneous_part(&self, n: u32) -> Poly {
        self.poly.homogeneous_part(n)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.poly.constant_term()
    }

    pub fn scale(&self, c: &GaussianRational) -> Jet {
        Jet { poly: self.poly.scale(c), order: self.order }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order {
            Some(n) => write!(f, "{} + O({})", self.poly, n + 1),
            None => write!(f, "{}", self.poly),
        }
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet({})", self)
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::default()
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::scalar(GaussianRational::one())
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.try_add(rhs).expect("jet mismatch")
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.try_add(&-rhs).expect("jet mismatch")
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.try_mul(rhs).expect("jet mismatch")
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { poly: -&self.poly, order: self.order }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

macro_rules! forward_owned_jet {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_jet!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::parse::parse_poly;

    fn params() -> Params {
        Params::new(["t11", "t12", "t21", "t22", "t31", "t32"])
    }

    fn jet(s: &str, order: u32) -> Jet {
        Jet::new(parse_poly(s, params().names()).unwrap(), order)
    }

    #[test]
    fn degree_two_product_truncates_at_order_one() {
        assert!(jet("t11", 1).try_mul(&jet("t22", 1)).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let prod = jet("1 + t11", 2).try_mul(&jet("1 - t11", 2)).unwrap();
        assert_eq!(prod, jet("1 - t11^2", 2));
    }

    #[test]
    fn square_of_sum() {
        let a = jet("t11 + t21", 2);
        assert_eq!(a.try_mul(&a).unwrap(), jet("t11^2 + 2*t11*t21 + t21^2", 2));
    }

    #[test]
    fn mismatches_are_errors() {
        assert!(matches!(jet("t11", 1).try_mul(&jet("t11", 2)), Err(Error::OrderMismatch(1, 2))));
        let other = Jet::var(&Params::new(["s"]), "s", 1).unwrap();
        assert!(matches!(jet("t11", 1).try_mul(&other), Err(Error::ParamMismatch(_))));
    }

    #[test]
    fn scalars_adopt_the_order() {
        let sum = &Jet::one() + &jet("t11^2", 1);
        assert_eq!(sum.order(), Some(1));
        assert_eq!(sum, jet("1", 1));
    }
}
