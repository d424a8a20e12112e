use num_traits::Zero;

use super::family::DeformationFamily;
use super::obstruction::o1_form;
use crate::coeff::{Params, Poly};
use crate::error::Error;
use crate::exterior::{InvariantForm, ScalarForm};
use crate::linalg::{delbar_matrix, form_basis, DolbeaultCohomology};

/// Result of extending a class along a family.
#[derive(Clone, Debug)]
pub enum Extension {
    /// `jets[k]` is the degree-`k` correction (in the deformed frame); the
    /// sum is `dbar_t`-closed modulo degree `verified_order + 1`.
    Extended { jets: Vec<InvariantForm<Poly>>, verified_order: u32 },
    /// No correction of degree `order` exists for the constructed lower
    /// terms. `class` holds coordinates in `H^{p,q+1}` of the central
    /// structure; `form` is a representative.
    Obstructed { order: u32, class: Vec<Poly>, form: InvariantForm<Poly>, jets: Vec<InvariantForm<Poly>> },
}

impl Extension {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Extension::Obstructed { .. })
    }
}

/// Extend a `dbar`-closed form `alpha` order by order along `family`.
///
/// The form is transported to the deformed frame with the same coordinates;
/// at each order the residual of `dbar_t` must be `dbar`-exact on the central
/// structure, and a particular preimage is added. The reported obstruction is
/// the class of the residual times `(-1)^(p+q+1)`; with that sign the order
/// one class is the first-order obstruction `o1(alpha)`, which is checked on
/// every call.
pub fn extend_class(family: &DeformationFamily, alpha: &ScalarForm, max_order: u32) -> Result<Extension, Error> {
    let spec = family.spec();
    let n = spec.dim();
    if max_order > family.order() {
        return Err(Error::Invalid(format!(
            "family is only integrable to order {}; extend it before asking for order {max_order}",
            family.order()
        )));
    }
    let Some((p, q)) = alpha.bidegree() else {
        if alpha.is_zero() {
            return Ok(Extension::Extended { jets: vec![InvariantForm::zero(n); max_order as usize + 1], verified_order: max_order });
        }
        return Err(Error::Invalid(format!("{alpha} is not of pure bidegree")));
    };
    let source = DolbeaultCohomology::new(spec, p, q)?;
    if !source.is_closed(alpha)? {
        return Err(Error::Invalid(format!("{alpha} is not dbar-closed")));
    }
    let params = family.params();
    let target = if q < n { Some(DolbeaultCohomology::new(spec, p, q + 1)?) } else { None };
    let delbar0 = delbar_matrix(spec, p, q)?;
    let basis = form_basis(n, p, q);
    let target_basis = form_basis(n, p, q + 1);
    let deformed = family.deformed()?;

    let mut jets = vec![InvariantForm::<Poly>::from_scalar_form(alpha)];
    let mut total = jets[0].clone();
    for k in 1..=max_order {
        let residual = deformed.delbar(&total).homogeneous_part(k);
        let minus = residual.neg();
        let reported = if (p + q) % 2 == 0 { minus.clone() } else { residual };
        let class = match &target {
            Some(t) => t.project_poly(&reported)?,
            None => Vec::new(),
        };
        if k == 1 {
            check_first_order(family, alpha, &class, target.as_ref())?;
        }
        if class.iter().any(|c| !c.is_zero()) {
            return Ok(Extension::Obstructed { order: k, class, form: reported, jets });
        }
        let mut step = InvariantForm::zero(n);
        for (exp, scalar) in minus.by_monomial() {
            let rhs = scalar.coordinates(&target_basis)?;
            let x = delbar0
                .solve(&rhs)?
                .ok_or_else(|| Error::Internal(format!("exact residual at order {k} has no preimage")))?;
            step = step.add(&lift_coords(params, n, &basis, &x, &exp));
        }
        total = total.add(&step);
        jets.push(step);
    }
    Ok(Extension::Extended { jets, verified_order: max_order })
}

fn lift_coords(params: &Params, n: usize, basis: &[crate::exterior::Mask], x: &[crate::coeff::GaussianRational], exp: &[u32]) -> InvariantForm<Poly> {
    InvariantForm::from_terms(
        n,
        basis.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, Poly::monomial(params, exp.to_vec(), c.clone()))),
    )
}

fn check_first_order(family: &DeformationFamily, alpha: &ScalarForm, class: &[Poly], target: Option<&DolbeaultCohomology>) -> Result<(), Error> {
    let Some(target) = target else { return Ok(()) };
    let expected = target.project_poly(&o1_form(family.spec(), &family.first_order(), &InvariantForm::<Poly>::from_scalar_form(alpha))?)?;
    if expected != class {
        return Err(Error::Internal(format!("order-one obstruction of {alpha} disagrees with o1")));
    }
    Ok(())
}
