use std::fmt;

use super::form::InvariantForm;
use super::monomial::{self, Mask};
use super::spec::ComplexStructureSpec;
use super::vector::VectorForm;
use crate::coeff::Coeff;
use crate::error::Error;

/// Change of frame `g_i = phi_i + sum_lambda psi^i_lambda phibar_lambda`,
/// `h_j = phibar_j`.
///
/// The frame is unitriangular with respect to the old one, so the inverse is
/// `phi_i = g_i - sum_lambda psi^i_lambda h_lambda` over any coefficient ring.
#[derive(Clone)]
pub struct FrameChange<R> {
    n: usize,
    // images of the old generators in the new frame, and the reverse
    to_new: Vec<InvariantForm<R>>,
    to_old: Vec<InvariantForm<R>>,
}

impl<R: Coeff> FrameChange<R> {
    pub fn new(psi: &VectorForm<R>) -> Result<Self, Error> {
        if psi.q() != 1 {
            return Err(Error::Invalid(format!("the deformation must be a (0,1)-form, got q = {}", psi.q())));
        }
        let n = psi.dim();
        let mut to_new = Vec::with_capacity(2 * n);
        let mut to_old = Vec::with_capacity(2 * n);
        for i in 0..n {
            let shift = InvariantForm::from_terms(n, (0..n).map(|l| {
                let bit = monomial::antiholomorphic_bit(n, l);
                (bit, psi.coefficient(i, bit))
            }));
            let gen = InvariantForm::generator(n, i);
            to_new.push(gen.sub(&shift));
            to_old.push(gen.add(&shift));
        }
        for j in 0..n {
            to_new.push(InvariantForm::generator(n, n + j));
            to_old.push(InvariantForm::generator(n, n + j));
        }
        Ok(FrameChange { n, to_new, to_old })
    }

    fn image(images: &[InvariantForm<R>], n: usize, mask: Mask) -> InvariantForm<R> {
        monomial::indices(mask).into_iter().fold(InvariantForm::one(n), |acc, k| acc.wedge(&images[k]))
    }

    fn apply(images: &[InvariantForm<R>], n: usize, form: &InvariantForm<R>) -> InvariantForm<R> {
        let mut out = InvariantForm::zero(n);
        for (m, c) in form.terms() {
            out = out.add(&FrameChange::image(images, n, *m).mul_coeff(c));
        }
        out
    }

    /// Rewrite a form given in `phi, phibar` in the frame `g, h`.
    pub fn to_new(&self, form: &InvariantForm<R>) -> InvariantForm<R> {
        FrameChange::apply(&self.to_new, self.n, form)
    }

    /// Rewrite a form given in `g, h` back in `phi, phibar`.
    pub fn to_old(&self, form: &InvariantForm<R>) -> InvariantForm<R> {
        FrameChange::apply(&self.to_old, self.n, form)
    }
}

/// The structure equations of the deformed complex structure, written in the
/// frame `g, h` of [`FrameChange`], with the integrability defect split off.
#[derive(Clone)]
pub struct DeformedStructure<R> {
    spec: ComplexStructureSpec<R>,
    frame: FrameChange<R>,
    defect: Vec<InvariantForm<R>>,
}

impl<R: Coeff> DeformedStructure<R> {
    /// Full structure equations in the new frame (defect included).
    pub fn spec(&self) -> &ComplexStructureSpec<R> {
        &self.spec
    }

    pub fn frame(&self) -> &FrameChange<R> {
        &self.frame
    }

    /// `(0,2)`-part of `d(g_i)` in the new bigrading, `i` 0-based.
    pub fn defect(&self, i: usize) -> &InvariantForm<R> {
        &self.defect[i]
    }

    pub fn defects(&self) -> &[InvariantForm<R>] {
        &self.defect
    }

    pub fn is_integrable(&self) -> bool {
        self.defect.iter().all(|f| f.is_zero())
    }

    /// `dbar_t`: the part of `d` raising the second degree of the new
    /// bigrading, for a form written in the new frame.
    pub fn delbar(&self, form: &InvariantForm<R>) -> InvariantForm<R> {
        self.spec.delbar(form)
    }
}

impl<R: Coeff> fmt::Debug for FrameChange<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrameChange").field("n", &self.n).field("to_new", &self.to_new).finish()
    }
}

impl<R: Coeff> fmt::Debug for DeformedStructure<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeformedStructure").field("spec", &self.spec).field("defect", &self.defect).finish()
    }
}

/// Deform `spec` by the `(0,1)`-vector form `psi`.
///
/// `(1,0)`-forms of the deformed structure are spanned by `g_i`; the
/// complement `h_j = phibar_j` represents the `(0,1)` directions modulo
/// `(1,0)`, which is all that the Dolbeault complex sees through the
/// filtration by holomorphic degree. The returned equations therefore need no
/// conjugate parameters.
pub fn deformed_coframe<R: Coeff>(spec: &ComplexStructureSpec<R>, psi: &VectorForm<R>) -> Result<DeformedStructure<R>, Error> {
    let n = spec.dim();
    if psi.dim() != n {
        return Err(Error::SpecMismatch(format!("deformation on dimension {} for structure of dimension {n}", psi.dim())));
    }
    let frame = FrameChange::new(psi)?;
    let mut dgen = Vec::with_capacity(2 * n);
    for i in 0..n {
        // coefficients are constant on the group, so d only hits the frame
        let mut dg = spec.dgen(i).clone();
        for l in 0..n {
            let c = psi.coefficient(i, monomial::antiholomorphic_bit(n, l));
            if !c.is_zero() {
                dg = dg.add(&spec.dgen(n + l).mul_coeff(&c));
            }
        }
        dgen.push(frame.to_new(&dg));
    }
    for j in 0..n {
        dgen.push(frame.to_new(spec.dgen(n + j)));
    }
    let defect = dgen[..n].iter().map(|f| f.component(0, 2)).collect();
    let spec = ComplexStructureSpec::from_frame(n, dgen)?;
    Ok(DeformedStructure { spec, frame, defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{GaussianRational, Params, Poly};
    use crate::exterior::{ScalarForm, ScalarSpec};

    fn iwasawa_psi1() -> (Params, VectorForm<Poly>) {
        let names = ["t11", "t12", "t21", "t22", "t31", "t32"];
        let params = Params::new(names);
        let mut psi = VectorForm::zero(3, 1);
        for name in names {
            let i: usize = name[1..2].parse().unwrap();
            let l: usize = name[2..3].parse().unwrap();
            psi = psi.add(&VectorForm::term(3, i, &[l], Poly::var(&params, name).unwrap()).unwrap());
        }
        (params, psi)
    }

    #[test]
    fn zero_deformation_is_identity() {
        let spec = ScalarSpec::iwasawa();
        let out = deformed_coframe(&spec, &VectorForm::zero(3, 1)).unwrap();
        assert_eq!(out.spec(), &spec);
        assert!(out.is_integrable());
    }

    #[test]
    fn first_order_family_has_determinant_defect() {
        let spec = ComplexStructureSpec::<Poly>::lift(&ScalarSpec::iwasawa());
        let (params, psi) = iwasawa_psi1();
        let out = deformed_coframe(&spec, &psi).unwrap();
        assert!(out.defect(0).is_zero());
        assert!(out.defect(1).is_zero());
        // hand expansion: d(g3) picks up -(t11*t22 - t12*t21) c1^c2
        let det = crate::coeff::parse_poly("t11*t22-t12*t21", params.names()).unwrap();
        let c12 = ScalarForm::phibar(3, 1).wedge(&ScalarForm::phibar(3, 2));
        let expect = InvariantForm::<Poly>::from_scalar_form(&c12).mul_coeff(&(-det));
        assert_eq!(out.defect(2), &expect);
    }

    #[test]
    fn second_order_term_restores_integrability() {
        let spec = ComplexStructureSpec::<Poly>::lift(&ScalarSpec::iwasawa());
        let (params, psi1) = iwasawa_psi1();
        let det = crate::coeff::parse_poly("t11*t22-t12*t21", params.names()).unwrap();
        let psi2 = VectorForm::term(3, 3, &[3], -det).unwrap();
        let out = deformed_coframe(&spec, &psi1.add(&psi2)).unwrap();
        assert!(out.is_integrable());
    }

    #[test]
    fn frame_change_round_trips() {
        let (_, psi) = iwasawa_psi1();
        let frame = FrameChange::new(&psi).unwrap();
        for mask in 0..(1u32 << 6) {
            let f = InvariantForm::<Poly>::monomial(3, mask, Poly::constant(GaussianRational::from_integer(1)));
            assert_eq!(frame.to_old(&frame.to_new(&f)), f);
        }
    }
}
