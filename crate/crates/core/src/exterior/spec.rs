use std::fmt;

use super::form::{InvariantForm, ScalarForm};
use super::monomial::{self, Mask};
use crate::coeff::{Coeff, Evaluate, GaussianRational, Point};
use crate::error::Error;

/// Structure equations of a Lie algebra with complex structure, in a frame
/// `g_1..g_n` spanning the (1,0)-forms completed by `h_1..h_n`.
///
/// `d(g_k)` and `d(h_k)` are stored as 2-forms in the same frame. For a
/// structure given by constants, `h_k = phibar_k` and `d(h_k)` is the
/// conjugate of `d(g_k)`; deformed structures use `h_k = phibar_k` while
/// `g_k` moves, so `d(h_k)` is no longer a conjugate.
#[derive(Clone, PartialEq)]
pub struct ComplexStructureSpec<R> {
    n: usize,
    dgen: Vec<InvariantForm<R>>,
}

pub type ScalarSpec = ComplexStructureSpec<GaussianRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Generator the finding is about, rendered as `f3` or `c2`.
    pub generator: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match &self.generator {
            Some(g) => write!(f, "{tag}: d({g}): {}", self.message),
            None => write!(f, "{tag}: {}", self.message),
        }
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}

fn generator_name(n: usize, k: usize) -> String {
    monomial::render(1 << k, n)
}

impl<R: Coeff> ComplexStructureSpec<R> {
    /// Structure from the differentials of all `2n` frame generators.
    pub fn from_frame(n: usize, dgen: Vec<InvariantForm<R>>) -> Result<Self, Error> {
        if dgen.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!("expected {} generator differentials, got {}", 2 * n, dgen.len())));
        }
        for (k, f) in dgen.iter().enumerate() {
            if f.dim() != n {
                return Err(Error::SpecMismatch(format!("d({}) lives in dimension {}", generator_name(n, k), f.dim())));
            }
            if !f.is_zero() && f.degree() != Some(2) {
                return Err(Error::Invalid(format!("d({}) is not a 2-form", generator_name(n, k))));
            }
        }
        Ok(ComplexStructureSpec { n, dgen })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `d` of the `k`-th generator (0-based over all `2n`).
    pub fn dgen(&self, k: usize) -> &InvariantForm<R> {
        &self.dgen[k]
    }

    pub fn generator_differentials(&self) -> &[InvariantForm<R>] {
        &self.dgen
    }

    fn check(&self, form: &InvariantForm<R>) -> Result<(), Error> {
        if form.dim() != self.n {
            return Err(Error::SpecMismatch(format!("form on dimension {} used with structure of dimension {}", form.dim(), self.n)));
        }
        Ok(())
    }

    /// `d` of a basis monomial (graded Leibniz rule over its factors).
    pub fn d_monomial(&self, mask: Mask) -> InvariantForm<R> {
        let n = self.n;
        let idx = monomial::indices(mask);
        let mut out = InvariantForm::zero(n);
        for (s, &k) in idx.iter().enumerate() {
            let prefix = monomial::from_indices(&idx[..s]);
            let suffix = monomial::from_indices(&idx[s + 1..]);
            let sign = if s % 2 == 0 { R::one() } else { R::one().neg() };
            let term = InvariantForm::monomial(n, prefix, sign)
                .wedge(&self.dgen[k])
                .wedge(&InvariantForm::monomial(n, suffix, R::one()));
            out = out.add(&term);
        }
        out
    }

    pub fn try_d(&self, form: &InvariantForm<R>) -> Result<InvariantForm<R>, Error> {
        self.check(form)?;
        let mut out = InvariantForm::zero(self.n);
        for (m, c) in form.terms() {
            out = out.add(&self.d_monomial(*m).mul_coeff(c));
        }
        Ok(out)
    }

    pub fn d(&self, form: &InvariantForm<R>) -> InvariantForm<R> {
        self.try_d(form).expect("form and structure dimensions differ")
    }

    /// `(del, delbar)`: the `(p+1, q)` and `(p, q+1)` parts of `d`, taken
    /// term by term so mixed-bidegree inputs are split consistently.
    pub fn try_differential(&self, form: &InvariantForm<R>) -> Result<(InvariantForm<R>, InvariantForm<R>), Error> {
        self.check(form)?;
        let n = self.n;
        let mut del = InvariantForm::zero(n);
        let mut delbar = InvariantForm::zero(n);
        for (m, c) in form.terms() {
            let (p, q) = monomial::bidegree(*m, n);
            let dm = self.d_monomial(*m).mul_coeff(c);
            del = del.add(&dm.component(p + 1, q));
            delbar = delbar.add(&dm.component(p, q + 1));
        }
        Ok((del, delbar))
    }

    pub fn differential(&self, form: &InvariantForm<R>) -> (InvariantForm<R>, InvariantForm<R>) {
        self.try_differential(form).expect("form and structure dimensions differ")
    }

    pub fn del(&self, form: &InvariantForm<R>) -> InvariantForm<R> {
        self.differential(form).0
    }

    pub fn delbar(&self, form: &InvariantForm<R>) -> InvariantForm<R> {
        self.differential(form).1
    }

    /// True when every `d(g_k)` is of type (2,0): the structure is complex parallelisable.
    pub fn is_parallelisable(&self) -> bool {
        (0..self.n).all(|k| {
            let dk = &self.dgen[k];
            dk.component(1, 1).is_zero() && dk.component(0, 2).is_zero()
        })
    }

    /// Checks `d^2 = 0` on every generator, integrability (no (0,2) part in
    /// `d(g_k)`) and the nilpotent shape (`d(g_k)` only involves generators of
    /// index below `k`). The last is reported as a warning.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let n = self.n;
        let mut out = Vec::new();
        for k in 0..2 * n {
            let name = generator_name(n, k);
            let dd = self.d(&self.dgen[k]);
            if !dd.is_zero() {
                out.push(Diagnostic {
                    severity: Severity::Error,
                    generator: Some(name.clone()),
                    message: format!("d^2 = {dd} is not zero"),
                });
            }
            if k < n {
                let defect = self.dgen[k].component(0, 2);
                if !defect.is_zero() {
                    out.push(Diagnostic {
                        severity: Severity::Error,
                        generator: Some(name.clone()),
                        message: format!("has (0,2) part {defect}; the structure is not integrable"),
                    });
                }
                let allowed: Mask = (0..k).fold(0, |m, i| m | monomial::holomorphic_bit(i) | monomial::antiholomorphic_bit(n, i));
                if self.dgen[k].terms().any(|(m, _)| m & !allowed != 0) {
                    out.push(Diagnostic {
                        severity: Severity::Warning,
                        generator: Some(name),
                        message: "involves a generator of index >= its own; the structure is not nilpotent in this frame".to_string(),
                    });
                }
            }
        }
        out
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> ComplexStructureSpec<S> {
        ComplexStructureSpec { n: self.n, dgen: self.dgen.iter().map(|g| g.map_coeffs(&f)).collect() }
    }

    /// The same structure with scalar constants lifted into `S`.
    pub fn lift<S: Coeff>(spec: &ScalarSpec) -> ComplexStructureSpec<S> {
        spec.map_coeffs(S::from_scalar)
    }
}

impl<R: Coeff + Evaluate> ComplexStructureSpec<R> {
    pub fn eval(&self, point: &Point) -> Result<ScalarSpec, Error> {
        let dgen = self.dgen.iter().map(|g| g.eval(point)).collect::<Result<Vec<_>, _>>()?;
        Ok(ComplexStructureSpec { n: self.n, dgen })
    }
}

impl ScalarSpec {
    /// Structure from `d(phi_k)` for `k = 1..n`; `d(phibar_k)` is the conjugate.
    /// Each `d(phi_k)` must be a combination of `phi_i^phi_j` and `phi_i^phibar_j`.
    pub fn from_holomorphic(n: usize, dphi: Vec<ScalarForm>) -> Result<Self, Error> {
        if dphi.len() != n {
            return Err(Error::DimensionMismatch(format!("expected {n} differentials, got {}", dphi.len())));
        }
        for (k, f) in dphi.iter().enumerate() {
            if !f.component(0, 2).is_zero() {
                return Err(Error::Invalid(format!("d(f{}) has a (0,2) component", k + 1)));
            }
        }
        let conj: Vec<ScalarForm> = dphi.iter().map(|f| f.conjugate()).collect();
        let mut dgen = dphi;
        dgen.extend(conj);
        ComplexStructureSpec::from_frame(n, dgen)
    }

    /// Structure from constants `(k, mask, c)`: `d(phi_k) += c * mono(mask)`, `k` 1-based.
    pub fn from_constants(n: usize, entries: &[(usize, Mask, GaussianRational)]) -> Result<Self, Error> {
        let mut dphi = vec![ScalarForm::zero(n); n];
        for (k, mask, c) in entries {
            if *k == 0 || *k > n {
                return Err(Error::Invalid(format!("generator index {k} out of range 1..={n}")));
            }
            dphi[k - 1] = dphi[k - 1].add(&ScalarForm::monomial(n, *mask, c.clone()));
        }
        ScalarSpec::from_holomorphic(n, dphi)
    }

    /// Abelian structure: all differentials vanish.
    pub fn torus(n: usize) -> Self {
        ScalarSpec::from_holomorphic(n, vec![ScalarForm::zero(n); n]).expect("torus structure is well formed")
    }

    /// Complex Heisenberg algebra: `d(phi_1) = d(phi_2) = 0`, `d(phi_3) = -phi_1^phi_2`.
    pub fn iwasawa() -> Self {
        let n = 3;
        let d3 = ScalarForm::phi(n, 1).wedge(&ScalarForm::phi(n, 2)).neg();
        ScalarSpec::from_holomorphic(n, vec![ScalarForm::zero(n), ScalarForm::zero(n), d3]).expect("Iwasawa structure is well formed")
    }

    /// `d(phi_k)` split into `A` (type (2,0)) and `B` (type (1,1)) entries,
    /// `k` 1-based, masks as stored.
    pub fn structure_constants(&self) -> Vec<(usize, Mask, GaussianRational)> {
        let mut out = Vec::new();
        for k in 0..self.n {
            for (m, c) in self.dgen[k].terms() {
                out.push((k + 1, *m, c.clone()));
            }
        }
        out
    }

    /// True when `d(h_k)` is the conjugate of `d(g_k)` for all `k`.
    pub fn is_real_frame(&self) -> bool {
        (0..self.n).all(|k| self.dgen[k].conjugate() == self.dgen[self.n + k])
    }
}

impl<R: Coeff> fmt::Display for ComplexStructureSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let parts: Vec<String> = (0..n)
            .filter(|k| !self.dgen[*k].is_zero())
            .map(|k| format!("d{} = {}", generator_name(n, k), self.dgen[k]))
            .collect();
        if parts.is_empty() {
            write!(f, "abelian (n = {n})")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

impl<R: Coeff> fmt::Debug for ComplexStructureSpec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexStructureSpec").field("n", &self.n).field("dgen", &self.dgen).finish()
    }
}

impl<R: Coeff> ComplexStructureSpec<R> {
    /// Every generator has zero differential.
    pub fn is_abelian(&self) -> bool {
        self.dgen.iter().all(|g| g.is_zero())
    }
}
