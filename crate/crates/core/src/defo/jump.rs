use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::family::DeformationFamily;
use super::obstruction::{obstruction_o1, ObstructionReport};
use crate::coeff::{GaussianRational, Point, Poly};
use crate::error::Error;
use crate::exterior::{deformed_coframe, has_errors, ScalarSpec, ScalarVectorForm, VectorForm};
use crate::linalg::{HodgeTable, ScalarMatrix};

/// Counts for one bidegree of a [`JumpTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumpRow {
    pub h0: usize,
    /// Rank of `o1: H^{p,q} -> H^{p,q+1}` at the point.
    pub first: usize,
    /// Rank of `o1: H^{p,q-1} -> H^{p,q}` at the point.
    pub second: usize,
    pub predicted: usize,
}

/// First-order prediction of the Hodge numbers near the central structure
/// in the direction of a point of the parameter space.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpTable {
    pub n: usize,
    pub point: Point,
    pub rows: BTreeMap<(usize, usize), JumpRow>,
}

impl JumpTable {
    pub const LABEL: &'static str = "first-order prediction";

    pub fn row(&self, p: usize, q: usize) -> JumpRow {
        self.rows[&(p, q)]
    }

    pub fn baseline(&self) -> HodgeTable {
        HodgeTable::from_numbers(self.n, self.rows.iter().map(|(k, r)| (*k, r.h0)).collect())
    }

    pub fn predicted(&self) -> HodgeTable {
        HodgeTable::from_numbers(self.n, self.rows.iter().map(|(k, r)| (*k, r.predicted)).collect())
    }
}

impl fmt::Display for JumpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} at {}", JumpTable::LABEL, self.point)?;
        writeln!(f, "{:>6} {:>4} {:>6} {:>7} {:>10}", "(p,q)", "h0", "first", "second", "predicted")?;
        for (p, q) in HodgeTable::standard_bidegrees(self.n) {
            let r = self.row(p, q);
            writeln!(f, "{:>6} {:>4} {:>6} {:>7} {:>10}", format!("({p},{q})"), r.h0, r.first, r.second, r.predicted)?;
        }
        Ok(())
    }
}

/// All first-order obstruction maps of a first-order deformation, indexed by
/// source bidegree.
pub fn obstruction_maps(spec: &ScalarSpec, psi1: &VectorForm<Poly>) -> Result<BTreeMap<(usize, usize), ObstructionReport>, Error> {
    let n = spec.dim();
    let mut out = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            out.insert((p, q), obstruction_o1(spec, psi1, p, q)?);
        }
    }
    Ok(out)
}

/// `predicted h^{p,q} = h^{p,q}(0) - rank o1 out of H^{p,q} - rank o1 into H^{p,q}`,
/// with ranks taken at `point`.
pub fn jump_report(spec: &ScalarSpec, psi1: &VectorForm<Poly>, point: &Point) -> Result<JumpTable, Error> {
    let n = spec.dim();
    let maps = obstruction_maps(spec, psi1)?;
    let mut ranks = BTreeMap::new();
    for (k, report) in &maps {
        ranks.insert(*k, report.rank_at(point)?);
    }
    let mut rows = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let h0 = maps[&(p, q)].source.len();
            let first = ranks[&(p, q)];
            let second = if q == 0 { 0 } else { ranks[&(p, q - 1)] };
            let predicted = h0
                .checked_sub(first + second)
                .ok_or_else(|| Error::Internal(format!("obstruction ranks exceed h^({p},{q})")))?;
            rows.insert((p, q), JumpRow { h0, first, second, predicted });
        }
    }
    Ok(JumpTable { n, point: point.clone(), rows })
}

/// Determinant of the frame `(g, conj g)` against `(phi, phibar)`; the
/// deformed structure is a complex structure exactly when it is nonzero.
pub fn coframe_determinant(psi: &ScalarVectorForm) -> Result<GaussianRational, Error> {
    let n = psi.dim();
    let table = psi.matrix();
    let mut m = ScalarMatrix::identity(2 * n);
    for i in 0..n {
        for l in 0..n {
            m.set(i, n + l, table[i][l].clone());
            m.set(n + i, l, table[i][l].conj());
        }
    }
    m.determinant()
}

/// Hodge numbers of the deformed structure at `point`, recomputed from its
/// structure equations.
pub fn oracle_hodge_at_point(family: &DeformationFamily, point: &Point) -> Result<HodgeTable, Error> {
    let psi = family.psi().eval(point)?;
    if coframe_determinant(&psi)?.is_zero() {
        return Err(Error::DegenerateCoframe(format!(
            "the deformed (1,0)-forms and their conjugates are dependent at {point}"
        )));
    }
    let deformed = deformed_coframe(family.spec(), &psi)?;
    if !deformed.is_integrable() {
        let (i, f) = deformed.defects().iter().enumerate().find(|(_, f)| !f.is_zero()).expect("some defect is nonzero");
        return Err(Error::NotIntegrable(format!("defect of g{} at {point}: {f}", i + 1)));
    }
    let diags = deformed.spec().validate();
    if has_errors(&diags) {
        return Err(Error::Internal(format!("deformed structure fails validation: {}", diags[0])));
    }
    HodgeTable::compute(deformed.spec())
}

/// [`oracle_hodge_at_point`] at `scale * point`.
pub fn oracle_along_ray(family: &DeformationFamily, point: &Point, scale: &GaussianRational) -> Result<HodgeTable, Error> {
    oracle_hodge_at_point(family, &point.scaled(scale))
}
