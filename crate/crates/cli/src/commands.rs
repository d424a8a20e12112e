use hodgejump::coeff::{parse_gaussian, GaussianRational, Point, Poly};
use hodgejump::defo::{
    frolicher_d1, jump_report, mc_extend, obstruction_o1, oracle_along_ray, parallelisable_witness, JumpTable, McOutcome,
};
use hodgejump::exterior::VectorForm;
use hodgejump::lab::{
    classify_first_class, classify_second_class, extend_step, h_dims, jump_accounting, reduce_to_primitive, FreeComplex, JetCochain, Step,
};
use hodgejump::linalg::{HodgeTable, Matrix, Vector};
use hodgejump::Error;
use serde_json::{json, Map, Value};

use crate::manifest::{parse_point, Loaded, Structure};
use crate::CliError;

/// Output of a command in both renderings. `breach` marks a report whose
/// internal cross-checks failed; it is printed and then exits with code 3.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub breach: Option<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, breach: None }
    }
}

pub fn key(p: usize, q: usize) -> String {
    format!("{p},{q}")
}

/// Right-aligned columns.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let width: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).chain([header[j].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| -> String {
        cells.iter().zip(&width).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header)];
    out.extend(rows.iter().map(|r| line(r)));
    out.join("\n") + "\n"
}

fn strings<S: ToString>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn vector(v: &[GaussianRational]) -> String {
    format!("({})", strings(v).join(", "))
}

fn matrix_json<R: hodgejump::coeff::Coeff + ToString>(m: &Matrix<R>) -> Value {
    json!((0..m.rows()).map(|i| strings(m.row(i))).collect::<Vec<_>>())
}

fn matrix_text<R: hodgejump::coeff::Coeff + ToString>(m: &Matrix<R>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("  ({} x {} zero matrix)\n", m.rows(), m.cols());
    }
    let header: Vec<String> = (0..m.cols()).map(|j| format!("[{j}]")).collect();
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| strings(m.row(i))).collect();
    table(&header, &rows).lines().map(|l| format!("  {l}\n")).collect()
}

fn point_json(p: &Point) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect())
}

fn deformation(s: &Structure) -> Result<&VectorForm<Poly>, CliError> {
    s.psi1
        .as_ref()
        .ok_or_else(|| CliError::Validation(format!("{}: manifest has no deformation", s.name)))
}

fn structure<'a>(loaded: &'a Loaded, command: &str) -> Result<&'a Structure, CliError> {
    match loaded {
        Loaded::Structure(s) => Ok(s),
        Loaded::Complex { name, .. } => Err(CliError::Usage(format!("`{command}` needs a lie-algebra manifest; {name} is a free complex"))),
    }
}

/// A named sample point of the manifest or explicit `name=value` pairs.
fn resolve_point(s: &Structure, text: &str) -> Result<Point, CliError> {
    let spelled = s.options.points.get(text).map_or(text, String::as_str);
    Ok(parse_point(&s.params, spelled)?)
}

pub fn validate(loaded: &Loaded) -> Result<Report, CliError> {
    match loaded {
        Loaded::Structure(s) => {
            let warnings: Vec<String> = s.spec.validate().iter().map(|d| d.to_string()).collect();
            let mut text = format!("ok: {} (lie-algebra, n = {})\n{}\n", s.name, s.spec.dim(), s.spec);
            if let Some(psi) = &s.psi1 {
                text += &format!("first-order deformation: {psi}\n");
            }
            for w in &warnings {
                text += &format!("{w}\n");
            }
            let json = json!({
                "name": s.name,
                "kind": "lie-algebra",
                "valid": true,
                "structure": s.spec.to_string(),
                "deformation": s.psi1.as_ref().map(|p| p.to_string()),
                "warnings": warnings,
            });
            Ok(Report::ok(text, json))
        }
        Loaded::Complex { name, complex } => {
            let text = format!("ok: {name} (free-complex, ranks {:?})\n", complex.ranks());
            Ok(Report::ok(text, json!({ "name": name, "kind": "free-complex", "valid": true, "ranks": complex.ranks() })))
        }
    }
}

pub fn hodge(loaded: &Loaded) -> Result<Report, CliError> {
    match loaded {
        Loaded::Structure(s) => {
            let t = HodgeTable::compute(&s.spec)?;
            Ok(hodge_report(&s.name, &t))
        }
        Loaded::Complex { name, complex } => {
            let dims = h_dims(complex)?;
            let rows: Vec<Vec<String>> =
                dims.iter().enumerate().map(|(q, h)| vec![format!("H^{q}"), h.at_zero.to_string(), h.generic.to_string()]).collect();
            let text = format!("cohomology of {name}\n{}", table(&strings(&["", "t=0", "generic"]), &rows));
            let json = json!({
                "name": name,
                "h": dims.iter().enumerate().map(|(q, h)| (q.to_string(), json!({"at_zero": h.at_zero, "generic": h.generic}))).collect::<Map<_, _>>(),
            });
            Ok(Report::ok(text, json))
        }
    }
}

pub fn hodge_report(name: &str, t: &HodgeTable) -> Report {
    let n = t.dim();
    let header: Vec<String> = std::iter::once(String::new()).chain((0..=n).map(|q| format!("q={q}"))).collect();
    let rows: Vec<Vec<String>> = (0..=n)
        .map(|p| std::iter::once(format!("p={p}")).chain((0..=n).map(|q| t.get(p, q).to_string())).collect())
        .collect();
    let bidegrees = HodgeTable::standard_bidegrees(n);
    let row_header: Vec<String> = bidegrees.iter().map(|(p, q)| format!("h{p}{q}")).collect();
    let text = format!(
        "Hodge numbers of {name} (n = {n})\n{}\n{}",
        table(&header, &rows),
        table(&row_header, &[strings(&t.standard_row())])
    );
    let json = json!({
        "name": name,
        "n": n,
        "hodge": t.numbers().iter().map(|((p, q), h)| (key(*p, *q), json!(h))).collect::<Map<_, _>>(),
        "row": t.standard_row(),
    });
    Report::ok(text, json)
}

pub fn obstruct(loaded: &Loaded, p: usize, q: usize, point: Option<&str>) -> Result<Report, CliError> {
    let s = structure(loaded, "obstruct")?;
    let n = s.spec.dim();
    if p > n || q > n {
        return Err(CliError::Usage(format!("bidegree ({p},{q}) out of range for n = {n}")));
    }
    let psi = deformation(s)?;
    let r = obstruction_o1(&s.spec, psi, p, q)?;
    let source = strings(&r.source.representatives());
    let target = r.target.as_ref().map_or_else(Vec::new, |t| strings(&t.representatives()));
    let generic = r.generic_rank()?;
    let mut text = format!(
        "o1: H^({p},{q}) -> H^({p},{}) of {}\nsource classes: [{}]\ntarget classes: [{}]\nmatrix (column k is o1 of source class k):\n{}generic rank: {generic}\n",
        q + 1,
        s.name,
        source.join(", "),
        target.join(", "),
        matrix_text(&r.matrix),
    );
    let mut json = json!({
        "name": s.name,
        "bidegree": key(p, q),
        "source": source,
        "target": target,
        "matrix": matrix_json(&r.matrix),
        "generic_rank": generic,
    });
    if let Some(text_point) = point {
        let pt = resolve_point(s, text_point)?;
        let at = r.matrix.eval(&pt)?;
        let rank = at.rank();
        text += &format!("at {pt}: rank {rank}\n{}", matrix_text(&at));
        json["point"] = point_json(&pt);
        json["rank_at_point"] = json!(rank);
        json["matrix_at_point"] = matrix_json(&at);
    }
    Ok(Report::ok(text, json))
}

fn family_order(s: &Structure, order: Option<u32>) -> u32 {
    order.or(s.options.order).unwrap_or(2)
}

pub fn mc(loaded: &Loaded, order: Option<u32>) -> Result<Report, CliError> {
    let s = structure(loaded, "mc")?;
    let psi = deformation(s)?;
    let order = family_order(s, order);
    match mc_extend(&s.spec, psi, &s.params, order)? {
        McOutcome::Family(f) => {
            let terms: Vec<(u32, String)> = (1..=order).map(|k| (k, f.psi().homogeneous_part(k).to_string())).collect();
            let mut text = format!("Maurer-Cartan extension of {} to order {order}\n", s.name);
            for (k, t) in &terms {
                text += &format!("psi_{k} = {t}\n");
            }
            text += &format!("integrable modulo degree {}\n", order + 1);
            let json = json!({
                "name": s.name,
                "order": order,
                "status": "integrable",
                "terms": terms.iter().map(|(k, t)| (k.to_string(), json!(t))).collect::<Map<_, _>>(),
            });
            Ok(Report::ok(text, json))
        }
        McOutcome::Obstructed { order: k, monomial, defect } => {
            let defect = strings(&defect);
            let text = format!(
                "Maurer-Cartan extension of {} is obstructed at order {k} (parameter monomial {monomial})\ndefect: [{}]\n",
                s.name,
                defect.join(", ")
            );
            let json = json!({ "name": s.name, "order": order, "status": "obstructed", "obstructed_order": k, "monomial": monomial, "defect": defect });
            Ok(Report::ok(text, json))
        }
    }
}

pub fn jump(loaded: &Loaded, point: &str, scale: Option<&str>) -> Result<Report, CliError> {
    let s = structure(loaded, "jump")?;
    let psi = deformation(s)?;
    let pt = resolve_point(s, point)?;
    let scale_text = scale.map(str::to_string).or_else(|| s.options.ray_scale.clone()).unwrap_or_else(|| "1/2".to_string());
    let scale = parse_gaussian(&scale_text)?;
    let table_data = jump_report(&s.spec, psi, &pt)?;
    let order = family_order(s, None);
    let oracle = match mc_extend(&s.spec, psi, &s.params, order)? {
        McOutcome::Family(f) => oracle_along_ray(&f, &pt, &scale),
        McOutcome::Obstructed { order, .. } => Err(Error::NotIntegrable(format!("family obstructed at order {order}"))),
    };
    Ok(jump_render(&s.name, &table_data, &scale_text, oracle))
}

fn jump_render(name: &str, t: &JumpTable, scale: &str, oracle: Result<HodgeTable, Error>) -> Report {
    let n = t.n;
    let header = strings(&["(p,q)", "h0", "first", "second", "predicted", "oracle"]);
    let mut rows = Vec::new();
    let mut json_rows = Map::new();
    for (p, q) in HodgeTable::standard_bidegrees(n) {
        let r = t.row(p, q);
        let o = oracle.as_ref().ok().map(|o| o.get(p, q));
        rows.push(vec![
            format!("({p},{q})"),
            r.h0.to_string(),
            r.first.to_string(),
            r.second.to_string(),
            r.predicted.to_string(),
            o.map_or("-".to_string(), |x| x.to_string()),
        ]);
        json_rows.insert(key(p, q), json!({"h0": r.h0, "first": r.first, "second": r.second, "predicted": r.predicted, "oracle": o}));
    }
    let agrees = oracle.as_ref().ok().map(|o| HodgeTable::standard_bidegrees(n).iter().all(|&(p, q)| o.get(p, q) == t.row(p, q).predicted));
    let oracle_line = match (&oracle, agrees) {
        (Ok(_), Some(true)) => format!("oracle (structure at scale {scale} along the ray) agrees with the prediction"),
        (Ok(_), _) => format!("oracle (structure at scale {scale} along the ray) DIFFERS from the first-order prediction"),
        (Err(e), _) => format!("oracle unavailable: {e}"),
    };
    let text = format!(
        "{} for {name} at {}\n{}{oracle_line}\nprediction: {}\n",
        JumpTable::LABEL,
        t.point,
        table(&header, &rows),
        strings(&t.predicted().standard_row()).join(" ")
    );
    let json = json!({
        "name": name,
        "label": JumpTable::LABEL,
        "point": point_json(&t.point),
        "scale": scale,
        "rows": json_rows,
        "predicted": t.predicted().standard_row(),
        "oracle": oracle.as_ref().ok().map(|o| o.standard_row()),
        "oracle_error": oracle.as_ref().err().map(|e| e.to_string()),
        "agrees": agrees,
    });
    Report::ok(text, json)
}

pub fn d1(loaded: &Loaded) -> Result<Report, CliError> {
    let s = structure(loaded, "d1")?;
    let n = s.spec.dim();
    let mut rows = Vec::new();
    let mut json_rows = Map::new();
    let mut detail = String::new();
    for p in 0..n {
        for q in 0..=n {
            let m = frolicher_d1(&s.spec, p, q)?;
            let rank = m.rank();
            rows.push(vec![format!("({p},{q}) -> ({},{q})", p + 1), rank.to_string()]);
            if rank > 0 {
                detail += &format!("d1 on H^({p},{q}):\n{}", matrix_text(&m));
            }
            json_rows.insert(key(p, q), json!({"rank": rank, "matrix": matrix_json(&m)}));
        }
    }
    let text = format!("Frolicher d1 of {}\n{}{detail}", s.name, table(&strings(&["map", "rank"]), &rows));
    Ok(Report::ok(text, json!({"name": s.name, "d1": json_rows})))
}

pub fn witness(loaded: &Loaded) -> Result<Report, CliError> {
    let s = structure(loaded, "witness")?;
    match parallelisable_witness(&s.spec)? {
        Some(w) => {
            let text = format!(
                "{}: o1(f{}) along theta{} (x) c{} is {} and is not dbar-exact\n",
                s.name, w.i, w.k, w.j, w.obstruction
            );
            let json = json!({"name": s.name, "witness": {"k": w.k, "j": w.j, "i": w.i, "obstruction": w.obstruction.to_string()}});
            Ok(Report::ok(text, json))
        }
        None => Ok(Report::ok(format!("{}: del vanishes on every generator; no witness\n", s.name), json!({"name": s.name, "witness": null}))),
    }
}

/// Greedy extension of a class until the first obstruction.
fn first_obstruction(c: &FreeComplex, alpha: JetCochain, bound: u32) -> Result<Option<(JetCochain, u32)>, Error> {
    let mut a = alpha;
    for n in 1..=bound {
        match extend_step(c, &a, n)? {
            Step::Extended(next) => a = next,
            Step::Obstructed(_) => return Ok(Some((a, n))),
        }
    }
    Ok(None)
}

fn vectors(vs: &[Vector]) -> Vec<String> {
    vs.iter().map(|v| vector(v)).collect()
}

pub fn lab(loaded: &Loaded, only: Option<usize>) -> Result<Report, CliError> {
    let (name, c) = match loaded {
        Loaded::Complex { name, complex } => (name, complex),
        Loaded::Structure(s) => return Err(CliError::Usage(format!("`lab` needs a free-complex manifest; {} is a lie algebra", s.name))),
    };
    let degrees: Vec<usize> = match only {
        Some(q) if q >= c.len() => return Err(CliError::Usage(format!("degree {q} out of range 0..{}", c.len()))),
        Some(q) => vec![q],
        None => (0..c.len()).collect(),
    };
    let order = c.order_bound();
    let mut text = format!("lab report for {name}: ranks {:?}, order bound {order}\n", c.ranks());
    let mut json_degrees = Map::new();
    let mut breaches = Vec::new();
    for q in degrees {
        let acc = jump_accounting(c, q)?;
        let h = c.cohomology_at_zero(q)?;
        let first = classify_first_class(c, q, order)?;
        text += &format!("{acc}\n");
        text += &format!("  first-class obstructed: [{}]\n", vectors(&first.obstructed).join(", "));
        let mut j = json!({
            "h0": acc.h0,
            "h_generic": acc.h_generic,
            "kernel_drop": acc.kernel_drop,
            "image_rise": acc.image_rise,
            "first_class": acc.first_class,
            "second_class": acc.second_class,
            "second_class_jets": acc.second_class_jets,
            "order": acc.order,
            "consistent": acc.consistent(),
            "first_class_basis": vectors(&first.obstructed),
        });
        if q > 0 {
            let second = classify_second_class(c, q, order)?;
            text += &format!("  second-class obstructed: [{}]", vectors(&second.saturation.basis).join(", "));
            text += if second.agree() { " (methods agree)\n" } else { " (METHODS DISAGREE)\n" };
            j["second_class_basis"] = json!(vectors(&second.saturation.basis));
            j["second_class_jets_basis"] = json!(vectors(&second.jet_search.basis));
            j["methods_agree"] = json!(second.agree());
            if !second.agree() {
                breaches.push(format!("H^{q}: second-class methods disagree"));
            }
        }
        let mut reductions = Vec::new();
        for coords in &first.obstructed {
            let alpha = JetCochain::constant(c, q, &h.lift(coords))?;
            if let Some((a, n)) = first_obstruction(c, alpha, order)? {
                let prim = reduce_to_primitive(c, &a, n)?;
                text += &format!(
                    "  class {}: obstructed at order {n}; primitive order {} via {}\n",
                    vector(coords),
                    prim.n,
                    prim.alpha
                );
                reductions.push(json!({"class": vector(coords), "order": n, "primitive_order": prim.n, "primitive": prim.alpha.to_string()}));
            }
        }
        j["obstructions"] = json!(reductions);
        if !acc.consistent() {
            breaches.push(format!("H^{q}: accounting mismatch ({acc})"));
        }
        json_degrees.insert(q.to_string(), j);
    }
    let breach = if breaches.is_empty() { None } else { Some(breaches.join("; ")) };
    Ok(Report { text, json: json!({"name": name, "order_bound": order, "degrees": json_degrees}), breach })
}
