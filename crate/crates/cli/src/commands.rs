use dhoa::fock::verify_ladder;
use dhoa::symmetry::Target;
use dhoa::{
    build_rep, build_rep_from_phi, coefficients, ground_state_table, hermiticity_defect, spectrum,
    verify_gh_relation, verify_heisenberg, verify_ratio_recursions, DeformationParams,
    DegeneracySearch, Family, FamilyId, SfKind, StructureFunction,
};
use serde_json::{json, Map, Value};

use crate::args::{Command, GlobalOpts, Kind};
use crate::report::{Report, Table};

pub const FIG1_Q: f64 = 1.015;
pub const FIG1_N_MAX: usize = 100;
const FIG1_FAMILIES: [(Family, &str); 3] =
    [(Family::A, "SF1"), (Family::B, "SF2"), (Family::C, "SF3")];

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(dhoa::Error),
}

impl From<dhoa::Error> for Failure {
    fn from(e: dhoa::Error) -> Self {
        Failure::Domain(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

pub fn run(command: &Command, opts: &GlobalOpts) -> Result<Report, Failure> {
    match command {
        Command::Dsf { fig1: true, .. } => fig1(),
        Command::Dsf { fig1: false, kind } => dsf(opts, kind.unwrap_or(Kind::Closed)),
        Command::Spectrum { ground_state: true } => ground_state(require_q(opts)?),
        Command::Spectrum {
            ground_state: false,
        } => energies(opts),
        Command::Verify { perturb } => verify(opts, *perturb),
        Command::Degeneracy { n, m, q_range } => degeneracy(opts, *n, *m, *q_range),
    }
}

fn require_q(opts: &GlobalOpts) -> Result<f64, Failure> {
    opts.q
        .ok_or_else(|| Failure::Usage("--q is required for this command".into()))
}

fn params(opts: &GlobalOpts) -> Result<DeformationParams, Failure> {
    let params = DeformationParams::from_options(require_q(opts)?, opts.p)?;
    FamilyId::new(opts.family).check(&params)?;
    Ok(params)
}

fn header(opts: &GlobalOpts, params: &DeformationParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("family".into(), json!(opts.family.name()));
    m.insert("q".into(), json!(params.q()));
    m.insert("p".into(), json!(params.p()));
    m
}

pub fn fig1() -> Result<Report, Failure> {
    let params = DeformationParams::new(FIG1_Q)?;
    let columns = FIG1_FAMILIES
        .iter()
        .map(|&(f, _)| {
            StructureFunction::new(f.into(), params, SfKind::ClosedForm)?.values(FIG1_N_MAX)
        })
        .collect::<dhoa::Result<Vec<_>>>()?;

    let mut table = Table::new(vec!["n", "SF1", "SF2", "SF3"]);
    let mut rows = Vec::new();
    for n in 0..=FIG1_N_MAX {
        let mut row = vec![n.into()];
        let mut obj = Map::new();
        obj.insert("n".into(), json!(n));
        for (col, &(_, name)) in columns.iter().zip(&FIG1_FAMILIES) {
            row.push(col[n].into());
            obj.insert(name.into(), json!(col[n]));
        }
        table.push(row);
        rows.push(Value::Object(obj));
    }
    let legend: Map<String, Value> = FIG1_FAMILIES
        .iter()
        .map(|&(f, name)| (name.to_owned(), json!(f.name())))
        .collect();
    let json = json!({ "q": FIG1_Q, "n_max": FIG1_N_MAX, "columns": legend, "rows": rows });
    Ok(Report::new(table, json))
}

fn dsf(opts: &GlobalOpts, kind: Kind) -> Result<Report, Failure> {
    let params = params(opts)?;
    let sf_kind = match kind {
        Kind::Closed => SfKind::ClosedForm,
        Kind::Recipe => SfKind::Recipe,
        Kind::Symmetrized => SfKind::Symmetrized,
    };
    let values = StructureFunction::new(opts.family.into(), params, sf_kind)?.values(opts.n_max)?;

    let mut table = Table::new(vec!["n", "phi"]);
    for (n, &v) in values.iter().enumerate() {
        table.push(vec![n.into(), v.into()]);
    }
    let mut json = header(opts, &params);
    json.insert("kind".into(), json!(sf_kind));
    json.insert(
        "rows".into(),
        values
            .iter()
            .enumerate()
            .map(|(n, v)| json!({ "n": n, "phi": v }))
            .collect(),
    );
    Ok(Report::new(table, Value::Object(json)))
}

fn ground_state_json(q: f64) -> Result<Value, Failure> {
    let values = ground_state_table(q)?;
    let map: Map<String, Value> = Family::ONE_PARAMETER
        .iter()
        .zip(values)
        .map(|(f, v)| (f.name().to_owned(), json!(v)))
        .collect();
    Ok(Value::Object(map))
}

fn ground_state(q: f64) -> Result<Report, Failure> {
    let values = ground_state_table(q)?;
    let mut table = Table::new(vec!["family", "energy"]);
    for (f, v) in Family::ONE_PARAMETER.iter().zip(values) {
        table.push(vec![f.name().into(), v.into()]);
    }
    let json = json!({ "q": q, "ground_state": ground_state_json(q)? });
    Ok(Report::new(table, json))
}

fn energies(opts: &GlobalOpts) -> Result<Report, Failure> {
    let params = params(opts)?;
    let report = spectrum(opts.family.into(), &params, opts.n_max)?;

    let mut table = Table::new(vec!["n", "energy"]);
    for &(n, e) in &report.energies {
        table.push(vec![n.into(), e.into()]);
    }
    let mut json = header(opts, &params);
    json.insert(
        "energies".into(),
        report
            .energies
            .iter()
            .map(|&(n, e)| json!({ "n": n, "energy": e }))
            .collect(),
    );
    if !opts.family.is_two_parameter() {
        json.insert("ground_state".into(), ground_state_json(params.q())?);
    }
    Ok(Report::new(table, Value::Object(json)))
}

fn verify(opts: &GlobalOpts, perturb: Option<f64>) -> Result<Report, Failure> {
    let params = params(opts)?;
    let family = FamilyId::new(opts.family);
    let mut rep = build_rep(family, &params, opts.dim)?;
    if let Some(eps) = perturb {
        let phi: Vec<f64> = rep.phi.iter().map(|v| v * (1.0 + eps)).collect();
        rep = build_rep_from_phi(family, &params, phi)?;
    }

    let heisenberg = verify_heisenberg(&rep);
    let gh = verify_gh_relation(&rep, &rep.gh_pair()?);
    let ladder = verify_ladder(&rep);
    let ratio = verify_ratio_recursions(&coefficients(family, &params)?, opts.dim);
    let core = [
        ("heisenberg", heisenberg.trusted),
        ("gh_relation", gh.trusted),
        ("ladder", ladder.trusted),
        ("ratio_recursions", ratio),
    ];
    let info = [
        ("heisenberg_boundary", heisenberg.boundary),
        ("gh_relation_boundary", gh.boundary),
        ("ladder_boundary", ladder.boundary),
        ("hermiticity_defect_x", hermiticity_defect(&rep, Target::X)),
        ("hermiticity_defect_p", hermiticity_defect(&rep, Target::P)),
    ];

    // NaN never passes.
    let failures: Vec<String> = core
        .iter()
        .filter(|(_, r)| r.is_nan() || *r > opts.tol)
        .map(|(k, _)| (*k).to_owned())
        .collect();

    let mut table = Table::new(vec!["identity", "residual", "status"]);
    let mut json = Map::new();
    for (name, r) in core {
        let status = if failures.iter().any(|f| f == name) {
            "fail"
        } else {
            "pass"
        };
        table.push(vec![name.into(), r.into(), status.into()]);
        json.insert(name.into(), json!(r));
    }
    for (name, r) in info {
        table.push(vec![name.into(), r.into(), "info".into()]);
        json.insert(name.into(), json!(r));
    }

    let mut meta = header(opts, &params);
    meta.insert("dim".into(), json!(rep.dim));
    meta.insert("trusted".into(), json!(rep.trusted));
    meta.insert("tol".into(), json!(opts.tol));
    meta.insert("passed".into(), json!(failures.is_empty()));
    meta.insert("failed".into(), json!(failures));
    json.insert("metadata".into(), Value::Object(meta));

    let mut report = Report::new(table, Value::Object(json));
    report.failures = failures;
    Ok(report)
}

fn degeneracy(
    opts: &GlobalOpts,
    n: usize,
    m: usize,
    (lo, hi): (f64, f64),
) -> Result<Report, Failure> {
    let roots = DegeneracySearch::new(opts.family.into(), n, m, lo, hi)
        .tol(opts.tol)
        .solve()?;

    let mut table = Table::new(vec!["n", "m", "q_star", "residual", "q_lo", "q_hi"]);
    for r in &roots {
        table.push(vec![
            r.n.into(),
            r.m.into(),
            r.q_star.into(),
            r.residual.into(),
            r.bracket.0.into(),
            r.bracket.1.into(),
        ]);
    }
    let json = json!({
        "family": opts.family.name(),
        "n": n,
        "m": m,
        "q_range": [lo, hi],
        "tol": opts.tol,
        "roots": roots
            .iter()
            .map(|r| json!({
                "q_star": r.q_star,
                "residual": r.residual,
                "q_lo": r.bracket.0,
                "q_hi": r.bracket.1,
            }))
            .collect::<Vec<_>>(),
    });
    Ok(Report::new(table, json))
}
