//! One end-to-end computation as requested from the command line: parse
//! inputs, run the pipeline stages, render text, JSON or DOT.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frobenius::{brute_force_frobenius, frobenius_with, sequence_report_with, ScanOptions};
use crate::lattice::{LatticeBasis, LatticePoint, WeightVector};
use crate::module::{Analysis, GeneratorClassification};
use crate::poset::{module_poset, structure_poset, ModulePoset, StructurePoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Basis,
    Ideal,
    Ball,
    Module,
    Poset,
    Frobenius,
    Sequence,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub weights: WeightVector,
    /// Sublattice basis inside the kernel of `weights`; the full kernel if absent.
    pub basis: Option<Vec<LatticePoint>>,
    pub command: Command,
    pub k: usize,
    pub k_max: usize,
    pub format: Format,
    pub scan: ScanOptions,
}

impl JobSpec {
    pub fn new(weights: WeightVector, command: Command) -> Self {
        Self {
            weights,
            basis: None,
            command,
            k: 1,
            k_max: 6,
            format: Format::Text,
            scan: ScanOptions::default(),
        }
    }
}

/// Rendered output plus the pipeline stages that ran, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobOutput {
    pub text: String,
    pub stages: Vec<&'static str>,
}

/// A failed job with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow(_) | Error::ScanCapExceeded(_) => 4,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

impl std::fmt::Display for JobError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_OVERFLOW: i32 = 4;

/// Parses `c1,c2,…` into a weight vector.
pub fn parse_weights(s: &str) -> Result<WeightVector> {
    let a = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("weight '{t}'"))))
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(a)
}

/// One integer vector per nonblank line, entries separated by whitespace.
pub fn parse_basis_text(text: &str) -> Result<Vec<LatticePoint>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("basis entry '{t}'"))))
                .collect::<Result<Vec<_>>>()
                .map(LatticePoint::from)
        })
        .collect()
}

struct Run {
    stages: Vec<&'static str>,
}

impl Run {
    fn stage(&mut self, name: &'static str) {
        self.stages.push(name);
    }
}

pub fn run(spec: &JobSpec) -> std::result::Result<JobOutput, JobError> {
    if spec.k == 0 || spec.k_max == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()).into());
    }
    if spec.format == Format::Dot && spec.command != Command::Poset {
        return Err(Error::InvalidArgument("dot output is only available for poset".into()).into());
    }
    let mut r = Run { stages: Vec::new() };
    r.stage("lattice-basis");
    let basis = match &spec.basis {
        Some(v) => LatticeBasis::new(spec.weights.clone(), v.clone())?,
        None => LatticeBasis::kernel(spec.weights.clone())?,
    };
    let json = spec.format == Format::Json;
    let text = match spec.command {
        Command::Basis => basis_cmd(&basis, json),
        Command::Ideal => ideal_cmd(&mut r, &basis, json)?,
        Command::Ball => ball_cmd(&mut r, &basis, spec.k, json)?,
        Command::Module => module_cmd(&mut r, &basis, spec.k, json)?,
        Command::Poset => poset_cmd(&mut r, &basis, spec.k, spec.format)?,
        Command::Frobenius => frobenius_cmd(&mut r, &basis, spec, json)?,
        Command::Sequence => sequence_cmd(&mut r, &basis, spec, json)?,
        Command::Verify => return verify_cmd(r, &basis, spec.k_max, json),
    };
    Ok(JobOutput { text, stages: r.stages })
}

fn render(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn a_json(basis: &LatticeBasis) -> Value {
    json!(basis.weight().as_slice())
}

fn basis_cmd(basis: &LatticeBasis, json: bool) -> String {
    if json {
        return render(json!({
            "a": a_json(basis),
            "basis": basis.vectors(),
            "index": basis.sublattice_index(),
            "torsion_moduli": basis.moduli(),
        }));
    }
    let mut s = format!("lattice in the kernel of {}\n", basis.weight());
    for v in basis.vectors() {
        let _ = writeln!(s, "  {v}");
    }
    let _ = writeln!(s, "index {}", basis.sublattice_index());
    s
}

fn analysis(r: &mut Run, basis: &LatticeBasis, k_max: usize) -> Result<Analysis> {
    r.stage("markov-basis");
    r.stage("count-table");
    Analysis::new(basis, k_max)
}

fn ideal_cmd(r: &mut Run, basis: &LatticeBasis, json: bool) -> Result<String> {
    r.stage("markov-basis");
    let mb = crate::ideal::lattice_ideal(basis)?;
    if json {
        return Ok(render(json!({ "a": a_json(basis), "markov": mb.elements })));
    }
    let mut s = String::new();
    for b in &mb.elements {
        let _ = writeln!(s, "{b}");
    }
    Ok(s)
}

fn ball_cmd(r: &mut Run, basis: &LatticeBasis, k: usize, json: bool) -> Result<String> {
    r.stage("markov-basis");
    let mb = crate::ideal::lattice_ideal(basis)?;
    r.stage("ball");
    let ball = crate::neighbourhood::ball(&crate::neighbourhood::moves(&mb)?, k);
    if json {
        let pts: Vec<Value> =
            ball.points.iter().map(|p| json!({ "point": p, "distance": ball.distance[p] })).collect();
        return Ok(render(json!({ "a": a_json(basis), "k": k, "ball": pts })));
    }
    let mut s = String::new();
    for p in &ball.points {
        let _ = writeln!(s, "{p} {}", ball.distance[p]);
    }
    Ok(s)
}

/// Cover relations of a module poset's labels under the induced order.
fn induced_hasse(sp: &StructurePoset, mp: &ModulePoset) -> Vec<(usize, usize)> {
    let idx: Vec<usize> = mp.labels.iter().map(|c| sp.position(c).expect("label in poset")).collect();
    let mut out = Vec::new();
    for (x, &i) in idx.iter().enumerate() {
        for (y, &j) in idx.iter().enumerate() {
            if i != j
                && sp.leq_at(i, j)
                && !idx.iter().any(|&m| m != i && m != j && sp.leq_at(i, m) && sp.leq_at(m, j))
            {
                out.push((x, y));
            }
        }
    }
    out
}

fn poset_json(sp: &StructurePoset, mp: &ModulePoset) -> Value {
    let hasse: Vec<Value> =
        induced_hasse(sp, mp).into_iter().map(|(x, y)| json!([mp.labels[x], mp.labels[y]])).collect();
    json!({ "labels": mp.labels, "hasse": hasse })
}

fn classification_json(c: &GeneratorClassification) -> Value {
    json!({ "generator": c.generator, "case": c.case.to_string(), "witnesses": c.witnesses })
}

fn module_cmd(r: &mut Run, basis: &LatticeBasis, k: usize, json: bool) -> Result<String> {
    let an = analysis(r, basis, k)?;
    r.stage("ball");
    r.stage("candidate-lcms");
    let gens = an.minimal_generators(k)?.clone();
    let f_k = an.frobenius(k)?;
    r.stage("structure-poset");
    let sp = structure_poset(&an);
    let mp = module_poset(&an, &sp, k)?;
    r.stage("classify");
    let classes = if k >= 2 {
        gens.generators.iter().map(|g| an.classify(g, k)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    if json {
        return Ok(render(json!({
            "a": a_json(basis),
            "k": k,
            "generators": gens.generators,
            "supports": gens.supports,
            "m_k": gens.m_k,
            "F_k": f_k,
            "b": f_k - gens.m_k,
            "poset": poset_json(&sp, &mp),
            "classification": classes.iter().map(classification_json).collect::<Vec<_>>(),
        })));
    }
    let mut s =
        format!("M^({k}) for {}: m_k = {}, F_k = {f_k}, b = {}\n", basis.weight(), gens.m_k, f_k - gens.m_k);
    for (i, (g, sup)) in gens.generators.iter().zip(&gens.supports).enumerate() {
        let pts: Vec<String> = sup.iter().map(ToString::to_string).collect();
        let _ = write!(s, "{g}  dominates {{{}}}", pts.join(", "));
        if let Some(c) = classes.get(i) {
            let ws: Vec<String> = c.witnesses.iter().map(ToString::to_string).collect();
            let _ = write!(s, "  {} [{}]", c.case, ws.join(", "));
        }
        s.push('\n');
    }
    Ok(s)
}

fn poset_cmd(r: &mut Run, basis: &LatticeBasis, k: usize, format: Format) -> Result<String> {
    let an = analysis(r, basis, k)?;
    r.stage("structure-poset");
    let sp = structure_poset(&an);
    let mp = module_poset(&an, &sp, k)?;
    let f_k = an.frobenius(k)?;
    Ok(match format {
        Format::Dot => sp.to_dot(Some(&mp)),
        Format::Json => render(json!({
            "a": a_json(basis),
            "k": k,
            "m_k": mp.m_k,
            "F_k": f_k,
            "b": f_k - mp.m_k,
            "poset": poset_json(&sp, &mp),
        })),
        Format::Text => {
            let labels: Vec<String> = mp.labels.iter().map(ToString::to_string).collect();
            let minimal: Vec<String> = mp.minimal.iter().map(ToString::to_string).collect();
            format!(
                "structure poset: {} elements, {} cover relations\nk = {k}: labels {{{}}}, minimal {{{}}}\n",
                sp.len(),
                sp.hasse.len(),
                labels.join(", "),
                minimal.join(", ")
            )
        }
    })
}

fn frobenius_cmd(r: &mut Run, basis: &LatticeBasis, spec: &JobSpec, json: bool) -> Result<String> {
    r.stage("count-table");
    r.stage("window-scan");
    let f = frobenius_with(basis, spec.k as u64, spec.scan)?;
    if json {
        return Ok(render(json!({ "a": a_json(basis), "k": spec.k, "F_k": f })));
    }
    Ok(format!("{f}\n"))
}

fn sequence_cmd(r: &mut Run, basis: &LatticeBasis, spec: &JobSpec, json: bool) -> Result<String> {
    r.stage("count-table");
    r.stage("window-scan");
    let rep = sequence_report_with(basis, spec.k_max, spec.scan)?;
    if json {
        let mut v = serde_json::to_value(&rep).expect("report serialises");
        if let Value::Object(m) = &mut v {
            let mut out = serde_json::Map::new();
            out.insert("a".into(), a_json(basis));
            out.extend(std::mem::take(m));
            v = Value::Object(out);
        }
        return Ok(render(v));
    }
    let join = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "F_k: {}", join(&rep.f_values));
    let _ = writeln!(s, "m_k: {}", join(&rep.m_values));
    let _ = writeln!(s, "b_k: {}", join(&rep.b_values));
    let _ = writeln!(s, "F differences: {}", join(&rep.f_diffs));
    let _ = writeln!(s, "dimension: {}", rep.dimension);
    let _ = writeln!(s, "b values observed up to k = {}: {}", rep.k_max, join(&rep.observed_b_set));
    let _ = writeln!(s, "bounds hold: {}", rep.bound_checks.all());
    Ok(s)
}

fn verify_cmd(
    mut r: Run,
    basis: &LatticeBasis,
    k_max: usize,
    json: bool,
) -> std::result::Result<JobOutput, JobError> {
    let an = analysis(&mut r, basis, k_max)?;
    r.stage("ball");
    r.stage("candidate-lcms");
    r.stage("oracle");
    let mut rows = Vec::new();
    let mut ok = true;
    for k in 1..=k_max {
        let table = an.frobenius(k)?;
        let module = an.frobenius_via_module(k)?;
        let oracle = brute_force_frobenius(basis, k as u64)?;
        let agree = table == module && module == oracle;
        ok &= agree;
        rows.push((k, table, module, oracle, agree));
    }
    let text = if json {
        let v: Vec<Value> = rows
            .iter()
            .map(|&(k, t, m, o, a)| json!({ "k": k, "table": t, "module": m, "oracle": o, "agree": a }))
            .collect();
        render(json!({ "a": a_json(basis), "checks": v, "ok": ok }))
    } else {
        let mut s = String::new();
        for (k, t, m, o, a) in rows {
            let _ =
                writeln!(s, "k={k} table={t} module={m} oracle={o} {}", if a { "ok" } else { "MISMATCH" });
        }
        s
    };
    if ok {
        Ok(JobOutput { text, stages: r.stages })
    } else {
        Err(JobError { code: EXIT_MISMATCH, message: text })
    }
}
