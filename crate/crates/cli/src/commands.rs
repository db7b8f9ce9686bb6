//! Command evaluation. Every command yields a [`Report`] whose JSON body is
//! deterministic for a given input and flags.

use std::collections::BTreeMap;

use igm_core::itype::{itype_to_ig, INFERENCE_DEGREE};
use igm_core::{
    build_rmap, derive_permutations, divisorial_torsion_crosscheck, finite_normal_subgroup_search, ig_cover,
    is_maximal_order_s, is_torsion_free, non_maximal_witness, primes_of_s, verify_witness, FacePrime, IGMonoid,
    MaximalOrderVerdict, NormalSubgroupSearch,
};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::document::{parse, Document, DocumentError};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Torsion,
    Primes,
    MaximalOrder,
    Ybe,
    Sigma,
    Cover,
    Witness,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Torsion => "torsion",
            Command::Primes => "primes",
            Command::MaximalOrder => "maximal-order",
            Command::Ybe => "ybe",
            Command::Sigma => "sigma",
            Command::Cover => "cover",
            Command::Witness => "witness",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        [
            Command::Validate,
            Command::Torsion,
            Command::Primes,
            Command::MaximalOrder,
            Command::Ybe,
            Command::Sigma,
            Command::Cover,
            Command::Witness,
        ]
        .into_iter()
        .find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub height: usize,
    pub bound: Option<usize>,
    pub degree: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { height: 1, bound: None, degree: 3 }
    }
}

pub const DEFAULT_WITNESS_BOUND: usize = 2;
pub const DEFAULT_SEARCH_BOUND: usize = 3;

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    /// `(key, value)` rows of the human-readable output.
    pub rows: Vec<(String, String)>,
    /// Properties decided by the command, for `--expect`.
    pub properties: BTreeMap<&'static str, bool>,
}

impl Report {
    pub fn text(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        self.rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }

    pub fn pretty_json(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("reports serialize") + "\n"
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("`{command}` does not apply to {kind} documents")]
    WrongKind { command: &'static str, kind: &'static str },
}

impl RunError {
    pub fn json(&self, input: &str) -> Value {
        let (kind, line) = match self {
            RunError::Document(e) => (e.kind(), e.line()),
            RunError::WrongKind { .. } => ("wrong-document-kind", None),
        };
        json!({ "schema": SCHEMA, "input": input, "error": { "kind": kind, "line": line, "message": self.to_string() } })
    }
}

impl From<igm_core::Error> for RunError {
    fn from(e: igm_core::Error) -> Self {
        RunError::Document(DocumentError::Core(e))
    }
}

fn digest(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

struct Builder {
    rows: Vec<(String, String)>,
    provenance: BTreeMap<&'static str, &'static str>,
    properties: BTreeMap<&'static str, bool>,
    bound: Option<usize>,
}

impl Builder {
    fn row(&mut self, k: impl Into<String>, v: impl Into<String>) {
        self.rows.push((k.into(), v.into()));
    }
}

const NORM_MAP: &str = "periodicity via the norm map: (a,g)^ord(g) = (T_g(a),1)";
const FIXED_DIVISOR: &str = "periodicity via a divisorial ideal fixed by a.g";
const ORBIT_PRIMES: &str = "primes of S as minimal G-orbit blocks of primes of A";
const ORBIT_CRITERION: &str = "maximal order iff every G-orbit of minimal primes is one block";
const ORBIT_SUFFICIENT: &str = "orbit criterion, sufficient direction only (torsion present)";
const BRAID: &str = "braid relation checked on all triples";
const COVER: &str = "cover by a monoid of I-type, checked on monomials up to the degree";
const LEFT_ORDER: &str = "an element outside S stabilizing an ideal: S is not a maximal order";
const CLOSURE_SEARCH: &str = "bounded closure search for finite normal subgroups";

fn bool_text(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn facet_name(i: usize) -> String {
    format!("Q{}", i + 1)
}

fn prime_name(p: &FacePrime) -> String {
    p.facets.iter().map(|&i| facet_name(i)).collect::<Vec<_>>().join("+")
}

fn prime_json(s: &IGMonoid, p: &FacePrime) -> Value {
    let names = s.base().names();
    json!({
        "name": prime_name(p),
        "facets": p.facets.iter().map(|&i| facet_name(i)).collect::<Vec<_>>(),
        "generators": p.generators.iter().map(|&g| names[g].clone()).collect::<Vec<_>>(),
    })
}

fn element_group(s: &IGMonoid) -> Vec<String> {
    s.action().elements().map(|g| s.action().label(g).to_string()).collect()
}

/// Parses `text` and runs `command`; `input` names the document in the
/// report.
pub fn run(command: Command, input: &str, text: &str, opts: &Options) -> Result<Report, RunError> {
    let doc = parse(text)?;
    let mut b = Builder { rows: Vec::new(), provenance: BTreeMap::new(), properties: BTreeMap::new(), bound: None };
    b.row("input", input);
    b.row("command", command.name());
    let result = match (&doc, command) {
        (Document::Ig(d), _) => {
            let s = d.build()?;
            match command {
                Command::Validate => validate_ig(&s, &mut b)?,
                Command::Torsion => torsion(&s, opts, &mut b)?,
                Command::Primes => primes(&s, opts.height, &mut b)?,
                Command::MaximalOrder => maximal_order(&s, &mut b)?,
                Command::Cover => cover(&s, opts.degree, &mut b)?,
                Command::Witness => witness(&s, opts.bound.unwrap_or(DEFAULT_WITNESS_BOUND), &mut b)?,
                Command::Ybe | Command::Sigma => {
                    return Err(RunError::WrongKind { command: command.name(), kind: "IG-type" })
                }
            }
        }
        (Document::IType(d), Command::Validate) => {
            let rel = d.relations()?;
            build_rmap(&rel)?;
            b.row("generators", rel.n().to_string());
            b.row("relations", rel.relations().len().to_string());
            json!({ "kind": "itype", "generators": rel.n(), "relations": rel.relations().len() })
        }
        (Document::IType(d), Command::Ybe) => ybe(&d.relations()?, &mut b)?,
        (Document::IType(d), Command::Sigma) => sigma(&d.relations()?, opts.degree, &mut b)?,
        (Document::IType(_), _) => return Err(RunError::WrongKind { command: command.name(), kind: "I-type" }),
    };
    let mut body = json!({
        "schema": SCHEMA,
        "command": command.name(),
        "input": { "name": input, "sha256": digest(text) },
        "provenance": b.provenance,
        "result": result,
    });
    if let Some(bound) = b.bound {
        body["bound"] = json!(bound);
    }
    Ok(Report { json: body, rows: b.rows, properties: b.properties })
}

fn validate_ig(s: &IGMonoid, b: &mut Builder) -> Result<Value, RunError> {
    let a = s.base();
    let report = igm_core::verify_cocycle(s.cocycle(), s.action());
    // indecomposables are only meaningful without units
    let certificate = if a.has_trivial_units() { s.not_i_type_certificate()? } else { None };
    let facets: Vec<Value> = a.minimal_primes().iter().map(|p| prime_json(s, p)).collect();
    b.row("rank", a.rank().to_string());
    b.row("generators", a.generator_count().to_string());
    b.row("minimal primes", a.minimal_primes().iter().map(|p| {
        let g: Vec<&str> = p.generators.iter().map(|&i| a.names()[i].as_str()).collect();
        format!("{} = ({})", prime_name(p), g.join(","))
    }).collect::<Vec<_>>().join("  "));
    b.row("maximal order A", bool_text(a.is_maximal_order()));
    b.row("trivial units", bool_text(a.has_trivial_units()));
    b.row("group", format!("order {}: {}", s.action().order(), element_group(s).join(" ")));
    b.row("kernel index", s.kernel_index().to_string());
    b.row("cocycle", format!("{} coset pairs, {} violations", report.checked_pairs, report.violations.len()));
    if let Some(c) = &certificate {
        b.row("not of I-type", format!("rank {} < {} indecomposables", c.rank, c.indecomposables));
    }
    for n in s.notes() {
        b.row("note", n.clone());
    }
    b.properties.insert("valid", report.valid());
    Ok(json!({
        "kind": "ig",
        "rank": a.rank(),
        "generators": a.names(),
        "images": a.images(),
        "minimal_primes": facets,
        "maximal_order": a.is_maximal_order(),
        "trivial_units": a.has_trivial_units(),
        "group": element_group(s),
        "kernel_index": s.kernel_index(),
        "cocycle": { "checked_pairs": report.checked_pairs, "violations": report.violations.len() },
        "not_i_type": certificate,
        "orbit_generators": s.orbit_generators().len(),
        "notes": s.notes(),
    }))
}

fn torsion(s: &IGMonoid, opts: &Options, b: &mut Builder) -> Result<Value, RunError> {
    let t = is_torsion_free(s);
    b.provenance.insert("torsion_free", NORM_MAP);
    b.properties.insert("torsion-free", t.torsion_free);
    b.properties.insert("torsion", !t.torsion_free);
    b.row("torsion-free", bool_text(t.torsion_free));
    let witness = t.witness.as_ref().map(|w| {
        b.row("witness", format!("{} of order {}", s.format_element(&w.element), w.order));
        json!({ "element": s.format_element(&w.element), "translation": w.element.translation, "order": w.order })
    });
    let a = s.base();
    let crosscheck = if a.is_maximal_order() && a.has_trivial_units() {
        let c = divisorial_torsion_crosscheck(s)?;
        b.provenance.insert("crosscheck", FIXED_DIVISOR);
        b.row("divisorial crosscheck", if c == t.torsion_free { "agrees" } else { "DISAGREES" });
        Some(c)
    } else {
        b.row("divisorial crosscheck", "not applicable");
        None
    };
    let mut out = json!({
        "torsion_free": t.torsion_free,
        "cosets_checked": t.cosets_checked,
        "witness": witness,
        "crosscheck": crosscheck,
    });
    if !t.torsion_free {
        let bound = opts.bound.unwrap_or(DEFAULT_SEARCH_BOUND);
        b.bound = Some(bound);
        b.provenance.insert("finite_normal_subgroup", CLOSURE_SEARCH);
        out["finite_normal_subgroup"] = match finite_normal_subgroup_search(s, bound) {
            NormalSubgroupSearch::Found(h) => {
                let shown: Vec<String> = h.iter().map(|x| s.format_element(x)).collect();
                b.row("finite normal subgroup", shown.join(" "));
                json!({ "found": true, "elements": shown })
            }
            NormalSubgroupSearch::NoneFoundUpToBound { bound, periodic_elements } => {
                b.row("finite normal subgroup", format!("none found up to bound {bound}"));
                json!({ "found": false, "bound": bound, "periodic_elements": periodic_elements })
            }
        };
    }
    Ok(out)
}

fn primes(s: &IGMonoid, height: usize, b: &mut Builder) -> Result<Value, RunError> {
    let ps = primes_of_s(s, height)?;
    b.provenance.insert("primes", ORBIT_PRIMES);
    let of_a: Vec<Value> = s.base().prime_spectrum(Some(height)).iter().map(|p| prime_json(s, p)).collect();
    let of_s: Vec<Vec<String>> = ps.iter().map(|p| p.primes.iter().map(prime_name).collect()).collect();
    b.row("height", height.to_string());
    b.row("primes of S", of_s.iter().map(|p| p.join(" ∩ ")).collect::<Vec<_>>().join(", "));
    Ok(json!({ "height": height, "primes_of_a": of_a, "primes_of_s": of_s }))
}

fn maximal_order(s: &IGMonoid, b: &mut Builder) -> Result<Value, RunError> {
    let r = is_maximal_order_s(s)?;
    let verdict = match r.verdict {
        MaximalOrderVerdict::Maximal => "maximal",
        MaximalOrderVerdict::NotMaximal => "not-maximal",
        MaximalOrderVerdict::Inconclusive => "inconclusive",
    };
    b.provenance.insert("verdict", if r.torsion_free { ORBIT_CRITERION } else { ORBIT_SUFFICIENT });
    b.properties.insert("maximal-order", r.verdict == MaximalOrderVerdict::Maximal);
    b.properties.insert("not-maximal-order", r.verdict == MaximalOrderVerdict::NotMaximal);
    let names = |v: &[usize]| v.iter().map(|&i| facet_name(i)).collect::<Vec<_>>();
    let orbits: Vec<Value> = r
        .orbits
        .iter()
        .map(|o| {
            json!({
                "members": names(&o.members),
                "blocks": o.blocks.iter().map(|x| names(x)).collect::<Vec<_>>(),
                "partition": o.partition,
                "readings_diverge": o.readings_diverge,
            })
        })
        .collect();
    let mut of_s: Vec<Vec<String>> = r.orbits.iter().flat_map(|o| o.blocks.iter().map(|x| names(x))).collect();
    of_s.sort();
    b.row("verdict", verdict);
    b.row("torsion-free", bool_text(r.torsion_free));
    b.row("minimal primes of S", of_s.iter().map(|p| p.join(" ∩ ")).collect::<Vec<_>>().join(", "));
    Ok(json!({
        "verdict": verdict,
        "maximal_order": r.verdict == MaximalOrderVerdict::Maximal,
        "torsion_free": r.torsion_free,
        "minimal_primes_of_a": s.base().minimal_primes().iter().map(|p| prime_json(s, p)).collect::<Vec<_>>(),
        "minimal_primes_of_s": of_s,
        "orbits": orbits,
    }))
}

fn cover(s: &IGMonoid, degree: usize, b: &mut Builder) -> Result<Value, RunError> {
    let c = ig_cover(s, degree)?;
    b.provenance.insert("cover", COVER);
    b.properties.insert("cover", c.report.verified());
    b.row("cover generators", c.report.generators.to_string());
    b.row("kernel rank", c.report.kernel_rank.to_string());
    b.row("verified", format!("{} (monomials up to degree {degree})", bool_text(c.report.verified())));
    Ok(json!({
        "degree": degree,
        "group_order": c.t.ig().action().order(),
        "report": c.report,
        "verified": c.report.verified(),
    }))
}

fn witness(s: &IGMonoid, bound: usize, b: &mut Builder) -> Result<Value, RunError> {
    b.bound = Some(bound);
    b.provenance.insert("witness", LEFT_ORDER);
    let found = non_maximal_witness(s, bound)?;
    b.properties.insert("witness", found.is_some());
    let Some(w) = found else {
        b.row("witness", format!("none found up to bound {bound}"));
        return Ok(json!({ "found": false }));
    };
    let verified = verify_witness(s, &w)?;
    let ideal: Vec<String> = w.ideal.iter().map(|x| s.format_element(&s.element(x))).collect();
    b.row("element", s.format_element(&w.element));
    b.row("ideal", ideal.join(" "));
    b.row("verified", bool_text(verified));
    Ok(json!({
        "found": true,
        "element": s.format_element(&w.element),
        "translation": w.element.translation,
        "divisor": s.base().divisor_of(&w.element.translation).0,
        "ideal": ideal,
        "verified": verified,
    }))
}

fn ybe(rel: &igm_core::IRelations, b: &mut Builder) -> Result<Value, RunError> {
    let r = build_rmap(rel)?;
    let y = r.check_ybe();
    let (left, right) = r.check_nondegeneracy();
    let (sigmas, group) = derive_permutations(rel)?;
    b.provenance.insert("ybe", BRAID);
    b.properties.insert("ybe", y.holds);
    b.row("ybe", bool_text(y.holds));
    b.row("non-degenerate", format!("left {}, right {}", bool_text(left), bool_text(right)));
    b.row("sigma", sigmas.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    b.row("group order", group.len().to_string());
    Ok(json!({
        "ybe": y.holds,
        "violation": y.violation,
        "left_nondegenerate": left,
        "right_nondegenerate": right,
        "sigmas": sigmas.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "group_order": group.len(),
    }))
}

fn sigma(rel: &igm_core::IRelations, degree: usize, b: &mut Builder) -> Result<Value, RunError> {
    let t = itype_to_ig(rel)?;
    let s = t.ig();
    let bijective = t.projection_bijective_up_to(degree);
    b.properties.insert("bijective", bijective);
    b.row("sigma", t.sigmas().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    b.row("group", format!("order {}: {}", s.action().order(), element_group(s).join(" ")));
    b.row("kernel index", s.kernel_index().to_string());
    b.row("projection bijective", format!("{} (up to degree {degree})", bool_text(bijective)));
    Ok(json!({
        "sigmas": t.sigmas().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "group": element_group(s),
        "group_order": s.action().order(),
        "kernel_index": s.kernel_index(),
        "inference_degree": INFERENCE_DEGREE,
        "projection_bijective_up_to": degree,
        "projection_bijective": bijective,
    }))
}
