//! The line-oriented input format.
//!
//! ```text
//! # Example: <u1..u4 | u1u2 = u3u4> with (12)(34) on odd degree
//! gens u1 u2 u3 u4
//! rel u1 u2 = u3 u4
//! act s = (12)(34)
//! grading 1 1 1 1 mod 2
//! value 0 = e
//! value 1 = s
//! ```
//!
//! Monoids are given by `gens`/`rel` or by `embed DIM` with one
//! `gen NAME = v1 .. vDIM` line per generator. `act` permutes generators,
//! `act ambient` permutes ambient coordinates. The cocycle is a grading
//! (`grading` + `value`), a kernel table (`kernel` + `coset`) or its values
//! on the generators (`genphi`). Words are products of action names read
//! left to right; `e` is the identity and a cycle token such as `(1243)`
//! names a group element directly. A document with an `itype` line instead
//! lists quadratic relations `rel x1 x2 = x3 x3` of a monoid of I-type.

use std::fmt::Write as _;

use igm_core::igcore::{GenAction, PermutationKind};
use igm_core::itype::INFERENCE_DEGREE;
use igm_core::{build_ig, AffineMonoid, CosetCocycle, IGMonoid, IRelations, Permutation, Presentation, Sublattice};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax { line: usize, column: usize, expected: String },
    #[error("line {line}: undeclared symbol `{symbol}`")]
    Undeclared { line: usize, symbol: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    Arity { line: usize, expected: usize, found: usize },
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    Core(#[from] igm_core::Error),
}

impl DocumentError {
    pub fn kind(&self) -> &'static str {
        match self {
            DocumentError::Syntax { .. } => "syntax",
            DocumentError::Undeclared { .. } => "undeclared-symbol",
            DocumentError::Arity { .. } => "arity",
            DocumentError::Structure(_) => "structure",
            DocumentError::Core(_) => "invalid-input",
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            DocumentError::Syntax { line, .. }
            | DocumentError::Undeclared { line, .. }
            | DocumentError::Arity { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// `u1 u2^3 u4^-1`; the empty product is written `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(pub Vec<(String, i64)>);

pub type Word = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generators {
    Presented { names: Vec<String>, relations: Vec<(Monomial, Monomial)> },
    Embedded { dim: usize, vectors: Vec<(String, Vec<i64>)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionLine {
    pub name: String,
    pub ambient: bool,
    pub cycles: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleSpec {
    Grading { weights: Vec<i64>, modulus: i64, values: Vec<(i64, Word)> },
    Table { kernel: Vec<Monomial>, cosets: Vec<(Monomial, Word)> },
    OnGenerators(Vec<(String, Word)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgDocument {
    pub generators: Generators,
    pub actions: Vec<ActionLine>,
    pub cocycle: CocycleSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ITypeDocument {
    pub names: Vec<String>,
    pub relations: Vec<((String, String), (String, String))>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Ig(IgDocument),
    IType(ITypeDocument),
}

struct Line<'a> {
    number: usize,
    text: &'a str,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn new(number: usize, text: &'a str) -> Self {
        let text = text.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices() {
            if c.is_whitespace() || c == '=' {
                if let Some(s) = start.take() {
                    tokens.push((s, &text[s..i]));
                }
                if c == '=' {
                    tokens.push((i, "="));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &text[s..]));
        }
        Line { number, text, tokens }
    }

    fn err(&self, index: usize, expected: &str) -> DocumentError {
        let column = self.tokens.get(index).map_or(self.text.trim_end().len() + 1, |t| t.0 + 1);
        DocumentError::Syntax { line: self.number, column, expected: expected.into() }
    }

    /// Splits the tokens after the keyword at the single `=`.
    fn sides(&self, from: usize) -> Result<(Vec<&'a str>, Vec<&'a str>), DocumentError> {
        let rest = &self.tokens[from..];
        let Some(eq) = rest.iter().position(|t| t.1 == "=") else {
            return Err(self.err(self.tokens.len(), "`=`"));
        };
        let lhs: Vec<&str> = rest[..eq].iter().map(|t| t.1).collect();
        let rhs: Vec<&str> = rest[eq + 1..].iter().map(|t| t.1).collect();
        if lhs.is_empty() {
            return Err(self.err(from + eq, "a left-hand side"));
        }
        if rhs.is_empty() {
            return Err(self.err(self.tokens.len(), "a right-hand side"));
        }
        if rhs.contains(&"=") {
            return Err(self.err(from + eq + 1 + rhs.iter().position(|t| *t == "=").unwrap_or(0), "a single `=`"));
        }
        Ok((lhs, rhs))
    }

    /// Text after the `=` following `from`, for cycle notation.
    fn after_eq(&self, from: usize) -> Result<&'a str, DocumentError> {
        let Some(&(pos, _)) = self.tokens[from..].iter().find(|t| t.1 == "=") else {
            return Err(self.err(self.tokens.len(), "`=`"));
        };
        let rest = self.text[pos + 1..].trim();
        if rest.is_empty() {
            return Err(self.err(self.tokens.len(), "a permutation in cycle notation"));
        }
        Ok(rest)
    }

    fn int(&self, index: usize) -> Result<i64, DocumentError> {
        self.tokens.get(index).and_then(|t| t.1.parse().ok()).ok_or_else(|| self.err(index, "an integer"))
    }
}

fn parse_monomial(line: &Line<'_>, tokens: &[&str], names: &[String]) -> Result<Monomial, DocumentError> {
    if tokens == ["1"] {
        return Ok(Monomial(vec![]));
    }
    let mut out = Vec::new();
    for t in tokens {
        let (name, exp) = match t.split_once('^') {
            Some((n, e)) => {
                let e = e.parse::<i64>().map_err(|_| {
                    let idx = line.tokens.iter().position(|x| x.1 == *t).unwrap_or(0);
                    line.err(idx, "an integer exponent")
                })?;
                (n, e)
            }
            None => (*t, 1),
        };
        if !names.iter().any(|n| n == name) {
            return Err(DocumentError::Undeclared { line: line.number, symbol: name.into() });
        }
        out.push((name.to_string(), exp));
    }
    Ok(Monomial(out))
}

fn parse_word(tokens: &[&str]) -> Word {
    tokens.iter().map(|t| t.to_string()).collect()
}

fn valid_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_alphabetic()) && s.chars().all(|c| c.is_alphanumeric() || c == '_')
}

#[derive(Default)]
struct Draft {
    names: Option<Vec<String>>,
    relations: Vec<(Monomial, Monomial)>,
    pair_relations: Vec<((String, String), (String, String))>,
    embed: Option<usize>,
    vectors: Vec<(String, Vec<i64>)>,
    actions: Vec<ActionLine>,
    grading: Option<(Vec<i64>, i64)>,
    values: Vec<(i64, Word)>,
    kernel: Vec<Monomial>,
    cosets: Vec<(Monomial, Word)>,
    genphi: Vec<(String, Word)>,
    itype: bool,
}

impl Draft {
    fn names(&self) -> Vec<String> {
        match &self.names {
            Some(n) => n.clone(),
            None => self.vectors.iter().map(|(n, _)| n.clone()).collect(),
        }
    }
}

pub fn parse(text: &str) -> Result<Document, DocumentError> {
    let mut d = Draft::default();
    for (i, raw) in text.lines().enumerate() {
        let line = Line::new(i + 1, raw);
        let Some(&(_, keyword)) = line.tokens.first() else { continue };
        let args: Vec<&str> = line.tokens[1..].iter().map(|t| t.1).collect();
        match keyword {
            "itype" => {
                if !args.is_empty() {
                    return Err(line.err(1, "end of line"));
                }
                d.itype = true;
            }
            "gens" => {
                if d.names.is_some() || d.embed.is_some() {
                    return Err(DocumentError::Structure(format!("line {}: generators declared twice", line.number)));
                }
                if args.is_empty() {
                    return Err(line.err(1, "generator names"));
                }
                for (k, a) in args.iter().enumerate() {
                    if !valid_name(a) || *a == "e" {
                        return Err(line.err(k + 1, "a generator name"));
                    }
                    if args[..k].contains(a) {
                        return Err(DocumentError::Structure(format!("line {}: generator `{a}` repeated", line.number)));
                    }
                }
                d.names = Some(parse_word(&args));
            }
            "rel" => {
                let names = d.names.clone().ok_or(DocumentError::Undeclared {
                    line: line.number,
                    symbol: args.first().copied().unwrap_or("").into(),
                })?;
                let (lhs, rhs) = line.sides(1)?;
                if d.itype {
                    if lhs.len() != 2 || rhs.len() != 2 {
                        let found = if lhs.len() != 2 { lhs.len() } else { rhs.len() };
                        return Err(DocumentError::Arity { line: line.number, expected: 2, found });
                    }
                    for s in lhs.iter().chain(&rhs) {
                        if !names.iter().any(|n| n == s) {
                            return Err(DocumentError::Undeclared { line: line.number, symbol: s.to_string() });
                        }
                    }
                    d.pair_relations
                        .push(((lhs[0].into(), lhs[1].into()), (rhs[0].into(), rhs[1].into())));
                } else {
                    d.relations.push((parse_monomial(&line, &lhs, &names)?, parse_monomial(&line, &rhs, &names)?));
                }
            }
            "embed" => {
                if d.names.is_some() || d.embed.is_some() {
                    return Err(DocumentError::Structure(format!("line {}: generators declared twice", line.number)));
                }
                let dim = line.int(1)?;
                if dim <= 0 || args.len() != 1 {
                    return Err(line.err(1, "a positive dimension"));
                }
                d.embed = Some(dim as usize);
            }
            "gen" => {
                let Some(dim) = d.embed else {
                    return Err(DocumentError::Structure(format!("line {}: `gen` needs a preceding `embed`", line.number)));
                };
                let (lhs, rhs) = line.sides(1)?;
                if lhs.len() != 1 || !valid_name(lhs[0]) || lhs[0] == "e" {
                    return Err(line.err(1, "a generator name"));
                }
                if d.vectors.iter().any(|(n, _)| n == lhs[0]) {
                    return Err(DocumentError::Structure(format!("line {}: generator `{}` repeated", line.number, lhs[0])));
                }
                if rhs.len() != dim {
                    return Err(DocumentError::Arity { line: line.number, expected: dim, found: rhs.len() });
                }
                let v: Vec<i64> = (0..dim).map(|k| line.int(3 + k)).collect::<Result<_, _>>()?;
                d.vectors.push((lhs[0].into(), v));
            }
            "act" => {
                let ambient = args.first() == Some(&"ambient");
                let at = if ambient { 2 } else { 1 };
                let Some(&(_, name)) = line.tokens.get(at) else { return Err(line.err(at, "an action name")) };
                if !valid_name(name) || name == "e" {
                    return Err(line.err(at, "an action name"));
                }
                if line.tokens.get(at + 1).map(|t| t.1) != Some("=") {
                    return Err(line.err(at + 1, "`=`"));
                }
                let cycles = line.after_eq(at)?.to_string();
                d.actions.push(ActionLine { name: name.into(), ambient, cycles });
            }
            "grading" => {
                let Some(m) = args.iter().position(|a| *a == "mod") else {
                    return Err(line.err(line.tokens.len(), "`mod`"));
                };
                let weights: Vec<i64> = (0..m).map(|k| line.int(k + 1)).collect::<Result<_, _>>()?;
                let modulus = line.int(m + 2)?;
                if modulus <= 0 {
                    return Err(line.err(m + 2, "a positive modulus"));
                }
                if args.len() != m + 2 {
                    return Err(line.err(m + 3, "end of line"));
                }
                let n = d.names().len();
                if weights.len() != n {
                    return Err(DocumentError::Arity { line: line.number, expected: n, found: weights.len() });
                }
                d.grading = Some((weights, modulus));
            }
            "value" => {
                let (lhs, rhs) = line.sides(1)?;
                if lhs.len() != 1 {
                    return Err(line.err(1, "a residue"));
                }
                d.values.push((line.int(1)?, parse_word(&rhs)));
            }
            "kernel" => {
                let names = d.names();
                if args.is_empty() {
                    return Err(line.err(1, "a monomial"));
                }
                d.kernel.push(parse_monomial(&line, &args, &names)?);
            }
            "coset" => {
                let names = d.names();
                let (lhs, rhs) = line.sides(1)?;
                d.cosets.push((parse_monomial(&line, &lhs, &names)?, parse_word(&rhs)));
            }
            "genphi" => {
                let names = d.names();
                let (lhs, rhs) = line.sides(1)?;
                if lhs.len() != 1 {
                    return Err(line.err(1, "a generator name"));
                }
                if !names.iter().any(|n| n == lhs[0]) {
                    return Err(DocumentError::Undeclared { line: line.number, symbol: lhs[0].into() });
                }
                d.genphi.push((lhs[0].into(), parse_word(&rhs)));
            }
            _ => return Err(line.err(0, "a keyword")),
        }
    }
    finish(d)
}

fn finish(d: Draft) -> Result<Document, DocumentError> {
    let structure = |m: &str| Err(DocumentError::Structure(m.into()));
    if d.itype {
        if d.embed.is_some() || !d.actions.is_empty() || d.grading.is_some() || !d.kernel.is_empty() || !d.genphi.is_empty() {
            return structure("an I-type document holds only generators and relations");
        }
        let Some(names) = d.names else { return structure("missing `gens`") };
        return Ok(Document::IType(ITypeDocument { names, relations: d.pair_relations }));
    }
    let generators = match (d.names.clone(), d.embed) {
        (Some(names), None) => Generators::Presented { names, relations: d.relations.clone() },
        (None, Some(dim)) => {
            if d.vectors.is_empty() {
                return structure("`embed` without `gen` lines");
            }
            if !d.relations.is_empty() {
                return structure("relations are implied by `embed`");
            }
            Generators::Embedded { dim, vectors: d.vectors.clone() }
        }
        _ => return structure("missing `gens` or `embed`"),
    };
    let forms = [d.grading.is_some(), !d.kernel.is_empty() || !d.cosets.is_empty(), !d.genphi.is_empty()];
    let cocycle = match forms {
        [true, false, false] => {
            let (weights, modulus) = d.grading.clone().expect("checked");
            CocycleSpec::Grading { weights, modulus, values: d.values.clone() }
        }
        [false, true, false] => CocycleSpec::Table { kernel: d.kernel.clone(), cosets: d.cosets.clone() },
        [false, false, true] => CocycleSpec::OnGenerators(d.genphi.clone()),
        [false, false, false] => return structure("missing cocycle: `grading`, `kernel`/`coset` or `genphi`"),
        _ => return structure("more than one cocycle form"),
    };
    if !d.values.is_empty() && !matches!(cocycle, CocycleSpec::Grading { .. }) {
        return structure("`value` lines need a `grading`");
    }
    Ok(Document::Ig(IgDocument { generators, actions: d.actions, cocycle }))
}

fn render_monomial(m: &Monomial) -> String {
    if m.0.is_empty() {
        return "1".into();
    }
    m.0.iter().map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") }).collect::<Vec<_>>().join(" ")
}

/// Canonical text; `parse(&render(d))` gives back `d`.
pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::IType(t) => {
            out.push_str("itype\n");
            let _ = writeln!(out, "gens {}", t.names.join(" "));
            for ((a, b), (c, e)) in &t.relations {
                let _ = writeln!(out, "rel {a} {b} = {c} {e}");
            }
        }
        Document::Ig(d) => {
            match &d.generators {
                Generators::Presented { names, relations } => {
                    let _ = writeln!(out, "gens {}", names.join(" "));
                    for (l, r) in relations {
                        let _ = writeln!(out, "rel {} = {}", render_monomial(l), render_monomial(r));
                    }
                }
                Generators::Embedded { dim, vectors } => {
                    let _ = writeln!(out, "embed {dim}");
                    for (n, v) in vectors {
                        let v: Vec<String> = v.iter().map(i64::to_string).collect();
                        let _ = writeln!(out, "gen {n} = {}", v.join(" "));
                    }
                }
            }
            for a in &d.actions {
                let kind = if a.ambient { "ambient " } else { "" };
                let _ = writeln!(out, "act {kind}{} = {}", a.name, a.cycles);
            }
            match &d.cocycle {
                CocycleSpec::Grading { weights, modulus, values } => {
                    let w: Vec<String> = weights.iter().map(i64::to_string).collect();
                    let _ = writeln!(out, "grading {} mod {modulus}", w.join(" "));
                    for (r, word) in values {
                        let _ = writeln!(out, "value {r} = {}", word.join(" "));
                    }
                }
                CocycleSpec::Table { kernel, cosets } => {
                    for k in kernel {
                        let _ = writeln!(out, "kernel {}", render_monomial(k));
                    }
                    for (m, word) in cosets {
                        let _ = writeln!(out, "coset {} = {}", render_monomial(m), word.join(" "));
                    }
                }
                CocycleSpec::OnGenerators(list) => {
                    for (n, word) in list {
                        let _ = writeln!(out, "genphi {n} = {}", word.join(" "));
                    }
                }
            }
        }
    }
    out
}

fn exponents(m: &Monomial, names: &[String]) -> Vec<i64> {
    let mut e = vec![0; names.len()];
    for (n, k) in &m.0 {
        let i = names.iter().position(|x| x == n).expect("names checked while parsing");
        e[i] += k;
    }
    e
}

/// Evaluates a word; cycle tokens are looked up by label.
fn evaluate(action: &GenAction, word: &[String]) -> Result<usize, DocumentError> {
    let mut g = 0;
    for w in word {
        let x = if w.starts_with('(') {
            action
                .by_label(w)
                .ok_or_else(|| DocumentError::Structure(format!("`{w}` is not an element of the group")))?
        } else {
            action.word(std::slice::from_ref(w))?
        };
        g = action.mul(g, x);
    }
    Ok(g)
}

impl IgDocument {
    pub fn monoid(&self) -> Result<AffineMonoid, DocumentError> {
        Ok(match &self.generators {
            Generators::Presented { names, relations } => {
                let rels = relations.iter().map(|(l, r)| (exponents(l, names), exponents(r, names))).collect();
                AffineMonoid::from_presentation(&Presentation::new(names.clone(), rels)?)?
            }
            Generators::Embedded { dim, vectors } => {
                let names = vectors.iter().map(|(n, _)| n.clone()).collect();
                let vs: Vec<Vec<i64>> = vectors.iter().map(|(_, v)| v.clone()).collect();
                AffineMonoid::from_ambient(names, *dim, &vs)?
            }
        })
    }

    pub fn build(&self) -> Result<IGMonoid, DocumentError> {
        let a = self.monoid()?;
        let action = if self.actions.is_empty() {
            GenAction::trivial(&a)
        } else {
            let ambient = self.actions[0].ambient;
            if self.actions.iter().any(|x| x.ambient != ambient) {
                return Err(DocumentError::Structure("mixed generator and ambient actions".into()));
            }
            let degree = if ambient {
                a.ambient().map(|x| x.dim).ok_or_else(|| DocumentError::Structure("`act ambient` needs `embed`".into()))?
            } else {
                a.generator_count()
            };
            let perms = self
                .actions
                .iter()
                .map(|x| Ok((x.name.clone(), Permutation::parse_cycles(&x.cycles, degree)?)))
                .collect::<Result<Vec<_>, DocumentError>>()?;
            let kind = if ambient { PermutationKind::Ambient } else { PermutationKind::Generators };
            GenAction::generate(&a, &perms, kind)?
        };
        let names = a.names().to_vec();
        let cocycle = match &self.cocycle {
            CocycleSpec::Grading { weights, modulus, values } => {
                let mut table = vec![None; *modulus as usize];
                for (r, word) in values {
                    if *r < 0 || *r >= *modulus {
                        return Err(DocumentError::Structure(format!("residue {r} outside 0..{modulus}")));
                    }
                    table[*r as usize] = Some(evaluate(&action, word)?);
                }
                let table: Vec<usize> = table
                    .into_iter()
                    .enumerate()
                    .map(|(r, v)| v.ok_or_else(|| DocumentError::Structure(format!("no value for residue {r}"))))
                    .collect::<Result<_, _>>()?;
                CosetCocycle::from_grading(&a, weights, *modulus, &table)?
            }
            CocycleSpec::Table { kernel, cosets } => {
                let gens: Vec<Vec<i64>> = kernel.iter().map(|m| a.point_of_exponents(&exponents(m, &names))).collect();
                let lattice = Sublattice::from_generators(a.rank(), &gens);
                let entries = cosets
                    .iter()
                    .map(|(m, w)| Ok((a.point_of_exponents(&exponents(m, &names)), evaluate(&action, w)?)))
                    .collect::<Result<Vec<_>, DocumentError>>()?;
                CosetCocycle::new(lattice, &entries)?
            }
            CocycleSpec::OnGenerators(list) => {
                let mut values = vec![None; names.len()];
                for (n, w) in list {
                    let i = names.iter().position(|x| x == n).expect("names checked while parsing");
                    values[i] = Some(evaluate(&action, w)?);
                }
                let values: Vec<usize> = values
                    .into_iter()
                    .zip(&names)
                    .map(|(v, n)| v.ok_or_else(|| DocumentError::Structure(format!("no `genphi` for {n}"))))
                    .collect::<Result<_, _>>()?;
                CosetCocycle::infer(&a, &action, &values, INFERENCE_DEGREE)?
            }
        };
        Ok(build_ig(a, action, cocycle)?)
    }
}

impl ITypeDocument {
    pub fn relations(&self) -> Result<IRelations, DocumentError> {
        let idx = |s: &String| self.names.iter().position(|n| n == s).expect("names checked while parsing");
        let rels = self.relations.iter().map(|((a, b), (c, d))| ((idx(a), idx(b)), (idx(c), idx(d)))).collect();
        Ok(IRelations::new(self.names.len(), rels)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AND: &str = "gens u1 u2 u3 u4\nrel u1 u2 = u3 u4\nact s = (12)(34)\ngrading 1 1 1 1 mod 2\nvalue 0 = e\nvalue 1 = s\n";

    #[test]
    fn parses_and_renders() {
        let d = parse(AND).unwrap();
        assert_eq!(render(&d), AND);
        let Document::Ig(ig) = d else { panic!() };
        let s = ig.build().unwrap();
        assert_eq!(s.rank(), 3);
        assert_eq!(s.kernel_index(), 2);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = format!("# header\n\n{}", AND.replace("(12)(34)", "(12)(34)  # swap pairs\n   "));
        assert_eq!(parse(&text).unwrap(), parse(AND).unwrap());
    }

    #[test]
    fn free_abelian_presentation() {
        let d = parse("gens u1 u2\nrel u1 u2 = u2 u1\ngenphi u1 = e\ngenphi u2 = e\n").unwrap();
        let Document::Ig(ig) = d else { panic!() };
        let a = ig.monoid().unwrap();
        assert_eq!(a.rank(), 2);
        assert!(a.is_maximal_order());
    }

    #[test]
    fn missing_right_side_is_a_syntax_error() {
        match parse("gens u1 u2\nrel u1 =\n") {
            Err(DocumentError::Syntax { line: 2, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn undeclared_symbols() {
        assert!(matches!(
            parse("gens u1 u2\nrel u1 u3 = u2\n"),
            Err(DocumentError::Undeclared { line: 2, ref symbol }) if symbol == "u3"
        ));
        assert!(matches!(parse("rel u1 = u2\n"), Err(DocumentError::Undeclared { line: 1, .. })));
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            parse("gens u1 u2 u3\ngrading 1 1 mod 2\n"),
            Err(DocumentError::Arity { line: 2, expected: 3, found: 2 })
        ));
        assert!(matches!(
            parse("itype\ngens x1 x2\nrel x1 x2 = x2\n"),
            Err(DocumentError::Arity { line: 3, expected: 2, found: 1 })
        ));
    }

    #[test]
    fn unknown_keyword() {
        assert!(matches!(parse("gens u1\nfoo\n"), Err(DocumentError::Syntax { line: 2, column: 1, .. })));
    }

    #[test]
    fn kernel_table_form() {
        let text = "gens u1 u2 u3 u4\nrel u1 u2 = u3 u4\nact s = (12)(34)\nkernel u1^2\nkernel u1 u2^-1\nkernel u1 u3^-1\n\
                    coset 1 = e\ncoset u1 = s\n";
        let Document::Ig(ig) = parse(text).unwrap() else { panic!() };
        let s = ig.build().unwrap();
        assert_eq!(s.kernel_index(), 2);
        assert_eq!(parse(&render(&Document::Ig(ig.clone()))).unwrap(), Document::Ig(ig));
    }

    #[test]
    fn embedded_with_ambient_action() {
        let text = "embed 2\ngen a = 2 0\ngen b = 1 1\ngen c = 0 2\nact ambient t = (12)\ngenphi a = t\ngenphi b = e\ngenphi c = t\n";
        let Document::Ig(ig) = parse(text).unwrap() else { panic!() };
        let s = ig.build().unwrap();
        assert_eq!(s.action().order(), 2);
        assert_eq!(s.base().rank(), 2);
    }

    #[test]
    fn itype_documents() {
        let d = parse("itype\ngens x1 x2\nrel x1 x2 = x2 x1\n").unwrap();
        assert_eq!(render(&d), "itype\ngens x1 x2\nrel x1 x2 = x2 x1\n");
        let Document::IType(t) = d else { panic!() };
        assert_eq!(t.relations().unwrap().n(), 2);
    }

    #[test]
    fn conflicting_cocycle_forms() {
        let text = format!("{AND}genphi u1 = s\n");
        assert!(matches!(parse(&text), Err(DocumentError::Structure(_))));
    }
}
