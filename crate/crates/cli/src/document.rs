//! The JSON input document and its translation to typed equation systems.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use sorpfix::eqsys::check_system;
use sorpfix::semirings::{Boolean, Lukasiewicz, MinMax, Tropical, TropicalValue, UnitRational, Viterbi};
use sorpfix::{Exponent, Monomial, Semiring, Sorp, SorpPolynomial, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemiringKind {
    Tropical,
    Viterbi,
    Lukasiewicz,
    Boolean,
    Minmax,
    Sorp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub semiring: SemiringKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minmax_chain: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sorp_indeterminates: Option<Vec<String>>,
    pub indeterminates: Vec<String>,
    pub equations: IndexMap<String, Vec<TermDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Value,
    pub monomial: IndexMap<String, Value>,
}

/// A problem located at a field of the input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid system:\n{}", list(.0))]
    Invalid(Vec<Diagnostic>),
}

fn list(ds: &[Diagnostic]) -> String {
    ds.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}

pub fn read_document(text: &str) -> Result<Document, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Declared indeterminates and raw terms over one concrete semiring.
/// Well-formedness is checked separately by [`Parsed::violations`].
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed<S: Semiring> {
    pub semiring: S,
    pub vars: Vec<String>,
    pub equations: IndexMap<String, Vec<Term<S::Elem>>>,
}

impl<S: Semiring> Parsed<S> {
    pub fn violations(&self, allow_infinite_exponents: bool) -> Vec<Diagnostic> {
        check_system(&self.semiring, &self.vars, &self.equations, allow_infinite_exponents)
            .into_iter()
            .map(|v| Diagnostic::new("", v.to_string()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnySystem {
    Tropical(Parsed<Tropical>),
    Viterbi(Parsed<Viterbi>),
    Lukasiewicz(Parsed<Lukasiewicz>),
    Boolean(Parsed<Boolean>),
    MinMax(Parsed<MinMax>),
    Sorp { parsed: Parsed<Sorp>, names: Vec<String> },
}

impl AnySystem {
    pub fn violations(&self, allow_infinite_exponents: bool) -> Vec<Diagnostic> {
        match self {
            AnySystem::Tropical(p) => p.violations(allow_infinite_exponents),
            AnySystem::Viterbi(p) => p.violations(allow_infinite_exponents),
            AnySystem::Lukasiewicz(p) => p.violations(allow_infinite_exponents),
            AnySystem::Boolean(p) => p.violations(allow_infinite_exponents),
            AnySystem::MinMax(p) => p.violations(allow_infinite_exponents),
            AnySystem::Sorp { parsed, .. } => parsed.violations(allow_infinite_exponents),
        }
    }
}

/// Decodes every value in `doc` and checks well-formedness, reporting all
/// problems at once. `allow_infinite_exponents` admits `"inf"` in system
/// monomials.
pub fn parse_system(doc: &Document, allow_infinite_exponents: bool) -> Result<AnySystem, InputError> {
    let mut diags = Vec::new();
    let needs_chain = doc.semiring == SemiringKind::Minmax;
    let needs_names = doc.semiring == SemiringKind::Sorp;
    if doc.minmax_chain.is_some() != needs_chain {
        let msg = if needs_chain { "required for semiring minmax" } else { "only allowed for semiring minmax" };
        diags.push(Diagnostic::new("minmax_chain", msg));
    }
    if doc.sorp_indeterminates.is_some() != needs_names {
        let msg = if needs_names { "required for semiring sorp" } else { "only allowed for semiring sorp" };
        diags.push(Diagnostic::new("sorp_indeterminates", msg));
    }
    let system = match doc.semiring {
        SemiringKind::Tropical => decode(doc, Tropical, &mut diags, tropical_value).map(AnySystem::Tropical),
        SemiringKind::Viterbi => decode(doc, Viterbi, &mut diags, unit_value).map(AnySystem::Viterbi),
        SemiringKind::Lukasiewicz => decode(doc, Lukasiewicz, &mut diags, unit_value).map(AnySystem::Lukasiewicz),
        SemiringKind::Boolean => decode(doc, Boolean, &mut diags, boolean_value).map(AnySystem::Boolean),
        SemiringKind::Minmax => {
            let chain = doc.minmax_chain.clone().unwrap_or_default();
            match MinMax::new(chain) {
                Ok(m) => {
                    let c = m.clone();
                    decode(doc, m, &mut diags, move |v| minmax_value(&c, v)).map(AnySystem::MinMax)
                }
                Err(e) => {
                    if needs_chain && doc.minmax_chain.is_some() {
                        diags.push(Diagnostic::new("minmax_chain", e.to_string()));
                    }
                    None
                }
            }
        }
        SemiringKind::Sorp => {
            let names = doc.sorp_indeterminates.clone().unwrap_or_default();
            check_sorp_names(&names, &doc.indeterminates, &mut diags);
            let declared: HashSet<String> = names.iter().cloned().collect();
            decode(doc, Sorp, &mut diags, move |v| sorp_value(&declared, v))
                .map(|parsed| AnySystem::Sorp { parsed, names })
        }
    };
    match system {
        Some(system) if diags.is_empty() => {
            let violations = system.violations(allow_infinite_exponents);
            if violations.is_empty() {
                Ok(system)
            } else {
                Err(InputError::Invalid(violations))
            }
        }
        _ => Err(InputError::Invalid(diags)),
    }
}

fn check_sorp_names(names: &[String], vars: &[String], diags: &mut Vec<Diagnostic>) {
    let mut seen = HashSet::new();
    for (i, n) in names.iter().enumerate() {
        if !seen.insert(n) {
            diags.push(Diagnostic::new(format!("sorp_indeterminates[{i}]"), format!("{n:?} declared twice")));
        }
        if vars.contains(n) {
            diags.push(Diagnostic::new(
                format!("sorp_indeterminates[{i}]"),
                format!("{n:?} is also a solve-for indeterminate"),
            ));
        }
    }
}

fn decode<S, F>(doc: &Document, semiring: S, diags: &mut Vec<Diagnostic>, value: F) -> Option<Parsed<S>>
where
    S: Semiring,
    F: Fn(&Value) -> Result<S::Elem, String>,
{
    let mut equations = IndexMap::new();
    for (x, terms) in &doc.equations {
        let mut decoded = Vec::new();
        for (i, term) in terms.iter().enumerate() {
            let path = format!("equations.{x}[{i}]");
            let coeff = value(&term.coeff).map_err(|m| diags.push(Diagnostic::new(format!("{path}.coeff"), m)));
            let monomial = monomial(&term.monomial, &format!("{path}.monomial"), diags);
            if let (Ok(c), Some(m)) = (coeff, monomial) {
                decoded.push(Term::new(c, m));
            }
        }
        equations.insert(x.clone(), decoded);
    }
    Some(Parsed { semiring, vars: doc.indeterminates.clone(), equations })
}

fn exponent(v: &Value) -> Result<Exponent, String> {
    match v {
        Value::String(s) if s == "inf" => Ok(Exponent::Infinite),
        Value::Number(n) => match n.as_u64() {
            Some(k) if k > 0 => Ok(Exponent::Finite(k)),
            _ => Err(format!("exponent {n} is not a positive integer")),
        },
        other => Err(format!("exponent {other} is neither a positive integer nor \"inf\"")),
    }
}

fn monomial(obj: &IndexMap<String, Value>, path: &str, diags: &mut Vec<Diagnostic>) -> Option<Monomial> {
    let mut m = Monomial::one();
    let mut ok = true;
    for (name, v) in obj {
        match exponent(v) {
            Ok(e) => m = m.with(name.clone(), e),
            Err(msg) => {
                diags.push(Diagnostic::new(format!("{path}.{name}"), msg));
                ok = false;
            }
        }
    }
    ok.then_some(m)
}

fn string(v: &Value) -> Result<&str, String> {
    v.as_str().ok_or_else(|| format!("expected a string, found {v}"))
}

fn tropical_value(v: &Value) -> Result<TropicalValue, String> {
    string(v)?.parse().map_err(|e: sorpfix::ValueError| e.to_string())
}

fn unit_value(v: &Value) -> Result<UnitRational, String> {
    string(v)?.parse().map_err(|e: sorpfix::ValueError| e.to_string())
}

fn boolean_value(v: &Value) -> Result<bool, String> {
    v.as_bool().ok_or_else(|| format!("expected true or false, found {v}"))
}

fn minmax_value(chain: &MinMax, v: &Value) -> Result<sorpfix::semirings::MinMaxValue, String> {
    chain.value(string(v)?).map_err(|e| e.to_string())
}

fn sorp_value(declared: &HashSet<String>, v: &Value) -> Result<SorpPolynomial, String> {
    let items = v.as_array().ok_or_else(|| format!("expected a list of monomials, found {v}"))?;
    let mut monomials = Vec::new();
    for (k, item) in items.iter().enumerate() {
        let obj = item.as_object().ok_or_else(|| format!("monomial {k} is not an object"))?;
        let mut m = Monomial::one();
        for (name, e) in obj {
            if !declared.contains(name) {
                return Err(format!("monomial {k} mentions {name:?}, which is not in sorp_indeterminates"));
            }
            m = m.with(name.clone(), exponent(e).map_err(|msg| format!("monomial {k}: {msg}"))?);
        }
        monomials.push(m);
    }
    Ok(monomials.into_iter().collect())
}

fn exponent_json(e: Exponent) -> Value {
    match e {
        Exponent::Finite(k) => Value::from(k),
        Exponent::Infinite => Value::from("inf"),
    }
}

fn monomial_json(m: &Monomial) -> IndexMap<String, Value> {
    m.factors().map(|(n, e)| (n.to_string(), exponent_json(e))).collect()
}

fn encode<S: Semiring>(
    kind: SemiringKind,
    p: &Parsed<S>,
    value: impl Fn(&S::Elem) -> Value,
) -> Document {
    let equations = p
        .equations
        .iter()
        .map(|(x, terms)| {
            let terms = terms
                .iter()
                .map(|t| TermDoc { coeff: value(&t.coeff), monomial: monomial_json(&t.monomial) })
                .collect();
            (x.clone(), terms)
        })
        .collect();
    Document {
        semiring: kind,
        minmax_chain: None,
        sorp_indeterminates: None,
        indeterminates: p.vars.clone(),
        equations,
    }
}

/// The canonical document describing `system`.
pub fn render_document(system: &AnySystem) -> Document {
    let text = |s: String| Value::String(s);
    match system {
        AnySystem::Tropical(p) => encode(SemiringKind::Tropical, p, |v| text(Tropical.render(v))),
        AnySystem::Viterbi(p) => encode(SemiringKind::Viterbi, p, |v| text(Viterbi.render(v))),
        AnySystem::Lukasiewicz(p) => encode(SemiringKind::Lukasiewicz, p, |v| text(Lukasiewicz.render(v))),
        AnySystem::Boolean(p) => encode(SemiringKind::Boolean, p, |v| Value::Bool(*v)),
        AnySystem::MinMax(p) => {
            let mut doc = encode(SemiringKind::Minmax, p, |v| text(p.semiring.render(v)));
            doc.minmax_chain = Some(p.semiring.labels().to_vec());
            doc
        }
        AnySystem::Sorp { parsed, names } => {
            let mut doc = encode(SemiringKind::Sorp, parsed, |q| {
                Value::Array(q.monomials().map(|m| Value::Object(monomial_json(m).into_iter().collect())).collect())
            });
            doc.sorp_indeterminates = Some(names.clone());
            doc
        }
    }
}
