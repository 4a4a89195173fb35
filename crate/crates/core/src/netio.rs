//! Rule-file parsing and serialization, DOT export and JSON reports.
//!
//! Rule files hold one `target, expression` line per component. Expressions
//! use `!`, `&`, `|`, parentheses and the literals `0`/`1`; `#` starts a
//! comment. A comment of the form `# extender: name` marks a component as an
//! extender.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Expr, UpdateFunction};
use crate::space::{ComponentSet, State};
use crate::structure::InteractionGraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject variables that are never a target instead of adding them as
    /// self-regulated inputs.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub target: String,
    pub expression: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkDocument {
    pub network: BooleanNetwork,
    pub rules: Vec<Rule>,
    /// Variables without a rule, added with the identity rule.
    pub inputs: Vec<String>,
    /// Names listed in `# extender:` comments.
    pub extenders: Vec<String>,
    pub warnings: Vec<String>,
}

impl NetworkDocument {
    pub fn extender_set(&self) -> ComponentSet {
        self.extenders
            .iter()
            .filter_map(|name| self.network.index_of(name))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Const(bool),
    Not,
    And,
    Or,
    Open,
    Close,
    Comma,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens with their 1-based columns.
fn tokenize(text: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            c if is_name_start(c) || c.is_ascii_digit() => {
                let start = k;
                while k < chars.len() && is_name_char(chars[k]) {
                    k += 1;
                }
                let word: String = chars[start..k].iter().collect();
                let tok = match word.as_str() {
                    "0" => Tok::Const(false),
                    "1" => Tok::Const(true),
                    w if is_name_start(c) => Tok::Name(w.to_string()),
                    w => return Err(syntax(line, col, format!("invalid name `{w}`"))),
                };
                out.push((tok, col));
                continue;
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        };
        out.push((tok, col));
        k += 1;
    }
    Ok(out)
}

/// Expression tree with names still unresolved.
#[derive(Debug, Clone)]
enum Raw {
    Const(bool),
    Var(String, usize),
    Not(Box<Raw>),
    And(Box<Raw>, Box<Raw>),
    Or(Box<Raw>, Box<Raw>),
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |&(_, c)| c)
    }

    fn or(&mut self) -> Result<Raw> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            lhs = Raw::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Raw> {
        let mut lhs = self.not()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            lhs = Raw::And(Box::new(lhs), Box::new(self.not()?));
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Raw> {
        if self.peek() == Some(&Tok::Not) {
            self.pos += 1;
            return Ok(Raw::Not(Box::new(self.not()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Raw> {
        let col = self.column();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Const(b)) => Ok(Raw::Const(b)),
            Some(Tok::Name(name)) => Ok(Raw::Var(name, col)),
            Some(Tok::Open) => {
                let inner = self.or()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(syntax(self.line, self.column(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            None => Err(syntax(self.line, col, "unexpected end of line")),
            Some(t) => Err(syntax(
                self.line,
                col,
                format!("unexpected {}", describe(&t)),
            )),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Name(_) => "name",
        Tok::Const(_) => "constant",
        Tok::Not => "`!`",
        Tok::And => "`&`",
        Tok::Or => "`|`",
        Tok::Open => "`(`",
        Tok::Close => "`)`",
        Tok::Comma => "`,`",
    }
}

struct RawRule {
    target: String,
    expr: Raw,
    text: String,
    line: usize,
}

fn parse_line(content: &str, line: usize) -> Result<RawRule> {
    let toks = tokenize(content, line)?;
    let end_column = content.chars().count() + 1;
    let target = match toks.first() {
        Some((Tok::Name(name), _)) => name.clone(),
        Some((t, c)) => {
            return Err(syntax(
                line,
                *c,
                format!("expected a target name, found {}", describe(t)),
            ))
        }
        None => return Err(syntax(line, 1, "expected a target name")),
    };
    match toks.get(1) {
        Some((Tok::Comma, _)) => {}
        Some((t, c)) => {
            return Err(syntax(
                line,
                *c,
                format!("expected `,`, found {}", describe(t)),
            ))
        }
        None => return Err(syntax(line, end_column, "expected `,`")),
    }
    let mut p = ExprParser {
        toks: &toks[2..],
        pos: 0,
        line,
        end_column,
    };
    let expr = p.or()?;
    if let Some((t, c)) = p.toks.get(p.pos) {
        return Err(syntax(line, *c, format!("unexpected {}", describe(t))));
    }
    let comma = content.find(',').unwrap();
    Ok(RawRule {
        target,
        expr,
        text: content[comma + 1..].trim().to_string(),
        line,
    })
}

fn resolve(raw: &Raw, index: &HashMap<String, usize>) -> Expr {
    match raw {
        Raw::Const(b) => Expr::Const(*b),
        Raw::Var(name, _) => Expr::Var(index[name]),
        Raw::Not(e) => Expr::Not(Box::new(resolve(e, index))),
        Raw::And(a, b) => Expr::And(Box::new(resolve(a, index)), Box::new(resolve(b, index))),
        Raw::Or(a, b) => Expr::Or(Box::new(resolve(a, index)), Box::new(resolve(b, index))),
    }
}

fn collect_names<'a>(raw: &'a Raw, out: &mut Vec<(&'a str, usize)>) {
    match raw {
        Raw::Const(_) => {}
        Raw::Var(name, col) => out.push((name, *col)),
        Raw::Not(e) => collect_names(e, out),
        Raw::And(a, b) | Raw::Or(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
    }
}

fn is_header(content: &str) -> bool {
    let mut parts = content.split(',').map(str::trim);
    matches!(
        (parts.next(), parts.next(), parts.next()),
        (Some(a), Some(b), None) if a.eq_ignore_ascii_case("targets") && b.eq_ignore_ascii_case("factors")
    )
}

pub fn parse_document(text: &str, options: ParseOptions) -> Result<NetworkDocument> {
    let mut raw_rules: Vec<RawRule> = Vec::new();
    let mut extenders = Vec::new();
    let mut seen_rule = false;
    for (k, full_line) in text.lines().enumerate() {
        let line = k + 1;
        let (content, comment) = match full_line.find('#') {
            Some(p) => (&full_line[..p], Some(&full_line[p + 1..])),
            None => (full_line, None),
        };
        if let Some(meta) = comment.and_then(|c| c.trim().strip_prefix("extender:")) {
            extenders.push(meta.trim().to_string());
        }
        if content.trim().is_empty() {
            continue;
        }
        if !seen_rule && is_header(content) {
            seen_rule = true;
            continue;
        }
        seen_rule = true;
        raw_rules.push(parse_line(content, line)?);
    }

    let mut index: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    for r in &raw_rules {
        if index.contains_key(&r.target) {
            return Err(Error::DuplicateTarget {
                name: r.target.clone(),
                line: r.line,
            });
        }
        index.insert(r.target.clone(), names.len());
        names.push(r.target.clone());
    }
    let mut inputs = Vec::new();
    let mut warnings = Vec::new();
    for r in &raw_rules {
        let mut used = Vec::new();
        collect_names(&r.expr, &mut used);
        for (name, col) in used {
            if index.contains_key(name) {
                continue;
            }
            if options.strict {
                return Err(Error::UndeclaredVariable {
                    name: name.to_string(),
                    line: r.line,
                    column: col,
                });
            }
            warnings.push(format!(
                "line {}: `{name}` has no rule and is treated as a constant input",
                r.line
            ));
            index.insert(name.to_string(), names.len());
            names.push(name.to_string());
            inputs.push(name.to_string());
        }
    }

    let mut functions = Vec::with_capacity(names.len());
    let mut exprs = Vec::with_capacity(names.len());
    let mut pruned = Vec::new();
    for (i, r) in raw_rules.iter().enumerate() {
        let expr = resolve(&r.expr, &index);
        let vars: Vec<usize> = expr.variables().into_iter().collect();
        let (f, dropped) = UpdateFunction::tabulate(vars.clone(), |v| {
            expr.eval(&|j| v[vars.binary_search(&j).unwrap()])
        })
        .map_err(|e| match e {
            Error::InvalidArgument(m) => syntax(r.line, 1, m),
            other => other,
        })?;
        for &j in &dropped {
            warnings.push(format!(
                "line {}: `{}` does not influence `{}` and was dropped",
                r.line, names[j], r.target
            ));
            pruned.push((i, j));
        }
        functions.push(f);
        exprs.push(Some(expr));
    }
    for name in &inputs {
        let i = index[name];
        functions.push(UpdateFunction::copy_of(i));
        exprs.push(Some(Expr::Var(i)));
    }
    for e in &extenders {
        if !index.contains_key(e) {
            warnings.push(format!("extender `{e}` has no rule"));
        }
    }
    let mut network = BooleanNetwork::new(names, functions)?;
    network.set_exprs(exprs);
    network.add_pruned(pruned);
    let rules = raw_rules
        .into_iter()
        .map(|r| Rule {
            target: r.target,
            expression: r.text,
            line: r.line,
        })
        .collect();
    Ok(NetworkDocument {
        network,
        rules,
        inputs,
        extenders,
        warnings,
    })
}

/// Parses a rule file leniently (undeclared variables become inputs).
pub fn parse_bnet(text: &str) -> Result<BooleanNetwork> {
    parse_document(text, ParseOptions::default()).map(|d| d.network)
}

/// Disjunction of prime implicants, or `0`/`1` for constants.
pub fn dnf(net: &BooleanNetwork, i: usize) -> String {
    let f = net.function(i);
    if let Some(b) = f.is_constant() {
        return if b { "1" } else { "0" }.to_string();
    }
    net.prime_implicants(i, true)
        .iter()
        .map(|t| {
            let lits: Vec<String> = t
                .fixed()
                .iter()
                .map(|j| {
                    let neg = if t.get(j) == Some(true) { "" } else { "!" };
                    format!("{neg}{}", net.name(j))
                })
                .collect();
            lits.join(" & ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

pub fn serialize_bnet(net: &BooleanNetwork) -> String {
    serialize_bnet_with_extenders(net, ComponentSet::empty())
}

/// Like [`serialize_bnet`], with an `# extender:` line for each listed component.
pub fn serialize_bnet_with_extenders(net: &BooleanNetwork, extenders: ComponentSet) -> String {
    let mut out = String::new();
    for e in extenders.iter() {
        writeln!(out, "# extender: {}", net.name(e)).unwrap();
    }
    for i in 0..net.n() {
        let rhs = match net.expr(i) {
            Some(e) => e.render(net.names()),
            None => dnf(net, i),
        };
        writeln!(out, "{}, {}", net.name(i), rhs).unwrap();
    }
    out
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of an interaction graph. Edges carry their sign set; extender
/// components are drawn as dashed boxes.
pub fn interaction_dot(g: &InteractionGraph, names: &[String], extenders: ComponentSet) -> String {
    let mut out = String::from("digraph interactions {\n");
    for (i, name) in names.iter().enumerate().take(g.n()) {
        if extenders.contains(i) {
            writeln!(
                out,
                "  {} [shape=box, style=dashed, extender=true];",
                dot_id(name)
            )
            .unwrap();
        } else {
            writeln!(out, "  {};", dot_id(name)).unwrap();
        }
    }
    for ((s, t), sign) in g.edges() {
        writeln!(
            out,
            "  {} -> {} [label=\"{sign}\"];",
            dot_id(&names[s]),
            dot_id(&names[t])
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of a state transition graph with bit-string labels.
pub fn transitions_dot(n: usize, edges: &[(State, State)]) -> String {
    let mut out = String::from("digraph transitions {\n");
    for b in 0..1u64 << n {
        let s = State::from_bits(b, n).to_string();
        writeln!(out, "  \"{s}\";").unwrap();
    }
    for (x, y) in edges {
        writeln!(out, "  \"{x}\" -> \"{y}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub sign: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttractorRecord {
    pub fixed_point: bool,
    pub states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRecord {
    pub name: String,
    pub checks: u64,
    pub violations: u64,
    /// Exploratory checks whose violations do not fail the run.
    pub informational: bool,
    pub failures: Vec<String>,
}

/// Analysis results in a stable JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    FixedPoints {
        states: Vec<String>,
    },
    TrapSpaces {
        minimal: bool,
        trap_spaces: Vec<String>,
    },
    Attractors {
        attractors: Vec<AttractorRecord>,
    },
    MinTrapSpace {
        state: String,
        trap_space: String,
    },
    Info {
        components: Vec<String>,
        edges: Vec<EdgeRecord>,
        linear: Vec<String>,
        inputs: Vec<String>,
        warnings: Vec<String>,
    },
    Cut {
        cuttable: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        cut: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        violation: Option<String>,
    },
    Reach {
        semantics: String,
        reachable: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        path: Option<Vec<String>>,
        warnings: Vec<String>,
    },
    Geodesic {
        semantics: String,
        exists: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        path: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        certificate: Option<BTreeMap<String, String>>,
    },
    Refine {
        maxima: Vec<u32>,
        reachable: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        path: Option<Vec<Vec<u32>>>,
    },
    Verify {
        suite: String,
        seed: u64,
        count: usize,
        n: usize,
        passed: bool,
        properties: Vec<PropertyRecord>,
    },
}

impl Report {
    pub fn fixed_points(states: &[State]) -> Self {
        Report::FixedPoints {
            states: sorted_strings(states),
        }
    }

    pub fn trap_spaces(spaces: &[crate::space::Subspace], minimal: bool) -> Self {
        Report::TrapSpaces {
            minimal,
            trap_spaces: sorted_strings(spaces),
        }
    }

    pub fn attractors(attractors: &[crate::dynamics::Attractor]) -> Self {
        let mut records: Vec<AttractorRecord> = attractors
            .iter()
            .map(|a| AttractorRecord {
                fixed_point: a.is_fixed_point(),
                states: sorted_strings(a.states()),
            })
            .collect();
        records.sort_by(|a, b| a.states.cmp(&b.states));
        Report::Attractors {
            attractors: records,
        }
    }
}

fn sorted_strings<T: ToString>(items: &[T]) -> Vec<String> {
    let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

/// Compact JSON with sorted object keys.
pub fn export_report(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    serde_json::to_string(&value).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{self, Caps, Semantics};
    use crate::fixtures;
    use crate::structure::interaction_graph;

    fn same_tables(a: &BooleanNetwork, b: &BooleanNetwork) -> bool {
        a.n() == b.n() && (0..a.n()).all(|i| a.function(i) == b.function(i))
    }

    #[test]
    fn parses_swap() {
        let net = parse_bnet("x1, x2\nx2, x1\n").unwrap();
        assert!(same_tables(&net, &fixtures::n_swap()));
        assert_eq!(net.names(), ["x1", "x2"]);
    }

    #[test]
    fn parses_neg_up_to_renaming() {
        let net = parse_bnet("a, !a\nb, a\n").unwrap();
        assert!(same_tables(&net, &fixtures::n_neg()));
        let pruned = parse_bnet("a, !a & b | !a & !b\nb, a\n").unwrap();
        assert!(same_tables(&pruned, &fixtures::n_neg()));
        assert_eq!(pruned.pruned_inputs(), [(0, 1)]);
    }

    #[test]
    fn syntax_errors_are_located() {
        match parse_bnet("x, y &\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        match parse_bnet("a, a\n\nb, (a | \n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_bnet("a, a ^ a"),
            Err(Error::Syntax { column: 6, .. })
        ));
        assert!(matches!(
            parse_bnet("a a"),
            Err(Error::Syntax { column: 3, .. })
        ));
        assert!(matches!(parse_bnet("a, (a"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_bnet("a, a)"),
            Err(Error::Syntax { column: 5, .. })
        ));
        assert!(matches!(
            parse_bnet("1a, a"),
            Err(Error::Syntax { column: 1, .. })
        ));
    }

    #[test]
    fn duplicate_targets_rejected() {
        assert_eq!(
            parse_bnet("a, a\na, !a\n"),
            Err(Error::DuplicateTarget {
                name: "a".into(),
                line: 2
            })
        );
    }

    #[test]
    fn undeclared_variables() {
        let doc = parse_document("a, b & a\n", ParseOptions::default()).unwrap();
        assert_eq!(doc.inputs, ["b"]);
        assert_eq!(doc.network.names(), ["a", "b"]);
        assert_eq!(doc.network.regulators(1), [1]);
        assert_eq!(doc.warnings.len(), 1);
        let strict = parse_document("a, b & a\n", ParseOptions { strict: true });
        assert_eq!(
            strict,
            Err(Error::UndeclaredVariable {
                name: "b".into(),
                line: 1,
                column: 4
            })
        );
    }

    #[test]
    fn comments_headers_and_extenders() {
        let text = "targets, factors\n# extender: e\n\na, e # trailing\ne, a\n";
        let doc = parse_document(text, ParseOptions::default()).unwrap();
        assert_eq!(doc.network.names(), ["a", "e"]);
        assert_eq!(doc.extenders, ["e"]);
        assert_eq!(doc.extender_set(), ComponentSet::singleton(1));
        assert_eq!(doc.rules[0].expression, "e");
        assert_eq!(doc.rules[0].line, 4);
    }

    #[test]
    fn constants_and_precedence() {
        let net = parse_bnet("a, 0\nb, 1\nc, a | b & !c\n").unwrap();
        assert_eq!(net.function(0).is_constant(), Some(false));
        assert_eq!(net.function(1).is_constant(), Some(true));
        let x = State::from_bools(&[true, false, false]);
        assert!(net.eval_component(2, x));
        let y = State::from_bools(&[false, true, true]);
        assert!(!net.eval_component(2, y));
    }

    #[test]
    fn serialization_round_trips() {
        let swap = serialize_bnet(&fixtures::n_swap());
        assert_eq!(swap, "x1, x2\nx2, x1\n");
        for net in [fixtures::n_five(), fixtures::n_neg(), fixtures::neg_cycle()] {
            let back = parse_bnet(&serialize_bnet(&net)).unwrap();
            assert!(same_tables(&net, &back));
        }
        let c = fixtures::constant(&[false, true]);
        assert_eq!(serialize_bnet(&c), "x1, 0\nx2, 1\n");
        let parsed = parse_bnet("a, !(b | c)\nb, a & (b | !c)\nc, 0\n").unwrap();
        let text = serialize_bnet(&parsed);
        assert!(same_tables(&parsed, &parse_bnet(&text).unwrap()));
    }

    #[test]
    fn extender_header_round_trips() {
        let net = fixtures::n_swap();
        let text = serialize_bnet_with_extenders(&net, ComponentSet::singleton(1));
        assert!(text.starts_with("# extender: x2\n"));
        let doc = parse_document(&text, ParseOptions::default()).unwrap();
        assert_eq!(doc.extenders, ["x2"]);
    }

    #[test]
    fn dot_exports() {
        let swap = fixtures::n_swap();
        let g = interaction_graph(&swap);
        let dot = interaction_dot(&g, swap.names(), ComponentSet::empty());
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"x1\" -> \"x2\" [label=\"+\"]"));
        assert!(dot.contains("\"x2\" -> \"x1\" [label=\"+\"]"));

        let edges =
            dynamics::transitions(&swap, Semantics::Asynchronous, &Caps::default()).unwrap();
        let dot = transitions_dot(2, &edges);
        for e in [
            "\"01\" -> \"11\"",
            "\"01\" -> \"00\"",
            "\"10\" -> \"11\"",
            "\"10\" -> \"00\"",
        ] {
            assert!(dot.contains(e), "{e}");
        }
        assert_eq!(dot.matches("->").count(), 4);

        let c = fixtures::constant(&[true]);
        let dot = interaction_dot(
            &interaction_graph(&c),
            c.names(),
            ComponentSet::singleton(0),
        );
        assert!(!dot.contains("->"));
        assert!(dot.contains("dashed"));
    }

    #[test]
    fn report_examples() {
        let caps = Caps::default();
        let fps = dynamics::fixed_points(&fixtures::n_five(), &caps).unwrap();
        assert_eq!(
            export_report(&Report::fixed_points(&fps)),
            r#"{"kind":"fixed_points","states":["00000","10110","11111"]}"#
        );
        let traps = dynamics::trap_spaces(&fixtures::n_swap(), &caps).unwrap();
        assert_eq!(
            export_report(&Report::trap_spaces(&traps, false)),
            r#"{"kind":"trap_spaces","minimal":false,"trap_spaces":["**","00","11"]}"#
        );
        assert_eq!(
            export_report(&Report::attractors(&[])),
            r#"{"attractors":[],"kind":"attractors"}"#
        );
    }
}
