//! The `gpd` text format for projections and lifts.
//!
//! ```text
//! gpd 1
//! graph
//!   vertices v0 v1
//!   edge e0 v0 v1
//!   edge e1 v0 v1
//! rotation
//!   v0 : e0.0t e1.0t
//!   v1 : e0.1h e1.1h
//! double_points
//!   d0 : e0#0 e1#0 : e0.0h e1.0h e0.1t e1.1t
//! lift
//!   d0 : e1#0
//! ```
//!
//! A dart is written `<edge>.<segment>t` for the tail end of a segment and
//! `<edge>.<segment>h` for its head end; a passage is `<edge>#<ordinal>`.
//! Rotations and double point darts are counterclockwise. The `lift`
//! section names the over passage of every double point. A `#` that starts
//! a token begins a comment running to the end of the line.

use std::collections::HashMap;
use std::fmt::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{validate, DartRef, DoublePoint, Passage, Projection, ProjectionData, ViolationKind};
use crate::graph::{AbstractGraph, EdgeId};
use crate::lift::Lift;

pub const FORMAT_VERSION: u32 = 1;

/// Diagnostic codes. `S` codes are syntax errors, `V` codes semantic ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Code {
    /// Missing or unsupported `gpd <version>` header.
    S001,
    /// Unknown or repeated section header.
    S002,
    /// Line does not have the shape its section requires.
    S003,
    /// Malformed dart or passage token.
    S004,
    /// Content before the first section.
    S005,
    /// Reference to an undeclared vertex, edge or double point.
    V001,
    /// Name declared twice.
    V002,
    /// Passage ordinals along an edge are not `0..n`.
    V201,
    /// Double point without exactly four darts.
    V202,
    /// Double point darts do not alternate between its two passages.
    V203,
    /// A dart listed both at a vertex and at a double point.
    V204,
    /// Vertex rotation does not list exactly the darts at that vertex.
    V205,
    /// Some connected component does not close up on the sphere.
    V206,
    /// `lift` entry missing or naming a passage not at its double point.
    V301,
}

impl Code {
    pub fn is_syntax(self) -> bool {
        matches!(self, Code::S001 | Code::S002 | Code::S003 | Code::S004 | Code::S005)
    }

    fn of_violation(kind: ViolationKind) -> Code {
        match kind {
            ViolationKind::UnknownEdge => Code::V001,
            ViolationKind::PassageOrdinals => Code::V201,
            ViolationKind::DoublePointValence => Code::V202,
            ViolationKind::Transversality => Code::V203,
            ViolationKind::DoublePointAtVertex => Code::V204,
            ViolationKind::Rotation => Code::V205,
            ViolationKind::NotSpherical => Code::V206,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: Code,
    /// 1-based; 0 when the problem concerns the document as a whole.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {} {}", self.line, self.column, self.code, self.message)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}", .diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseError {
    fn one(code: Code, line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            diagnostics: vec![Diagnostic {
                code,
                line,
                column,
                message: message.into(),
            }],
        }
    }

    pub fn is_syntax(&self) -> bool {
        self.diagnostics.iter().any(|d| d.code.is_syntax())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpdDocument {
    pub projection: Projection,
    /// Over passage per double point, when the document has a `lift`.
    pub over: Option<Vec<u8>>,
}

impl GpdDocument {
    pub fn lift(&self) -> Option<Lift<'_>> {
        self.over.as_ref().map(|o| Lift::new(&self.projection, o.clone()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Graph,
    Rotation,
    DoublePoints,
    Lift,
}

/// A token with its 1-based column.
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok {
                    text: &line[s..i],
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            if ch == '#' {
                break;
            }
            start = Some(i);
        }
    }
    out
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

struct Parser {
    vertices: Vec<(String, usize)>,
    edges: Vec<(String, String, String, usize, usize)>,
    rotations: Vec<(String, Vec<(String, usize, bool)>, usize, usize)>,
    double_points: Vec<(String, [(String, usize); 2], Vec<(String, usize, bool)>, usize, usize)>,
    lift: Option<(usize, Vec<(String, String, usize, usize, usize)>)>,
}

fn parse_dart(t: &Tok<'_>, line: usize) -> Result<(String, usize, bool), ParseError> {
    let bad = || {
        ParseError::one(
            Code::S004,
            line,
            t.col,
            format!("`{}` is not a dart (expected e.g. `e0.1t`)", t.text),
        )
    };
    let (edge, rest) = t.text.rsplit_once('.').ok_or_else(bad)?;
    let head = match rest.chars().last() {
        Some('t') => false,
        Some('h') => true,
        _ => return Err(bad()),
    };
    let seg: usize = rest[..rest.len() - 1].parse().map_err(|_| bad())?;
    if !valid_name(edge) {
        return Err(bad());
    }
    Ok((edge.to_string(), seg, head))
}

fn parse_passage(t: &Tok<'_>, line: usize) -> Result<(String, usize), ParseError> {
    let bad = || {
        ParseError::one(
            Code::S004,
            line,
            t.col,
            format!("`{}` is not a passage (expected e.g. `e0#1`)", t.text),
        )
    };
    let (edge, ord) = t.text.rsplit_once('#').ok_or_else(bad)?;
    let ord: usize = ord.parse().map_err(|_| bad())?;
    if !valid_name(edge) {
        return Err(bad());
    }
    Ok((edge.to_string(), ord))
}

fn expect_name(t: &Tok<'_>, line: usize) -> Result<String, ParseError> {
    if valid_name(t.text) {
        Ok(t.text.to_string())
    } else {
        Err(ParseError::one(
            Code::S003,
            line,
            t.col,
            format!("`{}` is not a valid name", t.text),
        ))
    }
}

/// Splits `name : a b c [: x y z]` into the name and colon-separated groups.
fn colon_groups<'a, 'b>(
    toks: &'b [Tok<'a>],
    line: usize,
    groups: usize,
) -> Result<(&'b Tok<'a>, Vec<&'b [Tok<'a>]>), ParseError> {
    let shape = || {
        let col = toks.first().map_or(1, |t| t.col);
        ParseError::one(
            Code::S003,
            line,
            col,
            format!("expected `name :` followed by {groups} group(s) separated by `:`"),
        )
    };
    if toks.len() < 2 || toks[1].text != ":" {
        return Err(shape());
    }
    let mut out = Vec::new();
    let mut rest = &toks[2..];
    loop {
        match rest.iter().position(|t| t.text == ":") {
            Some(i) => {
                out.push(&rest[..i]);
                rest = &rest[i + 1..];
            }
            None => {
                out.push(rest);
                break;
            }
        }
    }
    if out.len() != groups {
        return Err(shape());
    }
    Ok((&toks[0], out))
}

impl Parser {
    fn line(&mut self, section: Section, toks: &[Tok<'_>], n: usize) -> Result<(), ParseError> {
        match section {
            Section::Graph => match toks[0].text {
                "vertices" => {
                    for t in &toks[1..] {
                        self.vertices.push((expect_name(t, n)?, n));
                    }
                }
                "edge" if toks.len() == 4 => {
                    let name = expect_name(&toks[1], n)?;
                    self.edges.push((
                        name,
                        expect_name(&toks[2], n)?,
                        expect_name(&toks[3], n)?,
                        n,
                        toks[1].col,
                    ));
                }
                _ => {
                    return Err(ParseError::one(
                        Code::S003,
                        n,
                        toks[0].col,
                        "graph lines are `vertices <name>...` or `edge <name> <tail> <head>`",
                    ))
                }
            },
            Section::Rotation => {
                let (name, groups) = colon_groups(toks, n, 1)?;
                let darts = groups[0].iter().map(|t| parse_dart(t, n)).collect::<Result<_, _>>()?;
                self.rotations.push((expect_name(name, n)?, darts, n, name.col));
            }
            Section::DoublePoints => {
                let (name, groups) = colon_groups(toks, n, 2)?;
                if groups[0].len() != 2 {
                    let col = groups[0].first().map_or(name.col, |t| t.col);
                    return Err(ParseError::one(
                        Code::S003,
                        n,
                        col,
                        "a double point lists exactly two passages",
                    ));
                }
                let p0 = parse_passage(&groups[0][0], n)?;
                let p1 = parse_passage(&groups[0][1], n)?;
                let darts = groups[1].iter().map(|t| parse_dart(t, n)).collect::<Result<_, _>>()?;
                self.double_points
                    .push((expect_name(name, n)?, [p0, p1], darts, n, name.col));
            }
            Section::Lift => {
                let (name, groups) = colon_groups(toks, n, 1)?;
                if groups[0].len() != 1 {
                    return Err(ParseError::one(
                        Code::S003,
                        n,
                        name.col,
                        "a lift line names one over passage",
                    ));
                }
                let (edge, ord) = parse_passage(&groups[0][0], n)?;
                self.lift.get_or_insert((n, Vec::new())).1.push((
                    expect_name(name, n)?,
                    edge,
                    ord,
                    n,
                    groups[0][0].col,
                ));
            }
        }
        Ok(())
    }
}

/// Parses a document and validates the projection it describes.
pub fn parse(text: &str) -> Result<GpdDocument, ParseError> {
    let mut header = false;
    let mut section: Option<Section> = None;
    let mut seen: Vec<Section> = Vec::new();
    let mut parser = Parser {
        vertices: Vec::new(),
        edges: Vec::new(),
        rotations: Vec::new(),
        double_points: Vec::new(),
        lift: None,
    };
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        if !header {
            if toks.len() == 2 && toks[0].text == "gpd" && toks[1].text == FORMAT_VERSION.to_string() {
                header = true;
                continue;
            }
            return Err(ParseError::one(
                Code::S001,
                n,
                toks[0].col,
                format!("expected header `gpd {FORMAT_VERSION}`"),
            ));
        }
        let indented = raw.starts_with(char::is_whitespace);
        if !indented {
            let s = match (toks[0].text, toks.len()) {
                ("graph", 1) => Section::Graph,
                ("rotation", 1) => Section::Rotation,
                ("double_points", 1) => Section::DoublePoints,
                ("lift", 1) => {
                    parser.lift.get_or_insert((n, Vec::new()));
                    Section::Lift
                }
                _ => {
                    return Err(ParseError::one(
                        Code::S002,
                        n,
                        toks[0].col,
                        format!(
                            "unknown section `{}` (expected graph, rotation, double_points or lift)",
                            toks[0].text
                        ),
                    ))
                }
            };
            if seen.contains(&s) {
                return Err(ParseError::one(
                    Code::S002,
                    n,
                    toks[0].col,
                    format!("section `{}` repeated", toks[0].text),
                ));
            }
            seen.push(s);
            section = Some(s);
            continue;
        }
        match section {
            None => {
                return Err(ParseError::one(
                    Code::S005,
                    n,
                    toks[0].col,
                    "content before the first section",
                ))
            }
            Some(s) => parser.line(s, &toks, n)?,
        }
    }
    if !header {
        return Err(ParseError::one(
            Code::S001,
            0,
            0,
            format!("empty document, expected header `gpd {FORMAT_VERSION}`"),
        ));
    }
    build(parser)
}

fn build(p: Parser) -> Result<GpdDocument, ParseError> {
    let mut diags = Vec::new();
    let mut vindex: HashMap<&str, usize> = HashMap::new();
    for (i, (name, line)) in p.vertices.iter().enumerate() {
        if vindex.insert(name, i).is_some() {
            diags.push(Diagnostic {
                code: Code::V002,
                line: *line,
                column: 1,
                message: format!("vertex `{name}` declared twice"),
            });
        }
    }
    let mut eindex: HashMap<&str, usize> = HashMap::new();
    for (i, (name, a, b, line, col)) in p.edges.iter().enumerate() {
        if eindex.insert(name, i).is_some() {
            diags.push(Diagnostic {
                code: Code::V002,
                line: *line,
                column: *col,
                message: format!("edge `{name}` declared twice"),
            });
        }
        for v in [a, b] {
            if !vindex.contains_key(v.as_str()) {
                diags.push(Diagnostic {
                    code: Code::V001,
                    line: *line,
                    column: *col,
                    message: format!("edge `{name}` uses undeclared vertex `{v}`"),
                });
            }
        }
    }
    if !diags.is_empty() {
        return Err(ParseError { diagnostics: diags });
    }
    let graph = AbstractGraph::from_names(
        p.vertices.iter().map(|(n, _)| n.clone()).collect(),
        p.edges
            .iter()
            .map(|(n, a, b, _, _)| (n.clone(), a.clone(), b.clone()))
            .collect(),
    )
    .expect("names checked above");

    let edge = |name: &str, line: usize, col: usize, diags: &mut Vec<Diagnostic>| match eindex.get(name) {
        Some(&e) => Some(EdgeId(e)),
        None => {
            diags.push(Diagnostic {
                code: Code::V001,
                line,
                column: col,
                message: format!("unknown edge `{name}`"),
            });
            None
        }
    };
    let dart = |(e, seg, head): &(String, usize, bool), line: usize, col: usize, diags: &mut Vec<Diagnostic>| {
        edge(e, line, col, diags).map(|edge| DartRef {
            edge,
            segment: *seg,
            head: *head,
        })
    };

    let mut rotations = vec![Vec::new(); graph.vertex_count()];
    let mut rotation_line = vec![0; graph.vertex_count()];
    for (name, darts, line, col) in &p.rotations {
        match vindex.get(name.as_str()) {
            Some(&v) if rotation_line[v] != 0 => diags.push(Diagnostic {
                code: Code::V002,
                line: *line,
                column: *col,
                message: format!("rotation of `{name}` given twice"),
            }),
            Some(&v) => {
                rotation_line[v] = *line;
                rotations[v] = darts.iter().filter_map(|d| dart(d, *line, *col, &mut diags)).collect();
            }
            None => diags.push(Diagnostic {
                code: Code::V001,
                line: *line,
                column: *col,
                message: format!("unknown vertex `{name}`"),
            }),
        }
    }
    let mut dindex: HashMap<&str, usize> = HashMap::new();
    let mut double_points = Vec::new();
    for (i, (name, passages, darts, line, col)) in p.double_points.iter().enumerate() {
        if dindex.insert(name, i).is_some() {
            diags.push(Diagnostic {
                code: Code::V002,
                line: *line,
                column: *col,
                message: format!("double point `{name}` declared twice"),
            });
        }
        let ps: Vec<Passage> = passages
            .iter()
            .filter_map(|(e, ord)| edge(e, *line, *col, &mut diags).map(|edge| Passage { edge, ordinal: *ord }))
            .collect();
        let ds: Vec<DartRef> = darts.iter().filter_map(|d| dart(d, *line, *col, &mut diags)).collect();
        if ps.len() == 2 {
            double_points.push(DoublePoint {
                passages: [ps[0], ps[1]],
                darts: ds,
            });
        }
    }
    if !diags.is_empty() {
        return Err(ParseError { diagnostics: diags });
    }
    let data = ProjectionData {
        graph,
        rotations,
        double_points,
    };
    if let Err(violations) = validate(&data) {
        let locate = |element: &str| -> (usize, usize) {
            if let Some(&i) = dindex.get(element) {
                return (p.double_points[i].3, p.double_points[i].4);
            }
            if let Some(&v) = vindex.get(element) {
                if rotation_line[v] != 0 {
                    let r = p.rotations.iter().find(|r| r.0 == element).unwrap();
                    return (r.2, r.3);
                }
                return (p.vertices[v].1, 1);
            }
            if let Some(&e) = eindex.get(element) {
                return (p.edges[e].3, p.edges[e].4);
            }
            element
                .strip_prefix('d')
                .and_then(|k| k.parse::<usize>().ok())
                .and_then(|k| p.double_points.get(k))
                .map_or((0, 0), |d| (d.3, d.4))
        };
        let diagnostics = violations
            .iter()
            .map(|v| {
                let (line, column) = locate(&v.element);
                Diagnostic {
                    code: Code::of_violation(v.kind),
                    line,
                    column,
                    message: v.to_string(),
                }
            })
            .collect();
        return Err(ParseError { diagnostics });
    }
    let projection = Projection::try_from(data).expect("validated above");

    let over = match &p.lift {
        None => None,
        Some((section_line, entries)) => {
            let mut over = vec![None; projection.cr()];
            for (name, e, ord, line, col) in entries {
                let Some(&d) = dindex.get(name.as_str()) else {
                    diags.push(Diagnostic {
                        code: Code::V001,
                        line: *line,
                        column: 1,
                        message: format!("unknown double point `{name}`"),
                    });
                    continue;
                };
                let passages = projection.double_points()[d].passages;
                let k = passages
                    .iter()
                    .position(|q| projection.graph().edge_name(q.edge) == e && q.ordinal == *ord);
                match k {
                    Some(k) if over[d].is_none() => over[d] = Some(k as u8),
                    Some(_) => diags.push(Diagnostic {
                        code: Code::V301,
                        line: *line,
                        column: *col,
                        message: format!("over passage of `{name}` given twice"),
                    }),
                    None => diags.push(Diagnostic {
                        code: Code::V301,
                        line: *line,
                        column: *col,
                        message: format!("`{e}#{ord}` is not a passage of `{name}`"),
                    }),
                }
            }
            for (d, o) in over.iter().enumerate() {
                if o.is_none() && diags.is_empty() {
                    diags.push(Diagnostic {
                        code: Code::V301,
                        line: *section_line,
                        column: 1,
                        message: format!("no over passage for `{}`", p.double_points[d].0),
                    });
                }
            }
            Some(over.into_iter().map(|o| o.unwrap_or(0)).collect())
        }
    };
    if !diags.is_empty() {
        return Err(ParseError { diagnostics: diags });
    }
    Ok(GpdDocument { projection, over })
}

fn write_dart(out: &mut String, g: &AbstractGraph, d: &DartRef) {
    let _ = write!(
        out,
        " {}.{}{}",
        g.edge_name(d.edge),
        d.segment,
        if d.head { 'h' } else { 't' }
    );
}

/// Canonical text of a projection, with a `lift` section when `over` is
/// given. Double points are named `d0, d1, ...`.
pub fn serialize(p: &Projection, over: Option<&[u8]>) -> String {
    serialize_data(p.data(), over)
}

/// Same as [`serialize`] for data that has not been validated.
pub fn serialize_data(data: &ProjectionData, over: Option<&[u8]>) -> String {
    let g = &data.graph;
    let mut out = format!("gpd {FORMAT_VERSION}\ngraph\n  vertices");
    for v in g.vertices() {
        out.push(' ');
        out.push_str(g.vertex_name(v));
    }
    out.push('\n');
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        let _ = writeln!(
            out,
            "  edge {} {} {}",
            g.edge_name(e),
            g.vertex_name(a),
            g.vertex_name(b)
        );
    }
    out.push_str("rotation\n");
    for v in g.vertices() {
        let _ = write!(out, "  {} :", g.vertex_name(v));
        for d in &data.rotations[v.0] {
            write_dart(&mut out, g, d);
        }
        out.push('\n');
    }
    out.push_str("double_points\n");
    for (i, dp) in data.double_points.iter().enumerate() {
        let _ = write!(out, "  d{i} :");
        for q in &dp.passages {
            let _ = write!(out, " {}#{}", g.edge_name(q.edge), q.ordinal);
        }
        out.push_str(" :");
        for d in &dp.darts {
            write_dart(&mut out, g, d);
        }
        out.push('\n');
    }
    if let Some(over) = over {
        out.push_str("lift\n");
        for (i, dp) in data.double_points.iter().enumerate() {
            let q = dp.passages[over[i] as usize];
            let _ = writeln!(out, "  d{i} : {}#{}", g.edge_name(q.edge), q.ordinal);
        }
    }
    out
}

impl fmt::Display for GpdDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(&self.projection, self.over.as_deref()))
    }
}
