//! The line-oriented quiver format.
//!
//! ```text
//! FIELD GF 2
//! NILBOUND 3
//! VERTEX 1 2 3
//! ARROW a 1 2
//! ARROW b 2 3
//! REL b*a - 2*b*c   # b after a
//! ```

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{AlgebraElement, ReductionSystem};
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::scalar::{parse_rational, Field};

/// One summand of a relation: a coefficient times a path, the arrows listed
/// as written (leftmost is applied last). An empty arrow list with a vertex
/// is the trivial path `e(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    pub factors: Vec<String>,
    pub vertex: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDocument {
    pub field: Field,
    pub nilbound: usize,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Vec<Term>>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

struct RelationParser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'a> RelationParser<'a> {
    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn atom(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = if rest.starts_with("e(") {
            rest.find(')').map_or(rest.len(), |i| i + 1)
        } else {
            rest.find(|c: char| c.is_whitespace() || "*+-".contains(c))
                .unwrap_or(rest.len())
        };
        self.pos += len;
        (self.offset + start + 1, &rest[..len])
    }

    fn term(&mut self, sign: bool) -> Result<Term> {
        let mut coefficient = if sign { -BigRational::one() } else { BigRational::one() };
        let mut factors = Vec::new();
        let mut vertex = None;
        let mut first = true;
        loop {
            let (col, atom) = self.atom();
            if atom.is_empty() {
                return Err(parse_error(self.line, col, "expected an arrow name or coefficient"));
            }
            let numeric = atom.starts_with(|c: char| c.is_ascii_digit());
            if first && numeric && !atom.contains('(') {
                let c = parse_rational(atom)
                    .ok_or_else(|| parse_error(self.line, col, format!("malformed coefficient `{atom}`")))?;
                coefficient *= c;
            } else if let Some(v) = atom.strip_prefix("e(").and_then(|a| a.strip_suffix(')')) {
                if vertex.is_some() || !factors.is_empty() {
                    return Err(parse_error(self.line, col, "a trivial path cannot be multiplied"));
                }
                vertex = Some(v.trim().to_string());
            } else if is_name(atom) {
                if vertex.is_some() {
                    return Err(parse_error(self.line, col, "a trivial path cannot be multiplied"));
                }
                factors.push(atom.to_string());
            } else {
                return Err(parse_error(self.line, col, format!("unexpected `{atom}`")));
            }
            first = false;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if factors.is_empty() && vertex.is_none() {
            return Err(self.err("a term needs a path"));
        }
        Ok(Term {
            coefficient,
            factors,
            vertex,
        })
    }

    fn relation(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negative = true;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            terms.push(self.term(negative)?);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.err(format!("expected `+` or `-`, found `{c}`"))),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses a quiver document, checking names, composability and uniformity
/// of relations.
pub fn parse_quiver_file(text: &str) -> Result<QuiverDocument> {
    let mut field = None;
    let mut nilbound = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<ArrowDecl> = Vec::new();
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(kw_col, keyword)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        match keyword {
            "FIELD" => {
                if field.is_some() {
                    return Err(parse_error(line_no, kw_col, "FIELD declared twice"));
                }
                field = Some(match args {
                    [(_, "Q")] => Field::Rational,
                    [(_, "GF"), (col, q)] => {
                        let q: u64 = q
                            .parse()
                            .map_err(|_| parse_error(line_no, *col, format!("malformed prime `{q}`")))?;
                        Field::prime(q).map_err(|e| parse_error(line_no, *col, e.to_string()))?
                    }
                    _ => return Err(parse_error(line_no, kw_col, "expected `FIELD Q` or `FIELD GF <prime>`")),
                });
            }
            "NILBOUND" => {
                if nilbound.is_some() {
                    return Err(parse_error(line_no, kw_col, "NILBOUND declared twice"));
                }
                let [(col, n)] = args else {
                    return Err(parse_error(line_no, kw_col, "expected `NILBOUND <N>`"));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| parse_error(line_no, *col, format!("malformed bound `{n}`")))?;
                if n < 2 {
                    return Err(parse_error(line_no, *col, format!("nilpotency bound must be at least 2, got {n}")));
                }
                nilbound = Some(n);
            }
            "VERTEX" => {
                if args.is_empty() {
                    return Err(parse_error(line_no, kw_col, "expected at least one vertex name"));
                }
                for &(col, name) in args {
                    if !is_name(name) {
                        return Err(parse_error(line_no, col, format!("invalid vertex name `{name}`")));
                    }
                    if vertices.iter().any(|v| v == name) {
                        return Err(parse_error(line_no, col, format!("duplicate vertex `{name}`")));
                    }
                    vertices.push(name.to_string());
                }
            }
            "ARROW" => {
                let [(name_col, name), (src_col, src), (tgt_col, tgt)] = args else {
                    return Err(parse_error(line_no, kw_col, "expected `ARROW <name> <source> <target>`"));
                };
                if !is_name(name) || name.starts_with(|c: char| c.is_ascii_digit()) || name.starts_with("e(") {
                    return Err(parse_error(line_no, *name_col, format!("invalid arrow name `{name}`")));
                }
                if arrows.iter().any(|a| a.name == *name) {
                    return Err(parse_error(line_no, *name_col, format!("duplicate arrow `{name}`")));
                }
                for (col, v) in [(src_col, src), (tgt_col, tgt)] {
                    if !vertices.iter().any(|w| w == v) {
                        return Err(parse_error(line_no, *col, format!("unknown vertex {v}")));
                    }
                }
                arrows.push(ArrowDecl {
                    name: name.to_string(),
                    source: src.to_string(),
                    target: tgt.to_string(),
                });
            }
            "REL" => {
                let offset = kw_col - 1 + keyword.len();
                let mut parser = RelationParser {
                    text: &line[offset..],
                    pos: 0,
                    line: line_no,
                    offset,
                };
                let terms = parser.relation()?;
                check_relation(&vertices, &arrows, &terms, line_no, kw_col)?;
                relations.push(terms);
            }
            other => return Err(parse_error(line_no, kw_col, format!("unknown keyword `{other}`"))),
        }
    }
    let nilbound = nilbound.ok_or_else(|| parse_error(1, 1, "missing NILBOUND declaration"))?;
    Ok(QuiverDocument {
        field: field.unwrap_or(Field::Rational),
        nilbound,
        vertices,
        arrows,
        relations,
    })
}

fn term_endpoints(
    vertices: &[String],
    arrows: &[ArrowDecl],
    term: &Term,
    line: usize,
    column: usize,
) -> Result<(String, String)> {
    if let Some(v) = &term.vertex {
        if !vertices.contains(v) {
            return Err(parse_error(line, column, format!("unknown vertex {v}")));
        }
        return Ok((v.clone(), v.clone()));
    }
    let mut decls = Vec::new();
    for name in &term.factors {
        let decl = arrows
            .iter()
            .find(|a| a.name == *name)
            .ok_or_else(|| parse_error(line, column, format!("unknown arrow {name}")))?;
        decls.push(decl);
    }
    // Written left to right, applied right to left.
    for w in decls.windows(2) {
        if w[1].target != w[0].source {
            return Err(parse_error(
                line,
                column,
                format!("non-composable path: {} cannot follow {}", w[0].name, w[1].name),
            ));
        }
    }
    Ok((decls.last().unwrap().source.clone(), decls[0].target.clone()))
}

fn check_relation(vertices: &[String], arrows: &[ArrowDecl], terms: &[Term], line: usize, column: usize) -> Result<()> {
    let mut ends = None;
    for t in terms {
        let e = term_endpoints(vertices, arrows, t, line, column)?;
        match &ends {
            None => ends = Some(e),
            Some(prev) if *prev != e => {
                return Err(parse_error(
                    line,
                    column,
                    format!(
                        "non-uniform relation: paths {}→{} and {}→{} are mixed",
                        prev.0, prev.1, e.0, e.1
                    ),
                ))
            }
            _ => {}
        }
    }
    Ok(())
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QuiverDocument {
    /// The canonical printed form; parsing it yields an identical document.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Rational => writeln!(f, "FIELD Q")?,
            Field::Prime(q) => writeln!(f, "FIELD GF {q}")?,
        }
        writeln!(f, "NILBOUND {}", self.nilbound)?;
        if !self.vertices.is_empty() {
            writeln!(f, "VERTEX {}", self.vertices.join(" "))?;
        }
        for a in &self.arrows {
            writeln!(f, "ARROW {} {} {}", a.name, a.source, a.target)?;
        }
        for rel in &self.relations {
            write!(f, "REL")?;
            for (i, t) in rel.iter().enumerate() {
                let negative = t.coefficient.is_negative();
                let mag = t.coefficient.abs();
                match (i, negative) {
                    (0, false) => write!(f, " ")?,
                    (0, true) => write!(f, " -")?,
                    (_, false) => write!(f, " + ")?,
                    (_, true) => write!(f, " - ")?,
                }
                if !mag.is_one() {
                    write_coefficient(f, &mag)?;
                    write!(f, "*")?;
                }
                match &t.vertex {
                    Some(v) => write!(f, "e({v})")?,
                    None => write!(f, "{}", t.factors.join("*"))?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl QuiverDocument {
    /// The same document read over another field.
    pub fn with_field(&self, field: Field) -> QuiverDocument {
        QuiverDocument {
            field,
            ..self.clone()
        }
    }

    pub fn quiver(&self) -> Result<Quiver> {
        let vertex_names: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(String, String, String)> = self
            .arrows
            .iter()
            .map(|a| (a.name.clone(), a.source.clone(), a.target.clone()))
            .collect();
        Quiver::new(vertex_names, arrows)
    }

    pub fn to_system(&self) -> Result<ReductionSystem> {
        let quiver = self.quiver()?;
        let field = self.field;
        let mut relations = Vec::new();
        for rel in &self.relations {
            let mut x = AlgebraElement::zero(field);
            for t in rel {
                let path = match &t.vertex {
                    Some(v) => quiver.parse_path(&format!("e({v})"))?,
                    None => quiver.parse_path(&t.factors.join("*"))?,
                };
                let c = field.from_rational(&t.coefficient)?;
                x.add_term(path, c);
            }
            if !x.is_zero() {
                relations.push(x);
            }
        }
        ReductionSystem::new(quiver, field, relations, self.nilbound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn integer(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    const FIX_C: &str = "FIELD Q\nNILBOUND 3\nVERTEX 1 2 3\nARROW a 1 2\nARROW c 1 2\nARROW b 2 3\nREL b*a\n";

    #[test]
    fn parses_fix_c() {
        let doc = parse_quiver_file(FIX_C).unwrap();
        assert_eq!(doc.vertices, ["1", "2", "3"]);
        assert_eq!(doc.arrows.len(), 3);
        assert_eq!(doc.relations.len(), 1);
        assert_eq!(doc.relations[0][0].factors, ["b", "a"]);
        assert_eq!(doc.to_string(), FIX_C);
        assert_eq!(doc.to_system().unwrap().module(0).dim(), 4);
    }

    #[test]
    fn coefficients_and_signs() {
        let text = FIX_C.replace("REL b*a", "REL b*a - 2*b*c # mixed");
        let doc = parse_quiver_file(&text).unwrap();
        let rel = &doc.relations[0];
        assert_eq!(rel[1].coefficient, integer(-2));
        assert_eq!(rel[1].factors, ["b", "c"]);
        let again = parse_quiver_file(&doc.to_string()).unwrap();
        assert_eq!(again, doc);
        let half = parse_quiver_file(&FIX_C.replace("REL b*a", "REL -1/2*b*a+b*c")).unwrap();
        assert_eq!(half.relations[0][0].coefficient, BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_quiver_file("NILBOUND 2\nVERTEX 1 2\nARROW x 1 9\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3, column 11: unknown vertex 9");
        let err = parse_quiver_file(&FIX_C.replace("REL b*a", "REL a*b")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 7, .. }));
        assert!(err.to_string().contains("non-composable"));
        let err = parse_quiver_file(&FIX_C.replace("REL b*a", "REL b*a + a")).unwrap_err();
        assert!(err.to_string().contains("non-uniform"));
        let err = parse_quiver_file(&FIX_C.replace("REL b*a", "REL 2/0*b*a")).unwrap_err();
        assert!(err.to_string().contains("malformed coefficient"), "{err}");
        let err = parse_quiver_file(&FIX_C.replace("REL b*a", "REL b*d")).unwrap_err();
        assert!(err.to_string().contains("unknown arrow d"));
        let err = parse_quiver_file("NILBOUND 2\nARROW a 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 9, .. }));
    }

    #[test]
    fn trivial_paths_in_relations() {
        let doc = parse_quiver_file("NILBOUND 3\nVERTEX v\nARROW x v v\nREL x*x - e(v)\n").unwrap();
        assert_eq!(doc.relations[0][1].vertex.as_deref(), Some("v"));
        assert_eq!(parse_quiver_file(&doc.to_string()).unwrap(), doc);
        assert!(matches!(doc.to_system(), Err(Error::NotAdmissible(_))));
    }

    fn arb_document() -> impl Strategy<Value = QuiverDocument> {
        let term = (-5i64..=5, proptest::collection::vec(0usize..2, 1..3))
            .prop_filter("nonzero", |(c, _)| *c != 0);
        (proptest::collection::vec(proptest::collection::vec(term, 1..4), 0..3), 2usize..5, any::<bool>())
            .prop_map(|(rels, nilbound, prime)| {
                let names = ["x", "y"];
                QuiverDocument {
                    field: if prime { Field::Prime(7) } else { Field::Rational },
                    nilbound,
                    vertices: vec!["v".into()],
                    arrows: names
                        .iter()
                        .map(|n| ArrowDecl {
                            name: n.to_string(),
                            source: "v".into(),
                            target: "v".into(),
                        })
                        .collect(),
                    relations: rels
                        .into_iter()
                        .map(|terms| {
                            terms
                                .into_iter()
                                .map(|(c, fs)| Term {
                                    coefficient: integer(c),
                                    factors: fs.iter().map(|&i| names[i].to_string()).collect(),
                                    vertex: None,
                                })
                                .collect()
                        })
                        .collect(),
                }
            })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(doc in arb_document()) {
            let printed = doc.to_string();
            let parsed = parse_quiver_file(&printed).unwrap();
            prop_assert_eq!(&parsed, &doc);
            prop_assert_eq!(parsed.to_string(), printed);
        }
    }
}
