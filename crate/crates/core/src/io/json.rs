//! JSON forms of the result types. Scalars are strings (`"a/b"` over Q, the
//! least residue over GF(q)); the field is stated once in a header.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::ReductionSystem;
use crate::error::{Error, Result};
use crate::grassmann::{PlueckerVector, Subspace};
use crate::linalg::Matrix;
use crate::modvar::{CertificateNode, DegenerationCertificate, Inequality, LeafKind, MatrixRep};
use crate::poly::MultiPoly;
use crate::quiver::Quiver;
use crate::scalar::{Field, Scalar};
use crate::uniserial::{Mast, PolynomialSystem, VarietyPoint};

pub fn field_name(field: Field) -> String {
    field.to_string()
}

pub fn parse_field_name(text: &str) -> Result<Field> {
    if text == "Q" {
        return Ok(Field::Rational);
    }
    text.strip_prefix("GF(")
        .and_then(|t| t.strip_suffix(')'))
        .and_then(|q| q.parse().ok())
        .map(Field::prime)
        .unwrap_or_else(|| Err(Error::Input(format!("unknown field `{text}`"))))
}

/// Wraps a payload with the field header.
pub fn with_header(field: Field, key: &str, payload: Value) -> Value {
    let mut m = Map::new();
    m.insert("field".into(), Value::String(field_name(field)));
    m.insert(key.into(), payload);
    Value::Object(m)
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

/// Row-major nested arrays.
pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

/// `[{"coefficient": c, "monomial": [[name, exponent], ...]}, ...]` in
/// increasing monomial order.
pub fn polynomial(p: &MultiPoly, names: &[String]) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mono: Vec<Value> = m
                    .iter()
                    .map(|&(v, e)| json!([names[v as usize], e]))
                    .collect();
                json!({ "coefficient": scalar(c), "monomial": mono })
            })
            .collect(),
    )
}

pub fn polynomial_system(eqs: &PolynomialSystem) -> Value {
    json!({
        "variables": eqs.names(),
        "equations": eqs.equations().iter().map(|p| json!({
            "text": p.display(eqs.names()),
            "terms": polynomial(p, eqs.names()),
        })).collect::<Vec<_>>(),
    })
}

/// Every coordinate of the mast, zeros included, in coordinate order.
pub fn point(quiver: &Quiver, mast: &Mast, field: Field, k: &VarietyPoint) -> Value {
    Value::Array(
        mast.coordinates()
            .iter()
            .map(|c| json!([c.name(quiver), scalar(&k.value(field, c))]))
            .collect(),
    )
}

pub fn subspace(c: &Subspace) -> Value {
    json!({ "dimension": c.dim(), "rows": c.rows().iter().map(|r| vector(r)).collect::<Vec<_>>() })
}

pub fn pluecker(pv: &PlueckerVector, labels: &[String]) -> Value {
    Value::Array(
        pv.subsets()
            .iter()
            .zip(pv.values())
            .map(|(s, v)| {
                let names: Vec<&str> = s.iter().map(|&i| labels[i].as_str()).collect();
                json!([names, scalar(v)])
            })
            .collect(),
    )
}

/// The module body: dimension, vertex of each coordinate, arrow matrices
/// keyed by arrow name.
pub fn module_body(quiver: &Quiver, x: &MatrixRep) -> Value {
    let arrows: Map<String, Value> = quiver
        .arrows()
        .iter()
        .zip(x.arrows())
        .map(|(a, m)| (a.name.clone(), matrix(m)))
        .collect();
    json!({
        "dimension": x.dim(),
        "vertices": x.tags().iter().map(|&v| quiver.vertex_name(v)).collect::<Vec<_>>(),
        "arrows": arrows,
    })
}

pub fn module(quiver: &Quiver, x: &MatrixRep) -> Value {
    with_header(x.field(), "module", module_body(quiver, x))
}

#[derive(Deserialize)]
struct ModuleFile {
    field: String,
    module: ModuleBody,
}

#[derive(Deserialize)]
struct ModuleBody {
    dimension: usize,
    vertices: Vec<String>,
    arrows: BTreeMap<String, Vec<Vec<String>>>,
}

/// Reads a module file written by [`module`], checking it against the
/// system (field, vertex blocks, relations).
pub fn parse_module(sys: &ReductionSystem, text: &str) -> Result<MatrixRep> {
    let file: ModuleFile =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("module JSON: {e}")))?;
    let field = parse_field_name(&file.field)?;
    if field != sys.field() {
        return Err(Error::FieldMismatch {
            expected: sys.field().to_string(),
            found: field.to_string(),
        });
    }
    let quiver = sys.quiver();
    let body = file.module;
    if body.vertices.len() != body.dimension {
        return Err(Error::MalformedRepresentation(format!(
            "{} vertex tags for dimension {}",
            body.vertices.len(),
            body.dimension
        )));
    }
    let tags = body
        .vertices
        .iter()
        .map(|v| quiver.vertex_id(v))
        .collect::<Result<Vec<_>>>()?;
    for name in body.arrows.keys() {
        quiver.arrow_id(name)?;
    }
    let d = body.dimension;
    let mut arrows = Vec::new();
    for a in quiver.arrows() {
        let m = match body.arrows.get(&a.name) {
            None => Matrix::zeros(field, d, d),
            Some(rows) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::MalformedRepresentation(format!(
                        "matrix of `{}` is not {d}x{d}",
                        a.name
                    )));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(field, d, rows)
            }
        };
        arrows.push(m);
    }
    MatrixRep::for_system(sys, tags, arrows)
}

fn inequality_name(i: Inequality) -> &'static str {
    match i {
        Inequality::HomFromWitness => "dim Hom(X,U) <= dim Hom(X,U')",
        Inequality::HomToWitness => "dim Hom(U,X) <= dim Hom(U',X)",
    }
}

fn certificate_node(quiver: &Quiver, cert: &DegenerationCertificate) -> Value {
    let node = match &cert.node {
        CertificateNode::Leaf(leaf) => json!({
            "kind": match leaf.kind {
                LeafKind::SocleMismatch => "socle-mismatch",
                LeafKind::IsomorphicQuotients => "isomorphic-quotients",
            },
            "witness": module_body(quiver, &leaf.witness),
            "violated": inequality_name(leaf.inequality),
            "lhs": leaf.lhs,
            "rhs": leaf.rhs,
            "quotient_hom": leaf.quotient_hom,
        }),
        CertificateNode::Quotient {
            socle,
            justification,
            child,
        } => json!({
            "kind": "socle-quotient",
            "socle": quiver.vertex_name(*socle),
            "justification": justification,
            "child": certificate_node(quiver, child),
        }),
    };
    json!({
        "left": module_body(quiver, &cert.left),
        "right": module_body(quiver, &cert.right),
        "node": node,
    })
}

pub fn certificate(quiver: &Quiver, cert: &DegenerationCertificate) -> Value {
    let mut v = with_header(cert.left.field(), "certificate", certificate_node(quiver, cert));
    v["verified"] = Value::Bool(cert.verify().is_ok());
    v
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modvar::theorem_d_matrices;
    use crate::uniserial::{masts, SimpleSequence};

    #[test]
    fn module_round_trip() {
        let sys = fixtures::fix_a(Field::Prime(3));
        let ms = masts(&sys, &SimpleSequence::parse(sys.quiver(), "1,2").unwrap());
        let k = VarietyPoint::from_values(&ms[0], &[sys.field().from_i64(2)]);
        let x = theorem_d_matrices(&sys, &ms[0], &k).unwrap();
        let text = render(&module(sys.quiver(), &x));
        assert!(text.contains("\"field\": \"GF(3)\""));
        let back = parse_module(&sys, &text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn malformed_modules_are_rejected() {
        let sys = fixtures::fix_a(Field::Prime(2));
        let bad_block = r#"{"field":"GF(2)","module":{"dimension":2,"vertices":["1","2"],"arrows":{"a":[["0","1"],["0","0"]]}}}"#;
        assert!(matches!(parse_module(&sys, bad_block), Err(Error::MalformedRepresentation(_))));
        let wrong_field = r#"{"field":"Q","module":{"dimension":1,"vertices":["1"],"arrows":{}}}"#;
        assert!(matches!(parse_module(&sys, wrong_field), Err(Error::FieldMismatch { .. })));
        assert!(parse_module(&sys, "{").is_err());
    }

    #[test]
    fn scalars_and_polynomials() {
        let f = Field::Rational;
        assert_eq!(scalar(&f.from_i64(-3)), json!("-3/1"));
        let p = MultiPoly::var(f, 0).mul(&MultiPoly::var(f, 0)).sub(&MultiPoly::one(f));
        let v = polynomial(&p, &["k[1;a;0]".to_string()]);
        assert_eq!(v, json!([
            {"coefficient": "-1/1", "monomial": []},
            {"coefficient": "1/1", "monomial": [["k[1;a;0]", 2]]},
        ]));
    }
}
