//! JSON documents: parsing with field paths in errors, and typed output
//! that re-parses under the same readers.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{GaussRat, Matrix, Poly, Rat, Scalar, Subspace};
use crate::loci::{Construction, LocusKind, LocusResult, Pencil, QuotBy};
use crate::mhs::{Direction, Filtration, Mhs};
use crate::triple::{TPoint, Triple};

pub type MatrixDoc = Vec<Vec<String>>;
pub type FiltrationDoc = BTreeMap<i32, MatrixDoc>;

fn err(path: &str, msg: impl Into<String>) -> Error {
    Error::parse(path, msg)
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    let map = obj
        .as_object()
        .ok_or_else(|| err(path, "expected an object"))?;
    map.get(key)
        .ok_or_else(|| err(&join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

pub fn parse_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

pub fn parse_i32(v: &Value, path: &str) -> Result<i32> {
    v.as_i64()
        .and_then(|n| i32::try_from(n).ok())
        .ok_or_else(|| err(path, "expected an integer"))
}

/// A coefficient given as a string or a JSON integer.
pub fn parse_scalar<K: Scalar>(v: &Value, path: &str) -> Result<K> {
    match v {
        Value::String(s) => K::parse(s).map_err(|e| match e {
            Error::Parse { message, .. } => err(path, message),
            other => other,
        }),
        Value::Number(n) if n.is_i64() => Ok(K::from_i64(n.as_i64().expect("checked"))),
        _ => Err(err(path, "expected a coefficient string or an integer")),
    }
}

pub fn parse_vector<K: Scalar>(v: &Value, width: Option<usize>, path: &str) -> Result<Vec<K>> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array"))?;
    if let Some(w) = width {
        if arr.len() != w {
            return Err(err(path, format!("expected {w} entries, found {}", arr.len())));
        }
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_scalar(x, &index(path, i)))
        .collect()
}

/// Row-major rows, all of length `width` when given.
pub fn parse_rows<K: Scalar>(v: &Value, width: Option<usize>, path: &str) -> Result<Vec<Vec<K>>> {
    let arr = v.as_array().ok_or_else(|| err(path, "expected an array of rows"))?;
    let width = width.or_else(|| arr.first().and_then(Value::as_array).map(Vec::len));
    arr.iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, width, &index(path, i)))
        .collect()
}

pub fn parse_matrix<K: Scalar>(v: &Value, shape: Option<(usize, usize)>, path: &str) -> Result<Matrix<K>> {
    let rows = parse_rows::<K>(v, shape.map(|s| s.1), path)?;
    if let Some((r, _)) = shape {
        if rows.len() != r {
            return Err(err(path, format!("expected {r} rows, found {}", rows.len())));
        }
    }
    let cols = shape.map(|s| s.1).or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    Matrix::from_rows(rows, cols)
}

/// A subspace given by spanning rows.
pub fn parse_subspace<K: Scalar>(v: &Value, ambient: usize, path: &str) -> Result<Subspace<K>> {
    Subspace::span(ambient, parse_rows(v, Some(ambient), path)?)
}

/// `{"<index>": rows}`; monotonicity is left to the caller.
pub fn parse_filtration<K: Scalar>(
    v: &Value,
    ambient: usize,
    dir: Direction,
    path: &str,
) -> Result<Filtration<K>> {
    let obj = v
        .as_object()
        .ok_or_else(|| err(path, "expected an object keyed by filtration index"))?;
    let mut steps = BTreeMap::new();
    for (k, rows) in obj {
        let p = join(path, k);
        let idx: i32 = k
            .trim()
            .parse()
            .map_err(|_| err(&p, "filtration index is not an integer"))?;
        steps.insert(idx, parse_subspace(rows, ambient, &p)?);
    }
    Ok(Filtration::unchecked(ambient, dir, steps))
}

/// The raw `(dim, W, F)` of an MHS document, without validation.
pub fn parse_mhs_parts(v: &Value, path: &str) -> Result<(usize, Filtration<Rat>, Filtration<GaussRat>)> {
    let dim = parse_usize(field(v, "dim", path)?, &join(path, "dim"))?;
    let w = parse_filtration(field(v, "W", path)?, dim, Direction::Increasing, &join(path, "W"))?;
    let f = parse_filtration(field(v, "F", path)?, dim, Direction::Decreasing, &join(path, "F"))?;
    Ok((dim, w, f))
}

pub fn parse_mhs(v: &Value, path: &str) -> Result<Mhs> {
    let (dim, w, f) = parse_mhs_parts(v, path)?;
    Mhs::new(dim, w, f)
}

pub fn parse_triple(v: &Value, path: &str) -> Result<Triple> {
    let dim = parse_usize(field(v, "dim", path)?, &join(path, "dim"))?;
    let wp = join(path, "W");
    let w: Filtration<Rat> = parse_filtration(field(v, "W", path)?, dim, Direction::Increasing, &wp)?;
    let issues = w.issues();
    if !issues.is_empty() {
        return Err(err(&wp, issues.join("; ")));
    }
    let w = w.canonical();
    let gp = join(path, "graded");
    let arr = field(v, "graded", path)?
        .as_array()
        .ok_or_else(|| err(&gp, "expected an array"))?;
    let mut graded = BTreeMap::new();
    for (i, g) in arr.iter().enumerate() {
        let p = index(&gp, i);
        let n = parse_i32(field(g, "weight", &p)?, &join(&p, "weight"))?;
        let d = w.get(n).dim() - w.get(n - 1).dim();
        let f = parse_filtration(field(g, "F", &p)?, d, Direction::Decreasing, &join(&p, "F"))?;
        let m = Mhs::new(d, Filtration::trivial(d, Direction::Increasing, n), f)?;
        if graded.insert(n, m).is_some() {
            return Err(err(&join(&p, "weight"), format!("weight {n} repeats")));
        }
    }
    Triple::new(dim, w, graded)
}

pub fn parse_tpoint(v: &Value, path: &str) -> Result<TPoint> {
    let sp = join(path, "sections");
    let obj = field(v, "sections", path)?
        .as_object()
        .ok_or_else(|| err(&sp, "expected an object keyed by weight"))?;
    let mut sections = BTreeMap::new();
    for (k, m) in obj {
        let p = join(&sp, k);
        let n: i32 = k.trim().parse().map_err(|_| err(&p, "weight is not an integer"))?;
        sections.insert(n, parse_matrix(m, None, &p)?);
    }
    Ok(TPoint { sections })
}

pub fn parse_pencil(v: &Value, path: &str) -> Result<Pencil> {
    let triple = parse_triple(field(v, "triple", path)?, &join(path, "triple"))?;
    let p = parse_i32(field(v, "p", path)?, &join(path, "p"))?;
    let x = parse_mhs(field(v, "x", path)?, &join(path, "x"))?;
    let y = parse_mhs(field(v, "y", path)?, &join(path, "y"))?;
    let psi0 = parse_matrix(field(v, "psi0", path)?, None, &join(path, "psi0"))?;
    let dpsi = parse_matrix(field(v, "dpsi", path)?, None, &join(path, "dpsi"))?;
    Pencil::new(triple, p, x, y, psi0, dpsi)
}

/// Nested arrays such as `["HOM", ["SELF"], ["SELF"]]`. The ambient of a
/// `QUOT` subspace is not known here, so its rows set it.
pub fn parse_construction(v: &Value, path: &str) -> Result<Construction> {
    let arr = v
        .as_array()
        .ok_or_else(|| err(path, "expected a construction array"))?;
    let head = arr
        .first()
        .and_then(Value::as_str)
        .ok_or_else(|| err(path, "expected a leading token"))?;
    let arity = |n: usize| -> Result<()> {
        if arr.len() == n + 1 {
            Ok(())
        } else {
            Err(err(path, format!("{head} takes {n} arguments")))
        }
    };
    let sub = |i: usize| -> Result<Box<Construction>> {
        Ok(Box::new(parse_construction(&arr[i], &index(path, i))?))
    };
    Ok(match head {
        "SELF" => {
            arity(0)?;
            Construction::SelfObj
        }
        "DUAL" => {
            arity(1)?;
            Construction::Dual(sub(1)?)
        }
        "TENSOR" => {
            arity(2)?;
            Construction::Tensor(sub(1)?, sub(2)?)
        }
        "HOM" => {
            arity(2)?;
            Construction::Hom(sub(1)?, sub(2)?)
        }
        "WSUB" => {
            arity(2)?;
            Construction::WSub(parse_i32(&arr[1], &index(path, 1))?, sub(2)?)
        }
        "DAGGER" => {
            arity(2)?;
            Construction::Dagger(parse_i32(&arr[1], &index(path, 1))?, sub(2)?)
        }
        "QUOT" => {
            arity(2)?;
            let ap = index(path, 1);
            let by = match &arr[1] {
                Value::Object(o) => {
                    let w = o.get("W").ok_or_else(|| err(&ap, "expected {\"W\": p} or rows"))?;
                    QuotBy::Weight(parse_i32(w, &join(&ap, "W"))?)
                }
                Value::Array(rows) => {
                    let ambient = match rows.first() {
                        Some(r) => r.as_array().map(Vec::len).unwrap_or(0),
                        None => {
                            return Err(err(&ap, "an empty subspace needs {\"W\": p} form or explicit rows"))
                        }
                    };
                    QuotBy::Space(parse_subspace(&arr[1], ambient, &ap)?)
                }
                _ => return Err(err(&ap, "expected {\"W\": p} or rows")),
            };
            Construction::Quot(by, sub(2)?)
        }
        other => return Err(err(path, format!("unknown construction token {other:?}"))),
    })
}

pub fn matrix_doc<K: Scalar>(m: &Matrix<K>) -> MatrixDoc {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(Scalar::format).collect())
        .collect()
}

pub fn vector_doc<K: Scalar>(v: &[K]) -> Vec<String> {
    v.iter().map(Scalar::format).collect()
}

pub fn subspace_doc<K: Scalar>(s: &Subspace<K>) -> MatrixDoc {
    s.basis().iter().map(|r| vector_doc(r)).collect()
}

pub fn filtration_doc<K: Scalar>(f: &Filtration<K>) -> FiltrationDoc {
    f.steps().iter().map(|(k, s)| (*k, subspace_doc(s))).collect()
}

pub fn poly_doc(p: &Poly<GaussRat>) -> Vec<String> {
    vector_doc(p.coeffs())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MhsDoc {
    pub dim: usize,
    #[serde(rename = "W")]
    pub w: FiltrationDoc,
    #[serde(rename = "F")]
    pub f: FiltrationDoc,
}

impl From<&Mhs> for MhsDoc {
    fn from(m: &Mhs) -> Self {
        MhsDoc {
            dim: m.dim(),
            w: filtration_doc(m.weight()),
            f: filtration_doc(m.hodge()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDoc {
    pub weight: i32,
    #[serde(rename = "F")]
    pub f: FiltrationDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleDoc {
    pub dim: usize,
    #[serde(rename = "W")]
    pub w: FiltrationDoc,
    pub graded: Vec<GradedDoc>,
}

impl From<&Triple> for TripleDoc {
    fn from(t: &Triple) -> Self {
        TripleDoc {
            dim: t.dim(),
            w: filtration_doc(t.weight()),
            graded: t
                .graded()
                .iter()
                .map(|(n, m)| GradedDoc {
                    weight: *n,
                    f: filtration_doc(m.hodge()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TPointDoc {
    pub sections: BTreeMap<i32, MatrixDoc>,
}

impl From<&TPoint> for TPointDoc {
    fn from(p: &TPoint) -> Self {
        TPointDoc {
            sections: p.sections.iter().map(|(n, m)| (*n, matrix_doc(m))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilDoc {
    pub triple: TripleDoc,
    pub p: i32,
    pub x: MhsDoc,
    pub y: MhsDoc,
    pub psi0: MatrixDoc,
    pub dpsi: MatrixDoc,
}

impl From<&Pencil> for PencilDoc {
    fn from(p: &Pencil) -> Self {
        PencilDoc {
            triple: p.triple().into(),
            p: p.p(),
            x: p.x().into(),
            y: p.y().into(),
            psi0: matrix_doc(p.psi0()),
            dpsi: matrix_doc(p.dpsi()),
        }
    }
}

pub fn construction_doc(c: &Construction) -> Value {
    use Construction::*;
    match c {
        SelfObj => json!(["SELF"]),
        Dual(x) => json!(["DUAL", construction_doc(x)]),
        Tensor(x, y) => json!(["TENSOR", construction_doc(x), construction_doc(y)]),
        Hom(x, y) => json!(["HOM", construction_doc(x), construction_doc(y)]),
        WSub(p, x) => json!(["WSUB", p, construction_doc(x)]),
        Dagger(p, x) => json!(["DAGGER", p, construction_doc(x)]),
        Quot(QuotBy::Weight(p), x) => {
            let mut o = Map::new();
            o.insert("W".into(), json!(p));
            json!(["QUOT", Value::Object(o), construction_doc(x)])
        }
        Quot(QuotBy::Space(a), x) => json!(["QUOT", subspace_doc(a), construction_doc(x)]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusDoc {
    pub kind: &'static str,
    pub constraints: Vec<Vec<String>>,
    pub gcd: Vec<String>,
    pub point: Option<String>,
    pub outside_w0: bool,
}

impl From<&LocusResult> for LocusDoc {
    fn from(r: &LocusResult) -> Self {
        LocusDoc {
            kind: match r.kind {
                LocusKind::All => "ALL",
                LocusKind::AffineSubset => "AFFINE_SUBSET",
            },
            constraints: r.constraints.iter().map(poly_doc).collect(),
            gcd: poly_doc(&r.gcd),
            point: r.point.as_ref().map(Scalar::format),
            outside_w0: r.outside_w0,
        }
    }
}

/// Serializes with two-space indentation and a trailing newline.
pub fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
