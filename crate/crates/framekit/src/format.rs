//! JSON file formats for frame pairs, operator-valued pairs, p-frame pairs,
//! group tables and plain vector sets.
//!
//! Scalars are plain numbers or `[re, im]` pairs. A `"real"` file may use
//! either form as long as every imaginary part is zero. Writers emit plain
//! numbers for real data and pairs for complex data; floats are written in
//! shortest round-trip form, so read∘write is the identity.

use std::fs;
use std::path::Path;

use framekit_core::constructors::GroupTable;
use framekit_core::frame::FramePair;
use framekit_core::ovf::OvfPair;
use framekit_core::pframes::PFramePair;
use framekit_core::{Field, Mat, Tolerance, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, FormatError>;

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError::Parse(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Re(f64),
    Cx([f64; 2]),
}

impl Scalar {
    fn value(self) -> C64 {
        match self {
            Scalar::Re(x) => C64::new(x, 0.0),
            Scalar::Cx([re, im]) => C64::new(re, im),
        }
    }

    fn from_c64(z: C64, field: Field) -> Scalar {
        match field {
            Field::Real => Scalar::Re(z.re),
            Field::Complex => Scalar::Cx([z.re, z.im]),
        }
    }
}

pub fn parse_field(s: &str) -> Result<Field> {
    match s {
        "real" => Ok(Field::Real),
        "complex" => Ok(Field::Complex),
        other => Err(bad(format!("field must be \"real\" or \"complex\", got {other:?}"))),
    }
}

pub fn field_name(f: Field) -> &'static str {
    match f {
        Field::Real => "real",
        Field::Complex => "complex",
    }
}

fn scalars(v: &[Scalar], field: Option<Field>, what: &str) -> Result<Vec<C64>> {
    v.iter()
        .map(|s| {
            let z = s.value();
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(bad(format!("{what}: non-finite entry")));
            }
            if field == Some(Field::Real) && z.im != 0.0 {
                return Err(bad(format!("{what}: imaginary part in a real file")));
            }
            Ok(z)
        })
        .collect()
}

fn infer_field(rows: &[&[Scalar]]) -> Field {
    let complex = rows.iter().flat_map(|r| r.iter()).any(|s| s.value().im != 0.0);
    if complex {
        Field::Complex
    } else {
        Field::Real
    }
}

/// `count` arrays of `dim` scalars, one per column.
fn columns_to_mat(cols: &[Vec<Scalar>], dim: usize, count: usize, field: Field, what: &str) -> Result<Mat> {
    if cols.len() != count {
        return Err(bad(format!("{what}: expected {count} vectors, got {}", cols.len())));
    }
    let mut out = Vec::with_capacity(count);
    for (j, c) in cols.iter().enumerate() {
        if c.len() != dim {
            return Err(bad(format!("{what}[{j}]: expected {dim} entries, got {}", c.len())));
        }
        out.push(scalars(c, Some(field), what)?);
    }
    Mat::from_columns(dim, &out, field).map_err(|e| bad(format!("{what}: {e}")))
}

/// `rows` arrays of `cols` scalars.
fn rows_to_mat(rows: &[Vec<Scalar>], nrows: usize, ncols: usize, field: Field, what: &str) -> Result<Mat> {
    if rows.len() != nrows {
        return Err(bad(format!("{what}: expected {nrows} rows, got {}", rows.len())));
    }
    let mut data = Vec::with_capacity(nrows * ncols);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(bad(format!("{what}[{i}]: expected {ncols} entries, got {}", r.len())));
        }
        data.extend(scalars(r, Some(field), what)?);
    }
    Mat::new(nrows, ncols, data, field).map_err(|e| bad(format!("{what}: {e}")))
}

fn mat_columns(m: &Mat) -> Vec<Vec<Scalar>> {
    let field = m.field();
    m.columns().into_iter().map(|c| c.into_iter().map(|z| Scalar::from_c64(z, field)).collect()).collect()
}

fn mat_rows(m: &Mat) -> Vec<Vec<Scalar>> {
    let field = m.field();
    (0..m.rows()).map(|i| m.row(i).into_iter().map(|z| Scalar::from_c64(z, field)).collect()).collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub field: String,
    pub dim: usize,
    pub count: usize,
    pub x: Vec<Vec<Scalar>>,
    pub tau: Vec<Vec<Scalar>>,
}

impl FrameFile {
    pub fn from_pair(fp: &FramePair) -> FrameFile {
        FrameFile {
            field: field_name(fp.field()).into(),
            dim: fp.dim(),
            count: fp.count(),
            x: mat_columns(fp.x()),
            tau: mat_columns(fp.t()),
        }
    }

    pub fn to_pair(&self, tol: Tolerance) -> Result<FramePair> {
        let field = parse_field(&self.field)?;
        let x = columns_to_mat(&self.x, self.dim, self.count, field, "x")?;
        let t = columns_to_mat(&self.tau, self.dim, self.count, field, "tau")?;
        FramePair::new(x, t, tol).map_err(|e| bad(e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    pub field: String,
    pub dim: usize,
    pub count: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

impl VectorFile {
    pub fn from_mat(m: &Mat) -> VectorFile {
        VectorFile { field: field_name(m.field()).into(), dim: m.rows(), count: m.cols(), vectors: mat_columns(m) }
    }

    /// Columns are the vectors.
    pub fn to_mat(&self) -> Result<Mat> {
        let field = parse_field(&self.field)?;
        columns_to_mat(&self.vectors, self.dim, self.count, field, "vectors")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Codims {
    Uniform(usize),
    PerMember(Vec<usize>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OvfFile {
    pub field: String,
    pub m: usize,
    pub d: Codims,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<Scalar>>>,
    pub psi: Vec<Vec<Vec<Scalar>>>,
}

impl OvfFile {
    pub fn from_pair(op: &OvfPair) -> OvfFile {
        let d = match op.uniform_codim() {
            Some(d) => Codims::Uniform(d),
            None => Codims::PerMember(op.codims()),
        };
        OvfFile {
            field: field_name(op.field()).into(),
            m: op.domain_dim(),
            d,
            n: op.count(),
            a: op.a().iter().map(mat_rows).collect(),
            psi: op.psi().iter().map(mat_rows).collect(),
        }
    }

    pub fn to_pair(&self, tol: Tolerance) -> Result<OvfPair> {
        let field = parse_field(&self.field)?;
        let codims = match &self.d {
            Codims::Uniform(d) => vec![*d; self.n],
            Codims::PerMember(v) if v.len() == self.n => v.clone(),
            Codims::PerMember(v) => return Err(bad(format!("d lists {} codimensions for n = {}", v.len(), self.n))),
        };
        let read = |blocks: &[Vec<Vec<Scalar>>], what: &str| -> Result<Vec<Mat>> {
            if blocks.len() != self.n {
                return Err(bad(format!("{what}: expected {} members, got {}", self.n, blocks.len())));
            }
            blocks.iter().zip(&codims).map(|(b, &d)| rows_to_mat(b, d, self.m, field, what)).collect()
        };
        let a = read(&self.a, "A")?;
        let psi = read(&self.psi, "psi")?;
        OvfPair::new(a, psi, tol).map_err(|e| bad(e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PFrameFile {
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub dim: usize,
    pub count: usize,
    /// n rows of m entries, one functional per row.
    pub f: Vec<Vec<Scalar>>,
    /// n arrays of m entries, one vector each.
    pub tau: Vec<Vec<Scalar>>,
}

impl PFrameFile {
    pub fn from_pair(pf: &PFramePair) -> PFrameFile {
        PFrameFile {
            p: pf.p(),
            field: Some(field_name(pf.field()).into()),
            dim: pf.dim(),
            count: pf.count(),
            f: mat_rows(pf.f()),
            tau: mat_columns(pf.tau()),
        }
    }

    pub fn to_pair(&self, tol: Tolerance) -> Result<PFramePair> {
        let field = match &self.field {
            Some(s) => parse_field(s)?,
            None => {
                let rows: Vec<&[Scalar]> = self.f.iter().chain(&self.tau).map(|r| r.as_slice()).collect();
                infer_field(&rows)
            }
        };
        let f = rows_to_mat(&self.f, self.count, self.dim, field, "f")?;
        let tau = columns_to_mat(&self.tau, self.dim, self.count, field, "tau")?;
        PFramePair::new(self.p, f, tau, tol).map_err(|e| bad(e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub identity: usize,
    pub mul: Vec<Vec<usize>>,
    /// Optional unitary representation, one square matrix (as rows) per element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<Vec<Vec<Vec<Scalar>>>>,
}

impl GroupFile {
    pub fn table(&self) -> Result<GroupTable> {
        if self.mul.len() != self.order {
            return Err(bad(format!("mul has {} rows for order {}", self.mul.len(), self.order)));
        }
        GroupTable::new(self.mul.clone(), self.identity).map_err(|e| bad(e.to_string()))
    }

    pub fn rep_mats(&self) -> Result<Option<Vec<Mat>>> {
        let Some(rep) = &self.rep else { return Ok(None) };
        if rep.len() != self.order {
            return Err(bad(format!("rep has {} matrices for order {}", rep.len(), self.order)));
        }
        let rows: Vec<&[Scalar]> = rep.iter().flatten().map(|r| r.as_slice()).collect();
        let field = infer_field(&rows);
        let m = rep.first().map_or(0, |r| r.len());
        rep.iter().map(|r| rows_to_mat(r, m, m, field, "rep")).collect::<Result<Vec<_>>>().map(Some)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("file structs always serialize")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = to_json(value);
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// `1,0.5,-2` or a JSON array of scalars such as `[[1,0],[0,1]]`.
pub fn parse_vector(s: &str) -> Result<Vec<C64>> {
    let s = s.trim();
    let parsed: Vec<Scalar> = if s.starts_with('[') {
        serde_json::from_str(s).map_err(|e| bad(format!("vector {s:?}: {e}")))?
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map(Scalar::Re).map_err(|e| bad(format!("vector entry {t:?}: {e}"))))
            .collect::<Result<_>>()?
    };
    if parsed.is_empty() {
        return Err(bad("empty vector"));
    }
    scalars(&parsed, None, "vector")
}
