//! JSON interchange. Scalars are strings: `"n"` or `"n/d"` over ℚ, the
//! residue in `0..p` over 𝔽_p. Fields are `"Q"` or `"Fp:<p>"`.

use quotlab_core::adhm::AdhmDatum;
use quotlab_core::{Error, Field, FramedRep, Matrix, Scalar};
use serde::{Deserialize, Serialize};

fn encode(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::encode).collect()
}

fn decode(field: Field, v: &[String]) -> Result<Vec<Scalar>, Error> {
    v.iter().map(|s| Scalar::parse(field, s)).collect()
}

fn check_field(outer: Field, inner: &str) -> Result<(), Error> {
    let inner: Field = inner.parse()?;
    if inner == outer {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: outer,
            right: inner,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub field: String,
    pub entries: Vec<String>,
}

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            field: m.field().to_string(),
            entries: encode(m.entries()),
        }
    }
}

impl TryFrom<&MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<Self, Error> {
        let field: Field = j.field.parse()?;
        Matrix::new(j.rows, j.cols, field, decode(field, &j.entries)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub field: String,
    #[serde(rename = "A")]
    pub a: Vec<MatrixJson>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<String>>,
}

impl From<&FramedRep> for RepJson {
    fn from(rep: &FramedRep) -> Self {
        Self {
            m: rep.m(),
            n: rep.n(),
            r: rep.r(),
            field: rep.field().to_string(),
            a: rep.matrices().iter().map(MatrixJson::from).collect(),
            v: rep.vectors().iter().map(|v| encode(v)).collect(),
        }
    }
}

impl TryFrom<&RepJson> for FramedRep {
    type Error = Error;

    fn try_from(j: &RepJson) -> Result<Self, Error> {
        let field: Field = j.field.parse()?;
        if j.a.len() != j.m || j.v.len() != j.r {
            return Err(Error::ShapeMismatch(format!(
                "header says m = {}, r = {} but found {} matrices and {} vectors",
                j.m,
                j.r,
                j.a.len(),
                j.v.len()
            )));
        }
        let matrices =
            j.a.iter()
                .map(|a| {
                    check_field(field, &a.field)?;
                    Matrix::try_from(a)
                })
                .collect::<Result<Vec<_>, _>>()?;
        let vectors =
            j.v.iter()
                .map(|v| decode(field, v))
                .collect::<Result<Vec<_>, _>>()?;
        FramedRep::new(field, j.n, matrices, vectors)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdhmJson {
    pub n: usize,
    pub r: usize,
    pub field: String,
    #[serde(rename = "B1")]
    pub b1: MatrixJson,
    #[serde(rename = "B2")]
    pub b2: MatrixJson,
    pub i: MatrixJson,
    pub j: MatrixJson,
}

impl From<&AdhmDatum> for AdhmJson {
    fn from(d: &AdhmDatum) -> Self {
        Self {
            n: d.n(),
            r: d.r(),
            field: d.field().to_string(),
            b1: d.b1().into(),
            b2: d.b2().into(),
            i: d.i().into(),
            j: d.j().into(),
        }
    }
}

impl TryFrom<&AdhmJson> for AdhmDatum {
    type Error = Error;

    fn try_from(j: &AdhmJson) -> Result<Self, Error> {
        let field: Field = j.field.parse()?;
        let parts = [&j.b1, &j.b2, &j.i, &j.j].map(|m| {
            check_field(field, &m.field)?;
            Matrix::try_from(m)
        });
        let [b1, b2, i, jm] = parts;
        let d = AdhmDatum::new(b1?, b2?, i?, jm?)?;
        if d.n() != j.n || d.r() != j.r {
            return Err(Error::ShapeMismatch(format!(
                "header says n = {}, r = {} but matrices give n = {}, r = {}",
                j.n,
                j.r,
                d.n(),
                d.r()
            )));
        }
        Ok(d)
    }
}

/// Reads one representation per non-empty line.
pub fn read_reps(text: &str) -> Result<Vec<FramedRep>, crate::CliError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let j: RepJson = serde_json::from_str(l)?;
            Ok(FramedRep::try_from(&j)?)
        })
        .collect()
}
