//! Reading and writing frames and results.
//!
//! Frames use the document `{"field": "real"|"complex", "dim": n, "vectors": [[…], …]}`
//! with complex entries written as `[re, im]`. Plain CSV holds one real
//! vector per row. All floating-point output carries 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::framecore::Frame;
use crate::scalar::{Field, Real, Scalar};

/// A frame whose field is known only at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyFrame {
    Real(Frame<f64>),
    Complex(Frame<Complex64>),
}

impl AnyFrame {
    pub fn field(&self) -> Field {
        match self {
            AnyFrame::Real(_) => Field::Real,
            AnyFrame::Complex(_) => Field::Complex,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyFrame::Real(f) => f.dim(),
            AnyFrame::Complex(f) => f.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyFrame::Real(f) => f.len(),
            AnyFrame::Complex(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<Frame<f64>> for AnyFrame {
    fn from(f: Frame<f64>) -> Self {
        AnyFrame::Real(f)
    }
}

impl From<Frame<Complex64>> for AnyFrame {
    fn from(f: Frame<Complex64>) -> Self {
        AnyFrame::Complex(f)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameDocIn {
    field: Field,
    dim: usize,
    vectors: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Serialize)]
struct FrameDocOut<'a> {
    field: Field,
    dim: usize,
    vectors: &'a [Vec<serde_json::Value>],
}

fn parse_error(msg: impl std::fmt::Display) -> Error {
    Error::Parse(msg.to_string())
}

/// Parses a frame document.
pub fn read_frame_json(text: &str) -> Result<AnyFrame> {
    let doc: FrameDocIn = serde_json::from_str(text).map_err(parse_error)?;
    if doc.vectors.is_empty() {
        return Err(parse_error("frame has no vectors"));
    }
    for (i, row) in doc.vectors.iter().enumerate() {
        if row.len() != doc.dim {
            return Err(parse_error(format!(
                "vector {i} has length {}, expected {}",
                row.len(),
                doc.dim
            )));
        }
    }
    let entry_error = |i: usize, kind: &str| {
        parse_error(format!("vector {i}: {kind} entry in a {} frame", doc.field))
    };
    match doc.field {
        Field::Real => {
            let vectors = doc
                .vectors
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .map(|e| match e {
                            Entry::Real(x) => Ok(*x),
                            Entry::Complex(_) => Err(entry_error(i, "complex")),
                        })
                        .collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyFrame::Real(
                Frame::new(doc.dim, vectors).map_err(parse_error)?,
            ))
        }
        Field::Complex => {
            let vectors = doc
                .vectors
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .map(|e| match e {
                            Entry::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
                            Entry::Real(_) => Err(entry_error(i, "real")),
                        })
                        .collect::<Result<Vec<Complex64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyFrame::Complex(
                Frame::new(doc.dim, vectors).map_err(parse_error)?,
            ))
        }
    }
}

/// Parses headerless CSV, one real vector per row.
pub fn read_frame_csv(text: &str) -> Result<AnyFrame> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut vectors = Vec::new();
    for record in reader.records() {
        let record = record.map_err(parse_error)?;
        let row = record
            .iter()
            .map(|field| {
                field
                    .parse::<f64>()
                    .map_err(|e| parse_error(format!("{field:?}: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        vectors.push(row);
    }
    let dim = vectors
        .first()
        .map(Vec::len)
        .ok_or_else(|| parse_error("CSV input has no rows"))?;
    Ok(AnyFrame::Real(
        Frame::new(dim, vectors).map_err(parse_error)?,
    ))
}

fn entry_value<S: Scalar>(x: S) -> serde_json::Value {
    let num = |v: S::Real| serde_json::Value::from(v.to_f64_lossy());
    match S::FIELD {
        Field::Real => num(x.re()),
        Field::Complex => serde_json::Value::Array(vec![num(x.re()), num(x.im())]),
    }
}

/// The frame document for `f`.
pub fn frame_to_json<S: Scalar>(f: &Frame<S>) -> String {
    let vectors: Vec<Vec<serde_json::Value>> = f
        .vectors()
        .iter()
        .map(|v| v.iter().map(|&x| entry_value(x)).collect())
        .collect();
    to_json(&FrameDocOut {
        field: S::FIELD,
        dim: f.dim(),
        vectors: &vectors,
    })
}

pub fn any_frame_to_json(f: &AnyFrame) -> String {
    match f {
        AnyFrame::Real(f) => frame_to_json(f),
        AnyFrame::Complex(f) => frame_to_json(f),
    }
}

/// CSV rows for a real frame.
pub fn frame_to_csv<S: Scalar>(f: &Frame<S>) -> Result<String> {
    if S::FIELD != Field::Real {
        return Err(Error::FieldMismatch {
            expected: Field::Real,
            found: S::FIELD,
        });
    }
    let mut out = String::new();
    for v in f.vectors() {
        let row: Vec<String> = v
            .iter()
            .map(|x| format_f64(x.re().to_f64_lossy()))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// A float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Compact JSON whose floats carry 17 significant digits.
struct PreciseFormatter;

impl Formatter for PreciseFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` as compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, PreciseFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization does not fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Parses any JSON document produced by [`to_json`].
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(parse_error)
}
