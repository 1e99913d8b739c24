//! `.grid.json` files, CSV tables and JSON reports.
//!
//! Every float is written with 17 significant digits so files round-trip
//! exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::Formatter;

use crate::grid::{Axis, GridSpec, GriddedDensity, WaveFunction};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Density,
    Wavefunction,
}

#[derive(Debug, Clone, PartialEq, Deserialize, serde::Serialize)]
#[serde(untagged)]
enum Values {
    Real(Vec<f64>),
    Complex(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, PartialEq, Deserialize, serde::Serialize)]
struct GridFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hbar: Option<f64>,
    axes: Vec<Axis>,
    values: Values,
    kind: GridKind,
}

/// Contents of a grid file.
#[derive(Debug, Clone, PartialEq)]
pub enum GridData {
    Density(GriddedDensity),
    Wave(WaveFunction),
}

impl GridData {
    pub fn kind(&self) -> GridKind {
        match self {
            GridData::Density(_) => GridKind::Density,
            GridData::Wave(_) => GridKind::Wavefunction,
        }
    }

    /// The density, or |ψ|² for a wavefunction.
    pub fn density(&self) -> Result<GriddedDensity> {
        match self {
            GridData::Density(d) => Ok(d.clone()),
            GridData::Wave(w) => w.density(),
        }
    }

    pub fn wave(&self) -> Option<&WaveFunction> {
        match self {
            GridData::Wave(w) => Some(w),
            GridData::Density(_) => None,
        }
    }
}

/// Writes finite floats as `{:.16e}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Full17;

impl Formatter for Full17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Full17);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Format(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)?)?;
    Ok(())
}

fn parse_file(text: &str) -> Result<GridFile> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn parse_grid(text: &str) -> Result<GridData> {
    let file = parse_file(text)?;
    if file.dim != file.axes.len() {
        return Err(Error::InvalidGrid(format!(
            "dim {} but {} axes",
            file.dim,
            file.axes.len()
        )));
    }
    let spec = GridSpec::new(file.axes)?;
    match (file.kind, file.values) {
        (GridKind::Density, Values::Real(v)) => {
            Ok(GridData::Density(GriddedDensity::new(spec, v)?))
        }
        (GridKind::Wavefunction, Values::Complex(v)) => {
            let amps = v
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect();
            Ok(GridData::Wave(WaveFunction::new(
                spec,
                amps,
                file.hbar.unwrap_or(1.0),
            )?))
        }
        // all-real amplitudes parse as `Real`
        (GridKind::Wavefunction, Values::Real(v)) => {
            let amps = v.into_iter().map(|re| Complex64::new(re, 0.0)).collect();
            Ok(GridData::Wave(WaveFunction::new(
                spec,
                amps,
                file.hbar.unwrap_or(1.0),
            )?))
        }
        (GridKind::Density, Values::Complex(_)) => {
            Err(Error::Format("density values must be reals".into()))
        }
    }
}

pub fn read_grid(path: &Path) -> Result<GridData> {
    parse_grid(&fs::read_to_string(path)?)
}

pub fn density_json(d: &GriddedDensity) -> Result<String> {
    to_json(&GridFile {
        dim: d.dim(),
        hbar: None,
        axes: d.spec().axes().to_vec(),
        values: Values::Real(d.values().to_vec()),
        kind: GridKind::Density,
    })
}

pub fn wave_json(w: &WaveFunction) -> Result<String> {
    to_json(&GridFile {
        dim: w.spec().dim(),
        hbar: Some(w.hbar()),
        axes: w.spec().axes().to_vec(),
        values: Values::Complex(w.values().iter().map(|z| [z.re, z.im]).collect()),
        kind: GridKind::Wavefunction,
    })
}

pub fn write_grid(path: &Path, data: &GridData) -> Result<()> {
    let text = match data {
        GridData::Density(d) => density_json(d)?,
        GridData::Wave(w) => wave_json(w)?,
    };
    fs::write(path, text)?;
    Ok(())
}

/// One CSV cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<usize> for Cell {
    fn from(k: usize) -> Self {
        Cell::Int(k as i64)
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(k) => write!(f, "{k}"),
            Cell::Real(x) => f.write_str(&fmt_f64(*x)),
        }
    }
}

/// Header row then one line per row, `,`-separated.
pub fn csv_string(header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(Cell::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    fs::write(path, csv_string(header, rows))?;
    Ok(())
}
