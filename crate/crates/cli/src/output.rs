//! CSV output with 6-significant-digit floats.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::CliError;

/// `%g` with 6 significant digits: fixed notation for exponents in
/// [-4, 6), scientific otherwise, trailing zeros dropped.
pub fn g6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A cell: floats go through [`g6`], integers verbatim, `None` empty.
pub enum Cell {
    F(f64),
    I(u64),
    Opt(Option<f64>),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(x) => g6(*x),
            Cell::I(n) => n.to_string(),
            Cell::Opt(Some(x)) => g6(*x),
            Cell::Opt(None) => String::new(),
        }
    }
}

pub struct Table {
    writer: csv::Writer<Box<dyn Write>>,
}

impl Table {
    /// Writes to `path`, or stdout when absent.
    pub fn create(path: Option<&Path>, header: &[&str]) -> Result<Table, CliError> {
        let sink: Box<dyn Write> = match path {
            Some(p) => {
                Box::new(io::BufWriter::new(File::create(p).map_err(|e| {
                    CliError::config(format!("cannot create {}: {e}", p.display()))
                })?))
            }
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        };
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(sink);
        writer.write_record(header).map_err(CliError::output)?;
        Ok(Table { writer })
    }

    pub fn row(&mut self, cells: &[Cell]) -> Result<(), CliError> {
        self.writer
            .write_record(cells.iter().map(Cell::render))
            .map_err(CliError::output)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.writer.flush().map_err(|e| CliError::Output(e.to_string()))
    }
}
