//! Record sinks for the three output formats.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One output row. JSON uses the serde form; CSV and text are written by
/// hand so nested fields can be flattened.
pub trait Record: Serialize {
    fn csv_header() -> &'static [&'static str];
    fn csv_row(&self) -> Vec<String>;
    fn text(&self) -> String;
}

pub struct Sink<W: Write> {
    format: Format,
    quiet: bool,
    out: W,
    csv_started: bool,
}

impl<W: Write> Sink<W> {
    pub fn new(format: Format, quiet: bool, out: W) -> Self {
        Sink { format, quiet, out, csv_started: false }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn emit<R: Record>(&mut self, record: &R) -> io::Result<()> {
        match self.format {
            Format::Text => writeln!(self.out, "{}", record.text()),
            Format::Json => {
                serde_json::to_writer(&mut self.out, record)?;
                writeln!(self.out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                if !self.csv_started {
                    w.write_record(R::csv_header())?;
                    self.csv_started = true;
                }
                w.write_record(record.csv_row())?;
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                self.out.write_all(&bytes)
            }
        }
    }

    /// Informational line: text mode only, dropped under `--quiet`.
    pub fn note(&mut self, line: &str) -> io::Result<()> {
        if self.format == Format::Text && !self.quiet {
            writeln!(self.out, "{line}")?;
        }
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}
