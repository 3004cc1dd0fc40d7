use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
    Dat,
}

impl Format {
    fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
            Format::Dat => b' ',
        }
    }
}

/// A header plus string rows, rendered in one of the supported formats.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl OutputTable {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// `.dat` output marks the header as a comment so plotting tools skip it.
    pub fn write_to<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        let mut writer = csv::WriterBuilder::new()
            .delimiter(format.delimiter())
            .quote_style(csv::QuoteStyle::Never)
            .flexible(true)
            .from_writer(out);
        if format == Format::Dat {
            let mut header = self.header.clone();
            header.insert(0, "#");
            writer.write_record(&header)?;
        } else {
            writer.write_record(&self.header)?;
        }
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()
    }
}

#[derive(Debug)]
pub struct OutputError {
    pub path: Option<PathBuf>,
    pub source: io::Error,
}

impl std::fmt::Display for OutputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.path {
            Some(path) => write!(f, "cannot write {}: {}", path.display(), self.source),
            None => write!(f, "cannot write to standard output: {}", self.source),
        }
    }
}

/// Writes `table` to `path`, or to standard output when no path is given.
pub fn emit(table: &OutputTable, format: Format, path: Option<&Path>) -> Result<(), OutputError> {
    let wrap = |source| OutputError {
        path: path.map(Path::to_path_buf),
        source,
    };
    match path {
        Some(path) => {
            let file = File::create(path).map_err(wrap)?;
            let mut out = BufWriter::new(file);
            table.write_to(format, &mut out).map_err(wrap)?;
            out.flush().map_err(wrap)
        }
        None => table.write_to(format, io::stdout().lock()).map_err(wrap),
    }
}
