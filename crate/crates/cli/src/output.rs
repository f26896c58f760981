use crate::config::{config_hash, RunConfig};
use dirichlet_lab::Result;
use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};

pub const TOOL: &str = "dlab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a command's artifact goes, together with the provenance header
/// every artifact starts with.
pub struct Artifact {
    command: String,
    hash: String,
    sink: Box<dyn Write>,
}

impl Artifact {
    pub fn open<C: Serialize>(config: &RunConfig, command: &str, args: &C) -> Result<Self> {
        let sink: Box<dyn Write> = match &config.output_path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Artifact {
            command: command.to_string(),
            hash: config_hash(config, &(command, args)),
            sink,
        })
    }

    /// CSV with a `#` comment header, then the rows.
    pub fn csv<R: Serialize>(mut self, notes: &[String], rows: &[R]) -> Result<()> {
        writeln!(self.sink, "# tool: {TOOL} {VERSION}")?;
        writeln!(self.sink, "# command: {}", self.command)?;
        writeln!(self.sink, "# config_sha256: {}", self.hash)?;
        for note in notes {
            writeln!(self.sink, "# {note}")?;
        }
        let mut w = csv::Writer::from_writer(&mut self.sink);
        for row in rows {
            w.serialize(row).map_err(csv_error)?;
        }
        w.flush()?;
        drop(w);
        self.sink.flush()?;
        Ok(())
    }

    /// A JSON document `{"header": ..., "result": ...}`.
    pub fn json<R: Serialize>(mut self, result: &R) -> Result<()> {
        let doc = serde_json::json!({
            "header": {
                "tool": TOOL,
                "version": VERSION,
                "command": self.command,
                "config_sha256": self.hash,
            },
            "result": result,
        });
        serde_json::to_writer_pretty(&mut self.sink, &doc).map_err(io::Error::from)?;
        writeln!(self.sink)?;
        self.sink.flush()?;
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> dirichlet_lab::LabError {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e.into(),
        other => io::Error::other(format!("{other:?}")).into(),
    }
}
