use std::fs::File;
use std::io::{BufWriter, Write};

use serde::Serialize;

use crate::{Failure, OutputArgs};

/// Run `body` against the requested file or the given standard output.
pub fn with_sink(
    args: &OutputArgs,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<(), Failure>,
) -> Result<(), Failure> {
    match &args.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            body(stdout)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

/// Shortest representation that parses back to the same value.
pub fn num(v: f64) -> String {
    format!("{v}")
}

pub fn write_csv(w: &mut dyn Write, header: &[String], rows: &[Vec<f64>]) -> Result<(), Failure> {
    let mut out = csv_writer(w);
    let io = |e: csv::Error| Failure::usage(format!("csv output failed: {e}"));
    out.write_record(header).map_err(io)?;
    for row in rows {
        out.write_record(row.iter().map(|v| num(*v))).map_err(io)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *w, value)
        .map_err(|e| Failure::usage(format!("json output failed: {e}")))?;
    writeln!(w)?;
    Ok(())
}
