pub mod eval;
pub mod sweep;
pub mod table1;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use crate::Failure;

/// Buffered writer for a path, with `-` meaning stdout.
pub fn open_output(path: &str) -> Result<Box<dyn Write>, Failure> {
    if path == "-" {
        return Ok(Box::new(BufWriter::new(io::stdout().lock())));
    }
    File::create(path)
        .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
        .map_err(|e| Failure::Output(format!("cannot write '{path}': {e}")))
}
