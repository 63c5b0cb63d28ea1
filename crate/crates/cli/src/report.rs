//! The JSON run report. Field names are fixed by `schema/report.schema.json`.

use std::io::{self, Write};
use std::time::Instant;

use amf_core::verify::Verdict;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct CommandEcho {
    pub name: &'static str,
    pub args: Vec<String>,
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema_version: &'static str,
    pub command: CommandEcho,
    pub method: Option<&'static str>,
    pub result: Value,
    pub jobs: usize,
    pub wall_time_ms: f64,
    pub verdicts: Vec<Verdict>,
}

impl RunReport {
    pub fn new(
        name: &'static str,
        method: Option<&'static str>,
        result: Value,
        jobs: usize,
        verdicts: Vec<Verdict>,
        started: Instant,
    ) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: CommandEcho {
                name,
                args: std::env::args().skip(1).collect(),
            },
            method,
            result,
            jobs,
            wall_time_ms: started.elapsed().as_secs_f64() * 1000.0,
            verdicts,
        }
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }
}
