use serde_json::{json, Value};

use crate::{Format, Global};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const INPUT: u8 = 2;

/// Result for one input: exit code, JSON record and text rendering.
pub struct Outcome {
    pub code: u8,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    pub fn new(code: u8, json: Value, text: String) -> Self {
        Outcome { code, json, text }
    }

    pub fn input_error(file: &str, message: String) -> Self {
        Outcome {
            code: INPUT,
            json: json!({ "file": file, "error": message }),
            text: format!("error: {file}: {message}\n"),
        }
    }
}

/// Prints the outcomes in input order and returns the combined exit code:
/// any input error wins over any mathematical failure.
pub fn emit(g: &Global, command: &str, outcomes: Vec<Outcome>) -> u8 {
    let code = outcomes.iter().map(|o| o.code).max().unwrap_or(OK);
    match g.format {
        Format::Json => {
            let results: Vec<Value> = outcomes.into_iter().map(|o| o.json).collect();
            let report = json!({ "schema": "report/1", "command": command, "results": results });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        Format::Text => {
            for o in outcomes {
                if o.code == INPUT {
                    eprint!("{}", o.text);
                } else {
                    print!("{}", o.text);
                }
            }
        }
    }
    code
}

/// Left-aligned two-column table.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(a, _)| a.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(a, b)| format!("  {a:<width$}  {b}\n"))
        .collect()
}
