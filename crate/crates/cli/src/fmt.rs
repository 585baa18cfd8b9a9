//! Output plumbing: human-readable text or line-delimited key-value
//! records.
//!
//! A structured record is one line: a record kind followed by
//! space-separated `key=value` pairs. Values never contain whitespace, so
//! the format round-trips through `split_whitespace`.

use std::fmt::Display;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// One structured record under construction.
pub struct Record {
    line: String,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        debug_assert!(!kind.contains(char::is_whitespace));
        Record {
            line: kind.to_string(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        let value = value.to_string();
        debug_assert!(
            !value.contains(char::is_whitespace),
            "structured values must not contain whitespace: {value:?}"
        );
        self.line.push(' ');
        self.line.push_str(key);
        self.line.push('=');
        self.line.push_str(&value);
        self
    }

    pub fn emit(self) {
        println!("{}", self.line);
    }
}
