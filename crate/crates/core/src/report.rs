//! Key=value report rendering: every analysis prints deterministic lines
//! sorted by key, so reports are byte-stable and diff-friendly.

use std::collections::BTreeMap;
use std::fmt::Display;

#[derive(Clone, Debug, Default)]
pub struct Report {
    lines: BTreeMap<String, String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl Display) {
        self.lines.insert(key.into(), value.to_string());
    }

    pub fn set_list<T: Display>(&mut self, key: impl Into<String>, items: &[T]) {
        let body: Vec<String> = items.iter().map(T::to_string).collect();
        self.lines
            .insert(key.into(), format!("[{}]", body.join(",")));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.get(key).map(String::as_str)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            out.push_str(k);
            out.push('=');
            out.push_str(v);
            out.push('\n');
        }
        out
    }
}

/// Zero-padded index so lexicographic key order matches numeric order.
pub fn idx(i: usize) -> String {
    format!("{i:02}")
}
