//! Structured-text run reports: `[section]` headers followed by
//! `key = value` lines in a stable order.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let v = value.to_string().replace('\n', " ");
        self.entries.push((key.into(), v));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn section(&mut self, name: &str) -> &mut Section {
        self.sections.push(Section::new(name));
        self.sections.last_mut().unwrap()
    }

    pub fn get_section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.get_section(section).and_then(|s| s.get(key))
    }

    pub fn append(&mut self, other: Report) {
        self.sections.extend(other.sections);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            writeln!(out, "[{}]", s.name).unwrap();
            for (k, v) in &s.entries {
                writeln!(out, "{k} = {v}").unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report> {
        let mut r = Report::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                r.section(name);
                continue;
            }
            let (k, v) = line.split_once(" = ").ok_or_else(|| {
                Error::Parse(format!("report line {}: expected 'key = value'", no + 1))
            })?;
            let s = r
                .sections
                .last_mut()
                .ok_or_else(|| Error::Parse("report entry before any section".into()))?;
            s.entries.push((k.into(), v.into()));
        }
        Ok(r)
    }
}

/// Lowercase hex SHA-256.
pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").unwrap();
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new();
        r.section("report")
            .push("kind", "interval-mean")
            .push("empirical_mean", "35/128");
        r.section("config").push("seed", 7).push("f0", "T^4 + 1");
        let text = r.to_text();
        assert_eq!(Report::parse(&text).unwrap(), r);
        assert_eq!(r.get("config", "seed"), Some("7"));
        assert!(text.starts_with("[report]\nkind = interval-mean\n"));
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn rejects_orphan_entries() {
        assert!(Report::parse("a = b\n").is_err());
        assert!(Report::parse("[x]\nnot a pair\n").is_err());
    }
}
