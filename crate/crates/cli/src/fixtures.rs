//! Printed data shipped as `key = value` text files.

use std::fmt;
use std::path::Path;

use mu_core::{MultiPoly, PolyRing, Rational};

pub const NAMES: [&str; 8] = ["u6", "eta", "pfaffians", "v12", "curves", "ideals", "hom", "weights"];

const EMBEDDED: [(&str, &str); 8] = [
    ("u6", include_str!("../fixtures/u6.txt")),
    ("eta", include_str!("../fixtures/eta.txt")),
    ("pfaffians", include_str!("../fixtures/pfaffians.txt")),
    ("v12", include_str!("../fixtures/v12.txt")),
    ("curves", include_str!("../fixtures/curves.txt")),
    ("ideals", include_str!("../fixtures/ideals.txt")),
    ("hom", include_str!("../fixtures/hom.txt")),
    ("weights", include_str!("../fixtures/weights.txt")),
];

/// A fixture problem pinned to a file, line and key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureError {
    pub file: String,
    pub line: usize,
    pub key: String,
    pub msg: String,
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}: {}", self.file, self.key, self.msg)
        } else {
            write!(f, "{}:{}: {}: {}", self.file, self.line, self.key, self.msg)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Fixture {
    pub fn parse(name: &str, text: &str) -> Result<Fixture, FixtureError> {
        let mut entries: Vec<Entry> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(FixtureError {
                    file: file_name(name),
                    line: i + 1,
                    key: line.to_string(),
                    msg: "expected `key = value`".into(),
                });
            };
            let key = k.trim().to_string();
            if entries.iter().any(|e| e.key == key) {
                return Err(FixtureError {
                    file: file_name(name),
                    line: i + 1,
                    key,
                    msg: "duplicate key".into(),
                });
            }
            entries.push(Entry {
                key,
                value: v.trim().to_string(),
                line: i + 1,
            });
        }
        Ok(Fixture {
            name: name.to_string(),
            entries,
        })
    }

    pub fn file(&self) -> String {
        file_name(&self.name)
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn error(&self, key: &str, msg: impl Into<String>) -> FixtureError {
        FixtureError {
            file: self.file(),
            line: self.get(key).map_or(0, |e| e.line),
            key: key.to_string(),
            msg: msg.into(),
        }
    }

    pub fn require(&self, key: &str) -> Result<&Entry, FixtureError> {
        self.get(key).ok_or_else(|| self.error(key, "missing entry"))
    }

    pub fn poly(&self, key: &str, ring: &PolyRing) -> Result<MultiPoly, FixtureError> {
        let e = self.require(key)?;
        MultiPoly::parse(ring, &e.value).map_err(|err| self.error(key, err.to_string()))
    }

    pub fn poly_list(&self, key: &str, ring: &PolyRing) -> Result<Vec<MultiPoly>, FixtureError> {
        let e = self.require(key)?;
        split_list(&e.value)
            .iter()
            .map(|s| MultiPoly::parse(ring, s).map_err(|err| self.error(key, err.to_string())))
            .collect()
    }

    pub fn int_list(&self, key: &str) -> Result<Vec<i64>, FixtureError> {
        let e = self.require(key)?;
        split_list(&e.value)
            .iter()
            .map(|s| s.parse().map_err(|_| self.error(key, format!("not an integer: `{s}`"))))
            .collect()
    }

    pub fn str_list(&self, key: &str) -> Result<Vec<String>, FixtureError> {
        Ok(split_list(&self.require(key)?.value))
    }

    /// `var = value` assignment.
    pub fn assignment(&self, key: &str) -> Result<(String, Rational), FixtureError> {
        let e = self.require(key)?;
        let (v, x) = e
            .value
            .split_once('=')
            .ok_or_else(|| self.error(key, "expected `var = value`"))?;
        let x = mu_core::rational::parse_rational(x)
            .ok_or_else(|| self.error(key, format!("not a rational: `{}`", x.trim())))?;
        Ok((v.trim().to_string(), x))
    }

    /// Indexed keys `prefix[k]`, in order, stopping at the first gap.
    pub fn indexed(&self, prefix: &str) -> Vec<String> {
        (1..)
            .map(|k| format!("{prefix}[{k}]"))
            .take_while(|k| self.get(k).is_some())
            .collect()
    }

    /// Record names before the first `.` of every key, in file order.
    pub fn heads(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.entries {
            let h = e.key.split('.').next().unwrap_or("").to_string();
            if !out.contains(&h) {
                out.push(h);
            }
        }
        out
    }
}

fn file_name(name: &str) -> String {
    format!("{name}.txt")
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

/// All fixtures, read from `dir` when given and embedded otherwise.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    fixtures: Vec<Fixture>,
    digest_source: String,
}

impl FixtureSet {
    pub fn load(dir: Option<&Path>) -> Result<FixtureSet, FixtureError> {
        let mut fixtures = Vec::new();
        let mut digest_source = String::new();
        for (name, embedded) in EMBEDDED {
            let text = match dir {
                Some(d) => {
                    let path = d.join(file_name(name));
                    std::fs::read_to_string(&path).map_err(|e| FixtureError {
                        file: path.display().to_string(),
                        line: 0,
                        key: name.to_string(),
                        msg: e.to_string(),
                    })?
                }
                None => embedded.to_string(),
            };
            digest_source.push_str(name);
            digest_source.push('\n');
            digest_source.push_str(&text);
            fixtures.push(Fixture::parse(name, &text)?);
        }
        Ok(FixtureSet {
            fixtures,
            digest_source,
        })
    }

    pub fn get(&self, name: &str) -> &Fixture {
        self.fixtures.iter().find(|f| f.name == name).expect("known fixture")
    }

    /// Text all cache keys depend on.
    pub fn digest_source(&self) -> &str {
        &self.digest_source
    }
}
