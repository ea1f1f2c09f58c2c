//! Input files: one polynomial per line, `#` comments, and optional
//! `# key: value` metadata lines. The shipped fixtures use the same format.

use std::collections::BTreeMap;

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::weights::LinearSystem;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InputFile {
    pub polys: Vec<String>,
    pub meta: BTreeMap<String, String>,
}

impl InputFile {
    pub fn parse(text: &str) -> InputFile {
        let mut out = InputFile::default();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((k, v)) = comment.split_once(':') {
                    let key = k.trim();
                    if !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
                        out.meta.insert(key.to_string(), v.trim().to_string());
                    }
                }
            } else {
                out.polys.push(line.to_string());
            }
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.meta.get(key).map(String::as_str)
    }

    pub fn forms(&self, num_vars: usize) -> Result<Vec<Poly>> {
        self.polys.iter().map(|p| Poly::parse(p, num_vars)).collect()
    }

    pub fn system(&self, num_vars: usize) -> Result<LinearSystem> {
        LinearSystem::new(self.forms(num_vars)?)
    }
}

/// Parses `"y,x,z"` or `"1,0,2"` into the permutation taking new
/// variable `j` to old variable `order[j]`.
pub fn parse_order(text: &str, num_vars: usize) -> Result<Vec<usize>> {
    let names = ["x", "y", "z", "w"];
    let order: Vec<usize> = text
        .split(',')
        .map(|t| {
            let t = t.trim();
            names
                .iter()
                .position(|n| *n == t)
                .filter(|_| num_vars <= names.len())
                .or_else(|| t.strip_prefix('x').unwrap_or(t).parse().ok())
                .ok_or_else(|| Error::Invalid(format!("bad variable `{t}` in order")))
        })
        .collect::<Result<_>>()?;
    let mut seen = order.clone();
    seen.sort_unstable();
    if seen != (0..num_vars).collect::<Vec<_>>() {
        return Err(Error::Invalid(format!("order `{text}` is not a permutation of {num_vars} variables")));
    }
    Ok(order)
}

/// Parses a comma-separated integer list such as `"1,0,-1"`.
pub fn parse_weights(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad weight `{t}`"))))
        .collect()
}

/// A shipped example, with the text of its input file.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn input(&self) -> InputFile {
        InputFile::parse(self.text)
    }
}

macro_rules! fixtures {
    ($($name:literal),* $(,)?) => {
        pub const FIXTURES: &[Fixture] = &[
            $(Fixture { name: $name, text: include_str!(concat!("../fixtures/", $name, ".txt")) }),*
        ];
    };
}

fixtures!(
    "cubic-triple-line",
    "cubic-generic",
    "cubic-tangent-double-line",
    "cubic-double-line-one-point",
    "halphen-index3-nonstable",
    "halphen-index3-stable",
    "net-row1",
    "net-row2",
    "net-row3",
    "net-row4",
    "net-row5",
    "net-row6",
    "net-row7",
    "net-row8",
);

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
