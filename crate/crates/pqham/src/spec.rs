//! `key=value` spec files for metacirculant and Fermat instances.
//!
//! ```text
//! # the Petersen graph
//! family=metacirculant
//! m=2
//! n=5
//! alpha=2
//! T0=1,4
//! T1=0
//! ```
//!
//! Fermat files use `family=fermat` with `p`, `q`, `S` and `T`. Lists are comma-separated and
//! may be empty.

use std::collections::BTreeMap;

use pqham_core::engine::FamilyDescriptor;
use pqham_core::families::{FermatSpec, MetacirculantSpec};

use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Fields {
    map: BTreeMap<String, (usize, String)>,
}

impl Fields {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| parse_err(i + 1, format!("expected key=value, got {line:?}")))?;
            let key = k.trim().to_string();
            if map.contains_key(&key) {
                return Err(parse_err(i + 1, format!("duplicate key {key:?}")));
            }
            map.insert(key, (i + 1, v.trim().to_string()));
        }
        Ok(Fields { map })
    }

    fn take(&mut self, key: &str) -> Result<(usize, String)> {
        self.map
            .remove(key)
            .ok_or_else(|| parse_err(0, format!("missing key {key:?}")))
    }

    fn number(&mut self, key: &str) -> Result<usize> {
        let (line, v) = self.take(key)?;
        v.parse()
            .map_err(|_| parse_err(line, format!("{key}: {v:?} is not a number")))
    }

    fn list(&mut self, key: &str) -> Result<Vec<usize>> {
        let (line, v) = self.take(key)?;
        parse_list(&v).map_err(|_| parse_err(line, format!("{key}: {v:?} is not a number list")))
    }

    fn finish(self) -> Result<()> {
        match self.map.into_iter().next() {
            Some((k, (line, _))) => Err(parse_err(line, format!("unknown key {k:?}"))),
            None => Ok(()),
        }
    }
}

fn parse_list(v: &str) -> std::result::Result<Vec<usize>, std::num::ParseIntError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

/// Parses a spec file into a descriptor, validating the family's conditions.
pub fn parse_spec(text: &str) -> Result<FamilyDescriptor> {
    let mut f = Fields::parse(text)?;
    let (line, family) = f.take("family")?;
    let desc = match family.as_str() {
        "metacirculant" => {
            let m = f.number("m")?;
            let n = f.number("n")?;
            let alpha = f.number("alpha")?;
            let mu = m / 2;
            let t = (0..=mu)
                .map(|k| f.list(&format!("T{k}")))
                .collect::<Result<Vec<_>>>()?;
            FamilyDescriptor::Metacirculant(MetacirculantSpec::new(m, n, alpha, t)?)
        }
        "fermat" => {
            let p = f.number("p")?;
            let q = f.number("q")?;
            let s = f.list("S")?;
            let t = f.list("T")?;
            FamilyDescriptor::Fermat(FermatSpec::new(p, q, s, t)?)
        }
        other => return Err(parse_err(line, format!("unknown family {other:?}"))),
    };
    f.finish()?;
    Ok(desc)
}

/// The spec file of a metacirculant or Fermat descriptor; `None` for other families.
pub fn write_spec(desc: &FamilyDescriptor) -> Option<String> {
    let list = |xs: &mut dyn Iterator<Item = &usize>| {
        xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    };
    match desc {
        FamilyDescriptor::Metacirculant(s) => {
            let mut out = format!(
                "family=metacirculant\nm={}\nn={}\nalpha={}\n",
                s.m, s.n, s.alpha
            );
            for (k, t) in s.t.iter().enumerate() {
                out.push_str(&format!("T{k}={}\n", list(&mut t.iter())));
            }
            Some(out)
        }
        FamilyDescriptor::Fermat(s) => Some(format!(
            "family=fermat\np={}\nq={}\nS={}\nT={}\n",
            s.p,
            s.q,
            list(&mut s.s.iter()),
            list(&mut s.t.iter())
        )),
        _ => None,
    }
}
