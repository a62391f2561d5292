//! Text, DOT and CSV renderings of graphs, quotients, certificates and tables.

use std::fmt::Write as _;

use pqham_core::engine::{Certificate, FamilyDescriptor, Fingerprint, Strategy};
use pqham_core::graph::{Graph, HamiltonCertificate, Multigraph};
use pqham_core::perm::CosetSpace;
use pqham_core::quotient::FruchtSymbol;
use pqham_core::residue::{record_csv, BoundRecord};

use crate::{Error, Result};

/// First line of a certificate file.
pub const CERT_HEADER: &str = "pqham-certificate 1";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// `n m` followed by one `u v` line per edge with `u < v`, sorted.
pub fn edge_list(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_unstable();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (a, b) in edges {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Inverse of [`edge_list`]; `#` lines are comments.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let pair = |i: usize, l: &str| -> Result<(usize, usize)> {
        let v: Vec<&str> = l.split_whitespace().collect();
        match v.as_slice() {
            [a, b] => Ok((
                a.parse().map_err(|_| parse_err(i + 1, "bad number"))?,
                b.parse().map_err(|_| parse_err(i + 1, "bad number"))?,
            )),
            _ => Err(parse_err(i + 1, "expected two numbers")),
        }
    };
    let (i, head) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty edge list"))?;
    let (n, m) = pair(i, head)?;
    let edges = lines.map(|(i, l)| pair(i, l)).collect::<Result<Vec<_>>>()?;
    if edges.len() != m {
        return Err(parse_err(
            i + 1,
            format!("header says {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// `u,v` rows under a header.
pub fn edge_csv(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_unstable();
    let mut out = String::from("u,v\n");
    for (a, b) in edges {
        let _ = writeln!(out, "{a},{b}");
    }
    out
}

/// Undirected DOT graph.
pub fn graph_dot(g: &Graph, name: &str) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_unstable();
    let mut out = format!("graph \"{name}\" {{\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

/// Frucht symbol and quotient multigraph as text.
pub fn quotient_text(sym: &FruchtSymbol, quo: &Multigraph) -> String {
    let mut out = format!("orbits {}\nlength {}\n", sym.m(), sym.n);
    let _ = writeln!(out, "bases {}", join(&sym.bases, " "));
    out.push_str("symbol\n");
    out.push_str(&sym.to_text());
    out.push_str("inside\n");
    for a in 0..quo.order() {
        let _ = writeln!(out, "{a} {}", quo.loop_valency(a));
    }
    out.push_str("between\n");
    let mut edges: Vec<(usize, usize, usize)> = quo.edges().collect();
    edges.sort_unstable();
    for (a, b, k) in edges {
        let _ = writeln!(out, "{a} {b} {k}");
    }
    out
}

/// Quotient multigraph in DOT: each orbit labelled `i n/d` with `n` its length and `d` its inside
/// valency, each edge labelled with its multiplicity.
pub fn quotient_dot(sym: &FruchtSymbol, quo: &Multigraph, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for a in 0..quo.order() {
        let _ = writeln!(
            out,
            "  {a} [label=\"{a} {}/{}\"];",
            sym.n,
            quo.loop_valency(a)
        );
    }
    let mut edges: Vec<(usize, usize, usize)> = quo.edges().collect();
    edges.sort_unstable();
    for (a, b, k) in edges {
        let _ = writeln!(out, "  {a} -- {b} [label=\"{k}\", penwidth={k}];");
    }
    out.push_str("}\n");
    out
}

/// Suborbit table: index, length, paired index, self-pairedness and a name column.
pub fn suborbit_rows(space: &CosetSpace, names: &[String]) -> Vec<[String; 5]> {
    space
        .suborbits
        .iter()
        .enumerate()
        .map(|(i, s)| {
            [
                i.to_string(),
                s.len().to_string(),
                s.paired.to_string(),
                if space.is_self_paired(i) { "yes" } else { "no" }.to_string(),
                names.get(i).cloned().unwrap_or_default(),
            ]
        })
        .collect()
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
pub fn aligned<const N: usize>(header: [&str; N], rows: &[[String; N]]) -> String {
    let mut width = header.map(str::len);
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:<w$}", w = width[i]);
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// Comma-separated rows under a header; cells must not contain commas.
pub fn csv<const N: usize>(header: [&str; N], rows: &[[String; N]]) -> String {
    let mut out = header.join(",") + "\n";
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

/// Exceptional-sequence table as aligned text.
pub fn table_text(records: &[BoundRecord]) -> String {
    let rows: Vec<[String; 7]> = records
        .iter()
        .map(|r| {
            [
                r.sequence.to_string(),
                r.bound_k.to_string(),
                r.split_type.to_string(),
                r.split.s.to_string(),
                r.split.t.to_string(),
                join(&r.primes_le_k, ","),
                join(&r.quasi_primes, ","),
            ]
        })
        .collect();
    let mut out = aligned(
        ["sequence", "k", "type", "s", "t", "primes", "quasi"],
        &rows,
    );
    let _ = writeln!(out, "{} sequences", records.len());
    out
}

/// One [`record_csv`] line per record.
pub fn table_csv(records: &[BoundRecord]) -> String {
    records.iter().map(|r| record_csv(r) + "\n").collect()
}

/// Certificate as `key=value` lines after [`CERT_HEADER`]; trace keys are prefixed `trace.`.
pub fn certificate_text(desc: &FamilyDescriptor, cert: &Certificate) -> String {
    let fp = &cert.fingerprint;
    let mut out = format!("{CERT_HEADER}\n");
    let _ = writeln!(out, "descriptor={desc}");
    let _ = writeln!(out, "order={}", fp.order);
    let valency = fp.valency.map_or(String::from("none"), |v| v.to_string());
    let _ = writeln!(out, "valency={valency}");
    let _ = writeln!(out, "sha256={}", fp.hash_hex());
    let _ = writeln!(out, "strategy={}", cert.strategy.name());
    for (k, v) in &cert.trace {
        let _ = writeln!(out, "trace.{k}={v}");
    }
    let _ = writeln!(out, "cycle={}", join(&cert.hamilton.cycle, " "));
    out
}

/// Inverse of [`certificate_text`], returning the descriptor text alongside.
pub fn parse_certificate(text: &str) -> Result<(String, Certificate)> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, CERT_HEADER)) => {}
        _ => return Err(parse_err(1, format!("expected {CERT_HEADER:?}"))),
    }
    let mut desc = None;
    let (mut order, mut valency, mut hash, mut strategy, mut cycle) =
        (None, None, None, None, None);
    let mut trace = Vec::new();
    for (i, l) in lines {
        let line = i + 1;
        let (k, v) = l
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected key=value"))?;
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| parse_err(line, format!("{s:?} is not a number")))
        };
        match k {
            "descriptor" => desc = Some(v.to_string()),
            "order" => order = Some(num(v)?),
            "valency" => {
                valency = Some(if v == "none" { None } else { Some(num(v)?) });
            }
            "sha256" => hash = Some(parse_hash(v).ok_or_else(|| parse_err(line, "bad sha256"))?),
            "strategy" => {
                strategy =
                    Some(Strategy::parse(v).ok_or_else(|| parse_err(line, "unknown strategy"))?)
            }
            "cycle" => cycle = Some(v.split_whitespace().map(num).collect::<Result<Vec<_>>>()?),
            _ => match k.strip_prefix("trace.") {
                Some(key) => trace.push((key.to_string(), v.to_string())),
                None => return Err(parse_err(line, format!("unknown key {k:?}"))),
            },
        }
    }
    let missing = |k: &str| parse_err(0, format!("missing {k}"));
    Ok((
        desc.ok_or_else(|| missing("descriptor"))?,
        Certificate {
            fingerprint: Fingerprint {
                order: order.ok_or_else(|| missing("order"))?,
                valency: valency.ok_or_else(|| missing("valency"))?,
                hash: hash.ok_or_else(|| missing("sha256"))?,
            },
            hamilton: HamiltonCertificate {
                cycle: cycle.ok_or_else(|| missing("cycle"))?,
            },
            strategy: strategy.ok_or_else(|| missing("strategy"))?,
            trace,
        },
    ))
}

fn parse_hash(hex: &str) -> Option<[u8; 32]> {
    if hex.len() != 64 || !hex.is_ascii() {
        return None;
    }
    let mut out = [0u8; 32];
    for (i, b) in out.iter_mut().enumerate() {
        *b = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).ok()?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pqham_core::engine::{prove, verify, Options};
    use pqham_core::families::FermatSpec;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        let text = edge_list(&g);
        assert!(text.starts_with("10 15\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let d = FamilyDescriptor::Fermat(FermatSpec::new(5, 3, vec![], vec![1]).unwrap());
        let cert = prove(&d, &Options::default()).unwrap();
        let text = certificate_text(&d, &cert);
        let (desc, back) = parse_certificate(&text).unwrap();
        assert_eq!(desc, d.to_string());
        assert_eq!(back, cert);
        let g = pqham_core::engine::instance(&d).unwrap().graph;
        assert!(verify(&g, &back));
        assert!(parse_certificate(&text.replace("sha256=", "sha256=0")).is_err());
        assert!(parse_certificate("junk\n").is_err());
    }

    #[test]
    fn aligned_columns() {
        let rows = [[String::from("1"), String::from("abc")]];
        assert_eq!(aligned(["x", "name"], &rows), "x  name\n1  abc\n");
        assert_eq!(csv(["x", "name"], &rows), "x,name\n1,abc\n");
    }
}
