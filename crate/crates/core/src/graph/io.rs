//! Edge-list text format: a header line `n m`, then one `u v weight` line per
//! edge in id order. Blank lines and repeated whitespace are ignored.

use std::io::{BufRead, Write};

use super::{Edge, Network};
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Network, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.weight)?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R) -> Result<Network> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(err("expected header `n m`".into()));
                }
                let n = fields[0].parse().map_err(|e| err(format!("{e}")))?;
                let m = fields[1].parse().map_err(|e| err(format!("{e}")))?;
                header = Some((n, m));
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(err("expected `u v weight`".into()));
                }
                let u = fields[0].parse().map_err(|e| err(format!("{e}")))?;
                let v = fields[1].parse().map_err(|e| err(format!("{e}")))?;
                let weight = fields[2].parse().map_err(|e| err(format!("{e}")))?;
                edges.push(Edge { u, v, weight });
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        message: "empty input".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Network::new(n, edges)
}
