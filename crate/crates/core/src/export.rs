//! JSON, DOT and CSV renderings of isogeny graphs and sweep results.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::analytics::{graph_stats, GraphStats};
use crate::arith::Fp2;
use crate::error::{Error, Result};
use crate::ssgraph::IsogenyGraph;

/// Version tag written into every JSON export and cache file name.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub index: usize,
    /// `"a+b*t"` with `t^2` equal to the field nonresidue.
    pub j: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub multiplicity: u32,
}

/// Serializable form of `Λ_p(ℓ)`; edges are listed once with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub format_version: u32,
    pub p: u64,
    pub ell: u64,
    pub field_nonresidue: u64,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub stats: GraphStats,
}

impl GraphExport {
    pub fn from_graph(g: &IsogenyGraph) -> Result<Self> {
        let n = g.n();
        let vertices = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(index, v)| VertexRecord {
                index,
                j: v.to_string(),
            })
            .collect();
        let edges = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| g.multiplicity(i, j) > 0)
            .map(|(i, j)| EdgeRecord {
                i,
                j,
                multiplicity: g.multiplicity(i, j),
            })
            .collect();
        Ok(GraphExport {
            format_version: FORMAT_VERSION,
            p: g.p(),
            ell: g.ell(),
            field_nonresidue: g.nonresidue(),
            vertices,
            edges,
            stats: graph_stats(g)?,
        })
    }

    /// Rebuild the graph, re-running every structural check.
    pub fn to_graph(&self) -> Result<IsogenyGraph> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "export format version {} (this build reads {FORMAT_VERSION})",
                self.format_version
            )));
        }
        let n = self.vertices.len();
        let mut vertices = Vec::with_capacity(n);
        for (k, rec) in self.vertices.iter().enumerate() {
            if rec.index != k {
                return Err(Error::Parse(format!(
                    "vertex {k} carries index {}",
                    rec.index
                )));
            }
            vertices.push(Fp2::parse(&rec.j)?);
        }
        let mut adjacency = vec![vec![0u32; n]; n];
        for e in &self.edges {
            if e.i > e.j || e.j >= n {
                return Err(Error::Parse(format!("bad edge ({}, {})", e.i, e.j)));
            }
            adjacency[e.i][e.j] = e.multiplicity;
            adjacency[e.j][e.i] = e.multiplicity;
        }
        let g = IsogenyGraph::from_parts(self.p, self.ell, vertices, adjacency)?;
        if g.nonresidue() != self.field_nonresidue {
            return Err(Error::Parse(format!(
                "field nonresidue {} does not match {} for p = {}",
                self.field_nonresidue,
                g.nonresidue(),
                self.p
            )));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn dot_header(out: &mut String, name: &str, g: &IsogenyGraph) {
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for (i, v) in g.vertices().iter().enumerate() {
        writeln!(out, "  {i} [label=\"{v}\"];").unwrap();
    }
}

fn dot_edges(out: &mut String, g: &IsogenyGraph, attrs: &str) {
    let n = g.n();
    for i in 0..n {
        for j in i..n {
            for _ in 0..g.multiplicity(i, j) {
                writeln!(out, "  {i} -- {j}{attrs};").unwrap();
            }
        }
    }
}

/// DOT text with one line per parallel edge and loops as self-edges.
pub fn to_dot(g: &IsogenyGraph) -> String {
    let mut out = String::new();
    dot_header(&mut out, &format!("Lambda_{}({})", g.p(), g.ell()), g);
    dot_edges(&mut out, g, "");
    out.push_str("}\n");
    out
}

/// Both graphs on one vertex set, ℓ1-edges blue and ℓ2-edges green.
pub fn to_dot_overlay(g1: &IsogenyGraph, g2: &IsogenyGraph) -> Result<String> {
    if g1.p() != g2.p() || g1.vertices() != g2.vertices() {
        return Err(Error::domain(
            "overlay needs two graphs on the same vertex set",
        ));
    }
    let mut out = String::new();
    dot_header(
        &mut out,
        &format!("Lambda_{}({},{})", g1.p(), g1.ell(), g2.ell()),
        g1,
    );
    dot_edges(&mut out, g1, " [color=blue]");
    dot_edges(&mut out, g2, " [color=green]");
    out.push_str("}\n");
    Ok(out)
}

/// One row of a sweep ledger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub p: u64,
    pub ell: u64,
    pub n: u64,
    pub loops: u64,
    pub redundant: u64,
    pub trace_checks_passed: bool,
}

/// Header row of every sweep ledger.
pub const LEDGER_HEADER: [&str; 6] = ["p", "ell", "n", "loops", "redundant", "trace_checks_passed"];

pub fn write_ledger<W: Write>(rows: &[LedgerRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(LEDGER_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_ledger<R: Read>(input: R) -> Result<Vec<LedgerRow>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(LEDGER_HEADER) {
        return Err(Error::Parse("unexpected ledger header".into()));
    }
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_round_trip() {
        let rows = vec![
            LedgerRow {
                p: 13,
                ell: 2,
                n: 1,
                loops: 3,
                redundant: 2,
                trace_checks_passed: true,
            },
            LedgerRow {
                p: 37,
                ell: 3,
                n: 3,
                loops: 2,
                redundant: 0,
                trace_checks_passed: false,
            },
        ];
        let mut buf = Vec::new();
        write_ledger(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p,ell,n,loops,redundant,trace_checks_passed\n"));
        assert_eq!(read_ledger(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_ledger("a,b\n1,2\n".as_bytes()).is_err());
    }
}
