use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

use super::ReductionCertificate;

/// Even `d >= 4`: a copy of `g` with a private path of `d/2 - 1` edges hung
/// off every vertex. Vertex `v` keeps id `v`; its path vertices follow in
/// order of distance from `v`, and the certificate maps `v` to the far end.
pub fn reduce_is_even(g: &Graph, d: usize) -> Result<(Graph, ReductionCertificate)> {
    if d % 2 == 1 || d < 4 {
        return Err(Error::UnsupportedDistance {
            d,
            reason: "the even reduction needs an even d >= 4",
        });
    }
    let (h, ends) = attach_paths(g.n(), d / 2 - 1, 0, g.edges().collect());
    let cert = ReductionCertificate::new(g, &h, ends);
    Ok((h, cert))
}

/// Odd `d >= 5`: one vertex per vertex of `g` (the edges of `g` are not
/// copied), each with a private path of `(d-3)/2` edges; every edge of `g`
/// becomes a vertex joined to both endpoints, and the edge vertices form a
/// clique. Edge vertices come last, in edge order.
pub fn reduce_is_odd(g: &Graph, d: usize) -> Result<(Graph, ReductionCertificate)> {
    if d.is_multiple_of(2) || d < 5 {
        return Err(Error::UnsupportedDistance {
            d,
            reason: "the odd reduction needs an odd d >= 5",
        });
    }
    let path_len = (d - 3) / 2;
    let base = g.n() * (path_len + 1);
    let source_edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut extra = Vec::new();
    for (i, &(u, v)) in source_edges.iter().enumerate() {
        let e = base + i;
        extra.push((e, u));
        extra.push((e, v));
        for j in i + 1..source_edges.len() {
            extra.push((e, base + j));
        }
    }
    let (h, ends) = attach_paths(g.n(), path_len, source_edges.len(), extra);
    let cert = ReductionCertificate::new(g, &h, ends);
    Ok((h, cert))
}

/// Hangs a path of `len` edges off each of the first `n` vertices and adds
/// `extra_vertices` further vertices plus the `extra` edges.
fn attach_paths(
    n: usize,
    len: usize,
    extra_vertices: usize,
    extra: Vec<(Vertex, Vertex)>,
) -> (Graph, Vec<Vertex>) {
    let total = n * (len + 1) + extra_vertices;
    let mut edges = extra;
    let mut ends = Vec::with_capacity(n);
    for v in 0..n {
        let mut prev = v;
        for j in 0..len {
            let w = n + v * len + j;
            edges.push((prev, w));
            prev = w;
        }
        ends.push(prev);
    }
    let h = Graph::from_edges(total, edges).expect("reduction edges are simple");
    (h, ends)
}
