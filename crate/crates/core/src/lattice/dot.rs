//! DOT export for tree balls and their images under a characteristic map.

use super::tree::{edges_within, TreeVertex};
use std::fmt::Write;

/// Graph of a vertex set with its internal edges; labels are the canonical
/// lattice digests.
pub fn ball_to_dot(name: &str, vertices: &[TreeVertex]) -> String {
    let edges = edges_within(vertices);
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for (i, v) in vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{}\"];", v.digest()).unwrap();
    }
    for (i, j) in edges {
        writeln!(out, "  v{i} -- v{j};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Image graph: one node per source vertex carrying the image label, source
/// edges drawn dashed when the map contracts them and solid when preserved.
/// `images[i]` is the label of the image of `vertices[i]`; `contracted`
/// lists source-edge indices whose endpoints map to the same vertex.
pub fn image_to_dot(
    name: &str,
    vertices: &[TreeVertex],
    images: &[String],
    edges: &[(usize, usize)],
    contracted: &[bool],
) -> String {
    assert_eq!(vertices.len(), images.len());
    assert_eq!(edges.len(), contracted.len());
    let mut out = String::new();
    writeln!(out, "graph {name} {{").unwrap();
    for (i, label) in images.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{label}\"];").unwrap();
    }
    for (e, (i, j)) in edges.iter().enumerate() {
        if contracted[e] {
            writeln!(out, "  v{i} -- v{j} [style=dashed];").unwrap();
        } else {
            writeln!(out, "  v{i} -- v{j};").unwrap();
        }
    }
    writeln!(out, "}}").unwrap();
    out
}
