//! Structural checks of the tree-to-building map: edge preservation over a
//! ball, and boundary limits toward the graph of the field-level transfer
//! function.

use super::charmap::{char_lattice, vertex_map, VertexMapError};
use crate::arith::context::ArithError;
use crate::arith::Rat;
use crate::colligation::charfun::char_fun;
use crate::colligation::Colligation;
use crate::lattice::quasi::{converges_to, Exp, QuasiLattice, SubspaceRep};
use crate::lattice::tree::{ball, edges_within, TreeVertex};
use num_traits::{One, Zero};

/// Outcome of checking every edge of a ball under the induced vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMapReport {
    pub vertices: usize,
    pub edges: usize,
    /// Edge endpoints mapped to the same vertex.
    pub contracted: usize,
    /// Edge endpoints mapped to adjacent vertices.
    pub preserved: usize,
    /// Edges whose image endpoints are farther apart than adjacent, with the
    /// observed image distance. Empty when the map behaves like a graph map.
    pub violations: Vec<(usize, usize, u64)>,
    /// Vertices whose image was degenerate (subspace part present).
    pub degenerate_vertices: usize,
    /// Per-edge contraction flags, aligned with `edge_list`.
    pub edge_flags: Vec<bool>,
    pub edge_list: Vec<(usize, usize)>,
    /// Image digests per vertex (degenerate images described textually).
    pub image_labels: Vec<String>,
}

/// Applies the vertex map across a ball and classifies every edge as
/// contracted, preserved, or violating.
pub fn tree_map_check(g: &Colligation, center: &TreeVertex, radius: u64) -> TreeMapReport {
    assert_eq!(g.alpha(), 1, "tree-to-tree maps need corner size 1");
    let vertices = ball(center, radius);
    let edge_list = edges_within(&vertices);
    let images: Vec<Result<TreeVertex, VertexMapError>> =
        vertices.iter().map(|v| vertex_map(g, v)).collect();
    let mut contracted = 0;
    let mut preserved = 0;
    let mut violations = Vec::new();
    let mut edge_flags = Vec::with_capacity(edge_list.len());
    let degenerate_vertices = images.iter().filter(|r| r.is_err()).count();
    for &(i, j) in &edge_list {
        match (&images[i], &images[j]) {
            (Ok(a), Ok(b)) => {
                let dist = a.distance(b);
                match dist {
                    0 => {
                        contracted += 1;
                        edge_flags.push(true);
                    }
                    1 => {
                        preserved += 1;
                        edge_flags.push(false);
                    }
                    d => {
                        violations.push((i, j, d));
                        edge_flags.push(false);
                    }
                }
            }
            _ => {
                // degenerate endpoint: counted at the vertex level
                edge_flags.push(false);
            }
        }
    }
    let image_labels = images
        .iter()
        .map(|r| match r {
            Ok(v) => v.digest(),
            Err(e) => format!("degenerate: {e}"),
        })
        .collect();
    TreeMapReport {
        vertices: vertices.len(),
        edges: edge_list.len(),
        contracted,
        preserved,
        violations,
        degenerate_vertices,
        edge_flags,
        edge_list,
        image_labels,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundaryError {
    #[error("the point is a pole of the transfer function")]
    Pole,
    #[error("need tail index above twice the threshold (j_max {j_max} vs k {k})")]
    TailTooShort { j_max: i64, k: i64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Builds the line sequence R_j = O (1, x) + p^j O (0, 1) converging to the
/// line through (1, x), pushes it through the characteristic map, and tests
/// threshold-k convergence of the tail to the graph of the transfer value
/// at x.
pub fn boundary_limit_check(
    g: &Colligation,
    ctx: crate::arith::context::PAdicContext,
    x: &Rat,
    j_max: i64,
    k: i64,
) -> Result<bool, BoundaryError> {
    assert_eq!(g.block_count(), 1);
    if j_max <= 2 * k {
        return Err(BoundaryError::TailTooShort { j_max, k });
    }
    let chi = char_fun(g);
    if chi.den().eval(x).is_zero() {
        return Err(BoundaryError::Pole);
    }
    // canonical evaluation: regular also at removable singularities of the
    // resolvent formula
    let value = chi.eval(x)?;
    let alpha = g.alpha();
    // graph of the value in (output, input) coordinates
    let graph_cols = (0..alpha)
        .map(|j| {
            let mut col: Vec<Rat> = value.col(j);
            let mut unit = vec![Rat::zero(); alpha];
            unit[j] = Rat::one();
            col.extend(unit);
            col
        })
        .collect();
    let graph = SubspaceRep::new(2 * alpha, graph_cols);
    let mut images = Vec::new();
    for j in (j_max - 2).max(1)..=j_max {
        let r_j = QuasiLattice::new(
            ctx,
            2,
            vec![vec![Rat::one(), x.clone()], vec![Rat::zero(), Rat::one()]],
            vec![Exp::Fin(0), Exp::Fin(j)],
        );
        images.push(char_lattice(g, &r_j).lattice);
    }
    Ok(converges_to(&images, &graph, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::context::PAdicContext;
    use crate::arith::poly::Poly;
    use crate::arith::ratfun::RatFun;
    use crate::arith::{rat, rat_i64};
    use crate::colligation::realize::realize;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    #[test]
    fn swap_preserves_radius_two_ball() {
        let g = Colligation::from_i64(1, 1, 1, &[&[0, 1], &[1, 0]]);
        let base = TreeVertex::base(ctx(2), 2);
        let report = tree_map_check(&g, &base, 2);
        assert_eq!(report.vertices, 10);
        assert_eq!(report.edges, 9);
        assert!(report.violations.is_empty());
        assert_eq!(report.degenerate_vertices, 0);
        assert_eq!(report.contracted + report.preserved, 9);
    }

    #[test]
    fn degenerate_images_reported() {
        // identity-like colligation: every image is the diagonal subspace
        let g = Colligation::identity(1, 1, 1);
        let base = TreeVertex::base(ctx(2), 2);
        let report = tree_map_check(&g, &base, 1);
        assert_eq!(report.degenerate_vertices, report.vertices);
        assert!(report.image_labels[0].contains("degenerate"));
    }

    #[test]
    fn boundary_limit_for_coordinate_function() {
        let g = Colligation::from_i64(1, 1, 1, &[&[0, 1], &[1, 0]]);
        let ok = boundary_limit_check(&g, ctx(2), &rat_i64(1), 10, 3).unwrap();
        assert!(ok);
    }

    #[test]
    fn boundary_limit_pole_rejected() {
        // chi = 1/(1-x) has a pole at 1
        let g = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 1]]);
        assert_eq!(
            boundary_limit_check(&g, ctx(2), &rat_i64(1), 10, 3),
            Err(BoundaryError::Pole)
        );
    }

    #[test]
    fn boundary_limit_for_realized_function() {
        // w = 1/(1-x) at x = 2 with p = 3
        let w = RatFun::new(Poly::one(), Poly::from_i64(&[1, -1]));
        let g = realize(&w).unwrap();
        let ok = boundary_limit_check(&g, ctx(3), &rat_i64(2), 12, 4).unwrap();
        assert!(ok);
    }

    #[test]
    fn boundary_limit_with_larger_corner() {
        // corner size 2: convergence to the graph of a 2x2 transfer value
        let g = Colligation::from_i64(
            2,
            1,
            2,
            &[&[1, 2, 1, 0], &[0, 1, 1, 1], &[1, 1, 2, 1], &[2, 0, 1, 1]],
        );
        for x in [rat_i64(3), rat_i64(4)] {
            let ok = boundary_limit_check(&g, ctx(2), &x, 12, 4).unwrap();
            assert!(ok, "no convergence at {x}");
        }
    }

    #[test]
    fn tail_too_short_rejected() {
        let g = Colligation::from_i64(1, 1, 1, &[&[0, 1], &[1, 0]]);
        assert!(matches!(
            boundary_limit_check(&g, ctx(2), &rat(1, 3), 6, 3),
            Err(BoundaryError::TailTooShort { .. })
        ));
    }
}
