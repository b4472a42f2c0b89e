//! Classification of the core neighbourhood of an edge.
//!
//! For an edge `uv`, each neighbour of `u` other than `v` lies on a triangle,
//! a square, or a pentagon supported by `uv` — or on none of those (the free
//! class). Together with the vertices at distance exactly 2 from both
//! endpoints this tiles the core neighbourhood, the set on which the
//! Wasserstein distance of the edge is decided. The cycle classes and the
//! pentagon middles form the region `R` whose connected components drive the
//! reduced linear programmes and the closed-form expression.

use crate::graph::{Graph, VertexId};
use crate::rational::{unit_frac, Rational};
use crate::{Error, Result};

/// Core-neighbourhood class of a vertex relative to a fixed edge `uv`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoreClass {
    EndpointU,
    EndpointV,
    Triangle,
    SquareU,
    SquareV,
    PentagonU,
    PentagonV,
    PentagonUv,
    FrU,
    FrV,
}

/// The seven vertex classes of the core neighbourhood of an edge.
///
/// All sets are sorted by vertex id. The u-side sets partition `N(u) \ {v}`,
/// the v-side sets partition `N(v) \ {u}`, and `pentagon_uv` is disjoint from
/// both neighbourhoods.
#[derive(Clone, Debug)]
pub struct CorePartition {
    pub u: VertexId,
    pub v: VertexId,
    pub triangle: Vec<VertexId>,
    pub square_u: Vec<VertexId>,
    pub square_v: Vec<VertexId>,
    pub pentagon_u: Vec<VertexId>,
    pub pentagon_v: Vec<VertexId>,
    pub pentagon_uv: Vec<VertexId>,
    pub fr_u: Vec<VertexId>,
    pub fr_v: Vec<VertexId>,
    d_u: usize,
    d_v: usize,
}

impl CorePartition {
    pub fn d_u(&self) -> usize {
        self.d_u
    }

    pub fn d_v(&self) -> usize {
        self.d_v
    }

    /// `1/d_u`.
    pub fn m_u(&self) -> Rational {
        unit_frac(self.d_u)
    }

    /// `1/d_v`.
    pub fn m_v(&self) -> Rational {
        unit_frac(self.d_v)
    }

    pub fn triangle_count(&self) -> usize {
        self.triangle.len()
    }

    pub fn square_u_count(&self) -> usize {
        self.square_u.len()
    }

    pub fn square_v_count(&self) -> usize {
        self.square_v.len()
    }

    pub fn pentagon_u_count(&self) -> usize {
        self.pentagon_u.len()
    }

    pub fn pentagon_v_count(&self) -> usize {
        self.pentagon_v.len()
    }

    /// `n_u`, the free neighbours of `u`.
    pub fn fr_u_count(&self) -> usize {
        self.fr_u.len()
    }

    /// `n_v`, the free neighbours of `v`.
    pub fn fr_v_count(&self) -> usize {
        self.fr_v.len()
    }

    pub fn class_of(&self, w: VertexId) -> Option<CoreClass> {
        if w == self.u {
            return Some(CoreClass::EndpointU);
        }
        if w == self.v {
            return Some(CoreClass::EndpointV);
        }
        let sets: [(&[VertexId], CoreClass); 8] = [
            (&self.triangle, CoreClass::Triangle),
            (&self.square_u, CoreClass::SquareU),
            (&self.square_v, CoreClass::SquareV),
            (&self.pentagon_u, CoreClass::PentagonU),
            (&self.pentagon_v, CoreClass::PentagonV),
            (&self.pentagon_uv, CoreClass::PentagonUv),
            (&self.fr_u, CoreClass::FrU),
            (&self.fr_v, CoreClass::FrV),
        ];
        for (set, class) in sets {
            if set.binary_search(&w).is_ok() {
                return Some(class);
            }
        }
        None
    }

    /// The region `R`: cycle classes plus pentagon middles, sorted.
    pub fn r_vertices(&self) -> Vec<VertexId> {
        let mut r: Vec<VertexId> = self
            .triangle
            .iter()
            .chain(&self.square_u)
            .chain(&self.square_v)
            .chain(&self.pentagon_u)
            .chain(&self.pentagon_v)
            .chain(&self.pentagon_uv)
            .copied()
            .collect();
        r.sort_unstable();
        r
    }

    /// The core neighbourhood `C(u,v) = N(u) ∪ N(v) ∪ ⬠(u,v)`, sorted.
    pub fn core_vertices(&self) -> Vec<VertexId> {
        let mut c: Vec<VertexId> = self
            .triangle
            .iter()
            .chain(&self.square_u)
            .chain(&self.square_v)
            .chain(&self.pentagon_u)
            .chain(&self.pentagon_v)
            .chain(&self.pentagon_uv)
            .chain(&self.fr_u)
            .chain(&self.fr_v)
            .copied()
            .collect();
        c.push(self.u);
        c.push(self.v);
        c.sort_unstable();
        c
    }
}

/// One connected component of the induced subgraph on `R`, split by class.
#[derive(Clone, Debug)]
pub struct RComponent {
    pub vertices: Vec<VertexId>,
    pub triangle: Vec<VertexId>,
    pub square_u: Vec<VertexId>,
    pub square_v: Vec<VertexId>,
    pub pentagon_u: Vec<VertexId>,
    pub pentagon_v: Vec<VertexId>,
    pub pentagon_uv: Vec<VertexId>,
}

impl RComponent {
    /// Number of component vertices inside `N(u) ∪ N(v)`.
    pub fn boundary_count(&self) -> usize {
        self.triangle.len()
            + self.square_u.len()
            + self.square_v.len()
            + self.pentagon_u.len()
            + self.pentagon_v.len()
    }
}

/// Refined square and pentagon counts used by the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinedCounts {
    /// Squares on the u-side adjacent to a triangle vertex.
    pub sq_tri_u: usize,
    pub sq_tri_v: usize,
    /// Squares on the u-side adjacent to no triangle vertex.
    pub sq_circ_u: usize,
    pub sq_circ_v: usize,
    /// Pentagon vertices paired with an opposite-side pentagon vertex.
    pub pent_circ_u: usize,
    pub pent_circ_v: usize,
}

/// Which reading of the pentagon refinement to use.
///
/// `ComponentPaired` counts pentagon vertices lying in a component that also
/// contains a pentagon vertex of the other side; this is the reading the
/// closed form needs and the one validated against the enumeration oracle.
/// `TwoPathToTriangle` counts pentagon vertices with a 2-path inside `R` to a
/// triangle vertex; it is kept for comparison runs only.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PentagonPairing {
    ComponentPaired,
    TwoPathToTriangle,
}

/// Classifies the core neighbourhood of the edge `uv`.
pub fn classify_core(g: &Graph, u: VertexId, v: VertexId) -> Result<CorePartition> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge {
            u: g.label(u).to_string(),
            v: g.label(v).to_string(),
        });
    }
    let n = g.vertex_count();
    let mut in_nu = vec![false; n];
    let mut in_nv = vec![false; n];
    for &w in g.neighbors(u) {
        in_nu[w.index()] = true;
    }
    for &w in g.neighbors(v) {
        in_nv[w.index()] = true;
    }

    // a lies on a square supported by uv iff it has a neighbour in the
    // opposite punctured neighbourhood; on a pentagon iff it has a 2-path
    // avoiding u, v into it
    let one_side = |own: VertexId,
                    other: VertexId,
                    in_other: &[bool],
                    triangle: &mut Vec<VertexId>,
                    square: &mut Vec<VertexId>,
                    pentagon: &mut Vec<VertexId>,
                    fr: &mut Vec<VertexId>| {
        for &a in g.neighbors(own) {
            if a == other {
                continue;
            }
            if in_other[a.index()] {
                triangle.push(a);
                continue;
            }
            let on_square = g
                .neighbors(a)
                .iter()
                .any(|&b| b != own && in_other[b.index()]);
            if on_square {
                square.push(a);
                continue;
            }
            let on_pentagon = g.neighbors(a).iter().any(|&w| {
                w != own
                    && w != other
                    && g.neighbors(w)
                        .iter()
                        .any(|&b| b != own && in_other[b.index()])
            });
            if on_pentagon {
                pentagon.push(a);
            } else {
                fr.push(a);
            }
        }
    };

    let mut triangle = Vec::new();
    let mut square_u = Vec::new();
    let mut square_v = Vec::new();
    let mut pentagon_u = Vec::new();
    let mut pentagon_v = Vec::new();
    let mut fr_u = Vec::new();
    let mut fr_v = Vec::new();
    let mut triangle_from_v = Vec::new();

    one_side(
        u,
        v,
        &in_nv,
        &mut triangle,
        &mut square_u,
        &mut pentagon_u,
        &mut fr_u,
    );
    one_side(
        v,
        u,
        &in_nu,
        &mut triangle_from_v,
        &mut square_v,
        &mut pentagon_v,
        &mut fr_v,
    );
    debug_assert_eq!(
        {
            let mut t = triangle.clone();
            t.sort_unstable();
            t
        },
        {
            triangle_from_v.sort_unstable();
            triangle_from_v
        }
    );

    // pentagon middles from the distance definition, independent of the
    // pentagon classes above
    let du = g.distances_from_capped(u, 2);
    let dv = g.distances_from_capped(v, 2);
    let mut pentagon_uv = Vec::new();
    for w in g.vertices() {
        if du[w.index()] == Some(2) && dv[w.index()] == Some(2) {
            pentagon_uv.push(w);
        }
    }

    for set in [
        &mut triangle,
        &mut square_u,
        &mut square_v,
        &mut pentagon_u,
        &mut pentagon_v,
        &mut pentagon_uv,
        &mut fr_u,
        &mut fr_v,
    ] {
        set.sort_unstable();
    }

    Ok(CorePartition {
        u,
        v,
        triangle,
        square_u,
        square_v,
        pentagon_u,
        pentagon_v,
        pentagon_uv,
        fr_u,
        fr_v,
        d_u: g.degree(u),
        d_v: g.degree(v),
    })
}

/// Connected components of the induced subgraph on `R`, ordered by smallest
/// contained vertex, with per-class splits.
pub fn components_of_r(g: &Graph, part: &CorePartition) -> Vec<RComponent> {
    let r = part.r_vertices();
    let n = g.vertex_count();
    let mut in_r = vec![false; n];
    for &w in &r {
        in_r[w.index()] = true;
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for &start in &r {
        if seen[start.index()] {
            continue;
        }
        seen[start.index()] = true;
        let mut vertices = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if in_r[y.index()] && !seen[y.index()] {
                    seen[y.index()] = true;
                    vertices.push(y);
                    stack.push(y);
                }
            }
        }
        vertices.sort_unstable();
        let pick = |set: &[VertexId]| -> Vec<VertexId> {
            vertices
                .iter()
                .copied()
                .filter(|w| set.binary_search(w).is_ok())
                .collect()
        };
        comps.push(RComponent {
            triangle: pick(&part.triangle),
            square_u: pick(&part.square_u),
            square_v: pick(&part.square_v),
            pentagon_u: pick(&part.pentagon_u),
            pentagon_v: pick(&part.pentagon_v),
            pentagon_uv: pick(&part.pentagon_uv),
            vertices,
        });
    }
    comps
}

/// Refined counts under the component-paired pentagon reading.
pub fn refine_counts(part: &CorePartition, comps: &[RComponent], g: &Graph) -> RefinedCounts {
    refine_counts_with(part, comps, g, PentagonPairing::ComponentPaired)
}

pub fn refine_counts_with(
    part: &CorePartition,
    comps: &[RComponent],
    g: &Graph,
    pairing: PentagonPairing,
) -> RefinedCounts {
    let adjacent_to_triangle =
        |a: VertexId| -> bool { part.triangle.iter().any(|&t| g.has_edge(a, t)) };
    let sq_tri_u = part
        .square_u
        .iter()
        .filter(|&&a| adjacent_to_triangle(a))
        .count();
    let sq_tri_v = part
        .square_v
        .iter()
        .filter(|&&a| adjacent_to_triangle(a))
        .count();

    let (pent_circ_u, pent_circ_v) = match pairing {
        PentagonPairing::ComponentPaired => {
            let mut cu = 0;
            let mut cv = 0;
            for comp in comps {
                if !comp.pentagon_u.is_empty() && !comp.pentagon_v.is_empty() {
                    cu += comp.pentagon_u.len();
                    cv += comp.pentagon_v.len();
                }
            }
            (cu, cv)
        }
        PentagonPairing::TwoPathToTriangle => {
            let r = part.r_vertices();
            let two_path = |a: VertexId| -> bool {
                g.neighbors(a)
                    .iter()
                    .any(|&x| r.binary_search(&x).is_ok() && adjacent_to_triangle(x))
            };
            (
                part.pentagon_u.iter().filter(|&&a| two_path(a)).count(),
                part.pentagon_v.iter().filter(|&&a| two_path(a)).count(),
            )
        }
    };

    RefinedCounts {
        sq_tri_u,
        sq_tri_v,
        sq_circ_u: part.square_u.len() - sq_tri_u,
        sq_circ_v: part.square_v.len() - sq_tri_v,
        pent_circ_u,
        pent_circ_v,
    }
}

/// Outcome of [`verify_class_separations`].
#[derive(Clone, Debug, Default)]
pub struct SeparationReport {
    pub violations: Vec<String>,
}

impl SeparationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ClassSel {
    EndU,
    EndV,
    Tri,
    SqU,
    SqV,
    PentU,
    PentV,
    PentUv,
    FrU,
    FrV,
}

impl ClassSel {
    fn resolve(self, part: &CorePartition, swapped: bool) -> Vec<VertexId> {
        use ClassSel::*;
        let sel = if swapped {
            match self {
                EndU => EndV,
                EndV => EndU,
                SqU => SqV,
                SqV => SqU,
                PentU => PentV,
                PentV => PentU,
                FrU => FrV,
                FrV => FrU,
                other => other,
            }
        } else {
            self
        };
        match sel {
            EndU => vec![part.u],
            EndV => vec![part.v],
            Tri => part.triangle.clone(),
            SqU => part.square_u.clone(),
            SqV => part.square_v.clone(),
            PentU => part.pentagon_u.clone(),
            PentV => part.pentagon_v.clone(),
            PentUv => part.pentagon_uv.clone(),
            FrU => part.fr_u.clone(),
            FrV => part.fr_v.clone(),
        }
    }
}

/// Least possible distance between distinct members of the class pairs that
/// admit a nontrivial bound; pairs with least distance 1 are omitted.
const LEAST_DISTANCE: &[(ClassSel, ClassSel, u32)] = &[
    (ClassSel::EndU, ClassSel::PentUv, 2),
    (ClassSel::Tri, ClassSel::PentU, 2),
    (ClassSel::Tri, ClassSel::FrU, 2),
    (ClassSel::SqV, ClassSel::PentU, 2),
    (ClassSel::SqV, ClassSel::FrU, 3),
    (ClassSel::PentV, ClassSel::Tri, 2),
    (ClassSel::PentV, ClassSel::SqU, 2),
    (ClassSel::PentV, ClassSel::PentU, 2),
    (ClassSel::PentV, ClassSel::FrU, 3),
    (ClassSel::FrV, ClassSel::Tri, 2),
    (ClassSel::FrV, ClassSel::SqU, 3),
    (ClassSel::FrV, ClassSel::PentU, 3),
    (ClassSel::FrV, ClassSel::FrU, 3),
    (ClassSel::FrV, ClassSel::PentUv, 2),
    (ClassSel::PentUv, ClassSel::EndV, 2),
    (ClassSel::PentUv, ClassSel::FrU, 2),
];

/// Checks the structural consequences of the classification: the tiling of
/// the punctured neighbourhoods, the forbidden adjacencies, and the
/// least-distance table between cross classes. A failing report signals a
/// classifier bug, not a property of the graph.
pub fn verify_class_separations(g: &Graph, part: &CorePartition) -> SeparationReport {
    let mut report = SeparationReport::default();
    let edge_name = |a: VertexId, b: VertexId| format!("({}, {})", g.label(a), g.label(b));

    // tiling of N(u)\{v} and N(v)\{u}
    let tiling = |classes: [&[VertexId]; 4], end: VertexId, other: VertexId| -> bool {
        let mut tiled: Vec<VertexId> = classes.concat();
        tiled.sort_unstable();
        let mut expected: Vec<VertexId> = g
            .neighbors(end)
            .iter()
            .copied()
            .filter(|&w| w != other)
            .collect();
        expected.sort_unstable();
        tiled == expected
    };
    if !tiling(
        [&part.triangle, &part.square_u, &part.pentagon_u, &part.fr_u],
        part.u,
        part.v,
    ) {
        report
            .violations
            .push("u-side classes do not tile N(u) minus v".to_string());
    }
    if !tiling(
        [&part.triangle, &part.square_v, &part.pentagon_v, &part.fr_v],
        part.v,
        part.u,
    ) {
        report
            .violations
            .push("v-side classes do not tile N(v) minus u".to_string());
    }
    for &w in &part.pentagon_uv {
        if w == part.u || w == part.v || g.has_edge(w, part.u) || g.has_edge(w, part.v) {
            report.violations.push(format!(
                "pentagon middle {} meets an endpoint neighbourhood",
                g.label(w)
            ));
        }
    }

    // forbidden adjacencies
    let forbidden: &[(ClassSel, ClassSel)] = &[
        (ClassSel::FrU, ClassSel::Tri),
        (ClassSel::FrU, ClassSel::SqU),
        (ClassSel::FrU, ClassSel::SqV),
        (ClassSel::FrU, ClassSel::PentV),
        (ClassSel::FrU, ClassSel::PentUv),
        (ClassSel::FrU, ClassSel::FrV),
        (ClassSel::PentU, ClassSel::Tri),
        (ClassSel::PentU, ClassSel::SqV),
    ];
    for swapped in [false, true] {
        for (x, y) in forbidden {
            let xs = x.resolve(part, swapped);
            let ys = y.resolve(part, swapped);
            for &a in &xs {
                for &b in &ys {
                    if g.has_edge(a, b) {
                        report.violations.push(format!(
                            "forbidden adjacency {} between {:?} and {:?}",
                            edge_name(a, b),
                            x,
                            y
                        ));
                    }
                }
            }
        }
    }

    // least-distance table between cross classes
    for swapped in [false, true] {
        for &(row, col, bound) in LEAST_DISTANCE {
            let rows = row.resolve(part, swapped);
            let cols = col.resolve(part, swapped);
            for &a in &rows {
                for &b in &cols {
                    if a == b {
                        continue;
                    }
                    if !g.distance_capped(a, b, bound - 1).exceeds_cap() {
                        report.violations.push(format!(
                            "pair {} of classes {:?}/{:?} is closer than {}",
                            edge_name(a, b),
                            row,
                            col,
                            bound
                        ));
                    }
                }
            }
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, graph_from_pairs};

    fn edge(g: &Graph, a: &str, b: &str) -> (VertexId, VertexId) {
        (
            g.vertex_by_label(a).unwrap(),
            g.vertex_by_label(b).unwrap(),
        )
    }

    fn labels(g: &Graph, set: &[VertexId]) -> Vec<String> {
        set.iter().map(|&w| g.label(w).to_string()).collect()
    }

    #[test]
    fn triangle_classification() {
        let k3 = complete_graph(3);
        let (u, v) = edge(&k3, "k0", "k1");
        let part = classify_core(&k3, u, v).unwrap();
        assert_eq!(labels(&k3, &part.triangle), vec!["k2"]);
        assert!(part.square_u.is_empty() && part.square_v.is_empty());
        assert!(part.pentagon_u.is_empty() && part.pentagon_v.is_empty());
        assert!(part.pentagon_uv.is_empty());
        assert!(part.fr_u.is_empty() && part.fr_v.is_empty());
    }

    #[test]
    fn not_an_edge_is_rejected() {
        let c4 = cycle_graph(4);
        let u = c4.vertex_by_label("c0").unwrap();
        let w = c4.vertex_by_label("c2").unwrap();
        assert!(matches!(
            classify_core(&c4, u, w),
            Err(Error::NotAnEdge { .. })
        ));
    }

    #[test]
    fn square_pair_on_c4() {
        let c4 = cycle_graph(4);
        let (u, v) = edge(&c4, "c0", "c1");
        let part = classify_core(&c4, u, v).unwrap();
        assert_eq!(labels(&c4, &part.square_u), vec!["c3"]);
        assert_eq!(labels(&c4, &part.square_v), vec!["c2"]);
        assert!(part.triangle.is_empty());
        let comps = components_of_r(&c4, &part);
        assert_eq!(comps.len(), 1);
        let refined = refine_counts(&part, &comps, &c4);
        assert_eq!(refined.sq_circ_u, 1);
        assert_eq!(refined.sq_circ_v, 1);
        assert_eq!(refined.sq_tri_u, 0);
        assert_eq!(refined.sq_tri_v, 0);
    }

    #[test]
    fn pentagon_classes_on_c5() {
        let c5 = cycle_graph(5);
        let (u, v) = edge(&c5, "c0", "c1");
        let part = classify_core(&c5, u, v).unwrap();
        assert_eq!(labels(&c5, &part.pentagon_u), vec!["c4"]);
        assert_eq!(labels(&c5, &part.pentagon_v), vec!["c2"]);
        assert_eq!(labels(&c5, &part.pentagon_uv), vec!["c3"]);
        let comps = components_of_r(&c5, &part);
        assert_eq!(comps.len(), 1);
        let refined = refine_counts(&part, &comps, &c5);
        assert_eq!(refined.pent_circ_u, 1);
        assert_eq!(refined.pent_circ_v, 1);
        // the verbatim reading finds no triangle to reach on C5
        let verbatim = refine_counts_with(&part, &comps, &c5, PentagonPairing::TwoPathToTriangle);
        assert_eq!(verbatim.pent_circ_u, 0);
    }

    #[test]
    fn girth_six_edge_has_empty_r() {
        let c6 = cycle_graph(6);
        let (u, v) = edge(&c6, "c0", "c1");
        let part = classify_core(&c6, u, v).unwrap();
        assert!(part.r_vertices().is_empty());
        assert_eq!(part.fr_u_count(), 1);
        assert_eq!(part.fr_v_count(), 1);
        assert!(components_of_r(&c6, &part).is_empty());
    }

    #[test]
    fn lone_triangle_component() {
        let k3 = complete_graph(3);
        let (u, v) = edge(&k3, "k0", "k1");
        let part = classify_core(&k3, u, v).unwrap();
        let comps = components_of_r(&k3, &part);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].triangle.len(), 1);
        assert_eq!(comps[0].boundary_count(), 1);
    }

    #[test]
    fn pendant_square_adjacent_to_triangle() {
        // triangle u,v,t plus s adjacent to u and t: s is a u-side square
        // whose square partner is the triangle vertex
        let g = graph_from_pairs(&[("u", "v"), ("u", "t"), ("v", "t"), ("u", "s"), ("s", "t")]);
        let (u, v) = edge(&g, "u", "v");
        let part = classify_core(&g, u, v).unwrap();
        assert_eq!(labels(&g, &part.triangle), vec!["t"]);
        assert_eq!(labels(&g, &part.square_u), vec!["s"]);
        let comps = components_of_r(&g, &part);
        assert_eq!(comps.len(), 1);
        let refined = refine_counts(&part, &comps, &g);
        assert_eq!(refined.sq_tri_u, 1);
        assert_eq!(refined.sq_circ_u, 0);
    }

    #[test]
    fn pentagon_middle_may_sit_inside_a_neighbourhood() {
        // 5-cycle u-a-w-b-v plus chord u-w: a stays a pentagon vertex while
        // its only middle lies in N(u), and the distance-defined middle set
        // is empty
        let g = graph_from_pairs(&[
            ("u", "v"),
            ("u", "a"),
            ("a", "w"),
            ("w", "b"),
            ("b", "v"),
            ("u", "w"),
        ]);
        let (u, v) = edge(&g, "u", "v");
        let part = classify_core(&g, u, v).unwrap();
        assert_eq!(labels(&g, &part.pentagon_u), vec!["a"]);
        assert_eq!(labels(&g, &part.square_u), vec!["w"]);
        assert_eq!(labels(&g, &part.square_v), vec!["b"]);
        assert!(part.pentagon_uv.is_empty());
        assert!(verify_class_separations(&g, &part).pass());
    }

    #[test]
    fn bipartite_counterexample_classes() {
        // the bipartite counterexample family at |U| = 2, built by hand
        let g = graph_from_pairs(&[
            ("u0", "v0"),
            ("u0", "v1"),
            ("u0", "v2"),
            ("u1", "v0"),
            ("u1", "v1"),
            ("u1", "v2"),
            ("w1", "v0"),
            ("w1", "v2"),
            ("w2", "v0"),
            ("w2", "v2"),
        ]);
        let (u, v) = edge(&g, "u0", "v0");
        let part = classify_core(&g, u, v).unwrap();
        assert!(part.triangle.is_empty());
        assert_eq!(labels(&g, &part.square_u), vec!["v1", "v2"]);
        assert_eq!(labels(&g, &part.square_v), vec!["u1", "w1", "w2"]);
        let comps = components_of_r(&g, &part);
        assert_eq!(comps.len(), 1, "R is a single connected component");
        assert!(verify_class_separations(&g, &part).pass());
    }

    #[test]
    fn classification_is_symmetric_in_the_edge() {
        let g = graph_from_pairs(&[
            ("u", "v"),
            ("u", "a"),
            ("a", "w"),
            ("w", "b"),
            ("b", "v"),
            ("u", "t"),
            ("v", "t"),
            ("u", "f"),
        ]);
        let (u, v) = edge(&g, "u", "v");
        let p1 = classify_core(&g, u, v).unwrap();
        let p2 = classify_core(&g, v, u).unwrap();
        assert_eq!(p1.triangle, p2.triangle);
        assert_eq!(p1.pentagon_uv, p2.pentagon_uv);
        assert_eq!(p1.square_u, p2.square_v);
        assert_eq!(p1.pentagon_u, p2.pentagon_v);
        assert_eq!(p1.fr_u, p2.fr_v);
    }

    #[test]
    fn corrupted_partition_fails_verification() {
        // C4 plus a pendant at u: fr_u = {p}, square_u = {a}; swapping them
        // must be caught by the edge scan
        let g = graph_from_pairs(&[("u", "v"), ("u", "a"), ("a", "b"), ("b", "v"), ("u", "p")]);
        let (u, v) = edge(&g, "u", "v");
        let mut part = classify_core(&g, u, v).unwrap();
        assert!(verify_class_separations(&g, &part).pass());
        std::mem::swap(&mut part.fr_u, &mut part.square_u);
        let report = verify_class_separations(&g, &part);
        assert!(!report.pass());
        let a = g.vertex_by_label("a").unwrap();
        let b = g.vertex_by_label("b").unwrap();
        let name = format!("({}, {})", g.label(a), g.label(b));
        assert!(
            report.violations.iter().any(|v| v.contains(&name)),
            "violation must name the offending edge: {:?}",
            report.violations
        );
    }

    #[test]
    fn every_edge_of_small_graphs_tiles_exactly() {
        for g in [
            cycle_graph(4),
            cycle_graph(5),
            cycle_graph(6),
            complete_graph(4),
            complete_graph(5),
        ] {
            for (u, v) in g.edges().collect::<Vec<_>>() {
                let part = classify_core(&g, u, v).unwrap();
                let report = verify_class_separations(&g, &part);
                assert!(report.pass(), "{:?}", report.violations);
                // no vertex classified twice
                let core = part.core_vertices();
                let mut dedup = core.clone();
                dedup.dedup();
                assert_eq!(core, dedup);
            }
        }
    }
}
