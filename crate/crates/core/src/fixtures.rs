//! Named weighted-graph fixtures. The metric of each fixture is the
//! shortest-path metric of its graph.
//!
//! The two nuclei `N1 = {x0, a1, a2, a3}` and `N2 = {y0, b1, b2, b3}` are
//! weight-1 4-cliques; `x1..x3` (resp. `y1..y3`) hang off `N1` (resp. `N2`).

use crate::io::EdgeList;
use crate::metric::FiniteMetricSpace;

pub struct Fixture {
    pub name: &'static str,
    pub doc: &'static str,
    build: fn() -> EdgeList,
}

impl Fixture {
    pub fn edge_list(&self) -> EdgeList {
        (self.build)()
    }

    pub fn space(&self) -> FiniteMetricSpace {
        self.edge_list()
            .to_space()
            .expect("fixture graphs are connected with positive weights")
    }
}

pub const CATALOG: &[Fixture] = &[
    Fixture {
        name: "two-nuclei",
        doc: "Two dense 4-cliques joined by the single weight-3 edge x0-y0; \
              each nucleus carries three satellites at distance 3 from every \
              nucleus point and from each other.",
        build: two_nuclei_graph,
    },
    Fixture {
        name: "two-nuclei-bridge",
        doc: "two-nuclei with the bridge x0-y0 replaced by a point z0 at \
              distance 2 from both x0 and y0.",
        build: two_nuclei_bridge_graph,
    },
    Fixture {
        name: "uniform-ring",
        doc: "8-cycle x0 x1 x2 x3 y3 y2 y1 y0 with unit edges.",
        build: uniform_ring_graph,
    },
    Fixture {
        name: "cl-cross",
        doc: "Unit 4-cliques with satellites attached to x0 / y0 at 3, bridge \
              x0-y0 at 3 and every other nucleus cross pair at 4.",
        build: cl_cross_graph,
    },
    Fixture {
        name: "al-bridge",
        doc: "Unit 4-cliques with satellites attached to x0 / y0 at 3 and a \
              bridge x0-y0 at 2.25.",
        build: al_bridge_graph,
    },
    Fixture {
        name: "not-strong",
        doc: "two-nuclei with the bridge x0-y0 shortened to 2.5.",
        build: not_strong_graph,
    },
    Fixture {
        name: "bridge-chain",
        doc: "Unit 4-cliques with one satellite each (x1-x0, y1-y0 at 3) and \
              a two-point chain x0-z0-z1-y0 with links of 3.",
        build: bridge_chain_graph,
    },
    Fixture {
        name: "al-tight",
        doc: "Triangles at 0.9 with a bridge x0-y0 at 1, satellites x1 / y1 at \
              1.8 from every nucleus point and nucleus cross pairs at 1.85.",
        build: al_tight_graph,
    },
];

pub fn names() -> Vec<&'static str> {
    CATALOG.iter().map(|f| f.name).collect()
}

pub fn find(name: &str) -> Option<&'static Fixture> {
    CATALOG.iter().find(|f| f.name == name)
}

fn by_name(name: &str) -> FiniteMetricSpace {
    find(name).expect("catalog entry").space()
}

pub fn two_nuclei() -> FiniteMetricSpace {
    by_name("two-nuclei")
}

pub fn two_nuclei_bridge() -> FiniteMetricSpace {
    by_name("two-nuclei-bridge")
}

pub fn uniform_ring() -> FiniteMetricSpace {
    by_name("uniform-ring")
}

pub fn cl_cross() -> FiniteMetricSpace {
    by_name("cl-cross")
}

pub fn al_bridge() -> FiniteMetricSpace {
    by_name("al-bridge")
}

pub fn not_strong() -> FiniteMetricSpace {
    by_name("not-strong")
}

pub fn bridge_chain() -> FiniteMetricSpace {
    by_name("bridge-chain")
}

pub fn al_tight() -> FiniteMetricSpace {
    by_name("al-tight")
}

struct Builder {
    points: Vec<String>,
    edges: Vec<(String, String, f64)>,
}

impl Builder {
    fn new(points: &[&str]) -> Self {
        Self {
            points: points.iter().map(|s| s.to_string()).collect(),
            edges: Vec::new(),
        }
    }

    fn edge(&mut self, u: &str, v: &str, w: f64) -> &mut Self {
        self.edges.push((u.to_string(), v.to_string(), w));
        self
    }

    fn clique(&mut self, vs: &[&str], w: f64) -> &mut Self {
        for (i, u) in vs.iter().enumerate() {
            for v in &vs[i + 1..] {
                self.edge(u, v, w);
            }
        }
        self
    }

    fn join(&mut self, us: &[&str], vs: &[&str], w: f64) -> &mut Self {
        for u in us {
            for v in vs {
                self.edge(u, v, w);
            }
        }
        self
    }

    fn finish(&mut self) -> EdgeList {
        EdgeList {
            points: std::mem::take(&mut self.points),
            edges: std::mem::take(&mut self.edges),
        }
    }
}

const NUC1: [&str; 4] = ["x0", "a1", "a2", "a3"];
const NUC2: [&str; 4] = ["y0", "b1", "b2", "b3"];
const SAT1: [&str; 3] = ["x1", "x2", "x3"];
const SAT2: [&str; 3] = ["y1", "y2", "y3"];

fn nuclei_points(extra: &[&'static str]) -> Vec<&'static str> {
    let mut pts: Vec<&str> = Vec::new();
    pts.extend(NUC1);
    pts.extend(SAT1);
    pts.extend(extra);
    pts.extend(NUC2);
    pts.extend(SAT2);
    pts
}

fn dense_sides(b: &mut Builder) {
    b.clique(&NUC1, 1.0).clique(&NUC2, 1.0);
    b.join(&SAT1, &NUC1, 3.0).clique(&SAT1, 3.0);
    b.join(&SAT2, &NUC2, 3.0).clique(&SAT2, 3.0);
}

fn sparse_sides(b: &mut Builder) {
    b.clique(&NUC1, 1.0).clique(&NUC2, 1.0);
    b.join(&SAT1, &["x0"], 3.0).join(&SAT2, &["y0"], 3.0);
}

fn two_nuclei_graph() -> EdgeList {
    let mut b = Builder::new(&nuclei_points(&[]));
    dense_sides(&mut b);
    b.edge("x0", "y0", 3.0).finish()
}

fn two_nuclei_bridge_graph() -> EdgeList {
    let mut b = Builder::new(&nuclei_points(&["z0"]));
    dense_sides(&mut b);
    b.edge("x0", "z0", 2.0).edge("z0", "y0", 2.0).finish()
}

fn uniform_ring_graph() -> EdgeList {
    let ring = ["x0", "x1", "x2", "x3", "y3", "y2", "y1", "y0"];
    let mut b = Builder::new(&ring);
    for i in 0..ring.len() {
        b.edge(ring[i], ring[(i + 1) % ring.len()], 1.0);
    }
    b.finish()
}

fn cl_cross_graph() -> EdgeList {
    let mut b = Builder::new(&nuclei_points(&[]));
    sparse_sides(&mut b);
    b.edge("x0", "y0", 3.0);
    for u in NUC1 {
        for v in NUC2 {
            if (u, v) != ("x0", "y0") {
                b.edge(u, v, 4.0);
            }
        }
    }
    b.finish()
}

fn al_bridge_graph() -> EdgeList {
    let mut b = Builder::new(&nuclei_points(&[]));
    sparse_sides(&mut b);
    b.edge("x0", "y0", 2.25).finish()
}

fn not_strong_graph() -> EdgeList {
    let mut b = Builder::new(&nuclei_points(&[]));
    dense_sides(&mut b);
    b.edge("x0", "y0", 2.5).finish()
}

fn bridge_chain_graph() -> EdgeList {
    let pts = ["x0", "a1", "a2", "a3", "x1", "z0", "z1", "y0", "b1", "b2", "b3", "y1"];
    let mut b = Builder::new(&pts);
    b.clique(&NUC1, 1.0).clique(&NUC2, 1.0);
    b.edge("x1", "x0", 3.0).edge("y1", "y0", 3.0);
    b.edge("x0", "z0", 3.0).edge("z0", "z1", 3.0).edge("z1", "y0", 3.0);
    b.finish()
}

fn al_tight_graph() -> EdgeList {
    let n1 = ["x0", "a1", "a2"];
    let n2 = ["y0", "b1", "b2"];
    let pts = ["x0", "a1", "a2", "x1", "y0", "b1", "b2", "y1"];
    let mut b = Builder::new(&pts);
    b.clique(&n1, 0.9).clique(&n2, 0.9);
    b.join(&["x1"], &n1, 1.8).join(&["y1"], &n2, 1.8);
    b.edge("x0", "y0", 1.0);
    for u in n1 {
        for v in n2 {
            if (u, v) != ("x0", "y0") {
                b.edge(u, v, 1.85);
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for f in CATALOG {
            let s = f.space();
            assert_eq!(s.len(), f.edge_list().points.len(), "{}", f.name);
        }
    }

    #[test]
    fn two_nuclei_shape() {
        let e = find("two-nuclei").unwrap().edge_list();
        assert_eq!(e.points.len(), 14);
        // 6 + 6 intra-nucleus, 12 + 3 per satellite side, one bridge
        assert_eq!(e.edges.len(), 43);
    }

    #[test]
    fn lookup() {
        assert!(find("no-such").is_none());
        assert!(names().contains(&"uniform-ring"));
    }
}
