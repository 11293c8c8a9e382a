//! Seedable scenario generators. Every generator emits a weighted graph, so
//! the resulting space is always a valid metric.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::io::EdgeList;
use crate::unchaining::Alpha;

use super::{BridgeScenario, ModerateScenario};

struct Graph {
    points: Vec<String>,
    edges: Vec<(String, String, f64)>,
}

impl Graph {
    fn new() -> Self {
        Self {
            points: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn add(&mut self, prefix: &str, count: usize) -> Vec<String> {
        let start = self.points.iter().filter(|p| p.starts_with(prefix)).count();
        let names: Vec<String> = (start..start + count).map(|i| format!("{prefix}{i}")).collect();
        self.points.extend(names.iter().cloned());
        names
    }

    fn edge(&mut self, u: &str, v: &str, w: f64) {
        self.edges.push((u.to_string(), v.to_string(), w));
    }

    fn clique(&mut self, rng: &mut impl Rng, vs: &[String], weights: &[f64]) {
        for (i, u) in vs.iter().enumerate() {
            for v in &vs[i + 1..] {
                let w = *weights.choose(rng).expect("non-empty weights");
                self.edge(u, v, w);
            }
        }
    }

    fn finish(self) -> EdgeList {
        EdgeList {
            points: self.points,
            edges: self.edges,
        }
    }
}

fn pick<'a>(rng: &mut impl Rng, v: &'a [String]) -> &'a str {
    v.choose(rng).expect("non-empty block")
}

/// Connected graph on `p0..p{n-1}`: a random spanning tree plus extra edges,
/// weights multiples of 0.5 in `[0.5, 5]`.
pub fn random_weighted_graph(rng: &mut impl Rng, n: usize) -> EdgeList {
    let mut g = Graph::new();
    let pts = g.add("p", n);
    let weight = |rng: &mut dyn rand::RngCore| f64::from(rng.gen_range(1..=10u8)) * 0.5;
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = weight(rng);
        g.edge(&pts[i], &pts[j], w);
    }
    let extra = if n > 2 { rng.gen_range(0..=n * (n - 1) / 4) } else { 0 };
    for _ in 0..extra {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let w = weight(rng);
            g.edge(&pts[i], &pts[j], w);
        }
    }
    g.finish()
}

/// Two dense nuclei joined by one edge, each surrounded by extra points.
#[derive(Debug, Clone)]
pub struct WeaklyInstance {
    pub graph: EdgeList,
    pub b1: Vec<String>,
    pub b2: Vec<String>,
    pub n1: Vec<String>,
    pub n2: Vec<String>,
    pub alpha: Alpha,
}

#[derive(Debug, Clone, Copy)]
pub struct WeaklyParams {
    pub alpha: usize,
    pub nucleus: usize,
    pub extras: usize,
    /// Length of the single bridging edge; at least 2.
    pub bridge: f64,
    /// Extras sit at `bridge + spread` from every nucleus point.
    pub spread: f64,
}

impl WeaklyParams {
    pub fn sample(rng: &mut impl Rng) -> Self {
        let alpha = rng.gen_range(1..=2);
        Self {
            alpha,
            nucleus: rng.gen_range(alpha + 2..=alpha + 4),
            extras: rng.gen_range(1..=3),
            bridge: *[2.0, 2.5, 3.0].choose(rng).unwrap(),
            spread: *[0.0, 0.25, 0.5].choose(rng).unwrap(),
        }
    }
}

pub fn weakly_instance(rng: &mut impl Rng, p: WeaklyParams) -> WeaklyInstance {
    let mut g = Graph::new();
    let c = p.bridge + p.spread;
    let side = |g: &mut Graph, rng: &mut _, nuc: &str, ext: &str| {
        let n = g.add(nuc, p.nucleus);
        let e = g.add(ext, p.extras);
        g.clique(rng, &n, &[1.0, 1.25, 1.5]);
        g.clique(rng, &e, &[c]);
        for u in &e {
            for v in &n {
                g.edge(u, v, c);
            }
        }
        let mut b = n.clone();
        b.extend(e);
        (n, b)
    };
    let (n1, b1) = side(&mut g, rng, "a", "x");
    let (n2, b2) = side(&mut g, rng, "b", "y");
    let (x0, y0) = (pick(rng, &n1).to_string(), pick(rng, &n2).to_string());
    g.edge(&x0, &y0, p.bridge);
    WeaklyInstance {
        graph: g.finish(),
        b1,
        b2,
        n1,
        n2,
        alpha: Alpha::new(p.alpha).expect("alpha >= 1"),
    }
}

/// Two cliques, a bridge chain `z_0..z_k` with links of length `t`, and
/// singletons hanging off each clique at `t`.
#[derive(Debug, Clone)]
pub struct BridgeInstance {
    pub graph: EdgeList,
    pub scenario: BridgeScenario,
    pub alpha: Alpha,
}

#[derive(Debug, Clone, Copy)]
pub struct BridgeParams {
    pub alpha: usize,
    pub sizes: (usize, usize),
    /// Number of links in the bridge chain; 0 means a single point `z_0`.
    pub links: usize,
    pub hanging: (usize, usize),
    pub t: f64,
}

impl BridgeParams {
    pub fn sample(rng: &mut impl Rng) -> Self {
        let alpha = rng.gen_range(1..=3);
        let n1 = rng.gen_range(alpha + 1..=alpha + 4);
        let n2 = loop {
            let n2 = rng.gen_range(2..=alpha * n1);
            if alpha * n2 >= n1 {
                break n2;
            }
        };
        Self {
            alpha,
            sizes: (n1, n2),
            links: rng.gen_range(0..=2),
            hanging: (rng.gen_range(0..=3), rng.gen_range(0..=3)),
            t: *[2.5, 3.0, 4.0].choose(rng).unwrap(),
        }
    }
}

pub fn bridge_instance(rng: &mut impl Rng, p: BridgeParams) -> BridgeInstance {
    let mut g = Graph::new();
    let b1 = g.add("a", p.sizes.0);
    let b2 = g.add("b", p.sizes.1);
    let z = g.add("z", p.links + 1);
    let x = g.add("x", p.hanging.0);
    let y = g.add("y", p.hanging.1);
    let inner = [0.5, 1.0, 1.5, 2.0];
    g.clique(rng, &b1, &inner);
    g.clique(rng, &b2, &inner);
    for w in z.windows(2) {
        g.edge(&w[0], &w[1], p.t);
    }
    let (first, last) = (pick(rng, &b1).to_string(), pick(rng, &b2).to_string());
    g.edge(&z[0], &first, p.t);
    g.edge(&z[p.links], &last, p.t);
    for (hang, block) in [(&x, &b1), (&y, &b2)] {
        for h in hang {
            let at = pick(rng, block).to_string();
            g.edge(h, &at, p.t);
        }
    }
    BridgeInstance {
        graph: g.finish(),
        scenario: BridgeScenario {
            b1,
            b2,
            z,
            x,
            y,
        },
        alpha: Alpha::new(p.alpha).expect("alpha >= 1"),
    }
}

/// Block chain `B_0..B_k` with consecutive gaps `t_j = 2`, inner blocks of
/// one or two points, and side singletons attached to the end blocks at
/// weights in `[t_j, t_i]`, where `t_i` is a distance below `2·t_j`. The
/// end blocks stay balanced after absorbing their sides.
#[derive(Debug, Clone)]
pub struct ModerateInstance {
    pub graph: EdgeList,
    pub scenario: ModerateScenario,
    pub alpha: Alpha,
}

pub fn moderate_instance(rng: &mut impl Rng) -> ModerateInstance {
    let alpha = rng.gen_range(1..=3);
    let t_j = 2.0;
    let inner_size = if alpha >= 2 { rng.gen_range(1..=2) } else { 1 };
    let inner_count = rng.gen_range(1..=3);
    let floor = alpha * inner_size + 1;
    let (n0, nk) = loop {
        let n0 = rng.gen_range(floor..=floor + 3);
        let nk = rng.gen_range(floor..=floor + 3);
        if alpha * n0 >= nk && alpha * nk >= n0 {
            break (n0, nk);
        }
    };
    let left_count = rng.gen_range(0..=(alpha * nk - n0).min(3));
    let right_count = rng.gen_range(0..=(alpha * n0 - nk).min(3));

    let mut g = Graph::new();
    let mut chain = vec![g.add("a", n0)];
    for _ in 0..inner_count {
        chain.push(g.add("m", inner_size));
    }
    chain.push(g.add("b", nk));
    for block in &chain {
        g.clique(rng, block, &[0.5, 1.0]);
    }
    for w in chain.windows(2) {
        let (u, v) = (pick(rng, &w[0]).to_string(), pick(rng, &w[1]).to_string());
        g.edge(&u, &v, t_j);
    }
    let mut widest = t_j;
    let mut sides = |g: &mut Graph, prefix: &str, count: usize, end: &[String]| {
        let names = g.add(prefix, count);
        for s in &names {
            let w = *[2.0, 2.5, 3.0, 3.5].choose(rng).unwrap();
            widest = widest.max(w);
            let at = pick(rng, end).to_string();
            g.edge(s, &at, w);
        }
        names.into_iter().map(|s| vec![s]).collect::<Vec<_>>()
    };
    let left = sides(&mut g, "x", left_count, &chain[0]);
    let right = sides(&mut g, "y", right_count, &chain[chain.len() - 1]);
    let graph = g.finish();
    let space = graph.to_space().expect("generated graph is connected");
    let candidates: Vec<f64> = space
        .levels()
        .values()
        .iter()
        .copied()
        .filter(|&t| t >= widest && t < 2.0 * t_j)
        .collect();
    let t_i = *candidates.choose(rng).expect("the widest side weight is a distance");
    ModerateInstance {
        graph,
        scenario: ModerateScenario {
            chain,
            left,
            right,
            t_j,
            t_i,
        },
        alpha: Alpha::new(alpha).expect("alpha >= 1"),
    }
}

/// Two cliques joined through a chain of singletons, plus unrelated points
/// attached at random.
#[derive(Debug, Clone)]
pub struct SmallerBlocksInstance {
    pub graph: EdgeList,
    pub blocks: Vec<Vec<String>>,
    pub alpha: Alpha,
}

pub fn smaller_blocks_instance(rng: &mut impl Rng) -> SmallerBlocksInstance {
    let alpha = rng.gen_range(1..=2);
    let w = *[2.0, 2.5, 3.0].choose(rng).unwrap();
    let inner_count = rng.gen_range(1..=2);
    let mut g = Graph::new();
    let mut blocks = vec![g.add("a", rng.gen_range(alpha + 1..=alpha + 3))];
    for _ in 0..inner_count {
        blocks.push(g.add("m", 1));
    }
    blocks.push(g.add("b", rng.gen_range(alpha + 1..=alpha + 3)));
    let k = blocks.len() - 1;
    g.clique(rng, &blocks[0], &[w]);
    g.clique(rng, &blocks[k], &[1.0, w]);
    for pair in blocks.windows(2) {
        let link = w * f64::from(rng.gen_range(6..=10u8)) / 10.0;
        let (u, v) = (pick(rng, &pair[0]).to_string(), pick(rng, &pair[1]).to_string());
        g.edge(&u, &v, link);
    }
    let anchors: Vec<String> = g.points.clone();
    let noise = g.add("o", rng.gen_range(0..=3));
    for o in &noise {
        let at = pick(rng, &anchors).to_string();
        let weight = f64::from(rng.gen_range(1..=8u8)) * 0.5;
        g.edge(o, &at, weight);
    }
    SmallerBlocksInstance {
        graph: g.finish(),
        blocks,
        alpha: Alpha::new(alpha).expect("alpha >= 1"),
    }
}
