//! Exact maximum clique by branch and bound with a greedy-coloring bound.
//!
//! Vertices are processed in a fixed order derived from their indices, so
//! results (sizes) are deterministic. The search can stop early once a
//! caller-supplied target size is reached.

/// Adjacency oracle over vertex ids.
pub trait Adjacency {
    fn adjacent(&self, u: usize, v: usize) -> bool;
}

impl<F: Fn(usize, usize) -> bool> Adjacency for F {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self(u, v)
    }
}

struct Search<'a, A: Adjacency> {
    adj: &'a A,
    best: usize,
    stop_at: usize,
}

impl<A: Adjacency> Search<'_, A> {
    /// Orders `cands` into greedy color classes; returns the vertex order and
    /// the running color count, an upper bound on the clique size within
    /// `order[..=i]`.
    fn color_sort(&self, cands: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &v in cands {
            match classes
                .iter_mut()
                .find(|c| c.iter().all(|&w| !self.adj.adjacent(v, w)))
            {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(cands.len());
        let mut bound = Vec::with_capacity(cands.len());
        for (k, c) in classes.into_iter().enumerate() {
            for v in c {
                order.push(v);
                bound.push(k + 1);
            }
        }
        (order, bound)
    }

    fn expand(&mut self, size: usize, cands: &[usize]) {
        let (order, bound) = self.color_sort(cands);
        for i in (0..order.len()).rev() {
            if size + bound[i] <= self.best || self.best >= self.stop_at {
                return;
            }
            let v = order[i];
            let next: Vec<usize> = order[..i]
                .iter()
                .copied()
                .filter(|&w| self.adj.adjacent(v, w))
                .collect();
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, &next);
            }
        }
    }
}

/// Size of a maximum clique among `cands`.
///
/// `known` is a size already achieved elsewhere (only larger cliques are
/// searched for); the returned value is `max(known, found)`. The search stops
/// as soon as a clique of size `>= stop_at` is found.
pub fn max_clique_size<A: Adjacency>(adj: &A, cands: &[usize], known: usize, stop_at: usize) -> usize {
    let mut search = Search {
        adj,
        best: known,
        stop_at,
    };
    if !cands.is_empty() && known < stop_at {
        search.expand(0, cands);
    }
    search.best
}
