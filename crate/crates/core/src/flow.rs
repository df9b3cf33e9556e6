//! Integer max-flow (Dinic) on small graphs.
//!
//! Used for exact bipartite transportation feasibility: supplies and
//! demands are scaled to integers so feasibility is decided without any
//! floating-point comparisons.

#[derive(Clone, Copy, Debug)]
struct Edge {
    to: usize,
    cap: i64,
    rev: usize,
}

pub struct MaxFlow {
    graph: Vec<Vec<Edge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl MaxFlow {
    pub fn new(nodes: usize) -> Self {
        MaxFlow {
            graph: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    /// Adds a directed edge and returns its handle for flow readout.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let fwd = self.graph[from].len();
        let bwd = self.graph[to].len();
        self.graph[from].push(Edge { to, cap, rev: bwd });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            rev: fwd,
        });
        (from, fwd)
    }

    /// Flow pushed through the edge returned by [`MaxFlow::add_edge`].
    pub fn flow_on(&self, handle: (usize, usize), original_cap: i64) -> i64 {
        original_cap - self.graph[handle.0][handle.1].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        loop {
            if !self.bfs(source, sink) {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.dfs(source, sink, i64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, u: usize, sink: usize, limit: i64) -> i64 {
        if u == sink {
            return limit;
        }
        while self.iter[u] < self.graph[u].len() {
            let e = self.graph[u][self.iter[u]];
            if e.cap > 0 && self.level[u] < self.level[e.to] {
                let pushed = self.dfs(e.to, sink, limit.min(e.cap));
                if pushed > 0 {
                    self.graph[u][self.iter[u]].cap -= pushed;
                    let rev = e.rev;
                    self.graph[e.to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturates_simple_bipartite() {
        // Two sources with supply 2 each, two sinks demanding 2 each,
        // complete middle layer.
        let mut f = MaxFlow::new(6);
        let s = 0;
        let t = 5;
        f.add_edge(s, 1, 2);
        f.add_edge(s, 2, 2);
        for u in [1, 2] {
            for v in [3, 4] {
                f.add_edge(u, v, 4);
            }
        }
        f.add_edge(3, t, 2);
        f.add_edge(4, t, 2);
        assert_eq!(f.max_flow(s, t), 4);
    }

    #[test]
    fn bottleneck_limits_flow() {
        let mut f = MaxFlow::new(4);
        f.add_edge(0, 1, 5);
        f.add_edge(1, 2, 3);
        f.add_edge(2, 3, 5);
        assert_eq!(f.max_flow(0, 3), 3);
    }
}
