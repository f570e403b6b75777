//! Integer min-cost flow by successive shortest augmenting paths.
//!
//! Dijkstra runs on reduced costs, so every edge cost added must be
//! non-negative; the potentials keep reduced costs non-negative afterwards.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
}

#[derive(Debug, Clone)]
pub(crate) struct MinCostFlow {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    /// Adds `from -> to`; returns the id of the forward edge.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        debug_assert!(cost >= 0 && cap >= 0);
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Units currently routed through forward edge `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.edges[id + 1].cap
    }

    /// Sends up to `limit` units from `source` to `sink` at minimum cost.
    /// Returns `(flow, cost)`. Call at most once per graph: the residual
    /// network left behind has negative edges.
    pub fn run(&mut self, source: usize, sink: usize, limit: i64) -> (i64, i64) {
        let nodes = self.adj.len();
        let mut potential = vec![0i64; nodes];
        let mut dist = vec![INF; nodes];
        let mut parent = vec![usize::MAX; nodes];
        let (mut flow, mut cost) = (0i64, 0i64);
        let mut heap = BinaryHeap::new();

        while flow < limit {
            dist.fill(INF);
            parent.fill(usize::MAX);
            dist[source] = 0;
            heap.push(Reverse((0i64, source)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &id in &self.adj[u] {
                    let e = &self.edges[id];
                    if e.cap == 0 {
                        continue;
                    }
                    let nd = d + e.cost + potential[u] - potential[e.to];
                    if nd < dist[e.to] {
                        dist[e.to] = nd;
                        parent[e.to] = id;
                        heap.push(Reverse((nd, e.to)));
                    }
                }
            }
            if dist[sink] == INF {
                break;
            }
            for (p, &d) in potential.iter_mut().zip(&dist) {
                if d < INF {
                    *p += d;
                }
            }
            let mut push = limit - flow;
            let mut v = sink;
            while v != source {
                let id = parent[v];
                push = push.min(self.edges[id].cap);
                v = self.edges[id ^ 1].to;
            }
            let mut v = sink;
            while v != source {
                let id = parent[v];
                self.edges[id].cap -= push;
                self.edges[id ^ 1].cap += push;
                cost += push * self.edges[id].cost;
                v = self.edges[id ^ 1].to;
            }
            flow += push;
        }
        (flow, cost)
    }
}
