//! Small max-flow solver (Edmonds-Karp). Every graph it sees here has a
//! few dozen nodes, so breadth-first augmentation is plenty.

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(node_count: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); node_count],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Directed edge u -> v with capacity `cap`; returns the edge id of the
    /// forward arc (the residual arc is id ^ 1).
    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    /// Flow currently pushed through forward edge `id`.
    pub fn flow_on(&self, id: usize) -> i64 {
        self.cap[id ^ 1]
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut prev_edge = vec![usize::MAX; self.adj.len()];
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            let mut reached = vec![false; self.adj.len()];
            reached[s] = true;
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &id in &self.adj[u] {
                    let v = self.to[id];
                    if !reached[v] && self.cap[id] > 0 {
                        reached[v] = true;
                        prev_edge[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            if !reached[t] {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = t;
            while v != s {
                let id = prev_edge[v];
                bottleneck = bottleneck.min(self.cap[id]);
                v = self.to[id ^ 1];
            }
            let mut v = t;
            while v != s {
                let id = prev_edge[v];
                self.cap[id] -= bottleneck;
                self.cap[id ^ 1] += bottleneck;
                v = self.to[id ^ 1];
            }
            total += bottleneck;
        }
    }
}
