use super::FlowError;
use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: u64,
    pub upper: u64,
}

/// A directed network with integral lower and upper arc bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFlowNetwork {
    num_nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

impl BoundedFlowNetwork {
    pub fn new(num_nodes: usize, source: usize, sink: usize) -> Result<Self, FlowError> {
        if source >= num_nodes || sink >= num_nodes || source == sink {
            return Err(FlowError::Malformed(format!(
                "source {source} / sink {sink} invalid for {num_nodes} nodes"
            )));
        }
        Ok(Self {
            num_nodes,
            source,
            sink,
            arcs: Vec::new(),
        })
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lower: u64, upper: u64) -> Result<usize, FlowError> {
        if from >= self.num_nodes || to >= self.num_nodes || from == to {
            return Err(FlowError::Malformed(format!("arc {from}->{to}")));
        }
        if lower > upper {
            return Err(FlowError::Malformed(format!(
                "arc {from}->{to} has lower {lower} > upper {upper}"
            )));
        }
        if to == self.source || from == self.sink {
            return Err(FlowError::Malformed(format!(
                "arc {from}->{to} enters the source or leaves the sink"
            )));
        }
        self.arcs.push(Arc {
            from,
            to,
            lower,
            upper,
        });
        Ok(self.arcs.len() - 1)
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Checks bounds, conservation and the source outflow of `flow`.
    pub fn is_valid_flow(&self, flow: &[u64], value: u64) -> bool {
        if flow.len() != self.arcs.len() {
            return false;
        }
        let mut balance = vec![0i128; self.num_nodes];
        for (a, &f) in self.arcs.iter().zip(flow) {
            if f < a.lower || f > a.upper {
                return false;
            }
            balance[a.from] -= f as i128;
            balance[a.to] += f as i128;
        }
        (0..self.num_nodes).all(|v| {
            if v == self.source {
                balance[v] == -(value as i128)
            } else if v == self.sink {
                balance[v] == value as i128
            } else {
                balance[v] == 0
            }
        })
    }
}

/// Residual graph for Edmonds-Karp. Edge `2e` is forward, `2e + 1` its twin.
struct Residual {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let e = self.head.len();
        self.head.push(to);
        self.cap.push(cap);
        self.adj[from].push(e);
        self.head.push(from);
        self.cap.push(0);
        self.adj[to].push(e + 1);
        e
    }

    /// Shortest augmenting paths; neighbors are scanned by ascending head
    /// node so the result is deterministic.
    fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        for list in &mut self.adj {
            list.sort_by_key(|&e| (self.head[e], e));
        }
        let n = self.adj.len();
        let mut total = 0;
        let mut pred = vec![usize::MAX; n];
        while total < limit {
            pred.fill(usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; n];
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &e in &self.adj[v] {
                    let w = self.head[e];
                    if self.cap[e] > 0 && !seen[w] {
                        seen[w] = true;
                        pred[w] = e;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut push = limit - total;
            let mut v = t;
            while v != s {
                let e = pred[v];
                push = push.min(self.cap[e]);
                v = self.head[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.head[e ^ 1];
            }
            total += push;
        }
        total
    }
}

/// An integral flow of exactly `required` units from source to sink that
/// respects every arc's bounds, or `None` if there is none.
pub fn feasible_integral_flow(net: &BoundedFlowNetwork, required: u64) -> Option<Vec<u64>> {
    let n = net.num_nodes;
    let (ss, tt) = (n, n + 1);
    let mut res = Residual::new(n + 2);
    let mut excess = vec![0i128; n];
    let mut ids = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        ids.push(res.add(a.from, a.to, a.upper - a.lower));
        excess[a.to] += a.lower as i128;
        excess[a.from] -= a.lower as i128;
    }
    // the return arc t -> s pinned to [required, required]
    excess[net.source] += required as i128;
    excess[net.sink] -= required as i128;

    let mut demand: u64 = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            res.add(ss, v, e as u64);
            demand += e as u64;
        } else if e < 0 {
            res.add(v, tt, (-e) as u64);
        }
    }
    if res.max_flow(ss, tt, demand) < demand {
        return None;
    }
    let flow = net
        .arcs
        .iter()
        .zip(&ids)
        .map(|(a, &e)| a.lower + res.cap[e ^ 1])
        .collect();
    Some(flow)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let mut net = BoundedFlowNetwork::new(2, 0, 1).unwrap();
        net.add_arc(0, 1, 0, 3).unwrap();
        assert_eq!(feasible_integral_flow(&net, 3), Some(vec![3]));
        assert_eq!(feasible_integral_flow(&net, 4), None);

        let mut pinned = BoundedFlowNetwork::new(2, 0, 1).unwrap();
        pinned.add_arc(0, 1, 2, 2).unwrap();
        assert_eq!(feasible_integral_flow(&pinned, 1), None);
        assert_eq!(feasible_integral_flow(&pinned, 2), Some(vec![2]));
    }

    #[test]
    fn lower_bound_forces_a_route() {
        // s -> a -> t and s -> b -> t; a -> t must carry at least 2
        let mut net = BoundedFlowNetwork::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, 0, 5).unwrap();
        net.add_arc(0, 2, 0, 5).unwrap();
        net.add_arc(1, 3, 2, 5).unwrap();
        net.add_arc(2, 3, 0, 1).unwrap();
        let f = feasible_integral_flow(&net, 3).unwrap();
        assert!(net.is_valid_flow(&f, 3));
        assert!(f[2] >= 2);
        assert_eq!(feasible_integral_flow(&net, 1), None);
    }

    #[test]
    fn rejects_bad_arcs() {
        let mut net = BoundedFlowNetwork::new(3, 0, 2).unwrap();
        assert!(net.add_arc(0, 1, 3, 2).is_err());
        assert!(net.add_arc(1, 0, 0, 1).is_err());
        assert!(net.add_arc(2, 1, 0, 1).is_err());
        assert!(net.add_arc(0, 5, 0, 1).is_err());
    }
}
