//! Immutable undirected simple graphs over arbitrary 64-bit node identifiers.
//!
//! Nodes are stored in increasing identifier order, so the internal index of
//! a node doubles as its rank by ID. Every algorithm that breaks ties by ID
//! can therefore compare indices directly.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifiers must stay below this bound.
pub const MAX_ID: u64 = 1 << 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for NodeId {
    fn from(v: u64) -> Self {
        NodeId(v)
    }
}

pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<NodeId>,
    adj: Vec<Vec<usize>>,
    index: HashMap<NodeId, usize>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from a node set and an edge list. Endpoints not listed in
    /// `nodes` are added; duplicate edges collapse.
    pub fn from_edges<N, E>(nodes: N, edges: E) -> Result<Graph>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let edges: Vec<(NodeId, NodeId)> = edges.into_iter().collect();
        let mut ids: Vec<NodeId> = nodes.into_iter().collect();
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::domain(format!("self-loop at {a}")));
            }
            ids.push(a);
            ids.push(b);
        }
        ids.sort_unstable();
        ids.dedup();
        if let Some(&NodeId(id)) = ids.last() {
            if id >= MAX_ID {
                return Err(Error::domain(format!("identifier {id} is not below 2^63")));
            }
        }
        let index: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (a, b) in edges {
            let (ia, ib) = (index[&a], index[&b]);
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph { ids, adj, index, edge_count: edge_count / 2 })
    }

    /// Builds a graph whose nodes are `ids` (must be strictly increasing) and
    /// whose adjacency is given by index.
    fn from_parts(ids: Vec<NodeId>, adj: Vec<Vec<usize>>) -> Graph {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let index = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { ids, adj, index, edge_count }
    }

    pub fn empty() -> Graph {
        Graph::from_parts(Vec::new(), Vec::new())
    }

    /// Parses the whitespace-separated edge-list format (`u v` per line, `#`
    /// starts a comment).
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut parts = content.split_whitespace();
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse { line, message: format!("expected two node ids, got `{content}`") })
                }
            };
            let parse = |tok: &str| -> Result<u64> {
                let v: u64 = tok
                    .parse()
                    .map_err(|_| Error::Parse { line, message: format!("`{tok}` is not a non-negative integer") })?;
                if v >= MAX_ID {
                    return Err(Error::Parse { line, message: format!("id {v} is not below 2^63") });
                }
                Ok(v)
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a == b {
                return Err(Error::Parse { line, message: format!("self-loop at {a}") });
            }
            edges.push((NodeId(a), NodeId(b)));
        }
        Graph::from_edges(std::iter::empty(), edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.edges() {
            out.push_str(&format!("{} {}\n", self.ids[a], self.ids[b]));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> NodeId {
        self.ids[i]
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn try_index(&self, id: NodeId) -> Result<usize> {
        self.index_of(id).ok_or(Error::UnknownNode(id))
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    /// Sorted neighbour indices.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().copied().filter(move |&b| b > a).map(move |b| (a, b)))
    }

    /// Bit width of the identifier space, at least 1.
    pub fn id_bits(&self) -> u32 {
        let max = self.ids.last().map(|id| id.0).unwrap_or(0);
        (64 - max.leading_zeros()).max(1)
    }

    /// Hop distances from `source`; unreachable nodes get [`UNREACHABLE`].
    pub fn bfs(&self, source: usize) -> Vec<usize> {
        self.bfs_bounded(std::slice::from_ref(&source), usize::MAX)
    }

    /// Multi-source BFS truncated at `limit` hops.
    pub fn bfs_bounded(&self, sources: &[usize], limit: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == UNREACHABLE {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            if dist[v] >= limit {
                continue;
            }
            for &w in &self.adj[v] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes within `radius` hops of `source`, with their distances, in BFS order.
    pub fn ball_indices(&self, source: usize, radius: usize) -> Vec<(usize, usize)> {
        let mut seen = HashMap::new();
        seen.insert(source, 0usize);
        let mut order = vec![(source, 0)];
        let mut head = 0;
        while head < order.len() {
            let (v, d) = order[head];
            head += 1;
            if d == radius {
                continue;
            }
            for &w in &self.adj[v] {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(d + 1);
                    order.push((w, d + 1));
                }
            }
        }
        order
    }

    /// The subgraph induced by all nodes within `radius` hops of `u`.
    pub fn ball(&self, u: NodeId, radius: usize) -> Result<Graph> {
        let src = self.try_index(u)?;
        let mut members: Vec<usize> = self.ball_indices(src, radius).into_iter().map(|(v, _)| v).collect();
        members.sort_unstable();
        Ok(self.induced_by_indices(&members))
    }

    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<Graph> {
        let mut idx = Vec::with_capacity(nodes.len());
        for &id in nodes {
            idx.push(self.try_index(id)?);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(self.induced_by_indices(&idx))
    }

    /// Induced subgraph on a sorted, deduplicated index list.
    pub fn induced_by_indices(&self, members: &[usize]) -> Graph {
        let mut local = vec![UNREACHABLE; self.n()];
        for (k, &v) in members.iter().enumerate() {
            local[v] = k;
        }
        let ids = members.iter().map(|&v| self.ids[v]).collect();
        let adj = members
            .iter()
            .map(|&v| self.adj[v].iter().map(|&w| local[w]).filter(|&l| l != UNREACHABLE).collect())
            .collect();
        Graph::from_parts(ids, adj)
    }

    /// The graph on the same nodes connecting every pair at distance 1 or 2.
    pub fn square(&self) -> Graph {
        let n = self.n();
        let mut mark = vec![usize::MAX; n];
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            let mut list = Vec::new();
            mark[v] = v;
            for &w in &self.adj[v] {
                if mark[w] != v {
                    mark[w] = v;
                    list.push(w);
                }
                for &x in &self.adj[w] {
                    if mark[x] != v {
                        mark[x] = v;
                        list.push(x);
                    }
                }
            }
            list.sort_unstable();
            adj.push(list);
        }
        Graph::from_parts(self.ids.clone(), adj)
    }

    /// Indices of nodes with at least one neighbour.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    /// Largest eccentricity over all nodes, ignoring unreachable pairs.
    pub fn diameter(&self) -> usize {
        (0..self.n())
            .map(|s| self.bfs(s).into_iter().filter(|&d| d != UNREACHABLE).max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Applies an injective relabelling of identifiers.
    pub fn relabel(&self, f: impl Fn(NodeId) -> NodeId) -> Result<Graph> {
        let nodes: Vec<NodeId> = self.ids.iter().map(|&id| f(id)).collect();
        let edges: Vec<_> = self.edges().map(|(a, b)| (nodes[a], nodes[b])).collect();
        let g = Graph::from_edges(nodes.iter().copied(), edges)?;
        if g.n() != self.n() {
            return Err(Error::domain("relabelling is not injective"));
        }
        Ok(g)
    }

    pub fn orient(&self) -> Orientation {
        let n = self.n();
        let key = |v: usize| (self.degree(v), v);
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (a, b) in self.edges() {
            if key(a) < key(b) {
                out[a].push(b);
                inn[b].push(a);
            } else {
                out[b].push(a);
                inn[a].push(b);
            }
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
        }
        Orientation { out, inn }
    }
}

/// Degree/ID edge orientation: `u -> v` iff `(deg u, ID u) < (deg v, ID v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl Orientation {
    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Kahn's algorithm; true when the orientation has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.out.len();
        let mut indeg: Vec<usize> = self.inn.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &self.out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }
}
