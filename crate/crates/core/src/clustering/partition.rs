use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A partition of the node set into clusters, each with a designated centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    alpha: u64,
    /// Member indices of each cluster, in increasing order. Clusters are
    /// ordered by centre ID.
    clusters: Vec<Vec<usize>>,
    centers: Vec<usize>,
    cluster_of: Vec<usize>,
    delays: Vec<u64>,
}

impl Partition {
    /// Builds a partition from explicit clusters. Every node of `g` must
    /// appear in exactly one cluster, and each centre must lie in its cluster.
    pub fn from_clusters(
        g: &Graph,
        alpha: u64,
        clusters: Vec<(NodeId, Vec<NodeId>)>,
        delays: Option<Vec<u64>>,
    ) -> Result<Partition> {
        let mut cluster_of = vec![usize::MAX; g.n()];
        let mut tagged: Vec<(usize, Vec<usize>)> = Vec::with_capacity(clusters.len());
        for (center, members) in clusters {
            let c = g.try_index(center)?;
            let mut idx = members.iter().map(|&m| g.try_index(m)).collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            if idx.is_empty() {
                return Err(Error::domain(format!("cluster centred at {center} is empty")));
            }
            if idx.binary_search(&c).is_err() {
                return Err(Error::domain(format!("centre {center} is not in its cluster")));
            }
            tagged.push((c, idx));
        }
        tagged.sort_unstable_by_key(|(c, _)| *c);
        for (k, (_, members)) in tagged.iter().enumerate() {
            for &m in members {
                if cluster_of[m] != usize::MAX {
                    return Err(Error::domain(format!("node {} belongs to two clusters", g.id(m))));
                }
                cluster_of[m] = k;
            }
        }
        if let Some(v) = cluster_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::domain(format!("node {} is not covered", g.id(v))));
        }
        let delays = delays.unwrap_or_else(|| vec![0; g.n()]);
        if delays.len() != g.n() {
            return Err(Error::domain("delay vector length does not match the graph"));
        }
        let (centers, clusters) = tagged.into_iter().unzip();
        Ok(Partition { alpha, clusters, centers, cluster_of, delays })
    }

    /// Every node its own cluster.
    pub fn singletons(g: &Graph, alpha: u64) -> Partition {
        Partition {
            alpha,
            clusters: (0..g.n()).map(|v| vec![v]).collect(),
            centers: (0..g.n()).collect(),
            cluster_of: (0..g.n()).collect(),
            delays: vec![0; g.n()],
        }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    /// Cluster index of node `v`.
    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    /// Centre index of the cluster containing `v`.
    pub fn center_of(&self, v: usize) -> usize {
        self.centers[self.cluster_of[v]]
    }

    pub fn delays(&self) -> &[u64] {
        &self.delays
    }

    /// Number of clusters at distance at most one from `v`.
    pub fn cluster_degree(&self, g: &Graph, v: usize) -> usize {
        let mut seen: Vec<usize> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).map(|w| self.cluster_of[w]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn cluster_degrees(&self, g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|v| self.cluster_degree(g, v)).collect()
    }

    /// Restricts the partition to the nodes of the induced subgraph `sub`,
    /// dropping clusters that become empty. The centre of a cluster whose
    /// original centre left is its smallest remaining member.
    pub fn restrict(&self, g: &Graph, sub: &Graph) -> Result<Partition> {
        let mut groups: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
        for &id in sub.ids() {
            let v = g.try_index(id)?;
            groups.entry(self.cluster_of[v]).or_default().push(id);
        }
        let delays = sub.ids().iter().map(|&id| self.delays[g.index_of(id).unwrap()]).collect();
        let clusters = groups
            .into_iter()
            .map(|(k, members)| {
                let c = g.id(self.centers[k]);
                let center = if members.contains(&c) { c } else { members[0] };
                (center, members)
            })
            .collect();
        Partition::from_clusters(sub, self.alpha, clusters, Some(delays))
    }

    pub fn to_json(&self, g: &Graph) -> PartitionJson {
        PartitionJson {
            alpha: self.alpha,
            clusters: self.clusters.iter().map(|c| c.iter().map(|&v| g.id(v)).collect()).collect(),
            centers: self.centers.iter().map(|&c| g.id(c)).collect(),
            delays: (0..g.n()).map(|v| (g.id(v), self.delays[v])).collect(),
        }
    }

    pub fn from_json(g: &Graph, json: &PartitionJson) -> Result<Partition> {
        if json.clusters.len() != json.centers.len() {
            return Err(Error::domain("clusters and centers have different lengths"));
        }
        let delays = if json.delays.is_empty() {
            None
        } else {
            Some(
                g.ids()
                    .iter()
                    .map(|id| json.delays.get(id).copied().ok_or(Error::UnknownNode(*id)))
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        let clusters = json.centers.iter().copied().zip(json.clusters.iter().cloned()).collect();
        Partition::from_clusters(g, json.alpha, clusters, delays)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub alpha: u64,
    pub clusters: Vec<Vec<NodeId>>,
    pub centers: Vec<NodeId>,
    #[serde(default)]
    pub delays: BTreeMap<NodeId, u64>,
}

/// Assigns every node to `argmin_v (del(v) + d(v, u), ID(v))`.
///
/// Simulated as a wavefront: at time `t` an unclaimed node is claimed by the
/// smallest centre among its own start (if `del = t`) and the neighbours
/// claimed at `t - 1`.
pub fn delays_to_partition(g: &Graph, delays: &[u64], alpha: u64) -> Result<Partition> {
    if delays.len() != g.n() {
        return Err(Error::domain("delay vector length does not match the graph"));
    }
    let n = g.n();
    let mut center = vec![usize::MAX; n];
    let mut claimed = 0usize;
    let mut by_delay: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (v, &d) in delays.iter().enumerate() {
        by_delay.entry(d).or_default().push(v);
    }
    let mut frontier: Vec<usize> = Vec::new();
    let mut best = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut t = 0u64;
    while claimed < n {
        touched.clear();
        if let Some(starters) = by_delay.get(&t) {
            for &v in starters {
                if center[v] == usize::MAX && v < best[v] {
                    if best[v] == usize::MAX {
                        touched.push(v);
                    }
                    best[v] = v;
                }
            }
        }
        for &w in &frontier {
            for &u in g.neighbors(w) {
                if center[u] == usize::MAX {
                    if best[u] == usize::MAX {
                        touched.push(u);
                    }
                    best[u] = best[u].min(center[w]);
                }
            }
        }
        frontier.clear();
        for &u in &touched {
            center[u] = best[u];
            best[u] = usize::MAX;
            frontier.push(u);
            claimed += 1;
        }
        t += 1;
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in center.iter().enumerate() {
        groups.entry(c).or_default().push(v);
    }
    let mut cluster_of = vec![0; n];
    let mut centers = Vec::with_capacity(groups.len());
    let mut clusters = Vec::with_capacity(groups.len());
    for (k, (c, members)) in groups.into_iter().enumerate() {
        for &m in &members {
            cluster_of[m] = k;
        }
        centers.push(c);
        clusters.push(members);
    }
    Ok(Partition { alpha, clusters, centers, cluster_of, delays: delays.to_vec() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionReport {
    pub clusters: usize,
    pub max_diameter: usize,
    /// Largest distance from a centre to a member inside its cluster.
    pub max_radius: usize,
    pub max_cluster_degree: usize,
    /// `deg_C` value to number of nodes with that value.
    pub degree_histogram: BTreeMap<usize, usize>,
    pub diameter_bound: u64,
    pub degree_bound: f64,
    pub ok: bool,
}

/// Measures strong diameters and cluster degrees; `ok` compares them with
/// `100 alpha` and `degree_bound`.
pub fn verify_partition_with(g: &Graph, p: &Partition, degree_bound: f64) -> Result<PartitionReport> {
    if p.cluster_of.len() != g.n() {
        return Err(Error::domain("partition does not match the graph"));
    }
    let mut max_diameter = 0;
    let mut max_radius = 0;
    for (k, members) in p.clusters.iter().enumerate() {
        let sub = g.induced_by_indices(members);
        let local_center = members.binary_search(&p.centers[k]).map_err(|_| Error::domain("centre outside cluster"))?;
        let from_center = sub.bfs(local_center);
        if let Some(&d) = from_center.iter().max() {
            if d == crate::graph::UNREACHABLE {
                return Err(Error::claim("cluster-connected", format!("cluster of {} is disconnected", g.id(p.centers[k]))));
            }
            max_radius = max_radius.max(d);
        }
        max_diameter = max_diameter.max(sub.diameter());
    }
    let degrees = p.cluster_degrees(g);
    let mut degree_histogram = BTreeMap::new();
    for &d in &degrees {
        *degree_histogram.entry(d).or_insert(0) += 1;
    }
    let max_cluster_degree = degrees.iter().copied().max().unwrap_or(0);
    let diameter_bound = 100 * p.alpha;
    Ok(PartitionReport {
        clusters: p.len(),
        max_diameter,
        max_radius,
        max_cluster_degree,
        degree_histogram,
        diameter_bound,
        degree_bound,
        ok: max_diameter as u64 <= diameter_bound && max_cluster_degree as f64 <= degree_bound,
    })
}

/// Checks that every node other than a centre has a neighbour in its cluster
/// one time unit closer to the centre, so shortest-path replay stays inside
/// the cluster. Returns the offending node if any.
pub fn path_replay_violation(g: &Graph, p: &Partition) -> Option<NodeId> {
    let n = g.n();
    let mut arrival = vec![u64::MAX; n];
    for (k, members) in p.clusters.iter().enumerate() {
        let c = p.centers[k];
        let sub = g.induced_by_indices(members);
        let local = members.binary_search(&c).ok()?;
        for (i, d) in sub.bfs(local).into_iter().enumerate() {
            if d != crate::graph::UNREACHABLE {
                arrival[members[i]] = p.delays[c] + d as u64;
            }
        }
    }
    for v in 0..n {
        let c = p.center_of(v);
        if v == c {
            continue;
        }
        let ok = arrival[v] != u64::MAX
            && g.neighbors(v).iter().any(|&w| p.center_of(w) == c && arrival[w] + 1 == arrival[v]);
        if !ok {
            return Some(g.id(v));
        }
    }
    None
}
