//! Immutable undirected simple graphs with cached distance structure,
//! geodesic/arc enumeration, local graphs, quotients, and antipodality.
//!
//! Vertices are dense 0-based integers.  Semantic names (subsets, field
//! elements, cosets) live in an optional label table so that group
//! actions stay plain integer permutations.

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::VecDeque;
use std::sync::OnceLock;

/// Distance sentinel for "unreachable".
pub const INF: u32 = u32::MAX;

pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    dist: OnceLock<DistanceTable>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            adj: self.adj.clone(),
            labels: self.labels.clone(),
            dist: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.order(), self.size())
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.  Edges may be
    /// given in either orientation; duplicates and loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u},{v}) out of range for order {n}")));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input("duplicate edge"));
            }
        }
        Ok(Graph { adj, labels: None, dist: OnceLock::new() })
    }

    /// Attaches a label table (one name per vertex).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.order() {
            return Err(Error::input("label table length differs from order"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u,v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Valency if the graph is regular.
    pub fn regular_valency(&self) -> Option<usize> {
        let n = self.order();
        if n == 0 {
            return None;
        }
        let d = self.degree(0);
        if (1..n).all(|v| self.degree(v) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// True if `p` maps edges to edges and non-edges to non-edges.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        if p.degree() != self.order() {
            return false;
        }
        self.adj.iter().enumerate().all(|(u, list)| {
            let pu = p.apply(u);
            list.iter().all(|&v| self.has_edge(pu, p.apply(v)))
        })
    }

    /// Complement graph on the same vertex set (labels preserved).
    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u != v && !self.has_edge(u, v) {
                    adj[u].push(v);
                }
            }
        }
        Graph { adj, labels: self.labels.clone(), dist: OnceLock::new() }
    }

    /// Breadth-first distances from one source; `INF` marks unreachable
    /// vertices.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<u32>> {
        if source >= self.order() {
            return Err(Error::input(format!(
                "source {source} out of range for order {}",
                self.order()
            )));
        }
        let mut dist = vec![INF; self.order()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// All-pairs distance table, girth, and diameter; computed once and
    /// cached.
    pub fn distance_table(&self) -> &DistanceTable {
        self.dist.get_or_init(|| DistanceTable::build(self))
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.distance_table().diameter.is_some() || self.order() == 1
    }

    /// Girth, diameter, and valency (if regular).  Fails on the empty
    /// or disconnected graph, whose diameter is undefined.
    pub fn metrics(&self) -> Result<Metrics> {
        if self.order() == 0 {
            return Err(Error::input("metrics of the empty graph"));
        }
        let table = self.distance_table();
        let diameter = table
            .diameter
            .ok_or_else(|| Error::Disconnected("diameter undefined".into()))?;
        Ok(Metrics {
            girth: table.girth,
            diameter,
            valency: self.regular_valency(),
        })
    }

    /// All s-arcs: walks (v_0,…,v_s) with consecutive vertices adjacent
    /// and no immediate backtracking.  Lexicographic DFS order.
    pub fn enumerate_s_arcs(&self, s: usize) -> Result<Vec<Vec<usize>>> {
        if s == 0 {
            return Err(Error::input("s must be at least 1"));
        }
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(s + 1);
        for v0 in 0..self.order() {
            path.push(v0);
            self.extend_arcs(s, &mut path, &mut out);
            path.pop();
        }
        Ok(out)
    }

    fn extend_arcs(&self, s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() == s + 1 {
            out.push(path.clone());
            return;
        }
        let tip = *path.last().unwrap();
        let forbidden = if path.len() >= 2 { Some(path[path.len() - 2]) } else { None };
        for &w in &self.adj[tip] {
            if Some(w) != forbidden {
                path.push(w);
                self.extend_arcs(s, path, out);
                path.pop();
            }
        }
    }

    /// All s-geodesics: paths (v_0,…,v_s) with d(v_0,v_s) = s.  Returns
    /// an empty collection when s exceeds every eccentricity.
    pub fn enumerate_s_geodesics(&self, s: usize) -> Result<Vec<Vec<usize>>> {
        if s == 0 {
            return Err(Error::input("s must be at least 1"));
        }
        let table = self.distance_table();
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(s + 1);
        for v0 in 0..self.order() {
            path.push(v0);
            self.extend_geodesics(table.row(v0), s, &mut path, &mut out);
            path.pop();
        }
        Ok(out)
    }

    fn extend_geodesics(
        &self,
        dist0: &[u32],
        s: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == s + 1 {
            out.push(path.clone());
            return;
        }
        let next_d = path.len() as u32;
        let tip = *path.last().unwrap();
        for &w in &self.adj[tip] {
            if dist0[w] == next_d {
                path.push(w);
                self.extend_geodesics(dist0, s, path, out);
                path.pop();
            }
        }
    }

    /// Induced subgraph on the neighborhood of `v`, relabeled 0..deg(v),
    /// with labels pointing back at the original vertices.
    pub fn local_graph(&self, v: usize) -> Result<Graph> {
        if v >= self.order() {
            return Err(Error::input(format!("vertex {v} out of range")));
        }
        let nbrs = self.adj[v].clone();
        let mut edges = Vec::new();
        for (i, &a) in nbrs.iter().enumerate() {
            for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        let labels = nbrs
            .iter()
            .map(|&u| match self.label(u) {
                Some(s) => s.to_string(),
                None => u.to_string(),
            })
            .collect();
        Graph::from_edges(nbrs.len(), &edges)?.with_labels(labels)
    }

    /// k-distance graph: same vertices, u ~ v iff d(u,v) = k.
    pub fn distance_graph(&self, k: u32) -> Result<Graph> {
        let m = self.metrics()?;
        if k < 1 || k > m.diameter {
            return Err(Error::input(format!(
                "k = {k} outside 1..=diameter ({})",
                m.diameter
            )));
        }
        let table = self.distance_table();
        let n = self.order();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if table.distance(u, v) == k {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    /// If the diameter-distance graph is a disjoint union of cliques,
    /// returns that clique partition (the antipodal fibres); `None`
    /// otherwise, and also `None` when the diameter is below 2.
    pub fn antipodal_fibres(&self) -> Result<Option<VertexPartition>> {
        let m = self.metrics()?;
        if m.diameter < 2 {
            return Ok(None);
        }
        let gd = self.distance_graph(m.diameter)?;
        // Components of Γ_d, each of which must be a clique.
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = cells.len();
            let mut cell = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in gd.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        cell.push(v);
                        queue.push_back(v);
                    }
                }
            }
            cell.sort_unstable();
            cells.push(cell);
        }
        for cell in &cells {
            for (i, &u) in cell.iter().enumerate() {
                for &v in cell.iter().skip(i + 1) {
                    if !gd.has_edge(u, v) {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(VertexPartition::new(n, cells)?))
    }

    /// Quotient by a partition: cells are adjacent iff some cross edge
    /// exists.  The boolean reports whether the quotient is a cover:
    /// every vertex of a cell has exactly one neighbor in each adjacent
    /// cell.
    pub fn quotient_graph(&self, partition: &VertexPartition) -> Result<(Graph, bool)> {
        if partition.order() != self.order() {
            return Err(Error::input("partition order differs from graph order"));
        }
        let k = partition.cell_count();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let any = partition.cell(i).iter().any(|&u| {
                    partition.cell(j).iter().any(|&v| self.has_edge(u, v))
                });
                if any {
                    edges.push((i, j));
                }
            }
        }
        let quotient = Graph::from_edges(k, &edges)?;
        let mut is_cover = true;
        'outer: for &(i, j) in &edges {
            for (a, b) in [(i, j), (j, i)] {
                for &u in partition.cell(a) {
                    let cnt = partition
                        .cell(b)
                        .iter()
                        .filter(|&&v| self.has_edge(u, v))
                        .count();
                    if cnt != 1 {
                        is_cover = false;
                        break 'outer;
                    }
                }
            }
        }
        Ok((quotient, is_cover))
    }

    /// Serializes to the edge-list text format: comment lines, the
    /// vertex count, then one `u v` line per edge in lexicographic
    /// order.
    pub fn to_edge_list(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.order().to_string());
        out.push('\n');
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format.  `#` starts a comment line;
    /// the first data line is the vertex count; each following line is
    /// `u v` with u < v.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let data = raw.trim();
            if data.is_empty() || data.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = data.split_whitespace().collect();
            match n {
                None => {
                    if fields.len() != 1 {
                        return Err(Error::Parse {
                            line,
                            msg: "expected a single vertex count".into(),
                        });
                    }
                    n = Some(fields[0].parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid vertex count '{}'", fields[0]),
                    })?);
                }
                Some(order) => {
                    if fields.len() != 2 {
                        return Err(Error::Parse {
                            line,
                            msg: "expected 'u v'".into(),
                        });
                    }
                    let u: usize = fields[0].parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid vertex '{}'", fields[0]),
                    })?;
                    let v: usize = fields[1].parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid vertex '{}'", fields[1]),
                    })?;
                    if u >= v {
                        return Err(Error::Parse {
                            line,
                            msg: format!("edge ({u},{v}) must satisfy u < v"),
                        });
                    }
                    if v >= order {
                        return Err(Error::Parse {
                            line,
                            msg: format!("vertex {v} out of range for order {order}"),
                        });
                    }
                    edges.push((u, v));
                }
            }
        }
        let order = n.ok_or(Error::Parse { line: 0, msg: "missing vertex count".into() })?;
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != edges.len() {
            return Err(Error::Parse { line: 0, msg: "duplicate edge".into() });
        }
        Graph::from_edges(order, &edges)
    }
}

/// Girth, diameter, and valency of a connected graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metrics {
    /// `None` encodes infinite girth (no cycle).
    pub girth: Option<u32>,
    pub diameter: u32,
    /// `None` when the graph is not regular.
    pub valency: Option<usize>,
}

/// All-pairs BFS distances plus derived girth and diameter.
pub struct DistanceTable {
    dist: Vec<Vec<u32>>,
    /// `None` = acyclic.
    pub girth: Option<u32>,
    /// `None` = disconnected.
    pub diameter: Option<u32>,
}

impl DistanceTable {
    fn build(g: &Graph) -> DistanceTable {
        let n = g.order();
        let mut dist = Vec::with_capacity(n);
        let mut girth: Option<u32> = None;
        let mut diameter: Option<u32> = Some(0);
        for src in 0..n {
            // BFS with parent tracking; a non-tree edge closes a cycle
            // of length d(u) + d(w) + 1 through the root.  The minimum
            // over all roots is the girth.
            let mut d = vec![INF; n];
            let mut parent = vec![usize::MAX; n];
            d[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if d[w] == INF {
                        d[w] = d[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if w != parent[u] {
                        let cyc = d[u] + d[w] + 1;
                        if girth.map_or(true, |b| cyc < b) {
                            girth = Some(cyc);
                        }
                    }
                }
            }
            if diameter.is_some() {
                match d.iter().max() {
                    Some(&m) if m != INF => {
                        if m > diameter.unwrap() {
                            diameter = Some(m);
                        }
                    }
                    _ => diameter = None,
                }
            }
            dist.push(d);
        }
        if n == 0 {
            diameter = None;
        }
        DistanceTable { dist, girth, diameter }
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.dist[u][v]
    }

    pub fn row(&self, v: usize) -> &[u32] {
        &self.dist[v]
    }

    /// Γ_i(v): vertices at distance exactly `i` from `v`.
    pub fn sphere(&self, v: usize, i: u32) -> Vec<usize> {
        self.dist[v]
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == i)
            .map(|(u, _)| u)
            .collect()
    }
}

/// Disjoint cells covering the whole vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(order: usize, cells: Vec<Vec<usize>>) -> Result<VertexPartition> {
        let mut cell_of = vec![usize::MAX; order];
        let mut covered = 0usize;
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::input("empty cell"));
            }
            for &v in cell {
                if v >= order {
                    return Err(Error::input(format!("vertex {v} out of range")));
                }
                if cell_of[v] != usize::MAX {
                    return Err(Error::input(format!("vertex {v} in two cells")));
                }
                cell_of[v] = i;
                covered += 1;
            }
        }
        if covered != order {
            return Err(Error::input("cells do not cover the vertex set"));
        }
        Ok(VertexPartition { cells, cell_of })
    }

    pub fn singletons(order: usize) -> VertexPartition {
        VertexPartition {
            cells: (0..order).map(|v| vec![v]).collect(),
            cell_of: (0..order).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.cell_of.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    /// All cells share one size: that size.
    pub fn uniform_cell_size(&self) -> Option<usize> {
        let s = self.cells.first()?.len();
        if self.cells.iter().all(|c| c.len() == s) {
            Some(s)
        } else {
            None
        }
    }
}
