//! Full automorphism groups, canonical labeling, and graph isomorphism
//! via equitable-partition refinement with backtracking.
//!
//! The search individualizes vertices of a target cell, refines, and
//! walks the resulting tree depth-first.  Leaves are discrete
//! partitions, i.e. relabelings; collisions between leaves with equal
//! relabeled edge lists yield automorphisms, and the least leaf under
//! (invariant-vector, edge-list) order is the canonical labeling.  Node
//! invariants are hashes of the refinement trace, so they depend only
//! on partition structure, never on vertex names.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::Perm;
use sha2::{Digest, Sha256};
use std::collections::VecDeque;

/// Exhaustive search is refused above this many vertices.
pub const MAX_SEARCH_ORDER: usize = 200;

/// Ordered sequence of disjoint cells covering the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    pub cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> Self {
        let cells = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
        OrderedPartition { cells }
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    fn validate(&self, order: usize) -> Result<()> {
        let mut seen = vec![false; order];
        for cell in &self.cells {
            if cell.is_empty() {
                return Err(Error::input("empty cell"));
            }
            for &v in cell {
                if v >= order {
                    return Err(Error::input(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::input(format!("vertex {v} in two cells")));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::input("cells do not cover the vertex set"));
        }
        Ok(())
    }
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv(h: &mut u64, x: u64) {
    *h ^= x;
    *h = h.wrapping_mul(FNV_PRIME);
}

/// Refines `cells` to the coarsest equitable partition reachable by
/// splitting against the splitter sets in `queue`; returns a hash of
/// the split trace.  Cells keep their vertices sorted, fragments of a
/// split replace their cell in place ordered by descending neighbor
/// count, and the trace records only positions, counts, and sizes, so
/// the hash is invariant under vertex relabeling.
fn refine_cells(g: &Graph, cells: &mut Vec<Vec<usize>>, mut queue: VecDeque<Vec<usize>>) -> u64 {
    let mut hash = FNV_OFFSET;
    let mut in_w = vec![false; g.order()];
    while let Some(w) = queue.pop_front() {
        for &x in &w {
            in_w[x] = true;
        }
        let mut idx = 0;
        while idx < cells.len() {
            if cells[idx].len() < 2 {
                idx += 1;
                continue;
            }
            let counts: Vec<usize> = cells[idx]
                .iter()
                .map(|&v| g.neighbors(v).iter().filter(|&&u| in_w[u]).count())
                .collect();
            let first = counts[0];
            if counts.iter().all(|&c| c == first) {
                idx += 1;
                continue;
            }
            // Bucket by count, descending count order.
            let mut buckets: Vec<(usize, Vec<usize>)> = Vec::new();
            for (&v, &c) in cells[idx].iter().zip(&counts) {
                match buckets.iter_mut().find(|(bc, _)| *bc == c) {
                    Some((_, b)) => b.push(v),
                    None => buckets.push((c, vec![v])),
                }
            }
            buckets.sort_by(|a, b| b.0.cmp(&a.0));
            fnv(&mut hash, idx as u64);
            for (c, b) in &buckets {
                fnv(&mut hash, *c as u64);
                fnv(&mut hash, b.len() as u64);
            }
            let fragments: Vec<Vec<usize>> = buckets.into_iter().map(|(_, b)| b).collect();
            let count = fragments.len();
            for f in &fragments {
                queue.push_back(f.clone());
            }
            cells.splice(idx..idx + 1, fragments);
            idx += count;
        }
        for &x in &w {
            in_w[x] = false;
        }
    }
    for c in cells.iter() {
        fnv(&mut hash, c.len() as u64);
    }
    hash
}

/// Coarsest equitable refinement of a partition: every vertex of a cell
/// has the same number of neighbors in every cell.  Idempotent.
pub fn refine(g: &Graph, partition: &OrderedPartition) -> Result<OrderedPartition> {
    partition.validate(g.order())?;
    let mut cells: Vec<Vec<usize>> = partition
        .cells
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    let queue: VecDeque<Vec<usize>> = cells.iter().cloned().collect();
    refine_cells(g, &mut cells, queue);
    Ok(OrderedPartition { cells })
}

#[derive(Clone)]
struct Leaf {
    inv: Vec<u64>,
    /// vertex -> canonical position
    perm: Perm,
    edges: Vec<(usize, usize)>,
}

struct Searcher<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    auts: Vec<Perm>,
}

impl<'g> Searcher<'g> {
    fn run(g: &'g Graph) -> (Vec<Perm>, Leaf) {
        let mut cells = OrderedPartition::unit(g.order()).cells;
        let queue: VecDeque<Vec<usize>> = cells.iter().cloned().collect();
        let h0 = refine_cells(g, &mut cells, queue);
        let mut s = Searcher { g, first: None, best: None, auts: Vec::new() };
        let mut inv = vec![h0];
        let mut seq = Vec::new();
        s.node(cells, &mut inv, &mut seq);
        let best = s.best.take().expect("search visits at least one leaf");
        (s.auts, best)
    }

    fn node(&mut self, cells: Vec<Vec<usize>>, inv: &mut Vec<u64>, seq: &mut Vec<usize>) {
        if cells.iter().all(|c| c.len() == 1) {
            self.leaf(&cells, inv);
            return;
        }
        // Target: first cell of maximum size; candidates ascending.
        let max = cells.iter().map(|c| c.len()).max().unwrap();
        let t = cells.iter().position(|c| c.len() == max).unwrap();
        let candidates = cells[t].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.in_explored_orbit(v, &explored, seq) {
                continue;
            }
            let mut child = cells.clone();
            let rest: Vec<usize> = child[t].iter().copied().filter(|&u| u != v).collect();
            child[t] = vec![v];
            child.insert(t + 1, rest);
            let h = refine_cells(self.g, &mut child, VecDeque::from([vec![v]]));
            inv.push(h);
            seq.push(v);
            if self.should_explore(inv) {
                self.node(child, inv, seq);
            }
            inv.pop();
            seq.pop();
            explored.push(v);
        }
    }

    /// Keep a subtree if it can still reach the first leaf's invariant
    /// vector (automorphism discovery) or improve on the best leaf
    /// (canonical labeling).
    fn should_explore(&self, inv: &[u64]) -> bool {
        let first = match &self.first {
            None => return true,
            Some(f) => f,
        };
        if first.inv.len() >= inv.len() && first.inv[..inv.len()] == *inv {
            return true;
        }
        let best = self.best.as_ref().unwrap();
        for (a, b) in inv.iter().zip(&best.inv) {
            if a < b {
                return true;
            }
            if a > b {
                return false;
            }
        }
        // Equal prefix: strictly shorter can still beat the best;
        // equal-or-longer can only extend past it.
        inv.len() < best.inv.len()
    }

    fn leaf(&mut self, cells: &[Vec<usize>], inv: &Vec<u64>) {
        let n = self.g.order();
        let mut img = vec![0usize; n];
        for (pos, c) in cells.iter().enumerate() {
            img[c[0]] = pos;
        }
        let perm = Perm::from_images(img).expect("discrete partition is a bijection");
        let mut edges: Vec<(usize, usize)> = self
            .g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm.apply(u), perm.apply(v));
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();

        if self.first.is_none() {
            let leaf = Leaf { inv: inv.clone(), perm, edges };
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return;
        }

        let first = self.first.clone().unwrap();
        let best = self.best.clone().unwrap();
        Self::record_collision(self.g, &mut self.auts, &first, inv, &edges, &perm);
        if best.inv != first.inv || best.edges != first.edges {
            Self::record_collision(self.g, &mut self.auts, &best, inv, &edges, &perm);
        }

        let better = match inv.cmp(&best.inv) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => edges < best.edges,
            std::cmp::Ordering::Greater => false,
        };
        if better {
            self.best = Some(Leaf { inv: inv.clone(), perm, edges });
        }
    }

    fn record_collision(
        g: &Graph,
        auts: &mut Vec<Perm>,
        known: &Leaf,
        inv: &[u64],
        edges: &[(usize, usize)],
        perm: &Perm,
    ) {
        if known.inv[..] == *inv && known.edges[..] == *edges {
            let a = &known.perm * &perm.inverse();
            if !a.is_identity() && !auts.contains(&a) {
                debug_assert!(g.is_automorphism(&a));
                auts.push(a);
            }
        }
    }

    /// True when `v` is reachable from an already-explored candidate
    /// under the discovered automorphisms that fix the current
    /// individualization sequence pointwise.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], seq: &[usize]) -> bool {
        if explored.is_empty() || self.auts.is_empty() {
            return false;
        }
        let mut gens: Vec<Perm> = self
            .auts
            .iter()
            .filter(|a| seq.iter().all(|&s| a.apply(s) == s))
            .cloned()
            .collect();
        if gens.is_empty() {
            return false;
        }
        let inverses: Vec<Perm> = gens.iter().map(|a| a.inverse()).collect();
        gens.extend(inverses);
        let mut seen = vec![false; self.g.order()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &e in explored {
            seen[e] = true;
            queue.push_back(e);
        }
        while let Some(x) = queue.pop_front() {
            if x == v {
                return true;
            }
            for a in &gens {
                let y = a.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen[v]
    }
}

fn check_scale(g: &Graph) -> Result<()> {
    if g.order() > MAX_SEARCH_ORDER {
        return Err(Error::ScaleExceeded { order: g.order(), limit: MAX_SEARCH_ORDER });
    }
    Ok(())
}

/// Generators of the full automorphism group.
pub fn automorphism_group(g: &Graph) -> Result<PermGroup> {
    check_scale(g)?;
    let (gens, _) = Searcher::run(g);
    for a in &gens {
        if !g.is_automorphism(a) {
            return Err(Error::Inconsistency("search produced a non-automorphism".into()));
        }
    }
    PermGroup::schreier_sims(g.order(), &gens)
}

/// Canonical relabeling, canonical edge list, and certificate.  Two
/// graphs are isomorphic exactly when their certificates agree (at the
/// supported scale).
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// vertex -> canonical position
    pub relabeling: Perm,
    pub edges: Vec<(usize, usize)>,
    /// Lowercase-hex SHA-256 of the canonical order and edge list.
    pub certificate: String,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    check_scale(g)?;
    let (_, best) = Searcher::run(g);
    let mut hasher = Sha256::new();
    hasher.update((g.order() as u64).to_le_bytes());
    for &(u, v) in &best.edges {
        hasher.update((u as u64).to_le_bytes());
        hasher.update((v as u64).to_le_bytes());
    }
    let certificate = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect::<String>();
    Ok(CanonicalForm { relabeling: best.perm, edges: best.edges, certificate })
}

/// Explicit isomorphism g1 -> g2 if one exists; `None` otherwise.  The
/// returned mapping is re-verified edge by edge before returning.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Perm>> {
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return Ok(None);
    }
    let mut d1: Vec<usize> = (0..g1.order()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.order()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    let c1 = canonical_form(g1)?;
    let c2 = canonical_form(g2)?;
    if c1.certificate != c2.certificate {
        return Ok(None);
    }
    let mapping = &c1.relabeling * &c2.relabeling.inverse();
    for (u, v) in g1.edges() {
        if !g2.has_edge(mapping.apply(u), mapping.apply(v)) {
            return Err(Error::Inconsistency(
                "certificates matched but the mapping is not an isomorphism".into(),
            ));
        }
    }
    Ok(Some(mapping))
}
