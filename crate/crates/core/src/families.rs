//! Deterministic constructors for the graph families under study, a loader
//! for the two sporadic cubic graphs shipped as data files, and the textual
//! `FamilySpec` grammar the command-line front end uses to name graphs.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::field_make;
use crate::graph::Graph;
use crate::psl::taylor_construction;

/// k-element subsets of {1..n} in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=n).combinations(k).collect()
}

fn subset_label(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(|x| x.to_string()).join(","))
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    // Both sorted ascending.
    let mut i = 0;
    let mut j = 0;
    let mut count = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Johnson graph J(n,k): k-subsets of {1..n}, adjacent when the
/// intersection has size k-1.  Valency k(n-k), diameter k.
pub fn johnson(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k < 1 || 2 * k > n {
        return Err(Error::input(format!(
            "johnson needs n ≥ 3 and 1 ≤ k ≤ n/2, got n={n}, k={k}"
        )));
    }
    let verts = k_subsets(n, k);
    let mut edges = Vec::new();
    for (i, u) in verts.iter().enumerate() {
        for (j, v) in verts.iter().enumerate().skip(i + 1) {
            if intersection_size(u, v) == k - 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(verts.len(), &edges)?
        .with_labels(verts.iter().map(|s| subset_label(s)).collect())
}

/// Tuples of Z_n^d in mixed-radix (lexicographic) order.
pub fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0..d).map(|_| 0..n).multi_cartesian_product().collect()
}

/// Hamming graph H(d,n): words of length d over an n-letter alphabet,
/// adjacent when they differ in exactly one coordinate.  Valency d(n-1).
pub fn hamming(d: usize, n: usize) -> Result<Graph> {
    if d < 1 || n < 2 {
        return Err(Error::input(format!(
            "hamming needs d ≥ 1 and n ≥ 2, got d={d}, n={n}"
        )));
    }
    let verts = tuples(d, n);
    let mut edges = Vec::new();
    for (i, u) in verts.iter().enumerate() {
        for (j, v) in verts.iter().enumerate().skip(i + 1) {
            let diff = u.iter().zip(v).filter(|(a, b)| a != b).count();
            if diff == 1 {
                edges.push((i, j));
            }
        }
    }
    let labels = verts
        .iter()
        .map(|t| format!("({})", t.iter().map(|x| x.to_string()).join(",")))
        .collect();
    Graph::from_edges(verts.len(), &edges)?.with_labels(labels)
}

/// Odd graph on k-subsets of {1..2k+1}, adjacent when disjoint.  Valency
/// k+1, diameter k; k=2 gives the Petersen graph.
pub fn odd(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::input("odd graph needs k ≥ 1"));
    }
    let verts = k_subsets(2 * k + 1, k);
    let mut edges = Vec::new();
    for (i, u) in verts.iter().enumerate() {
        for (j, v) in verts.iter().enumerate().skip(i + 1) {
            if intersection_size(u, v) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(verts.len(), &edges)?
        .with_labels(verts.iter().map(|s| subset_label(s)).collect())
}

/// Paley graph on GF(p^e) for p^e ≡ 1 (mod 4): x ~ y iff x-y is a nonzero
/// square.  The congruence makes -1 a square, so adjacency is symmetric.
pub fn paley(p: usize, e: usize) -> Result<Graph> {
    let field = field_make(p, e, None)?;
    let q = field.q();
    if q % 4 != 1 {
        return Err(Error::input(format!(
            "paley graph needs q ≡ 1 (mod 4); q={q} would give a directed graph"
        )));
    }
    let squares: std::collections::HashSet<usize> = field.squares().into_iter().collect();
    let mut edges = Vec::new();
    for u in 0..q {
        for v in u + 1..q {
            if squares.contains(&field.sub(v, u)) {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..q).map(|a| field.element_string(a)).collect();
    Graph::from_edges(q, &edges)?.with_labels(labels)
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::input("complete graph needs n ≥ 1"));
    }
    let edges: Vec<_> = (0..n).tuple_combinations().collect();
    Graph::from_edges(n, &edges)
}

/// Cycle C_n.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("cycle needs n ≥ 3"));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).chain([(0, n - 1)]).collect();
    Graph::from_edges(n, &edges)
}

/// Complete bipartite graph K_{m,n}.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::input("complete bipartite graph needs m, n ≥ 1"));
    }
    let edges: Vec<_> = (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))).collect();
    Graph::from_edges(m + n, &edges)
}

/// Complete multipartite graph with m parts of size b; vertices are grouped
/// in consecutive blocks and adjacent exactly across different parts.
pub fn complete_multipartite(m: usize, b: usize) -> Result<Graph> {
    if m < 2 || b < 1 {
        return Err(Error::input(format!(
            "complete multipartite graph needs m ≥ 2 and b ≥ 1, got m={m}, b={b}"
        )));
    }
    let n = m * b;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if u / b != v / b {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Circulant graph on Z_n with the given connection set, which must be
/// nonempty, inverse-closed (s in C iff n-s in C) and within 1..n.
pub fn circulant(n: usize, connection: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("circulant needs n ≥ 3"));
    }
    let set: std::collections::BTreeSet<usize> = connection.iter().copied().collect();
    if set.is_empty() || set.iter().any(|&s| s == 0 || s >= n) {
        return Err(Error::input("connection set must lie within 1..n"));
    }
    if set.iter().any(|&s| !set.contains(&(n - s))) {
        return Err(Error::input("connection set must be inverse-closed"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if set.contains(&(v - u)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Point-line incidence graph of the projective plane PG(2,q) for
/// q in {2,3,4,5}: points are 1-dimensional subspaces of F_q³, lines are
/// 2-dimensional subspaces enumerated by their normal vectors, and a point
/// lies on a line when the dot product vanishes.  Bipartite with
/// 2(q²+q+1) vertices, valency q+1, girth 6, diameter 3.
pub fn pg2_incidence(q: usize) -> Result<Graph> {
    if !matches!(q, 2 | 3 | 4 | 5) {
        return Err(Error::input(format!(
            "projective plane incidence supports q in {{2,3,4,5}}, got {q}"
        )));
    }
    let (p, e) = match q {
        4 => (2, 2),
        _ => (q, 1),
    };
    let field = field_make(p, e, None)?;
    // Canonical representatives: scale so the first nonzero coordinate is 1.
    let mut reps: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                let Some(&lead) = v.iter().find(|&&x| x != 0) else {
                    continue;
                };
                if lead == 1 {
                    reps.push(v);
                }
            }
        }
    }
    let n = q * q + q + 1;
    debug_assert_eq!(reps.len(), n);
    let dot = |u: &[usize; 3], v: &[usize; 3]| -> usize {
        let mut acc = 0;
        for i in 0..3 {
            acc = field.add(acc, field.mul(u[i], v[i]));
        }
        acc
    };
    let mut edges = Vec::new();
    for (i, pt) in reps.iter().enumerate() {
        for (j, ln) in reps.iter().enumerate() {
            if dot(pt, ln) == 0 {
                edges.push((i, n + j));
            }
        }
    }
    let coord = |v: &[usize; 3]| {
        v.iter().map(|&x| field.element_string(x)).join(":")
    };
    let labels = reps
        .iter()
        .map(|v| format!("[{}]", coord(v)))
        .chain(reps.iter().map(|v| format!("({})", coord(v))))
        .collect();
    Graph::from_edges(2 * n, &edges)?.with_labels(labels)
}

/// Invariants enforced for data files loaded under a reserved name:
/// (order, valency, girth, diameter).
const RESERVED_STEMS: [(&str, usize, usize, u32, u32); 2] =
    [("foster", 90, 3, 10, 8), ("biggs-smith", 102, 3, 9, 7)];

/// A bare file name that does not exist in the current directory falls
/// back to the toolkit's `data/` directory, so `file:foster.edges`
/// works from the repository root; paths with a directory component
/// are used verbatim.
fn resolve_data_path(path: &str) -> PathBuf {
    let p = Path::new(path);
    if !p.exists() && p.parent().is_some_and(|d| d.as_os_str().is_empty()) {
        let fallback = Path::new("data").join(p);
        if fallback.exists() {
            return fallback;
        }
    }
    p.to_path_buf()
}

/// Load a graph from an edge-list file.  Files whose stem matches a known
/// cubic graph shipped with the toolkit are cross-checked against its
/// published order, valency, girth and diameter, and refused on mismatch.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let graph = Graph::from_edge_list(&text)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    if let Some(&(name, order, valency, girth, diameter)) =
        RESERVED_STEMS.iter().find(|&&(name, ..)| name == stem)
    {
        let m = graph.metrics()?;
        let ok = graph.order() == order
            && m.valency == Some(valency)
            && m.girth == Some(girth)
            && m.diameter == diameter;
        if !ok {
            return Err(Error::Inconsistency(format!(
                "file {} does not match the published invariants of the {name} graph \
                 (order {order}, valency {valency}, girth {girth}, diameter {diameter})",
                path.display()
            )));
        }
    }
    Ok(graph)
}

/// Textual name of a constructible graph, e.g. `johnson:6,3`, `paley:3^2`,
/// `kmb:3,2`, `file:foster.edges`, or `complement(paley:13)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Complete { n: usize },
    Cycle { n: usize },
    CompleteBipartite { m: usize, n: usize },
    CompleteMultipartite { m: usize, b: usize },
    Johnson { n: usize, k: usize },
    Hamming { d: usize, n: usize },
    Odd { k: usize },
    Paley { p: usize, e: usize },
    Taylor { p: usize },
    Pg2 { q: usize },
    File { path: String },
    Complement(Box<FamilySpec>),
}

fn parse_ints(tag: &str, args: &str, want: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = args.split(',').collect();
    if parts.len() != want {
        return Err(Error::input(format!(
            "{tag} takes {want} integer parameter(s), got {args:?}"
        )));
    }
    parts
        .iter()
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("bad integer {s:?} in {tag} spec")))
        })
        .collect()
}

/// Split q into (p, e) with p prime, or report that q is not a prime power.
fn prime_power(q: usize) -> Result<(usize, usize)> {
    if q < 2 {
        return Err(Error::input(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q ≥ 2 has a least factor");
    let mut e = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::input(format!("{q} is not a prime power")));
    }
    Ok((p, e))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("complement(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::input("complement(...) is missing its closing parenthesis"))?;
            return Ok(FamilySpec::Complement(Box::new(inner.parse()?)));
        }
        let (tag, args) = s
            .split_once(':')
            .ok_or_else(|| Error::input(format!("family spec must look like TAG:ARGS, got {s:?}")))?;
        match tag {
            "complete" => {
                let v = parse_ints(tag, args, 1)?;
                Ok(FamilySpec::Complete { n: v[0] })
            }
            "cycle" => {
                let v = parse_ints(tag, args, 1)?;
                Ok(FamilySpec::Cycle { n: v[0] })
            }
            "complete-bipartite" => {
                let v = parse_ints(tag, args, 2)?;
                Ok(FamilySpec::CompleteBipartite { m: v[0], n: v[1] })
            }
            "kmb" | "complete-multipartite" => {
                let v = parse_ints(tag, args, 2)?;
                Ok(FamilySpec::CompleteMultipartite { m: v[0], b: v[1] })
            }
            "johnson" => {
                let v = parse_ints(tag, args, 2)?;
                Ok(FamilySpec::Johnson { n: v[0], k: v[1] })
            }
            "hamming" => {
                let v = parse_ints(tag, args, 2)?;
                Ok(FamilySpec::Hamming { d: v[0], n: v[1] })
            }
            "odd" => {
                let v = parse_ints(tag, args, 1)?;
                Ok(FamilySpec::Odd { k: v[0] })
            }
            "paley" => {
                let (p, e) = match args.split_once('^') {
                    Some((p, e)) => {
                        let p = parse_ints(tag, p, 1)?[0];
                        let e = parse_ints(tag, e, 1)?[0];
                        (p, e)
                    }
                    None => prime_power(parse_ints(tag, args, 1)?[0])?,
                };
                Ok(FamilySpec::Paley { p, e })
            }
            "taylor" => {
                let v = parse_ints(tag, args, 1)?;
                Ok(FamilySpec::Taylor { p: v[0] })
            }
            "pg2" => {
                let v = parse_ints(tag, args, 1)?;
                Ok(FamilySpec::Pg2 { q: v[0] })
            }
            "file" => {
                if args.is_empty() {
                    return Err(Error::input("file spec needs a path"));
                }
                Ok(FamilySpec::File { path: args.to_string() })
            }
            _ => Err(Error::input(format!(
                "unknown family {tag:?}; known: complete, cycle, complete-bipartite, \
                 kmb, johnson, hamming, odd, paley, taylor, pg2, file"
            ))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::CompleteBipartite { m, n } => write!(f, "complete-bipartite:{m},{n}"),
            FamilySpec::CompleteMultipartite { m, b } => write!(f, "kmb:{m},{b}"),
            FamilySpec::Johnson { n, k } => write!(f, "johnson:{n},{k}"),
            FamilySpec::Hamming { d, n } => write!(f, "hamming:{d},{n}"),
            FamilySpec::Odd { k } => write!(f, "odd:{k}"),
            FamilySpec::Paley { p, e: 1 } => write!(f, "paley:{p}"),
            FamilySpec::Paley { p, e } => write!(f, "paley:{p}^{e}"),
            FamilySpec::Taylor { p } => write!(f, "taylor:{p}"),
            FamilySpec::Pg2 { q } => write!(f, "pg2:{q}"),
            FamilySpec::File { path } => write!(f, "file:{path}"),
            FamilySpec::Complement(inner) => write!(f, "complement({inner})"),
        }
    }
}

impl FamilySpec {
    /// Construct the named graph.  `alt_g` selects the alternative
    /// connecting involution bⁱ·g in the double-cover construction and is
    /// ignored by every other family.
    pub fn build_with(&self, alt_g: usize) -> Result<Graph> {
        match self {
            FamilySpec::Complete { n } => complete(*n),
            FamilySpec::Cycle { n } => cycle(*n),
            FamilySpec::CompleteBipartite { m, n } => complete_bipartite(*m, *n),
            FamilySpec::CompleteMultipartite { m, b } => complete_multipartite(*m, *b),
            FamilySpec::Johnson { n, k } => johnson(*n, *k),
            FamilySpec::Hamming { d, n } => hamming(*d, *n),
            FamilySpec::Odd { k } => odd(*k),
            FamilySpec::Paley { p, e } => paley(*p, *e),
            FamilySpec::Taylor { p } => taylor_construction(*p, alt_g),
            FamilySpec::Pg2 { q } => pg2_incidence(*q),
            FamilySpec::File { path } => load_graph(&resolve_data_path(path)),
            FamilySpec::Complement(inner) => Ok(inner.build_with(alt_g)?.complement()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.build_with(0)
    }
}
