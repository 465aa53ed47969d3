//! Projective matrix groups PSL(2,p), generic enumerated groups, and coset
//! graphs, including the double-cover construction that realizes the
//! antipodal 2-geodesic-transitive family of valency p.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{field_make, is_prime};
use crate::graph::Graph;
use crate::perm::Perm;

/// Element of a finite group with enough structure for coset enumeration.
pub trait GroupElement: Clone + Eq + std::hash::Hash + Ord + fmt::Debug {
    fn mul(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

impl GroupElement for Perm {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn inverse(&self) -> Self {
        Perm::inverse(self)
    }
}

/// A 2x2 matrix over F_p with determinant 1, normalized modulo ±I: of the
/// pair {M, -M} we keep the one whose first nonzero entry in row-major order
/// lies in 1..=(p-1)/2.  Entries are stored row-major with the modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMat {
    m: [usize; 4],
    p: usize,
}

impl ProjMat {
    /// Normalize and wrap a determinant-1 matrix; entries must lie in 0..p.
    pub fn new(m: [usize; 4], p: usize) -> Result<ProjMat> {
        if m.iter().any(|&x| x >= p) {
            return Err(Error::input("matrix entries must lie in 0..p"));
        }
        let det = (m[0] * m[3] + p * p - (m[1] * m[2]) % (p * p)) % p;
        if det != 1 {
            return Err(Error::input(format!(
                "matrix determinant is {det}, expected 1"
            )));
        }
        Ok(Self::normalize(m, p))
    }

    fn normalize(m: [usize; 4], p: usize) -> ProjMat {
        let first = m.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        if first != 0 && first > (p - 1) / 2 {
            ProjMat { m: [0, 1, 2, 3].map(|i| (p - m[i]) % p), p }
        } else {
            ProjMat { m, p }
        }
    }

    pub fn entries(&self) -> [usize; 4] {
        self.m
    }

    pub fn identity(p: usize) -> ProjMat {
        ProjMat { m: [1, 0, 0, 1], p }
    }
}

impl GroupElement for ProjMat {
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let a = &self.m;
        let b = &other.m;
        Self::normalize(
            [
                (a[0] * b[0] + a[1] * b[2]) % p,
                (a[0] * b[1] + a[1] * b[3]) % p,
                (a[2] * b[0] + a[3] * b[2]) % p,
                (a[2] * b[1] + a[3] * b[3]) % p,
            ],
            p,
        )
    }

    fn inverse(&self) -> Self {
        // For determinant 1 the adjugate is the inverse.
        let p = self.p;
        let [a, b, c, d] = self.m;
        Self::normalize([d, (p - b) % p, (p - c) % p, a], p)
    }
}

impl fmt::Debug for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.m[0], self.m[1], self.m[2], self.m[3])
    }
}

/// A finite group held as a sorted, fully enumerated element list.  Products
/// are computed on the fly and resolved back to indices, so all public
/// operations speak in element indices.
pub struct EnumeratedGroup<E: GroupElement> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    identity: usize,
}

impl<E: GroupElement> EnumeratedGroup<E> {
    /// Build from a complete element list; verifies closure under product
    /// and inverse and locates the identity.
    pub fn from_elements(mut elements: Vec<E>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::input("a group needs at least one element"));
        }
        let index: HashMap<E, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        for e in &elements {
            if !index.contains_key(&e.inverse()) {
                return Err(Error::input("element set not closed under inverse"));
            }
            for f in &elements {
                if !index.contains_key(&e.mul(f)) {
                    return Err(Error::input("element set not closed under product"));
                }
            }
        }
        let some = &elements[0];
        let id = some.mul(&some.inverse());
        let identity = index[&id];
        Ok(EnumeratedGroup { elements, index, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].mul(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    pub fn power(&self, i: usize, n: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..n {
            acc = self.mul(acc, i);
        }
        acc
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut x = i;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    /// Sorted indices of the subgroup generated by the given elements.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen: HashSet<usize> = HashSet::new();
        seen.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }
}

/// Enumerate PSL(2,p) for an odd prime p: all determinant-1 matrices over
/// F_p modulo ±I.  Order is checked against p(p²-1)/2.
pub fn psl2(p: usize) -> Result<EnumeratedGroup<ProjMat>> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::input("PSL(2,2) is out of scope; p must be odd"));
    }
    let mut set = HashSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        set.insert(ProjMat::normalize([a, b, c, d], p));
                    }
                }
            }
        }
    }
    let group = EnumeratedGroup::from_elements(set.into_iter().collect())?;
    let expected = p * (p * p - 1) / 2;
    if group.order() != expected {
        return Err(Error::Inconsistency(format!(
            "PSL(2,{p}) enumeration gave {} elements, expected {expected}",
            group.order()
        )));
    }
    Ok(group)
}

/// Graph on the right cosets of H in `group`, with Hx ~ Hy iff y·x⁻¹ lies in
/// the double coset HgH.  Requires H closed, g ∉ H, g² ∈ H (undirectedness),
/// and ⟨H,g⟩ = group (connectivity).  Cosets are represented by their
/// minimum element index and labelled accordingly.
pub fn coset_graph<E: GroupElement>(
    group: &EnumeratedGroup<E>,
    h: &[usize],
    g: usize,
) -> Result<Graph> {
    let hset: HashSet<usize> = h.iter().copied().collect();
    if hset.is_empty() || !hset.contains(&group.identity()) {
        return Err(Error::input("H must contain the identity"));
    }
    for &x in &hset {
        for &y in &hset {
            if !hset.contains(&group.mul(x, y)) {
                return Err(Error::input("H is not closed under product"));
            }
        }
    }
    if hset.contains(&g) {
        return Err(Error::input("g must lie outside H"));
    }
    if !hset.contains(&group.mul(g, g)) {
        return Err(Error::input("g² must lie in H for an undirected graph"));
    }
    let mut gens: Vec<usize> = hset.iter().copied().collect();
    gens.push(g);
    if group.subgroup_closure(&gens).len() != group.order() {
        return Err(Error::Disconnected(
            "H and g do not generate the whole group".into(),
        ));
    }

    // Assign every element to its right coset Hx, keyed by minimum index.
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = hset.iter().map(|&hh| group.mul(hh, x)).collect();
        let rep = *members.iter().min().expect("coset is nonempty");
        let v = reps.len();
        reps.push(rep);
        for m in members {
            coset_of[m] = v;
        }
    }

    let double: HashSet<usize> = hset
        .iter()
        .flat_map(|&h1| hset.iter().map(move |&h2| group.mul(group.mul(h1, g), h2)))
        .collect();

    let mut edges = Vec::new();
    for u in 0..reps.len() {
        for v in u + 1..reps.len() {
            let fwd = double.contains(&group.mul(reps[v], group.inv(reps[u])));
            let bwd = double.contains(&group.mul(reps[u], group.inv(reps[v])));
            if fwd != bwd {
                return Err(Error::Inconsistency(
                    "double coset adjacency is not symmetric".into(),
                ));
            }
            if fwd {
                edges.push((u, v));
            }
        }
    }
    let labels: Vec<String> =
        reps.iter().map(|&r| format!("H{:?}", group.element(r))).collect();
    let graph = Graph::from_edges(reps.len(), &edges)?.with_labels(labels)?;

    // Valency must equal |H : H ∩ H^g|.
    let ginv = group.inv(g);
    let conj: HashSet<usize> =
        hset.iter().map(|&hh| group.mul(group.mul(ginv, hh), g)).collect();
    let meet = hset.intersection(&conj).count();
    let valency = hset.len() / meet;
    if graph.regular_valency() != Some(valency) {
        return Err(Error::Inconsistency(format!(
            "coset graph valency differs from |H : H ∩ H^g| = {valency}"
        )));
    }
    Ok(graph)
}

/// Double cover of K_{p+1} on the cosets of H = ⟨a, b²⟩ in PSL(2,p), for a
/// prime p ≡ 1 (mod 4): a is unipotent upper triangular, b is diagonal with
/// the least primitive root mod p, and the connecting involution is bⁱ·g
/// with g = [[0,1],[-1,0]] (i = `g_power`, normally 0).  The result has
/// 2p+2 vertices and valency p; every stated group fact is re-verified and
/// any failure reports a construction error.
pub fn taylor_construction(p: usize, g_power: usize) -> Result<Graph> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if p % 4 != 1 || p < 5 {
        return Err(Error::input(format!(
            "construction needs p ≡ 1 (mod 4) and p ≥ 5, got {p}"
        )));
    }
    let group = psl2(p)?;
    let t = field_make(p, 1, None)?.primitive_element();
    let tinv = (1..p).find(|&x| (t * x) % p == 1).expect("t is invertible");
    let lookup = |m: [usize; 4]| -> Result<usize> {
        let mat = ProjMat::new(m, p)?;
        group
            .index_of(&mat)
            .ok_or_else(|| Error::Construction(format!("{mat:?} missing from group")))
    };
    let a = lookup([1, 1, 0, 1])?;
    let b = lookup([t, 0, 0, tinv])?;
    let g0 = lookup([0, 1, p - 1, 0])?;
    let g = group.mul(group.power(b, g_power), g0);

    let check = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Construction(format!("verification failed: {what}")))
        }
    };
    check(group.order_of(a) == p, "o(a) = p")?;
    check(group.order_of(b) == (p - 1) / 2, "o(b) = (p-1)/2")?;
    check(group.order_of(g) == 2, "bⁱ·g is an involution")?;

    let b2 = group.mul(b, b);
    let h = group.subgroup_closure(&[a, b2]);
    check(h.len() == p * (p - 1) / 4, "|H| = p(p-1)/4")?;

    // bⁱ·g normalizes ⟨b²⟩ and together with b spans a dihedral of order p-1.
    let bsub: HashSet<usize> = group.subgroup_closure(&[b2]).into_iter().collect();
    let ginv = group.inv(g);
    check(
        bsub.iter().all(|&x| bsub.contains(&group.mul(group.mul(ginv, x), g))),
        "g normalizes ⟨b²⟩",
    )?;
    check(
        group.subgroup_closure(&[b, g]).len() == p - 1,
        "|⟨b,g⟩| = p-1",
    )?;

    let graph = coset_graph(&group, &h, g)?;
    check(graph.order() == 2 * p + 2, "|V| = 2p+2")?;
    check(graph.regular_valency() == Some(p), "valency p")?;
    Ok(graph)
}
