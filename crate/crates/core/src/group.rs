//! Permutation groups given by generators, with a deterministic
//! base-and-strong-generating-set for order, membership, and
//! stabilizers, plus orbit closure on points and ordered tuples.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Perm;
use num_bigint::BigUint;
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    base: Vec<usize>,
    /// All strong generators; the level-i set is those fixing
    /// base[0..i] pointwise.
    strong: Vec<Perm>,
    /// transversals[i][δ] = permutation u with base[i]^u = δ, for δ in
    /// the orbit of base[i] under the level-i set.
    transversals: Vec<HashMap<usize, Perm>>,
    order: BigUint,
}

impl PermGroup {
    /// Deterministic Schreier–Sims: base points are chosen as the
    /// smallest non-fixed points, and all closure passes run in fixed
    /// iteration orders, so identical generator lists yield identical
    /// chains.
    pub fn schreier_sims(degree: usize, generators: &[Perm]) -> Result<PermGroup> {
        Self::schreier_sims_with_base(degree, generators, &[])
    }

    /// Same, but the base is forced to start with `prefix` (used for
    /// pointwise stabilizers).
    pub fn schreier_sims_with_base(
        degree: usize,
        generators: &[Perm],
        prefix: &[usize],
    ) -> Result<PermGroup> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} differs from {degree}",
                    g.degree()
                )));
            }
        }
        for &p in prefix {
            if p >= degree {
                return Err(Error::input(format!("base point {p} out of range")));
            }
        }

        let mut strong: Vec<Perm> = Vec::new();
        for g in generators {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &p in prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }

        // Closure loop: rebuild the chain, sift every Schreier
        // generator, restart after any addition.  Terminates because
        // each addition strictly grows some level's group.
        loop {
            // Every strong generator must move some base point.
            loop {
                let fixes_all = strong
                    .iter()
                    .find(|g| base.iter().all(|&b| g.apply(b) == b));
                match fixes_all {
                    Some(g) => {
                        let p = g.first_moved_point().expect("non-identity");
                        base.push(p);
                    }
                    None => break,
                }
            }

            let levels = Self::build_levels(degree, &strong, &base);
            match Self::find_deficiency(&strong, &base, &levels) {
                Some(residue) => strong.push(residue),
                None => {
                    let order = levels
                        .iter()
                        .map(|t| BigUint::from(t.len()))
                        .product::<BigUint>();
                    return Ok(PermGroup {
                        degree,
                        generators: generators.to_vec(),
                        base,
                        strong,
                        transversals: levels,
                        order,
                    });
                }
            }
        }
    }

    fn level_gens<'a>(strong: &'a [Perm], base: &[usize], i: usize) -> Vec<&'a Perm> {
        strong
            .iter()
            .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
            .collect()
    }

    fn build_levels(degree: usize, strong: &[Perm], base: &[usize]) -> Vec<HashMap<usize, Perm>> {
        let mut levels = Vec::with_capacity(base.len());
        for (i, &b) in base.iter().enumerate() {
            let gens = Self::level_gens(strong, base, i);
            let mut transversal = HashMap::new();
            transversal.insert(b, Perm::identity(degree));
            let mut queue = VecDeque::from([b]);
            while let Some(d) = queue.pop_front() {
                for g in &gens {
                    let e = g.apply(d);
                    if !transversal.contains_key(&e) {
                        let u = &transversal[&d] * g;
                        transversal.insert(e, u);
                        queue.push_back(e);
                    }
                }
            }
            levels.push(transversal);
        }
        levels
    }

    /// Scans all Schreier generators and returns the first non-trivial
    /// sift residue, if any.
    fn find_deficiency(
        strong: &[Perm],
        base: &[usize],
        levels: &[HashMap<usize, Perm>],
    ) -> Option<Perm> {
        for (i, &b) in base.iter().enumerate() {
            let gens = Self::level_gens(strong, base, i);
            // Orbit points in deterministic (sorted) order.
            let mut orbit: Vec<usize> = levels[i].keys().copied().collect();
            orbit.sort_unstable();
            for &d in &orbit {
                let u_d = &levels[i][&d];
                for s in &gens {
                    let e = s.apply(d);
                    let schreier = &(u_d * s) * &levels[i][&e].inverse();
                    debug_assert_eq!(schreier.apply(b), b);
                    let residue = Self::sift(&schreier, base, levels, i + 1);
                    if !residue.is_identity() {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    fn sift(p: &Perm, base: &[usize], levels: &[HashMap<usize, Perm>], from: usize) -> Perm {
        let mut h = p.clone();
        for i in from..base.len() {
            let d = h.apply(base[i]);
            match levels[i].get(&d) {
                Some(u) => h = &h * &u.inverse(),
                None => return h,
            }
        }
        h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        Self::sift(p, &self.base, &self.transversals, 0).is_identity()
    }

    /// Orbit of an ordered tuple under coordinatewise action:
    /// breadth-first closure in deterministic order.
    pub fn orbit(&self, seed: &[usize]) -> Result<Vec<Vec<usize>>> {
        for &x in seed {
            if x >= self.degree {
                return Err(Error::input(format!("tuple entry {x} out of range")));
            }
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(seed.to_vec());
        out.push(seed.to_vec());
        queue.push_back(seed.to_vec());
        while let Some(t) = queue.pop_front() {
            for g in &self.generators {
                let u = g.apply_tuple(&t);
                if seen.insert(u.clone()) {
                    out.push(u.clone());
                    queue.push_back(u);
                }
            }
        }
        Ok(out)
    }

    /// Orbit of a single point.
    pub fn orbit_of_point(&self, seed: usize) -> Result<Vec<usize>> {
        Ok(self.orbit(&[seed])?.into_iter().map(|t| t[0]).collect())
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit_of_point(0).unwrap().len() == self.degree
    }

    /// Pointwise stabilizer of a vertex sequence, with its own chain.
    pub fn stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p >= self.degree {
                return Err(Error::input(format!("point {p} out of range")));
            }
        }
        let chain = Self::schreier_sims_with_base(self.degree, &self.generators, points)?;
        let mut dedup_prefix: Vec<usize> = Vec::new();
        for &p in points {
            if !dedup_prefix.contains(&p) {
                dedup_prefix.push(p);
            }
        }
        let k = dedup_prefix.len();
        let stab_gens: Vec<Perm> = chain
            .strong
            .iter()
            .filter(|g| chain.base[..k].iter().all(|&b| g.apply(b) == b))
            .cloned()
            .collect();
        PermGroup::schreier_sims(self.degree, &stab_gens)
    }

    /// Enumerates all elements; refuses groups larger than `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        if self.order > BigUint::from(cap) {
            return Err(Error::input(format!("group order {} above cap {cap}", self.order)));
        }
        Ok(enumerate_closure(self.degree, &self.generators, cap))
    }
}

/// Closure of a generator list under products, breadth-first; stops
/// (and truncates) once `cap` elements have been found.
pub fn enumerate_closure(degree: usize, gens: &[Perm], cap: usize) -> Vec<Perm> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = &p * g;
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return out;
                }
                seen.insert(q.clone());
                out.push(q.clone());
                queue.push_back(q);
            }
        }
    }
    out
}

/// If `subgroup` acts regularly on the vertices of `graph`, labels each
/// vertex by the unique element mapping a base vertex to it and returns
/// the element table together with the connection set (indices into the
/// table of the base vertex's neighbors); `None` when the action is not
/// regular.
///
/// The connection set is verified inverse-closed and identity-free, and
/// the relabeled graph is exactly the Cayley graph of the returned
/// table over the returned set.
pub fn regular_subgroup_to_cayley(
    graph: &Graph,
    subgroup: &PermGroup,
) -> Result<Option<(Vec<Perm>, Vec<usize>)>> {
    if subgroup.degree() != graph.order() {
        return Err(Error::input("group degree differs from graph order"));
    }
    for g in subgroup.generators() {
        if !graph.is_automorphism(g) {
            return Err(Error::input("generator is not an automorphism of the graph"));
        }
    }
    let n = graph.order();
    if n == 0 || !subgroup.is_transitive() || subgroup.order() != &BigUint::from(n) {
        return Ok(None);
    }
    let elements = subgroup.elements(n)?;
    // Regular action: the map element -> image of the base vertex is a
    // bijection onto the vertex set.
    let base = 0usize;
    let mut to_vertex: Vec<usize> = Vec::with_capacity(n);
    let mut by_vertex: Vec<Option<usize>> = vec![None; n];
    for (i, g) in elements.iter().enumerate() {
        let v = g.apply(base);
        if by_vertex[v].is_some() {
            return Ok(None); // transitive but not free
        }
        by_vertex[v] = Some(i);
        to_vertex.push(v);
    }
    let connection: Vec<usize> = graph
        .neighbors(base)
        .iter()
        .map(|&v| by_vertex[v].unwrap())
        .collect();
    // Verify: inverse-closed, identity-free.
    let id_idx = elements.iter().position(|g| g.is_identity()).unwrap();
    if connection.contains(&id_idx) {
        return Err(Error::Construction("connection set contains the identity".into()));
    }
    let index_of: HashMap<&Perm, usize> =
        elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    for &s in &connection {
        let inv = elements[s].inverse();
        let inv_idx = *index_of
            .get(&inv)
            .ok_or_else(|| Error::Construction("closure missing an inverse".into()))?;
        if !connection.contains(&inv_idx) {
            return Err(Error::Construction("connection set not inverse-closed".into()));
        }
    }
    Ok(Some((elements, connection)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn s4() -> PermGroup {
        let a = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        PermGroup::schreier_sims(4, &[a, b]).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        assert_eq!(s4().order(), &BigUint::from(24u32));
    }

    #[test]
    fn membership() {
        let g = s4();
        assert!(g.contains(&Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap()));
        assert!(g.contains(&Perm::identity(4)));

        let a5_gens = [
            Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let a5 = PermGroup::schreier_sims(5, &a5_gens).unwrap();
        assert_eq!(a5.order(), &BigUint::from(60u32));
        // Odd permutations are outside A_5.
        assert!(!a5.contains(&Perm::from_cycles(5, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn stabilizer_orders() {
        let g = s4();
        let stab = g.stabilizer(&[0]).unwrap();
        assert_eq!(stab.order(), &BigUint::from(6u32));
        for p in stab.generators() {
            assert_eq!(p.apply(0), 0);
        }
        let stab2 = g.stabilizer(&[0, 1]).unwrap();
        assert_eq!(stab2.order(), &BigUint::from(2u32));
    }

    #[test]
    fn orbit_stabilizer_product() {
        let g = s4();
        for tuple in [vec![0], vec![0, 1], vec![2, 0, 1]] {
            let orbit = g.orbit(&tuple).unwrap();
            let stab = g.stabilizer(&tuple).unwrap();
            assert_eq!(
                BigUint::from(orbit.len()) * stab.order(),
                g.order().clone(),
                "tuple {tuple:?}"
            );
        }
    }

    #[test]
    fn trivial_group_orbits() {
        let g = PermGroup::schreier_sims(5, &[]).unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.orbit(&[3, 1]).unwrap(), vec![vec![3, 1]]);
    }

    #[test]
    fn transversal_sizes_multiply_to_order() {
        let gens = [
            Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap(),
            Perm::from_cycles(6, &[&[1, 5], &[2, 4]]).unwrap(),
        ];
        let d6 = PermGroup::schreier_sims(6, &gens).unwrap();
        assert_eq!(d6.order(), &BigUint::from(12u32));
        let product: usize = d6.transversals.iter().map(|t| t.len()).product();
        assert_eq!(BigUint::from(product), d6.order);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = Perm::identity(3);
        assert!(PermGroup::schreier_sims(4, &[a]).is_err());
    }

    #[test]
    fn random_products_are_members() {
        // Deterministic pseudo-random walk over generator words.
        let gens = [
            Perm::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]).unwrap(),
            Perm::from_cycles(7, &[&[1, 3], &[2, 6]]).unwrap(),
        ];
        let g = PermGroup::schreier_sims(7, &gens).unwrap();
        let mut word = Perm::identity(7);
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..50 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            word = &word * &gens[(state >> 33) as usize % 2];
            assert!(g.contains(&word));
        }
    }

    #[test]
    fn cayley_recognition_on_cycle() {
        let edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let c5 = Graph::from_edges(5, &edges).unwrap();
        let rot = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let rotation = PermGroup::schreier_sims(5, &[rot]).unwrap();
        let (elements, connection) = regular_subgroup_to_cayley(&c5, &rotation)
            .unwrap()
            .unwrap();
        assert_eq!(elements.len(), 5);
        // The two connection elements are the rotations by ±1.
        let images: Vec<usize> = connection.iter().map(|&i| elements[i].apply(0)).collect();
        assert_eq!(images, vec![1, 4]);
    }

    #[test]
    fn non_regular_action_gives_none() {
        let edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let c5 = Graph::from_edges(5, &edges).unwrap();
        let refl = Perm::from_images(vec![0, 4, 3, 2, 1]).unwrap();
        let rot = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let d5 = PermGroup::schreier_sims(5, &[rot, refl]).unwrap();
        assert_eq!(d5.order(), &BigUint::from(10u32));
        assert!(regular_subgroup_to_cayley(&c5, &d5).unwrap().is_none());
    }

    #[test]
    fn non_automorphism_rejected() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let rot = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let g = PermGroup::schreier_sims(3, &[rot]).unwrap();
        assert!(regular_subgroup_to_cayley(&path, &g).is_err());
    }
}
