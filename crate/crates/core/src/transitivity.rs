//! Deciding s-distance, s-geodesic, and s-arc transitivity of a graph under
//! a permutation group, and assembling the resulting profile.
//!
//! Every verdict is computed the same way: enumerate the relevant tuple set,
//! close a single lexicographically-first seed under the group generators,
//! and compare cardinalities.  The generators are spot-checked to be
//! automorphisms first, so orbit closure can never leave the tuple set.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::autiso::automorphism_group;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::PermGroup;

/// Upper bound on the s-arc search; finite valency ≥ 3 graphs cannot be
/// s-arc transitive beyond 7, so only cycles reach the cap.
pub const ARC_SEARCH_CAP: u32 = 8;

/// Largest transitivity levels of a graph under a group, with the flags the
/// report format wants.  `max_s_distance` and `max_s_geodesic` are bounded
/// by the diameter; `max_s_arc` by [`ARC_SEARCH_CAP`], with
/// `arc_cap_exceeded` set when every level up to the cap passed.  A graph
/// whose group is not even vertex-transitive reports all three maxima as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityProfile {
    pub girth: Option<u32>,
    pub diameter: u32,
    pub valency: Option<usize>,
    pub aut_order: BigUint,
    pub max_s_distance: u32,
    pub max_s_geodesic: u32,
    pub max_s_arc: u32,
    pub distance_transitive: bool,
    pub geodesic_transitive: bool,
    pub arc_cap_exceeded: bool,
    pub group_supplied: bool,
}

/// Counts around a fixed 2-geodesic (v,u,w): x = |Γ(v)∩Γ(u)|,
/// y = |Γ₂(v)∩Γ(u)|, z = |Γ(v)∩Γ(w)|, t = |Γ₂(v)∩Γ(w)∩Γ(u)|, plus the
/// sphere sizes n2 = |Γ₂(v)| and n3 = |Γ₃(v)|.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionData {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub t: usize,
    pub n2: usize,
    pub n3: usize,
}

fn verify_group(g: &Graph, group: &PermGroup) -> Result<()> {
    if group.degree() != g.order() {
        return Err(Error::input(format!(
            "group degree {} differs from graph order {}",
            group.degree(),
            g.order()
        )));
    }
    for gen in group.generators() {
        if !g.is_automorphism(gen) {
            return Err(Error::input(
                "supplied group generator is not an automorphism of the graph",
            ));
        }
    }
    Ok(())
}

/// True iff the group has a single orbit on the given tuple set; the set
/// must be closed under the group action (guaranteed for distance pairs,
/// geodesics, and arcs once the generators are automorphisms).
fn single_orbit(group: &PermGroup, tuples: &[Vec<usize>]) -> Result<bool> {
    match tuples.first() {
        None => Ok(true),
        Some(seed) => Ok(group.orbit(seed)?.len() == tuples.len()),
    }
}

/// Ordered vertex pairs at exactly distance t, in lexicographic order.
fn distance_pairs(g: &Graph, t: u32) -> Vec<Vec<usize>> {
    let dt = g.distance_table();
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && dt.distance(u, v) == t {
                out.push(vec![u, v]);
            }
        }
    }
    out
}

/// True iff for every t ≤ s the ordered distance-t pairs form one orbit;
/// t = 0 is read as vertex transitivity.  Requires s ≤ diameter.
pub fn is_s_distance_transitive(g: &Graph, group: &PermGroup, s: u32) -> Result<bool> {
    verify_group(g, group)?;
    let m = g.metrics()?;
    if s > m.diameter {
        return Err(Error::input(format!(
            "s={s} exceeds the diameter {}",
            m.diameter
        )));
    }
    if !group.is_transitive() {
        return Ok(false);
    }
    for t in 1..=s {
        if !single_orbit(group, &distance_pairs(g, t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff for each i = 1..s the i-geodesics form one orbit under the
/// coordinatewise action.  Requires s ≤ diameter.
pub fn is_s_geodesic_transitive(g: &Graph, group: &PermGroup, s: u32) -> Result<bool> {
    verify_group(g, group)?;
    let m = g.metrics()?;
    if s > m.diameter {
        return Err(Error::input(format!(
            "s={s} exceeds the diameter {}",
            m.diameter
        )));
    }
    for i in 1..=s {
        if !single_orbit(group, &g.enumerate_s_geodesics(i as usize)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff for each t = 1..s the t-arcs form one orbit.  Arcs may revisit
/// vertices (only immediate backtracking is forbidden), so s is not bounded
/// by the diameter; s ≥ 1 is required.
pub fn is_s_arc_transitive(g: &Graph, group: &PermGroup, s: u32) -> Result<bool> {
    verify_group(g, group)?;
    g.metrics()?; // connectivity
    if s < 1 {
        return Err(Error::input("arc transitivity needs s ≥ 1"));
    }
    for t in 1..=s {
        if !single_orbit(group, &g.enumerate_s_arcs(t as usize)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compute the full transitivity profile.  With `group = None` the full
/// automorphism group is computed (subject to the search scale bound);
/// otherwise the supplied group is verified and used as-is.  The hierarchy
/// (arc ⇒ geodesic ⇒ distance, after clamping to the diameter) and the
/// girth rule (an s-geodesic-transitive graph is s-arc transitive iff its
/// girth is at least 2s) are asserted before returning; a violation is
/// reported as an inconsistency, never silently.
pub fn profile(g: &Graph, group: Option<&PermGroup>) -> Result<TransitivityProfile> {
    let m = g.metrics()?;
    let owned;
    let (grp, group_supplied) = match group {
        Some(gr) => {
            verify_group(g, gr)?;
            (gr, true)
        }
        None => {
            owned = automorphism_group(g)?;
            (&owned, false)
        }
    };

    let vertex_transitive = grp.is_transitive();

    let mut max_s_distance = 0;
    if vertex_transitive {
        while max_s_distance < m.diameter
            && single_orbit(grp, &distance_pairs(g, max_s_distance + 1))?
        {
            max_s_distance += 1;
        }
    }

    let mut max_s_geodesic = 0;
    if vertex_transitive {
        while max_s_geodesic < m.diameter
            && single_orbit(grp, &g.enumerate_s_geodesics(max_s_geodesic as usize + 1)?)?
        {
            max_s_geodesic += 1;
        }
    }

    let mut max_s_arc = 0;
    let mut arc_cap_exceeded = false;
    if vertex_transitive {
        if m.valency == Some(2) {
            // Cycles are s-arc transitive for every s once they are
            // arc-transitive at all; skip the unbounded climb.
            if single_orbit(grp, &g.enumerate_s_arcs(1)?)? {
                max_s_arc = ARC_SEARCH_CAP;
                arc_cap_exceeded = true;
            }
        } else {
            while max_s_arc < ARC_SEARCH_CAP
                && single_orbit(grp, &g.enumerate_s_arcs(max_s_arc as usize + 1)?)?
            {
                max_s_arc += 1;
            }
            arc_cap_exceeded = max_s_arc == ARC_SEARCH_CAP;
        }
    }

    // Hierarchy: s-arc ⇒ s-geodesic ⇒ s-distance for s up to the diameter.
    if !(max_s_arc.min(m.diameter) <= max_s_geodesic
        && max_s_geodesic <= max_s_distance
        && max_s_distance <= m.diameter)
    {
        return Err(Error::Inconsistency(format!(
            "transitivity hierarchy violated: arc {max_s_arc}, geodesic \
             {max_s_geodesic}, distance {max_s_distance}, diameter {}",
            m.diameter
        )));
    }
    // Girth rule at every geodesic-transitive level.
    for s in 2..=max_s_geodesic {
        let girth_ok = m.girth.is_none_or(|gi| gi >= 2 * s);
        let arc_ok = arc_cap_exceeded || max_s_arc >= s;
        if girth_ok != arc_ok {
            return Err(Error::Inconsistency(format!(
                "girth rule violated at s={s}: girth {:?}, max_s_arc {max_s_arc}",
                m.girth
            )));
        }
    }

    Ok(TransitivityProfile {
        girth: m.girth,
        diameter: m.diameter,
        valency: m.valency,
        aut_order: grp.order().clone(),
        max_s_distance,
        max_s_geodesic,
        max_s_arc,
        distance_transitive: vertex_transitive && max_s_distance == m.diameter,
        geodesic_transitive: vertex_transitive && max_s_geodesic == m.diameter,
        arc_cap_exceeded,
        group_supplied,
    })
}

/// Intersection counts for the 2-geodesic (v,u,w); errors unless
/// d(v,u) = d(u,w) = 1 and d(v,w) = 2.
pub fn intersection_data(g: &Graph, v: usize, u: usize, w: usize) -> Result<IntersectionData> {
    let n = g.order();
    if v >= n || u >= n || w >= n {
        return Err(Error::input("vertex out of range"));
    }
    g.metrics()?;
    let dt = g.distance_table();
    if dt.distance(v, u) != 1 || dt.distance(u, w) != 1 || dt.distance(v, w) != 2 {
        return Err(Error::input(format!(
            "({v},{u},{w}) is not a 2-geodesic"
        )));
    }
    let sphere2: HashSet<usize> = dt.sphere(v, 2).into_iter().collect();
    let nv: HashSet<usize> = g.neighbors(v).iter().copied().collect();
    let nu: HashSet<usize> = g.neighbors(u).iter().copied().collect();
    let nw: HashSet<usize> = g.neighbors(w).iter().copied().collect();
    let data = IntersectionData {
        x: nv.intersection(&nu).count(),
        y: sphere2.intersection(&nu).count(),
        z: nv.intersection(&nw).count(),
        t: sphere2
            .iter()
            .filter(|a| nw.contains(a) && nu.contains(a))
            .count(),
        n2: sphere2.len(),
        n3: dt.sphere(v, 3).len(),
    };
    if let Some(k) = g.regular_valency() {
        // Γ(u) splits as {v}, Γ(v)∩Γ(u), Γ₂(v)∩Γ(u) in a girth-3-or-4 sense:
        // every neighbor of u sits within distance 2 of v.
        if data.x + data.y != k - 1 {
            return Err(Error::Inconsistency(format!(
                "neighbor split x+y = {}+{} does not cover valency {k} minus v",
                data.x, data.y
            )));
        }
    }
    Ok(data)
}

/// The girth rule as a standalone check: for an s-geodesic-transitive pair
/// (graph, group), s-arc transitivity must hold exactly when girth ≥ 2s.
/// Returns `None` (skipped) when the precondition fails, `Some(verdict)`
/// when consistent, and an inconsistency error on contradiction.
pub fn girth_consistency_check(g: &Graph, group: &PermGroup, s: u32) -> Result<Option<bool>> {
    verify_group(g, group)?;
    let m = g.metrics()?;
    if s < 1 || s > m.diameter || !is_s_geodesic_transitive(g, group, s)? {
        return Ok(None);
    }
    let arc = is_s_arc_transitive(g, group, s)?;
    let girth_ok = m.girth.is_none_or(|gi| gi >= 2 * s);
    if arc != girth_ok {
        return Err(Error::Inconsistency(format!(
            "girth rule contradiction at s={s}: girth {:?} but {}-arc transitivity is {arc}",
            m.girth, s
        )));
    }
    Ok(Some(arc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn aut(g: &Graph) -> PermGroup {
        automorphism_group(g).unwrap()
    }

    #[test]
    fn petersen_profile() {
        let g = families::odd(2).unwrap();
        let p = profile(&g, None).unwrap();
        assert_eq!(p.girth, Some(5));
        assert_eq!(p.diameter, 2);
        assert_eq!(p.valency, Some(3));
        assert_eq!(p.aut_order, BigUint::from(120u32));
        assert_eq!(p.max_s_arc, 3);
        assert_eq!(p.max_s_geodesic, 2);
        assert_eq!(p.max_s_distance, 2);
        assert!(p.distance_transitive);
        assert!(p.geodesic_transitive);
        assert!(!p.arc_cap_exceeded);
        assert!(!p.group_supplied);
    }

    #[test]
    fn complete_graph_is_two_arc_transitive() {
        let g = families::complete(5).unwrap();
        let a = aut(&g);
        assert!(is_s_arc_transitive(&g, &a, 2).unwrap());
        assert!(!is_s_arc_transitive(&g, &a, 3).unwrap());
        let p = profile(&g, Some(&a)).unwrap();
        assert_eq!(p.max_s_arc, 2);
        assert_eq!(p.max_s_geodesic, 1);
        assert!(p.distance_transitive);
    }

    #[test]
    fn octahedron_is_geodesic_but_not_two_arc_transitive() {
        let g = families::complete_multipartite(3, 2).unwrap();
        let a = aut(&g);
        let p = profile(&g, Some(&a)).unwrap();
        assert_eq!(p.girth, Some(3));
        assert_eq!(p.max_s_geodesic, 2);
        assert!(p.geodesic_transitive);
        assert_eq!(p.max_s_arc, 1);
        assert_eq!(girth_consistency_check(&g, &a, 2).unwrap(), Some(false));
    }

    #[test]
    fn cube_is_two_arc_transitive() {
        let g = families::hamming(3, 2).unwrap();
        let a = aut(&g);
        assert!(is_s_arc_transitive(&g, &a, 2).unwrap());
        assert!(!is_s_arc_transitive(&g, &a, 3).unwrap());
        assert_eq!(girth_consistency_check(&g, &a, 2).unwrap(), Some(true));
    }

    #[test]
    fn cycle_hits_the_arc_cap() {
        let g = families::cycle(6).unwrap();
        let p = profile(&g, None).unwrap();
        assert_eq!(p.valency, Some(2));
        assert_eq!(p.max_s_arc, ARC_SEARCH_CAP);
        assert!(p.arc_cap_exceeded);
        assert!(p.geodesic_transitive);
        assert!(p.distance_transitive);
    }

    #[test]
    fn rotation_only_group_on_a_cycle_is_not_arc_transitive() {
        let g = families::cycle(5).unwrap();
        let rot = crate::perm::Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        let grp = PermGroup::schreier_sims(5, &[rot]).unwrap();
        let p = profile(&g, Some(&grp)).unwrap();
        assert!(p.group_supplied);
        assert_eq!(p.max_s_arc, 0);
        assert!(!p.arc_cap_exceeded);
        assert_eq!(p.max_s_distance, 0);
        assert!(!p.distance_transitive);
    }

    #[test]
    fn paley_13_is_distance_but_not_two_geodesic_transitive() {
        let g = families::paley(13, 1).unwrap();
        let a = aut(&g);
        assert!(is_s_distance_transitive(&g, &a, 2).unwrap());
        assert!(is_s_geodesic_transitive(&g, &a, 1).unwrap());
        assert!(!is_s_geodesic_transitive(&g, &a, 2).unwrap());
        let p = profile(&g, Some(&a)).unwrap();
        assert!(p.distance_transitive);
        assert!(!p.geodesic_transitive);
        assert_eq!(p.max_s_geodesic, 1);
        assert_eq!(p.max_s_arc, 1);
    }

    #[test]
    fn icosahedron_intersection_data() {
        let g = crate::psl::taylor_construction(5, 0).unwrap();
        let dt = g.distance_table();
        let w = dt.sphere(0, 2)[0];
        let u = *g
            .neighbors(0)
            .iter()
            .find(|&&u| dt.distance(u, w) == 1)
            .unwrap();
        let data = intersection_data(&g, 0, u, w).unwrap();
        assert_eq!(
            data,
            IntersectionData { x: 2, y: 2, z: 2, t: 1, n2: 5, n3: 1 }
        );
    }

    #[test]
    fn intersection_data_rejects_non_geodesics() {
        let g = families::odd(2).unwrap();
        // (0,1,0) backtracks and (0,1) are not 2-geodesics.
        let u = g.neighbors(0)[0];
        assert!(intersection_data(&g, 0, u, 0).is_err());
        assert!(intersection_data(&g, 0, u, u).is_err());
        assert!(intersection_data(&g, 0, 0, u).is_err());
        assert!(intersection_data(&g, 0, u, 99).is_err());
    }

    #[test]
    fn verdicts_reject_foreign_groups() {
        let g = families::odd(2).unwrap();
        let h = families::cycle(10).unwrap();
        let wrong = aut(&h);
        assert!(is_s_arc_transitive(&g, &wrong, 1).is_err());
        let smaller = aut(&families::cycle(5).unwrap());
        assert!(is_s_distance_transitive(&g, &smaller, 1).is_err());
    }

    #[test]
    fn s_beyond_diameter_is_an_input_error() {
        let g = families::complete(4).unwrap();
        let a = aut(&g);
        assert!(is_s_distance_transitive(&g, &a, 2).is_err());
        assert!(is_s_geodesic_transitive(&g, &a, 2).is_err());
        // Arc transitivity has no diameter bound.
        assert!(is_s_arc_transitive(&g, &a, 2).unwrap());
    }

    #[test]
    fn girth_check_skips_when_precondition_fails() {
        // P(13) is not 2-geodesic transitive, so s=2 is skipped.
        let g = families::paley(13, 1).unwrap();
        let a = aut(&g);
        assert_eq!(girth_consistency_check(&g, &a, 2).unwrap(), None);
        // s beyond the diameter is also a skip, not an error.
        assert_eq!(girth_consistency_check(&g, &a, 7).unwrap(), None);
    }
}
