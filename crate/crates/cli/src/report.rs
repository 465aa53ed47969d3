//! JSON report types shared by `analyze` and `verify`.

use graphsym::{profile, Graph};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct GraphReport {
    pub family: String,
    pub order: usize,
    pub size: usize,
    /// `null` when the graph is not regular.
    pub valency: Option<usize>,
    /// `null` encodes infinite girth (acyclic graph) or a restricted
    /// report on a disconnected graph.
    pub girth: Option<u32>,
    /// `null` only in a restricted report.
    pub diameter: Option<u32>,
    /// JSON number when the order fits in 64 bits, decimal string
    /// otherwise, `null` in a restricted report.
    pub aut_order: Value,
    pub profile: Option<ProfileReport>,
    pub antipodal: AntipodalReport,
    pub claims: Vec<ClaimReport>,
}

#[derive(Serialize)]
pub struct ProfileReport {
    pub max_s_distance: u32,
    pub max_s_geodesic: u32,
    pub max_s_arc: u32,
    pub distance_transitive: bool,
    pub geodesic_transitive: bool,
    /// True when the arc search hit its cap (cycles stay arc
    /// transitive for every length), so `max_s_arc` is a lower bound.
    pub arc_cap_exceeded: bool,
}

#[derive(Serialize)]
pub struct AntipodalReport {
    pub is_antipodal: bool,
    /// Common fibre size; `null` when not antipodal or fibres vary.
    pub fibre_size: Option<usize>,
}

#[derive(Serialize)]
pub struct ClaimReport {
    pub citation: String,
    pub field: String,
    pub expected: Value,
    pub measured: Value,
    pub status: Status,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub runtime_seconds: f64,
    pub summary: Summary,
    pub reports: Vec<GraphReport>,
}

#[derive(Serialize, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub total: usize,
}

pub fn biguint_value(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(n.to_string()),
    }
}

/// Everything `analyze` and the claim runner measure about one graph.
pub struct Measured {
    pub graph: Graph,
    pub profile: Option<graphsym::TransitivityProfile>,
    pub fibre_sizes: Option<Vec<usize>>,
    /// Set when the graph is disconnected and only metrics-free
    /// quantities are reported.
    pub restricted: bool,
}

impl Measured {
    /// Measure `g`, degrading to a restricted result when the graph is
    /// disconnected rather than failing.
    pub fn of(g: Graph) -> graphsym::Result<Measured> {
        if !g.is_connected() {
            return Ok(Measured { graph: g, profile: None, fibre_sizes: None, restricted: true });
        }
        let p = profile(&g, None)?;
        let fibres = g
            .antipodal_fibres()?
            .map(|part| part.cells().iter().map(|c| c.len()).collect());
        Ok(Measured { graph: g, profile: Some(p), fibre_sizes: fibres, restricted: false })
    }

    pub fn uniform_fibre_size(&self) -> Option<usize> {
        let sizes = self.fibre_sizes.as_ref()?;
        let first = *sizes.first()?;
        sizes.iter().all(|&s| s == first).then_some(first)
    }

    pub fn report(&self, family: &str, claims: Vec<ClaimReport>) -> GraphReport {
        let g = &self.graph;
        let antipodal = AntipodalReport {
            is_antipodal: self.fibre_sizes.is_some(),
            fibre_size: self.uniform_fibre_size(),
        };
        match &self.profile {
            Some(p) => GraphReport {
                family: family.to_string(),
                order: g.order(),
                size: g.size(),
                valency: p.valency,
                girth: p.girth,
                diameter: Some(p.diameter),
                aut_order: biguint_value(&p.aut_order),
                profile: Some(ProfileReport {
                    max_s_distance: p.max_s_distance,
                    max_s_geodesic: p.max_s_geodesic,
                    max_s_arc: p.max_s_arc,
                    distance_transitive: p.distance_transitive,
                    geodesic_transitive: p.geodesic_transitive,
                    arc_cap_exceeded: p.arc_cap_exceeded,
                }),
                antipodal,
                claims,
            },
            None => GraphReport {
                family: family.to_string(),
                order: g.order(),
                size: g.size(),
                valency: g.regular_valency(),
                girth: None,
                diameter: None,
                aut_order: Value::Null,
                profile: None,
                antipodal,
                claims,
            },
        }
    }
}
