//! Colorings of neighborhood systems of graphs and graph powers, each with
//! a bound certified from the ordering actually used.

use serde::Serialize;

use crate::discrepancy::{beck_fiala, eval_discrepancy, Coloring};
use crate::error::{Error, Result};
use crate::graph::{graph_power, Graph};
use crate::orderings::{degeneracy_order, orient_along, wcol_heuristic_order, weak_reach_all, LinearOrder, Orientation};
use crate::setsystem::{bipartite_double, edge_color_system, neighborhood_system, EdgeColoring, SetSystem};

/// Colors `aux` (traced on `subset` when given) with Beck–Fiala and evaluates
/// the coloring on `target` traced the same way.
fn transfer(aux: &SetSystem, target: &SetSystem, subset: Option<&[usize]>) -> Result<(Coloring, u64)> {
    match subset {
        None => {
            let chi = beck_fiala(aux);
            let achieved = eval_discrepancy(target, &chi)?.max;
            Ok((chi, achieved))
        }
        Some(x) => {
            let (aux_x, _) = aux.trace(x)?;
            let (target_x, _) = target.trace(x)?;
            let chi = beck_fiala(&aux_x);
            let achieved = eval_discrepancy(&target_x, &chi)?.max;
            Ok((chi, achieved))
        }
    }
}

/// Outcome of coloring a neighborhood system through an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationRun {
    /// Coloring of the ground set (or of the traced subset, densely indexed).
    pub coloring: Coloring,
    /// Maximum out-degree of the orientation.
    pub out_degree: usize,
    /// Discrepancy of the coloring on the (traced) neighborhood system.
    pub achieved: u64,
}

/// Colors `{N(v)}` by running Beck–Fiala on the in-neighborhoods.
///
/// Each vertex lies in at most `Δ⁺` in-neighborhoods, and an out-neighborhood
/// has at most `Δ⁺` vertices, so the result stays below `3Δ⁺`.
pub fn orientation_coloring(g: &Graph, orientation: &Orientation) -> Result<OrientationRun> {
    orientation_coloring_on(g, orientation, None)
}

/// As [`orientation_coloring`], restricted to the trace on `subset`.
pub fn orientation_coloring_on(g: &Graph, orientation: &Orientation, subset: Option<&[usize]>) -> Result<OrientationRun> {
    if orientation.n() != g.n() {
        return Err(Error::invalid("orientation and graph sizes differ"));
    }
    let ins = SetSystem::new(g.n(), orientation.in_neighborhoods())?;
    let (coloring, achieved) = transfer(&ins, &neighborhood_system(g), subset)?;
    Ok(OrientationRun { coloring, out_degree: orientation.max_out_degree(), achieved })
}

/// `{WReach_i*[z] : z ∈ V, 1 ≤ i ≤ d}` where `WReach_i*[z] = {u : z ∈ WReach_i[u]}`.
pub fn wreach_star_system(g: &Graph, order: &LinearOrder, d: usize) -> Result<SetSystem> {
    if d == 0 {
        return Err(Error::invalid("radius must be at least 1"));
    }
    check_order(g, order)?;
    let mut sets = Vec::with_capacity(d * g.n());
    for i in 1..=d {
        let mut star = vec![Vec::new(); g.n()];
        for (u, reach) in weak_reach_all(g, order, i).into_iter().enumerate() {
            for z in reach {
                star[z].push(u);
            }
        }
        sets.extend(star);
    }
    SetSystem::new(g.n(), sets)
}

/// `M_i = max_v |WReach_i[v]|` for `i = 0..=d`.
pub fn reach_profile(g: &Graph, order: &LinearOrder, d: usize) -> Vec<usize> {
    (0..=d).map(|i| weak_reach_all(g, order, i).iter().map(Vec::len).max().unwrap_or(0)).collect()
}

fn check_order(g: &Graph, order: &LinearOrder) -> Result<()> {
    if order.len() != g.n() {
        return Err(Error::invalid(format!("order has {} vertices, graph has {}", order.len(), g.n())));
    }
    Ok(())
}

/// What [`power_coloring`] proves about its coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerColoringCertificate {
    pub d: usize,
    pub reach_profile: Vec<usize>,
    /// `(2d·M_{d-1} + 1)·M_d`.
    pub claimed_bound: u64,
    /// Measured discrepancy on the neighborhood system of `G^d`.
    pub achieved: u64,
    #[serde(serialize_with = "serialize_order")]
    pub order: LinearOrder,
}

fn serialize_order<S: serde::Serializer>(order: &LinearOrder, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(order.sequence())
}

impl PowerColoringCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }
}

/// `(2d·M_{d-1} + 1)·M_d` from a reach profile `M_0..=M_d`.
pub fn claimed_bound(profile: &[usize]) -> u64 {
    let d = profile.len() - 1;
    (2 * d as u64 * profile[d - 1] as u64 + 1) * profile[d] as u64
}

/// Colors the neighborhood system of `G^d` through the WReach* system of
/// `order` (smallest-last when `None`).
///
/// The certificate's bound is computed from the weak reachability profile of
/// the order used, and the achieved discrepancy is checked against it.
pub fn power_coloring(g: &Graph, d: usize, order: Option<&LinearOrder>) -> Result<(Coloring, PowerColoringCertificate)> {
    power_coloring_on(g, d, order, None)
}

/// As [`power_coloring`], on the trace over `subset` (coloring indexed densely over the sorted subset).
pub fn power_coloring_on(
    g: &Graph,
    d: usize,
    order: Option<&LinearOrder>,
    subset: Option<&[usize]>,
) -> Result<(Coloring, PowerColoringCertificate)> {
    let order = match order {
        Some(o) => o.clone(),
        None => wcol_heuristic_order(g),
    };
    let aux = wreach_star_system(g, &order, d)?;
    let target = neighborhood_system(&graph_power(g, d)?);
    let (coloring, achieved) = transfer(&aux, &target, subset)?;
    let reach_profile = reach_profile(g, &order, d);
    let claimed = claimed_bound(&reach_profile);
    if achieved >= claimed {
        return Err(Error::Invariant(format!("power coloring reached {achieved}, bound {claimed}")));
    }
    Ok((coloring, PowerColoringCertificate { d, reach_profile, claimed_bound: claimed, achieved, order }))
}

/// Coloring of an edge-colored graph's color neighborhoods, read off an
/// orientation coloring of the bipartite double.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColorRun {
    pub coloring: Coloring,
    /// degeneracy of the bipartite double, at most that of `G`
    pub double_degeneracy: usize,
    /// discrepancy on the color-neighborhood system
    pub achieved: u64,
}

pub fn edge_color_coloring(g: &Graph, gamma: &EdgeColoring) -> Result<EdgeColorRun> {
    let double = bipartite_double(g, gamma)?;
    let (order, double_degeneracy) = degeneracy_order(&double);
    let run = orientation_coloring(&double, &orient_along(&double, &order)?)?;
    let coloring = run.coloring.restrict(&(0..g.n()).collect::<Vec<_>>());
    let achieved = eval_discrepancy(&edge_color_system(g, gamma)?, &coloring)?.max;
    Ok(EdgeColorRun { coloring, double_degeneracy, achieved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::wcol_from_order;

    #[test]
    fn single_edge_star_sets() {
        let s = wreach_star_system(&Graph::path(2), &LinearOrder::identity(2), 1).unwrap();
        assert_eq!(s, SetSystem::new(2, [vec![0, 1], vec![1]]).unwrap());
    }

    #[test]
    fn edgeless_star_sets() {
        let s = wreach_star_system(&Graph::empty(3), &LinearOrder::identity(3), 2).unwrap();
        assert_eq!(s, SetSystem::new(3, [vec![0], vec![1], vec![2]]).unwrap());
        assert!(wreach_star_system(&Graph::empty(3), &LinearOrder::identity(3), 0).is_err());
    }

    #[test]
    fn star_degree_bound() {
        let g = Graph::grid(3, 4);
        let order = wcol_heuristic_order(&g);
        for d in 1..=3 {
            let s = wreach_star_system(&g, &order, d).unwrap();
            assert!(s.degree() <= d * wcol_from_order(&g, &order, d));
        }
    }

    #[test]
    fn radius_one_matches_degeneracy_bound() {
        for g in [Graph::petersen(), Graph::grid(4, 4), Graph::complete(5)] {
            let (order, deg) = degeneracy_order(&g);
            let (_, cert) = power_coloring(&g, 1, Some(&order)).unwrap();
            assert_eq!(cert.claimed_bound, 3 * (deg as u64 + 1));
            assert_eq!(cert.reach_profile[0], 1);
        }
    }

    #[test]
    fn grid_radius_two() {
        let g = Graph::grid(4, 4);
        let (_, cert) = power_coloring(&g, 2, None).unwrap();
        let m = &cert.reach_profile;
        assert_eq!(cert.claimed_bound, (4 * m[1] as u64 + 1) * m[2] as u64);
        assert!(cert.achieved < cert.claimed_bound);
    }

    #[test]
    fn single_vertex() {
        let (chi, cert) = power_coloring(&Graph::empty(1), 3, None).unwrap();
        assert_eq!(chi.len(), 1);
        assert_eq!(cert.achieved, 0);
        assert!(cert.claimed_bound >= 3);
    }

    #[test]
    fn certificate_json() {
        let (_, cert) = power_coloring(&Graph::path(3), 1, Some(&LinearOrder::identity(3))).unwrap();
        assert_eq!(
            cert.to_json(),
            format!(r#"{{"d":1,"reach_profile":[1,2],"claimed_bound":6,"achieved":{},"order":[0,1,2]}}"#, cert.achieved)
        );
    }

    #[test]
    fn orientation_pipeline() {
        let g = Graph::grid(5, 5);
        let (order, deg) = degeneracy_order(&g);
        let o = orient_along(&g, &order).unwrap();
        let run = orientation_coloring(&g, &o).unwrap();
        assert_eq!(run.out_degree, deg);
        assert!(run.achieved < 3 * deg as u64);
        let subset: Vec<usize> = (0..25).step_by(2).collect();
        let traced = orientation_coloring_on(&g, &o, Some(&subset)).unwrap();
        assert_eq!(traced.coloring.len(), subset.len());
        assert!(traced.achieved < 3 * deg as u64);
    }
}
