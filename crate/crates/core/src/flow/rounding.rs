use super::{feasible_integral_flow, BoundedFlowNetwork, FlowError};
use crate::instance::Instance;
use crate::solution::{FractionalAssignment, Solution, SUPPORT_EPS};

/// Marginals this close to an integer are treated as that integer.
pub const SNAP_TOL: f64 = 1e-7;

pub fn snap(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() <= SNAP_TOL {
        r
    } else {
        v
    }
}

fn floor_ceil(v: f64) -> (u64, u64) {
    let v = snap(v).max(0.0);
    (v.floor() as u64, v.ceil() as u64)
}

/// The rounding network of a fractional assignment.
///
/// Nodes: source 0, sink 1, one node per point, one per (center slot, color)
/// pair and one per center slot. `point_arcs[j]` lists `(slot, arc)` for the
/// arcs leaving point `j`.
#[derive(Debug, Clone)]
pub struct RoundingNetwork {
    pub net: BoundedFlowNetwork,
    pub point_arcs: Vec<Vec<(usize, usize)>>,
}

pub fn rounding_network(x: &FractionalAssignment, inst: &Instance) -> Result<RoundingNetwork, FlowError> {
    let n = x.n();
    let m = inst.m();
    let k = x.centers().len();
    if n != inst.n() {
        return Err(FlowError::Malformed(format!(
            "assignment covers {n} points, instance has {}",
            inst.n()
        )));
    }
    let point = |j: usize| 2 + j;
    let pair = |q: usize, h: usize| 2 + n + q * m + h;
    let center = |q: usize| 2 + n + k * m + q;
    let mut net = BoundedFlowNetwork::new(2 + n + k * m + k, 0, 1)?;
    let (total, by_color) = x.masses(inst);

    let mut point_arcs = Vec::with_capacity(n);
    for j in 0..n {
        net.add_arc(0, point(j), 0, 1)?;
        let h = inst.color(j);
        let mut mine = Vec::new();
        for &(q, v) in x.row(j) {
            if v > SUPPORT_EPS {
                mine.push((q, net.add_arc(point(j), pair(q, h), 0, 1)?));
            }
        }
        point_arcs.push(mine);
    }
    for q in 0..k {
        for h in 0..m {
            let (lo, hi) = floor_ceil(by_color[q][h]);
            if hi > 0 {
                net.add_arc(pair(q, h), center(q), lo, hi)?;
            }
        }
        let (lo, hi) = floor_ceil(total[q]);
        if hi > 0 {
            net.add_arc(center(q), 1, lo, hi)?;
        }
    }
    Ok(RoundingNetwork { net, point_arcs })
}

/// Rounds `x` to an integral assignment over the same centers.
///
/// Every point goes to a center in its fractional support, and every center's
/// total and per-color counts land between the floor and the ceiling of the
/// corresponding fractional mass.
pub fn max_flow_gf(x: &FractionalAssignment, inst: &Instance) -> Result<Solution, FlowError> {
    let rn = rounding_network(x, inst)?;
    let n = x.n();
    let flow = feasible_integral_flow(&rn.net, n as u64)
        .ok_or(FlowError::InternalInfeasible { required: n as u64 })?;
    let centers = x.centers().to_vec();
    let assign = rn
        .point_arcs
        .iter()
        .map(|arcs| {
            arcs.iter()
                .find(|&&(_, a)| flow[a] == 1)
                .map(|&(q, _)| centers[q])
                .ok_or(FlowError::InternalInfeasible { required: n as u64 })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Solution::new(centers, assign, n).map_err(|e| FlowError::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(colors: Vec<usize>) -> Instance {
        let feats = (0..colors.len()).map(|i| vec![i as f64]).collect();
        Instance::from_features(feats, colors, 2).unwrap()
    }

    #[test]
    fn integral_input_is_kept() {
        let inst = line(vec![0, 1, 0, 1, 0]);
        let sol = Solution::new(vec![1, 3], vec![1, 1, 3, 3, 3], 5).unwrap();
        let x = FractionalAssignment::from_solution(&sol);
        assert_eq!(max_flow_gf(&x, &inst).unwrap(), sol);
    }

    #[test]
    fn uniform_halves_split_one_per_color() {
        let inst = line(vec![0, 0, 1, 1]);
        let rows = vec![vec![(0, 0.5), (1, 0.5)]; 4];
        let x = FractionalAssignment::new(vec![0, 3], rows).unwrap();
        let sol = max_flow_gf(&x, &inst).unwrap();
        for members in sol.clusters() {
            let colors: Vec<usize> = members.iter().map(|&j| inst.color(j)).collect();
            assert_eq!(colors.len(), 2);
            assert!(colors.contains(&0) && colors.contains(&1));
        }
    }

    #[test]
    fn snapping() {
        assert_eq!(snap(3.00000000001), 3.0);
        assert_eq!(snap(2.9999999999), 3.0);
        assert_eq!(snap(2.5), 2.5);
        assert_eq!(floor_ceil(2.99999999999), (3, 3));
        assert_eq!(floor_ceil(3.75), (3, 4));
    }
}
