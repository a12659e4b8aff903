//! Exact integral min-cost flow with node balances, arc lower bounds,
//! capacities and costs, plus a brute-force oracle for small networks.
//!
//! Lower bounds are removed by the usual balance transformation, infinite
//! capacities are capped by the total remaining supply, and the core solve
//! is successive shortest augmenting paths with node potentials. Everything
//! is 64-bit integral; networks in this crate are far from overflow.

use crate::error::{Error, Result};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

pub const INF: i64 = i64::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    /// `None` means unbounded.
    pub cap: Option<i64>,
    pub cost: i64,
}

#[derive(Debug, Clone, Default)]
pub struct FlowNetwork {
    pub balance: Vec<i64>,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    /// Per-arc value, aligned with `FlowNetwork::arcs`.
    pub values: Vec<i64>,
    pub cost: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Flow),
    Infeasible,
}

impl FlowNetwork {
    pub fn add_node(&mut self, balance: i64) -> usize {
        self.balance.push(balance);
        self.balance.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, cap: Option<i64>, cost: i64) -> usize {
        self.arcs.push(Arc { from, to, lower, cap, cost });
        self.arcs.len() - 1
    }

    fn check(&self) -> Result<()> {
        for (i, a) in self.arcs.iter().enumerate() {
            if a.lower < 0 || a.cost < 0 {
                return Err(Error::InvalidArc(i, a.lower, a.cost));
            }
            if let Some(c) = a.cap {
                if a.lower > c {
                    return Err(Error::InvalidArc(i, a.lower, c));
                }
            }
        }
        Ok(())
    }

    /// Total positive balance after the lower-bound transformation; a safe
    /// cap for unbounded arcs.
    fn supply_cap(&self) -> i64 {
        let mut b = self.balance.clone();
        for a in &self.arcs {
            b[a.from] -= a.lower;
            b[a.to] += a.lower;
        }
        b.iter().filter(|x| **x > 0).sum::<i64>()
    }

    /// Finite copy of the network: every `None` capacity replaced by the
    /// lower bound plus the supply cap.
    pub fn capped(&self) -> FlowNetwork {
        let extra = self.supply_cap();
        let mut net = self.clone();
        for a in &mut net.arcs {
            if a.cap.is_none() {
                a.cap = Some(a.lower + extra);
            }
        }
        net
    }

    /// Independent feasibility checker for a candidate flow.
    pub fn validate(&self, flow: &Flow) -> bool {
        if flow.values.len() != self.arcs.len() {
            return false;
        }
        let mut net_out = vec![0i64; self.balance.len()];
        let mut cost = 0;
        for (a, &v) in self.arcs.iter().zip(&flow.values) {
            if v < a.lower || a.cap.is_some_and(|c| v > c) {
                return false;
            }
            net_out[a.from] += v;
            net_out[a.to] -= v;
            cost += a.cost * v;
        }
        cost == flow.cost && net_out.iter().zip(&self.balance).all(|(o, b)| o == b)
    }

    /// Plain-text dump in DIMACS min-cost flow format, for debugging.
    pub fn to_dimacs(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "p min {} {}", self.balance.len(), self.arcs.len());
        for (i, b) in self.balance.iter().enumerate() {
            if *b != 0 {
                let _ = writeln!(s, "n {} {}", i + 1, b);
            }
        }
        for a in &self.arcs {
            let cap = a.cap.map_or("inf".to_string(), |c| c.to_string());
            let _ = writeln!(s, "a {} {} {} {} {}", a.from + 1, a.to + 1, a.lower, cap, a.cost);
        }
        s
    }
}

/// Compute a minimum-cost feasible integral flow, or report infeasibility.
/// Deterministic for a fixed input.
pub fn solve_min_cost(net: &FlowNetwork) -> Result<Outcome> {
    net.check()?;
    let n = net.balance.len();
    let capped = net.capped();

    // Lower bounds out: shifted balances, capacities cap-lower.
    let mut balance = capped.balance.clone();
    for a in &capped.arcs {
        balance[a.from] -= a.lower;
        balance[a.to] += a.lower;
    }

    // Residual graph with a super source/sink for the balances.
    let source = n;
    let sink = n + 1;
    let mut g = Residual::new(n + 2);
    for a in &capped.arcs {
        g.add(a.from, a.to, a.cap.unwrap() - a.lower, a.cost);
    }
    let mut required = 0;
    for (v, &b) in balance.iter().enumerate() {
        if b > 0 {
            g.add(source, v, b, 0);
            required += b;
        } else if b < 0 {
            g.add(v, sink, -b, 0);
        }
    }

    let shipped = g.min_cost_max_flow(source, sink);
    if shipped < required {
        return Ok(Outcome::Infeasible);
    }

    let mut values = Vec::with_capacity(net.arcs.len());
    let mut cost = 0;
    for (i, a) in capped.arcs.iter().enumerate() {
        let v = a.lower + g.flow_on(i);
        cost += a.cost * v;
        values.push(v);
    }
    let flow = Flow { values, cost };
    debug_assert!(net.validate(&flow));
    Ok(Outcome::Feasible(flow))
}

struct Residual {
    first: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { first: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), cost: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) {
        self.first[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.first[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
    }

    /// Flow pushed through the i-th added arc.
    fn flow_on(&self, i: usize) -> i64 {
        self.cap[2 * i + 1]
    }

    /// Successive shortest paths with potentials; costs are non-negative so
    /// the zero potential is valid initially.
    fn min_cost_max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.first.len();
        let mut potential = vec![0i64; n];
        let mut total = 0;
        loop {
            let mut dist = vec![INF; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &e in &self.first[u] {
                    if self.cap[e] <= 0 {
                        continue;
                    }
                    let v = self.to[e];
                    let nd = d + self.cost[e] + potential[u] - potential[v];
                    debug_assert!(self.cost[e] + potential[u] - potential[v] >= 0);
                    if nd < dist[v] {
                        dist[v] = nd;
                        parent[v] = e;
                        heap.push(Reverse((nd, v)));
                    }
                }
            }
            if dist[t] >= INF {
                return total;
            }
            for v in 0..n {
                if dist[v] < INF {
                    potential[v] += dist[v];
                }
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = parent[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = parent[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            total += push;
        }
    }
}

/// Exhaustive minimum over all integral arc assignments within bounds.
/// Arcs must be few and capacities finite (`FlowNetwork::capped` helps).
pub fn brute_force_min_cost(net: &FlowNetwork) -> Result<Outcome> {
    brute_force_with_bound(net, 100_000_000)
}

pub fn brute_force_with_bound(net: &FlowNetwork, state_bound: u128) -> Result<Outcome> {
    net.check()?;
    let capped = net.capped();
    let mut states: u128 = 1;
    for a in &capped.arcs {
        states = states.saturating_mul((a.cap.unwrap() - a.lower + 1) as u128);
        if states > state_bound {
            return Err(Error::TooLarge(states, state_bound));
        }
    }

    let n = capped.balance.len();
    // remaining undecided arcs per node, for early balance pruning
    let mut remaining = vec![0usize; n];
    for a in &capped.arcs {
        remaining[a.from] += 1;
        remaining[a.to] += 1;
    }
    let mut net_out = vec![0i64; n];
    let mut values = vec![0i64; capped.arcs.len()];
    let mut best: Option<(i64, Vec<i64>)> = None;

    fn rec(
        arcs: &[Arc],
        i: usize,
        balance: &[i64],
        remaining: &mut [i64],
        net_out: &mut [i64],
        values: &mut [i64],
        cost_so_far: i64,
        best: &mut Option<(i64, Vec<i64>)>,
    ) {
        if let Some((c, _)) = best {
            if cost_so_far >= *c {
                return;
            }
        }
        if i == arcs.len() {
            if net_out.iter().zip(balance).all(|(o, b)| o == b) {
                *best = Some((cost_so_far, values.to_vec()));
            }
            return;
        }
        let a = arcs[i];
        remaining[a.from] -= 1;
        remaining[a.to] -= 1;
        for v in a.lower..=a.cap.unwrap() {
            net_out[a.from] += v;
            net_out[a.to] -= v;
            values[i] = v;
            let ok = (remaining[a.from] > 0 || net_out[a.from] == balance[a.from])
                && (remaining[a.to] > 0 || net_out[a.to] == balance[a.to]);
            if ok {
                rec(arcs, i + 1, balance, remaining, net_out, values, cost_so_far + a.cost * v, best);
            }
            net_out[a.from] -= v;
            net_out[a.to] += v;
        }
        remaining[a.from] += 1;
        remaining[a.to] += 1;
    }

    let mut rem: Vec<i64> = remaining.iter().map(|&r| r as i64).collect();
    // isolated nodes must balance on their own
    if (0..n).any(|v| rem[v] == 0 && capped.balance[v] != 0) {
        return Ok(Outcome::Infeasible);
    }
    rec(&capped.arcs, 0, &capped.balance, &mut rem, &mut net_out, &mut values, 0, &mut best);
    Ok(match best {
        Some((cost, values)) => Outcome::Feasible(Flow { values, cost }),
        None => Outcome::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn zero_balances_give_zero_flow() {
        let mut net = FlowNetwork::default();
        let a = net.add_node(0);
        let b = net.add_node(0);
        net.add_arc(a, b, 0, None, 1);
        match solve_min_cost(&net).unwrap() {
            Outcome::Feasible(f) => assert_eq!(f.cost, 0),
            Outcome::Infeasible => panic!("feasible network"),
        }
    }

    #[test]
    fn single_arc_ships_the_supply() {
        let mut net = FlowNetwork::default();
        let a = net.add_node(2);
        let b = net.add_node(-2);
        net.add_arc(a, b, 0, None, 1);
        match solve_min_cost(&net).unwrap() {
            Outcome::Feasible(f) => {
                assert_eq!(f.values, vec![2]);
                assert_eq!(f.cost, 2);
            }
            Outcome::Infeasible => panic!("feasible network"),
        }
        match brute_force_min_cost(&net).unwrap() {
            Outcome::Feasible(f) => assert_eq!(f.cost, 2),
            Outcome::Infeasible => panic!("feasible network"),
        }
    }

    #[test]
    fn unbalanced_component_is_infeasible() {
        let mut net = FlowNetwork::default();
        net.add_node(1);
        net.add_node(0);
        net.add_arc(0, 1, 0, None, 0);
        assert_eq!(solve_min_cost(&net).unwrap(), Outcome::Infeasible);
        assert_eq!(brute_force_min_cost(&net).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn lower_bounds_are_respected() {
        let mut net = FlowNetwork::default();
        let a = net.add_node(0);
        let b = net.add_node(0);
        net.add_arc(a, b, 1, Some(4), 2);
        net.add_arc(b, a, 0, Some(4), 3);
        match solve_min_cost(&net).unwrap() {
            Outcome::Feasible(f) => {
                // one unit forced around the cycle
                assert_eq!(f.values, vec![1, 1]);
                assert_eq!(f.cost, 5);
            }
            Outcome::Infeasible => panic!("feasible network"),
        }
    }

    pub fn random_network(rng: &mut ChaCha12Rng) -> FlowNetwork {
        let n = rng.gen_range(2..=8);
        let arcs = rng.gen_range(1..=14);
        let mut net = FlowNetwork::default();
        for _ in 0..n {
            net.add_node(rng.gen_range(-3..=3));
        }
        // fix the total to zero so that feasibility is not trivially absent
        let total: i64 = net.balance.iter().sum();
        net.balance[0] -= total;
        for _ in 0..arcs {
            let from = rng.gen_range(0..n);
            let mut to = rng.gen_range(0..n);
            while to == from {
                to = rng.gen_range(0..n);
            }
            let cap = rng.gen_range(0..=3);
            let lower = rng.gen_range(0..=cap);
            let cost = rng.gen_range(0..=4);
            net.add_arc(from, to, lower, Some(cap), cost);
        }
        net
    }

    #[test]
    fn solver_matches_brute_force_on_random_networks() {
        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
        let mut feasible = 0;
        for _ in 0..300 {
            let net = random_network(&mut rng);
            let fast = solve_min_cost(&net).unwrap();
            let slow = brute_force_min_cost(&net).unwrap();
            match (&fast, &slow) {
                (Outcome::Feasible(f), Outcome::Feasible(s)) => {
                    assert_eq!(f.cost, s.cost, "{}", net.to_dimacs());
                    assert!(net.validate(f));
                    feasible += 1;
                }
                (Outcome::Infeasible, Outcome::Infeasible) => {}
                _ => panic!("solver and oracle disagree:\n{}", net.to_dimacs()),
            }
        }
        assert!(feasible > 20, "random networks almost never feasible");
    }

    #[test]
    fn brute_force_rejects_huge_spaces() {
        let mut net = FlowNetwork::default();
        for _ in 0..10 {
            net.add_node(0);
        }
        for i in 0..9 {
            net.add_arc(i, i + 1, 0, Some(1000), 0);
        }
        assert!(matches!(brute_force_with_bound(&net, 1000), Err(Error::TooLarge(_, _))));
    }
}
