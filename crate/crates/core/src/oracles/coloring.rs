use std::collections::HashMap;

use super::{resource, Budget, Method, Solution, Verdict};
use crate::error::Result;
use crate::instances::{make_nice, ColoringInstance, Command};

const BACKTRACK_LIMIT: usize = 15;

/// Backtracking for small graphs, otherwise a DP over the colorings of the
/// bags of the supplied decomposition.
pub fn solve_coloring(inst: &ColoringInstance, budget: &Budget) -> Result<Verdict> {
    if inst.n <= BACKTRACK_LIMIT {
        let (found, nodes) = backtrack(inst);
        return Ok(Verdict::from_option(found.map(Solution::Coloring), Method::Backtracking, nodes));
    }
    solve_coloring_by_decomposition(inst, budget)
}

fn adjacency(inst: &ColoringInstance) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); inst.n];
    for &(u, v) in &inst.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

fn backtrack(inst: &ColoringInstance) -> (Option<Vec<u8>>, u64) {
    let adj = adjacency(inst);
    let mut colors = vec![u8::MAX; inst.n];
    let mut nodes = 0u64;
    fn go(v: usize, adj: &[Vec<usize>], colors: &mut [u8], nodes: &mut u64) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..3u8 {
            *nodes += 1;
            if adj[v].iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if go(v + 1, adj, colors, nodes) {
                    return true;
                }
                colors[v] = u8::MAX;
            }
        }
        false
    }
    let ok = go(0, &adj, &mut colors, &mut nodes);
    (ok.then_some(colors), nodes)
}

/// DP over the nice form of the decomposition. A state is the coloring of the
/// current bag, stored in bag order.
pub fn solve_coloring_by_decomposition(inst: &ColoringInstance, budget: &Budget) -> Result<Verdict> {
    let nice = make_nice(inst.n, &inst.edges, &inst.bags)?;
    let adj = adjacency(inst);
    let mut live: Vec<usize> = Vec::new();
    // Each layer: states (colors of `live` in order) with parent index.
    let mut layers: Vec<Vec<(Vec<u8>, usize)>> = vec![vec![(Vec::new(), 0)]];
    let mut layer_live: Vec<Vec<usize>> = vec![Vec::new()];
    let mut explored = 1u64;
    for cmd in &nice.commands {
        let prev = layers.last().expect("nonempty");
        let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
        let mut next = Vec::new();
        match *cmd {
            Command::Edge(..) => continue,
            Command::Introduce(v) => {
                for (pi, (state, _)) in prev.iter().enumerate() {
                    for c in 0..3u8 {
                        let clash = live
                            .iter()
                            .zip(state)
                            .any(|(&u, &cu)| cu == c && adj[v].contains(&u));
                        if !clash {
                            let mut s = state.clone();
                            s.push(c);
                            if seen.insert(s.clone(), ()).is_none() {
                                next.push((s, pi));
                            }
                        }
                    }
                }
                live.push(v);
            }
            Command::Forget(v) => {
                let pos = live.iter().position(|&u| u == v).expect("forgetting a live vertex");
                for (pi, (state, _)) in prev.iter().enumerate() {
                    let mut s = state.clone();
                    s.remove(pos);
                    if seen.insert(s.clone(), ()).is_none() {
                        next.push((s, pi));
                    }
                }
                live.remove(pos);
            }
        }
        explored += next.len() as u64;
        if explored > budget.max_states {
            return Err(resource("coloring instance"));
        }
        if next.is_empty() {
            return Ok(Verdict::no(Method::Dp, explored));
        }
        layers.push(next);
        layer_live.push(live.clone());
    }
    // Walk back, reading each vertex's color from the layer where it is live.
    let mut colors = vec![0u8; inst.n];
    let mut at = 0;
    for i in (1..layers.len()).rev() {
        let (state, pi) = &layers[i][at];
        for (&v, &c) in layer_live[i].iter().zip(state) {
            colors[v] = c;
        }
        at = *pi;
    }
    Ok(Verdict::yes(Solution::Coloring(colors), Method::Dp, explored))
}

/// All 3^n colorings.
pub fn coloring_bruteforce(inst: &ColoringInstance) -> Option<Vec<u8>> {
    let total = 3u64.checked_pow(inst.n as u32)?;
    (0..total).find_map(|mut code| {
        let colors: Vec<u8> = (0..inst.n)
            .map(|_| {
                let c = (code % 3) as u8;
                code /= 3;
                c
            })
            .collect();
        inst.edges.iter().all(|&(u, v)| colors[u] != colors[v]).then_some(colors)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clique(n: usize) -> ColoringInstance {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        ColoringInstance {
            n,
            edges,
            bags: vec![(0..n).collect()],
        }
    }

    #[test]
    fn examples() {
        let b = Budget::default();
        assert!(solve_coloring(&clique(3), &b).unwrap().is_yes());
        assert!(!solve_coloring(&clique(4), &b).unwrap().is_yes());
        assert!(solve_coloring(&clique(2), &b).unwrap().is_yes());
        assert!(solve_coloring_by_decomposition(&clique(3), &b).unwrap().is_yes());
        assert!(!solve_coloring_by_decomposition(&clique(4), &b).unwrap().is_yes());
    }

    #[test]
    fn long_path_uses_decomposition_dp() {
        let n = 40;
        let inst = ColoringInstance {
            n,
            edges: (0..n - 1).map(|i| (i, i + 1)).collect(),
            bags: (0..n - 1).map(|i| vec![i, i + 1]).collect(),
        };
        let v = solve_coloring(&inst, &Budget::default()).unwrap();
        assert_eq!(v.telemetry.method, Method::Dp);
        let Some(Solution::Coloring(c)) = v.solution else { panic!() };
        assert!(inst.edges.iter().all(|&(u, w)| c[u] != c[w]));
    }
}
