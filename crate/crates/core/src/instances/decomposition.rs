//! Path decompositions: validation, conversion to nice form, greedy labels.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::edge_key;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Introduce(usize),
    Forget(usize),
    Edge(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceDecomposition {
    /// Starts and ends with the empty bag; consecutive bags differ by one vertex.
    pub bags: Vec<Vec<usize>>,
    pub commands: Vec<Command>,
}

impl NiceDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }
}

/// Path decomposition axioms plus simple-graph sanity checks.
pub fn validate_decomposition(n: usize, edges: &[(usize, usize)], bags: &[Vec<usize>]) -> Vec<String> {
    let mut out = Vec::new();
    let mut seen_edges = BTreeSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            out.push(format!("edge endpoint out of range: ({u}, {v})"));
        } else if u == v {
            out.push(format!("self-loop at {u}"));
        } else if !seen_edges.insert(edge_key(u, v)) {
            out.push(format!("duplicate edge: ({u}, {v})"));
        }
    }
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (i, bag) in bags.iter().enumerate() {
        let distinct: BTreeSet<_> = bag.iter().collect();
        if distinct.len() != bag.len() {
            out.push(format!("bag {i} repeats a vertex"));
        }
        for &v in &distinct {
            if *v >= n {
                out.push(format!("bag {i} contains unknown vertex {v}"));
                continue;
            }
            first[*v] = first[*v].min(i);
            last[*v] = i;
            count[*v] += 1;
        }
    }
    for v in 0..n {
        if count[v] == 0 {
            out.push(format!("vertex {v} in no bag"));
        } else if last[v] - first[v] + 1 != count[v] {
            out.push(format!("bags containing vertex {v} are not contiguous"));
        }
    }
    for &(u, v) in edges {
        if u < n && v < n && u != v {
            let covered = bags.iter().any(|b| b.contains(&u) && b.contains(&v));
            if !covered {
                out.push(format!("edge uncovered: ({u}, {v})"));
            }
        }
    }
    out
}

/// Converts a path decomposition into nice form and the matching command
/// sequence. Vertices leaving between two bags are forgotten before new ones
/// are introduced, so the width never grows; each edge is emitted right after
/// its later endpoint is introduced.
pub fn make_nice(n: usize, edges: &[(usize, usize)], bags: &[Vec<usize>]) -> Result<NiceDecomposition> {
    let problems = validate_decomposition(n, edges, bags);
    if !problems.is_empty() {
        return Err(Error::Invalid(problems));
    }
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let mut live: Vec<usize> = Vec::new();
    let mut out_bags = vec![Vec::new()];
    let mut commands = Vec::new();
    let snapshot = |live: &[usize]| {
        let mut b = live.to_vec();
        b.sort_unstable();
        b
    };

    for bag in bags {
        let wanted: BTreeSet<usize> = bag.iter().copied().collect();
        let leaving: Vec<usize> = live.iter().rev().copied().filter(|v| !wanted.contains(v)).collect();
        for v in leaving {
            live.retain(|&x| x != v);
            commands.push(Command::Forget(v));
            out_bags.push(snapshot(&live));
        }
        for &v in &wanted {
            if live.contains(&v) {
                continue;
            }
            live.push(v);
            commands.push(Command::Introduce(v));
            out_bags.push(snapshot(&live));
            for &u in &live {
                if u != v && adjacency[v].binary_search(&u).is_ok() {
                    commands.push(Command::Edge(u, v));
                }
            }
        }
    }
    while let Some(v) = live.pop() {
        commands.push(Command::Forget(v));
        out_bags.push(snapshot(&live));
    }
    Ok(NiceDecomposition {
        bags: out_bags,
        commands,
    })
}

/// Greedy labelling from `0..=width` such that vertices alive at the same time
/// get distinct labels. Returns one label per vertex `0..n`.
pub fn greedy_labels(n: usize, commands: &[Command], width: usize) -> Result<Vec<usize>> {
    let mut labels = vec![usize::MAX; n];
    let mut used = vec![false; width + 1];
    for &cmd in commands {
        match cmd {
            Command::Introduce(v) => {
                let free = used.iter().position(|&u| !u).ok_or_else(|| {
                    Error::Internal(format!("more than {} vertices alive when introducing {v}", width + 1))
                })?;
                used[free] = true;
                labels[v] = free;
            }
            Command::Forget(v) => {
                let l = labels[v];
                if l == usize::MAX || !used[l] {
                    return Err(Error::Internal(format!("forgetting {v} which is not alive")));
                }
                used[l] = false;
            }
            Command::Edge(..) => {}
        }
    }
    if labels.iter().any(|&l| l == usize::MAX) {
        return Err(Error::Internal("some vertex was never introduced".into()));
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_bag() {
        let nice = make_nice(2, &[(0, 1)], &[vec![0, 1]]).unwrap();
        assert_eq!(nice.bags, vec![vec![], vec![0], vec![0, 1], vec![0], vec![]]);
        assert_eq!(
            nice.commands,
            vec![
                Command::Introduce(0),
                Command::Introduce(1),
                Command::Edge(0, 1),
                Command::Forget(1),
                Command::Forget(0)
            ]
        );
    }

    #[test]
    fn triangle_keeps_width() {
        let nice = make_nice(3, &[(0, 1), (1, 2), (0, 2)], &[vec![0, 1, 2]]).unwrap();
        assert_eq!(nice.width(), 2);
        let count = |f: fn(&Command) -> bool| nice.commands.iter().filter(|c| f(c)).count();
        assert_eq!(count(|c| matches!(c, Command::Introduce(_))), 3);
        assert_eq!(count(|c| matches!(c, Command::Edge(..))), 3);
        assert_eq!(count(|c| matches!(c, Command::Forget(_))), 3);
        let labels = greedy_labels(3, &nice.commands, 2).unwrap();
        let distinct: BTreeSet<_> = labels.iter().collect();
        assert_eq!(distinct.len(), 3);
    }

    #[test]
    fn empty_graph() {
        let nice = make_nice(0, &[], &[]).unwrap();
        assert_eq!(nice.bags, vec![Vec::<usize>::new()]);
        assert!(nice.commands.is_empty());
    }

    #[test]
    fn path_labels_alternate() {
        let nice = make_nice(3, &[(0, 1), (1, 2)], &[vec![0, 1], vec![1, 2]]).unwrap();
        let labels = greedy_labels(3, &nice.commands, 1).unwrap();
        assert_ne!(labels[0], labels[1]);
        assert_ne!(labels[1], labels[2]);
        assert_eq!(greedy_labels(1, &make_nice(1, &[], &[vec![0]]).unwrap().commands, 0).unwrap(), vec![0]);
    }

    #[test]
    fn invalid_decompositions_rejected() {
        assert!(make_nice(2, &[(0, 1)], &[vec![0], vec![1]]).is_err());
        assert!(!validate_decomposition(2, &[], &[vec![0], vec![1], vec![0]]).is_empty());
        assert!(!validate_decomposition(2, &[], &[vec![0]]).is_empty());
    }
}
