//! Unbounded forced-win analysis on the explored state graph.
//!
//! States are positions modulo move counters. The graph is explored
//! breadth-first from the start under the playable-move relation until the
//! state cap is reached; the forcing side's attractor to the goal states is
//! then computed by backward induction. Unexplored successors count as
//! non-wins, so a reported win is always sound; cycles outside the attractor
//! are draws for the forced side.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::position::{Position, StateKey};
use crate::stipulation::{playable_for, StipulationKind};
use crate::types::Color;

use super::SearchOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnboundedVerdict {
    ForcingSideWins,
    NotWonWithinCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnboundedResult {
    pub verdict: UnboundedVerdict,
    /// Exploration stopped at the cap; a non-win may then be incomplete.
    pub truncated: bool,
    pub states: usize,
    /// Length of the forced line in plies, for a win.
    pub plies_to_win: Option<u32>,
}

struct Node {
    mover: Color,
    succ: Vec<u32>,
    goal: bool,
    /// Some successor was never added to the graph.
    open: bool,
}

pub fn solve_unbounded(
    p: &Position,
    kind: StipulationKind,
    forcing: Color,
    opts: &SearchOptions,
) -> UnboundedResult {
    let cap = opts.node_cap.max(1) as usize;
    let size = p.size();
    let mut index: HashMap<StateKey, u32> = HashMap::new();
    let mut keys: Vec<StateKey> = Vec::new();
    let mut nodes: Vec<Node> = Vec::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;

    let start = p.state_key();
    index.insert(start.clone(), 0);
    keys.push(start);
    queue.push_back(0u32);

    while let Some(i) = queue.pop_front() {
        let pos = Position::from_state_key(size, &keys[i as usize]);
        let moves = playable_for(&pos, kind, forcing);
        let mover = pos.side_to_move();
        let mut node = Node {
            mover,
            succ: Vec::with_capacity(moves.len()),
            goal: false,
            open: false,
        };
        if moves.is_empty() {
            let mated = pos.is_check();
            node.goal = mated
                && if kind.is_self_kind() {
                    mover == forcing
                } else {
                    mover != forcing
                };
        }
        for m in &moves {
            let key = pos.apply_unchecked(m).state_key();
            match index.get(&key) {
                Some(&j) => node.succ.push(j),
                None if keys.len() < cap => {
                    let j = keys.len() as u32;
                    index.insert(key.clone(), j);
                    keys.push(key);
                    queue.push_back(j);
                    node.succ.push(j);
                }
                None => {
                    node.open = true;
                    truncated = true;
                }
            }
        }
        node.succ.sort_unstable();
        node.succ.dedup();
        debug_assert_eq!(nodes.len(), i as usize);
        nodes.push(node);
    }

    let n = nodes.len();
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, node) in nodes.iter().enumerate() {
        for &j in &node.succ {
            preds[j as usize].push(i as u32);
        }
    }
    let mut remaining: Vec<usize> = nodes.iter().map(|nd| nd.succ.len()).collect();
    let mut rank: Vec<Option<u32>> = vec![None; n];
    let mut work = VecDeque::new();
    for (i, node) in nodes.iter().enumerate() {
        if node.goal {
            rank[i] = Some(0);
            work.push_back(i);
        }
    }
    while let Some(j) = work.pop_front() {
        let r = rank[j].unwrap();
        for &i in &preds[j] {
            let i = i as usize;
            if rank[i].is_some() {
                continue;
            }
            let node = &nodes[i];
            if node.mover == forcing {
                rank[i] = Some(r + 1);
                work.push_back(i);
            } else {
                remaining[i] -= 1;
                if remaining[i] == 0 && !node.open {
                    rank[i] = Some(r + 1);
                    work.push_back(i);
                }
            }
        }
    }

    let won = rank[0];
    UnboundedResult {
        verdict: if won.is_some() {
            UnboundedVerdict::ForcingSideWins
        } else {
            UnboundedVerdict::NotWonWithinCap
        },
        truncated,
        states: n,
        plies_to_win: won,
    }
}
