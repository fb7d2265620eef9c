//! Solution trees and their text/JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::moves::Move;
use crate::position::Position;
use crate::stipulation::Stipulation;
use crate::types::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mark {
    None,
    Check,
    Mate,
    Stalemate,
}

impl Mark {
    pub fn of(p: &Position) -> Mark {
        match (p.is_check(), p.has_legal_move()) {
            (true, false) => Mark::Mate,
            (true, true) => Mark::Check,
            (false, false) => Mark::Stalemate,
            (false, true) => Mark::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionNode {
    pub mv: Move,
    /// State of the position after `mv`.
    pub mark: Mark,
    pub children: Vec<SolutionNode>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefutationReason {
    /// The try mates the forced side, which loses a self-type stipulation.
    ForcingSideDeliversMate,
    /// The try leaves the forced side without a move.
    Stalemate,
    /// The forced side has a reply that survives the horizon.
    HorizonExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub try_move: Move,
    pub reason: RefutationReason,
    /// Every refuting reply, checks first.
    pub replies: Vec<Move>,
    /// A concrete line: the first refuting reply followed by one sample
    /// continuation and its refutation, down to the horizon.
    pub line: Vec<Move>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Solved,
    NotSolved,
    /// The node cap was hit before a verdict.
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug)]
pub struct SolutionTree {
    pub stipulation: Stipulation,
    pub root_position: Position,
    pub status: SolveStatus,
    pub keys: Vec<Move>,
    pub cooked: bool,
    /// One node per key.
    pub tree: Vec<SolutionNode>,
    /// Failing first moves in canonical order.
    pub refutations: Vec<Refutation>,
    pub stats: SearchStats,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NodeReport {
    #[serde(rename = "move")]
    pub mv: Option<String>,
    pub mark: Mark,
    pub children: Vec<NodeReport>,
}

/// JSON shape of a solution.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionReport {
    pub stipulation: String,
    pub status: SolveStatus,
    pub keys: Vec<String>,
    pub cooked: bool,
    pub tree: NodeReport,
    pub refutations: BTreeMap<String, Vec<String>>,
    pub reasons: BTreeMap<String, RefutationReason>,
    pub stats: SearchStats,
}

impl SolutionTree {
    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }

    pub fn key_texts(&self) -> Vec<String> {
        self.keys
            .iter()
            .map(|k| self.root_position.move_text(k))
            .collect()
    }

    pub fn refutation_for(&self, try_move: &Move) -> Option<&Refutation> {
        self.refutations
            .iter()
            .find(|r| r.try_move.same_path(try_move))
    }

    /// All root-to-leaf variations as move text sequences (key first).
    pub fn variations(&self) -> Vec<Vec<String>> {
        fn walk(
            p: &Position,
            n: &SolutionNode,
            prefix: &mut Vec<String>,
            out: &mut Vec<Vec<String>>,
        ) {
            prefix.push(p.move_text(&n.mv));
            if n.children.is_empty() {
                out.push(prefix.clone());
            } else {
                let next = p.apply_unchecked(&n.mv);
                for c in &n.children {
                    walk(&next, c, prefix, out);
                }
            }
            prefix.pop();
        }
        let mut out = Vec::new();
        for n in &self.tree {
            walk(&self.root_position, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn report(&self) -> SolutionReport {
        fn node(p: &Position, n: &SolutionNode) -> NodeReport {
            let next = p.apply_unchecked(&n.mv);
            NodeReport {
                mv: Some(p.move_text(&n.mv)),
                mark: n.mark,
                children: n.children.iter().map(|c| node(&next, c)).collect(),
            }
        }
        let root = &self.root_position;
        let mut refutations = BTreeMap::new();
        let mut reasons = BTreeMap::new();
        for r in &self.refutations {
            let key = root.move_text(&r.try_move);
            let after = root.apply_unchecked(&r.try_move);
            refutations.insert(key.clone(), line_text(&after, &r.line));
            reasons.insert(key, r.reason);
        }
        SolutionReport {
            stipulation: self.stipulation.to_string(),
            status: self.status,
            keys: self.key_texts(),
            cooked: self.cooked,
            tree: NodeReport {
                mv: None,
                mark: Mark::of(root),
                children: self.tree.iter().map(|n| node(root, n)).collect(),
            },
            refutations,
            reasons,
            stats: self.stats,
        }
    }

    /// Numbered variations, one move per line, indented by depth.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let root = &self.root_position;
        let _ = writeln!(out, "{}  {}", self.stipulation, status_word(self.status));
        for n in &self.tree {
            render_node(root, n, 0, true, &mut out);
        }
        if !self.refutations.is_empty() {
            let _ = writeln!(out, "tries:");
            for r in &self.refutations {
                let after = root.apply_unchecked(&r.try_move);
                let first = numbered(root, &r.try_move);
                let rest = numbered_line(&after, &r.line);
                let reason = match r.reason {
                    RefutationReason::ForcingSideDeliversMate => "delivers mate",
                    RefutationReason::Stalemate => "stalemate",
                    RefutationReason::HorizonExceeded => "refuted",
                };
                let _ = writeln!(out, "  {first}? {rest} ({reason})");
            }
        }
        let _ = writeln!(
            out,
            "nodes: {}  time: {} ms",
            self.stats.nodes, self.stats.elapsed_ms
        );
        out
    }
}

fn status_word(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Solved => "solved",
        SolveStatus::NotSolved => "no solution",
        SolveStatus::Unknown => "unknown (node cap reached)",
    }
}

fn numbered(p: &Position, m: &Move) -> String {
    let prefix = match p.side_to_move() {
        Color::White => format!("{}.", p.fullmove_number()),
        Color::Black => format!("{}...", p.fullmove_number()),
    };
    format!("{prefix}{}", p.move_text(m))
}

fn numbered_line(start: &Position, line: &[Move]) -> String {
    let mut p = start.clone();
    let mut parts = Vec::new();
    for m in line {
        parts.push(numbered(&p, m));
        p = p.apply_unchecked(m);
    }
    parts.join(" ")
}

fn line_text(start: &Position, line: &[Move]) -> Vec<String> {
    let mut p = start.clone();
    line.iter()
        .map(|m| {
            let t = p.move_text(m);
            p = p.apply_unchecked(m);
            t
        })
        .collect()
}

fn render_node(p: &Position, n: &SolutionNode, depth: usize, is_key: bool, out: &mut String) {
    let _ = write!(out, "{}{}", "   ".repeat(depth), numbered(p, &n.mv));
    if is_key {
        out.push('!');
    }
    if n.mark == Mark::Stalemate {
        out.push_str(" =");
    }
    out.push('\n');
    let next = p.apply_unchecked(&n.mv);
    for c in &n.children {
        render_node(&next, c, depth + 1, false, out);
    }
}
