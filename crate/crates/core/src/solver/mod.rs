//! Stipulation solving: directmate, selfmate, reflexmate and semi-reflexmate
//! in n, plus a capped unbounded forced-win analysis.
//!
//! A horizon `n` counts the forced side's moves and means "on or before":
//! `s#2` is solved when every defence leads to the forced side mating by its
//! second move at the latest. Stalemate at any node is a failure for the
//! forcing side. Under reflex kinds a forcing side obliged to mate loses
//! that branch.

mod search;
mod tree;
mod unbounded;

use std::time::Instant;

use rayon::prelude::*;

use crate::error::SolveError;
use crate::moves::Move;
use crate::position::Position;
use crate::stipulation::Stipulation;

use search::{CapHit, SearchResult, Searcher};

pub use tree::{
    Mark, NodeReport, Refutation, RefutationReason, SearchStats, SolutionNode, SolutionReport,
    SolutionTree, SolveStatus,
};
pub use unbounded::{solve_unbounded, UnboundedResult, UnboundedVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Budget of positions visited (or states explored, for the unbounded solver).
    pub node_cap: u64,
    /// Keep parallelism at the root only, so the search order below each
    /// first move is the sequential one. Results are identical either way.
    pub deterministic: bool,
    pub workers: usize,
    /// Store every winning continuation in the tree, not just the first.
    pub full_tree: bool,
    /// Position-keyed caching of sub-results.
    pub memoize: bool,
    /// Analyse every failing first move.
    pub refutations: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            node_cap: 50_000_000,
            deterministic: true,
            workers: 1,
            full_tree: false,
            memoize: true,
            refutations: true,
        }
    }
}

/// Outcome of examining one first move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TryOutcome {
    IsKey,
    Refuted(Refutation),
}

fn check_side(p: &Position, stip: &Stipulation) -> Result<(), SolveError> {
    if p.side_to_move() != stip.forcing_side {
        return Err(SolveError::SideMismatch {
            forcing: stip.forcing_side,
            to_move: p.side_to_move(),
        });
    }
    Ok(())
}

fn run_in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, SolveError> {
    if workers <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SolveError::Pool(e.to_string()))?;
    Ok(pool.install(f))
}

/// Solve `stip` from `p`, reporting every key (cook detection), the
/// variation tree below each key and, when requested, a refutation for every
/// failing first move.
pub fn solve(
    p: &Position,
    stip: &Stipulation,
    opts: &SearchOptions,
) -> Result<SolutionTree, SolveError> {
    check_side(p, stip)?;
    let started = Instant::now();
    let searcher = Searcher::new(
        stip,
        opts.node_cap,
        opts.memoize,
        !opts.deterministic && opts.workers > 1,
    );
    let roots = searcher.playable(p);
    let k = stip.n;

    let outcome: SearchResult<(Vec<Move>, Vec<SolutionNode>, Vec<Refutation>)> =
        run_in_pool(opts.workers, || {
            let verdicts: Vec<SearchResult<bool>> = if opts.workers > 1 {
                roots
                    .par_iter()
                    .map(|w| searcher.try_succeeds(p, w, k))
                    .collect()
            } else {
                roots
                    .iter()
                    .map(|w| searcher.try_succeeds(p, w, k))
                    .collect()
            };
            let mut keys = Vec::new();
            let mut failed = Vec::new();
            for (w, v) in roots.iter().zip(verdicts) {
                if v? {
                    keys.push(*w);
                } else {
                    failed.push(*w);
                }
            }
            let tree = keys
                .iter()
                .map(|w| build_node(&searcher, p, w, k, opts.full_tree))
                .collect::<SearchResult<Vec<_>>>()?;
            let refutations = if opts.refutations {
                failed
                    .iter()
                    .map(|w| build_refutation(&searcher, p, w, k))
                    .collect::<SearchResult<Vec<_>>>()?
            } else {
                Vec::new()
            };
            Ok((keys, tree, refutations))
        })?;

    let stats = SearchStats {
        nodes: searcher.nodes(),
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    Ok(match outcome {
        Ok((keys, tree, refutations)) => SolutionTree {
            stipulation: *stip,
            root_position: p.clone(),
            status: if keys.is_empty() {
                SolveStatus::NotSolved
            } else {
                SolveStatus::Solved
            },
            cooked: keys.len() > 1,
            keys,
            tree,
            refutations,
            stats,
        },
        Err(CapHit) => SolutionTree {
            stipulation: *stip,
            root_position: p.clone(),
            status: SolveStatus::Unknown,
            keys: Vec::new(),
            cooked: false,
            tree: Vec::new(),
            refutations: Vec::new(),
            stats,
        },
    })
}

/// Decide a single first move: either it is a key, or return why it fails.
pub fn refute(
    p: &Position,
    stip: &Stipulation,
    try_move: &Move,
    opts: &SearchOptions,
) -> Result<TryOutcome, SolveError> {
    check_side(p, stip)?;
    let searcher = Searcher::new(stip, opts.node_cap, opts.memoize, false);
    let Some(w) = searcher
        .playable(p)
        .into_iter()
        .find(|m| m.same_path(try_move))
    else {
        return Err(SolveError::NotPlayable(try_move.to_string()));
    };
    let result = (|| -> SearchResult<TryOutcome> {
        if searcher.try_succeeds(p, &w, stip.n)? {
            Ok(TryOutcome::IsKey)
        } else {
            Ok(TryOutcome::Refuted(build_refutation(
                &searcher, p, &w, stip.n,
            )?))
        }
    })();
    result.map_err(|_| SolveError::NodeCap(opts.node_cap))
}

fn build_node(
    s: &Searcher,
    p: &Position,
    w: &Move,
    k: u32,
    full: bool,
) -> SearchResult<SolutionNode> {
    let q = p.apply_unchecked(w);
    let mark = Mark::of(&q);
    let mut children = Vec::new();
    if mark != Mark::Mate || s.is_self_kind() {
        for b in s.playable(&q) {
            let r = q.apply_unchecked(&b);
            let bmark = Mark::of(&r);
            let mut grand = Vec::new();
            let goal_reached = bmark == Mark::Mate && s.is_self_kind();
            if !goal_reached && k >= 2 {
                for w2 in s.playable(&r) {
                    if s.try_succeeds(&r, &w2, k - 1)? {
                        grand.push(build_node(s, &r, &w2, k - 1, full)?);
                        if !full {
                            break;
                        }
                    }
                }
            }
            children.push(SolutionNode {
                mv: b,
                mark: bmark,
                children: grand,
            });
        }
    }
    Ok(SolutionNode {
        mv: *w,
        mark,
        children,
    })
}

fn build_refutation(s: &Searcher, p: &Position, w: &Move, k: u32) -> SearchResult<Refutation> {
    let q = p.apply_unchecked(w);
    let mark = Mark::of(&q);
    let reason = match mark {
        Mark::Mate => RefutationReason::ForcingSideDeliversMate,
        Mark::Stalemate => RefutationReason::Stalemate,
        _ => RefutationReason::HorizonExceeded,
    };
    if reason != RefutationReason::HorizonExceeded {
        return Ok(Refutation {
            try_move: *w,
            reason,
            replies: Vec::new(),
            line: Vec::new(),
        });
    }
    let replies = s.refuting_replies(p, w, k)?;
    let line = refutation_line(s, &q, &replies, k)?;
    Ok(Refutation {
        try_move: *w,
        reason,
        replies,
        line,
    })
}

/// First refuting reply, then a sample forcing continuation and its refutation.
fn refutation_line(
    s: &Searcher,
    q: &Position,
    replies: &[Move],
    k: u32,
) -> SearchResult<Vec<Move>> {
    let Some(b) = replies.first() else {
        return Ok(Vec::new());
    };
    let mut line = vec![*b];
    if k < 2 {
        return Ok(line);
    }
    let r = q.apply_unchecked(b);
    if Mark::of(&r) == Mark::Mate && s.is_self_kind() {
        return Ok(line);
    }
    let Some(w2) = s.playable(&r).into_iter().next() else {
        return Ok(line);
    };
    line.push(w2);
    let q2 = r.apply_unchecked(&w2);
    if matches!(Mark::of(&q2), Mark::Mate | Mark::Stalemate) {
        return Ok(line);
    }
    let replies2 = s.refuting_replies(&r, &w2, k - 1)?;
    line.extend(refutation_line(s, &q2, &replies2, k - 1)?);
    Ok(line)
}
