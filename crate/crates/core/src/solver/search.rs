//! Bounded AND/OR search shared by `solve` and `refute`.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::moves::Move;
use crate::position::{Position, StateKey};
use crate::stipulation::{playable_for, Stipulation, StipulationKind};
use crate::types::Color;

/// Raised when the node budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CapHit;

pub(crate) type SearchResult<T> = Result<T, CapHit>;

pub(crate) struct Searcher {
    kind: StipulationKind,
    forcing: Color,
    memo: Option<DashMap<(StateKey, u32), bool>>,
    nodes: AtomicU64,
    cap: u64,
    nested_parallel: bool,
}

impl Searcher {
    pub fn new(stip: &Stipulation, cap: u64, memoize: bool, nested_parallel: bool) -> Searcher {
        Searcher {
            kind: stip.kind,
            forcing: stip.forcing_side,
            memo: memoize.then(DashMap::new),
            nodes: AtomicU64::new(0),
            cap,
            nested_parallel,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn visit(&self, p: &Position, m: &Move) -> SearchResult<Position> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(CapHit);
        }
        Ok(p.apply_unchecked(m))
    }

    pub fn playable(&self, p: &Position) -> Vec<Move> {
        playable_for(p, self.kind, self.forcing)
    }

    pub fn is_self_kind(&self) -> bool {
        self.kind.is_self_kind()
    }

    /// Does the forcing side (to move in `p`) reach the goal within `k` of the
    /// opponent's moves?
    pub fn wins(&self, p: &Position, k: u32) -> SearchResult<bool> {
        debug_assert_eq!(p.side_to_move(), self.forcing);
        let key = self.memo.as_ref().map(|_| (p.state_key(), k));
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(v) = memo.get(key) {
                return Ok(*v);
            }
        }
        let moves = self.playable(p);
        let result = if self.nested_parallel && k >= 2 {
            let found = moves
                .par_iter()
                .map(|w| self.try_succeeds(p, w, k))
                .find_any(|r| !matches!(r, Ok(false)));
            found.unwrap_or(Ok(false))?
        } else {
            let mut won = false;
            for w in &moves {
                if self.try_succeeds(p, w, k)? {
                    won = true;
                    break;
                }
            }
            won
        };
        if let (Some(memo), Some(key)) = (&self.memo, key) {
            memo.insert(key, result);
        }
        Ok(result)
    }

    /// Does forcing move `w` from `p` reach the goal within `k`?
    pub fn try_succeeds(&self, p: &Position, w: &Move, k: u32) -> SearchResult<bool> {
        let q = self.visit(p, w)?;
        if !self.is_self_kind() && q.is_checkmate() {
            return Ok(true);
        }
        let replies = self.playable(&q);
        if replies.is_empty() {
            // Forced side mated (a self-kind failure) or stalemated.
            return Ok(false);
        }
        if !self.is_self_kind() && k < 2 {
            return Ok(false);
        }
        for b in &replies {
            if !self.reply_answered(&q, b, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// After the forced side plays `b` in `q`, is the goal met or still forced?
    pub fn reply_answered(&self, q: &Position, b: &Move, k: u32) -> SearchResult<bool> {
        let r = self.visit(q, b)?;
        if self.is_self_kind() && r.is_checkmate() {
            return Ok(true);
        }
        if k < 2 {
            return Ok(false);
        }
        self.wins(&r, k - 1)
    }

    /// Forced-side replies that defeat `w`, checks first, then canonical order.
    /// Empty when `w` succeeds or when `w` itself mates/stalemates.
    pub fn refuting_replies(&self, p: &Position, w: &Move, k: u32) -> SearchResult<Vec<Move>> {
        let q = self.visit(p, w)?;
        if !self.is_self_kind() && q.is_checkmate() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for b in self.playable(&q) {
            if !self.reply_answered(&q, &b, k)? {
                out.push(b);
            }
        }
        let checks: Vec<bool> = out
            .iter()
            .map(|b| q.apply_unchecked(b).is_check())
            .collect();
        let mut indexed: Vec<(bool, Move)> = checks.into_iter().zip(out).collect();
        indexed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Ok(indexed.into_iter().map(|(_, m)| m).collect())
    }
}
