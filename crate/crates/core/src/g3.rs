//! The formula game G3.
//!
//! Players I and II share an assignment to the disjoint variable sets X and
//! Y. On a turn the mover flips exactly one of their own variables; a flip
//! that makes the mover's LOSE formula true is not allowed, and passing is
//! not allowed. A player with no allowed flip loses. Player I wins only by
//! leaving player II without a move; infinite play is not a win for I.
//!
//! `solve_g3` builds the whole state graph (2 · 2^|X ∪ Y| states) and
//! computes player I's attractor to the states where player II is stuck.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::G3Error;

/// Largest clause width allowed under the 12DNF bound.
pub const MAX_CLAUSE_WIDTH: usize = 12;
/// Default bound on |X| + |Y| for `solve_g3`.
pub const DEFAULT_VARIABLE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: String,
    #[serde(rename = "neg", default)]
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: impl Into<String>) -> Literal {
        Literal {
            var: var.into(),
            negated: false,
        }
    }

    pub fn neg(var: impl Into<String>) -> Literal {
        Literal {
            var: var.into(),
            negated: true,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬{}", self.var)
        } else {
            f.write_str(&self.var)
        }
    }
}

/// OR of clauses, each an AND of literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DnfFormula {
    pub clauses: Vec<Vec<Literal>>,
}

impl DnfFormula {
    pub fn new(clauses: Vec<Vec<Literal>>) -> DnfFormula {
        DnfFormula { clauses }
    }

    /// The empty disjunction.
    pub fn falsum() -> DnfFormula {
        DnfFormula::default()
    }

    /// A single empty clause.
    pub fn verum() -> DnfFormula {
        DnfFormula {
            clauses: vec![vec![]],
        }
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        self.clauses
            .iter()
            .flatten()
            .map(|l| l.var.as_str())
            .collect()
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("false");
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "true".to_string()
                } else {
                    format!(
                        "({})",
                        c.iter()
                            .map(|l| l.to_string())
                            .collect::<Vec<_>>()
                            .join(" ∧ ")
                    )
                }
            })
            .collect();
        f.write_str(&parts.join(" ∨ "))
    }
}

pub type Assignment = BTreeMap<String, bool>;

pub fn eval_dnf(f: &DnfFormula, a: &Assignment) -> Result<bool, G3Error> {
    let mut result = false;
    for clause in &f.clauses {
        let mut sat = true;
        for lit in clause {
            let v = *a
                .get(&lit.var)
                .ok_or_else(|| G3Error::UnboundVariable(lit.var.clone()))?;
            if v == lit.negated {
                sat = false;
            }
        }
        result |= sat;
    }
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::I => 1,
            Player::II => 2,
        }
    }

    pub fn from_number(n: u8) -> Result<Player, G3Error> {
        match n {
            1 => Ok(Player::I),
            2 => Ok(Player::II),
            other => Err(G3Error::BadTurn(other)),
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::II => "II",
        })
    }
}

/// A G3 position together with the variable partition it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G3State {
    pub turn: Player,
    pub variables_i: Vec<String>,
    pub variables_ii: Vec<String>,
    pub i_lose: DnfFormula,
    pub ii_lose: DnfFormula,
    pub assignment: Assignment,
}

impl G3State {
    /// Validate and build a state. With `strict_12dnf` clauses wider than
    /// twelve literals are rejected. Variables missing from `assignment`
    /// default to false.
    pub fn new(
        turn: Player,
        variables_i: Vec<String>,
        variables_ii: Vec<String>,
        i_lose: DnfFormula,
        ii_lose: DnfFormula,
        assignment: Assignment,
        strict_12dnf: bool,
    ) -> Result<G3State, G3Error> {
        let mut seen = BTreeSet::new();
        for v in &variables_i {
            if !seen.insert(v.as_str()) {
                return Err(G3Error::DuplicateVariable(v.clone()));
            }
        }
        let mut seen_ii = BTreeSet::new();
        for v in &variables_ii {
            if seen.contains(v.as_str()) {
                return Err(G3Error::SharedVariable(v.clone()));
            }
            if !seen_ii.insert(v.as_str()) {
                return Err(G3Error::DuplicateVariable(v.clone()));
            }
        }
        seen.extend(seen_ii);
        for f in [&i_lose, &ii_lose] {
            if let Some(v) = f.variables().into_iter().find(|v| !seen.contains(v)) {
                return Err(G3Error::UnknownVariable(v.to_string()));
            }
            if strict_12dnf && f.max_width() > MAX_CLAUSE_WIDTH {
                return Err(G3Error::ClauseTooWide(f.max_width()));
            }
        }
        if let Some(v) = assignment.keys().find(|v| !seen.contains(v.as_str())) {
            return Err(G3Error::UnknownVariable(v.clone()));
        }
        let mut full = Assignment::new();
        for v in &seen {
            full.insert(v.to_string(), assignment.get(*v).copied().unwrap_or(false));
        }
        Ok(G3State {
            turn,
            variables_i,
            variables_ii,
            i_lose,
            ii_lose,
            assignment: full,
        })
    }

    pub fn variables_of(&self, p: Player) -> &[String] {
        match p {
            Player::I => &self.variables_i,
            Player::II => &self.variables_ii,
        }
    }

    pub fn lose_formula(&self, p: Player) -> &DnfFormula {
        match p {
            Player::I => &self.i_lose,
            Player::II => &self.ii_lose,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variables_i.len() + self.variables_ii.len()
    }

    pub fn from_json(text: &str) -> Result<G3State, G3Error> {
        let inst: G3Instance =
            serde_json::from_str(text).map_err(|e| G3Error::Json(e.to_string()))?;
        inst.into_state(true)
    }

    pub fn to_instance(&self) -> G3Instance {
        G3Instance {
            variables_i: self.variables_i.clone(),
            variables_ii: self.variables_ii.clone(),
            i_lose: self.i_lose.clone(),
            ii_lose: self.ii_lose.clone(),
            turn: self.turn.number(),
            assignment: self.assignment.clone(),
        }
    }
}

/// JSON form of a state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G3Instance {
    #[serde(rename = "variables_I")]
    pub variables_i: Vec<String>,
    #[serde(rename = "variables_II")]
    pub variables_ii: Vec<String>,
    pub i_lose: DnfFormula,
    pub ii_lose: DnfFormula,
    pub turn: u8,
    #[serde(default)]
    pub assignment: Assignment,
}

impl G3Instance {
    pub fn into_state(self, strict_12dnf: bool) -> Result<G3State, G3Error> {
        G3State::new(
            Player::from_number(self.turn)?,
            self.variables_i,
            self.variables_ii,
            self.i_lose,
            self.ii_lose,
            self.assignment,
            strict_12dnf,
        )
    }
}

/// All successors: the mover flips one own variable without making their
/// LOSE formula true. Empty when the mover is stuck.
pub fn g3_moves(s: &G3State) -> Vec<G3State> {
    let mover = s.turn;
    let lose = s.lose_formula(mover);
    let mut out = Vec::new();
    for v in s.variables_of(mover) {
        let mut a = s.assignment.clone();
        let cur = a[v];
        a.insert(v.clone(), !cur);
        if !eval_dnf(lose, &a).expect("state assignments are total") {
            out.push(G3State {
                turn: mover.other(),
                assignment: a,
                ..s.clone()
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum G3Verdict {
    Player1ForcesWin,
    Player1CannotForceWin,
}

impl fmt::Display for G3Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            G3Verdict::Player1ForcesWin => "player I forces a win",
            G3Verdict::Player1CannotForceWin => "player I cannot force a win",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct G3Options {
    /// Upper bound on |X| + |Y|.
    pub limit: usize,
}

impl Default for G3Options {
    fn default() -> G3Options {
        G3Options {
            limit: DEFAULT_VARIABLE_LIMIT,
        }
    }
}

/// Clause as (must be true, must be false) bit masks.
type Clause = (u32, u32);

#[derive(Clone, Debug)]
struct Compiled {
    n: usize,
    /// Bit positions of player I's and player II's variables.
    own: [Vec<u32>; 2],
    lose: [Vec<Clause>; 2],
}

impl Compiled {
    fn new(s: &G3State) -> Compiled {
        let names: Vec<&String> = s.variables_i.iter().chain(&s.variables_ii).collect();
        let bit = |v: &str| {
            names
                .iter()
                .position(|n| n.as_str() == v)
                .expect("declared variable") as u32
        };
        let compile = |f: &DnfFormula| -> Vec<Clause> {
            f.clauses
                .iter()
                .map(|c| {
                    c.iter().fold((0u32, 0u32), |(p, n), l| {
                        let b = 1 << bit(&l.var);
                        if l.negated {
                            (p, n | b)
                        } else {
                            (p | b, n)
                        }
                    })
                })
                .collect()
        };
        let ni = s.variables_i.len() as u32;
        Compiled {
            n: names.len(),
            own: [(0..ni).collect(), (ni..names.len() as u32).collect()],
            lose: [compile(&s.i_lose), compile(&s.ii_lose)],
        }
    }

    fn loses(&self, who: usize, mask: u32) -> bool {
        // A clause with p & n != 0 is unsatisfiable and never matches.
        self.lose[who]
            .iter()
            .any(|&(p, n)| mask & p == p && mask & n == 0)
    }

    fn index(&self, who: usize, mask: u32) -> usize {
        (who << self.n) | mask as usize
    }

    fn split(&self, idx: usize) -> (usize, u32) {
        (idx >> self.n, (idx & ((1 << self.n) - 1)) as u32)
    }

    fn successors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let (who, mask) = self.split(idx);
        self.own[who].iter().filter_map(move |&b| {
            let m = mask ^ (1 << b);
            (!self.loses(who, m)).then(|| self.index(1 - who, m))
        })
    }

    /// States whose mover can reach `idx` in one move.
    fn predecessors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        let (who, mask) = self.split(idx);
        let mover = 1 - who;
        let legal = !self.loses(mover, mask);
        self.own[mover]
            .iter()
            .filter(move |_| legal)
            .map(move |&b| self.index(mover, mask ^ (1 << b)))
    }

    fn mask_of(&self, s: &G3State) -> u32 {
        s.variables_i
            .iter()
            .chain(&s.variables_ii)
            .enumerate()
            .filter(|(_, v)| s.assignment[*v])
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

const NOT_WON: u32 = u32::MAX;

/// Result of `solve_g3`: the verdict for the start state plus the whole
/// winning region, its ranks and player I's strategy.
#[derive(Clone, Debug)]
pub struct G3Solution {
    pub verdict: G3Verdict,
    /// Size of the state graph.
    pub states: usize,
    /// States in player I's attractor.
    pub winning_states: usize,
    /// Moves by both players until player II is stuck, under optimal play.
    pub plies_to_win: Option<u32>,
    start: G3State,
    game: Compiled,
    rank: Vec<u32>,
    choice: Vec<u32>,
}

impl G3Solution {
    fn state_at(&self, idx: usize) -> G3State {
        let (who, mask) = self.game.split(idx);
        let mut a = self.start.assignment.clone();
        for (i, v) in self
            .start
            .variables_i
            .iter()
            .chain(&self.start.variables_ii)
            .enumerate()
        {
            a.insert(v.clone(), mask & (1 << i) != 0);
        }
        G3State {
            turn: if who == 0 { Player::I } else { Player::II },
            assignment: a,
            ..self.start.clone()
        }
    }

    /// Is `s` (same instance as the solved one) won for player I?
    pub fn is_winning(&self, s: &G3State) -> bool {
        self.rank[self.game.index(s.turn as usize, self.game.mask_of(s))] != NOT_WON
    }

    /// Player I's strategy move from a winning player-I state.
    pub fn strategy_move(&self, s: &G3State) -> Option<G3State> {
        if s.turn != Player::I {
            return None;
        }
        let idx = self.game.index(0, self.game.mask_of(s));
        (self.rank[idx] != NOT_WON).then(|| self.state_at(self.choice[idx] as usize))
    }

    /// A principal line from the start under the strategy, with player II
    /// choosing the slowest defence.
    pub fn principal_line(&self) -> Vec<G3State> {
        let mut idx = self
            .game
            .index(self.start.turn as usize, self.game.mask_of(&self.start));
        let mut out = vec![self.state_at(idx)];
        if self.rank[idx] == NOT_WON {
            return out;
        }
        while self.rank[idx] > 0 {
            idx = if self.game.split(idx).0 == 0 {
                self.choice[idx] as usize
            } else {
                self.game
                    .successors(idx)
                    .max_by_key(|&j| self.rank[j])
                    .expect("non-terminal player II state has moves")
            };
            out.push(self.state_at(idx));
        }
        out
    }

    /// Independent check of the computed strategy over the whole winning
    /// region: every winning player-I state has its strategy move into a
    /// lower-ranked winning state, every winning player-II state is stuck or
    /// has all moves into lower-ranked winning states. Returns the number of
    /// states audited, or the first offending state.
    pub fn audit(&self) -> Result<usize, Box<G3State>> {
        let mut audited = 0;
        for idx in 0..self.rank.len() {
            let r = self.rank[idx];
            if r == NOT_WON {
                continue;
            }
            audited += 1;
            let (who, _) = self.game.split(idx);
            let ok = if who == 0 {
                let c = self.choice[idx] as usize;
                r > 0 && self.game.successors(idx).any(|j| j == c) && self.rank[c] < r
            } else {
                let succ: Vec<usize> = self.game.successors(idx).collect();
                if succ.is_empty() {
                    r == 0
                } else {
                    succ.iter().all(|&j| self.rank[j] < r)
                }
            };
            if !ok {
                return Err(Box::new(self.state_at(idx)));
            }
        }
        Ok(audited)
    }
}

pub fn solve_g3(s: &G3State) -> Result<G3Solution, G3Error> {
    solve_g3_with(s, &G3Options::default())
}

pub fn solve_g3_with(s: &G3State, opts: &G3Options) -> Result<G3Solution, G3Error> {
    let count = s.variable_count();
    if count > opts.limit || count > 30 {
        return Err(G3Error::TooLarge {
            count,
            limit: opts.limit.min(30),
        });
    }
    let game = Compiled::new(s);
    let total = 2usize << game.n;
    let mut rank = vec![NOT_WON; total];
    let mut choice = vec![0u32; total];
    // Player II states: moves not yet known to lead into the region.
    let mut pending = vec![0u32; total];
    let mut queue = VecDeque::new();
    let half = 1usize << game.n;
    for idx in half..total {
        pending[idx] = game.successors(idx).count() as u32;
        if pending[idx] == 0 {
            rank[idx] = 0;
            queue.push_back(idx);
        }
    }
    while let Some(idx) = queue.pop_front() {
        let r = rank[idx];
        for pred in game.predecessors(idx) {
            if rank[pred] != NOT_WON {
                continue;
            }
            if pred < half {
                rank[pred] = r + 1;
                choice[pred] = idx as u32;
                queue.push_back(pred);
            } else {
                pending[pred] -= 1;
                if pending[pred] == 0 {
                    rank[pred] = r + 1;
                    queue.push_back(pred);
                }
            }
        }
    }
    let start = game.index(s.turn as usize, game.mask_of(s));
    let won = rank[start] != NOT_WON;
    Ok(G3Solution {
        verdict: if won {
            G3Verdict::Player1ForcesWin
        } else {
            G3Verdict::Player1CannotForceWin
        },
        states: total,
        winning_states: rank.iter().filter(|&&r| r != NOT_WON).count(),
        plies_to_win: won.then_some(rank[start]),
        start: s.clone(),
        game,
        rank,
        choice,
    })
}
