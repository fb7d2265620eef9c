//! Independent reference implementations used as test oracles.
//!
//! The move generator here is deliberately naive: a hash-map board, moves
//! generated per piece with no shared tables, legality decided by scanning
//! every enemy piece for an attack on the king after the move.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use selfmate_core::g3::Assignment;
use selfmate_core::{Color, DnfFormula, G3State, Literal, PieceKind, Player, Position};

pub const PAULY: &str = "8x8 KB3N2/P1P1p1P1/5P1k/4P2p/7P/8/6B1/7b w - - 0 1";
pub const BURBACH: &str = "8x8 1R4B1/5r2/5P1Q/p5r1/P7/KN6/1p1P1p1P/1k2b2R w - - 0 1";

#[derive(Clone, Debug)]
pub struct RefBoard {
    pub files: i32,
    pub ranks: i32,
    /// (file, rank) -> (is_white, kind letter upper case)
    pub cells: HashMap<(i32, i32), (bool, char)>,
    pub white_to_move: bool,
    pub ep: Option<(i32, i32)>,
}

pub type RefMove = ((i32, i32), (i32, i32), Option<char>);

impl RefBoard {
    pub fn from_position(p: &Position) -> RefBoard {
        let mut cells = HashMap::new();
        for (sq, piece) in p.pieces() {
            cells.insert(
                (sq.file as i32, sq.rank as i32),
                (piece.color == Color::White, piece.kind.letter()),
            );
        }
        RefBoard {
            files: p.size().files as i32,
            ranks: p.size().ranks as i32,
            cells,
            white_to_move: p.side_to_move() == Color::White,
            ep: p.ep_target().map(|s| (s.file as i32, s.rank as i32)),
        }
    }

    fn on(&self, f: i32, r: i32) -> bool {
        f >= 1 && r >= 1 && f <= self.files && r <= self.ranks
    }

    fn attacks(&self, from: (i32, i32), target: (i32, i32)) -> bool {
        let Some(&(white, kind)) = self.cells.get(&from) else {
            return false;
        };
        let (df, dr) = (target.0 - from.0, target.1 - from.1);
        let slide = |dirs: &[(i32, i32)]| {
            dirs.iter().any(|&(sf, sr)| {
                let (mut f, mut r) = (from.0 + sf, from.1 + sr);
                while self.on(f, r) {
                    if (f, r) == target {
                        return true;
                    }
                    if self.cells.contains_key(&(f, r)) {
                        return false;
                    }
                    f += sf;
                    r += sr;
                }
                false
            })
        };
        let rook = [(1, 0), (-1, 0), (0, 1), (0, -1)];
        let bishop = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        match kind {
            'P' => df.abs() == 1 && dr == if white { 1 } else { -1 },
            'N' => (df.abs() == 1 && dr.abs() == 2) || (df.abs() == 2 && dr.abs() == 1),
            'K' => df.abs() <= 1 && dr.abs() <= 1 && (df, dr) != (0, 0),
            'R' => slide(&rook),
            'B' => slide(&bishop),
            'Q' => slide(&rook) || slide(&bishop),
            _ => unreachable!(),
        }
    }

    pub fn in_check(&self, white: bool) -> bool {
        let king = self
            .cells
            .iter()
            .find(|(_, &(w, k))| w == white && k == 'K')
            .map(|(s, _)| *s)
            .expect("king present");
        self.cells
            .iter()
            .filter(|(_, &(w, _))| w != white)
            .any(|(s, _)| self.attacks(*s, king))
    }

    fn pseudo(&self) -> Vec<RefMove> {
        let me = self.white_to_move;
        let mut out = Vec::new();
        for (&from, &(white, kind)) in &self.cells {
            if white != me {
                continue;
            }
            let target_ok = |to: (i32, i32)| match self.cells.get(&to) {
                None => true,
                Some(&(w, k)) => w != me && k != 'K',
            };
            match kind {
                'N' | 'K' => {
                    for df in -2..=2 {
                        for dr in -2..=2 {
                            let to = (from.0 + df, from.1 + dr);
                            if self.on(to.0, to.1) && self.attacks(from, to) && target_ok(to) {
                                out.push((from, to, None));
                            }
                        }
                    }
                }
                'R' | 'B' | 'Q' => {
                    for f in 1..=self.files {
                        for r in 1..=self.ranks {
                            let to = (f, r);
                            if self.attacks(from, to) && target_ok(to) {
                                out.push((from, to, None));
                            }
                        }
                    }
                }
                'P' => {
                    let dir = if me { 1 } else { -1 };
                    let last = if me { self.ranks } else { 1 };
                    let start = if me { 2 } else { self.ranks - 1 };
                    if from.1 == last {
                        continue;
                    }
                    let mut targets = Vec::new();
                    let one = (from.0, from.1 + dir);
                    if !self.cells.contains_key(&one) {
                        targets.push(one);
                        let two = (from.0, from.1 + 2 * dir);
                        if from.1 == start
                            && two.1 != last
                            && self.on(two.0, two.1)
                            && !self.cells.contains_key(&two)
                        {
                            targets.push(two);
                        }
                    }
                    for df in [-1, 1] {
                        let to = (from.0 + df, from.1 + dir);
                        if !self.on(to.0, to.1) {
                            continue;
                        }
                        let enemy =
                            matches!(self.cells.get(&to), Some(&(w, k)) if w != me && k != 'K');
                        if enemy || self.ep == Some(to) {
                            targets.push(to);
                        }
                    }
                    for to in targets {
                        if to.1 == last {
                            for pr in ['Q', 'R', 'B', 'N'] {
                                out.push((from, to, Some(pr)));
                            }
                        } else {
                            out.push((from, to, None));
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        out
    }

    pub fn play(&self, m: &RefMove) -> RefBoard {
        let (from, to, promo) = *m;
        let mut b = self.clone();
        let (white, kind) = b.cells.remove(&from).unwrap();
        if kind == 'P' && Some(to) == self.ep && !self.cells.contains_key(&to) {
            b.cells.remove(&(to.0, from.1));
        }
        b.cells.insert(to, (white, promo.unwrap_or(kind)));
        b.ep = (kind == 'P' && (to.1 - from.1).abs() == 2).then_some((from.0, (from.1 + to.1) / 2));
        b.white_to_move = !self.white_to_move;
        b
    }

    pub fn legal(&self) -> Vec<RefMove> {
        let mut v: Vec<RefMove> = self
            .pseudo()
            .into_iter()
            .filter(|m| !self.play(m).in_check(self.white_to_move))
            .collect();
        v.sort();
        v
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let moves = self.legal();
        if depth == 1 {
            return moves.len() as u64;
        }
        moves.iter().map(|m| self.play(m).perft(depth - 1)).sum()
    }
}

pub fn engine_moves(p: &Position) -> Vec<RefMove> {
    let mut v: Vec<RefMove> = p
        .legal_moves()
        .iter()
        .map(|m| {
            (
                (m.from.file as i32, m.from.rank as i32),
                (m.to.file as i32, m.to.rank as i32),
                m.promotion.map(PieceKind::letter),
            )
        })
        .collect();
    v.sort();
    v
}

/// Plain recursive G3 solver on named assignments: player I wins within
/// `d` plies. Memoized on (turn, assignment, d); a depth bound equal to the
/// number of states cuts cycles.
pub struct G3Oracle {
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    /// Clauses as (variable, required value) lists.
    pub i_lose: Vec<Vec<(String, bool)>>,
    pub ii_lose: Vec<Vec<(String, bool)>>,
    memo: HashMap<(bool, BTreeMap<String, bool>, u32), bool>,
}

fn holds(f: &[Vec<(String, bool)>], a: &BTreeMap<String, bool>) -> bool {
    f.iter().any(|c| c.iter().all(|(v, want)| a[v] == *want))
}

impl G3Oracle {
    pub fn new(
        xs: Vec<String>,
        ys: Vec<String>,
        i_lose: Vec<Vec<(String, bool)>>,
        ii_lose: Vec<Vec<(String, bool)>>,
    ) -> G3Oracle {
        G3Oracle {
            xs,
            ys,
            i_lose,
            ii_lose,
            memo: HashMap::new(),
        }
    }

    pub fn moves(
        &self,
        player_one: bool,
        a: &BTreeMap<String, bool>,
    ) -> Vec<BTreeMap<String, bool>> {
        let (vars, lose) = if player_one {
            (&self.xs, &self.i_lose)
        } else {
            (&self.ys, &self.ii_lose)
        };
        vars.iter()
            .map(|v| {
                let mut b = a.clone();
                b.insert(v.clone(), !a[v]);
                b
            })
            .filter(|b| !holds(lose, b))
            .collect()
    }

    pub fn wins_within(&mut self, player_one: bool, a: &BTreeMap<String, bool>, d: u32) -> bool {
        let key = (player_one, a.clone(), d);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let succ = self.moves(player_one, a);
        let v = if player_one {
            d > 0 && succ.iter().any(|b| self.wins_within(false, b, d - 1))
        } else if succ.is_empty() {
            true
        } else {
            d > 0 && succ.iter().all(|b| self.wins_within(true, b, d - 1))
        };
        self.memo.insert(key, v);
        v
    }

    pub fn wins(&mut self, player_one: bool, a: &BTreeMap<String, bool>) -> bool {
        let states = 2u32 << (self.xs.len() + self.ys.len());
        self.wins_within(player_one, a, states)
    }
}

/// Random instance: `nx` + `ny` variables, up to `max_clauses` clauses of
/// width 1..=3 per formula, random assignment and turn.
pub fn random_instance(rng: &mut ChaCha8Rng, nx: usize, ny: usize, max_clauses: usize) -> G3State {
    let xs: Vec<String> = (0..nx).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (0..ny).map(|i| format!("y{i}")).collect();
    let all: Vec<String> = xs.iter().chain(&ys).cloned().collect();
    let formula = |rng: &mut ChaCha8Rng| {
        let clauses = (0..rng.gen_range(0..=max_clauses))
            .map(|_| {
                (0..rng.gen_range(1..=3))
                    .map(|_| Literal {
                        var: all[rng.gen_range(0..all.len())].clone(),
                        negated: rng.gen(),
                    })
                    .collect()
            })
            .collect();
        DnfFormula::new(clauses)
    };
    let i_lose = formula(rng);
    let ii_lose = formula(rng);
    let assignment: Assignment = all.iter().map(|v| (v.clone(), rng.gen())).collect();
    let turn = if rng.gen() { Player::I } else { Player::II };
    G3State::new(turn, xs, ys, i_lose, ii_lose, assignment, true).unwrap()
}

pub fn oracle_for(s: &G3State) -> G3Oracle {
    let conv = |f: &DnfFormula| {
        f.clauses
            .iter()
            .map(|c| c.iter().map(|l| (l.var.clone(), !l.negated)).collect())
            .collect()
    };
    G3Oracle::new(
        s.variables_i.clone(),
        s.variables_ii.clone(),
        conv(&s.i_lose),
        conv(&s.ii_lose),
    )
}
