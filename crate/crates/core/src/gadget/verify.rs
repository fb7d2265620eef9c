//! Verification battery for the gadgets.

use serde::{Deserialize, Serialize};

use crate::error::GadgetError;
use crate::moves::Move;
use crate::position::Position;
use crate::stipulation::{playable_for, StipulationKind};
use crate::types::{BoardSize, Color, Square};

use super::{build_gadget, GadgetKind, GadgetSpec, ReplyRule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: GadgetKind,
    pub anchor: Square,
    pub board: String,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn check(&self, prefix: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name.starts_with(prefix))
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{} at {} on {}\n", self.kind, self.anchor, self.board);
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            s.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.detail));
            if !c.witnesses.is_empty() {
                s.push_str(&format!("         {}\n", c.witnesses.join(" ")));
            }
        }
        s.push_str(if self.all_pass {
            "all checks pass\n"
        } else {
            "some checks FAIL\n"
        });
        s
    }
}

/// Run the battery on the figure as drawn (anchor a1, figure-sized board).
pub fn verify_gadget(kind: GadgetKind) -> VerificationReport {
    verify_gadget_at(kind, Square::new(1, 1), kind.figure_board())
        .expect("figure fits its own board")
}

pub fn verify_gadget_at(
    kind: GadgetKind,
    anchor: Square,
    board: BoardSize,
) -> Result<VerificationReport, GadgetError> {
    let g = build_gadget(kind, anchor, board)?;
    let mut checks = Vec::new();
    for side in [Color::White, Color::Black] {
        checks.push(immobility(&g, side));
    }
    if !g.exceptions.is_empty() {
        checks.push(exceptions_mate(&g));
    }
    for i in 0..g.entries.len() {
        let (c, d) = entry_checks(&g, i);
        checks.push(c);
        checks.push(d);
    }
    match kind {
        GadgetKind::Selfmate => checks.push(reflex_binds_rooks(&g)),
        GadgetKind::SemiReflexmate => checks.push(white_unobliged(&g)),
        _ => {}
    }
    let all_pass = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        kind,
        anchor,
        board: board.to_string(),
        checks,
        all_pass,
    })
}

fn texts(p: &Position, moves: &[Move]) -> Vec<String> {
    moves.iter().map(|m| p.move_text(m)).collect()
}

fn failed(name: String, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed: false,
        witnesses: Vec::new(),
        detail,
    }
}

fn immobility(g: &GadgetSpec, side: Color) -> CheckResult {
    let name = format!("(a) immobility, {side} to move");
    let p = match g.harness_position(side) {
        Ok(p) => p,
        Err(e) => return failed(name, format!("harness position invalid: {e}")),
    };
    let legal = p.legal_moves();
    let offending: Vec<Move> = legal
        .iter()
        .filter(|m| g.pieces.contains_key(&m.from) && !g.exceptions.contains(&m.from))
        .copied()
        .collect();
    let mut mobile: Vec<Square> = offending.iter().map(|m| m.from).collect();
    mobile.dedup();
    let from_exceptions = legal
        .iter()
        .filter(|m| g.exceptions.contains(&m.from))
        .count();
    let from_harness = legal.len() - offending.len() - from_exceptions;
    CheckResult {
        name,
        passed: offending.is_empty(),
        witnesses: texts(&p, &offending),
        detail: format!(
            "{} mobile gadget pieces; {} exception moves; {} harness moves",
            mobile.len(),
            from_exceptions,
            from_harness
        ),
    }
}

fn exceptions_mate(g: &GadgetSpec) -> CheckResult {
    let name = "(b) exception moves mate".to_string();
    let mut all = Vec::new();
    let mut bad = Vec::new();
    let mut empty = Vec::new();
    for sq in &g.exceptions {
        let owner = g.pieces[sq].color;
        let p = match g.harness_position(owner) {
            Ok(p) => p,
            Err(e) => return failed(name, format!("harness position invalid: {e}")),
        };
        let moves: Vec<Move> = p
            .legal_moves()
            .into_iter()
            .filter(|m| m.from == *sq)
            .collect();
        if moves.is_empty() {
            empty.push(sq.to_string());
        }
        for m in &moves {
            if !p.apply_unchecked(m).is_checkmate() {
                bad.push(p.move_text(m));
            }
        }
        all.extend(texts(&p, &moves));
    }
    let passed = bad.is_empty() && empty.is_empty();
    let detail = if passed {
        format!("{} moves, all mate", all.len())
    } else {
        format!(
            "non-mating: [{}]; immobile: [{}]",
            bad.join(" "),
            empty.join(" ")
        )
    };
    CheckResult {
        name,
        passed,
        witnesses: all,
        detail,
    }
}

fn entry_checks(g: &GadgetSpec, i: usize) -> (CheckResult, CheckResult) {
    let e = &g.entries[i];
    let tag = if e.derived { " [derived]" } else { "" };
    let c_name = format!("(c) entry {} queen {}{tag}", e.color, e.square);
    let d_name = format!("(d) mate by {}{tag}", e.attacker);
    let not_reached = |why: &str| failed(d_name.clone(), format!("line not completed: {why}"));

    let p = match g.entry_position(i) {
        Ok(p) => p,
        Err(err) => {
            return (
                failed(c_name, format!("entry position invalid: {err}")),
                not_reached("no position"),
            )
        }
    };
    let queen_move = e.line[0];
    let q = match p.apply_move(&queen_move) {
        Ok(q) => q,
        Err(_) => {
            return (
                failed(c_name, format!("{} is not legal", queen_move)),
                not_reached("queen move illegal"),
            )
        }
    };
    let mut witnesses = vec![p.move_text(&queen_move)];
    let (c_passed, c_detail, last) = match e.reply_rule {
        ReplyRule::None => {
            let ok = e.line.len() == 1;
            (
                ok,
                "queen move ends the line".to_string(),
                (p.clone(), queen_move),
            )
        }
        ReplyRule::OnlyLegal | ReplyRule::ReflexForced => {
            let Some(reply) = e.line.get(1).copied() else {
                return (
                    failed(c_name, "no scripted reply".into()),
                    not_reached("no reply"),
                );
            };
            let (set, label) = if e.reply_rule == ReplyRule::OnlyLegal {
                (q.legal_moves(), "legal")
            } else {
                (
                    playable_for(&q, g.kind.stipulation_kind(), g.kind.forcing_side()),
                    "playable",
                )
            };
            witnesses.extend(texts(&q, &set));
            let ok = set.len() == 1 && set[0].same_path(&reply);
            let detail = format!(
                "{} {label} replies after {}: [{}]",
                set.len(),
                p.move_text(&queen_move),
                texts(&q, &set).join(" ")
            );
            (ok, detail, (q.clone(), reply))
        }
    };
    let c = CheckResult {
        name: c_name,
        passed: c_passed,
        witnesses,
        detail: c_detail,
    };

    let (before, terminal) = last;
    let end = match before.apply_move(&terminal) {
        Ok(end) => end,
        Err(_) => return (c, not_reached("terminal move illegal")),
    };
    let mover = before.side_to_move();
    let king = end.king(mover.opposite());
    let attacker_ok = end.piece_at(e.attacker).is_some_and(|pc| pc.color == mover)
        && end.piece_attacks(e.attacker, king);
    let mate = end.is_checkmate();
    let d = CheckResult {
        name: d_name,
        passed: mate && attacker_ok,
        witnesses: vec![before.move_text(&terminal)],
        detail: format!(
            "{}; {} {} {}",
            if mate { "checkmate" } else { "not checkmate" },
            e.attacker,
            if attacker_ok {
                "attacks"
            } else {
                "does not attack"
            },
            king
        ),
    };
    (c, d)
}

/// Under a reflex obligation each side's playable set is exactly its rook
/// moves, all of them mating.
fn reflex_binds_rooks(g: &GadgetSpec) -> CheckResult {
    let name = "(e) reflex obligation forces the rook moves".to_string();
    let mut witnesses = Vec::new();
    let mut passed = true;
    let mut detail = Vec::new();
    for side in [Color::White, Color::Black] {
        let p = match g.harness_position(side) {
            Ok(p) => p,
            Err(e) => return failed(name, format!("harness position invalid: {e}")),
        };
        let playable = playable_for(&p, StipulationKind::Reflex, side);
        let rook_moves: Vec<Move> = p
            .legal_moves()
            .into_iter()
            .filter(|m| g.exceptions.contains(&m.from))
            .collect();
        let ok = !playable.is_empty()
            && playable == rook_moves
            && playable.iter().all(|m| p.apply_unchecked(m).is_checkmate());
        passed &= ok;
        detail.push(format!("{side}: {} playable", playable.len()));
        witnesses.extend(texts(&p, &playable));
    }
    CheckResult {
        name,
        passed,
        witnesses,
        detail: detail.join(", "),
    }
}

/// White is not bound by the semi-reflex obligation, so the rook moves are
/// ordinary legal moves, and each of them mates Black and loses.
fn white_unobliged(g: &GadgetSpec) -> CheckResult {
    let name = "(e) White unobliged, rook moves lose".to_string();
    let p = match g.harness_position(Color::White) {
        Ok(p) => p,
        Err(e) => return failed(name, format!("harness position invalid: {e}")),
    };
    let legal = p.legal_moves();
    let playable = playable_for(&p, StipulationKind::SemiReflex, Color::White);
    let rook_moves: Vec<Move> = legal
        .iter()
        .filter(|m| g.exceptions.contains(&m.from))
        .copied()
        .collect();
    let losing = rook_moves
        .iter()
        .filter(|m| p.apply_unchecked(m).is_checkmate())
        .count();
    let passed = playable == legal && !rook_moves.is_empty() && losing == rook_moves.len();
    CheckResult {
        name,
        passed,
        witnesses: texts(&p, &rook_moves),
        detail: format!(
            "playable = legal ({} moves): {}; {losing} of {} rook moves mate Black",
            legal.len(),
            playable == legal,
            rook_moves.len()
        ),
    }
}
