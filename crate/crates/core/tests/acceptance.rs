//! Acceptance criteria AC1 to AC7. Runs as a plain binary so the verdict
//! lines are always printed; exits non-zero if any criterion fails.

mod common;

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{oracle_for, random_instance, RefBoard, BURBACH, PAULY};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use selfmate_core::gadget::{build_gadget, verify_gadget, GadgetKind, GadgetSpec};
use selfmate_core::perft::perft;
use selfmate_core::solver::{RefutationReason, SolveStatus, UnboundedVerdict};
use selfmate_core::{
    parse_xfen, refute, solve, solve_g3, solve_unbounded, Color, DnfFormula, G3State, G3Verdict,
    Literal, Player, Position, SearchOptions, SolutionTree, Square, Stipulation, StipulationKind,
    TryOutcome,
};

const AC1_TIME: Duration = Duration::from_secs(5);
const AC1_NODES: u64 = 1_000_000;
const AC2_TIME: Duration = Duration::from_secs(5);
const AC3_TIME_PER_BATTERY: Duration = Duration::from_secs(1);
const AC6_INSTANCES: usize = 1000;
const AC6_RENAMINGS: usize = 100;
const AC6_TIME: Duration = Duration::from_secs(30);
const AC7_HORIZON: u32 = 3;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn pos(text: &str) -> Position {
    parse_xfen(text).unwrap()
}

fn stip(text: &str) -> Stipulation {
    text.parse().unwrap()
}

fn gadget(kind: GadgetKind) -> GadgetSpec {
    build_gadget(kind, Square::new(1, 1), kind.figure_board()).unwrap()
}

fn play(p: &Position, moves: &[&str]) -> Position {
    moves.iter().fold(p.clone(), |q, m| {
        q.apply_move(&q.parse_move(m).unwrap()).unwrap()
    })
}

fn has_line(t: &SolutionTree, prefix: &[&str]) -> bool {
    t.variations()
        .iter()
        .any(|v| v.len() >= prefix.len() && v.iter().zip(prefix).all(|(a, b)| a == b))
}

fn ac1() -> Outcome {
    let p = pos(PAULY);
    let started = Instant::now();
    let t = solve(&p, &stip("s#2"), &SearchOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure(t.key_texts() == ["Pc7-c8=N"], || {
        format!("keys {:?}", t.key_texts())
    })?;
    for line in [
        &["Pc7-c8=N", "Bh1xg2#"][..],
        &["Pc7-c8=N", "Pe7xf6", "Pe5xf6", "Bh1xg2#"],
        &["Pc7-c8=N", "Pe7-e6", "Pg7-g8=B", "Bh1xg2#"],
    ] {
        ensure(has_line(&t, line), || format!("missing variation {line:?}"))?;
    }
    ensure(t.refutations.len() + 1 == p.legal_moves().len(), || {
        "some first move has no refutation".into()
    })?;
    let refutation = |mv: &str| {
        let m = p.parse_move(mv).unwrap();
        t.refutation_for(&m)
            .cloned()
            .ok_or(format!("{mv} not refuted"))
    };
    let replies = |mv: &str| -> Result<Vec<String>, String> {
        let r = refutation(mv)?;
        let after = p.apply_unchecked(&r.try_move);
        Ok(r.replies.iter().map(|b| after.move_text(b)).collect())
    };
    // The nine tries.
    let kb7 = refutation("Ka8-b7")?;
    let after = p.apply_unchecked(&kb7.try_move);
    ensure(after.move_text(&kb7.line[0]) == "Bh1xg2+", || {
        "Kb7 not met by Bxg2+".into()
    })?;
    for mv in ["Bg2-f3", "Bg2-e4", "Bg2-d5", "Bg2-c6", "Bg2-b7"] {
        ensure(replies(mv)?.iter().any(|r| r.starts_with("Bh1")), || {
            mv.to_string()
        })?;
    }
    ensure(
        refutation("Bg2xh1")?.reason == RefutationReason::HorizonExceeded,
        || "Bxh1".into(),
    )?;
    for mv in ["Nf8-d7", "Nf8-e6", "Nf8-g6", "Nf8-h7"] {
        ensure(replies(mv)?.iter().any(|r| r.starts_with("Kh6")), || {
            mv.to_string()
        })?;
    }
    ensure(
        refutation("Pg7-g8=N")?.reason == RefutationReason::ForcingSideDeliversMate,
        || "g8=N reason".into(),
    )?;
    for mv in [
        "Pg7-g8=Q", "Pg7-g8=R", "Pg7-g8=B", "Pc7-c8=Q", "Pc7-c8=R", "Pc7-c8=B",
    ] {
        ensure(replies(mv)?.contains(&"Bh1xg2+".to_string()), || {
            mv.to_string()
        })?;
    }
    for mv in ["Pf6-f7", "Pf6xe7"] {
        ensure(replies(mv)?.contains(&"Kh6xg7".to_string()), || {
            mv.to_string()
        })?;
    }
    ensure(replies("Pe5-e6")?.contains(&"Pe7xf6".to_string()), || {
        "e6".into()
    })?;
    ensure(elapsed < AC1_TIME, || format!("took {elapsed:?}"))?;
    ensure(t.stats.nodes < AC1_NODES, || {
        format!("{} nodes", t.stats.nodes)
    })?;
    Ok(format!(
        "key Pc7-c8=N, {} tries refuted, {} nodes, {:.2?}",
        t.refutations.len(),
        t.stats.nodes,
        elapsed
    ))
}

fn ac2() -> Outcome {
    let p = pos(BURBACH);
    let started = Instant::now();
    let t = solve(&p, &stip("r#2"), &SearchOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure(t.key_texts() == ["Pd2-d3"], || {
        format!("keys {:?}", t.key_texts())
    })?;
    for line in [
        &["Pd2-d3", "Kb1-c2", "Nb3-a1+"][..],
        &["Pd2-d3", "Rg5-b5", "Nb3-a1"],
        &["Pd2-d3", "Rf7-b7", "Nb3-c1"],
    ] {
        ensure(has_line(&t, line), || format!("missing variation {line:?}"))?;
    }
    for (black, bad, answer) in [
        ("Rg5-b5", "Nb3-c1", "Qh6xc1"),
        ("Rf7-b7", "Nb3-a1", "Bg8-a2"),
    ] {
        let q = play(&p, &["Pd2-d3", black]);
        let m = q.parse_move(bad).unwrap();
        let TryOutcome::Refuted(r) =
            refute(&q, &stip("r#1"), &m, &SearchOptions::default()).map_err(|e| e.to_string())?
        else {
            return Err(format!("{bad} after {black} not refuted"));
        };
        let after = q.apply_unchecked(&r.try_move);
        let text = after.move_text(&r.replies[0]);
        ensure(text.starts_with("Pb2x") && text.ends_with('+'), || {
            text.clone()
        })?;
        let promoted = after.apply_unchecked(&r.replies[0]);
        ensure(
            !promoted.is_checkmate() && promoted.parse_move(answer).is_ok(),
            || format!("{text} should be answered by {answer}"),
        )?;
    }
    ensure(elapsed < AC2_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "key Pd2-d3, cautionary notes refuted, {elapsed:.2?}"
    ))
}

fn ac3() -> Outcome {
    let mut slowest = Duration::ZERO;
    for kind in GadgetKind::ALL {
        let started = Instant::now();
        let r = verify_gadget(kind);
        let elapsed = started.elapsed();
        slowest = slowest.max(elapsed);
        ensure(r.all_pass, || r.render_text())?;
        ensure(elapsed < AC3_TIME_PER_BATTERY, || {
            format!("{kind} took {elapsed:?}")
        })?;
    }
    let witnesses = |kind: GadgetKind, prefix: &str| -> Vec<String> {
        verify_gadget(kind)
            .check(prefix)
            .map(|c| c.witnesses.clone())
            .unwrap_or_default()
    };
    let r = verify_gadget(GadgetKind::CheckmateWhite);
    for c in r.checks.iter().filter(|c| c.name.starts_with("(a)")) {
        ensure(c.detail.starts_with("0 mobile gadget pieces"), || {
            c.detail.clone()
        })?;
    }
    ensure(
        witnesses(GadgetKind::CheckmateWhite, "(c)") == ["Qa3-d6#"],
        || "Qa3-d6#".into(),
    )?;
    ensure(
        witnesses(GadgetKind::ReflexmateWhite, "(c)") == ["Qa3-e7", "Pf8xe7#"],
        || "Qa3-e7 f8xe7#".into(),
    )?;
    let selfmate_moves = witnesses(GadgetKind::Selfmate, "(b)");
    ensure(
        selfmate_moves.len() == 20
            && selfmate_moves
                .iter()
                .all(|m| (m.starts_with("Rm4") || m.starts_with("Rm13")) && m.ends_with('#')),
        || format!("{selfmate_moves:?}"),
    )?;
    ensure(
        witnesses(GadgetKind::Selfmate, "(c) entry white") == ["Qa5-c3+", "Rm4-d4#"],
        || "Qa5-c3+ Rm4-d4#".into(),
    )?;
    let semi_moves = witnesses(GadgetKind::SemiReflexmate, "(b)");
    ensure(
        semi_moves.len() == 10
            && semi_moves
                .iter()
                .all(|m| m.starts_with("Rm15") && m.ends_with('#')),
        || format!("{semi_moves:?}"),
    )?;
    ensure(
        witnesses(GadgetKind::SemiReflexmate, "(c) entry white") == ["Qh1-l5", "Pm6xl5#"],
        || "Qh1-l5 m6xl5#".into(),
    )?;
    ensure(
        witnesses(GadgetKind::SemiReflexmate, "(c) entry black") == ["Qa14-c16+", "Rm15-d15#"],
        || "Qa14-c16+ Rm15-d15#".into(),
    )?;
    Ok(format!("6 batteries pass, slowest {slowest:.2?}"))
}

fn ac4() -> Outcome {
    let opts = SearchOptions::default();
    let cases = [
        (GadgetKind::Selfmate, "s#1", "Qa5-c3+"),
        (GadgetKind::ReflexmateWhite, "r#1", "Qa3-e7"),
        (GadgetKind::SemiReflexmate, "semi-r#1", "Qh1-l5"),
    ];
    let mut keys = Vec::new();
    for (kind, s, key) in cases {
        let p = gadget(kind).entry_position(0).unwrap();
        let t = solve(&p, &stip(s), &opts).map_err(|e| e.to_string())?;
        ensure(t.status == SolveStatus::Solved, || {
            format!("{kind} {s} not solved")
        })?;
        ensure(t.key_texts().contains(&key.to_string()), || {
            format!("{kind}: {key} not among {:?}", t.key_texts())
        })?;
        keys.push(format!("{s} {:?}", t.key_texts()));
    }
    // Black queen entry: White's only move mates Black.
    let p = gadget(GadgetKind::SemiReflexmate)
        .entry_position(1)
        .unwrap();
    let q = play(&p, &["Qa14-c16+"]);
    let legal = q.legal_moves();
    ensure(
        legal.len() == 1 && q.move_text(&legal[0]) == "Rm15-d15#",
        || "White has a move other than Rm15-d15#".into(),
    )?;
    let t = solve(&p, &stip("s#1").with_forcing_side(Color::Black), &opts)
        .map_err(|e| e.to_string())?;
    ensure(t.key_texts().contains(&"Qa14-c16+".to_string()), || {
        "Black does not force White to mate".into()
    })?;
    let w = p.with_side_to_move(Color::White).unwrap();
    let u = solve_unbounded(
        &w,
        StipulationKind::SemiReflex,
        Color::White,
        &SearchOptions {
            node_cap: 100_000,
            ..opts
        },
    );
    ensure(u.verdict == UnboundedVerdict::NotWonWithinCap, || {
        "White reported as winning".into()
    })?;
    Ok(format!("{}; bQa14: White loss", keys.join("; ")))
}

fn ac5() -> Outcome {
    let initial = pos("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w - - 0 1");
    let oracle = RefBoard::from_position(&initial);
    let mut counts = Vec::new();
    for d in 1..=4 {
        let (a, b) = (perft(&initial, d), oracle.perft(d));
        ensure(a == b, || format!("initial depth {d}: {a} vs {b}"))?;
        counts.push(a);
    }
    ensure(counts == [20, 400, 8902, 197_281], || format!("{counts:?}"))?;
    let mut positions = vec![("pauly", pos(PAULY))];
    for kind in [
        GadgetKind::ReflexmateWhite,
        GadgetKind::Selfmate,
        GadgetKind::SemiReflexmate,
    ] {
        let g = gadget(kind);
        for side in [Color::White, Color::Black] {
            positions.push((kind.name(), g.harness_position(side).unwrap()));
        }
        for i in 0..g.entries.len() {
            positions.push((kind.name(), g.entry_position(i).unwrap()));
        }
    }
    for (name, p) in &positions {
        let oracle = RefBoard::from_position(p);
        for d in 1..=2 {
            let (a, b) = (perft(p, d), oracle.perft(d));
            ensure(a == b, || format!("{name} depth {d}: {a} vs {b}"))?;
        }
    }
    Ok(format!(
        "initial {counts:?}; {} harness positions agree",
        positions.len()
    ))
}

fn rename(s: &G3State) -> G3State {
    // Reverse the variable order and rename everything.
    let fresh = |v: &str| format!("z_{}", v.chars().rev().collect::<String>());
    let f = |d: &DnfFormula| {
        DnfFormula::new(
            d.clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| Literal {
                            var: fresh(&l.var),
                            negated: l.negated,
                        })
                        .collect()
                })
                .collect(),
        )
    };
    G3State::new(
        s.turn,
        s.variables_i.iter().rev().map(|v| fresh(v)).collect(),
        s.variables_ii.iter().rev().map(|v| fresh(v)).collect(),
        f(&s.i_lose),
        f(&s.ii_lose),
        s.assignment.iter().map(|(k, v)| (fresh(k), *v)).collect(),
        true,
    )
    .unwrap()
}

fn ac6() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6_3);
    let mut wins = 0;
    let mut sample = Vec::new();
    for i in 0..AC6_INSTANCES {
        let s = random_instance(&mut rng, 2, 2, 3);
        let mine = solve_g3(&s).map_err(|e| e.to_string())?.verdict;
        let theirs = oracle_for(&s).wins(s.turn == Player::I, &s.assignment);
        ensure((mine == G3Verdict::Player1ForcesWin) == theirs, || {
            format!("instance {i} disagrees: {s:?}")
        })?;
        wins += theirs as usize;
        if sample.len() < AC6_RENAMINGS {
            sample.push((s, mine));
        }
    }
    for (s, verdict) in &sample {
        let r = solve_g3(&rename(s)).map_err(|e| e.to_string())?.verdict;
        ensure(r == *verdict, || format!("renaming changes verdict: {s:?}"))?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < AC6_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{AC6_INSTANCES} instances agree ({wins} wins), {AC6_RENAMINGS} renamings invariant, {elapsed:.2?}"
    ))
}

fn ac7() -> Outcome {
    let mut cases = vec![(pos(PAULY), "s#"), (pos(BURBACH), "r#")];
    cases.push((
        gadget(GadgetKind::Selfmate).entry_position(0).unwrap(),
        "s#",
    ));
    cases.push((
        gadget(GadgetKind::ReflexmateWhite)
            .entry_position(0)
            .unwrap(),
        "r#",
    ));
    cases.push((
        gadget(GadgetKind::SemiReflexmate)
            .entry_position(0)
            .unwrap(),
        "semi-r#",
    ));
    let base = SearchOptions::default();
    let max = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
        .max(2);
    for (p, kind) in &cases {
        let mut prev: Vec<String> = Vec::new();
        for n in 1..=AC7_HORIZON {
            let t = solve(p, &stip(&format!("{kind}{n}")), &base).map_err(|e| e.to_string())?;
            ensure(t.status != SolveStatus::Unknown, || {
                format!("{kind}{n} hit the cap")
            })?;
            let keys = t.key_texts();
            ensure(prev.iter().all(|k| keys.contains(k)), || {
                format!("{kind}{n}: {prev:?} not within {keys:?}")
            })?;
            prev = keys;
        }
        let s = stip(&format!("{kind}2"));
        let one = solve(p, &s, &base).map_err(|e| e.to_string())?;
        let many = solve(
            p,
            &s,
            &SearchOptions {
                workers: max,
                ..base
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(
            one.keys == many.keys && one.tree == many.tree && one.refutations == many.refutations,
            || format!("{kind}2 differs between 1 and {max} workers"),
        )?;
        let plain = solve(
            p,
            &s,
            &SearchOptions {
                memoize: false,
                ..base
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(one.keys == plain.keys, || {
            format!("{kind}2 differs without memo")
        })?;
    }
    Ok(format!(
        "{} positions, horizons 1..={AC7_HORIZON}, 1 vs {max} workers, memo on/off",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 Pauly selfmate s#2", ac1),
        ("AC2 Burbach reflexmate r#2", ac2),
        ("AC3 gadget batteries", ac3),
        ("AC4 gadget stipulations", ac4),
        ("AC5 move generator vs oracle", ac5),
        ("AC6 G3 vs brute force", ac6),
        ("AC7 solver properties", ac7),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let result = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of 7 criteria pass", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
