mod common;

use std::collections::BTreeMap;

use common::{oracle_for, random_instance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selfmate_core::g3::Assignment;
use selfmate_core::{
    eval_dnf, g3_moves, solve_g3, DnfFormula, G3State, G3Verdict, Literal, Player,
};

fn oracle_verdict(s: &G3State) -> G3Verdict {
    let mut o = oracle_for(s);
    if o.wins(s.turn == Player::I, &s.assignment) {
        G3Verdict::Player1ForcesWin
    } else {
        G3Verdict::Player1CannotForceWin
    }
}

fn rename(s: &G3State, rng: &mut ChaCha8Rng) -> G3State {
    let mut names: Vec<String> = s
        .variables_i
        .iter()
        .chain(&s.variables_ii)
        .cloned()
        .collect();
    let mut fresh: Vec<String> = (0..names.len()).map(|i| format!("v{}", 100 + i)).collect();
    for i in (1..fresh.len()).rev() {
        fresh.swap(i, rng.gen_range(0..=i));
    }
    let map: BTreeMap<String, String> = names.drain(..).zip(fresh).collect();
    let f = |d: &DnfFormula| {
        DnfFormula::new(
            d.clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| Literal {
                            var: map[&l.var].clone(),
                            negated: l.negated,
                        })
                        .collect()
                })
                .collect(),
        )
    };
    G3State::new(
        s.turn,
        s.variables_i.iter().map(|v| map[v].clone()).collect(),
        s.variables_ii.iter().map(|v| map[v].clone()).collect(),
        f(&s.i_lose),
        f(&s.ii_lose),
        s.assignment
            .iter()
            .map(|(k, v)| (map[k].clone(), *v))
            .collect(),
        true,
    )
    .unwrap()
}

#[test]
fn eval_matches_truth_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let s = random_instance(&mut rng, 2, 1, 4);
        let names = ["x0", "x1", "y0"];
        for bits in 0..8u32 {
            let a: Assignment = names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.to_string(), bits & (1 << i) != 0))
                .collect();
            let expected = s.i_lose.clauses.iter().any(|c| {
                c.iter().all(|l| {
                    let i = names.iter().position(|n| *n == l.var).unwrap();
                    (bits & (1 << i) != 0) != l.negated
                })
            });
            assert_eq!(eval_dnf(&s.i_lose, &a).unwrap(), expected);
        }
    }
}

#[test]
fn moves_match_brute_force_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let s = random_instance(&mut rng, 2, 2, 3);
        let o = oracle_for(&s);
        let mine: Vec<Assignment> = g3_moves(&s).into_iter().map(|t| t.assignment).collect();
        let theirs = o.moves(s.turn == Player::I, &s.assignment);
        assert_eq!(mine, theirs);
    }
}

#[test]
fn trivial_instances() {
    let xs = vec!["x".to_string()];
    let ys = vec!["y".to_string()];
    let mk = |i: DnfFormula, ii: DnfFormula| {
        G3State::new(
            Player::I,
            xs.clone(),
            ys.clone(),
            i,
            ii,
            Assignment::new(),
            true,
        )
        .unwrap()
    };
    assert_eq!(
        solve_g3(&mk(DnfFormula::falsum(), DnfFormula::verum()))
            .unwrap()
            .verdict,
        G3Verdict::Player1ForcesWin
    );
    assert_eq!(
        solve_g3(&mk(DnfFormula::verum(), DnfFormula::falsum()))
            .unwrap()
            .verdict,
        G3Verdict::Player1CannotForceWin
    );
}

#[test]
fn solver_matches_oracle_and_strategy_audits() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut wins = 0;
    for _ in 0..1000 {
        let s = random_instance(&mut rng, 2, 2, 3);
        let sol = solve_g3(&s).unwrap();
        assert_eq!(sol.verdict, oracle_verdict(&s), "{s:?}");
        assert!(sol.audit().is_ok());
        if sol.verdict == G3Verdict::Player1ForcesWin {
            wins += 1;
            let line = sol.principal_line();
            assert_eq!(line.len() as u32, sol.plies_to_win.unwrap() + 1);
            assert!(g3_moves(line.last().unwrap()).is_empty());
            assert_eq!(line.last().unwrap().turn, Player::II);
        }
    }
    // Both verdicts occur in the sample.
    assert!(wins > 50 && wins < 950, "{wins}");
}

#[test]
fn larger_instances_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let s = random_instance(&mut rng, 3, 3, 5);
        assert_eq!(solve_g3(&s).unwrap().verdict, oracle_verdict(&s));
    }
}

#[test]
fn renaming_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let s = random_instance(&mut rng, 2, 2, 3);
        let r = rename(&s, &mut rng);
        assert_eq!(solve_g3(&s).unwrap().verdict, solve_g3(&r).unwrap().verdict);
    }
}

proptest! {
    #[test]
    fn moves_flip_exactly_one_own_variable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_instance(&mut rng, 2, 3, 4);
        let own = s.variables_of(s.turn).to_vec();
        for t in g3_moves(&s) {
            prop_assert_eq!(t.turn, s.turn.other());
            let changed: Vec<&String> = s.assignment.keys().filter(|k| s.assignment[*k] != t.assignment[*k]).collect();
            prop_assert_eq!(changed.len(), 1);
            prop_assert!(own.contains(changed[0]));
            prop_assert!(!eval_dnf(s.lose_formula(s.turn), &t.assignment).unwrap());
        }
    }

    #[test]
    fn winning_states_have_winning_strategy_moves(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_instance(&mut rng, 3, 2, 4);
        let sol = solve_g3(&s).unwrap();
        if s.turn == Player::I && sol.is_winning(&s) {
            let next = sol.strategy_move(&s).unwrap();
            prop_assert!(g3_moves(&s).contains(&next));
            for reply in g3_moves(&next) {
                prop_assert!(sol.is_winning(&reply));
            }
        }
    }
}
