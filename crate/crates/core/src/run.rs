//! Runs of automata on lasso words.

use std::collections::HashMap;

use crate::automaton::{Automaton, Color, StateId, ACCEPTING};
use crate::error::{Error, Result};
use crate::graph::tarjan;
use crate::word::LassoWord;

/// Outcome of the unique run of a deterministic automaton on a lasso.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    /// Least color seen infinitely often.
    pub dominating_color: Color,
    pub accepted: bool,
    /// States visited along one traversal of the recurring cycle, starting at
    /// a period boundary.
    pub cycle_states: Vec<StateId>,
}

fn check_word(a: &Automaton, w: &LassoWord) -> Result<()> {
    if w.uses_only(a.alphabet().len()) {
        Ok(())
    } else {
        Err(Error::UnknownLetter(
            "letter outside the automaton alphabet".into(),
        ))
    }
}

/// Simulates the stem, then repeats the period until the state at a period
/// boundary recurs. The recurring block of periods is the cycle.
pub fn run_deterministic(a: &Automaton, w: &LassoWord) -> Result<RunResult> {
    a.require_deterministic()?;
    check_word(a, w)?;
    let q = a.step_word(a.initial(), w.stem());

    let mut boundary: HashMap<StateId, usize> = HashMap::new();
    let mut visited: Vec<StateId> = Vec::new();
    let mut colors: Vec<Color> = Vec::new();
    let mut q = q;
    let mut iteration = 0;
    let start = loop {
        if let Some(&it) = boundary.get(&q) {
            break it;
        }
        boundary.insert(q, iteration);
        for &l in w.period() {
            visited.push(q);
            let (next, c) = a.step(q, l);
            colors.push(c);
            q = next;
        }
        iteration += 1;
    };
    let from = start * w.period().len();
    let dominating_color = *colors[from..].iter().min().expect("period is non-empty");
    Ok(RunResult {
        dominating_color,
        accepted: dominating_color.is_multiple_of(2),
        cycle_states: visited[from..].to_vec(),
    })
}

/// Existential co-Büchi acceptance: is there a run with finitely many
/// rejecting transitions?
///
/// Works on the product of states and lasso positions: the word is accepted
/// iff some reachable product node lies on a cycle of accepting transitions.
pub fn accepts_lasso_cobuchi(a: &Automaton, w: &LassoWord) -> Result<bool> {
    a.require_cobuchi()?;
    check_word(a, w)?;
    let positions = w.positions();
    let n = a.num_states() * positions;
    let node = |q: StateId, pos: usize| q * positions + pos;

    // reachable product nodes
    let mut reach = vec![false; n];
    let start = node(a.initial(), 0);
    reach[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let (q, pos) = (v / positions, v % positions);
        let np = w.next_position(pos);
        for &(d, _) in a.successors(q, w.letter_at(pos)) {
            let u = node(d, np);
            if !reach[u] {
                reach[u] = true;
                stack.push(u);
            }
        }
    }

    let stem_len = w.stem().len();
    let roots: Vec<usize> = (0..n)
        .filter(|&v| reach[v] && v % positions >= stem_len)
        .collect();
    let accepting_succ = |v: usize| {
        let (q, pos) = (v / positions, v % positions);
        let np = w.next_position(pos);
        a.successors(q, w.letter_at(pos))
            .iter()
            .filter(|&&(_, c)| c == ACCEPTING)
            .map(move |&(d, _)| node(d, np))
            .collect::<Vec<_>>()
            .into_iter()
    };
    let sccs = tarjan(n, &roots, accepting_succ);
    Ok(sccs.iter().any(|comp| {
        comp.len() > 1 || {
            let v = comp[0];
            accepting_succ(v).any(|u| u == v)
        }
    }))
}
