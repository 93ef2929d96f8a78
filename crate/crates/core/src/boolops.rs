//! Products of deterministic co-Büchi automata, breakpoint determinization
//! of nondeterministic co-Büchi automata and parity complementation.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::automaton::{
    same_alphabet, Alphabet, Automaton, Color, Letter, StateId, ACCEPTING, REJECTING,
};
use crate::error::{Error, Result};

/// Builds the reachable part of an implicitly given deterministic automaton,
/// breadth-first from `init` with letters in alphabet order.
pub(crate) fn explore<S, F, N>(alphabet: &Alphabet, init: S, mut step: F, name: N) -> Automaton
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, Letter) -> (S, Color),
    N: Fn(&S) -> String,
{
    let mut ids: HashMap<S, StateId> = HashMap::new();
    let mut order: Vec<S> = Vec::new();
    let mut edges: Vec<(StateId, Letter, StateId, Color)> = Vec::new();
    ids.insert(init.clone(), 0);
    order.push(init);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for l in 0..alphabet.len() {
            let (next, color) = step(&order[i], l);
            let j = match ids.get(&next) {
                Some(&j) => j,
                None => {
                    let j = order.len();
                    ids.insert(next.clone(), j);
                    order.push(next);
                    queue.push_back(j);
                    j
                }
            };
            edges.push((i, l, j, color));
        }
    }
    let mut a = Automaton::new(alphabet.clone(), order.iter().map(&name))
        .expect("explored state names are distinct");
    for (s, l, d, c) in edges {
        a.add_transition(s, l, d, c);
    }
    a
}

fn check_dcw_operands(autos: &[&Automaton]) -> Result<()> {
    if autos.is_empty() {
        return Err(Error::NoOperands);
    }
    same_alphabet(autos.iter().copied())?;
    for a in autos {
        a.require_deterministic()?;
        a.require_cobuchi()?;
    }
    Ok(())
}

pub(crate) fn tuple_name(autos: &[&Automaton], qs: &[StateId]) -> String {
    let parts: Vec<&str> = autos
        .iter()
        .zip(qs)
        .map(|(a, &q)| a.state_name(q))
        .collect();
    format!("({})", parts.join("|"))
}

/// Synchronous product accepting the intersection. A product transition is
/// rejecting iff some component transition is rejecting.
pub fn dcw_conjunction(autos: &[&Automaton]) -> Result<Automaton> {
    check_dcw_operands(autos)?;
    let init: Vec<StateId> = autos.iter().map(|a| a.initial()).collect();
    Ok(explore(
        autos[0].alphabet(),
        init,
        |qs, l| {
            let mut color = ACCEPTING;
            let next = autos
                .iter()
                .zip(qs)
                .map(|(a, &q)| {
                    let (d, c) = a.step(q, l);
                    color = color.min(c);
                    d
                })
                .collect();
            (next, color)
        },
        |qs| tuple_name(autos, qs),
    ))
}

/// Product with a round-robin counter accepting the union.
///
/// The counter `j` (1-based) waits for component `j` to take a rejecting
/// transition and then moves on; the product rejects exactly when the
/// counter wraps from the last component back to the first.
pub fn dcw_disjunction(autos: &[&Automaton]) -> Result<Automaton> {
    check_dcw_operands(autos)?;
    let n = autos.len();
    let mut init: Vec<StateId> = autos.iter().map(|a| a.initial()).collect();
    init.push(1);
    Ok(explore(
        autos[0].alphabet(),
        init,
        |st, l| {
            let j = st[n];
            let mut next: Vec<StateId> = Vec::with_capacity(n + 1);
            let mut watched = ACCEPTING;
            for (i, (a, &q)) in autos.iter().zip(&st[..n]).enumerate() {
                let (d, c) = a.step(q, l);
                if i + 1 == j {
                    watched = c;
                }
                next.push(d);
            }
            let advance = watched == REJECTING;
            let j2 = if advance { j % n + 1 } else { j };
            next.push(j2);
            let color = if advance && j == n {
                REJECTING
            } else {
                ACCEPTING
            };
            (next, color)
        },
        |st| format!("{}#{}", tuple_name(autos, &st[..n]), st[n]),
    ))
}

/// A breakpoint-construction state: reachable run endpoints `s` and the
/// subset `o` of runs clean since the last breakpoint. Both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BreakpointState {
    pub s: Vec<StateId>,
    pub o: Vec<StateId>,
}

/// Breakpoint (Miyano–Hayashi) determinization of a co-Büchi automaton.
pub fn ncw_determinize(a: &Automaton) -> Result<Automaton> {
    a.require_cobuchi()?;
    let q0 = a.initial();
    let init = BreakpointState {
        s: vec![q0],
        o: vec![q0],
    };
    let set_name = |set: &[StateId]| {
        let names: Vec<&str> = set.iter().map(|&q| a.state_name(q)).collect();
        format!("{{{}}}", names.join(","))
    };
    Ok(explore(
        a.alphabet(),
        init,
        |bp, l| {
            let mut s2: Vec<StateId> =
                bp.s.iter()
                    .flat_map(|&q| a.successors(q, l).iter().map(|&(d, _)| d))
                    .collect();
            s2.sort_unstable();
            s2.dedup();
            let mut o2: Vec<StateId> =
                bp.o.iter()
                    .flat_map(|&q| {
                        a.successors(q, l)
                            .iter()
                            .filter(|&&(_, c)| c == ACCEPTING)
                            .map(|&(d, _)| d)
                    })
                    .collect();
            o2.sort_unstable();
            o2.dedup();
            if o2.is_empty() {
                (
                    BreakpointState {
                        o: s2.clone(),
                        s: s2,
                    },
                    REJECTING,
                )
            } else {
                (BreakpointState { s: s2, o: o2 }, ACCEPTING)
            }
        },
        |bp| format!("{}/{}", set_name(&bp.s), set_name(&bp.o)),
    ))
}

/// Determinizes only when needed.
pub fn ensure_deterministic(a: &Automaton) -> Result<Automaton> {
    if a.is_deterministic() {
        Ok(a.clone())
    } else {
        a.require_valid()?;
        ncw_determinize(a)
    }
}

/// Shifts every color up by one, complementing the parity language.
pub fn dpw_complement(a: &Automaton) -> Result<Automaton> {
    a.require_deterministic()?;
    Ok(a.map_colors(|c| c + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::{accepts_lasso_cobuchi, run_deterministic};
    use crate::word::all_lassos;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Accepts words with finitely many `letter`.
    fn finitely_many(letter: Letter) -> Automaton {
        let mut a = Automaton::new(ab(), ["q"]).unwrap();
        for l in 0..2 {
            a.add_transition(0, l, 0, if l == letter { REJECTING } else { ACCEPTING });
        }
        a
    }

    #[test]
    fn conjunction_of_singleton_is_isomorphic() {
        let a = finitely_many(0);
        let c = dcw_conjunction(&[&a]).unwrap();
        assert_eq!(c.num_states(), 1);
        assert_eq!(c.state_name(0), "(q)");
        assert_eq!(
            c.transitions()
                .map(|t| (t.letter, t.color))
                .collect::<Vec<_>>(),
            a.transitions()
                .map(|t| (t.letter, t.color))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn conjunction_and_disjunction_languages() {
        let fa = finitely_many(0);
        let fb = finitely_many(1);
        let and = dcw_conjunction(&[&fa, &fb]).unwrap();
        let or = dcw_disjunction(&[&fa, &fb]).unwrap();
        assert_eq!(and.num_states(), 1);
        assert!(or.num_states() <= 2);
        for w in all_lassos(&ab(), 2, 3) {
            let x = run_deterministic(&fa, &w).unwrap().accepted;
            let y = run_deterministic(&fb, &w).unwrap().accepted;
            assert_eq!(run_deterministic(&and, &w).unwrap().accepted, x && y);
            assert_eq!(run_deterministic(&or, &w).unwrap().accepted, x || y);
        }
    }

    #[test]
    fn disjunction_of_singleton_keeps_language() {
        let fa = finitely_many(0);
        let or = dcw_disjunction(&[&fa]).unwrap();
        assert_eq!(or.state_name(0), "(q)#1");
        for w in all_lassos(&ab(), 2, 3) {
            assert_eq!(
                run_deterministic(&or, &w).unwrap().accepted,
                run_deterministic(&fa, &w).unwrap().accepted
            );
        }
    }

    #[test]
    fn operands_are_checked() {
        assert_eq!(dcw_conjunction(&[]).unwrap_err(), Error::NoOperands);
        let other = {
            let alphabet = Alphabet::new(["a", "c"]).unwrap();
            let mut a = Automaton::new(alphabet, ["q"]).unwrap();
            a.add_transition(0, 0, 0, 2);
            a.add_transition(0, 1, 0, 2);
            a
        };
        assert_eq!(
            dcw_disjunction(&[&finitely_many(0), &other]).unwrap_err(),
            Error::AlphabetMismatch
        );
        let parity = finitely_many(0).map_colors(|c| c + 2);
        assert_eq!(dcw_conjunction(&[&parity]).unwrap_err(), Error::NotCoBuchi);
    }

    #[test]
    fn determinizing_deterministic_input_keeps_size() {
        let fa = finitely_many(0);
        let d = ncw_determinize(&fa).unwrap();
        assert_eq!(d.num_states(), 1);
        assert_eq!(d.state_name(0), "{q}/{q}");
    }

    #[test]
    fn determinizing_rejection_free_ncw_gives_universal() {
        let mut a = Automaton::new(ab(), ["p", "q"]).unwrap();
        a.add_transition(0, 0, 0, 2);
        a.add_transition(0, 0, 1, 2);
        a.add_transition(0, 1, 1, 2);
        a.add_transition(1, 0, 0, 2);
        a.add_transition(1, 1, 1, 2);
        let d = ncw_determinize(&a).unwrap();
        assert!(d.is_deterministic());
        assert!(d.transitions().all(|t| t.color == ACCEPTING));
        for w in all_lassos(&ab(), 2, 3) {
            assert!(accepts_lasso_cobuchi(&a, &w).unwrap());
            assert!(run_deterministic(&d, &w).unwrap().accepted);
        }
    }

    #[test]
    fn complement_twice_is_a_uniform_shift() {
        let mut a = Automaton::new(ab(), ["p", "q"]).unwrap();
        a.add_transition(0, 0, 1, 0);
        a.add_transition(0, 1, 0, 3);
        a.add_transition(1, 0, 0, 1);
        a.add_transition(1, 1, 1, 2);
        let cc = dpw_complement(&dpw_complement(&a).unwrap()).unwrap();
        assert_eq!(cc.map_colors(|c| c - 2), a);
        let c = dpw_complement(&a).unwrap();
        for w in all_lassos(&ab(), 2, 3) {
            assert_ne!(
                run_deterministic(&c, &w).unwrap().accepted,
                run_deterministic(&a, &w).unwrap().accepted
            );
        }
    }
}
