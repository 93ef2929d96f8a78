use super::streett::{can_reach, dpw_diff_nonempty, fair_nodes, EdgeCondition};
use crate::automaton::{Automaton, Color, StateId};
use crate::error::Result;
use crate::word::LassoWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    /// A word in exactly one of the two languages.
    pub counterexample: Option<LassoWord>,
}

/// Language equivalence of two deterministic parity automata.
pub fn dpw_equiv(a: &Automaton, b: &Automaton) -> Result<EquivVerdict> {
    let witness = match dpw_diff_nonempty(a, b)? {
        Some(w) => Some(w),
        None => dpw_diff_nonempty(b, a)?,
    };
    Ok(EquivVerdict {
        equivalent: witness.is_none(),
        counterexample: witness,
    })
}

/// Above this many state pairs the classes are found by separate
/// equivalence checks instead of one pass over the square of the automaton.
const PAIR_LIMIT: usize = 1 << 22;

/// Partitions the reachable states by the language accepted from them. The
/// classes are listed in breadth-first order of their first member; members
/// are sorted.
pub fn residual_classes(a: &Automaton) -> Result<Vec<Vec<StateId>>> {
    a.require_deterministic()?;
    let order = a.bfs_order();
    let reachable = &order[..a.reachable_states().len()];
    let mut classes: Vec<Vec<StateId>> = if a.num_states().pow(2) <= PAIR_LIMIT {
        let differ = distinguishable_pairs(a);
        let n = a.num_states();
        let mut classes: Vec<Vec<StateId>> = Vec::new();
        for &q in reachable {
            match classes
                .iter_mut()
                .find(|c| !differ[c[0] * n + q] && !differ[q * n + c[0]])
            {
                Some(c) => c.push(q),
                None => classes.push(vec![q]),
            }
        }
        classes
    } else {
        let mut classes: Vec<Vec<StateId>> = Vec::new();
        let mut reps: Vec<Automaton> = Vec::new();
        for &q in reachable {
            let rebased = a.with_initial(q);
            let mut placed = false;
            for (class, rep) in classes.iter_mut().zip(&reps) {
                if dpw_equiv(rep, &rebased)?.equivalent {
                    class.push(q);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![q]);
                reps.push(rebased);
            }
        }
        classes
    };
    for c in &mut classes {
        c.sort_unstable();
    }
    Ok(classes)
}

/// `differ[p * n + q]`: some word is accepted from `p` and rejected from `q`.
fn distinguishable_pairs(a: &Automaton) -> Vec<bool> {
    let n = a.num_states();
    let letters = a.alphabet().len();
    let succ = |v: usize, l: usize| a.step(v / n, l).0 * n + a.step(v % n, l).0;
    let color = |e: usize, second: bool| -> Color {
        let (v, l) = (e / letters, e % letters);
        a.step(if second { v % n } else { v / n }, l).1
    };
    // accepted from p: every odd color is dominated; rejected from q: every
    // even color is dominated
    let colors: Vec<(Color, bool)> = a.colors().into_iter().map(|c| (c, c % 2 == 0)).collect();
    let lowers: Vec<Box<dyn Fn(usize) -> bool + '_>> = colors
        .iter()
        .map(|&(c, second)| Box::new(move |e| color(e, second) == c) as Box<dyn Fn(usize) -> bool>)
        .collect();
    let uppers: Vec<Box<dyn Fn(usize) -> bool + '_>> = colors
        .iter()
        .map(|&(c, second)| Box::new(move |e| color(e, second) < c) as Box<dyn Fn(usize) -> bool>)
        .collect();
    let pairs: Vec<EdgeCondition> = lowers
        .iter()
        .zip(&uppers)
        .map(|(lower, upper)| EdgeCondition {
            lower: lower.as_ref(),
            upper: upper.as_ref(),
        })
        .collect();
    let fair = fair_nodes(n * n, letters, &succ, &pairs);
    can_reach(n * n, letters, &succ, &fair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;

    #[test]
    fn parity_of_a_count() {
        // accepts words with finitely many b; the a-parity is irrelevant
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let mut a = Automaton::new(alphabet, ["even", "odd"]).unwrap();
        a.add_transition(0, 0, 1, 2);
        a.add_transition(1, 0, 0, 2);
        a.add_transition(0, 1, 0, 1);
        a.add_transition(1, 1, 1, 1);
        assert_eq!(residual_classes(&a).unwrap(), vec![vec![0, 1]]);
        let v = dpw_equiv(&a, &a.with_initial(1)).unwrap();
        assert!(v.equivalent);
        assert_eq!(v.counterexample, None);
    }

    #[test]
    fn distinguishable_states() {
        // after b the automaton is stuck rejecting
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let mut a = Automaton::new(alphabet, ["ok", "dead"]).unwrap();
        a.add_transition(0, 0, 0, 2);
        a.add_transition(0, 1, 1, 1);
        a.add_transition(1, 0, 1, 1);
        a.add_transition(1, 1, 1, 1);
        assert_eq!(residual_classes(&a).unwrap(), vec![vec![0], vec![1]]);
        let v = dpw_equiv(&a, &a.with_initial(1)).unwrap();
        assert!(!v.equivalent);
        assert!(v.counterexample.is_some());
    }
}
