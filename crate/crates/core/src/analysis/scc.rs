use std::collections::VecDeque;

use crate::automaton::{Automaton, Letter, StateId, Transition};
use crate::error::{Error, Result};
use crate::graph::tarjan;

/// A strongly connected component together with its internal transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scc {
    /// Sorted state indices.
    pub states: Vec<StateId>,
    pub transitions: Vec<Transition>,
}

impl Scc {
    pub fn contains(&self, q: StateId) -> bool {
        self.states.binary_search(&q).is_ok()
    }

    pub fn is_disjoint(&self, other: &Scc) -> bool {
        self.states.iter().all(|&q| !other.contains(q))
    }
}

/// Non-trivial SCCs of the sub-graph reachable from the initial state that
/// only uses transitions accepted by `keep`, ordered by smallest member.
fn sccs_filtered(a: &Automaton, keep: impl Fn(&Transition) -> bool) -> Vec<Scc> {
    let roots = a.reachable_states();
    let out: Vec<Vec<Transition>> = (0..a.num_states())
        .map(|q| {
            (0..a.alphabet().len())
                .flat_map(|l| {
                    a.successors(q, l)
                        .iter()
                        .map(move |&(dst, color)| Transition {
                            src: q,
                            letter: l,
                            dst,
                            color,
                        })
                })
                .filter(|t| keep(t))
                .collect()
        })
        .collect();
    let comps = tarjan(a.num_states(), &roots, |v| out[v].iter().map(|t| t.dst));
    let mut comp_of = vec![usize::MAX; a.num_states()];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            comp_of[q] = i;
        }
    }
    let mut sccs: Vec<Scc> = comps
        .iter()
        .enumerate()
        .filter_map(|(i, states)| {
            let transitions: Vec<Transition> = states
                .iter()
                .flat_map(|&q| out[q].iter().copied())
                .filter(|t| comp_of[t.dst] == i)
                .collect();
            (!transitions.is_empty()).then(|| Scc {
                states: states.clone(),
                transitions,
            })
        })
        .collect();
    sccs.sort_by_key(|s| s.states[0]);
    sccs
}

/// Reachable SCCs that carry at least one internal transition.
pub fn scc_decompose(a: &Automaton) -> Result<Vec<Scc>> {
    a.require_valid()?;
    Ok(sccs_filtered(a, |_| true))
}

/// SCCs of the graph restricted to `letters` that no `letters`-transition
/// leaves.
pub fn closed_subsccs(a: &Automaton, letters: &[Letter]) -> Result<Vec<Scc>> {
    a.require_deterministic()?;
    if letters.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut allowed = vec![false; a.alphabet().len()];
    for &l in letters {
        if l >= allowed.len() {
            return Err(Error::UnknownLetter(format!("#{l}")));
        }
        allowed[l] = true;
    }
    let sccs = sccs_filtered(a, |t| allowed[t.letter]);
    Ok(sccs
        .into_iter()
        .filter(|s| {
            s.states.iter().all(|&q| {
                letters
                    .iter()
                    .all(|&l| a.successors(q, l).iter().all(|&(d, _)| s.contains(d)))
            })
        })
        .collect())
}

/// Shortest letter sequence from `from` to any node satisfying `target`,
/// following `edges(v)` = `(letter, dst)` pairs in letter order.
pub(crate) fn shortest_path<E, I>(
    num_nodes: usize,
    from: usize,
    target: impl Fn(usize) -> bool,
    mut edges: E,
) -> Option<(usize, Vec<Letter>)>
where
    E: FnMut(usize) -> I,
    I: Iterator<Item = (Letter, usize)>,
{
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; num_nodes];
    let mut seen = vec![false; num_nodes];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if target(v) {
            let mut word = Vec::new();
            let mut cur = v;
            while let Some((p, l)) = parent[cur] {
                word.push(l);
                cur = p;
            }
            word.reverse();
            return Some((v, word));
        }
        for (l, d) in edges(v) {
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((v, l));
                queue.push_back(d);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;

    fn two_cycle() -> Automaton {
        // p -a-> q -a-> p ; b self-loops; unreachable r
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let mut a = Automaton::new(alphabet, ["p", "q", "r"]).unwrap();
        a.add_transition(0, 0, 1, 2);
        a.add_transition(1, 0, 0, 2);
        a.add_transition(0, 1, 0, 1);
        a.add_transition(1, 1, 1, 1);
        a.add_transition(2, 0, 2, 2);
        a.add_transition(2, 1, 0, 2);
        a
    }

    #[test]
    fn reachable_sccs_only() {
        let sccs = scc_decompose(&two_cycle()).unwrap();
        assert_eq!(sccs.len(), 1);
        assert_eq!(sccs[0].states, vec![0, 1]);
        assert_eq!(sccs[0].transitions.len(), 4);
    }

    #[test]
    fn closed_subsets() {
        let a = two_cycle();
        let b_only = closed_subsccs(&a, &[1]).unwrap();
        assert_eq!(b_only.len(), 2);
        assert_eq!(b_only[0].states, vec![0]);
        assert_eq!(b_only[1].states, vec![1]);
        assert!(b_only[0].is_disjoint(&b_only[1]));
        let all = closed_subsccs(&a, &[0, 1]).unwrap();
        assert_eq!(all[0].states, vec![0, 1]);
    }

    #[test]
    fn shortest_path_prefers_low_letters() {
        let adj = [vec![(0, 1), (1, 2)], vec![(0, 3)], vec![(0, 3)], vec![]];
        let (v, w) = shortest_path(4, 0, |v| v == 3, |v| adj[v].iter().copied()).unwrap();
        assert_eq!((v, w), (3, vec![0, 0]));
        assert!(shortest_path(4, 3, |v| v == 0, |v| adj[v].iter().copied()).is_none());
    }
}
