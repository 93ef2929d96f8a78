//! Chains of co-Büchi automata.
//!
//! A chain `A_1 … A_n` with `L(A_1) ⊃ … ⊃ L(A_n)` assigns every word the
//! level `max { i : w ∈ L(A_i) }` (0 if no element accepts); the word is in
//! the chain's language iff its level is even.

mod gamma;
mod probe;

pub use gamma::{
    cocoa_conjunction_gamma, cocoa_demorgan_complement, cocoa_demorgan_disjunction, level_pairs,
    LevelPairSet,
};
pub use probe::{natural_color_probe, replay_toggle_chain, NaturalColorVerdict, ToggleStep};

use std::thread;

use crate::analysis::{diff_nonempty, dpw_diff_nonempty};
use crate::automaton::{same_alphabet, Alphabet, Automaton, Color, ACCEPTING, REJECTING};
use crate::boolops::{ensure_deterministic, explore, tuple_name};
use crate::error::{Error, Result};
use crate::run::accepts_lasso_cobuchi;
use crate::word::LassoWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocoa {
    alphabet: Alphabet,
    elements: Vec<Automaton>,
}

impl Cocoa {
    /// Checks that the elements are valid co-Büchi automata over one
    /// alphabet. The chain property itself is checked by [`check_chain`].
    pub fn new(elements: Vec<Automaton>) -> Result<Cocoa> {
        let first = elements.first().ok_or(Error::NoOperands)?;
        same_alphabet(&elements)?;
        for a in &elements {
            a.require_valid()?;
            a.require_cobuchi()?;
        }
        Ok(Cocoa {
            alphabet: first.alphabet().clone(),
            elements,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn elements(&self) -> &[Automaton] {
        &self.elements
    }

    /// Element `i`, 1-based.
    pub fn element(&self, i: usize) -> &Automaton {
        &self.elements[i - 1]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Total number of element states.
    pub fn num_states(&self) -> usize {
        self.elements.iter().map(Automaton::num_states).sum()
    }

    /// The chain with every nondeterministic element determinized.
    pub fn determinized(&self) -> Result<Vec<Automaton>> {
        thread::scope(|s| {
            let handles: Vec<_> = self
                .elements
                .iter()
                .map(|a| s.spawn(move || ensure_deterministic(a)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("determinization panicked"))
                .collect()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocoaVerdict {
    pub level: usize,
    pub member: bool,
}

pub fn cocoa_eval(c: &Cocoa, w: &LassoWord) -> Result<CocoaVerdict> {
    let mut level = 0;
    for (i, a) in c.elements.iter().enumerate() {
        if accepts_lasso_cobuchi(a, w)? {
            level = i + 1;
        }
    }
    Ok(CocoaVerdict {
        level,
        member: level % 2 == 0,
    })
}

/// The product of the (determinized) elements. A transition gets the color
/// `j` of the first element `D_{j+1}` that takes a rejecting transition, or
/// the chain length if none does.
pub fn cocoa_to_dpw(c: &Cocoa) -> Result<Automaton> {
    let ds = c.determinized()?;
    let refs: Vec<&Automaton> = ds.iter().collect();
    let k = ds.len();
    let init: Vec<usize> = ds.iter().map(|d| d.initial()).collect();
    Ok(explore(
        &c.alphabet,
        init,
        |qs, l| {
            let mut color = k as Color;
            let next = ds
                .iter()
                .zip(qs)
                .enumerate()
                .map(|(j, (d, &q))| {
                    let (dst, col) = d.step(q, l);
                    if col == REJECTING && (j as Color) < color {
                        color = j as Color;
                    }
                    dst
                })
                .collect();
            (next, color)
        },
        |qs| tuple_name(&refs, qs),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainFailure {
    /// Some word of `L(A_{index+1})` is missing from `L(A_index)`.
    NotIncluded { index: usize, witness: LassoWord },
    /// `L(A_index) = L(A_{index+1})`.
    NotStrict { index: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainReport {
    pub failures: Vec<ChainFailure>,
}

impl ChainReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decides strict inclusion between consecutive elements.
pub fn check_chain(c: &Cocoa) -> Result<ChainReport> {
    let ds = c.determinized()?;
    let mut failures = Vec::new();
    for (i, pair) in ds.windows(2).enumerate() {
        let index = i + 1;
        if let Some(witness) = dpw_diff_nonempty(&pair[1], &pair[0])? {
            failures.push(ChainFailure::NotIncluded { index, witness });
        } else if dpw_diff_nonempty(&pair[0], &pair[1])?.is_none() {
            failures.push(ChainFailure::NotStrict { index });
        }
    }
    Ok(ChainReport { failures })
}

/// The one-state co-Büchi automaton accepting every word.
pub fn universal_dcw(alphabet: &Alphabet) -> Automaton {
    constant_dcw(alphabet, ACCEPTING)
}

/// The one-state co-Büchi automaton accepting no word.
pub fn empty_dcw(alphabet: &Alphabet) -> Automaton {
    constant_dcw(alphabet, REJECTING)
}

fn constant_dcw(alphabet: &Alphabet, color: Color) -> Automaton {
    let mut a = Automaton::new(alphabet.clone(), ["u"]).expect("one state");
    for l in 0..alphabet.len() {
        a.add_transition(0, l, 0, color);
    }
    a
}

/// Does the co-Büchi automaton accept every word?
pub fn is_universal(a: &Automaton) -> Result<bool> {
    let d = ensure_deterministic(a)?;
    let u = universal_dcw(a.alphabet());
    Ok(diff_nonempty(&[&u], &[&d])?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::run_deterministic;
    use crate::word::all_lassos;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Rejects on the given letters.
    fn rejecting_on(letters: &[usize]) -> Automaton {
        let mut a = Automaton::new(ab(), ["q"]).unwrap();
        for l in 0..2 {
            let c = if letters.contains(&l) {
                REJECTING
            } else {
                ACCEPTING
            };
            a.add_transition(0, l, 0, c);
        }
        a
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Cocoa::new(vec![]).unwrap_err(), Error::NoOperands);
        let parity = rejecting_on(&[]).map_colors(|_| 0);
        assert_eq!(Cocoa::new(vec![parity]).unwrap_err(), Error::NotCoBuchi);
    }

    #[test]
    fn single_element_is_complement() {
        let a = rejecting_on(&[0]);
        let c = Cocoa::new(vec![a.clone()]).unwrap();
        let d = cocoa_to_dpw(&c).unwrap();
        for w in all_lassos(&ab(), 2, 3) {
            let inside = run_deterministic(&a, &w).unwrap().accepted;
            assert_eq!(run_deterministic(&d, &w).unwrap().accepted, !inside);
            assert_eq!(cocoa_eval(&c, &w).unwrap().member, !inside);
        }
    }

    #[test]
    fn two_levels() {
        let c = Cocoa::new(vec![rejecting_on(&[0]), rejecting_on(&[0, 1])]).unwrap();
        assert!(check_chain(&c).unwrap().is_ok());
        let d = cocoa_to_dpw(&c).unwrap();
        let w = LassoWord::new(vec![], vec![1]).unwrap();
        assert_eq!(
            cocoa_eval(&c, &w).unwrap(),
            CocoaVerdict {
                level: 1,
                member: false
            }
        );
        assert_eq!(run_deterministic(&d, &w).unwrap().dominating_color, 1);
        let w = LassoWord::new(vec![], vec![0, 1]).unwrap();
        assert_eq!(
            cocoa_eval(&c, &w).unwrap(),
            CocoaVerdict {
                level: 0,
                member: true
            }
        );
        assert_eq!(run_deterministic(&d, &w).unwrap().dominating_color, 0);
    }

    #[test]
    fn chain_failures() {
        let a = rejecting_on(&[0]);
        let dup = Cocoa::new(vec![a.clone(), a.clone()]).unwrap();
        assert_eq!(
            check_chain(&dup).unwrap().failures,
            vec![ChainFailure::NotStrict { index: 1 }]
        );
        let rev = Cocoa::new(vec![rejecting_on(&[0, 1]), a.clone()]).unwrap();
        match &check_chain(&rev).unwrap().failures[..] {
            [ChainFailure::NotIncluded { index: 1, witness }] => {
                assert!(run_deterministic(&a, witness).unwrap().accepted);
            }
            other => panic!("unexpected report {other:?}"),
        }
    }

    #[test]
    fn universality() {
        assert!(is_universal(&universal_dcw(&ab())).unwrap());
        assert!(!is_universal(&rejecting_on(&[1])).unwrap());
        assert!(!is_universal(&empty_dcw(&ab())).unwrap());
    }
}
