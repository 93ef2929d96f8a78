//! A bounded search for lower bounds on the natural color of a word.
//!
//! Starting from a lasso `w`, each step inserts a finite word before one
//! position of the period (so it recurs once per period iteration). A step
//! counts if the insertion never changes the residual language of the
//! reference automaton at the point where it happens, it flips
//! membership, and it lowers the dominating color of the reference run.
//! Each counted step raises the certified bound by one.

use crate::analysis::residual_classes;
use crate::automaton::{Automaton, Color, Letter, StateId};
use crate::error::{Error, Result};
use crate::run::run_deterministic;
use crate::word::{words_up_to, LassoWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToggleStep {
    /// Period position of the previous word before which `injected` recurs.
    pub position: usize,
    pub injected: Vec<Letter>,
    /// The word after this step.
    pub word: LassoWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalColorVerdict {
    pub certified_lower_bound: usize,
    pub toggle_chain: Vec<ToggleStep>,
}

struct Residuals<'a> {
    reference: &'a Automaton,
    class_of: Vec<usize>,
}

impl<'a> Residuals<'a> {
    fn new(reference: &'a Automaton) -> Result<Self> {
        let mut class_of = vec![usize::MAX; reference.num_states()];
        for (i, class) in residual_classes(reference)?.iter().enumerate() {
            for &q in class {
                class_of[q] = i;
            }
        }
        Ok(Residuals {
            reference,
            class_of,
        })
    }

    /// Does reading `injected` before period position `pos` of `w` keep the
    /// residual class at every visit? Enough period iterations are simulated
    /// to cover the transient part and the whole cycle.
    fn invariant(&self, w: &LassoWord, pos: usize, injected: &[Letter]) -> bool {
        let a = self.reference;
        let mut q: StateId = a.step_word(a.initial(), w.stem());
        for _ in 0..=a.num_states() {
            for (i, &l) in w.period().iter().enumerate() {
                if i == pos {
                    let after = a.step_word(q, injected);
                    if self.class_of[after] != self.class_of[q] {
                        return false;
                    }
                    q = after;
                }
                q = a.step(q, l).0;
            }
        }
        true
    }

    /// The injected word and its dominating color, if the step counts.
    fn check_step(
        &self,
        w: &LassoWord,
        pos: usize,
        injected: &[Letter],
    ) -> Result<Option<(LassoWord, Color)>> {
        if !self.invariant(w, pos, injected) {
            return Ok(None);
        }
        let before = run_deterministic(self.reference, w)?;
        let next = w.inject(pos, injected)?;
        let after = run_deterministic(self.reference, &next)?;
        if after.accepted != before.accepted && after.dominating_color < before.dominating_color {
            Ok(Some((next, after.dominating_color)))
        } else {
            Ok(None)
        }
    }
}

/// Greedy search. Among all admissible toggles of the current word the one
/// whose new dominating color is highest is taken, so the walk descends the
/// colors one step at a time where possible; ties go to the lowest
/// position, then to the shortest and alphabetically first injected word.
pub fn natural_color_probe(
    reference: &Automaton,
    w: &LassoWord,
    max_inject_len: usize,
    max_depth: usize,
) -> Result<NaturalColorVerdict> {
    reference.require_deterministic()?;
    if !w.uses_only(reference.alphabet().len()) {
        return Err(Error::UnknownLetter(
            "letter outside the automaton alphabet".into(),
        ));
    }
    let residuals = Residuals::new(reference)?;
    let letters: Vec<Letter> = (0..reference.alphabet().len()).collect();
    let candidates: Vec<Vec<Letter>> = words_up_to(&letters, max_inject_len)
        .into_iter()
        .filter(|v| !v.is_empty())
        .collect();
    let mut current = w.clone();
    let mut chain = Vec::new();
    while chain.len() < max_depth {
        let mut best: Option<(Color, ToggleStep)> = None;
        for pos in 0..current.period().len() {
            for injected in &candidates {
                if let Some((next, color)) = residuals.check_step(&current, pos, injected)? {
                    if best.as_ref().is_none_or(|(c, _)| color > *c) {
                        let step = ToggleStep {
                            position: pos,
                            injected: injected.clone(),
                            word: next,
                        };
                        best = Some((color, step));
                    }
                }
            }
        }
        match best {
            Some((_, step)) => {
                current = step.word.clone();
                chain.push(step);
            }
            None => break,
        }
    }
    Ok(NaturalColorVerdict {
        certified_lower_bound: chain.len(),
        toggle_chain: chain,
    })
}

/// Replays `(position, injected)` steps from `w`; returns the final word if
/// every step counts, `None` otherwise.
pub fn replay_toggle_chain(
    reference: &Automaton,
    w: &LassoWord,
    steps: &[(usize, Vec<Letter>)],
) -> Result<Option<LassoWord>> {
    reference.require_deterministic()?;
    let residuals = Residuals::new(reference)?;
    let mut current = w.clone();
    for (pos, injected) in steps {
        if *pos >= current.period().len() {
            return Ok(None);
        }
        match residuals.check_step(&current, *pos, injected)? {
            Some((next, _)) => current = next,
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

impl NaturalColorVerdict {
    pub fn steps(&self) -> Vec<(usize, Vec<Letter>)> {
        self.toggle_chain
            .iter()
            .map(|s| (s.position, s.injected.clone()))
            .collect()
    }
}
