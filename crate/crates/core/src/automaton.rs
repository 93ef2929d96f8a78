//! Transition-based ω-automata.
//!
//! One representation covers deterministic and nondeterministic co-Büchi and
//! parity automata: colors live on transitions, a run is accepting iff the
//! least color seen infinitely often is even. Co-Büchi automata use the
//! colors 1 (rejecting) and 2 (accepting).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type StateId = usize;
pub type Letter = usize;
pub type Color = u32;

/// Rejecting color of a co-Büchi automaton.
pub const REJECTING: Color = 1;
/// Accepting color of a co-Büchi automaton.
pub const ACCEPTING: Color = 2;

/// An ordered set of named letters. Letters are referred to by their index.
#[derive(Clone, Debug)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, Letter>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(letters.len());
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::UnknownLetter(l.clone()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters, index })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    /// Resolves a list of letter names into indices.
    pub fn letters_of(&self, names: &[&str]) -> Result<Vec<Letter>> {
        names.iter().map(|n| self.letter(n)).collect()
    }
}

/// A single transition `(src, letter, dst, color)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub letter: Letter,
    pub dst: StateId,
    pub color: Color,
}

/// A broken automaton invariant, reported by [`Automaton::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// No transition for this state/letter pair.
    Incomplete { state: String, letter: String },
    /// Transitions for this state/letter pair disagree on their color.
    ColorConflict {
        state: String,
        letter: String,
        colors: Vec<Color>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Incomplete { state, letter } => {
                write!(f, "({state}, {letter}): no outgoing transition")
            }
            Violation::ColorConflict {
                state,
                letter,
                colors,
            } => write!(
                f,
                "({state}, {letter}): transitions carry different colors {colors:?}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    states: Vec<String>,
    index: HashMap<String, StateId>,
    initial: StateId,
    // [state][letter] -> sorted successor list
    succ: Vec<Vec<Vec<(StateId, Color)>>>,
}

impl Automaton {
    /// Creates an automaton without transitions. The first state is initial
    /// unless changed with [`Automaton::set_initial`].
    pub fn new<I, S>(alphabet: Alphabet, states: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Automaton {
            alphabet,
            states: Vec::new(),
            index: HashMap::new(),
            initial: 0,
            succ: Vec::new(),
        };
        for s in states {
            a.add_state(s)?;
        }
        if a.states.is_empty() {
            return Err(Error::NoStates);
        }
        Ok(a)
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> Result<StateId> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::UnknownState(name));
        }
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateState(name));
        }
        self.index.insert(name.clone(), self.states.len());
        self.states.push(name);
        self.succ.push(vec![Vec::new(); self.alphabet.len()]);
        Ok(self.states.len() - 1)
    }

    pub fn set_initial(&mut self, q: StateId) {
        assert!(q < self.states.len(), "initial state out of range");
        self.initial = q;
    }

    /// Adds a transition; duplicates are ignored.
    pub fn add_transition(&mut self, src: StateId, letter: Letter, dst: StateId, color: Color) {
        assert!(src < self.states.len() && dst < self.states.len());
        assert!(letter < self.alphabet.len());
        let list = &mut self.succ[src][letter];
        if let Err(pos) = list.binary_search(&(dst, color)) {
            list.insert(pos, (dst, color));
        }
    }

    pub fn add_transition_named(
        &mut self,
        src: &str,
        letter: &str,
        dst: &str,
        color: Color,
    ) -> Result<()> {
        let s = self.state(src)?;
        let d = self.state(dst)?;
        let l = self.alphabet.letter(letter)?;
        self.add_transition(s, l, d, color);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn successors(&self, q: StateId, letter: Letter) -> &[(StateId, Color)] {
        &self.succ[q][letter]
    }

    /// The unique successor of a deterministic automaton.
    ///
    /// Panics if there is no transition; for nondeterministic automata the
    /// smallest successor is returned.
    pub fn step(&self, q: StateId, letter: Letter) -> (StateId, Color) {
        self.succ[q][letter][0]
    }

    /// Follows a finite word from `q` in a deterministic automaton.
    pub fn step_word(&self, mut q: StateId, word: &[Letter]) -> StateId {
        for &l in word {
            q = self.step(q, l).0;
        }
        q
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.succ.iter().enumerate().flat_map(|(src, row)| {
            row.iter().enumerate().flat_map(move |(letter, list)| {
                list.iter().map(move |&(dst, color)| Transition {
                    src,
                    letter,
                    dst,
                    color,
                })
            })
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().flatten().map(Vec::len).sum()
    }

    /// Colors occurring on some transition, ascending.
    pub fn colors(&self) -> BTreeSet<Color> {
        self.transitions().map(|t| t.color).collect()
    }

    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().flatten().all(|l| l.len() == 1)
    }

    pub fn is_complete(&self) -> bool {
        self.succ.iter().flatten().all(|l| !l.is_empty())
    }

    pub fn is_cobuchi(&self) -> bool {
        self.transitions()
            .all(|t| t.color == REJECTING || t.color == ACCEPTING)
    }

    /// Lists every broken invariant: missing transitions and state/letter
    /// pairs whose transitions disagree on the color.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (q, row) in self.succ.iter().enumerate() {
            for (l, list) in row.iter().enumerate() {
                if list.is_empty() {
                    out.push(Violation::Incomplete {
                        state: self.states[q].clone(),
                        letter: self.alphabet.name(l).to_string(),
                    });
                    continue;
                }
                let colors: BTreeSet<Color> = list.iter().map(|&(_, c)| c).collect();
                if colors.len() > 1 {
                    out.push(Violation::ColorConflict {
                        state: self.states[q].clone(),
                        letter: self.alphabet.name(l).to_string(),
                        colors: colors.into_iter().collect(),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(Error::Invalid(msg.join("; ")))
        }
    }

    pub(crate) fn require_deterministic(&self) -> Result<()> {
        if self.is_deterministic() {
            Ok(())
        } else if !self.is_complete() {
            self.require_valid()
        } else {
            Err(Error::NotDeterministic)
        }
    }

    pub(crate) fn require_cobuchi(&self) -> Result<()> {
        if self.is_cobuchi() {
            Ok(())
        } else {
            Err(Error::NotCoBuchi)
        }
    }

    /// The same automaton with a different initial state.
    pub fn with_initial(&self, q: StateId) -> Automaton {
        let mut a = self.clone();
        a.set_initial(q);
        a
    }

    /// Applies `f` to every transition color.
    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> Automaton {
        let mut a = self.clone();
        for list in a.succ.iter_mut().flatten() {
            for entry in list.iter_mut() {
                entry.1 = f(entry.1);
            }
            list.sort_unstable();
            list.dedup();
        }
        a
    }

    /// States in breadth-first order from the initial state (letters in
    /// alphabet order, successors in index order), followed by unreachable
    /// states in declaration order.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = Vec::with_capacity(self.num_states());
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for list in &self.succ[q] {
                for &(d, _) in list {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        let reachable = order.len();
        order.extend((0..self.num_states()).filter(|&q| !seen[q]));
        debug_assert!(order.len() >= reachable);
        order
    }

    pub fn reachable_states(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            out.push(q);
            for list in &self.succ[q] {
                for &(d, _) in list {
                    if !seen[d] {
                        seen[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Renumbers states so that index order equals [`Automaton::bfs_order`].
    pub fn normalized(&self) -> Automaton {
        let order = self.bfs_order();
        let mut new_index = vec![0; order.len()];
        for (i, &q) in order.iter().enumerate() {
            new_index[q] = i;
        }
        let mut succ = vec![vec![Vec::new(); self.alphabet.len()]; order.len()];
        for t in self.transitions() {
            succ[new_index[t.src]][t.letter].push((new_index[t.dst], t.color));
        }
        for list in succ.iter_mut().flatten() {
            list.sort_unstable();
        }
        let states: Vec<String> = order.iter().map(|&q| self.states[q].clone()).collect();
        let index = states.iter().cloned().zip(0..).collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            states,
            index,
            initial: 0,
            succ,
        }
    }
}

pub(crate) fn same_alphabet<'a>(autos: impl IntoIterator<Item = &'a Automaton>) -> Result<()> {
    let mut it = autos.into_iter();
    if let Some(first) = it.next() {
        for a in it {
            if a.alphabet() != first.alphabet() {
                return Err(Error::AlphabetMismatch);
            }
        }
    }
    Ok(())
}
