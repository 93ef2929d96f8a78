//! A line-based text format for automata and chains.
//!
//! ```text
//! # comment
//! aut A
//! alphabet: a b
//! states: q0 q1
//! initial: q0
//! q0 a -> q1 : 1
//! ...
//! end
//! cocoa C = A B
//! ```
//!
//! Printing lists states breadth-first from the initial state and
//! transitions by source, letter and target, so output is stable.

use std::fmt::Write as _;

use thiserror::Error;

use crate::automaton::{Alphabet, Automaton, Color};
use crate::cocoa::Cocoa;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Named automata and chains over them, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub automata: Vec<(String, Automaton)>,
    pub chains: Vec<(String, Vec<String>)>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_automaton(&mut self, name: impl Into<String>, a: Automaton) {
        self.automata.push((name.into(), a));
    }

    /// Adds the elements as `{name}_{i}` (1-based) and the chain as `name`.
    pub fn add_cocoa(&mut self, name: &str, c: &Cocoa) {
        let mut names = Vec::with_capacity(c.len());
        for (i, a) in c.elements().iter().enumerate() {
            let element = format!("{name}_{}", i + 1);
            self.add_automaton(element.clone(), a.clone());
            names.push(element);
        }
        self.chains.push((name.to_string(), names));
    }

    pub fn automaton(&self, name: &str) -> Option<&Automaton> {
        self.automata
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
    }

    /// Builds the chain `name`, if declared.
    pub fn cocoa(&self, name: &str) -> Option<Result<Cocoa>> {
        let (_, elements) = self.chains.iter().find(|(n, _)| n == name)?;
        let autos = elements
            .iter()
            .map(|e| {
                self.automaton(e)
                    .expect("chain elements are declared")
                    .clone()
            })
            .collect();
        Some(Cocoa::new(autos))
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

struct Pending {
    name: String,
    start: usize,
    alphabet: Option<Alphabet>,
    automaton: Option<Automaton>,
    initial_set: bool,
}

pub fn parse(text: &str) -> std::result::Result<Document, ParseError> {
    let mut doc = Document::new();
    let mut cur: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(p) = cur.as_mut() else {
            if let Some(name) = line.strip_prefix("aut ") {
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(ln, "expected `aut NAME`"));
                }
                if doc.automaton(name).is_some() {
                    return Err(err(ln, format!("automaton `{name}` declared twice")));
                }
                cur = Some(Pending {
                    name: name.to_string(),
                    start: ln,
                    alphabet: None,
                    automaton: None,
                    initial_set: false,
                });
            } else if let Some(rest) = line.strip_prefix("cocoa ") {
                let (name, elements) = rest
                    .split_once('=')
                    .ok_or_else(|| err(ln, "expected `cocoa NAME = A1 A2 ...`"))?;
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(ln, "expected `cocoa NAME = A1 A2 ...`"));
                }
                let elements: Vec<String> =
                    elements.split_whitespace().map(str::to_string).collect();
                if elements.is_empty() {
                    return Err(err(ln, "a chain needs at least one element"));
                }
                for e in &elements {
                    if doc.automaton(e).is_none() {
                        return Err(err(ln, format!("unknown automaton `{e}`")));
                    }
                }
                doc.chains.push((name.to_string(), elements));
            } else {
                return Err(err(ln, format!("unexpected `{line}`")));
            }
            continue;
        };

        if line == "end" {
            let p = cur.take().expect("inside a block");
            let a = p
                .automaton
                .ok_or_else(|| err(ln, format!("automaton `{}` has no states", p.name)))?;
            if !p.initial_set {
                return Err(err(
                    ln,
                    format!("automaton `{}` has no initial state", p.name),
                ));
            }
            doc.add_automaton(p.name, a);
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            if p.alphabet.is_some() {
                return Err(err(ln, "alphabet declared twice"));
            }
            p.alphabet =
                Some(Alphabet::new(rest.split_whitespace()).map_err(|e| err(ln, e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("states:") {
            let alphabet = p
                .alphabet
                .clone()
                .ok_or_else(|| err(ln, "`alphabet:` must precede `states:`"))?;
            if p.automaton.is_some() {
                return Err(err(ln, "states declared twice"));
            }
            p.automaton = Some(
                Automaton::new(alphabet, rest.split_whitespace())
                    .map_err(|e| err(ln, e.to_string()))?,
            );
        } else if let Some(rest) = line.strip_prefix("initial:") {
            let a = p
                .automaton
                .as_mut()
                .ok_or_else(|| err(ln, "`states:` must precede `initial:`"))?;
            let q = a.state(rest.trim()).map_err(|e| err(ln, e.to_string()))?;
            a.set_initial(q);
            p.initial_set = true;
        } else if line.contains("->") {
            let a = p
                .automaton
                .as_mut()
                .ok_or_else(|| err(ln, "`states:` must precede transitions"))?;
            let (lhs, rhs) = line.split_once("->").expect("checked");
            let (dst, color) = rhs
                .split_once(':')
                .ok_or_else(|| err(ln, "expected `src letter -> dst : color`"))?;
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            let [src, letter] = lhs[..] else {
                return Err(err(ln, "expected `src letter -> dst : color`"));
            };
            let color: Color = color
                .trim()
                .parse()
                .map_err(|_| err(ln, format!("bad color `{}`", color.trim())))?;
            let s = a.state(src).map_err(|e| err(ln, e.to_string()))?;
            let d = a.state(dst.trim()).map_err(|e| err(ln, e.to_string()))?;
            let l = a
                .alphabet()
                .letter(letter)
                .map_err(|e| err(ln, e.to_string()))?;
            if let Some(&(_, c)) = a.successors(s, l).iter().find(|&&(_, c)| c != color) {
                return Err(err(
                    ln,
                    format!("({src}, {letter}) already has transitions of color {c}"),
                ));
            }
            a.add_transition(s, l, d, color);
        } else {
            return Err(err(
                ln,
                format!("unexpected `{line}` in automaton `{}`", p.name),
            ));
        }
    }
    if let Some(p) = cur {
        return Err(err(
            p.start,
            format!("automaton `{}` is missing `end`", p.name),
        ));
    }
    Ok(doc)
}

pub fn print_automaton(out: &mut String, name: &str, a: &Automaton) {
    let a = a.normalized();
    let _ = writeln!(out, "aut {name}");
    let _ = writeln!(out, "alphabet: {}", a.alphabet().letters().join(" "));
    let _ = writeln!(out, "states: {}", a.states().join(" "));
    let _ = writeln!(out, "initial: {}", a.state_name(a.initial()));
    for t in a.transitions() {
        let _ = writeln!(
            out,
            "{} {} -> {} : {}",
            a.state_name(t.src),
            a.alphabet().name(t.letter),
            a.state_name(t.dst),
            t.color
        );
    }
    out.push_str("end\n");
}

pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (i, (name, a)) in doc.automata.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_automaton(&mut out, name, a);
    }
    if !doc.chains.is_empty() {
        out.push('\n');
    }
    for (name, elements) in &doc.chains {
        let _ = writeln!(out, "cocoa {name} = {}", elements.join(" "));
    }
    out
}
