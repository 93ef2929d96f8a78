//! Conjunction of two chains via level pairs, and the complement and
//! disjunction derived from it.

use super::{empty_dcw, is_universal, universal_dcw, Cocoa};
use crate::automaton::{same_alphabet, Automaton};
use crate::boolops::{dcw_conjunction, dcw_disjunction, ensure_deterministic};
use crate::error::{Error, Result};

/// The pairs `(i, j)` of levels in two chains of length `k` that make up
/// level `u` of their conjunction:
///
/// * even `u`: `i + j = u` with `i`, `j` both even;
/// * odd `u`: `u <= i + j <= u + 1` with `i` or `j` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPairSet {
    pub u: usize,
    /// Lexicographically sorted.
    pub pairs: Vec<(usize, usize)>,
}

pub fn level_pairs(k: usize, u: usize) -> LevelPairSet {
    let mut pairs = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            let keep = if u.is_multiple_of(2) {
                i + j == u && i.is_multiple_of(2) && j.is_multiple_of(2)
            } else {
                u <= i + j && i + j <= u + 1 && (i % 2 == 1 || j % 2 == 1)
            };
            if keep {
                pairs.push((i, j));
            }
        }
    }
    LevelPairSet { u, pairs }
}

impl LevelPairSet {
    /// Pairs with no other pair of the set below them componentwise. Since
    /// chain languages shrink with the index, the union of
    /// `L_i ∩ L̂_j` over these equals the union over all pairs.
    pub fn minimal_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .copied()
            .filter(|&(i, j)| {
                !self
                    .pairs
                    .iter()
                    .any(|&(i2, j2)| (i2, j2) != (i, j) && i2 <= i && j2 <= j)
            })
            .collect()
    }
}

fn check_pair(ca: &Cocoa, cb: &Cocoa) -> Result<()> {
    if ca.len() != cb.len() {
        return Err(Error::LengthMismatch(ca.len(), cb.len()));
    }
    same_alphabet([&ca.elements[0], &cb.elements[0]])
}

/// Element `u` of the conjunction is the union over the minimal pairs
/// `(i, j)` of level `u` of `A_i ∩ B_j`, where index 0 stands for the
/// universal automaton.
pub fn cocoa_conjunction_gamma(ca: &Cocoa, cb: &Cocoa) -> Result<Cocoa> {
    check_pair(ca, cb)?;
    let k = ca.len();
    let da = ca.determinized()?;
    let db = cb.determinized()?;
    let universal = universal_dcw(ca.alphabet());
    let mut elements = Vec::with_capacity(2 * k);
    for u in 1..=2 * k {
        let terms: Vec<Automaton> = level_pairs(k, u)
            .minimal_pairs()
            .into_iter()
            .map(|(i, j)| {
                let ops: Vec<&Automaton> = [(i, &da), (j, &db)]
                    .into_iter()
                    .filter(|&(idx, _)| idx > 0)
                    .map(|(idx, d)| &d[idx - 1])
                    .collect();
                match ops.len() {
                    0 => Ok(universal.clone()),
                    1 => Ok(ops[0].clone()),
                    _ => dcw_conjunction(&ops),
                }
            })
            .collect::<Result<_>>()?;
        // level 2k has no pairs when k is odd
        let element = match terms.len() {
            0 => empty_dcw(ca.alphabet()),
            1 => terms.into_iter().next().expect("one term"),
            _ => dcw_disjunction(&terms.iter().collect::<Vec<_>>())?,
        };
        elements.push(element);
    }
    Cocoa::new(elements)
}

/// Shifts every level by one: drops a universal first element, otherwise
/// prepends one. A chain consisting of a single universal element becomes
/// the one-element chain of the empty automaton.
pub fn cocoa_demorgan_complement(c: &Cocoa) -> Result<Cocoa> {
    let first = c.element(1);
    if is_universal(first)? {
        if c.len() == 1 {
            return Cocoa::new(vec![empty_dcw(c.alphabet())]);
        }
        return Cocoa::new(c.elements[1..].to_vec());
    }
    let mut elements = Vec::with_capacity(c.len() + 1);
    elements.push(universal_dcw(c.alphabet()));
    elements.extend(c.elements.iter().cloned());
    Cocoa::new(elements)
}

fn prepend_universal(c: &Cocoa) -> Result<Cocoa> {
    let mut elements = vec![universal_dcw(c.alphabet())];
    elements.extend(
        c.elements
            .iter()
            .map(ensure_deterministic)
            .collect::<Result<Vec<_>>>()?,
    );
    Cocoa::new(elements)
}

/// `¬(¬ca ∧ ¬cb)`, complementing by prepending a universal element so both
/// operands keep equal length; the conjunction then starts with a universal
/// element that the final complement drops.
pub fn cocoa_demorgan_disjunction(ca: &Cocoa, cb: &Cocoa) -> Result<Cocoa> {
    check_pair(ca, cb)?;
    let conj = cocoa_conjunction_gamma(&prepend_universal(ca)?, &prepend_universal(cb)?)?;
    cocoa_demorgan_complement(&conj)
}
