//! Generators for the automaton families and fixed example automata.
//!
//! Letters keep their usual spelling with the index appended (`x1`, `Y3`,
//! `a11`); alphabets list the x-block, then the y-block, then the a-block.

use std::fmt;
use std::str::FromStr;

use crate::automaton::{Alphabet, Automaton, Color, Letter, ACCEPTING, REJECTING};
use crate::cocoa::{cocoa_to_dpw, Cocoa};
use crate::error::{Error, Result};
use crate::format::Document;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Fig1,
    Fig2,
    MinParity,
    Ck,
    Lk,
    Lhat,
    Pk,
    Comp,
    L0hat,
    Ncw,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Fig1,
        Family::Fig2,
        Family::MinParity,
        Family::Ck,
        Family::Lk,
        Family::Lhat,
        Family::Pk,
        Family::Comp,
        Family::L0hat,
        Family::Ncw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fig1 => "fig1",
            Family::Fig2 => "fig2",
            Family::MinParity => "minparity",
            Family::Ck => "Ck",
            Family::Lk => "Lk",
            Family::Lhat => "Lhat",
            Family::Pk => "Pk",
            Family::Comp => "comp_family",
            Family::L0hat => "L0hat",
            Family::Ncw => "ncw_fixture",
        }
    }

    pub fn takes_k(self) -> bool {
        !matches!(self, Family::Fig1 | Family::Fig2 | Family::Ncw)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let lower = s.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name().to_ascii_lowercase() == lower)
            .or(match lower.as_str() {
                "comp" => Some(Family::Comp),
                "ncw" => Some(Family::Ncw),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub k: usize,
}

impl FamilySpec {
    /// `k` is ignored for the fixed fixtures.
    pub fn new(family: Family, k: usize) -> Result<FamilySpec> {
        if family.takes_k() && k == 0 {
            return Err(Error::InvalidK);
        }
        Ok(FamilySpec { family, k })
    }
}

/// Emits the family as named automata and chains.
pub fn gen(spec: FamilySpec) -> Result<Document> {
    let k = spec.k;
    if spec.family.takes_k() && k == 0 {
        return Err(Error::InvalidK);
    }
    let mut doc = Document::new();
    match spec.family {
        Family::Fig1 => doc.add_cocoa("fig1", &fig1()),
        Family::Fig2 => doc.add_automaton("fig2", fig2()),
        Family::MinParity => {
            doc.add_automaton(format!("minparity{k}"), minparity_dpw(k)?);
            doc.add_cocoa(&format!("minparity{k}_chain"), &minparity_chain(k)?);
        }
        Family::Ck => doc.add_cocoa(&format!("C{k}"), &ck(k)?),
        Family::Lk => doc.add_cocoa(&format!("L{k}"), &lk(k)?),
        Family::Lhat => doc.add_cocoa(&format!("Lhat{k}"), &lhat(k)?),
        Family::Pk => doc.add_automaton(format!("P{k}"), pk(k)?),
        Family::Comp => doc.add_cocoa(&format!("comp{k}"), &comp_family(k)?),
        Family::L0hat => doc.add_automaton(format!("L0hat{k}"), l0hat(k)?),
        Family::Ncw => doc.add_automaton("ncw", ncw_fixture()),
    }
    Ok(doc)
}

fn alphabet(names: impl IntoIterator<Item = String>) -> Alphabet {
    Alphabet::new(names).expect("generated letters are distinct")
}

fn indexed(prefix: &str, range: std::ops::RangeInclusive<usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn automaton(alphabet: &Alphabet, states: &[&str]) -> Automaton {
    Automaton::new(alphabet.clone(), states.iter().copied()).expect("generated states are distinct")
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidK)
    } else {
        Ok(())
    }
}

/// Adds `src -letter-> dst : color` for every named letter.
fn edges(a: &mut Automaton, src: usize, letters: &[&str], dst: usize, color: Color) {
    for l in letters {
        let l = a.alphabet().letter(l).expect("fixture letter");
        a.add_transition(src, l, dst, color);
    }
}

/// The three-level example chain over `{a, b, c}`.
pub fn fig1() -> Cocoa {
    let abc = alphabet(["a", "b", "c"].map(String::from));
    let mut a1 = automaton(&abc, &["q0"]);
    edges(&mut a1, 0, &["a"], 0, REJECTING);
    edges(&mut a1, 0, &["b", "c"], 0, ACCEPTING);

    let mut a2 = automaton(&abc, &["q1", "q2"]);
    edges(&mut a2, 0, &["a"], 0, REJECTING);
    edges(&mut a2, 0, &["c"], 0, ACCEPTING);
    edges(&mut a2, 0, &["b"], 1, ACCEPTING);
    edges(&mut a2, 1, &["a", "b"], 1, REJECTING);
    edges(&mut a2, 1, &["a", "b"], 0, REJECTING);
    edges(&mut a2, 1, &["c"], 0, ACCEPTING);

    let mut a3 = automaton(&abc, &["q3", "q4"]);
    edges(&mut a3, 0, &["b"], 0, REJECTING);
    edges(&mut a3, 0, &["c"], 0, ACCEPTING);
    edges(&mut a3, 0, &["a"], 1, REJECTING);
    edges(&mut a3, 1, &["b", "c"], 1, REJECTING);
    edges(&mut a3, 1, &["a"], 0, REJECTING);

    Cocoa::new(vec![a1, a2, a3]).expect("fixture is valid")
}

/// The four-state parity automaton for the two-level `Ck` chain.
pub fn fig2() -> Automaton {
    let letters = alphabet(["x1", "x2", "x3", "y1", "y2", "y3"].map(String::from));
    let mut a = automaton(&letters, &["q0", "q1", "q2", "q3"]);
    edges(&mut a, 0, &["x2", "x3", "y3"], 0, 2);
    edges(&mut a, 0, &["x1"], 1, 0);
    edges(&mut a, 0, &["y1", "y2"], 2, 1);
    edges(&mut a, 1, &["x1", "x2", "x3", "y3"], 1, 2);
    edges(&mut a, 1, &["y1"], 2, 0);
    edges(&mut a, 1, &["y2"], 3, 1);
    edges(&mut a, 2, &["x3", "y1", "y2", "y3"], 2, 2);
    edges(&mut a, 2, &["x1"], 1, 0);
    edges(&mut a, 2, &["x2"], 0, 1);
    edges(&mut a, 3, &["x3", "y2", "y3"], 3, 2);
    edges(&mut a, 3, &["y1"], 2, 0);
    edges(&mut a, 3, &["x1", "x2"], 1, 1);
    a
}

fn digits(k: usize) -> Alphabet {
    alphabet((1..=k).map(|i| i.to_string()))
}

/// One state; letter `i` loops with color `i`.
pub fn minparity_dpw(k: usize) -> Result<Automaton> {
    check_k(k)?;
    let mut a = automaton(&digits(k), &["q"]);
    for l in 0..k {
        a.add_transition(0, l, 0, (l + 1) as Color);
    }
    Ok(a)
}

/// Level `i` accepts exactly the words whose least recurring letter is at
/// least `i`.
pub fn minparity_chain(k: usize) -> Result<Cocoa> {
    check_k(k)?;
    let letters = digits(k);
    let elements = (1..=k)
        .map(|i| {
            let mut a = automaton(&letters, &["q"]);
            for l in 0..k {
                let c = if l + 1 >= i { ACCEPTING } else { REJECTING };
                a.add_transition(0, l, 0, c);
            }
            a
        })
        .collect();
    Cocoa::new(elements)
}

/// Element `j` accepts the words in which `x1 … xj` or `y1 … yj` occur
/// only finitely often.
pub fn ck(k: usize) -> Result<Cocoa> {
    check_k(k)?;
    let letters = alphabet(
        indexed("x", 1..=k + 1)
            .into_iter()
            .chain(indexed("y", 1..=k + 1)),
    );
    let x = |i: usize| i - 1;
    let y = |i: usize| k + i;
    let elements = (1..=k)
        .map(|j| {
            let mut a = automaton(&letters, &["q0", "q1"]);
            for i in 1..=k + 1 {
                if i <= j {
                    a.add_transition(0, x(i), 1, REJECTING);
                    a.add_transition(1, y(i), 0, REJECTING);
                } else {
                    a.add_transition(0, x(i), 0, ACCEPTING);
                    a.add_transition(1, y(i), 1, ACCEPTING);
                }
                a.add_transition(0, y(i), 0, ACCEPTING);
                a.add_transition(1, x(i), 1, ACCEPTING);
            }
            a
        })
        .collect();
    Cocoa::new(elements)
}

/// `X1 … Xk, Y1 … Yk, a0 … a(4k-1)`.
fn lk_alphabet(k: usize) -> Alphabet {
    alphabet(
        indexed("X", 1..=k)
            .into_iter()
            .chain(indexed("Y", 1..=k))
            .chain((0..4 * k).map(|h| format!("a{h}"))),
    )
}

/// Builds the two-state element `i` of `Lk` with letters renamed by
/// `toggle` (the letter flipping the state) and `a(h)` (the index of `a_h`).
fn lk_element(
    k: usize,
    i: usize,
    letters: &Alphabet,
    toggle: Letter,
    a: impl Fn(usize) -> Letter,
) -> Automaton {
    let mut m = automaton(letters, &["q0", "q1"]);
    for l in 0..2 * k {
        for q in 0..2 {
            if l == toggle {
                m.add_transition(q, l, 1 - q, REJECTING);
            } else {
                m.add_transition(q, l, q, REJECTING);
            }
        }
    }
    for h in 0..4 * k {
        let c0 = if h <= 4 * k - 2 * i + 1 {
            ACCEPTING
        } else {
            REJECTING
        };
        let c1 = if h <= 4 * k - 2 * i {
            ACCEPTING
        } else {
            REJECTING
        };
        m.add_transition(0, a(h), 0, c0);
        m.add_transition(1, a(h), 1, c1);
    }
    m
}

pub fn lk(k: usize) -> Result<Cocoa> {
    check_k(k)?;
    let letters = lk_alphabet(k);
    let elements = (1..=k)
        .map(|i| lk_element(k, i, &letters, i - 1, |h| 2 * k + h))
        .collect();
    Cocoa::new(elements)
}

/// `Lk` with `Xi ↔ Yi` and `a_h ↔ a_(4k-1-h)` swapped.
pub fn lhat(k: usize) -> Result<Cocoa> {
    check_k(k)?;
    let letters = lk_alphabet(k);
    let elements = (1..=k)
        .map(|i| lk_element(k, i, &letters, k + i - 1, |h| 2 * k + (4 * k - 1 - h)))
        .collect();
    Cocoa::new(elements)
}

/// The `2^k`-state parity automaton for `Lk`: bit `i` of the state is the
/// parity of the number of `Xi` read so far.
pub fn pk(k: usize) -> Result<Automaton> {
    check_k(k)?;
    let letters = lk_alphabet(k);
    let n = 1usize << k;
    let name = |bits: usize| {
        let s: String = (0..k)
            .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        format!("b{s}")
    };
    let names: Vec<String> = (0..n).map(name).collect();
    let mut a = Automaton::new(letters, names).expect("distinct");
    for bits in 0..n {
        for i in 1..=k {
            a.add_transition(bits, i - 1, bits ^ (1 << (i - 1)), 0);
            a.add_transition(bits, k + i - 1, bits, 0);
        }
        for h in 0..4 * k {
            let mut color = k as Color;
            for i in 1..=k {
                if h == 4 * k - 2 * i {
                    color = i as Color;
                } else if h == 4 * k - 2 * i + 1 {
                    let odd = bits >> (i - 1) & 1 == 1;
                    color = if odd { (i - 1) as Color } else { i as Color };
                }
            }
            a.add_transition(bits, 2 * k + h, bits, color);
        }
    }
    Ok(a)
}

/// `X1 … Xk, Y1 … Yk, a1 … a(2k+1)`.
fn comp_alphabet(k: usize) -> Alphabet {
    alphabet(
        indexed("X", 1..=k)
            .into_iter()
            .chain(indexed("Y", 1..=k))
            .chain(indexed("a", 1..=2 * k + 1)),
    )
}

/// The chain `A1 … A(k+1)` whose complement needs an exponentially large
/// first element. `A1` has one state, every other element three.
pub fn comp_family(k: usize) -> Result<Cocoa> {
    check_k(k)?;
    let letters = comp_alphabet(k);
    let xl = |l: usize| l - 1;
    let yl = |l: usize| k + l - 1;
    let al = |h: usize| 2 * k + h - 1;
    let mut elements = Vec::with_capacity(k + 1);

    let mut a1 = automaton(&letters, &["q1_0"]);
    for l in 1..=k {
        a1.add_transition(0, xl(l), 0, REJECTING);
        a1.add_transition(0, yl(l), 0, ACCEPTING);
    }
    for h in 1..=2 * k + 1 {
        a1.add_transition(0, al(h), 0, ACCEPTING);
    }
    elements.push(a1);

    for i in 2..=k + 1 {
        let m = i - 1;
        let names = [0, 1, 2].map(|s| format!("q{i}_{s}"));
        let mut a = Automaton::new(letters.clone(), names).expect("distinct");
        let up_to = |h: usize, bound: usize| if h <= bound { ACCEPTING } else { REJECTING };
        for h in 1..=2 * k + 1 {
            a.add_transition(0, al(h), 0, up_to(h, 2 * k + 4 - 2 * i));
            a.add_transition(1, al(h), 1, up_to(h, 2 * k + 4 - 2 * i));
            a.add_transition(2, al(h), 2, up_to(h, 2 * k + 3 - 2 * i));
        }
        for l in 1..=k {
            if l == m {
                a.add_transition(0, yl(l), 1, REJECTING);
                a.add_transition(1, xl(l), 2, REJECTING);
            } else {
                a.add_transition(0, yl(l), 0, ACCEPTING);
                a.add_transition(1, xl(l), 1, REJECTING);
            }
            a.add_transition(0, xl(l), 0, REJECTING);
            a.add_transition(1, yl(l), 1, ACCEPTING);
            a.add_transition(2, xl(l), 2, REJECTING);
            a.add_transition(2, yl(l), 2, ACCEPTING);
        }
        elements.push(a);
    }
    Cocoa::new(elements)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    NotSeen,
    Ok,
    Dead,
}

fn l0hat_with(k: usize, recurring: &[usize]) -> Result<Automaton> {
    check_k(k)?;
    let letters = comp_alphabet(k);
    let n = 3usize.pow(k as u32);
    let decode = |mut v: usize| -> Vec<Status> {
        (0..k)
            .map(|_| {
                let s = [Status::NotSeen, Status::Ok, Status::Dead][v % 3];
                v /= 3;
                s
            })
            .collect()
    };
    let encode = |st: &[Status]| -> usize {
        st.iter().rev().fold(0, |acc, s| {
            acc * 3
                + match s {
                    Status::NotSeen => 0,
                    Status::Ok => 1,
                    Status::Dead => 2,
                }
        })
    };
    let names: Vec<String> = (0..n)
        .map(|v| {
            decode(v)
                .iter()
                .map(|s| match s {
                    Status::NotSeen => 'n',
                    Status::Ok => 'o',
                    Status::Dead => 'd',
                })
                .collect()
        })
        .collect();
    let mut a = Automaton::new(letters, names).expect("distinct");
    for v in 0..n {
        let st = decode(v);
        let all_ok = st.iter().all(|&s| s == Status::Ok);
        for i in 0..k {
            let mut on_x = st.clone();
            if on_x[i] == Status::Ok {
                on_x[i] = Status::Dead;
            }
            a.add_transition(v, i, encode(&on_x), 1);
            let mut on_y = st.clone();
            if on_y[i] == Status::NotSeen {
                on_y[i] = Status::Ok;
            }
            a.add_transition(v, k + i, encode(&on_y), 1);
        }
        for h in 1..=2 * k + 1 {
            let c = if all_ok && recurring.contains(&h) {
                0
            } else {
                1
            };
            a.add_transition(v, 2 * k + h - 1, v, c);
        }
    }
    Ok(a)
}

/// Parity automaton for the words of natural color 0 in the complement of
/// `comp_family(k)`: every `Yi` occurs, no `Xi` follows the first `Yi`, and
/// `a(2k+1)` recurs. States track one status per index (`n` not seen, `o`
/// seen, `d` violated).
pub fn l0hat(k: usize) -> Result<Automaton> {
    l0hat_with(k, &[2 * k + 1])
}

/// The same automaton, with `a(2k)` also counted as recurring letter.
pub fn l0hat_with_a2k(k: usize) -> Result<Automaton> {
    l0hat_with(k, &[2 * k, 2 * k + 1])
}

/// A nondeterministic co-Büchi automaton over `{a, b}` whose `b`-choice in
/// `p0` decides between a run that must stop reading `b` and one that must
/// stop reading `a`.
pub fn ncw_fixture() -> Automaton {
    let ab = alphabet(["a", "b"].map(String::from));
    let mut n = automaton(&ab, &["p0", "p1", "p2"]);
    edges(&mut n, 0, &["a"], 0, ACCEPTING);
    edges(&mut n, 0, &["b"], 1, ACCEPTING);
    edges(&mut n, 0, &["b"], 2, ACCEPTING);
    edges(&mut n, 1, &["a"], 1, ACCEPTING);
    edges(&mut n, 1, &["b"], 0, REJECTING);
    edges(&mut n, 2, &["a"], 0, REJECTING);
    edges(&mut n, 2, &["b"], 2, ACCEPTING);
    n
}

/// `cocoa_to_dpw(ck(k))`, the parity automaton of size `2^k`.
pub fn ck_dpw(k: usize) -> Result<Automaton> {
    cocoa_to_dpw(&ck(k)?)
}
