//! Ultimately periodic words `u·v^ω` and their enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Alphabet, Letter};
use crate::error::{Error, Result};

/// The lasso word `stem · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    stem: Vec<Letter>,
    period: Vec<Letter>,
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, period: Vec<Letter>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { stem, period })
    }

    pub fn from_names(alphabet: &Alphabet, stem: &[&str], period: &[&str]) -> Result<Self> {
        Self::new(alphabet.letters_of(stem)?, alphabet.letters_of(period)?)
    }

    /// Parses the literal `"u1 u2 ; v1 v2"`; an empty stem is written `"; v1"`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let (stem, period) = text
            .split_once(';')
            .ok_or_else(|| Error::BadLasso(format!("missing `;` in `{text}`")))?;
        let stem: Vec<&str> = stem.split_whitespace().collect();
        let period: Vec<&str> = period.split_whitespace().collect();
        Self::from_names(alphabet, &stem, &period)
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    /// Total number of positions in the lasso (stem plus one period).
    pub fn positions(&self) -> usize {
        self.stem.len() + self.period.len()
    }

    /// Letter at lasso position `pos` (`pos < positions()`).
    pub fn letter_at(&self, pos: usize) -> Letter {
        if pos < self.stem.len() {
            self.stem[pos]
        } else {
            self.period[pos - self.stem.len()]
        }
    }

    /// Successor position on the lasso: the last period position loops back.
    pub fn next_position(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.stem.len()
        }
    }

    /// `(u·v ; v)`, the same infinite word.
    pub fn unrolled(&self) -> LassoWord {
        let mut stem = self.stem.clone();
        stem.extend_from_slice(&self.period);
        LassoWord {
            stem,
            period: self.period.clone(),
        }
    }

    /// Inserts `word` before period position `pos`, once per period iteration.
    pub fn inject(&self, pos: usize, word: &[Letter]) -> Result<LassoWord> {
        if pos >= self.period.len() {
            return Err(Error::BadPosition(pos));
        }
        let mut period = Vec::with_capacity(self.period.len() + word.len());
        period.extend_from_slice(&self.period[..pos]);
        period.extend_from_slice(word);
        period.extend_from_slice(&self.period[pos..]);
        Ok(LassoWord {
            stem: self.stem.clone(),
            period,
        })
    }

    pub fn uses_only(&self, alphabet_len: usize) -> bool {
        self.stem
            .iter()
            .chain(&self.period)
            .all(|&l| l < alphabet_len)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let names = |ls: &[Letter]| {
            ls.iter()
                .map(|&l| alphabet.name(l))
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.stem.is_empty() {
            format!("; {}", names(&self.period))
        } else {
            format!("{} ; {}", names(&self.stem), names(&self.period))
        }
    }
}

/// All words over `letters` of length `0..=max_len`, shortest first, then
/// lexicographically by the order of `letters`.
pub fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every lasso over the letter subset with `|stem| <= max_stem` and
/// `1 <= |period| <= max_period`, stems outer and periods inner, each in
/// shortlex order.
pub fn sub_alphabet_lassos(
    alphabet: &Alphabet,
    letters: &[Letter],
    max_stem: usize,
    max_period: usize,
) -> Result<impl Iterator<Item = LassoWord>> {
    if letters.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet.len()) {
        return Err(Error::UnknownLetter(format!("#{bad}")));
    }
    let stems = words_up_to(letters, max_stem);
    let periods: Vec<Vec<Letter>> = words_up_to(letters, max_period)
        .into_iter()
        .filter(|p| !p.is_empty())
        .collect();
    Ok(stems.into_iter().flat_map(move |s| {
        periods.clone().into_iter().map(move |p| LassoWord {
            stem: s.clone(),
            period: p,
        })
    }))
}

/// Lassos over the full alphabet.
pub fn all_lassos(
    alphabet: &Alphabet,
    max_stem: usize,
    max_period: usize,
) -> impl Iterator<Item = LassoWord> {
    let letters: Vec<Letter> = (0..alphabet.len()).collect();
    sub_alphabet_lassos(alphabet, &letters, max_stem, max_period).expect("alphabets are non-empty")
}

/// Seeded pseudo-random lassos with `|stem| <= max_stem`, `1 <= |period| <= max_period`.
pub fn random_lassos(
    alphabet: &Alphabet,
    count: usize,
    max_stem: usize,
    max_period: usize,
    seed: u64,
) -> Vec<LassoWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alphabet.len();
    (0..count)
        .map(|_| {
            let sl = rng.gen_range(0..=max_stem);
            let pl = rng.gen_range(1..=max_period.max(1));
            LassoWord {
                stem: (0..sl).map(|_| rng.gen_range(0..n)).collect(),
                period: (0..pl).map(|_| rng.gen_range(0..n)).collect(),
            }
        })
        .collect()
}
