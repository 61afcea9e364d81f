//! Reduced words in the free group and its rational group ring.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{fmt_rat, Rat};
use crate::error::CoveringError;

/// Reduced word; letters are (generator, +1 or -1), generators from 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl Ord for FreeWord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.letters.len().cmp(&o.letters.len()).then_with(|| self.letters.cmp(&o.letters))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![(i, 1)] }
    }

    pub fn inverse_generator(i: usize) -> Self {
        FreeWord { letters: vec![(i, -1)] }
    }

    /// Freely reduce a sequence of letters.
    pub fn from_letters(letters: &[(usize, i8)]) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(letters.len());
        for &(g, e) in letters {
            assert!(e == 1 || e == -1, "exponent must be +1 or -1");
            if out.last() == Some(&(g, -e)) {
                out.pop();
            } else {
                out.push((g, e));
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.0).max()
    }

    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        let mut v = self.letters.clone();
        for &(g, e) in &o.letters {
            if v.last() == Some(&(g, -e)) {
                v.pop();
            } else {
                v.push((g, e));
            }
        }
        FreeWord { letters: v }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// First letter and the rest.
    pub fn split_first(&self) -> Option<(FreeWord, FreeWord)> {
        let (&first, rest) = self.letters.split_first()?;
        Some((FreeWord { letters: vec![first] }, FreeWord { letters: rest.to_vec() }))
    }

    /// Parse "z1 z2^-1", or "1" for the identity.
    pub fn parse(s: &str) -> Result<FreeWord, CoveringError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || CoveringError::Parse(tok.to_string());
            let body = tok.strip_prefix('z').ok_or_else(bad)?;
            let (g, e) = match body.split_once('^') {
                Some((g, "-1")) => (g, -1),
                Some((g, "1")) => (g, 1),
                None => (body, 1),
                _ => return Err(bad()),
            };
            let g: usize = g.parse().map_err(|_| bad())?;
            if g == 0 {
                return Err(bad());
            }
            letters.push((g - 1, e));
        }
        Ok(FreeWord::from_letters(&letters))
    }

    /// All reduced words of length <= len on `mu` generators, shortest first.
    pub fn ball(mu: usize, len: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        let mut layer = vec![FreeWord::identity()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..mu {
                    for e in [1i8, -1] {
                        if w.letters.last() != Some(&(g, -e)) {
                            let mut l = w.letters.clone();
                            l.push((g, e));
                            next.push(FreeWord { letters: l });
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| if e == 1 { format!("z{}", g + 1) } else { format!("z{}^-1", g + 1) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Finite Q-linear combination of group elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElem {
    terms: BTreeMap<FreeWord, Rat>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(FreeWord::identity(), c)
    }

    pub fn word(w: FreeWord) -> Self {
        Self::term(w, Rat::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::word(FreeWord::generator(i))
    }

    pub fn term(w: FreeWord, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        GroupRingElem { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (FreeWord, Rat)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in it {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: FreeWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<FreeWord, Rat> {
        &self.terms
    }

    pub fn coeff(&self, w: &FreeWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GroupRingElem { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// Augmentation: every group element to 1.
    pub fn augmentation(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    /// The involution g -> g^-1.
    pub fn bar(&self) -> Self {
        GroupRingElem { terms: self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())).collect() }
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Some(constant, coefficient of z_i) when the support lies in {1, z_i}.
    pub fn linear_part(&self, mu: usize) -> Option<(Rat, Vec<Rat>)> {
        let mut c0 = Rat::zero();
        let mut ci = vec![Rat::zero(); mu];
        for (w, c) in &self.terms {
            match w.letters() {
                [] => c0 = c.clone(),
                [(g, 1)] if *g < mu => ci[*g] = c.clone(),
                _ => return None,
            }
        }
        Some((c0, ci))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let neg = *c < Rat::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "{}", fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{} {w}", fmt_rat(&a))?;
            }
        }
        Ok(())
    }
}
