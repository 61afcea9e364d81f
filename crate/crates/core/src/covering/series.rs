//! Truncated noncommutative power series in x_1..x_mu, the Magnus expansion
//! z_i -> 1 + x_i, and rational series given by linear representations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{FreeWord, GroupRingElem};
use crate::arith::{fmt_rat, parse_rat, QMatrix, Rat};

/// Word in the x letters, generators from 0; ordered by length first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct XWord(pub Vec<usize>);

impl Ord for XWord {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for XWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl XWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &XWord) -> XWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        XWord(v)
    }

    /// All words of length <= d over `mu` letters, shortest first.
    pub fn all(mu: usize, d: usize) -> Vec<XWord> {
        let mut out = vec![XWord::default()];
        let mut layer = vec![XWord::default()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..mu {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(XWord(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn parse(s: &str) -> Option<XWord> {
        let s = s.trim();
        if s == "1" {
            return Some(XWord::default());
        }
        s.split_whitespace()
            .map(|t| t.strip_prefix('x')?.parse::<usize>().ok().filter(|&g| g > 0).map(|g| g - 1))
            .collect::<Option<Vec<_>>>()
            .map(XWord)
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("x{}", g + 1)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Noncommutative polynomial keeping only terms of degree <= `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    degree: usize,
    terms: BTreeMap<XWord, Rat>,
}

impl TruncSeries {
    pub fn zero(degree: usize) -> Self {
        TruncSeries { degree, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat, degree: usize) -> Self {
        Self::term(XWord::default(), c, degree)
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(Rat::one(), degree)
    }

    pub fn x(i: usize, degree: usize) -> Self {
        Self::term(XWord(vec![i]), Rat::one(), degree)
    }

    pub fn term(w: XWord, c: Rat, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: XWord, c: Rat) {
        if c.is_zero() || w.len() > self.degree {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<XWord, Rat> {
        &self.terms
    }

    pub fn coeff(&self, w: &XWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.degree);
        TruncSeries { degree: d, terms: self.terms.iter().filter(|(w, _)| w.len() <= d).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.degree);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(o.degree);
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.degree.min(o.degree);
        let mut out = Self::zero(d);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if a.len() + b.len() <= d {
                    out.add_term(a.concat(b), x * y);
                }
            }
        }
        out
    }

    /// Terms as (word, "p/q") in graded order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(w, c)| (w.to_string(), fmt_rat(c))).collect()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if w.is_empty() { fmt_rat(c) } else { format!("{} {}", fmt_rat(c), w) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    degree: usize,
    terms: Vec<(String, String)>,
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr { degree: self.degree, terms: self.to_pairs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        let mut out = TruncSeries::zero(r.degree);
        for (w, c) in r.terms {
            let w = XWord::parse(&w).ok_or_else(|| serde::de::Error::custom(format!("bad word {w:?}")))?;
            let c = parse_rat(&c).map_err(serde::de::Error::custom)?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

/// Magnus image of a single group element.
pub fn magnus_word(w: &FreeWord, degree: usize) -> TruncSeries {
    let mut out = TruncSeries::one(degree);
    for &(g, e) in w.letters() {
        let f = if e == 1 {
            TruncSeries::one(degree).add(&TruncSeries::x(g, degree))
        } else {
            let mut f = TruncSeries::zero(degree);
            for k in 0..=degree {
                let c = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
                f.add_term(XWord(vec![g; k]), c);
            }
            f
        };
        out = out.mul(&f);
    }
    out
}

/// z_i -> 1 + x_i, z_i^-1 -> 1 - x_i + x_i^2 - ..., truncated at `degree`.
pub fn magnus_expand(g: &GroupRingElem, degree: usize) -> TruncSeries {
    let mut out = TruncSeries::zero(degree);
    for (w, c) in g.terms() {
        out = out.add(&magnus_word(w, degree).scale(c));
    }
    out
}

pub type SeriesMatrix = Vec<Vec<TruncSeries>>;

pub fn series_identity(n: usize, degree: usize) -> SeriesMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { TruncSeries::one(degree) } else { TruncSeries::zero(degree) }).collect()).collect()
}

pub fn series_mat_mul(a: &SeriesMatrix, b: &SeriesMatrix) -> SeriesMatrix {
    let degree = a.first().and_then(|r| r.first()).map_or(0, |s| s.degree());
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = TruncSeries::zero(degree);
                    for t in 0..k {
                        if !a[i][t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.add(&a[i][t].mul(&b[t][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Series whose coefficient at x_{i1}..x_{ik} is row T_{i1} ... T_{ik} col.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NCRationalSeries {
    pub row: QMatrix,
    pub transitions: Vec<QMatrix>,
    pub col: QMatrix,
}

impl NCRationalSeries {
    pub fn dim(&self) -> usize {
        self.col.rows()
    }

    pub fn mu(&self) -> usize {
        self.transitions.len()
    }

    pub fn coefficient(&self, w: &XWord) -> Rat {
        let mut v = self.row.row(0);
        for &g in &w.0 {
            v = self.transitions[g].vec_mul(&v);
        }
        v.iter().zip(self.col.col(0)).fold(Rat::zero(), |a, (x, y)| a + x * y)
    }

    pub fn truncate(&self, degree: usize) -> TruncSeries {
        let col = self.col.col(0);
        let dot = |v: &[Rat]| v.iter().zip(&col).fold(Rat::zero(), |a, (x, y)| a + x * y);
        let mut out = TruncSeries::zero(degree);
        let mut layer = vec![(XWord::default(), self.row.row(0))];
        for k in 0..=degree {
            let mut next = Vec::new();
            for (w, v) in &layer {
                out.add_term(w.clone(), dot(v));
                if k < degree {
                    for (g, t) in self.transitions.iter().enumerate() {
                        let u = t.vec_mul(v);
                        if u.iter().any(|x| !x.is_zero()) {
                            let mut ww = w.0.clone();
                            ww.push(g);
                            next.push((XWord(ww), u));
                        }
                    }
                }
            }
            layer = next;
        }
        out
    }
}
