//! Real roots by Sturm sequences with rational endpoints.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::QPoly;
use super::rat::{fmt_rat, rat, sign, Rat};
use crate::error::ArithError;

/// An isolating interval (lo, hi]; lo == hi marks an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "super::rat::serde_rat")]
    pub lo: Rat,
    #[serde(with = "super::rat::serde_rat")]
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
    pub fn label(&self) -> String {
        if self.is_exact() {
            format!("[{}]", fmt_rat(&self.lo))
        } else {
            format!("({}, {})", fmt_rat(&self.lo), fmt_rat(&self.hi))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRootData {
    pub count: usize,
    pub intervals: Vec<RootInterval>,
}

pub struct Sturm {
    seq: Vec<QPoly>,
}

impl Sturm {
    pub fn new(p: &QPoly) -> Sturm {
        let p0 = p.squarefree_part();
        let mut seq = vec![p0.clone(), p0.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        Sturm { seq }
    }

    pub fn poly(&self) -> &QPoly {
        &self.seq[0]
    }

    fn variations(&self, x: &Rat) -> usize {
        let signs: Vec<i32> = self.seq.iter().map(|q| sign(&q.eval(x))).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in (a, b].
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Cauchy bound: all roots have absolute value < bound.
pub fn root_bound(p: &QPoly) -> Rat {
    let l = p.lead().abs();
    let m = p.coeffs()[..p.deg()].iter().map(|c| c.abs() / &l).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}

pub fn real_root_data(p: &QPoly, interval: Option<(Rat, Rat)>) -> Result<RealRootData, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let st = Sturm::new(p);
    let q = st.poly().clone();
    if q.deg() == 0 {
        return Ok(RealRootData { count: 0, intervals: vec![] });
    }
    let bnd = root_bound(&q);
    let (a, b) = interval.unwrap_or((-bnd.clone(), bnd));
    // (a, b] counting; include a itself if it is a root.
    let mut intervals = Vec::new();
    if q.eval(&a).is_zero() {
        intervals.push(RootInterval { lo: a.clone(), hi: a.clone() });
    }
    let mut stack = vec![(a, b)];
    while let Some((lo, hi)) = stack.pop() {
        let c = st.count(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            if q.eval(&hi).is_zero() {
                intervals.push(RootInterval { lo: hi.clone(), hi });
            } else {
                intervals.push(RootInterval { lo, hi });
            }
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    intervals.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(RealRootData { count: intervals.len(), intervals })
}

fn interval_eval(q: &QPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    for c in q.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

/// Sign of q at the unique root of squarefree `p` inside `iv`. The interval is
/// bisected until interval evaluation of q excludes zero. q must not vanish
/// at the root (true when p is irreducible and p does not divide q).
pub fn sign_at_root(q: &QPoly, p: &QPoly, iv: &RootInterval) -> i32 {
    if iv.is_exact() {
        return sign(&q.eval(&iv.lo));
    }
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let mut slo = sign(&p.eval(&lo));
    for _ in 0..10_000 {
        let (a, b) = interval_eval(q, &lo, &hi);
        if a.is_positive() {
            return 1;
        }
        if b.is_negative() {
            return -1;
        }
        let mid = (&lo + &hi) / rat(2);
        let sm = sign(&p.eval(&mid));
        if sm == 0 {
            return sign(&q.eval(&mid));
        }
        if slo == 0 {
            slo = sign(&p.eval(&lo));
        }
        if sm != slo {
            hi = mid;
        } else {
            lo = mid;
            slo = sm;
        }
    }
    panic!("sign refinement did not terminate; q vanishes at the root")
}
