//! Factorization over Q: squarefree split, factorization modulo a prime of
//! good reduction, Hensel lifting and Zassenhaus recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::QPoly;
use super::rat::{common_denominator, Rat};
use crate::error::ArithError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Leading coefficient of the input.
    pub content: Rat,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        let mut acc = QPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn factor_rational_poly(p: &QPoly) -> Result<Factorization, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    for (q, m) in p.squarefree_decomposition() {
        for g in factor_squarefree_int(&to_primitive(&q)) {
            factors.push((to_monic_qpoly(&g), m));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())).then(a.1.cmp(&b.1))
    });
    Ok(Factorization { content: p.lead(), factors })
}

/// Monic irreducible factors of a polynomial, without multiplicities.
pub fn irreducible_factors(p: &QPoly) -> Vec<QPoly> {
    factor_rational_poly(p).map(|f| f.factors.into_iter().map(|(g, _)| g).collect()).unwrap_or_default()
}

pub fn is_irreducible(p: &QPoly) -> bool {
    match factor_rational_poly(p) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Primitive integer multiple with positive leading coefficient.
fn to_primitive(q: &QPoly) -> ZPoly {
    let d = common_denominator(q.coeffs());
    let v: ZPoly = q.coeffs().iter().map(|c| (c * Rat::from_integer(d.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    let mut v: ZPoly = v.into_iter().map(|c| c / &g).collect();
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    ztrim(v)
}

fn to_monic_qpoly(v: &ZPoly) -> QPoly {
    QPoly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect()).monic()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(v)
}

/// Exact quotient a/b in Z[x], if it exists.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    let lb = &b[db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        q[k] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn content_of(v: &ZPoly) -> BigInt {
    v.iter().fold(BigInt::zero(), |a, b| a.gcd(b))
}

// ---- arithmetic in F_p[x], coefficients reduced, lowest degree first ----

#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn trim(&self, mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let p = self.0;
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }
    fn from_z(&self, v: &ZPoly) -> Vec<u64> {
        let p = BigInt::from(self.0);
        self.trim(v.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect())
    }
    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let p = self.0;
        self.trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let p = self.0;
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % p;
            }
        }
        self.trim(v)
    }
    fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let p = self.0;
        let db = b.len() - 1;
        if a.len() < b.len() {
            return (vec![], a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db] * inv % p;
            if c == 0 {
                continue;
            }
            for (j, &bc) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * bc % p) % p;
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }
    fn rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.divrem(a, b).1
    }
    fn monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => vec![],
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| c * inv % self.0).collect()
            }
        }
    }
    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }
    /// (g, s, t) with s a + t b = g monic.
    fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], vec![]);
        let (mut t0, mut t1) = (vec![], vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = self.inv(*r0.last().unwrap());
        let sc = |v: &[u64]| self.trim(v.iter().map(|&c| c * inv % self.0).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }
    fn derivative(&self, a: &[u64]) -> Vec<u64> {
        self.trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % self.0) * c % self.0).collect())
    }
    fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> Vec<u64> {
        let mut r = vec![1u64];
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            r = self.rem(&self.mul(&r, &r), m);
            if e.bit(i) {
                r = self.rem(&self.mul(&r, &b), m);
            }
        }
        r
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn ddf(&self, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.0);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f.clone(), deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor-Zassenhaus split of a product of degree-d irreducibles.
    fn edf(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.0).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Vec<u64> = self.trim((0..n).map(|_| rng.gen_range(0..self.0)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, &e, f);
            let g = self.gcd(&self.sub(&b, &[1]), f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.monic(&self.divrem(f, &g).0);
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&h, d, rng));
                return out;
            }
        }
    }

    fn factor_monic(&self, f: &[u64]) -> Vec<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, &mut rng));
        }
        out
    }
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..5000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Factor a primitive squarefree integer polynomial into primitive irreducibles.
fn factor_squarefree_int(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f[n].clone();
    // Try a handful of good primes and keep the one with the fewest local factors.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp(p);
        let fm = fp.monic(&fp.from_z(f));
        if fm.len() != n + 1 || fp.gcd(&fm, &fp.derivative(&fm)).len() != 1 {
            continue;
        }
        let fac = fp.factor_monic(&fm);
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((p, fac));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, local) = best.expect("some prime of good reduction exists");
    if local.len() == 1 {
        return vec![f.clone()];
    }
    // Coefficient bound for factors, times lc, times 2 for symmetric residues.
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = BigInt::from(2u32).pow(n as u32 + 1) * BigInt::from(n as u64 + 1) * maxc * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut q = pb.clone();
    while q <= bound {
        q *= &pb;
        k += 1;
    }
    let fp = Fp(p);
    let lc_inv = BigInt::from(fp.inv(lc.mod_floor(&pb).to_u64().unwrap()));
    let big_f = monic_mod(f, &lc, &lc_inv, &pb, k);
    let lifted = multifactor_lift(&big_f, &local, p, k);
    recombine(f, lifted, &q)
}

/// f / lc reduced mod p^k (lc inverted by Newton iteration).
fn monic_mod(f: &ZPoly, lc: &BigInt, lc_inv_p: &BigInt, p: &BigInt, k: u32) -> ZPoly {
    let q = p.pow(k);
    // Newton: x <- x(2 - lc x) doubles precision.
    let mut inv = lc_inv_p.clone();
    let mut prec = p.clone();
    while prec < q {
        prec = (&prec * &prec).min(q.clone());
        inv = (&inv * (BigInt::from(2) - lc * &inv)).mod_floor(&prec);
    }
    f.iter().map(|c| (c * &inv).mod_floor(&q)).collect()
}

fn multifactor_lift(big_f: &ZPoly, local: &[Vec<u64>], p: u64, k: u32) -> Vec<ZPoly> {
    if local.len() == 1 {
        return vec![big_f.clone()];
    }
    let fp = Fp(p);
    let mid = local.len() / 2;
    let a0 = local[..mid].iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let b0 = local[mid..].iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let (a, b) = hensel_pair(big_f, &a0, &b0, p, k);
    let mut out = multifactor_lift(&a, &local[..mid], p, k);
    out.extend(multifactor_lift(&b, &local[mid..], p, k));
    out
}

/// Lift F = A B mod p (A, B monic, coprime) to mod p^k, one power at a time.
fn hensel_pair(big_f: &ZPoly, a0: &[u64], b0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = Fp(p);
    let (_, _, t) = fp.ext_gcd(a0, b0);
    let pb = BigInt::from(p);
    let to_z = |v: &[u64]| -> ZPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut a = to_z(a0);
    let mut b = to_z(b0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let ab = zmul(&a, &b);
        let n = big_f.len().max(ab.len());
        let err: ZPoly = (0..n)
            .map(|i| {
                let x = big_f.get(i).cloned().unwrap_or_default() - ab.get(i).cloned().unwrap_or_default();
                x.mod_floor(&next) / &pj
            })
            .collect();
        let e = fp.from_z(&err);
        if !e.is_empty() {
            let sigma = fp.rem(&fp.mul(&t, &e), a0);
            let tau = fp.divrem(&fp.sub(&e, &fp.mul(&sigma, b0)), a0).0;
            for (i, c) in sigma.iter().enumerate() {
                a[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in tau.iter().enumerate() {
                b[i] += &pj * BigInt::from(*c);
            }
        }
        pj = next;
    }
    (a, b)
}

fn symmetric(v: &ZPoly, q: &BigInt) -> ZPoly {
    let half: BigInt = q / 2;
    ztrim(
        v.iter()
            .map(|c| {
                let r = c.mod_floor(q);
                if r > half {
                    r - q
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, q: &BigInt) -> Vec<ZPoly> {
    let mut f = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for sub in subsets(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &sub {
                g = zmul(&g, &lifted[i]).into_iter().map(|c| c.mod_floor(q)).collect();
            }
            let g = symmetric(&g, q);
            let c = content_of(&g);
            let mut g: ZPoly = g.into_iter().map(|x| x / &c).collect();
            if g.last().is_some_and(|x| x.is_negative()) {
                g = g.into_iter().map(|x| -x).collect();
            }
            if let Some(rest) = zdiv_exact(&f, &g) {
                hit = Some((sub, g, rest));
                break;
            }
        }
        match hit {
            Some((sub, g, rest)) => {
                found.push(g);
                f = rest;
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|(_, x)| x).collect();
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}
