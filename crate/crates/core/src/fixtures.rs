//! Sample data: the two-component example and random generators used by
//! tests, benches and the acceptance suite.

use num_traits::Zero;
use rand::Rng;

use crate::arith::{rat, QMatrix, Rat};
use crate::seifert::{Ring, SeifertForm, SeifertModule};

/// The dim-6, two-component, zeta = -1 example with blocks [4, 2].
pub fn example_form() -> SeifertForm {
    let s = QMatrix::from_i64(&[
        &[1, 0, 1, 0, 0, 0],
        &[0, 1, -1, -1, -1, 0],
        &[0, 1, 0, 0, 0, -1],
        &[0, 0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 1, -1],
        &[0, 0, 1, 0, 1, 0],
    ]);
    let phi = QMatrix::from_i64(&[
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, -1, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0],
        &[-1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, -1],
        &[0, 0, 0, 0, 1, 0],
    ]);
    SeifertForm::new(SeifertModule::with_blocks(s, &[4, 2]), -1, phi)
}

/// The reduced 4-dim simple piece of the example and its form.
pub fn example_reduced() -> SeifertForm {
    let s = QMatrix::from_i64(&[&[1, -1, -1, 0], &[1, 0, 0, -1], &[1, 0, 1, -1], &[0, 1, 1, 0]]);
    let phi = QMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    SeifertForm::new(SeifertModule::with_blocks(s, &[2, 2]), -1, phi)
}

/// One-dimensional module with the given s.
pub fn line(mu: usize, component: usize, s: Rat) -> SeifertModule {
    let mut sizes = vec![0; mu];
    sizes[component] = 1;
    SeifertModule::with_blocks(QMatrix::from_rows(vec![vec![s]]), &sizes)
}

fn small_int<R: Rng>(rng: &mut R, r: i64) -> Rat {
    rat(rng.gen_range(-r..=r))
}

/// Random block sizes summing to `dim`, each even when `even` is set.
pub fn random_blocks<R: Rng>(rng: &mut R, mu: usize, dim: usize, even: bool) -> Vec<usize> {
    let unit = if even { 2 } else { 1 };
    let mut sizes = vec![0; mu];
    for _ in 0..dim / unit {
        let i = rng.gen_range(0..mu);
        sizes[i] += unit;
    }
    sizes
}

/// Random module with small rational entries in s and block projections,
/// optionally moved by a random change of basis.
pub fn random_module<R: Rng>(rng: &mut R, mu: usize, dim: usize, conjugate: bool) -> SeifertModule {
    let sizes = random_blocks(rng, mu, dim, false);
    let mut s = QMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            if rng.gen_bool(0.6) {
                s[(i, j)] = Rat::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into());
            }
        }
    }
    let v = SeifertModule::with_blocks(s, &sizes);
    if conjugate {
        v.conjugate(&random_invertible(rng, dim, false))
    } else {
        v
    }
}

/// Random invertible matrix; unimodular integral when `unimodular` is set.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, unimodular: bool) -> QMatrix {
    if unimodular {
        let mut p = QMatrix::identity(n);
        for _ in 0..3 * n {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i == j {
                continue;
            }
            let c = small_int(rng, 2);
            for k in 0..n {
                let t = &p[(j, k)] * &c;
                p[(i, k)] += t;
            }
        }
        return p;
    }
    loop {
        let mut p = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = small_int(rng, 2);
            }
        }
        if !p.det().is_zero() {
            return p;
        }
    }
}

/// Random nonsingular form. theta is a random matrix whose off-diagonal
/// blocks satisfy theta_ji = -zeta theta_ij^T, phi = theta + zeta theta^T and
/// s = phi^-1 theta. With zeta = -1 the blocks must have even size.
pub fn random_form<R: Rng>(rng: &mut R, mu: usize, dim: usize, zeta: i8) -> SeifertForm {
    assert!(zeta == 1 || dim % 2 == 0, "skew forms need even dimension");
    let z = rat(zeta as i64);
    loop {
        let sizes = random_blocks(rng, mu, dim, zeta == -1);
        let starts: Vec<usize> = sizes.iter().scan(0, |a, &k| { let s = *a; *a += k; Some(s) }).collect();
        let block_of = |i: usize| (0..mu).rfind(|&b| starts[b] <= i && sizes[b] > 0 && i < starts[b] + sizes[b]).unwrap();
        let mut theta = QMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let (bi, bj) = (block_of(i), block_of(j));
                if bi == bj || bi < bj {
                    theta[(i, j)] = small_int(rng, 2);
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                if block_of(i) > block_of(j) {
                    theta[(i, j)] = -(&z * &theta[(j, i)]);
                }
            }
        }
        let phi = &theta + &theta.transpose().scale(&z);
        let Some(pi) = phi.inverse() else { continue };
        let s = &pi * &theta;
        let f = SeifertForm::new(SeifertModule::with_blocks(s, &sizes), zeta, phi);
        debug_assert!(f.validate().is_ok());
        return f;
    }
}

/// Random form with integral s and unimodular phi, tagged as a Z-module.
/// Blocks have even size and phi restricted to each is an even unimodular
/// form moved by a random unimodular matrix.
pub fn random_integral_form<R: Rng>(rng: &mut R, mu: usize, dim: usize, zeta: i8) -> SeifertForm {
    assert!(dim % 2 == 0);
    let z = rat(zeta as i64);
    let sizes = random_blocks(rng, mu, dim, true);
    let mut phi = QMatrix::zeros(dim, dim);
    let mut theta = QMatrix::zeros(dim, dim);
    let mut start = 0;
    let mut ranges = Vec::new();
    for &k in &sizes {
        let mut h = QMatrix::zeros(k, k);
        for t in 0..k / 2 {
            h[(2 * t, 2 * t + 1)] = rat(1);
            h[(2 * t + 1, 2 * t)] = z.clone();
        }
        let p = random_invertible(rng, k, true);
        let hb = &(&p.transpose() * &h) * &p;
        phi.set_block(start, start, &hb);
        let mut tb = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                if i < j {
                    tb[(i, j)] = hb[(i, j)].clone();
                } else if i == j {
                    tb[(i, i)] = &hb[(i, i)] / rat(2);
                }
            }
        }
        // Add a random matrix killed by x -> x + zeta x^T.
        for i in 0..k {
            for j in i..k {
                let c = small_int(rng, 1);
                if i == j {
                    if zeta == -1 {
                        tb[(i, i)] += c;
                    }
                    continue;
                }
                tb[(i, j)] += &c;
                tb[(j, i)] -= &z * &c;
            }
        }
        theta.set_block(start, start, &tb);
        ranges.push((start, k));
        start += k;
    }
    for a in 0..mu {
        for b in a + 1..mu {
            let (sa, ka) = ranges[a];
            let (sb, kb) = ranges[b];
            for i in 0..ka {
                for j in 0..kb {
                    let c = small_int(rng, 1);
                    theta[(sa + i, sb + j)] = c.clone();
                    theta[(sb + j, sa + i)] = -(&z * &c);
                }
            }
        }
    }
    let s = &phi.inverse().expect("unimodular") * &theta;
    let mut module = SeifertModule::with_blocks(s, &sizes);
    module.ring = Ring::Z;
    let f = SeifertForm::new(module, zeta, phi);
    debug_assert!(f.validate().is_ok(), "{:?}", f.validate());
    f
}

/// Random primitive module: triangular s with 0/1 diagonal along a random
/// ordering of the standard basis, moved by a block-diagonal change of basis.
pub fn random_primitive_module<R: Rng>(rng: &mut R, mu: usize, dim: usize) -> SeifertModule {
    let sizes = random_blocks(rng, mu, dim, false);
    let mut order: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut s = QMatrix::zeros(dim, dim);
    for a in 0..dim {
        s[(order[a], order[a])] = rat(rng.gen_range(0..=1));
        for b in a + 1..dim {
            if rng.gen_bool(0.5) {
                s[(order[a], order[b])] = small_int(rng, 2);
            }
        }
    }
    let v = SeifertModule::with_blocks(s, &sizes);
    let blocks: Vec<QMatrix> = sizes.iter().filter(|&&k| k > 0).map(|&k| random_invertible(rng, k, false)).collect();
    v.conjugate(&QMatrix::block_diag(&blocks.iter().collect::<Vec<_>>()))
}

/// mu = 2 extension with s = [[0, 1], [0, 1]] and blocks [1, 1].
pub fn extension_module() -> SeifertModule {
    SeifertModule::with_blocks(QMatrix::from_i64(&[&[0, 1], &[0, 1]]), &[1, 1])
}

/// Anisotropic symmetric form on an 8-dim simple module whose endomorphism
/// ring is the Hamilton quaternions: s = [[1/2 + L_i, 1], [-1, 1/2 + L_j]],
/// phi = identity.
pub fn quaternionic_form() -> SeifertForm {
    let li = QMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let lj = QMatrix::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    let half = QMatrix::identity(4).scale(&Rat::new(1.into(), 2.into()));
    let mut s = QMatrix::zeros(8, 8);
    s.set_block(0, 0, &(&half + &li));
    s.set_block(0, 4, &QMatrix::identity(4));
    s.set_block(4, 0, &-&QMatrix::identity(4));
    s.set_block(4, 4, &(&half + &lj));
    SeifertForm::new(SeifertModule::with_blocks(s, &[4, 4]), 1, QMatrix::identity(8))
}
