use flk_core::arith::{rat, QMatrix, Subspace};
use flk_core::fixtures::{example_form, example_reduced, line, random_form, random_module};
use flk_core::seifert::{find_isomorphism, hom_space, induced_form_on_subquotient, is_morphism, SeifertForm, SeifertModule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit(n: usize, i: usize) -> Vec<flk_core::Rat> {
    (0..n).map(|j| rat((i == j) as i64)).collect()
}

#[test]
fn example_is_valid() {
    let f = example_form();
    assert_eq!(f.validate(), Ok(()));
    assert_eq!(f.module.s.rank(), 5);
    assert_eq!(example_reduced().validate(), Ok(()));
}

#[test]
fn module_violations() {
    let mut v = example_form().module;
    v.proj[0][(0, 0)] = rat(2);
    assert_eq!(v.validate().unwrap_err().name(), "idempotence");
    let mut v = example_form().module;
    v.proj = v.proj.iter().map(|e| e.scale(&rat(2))).collect();
    let name = v.validate().unwrap_err().name();
    assert!(name == "idempotence" || name == "partition of unity");
    let mut v = line(1, 0, rat(0));
    v.proj[0] = QMatrix::from_i64(&[&[0]]);
    assert_eq!(v.validate().unwrap_err().name(), "partition of unity");
}

#[test]
fn form_violations() {
    let f = example_form();
    let g = SeifertForm { phi: &f.phi + &QMatrix::identity(6), ..f.clone() };
    assert_eq!(g.validate().unwrap_err().name(), "symmetry");
    let h = SeifertForm::new(line(1, 0, rat(0)), 1, QMatrix::zeros(1, 1));
    assert_eq!(h.validate().unwrap_err().name(), "nonsingular");
}

#[test]
fn dual_is_involutive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let v = random_module(&mut rng, 2, 3, true);
        assert_eq!(v.dual().dual(), v);
    }
    assert_eq!(line(1, 0, rat(0)).dual().s, QMatrix::from_i64(&[&[1]]));
}

#[test]
fn dual_of_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = random_module(&mut rng, 2, 2, false);
    let b = random_module(&mut rng, 2, 3, true);
    assert_eq!(a.direct_sum(&b).unwrap().dual(), a.dual().direct_sum(&b.dual()).unwrap());
    assert_eq!(a.direct_sum(&b).unwrap().dim(), 5);
}

#[test]
fn form_is_morphism_to_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for zeta in [1, -1] {
        for _ in 0..10 {
            let f = random_form(&mut rng, 2, 4, zeta);
            assert_eq!(f.validate(), Ok(()));
            assert!(is_morphism(&f.phi, &f.module, &f.module.dual()));
            let sum = f.direct_sum(&f.neg()).unwrap();
            assert_eq!(sum.validate(), Ok(()));
        }
    }
    let f = example_form();
    assert_eq!(f.direct_sum(&f).unwrap().validate(), Ok(()));
}

#[test]
fn spin_examples() {
    let v = example_form().module;
    let sub = v.spin_submodule(&[unit(6, 0)]);
    assert_eq!(sub.space.dim(), 1);
    assert_eq!(sub.module.s, QMatrix::from_i64(&[&[1]]));
    assert!(is_morphism(&sub.inclusion, &sub.module, &v));
    assert_eq!(v.spin(&[]).dim(), 0);
    assert!(v.spin(&(0..6).map(|i| unit(6, i)).collect::<Vec<_>>()).is_full());
}

#[test]
fn quotients() {
    let v = example_form().module;
    let q = v.quotient(&Subspace::zero(6)).unwrap();
    assert_eq!(q.module, v);
    assert_eq!(v.quotient(&Subspace::full(6)).unwrap().module.dim(), 0);
    let bad = Subspace::span(6, &[unit(6, 1)]);
    assert!(v.quotient(&bad).is_err());
}

#[test]
fn example_subquotient_matches_reduced() {
    let f = example_form();
    let l = Subspace::span(6, &[unit(6, 0)]);
    let sq = induced_form_on_subquotient(&f, &l).unwrap();
    let r = example_reduced();
    assert_eq!(sq.form.module.s, r.module.s);
    assert_eq!(sq.form.module.proj, r.module.proj);
    assert_eq!(sq.form.phi, r.phi);
    assert_eq!(sq.form.validate(), Ok(()));
    // L = 0 leaves the form alone.
    let same = induced_form_on_subquotient(&f, &Subspace::zero(6)).unwrap();
    assert_eq!(same.form, f);
}

#[test]
fn hyperbolic_line_reduces_to_zero() {
    let m = SeifertModule::with_blocks(QMatrix::from_i64(&[&[0, 0], &[0, 1]]), &[2]);
    let f = SeifertForm::new(m, 1, QMatrix::from_i64(&[&[0, 1], &[1, 0]]));
    assert_eq!(f.validate(), Ok(()));
    let l = Subspace::span(2, &[unit(2, 0)]);
    assert_eq!(induced_form_on_subquotient(&f, &l).unwrap().form.dim(), 0);
}

#[test]
fn hom_dimensions() {
    let r = example_reduced().module;
    assert_eq!(hom_space(&r, &r).len(), 2);
    assert!(hom_space(&line(1, 0, rat(0)), &line(1, 0, rat(1))).is_empty());
    let rr = r.direct_sum(&r).unwrap();
    assert_eq!(hom_space(&r, &rr).len(), 4);
}

#[test]
fn reduced_is_self_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let r = example_reduced();
    let t = find_isomorphism(&r.module, &r.module.dual(), &mut rng).found().unwrap();
    assert!(is_morphism(&t, &r.module, &r.module.dual()));
    assert!(find_isomorphism(&line(1, 0, rat(0)), &r.module, &mut rng).found().is_none());
}
