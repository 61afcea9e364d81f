use flk_core::arith::{rat, QMatrix, Subspace};
use flk_core::devissage::{
    composition_series, find_simple_submodule, is_simple, isotypic_group, witt_reduce, Simplicity,
};
use flk_core::fixtures::{example_form, example_reduced, line, random_form};
use flk_core::seifert::{SeifertForm, SeifertModule};
use flk_core::SeifertError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn example_is_not_simple_and_reduced_piece_is() {
    let f = example_form();
    match is_simple(&f.module, &mut rng(0)).unwrap() {
        Simplicity::NotSimple(w) => {
            assert!(f.module.is_submodule(&w));
            assert!(w.dim() > 0 && w.dim() < 6);
        }
        Simplicity::Simple(_) => panic!("example module is reducible"),
    }
    for seed in 0..5 {
        assert!(is_simple(&example_reduced().module, &mut rng(seed)).unwrap().is_simple());
    }
}

#[test]
fn e1_line_is_a_simple_submodule() {
    let f = example_form();
    let e1 = Subspace::span(6, &[vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)]]);
    assert!(f.module.is_submodule(&e1));
    let l = find_simple_submodule(&f.module, &mut rng(3)).unwrap();
    assert!(is_simple(&l.module, &mut rng(4)).unwrap().is_simple());
}

#[test]
fn simple_search_on_small_cases() {
    let v = line(1, 0, rat(5));
    assert_eq!(find_simple_submodule(&v, &mut rng(0)).unwrap().space.dim(), 1);
    let sum = line(1, 0, rat(0)).direct_sum(&line(1, 0, rat(1))).unwrap();
    assert!(!is_simple(&sum, &mut rng(0)).unwrap().is_simple());
    assert!(matches!(is_simple(&SeifertModule::zero(1), &mut rng(0)), Err(SeifertError::ZeroModule)));
}

fn assert_series(v: &SeifertModule, chain: &[Subspace]) {
    for w in chain.windows(2) {
        assert!(v.is_submodule(&w[1]) && w[1].contains_space(&w[0]) && w[1].dim() > w[0].dim());
        let q = v.submodule(w[1].clone()).unwrap();
        let inner: Vec<_> = w[0].basis_vectors().iter().map(|x| w[1].coords(x)).collect();
        let factor = q.module.quotient(&Subspace::span(w[1].dim(), &inner)).unwrap();
        assert!(is_simple(&factor.module, &mut rng(9)).unwrap().is_simple());
    }
    assert!(chain.last().unwrap().is_full());
}

#[test]
fn composition_series_examples() {
    let v = line(2, 1, rat(0));
    assert_eq!(composition_series(&v, &mut rng(0)).unwrap().len(), 2);

    let f = example_form();
    let chain = composition_series(&f.module, &mut rng(0)).unwrap();
    assert_series(&f.module, &chain);
    let dims: Vec<usize> = chain.windows(2).map(|w| w[1].dim() - w[0].dim()).collect();
    assert_eq!(dims.iter().sum::<usize>(), 6);
    assert!(dims.contains(&4));

    // Nonsplit extension: s = 0 on the bottom line, s = 1 on top.
    let ext = SeifertModule::with_blocks(QMatrix::from_i64(&[&[0, 1], &[0, 1]]), &[1, 1]);
    let chain = composition_series(&ext, &mut rng(0)).unwrap();
    assert_series(&ext, &chain);
    assert_eq!(chain.len(), 3);
    let bottom = ext.submodule(chain[1].clone()).unwrap().module;
    assert_eq!(bottom.s, QMatrix::from_i64(&[&[0]]));
    let top = ext.quotient(&chain[1]).unwrap().module;
    assert_eq!(top.s, QMatrix::from_i64(&[&[1]]));
}

#[test]
fn example_reduces_to_the_printed_piece() {
    for seed in 0..4 {
        let d = isotypic_group(&witt_reduce(&example_form(), seed).unwrap());
        assert_eq!(d.pieces.len(), 1);
        let p = &d.pieces[0];
        assert_eq!(p.module.dim(), 4);
        assert_eq!(p.forms.len(), 1);
        p.forms[0].validate().unwrap();
        assert!(is_simple(&p.module, &mut rng(seed)).unwrap().is_simple());
    }
}

#[test]
fn hyperbolic_and_metabolic_forms_vanish() {
    let s = QMatrix::from_i64(&[&[0, 0], &[0, 1]]);
    let m = SeifertModule::with_blocks(s, &[2]);
    let h = SeifertForm::new(m, 1, QMatrix::from_i64(&[&[0, 1], &[1, 0]]));
    h.validate().unwrap();
    assert!(witt_reduce(&h, 0).unwrap().is_empty());

    let mut r = rng(11);
    for i in 0..20 {
        let zeta = if i % 2 == 0 { 1 } else { -1 };
        let dim = if zeta == 1 { 1 + i % 4 } else { 2 + 2 * (i % 2) };
        let f = random_form(&mut r, 1 + i % 3, dim, zeta);
        let g = f.direct_sum(&f.neg()).unwrap();
        assert!(witt_reduce(&g, i as u64).unwrap().is_empty(), "case {i}");
    }
}

#[test]
fn singular_input_is_rejected() {
    let m = SeifertModule::with_blocks(QMatrix::from_i64(&[&[0]]), &[1]);
    let f = SeifertForm::new(m, 1, QMatrix::from_i64(&[&[0]]));
    assert!(matches!(witt_reduce(&f, 0), Err(SeifertError::SingularForm)));
}

#[test]
fn isotypic_grouping() {
    let f = example_reduced();
    let d = isotypic_group(&witt_reduce(&f, 0).unwrap());
    assert_eq!(d.pieces.len(), 1);

    let g = f.direct_sum(&f).unwrap();
    let d = isotypic_group(&witt_reduce(&g, 0).unwrap());
    assert_eq!(d.pieces.len(), 1);
    assert_eq!(d.pieces[0].forms.len(), 2);
    for form in &d.pieces[0].forms {
        assert_eq!(form.module, d.pieces[0].module);
        form.validate().unwrap();
    }

    let half = flk_core::arith::ratio(1, 2);
    let one = QMatrix::from_i64(&[&[1]]);
    let a = SeifertForm::new(line(2, 0, half.clone()), 1, one.clone());
    let b = SeifertForm::new(line(2, 1, half), 1, one);
    let d = isotypic_group(&witt_reduce(&a.direct_sum(&b).unwrap(), 0).unwrap());
    assert_eq!(d.pieces.len(), 2);
}
