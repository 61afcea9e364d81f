use flk_core::arith::{rat, ratio, QMatrix, QPoly};
use flk_core::devissage::{isotypic_group, witt_reduce};
use flk_core::endo::{
    as_number_field, endomorphism_ring, endomorphism_ring_unchecked, involution_from_form, morita_transport,
    morita_transport_isotypic, FieldPresentation, classify_noncommutative,
};
use flk_core::fixtures::{example_reduced, line, random_form};
use flk_core::seifert::{SeifertForm, SeifertModule};
use flk_core::SeifertError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field(m: &SeifertModule) -> flk_core::endo::NumberFieldWithInvolution {
    match as_number_field(&endomorphism_ring(m, &mut rng(0)).unwrap()) {
        FieldPresentation::Field(nf) => nf,
        other => panic!("expected a field, got {other:?}"),
    }
}

#[test]
fn example_endomorphisms_form_q_sqrt_minus_3() {
    let f = example_reduced();
    let e = endomorphism_ring(&f.module, &mut rng(0)).unwrap();
    assert_eq!(e.dim(), 2);
    assert!(e.is_commutative());
    let nf = field(&f.module);
    assert_eq!(nf.minpoly, QPoly::from_i64(&[1, -1, 1]));
    let b = f.neg();
    let nf = involution_from_form(&nf, &b).unwrap();
    assert!(!nf.is_trivial_involution());
    assert_eq!(nf.fixed_field_degree, 1);
    // omega -> 1 - omega
    assert_eq!(nf.involution_image, Some(QPoly::from_i64(&[1, -1])));
    let h = morita_transport(&nf, &b, &f, &[QMatrix::identity(4)]).unwrap();
    assert_eq!(h.gram, vec![vec![QPoly::one()]]);
}

#[test]
fn lines_and_rejections() {
    let v = line(1, 0, rat(3));
    let e = endomorphism_ring(&v, &mut rng(0)).unwrap();
    assert_eq!(e.dim(), 1);
    assert_eq!(field(&v).degree(), 1);
    let f = example_reduced();
    let ff = f.module.direct_sum(&f.module).unwrap();
    assert!(matches!(endomorphism_ring(&ff, &mut rng(0)), Err(SeifertError::NotSimple)));

    let half = ratio(1, 2);
    let l = SeifertForm::new(line(1, 0, half), 1, QMatrix::from_i64(&[&[3]]));
    l.validate().unwrap();
    let nf = involution_from_form(&field(&l.module), &l).unwrap();
    assert!(nf.is_trivial_involution());
}

#[test]
fn transport_of_b_against_itself_and_sums() {
    let f = example_reduced();
    let b = f.neg();
    let nf = involution_from_form(&field(&f.module), &b).unwrap();
    let h1 = morita_transport_isotypic(&nf, &b, &[f.clone()]).unwrap();
    let h2 = morita_transport_isotypic(&nf, &b, &[f.clone(), f.clone()]).unwrap();
    assert_eq!(h2, h1.orthogonal_sum(&h1));
    assert!(h2.is_hermitian());
    let bb = morita_transport_isotypic(&nf, &b, &[b.clone()]).unwrap();
    assert_eq!(bb.gram, vec![vec![QPoly::from_i64(&[-1])]]);
    let mut r = rng(5);
    for _ in 0..10 {
        let g = random_form(&mut r, 2, 4, -1);
        let d = isotypic_group(&witt_reduce(&g, 0).unwrap());
        for p in &d.pieces {
            let b = SeifertForm { phi: p.forms[0].phi.scale(&p.forms[0].zeta_rat()), ..p.forms[0].clone() };
            let nf = involution_from_form(
                &match as_number_field(&endomorphism_ring_unchecked(&p.module)) {
                    FieldPresentation::Field(nf) => nf,
                    _ => continue,
                },
                &b,
            )
            .unwrap();
            let twice = nf.conj(&nf.conj(&QPoly::x()));
            assert_eq!(twice, QPoly::x().rem(&nf.minpoly));
            let h = morita_transport_isotypic(&nf, &b, &[p.forms[0].clone()]).unwrap();
            assert_eq!(h.gram, vec![vec![QPoly::one()]]);
        }
    }
}

/// Module D^2 for the quaternion algebra (-1,-1): End is D acting on the right.
fn quaternion_module() -> SeifertModule {
    // Left multiplication matrices of 1, i, j, k on (1, i, j, k).
    let li = QMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let lj = QMatrix::from_i64(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    let z = QMatrix::zeros(4, 4);
    let mut s = QMatrix::zeros(8, 8);
    s.set_block(0, 0, &li);
    s.set_block(0, 4, &QMatrix::identity(4));
    s.set_block(4, 0, &lj);
    s.set_block(4, 4, &z);
    SeifertModule::with_blocks(s, &[4, 4])
}

#[test]
fn quaternion_endomorphisms_are_noncommutative() {
    let m = quaternion_module();
    m.validate().unwrap();
    let e = endomorphism_ring(&m, &mut rng(0)).unwrap();
    assert_eq!(e.dim(), 4);
    assert!(!e.is_commutative());
    assert_eq!(e.center().len(), 1);
    assert_eq!(e.is_division_algebra(), Some(true));
    match as_number_field(&e) {
        FieldPresentation::Noncommutative { dim, center_dim } => assert_eq!((dim, center_dim), (4, 1)),
        _ => panic!("expected noncommutative"),
    }
    // Trace-free part i of a noncentral element and j = iv - vi anticommute.
    let n = rat(8);
    let u = e.basis.iter().find(|x| e.basis.iter().any(|y| &(*x * y) != &(y * *x))).unwrap();
    let i = u - &QMatrix::identity(8).scale(&(u.trace() / n));
    let v = e.basis.iter().find(|y| &(&i * *y) != &(*y * &i)).unwrap();
    let j = &(&i * v) - &(v * &i);
    assert!(!j.is_zero());
    assert_eq!(&i * &j, -&(&j * &i));

    let b = SeifertForm::new(m.clone(), 1, QMatrix::identity(8));
    if b.validate().is_ok() {
        assert!(classify_noncommutative(&e, &b).is_some());
    }
}
