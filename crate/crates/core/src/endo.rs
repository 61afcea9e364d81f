//! Endomorphism rings of simple modules, their presentation as number fields
//! with the involution induced by a form, and hermitian Morita transport.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{factor::is_irreducible, minimal_polynomial, rat, QMatrix, QPoly, Rat};
use crate::devissage::{is_simple, Simplicity};
use crate::error::SeifertError;
use crate::seifert::{hom_space, SeifertForm, SeifertModule};
use crate::witt::hilbert::{hilbert_symbol, squarefree_class, support_primes, Place};

/// End(M) with a Q-basis and structure constants c[i][j][k]: b_i b_j = sum_k c_ijk b_k.
#[derive(Clone, Debug)]
pub struct EndoRing {
    pub module: SeifertModule,
    pub basis: Vec<QMatrix>,
    pub structure: Vec<Vec<Vec<Rat>>>,
}

impl EndoRing {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an endomorphism in the basis.
    pub fn coords(&self, x: &QMatrix) -> Option<Vec<Rat>> {
        let n = self.module.dim();
        let cols: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.data().to_vec()).collect();
        let m = QMatrix::from_columns(n * n, &cols);
        let rhs = QMatrix::column_vector(x.data());
        crate::arith::solve(&m, &rhs).map(|s| s.col(0))
    }

    pub fn element(&self, coef: &[Rat]) -> QMatrix {
        let n = self.module.dim();
        let mut x = QMatrix::zeros(n, n);
        for (c, b) in coef.iter().zip(&self.basis) {
            if !c.is_zero() {
                x = &x + &b.scale(c);
            }
        }
        x
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.dim();
        (0..k).all(|i| (i + 1..k).all(|j| &self.basis[i] * &self.basis[j] == &self.basis[j] * &self.basis[i]))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<QMatrix> {
        let k = self.dim();
        // sum_i x_i (b_i b_j - b_j b_i) = 0 for all j, in structure coordinates.
        let mut eqs = QMatrix::zeros(k * k, k);
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let v = &self.structure[i][j][l] - &self.structure[j][i][l];
                    eqs[(j * k + l, i)] = v;
                }
            }
        }
        eqs.kernel().iter().map(|c| self.element(c)).collect()
    }

    /// Orthogonal projection of an operator onto End under the trace form;
    /// for commutative End this is the reduced trace, so it does not depend
    /// on the chosen basis.
    pub fn trace_projection(&self, w: &QMatrix) -> Option<QMatrix> {
        let k = self.dim();
        let mut g = QMatrix::zeros(k, k);
        let mut r = QMatrix::zeros(k, 1);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = (&self.basis[i] * &self.basis[j]).trace();
            }
            r[(i, 0)] = (w * &self.basis[i]).trace();
        }
        crate::arith::solve(&g, &r).map(|c| self.element(&c.col(0)))
    }

    /// Deterministic sequence of candidate elements: basis vectors, then
    /// small integer combinations.
    fn candidates(&self) -> impl Iterator<Item = Vec<Rat>> + '_ {
        let k = self.dim();
        let unit = (0..k).map(move |i| (0..k).map(|j| rat((i == j) as i64)).collect::<Vec<_>>());
        let combos = (1..=3i64).flat_map(move |t| {
            let side = (2 * t + 1) as usize;
            (0..side.pow(k as u32).min(4000)).map(move |mut idx| {
                (0..k)
                    .map(|_| {
                        let c = (idx % side) as i64 - t;
                        idx /= side;
                        rat(c)
                    })
                    .collect::<Vec<_>>()
            })
        });
        unit.chain(combos)
    }

    /// Some(true) if End is a division algebra, Some(false) if a zero divisor
    /// was found, None if undecided.
    pub fn is_division_algebra(&self) -> Option<bool> {
        let k = self.dim();
        if k == 1 {
            return Some(true);
        }
        if self.is_commutative() {
            for c in self.candidates().take(500) {
                let x = self.element(&c);
                if x.is_zero() {
                    continue;
                }
                let mp = minimal_polynomial(&x);
                if !is_irreducible(&mp) {
                    return Some(false);
                }
                if mp.deg() == k {
                    return Some(true);
                }
            }
            return None;
        }
        if k == 4 && self.center().len() == 1 {
            return quaternion_is_division(self);
        }
        for c in self.candidates().take(500) {
            let x = self.element(&c);
            if !x.is_zero() && !is_irreducible(&minimal_polynomial(&x)) {
                return Some(false);
            }
        }
        None
    }
}

/// Standard generators i, j with i^2 = a, j^2 = b, ij = -ji, then the norm
/// form is anisotropic iff (a, b)_v = -1 somewhere.
fn quaternion_is_division(e: &EndoRing) -> Option<bool> {
    let n = e.module.dim();
    let id = QMatrix::identity(n);
    let u = e.basis.iter().find(|b| {
        let c = e.basis.iter().all(|x| &(*b * x) == &(x * *b));
        !c
    })?;
    // Reduced trace part: u^2 - t u + m = 0 with t = 2 tr(u)/n.
    let t = u.trace() * rat(2) / rat(n as i64);
    let i = u - &id.scale(&(t / rat(2)));
    let a = scalar_of(&(&i * &i))?;
    let v = e.basis.iter().find(|x| &(&i * *x) != &(*x * &i))?;
    let j = &(&i * v) - &(v * &i);
    let b = scalar_of(&(&j * &j))?;
    if a.is_zero() || b.is_zero() {
        return Some(false);
    }
    let mut primes = support_primes(&a).ok()?;
    primes.extend(support_primes(&b).ok()?);
    primes.insert(2u32.into());
    let mut places: Vec<Place> = primes.into_iter().map(Place::Prime).collect();
    places.push(Place::Infinity);
    for p in places {
        if hilbert_symbol(&a, &b, &p).ok()? == -1 {
            return Some(true);
        }
    }
    Some(false)
}

fn scalar_of(m: &QMatrix) -> Option<Rat> {
    let c = m[(0, 0)].clone();
    if *m == QMatrix::identity(m.rows()).scale(&c) {
        Some(c)
    } else {
        None
    }
}

pub fn endomorphism_ring_unchecked(m: &SeifertModule) -> EndoRing {
    let basis = hom_space(m, m);
    let mut e = EndoRing { module: m.clone(), basis, structure: vec![] };
    let k = e.dim();
    let mut c = vec![vec![vec![Rat::zero(); k]; k]; k];
    for i in 0..k {
        for j in 0..k {
            let p = &e.basis[i] * &e.basis[j];
            c[i][j] = e.coords(&p).expect("End is closed under composition");
        }
    }
    e.structure = c;
    e
}

pub fn endomorphism_ring<R: Rng>(m: &SeifertModule, rng: &mut R) -> Result<EndoRing, SeifertError> {
    match is_simple(m, rng)? {
        Simplicity::Simple(_) => Ok(endomorphism_ring_unchecked(m)),
        Simplicity::NotSimple(_) => Err(SeifertError::NotSimple),
    }
}

/// Row of the invariant table an endomorphism algebra falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraKind {
    #[serde(rename = "1st kind, commutative, trivial involution")]
    CommutativeFirstKind,
    #[serde(rename = "1st kind, non-commutative, standard")]
    QuaternionStandard,
    #[serde(rename = "1st kind, non-commutative, non-standard")]
    QuaternionNonStandard,
    #[serde(rename = "2nd kind, commutative")]
    CommutativeSecondKind,
    #[serde(rename = "2nd kind, non-commutative")]
    NoncommutativeSecondKind,
}

impl AlgebraKind {
    pub fn label(&self) -> &'static str {
        match self {
            AlgebraKind::CommutativeFirstKind => "1st kind, commutative, trivial involution",
            AlgebraKind::QuaternionStandard => "1st kind, non-commutative, standard",
            AlgebraKind::QuaternionNonStandard => "1st kind, non-commutative, non-standard",
            AlgebraKind::CommutativeSecondKind => "2nd kind, commutative",
            AlgebraKind::NoncommutativeSecondKind => "2nd kind, non-commutative",
        }
    }
}

/// Number field E = Q(alpha) = End(M) with the involution f -> b^-1 f^T b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberFieldWithInvolution {
    pub minpoly: QPoly,
    /// Image of alpha under the involution, reduced; None until a form is chosen.
    pub involution_image: Option<QPoly>,
    pub fixed_field_degree: usize,
    /// alpha as an endomorphism of M.
    pub embedding: QMatrix,
}

#[derive(Clone, Debug)]
pub enum FieldPresentation {
    Field(NumberFieldWithInvolution),
    Noncommutative { dim: usize, center_dim: usize },
}

impl NumberFieldWithInvolution {
    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn reduce(&self, a: &QPoly) -> QPoly {
        a.rem(&self.minpoly)
    }

    pub fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        (a * b).rem(&self.minpoly)
    }

    pub fn inv(&self, a: &QPoly) -> Option<QPoly> {
        a.inv_mod(&self.minpoly)
    }

    pub fn conj(&self, a: &QPoly) -> QPoly {
        match &self.involution_image {
            None => self.reduce(a),
            Some(q) => a.compose_mod(q, &self.minpoly),
        }
    }

    pub fn is_trivial_involution(&self) -> bool {
        match &self.involution_image {
            None => true,
            Some(q) => *q == QPoly::x().rem(&self.minpoly),
        }
    }

    /// alpha^k as endomorphisms, k < degree.
    fn powers(&self) -> Vec<QMatrix> {
        let n = self.embedding.rows();
        let mut out = vec![QMatrix::identity(n)];
        for _ in 1..self.degree() {
            let last = out.last().unwrap();
            out.push(last * &self.embedding);
        }
        out
    }

    /// Express an endomorphism lying in Q[alpha] as a polynomial in alpha.
    pub fn to_poly(&self, x: &QMatrix) -> Option<QPoly> {
        let n = self.embedding.rows();
        let cols: Vec<Vec<Rat>> = self.powers().iter().map(|p| p.data().to_vec()).collect();
        let m = QMatrix::from_columns(n * n, &cols);
        crate::arith::solve(&m, &QMatrix::column_vector(x.data())).map(|s| QPoly::new(s.col(0)))
    }

    pub fn to_matrix(&self, a: &QPoly) -> QMatrix {
        self.reduce(a).eval_matrix(&self.embedding)
    }

    /// Matrix of the involution on the power basis.
    fn involution_matrix(&self) -> QMatrix {
        let d = self.degree();
        let cols: Vec<Vec<Rat>> = (0..d)
            .map(|k| {
                let c = self.conj(&QPoly::monomial(Rat::one(), k));
                (0..d).map(|i| c.coeff(i)).collect()
            })
            .collect();
        QMatrix::from_columns(d, &cols)
    }

    /// Basis of the fixed field, as elements of E.
    pub fn fixed_basis(&self) -> Vec<QPoly> {
        let d = self.degree();
        let m = &self.involution_matrix() - &QMatrix::identity(d);
        m.kernel().into_iter().map(QPoly::new).collect()
    }
}

/// Words of length <= 3 in s and the projections, in a fixed order.
fn canonical_words(m: &SeifertModule) -> Vec<QMatrix> {
    let gens = m.generators();
    let mut out: Vec<QMatrix> = gens.iter().map(|g| (*g).clone()).collect();
    let mut last = out.clone();
    for _ in 1..3 {
        let mut next = Vec::new();
        for w in &last {
            for g in &gens {
                next.push(w * *g);
            }
        }
        out.extend(next.iter().cloned());
        last = next;
    }
    out
}

/// Find a primitive element of a commutative End and present E = Q[x]/(minpoly).
pub fn as_number_field(e: &EndoRing) -> FieldPresentation {
    let k = e.dim();
    if !e.is_commutative() {
        return FieldPresentation::Noncommutative { dim: k, center_dim: e.center().len() };
    }
    let n = e.module.dim();
    let mut alpha = None;
    let canonical = canonical_words(&e.module).into_iter().filter_map(|w| e.trace_projection(&w));
    let fallback = e.candidates().map(|c| e.element(&c));
    for x in canonical.chain(fallback) {
        let mp = minimal_polynomial(&x);
        if mp.deg() == k {
            alpha = Some((x, mp));
            break;
        }
    }
    let (x, mp) = alpha.expect("a commutative division algebra has a primitive element");
    let (x, mp) = if k == 2 { canonical_quadratic(&x, &mp, n) } else { (x, mp) };
    let (x, mp) = if k == 1 { (QMatrix::identity(n), QPoly::from_i64(&[-1, 1])) } else { (x, mp) };
    FieldPresentation::Field(NumberFieldWithInvolution {
        minpoly: mp,
        involution_image: None,
        fixed_field_degree: k,
        embedding: x,
    })
}

/// Replace a generator of a quadratic field by the standard generator of its
/// ring of integers: (1 + sqrt D)/2 when D = 1 mod 4, else sqrt D.
fn canonical_quadratic(x: &QMatrix, mp: &QPoly, n: usize) -> (QMatrix, QPoly) {
    let (p1, p0) = (mp.coeff(1), mp.coeff(0));
    let disc = &p1 * &p1 - rat(4) * &p0;
    let dd = squarefree_class(&disc).expect("irreducible quadratic has nonzero discriminant");
    let c2 = &disc / Rat::from_integer(dd.clone());
    let c = rat_sqrt(&c2).expect("disc / D is a square");
    let id = QMatrix::identity(n);
    // sqrt(D) = (2x + p1) / c
    let root = &(&x.scale(&rat(2)) + &id.scale(&p1)).scale(&c.recip()) * &id;
    let d_mod4 = dd.mod_floor(&BigInt::from(4));
    if d_mod4 == BigInt::one() {
        let w = (&root + &id).scale(&Rat::new(1.into(), 2.into()));
        let c0 = (Rat::one() - Rat::from_integer(dd)) / rat(4);
        (w, QPoly::new(vec![c0, rat(-1), rat(1)]))
    } else {
        (root, QPoly::new(vec![-Rat::from_integer(dd), rat(0), rat(1)]))
    }
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rat::new(n, d))
}

/// Install the involution f -> b^-1 f^T b on E.
pub fn involution_from_form(
    nf: &NumberFieldWithInvolution,
    b: &SeifertForm,
) -> Result<NumberFieldWithInvolution, SeifertError> {
    let bi = b.phi.inverse().ok_or(SeifertError::SingularForm)?;
    let image = &(&bi * &nf.embedding.transpose()) * &b.phi;
    let q = nf.to_poly(&image).ok_or_else(|| SeifertError::Invalid("form is not compatible with End(M)".into()))?;
    let mut out = nf.clone();
    out.involution_image = Some(q);
    let twice = out.conj(&out.conj(&QPoly::x()));
    if twice != QPoly::x().rem(&out.minpoly) {
        return Err(SeifertError::Invalid("induced map is not an involution".into()));
    }
    out.fixed_field_degree = out.fixed_basis().len();
    Ok(out)
}

/// Table row for a noncommutative End given the involution from `b`.
pub fn classify_noncommutative(e: &EndoRing, b: &SeifertForm) -> Option<AlgebraKind> {
    let bi = b.phi.inverse()?;
    let inv = |x: &QMatrix| &(&bi * &x.transpose()) * &b.phi;
    let center = e.center();
    let first_kind = center.iter().all(|z| inv(z) == *z);
    if !first_kind {
        return Some(AlgebraKind::NoncommutativeSecondKind);
    }
    let k = e.dim();
    let cols: Vec<Vec<Rat>> = e.basis.iter().map(|x| e.coords(&(&inv(x) - x)).unwrap()).collect();
    let fixed = k - QMatrix::from_columns(k, &cols).rank();
    Some(if fixed == center.len() { AlgebraKind::QuaternionStandard } else { AlgebraKind::QuaternionNonStandard })
}

/// Hermitian form over E: gram[i][j] = h(a_i, a_j), entries reduced mod minpoly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianFormOverE {
    pub field: NumberFieldWithInvolution,
    pub gram: Vec<Vec<QPoly>>,
}

impl HermitianFormOverE {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_hermitian(&self) -> bool {
        let k = self.rank();
        (0..k).all(|i| (0..k).all(|j| self.field.conj(&self.gram[i][j]) == self.field.reduce(&self.gram[j][i])))
    }

    pub fn orthogonal_sum(&self, o: &HermitianFormOverE) -> HermitianFormOverE {
        let (a, b) = (self.rank(), o.rank());
        let mut g = vec![vec![QPoly::zero(); a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                g[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[a + i][a + j] = o.gram[i][j].clone();
            }
        }
        HermitianFormOverE { field: self.field.clone(), gram: g }
    }
}

/// Gram matrix of the transported form: h(a, c) = zeta b^-1 c^T phi_N a for
/// a, c in the given E-basis of Hom(M, N).
pub fn morita_transport(
    nf: &NumberFieldWithInvolution,
    b: &SeifertForm,
    target: &SeifertForm,
    hom_basis: &[QMatrix],
) -> Result<HermitianFormOverE, SeifertError> {
    if b.zeta != target.zeta {
        return Err(SeifertError::ZetaMismatch);
    }
    let bi = b.phi.inverse().ok_or(SeifertError::SingularForm)?.scale(&b.zeta_rat());
    let k = hom_basis.len();
    let mut gram = vec![vec![QPoly::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let x = &(&(&bi * &hom_basis[j].transpose()) * &target.phi) * &hom_basis[i];
            gram[i][j] = nf
                .to_poly(&x)
                .ok_or_else(|| SeifertError::Invalid("transported value outside End(M)".into()))?;
        }
    }
    Ok(HermitianFormOverE { field: nf.clone(), gram })
}

/// Transport of an orthogonal sum of forms on one module M, via the block
/// inclusions of M into M^k.
pub fn morita_transport_isotypic(
    nf: &NumberFieldWithInvolution,
    b: &SeifertForm,
    forms: &[SeifertForm],
) -> Result<HermitianFormOverE, SeifertError> {
    let n = b.dim();
    let mut total = forms[0].clone();
    for f in &forms[1..] {
        total = total.direct_sum(f)?;
    }
    let k = forms.len();
    let incl: Vec<QMatrix> = (0..k)
        .map(|i| {
            let mut x = QMatrix::zeros(n * k, n);
            x.set_block(i * n, 0, &QMatrix::identity(n));
            x
        })
        .collect();
    morita_transport(nf, b, &total, &incl)
}
