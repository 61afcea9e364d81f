//! Rank, signatures, discriminant and Hasse-Witt invariants of a hermitian
//! form over a number field with involution, and the pipeline from a
//! Seifert form to a verdict.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::hilbert::{hasse_witt_over_q, hilbert_symbol, norm_class_test_quadratic, squarefree_class, Place};
use crate::arith::{minimal_polynomial, rat, real_root_data, sign_at_root, QMatrix, QPoly, Rat};
use crate::devissage::{isotypic_group, witt_reduce, AnisotropicDecomposition, Piece};
use crate::endo::{
    as_number_field, classify_noncommutative, endomorphism_ring_unchecked, involution_from_form,
    morita_transport_isotypic, AlgebraKind, FieldPresentation, HermitianFormOverE, NumberFieldWithInvolution,
};
use crate::error::SeifertError;
use crate::seifert::SeifertForm;

/// diag = P G P^*, entries in the fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub diag: Vec<QPoly>,
    pub congruence: Vec<Vec<QPoly>>,
}

pub fn diagonalize(h: &HermitianFormOverE) -> Result<Diagonalization, SeifertError> {
    let nf = &h.field;
    let k = h.rank();
    let mut g: Vec<Vec<QPoly>> = h.gram.iter().map(|r| r.iter().map(|x| nf.reduce(x)).collect()).collect();
    let mut p: Vec<Vec<QPoly>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { QPoly::one() } else { QPoly::zero() }).collect()).collect();
    // Row i += c row j, column i += conj(c) column j.
    let add = |g: &mut Vec<Vec<QPoly>>, p: &mut Vec<Vec<QPoly>>, i: usize, j: usize, c: &QPoly| {
        let cc = nf.conj(c);
        for t in 0..k {
            let v = nf.mul(c, &g[j][t]);
            g[i][t] = &g[i][t] + &v;
            let v = nf.mul(c, &p[j][t]);
            p[i][t] = &p[i][t] + &v;
        }
        for t in 0..k {
            let v = nf.mul(&cc, &g[t][j]);
            g[t][i] = &g[t][i] + &v;
        }
    };
    for i in 0..k {
        if g[i][i].is_zero() {
            if let Some(j) = (i + 1..k).find(|&j| !g[j][j].is_zero()) {
                g.swap(i, j);
                for row in g.iter_mut() {
                    row.swap(i, j);
                }
                p.swap(i, j);
            } else if let Some(j) = (i + 1..k).find(|&j| !g[j][i].is_zero()) {
                // h(e_i + c e_j) = Tr(c g_ji) = 1 for c = 1/(2 g_ji).
                let c = nf.inv(&g[j][i].scale(&rat(2))).ok_or(SeifertError::SingularForm)?;
                add(&mut g, &mut p, i, j, &c);
            } else {
                return Err(SeifertError::SingularForm);
            }
        }
        let piv = nf.inv(&g[i][i]).ok_or(SeifertError::SingularForm)?;
        for r in i + 1..k {
            if g[r][i].is_zero() {
                continue;
            }
            let c = -&nf.mul(&g[r][i], &piv);
            add(&mut g, &mut p, r, i, &c);
        }
    }
    let diag: Vec<QPoly> = (0..k).map(|i| g[i][i].clone()).collect();
    for (i, d) in diag.iter().enumerate() {
        debug_assert!(nf.conj(d) == *d, "diagonal entry {i} not fixed");
    }
    Ok(Diagonalization { diag, congruence: p })
}

/// Matrix of multiplication by `a` on the power basis of E.
fn mult_matrix(nf: &NumberFieldWithInvolution, a: &QPoly) -> QMatrix {
    let d = nf.degree();
    let cols: Vec<Vec<Rat>> = (0..d)
        .map(|k| {
            let v = nf.mul(a, &QPoly::monomial(Rat::one(), k));
            (0..d).map(|i| v.coeff(i)).collect()
        })
        .collect();
    QMatrix::from_columns(d, &cols)
}

/// A primitive element beta of Fix together with its minimal polynomial.
fn fixed_primitive(nf: &NumberFieldWithInvolution) -> (QPoly, QPoly) {
    let basis = nf.fixed_basis();
    let f = basis.len();
    let mut tries: Vec<QPoly> = basis.clone();
    for a in &basis {
        for b in &basis {
            for c in 1..=3 {
                tries.push(a + &b.scale(&rat(c)));
            }
        }
    }
    for b in tries {
        let mp = minimal_polynomial(&mult_matrix(nf, &b));
        if mp.deg() == f {
            return (b, mp);
        }
    }
    unreachable!("fixed field has a primitive element among small combinations")
}

/// Express a in Q(beta) as a polynomial in beta.
fn in_terms_of(nf: &NumberFieldWithInvolution, beta: &QPoly, f: usize, a: &QPoly) -> Option<QPoly> {
    let d = nf.degree();
    let mut pw = QPoly::one();
    let mut cols = Vec::new();
    for _ in 0..f {
        cols.push((0..d).map(|i| pw.coeff(i)).collect::<Vec<_>>());
        pw = nf.mul(&pw, beta);
    }
    let m = QMatrix::from_columns(d, &cols);
    let rhs = QMatrix::column_vector(&(0..d).map(|i| nf.reduce(a).coeff(i)).collect::<Vec<_>>());
    crate::arith::solve(&m, &rhs).map(|c| QPoly::new(c.col(0)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    /// Isolating interval of the real place, for the polynomial in `place_of`.
    pub place: String,
    pub place_of: String,
    pub value: i64,
}

/// Signatures at the real places where the form is definite-type.
pub fn signatures(nf: &NumberFieldWithInvolution, diag: &[QPoly]) -> Vec<Signature> {
    let mut out = Vec::new();
    if nf.is_trivial_involution() {
        let roots = real_root_data(&nf.minpoly, None).expect("nonzero minpoly");
        for iv in roots.intervals {
            let value = diag.iter().map(|d| sign_at_root(&nf.reduce(d), &nf.minpoly, &iv) as i64).sum();
            out.push(Signature { place: iv.label(), place_of: nf.minpoly.to_string(), value });
        }
        return out;
    }
    let (beta, mp) = fixed_primitive(nf);
    let f = mp.deg();
    let x = QPoly::x();
    let diff = &x - &nf.conj(&x);
    let delta = nf.mul(&diff, &diff);
    let delta_b = in_terms_of(nf, &beta, f, &delta).expect("(a - conj a)^2 is fixed");
    let diag_b: Vec<QPoly> =
        diag.iter().map(|d| in_terms_of(nf, &beta, f, d).expect("diagonal entries are fixed")).collect();
    let roots = real_root_data(&mp, None).expect("nonzero minpoly");
    for iv in roots.intervals {
        if sign_at_root(&delta_b, &mp, &iv) >= 0 {
            continue;
        }
        let value = diag_b.iter().map(|d| sign_at_root(d, &mp, &iv) as i64).sum();
        out.push(Signature { place: iv.label(), place_of: mp.to_string(), value });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassGroup {
    #[serde(rename = "square-class")]
    SquareClass,
    #[serde(rename = "norm-class")]
    NormClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discriminant {
    /// (-1)^{m(m-1)/2} prod d_i as a polynomial in the field generator.
    pub representative: String,
    pub class_group: ClassGroup,
    /// Some(true) when the class is decided trivial, Some(false) when decided
    /// nontrivial, None when only the symbolic representative is known.
    pub trivial: Option<bool>,
    /// Squarefree integer for square classes over Q.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_form: Option<String>,
}

fn as_rational(a: &QPoly) -> Option<Rat> {
    (a.deg() == 0).then(|| a.coeff(0))
}

fn is_rational_square(r: &Rat) -> bool {
    if r.is_negative() {
        return false;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    &n * &n == *r.numer() && &d * &d == *r.denom()
}

pub fn discriminant_class(nf: &NumberFieldWithInvolution, diag: &[QPoly]) -> Discriminant {
    let m = diag.len();
    let mut d = QPoly::constant(if (m * m.saturating_sub(1) / 2) % 2 == 0 { rat(1) } else { rat(-1) });
    for x in diag {
        d = nf.mul(&d, x);
    }
    let representative = d.to_string_var("a");
    if nf.is_trivial_involution() {
        let class_group = ClassGroup::SquareClass;
        return match (nf.degree(), as_rational(&d)) {
            (1, Some(r)) => {
                let sf = squarefree_class(&r).expect("nonzero discriminant");
                Discriminant { representative, class_group, trivial: Some(sf.is_one()), normal_form: Some(sf.to_string()) }
            }
            (_, Some(r)) if is_rational_square(&r) => {
                Discriminant { representative, class_group, trivial: Some(true), normal_form: None }
            }
            _ => Discriminant { representative, class_group, trivial: None, normal_form: None },
        };
    }
    let class_group = ClassGroup::NormClass;
    let r = as_rational(&d);
    if let Some(r) = &r {
        if is_rational_square(r) {
            return Discriminant { representative, class_group, trivial: Some(true), normal_form: None };
        }
    }
    if nf.degree() == 2 && nf.fixed_field_degree == 1 {
        if let Some(r) = r {
            let x = QPoly::x();
            let diff = &x - &nf.conj(&x);
            let delta = nf.mul(&diff, &diff);
            let dm = squarefree_class(&delta.coeff(0)).expect("nonzero");
            let norm = norm_class_test_quadratic(&r, &dm).expect("nonsquare field discriminant");
            return Discriminant { representative, class_group, trivial: Some(norm), normal_form: None };
        }
    }
    Discriminant { representative, class_group, trivial: None, normal_form: None }
}

/// Witt-class version of the Hasse-Witt invariant: c corrected by the
/// hyperbolic form of the same rank (rank mod 8 rule).
pub fn witt_hasse_over_q(diag: &[Rat]) -> Vec<Place> {
    let m = diag.len();
    let det: Rat = diag.iter().fold(rat(1), |a, b| a * b);
    let raw = hasse_witt_over_q(diag).expect("nonzero diagonal");
    let corr: Option<(Rat, Rat)> = match m % 8 {
        1 | 2 => None,
        3 | 4 => Some((rat(-1), -det.clone())),
        5 | 6 => Some((rat(-1), rat(-1))),
        _ => Some((rat(-1), det.clone())),
    };
    let Some((a, b)) = corr else { return raw };
    let mut places: Vec<Place> = raw.clone();
    for p in crate::witt::hilbert::support_primes(&b).unwrap().into_iter().chain([2u32.into()]) {
        places.push(Place::Prime(p));
    }
    places.push(Place::Infinity);
    places.sort();
    places.dedup();
    places
        .into_iter()
        .filter(|v| {
            let c = if raw.contains(v) { -1 } else { 1 };
            c * hilbert_symbol(&a, &b, v).unwrap() == -1
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Complete,
    Partial(String),
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub minpoly: String,
    pub involution_image: String,
    pub fixed_field_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub module_dim: usize,
    pub multiplicity: usize,
    pub algebra_kind: AlgebraKind,
    pub endomorphism_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<FieldSummary>,
    /// The zeta-form b on the representative module.
    pub b: QMatrix,
    pub rank_mod2: u8,
    pub signatures: Vec<Signature>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discriminant: Option<Discriminant>,
    /// Places where the Hasse-Witt invariant is -1 (E = Q only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hasse: Option<Vec<Place>>,
    /// Places where the Witt-normalised Hasse invariant is -1.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witt_hasse: Option<Vec<Place>>,
    pub diagonal: Vec<String>,
    pub status: Status,
}

impl InvariantReport {
    /// Some(true) if a computed invariant is nontrivial, Some(false) if all
    /// computed invariants are trivial and nothing needed is missing.
    pub fn nontrivial(&self) -> Option<bool> {
        // Odd rank over a division algebra is never metabolic, whatever the algebra.
        if self.rank_mod2 == 1 {
            return Some(true);
        }
        if matches!(self.status, Status::Unsupported(_)) {
            return None;
        }
        let decided = self.signatures.iter().any(|s| s.value != 0)
            || self.discriminant.as_ref().is_some_and(|d| d.trivial == Some(false))
            || self.witt_hasse.as_ref().is_some_and(|h| !h.is_empty());
        if decided {
            return Some(true);
        }
        match self.status {
            Status::Complete => Some(false),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum Verdict {
    WittTrivial,
    Nontrivial,
    Undetermined(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub zeta: i8,
    pub mu: usize,
    pub pieces: Vec<InvariantReport>,
    pub verdict: Verdict,
}

pub fn verdict(pieces: &[InvariantReport]) -> Verdict {
    if pieces.iter().any(|p| p.nontrivial() == Some(true)) {
        return Verdict::Nontrivial;
    }
    if pieces.iter().any(|p| matches!(p.status, Status::Unsupported(_))) {
        return Verdict::Undetermined("quaternionic".into());
    }
    if let Some(p) = pieces.iter().find(|p| p.nontrivial().is_none()) {
        let reason = match &p.status {
            Status::Partial(r) => r.clone(),
            _ => "undecided invariant".into(),
        };
        return Verdict::Undetermined(reason);
    }
    Verdict::WittTrivial
}

/// Invariants of the hermitian form over (E, involution) built from the
/// forms of one isotypic group, relative to the zeta-form `b`.
pub fn report_with_b(piece: &Piece, b: &SeifertForm) -> Result<InvariantReport, SeifertError> {
    let m = &piece.module;
    let e = endomorphism_ring_unchecked(m);
    let mult = piece.forms.len();
    let nf = match as_number_field(&e) {
        FieldPresentation::Noncommutative { dim, .. } => {
            let kind = classify_noncommutative(&e, b).unwrap_or(AlgebraKind::NoncommutativeSecondKind);
            return Ok(InvariantReport {
                module_dim: m.dim(),
                multiplicity: mult,
                algebra_kind: kind,
                endomorphism_dim: dim,
                field: None,
                b: b.phi.clone(),
                rank_mod2: (mult % 2) as u8,
                signatures: vec![],
                discriminant: None,
                hasse: None,
                witt_hasse: None,
                diagonal: vec![],
                status: Status::Unsupported("quaternionic".into()),
            });
        }
        FieldPresentation::Field(nf) => nf,
    };
    let nf = involution_from_form(&nf, b)?;
    let h = morita_transport_isotypic(&nf, b, &piece.forms)?;
    debug_assert!(h.is_hermitian());
    let dg = diagonalize(&h)?;
    let trivial_inv = nf.is_trivial_involution();
    let kind = if trivial_inv { AlgebraKind::CommutativeFirstKind } else { AlgebraKind::CommutativeSecondKind };
    let signatures = signatures(&nf, &dg.diag);
    let discriminant = discriminant_class(&nf, &dg.diag);
    let mut status = Status::Complete;
    let (hasse, witt_hasse) = if trivial_inv && nf.degree() == 1 {
        let d: Vec<Rat> = dg.diag.iter().map(|x| x.coeff(0)).collect();
        (Some(hasse_witt_over_q(&d).expect("nonzero diagonal")), Some(witt_hasse_over_q(&d)))
    } else {
        if trivial_inv {
            status = Status::Partial("Hasse-Witt over a number field other than Q not computed".into());
        }
        (None, None)
    };
    if discriminant.trivial.is_none() {
        status = Status::Partial("class equality undecided".into());
    }
    Ok(InvariantReport {
        module_dim: m.dim(),
        multiplicity: mult,
        algebra_kind: kind,
        endomorphism_dim: e.dim(),
        field: Some(FieldSummary {
            minpoly: nf.minpoly.to_string(),
            involution_image: nf.involution_image.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "x".into()),
            fixed_field_degree: nf.fixed_field_degree,
        }),
        b: b.phi.clone(),
        rank_mod2: (mult % 2) as u8,
        signatures,
        discriminant: Some(discriminant),
        hasse,
        witt_hasse,
        diagonal: dg.diag.iter().map(|d| d.to_string_var("a")).collect(),
        status,
    })
}

/// b = zeta times the first form, so that form transports to <1>; replaced
/// by -b when that makes the first nonzero signature positive.
pub fn invariant_report(piece: &Piece) -> Result<InvariantReport, SeifertError> {
    let first = &piece.forms[0];
    let b = SeifertForm { phi: first.phi.scale(&first.zeta_rat()), ..first.clone() };
    let r = report_with_b(piece, &b)?;
    if r.signatures.iter().find(|s| s.value != 0).is_some_and(|s| s.value < 0) {
        return report_with_b(piece, &b.neg());
    }
    Ok(r)
}

pub fn report_for_decomposition(d: &AnisotropicDecomposition) -> Result<WittReport, SeifertError> {
    let pieces = d.pieces.iter().map(invariant_report).collect::<Result<Vec<_>, _>>()?;
    let verdict = verdict(&pieces);
    Ok(WittReport { zeta: d.zeta, mu: d.mu, pieces, verdict })
}

/// Full pipeline: reduction, grouping, transport, invariants.
pub fn invariants(f: &SeifertForm, seed: u64) -> Result<(WittReport, AnisotropicDecomposition), SeifertError> {
    let d = isotypic_group(&witt_reduce(f, seed)?);
    Ok((report_for_decomposition(&d)?, d))
}
