//! Composition structure of Seifert modules and reduction of a form to an
//! orthogonal sum of forms on simple modules.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::arith::factor::irreducible_factors;
use crate::arith::{characteristic_polynomial, fmt_rat, minimal_polynomial, rat, QMatrix, QPoly, Rat, Subspace};
use crate::endo::endomorphism_ring_unchecked;
use crate::error::SeifertError;
use crate::seifert::{hom_space, induced_form_on_subquotient, SeifertForm, SeifertModule, Submodule};

/// Data certifying that a module has no proper nonzero submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityWitness {
    /// Algebra element a and irreducible factor p of its minimal polynomial.
    pub element: QMatrix,
    pub factor: QPoly,
    /// Vector of ker p(a) that spins the module.
    pub vector: Vec<Rat>,
    /// Vector of ker p(a^T) that spins the dual representation.
    pub dual_vector: Vec<Rat>,
    /// dim ker p(a); equals deg p, or dim End when End was used.
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple(IrreducibilityWitness),
    NotSimple(Subspace),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple(_))
    }
}

const MEATAXE_TRIES: usize = 80;

fn random_element<R: Rng>(m: &SeifertModule, rng: &mut R) -> QMatrix {
    let gens = m.generators();
    let n = m.dim();
    let mut a = QMatrix::zeros(n, n);
    let terms = rng.gen_range(2..=5);
    for _ in 0..terms {
        let len = rng.gen_range(1..=3);
        let mut w = gens[rng.gen_range(0..gens.len())].clone();
        for _ in 1..len {
            w = &w * gens[rng.gen_range(0..gens.len())];
        }
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        a = &a + &w.scale(&rat(c));
    }
    a
}

fn transposed(m: &SeifertModule) -> SeifertModule {
    SeifertModule { s: m.s.transpose(), proj: m.proj.iter().map(|e| e.transpose()).collect(), ..m.clone() }
}

/// Kernel of some nonzero non-invertible endomorphism, if the centralizer
/// exposes one.
fn endomorphism_kernel(m: &SeifertModule) -> Option<Subspace> {
    let e = endomorphism_ring_unchecked(m);
    if e.dim() == 1 {
        return None;
    }
    for x in e.basis.iter() {
        for p in irreducible_factors(&minimal_polynomial(x)) {
            let y = p.eval_matrix(x);
            if !y.is_zero() {
                let k = Subspace::kernel_of(&y);
                if !k.is_zero() {
                    return Some(k);
                }
            }
        }
    }
    None
}

/// Randomised irreducibility test over Q.
///
/// A factor p of minpoly(a) is usable when every nonzero vector of
/// N = ker p(a) spins the module: either dim N = deg p, or End is a division
/// algebra acting transitively on N. Then spins from N and from
/// ker p(a^T) in the transposed representation decide simplicity.
pub fn is_simple<R: Rng>(m: &SeifertModule, rng: &mut R) -> Result<Simplicity, SeifertError> {
    let n = m.dim();
    if n == 0 {
        return Err(SeifertError::ZeroModule);
    }
    if n == 1 {
        let v = vec![rat(1)];
        return Ok(Simplicity::Simple(IrreducibilityWitness {
            element: m.s.clone(),
            factor: QPoly::linear_root(&m.s[(0, 0)]),
            vector: v.clone(),
            dual_vector: v,
            kernel_dim: 1,
        }));
    }
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = rat(1);
        let w = m.spin(&[e]);
        if !w.is_full() {
            return Ok(Simplicity::NotSimple(w));
        }
    }
    let mt = transposed(m);
    let mut centralizer: Option<(usize, Option<bool>)> = None;
    for _ in 0..MEATAXE_TRIES {
        let a = random_element(m, rng);
        for p in irreducible_factors(&minimal_polynomial(&a)) {
            let nspace = Subspace::kernel_of(&p.eval_matrix(&a));
            let v = nspace.basis_vectors().swap_remove(0);
            let w = m.spin(std::slice::from_ref(&v));
            if !w.is_full() {
                return Ok(Simplicity::NotSimple(w));
            }
            let good = if nspace.dim() == p.deg() {
                true
            } else {
                let (cdim, division) = *centralizer.get_or_insert_with(|| {
                    let e = endomorphism_ring_unchecked(m);
                    (e.dim(), e.is_division_algebra())
                });
                if division == Some(false) {
                    if let Some(k) = endomorphism_kernel(m) {
                        return Ok(Simplicity::NotSimple(k));
                    }
                }
                division == Some(true) && cdim == nspace.dim()
            };
            if !good {
                continue;
            }
            let dual_space = Subspace::kernel_of(&p.eval_matrix(&a.transpose()));
            let u = dual_space.basis_vectors().swap_remove(0);
            let wt = mt.spin(std::slice::from_ref(&u));
            if !wt.is_full() {
                return Ok(Simplicity::NotSimple(wt.annihilator()));
            }
            return Ok(Simplicity::Simple(IrreducibilityWitness {
                element: a,
                factor: p,
                vector: v,
                dual_vector: u,
                kernel_dim: nspace.dim(),
            }));
        }
    }
    if let Some(k) = endomorphism_kernel(m) {
        return Ok(Simplicity::NotSimple(k));
    }
    Err(SeifertError::Unsupported("irreducibility could not be certified".into()))
}

/// A simple submodule, found by descending through proper submodules.
pub fn find_simple_submodule<R: Rng>(v: &SeifertModule, rng: &mut R) -> Result<Submodule, SeifertError> {
    if v.dim() == 0 {
        return Err(SeifertError::ZeroModule);
    }
    let mut cur = v.clone();
    let mut basis = QMatrix::identity(v.dim());
    loop {
        match is_simple(&cur, rng)? {
            Simplicity::Simple(_) => break,
            Simplicity::NotSimple(w) => {
                basis = &basis * &w.basis_matrix();
                cur = cur.submodule(w)?.module;
            }
        }
    }
    v.submodule(Subspace::column_space(&basis))
}

/// Chain 0 = V_0 < V_1 < ... < V_s = V with simple quotients.
pub fn composition_series<R: Rng>(v: &SeifertModule, rng: &mut R) -> Result<Vec<Subspace>, SeifertError> {
    let n = v.dim();
    let mut chain = vec![Subspace::zero(n)];
    if n == 0 {
        return Ok(chain);
    }
    let l = find_simple_submodule(v, rng)?.space;
    let q = v.quotient(&l)?;
    let upper = composition_series(&q.module, rng)?;
    for sub in upper {
        chain.push(v.preimage(&l, &q, &sub));
    }
    Ok(chain)
}

/// Simple modules with one or more forms each. Within a piece every form
/// lives on `module`; `witnesses[k]` maps `module` isomorphically onto the
/// module the k-th form came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub module: SeifertModule,
    pub forms: Vec<SeifertForm>,
    pub witnesses: Vec<QMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnisotropicDecomposition {
    pub zeta: i8,
    pub mu: usize,
    pub seed: u64,
    pub pieces: Vec<Piece>,
    pub log: Vec<String>,
}

impl AnisotropicDecomposition {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Orthogonal sum of every form, Witt equivalent to the input.
    pub fn total_form(&self) -> Option<SeifertForm> {
        let mut out: Option<SeifertForm> = None;
        for p in &self.pieces {
            for f in &p.forms {
                out = Some(match out {
                    None => f.clone(),
                    Some(g) => g.direct_sum(f).ok()?,
                });
            }
        }
        out
    }
}

/// One reduction move on a nonzero form.
#[derive(Clone, Debug)]
pub enum ReductionStep {
    /// phi is nonzero on the simple L: V = L + L^perp.
    Split { piece: SeifertForm, rest: SeifertForm },
    /// phi vanishes on the simple L: pass to L^perp / L.
    Subquotient { form: SeifertForm, isotropic_dim: usize },
}

pub fn reduction_step<R: Rng>(f: &SeifertForm, rng: &mut R) -> Result<ReductionStep, SeifertError> {
    let l = find_simple_submodule(&f.module, rng)?.space;
    if f.is_isotropic(&l) {
        let sq = induced_form_on_subquotient(f, &l)?;
        Ok(ReductionStep::Subquotient { form: sq.form, isotropic_dim: l.dim() })
    } else {
        let piece = f.restrict(&l)?;
        let rest = f.restrict(&f.perp(&l))?;
        Ok(ReductionStep::Split { piece, rest })
    }
}

/// Coordinate classes coupled by a nonzero entry of s, some e_i or phi.
fn coupled_components(f: &SeifertForm) -> Vec<Vec<usize>> {
    let n = f.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let mats = f.module.generators().into_iter().chain(std::iter::once(&f.phi));
    for m in mats {
        for i in 0..n {
            for j in 0..n {
                if !m[(i, j)].is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups
}

/// Seed for a summand, unchanged when phi is negated so that f and -f
/// reduce along the same path.
fn component_seed(seed: u64, f: &SeifertForm) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    let flip = f.phi.data().iter().find(|x| !x.is_zero()).is_some_and(|x| *x < Rat::zero());
    let mut write = |m: &QMatrix| {
        for x in m.data() {
            h.update(fmt_rat(x).as_bytes());
            h.update(b",");
        }
        h.update(b";");
    };
    for g in f.module.generators() {
        write(g);
    }
    write(&if flip { -&f.phi } else { f.phi.clone() });
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}

fn negated_pair(a: &SeifertForm, b: &SeifertForm) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    if a.module == b.module {
        return b.phi == -&a.phi;
    }
    // Simple modules: any nonzero hom is an isomorphism.
    let homs = hom_space(&a.module, &b.module);
    homs.first().is_some_and(|t| b.gram_on(t) == -&a.phi)
}

/// Reduce a nonsingular form to simple pieces with nonsingular restrictions.
pub fn witt_reduce(f: &SeifertForm, seed: u64) -> Result<AnisotropicDecomposition, SeifertError> {
    if f.phi.det().is_zero() {
        return Err(SeifertError::SingularForm);
    }
    let mut log = vec![format!("seed {seed}")];
    let comps = coupled_components(f);
    let mut raw: Vec<SeifertForm> = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let vecs: Vec<Vec<Rat>> = comp
            .iter()
            .map(|&i| (0..f.dim()).map(|j| rat((i == j) as i64)).collect())
            .collect();
        let mut g = f.restrict(&Subspace::span(f.dim(), &vecs))?;
        let cs = component_seed(seed, &g);
        log.push(format!("component {ci}: coordinates {comp:?}, stream {cs:016x}"));
        let mut rng = ChaCha8Rng::seed_from_u64(cs);
        while g.dim() > 0 {
            match reduction_step(&g, &mut rng)? {
                ReductionStep::Split { piece, rest } => {
                    log.push(format!("split off simple of dim {}, {} left", piece.dim(), rest.dim()));
                    raw.push(piece);
                    g = rest;
                }
                ReductionStep::Subquotient { form, isotropic_dim } => {
                    log.push(format!(
                        "isotropic simple of dim {isotropic_dim}: pass to L^perp/L of dim {}",
                        form.dim()
                    ));
                    g = form;
                }
            }
        }
    }
    let mut alive = vec![true; raw.len()];
    for i in 0..raw.len() {
        if !alive[i] {
            continue;
        }
        for j in i + 1..raw.len() {
            if alive[j] && negated_pair(&raw[i], &raw[j]) {
                alive[i] = false;
                alive[j] = false;
                log.push(format!("cancel hyperbolic pair ({i}, {j})"));
                break;
            }
        }
    }
    let pieces = raw
        .into_iter()
        .zip(alive)
        .filter(|(_, a)| *a)
        .map(|(form, _)| Piece {
            module: form.module.clone(),
            witnesses: vec![QMatrix::identity(form.dim())],
            forms: vec![form],
        })
        .collect();
    Ok(AnisotropicDecomposition { zeta: f.zeta, mu: f.module.mu, seed, pieces, log })
}

/// Isomorphism-invariant sort key of a module.
fn module_key(m: &SeifertModule) -> (usize, Vec<String>) {
    let mut k = vec![characteristic_polynomial(&m.s).to_string()];
    for e in &m.proj {
        k.push(characteristic_polynomial(&(&(e * &m.s) * e)).to_string());
    }
    (m.dim(), k)
}

/// Merge pieces on isomorphic simples, moving every form onto the first
/// module of its class.
pub fn isotypic_group(d: &AnisotropicDecomposition) -> AnisotropicDecomposition {
    let mut groups: Vec<Piece> = Vec::new();
    let mut log = d.log.clone();
    for p in &d.pieces {
        let mut placed = false;
        for g in groups.iter_mut() {
            if g.module.dim() != p.module.dim() {
                continue;
            }
            let t = if g.module == p.module {
                Some(QMatrix::identity(p.module.dim()))
            } else {
                hom_space(&g.module, &p.module).into_iter().next()
            };
            if let Some(t) = t {
                for (f, w) in p.forms.iter().zip(&p.witnesses) {
                    let phi = f.gram_on(&t);
                    g.forms.push(SeifertForm { module: g.module.clone(), phi, ..f.clone() });
                    g.witnesses.push(w * &t);
                }
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(p.clone());
        }
    }
    groups.sort_by_cached_key(|g| module_key(&g.module));
    log.push(format!(
        "isotypic groups: {:?}",
        groups.iter().map(|g| (g.module.dim(), g.forms.len())).collect::<Vec<_>>()
    ));
    AnisotropicDecomposition { pieces: groups, log, ..d.clone() }
}
