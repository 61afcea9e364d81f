use num_traits::Zero;

use super::module::{SeifertModule, Violation};
use crate::arith::{QMatrix, Rat, Subspace};
use crate::error::SeifertError;

/// zeta-hermitian form phi(x)(y) = y^T phi x compatible with the module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertForm {
    pub module: SeifertModule,
    pub zeta: i8,
    pub phi: QMatrix,
    pub nonsingular: bool,
}

impl SeifertForm {
    pub fn new(module: SeifertModule, zeta: i8, phi: QMatrix) -> Self {
        SeifertForm { module, zeta, phi, nonsingular: true }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn zeta_rat(&self) -> Rat {
        Rat::from_integer(self.zeta.into())
    }

    pub fn validate(&self) -> Result<(), Violation> {
        self.module.validate()?;
        let n = self.dim();
        if self.phi.rows() != n || self.phi.cols() != n {
            return Err(Violation::Dimension("phi size differs from module".into()));
        }
        if self.zeta != 1 && self.zeta != -1 {
            return Err(Violation::Dimension("zeta must be +1 or -1".into()));
        }
        if self.phi.transpose() != self.phi.scale(&self.zeta_rat()) {
            return Err(Violation::Symmetry);
        }
        for (i, e) in self.module.proj.iter().enumerate() {
            if &self.phi * e != &e.transpose() * &self.phi {
                return Err(Violation::ProjectionCompatibility(i));
            }
        }
        let s = &self.module.s;
        if &self.phi * s != &(&QMatrix::identity(n) - &s.transpose()) * &self.phi {
            return Err(Violation::SCompatibility);
        }
        if self.nonsingular && self.phi.det().is_zero() {
            return Err(Violation::Nonsingular);
        }
        Ok(())
    }

    pub fn neg(&self) -> SeifertForm {
        SeifertForm { phi: -&self.phi, ..self.clone() }
    }

    pub fn direct_sum(&self, o: &SeifertForm) -> Result<SeifertForm, SeifertError> {
        if self.zeta != o.zeta {
            return Err(SeifertError::ZetaMismatch);
        }
        Ok(SeifertForm {
            module: self.module.direct_sum(&o.module)?,
            zeta: self.zeta,
            phi: QMatrix::block_diag(&[&self.phi, &o.phi]),
            nonsingular: self.nonsingular && o.nonsingular,
        })
    }

    /// Gram matrix of the form on the columns of `b`: b^T phi b.
    pub fn gram_on(&self, b: &QMatrix) -> QMatrix {
        &(&b.transpose() * &self.phi) * b
    }

    pub fn is_isotropic(&self, l: &Subspace) -> bool {
        self.gram_on(&l.basis_matrix()).is_zero()
    }

    /// L^perp = {y : phi(x)(y) = 0 for x in L}.
    pub fn perp(&self, l: &Subspace) -> Subspace {
        if l.is_zero() {
            return Subspace::full(self.dim());
        }
        let rows = (&self.phi * &l.basis_matrix()).transpose();
        Subspace::kernel_of(&rows)
    }

    /// Restriction to a submodule, in its echelon coordinates.
    pub fn restrict(&self, w: &Subspace) -> Result<SeifertForm, SeifertError> {
        let sub = self.module.submodule(w.clone())?;
        let phi = self.gram_on(&sub.inclusion);
        Ok(SeifertForm { module: sub.module, zeta: self.zeta, phi, nonsingular: self.nonsingular })
    }

    /// Move the form along x -> p x.
    pub fn conjugate(&self, p: &QMatrix) -> SeifertForm {
        let pi = p.inverse().expect("invertible change of basis");
        SeifertForm {
            module: self.module.conjugate(p),
            zeta: self.zeta,
            phi: &(&pi.transpose() * &self.phi) * &pi,
            nonsingular: self.nonsingular,
        }
    }
}

/// Induced form on L^perp / L together with the maps used to build it.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub form: SeifertForm,
    pub perp: Subspace,
    /// Ambient n x d matrix whose columns represent the basis of L^perp/L.
    pub section: QMatrix,
}

pub fn induced_form_on_subquotient(f: &SeifertForm, l: &Subspace) -> Result<Subquotient, SeifertError> {
    if !f.module.is_submodule(l) {
        return Err(SeifertError::NotInvariant);
    }
    if !f.is_isotropic(l) {
        return Err(SeifertError::NotIsotropic);
    }
    let perp = f.perp(l);
    let psub = f.module.submodule(perp.clone())?;
    let l_in_perp = Subspace::span(perp.dim(), &l.basis_vectors().iter().map(|v| perp.coords(v)).collect::<Vec<_>>());
    let q = psub.module.quotient(&l_in_perp)?;
    let section = &psub.inclusion * &q.section;
    let phi = f.gram_on(&section);
    let form = SeifertForm { module: q.module, zeta: f.zeta, phi, nonsingular: f.nonsingular };
    Ok(Subquotient { form, perp, section })
}
