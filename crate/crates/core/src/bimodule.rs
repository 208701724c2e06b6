//! Bimodules, tensor products over an algebra, and k-linear duality.

use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::field::Scalar;
use crate::matrix::{Matrix, Subspace};
use crate::module::{hom_space_matrices, HomBasis, ModuleError, RightModule};

struct BimoduleRepr<F: Scalar> {
    left: Algebra<F>,
    right: Algebra<F>,
    dim: usize,
    left_action: Vec<Matrix<F>>,
    right_action: Vec<Matrix<F>>,
}

/// An `(R, S)`-bimodule: left `R`-action and right `S`-action commuting.
#[derive(Clone)]
pub struct Bimodule<F: Scalar>(Arc<BimoduleRepr<F>>);

impl<F: Scalar> PartialEq for Bimodule<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.left == other.0.left
                && self.0.right == other.0.right
                && self.0.left_action == other.0.left_action
                && self.0.right_action == other.0.right_action)
    }
}

impl<F: Scalar> fmt::Debug for Bimodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule(dim={})", self.0.dim)
    }
}

impl<F: Scalar> Bimodule<F> {
    pub fn new(
        left: Algebra<F>,
        right: Algebra<F>,
        dim: usize,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        let b = Bimodule(Arc::new(BimoduleRepr {
            left,
            right,
            dim,
            left_action,
            right_action,
        }));
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let r = &self.0.left;
        let s = &self.0.right;
        let dim = self.0.dim;
        if self.0.left_action.len() != r.dim() || self.0.right_action.len() != s.dim() {
            return Err(ModuleError::NotAModule(
                "wrong number of action matrices".into(),
            ));
        }
        if self
            .0
            .left_action
            .iter()
            .chain(&self.0.right_action)
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(ModuleError::NotAModule("action matrix shape".into()));
        }
        if self.left_action_of(r.unit()) != Matrix::identity(dim)
            || self.right_action_of(s.unit()) != Matrix::identity(dim)
        {
            return Err(ModuleError::NotAModule("unit does not act as identity".into()));
        }
        // left action covariant: λ(ab) = λ(a)·λ(b)
        for i in 0..r.dim() {
            for j in 0..r.dim() {
                let mut lhs = Matrix::zeros(dim, dim);
                for (k, c) in r.basis_product(i, j) {
                    lhs = &lhs + &self.0.left_action[*k].scale(c);
                }
                if lhs != self.0.left_action[i].mul(&self.0.left_action[j]) {
                    return Err(ModuleError::NotAModule(format!(
                        "left action not multiplicative at ({i}, {j})"
                    )));
                }
            }
        }
        // right action contravariant: ρ(ab) = ρ(b)·ρ(a)
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let mut lhs = Matrix::zeros(dim, dim);
                for (k, c) in s.basis_product(i, j) {
                    lhs = &lhs + &self.0.right_action[*k].scale(c);
                }
                if lhs != self.0.right_action[j].mul(&self.0.right_action[i]) {
                    return Err(ModuleError::NotAModule(format!(
                        "right action not multiplicative at ({i}, {j})"
                    )));
                }
            }
        }
        // actions commute
        for i in 0..r.dim() {
            for j in 0..s.dim() {
                if self.0.left_action[i].mul(&self.0.right_action[j])
                    != self.0.right_action[j].mul(&self.0.left_action[i])
                {
                    return Err(ModuleError::NotAModule(format!(
                        "left and right actions do not commute at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn left_algebra(&self) -> &Algebra<F> {
        &self.0.left
    }

    pub fn right_algebra(&self) -> &Algebra<F> {
        &self.0.right
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn left_action(&self, i: usize) -> &Matrix<F> {
        &self.0.left_action[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix<F> {
        &self.0.right_action[i]
    }

    pub fn left_action_of(&self, v: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.0.dim, self.0.dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.0.left_action[i].scale(c);
            }
        }
        m
    }

    pub fn right_action_of(&self, v: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.0.dim, self.0.dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.0.right_action[i].scale(c);
            }
        }
        m
    }

    pub fn zero(left: Algebra<F>, right: Algebra<F>) -> Self {
        let left_action = (0..left.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        let right_action = (0..right.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        Bimodule(Arc::new(BimoduleRepr {
            left,
            right,
            dim: 0,
            left_action,
            right_action,
        }))
    }

    /// The regular `(A, A)`-bimodule `A`.
    pub fn regular(a: &Algebra<F>) -> Self {
        let left_action = (0..a.dim())
            .map(|i| a.left_mult_matrix(&a.basis_vector(i)))
            .collect();
        let right_action = (0..a.dim())
            .map(|i| a.right_mult_matrix(&a.basis_vector(i)))
            .collect();
        Bimodule(Arc::new(BimoduleRepr {
            left: a.clone(),
            right: a.clone(),
            dim: a.dim(),
            left_action,
            right_action,
        }))
    }

    /// k-linear dual `D(M) = Hom_k(M, k)`: an `(S, R)`-bimodule whose
    /// action matrices are the transposes of the originals.
    pub fn dual(&self) -> Bimodule<F> {
        let left_action = self.0.right_action.iter().map(|m| m.transpose()).collect();
        let right_action = self.0.left_action.iter().map(|m| m.transpose()).collect();
        Bimodule(Arc::new(BimoduleRepr {
            left: self.0.right.clone(),
            right: self.0.left.clone(),
            dim: self.0.dim,
            left_action,
            right_action,
        }))
    }

    /// Forgets the left action: `M` as a right `S`-module.
    pub fn as_right_module(&self) -> RightModule<F> {
        RightModule::new(
            self.0.right.clone(),
            self.0.dim,
            self.0.right_action.clone(),
        )
        .expect("bimodule right action is a module action")
    }

    /// `D(M)` as a right `R`-module (right action by precomposition
    /// with the original left action).
    pub fn dual_as_right_module(&self) -> RightModule<F> {
        self.dual().as_right_module()
    }
}

/// `X ⊗_R M` for a right `R`-module `X` and an `(R, S)`-bimodule `M`,
/// presented as a quotient of `X ⊗_k M`.
///
/// Flattening convention: the pure tensor `x_i ⊗ m_j` sits at coordinate
/// `i·dim(M) + j`, so a map `α ⊗ id_M` acts by `kron(α, I)`.
pub struct TensorProduct<F: Scalar> {
    /// the quotient as a right `S`-module
    pub module: RightModule<F>,
    /// projection `X ⊗_k M → X ⊗_R M` (surjection data)
    pub projection: Matrix<F>,
    /// section picking the canonical representatives (non-pivot tensors)
    pub section: Matrix<F>,
    /// the balancing relation span
    pub relations: Subspace<F>,
}

impl<F: Scalar> TensorProduct<F> {
    /// Functorial map `X ⊗_R M → X' ⊗_R M` induced by `α : X → X'`.
    pub fn induced_map(&self, target: &TensorProduct<F>, alpha: &Matrix<F>, mdim: usize) -> Matrix<F> {
        let kron = alpha.kron(&Matrix::identity(mdim));
        target.projection.mul(&kron).mul(&self.section)
    }
}

/// Computes `X ⊗_R M` with the canonical surjection from `X ⊗_k M`.
pub fn tensor_over<F: Scalar>(
    x: &RightModule<F>,
    m: &Bimodule<F>,
) -> Result<TensorProduct<F>, ModuleError> {
    if x.algebra() != m.left_algebra() {
        return Err(ModuleError::AlgebraMismatch);
    }
    let r = m.left_algebra().clone();
    let s = m.right_algebra().clone();
    let (dx, dm) = (x.dim(), m.dim());
    let big = dx * dm;
    // balancing relations (x·r) ⊗ m − x ⊗ (r·m)
    let mut relations = Subspace::new(big);
    for a in 0..r.dim() {
        let rho = x.action(a);
        let lam = m.left_action(a);
        for i in 0..dx {
            for j in 0..dm {
                let mut v = vec![F::zero(); big];
                for u in 0..dx {
                    let c = rho.get(u, i);
                    if !c.is_zero() {
                        v[u * dm + j] = v[u * dm + j].clone() + c.clone();
                    }
                }
                for w in 0..dm {
                    let c = lam.get(w, j);
                    if !c.is_zero() {
                        v[i * dm + w] = v[i * dm + w].clone() - c.clone();
                    }
                }
                relations.insert(&v);
            }
        }
    }
    let complement = relations.complement_indices();
    let qdim = complement.len();
    let mut projection = Matrix::zeros(qdim, big);
    for j in 0..big {
        let mut unit = vec![F::zero(); big];
        unit[j] = F::one();
        for (rr, c) in relations.quotient_coords(&unit).into_iter().enumerate() {
            projection.set(rr, j, c);
        }
    }
    let mut section = Matrix::zeros(big, qdim);
    for (c, &amb) in complement.iter().enumerate() {
        section.set(amb, c, F::one());
    }
    // induced right S-action: s · class(x ⊗ m) = class(x ⊗ m·s)
    let action: Vec<Matrix<F>> = (0..s.dim())
        .map(|b| {
            let op = Matrix::identity(dx).kron(m.right_action(b));
            projection.mul(&op).mul(&section)
        })
        .collect();
    let module = RightModule::new(s, qdim, action)?;
    Ok(TensorProduct {
        module,
        projection,
        section,
        relations,
    })
}

/// `Hom_S(M_S, Y)` as a right `R`-module: `(φ · r)(m) = φ(r·m)`.
///
/// Returns the module together with the underlying Hom basis (maps
/// `M → Y` as matrices).
pub fn hom_module<F: Scalar>(
    m: &Bimodule<F>,
    y: &RightModule<F>,
) -> Result<(RightModule<F>, HomBasis<F>), ModuleError> {
    if y.algebra() != m.right_algebra() {
        return Err(ModuleError::AlgebraMismatch);
    }
    let ms = m.as_right_module();
    let basis = hom_space_matrices(&ms, y)?;
    let hom_basis = HomBasis::new(basis, (y.dim(), m.dim()));
    let r = m.left_algebra().clone();
    let hdim = hom_basis.dim();
    let action: Vec<Matrix<F>> = (0..r.dim())
        .map(|a| {
            let lam = m.left_action(a);
            let mut mat = Matrix::zeros(hdim, hdim);
            for (u, h) in hom_basis.basis.iter().enumerate() {
                let composed = h.mul(lam);
                let coords = hom_basis
                    .coords(&composed)
                    .expect("Hom_S(M, Y) is closed under the right R-action");
                for (v, c) in coords.into_iter().enumerate() {
                    mat.set(v, u, c);
                }
            }
            mat
        })
        .collect();
    let module = RightModule::new(r, hdim, action)?;
    Ok((module, hom_basis))
}
