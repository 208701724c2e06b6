//! Right modules over a finite-dimensional algebra and the exact Hom
//! machinery between them.
//!
//! Convention, fixed project-wide and tested: module elements are column
//! vectors and the right action of an algebra element `a` is the matrix
//! `ρ(a)` applied on the left, so `ρ(ab) = ρ(b)·ρ(a)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::field::Scalar;
use crate::matrix::{ColumnSolver, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

struct ModuleRepr<F: Scalar> {
    algebra: Algebra<F>,
    dim: usize,
    action: Vec<Matrix<F>>,
}

/// A right module; cheap to clone (shared representation).
#[derive(Clone)]
pub struct RightModule<F: Scalar>(Arc<ModuleRepr<F>>);

impl<F: Scalar> PartialEq for RightModule<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.algebra == other.0.algebra
                && self.0.action == other.0.action)
    }
}

impl<F: Scalar> fmt::Debug for RightModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightModule(dim={})", self.0.dim)
    }
}

impl<F: Scalar> RightModule<F> {
    pub fn new(
        algebra: Algebra<F>,
        dim: usize,
        action: Vec<Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        if action.len() != algebra.dim() {
            return Err(ModuleError::NotAModule(format!(
                "expected {} action matrices, got {}",
                algebra.dim(),
                action.len()
            )));
        }
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModuleError::NotAModule(format!(
                    "action matrix is {}×{}, module dimension is {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let module = RightModule(Arc::new(ModuleRepr {
            algebra,
            dim,
            action,
        }));
        module.validate()?;
        Ok(module)
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let a = &self.0.algebra;
        if self.action_of(a.unit()) != Matrix::identity(self.0.dim) {
            return Err(ModuleError::NotAModule("unit does not act as identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                // ρ(b_i·b_j) = ρ(b_j)·ρ(b_i)
                let mut lhs = Matrix::zeros(self.0.dim, self.0.dim);
                for (k, c) in a.basis_product(i, j) {
                    lhs = &lhs + &self.0.action[*k].scale(c);
                }
                let rhs = self.0.action[j].mul(&self.0.action[i]);
                if lhs != rhs {
                    return Err(ModuleError::NotAModule(format!(
                        "action is not multiplicative at basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.0.algebra
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn action(&self, basis_index: usize) -> &Matrix<F> {
        &self.0.action[basis_index]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.0.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, v: &[F]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.0.dim, self.0.dim);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            m = &m + &self.0.action[i].scale(c);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.dim == 0
    }

    pub fn zero(algebra: Algebra<F>) -> Self {
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        RightModule(Arc::new(ModuleRepr {
            algebra,
            dim: 0,
            action,
        }))
    }

    /// The right regular module `A_A`.
    pub fn regular(algebra: Algebra<F>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.right_mult_matrix(&algebra.basis_vector(i)))
            .collect();
        RightModule(Arc::new(ModuleRepr {
            dim: algebra.dim(),
            algebra,
            action,
        }))
    }

    pub fn direct_sum(modules: &[RightModule<F>]) -> Result<Self, ModuleError> {
        let Some(first) = modules.first() else {
            panic!("direct sum of an empty list needs an algebra; use zero()");
        };
        let algebra = first.algebra().clone();
        if modules.iter().any(|m| *m.algebra() != algebra) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let dim = modules.iter().map(|m| m.dim()).sum();
        let action = (0..algebra.dim())
            .map(|i| {
                let mut m = Matrix::zeros(0, 0);
                for module in modules {
                    m = m.direct_sum(module.action(i));
                }
                debug_assert_eq!(m.rows(), dim);
                m
            })
            .collect();
        Ok(RightModule(Arc::new(ModuleRepr {
            algebra,
            dim,
            action,
        })))
    }

    /// Submodule spanned by `generators` (closed up under the action),
    /// with the inclusion matrix into `self`.
    pub fn submodule(&self, generators: &[Vec<F>]) -> (RightModule<F>, Matrix<F>) {
        let a = &self.0.algebra;
        let mut span = Subspace::new(self.0.dim);
        let mut queue: Vec<Vec<F>> = Vec::new();
        for g in generators {
            if span.insert(g) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for i in 0..a.dim() {
                let w = self.0.action[i].mul_vec(&v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        let basis: Vec<Vec<F>> = span.basis().to_vec();
        let sdim = basis.len();
        let inclusion =
            Matrix::from_rows(basis.clone()).transpose();
        let solver = ColumnSolver::new(&inclusion);
        let action = (0..a.dim())
            .map(|i| {
                let mut m = Matrix::zeros(sdim, sdim);
                for (c, b) in basis.iter().enumerate() {
                    let img = self.0.action[i].mul_vec(b);
                    let coords = solver.coords(&img).expect("closed under the action");
                    for (r, x) in coords.into_iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        (
            RightModule(Arc::new(ModuleRepr {
                algebra: a.clone(),
                dim: sdim,
                action,
            })),
            inclusion,
        )
    }

    /// Quotient by the submodule spanned by `generators`, with the
    /// projection matrix.
    pub fn quotient(&self, generators: &[Vec<F>]) -> (RightModule<F>, Matrix<F>) {
        let (sub, inclusion) = self.submodule(generators);
        let cols: Vec<Vec<F>> = (0..sub.dim()).map(|c| inclusion.column(c)).collect();
        let span = Subspace::from_vectors(self.0.dim, cols.iter().map(|v| v.as_slice()));
        let complement = span.complement_indices();
        let qdim = complement.len();
        let mut projection = Matrix::zeros(qdim, self.0.dim);
        for j in 0..self.0.dim {
            let mut unit = vec![F::zero(); self.0.dim];
            unit[j] = F::one();
            for (r, x) in span.quotient_coords(&unit).into_iter().enumerate() {
                projection.set(r, j, x);
            }
        }
        let a = &self.0.algebra;
        let action = (0..a.dim())
            .map(|i| {
                let mut m = Matrix::zeros(qdim, qdim);
                for (c, &amb) in complement.iter().enumerate() {
                    for (r, x) in span
                        .quotient_coords(&self.0.action[i].column(amb))
                        .into_iter()
                        .enumerate()
                    {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        (
            RightModule(Arc::new(ModuleRepr {
                algebra: a.clone(),
                dim: qdim,
                action,
            })),
            projection,
        )
    }

    /// Indecomposable projective `e_i·A`, with its basis inside `A`.
    pub fn indecomposable_projective(
        algebra: &Algebra<F>,
        idempotent_index: usize,
    ) -> (RightModule<F>, Matrix<F>) {
        let regular = RightModule::regular(algebra.clone());
        let e = &algebra.idempotents()[idempotent_index];
        let gens: Vec<Vec<F>> = (0..algebra.dim())
            .map(|j| algebra.mul_vec(e, &algebra.basis_vector(j)))
            .collect();
        regular.submodule(&gens)
    }

    /// Simple module at an idempotent: top of the projective.
    pub fn simple(algebra: &Algebra<F>, idempotent_index: usize) -> Result<RightModule<F>, ModuleError> {
        let (proj, _) = Self::indecomposable_projective(algebra, idempotent_index);
        let rad = algebra.radical()?;
        let mut gens = Vec::new();
        for r in rad {
            let rho = proj.action_of(r);
            for c in 0..proj.dim() {
                gens.push(rho.column(c));
            }
        }
        let (quot, _) = proj.quotient(&gens);
        Ok(quot)
    }

    /// `x · a` for a module element and algebra element.
    pub fn apply(&self, x: &[F], a: &[F]) -> Vec<F> {
        self.action_of(a).mul_vec(x)
    }
}

/// A homomorphism of right modules, stored as the matrix sending source
/// coordinates to target coordinates.
#[derive(Clone)]
pub struct ModuleHom<F: Scalar> {
    pub source: RightModule<F>,
    pub target: RightModule<F>,
    pub matrix: Matrix<F>,
}

impl<F: Scalar> fmt::Debug for ModuleHom<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleHom({} → {})",
            self.source.dim(),
            self.target.dim()
        )
    }
}

impl<F: Scalar> ModuleHom<F> {
    pub fn new(
        source: RightModule<F>,
        target: RightModule<F>,
        matrix: Matrix<F>,
    ) -> Result<Self, ModuleError> {
        if source.algebra() != target.algebra() {
            return Err(ModuleError::AlgebraMismatch);
        }
        let hom = ModuleHom {
            source,
            target,
            matrix,
        };
        if !hom.is_intertwiner() {
            return Err(ModuleError::NotAModule(
                "matrix does not intertwine the actions".into(),
            ));
        }
        Ok(hom)
    }

    pub fn is_intertwiner(&self) -> bool {
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return false;
        }
        (0..self.source.algebra().dim()).all(|i| {
            self.matrix.mul(self.source.action(i)) == self.target.action(i).mul(&self.matrix)
        })
    }

    pub fn compose(&self, inner: &ModuleHom<F>) -> ModuleHom<F> {
        // (self ∘ inner): first inner, then self
        ModuleHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        }
    }
}

/// Basis of `Hom_A(X, Y)`, solved exactly from the intertwining
/// equations; the order is the deterministic kernel order.
pub fn hom_space<F: Scalar>(
    x: &RightModule<F>,
    y: &RightModule<F>,
) -> Result<Vec<ModuleHom<F>>, ModuleError> {
    Ok(hom_space_matrices(x, y)?
        .into_iter()
        .map(|matrix| ModuleHom {
            source: x.clone(),
            target: y.clone(),
            matrix,
        })
        .collect())
}

/// Raw matrices of a Hom-space basis.
pub fn hom_space_matrices<F: Scalar>(
    x: &RightModule<F>,
    y: &RightModule<F>,
) -> Result<Vec<Matrix<F>>, ModuleError> {
    if x.algebra() != y.algebra() {
        return Err(ModuleError::AlgebraMismatch);
    }
    let (dx, dy) = (x.dim(), y.dim());
    if dx == 0 || dy == 0 {
        return Ok(Vec::new());
    }
    let adim = x.algebra().dim();
    // unknown H (dy × dx) flattened row-major; equations H·ρx(b) = ρy(b)·H
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(adim * dy * dx);
    for b in 0..adim {
        let rx = x.action(b);
        let ry = y.action(b);
        for r in 0..dy {
            for c in 0..dx {
                let mut row = vec![F::zero(); dy * dx];
                for k in 0..dx {
                    let v = rx.get(k, c);
                    if !v.is_zero() {
                        row[r * dx + k] = row[r * dx + k].clone() + v.clone();
                    }
                }
                for k in 0..dy {
                    let v = ry.get(r, k);
                    if !v.is_zero() {
                        row[k * dx + c] = row[k * dx + c].clone() - v.clone();
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(1, dy * dx)
    } else {
        Matrix::from_rows(rows)
    };
    let kernel = system.kernel();
    Ok((0..kernel.cols())
        .map(|c| Matrix::unflatten(dy, dx, kernel.column(c)))
        .collect())
}

/// Expresses matrices in the coordinates of a Hom basis.
pub struct HomBasis<F: Scalar> {
    pub basis: Vec<Matrix<F>>,
    solver: Option<ColumnSolver<F>>,
    shape: (usize, usize),
}

impl<F: Scalar> HomBasis<F> {
    pub fn new(basis: Vec<Matrix<F>>, shape: (usize, usize)) -> Self {
        let solver = if basis.is_empty() {
            None
        } else {
            let cols: Vec<Vec<F>> = basis.iter().map(|m| m.flatten()).collect();
            Some(ColumnSolver::new(
                &Matrix::from_rows(cols).transpose(),
            ))
        };
        HomBasis {
            basis,
            solver,
            shape,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a hom matrix in this basis; `None` if outside.
    pub fn coords(&self, m: &Matrix<F>) -> Option<Vec<F>> {
        assert_eq!((m.rows(), m.cols()), self.shape);
        match &self.solver {
            Some(s) => s.coords(&m.flatten()),
            None => {
                if m.is_zero() {
                    Some(Vec::new())
                } else {
                    None
                }
            }
        }
    }

    pub fn combination(&self, coords: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.shape.0, self.shape.1);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            out = &out + &b.scale(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn regular_module_convention() {
        // the fixed convention test: ρ(ab) = ρ(b)∘ρ(a) on the regular module
        let a = fixtures::f4();
        let reg = RightModule::regular(a.clone());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = a.mul_vec(&a.basis_vector(i), &a.basis_vector(j));
                assert_eq!(
                    reg.action_of(&prod),
                    reg.action(j).mul(reg.action(i)),
                    "convention violated at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn end_of_regular_f1_is_two_dimensional() {
        let a = fixtures::f1();
        let reg = RightModule::regular(a);
        let homs = hom_space(&reg, &reg).unwrap();
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn hom_f5_into_regular_f2_is_socle() {
        let f2 = fixtures::f2();
        let f5 = fixtures::f5();
        let reg = RightModule::regular(f2);
        let homs = hom_space(&f5, &reg).unwrap();
        assert_eq!(homs.len(), 1);
    }

    #[test]
    fn distinct_simples_have_no_homs() {
        let a = fixtures::f4();
        let s1 = RightModule::simple(&a, 0).unwrap();
        let s2 = RightModule::simple(&a, 1).unwrap();
        assert_eq!(s1.dim(), 1);
        assert_eq!(s2.dim(), 1);
        assert!(hom_space(&s1, &s2).unwrap().is_empty());
    }

    #[test]
    fn free_hom_dimension() {
        // Hom(A_A, X) ≅ X for the regular module
        let a = fixtures::f2();
        let reg = RightModule::regular(a.clone());
        let f5 = fixtures::f5();
        assert_eq!(hom_space(&reg, &f5).unwrap().len(), f5.dim());
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), reg.dim());
    }

    #[test]
    fn projectives_of_f4() {
        let a = fixtures::f4();
        let (p1, _) = RightModule::indecomposable_projective(&a, 0);
        let (p2, _) = RightModule::indecomposable_projective(&a, 1);
        assert_eq!(p1.dim(), 2);
        assert_eq!(p2.dim(), 1);
    }

    #[test]
    fn submodule_quotient_dims() {
        let a = fixtures::f2();
        let reg = RightModule::regular(a.clone());
        let rad = a.radical().unwrap().to_vec();
        let (sub, _) = reg.submodule(&rad);
        assert_eq!(sub.dim(), 2);
        let (quot, proj) = reg.quotient(&rad);
        assert_eq!(quot.dim(), 1);
        assert_eq!(proj.rows(), 1);
    }
}
