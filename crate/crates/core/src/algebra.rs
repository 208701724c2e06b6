//! Finite-dimensional associative unital algebras presented by structure
//! constants, with a distinguished complete set of primitive orthogonal
//! idempotents.
//!
//! Construction validates everything it claims: associativity and unit
//! laws on all basis triples, idempotent laws, and primitivity of each
//! idempotent (the corner `eAe` must be local with a codimension-one
//! radical, i.e. the algebra is split basic).
//!
//! The radical is computed as the kernel of the trace form
//! `T(x, y) = trace(L_x ∘ L_y)` and then *certified*: the kernel must be
//! a nilpotent two-sided ideal. Since `rad A` is always contained in the
//! trace-form kernel, and any nilpotent ideal is contained in `rad A`,
//! a successful certificate pins the radical exactly — over any field.
//! Over the rationals the certificate cannot fail; over a prime field it
//! can (degenerate trace form), in which case the computation refuses
//! rather than guessing.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::field::Scalar;
use crate::matrix::{ColumnSolver, Matrix, Subspace};
use crate::quiver::QuiverPresentation;

/// Sparse coordinate vector: `(basis index, coefficient)` pairs.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn to_sparse<F: Scalar>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Scalar>(dim: usize, v: &SparseVec<F>) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("inconsistent structure constant tables: {0}")]
    Inconsistent(String),
    #[error("associativity fails at basis triple ({i}, {j}, {l})")]
    AssociativityViolation { i: usize, j: usize, l: usize },
    #[error("unit law fails at basis element {index}")]
    UnitViolation { index: usize },
    #[error("idempotent violation at index {index}: {detail}")]
    IdempotentViolation { index: usize, detail: String },
    #[error("unsupported field for radical computation: {0}")]
    UnsupportedField(String),
    #[error("invalid relation in quiver presentation: {0}")]
    InvalidRelation(String),
}

struct AlgebraRepr<F: Scalar> {
    dim: usize,
    labels: Vec<String>,
    unit: Vec<F>,
    /// `mult[i * dim + j]` = sparse coordinates of `b_i · b_j`
    mult: Vec<SparseVec<F>>,
    idempotents: Vec<Vec<F>>,
    quiver: Option<QuiverPresentation<F>>,
    /// basis indices spanning the radical, when known structurally
    /// (quiver algebras: all paths of length ≥ 1)
    radical_hint: Option<Vec<usize>>,
    radical: OnceLock<Result<Vec<Vec<F>>, AlgebraError>>,
}

/// A finite-dimensional algebra; cheap to clone (shared representation).
#[derive(Clone)]
pub struct Algebra<F: Scalar>(Arc<AlgebraRepr<F>>);

impl<F: Scalar> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.unit == other.0.unit
                && self.0.mult == other.0.mult
                && self.0.idempotents == other.0.idempotents)
    }
}

impl<F: Scalar> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra(dim={}, idempotents={}, labels={:?})",
            self.0.dim,
            self.0.idempotents.len(),
            self.0.labels
        )
    }
}

impl<F: Scalar> Algebra<F> {
    /// Validating constructor from raw tables.
    pub fn from_structure_constants(
        labels: Vec<String>,
        unit: Vec<F>,
        mult: Vec<Vec<Vec<F>>>,
        idempotents: Vec<Vec<F>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if unit.len() != dim
            || mult.len() != dim
            || mult.iter().any(|row| row.len() != dim)
            || mult
                .iter()
                .any(|row| row.iter().any(|v| v.len() != dim))
        {
            return Err(AlgebraError::Inconsistent(format!(
                "expected {dim}×{dim} table of length-{dim} vectors"
            )));
        }
        if idempotents.iter().any(|e| e.len() != dim) {
            return Err(AlgebraError::Inconsistent(
                "idempotent vector of wrong length".into(),
            ));
        }
        let sparse = mult
            .iter()
            .flat_map(|row| row.iter().map(|v| to_sparse(v)))
            .collect();
        Self::build(labels, unit, sparse, idempotents, None, None, true)
    }

    /// Shared constructor; `check_primitivity` is off only when the
    /// caller has a structural argument (quiver vertex idempotents).
    pub(crate) fn build(
        labels: Vec<String>,
        unit: Vec<F>,
        mult: Vec<SparseVec<F>>,
        idempotents: Vec<Vec<F>>,
        quiver: Option<QuiverPresentation<F>>,
        radical_hint: Option<Vec<usize>>,
        check_primitivity: bool,
    ) -> Result<Self, AlgebraError> {
        let alg = Algebra(Arc::new(AlgebraRepr {
            dim: labels.len(),
            labels,
            unit,
            mult,
            idempotents,
            quiver,
            radical_hint,
            radical: OnceLock::new(),
        }));
        alg.check_associativity()?;
        alg.check_unit()?;
        alg.check_idempotent_laws()?;
        if check_primitivity {
            alg.check_primitivity()?;
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn unit(&self) -> &[F] {
        &self.0.unit
    }

    pub fn idempotents(&self) -> &[Vec<F>] {
        &self.0.idempotents
    }

    pub fn quiver(&self) -> Option<&QuiverPresentation<F>> {
        self.0.quiver.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.0.mult[i * self.0.dim + j]
    }

    /// Dense structure-constant tables (for serialization).
    pub fn dense_mult_table(&self) -> Vec<Vec<Vec<F>>> {
        (0..self.0.dim)
            .map(|i| {
                (0..self.0.dim)
                    .map(|j| to_dense(self.0.dim, self.basis_product(i, j)))
                    .collect()
            })
            .collect()
    }

    pub fn mul_vec(&self, a: &[F], b: &[F]) -> Vec<F> {
        let dim = self.0.dim;
        let mut out = vec![F::zero(); dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai.clone() * bj.clone();
                for (k, x) in self.basis_product(i, j) {
                    out[*k] = out[*k].clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ v·x` in the algebra basis.
    pub fn left_mult_matrix(&self, v: &[F]) -> Matrix<F> {
        let dim = self.0.dim;
        let mut m: Matrix<F> = Matrix::zeros(dim, dim);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..dim {
                for (k, x) in self.basis_product(i, j) {
                    let cur = m.get(*k, j).clone();
                    m.set(*k, j, cur + vi.clone() * x.clone());
                }
            }
        }
        m
    }

    /// Matrix of `x ↦ x·v` in the algebra basis.
    pub fn right_mult_matrix(&self, v: &[F]) -> Matrix<F> {
        let dim = self.0.dim;
        let mut m: Matrix<F> = Matrix::zeros(dim, dim);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for i in 0..dim {
                for (k, x) in self.basis_product(i, j) {
                    let cur = m.get(*k, i).clone();
                    m.set(*k, i, cur + vj.clone() * x.clone());
                }
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.0.dim];
        v[i] = F::one();
        v
    }

    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let dim = self.0.dim;
        for i in 0..dim {
            for j in 0..dim {
                let m_ij = self.basis_product(i, j).clone();
                for l in 0..dim {
                    let mut lhs = vec![F::zero(); dim];
                    for (c, x) in &m_ij {
                        for (k, y) in self.basis_product(*c, l) {
                            lhs[*k] = lhs[*k].clone() + x.clone() * y.clone();
                        }
                    }
                    let mut rhs = vec![F::zero(); dim];
                    for (c, x) in self.basis_product(j, l) {
                        for (k, y) in self.basis_product(i, *c) {
                            rhs[*k] = rhs[*k].clone() + x.clone() * y.clone();
                        }
                    }
                    if lhs != rhs {
                        return Err(AlgebraError::AssociativityViolation { i, j, l });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        for i in 0..self.0.dim {
            let b = self.basis_vector(i);
            if self.mul_vec(&self.0.unit, &b) != b || self.mul_vec(&b, &self.0.unit) != b {
                return Err(AlgebraError::UnitViolation { index: i });
            }
        }
        Ok(())
    }

    fn check_idempotent_laws(&self) -> Result<(), AlgebraError> {
        let es = &self.0.idempotents;
        if es.is_empty() {
            return Err(AlgebraError::IdempotentViolation {
                index: 0,
                detail: "no idempotents supplied".into(),
            });
        }
        for (i, e) in es.iter().enumerate() {
            if self.mul_vec(e, e) != *e {
                return Err(AlgebraError::IdempotentViolation {
                    index: i,
                    detail: "e² ≠ e".into(),
                });
            }
        }
        for i in 0..es.len() {
            for j in 0..es.len() {
                if i != j && self.mul_vec(&es[i], &es[j]).iter().any(|x| !x.is_zero()) {
                    return Err(AlgebraError::IdempotentViolation {
                        index: i,
                        detail: format!("e_{i}·e_{j} ≠ 0"),
                    });
                }
            }
        }
        let mut sum = vec![F::zero(); self.0.dim];
        for e in es {
            for (s, x) in sum.iter_mut().zip(e) {
                *s = s.clone() + x.clone();
            }
        }
        if sum != self.0.unit {
            return Err(AlgebraError::IdempotentViolation {
                index: 0,
                detail: "idempotents do not sum to the unit".into(),
            });
        }
        Ok(())
    }

    fn check_primitivity(&self) -> Result<(), AlgebraError> {
        for (i, e) in self.0.idempotents.iter().enumerate() {
            let corner = self.corner_algebra(e)?;
            let rad = corner.algebra.radical()?;
            if corner.algebra.dim() - rad.len() != 1 {
                return Err(AlgebraError::IdempotentViolation {
                    index: i,
                    detail: format!(
                        "corner e·A·e is not local: dim {} with radical of dim {}",
                        corner.algebra.dim(),
                        rad.len()
                    ),
                });
            }
        }
        Ok(())
    }

    /// The corner algebra `eAe` for an idempotent `e`, with its basis
    /// expressed in ambient coordinates.
    pub fn corner_algebra(&self, e: &[F]) -> Result<CornerAlgebra<F>, AlgebraError> {
        let dim = self.0.dim;
        let mut span = Subspace::new(dim);
        for j in 0..dim {
            let v = self.mul_vec(e, &self.mul_vec(&self.basis_vector(j), e));
            span.insert(&v);
        }
        let basis: Vec<Vec<F>> = span.basis().to_vec();
        let cdim = basis.len();
        let basis_mat = Matrix::from_rows(basis.clone()).transpose();
        let solver = ColumnSolver::new(&basis_mat);
        let coords = |v: &[F]| -> Result<Vec<F>, AlgebraError> {
            solver.coords(v).ok_or_else(|| {
                AlgebraError::Inconsistent("corner product escapes the corner".into())
            })
        };
        let mut mult = Vec::with_capacity(cdim * cdim);
        for a in 0..cdim {
            for b in 0..cdim {
                let p = self.mul_vec(&basis[a], &basis[b]);
                mult.push(to_sparse(&coords(&p)?));
            }
        }
        let unit = coords(e)?;
        let labels = (0..cdim).map(|k| format!("c{k}")).collect();
        let algebra = Algebra::build(
            labels,
            unit.clone(),
            mult,
            vec![unit],
            None,
            None,
            false,
        )?;
        Ok(CornerAlgebra {
            algebra,
            basis,
        })
    }

    /// Trace of left multiplication by each basis element.
    fn left_mult_traces(&self) -> Vec<F> {
        let dim = self.0.dim;
        (0..dim)
            .map(|c| {
                let mut t = F::zero();
                for j in 0..dim {
                    for (k, x) in self.basis_product(c, j) {
                        if *k == j {
                            t = t + x.clone();
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Basis of the Jacobson radical, certified exactly (see module docs).
    pub fn radical(&self) -> Result<&[Vec<F>], AlgebraError> {
        self.0
            .radical
            .get_or_init(|| self.compute_radical())
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(|e| e.clone())
    }

    pub fn radical_subspace(&self) -> Result<Subspace<F>, AlgebraError> {
        let rad = self.radical()?;
        Ok(Subspace::from_vectors(
            self.0.dim,
            rad.iter().map(|v| v.as_slice()),
        ))
    }

    fn compute_radical(&self) -> Result<Vec<Vec<F>>, AlgebraError> {
        let dim = self.0.dim;
        if let Some(hint) = &self.0.radical_hint {
            let basis: Vec<Vec<F>> = hint.iter().map(|&i| self.basis_vector(i)).collect();
            self.certify_nilpotent_ideal(&basis)?;
            return Ok(basis);
        }
        // kernel of the trace form T(x, y) = tr(L_{xy})
        let traces = self.left_mult_traces();
        let gram = Matrix::from_fn(dim, dim, |a, b| {
            let mut g = F::zero();
            for (c, x) in self.basis_product(a, b) {
                g = g + x.clone() * traces[*c].clone();
            }
            g
        });
        let ker = gram.kernel();
        let basis: Vec<Vec<F>> = (0..ker.cols()).map(|c| ker.column(c)).collect();
        self.certify_nilpotent_ideal(&basis)?;
        // with the certificate in hand the kernel *is* the radical; the
        // semisimple-quotient cross-check below can only fail through a
        // degenerate trace form in positive characteristic
        if !basis.is_empty() && basis.len() < dim {
            self.check_semisimple_quotient(&basis)?;
        }
        Ok(basis)
    }

    fn certify_nilpotent_ideal(&self, basis: &[Vec<F>]) -> Result<(), AlgebraError> {
        if basis.is_empty() {
            return Ok(());
        }
        let dim = self.0.dim;
        let span = Subspace::from_vectors(dim, basis.iter().map(|v| v.as_slice()));
        // two-sided ideal
        for v in basis {
            for j in 0..dim {
                let b = self.basis_vector(j);
                if !span.contains(&self.mul_vec(&b, v)) || !span.contains(&self.mul_vec(v, &b)) {
                    return Err(AlgebraError::UnsupportedField(
                        "trace-form kernel is not a two-sided ideal \
                         (positive characteristic degeneration); supply a quiver presentation"
                            .into(),
                    ));
                }
            }
        }
        // nilpotency: powers of the span must reach zero
        let mut power: Vec<Vec<F>> = basis.to_vec();
        for _ in 0..dim {
            if power.is_empty() {
                return Ok(());
            }
            let mut next = Subspace::new(dim);
            for u in &power {
                for v in basis {
                    next.insert(&self.mul_vec(u, v));
                }
            }
            power = next.basis().to_vec();
        }
        if power.is_empty() {
            Ok(())
        } else {
            Err(AlgebraError::UnsupportedField(
                "trace-form kernel is not nilpotent \
                 (positive characteristic degeneration); supply a quiver presentation"
                    .into(),
            ))
        }
    }

    fn check_semisimple_quotient(&self, rad_basis: &[Vec<F>]) -> Result<(), AlgebraError> {
        let quotient = self.quotient_by_ideal(rad_basis)?;
        let traces = quotient.left_mult_traces();
        let qdim = quotient.dim();
        let gram = Matrix::from_fn(qdim, qdim, |a, b| {
            let mut g = F::zero();
            for (c, x) in quotient.basis_product(a, b) {
                g = g + x.clone() * traces[*c].clone();
            }
            g
        });
        let ker = gram.kernel();
        if ker.cols() == 0 {
            return Ok(());
        }
        // a degenerate quotient form must itself fail the nilpotency
        // certificate (char p); a certified nonzero radical here would
        // contradict the main certificate
        let basis: Vec<Vec<F>> = (0..ker.cols()).map(|c| ker.column(c)).collect();
        match quotient.certify_nilpotent_ideal(&basis) {
            Err(_) => Ok(()),
            Ok(()) => Err(AlgebraError::Inconsistent(
                "radical certificate contradiction in semisimple quotient".into(),
            )),
        }
    }

    /// Quotient algebra by a two-sided ideal given by a spanning set.
    pub fn quotient_by_ideal(&self, ideal: &[Vec<F>]) -> Result<Algebra<F>, AlgebraError> {
        let dim = self.0.dim;
        let span = Subspace::from_vectors(dim, ideal.iter().map(|v| v.as_slice()));
        let complement = span.complement_indices();
        let qdim = complement.len();
        let mut mult = Vec::with_capacity(qdim * qdim);
        for &a in &complement {
            for &b in &complement {
                let p = self.mul_vec(&self.basis_vector(a), &self.basis_vector(b));
                mult.push(to_sparse(&span.quotient_coords(&p)));
            }
        }
        let unit = span.quotient_coords(&self.0.unit);
        let labels = complement
            .iter()
            .map(|&c| self.0.labels[c].clone())
            .collect();
        Algebra::build(labels, unit.clone(), mult, vec![unit], None, None, false)
    }
}

/// Corner `eAe` together with its basis in ambient coordinates.
pub struct CornerAlgebra<F: Scalar> {
    pub algebra: Algebra<F>,
    pub basis: Vec<Vec<F>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rat;

    #[test]
    fn f1_valid_with_one_idempotent() {
        let a = fixtures::f1();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.idempotents().len(), 1);
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 1);
        // rad F1 = span{x}
        assert_eq!(rad[0], vec![Rat::from_int(0), Rat::from_int(1)]);
    }

    #[test]
    fn f2_radical() {
        let a = fixtures::f2();
        assert_eq!(a.dim(), 3);
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 2);
    }

    #[test]
    fn split_idempotent_rejected() {
        // k[x]/(x² − 1) over Q is k×k; claiming {1} primitive must fail
        let labels = vec!["1".to_string(), "x".to_string()];
        let one = vec![Rat::from_int(1), Rat::from_int(0)];
        let x = vec![Rat::from_int(0), Rat::from_int(1)];
        let mult = vec![
            vec![one.clone(), x.clone()],
            vec![x.clone(), one.clone()], // x² = 1
        ];
        let err = Algebra::from_structure_constants(labels, one.clone(), mult, vec![one])
            .unwrap_err();
        match err {
            AlgebraError::IdempotentViolation { .. } => {}
            other => panic!("expected IdempotentViolation, got {other:?}"),
        }
    }

    #[test]
    fn associativity_violation_named() {
        // basis (1, x, y) with x² = y, x·y = 1, y·x = 0:
        // (x·x)·x = y·x = 0 but x·(x·x) = x·y = 1
        let e = |i: usize| {
            let mut v = vec![Rat::from_int(0); 3];
            v[i] = Rat::from_int(1);
            v
        };
        let zero = vec![Rat::from_int(0); 3];
        let mult = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(0)],
            vec![e(2), zero.clone(), zero],
        ];
        let err = Algebra::from_structure_constants(
            vec!["1".into(), "x".into(), "y".into()],
            e(0),
            mult,
            vec![e(0)],
        )
        .unwrap_err();
        match err {
            AlgebraError::AssociativityViolation { .. } => {}
            other => panic!("expected AssociativityViolation, got {other:?}"),
        }
    }

    #[test]
    fn unit_violation_named() {
        let labels = vec!["1".to_string(), "x".to_string()];
        let one = vec![Rat::from_int(1), Rat::from_int(0)];
        let x = vec![Rat::from_int(0), Rat::from_int(1)];
        let zero = vec![Rat::from_int(0), Rat::from_int(0)];
        // 1·x = 0 breaks the unit law (the table stays associative)
        let mult = vec![vec![one.clone(), zero.clone()], vec![x, zero]];
        let err = Algebra::from_structure_constants(labels, one.clone(), mult, vec![one])
            .unwrap_err();
        match err {
            AlgebraError::UnitViolation { index } => assert_eq!(index, 1),
            other => panic!("expected UnitViolation, got {other:?}"),
        }
    }

    #[test]
    fn corner_of_local_algebra_is_whole() {
        let a = fixtures::f2();
        let e = a.idempotents()[0].clone();
        let corner = a.corner_algebra(&e).unwrap();
        assert_eq!(corner.algebra.dim(), 3);
    }

    #[test]
    fn fp_radical_certificate() {
        use crate::field::Fp;
        // F_7[x]/(x²): certificate succeeds
        let p = 7;
        let one = vec![Fp::new(1, p), Fp::new(0, p)];
        let x = vec![Fp::new(0, p), Fp::new(1, p)];
        let zero = vec![Fp::new(0, p), Fp::new(0, p)];
        let mult = vec![vec![one.clone(), x.clone()], vec![x.clone(), zero]];
        let a = Algebra::from_structure_constants(
            vec!["1".into(), "x".into()],
            one.clone(),
            mult,
            vec![one],
        )
        .unwrap();
        assert_eq!(a.radical().unwrap().len(), 1);
    }

    #[test]
    fn f2_radical_certificate_fails_in_char_2() {
        use crate::field::Fp;
        // F_2[x]/(x²): trace form vanishes identically; kernel contains 1,
        // the ideal certificate fails, construction refuses
        let p = 2;
        let one = vec![Fp::new(1, p), Fp::new(0, p)];
        let x = vec![Fp::new(0, p), Fp::new(1, p)];
        let zero = vec![Fp::new(0, p), Fp::new(0, p)];
        let mult = vec![vec![one.clone(), x.clone()], vec![x.clone(), zero]];
        let res = Algebra::from_structure_constants(
            vec!["1".into(), "x".into()],
            one.clone(),
            mult,
            vec![one],
        );
        match res {
            Err(AlgebraError::UnsupportedField(_)) => {}
            other => panic!("expected UnsupportedField, got {other:?}"),
        }
    }
}
