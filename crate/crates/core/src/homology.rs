//! Projective covers, resolutions, Ext groups, bounded complexes of
//! projectives, and Hom computations in the homotopy category.
//!
//! Resolutions are three-valued at a depth bound: `Finite(n)` certifies
//! projective dimension `n`, `Truncated(bound)` says only "not finite
//! within the bound" — never "infinite".

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::field::Scalar;
use crate::matrix::{Matrix, Subspace};
use crate::module::{hom_space_matrices, HomBasis, ModuleError, RightModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("radical unavailable: {0}")]
    RadicalUnavailable(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("algebra is not split basic: top decomposition does not fill the top")]
    NotSplit,
    #[error("projective dimension not certified within bound {0}")]
    PdUnknown(usize),
    #[error("left add-T-approximation fails to be injective at stage {stage}")]
    ApproximationNotInjective { stage: usize },
    #[error("add-T-coresolution does not terminate within pd + 1 = {limit} steps")]
    CoresolutionTooLong { limit: usize },
}

impl From<AlgebraError> for HomologyError {
    fn from(e: AlgebraError) -> Self {
        HomologyError::RadicalUnavailable(e.to_string())
    }
}

/// A projective module tagged with its multiplicity decomposition over
/// the idempotent list.
#[derive(Clone, Debug)]
pub struct ProjTerm<F: Scalar> {
    pub module: RightModule<F>,
    pub mults: Vec<usize>,
}

impl<F: Scalar> ProjTerm<F> {
    pub fn zero(module: RightModule<F>) -> Self {
        let n = module.algebra().idempotents().len();
        ProjTerm {
            module,
            mults: vec![0; n],
        }
    }

    pub fn total_copies(&self) -> usize {
        self.mults.iter().sum()
    }
}

/// Bounded cochain complex of projectives; `diffs[n] : term(n) → term(n+1)`.
#[derive(Clone)]
pub struct ProjComplex<F: Scalar> {
    terms: BTreeMap<i64, ProjTerm<F>>,
    diffs: BTreeMap<i64, Matrix<F>>,
}

impl<F: Scalar> ProjComplex<F> {
    pub fn new(
        terms: BTreeMap<i64, ProjTerm<F>>,
        diffs: BTreeMap<i64, Matrix<F>>,
    ) -> Result<Self, HomologyError> {
        let c = ProjComplex { terms, diffs };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), HomologyError> {
        // multiplicities account for every term dimension exactly
        for term in self.terms.values() {
            let alg = term.module.algebra();
            let mut expected = 0;
            for (i, &m) in term.mults.iter().enumerate() {
                if m > 0 {
                    let (p, _) = RightModule::indecomposable_projective(alg, i);
                    expected += m * p.dim();
                }
            }
            if expected != term.module.dim() {
                return Err(ModuleError::NotAModule(format!(
                    "projective term of dim {} does not match multiplicities (dim {expected})",
                    term.module.dim()
                ))
                .into());
            }
        }
        for (&n, d) in &self.diffs {
            let (Some(src), Some(tgt)) = (self.terms.get(&n), self.terms.get(&(n + 1))) else {
                return Err(ModuleError::NotAModule(format!(
                    "differential at degree {n} without both endpoints"
                ))
                .into());
            };
            if d.rows() != tgt.module.dim() || d.cols() != src.module.dim() {
                return Err(ModuleError::NotAModule(format!(
                    "differential shape at degree {n}"
                ))
                .into());
            }
            for b in 0..src.module.algebra().dim() {
                if d.mul(src.module.action(b)) != tgt.module.action(b).mul(d) {
                    return Err(ModuleError::NotAModule(format!(
                        "differential at degree {n} is not a module map"
                    ))
                    .into());
                }
            }
            if let Some(next) = self.diffs.get(&(n + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(ModuleError::NotAModule(format!("d∘d ≠ 0 at degree {n}")).into());
                }
            }
        }
        Ok(())
    }

    pub fn term(&self, n: i64) -> Option<&ProjTerm<F>> {
        self.terms.get(&n)
    }

    pub fn terms(&self) -> &BTreeMap<i64, ProjTerm<F>> {
        &self.terms
    }

    pub fn diff(&self, n: i64) -> Option<&Matrix<F>> {
        self.diffs.get(&n)
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?;
        let hi = self.terms.keys().last()?;
        Some((*lo, *hi))
    }

    /// One projective concentrated in a single degree.
    pub fn stalk(term: ProjTerm<F>, degree: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(degree, term);
        ProjComplex {
            terms,
            diffs: BTreeMap::new(),
        }
    }

    /// Shift: `C[k]^i = C^{i+k}`, differentials scaled by `(−1)^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&n, t)| (n - k, t.clone()))
            .collect();
        let sign = if k.rem_euclid(2) == 0 {
            F::one()
        } else {
            -F::one()
        };
        let diffs = self
            .diffs
            .iter()
            .map(|(&n, d)| (n - k, d.scale(&sign)))
            .collect();
        ProjComplex { terms, diffs }
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, HomologyError> {
        let mut terms: BTreeMap<i64, ProjTerm<F>> = BTreeMap::new();
        let degrees: Vec<i64> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        for n in degrees {
            if terms.contains_key(&n) {
                continue;
            }
            let parts: Vec<&ProjTerm<F>> = [self.terms.get(&n), other.terms.get(&n)]
                .into_iter()
                .flatten()
                .collect();
            let module = RightModule::direct_sum(
                &parts.iter().map(|p| p.module.clone()).collect::<Vec<_>>(),
            )?;
            let mut mults = vec![0; parts[0].mults.len()];
            for p in &parts {
                for (a, b) in mults.iter_mut().zip(&p.mults) {
                    *a += b;
                }
            }
            terms.insert(n, ProjTerm { module, mults });
        }
        let mut diffs = BTreeMap::new();
        for (&n, term) in &terms {
            if !terms.contains_key(&(n + 1)) {
                continue;
            }
            let zero_for = |c: Option<&ProjTerm<F>>, r: Option<&ProjTerm<F>>| {
                Matrix::zeros(
                    r.map_or(0, |t| t.module.dim()),
                    c.map_or(0, |t| t.module.dim()),
                )
            };
            let d1 = self
                .diffs
                .get(&n)
                .cloned()
                .unwrap_or_else(|| zero_for(self.terms.get(&n), self.terms.get(&(n + 1))));
            let d2 = other
                .diffs
                .get(&n)
                .cloned()
                .unwrap_or_else(|| zero_for(other.terms.get(&n), other.terms.get(&(n + 1))));
            let d = d1.direct_sum(&d2);
            if d.rows() > 0 || d.cols() > 0 {
                debug_assert_eq!(d.cols(), term.module.dim());
                diffs.insert(n, d);
            }
        }
        ProjComplex::new(terms, diffs)
    }

    /// Dimensions of the cohomology modules over a degree window.
    pub fn cohomology_dims(&self, lo: i64, hi: i64) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for n in lo..=hi {
            let dim_n = self.terms.get(&n).map_or(0, |t| t.module.dim());
            if dim_n == 0 {
                out.push((n, 0));
                continue;
            }
            let rank_out = self.diffs.get(&n).map_or(0, |d| d.rank());
            let rank_in = self.diffs.get(&(n - 1)).map_or(0, |d| d.rank());
            out.push((n, dim_n - rank_out - rank_in));
        }
        out
    }
}

/// Projective cover data: the cover term and the epimorphism onto the
/// covered module.
pub struct Cover<F: Scalar> {
    pub term: ProjTerm<F>,
    pub epi: Matrix<F>,
}

/// Minimal projective cover `P(X) ↠ X` through the top `X / X·rad`.
pub fn projective_cover<F: Scalar>(x: &RightModule<F>) -> Result<Cover<F>, HomologyError> {
    let alg = x.algebra().clone();
    let rad = alg.radical()?.to_vec();
    let idems = alg.idempotents().to_vec();
    // X·rad and the top
    let mut rad_gens = Vec::new();
    for r in &rad {
        let rho = x.action_of(r);
        for c in 0..x.dim() {
            rad_gens.push(rho.column(c));
        }
    }
    let (top, pi) = x.quotient(&rad_gens);
    // multiplicities: rank of each idempotent on the top
    let mut mults = Vec::with_capacity(idems.len());
    for e in &idems {
        mults.push(top.action_of(e).rank());
    }
    if mults.iter().sum::<usize>() != top.dim() {
        return Err(HomologyError::NotSplit);
    }

    // build P = ⊕ (e_i A)^{m_i} and the lifted epi
    let mut summands: Vec<RightModule<F>> = Vec::new();
    let mut columns: Vec<Matrix<F>> = Vec::new();
    let pi_solver = crate::matrix::ColumnSolver::new(&pi);
    for (i, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let (p_i, incl) = RightModule::indecomposable_projective(&alg, i);
        // basis of top·e_i, lifted into X and pressed onto the e_i corner
        let img = image_basis(&top.action_of(&idems[i]));
        debug_assert_eq!(img.cols(), m);
        let press = x.action_of(&idems[i]);
        for c in 0..m {
            let t = img.column(c);
            let lift = pi_solver
                .coords(&t)
                .expect("projection onto the top is surjective");
            let gen_image = press.mul_vec(&lift);
            // φ : e_iA → X sending the basis vector v (an algebra element
            // of e_iA) to gen_image · v
            let mut phi = Matrix::zeros(x.dim(), p_i.dim());
            for bc in 0..p_i.dim() {
                let v = incl.column(bc);
                let col = x.action_of(&v).mul_vec(&gen_image);
                for (r, val) in col.into_iter().enumerate() {
                    phi.set(r, bc, val);
                }
            }
            summands.push(p_i.clone());
            columns.push(phi);
        }
    }
    let (module, epi) = if summands.is_empty() {
        (RightModule::zero(alg.clone()), Matrix::zeros(x.dim(), 0))
    } else {
        let module = RightModule::direct_sum(&summands)?;
        let mut epi = Matrix::zeros(x.dim(), module.dim());
        let mut offset = 0;
        for phi in &columns {
            epi.paste(0, offset, phi);
            offset += phi.cols();
        }
        (module, epi)
    };

    // surjectivity (Nakayama) and superfluous kernel
    if epi.rank() != x.dim() {
        return Err(ModuleError::NotAModule("projective cover fails to surject".into()).into());
    }
    let term = ProjTerm { module, mults };
    let kernel = epi.kernel();
    if kernel.cols() > 0 {
        let mut prad = Subspace::new(term.module.dim());
        for r in &rad {
            let rho = term.module.action_of(r);
            for c in 0..term.module.dim() {
                prad.insert(&rho.column(c));
            }
        }
        for c in 0..kernel.cols() {
            if !prad.contains(&kernel.column(c)) {
                return Err(
                    ModuleError::NotAModule("cover kernel is not superfluous".into()).into(),
                );
            }
        }
    }
    Ok(Cover { term, epi })
}

fn image_basis<F: Scalar>(m: &Matrix<F>) -> Matrix<F> {
    let rref = m.transpose().rref();
    let rows: Vec<Vec<F>> = (0..rref.pivots.len())
        .map(|r| rref.matrix.row(r).to_vec())
        .collect();
    if rows.is_empty() {
        Matrix::zeros(m.rows(), 0)
    } else {
        Matrix::from_rows(rows).transpose()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionStatus {
    /// projective dimension certified equal to the stored length
    Finite(usize),
    /// stopped at the bound without the syzygy vanishing
    Truncated(usize),
}

/// A projective resolution `… → P¹ → P⁰ → X → 0` (cohomologically:
/// `terms[d]` lives in degree `−d`).
pub struct Resolution<F: Scalar> {
    pub module: RightModule<F>,
    pub terms: Vec<ProjTerm<F>>,
    /// `diffs[d] : P^{d+1} → P^{d}` (degree −d−1 → −d)
    pub diffs: Vec<Matrix<F>>,
    pub augmentation: Matrix<F>,
    pub status: ResolutionStatus,
}

impl<F: Scalar> Resolution<F> {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// As a complex in degrees `[−length, 0]`.
    pub fn to_complex(&self) -> Result<ProjComplex<F>, HomologyError> {
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (d, t) in self.terms.iter().enumerate() {
            terms.insert(-(d as i64), t.clone());
        }
        for (d, m) in self.diffs.iter().enumerate() {
            diffs.insert(-(d as i64) - 1, m.clone());
        }
        ProjComplex::new(terms, diffs)
    }
}

/// Iterated projective covers of syzygies, to the requested depth.
pub fn projective_resolution<F: Scalar>(
    x: &RightModule<F>,
    bound: usize,
) -> Result<Resolution<F>, HomologyError> {
    let cover = projective_cover(x)?;
    let mut terms = vec![cover.term];
    let mut diffs: Vec<Matrix<F>> = Vec::new();
    let mut current_epi = cover.epi.clone();
    let augmentation = cover.epi;
    let mut status = ResolutionStatus::Truncated(bound);
    let mut prev = terms[0].module.clone();
    for _depth in 0..bound {
        let kernel = current_epi.kernel();
        if kernel.cols() == 0 {
            status = ResolutionStatus::Finite(terms.len() - 1);
            break;
        }
        let gens: Vec<Vec<F>> = (0..kernel.cols()).map(|c| kernel.column(c)).collect();
        let (syzygy, inclusion) = prev.submodule(&gens);
        let cover = projective_cover(&syzygy)?;
        let diff = inclusion.mul(&cover.epi);
        diffs.push(diff);
        prev = cover.term.module.clone();
        current_epi = cover.epi;
        terms.push(cover.term);
    }
    // the loop may end exactly at the bound with a zero syzygy left over
    if matches!(status, ResolutionStatus::Truncated(_)) && current_epi.kernel().cols() == 0 {
        status = ResolutionStatus::Finite(terms.len() - 1);
    }
    Ok(Resolution {
        module: x.clone(),
        terms,
        diffs,
        augmentation,
        status,
    })
}

/// Dimensions of `Ext^n(X, Y)` for `n = 0 … bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtTable {
    pub dims: Vec<usize>,
    /// true iff the resolution terminated, so the table is exact at
    /// every degree (and zero beyond it)
    pub exact_beyond: bool,
}

pub fn ext_groups<F: Scalar>(
    x: &RightModule<F>,
    y: &RightModule<F>,
    bound: usize,
) -> Result<ExtTable, HomologyError> {
    if x.algebra() != y.algebra() {
        return Err(ModuleError::AlgebraMismatch.into());
    }
    let res = projective_resolution(x, bound + 1)?;
    ext_from_resolution(&res, y, bound)
}

/// Ext dimensions computed from an already-built resolution.
pub fn ext_from_resolution<F: Scalar>(
    res: &Resolution<F>,
    y: &RightModule<F>,
    bound: usize,
) -> Result<ExtTable, HomologyError> {
    let finite = matches!(res.status, ResolutionStatus::Finite(_));
    let depth = res.terms.len();
    // Hom(P^d, Y) bases and the transposed differentials between them
    let mut hom_bases: Vec<HomBasis<F>> = Vec::with_capacity(depth);
    for t in &res.terms {
        let basis = hom_space_matrices(&t.module, y)?;
        hom_bases.push(HomBasis::new(basis, (y.dim(), t.module.dim())));
    }
    // δ_d : Hom(P^d, Y) → Hom(P^{d+1}, Y), φ ↦ φ ∘ diff[d]
    let mut deltas: Vec<Matrix<F>> = Vec::new();
    for d in 0..depth.saturating_sub(1) {
        let src = &hom_bases[d];
        let tgt = &hom_bases[d + 1];
        let mut m = Matrix::zeros(tgt.dim(), src.dim());
        for (u, h) in src.basis.iter().enumerate() {
            let img = h.mul(&res.diffs[d]);
            let coords = tgt
                .coords(&img)
                .expect("composition stays in the Hom space");
            for (r, c) in coords.into_iter().enumerate() {
                m.set(r, u, c);
            }
        }
        deltas.push(m);
    }
    let mut dims = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        if n >= depth {
            dims.push(0);
            continue;
        }
        let space = hom_bases[n].dim();
        let rank_out = if n < deltas.len() { deltas[n].rank() } else { 0 };
        let rank_in = if n >= 1 { deltas[n - 1].rank() } else { 0 };
        dims.push(space - rank_out - rank_in);
    }
    Ok(ExtTable {
        dims,
        exact_beyond: finite,
    })
}

/// Flattened basis bookkeeping for `Hom^n = ⊕_i Hom(P^i, Q^{i+n})`.
struct HomLevel<F: Scalar> {
    /// source degrees i carrying a nonzero block, ascending
    blocks: Vec<(i64, HomBasis<F>)>,
}

impl<F: Scalar> HomLevel<F> {
    fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.dim()).sum()
    }

    fn offset_of(&self, degree: i64) -> Option<(usize, &HomBasis<F>)> {
        let mut off = 0;
        for (i, b) in &self.blocks {
            if *i == degree {
                return Some((off, b));
            }
            off += b.dim();
        }
        None
    }
}

/// The totalized Hom complex of two bounded complexes of projectives.
/// `Hom_{K^b}(P, Q[n])` is its degree-`n` cohomology.
pub struct TotalHom<F: Scalar> {
    p: ProjComplex<F>,
    q: ProjComplex<F>,
    levels: BTreeMap<i64, HomLevel<F>>,
    lo: i64,
    hi: i64,
}

/// A chain map of degree `n`: components `P^i → Q^{i+n}`.
#[derive(Clone, Debug)]
pub struct ChainMap<F: Scalar> {
    pub degree: i64,
    pub components: BTreeMap<i64, Matrix<F>>,
}

impl<F: Scalar> TotalHom<F> {
    /// Builds levels `lo − 1 ..= hi + 1` so that cohomology is exact on
    /// `[lo, hi]`.
    pub fn new(
        p: &ProjComplex<F>,
        q: &ProjComplex<F>,
        lo: i64,
        hi: i64,
    ) -> Result<Self, HomologyError> {
        let mut levels = BTreeMap::new();
        for n in (lo - 1)..=(hi + 1) {
            let mut blocks = Vec::new();
            for (&i, pt) in p.terms() {
                let Some(qt) = q.term(i + n) else { continue };
                if pt.module.dim() == 0 || qt.module.dim() == 0 {
                    continue;
                }
                let basis = hom_space_matrices(&pt.module, &qt.module)?;
                let hb = HomBasis::new(basis, (qt.module.dim(), pt.module.dim()));
                if hb.dim() > 0 {
                    blocks.push((i, hb));
                }
            }
            levels.insert(n, HomLevel { blocks });
        }
        Ok(TotalHom {
            p: p.clone(),
            q: q.clone(),
            levels,
            lo,
            hi,
        })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn level_dim(&self, n: i64) -> usize {
        self.levels.get(&n).map_or(0, |l| l.dim())
    }

    /// The total differential `D^n : Hom^n → Hom^{n+1}`,
    /// `(Dφ)_i = d_Q ∘ φ_i − (−1)^n φ_{i+1} ∘ d_P`.
    pub fn differential(&self, n: i64) -> Matrix<F> {
        let (Some(src), Some(tgt)) = (self.levels.get(&n), self.levels.get(&(n + 1))) else {
            return Matrix::zeros(self.level_dim(n + 1), self.level_dim(n));
        };
        let sign = if n.rem_euclid(2) == 0 {
            F::one()
        } else {
            -F::one()
        };
        let mut m = Matrix::zeros(tgt.dim(), src.dim());
        let mut col = 0;
        for (i, basis) in &src.blocks {
            for h in &basis.basis {
                // d_Q ∘ h lands at source degree i
                if let Some(dq) = self.q.diff(i + n) {
                    if let Some((off, tb)) = tgt.offset_of(*i) {
                        let img = dq.mul(h);
                        let coords = tb.coords(&img).expect("module map stays in Hom space");
                        for (r, c) in coords.into_iter().enumerate() {
                            m.set(off + r, col, c);
                        }
                    }
                }
                // −(−1)^n h ∘ d_P lands at source degree i − 1
                if let Some(dp) = self.p.diff(i - 1) {
                    if let Some((off, tb)) = tgt.offset_of(i - 1) {
                        let img = h.mul(dp).scale(&-sign.clone());
                        let coords = tb.coords(&img).expect("module map stays in Hom space");
                        for (r, c) in coords.into_iter().enumerate() {
                            let cur = m.get(off + r, col).clone();
                            m.set(off + r, col, cur + c);
                        }
                    }
                }
                col += 1;
            }
        }
        m
    }

    /// `dim Hom_{K^b}(P, Q[n])` for every `n` in the window.
    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        (self.lo..=self.hi)
            .map(|n| {
                let dim_n = self.level_dim(n);
                if dim_n == 0 {
                    return (n, 0);
                }
                let rank_out = self.differential(n).rank();
                let rank_in = self.differential(n - 1).rank();
                (n, dim_n - rank_out - rank_in)
            })
            .collect()
    }

    /// Flat coordinates of a degree-`n` chain map.
    pub fn flatten(&self, cm: &ChainMap<F>) -> Vec<F> {
        let level = self.levels.get(&cm.degree).expect("level in range");
        let mut out = vec![F::zero(); level.dim()];
        let mut off = 0;
        for (i, basis) in &level.blocks {
            if let Some(comp) = cm.components.get(i) {
                let coords = basis
                    .coords(comp)
                    .expect("component lies in the Hom space");
                for (k, c) in coords.into_iter().enumerate() {
                    out[off + k] = c;
                }
            }
            off += basis.dim();
        }
        out
    }

    /// Columns spanning the null-homotopic degree-`n` chain maps.
    pub fn coboundaries(&self, n: i64) -> Matrix<F> {
        self.differential(n - 1)
    }

    /// Checks that a degree-`n` coordinate vector is a cocycle.
    pub fn is_cocycle(&self, n: i64, flat: &[F]) -> bool {
        self.differential(n)
            .mul_vec(flat)
            .iter()
            .all(|x| x.is_zero())
    }

    /// Verifies `D ∘ D = 0` across the computed window.
    pub fn differential_squares_to_zero(&self) -> bool {
        (self.lo - 1..self.hi).all(|n| {
            let d1 = self.differential(n);
            let d2 = self.differential(n + 1);
            d2.mul(&d1).is_zero()
        })
    }
}

/// Composition of degree-0 chain maps `g ∘ f` (first `f`, then `g`).
pub fn compose_chain_maps<F: Scalar>(g: &ChainMap<F>, f: &ChainMap<F>) -> ChainMap<F> {
    assert_eq!(g.degree, 0);
    assert_eq!(f.degree, 0);
    let mut components = BTreeMap::new();
    for (&i, fc) in &f.components {
        if let Some(gc) = g.components.get(&i) {
            components.insert(i, gc.mul(fc));
        }
    }
    ChainMap {
        degree: 0,
        components,
    }
}

/// Convenience wrapper: `dim Hom_{K^b}(P, Q[n])` over a window.
pub fn hom_complex_cohomology<F: Scalar>(
    p: &ProjComplex<F>,
    q: &ProjComplex<F>,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, usize)>, HomologyError> {
    Ok(TotalHom::new(p, q, lo, hi)?.cohomology_dims())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerMembership {
    /// finite projective resolution of the stated length
    Finite(usize),
    /// not certified within the bound; not a negative certificate
    Unknown(usize),
}

pub fn per_membership<F: Scalar>(
    x: &RightModule<F>,
    bound: usize,
) -> Result<PerMembership, HomologyError> {
    let res = projective_resolution(x, bound)?;
    Ok(match res.status {
        ResolutionStatus::Finite(n) => PerMembership::Finite(n),
        ResolutionStatus::Truncated(b) => PerMembership::Unknown(b),
    })
}

/// Certificate that `T` is a tilting module: finite projective
/// dimension, rigidity, and a finite add-T-coresolution of the regular
/// module built from universal evaluation maps.
#[derive(Debug, Clone)]
pub struct TiltingCertificate {
    pub pd: usize,
    pub rigidity: ExtTable,
    pub rigidity_ok: bool,
    /// copies of T used at each coresolution stage
    pub coresolution_mults: Vec<usize>,
}

impl TiltingCertificate {
    pub fn pass(&self) -> bool {
        self.rigidity_ok
    }
}

pub fn is_tilting_module<F: Scalar>(
    t: &RightModule<F>,
    bound: usize,
) -> Result<TiltingCertificate, HomologyError> {
    let res = projective_resolution(t, bound)?;
    let pd = match res.status {
        ResolutionStatus::Finite(n) => n,
        ResolutionStatus::Truncated(b) => return Err(HomologyError::PdUnknown(b)),
    };
    let rigidity = ext_groups(t, t, bound.max(pd))?;
    let rigidity_ok = rigidity.exact_beyond && rigidity.dims[1..].iter().all(|&d| d == 0);

    // add-T-coresolution of the regular module by universal evaluation
    // maps V → T^{dim Hom(V, T)}; terminates as soon as the running
    // cokernel itself lies in add T (split-mono test)
    let regular = RightModule::regular(t.algebra().clone());
    let mut v = regular;
    let mut coresolution_mults = Vec::new();
    let limit = pd + 1;
    for stage in 0..=limit {
        if in_add(&v, t)? {
            break;
        }
        if stage == limit {
            return Err(HomologyError::CoresolutionTooLong { limit });
        }
        let homs = hom_space_matrices(&v, t)?;
        let d = homs.len();
        if d == 0 {
            return Err(HomologyError::ApproximationNotInjective { stage });
        }
        let mut u = Matrix::zeros(0, v.dim());
        for h in &homs {
            u = u.vstack(h);
        }
        if u.rank() != v.dim() {
            return Err(HomologyError::ApproximationNotInjective { stage });
        }
        let t_power = RightModule::direct_sum(&vec![t.clone(); d])?;
        let gens: Vec<Vec<F>> = (0..u.cols()).map(|c| u.column(c)).collect();
        let (coker, _) = t_power.quotient(&gens);
        coresolution_mults.push(d);
        v = coker;
    }
    Ok(TiltingCertificate {
        pd,
        rigidity,
        rigidity_ok,
        coresolution_mults,
    })
}

/// `V ∈ add T`: the universal evaluation map `u : V → T^d` admits a
/// retraction `p` with `p∘u = id`, i.e. `V` splits off a power of `T`.
pub fn in_add<F: Scalar>(v: &RightModule<F>, t: &RightModule<F>) -> Result<bool, HomologyError> {
    if v.dim() == 0 {
        return Ok(true);
    }
    let homs = hom_space_matrices(v, t)?;
    let d = homs.len();
    if d == 0 {
        return Ok(false);
    }
    let mut u = Matrix::zeros(0, v.dim());
    for h in &homs {
        u = u.vstack(h);
    }
    if u.rank() != v.dim() {
        return Ok(false);
    }
    let t_power = RightModule::direct_sum(&vec![t.clone(); d])?;
    let retractions = hom_space_matrices(&t_power, v)?;
    if retractions.is_empty() {
        return Ok(false);
    }
    // solve Σ c_k (G_k · u) = id_V
    let mut cols: Vec<Vec<F>> = Vec::with_capacity(retractions.len());
    for g in &retractions {
        cols.push(g.mul(&u).flatten());
    }
    let a = Matrix::from_rows(cols).transpose();
    let rhs = Matrix::column_vector(&Matrix::identity(v.dim()).flatten());
    Ok(a.solve(&rhs)
        .map(|s| s.particular.is_some())
        .unwrap_or(false))
}
