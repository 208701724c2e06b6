//! Quiver presentations and bounded path algebras.
//!
//! A presentation carries a nilpotency bound `L`: every path of length
//! ≥ L is declared zero, which makes the relation ideal admissible by
//! construction and the resulting algebra finite dimensional. The basis
//! consists of the normal-form paths of length < L; vertex idempotents
//! are the distinguished primitive set (structurally primitive for an
//! admissible ideal, so no corner-locality search is needed).

use crate::algebra::{to_sparse, Algebra, AlgebraError, SparseVec};
use crate::field::Scalar;
use crate::matrix::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// One term of a relation: coefficient times a composable arrow path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm<F> {
    pub coeff: F,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation<F> {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm<F>>>,
    /// all paths of length ≥ L lie in the ideal; L ≥ 1
    pub nilpotency_bound: usize,
}

/// A path stored by arrow indices; empty means the lazy path at `source`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl<F: Scalar> QuiverPresentation<F> {
    pub fn new(
        vertices: Vec<&str>,
        arrows: Vec<(&str, &str, &str)>,
        relations: Vec<Vec<(F, Vec<&str>)>>,
        nilpotency_bound: usize,
    ) -> Self {
        QuiverPresentation {
            vertices: vertices.into_iter().map(String::from).collect(),
            arrows: arrows
                .into_iter()
                .map(|(name, source, target)| Arrow {
                    name: name.into(),
                    source: source.into(),
                    target: target.into(),
                })
                .collect(),
            relations: relations
                .into_iter()
                .map(|rel| {
                    rel.into_iter()
                        .map(|(coeff, path)| RelationTerm {
                            coeff,
                            path: path.into_iter().map(String::from).collect(),
                        })
                        .collect()
                })
                .collect(),
            nilpotency_bound,
        }
    }

    fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Builds the bounded path algebra.
    pub fn path_algebra(&self) -> Result<Algebra<F>, AlgebraError> {
        if self.nilpotency_bound < 1 {
            return Err(AlgebraError::Inconsistent(
                "nilpotency bound must be at least 1".into(),
            ));
        }
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(AlgebraError::Inconsistent("quiver has no vertices".into()));
        }
        for a in &self.arrows {
            if self.vertex_index(&a.source).is_none() || self.vertex_index(&a.target).is_none() {
                return Err(AlgebraError::InvalidRelation(format!(
                    "arrow `{}` references an unknown vertex",
                    a.name
                )));
            }
        }

        // enumerate paths of length < L: vertices, arrows, then longer
        // paths sorted by (length, lexicographic arrow-label sequence)
        let arrow_src: Vec<usize> = self
            .arrows
            .iter()
            .map(|a| self.vertex_index(&a.source).unwrap())
            .collect();
        let arrow_tgt: Vec<usize> = self
            .arrows
            .iter()
            .map(|a| self.vertex_index(&a.target).unwrap())
            .collect();

        let mut paths: Vec<Path> = (0..nv)
            .map(|v| Path {
                arrows: vec![],
                source: v,
                target: v,
            })
            .collect();
        let mut current: Vec<Path> = (0..self.arrows.len())
            .map(|i| Path {
                arrows: vec![i],
                source: arrow_src[i],
                target: arrow_tgt[i],
            })
            .collect();
        for _len in 1..self.nilpotency_bound {
            let mut sorted = current.clone();
            sorted.sort_by_key(|p| self.label_seq(p));
            paths.extend(sorted.iter().cloned());
            let mut next = Vec::new();
            for p in &current {
                for i in 0..self.arrows.len() {
                    if arrow_src[i] == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            arrows,
                            source: p.source,
                            target: arrow_tgt[i],
                        });
                    }
                }
            }
            current = next;
        }
        let dim_free = paths.len();
        let path_index = |p: &Path| paths.iter().position(|q| q == p);

        // relation vectors in the path basis
        let mut rel_vectors: Vec<Vec<F>> = Vec::new();
        for rel in &self.relations {
            let mut vec = vec![F::zero(); dim_free];
            let mut signature: Option<(usize, usize)> = None;
            for term in rel {
                if term.path.len() < 2 {
                    return Err(AlgebraError::InvalidRelation(
                        "relation terms must be paths of length at least 2".into(),
                    ));
                }
                let mut arrows = Vec::new();
                for name in &term.path {
                    let Some(i) = self.arrow_index(name) else {
                        return Err(AlgebraError::InvalidRelation(format!(
                            "unknown arrow `{name}`"
                        )));
                    };
                    arrows.push(i);
                }
                for w in arrows.windows(2) {
                    if arrow_tgt[w[0]] != arrow_src[w[1]] {
                        return Err(AlgebraError::InvalidRelation(format!(
                            "path {:?} is not composable",
                            term.path
                        )));
                    }
                }
                let (src, tgt) = (arrow_src[arrows[0]], arrow_tgt[*arrows.last().unwrap()]);
                match signature {
                    None => signature = Some((src, tgt)),
                    Some(sig) if sig != (src, tgt) => {
                        return Err(AlgebraError::InvalidRelation(
                            "relation mixes paths with different endpoints".into(),
                        ))
                    }
                    _ => {}
                }
                if arrows.len() >= self.nilpotency_bound {
                    continue; // already zero past the bound
                }
                let p = Path {
                    source: src,
                    target: tgt,
                    arrows,
                };
                let idx = path_index(&p).expect("enumerated path");
                vec[idx] = vec[idx].clone() + term.coeff.clone();
            }
            if vec.iter().any(|x| !x.is_zero()) {
                rel_vectors.push(vec);
            }
        }

        // two-sided closure: multiply every relation by all short paths
        let mut ideal = Subspace::new(dim_free);
        let compose = |p: &Path, q: &Path| -> Option<Path> {
            if p.target != q.source {
                return None;
            }
            let mut arrows = p.arrows.clone();
            arrows.extend(&q.arrows);
            Some(Path {
                arrows,
                source: p.source,
                target: q.target,
            })
        };
        for rv in &rel_vectors {
            for left in &paths {
                for right in &paths {
                    let mut prod = vec![F::zero(); dim_free];
                    let mut nonzero = false;
                    for (idx, c) in rv.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let Some(lp) = compose(left, &paths[idx]) else {
                            continue;
                        };
                        let Some(full) = compose(&lp, right) else {
                            continue;
                        };
                        if full.arrows.len() >= self.nilpotency_bound {
                            continue;
                        }
                        let k = path_index(&full).expect("enumerated path");
                        prod[k] = prod[k].clone() + c.clone();
                        nonzero = true;
                    }
                    if nonzero {
                        ideal.insert(&prod);
                    }
                }
            }
        }

        // normal-form basis = non-pivot paths
        let kept = ideal.complement_indices();
        if kept.iter().take_while(|&&k| k < nv).count() < nv {
            return Err(AlgebraError::InvalidRelation(
                "relations collapse a vertex idempotent".into(),
            ));
        }
        let dim = kept.len();
        let label_of = |p: &Path| -> String {
            if p.arrows.is_empty() {
                self.vertices[p.source].clone()
            } else {
                p.arrows
                    .iter()
                    .map(|&i| self.arrows[i].name.clone())
                    .collect::<Vec<_>>()
                    .join("*")
            }
        };
        let labels: Vec<String> = kept.iter().map(|&k| label_of(&paths[k])).collect();

        // multiplication of normal forms
        let mut mult: Vec<SparseVec<F>> = Vec::with_capacity(dim * dim);
        for &a in &kept {
            for &b in &kept {
                let mut out = vec![F::zero(); dim_free];
                if let Some(p) = compose(&paths[a], &paths[b]) {
                    if p.arrows.len() < self.nilpotency_bound {
                        let k = path_index(&p).expect("enumerated path");
                        out[k] = F::one();
                    }
                }
                let q = ideal.quotient_coords(&out);
                mult.push(to_sparse(&q));
            }
        }

        let mut unit = vec![F::zero(); dim];
        let mut idempotents = Vec::with_capacity(nv);
        for v in 0..nv {
            let pos = kept
                .iter()
                .position(|&k| k == v)
                .expect("vertices survive an admissible ideal");
            unit[pos] = F::one();
            let mut e = vec![F::zero(); dim];
            e[pos] = F::one();
            idempotents.push(e);
        }
        let radical_hint: Vec<usize> = (0..dim)
            .filter(|&i| !paths[kept[i]].arrows.is_empty())
            .collect();

        Algebra::build(
            labels,
            unit,
            mult,
            idempotents,
            Some(self.clone()),
            Some(radical_hint),
            false,
        )
    }

    fn label_seq(&self, p: &Path) -> Vec<String> {
        p.arrows
            .iter()
            .map(|&i| self.arrows[i].name.clone())
            .collect()
    }
}
