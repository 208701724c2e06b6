//! Shared fixtures used across examples and tests.
//!
//! * `f1` — `Q[x]/(x²)`, dimension 2
//! * `f2` — `Q[y]/(y³)`, dimension 3
//! * `f3` — the (F1, F2)-bimodule k with x and y acting as zero
//! * `f4` — path algebra over Q of the quiver 1→2, dimension 3
//! * `f5` — the one-dimensional simple right F2-module
//!
//! plus the one-point-extension and trivial-extension data appearing in
//! the bundled examples.

use crate::algebra::Algebra;
use crate::bimodule::Bimodule;
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::module::RightModule;
use crate::quiver::QuiverPresentation;
use crate::Rat;

fn unit_vec(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::from_int(0); dim];
    v[i] = Rat::from_int(1);
    v
}

/// Truncated polynomial algebra `Q[t]/(t^n)` with basis 1, t, …, t^{n−1}.
pub fn truncated_polynomial(n: usize, var: &str) -> Algebra<Rat> {
    let labels: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        })
        .collect();
    let mult: Vec<Vec<Vec<Rat>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i + j < n {
                        unit_vec(n, i + j)
                    } else {
                        vec![Rat::from_int(0); n]
                    }
                })
                .collect()
        })
        .collect();
    Algebra::from_structure_constants(labels, unit_vec(n, 0), mult, vec![unit_vec(n, 0)])
        .expect("truncated polynomial algebra is valid")
}

/// F1 = `Q[x]/(x²)`.
pub fn f1() -> Algebra<Rat> {
    truncated_polynomial(2, "x")
}

/// F2 = `Q[y]/(y³)`.
pub fn f2() -> Algebra<Rat> {
    truncated_polynomial(3, "y")
}

/// F3 = the (F1, F2)-bimodule k, x and y acting as zero.
pub fn f3() -> Bimodule<Rat> {
    let r = f1();
    let s = f2();
    let id = Matrix::identity(1);
    let zero = Matrix::zeros(1, 1);
    let left = vec![id.clone(), zero.clone()];
    let right = vec![id, zero.clone(), zero];
    Bimodule::new(r, s, 1, left, right).expect("F3 is a valid bimodule")
}

/// F4 = path algebra of the quiver 1→2 (arrow `a`), nilpotency bound 2.
pub fn f4() -> Algebra<Rat> {
    QuiverPresentation::<Rat>::new(vec!["1", "2"], vec![("a", "1", "2")], vec![], 2)
        .path_algebra()
        .expect("A2 path algebra is valid")
}

/// F5 = the one-dimensional simple right F2-module (y acts as zero).
pub fn f5() -> RightModule<Rat> {
    let s = f2();
    let id = Matrix::identity(1);
    let zero = Matrix::zeros(1, 1);
    RightModule::new(s, 1, vec![id, zero.clone(), zero]).expect("F5 is a valid module")
}

/// The base field Q as a one-dimensional algebra.
pub fn base_field() -> Algebra<Rat> {
    truncated_polynomial(1, "t")
}

/// Kronecker quiver • ⇉ •, nilpotency bound 2.
pub fn kronecker() -> Algebra<Rat> {
    QuiverPresentation::<Rat>::new(
        vec!["1", "2"],
        vec![("a", "1", "2"), ("b", "1", "2")],
        vec![],
        2,
    )
    .path_algebra()
    .expect("Kronecker path algebra is valid")
}

/// Quiver • ⇄ • with both compositions zero, nilpotency bound 2.
pub fn two_cycle_zero() -> Algebra<Rat> {
    QuiverPresentation::<Rat>::new(
        vec!["1", "2"],
        vec![("a", "1", "2"), ("b", "2", "1")],
        vec![
            vec![(Rat::from_int(1), vec!["a", "b"])],
            vec![(Rat::from_int(1), vec!["b", "a"])],
        ],
        2,
    )
    .path_algebra()
    .expect("two-cycle algebra is valid")
}

/// The simple right F4-module at vertex `i` (0-based idempotent index).
pub fn f4_simple(i: usize) -> RightModule<Rat> {
    RightModule::simple(&f4(), i).expect("simple module over F4")
}

/// D(F4) as a right F4-module: dual of the regular bimodule.
pub fn f4_injective_cogenerator() -> RightModule<Rat> {
    Bimodule::regular(&f4()).dual_as_right_module()
}

/// The (F1, F4)-bimodule: the projective simple right F4-module at the
/// sink vertex, with the trivial left F1-action.
pub fn artin_desk_bimodule() -> Bimodule<Rat> {
    let r = f1();
    let s = f4();
    // right action of (e1, e2, a): concentrated at vertex 2
    let right = vec![Matrix::zeros(1, 1), Matrix::identity(1), Matrix::zeros(1, 1)];
    let left = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
    Bimodule::new(r, s, 1, left, right).expect("valid (F1, F4)-bimodule")
}

/// N = k as a (k, F1)-bimodule with trivial right F1-action; the input
/// to the one-point (co)extension example.
pub fn onepoint_bimodule() -> Bimodule<Rat> {
    let k = base_field();
    let r = f1();
    let left = vec![Matrix::identity(1)];
    let right = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
    Bimodule::new(k, r, 1, left, right).expect("valid (k, F1)-bimodule")
}

/// The (F4, F4)-bimodule k concentrated at position (1, 2): e₁·M·e₂ = k,
/// arrows act as zero. Its trivial extension is the Kronecker algebra.
pub fn trivext_bimodule() -> Bimodule<Rat> {
    let a = f4();
    let left = vec![Matrix::identity(1), Matrix::zeros(1, 1), Matrix::zeros(1, 1)];
    let right = vec![Matrix::zeros(1, 1), Matrix::identity(1), Matrix::zeros(1, 1)];
    Bimodule::new(a.clone(), a, 1, left, right).expect("valid (F4, F4)-bimodule")
}
