//! Named example structures used throughout the tests and the CLI.

use std::sync::Arc;

use crate::group::FiniteGroup;
use crate::rees::{ReesMatrixSemigroup, SandwichMatrix};
use crate::semigroup::FiniteSemigroup;

/// Z_n with the given labels, `labels[k]` standing for `k`.
pub fn named_cyclic(n: usize, labels: &[&str]) -> FiniteGroup {
    assert_eq!(labels.len(), n);
    FiniteGroup::from_fn(labels.iter().map(|s| s.to_string()).collect(), |a, b| {
        (a + b) % n
    })
    .expect("cyclic table is a group")
}

/// `{e, a}`.
pub fn z2() -> FiniteGroup {
    named_cyclic(2, &["e", "a"])
}

/// `{e, a, b}` with `b = a⁻¹`.
pub fn z3() -> FiniteGroup {
    named_cyclic(3, &["e", "a", "b"])
}

fn bordered(group: FiniteGroup, inner: &[&[usize]]) -> ReesMatrixSemigroup {
    let n = inner.len() + 1;
    let mut entries = vec![0; n * n];
    for (r, row) in inner.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            entries[(r + 1) * n + c + 1] = x;
        }
    }
    let m = SandwichMatrix::new(Arc::new(group), n, n, entries).expect("valid matrix");
    ReesMatrixSemigroup::new(m)
}

/// `M[Z2; 2, 2; P]` with `P' = (a)`.
pub fn s2() -> ReesMatrixSemigroup {
    bordered(z2(), &[&[1]])
}

/// `M[Z3; 3, 3; P]` with `P' = [[a, a⁻¹], [a⁻¹, a]]`.
pub fn s3() -> ReesMatrixSemigroup {
    bordered(z3(), &[&[1, 2], &[2, 1]])
}

/// `M[Z2; 4, 4; P]` with `P'` having `ε` on the diagonal and `a` elsewhere.
pub fn s4() -> ReesMatrixSemigroup {
    bordered(z2(), &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
}

/// `M[Z_order; cols, rows; ε]`, isomorphic to `Z_order × B` for a `rows × cols`
/// rectangular band `B`.
pub fn rectangular_group(cols: usize, rows: usize, order: usize) -> ReesMatrixSemigroup {
    let g = Arc::new(FiniteGroup::cyclic(order));
    ReesMatrixSemigroup::new(SandwichMatrix::trivial(g, rows, cols))
}

/// A rectangular band as a Rees matrix semigroup over the trivial group.
pub fn band_rms(cols: usize, rows: usize) -> ReesMatrixSemigroup {
    let g = Arc::new(named_cyclic(1, &["e"]));
    ReesMatrixSemigroup::new(SandwichMatrix::trivial(g, rows, cols))
}

/// The monogenic semigroup `⟨a | a⁴ = a²⟩`.
pub fn monogenic_4_2() -> FiniteSemigroup {
    FiniteSemigroup::monogenic(2, 2)
}
