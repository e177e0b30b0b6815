//! Shared generators and helpers for unit tests.

use std::ops::Range;

use proptest::prelude::*;

use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;

pub fn parse_matrix(rows: &[&[&str]]) -> ExactMatrix {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

pub fn vec_of(vals: &[i64]) -> Vec<GaussianRational> {
    vals.iter().map(|&v| GaussianRational::from(v)).collect()
}

/// Small entries with a bias towards zero so that rank deficiency shows up.
pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        2 => Just(GaussianRational::from(0)),
        3 => (-3i64..=3).prop_map(GaussianRational::from),
        2 => ((-4i64..=4, 1i64..=3), (-2i64..=2, 1i64..=2)).prop_map(|(a, b)| GaussianRational::complex(a, b)),
    ]
}

pub fn matrix(rows: Range<usize>, cols: Range<usize>) -> impl Strategy<Value = ExactMatrix> {
    (rows, cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(gaussian(), r * c).prop_map(move |e| ExactMatrix::new(r, c, e).unwrap())
    })
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    proptest::collection::vec(gaussian(), n)
}

/// Span of 0..=n random vectors in ℂⁿ.
pub fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    (0..=n).prop_flat_map(move |k| {
        proptest::collection::vec(vector(n), k).prop_map(move |vs| Subspace::span_of(&vs, n).unwrap())
    })
}

/// Ambient dimension in 2..=4 and three subspaces of it.
pub fn subspace_triple() -> impl Strategy<Value = (Subspace, Subspace, Subspace)> {
    (2usize..=4).prop_flat_map(|n| (subspace(n), subspace(n), subspace(n)))
}
