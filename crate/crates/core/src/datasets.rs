//! Built-in structures: the Pauli qubit contexts and three of Cabello's
//! four-dimensional contexts.

use crate::context::{validate_context, Context, Structure};
use crate::matrix::ExactMatrix;
use crate::operators::validate_projector;
use crate::scalar::GaussianRational;

pub const NAMES: &[&str] = &["pauli-qubit", "cabello-3"];

pub fn by_name(name: &str) -> Option<Structure> {
    match name {
        "pauli-qubit" => Some(pauli_qubit()),
        "cabello-3" => Some(cabello_3()),
        _ => None,
    }
}

fn context(name: &str, atoms: Vec<(&str, ExactMatrix)>) -> Context {
    let projectors = atoms
        .into_iter()
        .map(|(n, m)| validate_projector(n, m).expect("built-in projector"))
        .collect();
    validate_context(name, projectors).expect("built-in context")
}

fn ints(rows: &[&[i64]], den: i64) -> ExactMatrix {
    ExactMatrix::from_ints(rows, den)
}

/// `½(1 ± σ)` for σ = σ_z, σ_x, σ_y in ℂ².
pub fn pauli_qubit() -> Structure {
    let half = GaussianRational::ratio(1, 2);
    let half_i = GaussianRational::complex((0, 1), (1, 2));
    let y = |sign: i64| {
        let off = if sign > 0 { half_i.clone() } else { -half_i.clone() };
        ExactMatrix::from_rows(vec![vec![half.clone(), -off.clone()], vec![off, half.clone()]]).expect("2x2")
    };
    Structure::new(vec![
        context(
            "Sigma_z",
            vec![
                ("z+", ints(&[&[1, 0], &[0, 0]], 1)),
                ("z-", ints(&[&[0, 0], &[0, 1]], 1)),
            ],
        ),
        context(
            "Sigma_x",
            vec![
                ("x+", ints(&[&[1, 1], &[1, 1]], 2)),
                ("x-", ints(&[&[1, -1], &[-1, 1]], 2)),
            ],
        ),
        context("Sigma_y", vec![("y+", y(1)), ("y-", y(-1))]),
    ])
    .expect("built-in structure")
}

/// Contexts Σ1, Σ2 and Σ6 of Cabello's 18-vector set.
pub fn cabello_3() -> Structure {
    Structure::new(vec![
        context(
            "S1",
            vec![
                (
                    "P1_1",
                    ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]], 1),
                ),
                (
                    "P1_2",
                    ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]], 1),
                ),
                (
                    "P1_3",
                    ints(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]], 2),
                ),
                (
                    "P1_4",
                    ints(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]], 2),
                ),
            ],
        ),
        context(
            "S2",
            vec![
                (
                    "P2_1",
                    ints(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]], 1),
                ),
                (
                    "P2_2",
                    ints(&[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]], 1),
                ),
                (
                    "P2_3",
                    ints(&[&[1, 0, 1, 0], &[0, 0, 0, 0], &[1, 0, 1, 0], &[0, 0, 0, 0]], 2),
                ),
                (
                    "P2_4",
                    ints(&[&[1, 0, -1, 0], &[0, 0, 0, 0], &[-1, 0, 1, 0], &[0, 0, 0, 0]], 2),
                ),
            ],
        ),
        context(
            "S6",
            vec![
                (
                    "P6_1",
                    ints(&[&[1, -1, -1, 1], &[-1, 1, 1, -1], &[-1, 1, 1, -1], &[1, -1, -1, 1]], 4),
                ),
                (
                    "P6_2",
                    ints(&[&[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]], 4),
                ),
                (
                    "P6_3",
                    ints(&[&[1, 0, 0, -1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[-1, 0, 0, 1]], 2),
                ),
                (
                    "P6_4",
                    ints(&[&[0, 0, 0, 0], &[0, 1, -1, 0], &[0, -1, 1, 0], &[0, 0, 0, 0]], 2),
                ),
            ],
        ),
    ])
    .expect("built-in structure")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for name in NAMES {
            assert!(by_name(name).is_some());
        }
        assert!(by_name("nope").is_none());
        assert_eq!(pauli_qubit().ambient_dim(), 2);
        assert_eq!(cabello_3().ambient_dim(), 4);
    }

    #[test]
    fn y_projectors_have_complex_entries() {
        let st = pauli_qubit();
        let yp = &st.context("Sigma_y").unwrap().atoms()[0];
        assert_eq!(yp.matrix().to_string(), "[[1/2, -1/2i], [1/2i, 1/2]]");
    }
}
