//! Small reference networks used throughout the tests and the demos.

use crate::network::BooleanNetwork;

/// f(x1, x2) = (x2, x1)
pub fn n_swap() -> BooleanNetwork {
    BooleanNetwork::from_fn_unnamed(vec![vec![1], vec![0]], |_, v| v[0]).unwrap()
}

/// f(x) = (x3, x4 ∧ x5, x1, x1, x2); cuttable with L = {3, 4, 5}.
pub fn n_five() -> BooleanNetwork {
    BooleanNetwork::from_fn_unnamed(
        vec![vec![2], vec![3, 4], vec![0], vec![0], vec![1]],
        |i, v| match i {
            1 => v[0] && v[1],
            _ => v[0],
        },
    )
    .unwrap()
}

/// f(x1) = x1
pub fn n_id() -> BooleanNetwork {
    BooleanNetwork::from_fn_unnamed(vec![vec![0]], |_, v| v[0]).unwrap()
}

/// f(x1, x2) = (¬x1, x1)
pub fn n_neg() -> BooleanNetwork {
    BooleanNetwork::from_fn_unnamed(vec![vec![0], vec![0]], |i, v| match i {
        0 => !v[0],
        _ => v[0],
    })
    .unwrap()
}

/// f(x1, x2) = (x2, ¬x1): a negative two-cycle.
pub fn neg_cycle() -> BooleanNetwork {
    BooleanNetwork::from_fn_unnamed(vec![vec![1], vec![0]], |i, v| match i {
        0 => v[0],
        _ => !v[0],
    })
    .unwrap()
}

/// Every component constant.
pub fn constant(values: &[bool]) -> BooleanNetwork {
    let values = values.to_vec();
    BooleanNetwork::from_fn_unnamed(vec![vec![]; values.len()], move |i, _| values[i]).unwrap()
}
