//! The built-in forms.

use alloc::vec;
use alloc::vec::Vec;

use super::QuadraticForm;

fn build(rows: Vec<Vec<i64>>) -> QuadraticForm {
    QuadraticForm::new(&rows).expect("built-in gram matrices are valid")
}

/// Root lattice A₂.
pub fn a2() -> QuadraticForm {
    build(vec![vec![2, -1], vec![-1, 2]])
}

/// Root lattice D₄ (Cartan matrix, central node second).
pub fn d4() -> QuadraticForm {
    build(vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]])
}

/// The even unimodular lattice E₈ (Cartan matrix, Bourbaki labelling).
pub fn e8() -> QuadraticForm {
    let edges = [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut rows = vec![vec![0i64; 8]; 8];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        rows[i][j] = -1;
        rows[j][i] = -1;
    }
    build(rows)
}

/// `2·I₂`, i.e. √2·ℤ².
pub fn square2() -> QuadraticForm {
    build(vec![vec![2, 0], vec![0, 2]])
}

/// `2·A₂`, an even form without roots.
pub fn a2_scaled() -> QuadraticForm {
    build(vec![vec![4, -2], vec![-2, 4]])
}

/// `(name, form)` for every built-in form.
pub fn all() -> Vec<(&'static str, QuadraticForm)> {
    vec![("A2", a2()), ("D4", d4()), ("E8", e8()), ("2I2", square2()), ("2A2", a2_scaled())]
}
