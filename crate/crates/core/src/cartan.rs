//! Cartan invariants of the stylic algebra, by exact ranks of the corner
//! spaces `e_γ K e_γ'` and by counting elements by `(η(x), rfix(x))`, plus
//! bases of the indecomposable projective modules.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, StylAlgebra};
use crate::alphabet::Column;
use crate::error::StylicError;
use crate::monoid::{ElemId, StylMonoid};

/// Square matrix indexed by columns in bitmask order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    pub n: usize,
    pub entries: Vec<Vec<usize>>,
}

impl CartanMatrix {
    fn new(n: usize, entries: Vec<Vec<usize>>) -> CartanMatrix {
        CartanMatrix { n, entries }
    }

    pub fn get(&self, gamma: Column, delta: Column) -> usize {
        self.entries[gamma.index()][delta.index()]
    }

    pub fn total(&self) -> usize {
        self.entries.iter().flatten().sum()
    }

    pub fn row_sum(&self, gamma: Column) -> usize {
        self.entries[gamma.index()].iter().sum()
    }

    pub fn column_sum(&self, delta: Column) -> usize {
        self.entries.iter().map(|row| row[delta.index()]).sum()
    }

    pub fn diagonal_positive(&self) -> bool {
        (0..self.entries.len()).all(|i| self.entries[i][i] >= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == usize::from(i == j)))
    }

    fn names(&self) -> Vec<String> {
        (0..self.entries.len())
            .map(|b| Column::from_bits(b as u16).name())
            .collect()
    }

    /// CSV with decreasing-word headers; the corner cell is empty.
    pub fn to_csv(&self) -> String {
        let names = self.names();
        let mut out = String::new();
        let _ = writeln!(out, ",{}", names.join(","));
        for (name, row) in names.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{name},{}", cells.join(","));
        }
        out
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let names = self.names();
        let width = names
            .iter()
            .map(|s| s.chars().count())
            .chain(self.entries.iter().flatten().map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1);
        let pad = |s: &str| format!("{:>width$}", s, width = width);
        let mut out = String::new();
        let header: Vec<String> = names.iter().map(|s| pad(s)).collect();
        let _ = writeln!(out, "{} {}", pad(""), header.join(" "));
        for (name, row) in names.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|v| pad(&v.to_string())).collect();
            let _ = writeln!(out, "{} {}", pad(name), cells.join(" "));
        }
        out
    }
}

/// Entry `(γ, γ')` is `dim e_γ · K Styl(A) · e_γ'`.
pub fn cartan_linear(monoid: &StylMonoid) -> CartanMatrix {
    let algebra = StylAlgebra::new(monoid);
    let es = algebra.idempotents();
    let columns: Vec<Column> = monoid.alphabet().columns().collect();
    // e_γ · x, shared by every entry of row γ.
    let left: Vec<Vec<AlgebraElement>> = es
        .par_iter()
        .map(|e| monoid.ids().map(|x| algebra.mul_element(e, x)).collect())
        .collect();
    let entries = columns
        .par_iter()
        .map(|&g| {
            columns
                .iter()
                .map(|&d| {
                    let family: Vec<AlgebraElement> = left[g.index()]
                        .iter()
                        .map(|ex| algebra.mul(ex, &es[d.index()]))
                        .collect();
                    algebra.rank(&family)
                })
                .collect()
        })
        .collect();
    CartanMatrix::new(monoid.n(), entries)
}

/// Entry `(γ, γ')` counts the `x` with `η(x) = γ` and `rfix(x) = γ'`.
pub fn cartan_combinatorial(monoid: &StylMonoid) -> CartanMatrix {
    let size = monoid.alphabet().column_count();
    let mut entries = vec![vec![0; size]; size];
    for x in monoid.ids() {
        entries[monoid.eta(x).index()][monoid.rfix(x).index()] += 1;
    }
    CartanMatrix::new(monoid.n(), entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `e_γ · K Styl(A)`.
    Right,
    /// `K Styl(A) · e_γ`.
    Left,
}

/// Basis of the projective module attached to `γ`, taken from the triangular
/// basis: `{e_{η(x)}·x : η(x) = γ}` on the right, `{e_{η(x)}·x : rfix(x) = γ}`
/// on the left. Fails unless the family is independent and spans the module.
pub fn projective_basis(
    monoid: &StylMonoid,
    gamma: Column,
    side: Side,
) -> Result<Vec<AlgebraElement>, StylicError> {
    let algebra = StylAlgebra::new(monoid);
    let e = algebra.idempotent(gamma)?;
    let members: Vec<ElemId> = monoid
        .ids()
        .filter(|&x| match side {
            Side::Right => monoid.eta(x) == gamma,
            Side::Left => monoid.rfix(x) == gamma,
        })
        .collect();
    let basis: Vec<AlgebraElement> = members
        .iter()
        .map(|&x| {
            let e_eta = algebra.idempotent(monoid.eta(x)).expect("column of the alphabet");
            algebra.mul_element(&e_eta, x)
        })
        .collect();
    let module: Vec<AlgebraElement> = monoid
        .ids()
        .map(|m| match side {
            Side::Right => algebra.mul_element(&e, m),
            Side::Left => algebra.element_mul(m, &e),
        })
        .collect();

    let basis_rank = algebra.rank(&basis);
    let module_rank = algebra.rank(&module);
    let joint: Vec<AlgebraElement> = basis.iter().chain(&module).cloned().collect();
    let joint_rank = algebra.rank(&joint);
    if basis_rank != basis.len() || basis_rank != module_rank || joint_rank != module_rank {
        return Err(StylicError::Verification(format!(
            "{side:?} projective at {gamma}: {} candidates of rank {basis_rank}, module rank {module_rank}, joint rank {joint_rank}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// The `≤_J`-minimum of the idempotents `e` with `e·x = x` (left) or `x·e = x`
/// (right), if that set has a unique minimum.
pub fn fixing_idempotent(monoid: &StylMonoid, x: ElemId, side: Side) -> Option<ElemId> {
    let candidates: Vec<ElemId> = monoid
        .idempotents()
        .into_iter()
        .filter(|&e| match side {
            Side::Left => monoid.multiply(e, x) == x,
            Side::Right => monoid.multiply(x, e) == x,
        })
        .collect();
    candidates
        .iter()
        .copied()
        .find(|&e| candidates.iter().all(|&f| monoid.j_leq(e, f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_identity() {
        let m = StylMonoid::enumerate(1).unwrap();
        let lin = cartan_linear(&m);
        let comb = cartan_combinatorial(&m);
        assert!(lin.is_identity());
        assert_eq!(lin, comb);
        assert_eq!(lin.to_csv(), ",ε,a\nε,1,0\na,0,1\n");
    }

    #[test]
    fn n2_sums() {
        let m = StylMonoid::enumerate(2).unwrap();
        let lin = cartan_linear(&m);
        assert_eq!(lin.total(), 5);
        assert!(lin.diagonal_positive());
        assert_eq!(lin, cartan_combinatorial(&m));
    }

    #[test]
    fn projectives_n1() {
        let m = StylMonoid::enumerate(1).unwrap();
        let basis = projective_basis(&m, Column::EMPTY, Side::Right).unwrap();
        let alg = StylAlgebra::new(&m);
        assert_eq!(basis, vec![alg.idempotent(Column::EMPTY).unwrap()]);
    }

    #[test]
    fn projective_dimensions_match_cartan() {
        let m = StylMonoid::enumerate(3).unwrap();
        let c = cartan_combinatorial(&m);
        let mut total = 0;
        for g in m.alphabet().columns() {
            let right = projective_basis(&m, g, Side::Right).unwrap();
            let left = projective_basis(&m, g, Side::Left).unwrap();
            assert_eq!(right.len(), c.row_sum(g));
            assert_eq!(left.len(), c.column_sum(g));
            total += right.len();
        }
        assert_eq!(total, m.size());
    }

    #[test]
    fn fixing_idempotents_are_columns() {
        let m = StylMonoid::enumerate(3).unwrap();
        for x in m.ids() {
            let left = fixing_idempotent(&m, x, Side::Left).unwrap();
            assert_eq!(left, m.element_of_word(&m.eta(x).word()).unwrap());
            let right = fixing_idempotent(&m, x, Side::Right).unwrap();
            assert_eq!(right, m.element_of_word(&m.rfix(x).word()).unwrap());
        }
    }
}
