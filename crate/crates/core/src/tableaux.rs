//! Semistandard tableaux stored as sequences of columns, the Schensted
//! P-symbol by iterated column insertion, and column-reading words.

use std::fmt;

use crate::alphabet::{left_insert, Column, Letter, Word};

/// A semistandard tableau, as its columns from left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tableau {
    columns: Vec<Column>,
}

impl Tableau {
    pub fn empty() -> Tableau {
        Tableau::default()
    }

    /// Builds a tableau from its columns, or `None` if they do not form one.
    pub fn from_columns(columns: Vec<Column>) -> Option<Tableau> {
        let t = Tableau { columns };
        t.is_valid().then_some(t)
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn first_column(&self) -> Column {
        self.columns.first().copied().unwrap_or(Column::EMPTY)
    }

    pub fn cell_count(&self) -> usize {
        self.columns.iter().map(|c| c.height()).sum()
    }

    pub fn height(&self) -> usize {
        self.first_column().height()
    }

    /// Non-empty columns, weakly decreasing heights, weakly increasing rows.
    pub fn is_valid(&self) -> bool {
        self.columns.iter().all(|c| !c.is_empty())
            && self.columns.windows(2).all(|pair| columns_fit(pair[0], pair[1]))
    }

    /// Column insertion of one letter: bumped letters cascade to the right.
    pub fn insert(&mut self, letter: Letter) {
        let mut carry = Some(letter);
        let mut k = 0;
        while let Some(x) = carry {
            if k == self.columns.len() {
                self.columns.push(Column::EMPTY);
            }
            let (col, bumped) = left_insert(x, self.columns[k]);
            self.columns[k] = col;
            carry = bumped;
            k += 1;
        }
    }

    /// Columns read left to right, each as a decreasing word.
    pub fn column_reading_word(&self) -> Word {
        Word(self.columns.iter().flat_map(|c| c.letters().rev()).collect())
    }

    /// Rows from bottom to top (French convention), each left to right.
    pub fn rows(&self) -> Vec<Vec<Letter>> {
        let cols: Vec<Vec<Letter>> = self.columns.iter().map(|c| c.letters().collect()).collect();
        (0..self.height())
            .map(|i| cols.iter().filter_map(|c| c.get(i).copied()).collect())
            .collect()
    }
}

/// Whether `right` may stand immediately to the right of `left`.
pub fn columns_fit(left: Column, right: Column) -> bool {
    right.height() <= left.height() && left.letters().zip(right.letters()).all(|(x, y)| x <= y)
}

impl fmt::Display for Tableau {
    /// French convention: bottom row printed last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        for (i, row) in rows.iter().enumerate().rev() {
            let line: Vec<String> = row.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", line.join(" "))?;
            if i > 0 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Schensted P-symbol: `P(xv)` is `x` column-inserted into `P(v)`, so the
/// letters are inserted from the right end of the word.
pub fn p_symbol(word: &Word) -> Tableau {
    let mut t = Tableau::empty();
    for &l in word.letters().iter().rev() {
        t.insert(l);
    }
    t
}

pub fn column_reading_word(tableau: &Tableau) -> Word {
    tableau.column_reading_word()
}

pub fn plactic_equivalent(u: &Word, v: &Word) -> bool {
    p_symbol(u) == p_symbol(v)
}

/// Every tableau with entries in `1..=n` and at most `max_cells` cells.
pub fn all_tableaux(n: usize, max_cells: usize) -> Vec<Tableau> {
    fn extend(
        prefix: &mut Vec<Column>,
        cells: usize,
        candidates: &[Column],
        max_cells: usize,
        out: &mut Vec<Tableau>,
    ) {
        out.push(Tableau {
            columns: prefix.clone(),
        });
        for &c in candidates {
            if cells + c.height() > max_cells {
                continue;
            }
            if let Some(&last) = prefix.last() {
                if !columns_fit(last, c) {
                    continue;
                }
            }
            prefix.push(c);
            extend(prefix, cells + c.height(), candidates, max_cells, out);
            prefix.pop();
        }
    }

    let candidates: Vec<Column> = (1..(1u32 << n)).map(|b| Column::from_bits(b as u16)).collect();
    let mut out = Vec::new();
    extend(&mut Vec::new(), 0, &candidates, max_cells, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn col(s: &str) -> Column {
        Column::from_letters(w(s).0)
    }

    #[test]
    fn figure_one_tableau() {
        let t = p_symbol(&w("dbabac"));
        assert_eq!(t.columns(), &[col("dba"), col("ba"), col("c")]);
        assert!(t.is_valid());
        assert_eq!(t.column_reading_word(), w("dbabac"));
        assert_eq!(t.to_string(), "d\nb b\na a c");
    }

    #[test]
    fn small_symbols() {
        assert_eq!(p_symbol(&Word::empty()), Tableau::empty());
        assert_eq!(p_symbol(&w("a")).columns(), &[col("a")]);
        assert_eq!(column_reading_word(&Tableau::empty()), Word::empty());
        let t = Tableau::from_columns(vec![col("ba")]).unwrap();
        assert_eq!(column_reading_word(&t), w("ba"));
    }

    #[test]
    fn knuth_examples() {
        assert!(plactic_equivalent(&w("bac"), &w("bca")));
        assert!(plactic_equivalent(&w("acb"), &w("cab")));
        assert!(plactic_equivalent(&w("bab"), &w("bba")));
        assert!(plactic_equivalent(&w("aba"), &w("baa")));
        assert!(!plactic_equivalent(&w("ab"), &w("ba")));
        assert!(!plactic_equivalent(&w("a"), &w("aa")));
    }

    #[test]
    fn invalid_shapes_rejected() {
        assert!(Tableau::from_columns(vec![col("a"), col("ba")]).is_none());
        assert!(Tableau::from_columns(vec![col("b"), col("a")]).is_none());
        assert!(Tableau::from_columns(vec![col("ca"), col("b")]).is_some());
        assert!(Tableau::from_columns(vec![col("cb"), col("ca")]).is_none());
        assert!(Tableau::from_columns(vec![Column::EMPTY]).is_none());
    }

    #[test]
    fn enumeration_counts() {
        // n = 1: rows a^k, k = 0..=3.
        assert_eq!(all_tableaux(1, 3).len(), 4);
        // n = 2, at most 2 cells: ε, a, b, ba, aa, ab, bb.
        assert_eq!(all_tableaux(2, 2).len(), 7);
    }
}
