//! Letters, columns and words over a finite totally ordered alphabet, together
//! with the left (Schensted column insertion) and right (bumping) actions of
//! words on columns and the order-reversing involution `theta`.
//!
//! Letters are numbered `1..=n`, `1` being the smallest. A column is a subset of
//! the alphabet stored as a bitmask with letter `i` at bit `i - 1`; read as a
//! word it lists its members in strictly decreasing order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::StylicError;

/// Largest supported alphabet (columns are 16-bit sets).
pub const MAX_ALPHABET: usize = 16;

/// A letter of the alphabet, `1` being the smallest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(u8);

impl Letter {
    /// Builds a letter without checking it against an alphabet size.
    ///
    /// Panics if `index` is zero or exceeds [`MAX_ALPHABET`].
    pub fn new(index: usize) -> Letter {
        assert!(
            (1..=MAX_ALPHABET).contains(&index),
            "letter index {index} out of range"
        );
        Letter(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn bit(self) -> u16 {
        1 << (self.0 - 1)
    }

    /// The conventional name: `a` for 1, `b` for 2 and so on.
    pub fn symbol(self) -> char {
        (b'a' + self.0 - 1) as char
    }

    pub fn from_symbol(symbol: char) -> Option<Letter> {
        if symbol.is_ascii_lowercase() && (symbol as usize - 'a' as usize) < MAX_ALPHABET {
            Some(Letter(symbol as u8 - b'a' + 1))
        } else {
            None
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A column, i.e. a subset of the alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Column(u16);

impl Column {
    pub const EMPTY: Column = Column(0);

    pub fn from_bits(bits: u16) -> Column {
        Column(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// Position of this column in the bitmask ordering of all columns.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Column {
        Column(letters.into_iter().fold(0, |bits, l| bits | l.bit()))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn height(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, letter: Letter) -> bool {
        self.0 & letter.bit() != 0
    }

    pub fn insert(self, letter: Letter) -> Column {
        Column(self.0 | letter.bit())
    }

    pub fn remove(self, letter: Letter) -> Column {
        Column(self.0 & !letter.bit())
    }

    pub fn is_subset(self, other: Column) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<Letter> {
        (self.0 != 0).then(|| Letter(self.0.trailing_zeros() as u8 + 1))
    }

    pub fn max(self) -> Option<Letter> {
        (self.0 != 0).then(|| Letter(16 - self.0.leading_zeros() as u8))
    }

    /// Members in increasing order.
    pub fn letters(self) -> impl DoubleEndedIterator<Item = Letter> {
        (1..=MAX_ALPHABET as u8)
            .filter(move |i| self.0 & (1 << (i - 1)) != 0)
            .map(Letter)
    }

    /// The column read as a strictly decreasing word.
    pub fn word(self) -> Word {
        Word(self.letters().rev().collect())
    }

    /// Sum of the letter indices.
    pub fn weight(self) -> usize {
        self.letters().map(Letter::index).sum()
    }

    /// Name used in figures and text output: the decreasing word, `ε` when empty.
    pub fn name(self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.letters().rev().map(Letter::symbol).collect()
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A finite word over the alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_indices(indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| Letter::new(i)).collect())
    }

    /// Parses a word written with the letters `a`, `b`, ...; `ε` and the empty
    /// string denote the empty word.
    pub fn parse(text: &str) -> Option<Word> {
        if text == "ε" {
            return Some(Word::empty());
        }
        text.chars().map(Letter::from_symbol).collect::<Option<Vec<_>>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Set of letters occurring in the word.
    pub fn content(&self) -> Column {
        Column::from_letters(self.0.iter().copied())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl From<Column> for Word {
    fn from(column: Column) -> Word {
        column.word()
    }
}

/// Schensted column insertion of `letter` into `column`.
///
/// If `letter` exceeds every member it is appended; otherwise it replaces the
/// smallest member `y >= letter`, which is returned as bumped.
pub fn left_insert(letter: Letter, column: Column) -> (Column, Option<Letter>) {
    let at_least = column.0 & !(letter.bit() - 1);
    if at_least == 0 {
        (column.insert(letter), None)
    } else {
        let bumped = Letter(at_least.trailing_zeros() as u8 + 1);
        (column.remove(bumped).insert(letter), Some(bumped))
    }
}

/// Left action `w · γ`: the rightmost letter acts first.
pub fn left_act(word: &Word, column: Column) -> Column {
    word.0
        .iter()
        .rev()
        .fold(column, |col, &l| left_insert(l, col).0)
}

/// Right action of one letter: `γ · c`.
///
/// If `c < min(γ)` (always the case for the empty column) `c` is added;
/// otherwise the largest member `b <= c` is replaced by `c` and returned as bumped.
pub fn right_act(column: Column, letter: Letter) -> (Column, Option<Letter>) {
    let at_most = column.0 & ((letter.bit() << 1).wrapping_sub(1));
    if at_most == 0 {
        (column.insert(letter), None)
    } else {
        let bumped = Letter(16 - at_most.leading_zeros() as u8);
        (column.remove(bumped).insert(letter), Some(bumped))
    }
}

/// Right action of a word, letters acting left to right.
pub fn right_act_word(column: Column, word: &Word) -> Column {
    word.0.iter().fold(column, |col, &l| right_act(col, l).0)
}

/// Whether `γ · c` is frank: `c >= min(γ)` and `c ∉ γ`.
pub fn is_frank(column: Column, letter: Letter) -> bool {
    match column.min() {
        Some(m) => letter >= m && !column.contains(letter),
        None => false,
    }
}

/// Size of the alphabet, the context for order reversal and enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    pub fn new(n: usize) -> Result<Alphabet, StylicError> {
        if (1..=MAX_ALPHABET).contains(&n) {
            Ok(Alphabet { n })
        } else {
            Err(StylicError::AlphabetSize(n))
        }
    }

    pub fn size(self) -> usize {
        self.n
    }

    pub fn letters(self) -> impl DoubleEndedIterator<Item = Letter> + Clone {
        (1..=self.n as u8).map(Letter)
    }

    pub fn letter(self, index: usize) -> Result<Letter, StylicError> {
        if (1..=self.n).contains(&index) {
            Ok(Letter(index as u8))
        } else {
            Err(StylicError::LetterOutOfRange { index, n: self.n })
        }
    }

    pub fn column_count(self) -> usize {
        1 << self.n
    }

    /// All columns, in bitmask order (empty column first).
    pub fn columns(self) -> impl DoubleEndedIterator<Item = Column> + Clone {
        (0..(1u32 << self.n)).map(|bits| Column(bits as u16))
    }

    /// The full alphabet as a column.
    pub fn full(self) -> Column {
        Column(((1u32 << self.n) - 1) as u16)
    }

    pub fn contains_word(self, word: &Word) -> bool {
        word.0.iter().all(|l| l.index() <= self.n)
    }

    pub fn check_word(self, word: &Word) -> Result<(), StylicError> {
        match word.0.iter().find(|l| l.index() > self.n) {
            Some(l) => Err(StylicError::LetterOutOfRange {
                index: l.index(),
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    pub fn theta_letter(self, letter: Letter) -> Letter {
        Letter((self.n + 1 - letter.index()) as u8)
    }

    pub fn theta_column(self, column: Column) -> Column {
        Column::from_letters(column.letters().map(|l| self.theta_letter(l)))
    }

    /// Reverses the word and reverses the order of each letter.
    pub fn theta_word(self, word: &Word) -> Word {
        Word(word.0.iter().rev().map(|&l| self.theta_letter(l)).collect())
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_length(self, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.letters().map(move |l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|len| self.words_of_length(len)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(s: &str) -> Column {
        Column::from_letters(Word::parse(s).unwrap().0)
    }

    fn l(c: char) -> Letter {
        Letter::from_symbol(c).unwrap()
    }

    #[test]
    fn left_insert_cases() {
        assert_eq!(left_insert(l('a'), Column::EMPTY), (col("a"), None));
        assert_eq!(left_insert(l('a'), col("b")), (col("a"), Some(l('b'))));
        assert_eq!(left_insert(l('b'), col("a")), (col("ba"), None));
        assert_eq!(left_insert(l('b'), col("db")), (col("db"), Some(l('b'))));
    }

    #[test]
    fn left_act_examples() {
        let g = col("dca");
        assert_eq!(left_act(&Word::empty(), g), g);
        assert_eq!(left_act(&g.word(), Column::EMPTY), g);
        assert_eq!(left_act(&Word::parse("dbabac").unwrap(), Column::EMPTY), col("dba"));
    }

    #[test]
    fn right_act_examples() {
        assert_eq!(right_act(col("a"), l('b')), (col("b"), Some(l('a'))));
        assert_eq!(right_act(Column::EMPTY, l('c')), (col("c"), None));
        assert_eq!(right_act(col("ca"), l('b')), (col("cb"), Some(l('a'))));
        assert_eq!(right_act(col("cb"), l('a')), (col("cba"), None));
        assert_eq!(right_act(col("cb"), l('c')), (col("cb"), Some(l('c'))));
    }

    #[test]
    fn frank_examples() {
        assert!(is_frank(col("a"), l('b')));
        assert!(!is_frank(Column::EMPTY, l('c')));
        assert!(!is_frank(col("ba"), l('b')));
        assert!(!is_frank(col("cb"), l('a')));
    }

    #[test]
    fn theta_examples() {
        let a4 = Alphabet::new(4).unwrap();
        assert_eq!(a4.theta_letter(Letter::new(1)), Letter::new(4));
        let a2 = Alphabet::new(2).unwrap();
        let ab = Word::parse("ab").unwrap();
        assert_eq!(a2.theta_word(&ab), ab);
        let a3 = Alphabet::new(3).unwrap();
        assert_eq!(a3.theta_column(col("ba")), col("cb"));
        assert_eq!(a3.theta_word(&Word::parse("aab").unwrap()), Word::parse("bcc").unwrap());
    }

    #[test]
    fn weights() {
        assert_eq!(Column::EMPTY.weight(), 0);
        assert_eq!(col("ba").weight(), 3);
    }

    #[test]
    fn alphabet_bounds() {
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(17).is_err());
        let a = Alphabet::new(16).unwrap();
        assert_eq!(a.columns().count(), 1 << 16);
        assert_eq!(a.full().height(), 16);
        assert!(Alphabet::new(3).unwrap().letter(4).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(Column::EMPTY.name(), "ε");
        assert_eq!(col("abd").name(), "dba");
        assert_eq!(Word::parse("ε").unwrap(), Word::empty());
        assert_eq!(col("dba").min(), Some(l('a')));
        assert_eq!(col("dba").max(), Some(l('d')));
    }

    #[test]
    fn words_enumeration() {
        let a = Alphabet::new(2).unwrap();
        let ws = a.words_up_to(2);
        let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
    }
}
