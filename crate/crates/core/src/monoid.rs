//! The stylic monoid `Styl(A)` realized as the monoid of endofunctions of the
//! set of columns generated by the left action of letters.
//!
//! Elements are identified by their full action table on all `2^n` columns.
//! Enumeration is a breadth-first closure from the identity under right
//! multiplication by letters, so every element's representative word is the
//! shortlex-first word reaching it.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::alphabet::{left_act, left_insert, Alphabet, Column, Letter, Word};
use crate::error::StylicError;

/// Default cap on the number of entries of a memoized multiplication table.
pub const DEFAULT_MEMO_BUDGET: usize = 1 << 22;

/// Index of an element inside its [`StylMonoid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElemId(pub u32);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An element of `Styl(A)`: its action table plus one representative word.
#[derive(Clone, Debug)]
pub struct StylElement {
    table: Box<[Column]>,
    rep_word: Word,
}

impl StylElement {
    /// `x · γ`.
    pub fn act(&self, column: Column) -> Column {
        self.table[column.index()]
    }

    pub fn table(&self) -> &[Column] {
        &self.table
    }

    pub fn rep_word(&self) -> &Word {
        &self.rep_word
    }
}

impl PartialEq for StylElement {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for StylElement {}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Memoize the full multiplication table when `|M|^2` is at most this.
    pub memo_budget: usize,
    /// Force memoization regardless of the budget.
    pub memoize: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            memo_budget: DEFAULT_MEMO_BUDGET,
            memoize: false,
        }
    }
}

/// A fully enumerated stylic monoid. Immutable once built.
pub struct StylMonoid {
    alphabet: Alphabet,
    elements: Vec<StylElement>,
    index: HashMap<Box<[Column]>, ElemId>,
    generators: Vec<ElemId>,
    // [x][a - 1] = x·a and a·x
    right: Vec<Vec<ElemId>>,
    left: Vec<Vec<ElemId>>,
    mult: Option<Vec<ElemId>>,
    ideals: OnceLock<Vec<Vec<u64>>>,
}

impl fmt::Debug for StylMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StylMonoid")
            .field("n", &self.alphabet.size())
            .field("size", &self.elements.len())
            .finish()
    }
}

fn letter_table(alphabet: Alphabet, letter: Letter) -> Box<[Column]> {
    alphabet.columns().map(|c| left_insert(letter, c).0).collect()
}

fn compose(outer: &[Column], inner: &[Column]) -> Box<[Column]> {
    inner.iter().map(|c| outer[c.index()]).collect()
}

impl StylMonoid {
    pub fn enumerate(n: usize) -> Result<StylMonoid, StylicError> {
        StylMonoid::enumerate_with(n, EnumerateOptions::default())
    }

    pub fn enumerate_with(n: usize, options: EnumerateOptions) -> Result<StylMonoid, StylicError> {
        let alphabet = Alphabet::new(n)?;
        let letter_tables: Vec<Box<[Column]>> =
            alphabet.letters().map(|l| letter_table(alphabet, l)).collect();

        let identity: Box<[Column]> = alphabet.columns().collect();
        let mut elements = vec![StylElement {
            table: identity.clone(),
            rep_word: Word::empty(),
        }];
        let mut index = HashMap::new();
        index.insert(identity, ElemId(0));
        let mut right: Vec<Vec<ElemId>> = Vec::new();

        let mut queue = VecDeque::from([ElemId(0)]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for (a, lt) in alphabet.letters().zip(&letter_tables) {
                // (x·a)·γ = x·(a·γ)
                let table = compose(&elements[x.index()].table, lt);
                let id = match index.get(&table) {
                    Some(&id) => id,
                    None => {
                        let id = ElemId(elements.len() as u32);
                        let mut rep_word = elements[x.index()].rep_word.clone();
                        rep_word.push(a);
                        index.insert(table.clone(), id);
                        elements.push(StylElement { table, rep_word });
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            debug_assert_eq!(right.len(), x.index());
            right.push(row);
        }

        let generators: Vec<ElemId> = right[0].clone();
        let left = elements
            .iter()
            .map(|e| {
                letter_tables
                    .iter()
                    .map(|lt| index[&compose(lt, &e.table)])
                    .collect()
            })
            .collect();

        let mut monoid = StylMonoid {
            alphabet,
            elements,
            index,
            generators,
            right,
            left,
            mult: None,
            ideals: OnceLock::new(),
        };
        let size = monoid.size();
        if options.memoize || size.saturating_mul(size) <= options.memo_budget {
            let mult = (0..size)
                .flat_map(|x| (0..size).map(move |y| (x, y)))
                .map(|(x, y)| monoid.compose_ids(ElemId(x as u32), ElemId(y as u32)))
                .collect();
            monoid.mult = Some(mult);
        }
        Ok(monoid)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.alphabet.size()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_memoized(&self) -> bool {
        self.mult.is_some()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = ElemId> + ExactSizeIterator + Clone {
        (0..self.elements.len() as u32).map(ElemId)
    }

    pub fn element(&self, id: ElemId) -> &StylElement {
        &self.elements[id.index()]
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn generator(&self, letter: Letter) -> ElemId {
        self.generators[letter.index() - 1]
    }

    pub fn rep_word(&self, id: ElemId) -> &Word {
        &self.elements[id.index()].rep_word
    }

    /// Looks up the element with the given action table.
    pub fn find(&self, table: &[Column]) -> Option<ElemId> {
        self.index.get(table).copied()
    }

    /// `μ(w)`, computed from the action of `w` on every column.
    pub fn element_of_word(&self, word: &Word) -> Result<ElemId, StylicError> {
        self.alphabet.check_word(word)?;
        let table: Box<[Column]> = self.alphabet.columns().map(|c| left_act(word, c)).collect();
        Ok(self.index[&table])
    }

    /// `μ(w)` by walking the right Cayley graph.
    pub fn element_of_word_fast(&self, word: &Word) -> ElemId {
        word.letters()
            .iter()
            .fold(self.identity(), |x, &a| self.right_mul_letter(x, a))
    }

    fn compose_ids(&self, x: ElemId, y: ElemId) -> ElemId {
        let table = compose(&self.elements[x.index()].table, &self.elements[y.index()].table);
        self.index[&table]
    }

    pub fn multiply(&self, x: ElemId, y: ElemId) -> ElemId {
        match &self.mult {
            Some(mult) => mult[x.index() * self.size() + y.index()],
            None => self.compose_ids(x, y),
        }
    }

    pub fn right_mul_letter(&self, x: ElemId, letter: Letter) -> ElemId {
        self.right[x.index()][letter.index() - 1]
    }

    pub fn left_mul_letter(&self, letter: Letter, x: ElemId) -> ElemId {
        self.left[x.index()][letter.index() - 1]
    }

    pub fn act(&self, x: ElemId, column: Column) -> Column {
        self.elements[x.index()].act(column)
    }

    pub fn stylic_equivalent(&self, u: &Word, v: &Word) -> Result<bool, StylicError> {
        Ok(self.element_of_word(u)? == self.element_of_word(v)?)
    }

    pub fn is_idempotent(&self, x: ElemId) -> bool {
        self.multiply(x, x) == x
    }

    /// `η(x) = x · ∅`, the first column of the P-symbol of any representative.
    pub fn eta(&self, x: ElemId) -> Column {
        self.act(x, Column::EMPTY)
    }

    /// Letters `a` with `a·x = x`.
    pub fn lfix(&self, x: ElemId) -> Column {
        Column::from_letters(
            self.alphabet
                .letters()
                .filter(|&a| self.left_mul_letter(a, x) == x),
        )
    }

    /// Letters `a` with `x·a = x`, scanned directly.
    pub fn right_fixers(&self, x: ElemId) -> Column {
        Column::from_letters(
            self.alphabet
                .letters()
                .filter(|&a| self.right_mul_letter(x, a) == x),
        )
    }

    /// The image of `x` under the anti-automorphism induced by order reversal.
    pub fn theta_element(&self, x: ElemId) -> ElemId {
        let word = self.alphabet.theta_word(self.rep_word(x));
        self.element_of_word_fast(&word)
    }

    /// `θ(η(θ(x)))`.
    pub fn rfix(&self, x: ElemId) -> Column {
        self.alphabet.theta_column(self.eta(self.theta_element(x)))
    }

    fn ideals(&self) -> &Vec<Vec<u64>> {
        self.ideals.get_or_init(|| {
            let words = self.size().div_ceil(64);
            self.ids()
                .map(|y| {
                    let mut set = vec![0u64; words];
                    let mut stack = vec![y];
                    set[y.index() / 64] |= 1 << (y.index() % 64);
                    while let Some(z) = stack.pop() {
                        for a in self.alphabet.letters() {
                            for next in [self.left_mul_letter(a, z), self.right_mul_letter(z, a)] {
                                let (w, b) = (next.index() / 64, next.index() % 64);
                                if set[w] & (1 << b) == 0 {
                                    set[w] |= 1 << b;
                                    stack.push(next);
                                }
                            }
                        }
                    }
                    set
                })
                .collect()
        })
    }

    /// `x ≤_J y`, i.e. `x ∈ M y M`.
    pub fn j_leq(&self, x: ElemId, y: ElemId) -> bool {
        self.ideals()[y.index()][x.index() / 64] & (1 << (x.index() % 64)) != 0
    }

    /// Size of the two-sided ideal `M x M`.
    pub fn ideal_size(&self, x: ElemId) -> usize {
        self.ideals()[x.index()]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// A linear extension of `≤_J`, smallest elements first.
    ///
    /// Sorting by ideal size works because `x <_J y` makes `MxM` a proper
    /// subset of `MyM`.
    pub fn j_linear_extension(&self) -> Vec<ElemId> {
        let mut order: Vec<ElemId> = self.ids().collect();
        order.sort_by_key(|&x| (self.ideal_size(x), x));
        order
    }

    pub fn idempotents(&self) -> Vec<ElemId> {
        self.ids().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn to_json(&self) -> MonoidJson {
        MonoidJson {
            n: self.n(),
            size: self.size(),
            elements: self
                .ids()
                .map(|id| {
                    let e = self.element(id);
                    ElementJson {
                        id: id.0,
                        rep_word: e.rep_word.letters().iter().map(|l| l.symbol()).collect(),
                        table: e.table.iter().map(|c| c.bits()).collect(),
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub id: u32,
    pub rep_word: String,
    pub table: Vec<u16>,
}

/// JSON form of an enumerated monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub n: usize,
    pub size: usize,
    pub elements: Vec<ElementJson>,
}

impl MonoidJson {
    /// Checks a serialized monoid against a fresh enumeration.
    pub fn matches(&self, monoid: &StylMonoid) -> bool {
        *self == monoid.to_json()
    }
}

/// Maps `Styl` on `n - 1` letters into `Styl` on `n` letters by shifting every
/// letter up by one. Returns the image of each element of `small`, or a
/// description of the first failure of injectivity, closure or multiplicativity.
pub fn shifted_embedding(small: &StylMonoid, big: &StylMonoid) -> Result<Vec<ElemId>, String> {
    if big.n() != small.n() + 1 {
        return Err(format!("alphabet sizes {} and {} are not consecutive", small.n(), big.n()));
    }
    let shift = |w: &Word| Word(w.letters().iter().map(|l| Letter::new(l.index() + 1)).collect());
    let image: Vec<ElemId> = small
        .ids()
        .map(|x| big.element_of_word_fast(&shift(small.rep_word(x))))
        .collect();

    // Submonoid of `big` generated by letters 2..=n.
    let mut seen = vec![false; big.size()];
    let mut stack = vec![big.identity()];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for a in big.alphabet().letters().skip(1) {
            let y = big.right_mul_letter(x, a);
            if !seen[y.index()] {
                seen[y.index()] = true;
                stack.push(y);
            }
        }
    }
    let sub_size = seen.iter().filter(|&&s| s).count();
    if sub_size != small.size() {
        return Err(format!(
            "submonoid on letters 2..={} has {} elements, expected {}",
            big.n(),
            sub_size,
            small.size()
        ));
    }
    let mut hit = vec![false; big.size()];
    for (x, &img) in image.iter().enumerate() {
        if !seen[img.index()] || std::mem::replace(&mut hit[img.index()], true) {
            return Err(format!("element {} of the small monoid is not mapped injectively", small.rep_word(ElemId(x as u32))));
        }
    }
    for x in small.ids() {
        for y in small.ids() {
            let lhs = image[small.multiply(x, y).index()];
            let rhs = big.multiply(image[x.index()], image[y.index()]);
            if lhs != rhs {
                return Err(format!(
                    "multiplication not preserved at ({}, {})",
                    small.rep_word(x),
                    small.rep_word(y)
                ));
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn small_cardinalities() {
        assert_eq!(StylMonoid::enumerate(1).unwrap().size(), 2);
        let m2 = StylMonoid::enumerate(2).unwrap();
        assert_eq!(m2.size(), 5);
        let reps: Vec<String> = m2.ids().map(|x| m2.rep_word(x).to_string()).collect();
        assert_eq!(reps, ["ε", "a", "b", "ab", "ba"]);
    }

    #[test]
    fn out_of_range() {
        assert!(StylMonoid::enumerate(0).is_err());
        let m = StylMonoid::enumerate(2).unwrap();
        assert!(m.element_of_word(&w("c")).is_err());
    }

    #[test]
    fn element_of_word_examples() {
        let m = StylMonoid::enumerate(2).unwrap();
        assert_eq!(m.element_of_word(&Word::empty()).unwrap(), m.identity());
        assert_eq!(m.element_of_word(&w("aa")).unwrap(), m.element_of_word(&w("a")).unwrap());
        assert_eq!(m.element_of_word(&w("bab")).unwrap(), m.element_of_word(&w("ba")).unwrap());
        assert!(m.stylic_equivalent(&w("a"), &w("aa")).unwrap());
        assert!(!m.stylic_equivalent(&w("ab"), &w("ba")).unwrap());
    }

    #[test]
    fn multiply_examples() {
        let m = StylMonoid::enumerate(2).unwrap();
        let a = m.generator(Letter::new(1));
        let b = m.generator(Letter::new(2));
        for x in m.ids() {
            assert_eq!(m.multiply(m.identity(), x), x);
            assert_eq!(m.multiply(x, m.identity()), x);
        }
        assert_eq!(m.multiply(a, a), a);
        let ab = m.multiply(a, b);
        assert_eq!(ab, m.element_of_word(&w("ab")).unwrap());
        // a·(b·∅) = a·{b} = {a}
        assert_eq!(m.act(ab, Column::EMPTY), Column::from_letters([Letter::new(1)]));
    }

    #[test]
    fn memoized_and_on_demand_agree() {
        let memo = StylMonoid::enumerate_with(3, EnumerateOptions { memo_budget: 0, memoize: true }).unwrap();
        let lazy = StylMonoid::enumerate_with(3, EnumerateOptions { memo_budget: 0, memoize: false }).unwrap();
        assert!(memo.is_memoized() && !lazy.is_memoized());
        for x in memo.ids() {
            for y in memo.ids() {
                assert_eq!(memo.multiply(x, y), lazy.multiply(x, y));
            }
        }
    }

    #[test]
    fn eta_examples() {
        let m = StylMonoid::enumerate(2).unwrap();
        assert_eq!(m.eta(m.identity()), Column::EMPTY);
        let ba = m.element_of_word(&w("ba")).unwrap();
        assert_eq!(m.eta(ba), Column::from_bits(0b11));
        let m4 = StylMonoid::enumerate(4).unwrap();
        let x = m4.element_of_word(&w("dbabac")).unwrap();
        assert_eq!(m4.eta(x).name(), "dba");
    }

    #[test]
    fn fixers_of_small_elements() {
        let m = StylMonoid::enumerate(2).unwrap();
        let a = m.generator(Letter::new(1));
        assert_eq!(m.lfix(m.identity()), Column::EMPTY);
        assert_eq!(m.rfix(m.identity()), Column::EMPTY);
        assert_eq!(m.lfix(a).name(), "a");
        assert_eq!(m.rfix(a).name(), "a");
    }

    #[test]
    fn theta_examples() {
        let m = StylMonoid::enumerate(2).unwrap();
        assert_eq!(m.theta_element(m.identity()), m.identity());
        assert_eq!(m.theta_element(m.generator(Letter::new(1))), m.generator(Letter::new(2)));
        let ab = m.element_of_word(&w("ab")).unwrap();
        assert_eq!(m.theta_element(ab), ab);
    }

    #[test]
    fn j_order_examples() {
        let m = StylMonoid::enumerate(2).unwrap();
        let a = m.generator(Letter::new(1));
        let ab = m.element_of_word(&w("ab")).unwrap();
        let one = m.identity();
        assert!(m.j_leq(ab, ab));
        assert!(m.j_leq(ab, a));
        assert!(!m.j_leq(a, ab));
        assert!(!m.j_leq(one, a));
        assert!(m.j_leq(a, one));
        let order = m.j_linear_extension();
        assert_eq!(*order.last().unwrap(), one);
    }

    #[test]
    fn json_shape() {
        let m = StylMonoid::enumerate(1).unwrap();
        let json = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"n":1,"size":2,"elements":[{"id":0,"rep_word":"","table":[0,1]},{"id":1,"rep_word":"a","table":[1,1]}]}"#
        );
        let back: MonoidJson = serde_json::from_str(&json).unwrap();
        assert!(back.matches(&m));
    }

    #[test]
    fn embedding_n3() {
        let m2 = StylMonoid::enumerate(2).unwrap();
        let m3 = StylMonoid::enumerate(3).unwrap();
        let image = shifted_embedding(&m2, &m3).unwrap();
        assert_eq!(image.len(), 5);
        assert!(shifted_embedding(&m2, &StylMonoid::enumerate(4).unwrap()).is_err());
    }
}
