//! The complete invariant suite: every structural identity of the stylic
//! monoid, its algebra, the quiver and the Cartan matrix, checked exactly.
//!
//! Word-indexed identities are checked exhaustively up to a length bound for
//! alphabets of size at most [`EXHAUSTIVE_LIMIT`], and on a seeded random sample
//! of words beyond that. Everything indexed by columns, letters, elements,
//! edges or paths is always exhaustive.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, StylAlgebra};
use crate::alphabet::{
    is_frank, left_act, left_insert, right_act, right_act_word, Alphabet, Column, Letter, Word,
};
use crate::cartan::{cartan_combinatorial, cartan_linear, fixing_idempotent, projective_basis, Side};
use crate::error::StylicError;
use crate::monoid::{shifted_embedding, ElemId, EnumerateOptions, StylMonoid};
use crate::quiver::{complement_word, loops_removal, Path, Quiver, QuiverMap};
use crate::tableaux::{all_tableaux, p_symbol, plactic_equivalent};

/// Largest alphabet for which word-indexed checks are exhaustive.
pub const EXHAUSTIVE_LIMIT: usize = 4;
pub const DEFAULT_SEED: u64 = 0x5717_1c00;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    /// Random cases per word-indexed check beyond the exhaustive limit.
    pub samples: usize,
    /// Length bound for the surjectivity word search.
    pub max_search_len: usize,
    pub memoize: bool,
}

impl VerifyConfig {
    pub fn new(n: usize) -> VerifyConfig {
        VerifyConfig {
            n,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            max_search_len: 2 * n,
            memoize: false,
        }
    }
}

/// One named check: how many cases ran and the first counterexample, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub group: &'static str,
    pub name: String,
    pub cases: u64,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub size: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}  |Styl| = {}  seed = {:#x}", self.n, self.size, self.seed)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {verdict}  {:<9} {:<width$} {:>9} cases",
                c.group,
                c.name,
                c.cases,
                width = width
            )?;
            if let Some(w) = &c.failure {
                writeln!(f, "        counterexample: {w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn into_check(self, group: &'static str, name: &str) -> Check {
        Check {
            group,
            name: name.to_string(),
            cases: self.cases,
            failure: self.failure,
        }
    }
}

/// Runs the suite for a single alphabet size.
pub fn verify(config: &VerifyConfig) -> Result<VerifyReport, StylicError> {
    let options = EnumerateOptions {
        memoize: config.memoize,
        ..EnumerateOptions::default()
    };
    let monoid = StylMonoid::enumerate_with(config.n, options)?;
    let smaller = if config.n > 1 {
        Some(StylMonoid::enumerate_with(config.n - 1, options)?)
    } else {
        None
    };
    let suite = Suite::new(config, &monoid)?;
    let mut checks = Vec::new();
    checks.extend(suite.alphabet_checks());
    checks.extend(suite.tableau_checks());
    checks.extend(suite.monoid_checks(smaller.as_ref()));
    checks.extend(suite.algebra_checks());
    checks.extend(suite.quiver_checks()?);
    checks.extend(suite.cartan_checks());
    Ok(VerifyReport {
        n: config.n,
        size: monoid.size(),
        seed: config.seed,
        checks,
    })
}

/// Runs the suite for every alphabet size from 1 up to `config.n`.
pub fn verify_up_to(config: &VerifyConfig) -> Result<Vec<VerifyReport>, StylicError> {
    (1..=config.n)
        .map(|n| {
            verify(&VerifyConfig {
                n,
                max_search_len: config.max_search_len.max(2 * n),
                ..*config
            })
        })
        .collect()
}

struct Suite<'m> {
    config: VerifyConfig,
    alphabet: Alphabet,
    monoid: &'m StylMonoid,
    quiver: Quiver,
    extended: Quiver,
    map: QuiverMap<'m>,
}

fn l(index: usize) -> Letter {
    Letter::new(index)
}

impl<'m> Suite<'m> {
    fn new(config: &VerifyConfig, monoid: &'m StylMonoid) -> Result<Suite<'m>, StylicError> {
        Ok(Suite {
            config: *config,
            alphabet: monoid.alphabet(),
            monoid,
            quiver: Quiver::build(config.n)?,
            extended: Quiver::build_extended(config.n)?,
            map: QuiverMap::new(monoid),
        })
    }

    fn exhaustive(&self) -> bool {
        self.alphabet.size() <= EXHAUSTIVE_LIMIT
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn random_word(&self, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
        let len = rng.gen_range(0..=max_len);
        Word((0..len).map(|_| l(rng.gen_range(1..=self.alphabet.size()))).collect())
    }

    fn random_column(&self, rng: &mut ChaCha8Rng) -> Column {
        Column::from_bits(rng.gen_range(0..self.alphabet.column_count()) as u16)
    }

    /// All words up to `max_len` when exhaustive, else seeded random words.
    fn words(&self, max_len: usize, salt: u64) -> Vec<Word> {
        if self.exhaustive() {
            self.alphabet.words_up_to(max_len)
        } else {
            let mut rng = self.rng(salt);
            (0..self.config.samples).map(|_| self.random_word(&mut rng, max_len)).collect()
        }
    }

    /// `(γ, w)` pairs: all columns times all words when exhaustive.
    fn column_words(&self, max_len: usize, salt: u64) -> Vec<(Column, Word)> {
        if self.exhaustive() {
            let words = self.alphabet.words_up_to(max_len);
            self.alphabet
                .columns()
                .flat_map(|g| words.iter().map(move |w| (g, w.clone())))
                .collect()
        } else {
            let mut rng = self.rng(salt);
            (0..self.config.samples)
                .map(|_| (self.random_column(&mut rng), self.random_word(&mut rng, max_len)))
                .collect()
        }
    }

    fn mu(&self, word: &Word) -> ElemId {
        self.monoid.element_of_word_fast(word)
    }

    fn alphabet_checks(&self) -> Vec<Check> {
        let a = self.alphabet;
        let columns: Vec<Column> = a.columns().collect();
        let mut out = Vec::new();

        let mut t = Tally::default();
        for &gamma in &columns {
            for &delta in columns.iter().filter(|d| d.height() == gamma.height()) {
                for b in a.letters() {
                    for c in a.letters() {
                        let left = left_insert(b, delta) == (gamma, Some(c));
                        let right = right_act(gamma, c) == (delta, Some(b));
                        t.record(left == right, || format!("γ={gamma} δ={delta} b={b} c={c}"));
                    }
                }
            }
        }
        out.push(t.into_check("alphabet", "left-right action duality"));

        let mut t = Tally::default();
        for (gamma, w) in self.column_words(6, 1) {
            let lhs = right_act_word(gamma, &w);
            let rhs = a.theta_column(left_act(&a.theta_word(&w), a.theta_column(gamma)));
            t.record(lhs == rhs, || format!("γ={gamma} w={w}: {lhs} ≠ {rhs}"));
        }
        out.push(t.into_check("alphabet", "θ conjugates left and right actions"));

        let mut t = Tally::default();
        for &gamma in &columns {
            for c in a.letters() {
                let (delta, bumped) = right_act(gamma, c);
                if is_frank(gamma, c) {
                    t.record(
                        delta.height() == gamma.height() && delta.weight() > gamma.weight() && bumped.is_some(),
                        || format!("frank γ={gamma} c={c} gives {delta}"),
                    );
                } else {
                    t.record(
                        delta == gamma || delta.height() == gamma.height() + 1,
                        || format!("non-frank γ={gamma} c={c} gives {delta}"),
                    );
                }
            }
        }
        out.push(t.into_check("alphabet", "frank actions keep height, raise weight"));

        let mut t = Tally::default();
        for (gamma, w) in self.column_words(5, 2) {
            let left = left_act(&w, gamma);
            let right = right_act_word(gamma, &w);
            t.record(
                left.height() >= gamma.height() && right.height() >= gamma.height(),
                || format!("γ={gamma} w={w}"),
            );
        }
        out.push(t.into_check("alphabet", "actions never decrease height"));

        let mut t = Tally::default();
        for x in a.letters() {
            t.record(a.theta_letter(a.theta_letter(x)) == x, || format!("letter {x}"));
        }
        for &g in &columns {
            t.record(a.theta_column(a.theta_column(g)) == g, || format!("column {g}"));
            t.record(a.theta_column(g).word() == a.theta_word(&g.word()), || format!("column word {g}"));
        }
        let words = self.words(4, 3);
        for (u, v) in words.iter().zip(words.iter().rev()) {
            t.record(a.theta_word(&a.theta_word(u)) == *u, || format!("word {u}"));
            t.record(
                a.theta_word(&u.concat(v)) == a.theta_word(v).concat(&a.theta_word(u)),
                || format!("θ({u}{v})"),
            );
        }
        out.push(t.into_check("alphabet", "θ is an involutive anti-automorphism"));
        out
    }

    fn tableau_checks(&self) -> Vec<Check> {
        let n = self.alphabet.size();
        let mut out = Vec::new();

        let mut t = Tally::default();
        if n <= EXHAUSTIVE_LIMIT {
            for tab in all_tableaux(n, 6) {
                let w = tab.column_reading_word();
                t.record(p_symbol(&w) == tab, || format!("tableau with reading word {w}"));
            }
        } else {
            let mut rng = self.rng(10);
            for _ in 0..self.config.samples {
                let tab = p_symbol(&self.random_word(&mut rng, 10));
                let w = tab.column_reading_word();
                t.record(p_symbol(&w) == tab, || format!("tableau with reading word {w}"));
            }
        }
        out.push(t.into_check("tableaux", "P(reading word of T) = T"));

        let mut plactic = Tally::default();
        let mut stylic = Tally::default();
        for (lhs, rhs) in knuth_relations(n) {
            plactic.record(plactic_equivalent(&lhs, &rhs), || format!("{lhs} ≢ {rhs}"));
            stylic.record(self.mu(&lhs) == self.mu(&rhs), || format!("{lhs} ≢styl {rhs}"));
        }
        for x in self.alphabet.letters() {
            let xx = Word(vec![x, x]);
            let single = Word(vec![x]);
            stylic.record(self.mu(&xx) == self.mu(&single), || format!("{x}{x} ≢styl {x}"));
            plactic.record(!plactic_equivalent(&xx, &single), || format!("{x}{x} ≡plax {x}"));
        }
        out.push(plactic.into_check("tableaux", "Knuth relations are plactic"));
        out.push(stylic.into_check("monoid", "Knuth and idempotent relations are stylic"));

        let mut t = Tally::default();
        let mut rng = self.rng(11);
        for _ in 0..self.config.samples {
            let w = self.random_word(&mut rng, 8);
            let first = p_symbol(&w).first_column();
            t.record(first == left_act(&w, Column::EMPTY), || format!("w={w}"));
        }
        out.push(t.into_check("tableaux", "first column of P(w) = w·∅"));

        // Plactic classes refine stylic classes.
        let mut t = Tally::default();
        let mut classes: HashMap<Vec<Column>, ElemId> = HashMap::new();
        for w in self.words(6, 12) {
            let key = p_symbol(&w).columns().to_vec();
            let x = self.mu(&w);
            let first = *classes.entry(key).or_insert(x);
            t.record(first == x, || format!("plactic class of {w} splits"));
        }
        out.push(t.into_check("tableaux", "plactic equivalence implies stylic"));
        out
    }

    fn monoid_checks(&self, smaller: Option<&StylMonoid>) -> Vec<Check> {
        let m = self.monoid;
        let a = self.alphabet;
        let mut out = Vec::new();

        // Closure soundness and completeness against direct action tables.
        let mut t = Tally::default();
        if self.exhaustive() {
            let depth = m.ids().map(|x| m.rep_word(x).len()).max().unwrap_or(0);
            let mut seen = vec![false; m.size()];
            for w in a.words_up_to(depth) {
                let table: Vec<Column> = a.columns().map(|c| left_act(&w, c)).collect();
                match m.find(&table) {
                    Some(x) => {
                        seen[x.index()] = true;
                        t.record(x == self.mu(&w), || format!("Cayley walk disagrees on {w}"));
                    }
                    None => t.record(false, || format!("table of {w} missing")),
                }
            }
            t.record(seen.iter().all(|&s| s), || "some element unreachable".to_string());
        } else {
            let mut rng = self.rng(20);
            for _ in 0..self.config.samples {
                let w = self.random_word(&mut rng, 3 * a.size());
                let table: Vec<Column> = a.columns().map(|c| left_act(&w, c)).collect();
                t.record(m.find(&table) == Some(self.mu(&w)), || format!("table of {w}"));
            }
        }
        out.push(t.into_check("monoid", "enumeration matches direct action tables"));

        let mut t = Tally::default();
        for x in m.ids() {
            let table_ok = a
                .columns()
                .all(|g| m.act(x, g).height() >= g.height() && m.act(x, g) == left_act(m.rep_word(x), g));
            t.record(table_ok, || format!("table of {}", m.rep_word(x)));
        }
        out.push(t.into_check("monoid", "tables act by representatives, never lower height"));

        let mut t = Tally::default();
        for g in a.columns() {
            let x = self.mu(&g.word());
            t.record(m.is_idempotent(x), || format!("decreasing word {g}"));
        }
        out.push(t.into_check("monoid", "decreasing words are idempotent"));

        let mut t = Tally::default();
        for x in m.ids() {
            for y in m.ids() {
                if x < y {
                    t.record(!(m.j_leq(x, y) && m.j_leq(y, x)), || {
                        format!("{} and {} are J-equivalent", m.rep_word(x), m.rep_word(y))
                    });
                }
            }
        }
        out.push(t.into_check("monoid", "J-order is antisymmetric"));

        let mut t = Tally::default();
        for x in m.ids() {
            let content = m.rep_word(x).content();
            for s in a.letters().filter(|&s| content.min().is_none_or(|c| s <= c)) {
                let ga = m.generator(s);
                let lhs = m.multiply(m.multiply(ga, x), ga);
                t.record(lhs == m.multiply(x, ga), || format!("a={s} x={}", m.rep_word(x)));
            }
        }
        out.push(t.into_check("monoid", "axa = xa for letters of x at least a"));

        let mut first = Tally::default();
        let mut second = Tally::default();
        for (xs, y, zs) in superplax_chains(a.size()) {
            let (xw, zw, yw) = (Word(xs.clone()), Word(zs.clone()), Word(vec![y]));
            let lhs = xw.concat(&zw).concat(&yw);
            let rhs = zw.concat(&xw).concat(&yw);
            first.record(self.mu(&lhs) == self.mu(&rhs), || format!("{lhs} vs {rhs}"));
            let lhs = yw.concat(&xw).concat(&zw);
            let rhs = yw.concat(&zw).concat(&xw);
            second.record(self.mu(&lhs) == self.mu(&rhs), || format!("{lhs} vs {rhs}"));
        }
        out.push(first.into_check("monoid", "superplax (x…)(z…)y ≡ (z…)(x…)y"));
        out.push(second.into_check("monoid", "superplax y(x…)(z…) ≡ y(z…)(x…)"));

        let mut t = Tally::default();
        for x in m.ids() {
            let tx = m.theta_element(x);
            t.record(m.theta_element(tx) == x, || format!("θθ({}) ≠ itself", m.rep_word(x)));
            t.record(m.lfix(x) == m.eta(x), || format!("lfix({}) ≠ η", m.rep_word(x)));
            t.record(m.rfix(x) == m.right_fixers(x), || format!("rfix({}) ≠ right fixers", m.rep_word(x)));
            t.record(
                m.eta(x) == p_symbol(m.rep_word(x)).first_column(),
                || format!("η({}) ≠ first column of P", m.rep_word(x)),
            );
        }
        for x in m.ids() {
            for y in m.ids() {
                let lhs = m.theta_element(m.multiply(x, y));
                let rhs = m.multiply(m.theta_element(y), m.theta_element(x));
                t.record(lhs == rhs, || format!("θ({}·{})", m.rep_word(x), m.rep_word(y)));
            }
        }
        for w in self.words(5, 21) {
            let via_word = self.mu(&a.theta_word(&w));
            t.record(m.theta_element(self.mu(&w)) == via_word, || format!("θ depends on representative {w}"));
        }
        out.push(t.into_check("monoid", "θ, η, lfix and rfix identities"));

        let mut t = Tally::default();
        for x in m.ids() {
            let left = fixing_idempotent(m, x, Side::Left);
            let right = fixing_idempotent(m, x, Side::Right);
            t.record(left == Some(self.mu(&m.eta(x).word())), || format!("lfix idempotent of {}", m.rep_word(x)));
            t.record(right == Some(self.mu(&m.rfix(x).word())), || format!("rfix idempotent of {}", m.rep_word(x)));
        }
        out.push(t.into_check("monoid", "J-minimal fixing idempotents are columns"));

        if let Some(small) = smaller {
            let mut t = Tally::default();
            let result = shifted_embedding(small, m);
            t.record(result.is_ok(), || result.clone().unwrap_err());
            t.cases = (small.size() * small.size()) as u64;
            out.push(t.into_check("monoid", "Styl(n-1) embeds on letters 2..n"));
        }
        out
    }

    fn algebra_checks(&self) -> Vec<Check> {
        let m = self.monoid;
        let alg = StylAlgebra::new(m);
        let mut out = Vec::new();

        let report = alg.verify_idempotent_system();
        let columns = self.alphabet.column_count() as u64;
        let cases = [columns * columns, 1, columns, columns];
        for ((name, outcome), cases) in report.checks().into_iter().zip(cases) {
            out.push(Check {
                group: "algebra",
                name: format!("e_γ {name}"),
                cases,
                failure: outcome.witness.clone(),
            });
        }

        let mut t = Tally::default();
        for g in self.alphabet.columns() {
            let e = self.map.idempotent(g);
            t.record(alg.mul_element(e, self.mu(&g.word())) == *e, || format!("e_{g}·{g} ≠ e_{g}"));
        }
        out.push(t.into_check("algebra", "e_γ·γ = e_γ"));

        let mut second = Tally::default();
        let mut third = Tally::default();
        for x in m.ids() {
            let content = m.rep_word(x).content();
            let xe = AlgebraElement::basis(x);
            for s in self.alphabet.letters().filter(|&s| content.min().is_none_or(|c| s <= c)) {
                let one_minus = alg.one_minus(s);
                let lhs = alg.mul(&alg.mul(&one_minus, &xe), &alg.letter(s));
                second.record(lhs.is_zero(), || format!("(1-{s})·{}·{s} ≠ 0", m.rep_word(x)));
                let lhs = alg.mul(&alg.mul(&one_minus, &xe), &one_minus);
                third.record(lhs == alg.mul(&one_minus, &xe), || format!("a={s} x={}", m.rep_word(x)));
            }
        }
        out.push(second.into_check("algebra", "(1-a)xa = 0"));
        out.push(third.into_check("algebra", "(1-a)x(1-a) = (1-a)x"));

        let mut t = Tally::default();
        match alg.triangular_basis() {
            Ok(tb) => {
                t.record(tb.rank == m.size(), || format!("rank {} ≠ {}", tb.rank, m.size()));
                t.cases = m.size() as u64;
            }
            Err(e) => t.record(false, || e.to_string()),
        }
        out.push(t.into_check("algebra", "e_η(x)·x is a unitriangular basis"));

        // e_γ μ(w) = e_γ x for some w with μ(γw) = x, found by search.
        let mut t = Tally::default();
        let witnesses = self
            .map
            .surjection_witnesses(&self.extended, self.config.max_search_len);
        match &witnesses {
            Ok(ws) => {
                for wt in ws {
                    let via_word = alg.mul_element(self.map.idempotent(wt.start), self.mu(&wt.word));
                    let via_x = alg.mul_element(self.map.idempotent(wt.start), wt.element);
                    t.record(via_word == via_x, || format!("x={} w={}", m.rep_word(wt.element), wt.word));
                }
            }
            Err(e) => t.record(false, || e.to_string()),
        }
        out.push(t.into_check("algebra", "e_γ·μ(w) = e_γ·x when μ(γw) = x"));
        out
    }

    fn quiver_checks(&self) -> Result<Vec<Check>, StylicError> {
        let m = self.monoid;
        let a = self.alphabet;
        let alg = StylAlgebra::new(m);
        let mut out = Vec::new();

        let mut t = Tally::default();
        for e in self.quiver.edges() {
            t.record(
                is_frank(e.source, e.label)
                    && e.target == right_act(e.source, e.label).0
                    && e.source.height() == e.target.height()
                    && e.source.weight() < e.target.weight(),
                || format!("edge {} -{}-> {}", e.source, e.label, e.target),
            );
        }
        t.record(self.quiver.is_acyclic(), || "Q(A) has a cycle".into());
        t.record(self.quiver.is_deterministic(), || "Q(A) is not deterministic".into());
        out.push(t.into_check("quiver", "Q(A) edges are frank, acyclic, deterministic"));

        let mut t = Tally::default();
        t.record(self.extended.is_deterministic(), || "Q'(A) is not deterministic".into());
        for g in a.columns() {
            for c in a.letters() {
                let has_edge = self.extended.step(g, c).is_some();
                let expected = g.min().is_some_and(|m| c >= m);
                t.record(has_edge == expected, || format!("edge {c} at {g}"));
            }
        }
        out.push(t.into_check("quiver", "Q'(A) has an edge c at γ iff c ≥ min γ"));

        // A word labels a Q'-path iff every prefix keeps the height.
        let mut t = Tally::default();
        for (g, w) in self.column_words(5, 30) {
            let exists = self.extended.walk(g, &w).is_some();
            let prefixes_keep = !g.is_empty()
                && (0..=w.len()).all(|k| right_act_word(g, &Word(w.letters()[..k].to_vec())).height() == g.height())
                || w.is_empty();
            t.record(exists == prefixes_keep, || format!("γ={g} w={w}"));
        }
        out.push(t.into_check("quiver", "Q'-paths are exactly height-preserving words"));

        let mut first = Tally::default();
        let mut second = Tally::default();
        for e in self.quiver.edges() {
            let (_, bumped) = right_act(e.source, e.label);
            let b = bumped.expect("frank actions bump");
            let (eg, ed) = (self.map.idempotent(e.source), self.map.idempotent(e.target));
            let (gb, gc) = (m.generator(b), m.generator(e.label));
            let lhs = alg.mul_element(&alg.element_mul(gb, eg), gc);
            let rhs = alg.element_mul(m.multiply(gb, gc), ed);
            first.record(lhs == rhs, || format!("b e_γ c ≠ bc e_δ on {} -{}-> {}", e.source, e.label, e.target));
            let egc = alg.mul_element(eg, gc);
            second.record(alg.mul(&egc, ed) == egc, || format!("e_γ c e_δ ≠ e_γ c on {} -{}-> {}", e.source, e.label, e.target));
        }
        out.push(first.into_check("quiver", "b·e_γ·c = bc·e_δ on every edge"));
        out.push(second.into_check("quiver", "e_γ·c·e_δ = e_γ·c on every edge"));

        let paths = self.quiver.enumerate_paths()?;
        let mut t = Tally::default();
        for p in &paths {
            t.record(self.map.phi(p) == self.map.phi_closed_form(p), || format!("path {p}"));
        }
        out.push(t.into_check("quiver", "φ(path from γ labelled u) = e_γ·u"));

        // γu ≡ γv forces γ·u = γ·v; checked as the contrapositive.
        let mut t = Tally::default();
        let pairs: Vec<(Column, Word, Word)> = if self.exhaustive() {
            let words = a.words_up_to(3);
            a.columns()
                .flat_map(|g| {
                    let words = &words;
                    words.iter().flat_map(move |u| words.iter().map(move |v| (g, u.clone(), v.clone())))
                })
                .collect()
        } else {
            let mut rng = self.rng(31);
            (0..self.config.samples)
                .map(|_| {
                    let g = self.random_column(&mut rng);
                    (g, self.random_word(&mut rng, 5), self.random_word(&mut rng, 5))
                })
                .collect()
        };
        for (g, u, v) in pairs {
            let same_action = right_act_word(g, &u) == right_act_word(g, &v);
            let ok = same_action || self.mu(&g.word().concat(&u)) != self.mu(&g.word().concat(&v));
            t.record(ok, || format!("γ={g} u={u} v={v}"));
        }
        out.push(t.into_check("quiver", "γ·u ≠ γ·v implies γu ≢ γv"));

        let mut t = Tally::default();
        for (g, w) in self.extended_words(6, 32) {
            match loops_removal(g, &w) {
                Ok(reduced) => {
                    let same_action = right_act_word(g, &reduced) == right_act_word(g, &w);
                    let same_element = self.mu(&g.word().concat(&reduced)) == self.mu(&g.word().concat(&w));
                    let on_quiver = Path::new(&self.quiver, g, reduced.clone()).is_ok();
                    t.record(same_action && same_element && on_quiver, || {
                        format!("γ={g} w={w} w'={reduced}")
                    });
                }
                Err(e) => t.record(false, || e.to_string()),
            }
        }
        out.push(t.into_check("quiver", "loops removal keeps action and class"));

        let mut t = Tally::default();
        for (g, w) in self.column_words(5, 33) {
            let u = complement_word(a, g, &w);
            let end = right_act_word(g, &w);
            let lhs = self.mu(&g.word().concat(&w));
            let rhs = self.mu(&u.concat(&end.word()));
            t.record(lhs == rhs, || format!("γ={g} w={w} u={u}"));
        }
        out.push(t.into_check("quiver", "γw ≡ u(γ·w) for the complement word"));

        let mut t = Tally::default();
        let phi_rank = self.map.phi_matrix(&paths).rank();
        t.record(phi_rank == m.size(), || format!("rank φ = {phi_rank}, |Styl| = {}", m.size()));
        out.push(t.into_check("quiver", "φ is surjective"));

        let mut t = Tally::default();
        match self
            .map
            .surjection_witnesses(&self.extended, self.config.max_search_len)
        {
            Ok(ws) => {
                for wt in &ws {
                    t.record(wt.image_matches, || format!("x={} path {}", m.rep_word(wt.element), wt.path));
                }
                let images: Vec<AlgebraElement> = ws.iter().map(|w| w.image.clone()).collect();
                let rank = alg.rank(&images);
                t.record(rank == m.size(), || format!("witness paths span rank {rank}"));
            }
            Err(e) => t.record(false, || e.to_string()),
        }
        out.push(t.into_check("quiver", "reduced Q'-paths map onto e_η(x)·x"));

        let kernel = self.map.kernel_span_check(&self.quiver)?;
        let mut t = Tally::default();
        t.record(kernel.relations_in_kernel, || kernel.witness.clone().unwrap_or_default());
        t.record(kernel.span_equals_kernel, || {
            format!(
                "relation rank {} vs kernel dimension {}",
                kernel.relation_rank, kernel.kernel_dimension
            )
        });
        t.cases = kernel.relation_count as u64;
        out.push(t.into_check("quiver", "relations span ker φ"));

        let adm = self.map.admissibility_check(&self.quiver)?;
        let mut t = Tally::default();
        t.record(adm.acyclic && adm.arrow_ideal_nilpotent, || "arrow ideal is not nilpotent".into());
        t.record(adm.kernel_in_square_of_arrow_ideal, || adm.witness.clone().unwrap_or_default());
        t.cases = adm.kernel_dimension as u64;
        out.push(t.into_check("quiver", "ker φ is admissible"));
        Ok(out)
    }

    /// Words labelling `Q'(A)` paths, with their start columns: all of them up
    /// to `max_len` when exhaustive, else random walks.
    fn extended_words(&self, max_len: usize, salt: u64) -> Vec<(Column, Word)> {
        let mut out = Vec::new();
        if self.exhaustive() {
            for g in self.alphabet.columns() {
                let mut frontier = vec![(g, Word::empty())];
                for _ in 0..=max_len {
                    let mut next = Vec::new();
                    for (cur, w) in frontier {
                        for c in self.alphabet.letters() {
                            if let Some(to) = self.extended.step(cur, c) {
                                let mut w2 = w.clone();
                                w2.push(c);
                                next.push((to, w2));
                            }
                        }
                        out.push((g, w));
                    }
                    frontier = next;
                }
            }
        } else {
            let mut rng = self.rng(salt);
            let nonempty: Vec<Column> = self.alphabet.columns().skip(1).collect();
            for _ in 0..self.config.samples {
                let g = nonempty[rng.gen_range(0..nonempty.len())];
                let len = rng.gen_range(0..=max_len);
                let mut cur = g;
                let mut w = Word::empty();
                for _ in 0..len {
                    let choices: Vec<Letter> = self
                        .alphabet
                        .letters()
                        .filter(|&c| self.extended.step(cur, c).is_some())
                        .collect();
                    let c = choices[rng.gen_range(0..choices.len())];
                    cur = self.extended.step(cur, c).unwrap();
                    w.push(c);
                }
                out.push((g, w));
            }
        }
        out
    }

    fn cartan_checks(&self) -> Vec<Check> {
        let m = self.monoid;
        let mut out = Vec::new();
        let linear = cartan_linear(m);
        let combinatorial = cartan_combinatorial(m);

        let mut t = Tally::default();
        for g in self.alphabet.columns() {
            for d in self.alphabet.columns() {
                t.record(linear.get(g, d) == combinatorial.get(g, d), || {
                    format!("({g}, {d}): {} vs {}", linear.get(g, d), combinatorial.get(g, d))
                });
            }
        }
        out.push(t.into_check("cartan", "rank and counting Cartan matrices agree"));

        let mut t = Tally::default();
        t.record(linear.total() == m.size(), || format!("total {}", linear.total()));
        t.record(linear.diagonal_positive(), || "zero on the diagonal".into());
        out.push(t.into_check("cartan", "Cartan total = |Styl|, diagonal ≥ 1"));

        let mut t = Tally::default();
        for g in self.alphabet.columns() {
            for (side, expected) in [(Side::Right, linear.row_sum(g)), (Side::Left, linear.column_sum(g))] {
                match projective_basis(m, g, side) {
                    Ok(b) => t.record(b.len() == expected, || format!("{side:?} projective at {g}")),
                    Err(e) => t.record(false, || e.to_string()),
                }
            }
        }
        out.push(t.into_check("cartan", "projective bases match Cartan sums"));
        out
    }
}

/// Every instance of the four Knuth relations over `1..=n`.
pub fn knuth_relations(n: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            let (a, b) = (l(x), l(y));
            out.push((Word(vec![b, a, b]), Word(vec![b, b, a])));
            out.push((Word(vec![a, b, a]), Word(vec![b, a, a])));
            for z in y + 1..=n {
                let c = l(z);
                out.push((Word(vec![b, a, c]), Word(vec![b, c, a])));
                out.push((Word(vec![a, c, b]), Word(vec![c, a, b])));
            }
        }
    }
    out
}

/// Every `(x_1<…<x_p, y, z_1<…<z_q)` with `x_p < y < z_1` and `p, q ≥ 1`.
pub fn superplax_chains(n: usize) -> Vec<(Vec<Letter>, Letter, Vec<Letter>)> {
    let mut out = Vec::new();
    for y in 2..n {
        let below = (1u32 << (y - 1)) - 1;
        let above_count = n - y;
        for xs in 1..=below {
            for zs in 1..(1u32 << above_count) {
                let x_letters: Vec<Letter> = (1..y).filter(|i| xs & (1 << (i - 1)) != 0).map(l).collect();
                let z_letters: Vec<Letter> = (y + 1..=n)
                    .filter(|i| zs & (1 << (i - y - 1)) != 0)
                    .map(l)
                    .collect();
                out.push((x_letters, l(y), z_letters));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts() {
        // pairs: C(n,2) × 2, triples: C(n,3) × 2
        assert_eq!(knuth_relations(3).len(), 3 * 2 + 2);
        assert_eq!(knuth_relations(5).len(), 10 * 2 + 10 * 2);
        // y = 2: x ⊆ {1}, z ⊆ {3}: one chain for n = 3
        assert_eq!(superplax_chains(3).len(), 1);
        assert_eq!(superplax_chains(2).len(), 0);
    }

    #[test]
    fn suite_passes_small() {
        for n in 1..=3 {
            let report = verify(&VerifyConfig::new(n)).unwrap();
            assert!(report.all_passed(), "{report}");
        }
    }
}
