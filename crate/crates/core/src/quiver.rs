//! The quiver `Q(A)` on columns with frank edges, the extended quiver `Q'(A)`
//! with loops, loops removal, and the quiver map `φ` from the path algebra onto
//! the stylic algebra, with exact checks of surjectivity, of the kernel being
//! spanned by differences of stylically equivalent paths, and of admissibility.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, StylAlgebra};
use crate::alphabet::{is_frank, right_act, Alphabet, Column, Letter, Word};
use crate::error::StylicError;
use crate::matrix::ExactMatrix;
use crate::monoid::{ElemId, StylMonoid};
use crate::tableaux::p_symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: Column,
    pub label: Letter,
    pub target: Column,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    alphabet: Alphabet,
    edges: Vec<Edge>,
    extended: bool,
    // [vertex][letter - 1]
    transitions: Vec<Vec<Option<Column>>>,
}

impl Quiver {
    /// `Q(A)`: an edge `γ -c-> γ·c` for every frank action.
    pub fn build(n: usize) -> Result<Quiver, StylicError> {
        Quiver::build_inner(Alphabet::new(n)?, false)
    }

    /// `Q'(A)`: `Q(A)` plus a loop `γ -c-> γ` for each `c ∈ γ`.
    pub fn build_extended(n: usize) -> Result<Quiver, StylicError> {
        Quiver::build_inner(Alphabet::new(n)?, true)
    }

    fn build_inner(alphabet: Alphabet, extended: bool) -> Result<Quiver, StylicError> {
        let mut edges = Vec::new();
        let mut transitions = vec![vec![None; alphabet.size()]; alphabet.column_count()];
        for gamma in alphabet.columns() {
            for c in alphabet.letters() {
                if is_frank(gamma, c) || (extended && gamma.contains(c)) {
                    let target = right_act(gamma, c).0;
                    edges.push(Edge {
                        source: gamma,
                        label: c,
                        target,
                    });
                    transitions[gamma.index()][c.index() - 1] = Some(target);
                }
            }
        }
        Ok(Quiver {
            alphabet,
            edges,
            extended,
            transitions,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn vertices(&self) -> impl Iterator<Item = Column> + Clone {
        self.alphabet.columns()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn loops(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.source == e.target)
    }

    /// Target of the unique edge labelled `letter` leaving `from`, if any.
    pub fn step(&self, from: Column, letter: Letter) -> Option<Column> {
        self.transitions[from.index()][letter.index() - 1]
    }

    /// End vertex of the path from `start` labelled `word`, if it exists.
    pub fn walk(&self, start: Column, word: &Word) -> Option<Column> {
        word.letters()
            .iter()
            .try_fold(start, |col, &l| self.step(col, l))
    }

    /// At most one edge with a given label leaves each vertex.
    pub fn is_deterministic(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| seen.insert((e.source, e.label)))
    }

    /// Acyclicity ignoring loops is checked by a topological sort; loops make
    /// an extended quiver cyclic by definition.
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.alphabet.column_count()];
        for e in &self.edges {
            if e.source == e.target {
                return false;
            }
            indegree[e.target.index()] += 1;
        }
        let mut queue: VecDeque<Column> = self.vertices().filter(|v| indegree[v.index()] == 0).collect();
        let mut visited = 0;
        while let Some(v) = queue.pop_front() {
            visited += 1;
            for e in self.edges.iter().filter(|e| e.source == v) {
                indegree[e.target.index()] -= 1;
                if indegree[e.target.index()] == 0 {
                    queue.push_back(e.target);
                }
            }
        }
        visited == self.alphabet.column_count()
    }

    /// Length of a longest path, or `None` for a quiver with cycles.
    pub fn longest_path_length(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        // Weight strictly increases along edges, so visiting vertices by
        // decreasing weight is a reverse topological order.
        let mut order: Vec<Column> = self.vertices().collect();
        order.sort_by_key(|c| std::cmp::Reverse(c.weight()));
        let mut longest = vec![0usize; self.alphabet.column_count()];
        for v in order {
            longest[v.index()] = self
                .edges
                .iter()
                .filter(|e| e.source == v)
                .map(|e| longest[e.target.index()] + 1)
                .max()
                .unwrap_or(0);
        }
        longest.into_iter().max()
    }

    /// Every path of a loop-free quiver, including the empty path at each
    /// vertex, sorted by length, then start vertex, then label.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>, StylicError> {
        if !self.is_acyclic() {
            return Err(StylicError::Verification(
                "paths can only be enumerated in an acyclic quiver".into(),
            ));
        }
        let mut out = Vec::new();
        let mut stack: Vec<Path> = self.vertices().map(Path::empty).collect();
        while let Some(p) = stack.pop() {
            for c in self.alphabet.letters() {
                if let Some(next) = self.step(p.end, c) {
                    let mut steps = p.steps.clone();
                    steps.push(c);
                    stack.push(Path {
                        start: p.start,
                        steps,
                        end: next,
                    });
                }
            }
            out.push(p);
        }
        out.sort();
        Ok(out)
    }

    /// DOT rendering with vertices named by decreasing words.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Q {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{}\";", v.name());
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                e.source.name(),
                e.target.name(),
                e.label
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            n: self.alphabet.size(),
            vertices: self.vertices().map(Column::bits).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    src: e.source.bits(),
                    label: e.label.index(),
                    dst: e.target.bits(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: u16,
    pub label: usize,
    pub dst: u16,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub vertices: Vec<u16>,
    pub edges: Vec<EdgeJson>,
}

/// A path in a quiver, identified by its start vertex and label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: Column,
    steps: Word,
    end: Column,
}

impl Path {
    pub fn empty(at: Column) -> Path {
        Path {
            start: at,
            steps: Word::empty(),
            end: at,
        }
    }

    pub fn new(quiver: &Quiver, start: Column, steps: Word) -> Result<Path, StylicError> {
        match quiver.walk(start, &steps) {
            Some(end) => Ok(Path { start, steps, end }),
            None => Err(StylicError::NotAPath {
                start,
                word: steps.to_string(),
            }),
        }
    }

    pub fn start(&self) -> Column {
        self.start
    }

    pub fn end(&self) -> Column {
        self.end
    }

    pub fn label(&self) -> &Word {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices visited, start and end included.
    pub fn vertices(&self) -> Vec<Column> {
        let mut out = vec![self.start];
        let mut cur = self.start;
        for &c in self.steps.letters() {
            cur = right_act(cur, c).0;
            out.push(cur);
        }
        out
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.steps.len(), self.start, &self.steps).cmp(&(other.steps.len(), other.start, &other.steps))
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.start)?;
        let mut cur = self.start;
        for &c in self.steps.letters() {
            cur = right_act(cur, c).0;
            write!(f, " -{c}-> {cur}")?;
        }
        Ok(())
    }
}

/// A finitely supported linear combination of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathAlgebraElement {
    coeffs: BTreeMap<Path, BigRational>,
}

impl PathAlgebraElement {
    pub fn zero() -> PathAlgebraElement {
        PathAlgebraElement::default()
    }

    pub fn path(p: Path) -> PathAlgebraElement {
        let mut e = PathAlgebraElement::zero();
        e.add_term(p, BigRational::one());
        e
    }

    /// `p - q`.
    pub fn difference(p: Path, q: Path) -> PathAlgebraElement {
        let mut e = PathAlgebraElement::path(p);
        e.add_term(q, -BigRational::one());
        e
    }

    pub fn add_term(&mut self, p: Path, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(p.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &BigRational)> {
        self.coeffs.iter()
    }
}

/// Removes the loop steps from a path of `Q'(A)` starting at `start`.
///
/// A step `c` taken at the current column `δ` is dropped when `c ∈ δ`; the
/// word must label a path of the extended quiver, i.e. `c ≥ min(δ)` at every step.
pub fn loops_removal(start: Column, word: &Word) -> Result<Word, StylicError> {
    let mut current = start;
    let mut reduced = Word::empty();
    for &c in word.letters() {
        match current.min() {
            Some(m) if c >= m => {}
            _ => {
                return Err(StylicError::NotAnExtendedPath {
                    start,
                    word: word.to_string(),
                })
            }
        }
        if !current.contains(c) {
            reduced.push(c);
            current = right_act(current, c).0;
        }
    }
    Ok(reduced)
}

/// A word `u` with `γ w ≡ u (γ·w)` in the stylic monoid, read off the
/// P-symbol of `θ(w)θ(γ)`: its first column is `θ(γ·w)`, and `θ` of the rest
/// of its column-reading word is `u`.
pub fn complement_word(alphabet: Alphabet, gamma: Column, word: &Word) -> Word {
    let mirrored = alphabet.theta_word(word).concat(&alphabet.theta_column(gamma).word());
    let tableau = p_symbol(&mirrored);
    let rest = Word(
        tableau.columns()[1.min(tableau.columns().len())..]
            .iter()
            .flat_map(|c| c.letters().rev())
            .collect(),
    );
    alphabet.theta_word(&rest)
}

/// The quiver map together with the idempotents it uses.
pub struct QuiverMap<'m> {
    algebra: StylAlgebra<'m>,
    idempotents: Vec<AlgebraElement>,
}

impl<'m> QuiverMap<'m> {
    pub fn new(monoid: &'m StylMonoid) -> QuiverMap<'m> {
        let algebra = StylAlgebra::new(monoid);
        let idempotents = algebra.idempotents();
        QuiverMap {
            algebra,
            idempotents,
        }
    }

    pub fn algebra(&self) -> StylAlgebra<'m> {
        self.algebra
    }

    pub fn idempotent(&self, gamma: Column) -> &AlgebraElement {
        &self.idempotents[gamma.index()]
    }

    /// `φ(p) = e_{γ0} c1 e_{γ1} ⋯ cl e_{γl}`, from the definition.
    pub fn phi(&self, path: &Path) -> AlgebraElement {
        let monoid = self.algebra.monoid();
        let vertices = path.vertices();
        let mut acc = self.idempotent(vertices[0]).clone();
        for (&c, &v) in path.label().letters().iter().zip(&vertices[1..]) {
            acc = self.algebra.mul_element(&acc, monoid.generator(c));
            acc = self.algebra.mul(&acc, self.idempotent(v));
        }
        debug_assert_eq!(acc, self.phi_closed_form(path));
        acc
    }

    /// `e_γ · μ(u)` for a path from `γ` labelled `u`.
    pub fn phi_closed_form(&self, path: &Path) -> AlgebraElement {
        let monoid = self.algebra.monoid();
        let u = monoid.element_of_word_fast(path.label());
        self.algebra.mul_element(self.idempotent(path.start()), u)
    }

    pub fn phi_linear(&self, element: &PathAlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (p, c) in element.terms() {
            out = out.add(&self.phi(p).scale(c));
        }
        out
    }

    /// Matrix whose rows are the images of `paths` in the monoid basis.
    pub fn phi_matrix(&self, paths: &[Path]) -> ExactMatrix {
        let images: Vec<AlgebraElement> = paths.iter().map(|p| self.phi_closed_form(p)).collect();
        self.algebra.matrix(&images)
    }

    /// Rank of `{φ(p)}` over all paths of `Q(A)`.
    pub fn phi_rank(&self, quiver: &Quiver) -> Result<usize, StylicError> {
        let paths = quiver.enumerate_paths()?;
        Ok(self.phi_matrix(&paths).rank())
    }

    /// Relation generators: differences of paths from the same vertex `γ`
    /// whose labels `u, v` satisfy `γu ≡ γv`, grouped by start, end and
    /// `μ(γu)` and taken against the first path of each group.
    pub fn relations(&self, paths: &[Path]) -> Vec<(Path, Path)> {
        let monoid = self.algebra.monoid();
        let mut groups: BTreeMap<(Column, Column, ElemId), Vec<&Path>> = BTreeMap::new();
        for p in paths {
            let key = monoid.element_of_word_fast(&p.start().word().concat(p.label()));
            groups.entry((p.start(), p.end(), key)).or_default().push(p);
        }
        groups
            .into_values()
            .flat_map(|group| {
                let first = group[0].clone();
                group[1..]
                    .iter()
                    .map(|&q| (first.clone(), q.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn kernel_span_check(&self, quiver: &Quiver) -> Result<KernelReport, StylicError> {
        let paths = quiver.enumerate_paths()?;
        let position: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let phi = self.phi_matrix(&paths);
        let rank = phi.rank();
        let kernel = phi.left_kernel();

        let relations = self.relations(&paths);
        let mut relations_in_kernel = true;
        let mut witness = None;
        let mut rows = Vec::with_capacity(relations.len());
        for (p, q) in &relations {
            if self.phi(p) != self.phi(q) {
                relations_in_kernel = false;
                witness.get_or_insert_with(|| format!("φ({p}) ≠ φ({q})"));
            }
            let mut row = vec![BigRational::zero(); paths.len()];
            row[position[p]] = BigRational::one();
            row[position[q]] = -BigRational::one();
            rows.push(row);
        }
        let relation_matrix = ExactMatrix::from_rows(paths.len(), rows);
        let relation_rank = relation_matrix.rank();
        let kernel_matrix = ExactMatrix::from_rows(paths.len(), kernel.clone());
        let joint_rank = kernel_matrix.vstack(&relation_matrix).rank();

        Ok(KernelReport {
            path_count: paths.len(),
            phi_rank: rank,
            kernel_dimension: kernel.len(),
            relation_count: relations.len(),
            relation_rank,
            relations_in_kernel,
            span_equals_kernel: relations_in_kernel
                && relation_rank == kernel.len()
                && joint_rank == kernel.len(),
            witness,
            kernel,
            paths,
        })
    }

    pub fn admissibility_check(&self, quiver: &Quiver) -> Result<AdmissibilityReport, StylicError> {
        let acyclic = quiver.is_acyclic();
        let longest = quiver.longest_path_length();
        let kernel = self.kernel_span_check(quiver)?;
        let mut witness = None;
        let in_square_of_arrow_ideal = kernel.kernel.iter().all(|v| {
            let bad = kernel
                .paths
                .iter()
                .zip(v)
                .find(|(p, c)| p.len() <= 1 && !c.is_zero());
            if let Some((p, _)) = bad {
                witness.get_or_insert_with(|| format!("kernel vector has a nonzero component on {p}"));
            }
            bad.is_none()
        });
        let nilpotency_index = longest.map(|l| l + 1);
        let arrow_ideal_nilpotent = match nilpotency_index {
            Some(m) => kernel.paths.iter().all(|p| p.len() < m),
            None => false,
        };
        Ok(AdmissibilityReport {
            acyclic,
            longest_path: longest,
            nilpotency_index,
            arrow_ideal_nilpotent,
            kernel_in_square_of_arrow_ideal: in_square_of_arrow_ideal,
            kernel_dimension: kernel.kernel_dimension,
            witness,
        })
    }

    /// For each element `x`, a `Q'(A)` path from `η(x)` whose label `w`
    /// satisfies `μ(η(x)·w) = x` (shortlex-first among such paths, length at
    /// most `max_len`), its loop-free reduction, and the check that the image of
    /// the reduced path is `e_{η(x)}·x`.
    pub fn surjection_witnesses(
        &self,
        extended: &Quiver,
        max_len: usize,
    ) -> Result<Vec<SurjectionWitness>, StylicError> {
        let monoid = self.algebra.monoid();
        let base = Quiver::build(monoid.n())?;
        monoid
            .ids()
            .map(|x| {
                let gamma = monoid.eta(x);
                let word = shortlex_extended_word(monoid, extended, gamma, x, max_len).ok_or_else(|| {
                    StylicError::Verification(format!(
                        "no extended-quiver word of length ≤ {max_len} from {gamma} reaches {}",
                        monoid.rep_word(x)
                    ))
                })?;
                let reduced = loops_removal(gamma, &word)?;
                let path = Path::new(&base, gamma, reduced.clone())?;
                let image = self.phi(&path);
                let target = self.algebra.mul_element(self.idempotent(gamma), x);
                let unrestricted = shortlex_word(monoid, gamma, x, max_len);
                Ok(SurjectionWitness {
                    element: x,
                    start: gamma,
                    image_matches: image == target,
                    unrestricted_is_extended_path: unrestricted
                        .as_ref()
                        .map(|w| extended.walk(gamma, w).is_some()),
                    word,
                    reduced,
                    path,
                    image,
                })
            })
            .collect()
    }
}

/// Shortlex-first word `w` with `μ(γ w) = x` along which `γ` follows edges of
/// the extended quiver.
fn shortlex_extended_word(
    monoid: &StylMonoid,
    extended: &Quiver,
    gamma: Column,
    x: ElemId,
    max_len: usize,
) -> Option<Word> {
    let start = (gamma, monoid.element_of_word_fast(&gamma.word()));
    bfs_word(monoid, start, x, max_len, |col, c| extended.step(col, c))
}

/// Shortlex-first word `w` with `μ(γ w) = x`, with no path constraint.
fn shortlex_word(monoid: &StylMonoid, gamma: Column, x: ElemId, max_len: usize) -> Option<Word> {
    let start = (gamma, monoid.element_of_word_fast(&gamma.word()));
    bfs_word(monoid, start, x, max_len, |col, c| Some(right_act(col, c).0))
}

fn bfs_word(
    monoid: &StylMonoid,
    start: (Column, ElemId),
    target: ElemId,
    max_len: usize,
    step: impl Fn(Column, Letter) -> Option<Column>,
) -> Option<Word> {
    type State = (Column, ElemId);
    let mut parent: HashMap<State, Option<(State, Letter)>> = HashMap::new();
    parent.insert(start, None);
    let mut frontier = vec![start];
    let rebuild = |mut state: (Column, ElemId), parent: &HashMap<_, Option<((Column, ElemId), Letter)>>| {
        let mut letters = Vec::new();
        while let Some(&Some((prev, l))) = parent.get(&state) {
            letters.push(l);
            state = prev;
        }
        letters.reverse();
        Word(letters)
    };
    if start.1 == target {
        return Some(Word::empty());
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for &state in &frontier {
            for c in monoid.alphabet().letters() {
                let Some(col) = step(state.0, c) else { continue };
                let s = (col, monoid.right_mul_letter(state.1, c));
                if parent.contains_key(&s) {
                    continue;
                }
                parent.insert(s, Some((state, c)));
                if s.1 == target {
                    return Some(rebuild(s, &parent));
                }
                next.push(s);
            }
        }
        frontier = next;
    }
    None
}

#[derive(Clone, Debug)]
pub struct KernelReport {
    pub path_count: usize,
    pub phi_rank: usize,
    pub kernel_dimension: usize,
    pub relation_count: usize,
    pub relation_rank: usize,
    pub relations_in_kernel: bool,
    pub span_equals_kernel: bool,
    pub witness: Option<String>,
    /// Basis of `ker φ` in the coordinates of `paths`.
    pub kernel: Vec<Vec<BigRational>>,
    pub paths: Vec<Path>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub acyclic: bool,
    pub longest_path: Option<usize>,
    /// Smallest `m` with `F^m = 0`.
    pub nilpotency_index: Option<usize>,
    pub arrow_ideal_nilpotent: bool,
    pub kernel_in_square_of_arrow_ideal: bool,
    pub kernel_dimension: usize,
    pub witness: Option<String>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.acyclic && self.arrow_ideal_nilpotent && self.kernel_in_square_of_arrow_ideal
    }
}

#[derive(Clone, Debug)]
pub struct SurjectionWitness {
    pub element: ElemId,
    pub start: Column,
    pub word: Word,
    pub reduced: Word,
    pub path: Path,
    pub image: AlgebraElement,
    pub image_matches: bool,
    /// Whether the shortlex-first word with `μ(γw) = x`, ignoring the quiver,
    /// happens to label an extended-quiver path; `None` if none was found.
    pub unrestricted_is_extended_path: Option<bool>,
}
