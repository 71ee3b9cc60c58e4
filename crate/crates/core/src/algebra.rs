//! The monoid algebra of `Styl(A)` with exact coefficients, the idempotents
//! `e_γ`, and the triangular basis `{e_{η(x)}·x}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::{Column, Letter};
use crate::error::StylicError;
use crate::matrix::ExactMatrix;
use crate::monoid::{ElemId, StylMonoid};

/// A finitely supported linear combination of monoid elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlgebraElement {
    coeffs: BTreeMap<ElemId, BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn basis(x: ElemId) -> AlgebraElement {
        AlgebraElement::term(x, BigRational::one())
    }

    pub fn term(x: ElemId, coeff: BigRational) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        e.add_term(x, coeff);
        e
    }

    pub fn from_integer_terms(terms: &[(ElemId, i64)]) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        for &(x, c) in terms {
            e.add_term(x, BigRational::from_integer(c.into()));
        }
        e
    }

    pub fn add_term(&mut self, x: ElemId, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(x).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&x);
        }
    }

    pub fn coeff(&self, x: ElemId) -> BigRational {
        self.coeffs.get(&x).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElemId, &BigRational)> {
        self.coeffs.iter().map(|(&x, c)| (x, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, factor: &BigRational) -> AlgebraElement {
        if factor.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            coeffs: self.coeffs.iter().map(|(&x, c)| (x, c * factor)).collect(),
        }
    }

    /// Dense coordinates in the monoid basis.
    pub fn to_vector(&self, size: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); size];
        for (x, c) in self.terms() {
            v[x.index()] = c.clone();
        }
        v
    }

    /// Renders the element with representative words, e.g. `1 - a`.
    pub fn display<'a>(&'a self, monoid: &'a StylMonoid) -> impl fmt::Display + 'a {
        DisplayElement { element: self, monoid }
    }
}

struct DisplayElement<'a> {
    element: &'a AlgebraElement,
    monoid: &'a StylMonoid,
}

impl fmt::Display for DisplayElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (i, (x, c)) in self.element.terms().enumerate() {
            let word = if x == self.monoid.identity() {
                "1".to_string()
            } else {
                self.monoid.rep_word(x).to_string()
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let magnitude = c.abs();
            if magnitude.is_one() {
                f.write_str(&word)?;
            } else {
                write!(f, "{magnitude}·{word}")?;
            }
        }
        Ok(())
    }
}

/// Algebra operations over a frozen monoid.
#[derive(Clone, Copy, Debug)]
pub struct StylAlgebra<'m> {
    monoid: &'m StylMonoid,
}

impl<'m> StylAlgebra<'m> {
    pub fn new(monoid: &'m StylMonoid) -> StylAlgebra<'m> {
        StylAlgebra { monoid }
    }

    pub fn monoid(&self) -> &'m StylMonoid {
        self.monoid
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::basis(self.monoid.identity())
    }

    pub fn letter(&self, letter: Letter) -> AlgebraElement {
        AlgebraElement::basis(self.monoid.generator(letter))
    }

    /// `1 - a`.
    pub fn one_minus(&self, letter: Letter) -> AlgebraElement {
        AlgebraElement::from_integer_terms(&[(self.monoid.identity(), 1), (self.monoid.generator(letter), -1)])
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                out.add_term(self.monoid.multiply(a, b), ca * cb);
            }
        }
        out
    }

    pub fn product<'a, I: IntoIterator<Item = &'a AlgebraElement>>(&self, factors: I) -> AlgebraElement {
        factors
            .into_iter()
            .fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `x · m` for a single monoid element `m`.
    pub fn mul_element(&self, x: &AlgebraElement, m: ElemId) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, c) in x.terms() {
            out.add_term(self.monoid.multiply(a, m), c.clone());
        }
        out
    }

    /// `m · x` for a single monoid element `m`.
    pub fn element_mul(&self, m: ElemId, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, c) in x.terms() {
            out.add_term(self.monoid.multiply(m, a), c.clone());
        }
        out
    }

    /// `e_γ`: the product of `(1 - a)` over letters outside `γ` in increasing
    /// order, followed by the letters of `γ` in decreasing order.
    pub fn idempotent(&self, gamma: Column) -> Result<AlgebraElement, StylicError> {
        if !gamma.is_subset(self.monoid.alphabet().full()) {
            return Err(StylicError::ColumnOutOfRange(gamma));
        }
        let mut e = self.one();
        for a in self.monoid.alphabet().letters().filter(|&a| !gamma.contains(a)) {
            e = self.mul(&e, &self.one_minus(a));
        }
        let gamma_elem = self.monoid.element_of_word_fast(&gamma.word());
        Ok(self.mul_element(&e, gamma_elem))
    }

    /// All `e_γ`, indexed by the bitmask of `γ`.
    pub fn idempotents(&self) -> Vec<AlgebraElement> {
        self.monoid
            .alphabet()
            .columns()
            .map(|g| self.idempotent(g).expect("column of the alphabet"))
            .collect()
    }

    /// Dimension of `e_γ · K Styl(A) · e_δ`.
    pub fn corner_dimension(&self, gamma: Column, delta: Column) -> Result<usize, StylicError> {
        let eg = self.idempotent(gamma)?;
        let ed = self.idempotent(delta)?;
        Ok(self.corner_dimension_with(&eg, &ed))
    }

    pub(crate) fn corner_dimension_with(&self, eg: &AlgebraElement, ed: &AlgebraElement) -> usize {
        let rows: Vec<AlgebraElement> = self
            .monoid
            .ids()
            .map(|x| self.mul(&self.mul_element(eg, x), ed))
            .collect();
        self.rank(&rows)
    }

    /// Rank over the rationals of a family of algebra elements.
    pub fn rank(&self, family: &[AlgebraElement]) -> usize {
        // Zero and repeated rows and columns outside every support do not
        // affect the rank.
        let distinct: Vec<&AlgebraElement> = family
            .iter()
            .filter(|e| !e.is_zero())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let support: std::collections::BTreeSet<ElemId> =
            distinct.iter().flat_map(|e| e.support()).collect();
        let column_of: BTreeMap<ElemId, usize> =
            support.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows = distinct
            .iter()
            .map(|e| {
                let mut row = vec![BigRational::zero(); support.len()];
                for (x, c) in e.terms() {
                    row[column_of[&x]] = c.clone();
                }
                row
            })
            .collect();
        ExactMatrix::from_rows(support.len(), rows).rank()
    }

    /// Matrix whose rows are the coordinates of `family` in the monoid basis.
    pub fn matrix(&self, family: &[AlgebraElement]) -> ExactMatrix {
        let size = self.monoid.size();
        ExactMatrix::from_rows(size, family.iter().map(|e| e.to_vector(size)).collect())
    }

    pub fn verify_idempotent_system(&self) -> SystemReport {
        let alphabet = self.monoid.alphabet();
        let es = self.idempotents();
        let columns: Vec<Column> = alphabet.columns().collect();

        let mut orthogonality = CheckOutcome::pass();
        'outer: for &g in &columns {
            for &d in &columns {
                let prod = self.mul(&es[g.index()], &es[d.index()]);
                let expected = if g == d { es[g.index()].clone() } else { AlgebraElement::zero() };
                if prod != expected {
                    orthogonality = CheckOutcome::fail(format!(
                        "e_{g} e_{d} = {}",
                        prod.display(self.monoid)
                    ));
                    break 'outer;
                }
            }
        }

        let sum = es.iter().fold(AlgebraElement::zero(), |acc, e| acc.add(e));
        let completeness = if sum == self.one() {
            CheckOutcome::pass()
        } else {
            CheckOutcome::fail(format!("Σ e_γ = {}", sum.display(self.monoid)))
        };

        let primitivity = match columns
            .iter()
            .map(|&g| (g, self.corner_dimension_with(&es[g.index()], &es[g.index()])))
            .find(|&(_, dim)| dim != 1)
        {
            None => CheckOutcome::pass(),
            Some((g, dim)) => CheckOutcome::fail(format!("dim e_{g} K e_{g} = {dim}")),
        };

        let nonzero = match columns.iter().find(|g| es[g.index()].is_zero()) {
            None => CheckOutcome::pass(),
            Some(g) => CheckOutcome::fail(format!("e_{g} = 0")),
        };

        SystemReport {
            orthogonality,
            completeness,
            primitivity,
            nonzero,
        }
    }

    /// The basis `{e_{η(x)}·x}`, indexed by element id, after checking that each
    /// member is `x` plus a combination of elements strictly `J`-below `x`, and
    /// that the change of basis from the monoid basis is unimodular.
    pub fn triangular_basis(&self) -> Result<TriangularBasis, StylicError> {
        let m = self.monoid;
        let es = self.idempotents();
        let basis: Vec<AlgebraElement> = m
            .ids()
            .map(|x| self.mul_element(&es[m.eta(x).index()], x))
            .collect();

        for x in m.ids() {
            let b = &basis[x.index()];
            if !b.coeff(x).is_one() {
                return Err(StylicError::Verification(format!(
                    "coefficient of {} in e_η(x)·x is {}",
                    m.rep_word(x),
                    b.coeff(x)
                )));
            }
            if !b.is_integral() {
                return Err(StylicError::Verification(format!(
                    "e_η(x)·x is not integral for x = {}",
                    m.rep_word(x)
                )));
            }
            if let Some(y) = b.support().find(|&y| y != x && !m.j_leq(y, x)) {
                return Err(StylicError::Verification(format!(
                    "e_η(x)·x for x = {} involves {} which is not J-below x",
                    m.rep_word(x),
                    m.rep_word(y)
                )));
            }
        }

        let matrix = self.matrix(&basis);
        let determinant = matrix.determinant();
        if determinant.abs() != BigRational::one() {
            return Err(StylicError::Verification(format!(
                "change-of-basis determinant is {determinant}"
            )));
        }

        // In a linear extension of ≤_J the matrix is unitriangular.
        let order = m.j_linear_extension();
        let mut position = vec![0; m.size()];
        for (i, x) in order.iter().enumerate() {
            position[x.index()] = i;
        }
        for x in m.ids() {
            if let Some(y) = basis[x.index()]
                .support()
                .find(|y| position[y.index()] > position[x.index()])
            {
                return Err(StylicError::Verification(format!(
                    "e_η(x)·x for x = {} involves {} which comes later in the linear extension",
                    m.rep_word(x),
                    m.rep_word(y)
                )));
            }
        }

        Ok(TriangularBasis {
            rank: matrix.rank(),
            determinant: determinant.to_integer(),
            elements: basis,
        })
    }

    pub fn idempotent_json(&self, gamma: Column) -> Result<IdempotentJson, StylicError> {
        let e = self.idempotent(gamma)?;
        let terms = e
            .terms()
            .map(|(x, c)| {
                let overflow = || StylicError::Verification(format!("coefficient {c} exceeds i64"));
                Ok(TermJson {
                    element_id: x.0,
                    coeff_numerator: c.numer().to_i64().ok_or_else(overflow)?,
                    coeff_denominator: c.denom().to_i64().ok_or_else(overflow)?,
                })
            })
            .collect::<Result<_, StylicError>>()?;
        Ok(IdempotentJson {
            gamma: gamma.bits(),
            terms,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularBasis {
    /// `elements[x]` is `e_{η(x)}·x`.
    pub elements: Vec<AlgebraElement>,
    pub rank: usize,
    /// Determinant of the coordinate matrix, rows and columns both in id order.
    pub determinant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass() -> CheckOutcome {
        CheckOutcome {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(witness: String) -> CheckOutcome {
        CheckOutcome {
            passed: false,
            witness: Some(witness),
        }
    }
}

/// Outcome of checking that the `e_γ` form a complete system of primitive
/// orthogonal idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemReport {
    pub orthogonality: CheckOutcome,
    pub completeness: CheckOutcome,
    pub primitivity: CheckOutcome,
    pub nonzero: CheckOutcome,
}

impl SystemReport {
    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.passed)
    }

    pub fn checks(&self) -> [(&'static str, &CheckOutcome); 4] {
        [
            ("orthogonal idempotents", &self.orthogonality),
            ("sum equals 1", &self.completeness),
            ("primitive", &self.primitivity),
            ("nonzero", &self.nonzero),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub element_id: u32,
    pub coeff_numerator: i64,
    pub coeff_denominator: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentJson {
    pub gamma: u16,
    pub terms: Vec<TermJson>,
}
