use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use stylic::algebra::{AlgebraElement, StylAlgebra};
use stylic::alphabet::{left_act, right_act_word, Alphabet, Column, Letter, Word};
use stylic::matrix::ExactMatrix;
use stylic::monoid::ElemId;
use stylic::quiver::{loops_removal, Path, Quiver};
use stylic::tableaux::{p_symbol, plactic_equivalent};
use stylic::StylMonoid;

const N: usize = 4;

fn monoid() -> &'static StylMonoid {
    static M: OnceLock<StylMonoid> = OnceLock::new();
    M.get_or_init(|| StylMonoid::enumerate(N).unwrap())
}

fn small_monoid() -> &'static StylMonoid {
    static M: OnceLock<StylMonoid> = OnceLock::new();
    M.get_or_init(|| StylMonoid::enumerate(3).unwrap())
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(|v| Word::from_indices(&v))
}

fn column(n: usize) -> impl Strategy<Value = Column> {
    (0u16..(1 << n)).prop_map(Column::from_bits)
}

fn algebra_element(size: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((0..size as u32, -3i64..=3), 0..6).prop_map(|terms| {
        let terms: Vec<(ElemId, i64)> = terms.into_iter().map(|(x, c)| (ElemId(x), c)).collect();
        AlgebraElement::from_integer_terms(&terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_evaluation_is_a_homomorphism(u in word(N, 8), v in word(N, 8)) {
        let m = monoid();
        let (x, y) = (m.element_of_word(&u).unwrap(), m.element_of_word(&v).unwrap());
        prop_assert_eq!(m.element_of_word_fast(&u), x);
        prop_assert_eq!(m.element_of_word(&u.concat(&v)).unwrap(), m.multiply(x, y));
    }

    #[test]
    fn element_tables_are_word_actions(w in word(N, 10), g in column(N)) {
        let m = monoid();
        let x = m.element_of_word(&w).unwrap();
        prop_assert_eq!(m.act(x, g), left_act(&w, g));
        prop_assert_eq!(m.act(x, g), left_act(m.rep_word(x), g));
    }

    #[test]
    fn theta_is_an_anti_automorphism(u in word(N, 6), v in word(N, 6)) {
        let m = monoid();
        let a = m.alphabet();
        let x = m.element_of_word(&u).unwrap();
        let y = m.element_of_word(&v).unwrap();
        prop_assert_eq!(m.theta_element(x), m.element_of_word(&a.theta_word(&u)).unwrap());
        prop_assert_eq!(m.theta_element(m.multiply(x, y)), m.multiply(m.theta_element(y), m.theta_element(x)));
    }

    #[test]
    fn right_action_is_conjugate_left_action(g in column(N), w in word(N, 8)) {
        let a = Alphabet::new(N).unwrap();
        let lhs = right_act_word(g, &w);
        prop_assert_eq!(lhs, a.theta_column(left_act(&a.theta_word(&w), a.theta_column(g))));
        prop_assert!(lhs.height() >= g.height());
    }

    #[test]
    fn p_symbol_is_a_valid_tableau(w in word(5, 12)) {
        let t = p_symbol(&w);
        prop_assert!(t.is_valid());
        prop_assert_eq!(t.cell_count(), w.len());
        prop_assert_eq!(p_symbol(&t.column_reading_word()), t.clone());
        prop_assert_eq!(t.first_column(), left_act(&w, Column::EMPTY));
    }

    #[test]
    fn plactic_implies_stylic(w in word(N, 8)) {
        let m = monoid();
        let reading = p_symbol(&w).column_reading_word();
        prop_assert!(plactic_equivalent(&w, &reading));
        prop_assert_eq!(m.element_of_word(&w).unwrap(), m.element_of_word(&reading).unwrap());
    }

    #[test]
    fn lfix_and_rfix_are_fixing_columns(w in word(N, 8)) {
        let m = monoid();
        let x = m.element_of_word(&w).unwrap();
        for c in m.alphabet().letters() {
            let g = m.generator(c);
            prop_assert_eq!(m.multiply(g, x) == x, m.lfix(x).contains(c));
            prop_assert_eq!(m.multiply(x, g) == x, m.rfix(x).contains(c));
        }
        prop_assert!(m.j_leq(m.multiply(x, m.generator(Letter::new(1))), x));
    }

    #[test]
    fn loops_removal_on_random_walks(start in 1u16..(1 << N), choices in prop::collection::vec(0usize..N, 0..10)) {
        let q = Quiver::build_extended(N).unwrap();
        let plain = Quiver::build(N).unwrap();
        let m = monoid();
        let g = Column::from_bits(start);
        let mut w = Word::empty();
        let mut cur = g;
        for k in choices {
            let options: Vec<Letter> = m.alphabet().letters().filter(|&c| q.step(cur, c).is_some()).collect();
            let c = options[k % options.len()];
            cur = q.step(cur, c).unwrap();
            w.push(c);
        }
        let reduced = loops_removal(g, &w).unwrap();
        prop_assert!(Path::new(&plain, g, reduced.clone()).is_ok());
        prop_assert_eq!(right_act_word(g, &reduced), cur);
        prop_assert_eq!(
            m.element_of_word(&g.word().concat(&reduced)).unwrap(),
            m.element_of_word(&g.word().concat(&w)).unwrap()
        );
    }

    #[test]
    fn algebra_is_associative_and_distributive(
        x in algebra_element(15), y in algebra_element(15), z in algebra_element(15)
    ) {
        let alg = StylAlgebra::new(small_monoid());
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
        prop_assert_eq!(alg.mul(&x, &y.add(&z)), alg.mul(&x, &y).add(&alg.mul(&x, &z)));
        prop_assert_eq!(alg.mul(&alg.one(), &x), x.clone());
        prop_assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 0..6)) {
        let m = if rows.is_empty() {
            ExactMatrix::zeros(0, 5)
        } else {
            ExactMatrix::from_integers(&rows)
        };
        let rank = m.rank();
        prop_assert_eq!(rank, m.transpose().rank());
        let kernel = m.kernel();
        prop_assert_eq!(rank + kernel.len(), 5);
        for v in kernel {
            prop_assert!(m.apply(&v).iter().all(|c| *c == BigRational::from_integer(0.into())));
        }
    }
}
