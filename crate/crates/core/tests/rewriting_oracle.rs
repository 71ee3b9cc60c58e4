//! Cross-checks the action-table monoid against congruence closure of the
//! defining relations on bounded-length words, which shares no code with it.

use std::collections::HashMap;

use stylic::tableaux::p_symbol;
use stylic::{StylMonoid, Word};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn all_words(n: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<u8>| {
                (1..=n).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Length-3 factors related to `f` by one Knuth move.
fn knuth_moves(f: &[u8]) -> Vec<[u8; 3]> {
    let (p, q, r) = (f[0], f[1], f[2]);
    let mut out = Vec::new();
    // x < y ≤ z: y x z ~ y z x
    if q < p && p <= r {
        out.push([p, r, q]);
    }
    if r < p && p <= q {
        out.push([p, r, q]);
    }
    // x ≤ y < z: x z y ~ z x y
    if p <= r && r < q {
        out.push([q, p, r]);
    }
    if q <= r && r < p {
        out.push([q, p, r]);
    }
    out
}

/// Classes of words of length at most `max_len` under the closure of the
/// given moves, restricted to words of that length bound.
fn classes(n: u8, max_len: usize, idempotent: bool) -> (Vec<Vec<u8>>, Vec<usize>) {
    let words = all_words(n, max_len);
    let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind::new(words.len());
    for (i, w) in words.iter().enumerate() {
        for k in 0..w.len().saturating_sub(2) {
            for m in knuth_moves(&w[k..k + 3]) {
                let mut v = w.clone();
                v[k..k + 3].copy_from_slice(&m);
                uf.union(i, index[&v]);
            }
        }
        if idempotent {
            for k in 0..w.len().saturating_sub(1) {
                if w[k] == w[k + 1] {
                    let mut v = w.clone();
                    v.remove(k);
                    uf.union(i, index[&v]);
                }
            }
        }
    }
    let roots = (0..words.len()).map(|i| uf.find(i)).collect();
    (words, roots)
}

fn check_stylic(n: u8, closure_len: usize, probe_len: usize, expected: usize) {
    let monoid = StylMonoid::enumerate(n as usize).unwrap();
    let (words, roots) = classes(n, closure_len, true);
    let mut class_to_elem = HashMap::new();
    let mut elem_to_class = HashMap::new();
    for (w, &root) in words.iter().zip(&roots) {
        if w.len() > probe_len {
            continue;
        }
        let indices: Vec<usize> = w.iter().map(|&c| c as usize).collect();
        let x = monoid.element_of_word(&Word::from_indices(&indices)).unwrap();
        assert_eq!(*class_to_elem.entry(root).or_insert(x), x, "class of {w:?} splits");
        assert_eq!(*elem_to_class.entry(x).or_insert(root), root, "{w:?} joins two classes");
    }
    assert_eq!(class_to_elem.len(), expected);
    assert_eq!(monoid.size(), expected);
}

#[test]
fn two_letters() {
    check_stylic(2, 7, 4, 5);
}

#[test]
fn three_letters() {
    check_stylic(3, 7, 4, 15);
}

#[test]
fn plactic_classes_are_tableaux() {
    // Knuth moves preserve length, so closure within a length bound is exact.
    for (n, len) in [(2u8, 6usize), (3, 5), (4, 4)] {
        let (words, roots) = classes(n, len, false);
        let mut root_to_p = HashMap::new();
        let mut p_to_root = HashMap::new();
        for (w, root) in words.iter().zip(roots) {
            let indices: Vec<usize> = w.iter().map(|&c| c as usize).collect();
            let p = p_symbol(&Word::from_indices(&indices));
            assert_eq!(*root_to_p.entry(root).or_insert_with(|| p.clone()), p, "{w:?}");
            assert_eq!(*p_to_root.entry(p).or_insert(root), root, "{w:?}");
        }
    }
}
