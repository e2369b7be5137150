//! The finite Weyl group, enumerated by breadth-first search over right
//! multiplication by simple reflections.

use std::collections::HashMap;

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};

/// Square integer matrix stored row-major.
pub type Matrix = Vec<i64>;

pub(crate) fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Matrix {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += x * b[k * r + j];
            }
        }
    }
    out
}

pub(crate) fn mat_vec(a: &[i64], v: &[i64]) -> Vec<i64> {
    let r = v.len();
    (0..r).map(|i| (0..r).map(|k| a[i * r + k] * v[k]).sum()).collect()
}

pub(crate) fn identity(r: usize) -> Matrix {
    let mut m = vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

/// A Weyl group element, identified by its action on the weight lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Action on weights in the fundamental-weight basis; column `j` is `w . Lambda_j`.
    pub action: Matrix,
    /// Action on coweights in the simple-coroot basis; column `j` is `w . alpha_j^vee`.
    pub coaction: Matrix,
    /// Lexicographically least reduced word (zero-based letters).
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Simple reflection on weights: `s_i . Lambda_j = Lambda_j - delta_ij alpha_i`.
pub(crate) fn reflection_on_weights(cartan: &CartanDatum, i: usize) -> Matrix {
    let r = cartan.rank();
    let mut m = identity(r);
    for k in 0..r {
        m[k * r + i] -= cartan.a(k, i);
    }
    m
}

/// Simple reflection on coweights: `s_i . alpha_j^vee = alpha_j^vee - a_ji alpha_i^vee`.
pub(crate) fn reflection_on_coweights(cartan: &CartanDatum, i: usize) -> Matrix {
    let r = cartan.rank();
    let mut m = identity(r);
    for j in 0..r {
        m[i * r + j] -= cartan.a(j, i);
    }
    m
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Matrix, usize>,
    right: Vec<Vec<usize>>,
    longest: usize,
}

impl WeylGroup {
    pub fn new(cartan: &CartanDatum) -> Self {
        let r = cartan.rank();
        let refl: Vec<Matrix> = (0..r).map(|i| reflection_on_weights(cartan, i)).collect();
        let corefl: Vec<Matrix> = (0..r).map(|i| reflection_on_coweights(cartan, i)).collect();

        let mut elements = vec![WeylElement {
            action: identity(r),
            coaction: identity(r),
            word: Vec::new(),
        }];
        let mut index = HashMap::new();
        index.insert(identity(r), 0usize);
        let mut right: Vec<Vec<usize>> = vec![vec![usize::MAX; r]];

        // Layers are generated in lexicographic order of canonical words, so the
        // first time an element is reached its word is the least reduced word.
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &w in &layer {
                for i in 0..r {
                    let action = mat_mul(&elements[w].action, &refl[i], r);
                    let target = match index.get(&action) {
                        Some(&t) => t,
                        None => {
                            let coaction = mat_mul(&elements[w].coaction, &corefl[i], r);
                            let mut word = elements[w].word.clone();
                            word.push(i);
                            let t = elements.len();
                            index.insert(action.clone(), t);
                            elements.push(WeylElement {
                                action,
                                coaction,
                                word,
                            });
                            right.push(vec![usize::MAX; r]);
                            next.push(t);
                            t
                        }
                    };
                    right[w][i] = target;
                }
            }
            layer = next;
        }
        let longest = elements.len() - 1;
        WeylGroup {
            rank: r,
            elements,
            index,
            right,
            longest,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    /// Number of positive roots, the length of the longest element.
    pub fn max_length(&self) -> usize {
        self.elements[self.longest].length()
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length()
    }

    /// Index of `w s_i`.
    #[inline]
    pub fn mul_simple(&self, w: usize, i: usize) -> usize {
        self.right[w][i]
    }

    pub fn is_right_descent(&self, w: usize, i: usize) -> bool {
        self.length(self.mul_simple(w, i)) < self.length(w)
    }

    pub fn lookup(&self, action: &[i64]) -> Option<usize> {
        self.index.get(action).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .word
            .iter()
            .fold(a, |acc, &i| self.mul_simple(acc, i))
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.elements[w]
            .word
            .iter()
            .rev()
            .fold(0, |acc, &i| self.mul_simple(acc, i))
    }

    /// Product of the word's letters; errors if an index is out of range.
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        word.iter().try_fold(0, |acc, &i| {
            if i >= self.rank {
                Err(Error::IndexOutOfRange {
                    index: i,
                    rank: self.rank,
                })
            } else {
                Ok(self.mul_simple(acc, i))
            }
        })
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        match self.from_word(word) {
            Ok(w) => self.length(w) == word.len(),
            Err(_) => false,
        }
    }

    /// Acts on a weight given in fundamental-weight coordinates.
    pub fn act_weight(&self, w: usize, weight: &[i64]) -> Vec<i64> {
        mat_vec(&self.elements[w].action, weight)
    }

    /// Acts on a coweight given in simple-coroot coordinates.
    pub fn act_coweight(&self, w: usize, coweight: &[i64]) -> Vec<i64> {
        mat_vec(&self.elements[w].coaction, coweight)
    }

    /// `w . Lambda_i`, the `i`-th column of the action matrix.
    pub fn chamber(&self, w: usize, i: usize) -> Vec<i64> {
        let r = self.rank;
        (0..r).map(|k| self.elements[w].action[k * r + i]).collect()
    }

    /// `w . alpha_i^vee`.
    pub fn coroot_image(&self, w: usize, i: usize) -> Vec<i64> {
        let r = self.rank;
        (0..r).map(|k| self.elements[w].coaction[k * r + i]).collect()
    }

    /// All reduced words of `w` in lexicographic order.
    pub fn reduced_words(&self, w: usize) -> Vec<Vec<usize>> {
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        let mut out = self.words_rec(w, &mut memo);
        out.sort();
        out
    }

    fn words_rec(&self, w: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in 0..self.rank {
            if self.is_right_descent(w, i) {
                let prev = self.mul_simple(w, i);
                for mut word in self.words_rec(prev, memo) {
                    word.push(i);
                    out.push(word);
                }
            }
        }
        memo.insert(w, out.clone());
        out
    }
}
