//! A root system with its Weyl group, chamber weights, positive coroots,
//! reduced words for the longest element, and the braid graph on them.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::bz::Relation;
use crate::cartan::{pair, CartanDatum, Coweight, Weight};
use crate::error::{Error, Result};
use crate::weyl::WeylGroup;

/// Default largest rank accepted without an explicit override.
pub const DEFAULT_RANK_CAP: usize = 4;

/// A weight of the form `w . Lambda_level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberWeight {
    pub weight: Weight,
    pub level: usize,
}

/// Path data attached to a reduced word for the longest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordData {
    pub word: Vec<usize>,
    /// `w_0, ..., w_m` with `w_k = s_{i_1} ... s_{i_k}`.
    pub prefixes: Vec<usize>,
    /// `beta_k = w_{k-1} . alpha^vee_{i_k}` in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    /// Chamber indices of `gamma_k = w_k . Lambda_{i_k}`.
    pub gammas: Vec<usize>,
    /// Sorted chamber indices of all chamber weights met along the path.
    pub chamber_set: Vec<usize>,
}

/// A braid move from one reduced word to another: positions `pos..pos+d`
/// read `i, j, i, ...` in the source and `j, i, j, ...` in the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidEdge {
    pub from: usize,
    pub to: usize,
    pub pos: usize,
    pub i: usize,
    pub j: usize,
    pub d: usize,
}

#[derive(Debug, Clone)]
pub struct BraidGraph {
    pub words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    pub adjacency: Vec<Vec<BraidEdge>>,
}

impl BraidGraph {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Undirected edge count.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.words.is_empty() {
            return true;
        }
        let (dist, _) = self.bfs(0);
        dist.iter().all(Option::is_some)
    }

    /// BFS distances and parent edges from `start`.
    pub fn bfs(&self, start: usize) -> (Vec<Option<usize>>, Vec<Option<BraidEdge>>) {
        let mut dist = vec![None; self.words.len()];
        let mut parent = vec![None; self.words.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for e in &self.adjacency[u] {
                if dist[e.to].is_none() {
                    dist[e.to] = Some(du + 1);
                    parent[e.to] = Some(*e);
                    queue.push_back(e.to);
                }
            }
        }
        (dist, parent)
    }

    /// A shortest sequence of braid moves from `from` to `to`.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<BraidEdge>> {
        let (_, parent) = self.bfs(from);
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let e = parent[cur]?;
            path.push(e);
            cur = e.from;
        }
        path.reverse();
        Some(path)
    }
}

pub struct RootSystem {
    cartan: CartanDatum,
    weyl: WeylGroup,
    chambers: Vec<ChamberWeight>,
    chamber_index: HashMap<Vec<i64>, usize>,
    chamber_of: Vec<usize>,
    positive_coroots: Vec<Vec<i64>>,
    braid: OnceLock<BraidGraph>,
    word_data: OnceLock<Vec<WordData>>,
    relations: OnceLock<Vec<Relation>>,
}

impl std::fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.cartan.label())
            .field("order", &self.weyl.order())
            .finish()
    }
}

impl RootSystem {
    pub fn new(cartan: CartanDatum) -> Result<Self> {
        Self::with_rank_cap(cartan, DEFAULT_RANK_CAP)
    }

    pub fn with_rank_cap(cartan: CartanDatum, cap: usize) -> Result<Self> {
        if cartan.rank() > cap {
            return Err(Error::RankCap {
                rank: cartan.rank(),
                cap,
            });
        }
        let weyl = WeylGroup::new(&cartan);
        let r = cartan.rank();

        let mut chambers = Vec::new();
        let mut chamber_index = HashMap::new();
        let mut chamber_of = vec![0; weyl.order() * r];
        for w in 0..weyl.order() {
            for i in 0..r {
                let v = weyl.chamber(w, i);
                let idx = *chamber_index.entry(v.clone()).or_insert_with(|| {
                    chambers.push(ChamberWeight {
                        weight: Weight(v),
                        level: i,
                    });
                    chambers.len() - 1
                });
                chamber_of[w * r + i] = idx;
            }
        }

        let mut positive_coroots: Vec<Vec<i64>> = Vec::new();
        for w in 0..weyl.order() {
            for i in 0..r {
                let c = weyl.coroot_image(w, i);
                if c.iter().all(|&x| x >= 0) && !positive_coroots.contains(&c) {
                    positive_coroots.push(c);
                }
            }
        }
        positive_coroots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        Ok(RootSystem {
            cartan,
            weyl,
            chambers,
            chamber_index,
            chamber_of,
            positive_coroots,
            braid: OnceLock::new(),
            word_data: OnceLock::new(),
            relations: OnceLock::new(),
        })
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(CartanDatum::from_label(label)?)
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.weyl.max_length()
    }

    pub fn chambers(&self) -> &[ChamberWeight] {
        &self.chambers
    }

    pub fn num_chambers(&self) -> usize {
        self.chambers.len()
    }

    /// Chamber index of `w . Lambda_i`. The fundamental weights occupy indices `0..rank`.
    #[inline]
    pub fn chamber(&self, w: usize, i: usize) -> usize {
        self.chamber_of[w * self.rank() + i]
    }

    pub fn chamber_by_weight(&self, weight: &[i64]) -> Option<usize> {
        self.chamber_index.get(weight).copied()
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// The simple reflection `s_i` as a group element index.
    pub fn simple_reflection(&self, i: usize) -> Result<usize> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(self.weyl.mul_simple(0, i))
    }

    /// `<mu, alpha_i>` for every simple root.
    pub fn simple_root_pairings(&self, mu: &Coweight) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|k| mu.0[k] * self.cartan.a(k, i)).sum())
            .collect()
    }

    pub fn is_dominant(&self, mu: &Coweight) -> bool {
        self.simple_root_pairings(mu).iter().all(|&x| x >= 0)
    }

    /// Twisted order: `mu >=_w nu` iff `<mu - nu, w . Lambda_i> >= 0` for all `i`.
    pub fn coweight_ge(&self, w: usize, mu: &Coweight, nu: &Coweight) -> bool {
        let diff = mu.sub(nu);
        (0..self.rank()).all(|i| pair(&diff.0, &self.weyl.chamber(w, i)) >= 0)
    }

    pub fn act_coweight(&self, w: usize, mu: &Coweight) -> Coweight {
        Coweight(self.weyl.act_coweight(w, &mu.0))
    }

    /// Number of ways to write `mu` as a sum of positive coroots.
    pub fn kpf(&self, mu: &Coweight) -> u64 {
        let mut memo = HashMap::new();
        kpf_rec(&self.positive_coroots, 0, &mu.0, &mut memo)
    }

    /// Kostant partition function with a shared memo table, for repeated queries.
    pub fn kpf_cached(&self, mu: &[i64], memo: &mut HashMap<(usize, Vec<i64>), u64>) -> u64 {
        kpf_rec(&self.positive_coroots, 0, mu, memo)
    }

    /// Every tropical Pluecker relation, one entry per equation.
    pub fn relations(&self) -> &[Relation] {
        self.relations.get_or_init(|| crate::bz::build_relations(self))
    }

    pub fn braid_graph(&self) -> &BraidGraph {
        self.braid.get_or_init(|| self.build_braid_graph())
    }

    /// All reduced words for the longest element, lexicographically sorted.
    pub fn longest_words(&self) -> &[Vec<usize>] {
        &self.braid_graph().words
    }

    fn build_braid_graph(&self) -> BraidGraph {
        let words = self.weyl.reduced_words(self.weyl.longest());
        let index: HashMap<Vec<usize>, usize> =
            words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut adjacency = vec![Vec::new(); words.len()];
        for (from, word) in words.iter().enumerate() {
            for pos in 0..word.len().saturating_sub(1) {
                let (i, j) = (word[pos], word[pos + 1]);
                if i == j {
                    continue;
                }
                let d = self.cartan.braid_order(i, j);
                if pos + d > word.len() {
                    continue;
                }
                let alternates = (0..d).all(|t| word[pos + t] == if t % 2 == 0 { i } else { j });
                if !alternates {
                    continue;
                }
                let mut target = word.clone();
                for t in 0..d {
                    target[pos + t] = if t % 2 == 0 { j } else { i };
                }
                let to = index[&target];
                adjacency[from].push(BraidEdge {
                    from,
                    to,
                    pos,
                    i,
                    j,
                    d,
                });
            }
        }
        BraidGraph {
            words,
            index,
            adjacency,
        }
    }

    /// Path data for every reduced word of the longest element, indexed like the braid graph.
    pub fn all_word_data(&self) -> &[WordData] {
        self.word_data.get_or_init(|| {
            self.braid_graph()
                .words
                .iter()
                .map(|w| self.compute_word_data(w))
                .collect()
        })
    }

    pub fn word_index(&self, word: &[usize]) -> Result<usize> {
        self.braid_graph()
            .index_of(word)
            .ok_or_else(|| Error::NotLongestWord { word: word.to_vec() })
    }

    pub fn word_data(&self, word: &[usize]) -> Result<WordData> {
        if !self.weyl.is_reduced(word)
            || self.weyl.from_word(word)? != self.weyl.longest()
        {
            return Err(Error::NotLongestWord { word: word.to_vec() });
        }
        Ok(self.compute_word_data(word))
    }

    fn compute_word_data(&self, word: &[usize]) -> WordData {
        let mut prefixes = vec![0usize];
        let mut coroots = Vec::with_capacity(word.len());
        let mut gammas = Vec::with_capacity(word.len());
        let mut cur = 0usize;
        for &i in word {
            coroots.push(self.weyl.coroot_image(cur, i));
            cur = self.weyl.mul_simple(cur, i);
            prefixes.push(cur);
            gammas.push(self.chamber(cur, i));
        }
        let mut chamber_set: Vec<usize> = (0..self.rank()).chain(gammas.iter().copied()).collect();
        chamber_set.sort_unstable();
        chamber_set.dedup();
        WordData {
            word: word.to_vec(),
            prefixes,
            coroots,
            gammas,
            chamber_set,
        }
    }
}

fn kpf_rec(
    coroots: &[Vec<i64>],
    idx: usize,
    mu: &[i64],
    memo: &mut HashMap<(usize, Vec<i64>), u64>,
) -> u64 {
    if mu.iter().any(|&x| x < 0) {
        return 0;
    }
    if mu.iter().all(|&x| x == 0) {
        return 1;
    }
    if idx == coroots.len() {
        return 0;
    }
    let key = (idx, mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let beta = &coroots[idx];
    let mut rest = mu.to_vec();
    let mut total = 0u64;
    loop {
        total += kpf_rec(coroots, idx + 1, &rest, memo);
        for (x, b) in rest.iter_mut().zip(beta) {
            *x -= b;
        }
        if rest.iter().any(|&x| x < 0) {
            break;
        }
    }
    memo.insert(key, total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    #[test]
    fn rank_cap() {
        let c = CartanDatum::from_label("A5").unwrap();
        assert!(matches!(RootSystem::new(c.clone()), Err(Error::RankCap { .. })));
        assert!(RootSystem::with_rank_cap(c, 5).is_ok());
    }

    #[test]
    fn chamber_counts() {
        // |Gamma| = sum over i of |W . Lambda_i|.
        assert_eq!(sys("A2").num_chambers(), 6);
        assert_eq!(sys("B2").num_chambers(), 8);
        assert_eq!(sys("A3").num_chambers(), 14);
        let s = sys("A3");
        for i in 0..3 {
            assert_eq!(s.chamber(0, i), i);
            assert_eq!(s.chambers()[i].level, i);
        }
    }

    #[test]
    fn positive_coroot_counts() {
        assert_eq!(sys("A2").positive_coroots().len(), 3);
        assert_eq!(sys("B2").positive_coroots().len(), 4);
        assert_eq!(sys("A3").positive_coroots().len(), 6);
        assert_eq!(sys("D4").positive_coroots().len(), 12);
    }

    #[test]
    fn word_data_a2() {
        let s = sys("A2");
        let wd = s.word_data(&[0, 1, 0]).unwrap();
        assert_eq!(wd.coroots, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        // gamma_1 = s1 Lambda_1 = "2", gamma_2 = s1 s2 Lambda_2 = "23", gamma_3 = w0 Lambda_1 = "3".
        let weights: Vec<_> = wd.gammas.iter().map(|&g| s.chambers()[g].weight.0.clone()).collect();
        assert_eq!(weights, vec![vec![-1, 1], vec![-1, 0], vec![0, -1]]);
        assert_eq!(wd.chamber_set.len(), 5);
        // Only "13", with fundamental-weight coordinates (1,-1), is missed.
        let missing: Vec<_> = (0..6).filter(|c| !wd.chamber_set.contains(c)).collect();
        assert_eq!(missing.len(), 1);
        assert_eq!(s.chambers()[missing[0]].weight.0, vec![1, -1]);
    }

    #[test]
    fn word_data_rejects_bad_words() {
        let s = sys("A2");
        assert!(s.word_data(&[0, 1]).is_err());
        assert!(s.word_data(&[0, 0, 1]).is_err());
    }

    #[test]
    fn word_data_invariants() {
        for label in ["A2", "B2", "C3", "A3", "D4"] {
            let s = sys(label);
            let m = s.num_positive();
            let mut pos = s.positive_coroots().to_vec();
            pos.sort();
            for wd in s.all_word_data().iter().take(50) {
                assert_eq!(wd.chamber_set.len(), m + s.rank(), "{label}");
                let mut cs = wd.coroots.clone();
                cs.sort();
                assert_eq!(cs, pos, "{label}");
            }
        }
    }

    #[test]
    fn braid_graphs() {
        let s = sys("A2");
        let g = s.braid_graph();
        assert_eq!(g.len(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.adjacency[0][0].d, 3);
        let s = sys("B2");
        let g = s.braid_graph();
        assert_eq!((g.len(), g.edge_count()), (2, 1));
        assert_eq!(g.adjacency[0][0].d, 4);
        for label in ["A3", "B3", "C3", "A4", "D4"] {
            let s = sys(label);
            assert!(s.braid_graph().is_connected(), "{label}");
        }
        assert_eq!(sys("A3").braid_graph().len(), 16);
    }

    #[test]
    fn kpf_values() {
        let s = sys("A2");
        assert_eq!(s.kpf(&Coweight(vec![1, 1])), 2);
        assert_eq!(s.kpf(&Coweight(vec![2, 1])), 2);
        assert_eq!(s.kpf(&Coweight(vec![0, 0])), 1);
        assert_eq!(s.kpf(&Coweight(vec![-1, 2])), 0);
    }

    #[test]
    fn twisted_order() {
        let s = sys("A2");
        let w0 = s.weyl().longest();
        let a = Coweight(vec![1, 1]);
        let z = Coweight(vec![0, 0]);
        assert!(!s.coweight_ge(w0, &a, &z));
        assert!(s.coweight_ge(w0, &z, &a));
        assert!(s.coweight_ge(0, &a, &z));
        for w in 0..6 {
            assert!(s.coweight_ge(w, &a, &a));
        }
    }

    #[test]
    fn dominance() {
        let s = sys("A2");
        assert!(s.is_dominant(&Coweight(vec![1, 1])));
        assert!(s.is_dominant(&Coweight(vec![2, 1])));
        assert!(!s.is_dominant(&Coweight(vec![1, 0])));
    }
}
