//! Lusztig data: edge lengths along the path of a reduced word, the
//! triangular system linking them to hyperplane values, and the min-plus
//! maps between data for words related by braid moves.

use std::collections::BTreeMap;

use crate::cartan::pair;
use crate::error::{Error, Result};
use crate::system::{BraidEdge, RootSystem, WordData};

/// Default bound on the entries accepted from callers.
pub const DEFAULT_INPUT_CAP: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LusztigDatum {
    pub word: Vec<usize>,
    pub n: Vec<i64>,
}

impl LusztigDatum {
    /// Checks that `word` is a reduced word for `w_0` and `n` is a nonnegative
    /// vector of matching length with entries below the input cap.
    pub fn new(sys: &RootSystem, word: Vec<usize>, n: Vec<i64>) -> Result<Self> {
        sys.word_index(&word)?;
        if n.len() != word.len() {
            return Err(Error::LengthMismatch {
                expected: word.len(),
                got: n.len(),
            });
        }
        for &x in &n {
            if x < 0 {
                return Err(Error::NegativeEntry { value: x });
            }
            if x > DEFAULT_INPUT_CAP {
                return Err(Error::InputCap {
                    value: x,
                    cap: DEFAULT_INPUT_CAP,
                });
            }
        }
        Ok(LusztigDatum { word, n })
    }

    /// `sum_k n_k beta_k` in simple-coroot coordinates.
    pub fn coweight(&self, sys: &RootSystem) -> Result<Vec<i64>> {
        let wd = sys.word_data(&self.word)?;
        Ok(coweight_of(&wd, &self.n))
    }
}

pub(crate) fn coweight_of(wd: &WordData, n: &[i64]) -> Vec<i64> {
    let r = wd.coroots.first().map_or(0, Vec::len);
    let mut mu = vec![0i64; r];
    for (beta, &nk) in wd.coroots.iter().zip(n) {
        for (m, b) in mu.iter_mut().zip(beta) {
            *m += nk * b;
        }
    }
    mu
}

/// Hyperplane values on the chamber weights met by one word's path.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialHyperplaneData {
    /// Chamber index to value.
    pub values: BTreeMap<usize, i64>,
}

/// Hyperplane values of the polytope with lowest vertex 0 and the given
/// Lusztig datum: `M_{gamma_k} = sum_{l <= k} <beta_l, gamma_k> n_l`.
pub fn n_to_partial_m(sys: &RootSystem, datum: &LusztigDatum) -> Result<PartialHyperplaneData> {
    let idx = sys.word_index(&datum.word)?;
    let wd = &sys.all_word_data()[idx];
    let mut values = BTreeMap::new();
    for i in 0..sys.rank() {
        values.insert(i, 0);
    }
    for (g, v) in partial_values(sys, wd, &datum.n)? {
        values.insert(g, v);
    }
    Ok(PartialHyperplaneData { values })
}

/// `(chamber, value)` for each `gamma_k`, computed through the running vertex
/// `mu_k = sum_{l <= k} n_l beta_l`.
pub(crate) fn partial_values(
    sys: &RootSystem,
    wd: &WordData,
    n: &[i64],
) -> Result<Vec<(usize, i64)>> {
    let r = sys.rank();
    let mut mu = vec![0i64; r];
    let mut out = Vec::with_capacity(n.len());
    for (k, &nk) in n.iter().enumerate() {
        for (m, b) in mu.iter_mut().zip(&wd.coroots[k]) {
            *m = nk
                .checked_mul(*b)
                .and_then(|x| m.checked_add(x))
                .ok_or(Error::Overflow)?;
        }
        let g = wd.gammas[k];
        out.push((g, pair(&mu, &sys.chambers()[g].weight.0)));
    }
    Ok(out)
}

/// Solves the triangular system for the Lusztig datum of `word`.
pub fn partial_m_to_n(
    sys: &RootSystem,
    word: &[usize],
    partial: &PartialHyperplaneData,
) -> Result<LusztigDatum> {
    let idx = sys.word_index(word)?;
    let wd = &sys.all_word_data()[idx];
    for i in 0..sys.rank() {
        let v = partial.values.get(&i).copied().unwrap_or(0);
        if v != 0 {
            return Err(Error::NotNormalized { level: i, value: v });
        }
    }
    let get = |c: usize| -> Result<i64> {
        partial
            .values
            .get(&c)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("missing value for chamber weight {c}")))
    };
    let mut n = Vec::with_capacity(word.len());
    for (k, &i) in word.iter().enumerate() {
        let w = wd.prefixes[k];
        let mut len = -get(sys.chamber(w, i))? - get(wd.gammas[k])?;
        for j in 0..sys.rank() {
            if j != i {
                len -= sys.cartan().a(j, i) * get(sys.chamber(w, j))?;
            }
        }
        if len < 0 {
            return Err(Error::EdgeInequality { leg: k, length: len });
        }
        n.push(len);
    }
    Ok(LusztigDatum {
        word: word.to_vec(),
        n,
    })
}

/// Applies the min-plus map for a single braid move to a full Lusztig vector.
/// Entries outside the moved window are copied unchanged.
pub fn braid_transition(sys: &RootSystem, edge: &BraidEdge, n: &[i64]) -> Vec<i64> {
    let mut out = n.to_vec();
    let k = edge.pos;
    let w = &n[k..k + edge.d];
    let cartan = sys.cartan();
    match edge.d {
        2 => {
            out[k] = w[1];
            out[k + 1] = w[0];
        }
        3 => {
            let p = w[0].min(w[2]);
            out[k] = w[1] + w[2] - p;
            out[k + 1] = p;
            out[k + 2] = w[0] + w[1] - p;
        }
        4 => {
            let p1 = (w[0] + w[1]).min(w[0] + w[3]).min(w[2] + w[3]);
            if cartan.a(edge.i, edge.j) == -1 {
                // a_ij = -1, a_ji = -2
                let p2 = (w[0] + 2 * w[1]).min(w[0] + 2 * w[3]).min(w[2] + 2 * w[3]);
                out[k] = w[1] + w[2] + w[3] - p1;
                out[k + 1] = 2 * p1 - p2;
                out[k + 2] = p2 - p1;
                out[k + 3] = w[0] + 2 * w[1] + w[2] - p2;
            } else {
                // a_ij = -2, a_ji = -1
                let p2 = (2 * w[0] + w[1]).min(2 * w[0] + w[3]).min(2 * w[2] + w[3]);
                out[k] = w[1] + 2 * w[2] + w[3] - p2;
                out[k + 1] = p2 - p1;
                out[k + 2] = 2 * p1 - p2;
                out[k + 3] = w[0] + w[1] + w[2] - p1;
            }
        }
        d => unreachable!("braid order {d} does not occur without G2"),
    }
    debug_assert!(
        out[k..k + edge.d].iter().all(|&x| x >= 0) || n.iter().any(|&x| x < 0),
        "transition produced a negative entry from {n:?}"
    );
    out
}

/// Transports a Lusztig datum from `from` to `to` along a shortest braid path.
pub fn transition_map(sys: &RootSystem, from: &[usize], to: &[usize], n: &[i64]) -> Result<Vec<i64>> {
    let a = sys.word_index(from)?;
    let b = sys.word_index(to)?;
    if n.len() != from.len() {
        return Err(Error::LengthMismatch {
            expected: from.len(),
            got: n.len(),
        });
    }
    let path = sys
        .braid_graph()
        .shortest_path(a, b)
        .ok_or_else(|| Error::Disconnected {
            from: from.to_vec(),
            to: to.to_vec(),
        })?;
    Ok(path
        .iter()
        .fold(n.to_vec(), |acc, e| braid_transition(sys, e, &acc)))
}

/// Propagates `n` from word `start` to every word by BFS over the braid graph.
pub fn propagate(sys: &RootSystem, start: usize, n: &[i64]) -> Vec<Vec<i64>> {
    let graph = sys.braid_graph();
    let (dist, parent) = graph.bfs(start);
    let mut order: Vec<usize> = (0..graph.len()).collect();
    order.sort_by_key(|&v| dist[v]);
    let mut data: Vec<Option<Vec<i64>>> = vec![None; graph.len()];
    data[start] = Some(n.to_vec());
    for v in order {
        if v == start {
            continue;
        }
        let e = parent[v].expect("braid graph is connected");
        let prev = data[e.from].as_ref().expect("BFS order");
        data[v] = Some(braid_transition(sys, &e, prev));
    }
    data.into_iter().map(|d| d.expect("all reached")).collect()
}
