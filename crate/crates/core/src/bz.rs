//! BZ data: integer hyperplane values on all chamber weights, their assembly
//! from a Lusztig datum, and the two validity checks (tropical Pluecker
//! relations and edge inequalities).

use std::collections::VecDeque;
use std::fmt;

use crate::cartan::{pair, Coweight};
use crate::error::{Error, Result};
use crate::lusztig::{braid_transition, partial_values, LusztigDatum};
use crate::system::RootSystem;

/// Hyperplane values indexed by chamber-weight index of the root system.
/// Construction does not validate; see [`MvPolytope`] for the checked form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BzDatum {
    pub values: Vec<i64>,
}

impl BzDatum {
    pub fn new(sys: &RootSystem, values: Vec<i64>) -> Result<Self> {
        if values.len() != sys.num_chambers() {
            return Err(Error::LengthMismatch {
                expected: sys.num_chambers(),
                got: values.len(),
            });
        }
        Ok(BzDatum { values })
    }

    pub fn zero(sys: &RootSystem) -> Self {
        BzDatum {
            values: vec![0; sys.num_chambers()],
        }
    }

    #[inline]
    pub fn get(&self, chamber: usize) -> i64 {
        self.values[chamber]
    }

    /// True when `M_{Lambda_i} = 0` for every fundamental weight.
    pub fn is_normalized(&self, sys: &RootSystem) -> bool {
        self.values[..sys.rank()].iter().all(|&v| v == 0)
    }
}

/// A sparse integer linear form in the hyperplane values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm(pub Vec<(usize, i64)>);

impl LinearForm {
    #[inline]
    pub fn eval(&self, m: &[i64]) -> i64 {
        self.0.iter().map(|&(c, k)| k * m[c]).sum()
    }

    /// Dense coefficient vector over all chamber weights.
    pub fn dense(&self, len: usize) -> Vec<i64> {
        let mut v = vec![0; len];
        for &(c, k) in &self.0 {
            v[c] += k;
        }
        v
    }
}

/// One min-plus equation `lhs = min(terms)` attached to a 2-face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    /// Lowest vertex of the 2-face.
    pub w: usize,
    pub i: usize,
    pub j: usize,
    /// Which of the face's equations this is (0 for hexagons, 0 or 1 for octagons).
    pub index: usize,
    pub lhs: LinearForm,
    pub terms: Vec<LinearForm>,
    /// One orientation is chosen per face; BZ choices are made on these only.
    pub canonical: bool,
}

pub(crate) fn build_relations(sys: &RootSystem) -> Vec<Relation> {
    let weyl = sys.weyl();
    let cartan = sys.cartan();
    let r = sys.rank();
    let mut out = Vec::new();
    for w in 0..weyl.order() {
        for i in 0..r {
            for j in 0..r {
                if i == j || cartan.a(i, j) == 0 {
                    continue;
                }
                if weyl.is_right_descent(w, i) || weyl.is_right_descent(w, j) {
                    continue;
                }
                let c = |path: &[usize], k: usize| -> usize {
                    let x = path.iter().fold(w, |acc, &s| weyl.mul_simple(acc, s));
                    sys.chamber(x, k)
                };
                let f = |terms: &[(&[usize], usize, i64)]| -> LinearForm {
                    LinearForm(terms.iter().map(|&(p, k, coef)| (c(p, k), coef)).collect())
                };
                let (aij, aji) = (cartan.a(i, j), cartan.a(j, i));
                let push = |out: &mut Vec<Relation>, index, lhs, terms, canonical| {
                    out.push(Relation {
                        w,
                        i,
                        j,
                        index,
                        lhs,
                        terms,
                        canonical,
                    })
                };
                match (aij, aji) {
                    (-1, -1) => {
                        if i > j {
                            continue;
                        }
                        push(
                            &mut out,
                            0,
                            f(&[(&[i], i, 1), (&[j], j, 1)]),
                            vec![
                                f(&[(&[], i, 1), (&[i, j], j, 1)]),
                                f(&[(&[j, i], i, 1), (&[], j, 1)]),
                            ],
                            true,
                        );
                    }
                    (-1, -2) => {
                        push(
                            &mut out,
                            0,
                            f(&[(&[j], j, 1), (&[i, j], j, 1), (&[i], i, 1)]),
                            vec![
                                f(&[(&[i, j], j, 2), (&[], i, 1)]),
                                f(&[(&[], j, 2), (&[i, j, i], i, 1)]),
                                f(&[(&[], j, 1), (&[j, i, j], j, 1), (&[i], i, 1)]),
                            ],
                            true,
                        );
                        push(
                            &mut out,
                            1,
                            f(&[(&[j, i], i, 1), (&[i, j], j, 2), (&[i], i, 1)]),
                            vec![
                                f(&[(&[], j, 2), (&[i, j, i], i, 2)]),
                                f(&[(&[j, i, j], j, 2), (&[i], i, 2)]),
                                f(&[(&[i, j, i], i, 1), (&[i, j], j, 2), (&[], i, 1)]),
                            ],
                            true,
                        );
                    }
                    (-2, -1) => {
                        push(
                            &mut out,
                            0,
                            f(&[(&[j, i], i, 1), (&[i], i, 1), (&[i, j], j, 1)]),
                            vec![
                                f(&[(&[i], i, 2), (&[j, i, j], j, 1)]),
                                f(&[(&[i, j, i], i, 2), (&[], j, 1)]),
                                f(&[(&[i, j, i], i, 1), (&[], i, 1), (&[i, j], j, 1)]),
                            ],
                            false,
                        );
                        push(
                            &mut out,
                            1,
                            f(&[(&[j], j, 1), (&[i], i, 2), (&[i, j], j, 1)]),
                            vec![
                                f(&[(&[i, j, i], i, 2), (&[], j, 2)]),
                                f(&[(&[], i, 2), (&[i, j], j, 2)]),
                                f(&[(&[], j, 1), (&[i], i, 2), (&[j, i, j], j, 1)]),
                            ],
                            false,
                        );
                    }
                    _ => unreachable!("validated Cartan matrix"),
                }
            }
        }
    }
    out
}

/// A failed tropical Pluecker equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerViolation {
    pub w: usize,
    /// Canonical reduced word of `w`.
    pub word: Vec<usize>,
    pub i: usize,
    pub j: usize,
    pub relation: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl fmt::Display for PlueckerViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tropical Pluecker relation {} at (w={:?}, i={}, j={}): lhs {} != min {}",
            self.relation,
            self.word.iter().map(|x| x + 1).collect::<Vec<_>>(),
            self.i + 1,
            self.j + 1,
            self.lhs,
            self.rhs
        )
    }
}

/// A negative edge length between `mu_w` and `mu_{w s_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeViolation {
    pub w: usize,
    pub word: Vec<usize>,
    pub i: usize,
    pub length: i64,
}

impl fmt::Display for EdgeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edge inequality at (w={:?}, i={}): length {}",
            self.word.iter().map(|x| x + 1).collect::<Vec<_>>(),
            self.i + 1,
            self.length
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BzReport {
    pub pluecker: Vec<PlueckerViolation>,
    pub edges: Vec<EdgeViolation>,
}

impl BzReport {
    pub fn is_valid(&self) -> bool {
        self.pluecker.is_empty() && self.edges.is_empty()
    }
}

pub fn check_tropical_pluecker(sys: &RootSystem, m: &BzDatum) -> Vec<PlueckerViolation> {
    sys.relations()
        .iter()
        .filter_map(|rel| {
            let lhs = rel.lhs.eval(&m.values);
            let rhs = rel.terms.iter().map(|t| t.eval(&m.values)).min().unwrap_or(lhs);
            (lhs != rhs).then(|| PlueckerViolation {
                w: rel.w,
                word: sys.weyl().element(rel.w).word.clone(),
                i: rel.i,
                j: rel.j,
                relation: rel.index,
                lhs,
                rhs,
            })
        })
        .collect()
}

/// `-M_{w Lambda_i} - M_{w s_i Lambda_i} - sum_{j != i} a_ji M_{w Lambda_j}`.
pub fn edge_length(sys: &RootSystem, m: &BzDatum, w: usize, i: usize) -> i64 {
    edge_length_of(sys, &m.values, w, i)
}

pub(crate) fn edge_length_of(sys: &RootSystem, m: &[i64], w: usize, i: usize) -> i64 {
    let ws = sys.weyl().mul_simple(w, i);
    let mut c = -m[sys.chamber(w, i)] - m[sys.chamber(ws, i)];
    for j in 0..sys.rank() {
        if j != i {
            c -= sys.cartan().a(j, i) * m[sys.chamber(w, j)];
        }
    }
    c
}

/// One check per edge of the permutahedron, taken from its lower endpoint.
pub fn check_edge_inequalities(sys: &RootSystem, m: &BzDatum) -> Vec<EdgeViolation> {
    let weyl = sys.weyl();
    let mut out = Vec::new();
    for w in 0..weyl.order() {
        for i in 0..sys.rank() {
            if weyl.is_right_descent(w, i) {
                continue;
            }
            let length = edge_length(sys, m, w, i);
            if length < 0 {
                out.push(EdgeViolation {
                    w,
                    word: weyl.element(w).word.clone(),
                    i,
                    length,
                });
            }
        }
    }
    out
}

pub fn check(sys: &RootSystem, m: &BzDatum) -> BzReport {
    BzReport {
        pluecker: check_tropical_pluecker(sys, m),
        edges: check_edge_inequalities(sys, m),
    }
}

/// A BZ datum that has passed both checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MvPolytope(BzDatum);

impl MvPolytope {
    pub fn validate(sys: &RootSystem, m: BzDatum) -> std::result::Result<Self, BzReport> {
        let report = check(sys, &m);
        if report.is_valid() {
            Ok(MvPolytope(m))
        } else {
            Err(report)
        }
    }

    pub fn datum(&self) -> &BzDatum {
        &self.0
    }

    pub fn into_inner(self) -> BzDatum {
        self.0
    }

    pub(crate) fn new_unchecked(m: BzDatum) -> Self {
        MvPolytope(m)
    }
}

impl AsRef<BzDatum> for MvPolytope {
    fn as_ref(&self) -> &BzDatum {
        &self.0
    }
}

/// Assembles the full BZ datum of coweight `(0, .)` with the given Lusztig
/// datum, visiting every reduced word and cross-checking shared values.
pub fn from_lusztig(sys: &RootSystem, datum: &LusztigDatum) -> Result<BzDatum> {
    assemble(sys, &datum.word, &datum.n, true)
}

/// As [`from_lusztig`], but stops once every chamber weight has a value.
pub fn from_lusztig_fast(sys: &RootSystem, datum: &LusztigDatum) -> Result<BzDatum> {
    assemble(sys, &datum.word, &datum.n, false)
}

pub(crate) fn assemble(sys: &RootSystem, word: &[usize], n: &[i64], full: bool) -> Result<BzDatum> {
    let start = sys.word_index(word)?;
    if n.len() != word.len() {
        return Err(Error::LengthMismatch {
            expected: word.len(),
            got: n.len(),
        });
    }
    if let Some(&x) = n.iter().find(|&&x| x < 0) {
        return Err(Error::NegativeEntry { value: x });
    }
    let graph = sys.braid_graph();
    let wds = sys.all_word_data();
    let mut values: Vec<Option<i64>> = vec![None; sys.num_chambers()];
    for v in values.iter_mut().take(sys.rank()) {
        *v = Some(0);
    }
    let mut remaining = sys.num_chambers() - sys.rank();
    let mut data: Vec<Option<Vec<i64>>> = vec![None; graph.len()];
    data[start] = Some(n.to_vec());
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let nu = data[u].clone().expect("queued words carry data");
        for (g, v) in partial_values(sys, &wds[u], &nu)? {
            match values[g] {
                None => {
                    values[g] = Some(v);
                    remaining -= 1;
                }
                Some(x) if x != v => {
                    return Err(Error::Inconsistent {
                        chamber: g,
                        first: x,
                        second: v,
                    })
                }
                Some(_) => {}
            }
        }
        if !full && remaining == 0 {
            break;
        }
        for e in &graph.adjacency[u] {
            if data[e.to].is_none() {
                data[e.to] = Some(braid_transition(sys, e, &nu));
                queue.push_back(e.to);
            }
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(g, v)| v.ok_or_else(|| Error::Invalid(format!("chamber weight {g} never reached"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(BzDatum { values })
}

/// `mu_w = sum_i M_{w Lambda_i} w.alpha_i^vee` for every Weyl group element.
pub fn vertices(sys: &RootSystem, m: &BzDatum) -> Result<Vec<Coweight>> {
    if let Some(v) = check_edge_inequalities(sys, m).first() {
        return Err(Error::EdgeInequality {
            leg: v.i,
            length: v.length,
        });
    }
    Ok(vertices_unchecked(sys, m))
}

pub(crate) fn vertices_unchecked(sys: &RootSystem, m: &BzDatum) -> Vec<Coweight> {
    let weyl = sys.weyl();
    let r = sys.rank();
    (0..weyl.order())
        .map(|w| {
            let mut mu = vec![0i64; r];
            for i in 0..r {
                let c = m.values[sys.chamber(w, i)];
                for (x, y) in mu.iter_mut().zip(weyl.coroot_image(w, i)) {
                    *x += c * y;
                }
            }
            Coweight(mu)
        })
        .collect()
}

/// `(mu_1, mu_2)`, the vertices at `e` and `w_0`.
pub fn coweight(sys: &RootSystem, m: &BzDatum) -> (Coweight, Coweight) {
    let mu = |w: usize| {
        let weyl = sys.weyl();
        let mut v = vec![0i64; sys.rank()];
        for i in 0..sys.rank() {
            let c = m.values[sys.chamber(w, i)];
            for (x, y) in v.iter_mut().zip(weyl.coroot_image(w, i)) {
                *x += c * y;
            }
        }
        Coweight(v)
    };
    (mu(0), mu(sys.weyl().longest()))
}

/// Edge lengths along the path of `word`.
pub fn lusztig_datum(sys: &RootSystem, m: &BzDatum, word: &[usize]) -> Result<LusztigDatum> {
    let idx = sys.word_index(word)?;
    let wd = &sys.all_word_data()[idx];
    let mut n = Vec::with_capacity(word.len());
    for (k, &i) in word.iter().enumerate() {
        let len = edge_length(sys, m, wd.prefixes[k], i);
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

/// `M_gamma + <nu, gamma>`: the datum of the polytope shifted by `nu`.
pub fn translate(sys: &RootSystem, m: &BzDatum, nu: &Coweight) -> BzDatum {
    BzDatum {
        values: m
            .values
            .iter()
            .zip(sys.chambers())
            .map(|(&v, c)| v + pair(&nu.0, &c.weight.0))
            .collect(),
    }
}

/// Shifts so that the lowest vertex is at the origin.
pub fn normalize(sys: &RootSystem, m: &BzDatum) -> BzDatum {
    let (mu1, _) = coweight(sys, m);
    translate(sys, m, &mu1.neg())
}
