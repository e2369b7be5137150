//! BZ choices, their cones of BZ data, Hilbert bases and prime MV polytopes.
//!
//! A BZ choice picks one achieving term in every tropical Pluecker equation
//! (taken in the canonical orientation of each 2-face). The BZ data obeying
//! those picks form the lattice points of a rational cone. Cones are computed
//! in hyperplane coordinates and their lattice points are searched in the
//! Lusztig chart of the first reduced word, where membership is decided by
//! assembling the datum and testing the cone's constraints.

mod dd;
mod hilbert;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bz::{assemble, check, BzDatum, LinearForm, Relation};
use crate::error::{Error, Result};
use crate::system::RootSystem;

pub use hilbert::hilbert_basis;

/// Default bound on the number of BZ choices that will be materialised.
pub const DEFAULT_CHOICE_CAP: u128 = 1 << 20;

/// One picked term per canonical tropical Pluecker equation, in the order of
/// [`canonical_relations`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BzChoice {
    pub picks: Vec<usize>,
}

/// The canonical equations on which choices are made.
pub fn canonical_relations(sys: &RootSystem) -> Vec<&Relation> {
    sys.relations().iter().filter(|r| r.canonical).collect()
}

/// Number of hexagonal and octagonal 2-faces.
pub fn face_counts(sys: &RootSystem) -> (usize, usize) {
    let rels = canonical_relations(sys);
    let hex = rels.iter().filter(|r| r.terms.len() == 2).count();
    let oct = rels.iter().filter(|r| r.terms.len() == 3 && r.index == 0).count();
    (hex, oct)
}

pub fn choice_count(sys: &RootSystem) -> u128 {
    canonical_relations(sys)
        .iter()
        .map(|r| r.terms.len() as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX)
}

/// Every BZ choice, `2^#H 9^#O` of them, in mixed-radix order.
pub fn enumerate_choices(sys: &RootSystem, cap: u128) -> Result<Vec<BzChoice>> {
    let count = choice_count(sys);
    if count > cap {
        return Err(Error::TooManyChoices { count, cap });
    }
    let radix: Vec<usize> = canonical_relations(sys).iter().map(|r| r.terms.len()).collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut picks = vec![0usize; radix.len()];
    loop {
        out.push(BzChoice { picks: picks.clone() });
        let mut k = radix.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            picks[k] += 1;
            if picks[k] < radix[k] {
                break;
            }
            picks[k] = 0;
        }
    }
}

/// The cone `P_sigma` of BZ data of coweight `(0, .)` obeying a choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceCone {
    pub choice: BzChoice,
    /// Dense linear forms over chamber weights that must vanish.
    pub equalities: Vec<Vec<i64>>,
    /// Dense linear forms that must be nonnegative.
    pub inequalities: Vec<Vec<i64>>,
    /// Primitive extreme rays in hyperplane coordinates.
    pub rays: Vec<Vec<i64>>,
    /// The same rays as Lusztig data along the first reduced word.
    pub rays_lusztig: Vec<Vec<i64>>,
    pub dim: usize,
}

impl ChoiceCone {
    pub fn is_maximal(&self, sys: &RootSystem) -> bool {
        self.dim == sys.num_positive()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        let ev = |f: &Vec<i64>| f.iter().zip(m).map(|(a, b)| a * b).sum::<i64>();
        self.equalities.iter().all(|f| ev(f) == 0) && self.inequalities.iter().all(|f| ev(f) >= 0)
    }

    /// Whether every ray of `self` lies in `other`.
    pub fn is_subcone_of(&self, other: &ChoiceCone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
    }
}

fn sub(a: &LinearForm, b: &LinearForm, len: usize) -> Vec<i64> {
    a.dense(len).iter().zip(b.dense(len)).map(|(x, y)| x - y).collect()
}

/// Edge lengths as linear forms, one per edge of the permutahedron.
fn edge_forms(sys: &RootSystem) -> Vec<Vec<i64>> {
    let weyl = sys.weyl();
    let n = sys.num_chambers();
    let mut out = Vec::new();
    for w in 0..weyl.order() {
        for i in 0..sys.rank() {
            if weyl.is_right_descent(w, i) {
                continue;
            }
            out.push(edge_form(sys, w, i, n));
        }
    }
    out
}

fn edge_form(sys: &RootSystem, w: usize, i: usize, n: usize) -> Vec<i64> {
    let mut f = vec![0i64; n];
    f[sys.chamber(w, i)] -= 1;
    f[sys.chamber(sys.weyl().mul_simple(w, i), i)] -= 1;
    for j in 0..sys.rank() {
        if j != i {
            f[sys.chamber(w, j)] -= sys.cartan().a(j, i);
        }
    }
    f
}

/// Lusztig-chart forms along the first reduced word.
fn chart_forms(sys: &RootSystem) -> Vec<Vec<i64>> {
    let wd = &sys.all_word_data()[0];
    wd.word
        .iter()
        .enumerate()
        .map(|(k, &i)| edge_form(sys, wd.prefixes[k], i, sys.num_chambers()))
        .collect()
}

pub fn cone_of_choice(sys: &RootSystem, choice: &BzChoice) -> Result<ChoiceCone> {
    let rels = canonical_relations(sys);
    if choice.picks.len() != rels.len() || choice.picks.iter().zip(&rels).any(|(&p, r)| p >= r.terms.len()) {
        return Err(Error::Invalid("BZ choice does not match the root system".into()));
    }
    let n = sys.num_chambers();
    let mut equalities = Vec::new();
    for i in 0..sys.rank() {
        let mut e = vec![0i64; n];
        e[i] = 1;
        equalities.push(e);
    }
    let mut inequalities = edge_forms(sys);
    for (rel, &p) in rels.iter().zip(&choice.picks) {
        equalities.push(sub(&rel.lhs, &rel.terms[p], n));
        for (q, t) in rel.terms.iter().enumerate() {
            if q != p {
                inequalities.push(sub(t, &rel.terms[p], n));
            }
        }
    }
    let cone = dd::double_description(n, &equalities, &inequalities);
    if !cone.lineality.is_empty() {
        return Err(Error::Invalid("choice cone is not pointed".into()));
    }
    let to_i64 = |v: &dd::Vector| -> Result<Vec<i64>> {
        v.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow)).collect()
    };
    let rays: Vec<Vec<i64>> = cone.rays.iter().map(to_i64).collect::<Result<_>>()?;
    let dim = dd::rank(&cone.rays);
    let chart = chart_forms(sys);
    let rays_lusztig = rays
        .iter()
        .map(|r| {
            let mut v: Vec<i128> = chart
                .iter()
                .map(|f| f.iter().zip(r).map(|(a, b)| (a * b) as i128).sum())
                .collect();
            dd::primitive(&mut v);
            v.into_iter().map(|x| x as i64).collect()
        })
        .collect();
    Ok(ChoiceCone {
        choice: choice.clone(),
        equalities,
        inequalities,
        rays,
        rays_lusztig,
        dim,
    })
}

/// The BZ datum with Lusztig datum `n` along the first reduced word.
pub fn from_chart(sys: &RootSystem, n: &[i64]) -> Result<BzDatum> {
    assemble(sys, &sys.longest_words()[0], n, false)
}

/// Hilbert basis of the cone's monoid of lattice points, as BZ data sorted
/// by the degree of their Lusztig datum.
pub fn cone_hilbert_basis(sys: &RootSystem, cone: &ChoiceCone) -> Result<Vec<BzDatum>> {
    let basis = hilbert_basis(&cone.rays_lusztig, |n| {
        from_chart(sys, n).map(|m| cone.contains(&m.values)).unwrap_or(false)
    });
    basis.iter().map(|n| from_chart(sys, n)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub choice: BzChoice,
    /// Indices into [`PrimeCatalog::primes`].
    pub generators: Vec<usize>,
    /// Number of extreme rays; equal to the generator count when unimodular simplicial.
    pub rays: usize,
}

#[derive(Debug, Clone)]
pub struct PrimeCatalog {
    /// Distinct primes in canonical order (by coweight height, then values).
    pub primes: Vec<BzDatum>,
    /// One cluster per maximal cone.
    pub clusters: Vec<Cluster>,
    pub choice_count: usize,
    /// Dimensions of all choice cones, in choice order.
    pub dims: Vec<usize>,
    /// Choices whose cone lies in no maximal cone. Expected to be empty.
    pub orphans: Vec<BzChoice>,
}

/// Builds all choice cones, keeps the maximal ones, and collects the union
/// of their Hilbert bases.
pub fn prime_catalog(sys: &RootSystem) -> Result<PrimeCatalog> {
    prime_catalog_with_cap(sys, DEFAULT_CHOICE_CAP)
}

pub fn prime_catalog_with_cap(sys: &RootSystem, cap: u128) -> Result<PrimeCatalog> {
    let choices = enumerate_choices(sys, cap)?;
    let cones: Vec<ChoiceCone> = choices
        .par_iter()
        .map(|c| cone_of_choice(sys, c))
        .collect::<Result<_>>()?;
    let maximal: Vec<&ChoiceCone> = cones.iter().filter(|c| c.is_maximal(sys)).collect();
    let orphans: Vec<BzChoice> = cones
        .iter()
        .filter(|c| !c.is_maximal(sys) && !maximal.iter().any(|m| c.is_subcone_of(m)))
        .map(|c| c.choice.clone())
        .collect();
    let bases: Vec<Vec<BzDatum>> = maximal
        .par_iter()
        .map(|c| cone_hilbert_basis(sys, c))
        .collect::<Result<_>>()?;

    let key = |m: &BzDatum| {
        let (_, top) = crate::bz::coweight(sys, m);
        (top.0.iter().sum::<i64>(), top.0.clone(), m.values.clone())
    };
    let mut all: BTreeMap<_, BzDatum> = BTreeMap::new();
    for b in bases.iter().flatten() {
        all.insert(key(b), b.clone());
    }
    let primes: Vec<BzDatum> = all.into_values().collect();
    let clusters = maximal
        .iter()
        .zip(&bases)
        .map(|(c, b)| {
            let mut generators: Vec<usize> = b
                .iter()
                .map(|m| primes.iter().position(|p| p == m).expect("collected above"))
                .collect();
            generators.sort();
            Cluster {
                choice: c.choice.clone(),
                generators,
                rays: c.rays.len(),
            }
        })
        .collect();
    Ok(PrimeCatalog {
        primes,
        clusters,
        choice_count: choices.len(),
        dims: cones.iter().map(|c| c.dim).collect(),
        orphans,
    })
}

/// A decomposition into primes of one cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub cluster: usize,
    /// `(prime index, multiplicity)` with positive multiplicities.
    pub terms: Vec<(usize, u32)>,
}

/// Writes a validated BZ datum of coweight `(0, .)` as a sum of primes of a
/// single cluster whose cone contains it.
pub fn decompose(sys: &RootSystem, catalog: &PrimeCatalog, m: &BzDatum) -> Result<Decomposition> {
    if !m.is_normalized(sys) {
        return Err(Error::NotNormalized {
            level: m.values.iter().position(|&v| v != 0).unwrap_or(0),
            value: m.values.iter().copied().find(|&v| v != 0).unwrap_or(0),
        });
    }
    let report = check(sys, m);
    if !report.is_valid() {
        return Err(Error::Invalid(format!("not a BZ datum: {report:?}")));
    }
    let chart = chart_forms(sys);
    let to_chart = |m: &BzDatum| -> Vec<i64> {
        chart
            .iter()
            .map(|f| f.iter().zip(&m.values).map(|(a, b)| a * b).sum())
            .collect()
    };
    let target = to_chart(m);
    for (ci, cluster) in catalog.clusters.iter().enumerate() {
        let cone = cone_of_choice(sys, &cluster.choice)?;
        if !cone.contains(&m.values) {
            continue;
        }
        let gens: Vec<Vec<i64>> = cluster
            .generators
            .iter()
            .map(|&g| to_chart(&catalog.primes[g]))
            .collect();
        let mut coeffs = vec![0u32; gens.len()];
        if search(&gens, 0, &mut target.clone(), &mut coeffs) {
            return Ok(Decomposition {
                cluster: ci,
                terms: cluster
                    .generators
                    .iter()
                    .zip(&coeffs)
                    .filter(|(_, &c)| c > 0)
                    .map(|(&g, &c)| (g, c))
                    .collect(),
            });
        }
        return Err(Error::Invalid(format!(
            "no decomposition found in cluster {ci}, which contains the datum"
        )));
    }
    Err(Error::Invalid("datum lies in no maximal cone".into()))
}

fn search(gens: &[Vec<i64>], k: usize, rest: &mut [i64], coeffs: &mut [u32]) -> bool {
    if rest.iter().all(|&x| x == 0) {
        return true;
    }
    if k == gens.len() {
        return false;
    }
    let g = &gens[k];
    let cap = g
        .iter()
        .zip(rest.iter())
        .filter(|(&a, _)| a > 0)
        .map(|(&a, &x)| x / a)
        .min()
        .unwrap_or(0);
    for c in (0..=cap).rev() {
        for (x, a) in rest.iter_mut().zip(g) {
            *x -= c * a;
        }
        coeffs[k] = c as u32;
        let found = rest.iter().all(|&x| x >= 0) && search(gens, k + 1, rest, coeffs);
        for (x, a) in rest.iter_mut().zip(g) {
            *x += c * a;
        }
        if found {
            return true;
        }
    }
    coeffs[k] = 0;
    false
}
