//! Type A specifics: subsets as chamber weights, Kostant pictures, and the
//! collapse recursion computing facet Lusztig data.
//!
//! Labels are 1-based throughout this module. For `SL_n` the subset
//! `S = {w(1), ..., w(i)}` stands for `w . Lambda_i`, and the pair `(a, b)`
//! with `a < b` stands for the coroot `alpha_a^vee + ... + alpha_{b-1}^vee`.

use std::collections::BTreeMap;

use crate::bz::{edge_length, BzDatum};
use crate::cartan::{Coweight, Family, Weight};
use crate::error::{Error, Result};
use crate::lusztig::LusztigDatum;
use crate::system::RootSystem;

/// `SL_n` as a root system of type `A_{n-1}`.
pub fn system(n: usize) -> Result<RootSystem> {
    if n < 2 {
        return Err(Error::Invalid(format!("SL_n needs n >= 2, got {n}")));
    }
    RootSystem::from_label(&format!("A{}", n - 1))
}

fn sl_n(sys: &RootSystem) -> Result<usize> {
    match sys.cartan().family() {
        Some(Family::A) => Ok(sys.rank() + 1),
        _ => Err(Error::UnsupportedType {
            family: sys.cartan().label().to_string(),
            rank: sys.rank(),
            reason: "the collapse lives in type A".into(),
        }),
    }
}

/// The word `(1, ..., n-1, 1, ..., n-2, ..., 1, 2, 1)`, 0-based.
pub fn ak_word(n: usize) -> Vec<usize> {
    let mut word = Vec::new();
    for top in (1..n).rev() {
        word.extend(0..top);
    }
    word
}

/// Positive roots `(a, b)` in lexicographic order.
pub fn roots(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

/// The pair `(a, b)` of a positive coroot given in simple-coroot coordinates.
pub fn root_pair(coroot: &[i64]) -> Option<(usize, usize)> {
    let a = coroot.iter().position(|&x| x != 0)?;
    let b = a + coroot[a..].iter().take_while(|&&x| x == 1).count();
    coroot[b..].iter().all(|&x| x == 0).then_some((a + 1, b + 1))
}

pub fn root_coroot(n: usize, (a, b): (usize, usize)) -> Vec<i64> {
    (1..n).map(|j| i64::from(a <= j && j < b)).collect()
}

/// The weight of `e_{j in S}` in fundamental-weight coordinates.
pub fn subset_weight(n: usize, subset: &[usize]) -> Weight {
    let has = |j: usize| i64::from(subset.contains(&j));
    Weight((1..n).map(|j| has(j) - has(j + 1)).collect())
}

/// The proper nonempty subset encoded by a chamber weight.
pub fn weight_subset(weight: &Weight) -> Option<Vec<usize>> {
    let n = weight.0.len() + 1;
    for last in [0i64, 1] {
        let mut x = vec![0i64; n];
        x[n - 1] = last;
        for j in (0..n - 1).rev() {
            x[j] = x[j + 1] + weight.0[j];
        }
        let binary = x.iter().all(|&v| v == 0 || v == 1);
        let proper = x.contains(&0) && x.contains(&1);
        if binary && proper {
            return Some((1..=n).filter(|&j| x[j - 1] == 1).collect());
        }
    }
    None
}

pub fn subset_chamber(sys: &RootSystem, subset: &[usize]) -> Option<usize> {
    let n = sys.rank() + 1;
    if subset.is_empty() || subset.len() >= n || subset.iter().any(|&j| j == 0 || j > n) {
        return None;
    }
    sys.chamber_by_weight(&subset_weight(n, subset).0)
}

pub fn chamber_subset(sys: &RootSystem, chamber: usize) -> Vec<usize> {
    weight_subset(&sys.chambers()[chamber].weight).expect("type A chamber weights are subsets")
}

/// `M` at a subset, with the empty and full sets contributing zero.
fn m_at(sys: &RootSystem, m: &BzDatum, subset: &[usize]) -> i64 {
    let n = sys.rank() + 1;
    if subset.is_empty() || subset.len() == n {
        return 0;
    }
    m.values[subset_chamber(sys, subset).expect("proper subsets are chamber weights")]
}

/// Length-`n` coordinates `(c_1, c_2 - c_1, ..., -c_{n-1})` of a coweight.
pub fn coweight_to_gl(mu: &Coweight) -> Vec<i64> {
    let n = mu.0.len() + 1;
    (0..n)
        .map(|j| {
            let here = if j < n - 1 { mu.0[j] } else { 0 };
            let before = if j > 0 { mu.0[j - 1] } else { 0 };
            here - before
        })
        .collect()
}

pub fn gl_to_coweight(v: &[i64]) -> Result<Coweight> {
    if v.iter().sum::<i64>() != 0 {
        return Err(Error::Invalid("GL coordinates of a coweight must sum to zero".into()));
    }
    let mut acc = 0;
    Ok(Coweight(
        v[..v.len().saturating_sub(1)]
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect(),
    ))
}

/// A nonnegative integer for each pair `a < b` of labels.
///
/// A full picture for `SL_n` has labels `1..=n`; collapsing at `k` removes
/// `k` from the labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KostantPicture {
    pub labels: Vec<usize>,
    pub p: BTreeMap<(usize, usize), i64>,
}

impl KostantPicture {
    pub fn zero(n: usize) -> Self {
        Self::with_labels((1..=n).collect())
    }

    fn with_labels(labels: Vec<usize>) -> Self {
        let mut p = BTreeMap::new();
        for (x, &a) in labels.iter().enumerate() {
            for &b in &labels[x + 1..] {
                p.insert((a, b), 0);
            }
        }
        KostantPicture { labels, p }
    }

    /// Builds a full `SL_n` picture from entries in lexicographic root order.
    pub fn from_entries(n: usize, entries: &[i64]) -> Result<Self> {
        let roots = roots(n);
        if roots.len() != entries.len() {
            return Err(Error::LengthMismatch {
                expected: roots.len(),
                got: entries.len(),
            });
        }
        if let Some(&x) = entries.iter().find(|&&x| x < 0) {
            return Err(Error::NegativeEntry { value: x });
        }
        Ok(KostantPicture {
            labels: (1..=n).collect(),
            p: roots.into_iter().zip(entries.iter().copied()).collect(),
        })
    }

    /// Builds a full `SL_n` picture from `[a, b, p]` triples, each root once.
    pub fn from_triples(n: usize, triples: &[[i64; 3]]) -> Result<Self> {
        let mut pic = Self::zero(n);
        let mut seen = 0;
        for &[a, b, v] in triples {
            let key = (usize::try_from(a).unwrap_or(0), usize::try_from(b).unwrap_or(0));
            match pic.p.get_mut(&key) {
                Some(slot) if v >= 0 => {
                    *slot = v;
                    seen += 1;
                }
                Some(_) => return Err(Error::NegativeEntry { value: v }),
                None => return Err(Error::Invalid(format!("({a},{b}) is not a positive root of SL_{n}"))),
            }
        }
        if seen != pic.p.len() {
            return Err(Error::LengthMismatch {
                expected: pic.p.len(),
                got: seen,
            });
        }
        Ok(pic)
    }

    pub fn to_triples(&self) -> Vec<[i64; 3]> {
        self.p.iter().map(|(&(a, b), &v)| [a as i64, b as i64, v]).collect()
    }

    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.p[&(a, b)]
    }

    /// `sum p_(a,b) (a,b)` as a coweight of `SL_n`, `n` the largest label.
    pub fn coweight(&self, n: usize) -> Coweight {
        let mut mu = vec![0i64; n - 1];
        for (&pair, &v) in &self.p {
            for (m, c) in mu.iter_mut().zip(root_coroot(n, pair)) {
                *m += v * c;
            }
        }
        Coweight(mu)
    }
}

/// Re-indexes a full picture as a Lusztig datum for [`ak_word`].
pub fn picture_to_lusztig(sys: &RootSystem, pic: &KostantPicture) -> Result<LusztigDatum> {
    let n = sl_n(sys)?;
    if pic.labels != (1..=n).collect::<Vec<_>>() {
        return Err(Error::LengthMismatch {
            expected: n,
            got: pic.labels.len(),
        });
    }
    let wd = sys.word_data(&ak_word(n))?;
    let values = wd
        .coroots
        .iter()
        .map(|c| pic.get_pair(c))
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::Invalid("coroot outside the picture".into()))?;
    LusztigDatum::new(sys, wd.word, values)
}

impl KostantPicture {
    fn get_pair(&self, coroot: &[i64]) -> Option<i64> {
        self.p.get(&root_pair(coroot)?).copied()
    }
}

pub fn lusztig_to_picture(sys: &RootSystem, datum: &LusztigDatum) -> Result<KostantPicture> {
    let n = sl_n(sys)?;
    let word = ak_word(n);
    if datum.word != word {
        return Err(Error::Invalid("Lusztig datum is not along the AK word".into()));
    }
    let wd = sys.word_data(&word)?;
    let mut pic = KostantPicture::zero(n);
    for (c, &v) in wd.coroots.iter().zip(&datum.n) {
        let pair = root_pair(c).ok_or_else(|| Error::Invalid("not a type A coroot".into()))?;
        pic.p.insert(pair, v);
    }
    Ok(pic)
}

/// The collapse of `p` at label `k`, computed in increasing loop width.
///
/// # Panics
///
/// Panics if an intermediate value goes negative, which cannot happen for a
/// valid picture.
pub fn collapse(pic: &KostantPicture, k: usize) -> Result<KostantPicture> {
    let Some(kpos) = pic.labels.iter().position(|&l| l == k) else {
        return Err(Error::IndexOutOfRange { index: k, rank: pic.labels.len() });
    };
    let labels = &pic.labels;
    let mut kept = labels.clone();
    kept.remove(kpos);
    let mut out = KostantPicture::with_labels(kept);

    let len = labels.len();
    for width in 1..len {
        for x in 0..len - width {
            let y = x + width;
            let (a, b) = (labels[x], labels[y]);
            if a == k || b == k {
                continue;
            }
            let value = if x < kpos && kpos < y {
                let prime = |p: (usize, usize)| if p.0 == k || p.1 == k { 0 } else { out.p[&p] };
                let left: i64 = labels[kpos..y].iter().map(|&r| pic.p[&(a, r)] - prime((a, r))).sum();
                let right: i64 = labels[x + 1..=kpos].iter().map(|&s| pic.p[&(s, b)] - prime((s, b))).sum();
                left.min(right)
            } else {
                pic.p[&(a, b)]
            };
            assert!(value >= 0, "collapse produced {value} at ({a},{b})");
            out.p.insert((a, b), value);
        }
    }
    Ok(out)
}

/// `s_k s_{k+1} ... s_{n-1}`, the shortest element with `u(n) = k`.
fn facet_base(sys: &RootSystem, n: usize, k: usize) -> Result<usize> {
    let word: Vec<usize> = (k - 1..n - 1).collect();
    sys.weyl().from_word(&word)
}

/// Edge lengths of `M` along the `w(n) = k` facet, following `u` times the
/// prefixes of the `SL_{n-1}` AK word, labelled by the roots avoiding `k`.
pub fn facet_lusztig(sys: &RootSystem, m: &BzDatum, k: usize) -> Result<KostantPicture> {
    let n = sl_n(sys)?;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, rank: n });
    }
    let weyl = sys.weyl();
    let mut w = facet_base(sys, n, k)?;
    let mut out = KostantPicture::with_labels((1..=n).filter(|&l| l != k).collect());
    for (leg, i) in ak_word(n - 1).into_iter().enumerate() {
        let len = edge_length(sys, m, w, i);
        if len < 0 {
            return Err(Error::EdgeInequality { leg, length: len });
        }
        let pair = root_pair(&weyl.coroot_image(w, i)).ok_or_else(|| Error::Invalid("edge is not a positive root".into()))?;
        out.p.insert(pair, len);
        w = weyl.mul_simple(w, i);
    }
    Ok(out)
}

/// `mu_{u w_0'} - mu_u`: the displacement across the `w(n) = k` facet path.
pub fn facet_displacement(sys: &RootSystem, m: &BzDatum, k: usize) -> Result<Coweight> {
    let n = sl_n(sys)?;
    let weyl = sys.weyl();
    let u = facet_base(sys, n, k)?;
    let end = ak_word(n - 1).into_iter().fold(u, |w, i| weyl.mul_simple(w, i));
    Ok(vertex(sys, m, end).sub(&vertex(sys, m, u)))
}

fn vertex(sys: &RootSystem, m: &BzDatum, w: usize) -> Coweight {
    let mut v = vec![0i64; sys.rank()];
    for i in 0..sys.rank() {
        let c = m.values[sys.chamber(w, i)];
        for (x, y) in v.iter_mut().zip(sys.weyl().coroot_image(w, i)) {
            *x += c * y;
        }
    }
    Coweight(v)
}

/// Instances `(a, k, b)` with `a < k < b` of the collapse relation that fail in `M`.
pub fn collapse_relation_failures(sys: &RootSystem, m: &BzDatum, k: usize) -> Vec<(usize, usize)> {
    let n = sys.rank() + 1;
    let interval = |lo: usize, hi: usize| -> Vec<usize> { (lo..=hi).filter(|&j| j != k).collect() };
    let mut bad = Vec::new();
    for a in 1..k {
        for b in k + 1..=n {
            let lhs = m_at(sys, m, &interval(a, b)) + m_at(sys, m, &(a + 1..b).collect::<Vec<_>>());
            let t1 = m_at(sys, m, &interval(a + 1, b)) + m_at(sys, m, &(a..b).collect::<Vec<_>>());
            let t2 = m_at(sys, m, &interval(a, b - 1)) + m_at(sys, m, &(a + 1..=b).collect::<Vec<_>>());
            if lhs != t1.min(t2) {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// Whether the collapse of `p` at `k` equals the facet datum of `M`, and the
/// collapse relations at `k` hold in `M`.
pub fn verify_collapse(sys: &RootSystem, m: &BzDatum, pic: &KostantPicture, k: usize) -> bool {
    let Ok(collapsed) = collapse(pic, k) else {
        return false;
    };
    let Ok(facet) = facet_lusztig(sys, m, k) else {
        return false;
    };
    collapsed == facet && collapse_relation_failures(sys, m, k).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bz::from_lusztig;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ak_words() {
        assert_eq!(ak_word(2), vec![0]);
        assert_eq!(ak_word(3), vec![0, 1, 0]);
        assert_eq!(ak_word(4), vec![0, 1, 2, 0, 1, 0]);
        for n in 2..=5 {
            let sys = system(n).unwrap();
            let wd = sys.word_data(&ak_word(n)).unwrap();
            let pairs: Vec<_> = wd.coroots.iter().map(|c| root_pair(c).unwrap()).collect();
            assert_eq!(pairs, roots(n));
        }
    }

    #[test]
    fn subset_dictionary() {
        for n in 2..=5 {
            let sys = system(n).unwrap();
            assert_eq!(sys.num_chambers(), (1 << n) - 2);
            let mut seen = std::collections::HashSet::new();
            for c in 0..sys.num_chambers() {
                let s = chamber_subset(&sys, c);
                assert_eq!(s.len(), sys.chambers()[c].level + 1);
                assert_eq!(subset_chamber(&sys, &s), Some(c));
                assert!(seen.insert(s));
            }
            // w . Lambda_i is {w(1), ..., w(i)} for the simple reflections.
            for j in 1..n {
                let sj = sys.simple_reflection(j - 1).unwrap();
                let mut expected: Vec<usize> = (1..=j).collect();
                expected[j - 1] = j + 1;
                assert_eq!(chamber_subset(&sys, sys.chamber(sj, j - 1)), expected);
            }
        }
    }

    #[test]
    fn gl_coordinates() {
        let mu = Coweight(vec![3, 2]);
        assert_eq!(coweight_to_gl(&mu), vec![3, -1, -2]);
        assert_eq!(gl_to_coweight(&[3, -1, -2]).unwrap(), mu);
        assert_eq!(coweight_to_gl(&Coweight(vec![1, 0])), vec![1, -1, 0]);
        assert!(gl_to_coweight(&[1, 0, 0]).is_err());
    }

    #[test]
    fn picture_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3, 4, 4] {
            let sys = system(n).unwrap();
            let entries: Vec<i64> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..5)).collect();
            let pic = KostantPicture::from_entries(n, &entries).unwrap();
            let d = picture_to_lusztig(&sys, &pic).unwrap();
            assert_eq!(lusztig_to_picture(&sys, &d).unwrap(), pic);
            assert_eq!(KostantPicture::from_triples(n, &pic.to_triples()).unwrap(), pic);
            assert_eq!(pic.coweight(n).0, d.coweight(&sys).unwrap());
        }
        assert!(KostantPicture::from_entries(3, &[1, 2]).is_err());
        assert!(KostantPicture::from_triples(3, &[[1, 2, 1], [1, 3, 0]]).is_err());
        assert!(KostantPicture::from_triples(3, &[[1, 2, 1], [1, 3, 0], [3, 2, 0]]).is_err());
    }

    #[test]
    fn collapse_examples() {
        let zero = KostantPicture::zero(4);
        for k in 1..=4 {
            assert!(collapse(&zero, k).unwrap().p.values().all(|&v| v == 0));
        }
        let pic = KostantPicture::from_entries(3, &[2, 1, 1]).unwrap();
        let c = collapse(&pic, 2).unwrap();
        assert_eq!(c.labels, vec![1, 3]);
        assert_eq!(c.get(1, 3), 1);
        assert_eq!(collapse(&pic, 1).unwrap().get(2, 3), 1);
        assert_eq!(collapse(&pic, 3).unwrap().get(1, 2), 2);
    }

    fn check_picture(sys: &RootSystem, pic: &KostantPicture) {
        let n = pic.labels.len();
        let m = from_lusztig(sys, &picture_to_lusztig(sys, pic).unwrap()).unwrap();
        for k in 1..=n {
            assert!(verify_collapse(sys, &m, pic, k), "{pic:?} at {k}");
            let c = collapse(pic, k).unwrap();
            assert_eq!(c.coweight(n), facet_displacement(sys, &m, k).unwrap());
        }
    }

    #[test]
    fn collapse_matches_facets_n3_exhaustive() {
        let sys = system(3).unwrap();
        for e in 0..64 {
            let entries = [e % 4, (e / 4) % 4, e / 16];
            check_picture(&sys, &KostantPicture::from_entries(3, &entries).unwrap());
        }
    }

    #[test]
    fn collapse_matches_facets_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [4, 5] {
            let sys = system(n).unwrap();
            for _ in 0..20 {
                let entries: Vec<i64> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..=3)).collect();
                check_picture(&sys, &KostantPicture::from_entries(n, &entries).unwrap());
            }
        }
    }

    #[test]
    fn iterated_collapse_stays_valid() {
        let pic = KostantPicture::from_entries(4, &[1, 3, 0, 2, 2, 1]).unwrap();
        let once = collapse(&pic, 2).unwrap();
        let twice = collapse(&once, 4).unwrap();
        assert_eq!(twice.labels, vec![1, 3]);
        assert!(twice.p.values().all(|&v| v >= 0));
        assert!(collapse(&pic, 9).is_err());
    }

    #[test]
    fn wrong_type_rejected() {
        let b2 = RootSystem::from_label("B2").unwrap();
        assert!(picture_to_lusztig(&b2, &KostantPicture::zero(3)).is_err());
    }
}
