//! Enumeration of MV polytopes of a given coweight and the counting formulas
//! for weight and tensor product multiplicities, with classical oracles.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::bz::{assemble, check, BzDatum, MvPolytope};
use crate::cartan::{pair, Coweight};
use crate::error::{Error, Result};
use crate::lusztig::LusztigDatum;
use crate::system::RootSystem;

/// All Lusztig data along `word` whose coweight is `mu`, in lexicographic order.
pub fn enumerate_lusztig(sys: &RootSystem, word: &[usize], mu: &Coweight) -> Result<Vec<LusztigDatum>> {
    let idx = sys.word_index(word)?;
    if mu.0.len() != sys.rank() {
        return Err(Error::LengthMismatch {
            expected: sys.rank(),
            got: mu.0.len(),
        });
    }
    if !mu.is_nonnegative() {
        return Ok(Vec::new());
    }
    let coroots = &sys.all_word_data()[idx].coroots;
    let m = coroots.len();
    // reach[k][c]: some coroot at position >= k has a positive entry in c.
    let mut reach = vec![vec![false; sys.rank()]; m + 1];
    for k in (0..m).rev() {
        reach[k] = reach[k + 1].clone();
        for (c, &b) in coroots[k].iter().enumerate() {
            if b > 0 {
                reach[k][c] = true;
            }
        }
    }
    let mut out = Vec::new();
    let mut n = vec![0i64; m];
    let mut rest = mu.0.clone();
    lusztig_rec(coroots, &reach, 0, &mut rest, &mut n, &mut |n| {
        out.push(LusztigDatum {
            word: word.to_vec(),
            n: n.to_vec(),
        })
    });
    Ok(out)
}

fn lusztig_rec(
    coroots: &[Vec<i64>],
    reach: &[Vec<bool>],
    k: usize,
    rest: &mut [i64],
    n: &mut [i64],
    emit: &mut impl FnMut(&[i64]),
) {
    if rest.iter().zip(&reach[k]).any(|(&x, &ok)| x > 0 && !ok) {
        return;
    }
    if k == coroots.len() {
        emit(n);
        return;
    }
    let beta = &coroots[k];
    let cap = beta
        .iter()
        .zip(rest.iter())
        .filter(|(&b, _)| b > 0)
        .map(|(&b, &x)| x / b)
        .min()
        .unwrap_or(0);
    for v in 0..=cap {
        for (x, b) in rest.iter_mut().zip(beta) {
            *x -= v * b;
        }
        n[k] = v;
        lusztig_rec(coroots, reach, k + 1, rest, n, emit);
        for (x, b) in rest.iter_mut().zip(beta) {
            *x += v * b;
        }
    }
    n[k] = 0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Assemble in parallel over Lusztig data; the output order is unchanged.
    pub parallel: bool,
    /// Visit every reduced word during assembly and cross-check all values.
    pub full_check: bool,
    /// Run both BZ checks on every assembled datum.
    pub validate: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            parallel: true,
            full_check: true,
            validate: true,
        }
    }
}

/// All MV polytopes of coweight `(0, mu)`, ordered by their Lusztig datum
/// along the lexicographically first reduced word.
pub fn enumerate_mv(sys: &RootSystem, mu: &Coweight) -> Result<Vec<MvPolytope>> {
    enumerate_mv_with(sys, mu, &EnumerateOptions::default())
}

pub fn enumerate_mv_with(sys: &RootSystem, mu: &Coweight, opts: &EnumerateOptions) -> Result<Vec<MvPolytope>> {
    let word = sys.longest_words()[0].clone();
    enumerate_mv_from(sys, &word, mu, opts)
}

/// As [`enumerate_mv_with`] with an explicit reference word.
pub fn enumerate_mv_from(
    sys: &RootSystem,
    word: &[usize],
    mu: &Coweight,
    opts: &EnumerateOptions,
) -> Result<Vec<MvPolytope>> {
    let data = enumerate_lusztig(sys, word, mu)?;
    let build = |d: &LusztigDatum| -> Result<MvPolytope> {
        let m = assemble(sys, &d.word, &d.n, opts.full_check)?;
        if opts.validate {
            let report = check(sys, &m);
            if !report.is_valid() {
                return Err(Error::Invalid(format!(
                    "assembled datum for {:?} fails validation: {:?}",
                    d.n, report
                )));
            }
        }
        Ok(MvPolytope::new_unchecked(m))
    };
    if opts.parallel {
        data.par_iter().map(build).collect()
    } else {
        data.iter().map(build).collect()
    }
}

/// Caches enumerations by coweight for repeated multiplicity queries.
pub struct Counter<'a> {
    sys: &'a RootSystem,
    opts: EnumerateOptions,
    cache: Mutex<HashMap<Vec<i64>, Arc<Vec<MvPolytope>>>>,
}

impl<'a> Counter<'a> {
    pub fn new(sys: &'a RootSystem) -> Self {
        Self::with_options(sys, EnumerateOptions::default())
    }

    pub fn with_options(sys: &'a RootSystem, opts: EnumerateOptions) -> Self {
        Counter {
            sys,
            opts,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &RootSystem {
        self.sys
    }

    pub fn polytopes(&self, mu: &Coweight) -> Result<Arc<Vec<MvPolytope>>> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&mu.0) {
            return Ok(v.clone());
        }
        let v = Arc::new(enumerate_mv_with(self.sys, mu, &self.opts)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(mu.0.clone(), v.clone());
        Ok(v)
    }

    fn require_dominant(&self, name: &str, lambda: &Coweight) -> Result<()> {
        if lambda.0.len() != self.sys.rank() {
            return Err(Error::LengthMismatch {
                expected: self.sys.rank(),
                got: lambda.0.len(),
            });
        }
        if !self.sys.is_dominant(lambda) {
            return Err(Error::Invalid(format!("{name} = ({lambda}) is not dominant")));
        }
        Ok(())
    }

    /// BZ data of coweight `(mu, lambda)` whose values pass `keep`, where
    /// `keep(chamber, translated value)` is checked on every chamber weight.
    fn count_filtered(
        &self,
        top: &Coweight,
        bottom: &Coweight,
        keep: impl Fn(usize, i64) -> bool + Sync,
    ) -> Result<u64> {
        let diff = top.sub(bottom);
        if !diff.is_nonnegative() {
            return Ok(0);
        }
        let shift: Vec<i64> = self
            .sys
            .chambers()
            .iter()
            .map(|c| pair(&bottom.0, &c.weight.0))
            .collect();
        let polys = self.polytopes(&diff)?;
        Ok(polys
            .iter()
            .filter(|p| {
                p.datum()
                    .values
                    .iter()
                    .zip(&shift)
                    .enumerate()
                    .all(|(g, (&v, &s))| keep(g, v + s))
            })
            .count() as u64)
    }

    /// Weight multiplicity through BZ data contained in the Weyl polytope.
    pub fn weight_mult_mv(&self, lambda: &Coweight, mu: &Coweight) -> Result<u64> {
        self.require_dominant("lambda", lambda)?;
        let low = self.sys.act_coweight(self.sys.weyl().longest(), lambda);
        let levels: Vec<usize> = self.sys.chambers().iter().map(|c| c.level).collect();
        self.count_filtered(lambda, mu, |g, v| v >= low.0[levels[g]])
    }

    /// Weight multiplicity imposing the bound only at `w_0 s_i Lambda_i`.
    pub fn weight_mult_canonical(&self, lambda: &Coweight, mu: &Coweight) -> Result<u64> {
        self.require_dominant("lambda", lambda)?;
        let weyl = self.sys.weyl();
        let low = self.sys.act_coweight(weyl.longest(), lambda);
        let mut bound: Vec<Option<i64>> = vec![None; self.sys.num_chambers()];
        for i in 0..self.sys.rank() {
            let g = self.sys.chamber(weyl.mul_simple(weyl.longest(), i), i);
            bound[g] = Some(low.0[i]);
        }
        self.count_filtered(lambda, mu, |g, v| bound[g].is_none_or(|b| v >= b))
    }

    /// Tensor product multiplicity of `V_nu` in `V_lambda (x) V_mu`.
    pub fn tensor_mult(&self, lambda: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<u64> {
        self.require_dominant("lambda", lambda)?;
        self.require_dominant("mu", mu)?;
        self.require_dominant("nu", nu)?;
        let low = self.sys.act_coweight(self.sys.weyl().longest(), lambda);
        let bound: Vec<i64> = self
            .sys
            .chambers()
            .iter()
            .map(|c| low.0[c.level].max(pair(&nu.0, &c.weight.0) - mu.0[c.level]))
            .collect();
        self.count_filtered(lambda, &nu.sub(mu), |g, v| v >= bound[g])
    }
}

pub fn weight_mult_mv(sys: &RootSystem, lambda: &Coweight, mu: &Coweight) -> Result<u64> {
    Counter::new(sys).weight_mult_mv(lambda, mu)
}

pub fn weight_mult_canonical(sys: &RootSystem, lambda: &Coweight, mu: &Coweight) -> Result<u64> {
    Counter::new(sys).weight_mult_canonical(lambda, mu)
}

pub fn tensor_mult(sys: &RootSystem, lambda: &Coweight, mu: &Coweight, nu: &Coweight) -> Result<u64> {
    Counter::new(sys).tensor_mult(lambda, mu, nu)
}

/// `2 rho^vee`, the sum of the positive coroots.
pub fn two_rho(sys: &RootSystem) -> Vec<i64> {
    let mut v = vec![0i64; sys.rank()];
    for c in sys.positive_coroots() {
        for (x, y) in v.iter_mut().zip(c) {
            *x += y;
        }
    }
    v
}

/// `w rho^vee - rho^vee` for every `w`, which is integral.
fn rho_shifts(sys: &RootSystem) -> Vec<Vec<i64>> {
    let weyl = sys.weyl();
    let rho2 = two_rho(sys);
    (0..weyl.order())
        .map(|w| {
            weyl.act_coweight(w, &rho2)
                .iter()
                .zip(&rho2)
                .map(|(a, b)| (a - b) / 2)
                .collect()
        })
        .collect()
}

fn sign(sys: &RootSystem, w: usize) -> i64 {
    if sys.weyl().length(w).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Kostant's multiplicity formula
/// `sum_w (-1)^l(w) kpf(w(lambda + rho^vee) - (mu + rho^vee))`.
pub fn kostant_mult_oracle(sys: &RootSystem, lambda: &Coweight, mu: &Coweight) -> i64 {
    let mut memo = HashMap::new();
    kostant_with(sys, &rho_shifts(sys), lambda, mu, &mut memo)
}

fn kostant_with(
    sys: &RootSystem,
    shifts: &[Vec<i64>],
    lambda: &Coweight,
    mu: &Coweight,
    memo: &mut HashMap<(usize, Vec<i64>), u64>,
) -> i64 {
    let weyl = sys.weyl();
    (0..weyl.order())
        .map(|w| {
            let arg: Vec<i64> = weyl
                .act_coweight(w, &lambda.0)
                .iter()
                .zip(&shifts[w])
                .zip(&mu.0)
                .map(|((a, s), m)| a + s - m)
                .collect();
            sign(sys, w) * sys.kpf_cached(&arg, memo) as i64
        })
        .sum()
}

/// Steinberg's formula
/// `sum_{w,v} (-1)^{l(wv)} kpf(w(lambda + rho^vee) + v(mu + rho^vee) - (nu + 2 rho^vee))`.
pub fn steinberg_oracle(sys: &RootSystem, lambda: &Coweight, mu: &Coweight, nu: &Coweight) -> i64 {
    let weyl = sys.weyl();
    let shifts = rho_shifts(sys);
    let mut memo = HashMap::new();
    let wl: Vec<Vec<i64>> = (0..weyl.order())
        .map(|w| {
            weyl.act_coweight(w, &lambda.0)
                .iter()
                .zip(&shifts[w])
                .map(|(a, s)| a + s)
                .collect()
        })
        .collect();
    let vm: Vec<Vec<i64>> = (0..weyl.order())
        .map(|v| {
            weyl.act_coweight(v, &mu.0)
                .iter()
                .zip(&shifts[v])
                .zip(&nu.0)
                .map(|((a, s), n)| a + s - n)
                .collect()
        })
        .collect();
    let mut total = 0i64;
    for w in 0..weyl.order() {
        for v in 0..weyl.order() {
            let arg: Vec<i64> = wl[w].iter().zip(&vm[v]).map(|(a, b)| a + b).collect();
            total += sign(sys, w) * sign(sys, v) * sys.kpf_cached(&arg, &mut memo) as i64;
        }
    }
    total
}

/// Positive roots in fundamental-weight coordinates; `w alpha_i` is positive
/// exactly when the coroot `w alpha_i^vee` is.
pub fn positive_roots(sys: &RootSystem) -> Vec<Vec<i64>> {
    let weyl = sys.weyl();
    let r = sys.rank();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for w in 0..weyl.order() {
        for i in 0..r {
            if weyl.coroot_image(w, i).iter().all(|&x| x >= 0) {
                let alpha: Vec<i64> = (0..r).map(|k| sys.cartan().a(k, i)).collect();
                let root = weyl.act_weight(w, &alpha);
                if !out.contains(&root) {
                    out.push(root);
                }
            }
        }
    }
    out.sort();
    out
}

/// Weyl's dimension formula `prod_alpha <lambda + rho^vee, alpha> / <rho^vee, alpha>`.
pub fn weyl_dimension(sys: &RootSystem, lambda: &Coweight) -> u128 {
    let rho2 = two_rho(sys);
    let shifted: Vec<i64> = lambda.0.iter().zip(&rho2).map(|(l, r)| 2 * l + r).collect();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for alpha in positive_roots(sys) {
        num *= pair(&shifted, &alpha) as u128;
        den *= pair(&rho2, &alpha) as u128;
    }
    num / den
}

/// Every coweight in the box between `w_0 lambda` and `lambda`, which
/// contains all weights of `V_lambda`.
pub fn weight_box(sys: &RootSystem, lambda: &Coweight) -> Vec<Coweight> {
    let low = sys.act_coweight(sys.weyl().longest(), lambda);
    let mut out = vec![Vec::new()];
    for (lo, hi) in low.0.iter().zip(&lambda.0) {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (*lo..=*hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Coweight).collect()
}

/// Dominant coweights with every coordinate in `0..=bound`.
pub fn dominant_up_to(sys: &RootSystem, bound: i64) -> Vec<Coweight> {
    let mut out = vec![Vec::new()];
    for _ in 0..sys.rank() {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter()
        .map(Coweight)
        .filter(|c| sys.is_dominant(c))
        .collect()
}

/// The datum as a plain [`BzDatum`] list, for callers that do not need the wrapper.
pub fn data(polys: &[MvPolytope]) -> Vec<BzDatum> {
    polys.iter().map(|p| p.datum().clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{classify_2face, FaceType};

    fn sys(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    #[test]
    fn a2_lusztig_enumeration() {
        let s = sys("A2");
        let got: Vec<Vec<i64>> = enumerate_lusztig(&s, &[0, 1, 0], &cw(&[1, 1]))
            .unwrap()
            .into_iter()
            .map(|d| d.n)
            .collect();
        assert_eq!(got, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(enumerate_lusztig(&s, &[0, 1, 0], &cw(&[0, 0])).unwrap().len(), 1);
        assert_eq!(enumerate_lusztig(&s, &[0, 1, 0], &cw(&[2, 1])).unwrap().len(), 2);
        assert!(enumerate_lusztig(&s, &[0, 1, 0], &cw(&[-1, 1])).unwrap().is_empty());
    }

    #[test]
    fn lusztig_enumeration_matches_brute_force() {
        for label in ["A2", "B2"] {
            let s = sys(label);
            let m = s.num_positive();
            for word in s.longest_words() {
                let wd = &s.all_word_data()[s.word_index(word).unwrap()];
                let mut by_mu: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
                let total = 5usize.pow(m as u32);
                for code in 0..total {
                    let n: Vec<i64> = (0..m).map(|k| ((code / 5usize.pow(k as u32)) % 5) as i64).collect();
                    let mu = crate::lusztig::coweight_of(wd, &n);
                    by_mu.entry(mu).or_default().push(n);
                }
                for a in 0..=3 {
                    for b in 0..=3 {
                        let mut want = by_mu.get(&vec![a, b]).cloned().unwrap_or_default();
                        want.sort();
                        let got: Vec<_> = enumerate_lusztig(&s, word, &cw(&[a, b]))
                            .unwrap()
                            .into_iter()
                            .map(|d| d.n)
                            .collect();
                        assert_eq!(got, want, "{label} {word:?} ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn mv_counts_match_kpf() {
        for label in ["A2", "B2", "A3"] {
            let s = sys(label);
            for mu in weight_box(&s, &cw(&vec![2; s.rank()])) {
                if !mu.is_nonnegative() || mu.0.iter().sum::<i64>() > 3 {
                    continue;
                }
                let polys = enumerate_mv(&s, &mu).unwrap();
                assert_eq!(polys.len() as u64, s.kpf(&mu), "{label} {mu}");
                let mut d = data(&polys);
                d.sort();
                d.dedup();
                assert_eq!(d.len(), polys.len());
            }
        }
    }

    #[test]
    fn reference_word_does_not_matter() {
        let s = sys("B2");
        let opts = EnumerateOptions {
            parallel: false,
            ..Default::default()
        };
        let mut a = data(&enumerate_mv_from(&s, &s.longest_words()[0], &cw(&[2, 2]), &opts).unwrap());
        let mut b = data(&enumerate_mv_from(&s, &s.longest_words()[1], &cw(&[2, 2]), &opts).unwrap());
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let par = data(&enumerate_mv(&s, &cw(&[2, 2])).unwrap());
        let seq = data(&enumerate_mv_with(&s, &cw(&[2, 2]), &opts).unwrap());
        assert_eq!(par, seq);
    }

    #[test]
    fn b2_octagon_types() {
        // Coweight (2,2) alone only shows one strict type; the box up to 4 shows all.
        for label in ["B2", "C2"] {
            let s = sys(label);
            let mut strict = std::collections::BTreeSet::new();
            for a in 0..=4 {
                for b in 0..=4 {
                    for p in enumerate_mv(&s, &cw(&[a, b])).unwrap() {
                        if let FaceType::Octagon(t) = classify_2face(&s, p.datum(), 0, 0, 1).unwrap() {
                            strict.extend(t.strict());
                        }
                    }
                }
            }
            assert_eq!(strict.len(), 4, "{label} {strict:?}");
        }
    }

    #[test]
    fn a2_multiplicities() {
        let s = sys("A2");
        let theta = cw(&[1, 1]);
        assert_eq!(weight_mult_mv(&s, &theta, &cw(&[0, 0])).unwrap(), 2);
        assert_eq!(weight_mult_canonical(&s, &theta, &cw(&[0, 0])).unwrap(), 2);
        assert_eq!(kostant_mult_oracle(&s, &theta, &cw(&[0, 0])), 2);
        assert_eq!(weight_mult_mv(&s, &theta, &theta).unwrap(), 1);
        assert_eq!(weight_mult_mv(&s, &theta, &cw(&[2, 2])).unwrap(), 0);
        assert!(weight_mult_mv(&s, &cw(&[1, 0]), &cw(&[0, 0])).is_err());
        assert_eq!(tensor_mult(&s, &theta, &theta, &theta).unwrap(), 2);
        assert_eq!(steinberg_oracle(&s, &theta, &theta, &theta), 2);
        assert_eq!(tensor_mult(&s, &theta, &theta, &cw(&[2, 2])).unwrap(), 1);
        assert_eq!(weyl_dimension(&s, &theta), 8);
    }

    #[test]
    fn b2_spot_values() {
        let s = sys("B2");
        let lam = cw(&[1, 1]);
        assert!(s.is_dominant(&lam));
        let zero = cw(&[0, 0]);
        let k = kostant_mult_oracle(&s, &lam, &zero);
        assert_eq!(weight_mult_mv(&s, &lam, &zero).unwrap() as i64, k);
        // The trivial representation occurs once in V tensor its dual.
        assert_eq!(tensor_mult(&s, &lam, &lam, &zero).unwrap(), 1);
        assert_eq!(steinberg_oracle(&s, &lam, &lam, &zero), 1);
    }

    #[test]
    fn weight_sums_give_dimension() {
        for label in ["A2", "B2", "C3"] {
            let s = sys(label);
            let counter = Counter::new(&s);
            for lam in dominant_up_to(&s, 2) {
                let total: u64 = weight_box(&s, &lam)
                    .iter()
                    .map(|mu| counter.weight_mult_mv(&lam, mu).unwrap())
                    .sum();
                assert_eq!(total as u128, weyl_dimension(&s, &lam), "{label} {lam}");
            }
        }
    }
}
