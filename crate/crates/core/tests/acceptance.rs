//! The ten acceptance criteria. Each test prints one PASS/FAIL line with its
//! timing; run with `--nocapture` to see them.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use mv_core::bz::{self, check, check_edge_inequalities, from_lusztig, BzDatum};
use mv_core::lusztig::{braid_transition, n_to_partial_m, propagate, LusztigDatum};
use mv_core::polytope::{concavity_witness, is_concave, minkowski_sum, width};
use mv_core::primes::{decompose, prime_catalog};
use mv_core::rep::{self, Counter};
use mv_core::{sln, Coweight, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sys(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn report(id: u32, name: &str, start: Instant, limit: Option<Duration>, outcome: Result<String, String>) {
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|detail| match limit {
        Some(l) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        _ => Ok(detail),
    });
    match &outcome {
        Ok(detail) => println!("PASS {id:>2} {name} ({elapsed:.2?}): {detail}"),
        Err(why) => println!("FAIL {id:>2} {name} ({elapsed:.2?}): {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nonneg_up_to(rank: usize, total: i64) -> Vec<Coweight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                let used: i64 = p.iter().sum();
                (0..=total - used).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Coweight).collect()
}

#[test]
fn c01_count_identity() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let mut checked = 0;
        for label in ["A2", "B2", "A3"] {
            let s = sys(label);
            for mu in nonneg_up_to(s.rank(), 4) {
                let got = rep::enumerate_mv(&s, &mu).map_err(|e| e.to_string())?.len() as u64;
                let want = s.kpf(&mu);
                ensure(got == want, || format!("{label} {mu}: {got} polytopes, kpf {want}"))?;
                checked += 1;
            }
        }
        Ok(format!("{checked} coweights agree with kpf"))
    };
    report(1, "count identity", start, Some(Duration::from_secs(30)), run());
}

#[test]
fn c02_braid_coherence() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let s = sys("A3");
        let graph = s.braid_graph();
        let words = s.longest_words();
        ensure(words.len() == 16, || format!("{} reduced words", words.len()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let w0 = rng.gen_range(0..words.len());
            let n: Vec<i64> = (0..words[w0].len()).map(|_| rng.gen_range(0..=4)).collect();
            let data = propagate(&s, w0, &n);
            let mu = LusztigDatum::new(&s, words[w0].clone(), n.clone()).unwrap().coweight(&s).unwrap();
            for (v, edges) in graph.adjacency.iter().enumerate() {
                let d = LusztigDatum::new(&s, words[v].clone(), data[v].clone()).map_err(|e| e.to_string())?;
                ensure(d.coweight(&s).unwrap() == mu, || format!("coweight changes at word {v}"))?;
                for e in edges {
                    let there = braid_transition(&s, e, &data[v]);
                    ensure(there == data[e.to], || format!("path dependence on edge {e:?} from {n:?}"))?;
                    let back = graph.adjacency[e.to]
                        .iter()
                        .find(|r| r.to == v && r.pos == e.pos)
                        .ok_or("missing reverse edge")?;
                    ensure(braid_transition(&s, back, &there) == data[v], || format!("edge {e:?} not involutive"))?;
                }
            }
            // A random walk must land on the propagated datum.
            let (mut at, mut cur) = (w0, n.clone());
            for _ in 0..25 {
                let e = graph.adjacency[at][rng.gen_range(0..graph.adjacency[at].len())];
                cur = braid_transition(&s, &e, &cur);
                at = e.to;
            }
            ensure(cur == data[at], || format!("random walk from {n:?} disagrees"))?;
            let m = from_lusztig(&s, &LusztigDatum::new(&s, words[w0].clone(), n.clone()).unwrap())
                .map_err(|e| format!("assembly of {n:?}: {e}"))?;
            for (v, word) in words.iter().enumerate() {
                let read = bz::lusztig_datum(&s, &m, word).map_err(|e| e.to_string())?;
                ensure(read.n == data[v], || format!("read-back differs on word {v}"))?;
            }
        }
        Ok("200 data over 16 words: path independent, involutive, coweight preserving, assembled".into())
    };
    report(2, "braid coherence", start, None, run());
}

#[test]
fn c03_sl3_classification() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let s = sys("A2");
        let ch = |subset: &[usize]| sln::subset_chamber(&s, subset).unwrap();
        let mut polys = 0;
        for mu in nonneg_up_to(2, 5) {
            for p in rep::enumerate_mv(&s, &mu).map_err(|e| e.to_string())? {
                let m = p.datum();
                let (w1, w2, w3) = (width(&s, m, ch(&[1])), width(&s, m, ch(&[2])), width(&s, m, ch(&[3])));
                ensure(w2 == w1.max(w3), || format!("{m:?}: widths {w1} {w2} {w3}"))?;
                polys += 1;
            }
        }
        // Pseudo-Weyl polytopes with Lusztig datum (2,1,1) along (1,2,1).
        let d = LusztigDatum::new(&s, vec![0, 1, 0], vec![2, 1, 1]).unwrap();
        let partial = n_to_partial_m(&s, &d).map_err(|e| e.to_string())?;
        let free = ch(&[1, 3]);
        ensure(!partial.values.contains_key(&free), || "M_13 is determined by the path".into())?;
        let mut pseudo_weyl = Vec::new();
        for x in -20..=20 {
            let mut m = BzDatum::zero(&s);
            for (&c, &v) in &partial.values {
                m.values[c] = v;
            }
            m.values[free] = x;
            if check_edge_inequalities(&s, &m).is_empty() {
                pseudo_weyl.push((x, check(&s, &m).is_valid()));
            }
        }
        let valid: Vec<i64> = pseudo_weyl.iter().filter(|p| p.1).map(|p| p.0).collect();
        ensure(pseudo_weyl.len() == 3 && valid.len() == 1, || format!("pseudo-Weyl candidates {pseudo_weyl:?}"))?;
        Ok(format!(
            "{polys} polytopes obey the width dichotomy; pseudo-Weyl M_13 in {:?}, valid only at {}",
            pseudo_weyl.iter().map(|p| p.0).collect::<Vec<_>>(),
            valid[0]
        ))
    };
    report(3, "SL3 classification", start, None, run());
}

#[test]
fn c04_b2_primes() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let s = sys("B2");
        let cat = prime_catalog(&s).map_err(|e| e.to_string())?;
        ensure(cat.choice_count == 9, || format!("{} choices", cat.choice_count))?;
        ensure(cat.clusters.len() == 4, || format!("{} maximal cones", cat.clusters.len()))?;
        let mut sizes: Vec<usize> = cat.clusters.iter().map(|c| c.generators.len()).collect();
        sizes.sort();
        ensure(sizes == [4, 4, 5, 5], || format!("generator counts {sizes:?}"))?;
        ensure(cat.primes.len() == 8, || format!("{} primes", cat.primes.len()))?;
        let common = (0..cat.primes.len())
            .filter(|p| cat.clusters.iter().all(|c| c.generators.contains(p)))
            .count();
        ensure(common == 2, || format!("{common} primes in every cluster"))?;
        Ok("9 choices, 4 maximal cones with 4,4,5,5 generators, 8 primes, 2 shared".into())
    };
    report(4, "B2 primes", start, Some(Duration::from_secs(60)), run());
}

#[test]
fn c05_a3_primes() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let s = sys("A3");
        let cat = prime_catalog(&s).map_err(|e| e.to_string())?;
        ensure(cat.choice_count == 256, || format!("{} choices", cat.choice_count))?;
        ensure(cat.clusters.len() == 13, || format!("{} maximal cones", cat.clusters.len()))?;
        let simplicial = cat
            .clusters
            .iter()
            .filter(|c| c.generators.len() == 6 && c.rays == 6)
            .count();
        let seven = cat.clusters.iter().filter(|c| c.generators.len() == 7).count();
        ensure(simplicial == 12 && seven == 1, || format!("{simplicial} simplicial with 6 generators, {seven} with 7"))?;
        ensure(cat.primes.len() == 12, || format!("{} primes", cat.primes.len()))?;
        Ok("256 choices, 13 maximal cones (12 simplicial with 6 generators, 1 with 7), 12 primes".into())
    };
    report(5, "A3 primes", start, Some(Duration::from_secs(15 * 60)), run());
}

#[test]
fn c06_multiplicity_triangle() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let mut checked = 0;
        for label in ["A2", "B2", "A3"] {
            let s = sys(label);
            let counter = Counter::new(&s);
            for lambda in rep::dominant_up_to(&s, 2) {
                for mu in rep::weight_box(&s, &lambda) {
                    let mv = counter.weight_mult_mv(&lambda, &mu).map_err(|e| e.to_string())?;
                    let can = counter.weight_mult_canonical(&lambda, &mu).map_err(|e| e.to_string())?;
                    let oracle = rep::kostant_mult_oracle(&s, &lambda, &mu);
                    ensure(mv == can && mv as i64 == oracle, || {
                        format!("{label} lambda {lambda} mu {mu}: mv {mv}, canonical {can}, Kostant {oracle}")
                    })?;
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} (lambda, mu) pairs agree three ways"))
    };
    report(6, "multiplicity triangle", start, Some(Duration::from_secs(300)), run());
}

#[test]
fn c07_tensor_multiplicities() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let mut checked = 0;
        for label in ["A2", "B2"] {
            let s = sys(label);
            let counter = Counter::new(&s);
            let dom = rep::dominant_up_to(&s, 2);
            for lambda in &dom {
                for mu in &dom {
                    for nu in &dom {
                        let got = counter.tensor_mult(lambda, mu, nu).map_err(|e| e.to_string())?;
                        let want = rep::steinberg_oracle(&s, lambda, mu, nu);
                        ensure(got as i64 == want, || format!("{label} {lambda} {mu} {nu}: {got} vs {want}"))?;
                        checked += 1;
                    }
                }
            }
        }
        let a2 = sys("A2");
        let theta = Coweight(vec![1, 1]);
        let c = rep::tensor_mult(&a2, &theta, &theta, &theta).map_err(|e| e.to_string())?;
        ensure(c == 2, || format!("c_theta,theta^theta = {c}"))?;
        Ok(format!("{checked} triples match Steinberg; A2 c_theta,theta^theta = 2"))
    };
    report(7, "tensor multiplicities", start, None, run());
}

#[test]
fn c08_collapse_equivalence() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let mut checked = 0;
        let mut check_one = |s: &RootSystem, pic: &sln::KostantPicture| -> Result<(), String> {
            let n = pic.labels.len();
            let d = sln::picture_to_lusztig(s, pic).map_err(|e| e.to_string())?;
            let m = from_lusztig(s, &d).map_err(|e| e.to_string())?;
            for k in 1..=n {
                ensure(sln::verify_collapse(s, &m, pic, k), || format!("{:?} at k = {k}", pic.to_triples()))?;
            }
            checked += 1;
            Ok(())
        };
        let s3 = sln::system(3).unwrap();
        for e in 0..64 {
            check_one(&s3, &sln::KostantPicture::from_entries(3, &[e % 4, (e / 4) % 4, e / 16]).unwrap())?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [4, 5] {
            let s = sln::system(n).unwrap();
            for _ in 0..100 {
                let entries: Vec<i64> = (0..n * (n - 1) / 2).map(|_| rng.gen_range(0..=3)).collect();
                check_one(&s, &sln::KostantPicture::from_entries(n, &entries).unwrap())?;
            }
        }
        Ok(format!("{checked} pictures: collapse equals the facet datum at every k, relations hold"))
    };
    report(8, "collapse equivalence", start, None, run());
}

#[test]
fn c09_concavity_equivalence() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut summary = Vec::new();
        for label in ["A2", "B2"] {
            let s = sys(label);
            let mut concave = 0;
            for _ in 0..10_000 {
                let m = BzDatum {
                    values: (0..s.num_chambers()).map(|_| rng.gen_range(-5..=0)).collect(),
                };
                let edges = is_concave(&s, &m);
                let sampled = concavity_witness(&s, &m, 2).is_none();
                ensure(edges == sampled, || format!("{label} {m:?}: edges {edges}, sampling {sampled}"))?;
                concave += usize::from(edges);
            }
            summary.push(format!("{label} {concave}/10000 concave"));
        }
        Ok(summary.join(", "))
    };
    report(9, "concavity equivalence", start, None, run());
}

#[test]
fn c10_minkowski_closure() {
    let start = Instant::now();
    let run = || -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for label in ["A2", "B2"] {
            let s = sys(label);
            let cat = prime_catalog(&s).map_err(|e| e.to_string())?;
            for _ in 0..500 {
                let cl = &cat.clusters[rng.gen_range(0..cat.clusters.len())];
                let mut m = BzDatum::zero(&s);
                for &g in &cl.generators {
                    for _ in 0..rng.gen_range(0..=3) {
                        m = minkowski_sum(&m, &cat.primes[g]);
                    }
                }
                ensure(check(&s, &m).is_valid(), || format!("{label}: sum {m:?} is not a BZ datum"))?;
            }
        }
        let s = sys("A2");
        let cat = prime_catalog(&s).map_err(|e| e.to_string())?;
        let mut decomposed = 0;
        for mu in nonneg_up_to(2, 4) {
            for p in rep::enumerate_mv(&s, &mu).map_err(|e| e.to_string())? {
                let d = decompose(&s, &cat, p.datum()).map_err(|e| e.to_string())?;
                let gens: HashSet<usize> = cat.clusters[d.cluster].generators.iter().copied().collect();
                let mut sum = BzDatum::zero(&s);
                for &(g, c) in &d.terms {
                    ensure(gens.contains(&g), || format!("prime {g} outside cluster {}", d.cluster))?;
                    for _ in 0..c {
                        sum = minkowski_sum(&sum, &cat.primes[g]);
                    }
                }
                ensure(&sum == p.datum(), || format!("decomposition of {:?} does not add up", p.datum()))?;
                decomposed += 1;
            }
        }
        Ok(format!("1000 prime combinations validate; {decomposed} A2 polytopes decomposed"))
    };
    report(10, "Minkowski closure", start, None, run());
}
