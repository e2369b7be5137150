//! Exact double description: extreme rays of `{x : E x = 0, A x >= 0}`.

pub(crate) type Vector = Vec<i128>;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides by the gcd of the entries.
pub(crate) fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `s * u - t * v`, reduced to primitive form.
fn combine(s: i128, u: &[i128], t: i128, v: &[i128]) -> Vector {
    let mut out: Vector = u.iter().zip(v).map(|(a, b)| s * a - t * b).collect();
    primitive(&mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cone {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

#[derive(Clone)]
struct Ray {
    v: Vector,
    /// Bit `k` set when the `k`-th processed inequality vanishes on `v`.
    zeros: Vec<u64>,
}

fn set_bit(z: &mut Vec<u64>, k: usize) {
    if z.len() <= k / 64 {
        z.resize(k / 64 + 1, 0);
    }
    z[k / 64] |= 1 << (k % 64);
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn contains(sup: &[u64], sub: &[u64]) -> bool {
    sub.iter()
        .enumerate()
        .all(|(k, &s)| s & !sup.get(k).copied().unwrap_or(0) == 0)
}

/// Runs the double description method starting from all of `R^dim`.
pub(crate) fn double_description(dim: usize, equalities: &[Vec<i64>], inequalities: &[Vec<i64>]) -> Cone {
    let mut lines: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut e = vec![0i128; dim];
            e[i] = 1;
            e
        })
        .collect();
    for a in equalities {
        let a: Vector = a.iter().map(|&x| x as i128).collect();
        if let Some(p) = lines.iter().position(|l| dot(&a, l) != 0) {
            let l = lines.swap_remove(p);
            let al = dot(&a, &l);
            for other in lines.iter_mut() {
                let ao = dot(&a, other);
                if ao != 0 {
                    *other = combine(al, other, ao, &l);
                }
            }
        }
    }

    let mut rays: Vec<Ray> = Vec::new();
    for (k, a) in inequalities.iter().enumerate() {
        let a: Vector = a.iter().map(|&x| x as i128).collect();
        if let Some(p) = lines.iter().position(|l| dot(&a, l) != 0) {
            let mut l = lines.swap_remove(p);
            let mut al = dot(&a, &l);
            if al < 0 {
                l.iter_mut().for_each(|x| *x = -*x);
                al = -al;
            }
            for other in lines.iter_mut() {
                let ao = dot(&a, other);
                if ao != 0 {
                    *other = combine(al, other, ao, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(&a, &r.v);
                if ar != 0 {
                    r.v = combine(al, &r.v, ar, &l);
                }
                set_bit(&mut r.zeros, k);
            }
            let mut zeros = Vec::new();
            for j in 0..k {
                set_bit(&mut zeros, j);
            }
            rays.push(Ray { v: l, zeros });
            continue;
        }

        let vals: Vec<i128> = rays.iter().map(|r| dot(&a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, &x) in rays.iter().zip(&vals) {
            if x >= 0 {
                let mut r = r.clone();
                if x == 0 {
                    set_bit(&mut r.zeros, k);
                }
                next.push(r);
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            if vals[pi] <= 0 {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if vals[ni] >= 0 {
                    continue;
                }
                let z = and(&p.zeros, &n.zeros);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, r)| t == pi || t == ni || !contains(&r.zeros, &z));
                if adjacent {
                    let v = combine(vals[pi], &n.v, vals[ni], &p.v);
                    let mut zeros = z;
                    set_bit(&mut zeros, k);
                    next.push(Ray { v, zeros });
                }
            }
        }
        rays = next;
    }
    let mut out: Vec<Vector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Cone {
        lineality: lines,
        rays: out,
    }
}

/// Rank of a list of integer vectors.
pub(crate) fn rank(vectors: &[Vector]) -> usize {
    let mut rows: Vec<Vector> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] != 0 {
                *row = combine(pivot[c], row, row[c], &pivot);
            }
        }
        rank += 1;
    }
    rank
}
