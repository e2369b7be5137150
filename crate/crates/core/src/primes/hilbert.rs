//! Hilbert bases of pointed cones inside the nonnegative orthant.

use std::collections::HashSet;

/// Minimal generating set of the lattice points of the cone spanned by
/// `rays`, where `member` decides lattice membership.
///
/// Every Hilbert basis element lies in the zonotope `sum [0,1] r`, so the
/// candidates are the members in its bounding box. A candidate is kept when
/// no smaller accepted generator can be subtracted within the cone.
pub fn hilbert_basis(rays: &[Vec<i64>], member: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let Some(first) = rays.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let mut hi = vec![0i64; dim];
    for r in rays {
        assert!(r.iter().all(|&x| x >= 0), "cone must lie in the nonnegative orthant");
        for (h, &x) in hi.iter_mut().zip(r) {
            *h += x;
        }
    }
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; dim];
    loop {
        if cur.iter().any(|&x| x != 0) && member(&cur) {
            points.push(cur.clone());
        }
        let mut k = 0;
        while k < dim {
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == dim {
            break;
        }
    }
    points.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
    let in_cone: HashSet<Vec<i64>> = points.iter().cloned().collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for x in &points {
        let reducible = basis.iter().any(|h| {
            let d: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            d.iter().all(|&v| v >= 0) && in_cone.contains(&d)
        });
        if !reducible {
            basis.push(x.clone());
        }
    }
    basis
}
