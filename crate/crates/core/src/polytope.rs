//! Polytope geometry of hyperplane data: support functions, concavity,
//! Minkowski sums, 2-face types and containment in Weyl polytopes.

use crate::bz::{check_edge_inequalities, BzDatum, Relation};
use crate::cartan::{pair, Coweight};
use crate::error::{Error, Result};
use crate::system::RootSystem;

/// Weyl group elements `w` whose dual cone `C_w^*` contains `alpha`, i.e.
/// `<w alpha_i^vee, alpha> >= 0` for all `i`.
pub fn containing_cones(sys: &RootSystem, alpha: &[i64]) -> Vec<usize> {
    let weyl = sys.weyl();
    (0..weyl.order())
        .filter(|&w| (0..sys.rank()).all(|i| pair(&weyl.coroot_image(w, i), alpha) >= 0))
        .collect()
}

/// `psi(alpha)` computed in the cone `C_w^*`. The cone's rays are the
/// `w Lambda_i` and the coefficients `<w alpha_i^vee, alpha>` are integral.
pub fn support_in_cone(sys: &RootSystem, m: &BzDatum, w: usize, alpha: &[i64]) -> i64 {
    let weyl = sys.weyl();
    (0..sys.rank())
        .map(|i| pair(&weyl.coroot_image(w, i), alpha) * m.values[sys.chamber(w, i)])
        .sum()
}

/// The support function `psi_M`.
pub fn support_eval(sys: &RootSystem, m: &BzDatum, alpha: &[i64]) -> i64 {
    let weyl = sys.weyl();
    let w = (0..weyl.order())
        .find(|&w| (0..sys.rank()).all(|i| pair(&weyl.coroot_image(w, i), alpha) >= 0))
        .expect("the Weyl chambers cover the weight space");
    support_in_cone(sys, m, w, alpha)
}

/// Concavity of `psi_M`, decided through the edge inequalities.
pub fn is_concave(sys: &RootSystem, m: &BzDatum) -> bool {
    check_edge_inequalities(sys, m).is_empty()
}

/// Searches for `(alpha, beta)` with `psi(alpha + beta) < psi(alpha) + psi(beta)`.
///
/// Candidates are all pairs of chamber weights (these include one pair
/// straddling every wall of the Weyl fan) and all pairs from the box
/// `[-radius, radius]^r`.
pub fn concavity_witness(sys: &RootSystem, m: &BzDatum, radius: i64) -> Option<(Vec<i64>, Vec<i64>)> {
    let mut points: Vec<Vec<i64>> = sys.chambers().iter().map(|c| c.weight.0.clone()).collect();
    points.extend(box_points(sys.rank(), radius));
    let psi: Vec<i64> = points.iter().map(|p| support_eval(sys, m, p)).collect();
    for (a, pa) in points.iter().zip(&psi) {
        for (b, pb) in points.iter().zip(&psi) {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if support_eval(sys, m, &s) < pa + pb {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn box_points(r: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Hyperplane data of the Minkowski sum.
pub fn minkowski_sum(m: &BzDatum, n: &BzDatum) -> BzDatum {
    BzDatum {
        values: m.values.iter().zip(&n.values).map(|(a, b)| a + b).collect(),
    }
}

/// Width of the polytope in direction `gamma`: `-M_gamma - M_{-gamma}`.
pub fn width(sys: &RootSystem, m: &BzDatum, gamma: usize) -> i64 {
    let neg: Vec<i64> = sys.chambers()[gamma].weight.0.iter().map(|x| -x).collect();
    let opp = sys.chamber_by_weight(&neg).expect("chamber weights are closed under negation");
    -m.values[gamma] - m.values[opp]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HexType {
    /// `M_{w Lambda_i} + M_{w s_i s_j Lambda_j}` is the strict minimum.
    First,
    /// `M_{w s_j s_i Lambda_i} + M_{w Lambda_j}` is the strict minimum.
    Second,
    Tie,
}

/// Achieving arguments (zero-based) of the two octagon equations, taken in
/// the orientation with `a_ij = -1`, `a_ji = -2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OctType {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl OctType {
    pub fn is_tie(&self) -> bool {
        self.first.len() > 1 || self.second.len() > 1
    }

    /// `(first, second)` when both minima are strict.
    pub fn strict(&self) -> Option<(usize, usize)> {
        (!self.is_tie()).then(|| (self.first[0], self.second[0]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FaceType {
    Rectangle,
    Hexagon(HexType),
    Octagon(OctType),
}

fn argmins(rel: &Relation, m: &[i64]) -> Vec<usize> {
    let vals: Vec<i64> = rel.terms.iter().map(|t| t.eval(m)).collect();
    let lo = *vals.iter().min().expect("relations have terms");
    (0..vals.len()).filter(|&k| vals[k] == lo).collect()
}

/// Type of the 2-face with lowest vertex `w` spanned by directions `i`, `j`.
pub fn classify_2face(sys: &RootSystem, m: &BzDatum, w: usize, i: usize, j: usize) -> Result<FaceType> {
    let weyl = sys.weyl();
    let r = sys.rank();
    if i >= r || j >= r || w >= weyl.order() {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            rank: r,
        });
    }
    if i == j || weyl.is_right_descent(w, i) || weyl.is_right_descent(w, j) {
        return Err(Error::Invalid(format!(
            "(w, {}, {}) is not the lowest vertex of a 2-face",
            i + 1,
            j + 1
        )));
    }
    if sys.cartan().a(i, j) == 0 {
        return Ok(FaceType::Rectangle);
    }
    let face: Vec<&Relation> = sys
        .relations()
        .iter()
        .filter(|rel| rel.w == w && rel.canonical && ((rel.i, rel.j) == (i, j) || (rel.i, rel.j) == (j, i)))
        .collect();
    match face.as_slice() {
        [hex] => {
            let a = argmins(hex, &m.values);
            Ok(FaceType::Hexagon(match a.as_slice() {
                [0] => HexType::First,
                [1] => HexType::Second,
                _ => HexType::Tie,
            }))
        }
        [e0, e1] => Ok(FaceType::Octagon(OctType {
            first: argmins(e0, &m.values),
            second: argmins(e1, &m.values),
        })),
        _ => unreachable!("each face carries one or two canonical equations"),
    }
}

/// The `lambda`-Weyl polytope: `M_{w Lambda_i} = <w_0 lambda, Lambda_i>`.
pub fn weyl_polytope(sys: &RootSystem, lambda: &Coweight) -> BzDatum {
    let low = sys.act_coweight(sys.weyl().longest(), lambda);
    BzDatum {
        values: sys.chambers().iter().map(|c| low.0[c.level]).collect(),
    }
}

/// Whether `M_{w Lambda_i} >= <w_0 lambda, Lambda_i>` for every chamber weight.
pub fn contains_in_weyl(sys: &RootSystem, m: &BzDatum, lambda: &Coweight) -> bool {
    let low = sys.act_coweight(sys.weyl().longest(), lambda);
    sys.chambers()
        .iter()
        .zip(&m.values)
        .all(|(c, &v)| v >= low.0[c.level])
}
