//! Cartan data for the singly and doubly laced finite types.
//!
//! The convention throughout is `a[i][j] = <alpha_i^vee, alpha_j>`, so the
//! simple root `alpha_j` has fundamental-weight coordinates given by column
//! `j` of the matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::UnsupportedType {
                family: other.to_string(),
                rank: 0,
                reason: match other {
                    "G" | "g" => "G2 needs a_ij = -3, which is not supported".into(),
                    "E" | "e" | "F" | "f" => "only the classical families A-D are built in".into(),
                    _ => "unknown family".into(),
                },
            }),
        }
    }
}

/// A validated Cartan matrix together with its type label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    label: String,
    family: Option<Family>,
    matrix: Vec<Vec<i64>>,
}

impl CartanDatum {
    /// Standard Cartan matrix of the given family and rank.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let unsupported = |reason: &str| Error::UnsupportedType {
            family: family.to_string(),
            rank,
            reason: reason.to_string(),
        };
        let min_rank = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        };
        if rank < min_rank {
            return Err(unsupported(match family {
                Family::D => "D needs rank >= 3 (D2 is A1xA1)",
                _ => "rank too small for this family",
            }));
        }
        let mut a = vec![vec![0i64; rank]; rank];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        match family {
            Family::A | Family::B | Family::C => {
                for i in 0..rank - 1 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                if rank >= 2 {
                    let (p, q) = (rank - 2, rank - 1);
                    match family {
                        Family::B => a[p][q] = -2,
                        Family::C => a[q][p] = -2,
                        _ => {}
                    }
                }
            }
            Family::D => {
                for i in 0..rank - 2 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                let fork = rank - 3;
                a[fork][rank - 1] = -1;
                a[rank - 1][fork] = -1;
            }
        }
        Ok(CartanDatum {
            label: format!("{family}{rank}"),
            family: Some(family),
            matrix: a,
        })
    }

    /// Parses labels such as `"A2"` or `"c3"`.
    pub fn from_label(label: &str) -> Result<Self> {
        let label = label.trim();
        let (fam, rank) = label.split_at(label.len().min(1));
        let family: Family = fam.parse()?;
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rank in type label {label:?}")))?;
        Self::new(family, rank)
    }

    /// Validates an arbitrary matrix, e.g. a block-diagonal product.
    pub fn from_matrix(label: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let r = matrix.len();
        if r == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != r {
                return Err(Error::InvalidCartan(format!("row {i} has length {}", row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is {}", row[i])));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                let (x, y) = (matrix[i][j], matrix[j][i]);
                if x == -3 || y == -3 {
                    return Err(Error::InvalidCartan("a_ij = -3 (G2) is not supported".into()));
                }
                if !matches!(x, -2..=0) {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is {x}")));
                }
                if (x == 0) != (y == 0) || !matches!(x * y, 0..=2) {
                    return Err(Error::InvalidCartan(format!("entries ({i},{j}),({j},{i}) = {x},{y}")));
                }
            }
        }
        Ok(CartanDatum {
            label: label.into(),
            family: None,
            matrix,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// `a_ij`, zero-based.
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Order of `s_i s_j`, read off from `a_ij a_ji`.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.a(i, j) * self.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => unreachable!("validated at construction"),
        }
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

/// A coweight in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Coweight(vec![0; rank])
    }

    #[inline]
    pub fn pair(&self, weight: &Weight) -> i64 {
        pair(&self.0, &weight.0)
    }

    /// Dominance order: `self - other` is a nonnegative combination of simple coroots.
    pub fn dominates(&self, other: &Coweight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }
}

impl Weight {
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.0)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.0)
    }
}

fn write_coords(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    for (k, x) in v.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// `<coweight, weight>` in the dual coordinate systems.
#[inline]
pub fn pair(coweight: &[i64], weight: &[i64]) -> i64 {
    coweight.iter().zip(weight).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a2() {
        let c = CartanDatum::new(Family::A, 2).unwrap();
        assert_eq!(c.matrix(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn type_c2_orientation() {
        let c = CartanDatum::new(Family::C, 2).unwrap();
        assert_eq!(c.matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(c.a(0, 1), -1);
        assert_eq!(c.a(1, 0), -2);
        let b = CartanDatum::new(Family::B, 2).unwrap();
        assert_eq!(b.a(0, 1), -2);
        assert_eq!(c.braid_order(0, 1), 4);
    }

    #[test]
    fn g2_rejected() {
        assert!(matches!("G".parse::<Family>(), Err(Error::UnsupportedType { .. })));
        assert!(CartanDatum::from_label("G2").is_err());
        assert!(CartanDatum::from_matrix("G2", vec![vec![2, -1], vec![-3, 2]]).is_err());
    }

    #[test]
    fn small_ranks_rejected() {
        assert!(CartanDatum::new(Family::D, 2).is_err());
        assert!(CartanDatum::new(Family::B, 1).is_err());
        assert!(CartanDatum::new(Family::A, 0).is_err());
        assert!(CartanDatum::new(Family::D, 3).is_ok());
    }

    #[test]
    fn d4_fork() {
        let d = CartanDatum::new(Family::D, 4).unwrap();
        assert_eq!(d.a(1, 3), -1);
        assert_eq!(d.a(2, 3), 0);
        assert_eq!(d.a(1, 2), -1);
    }

    #[test]
    fn product_matrix() {
        let c = CartanDatum::from_matrix("A1xA1", vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(c.braid_order(0, 1), 2);
        assert!(CartanDatum::from_matrix("bad", vec![vec![2, -1], vec![0, 2]]).is_err());
    }
}
