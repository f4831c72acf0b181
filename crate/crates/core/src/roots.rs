//! Classical root systems, their highest-root filtrations and the type I/II split.
//!
//! Starting from `V_0`, the span of all roots, the filtration repeatedly takes
//! the highest root `θ_k` among the roots still in `V_k` and passes to
//! `V_{k+1} = V_k ∩ θ_k^⊥`. Since the chosen roots are mutually orthogonal,
//! a root lies in `V_k` exactly when it is orthogonal to `θ_0 … θ_{k-1}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::RootVector;
use crate::linalg::{Echelon, SparseVec};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Parse(format!(
                "unknown series `{other}`, expected A, B, C or D"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeTag {
    I,
    II,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::I => "I",
            TypeTag::II => "II",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    pub roots: Vec<RootVector>,
    simple: Vec<RootVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaFiltration {
    pub thetas: Vec<RootVector>,
    /// `dim V_0, dim V_1, …, dim V_f`.
    pub subspace_dims: Vec<usize>,
    pub type_tag: TypeTag,
}

impl ThetaFiltration {
    pub fn f(&self) -> usize {
        self.thetas.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub type_tag: TypeTag,
    pub f: usize,
    /// `dim V_f`, the terminal space.
    pub dim_last: usize,
    /// `dim V_{f-1}`.
    pub dim_prev: usize,
}

fn unit(len: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = c;
    v
}

fn pm_pairs(len: usize, out: &mut Vec<RootVector>) {
    for i in 0..len {
        for j in (i + 1)..len {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; len];
                v[i] = a;
                v[j] = b;
                out.push(RootVector::new(v));
            }
        }
    }
}

/// The full root list of `series_rank` in orthonormal `e`-coordinates.
pub fn root_system(series: Series, rank: usize) -> Result<RootSystem> {
    let min = if series == Series::D { 2 } else { 1 };
    if rank < min {
        return Err(Error::UnsupportedRank {
            series: series.letter(),
            rank,
        });
    }
    let mut roots = Vec::new();
    let len = match series {
        Series::A => rank + 1,
        _ => rank,
    };
    match series {
        Series::A => {
            for i in 1..=len {
                for j in 1..=len {
                    if i != j {
                        roots.push(RootVector::e_diff(len, i, j));
                    }
                }
            }
        }
        Series::B | Series::C => {
            let c = if series == Series::B { 1 } else { 2 };
            for i in 0..len {
                roots.push(RootVector::new(unit(len, i, c)));
                roots.push(RootVector::new(unit(len, i, -c)));
            }
            pm_pairs(len, &mut roots);
        }
        Series::D => pm_pairs(len, &mut roots),
    }
    roots.sort();

    let mut simple: Vec<RootVector> = (1..len)
        .map(|i| RootVector::e_diff(len, i, i + 1))
        .collect();
    match series {
        Series::A => {}
        Series::B => simple.push(RootVector::new(unit(len, len - 1, 1))),
        Series::C => simple.push(RootVector::new(unit(len, len - 1, 2))),
        Series::D => {
            let mut v = vec![0; len];
            v[len - 2] = 1;
            v[len - 1] = 1;
            simple.push(RootVector::new(v));
        }
    }
    debug_assert_eq!(simple.len(), rank);
    Ok(RootSystem {
        series,
        rank,
        roots,
        simple,
    })
}

fn to_sparse(v: &RootVector) -> SparseVec {
    v.coords
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, c)| (k, int(*c)))
        .collect()
}

impl RootSystem {
    pub fn simple_roots(&self) -> &[RootVector] {
        &self.simple
    }

    fn simple_echelon(&self) -> Echelon {
        let mut ech = Echelon::tracking();
        for s in &self.simple {
            ech.insert(&to_sparse(s));
        }
        ech
    }

    fn height_in(ech: &Echelon, root: &RootVector) -> i64 {
        let coeffs = ech
            .express(&to_sparse(root))
            .expect("roots lie in the span of the simple roots");
        let h = coeffs.values().fold(Rational::zero(), |acc, c| acc + c);
        h.to_integer().to_i64().expect("heights are small")
    }

    /// Height over the standard simple roots; positive roots have positive height.
    pub fn height(&self, root: &RootVector) -> i64 {
        Self::height_in(&self.simple_echelon(), root)
    }

    pub fn expected_count(&self) -> usize {
        let r = self.rank;
        match self.series {
            Series::A => r * (r + 1),
            Series::B | Series::C => 2 * r * r,
            Series::D => 2 * r * (r - 1),
        }
    }
}

/// The highest-root filtration with deterministic tie-breaking.
pub fn theta_filtration(rs: &RootSystem) -> ThetaFiltration {
    let ech = rs.simple_echelon();
    let mut heights: Vec<(i64, &RootVector)> = rs
        .roots
        .iter()
        .map(|r| (RootSystem::height_in(&ech, r), r))
        .collect();
    // Highest first; equal heights resolved by lexicographically largest coordinates.
    heights.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.cmp(a.1)));
    let mut thetas: Vec<RootVector> = Vec::new();
    let mut dims = vec![rs.rank];
    while let Some((_, theta)) = heights
        .iter()
        .find(|(_, r)| thetas.iter().all(|t| t.dot(r) == 0))
    {
        thetas.push((*theta).clone());
        dims.push(rs.rank - thetas.len());
    }
    let type_tag = if *dims.last().expect("nonempty") == 0 {
        TypeTag::II
    } else {
        TypeTag::I
    };
    ThetaFiltration {
        thetas,
        subspace_dims: dims,
        type_tag,
    }
}

pub fn classify_type(series: Series, rank: usize) -> Result<Classification> {
    let filt = theta_filtration(&root_system(series, rank)?);
    let dims = &filt.subspace_dims;
    Ok(Classification {
        type_tag: filt.type_tag,
        f: filt.f(),
        dim_last: dims[dims.len() - 1],
        dim_prev: dims[dims.len() - 2],
    })
}
