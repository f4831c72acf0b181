//! Exact sparse linear algebra over the rationals.
//!
//! [`Echelon`] keeps an incrementally built reduced row echelon form. It backs
//! span membership (carrier closure), coordinate extraction in non-standard
//! bases (dual structure) and the enlargement solver.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::accumulate;
use crate::rational::{self, Rational};

pub type SparseVec = BTreeMap<usize, Rational>;

fn axpy(target: &mut SparseVec, c: &Rational, x: &SparseVec) {
    for (k, v) in x {
        accumulate(target, *k, -(c * v));
    }
}

#[derive(Debug, Clone)]
struct Row {
    v: SparseVec,
    /// The row as a combination of the inserted vectors (empty unless tracking).
    combo: SparseVec,
}

/// Reduced row echelon form built one vector at a time. Pivots are the
/// smallest column of each row, normalized to one.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivot_row: BTreeMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Result of reducing a vector against the current rows.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub residual: SparseVec,
    /// `v - residual` expressed over the inserted vectors (tracking only).
    pub combo: SparseVec,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon form that remembers how each row was combined from the inserted
    /// vectors, enabling [`Echelon::express`].
    pub fn tracking() -> Self {
        Self {
            track: true,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The reduced rows, in insertion order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.iter().map(|r| &r.v)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut residual = v.clone();
        let mut combo = SparseVec::new();
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter(|(k, _)| self.pivot_row.contains_key(k))
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        // Rows are fully reduced, so subtracting one never creates entries in
        // another pivot column; the coefficients read up front stay valid.
        for (col, _) in hits {
            let Some(c) = residual.get(&col).cloned() else {
                continue;
            };
            let row = &self.rows[self.pivot_row[&col]];
            axpy(&mut residual, &c, &row.v);
            if self.track {
                for (k, w) in &row.combo {
                    accumulate(&mut combo, *k, &c * w);
                }
            }
        }
        Reduction { residual, combo }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).residual.is_empty()
    }

    /// Inserts `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let Reduction { residual, combo } = self.reduce(v);
        let Some((&pivot, lead)) = residual.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let mut row_v: SparseVec = residual.iter().map(|(k, c)| (*k, c * &inv)).collect();
        row_v.insert(pivot, Rational::one());
        let mut row_combo = SparseVec::new();
        if self.track {
            // row = (v - combo) / lead
            row_combo.insert(idx, inv.clone());
            for (k, w) in &combo {
                accumulate(&mut row_combo, *k, -(w * &inv));
            }
        }
        for other in &mut self.rows {
            if let Some(c) = other.v.get(&pivot).cloned() {
                axpy(&mut other.v, &c, &row_v);
                if self.track {
                    axpy(&mut other.combo, &c, &row_combo);
                }
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(Row {
            v: row_v,
            combo: row_combo,
        });
        true
    }

    /// Coefficients of `v` over the inserted vectors, if `v` lies in their span.
    /// Requires a tracking echelon.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        debug_assert!(self.track, "express needs a tracking echelon");
        let red = self.reduce(v);
        red.residual.is_empty().then_some(red.combo)
    }
}

/// Solution set `particular + span(nullspace)` of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

impl LinearSolution {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

/// A linear system `sum_i a_i x_i = b` in `nvars` unknowns, filled equation by
/// equation and reduced as it grows.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    nvars: usize,
    echelon: Echelon,
    equations: usize,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            echelon: Echelon::new(),
            equations: 0,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equation_count(&self) -> usize {
        self.equations
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn add_equation(&mut self, coeffs: &SparseVec, rhs: &Rational) {
        debug_assert!(coeffs.keys().all(|&k| k < self.nvars));
        let mut row = coeffs.clone();
        accumulate(&mut row, self.nvars, rhs.clone());
        self.equations += 1;
        self.echelon.insert(&row);
    }

    pub fn is_consistent(&self) -> bool {
        !self.echelon.pivot_row.contains_key(&self.nvars)
    }

    pub fn solve(&self) -> Result<LinearSolution> {
        if !self.is_consistent() {
            return Err(Error::Inconsistent(format!(
                "{} equations in {} unknowns reduce to 0 = 1",
                self.equations, self.nvars
            )));
        }
        let mut particular = vec![Rational::zero(); self.nvars];
        for (&col, &r) in &self.echelon.pivot_row {
            particular[col] = self.echelon.rows[r]
                .v
                .get(&self.nvars)
                .cloned()
                .unwrap_or_else(Rational::zero);
        }
        let free: Vec<usize> = (0..self.nvars)
            .filter(|c| !self.echelon.pivot_row.contains_key(c))
            .collect();
        let nullspace = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.nvars];
                v[f] = Rational::one();
                for (&col, &r) in &self.echelon.pivot_row {
                    if let Some(c) = self.echelon.rows[r].v.get(&f) {
                        v[col] = -c.clone();
                    }
                }
                v
            })
            .collect();
        Ok(LinearSolution {
            particular,
            nullspace,
        })
    }
}

/// Kernel of the map whose rows are `rows` (each over `ncols` columns).
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<Vec<Rational>> {
    let mut sys = LinearSystem::new(ncols);
    for r in rows {
        sys.add_equation(r, &Rational::zero());
    }
    sys.solve()
        .expect("homogeneous systems are consistent")
        .nullspace
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

pub fn describe(v: &SparseVec) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|(k, c)| format!("x{}:{}", k, rational::format(c)))
        .collect();
    format!("[{}]", parts.join(", "))
}
