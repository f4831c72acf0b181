//! Diagonal automorphisms of the enlarged-chain carrier.
//!
//! Each parameter `ξ_i` or `ζ_i` rescales two index zones of matrix units, one
//! by the parameter and one by its inverse. A unit's factor is the product
//! over every zone it lies in; Cartan legs are never rescaled.

use std::ops::RangeInclusive;

use num_traits::{One, Zero};

use super::{build_ech_with_cartans, half_rank, ChainParams};
use crate::error::{Error, Result};
use crate::lie::MatrixUnit;
use crate::rational::Rational;
use crate::tensor::{BiKey, BiTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Param {
    Xi,
    Zeta,
}

struct Zone {
    param: Param,
    index: usize,
    inverse: bool,
    rows: RangeInclusive<usize>,
    cols: RangeInclusive<usize>,
}

impl Zone {
    fn name(&self) -> String {
        let p = match self.param {
            Param::Xi => "xi",
            Param::Zeta => "zeta",
        };
        format!("{p}_{}", self.index)
    }
}

fn zones(n: usize) -> Vec<Zone> {
    let m = (n - 1) / 2;
    let mut out = Vec::new();
    let mut push = |param, index, inverse, rows, cols| {
        out.push(Zone {
            param,
            index,
            inverse,
            rows,
            cols,
        })
    };
    for i in 1..=m {
        if i % 2 == 1 {
            push(Param::Xi, i, false, i..=n - i, n + 1 - i..=n);
            push(Param::Xi, i, true, 1..=i - 1, i..=n - i);
        } else {
            push(Param::Xi, i, false, 1..=i, i + 1..=n + 1 - i);
            push(Param::Xi, i, true, i + 1..=n + 1 - i, n + 2 - i..=n);
        }
    }
    for i in 1..=m {
        push(Param::Zeta, i, false, 2 * i..=2 * i, 2 * i - 1..=2 * i - 1);
        if 2 * i <= m + 1 {
            push(
                Param::Zeta,
                i,
                false,
                2 * i..=n - 2 * i + 1,
                n - 2 * i + 2..=n,
            );
            push(Param::Zeta, i, true, 1..=2 * i - 1, 2 * i..=n - 2 * i + 1);
        } else {
            push(
                Param::Zeta,
                i,
                false,
                1..=n - 2 * i + 1,
                n - 2 * i + 2..=2 * i - 1,
            );
            push(Param::Zeta, i, true, n - 2 * i + 2..=2 * i - 1, 2 * i..=n);
        }
    }
    out
}

/// Scale factor of the off-diagonal unit `E_{a,b}`; diagonal units get 1.
pub fn zone_factor(params: &ChainParams, u: MatrixUnit) -> Result<Rational> {
    if u.is_diagonal() {
        return Ok(Rational::one());
    }
    let mut f = Rational::one();
    for z in zones(params.n()) {
        if !z.rows.contains(&u.i) || !z.cols.contains(&u.j) {
            continue;
        }
        let v = match z.param {
            Param::Xi => &params.xi()[z.index - 1],
            Param::Zeta => &params.zeta()[z.index - 1],
        };
        if z.inverse {
            if v.is_zero() {
                return Err(Error::ZeroScale { zone: z.name() });
            }
            f /= v;
        } else {
            f *= v;
        }
    }
    Ok(f)
}

fn in_carrier(n: usize, u: MatrixUnit) -> bool {
    let m = (n - 1) / 2;
    u.i <= u.j || (1..=m).any(|k| u.i == 2 * k && u.j == 2 * k - 1)
}

/// Applies the zone rescaling to every leg of `r`.
pub fn apply_chain_automorphism(r: &BiTensor, params: &ChainParams) -> Result<BiTensor> {
    if r.n() != params.n() {
        return Err(Error::DimensionMismatch {
            left: r.n(),
            right: params.n(),
        });
    }
    half_rank(r.n())?;
    let mut terms: Vec<(BiKey, Rational)> = Vec::with_capacity(r.term_count());
    for ((a, b), c) in r.terms() {
        for u in [a, b] {
            if !in_carrier(r.n(), *u) {
                return Err(Error::OutsideCarrier {
                    unit: u.to_string(),
                });
            }
        }
        let f = zone_factor(params, *a)? * zone_factor(params, *b)?;
        terms.push(((*a, *b), c * f));
    }
    BiTensor::from_terms(r.n(), terms)
}

/// Keys where the zone image of `ech(1…1, 1…1)` differs from `ech(ξ, ζ)`.
/// An empty list certifies the zone tables for these parameters.
pub fn zone_table_divergence(
    params: &ChainParams,
    hat_h: &[crate::lie::LieElement],
) -> Result<Vec<BiKey>> {
    let base = build_ech_with_cartans(&ChainParams::ones(params.n())?, hat_h)?;
    let mapped = apply_chain_automorphism(&base, params)?;
    let want = build_ech_with_cartans(params, hat_h)?;
    Ok((&mapped - &want).terms().keys().copied().collect())
}
