//! Builders for the chain family of r-matrices on `sl(n)`, `n = 2m + 1`.
//!
//! The Cartan leg of every Jordanian link is normalized to act with
//! eigenvalue one on its root vector: the chain symbol `H_{i,j}` is built as
//! [`chain_cartan`] `= (E_ii - E_jj)/2`, and the rotation uses `H̃_i^⊥ / 2`.
//! With the plain `E_ii - E_jj` the full chain fails the CYBE.

mod automorphism;
mod solver;

pub use automorphism::{apply_chain_automorphism, zone_factor, zone_table_divergence};
pub use solver::{
    even_default_enlargement, solve_enlargement, solve_enlargement_generic, solve_enlargement_with,
    ClosedFormComparison, EnlargementInput, EnlargementSolution,
};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{chain_cartan, h_perp, h_tilde_perp, matrix_unit, LieElement};
use crate::rational::{half, int, Rational};
use crate::tensor::{wedge, BiTensor};

/// `m = (n - 1) / 2` for odd `n >= 3`.
pub fn half_rank(n: usize) -> Result<usize> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::RequiresOddN { n });
    }
    Ok((n - 1) / 2)
}

fn check_arity(name: &'static str, values: &[Rational], expected: usize) -> Result<()> {
    if values.len() != expected {
        return Err(Error::Arity {
            name,
            expected,
            got: values.len(),
        });
    }
    Ok(())
}

/// Parameters `(n, ξ, ζ)` of the enlarged chain variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainParams {
    n: usize,
    xi: Vec<Rational>,
    zeta: Vec<Rational>,
}

impl ChainParams {
    /// Validates arities and that every ratio in `Ê_k(ξ)` is defined.
    pub fn new(n: usize, xi: Vec<Rational>, zeta: Vec<Rational>) -> Result<Self> {
        let m = half_rank(n)?;
        check_arity("xi", &xi, m)?;
        check_arity("zeta", &zeta, m)?;
        build_e_hat(n, &xi)?;
        Ok(Self { n, xi, zeta })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let m = half_rank(n)?;
        Self::new(n, vec![Rational::one(); m], vec![Rational::one(); m])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &[Rational] {
        &self.xi
    }

    pub fn zeta(&self) -> &[Rational] {
        &self.zeta
    }
}

/// `E_{k, n-k+1}`, the root vector of `θ_k`.
pub fn theta_unit(n: usize, k: usize) -> Result<LieElement> {
    matrix_unit(n, k, n - k + 1)
}

/// Extension part of link `k`: `Σ_{s=k+1}^{n-k} E_{k,s} ∧ E_{s,n-k+1}`.
pub fn link_extension(n: usize, k: usize) -> Result<BiTensor> {
    let mut out = BiTensor::zero(n);
    for s in (k + 1)..=(n - k) {
        let w = wedge(&matrix_unit(n, k, s)?, &matrix_unit(n, s, n - k + 1)?)?;
        out = &out + &w;
    }
    Ok(out)
}

/// `Σ_k ξ_k Σ_s E_{k,s} ∧ E_{s,n-k+1}` over the `xi.len()` leading links.
pub fn build_extension(n: usize, xi: &[Rational]) -> Result<BiTensor> {
    let mut out = BiTensor::zero(n);
    for (k, x) in xi.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        out = &out + &link_extension(n, k + 1)?.scale(x);
    }
    Ok(out)
}

/// `Σ_k ξ_k Ĥ_k ∧ E_{k,n-k+1}` for arbitrary Cartan legs.
pub fn build_jordanian_links(
    n: usize,
    xi: &[Rational],
    cartans: &[LieElement],
) -> Result<BiTensor> {
    check_arity("cartans", xi, cartans.len())?;
    let mut out = BiTensor::zero(n);
    for (k, (x, h)) in xi.iter().zip(cartans).enumerate() {
        if x.is_zero() {
            continue;
        }
        out = &out + &wedge(h, &theta_unit(n, k + 1)?)?.scale(x);
    }
    Ok(out)
}

/// The full chain `Σ_k ξ_k (H_{k,n-k+1} ∧ E_{k,n-k+1} + Σ_s E_{k,s} ∧ E_{s,n-k+1})`.
pub fn build_fch(n: usize, xi: &[Rational]) -> Result<BiTensor> {
    let m = half_rank(n)?;
    check_arity("xi", xi, m)?;
    let cartans = (1..=m)
        .map(|k| chain_cartan(n, k, n - k + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(&build_jordanian_links(n, xi, &cartans)? + &build_extension(n, xi)?)
}

/// The rotation `Σ_i ξ_i H̃_i^⊥ ∧ E_{i,n-i+1}`, with `H̃` halved to match the
/// chain normalization.
pub fn build_rotation(n: usize, xi: &[Rational]) -> Result<BiTensor> {
    let m = half_rank(n)?;
    check_arity("xi", xi, m)?;
    let cartans = (1..=m)
        .map(|i| Ok(h_tilde_perp(n, i)?.scale(&half())))
        .collect::<Result<Vec<_>>>()?;
    build_jordanian_links(n, xi, &cartans)
}

/// `r_fch + r_r`.
pub fn build_rch(n: usize, xi: &[Rational]) -> Result<BiTensor> {
    Ok(&build_fch(n, xi)? + &build_rotation(n, xi)?)
}

/// Index of the single-term coordinate `Ê_p`.
pub fn lone_index(m: usize) -> usize {
    if m % 2 == 1 {
        m.div_ceil(2)
    } else {
        (m + 2) / 2
    }
}

/// `ξ_num / ξ_den`, taken as zero whenever the numerator vanishes.
fn xi_ratio(xi: &[Rational], num: usize, den: usize) -> Result<Rational> {
    let a = &xi[num - 1];
    if a.is_zero() {
        return Ok(Rational::zero());
    }
    let b = &xi[den - 1];
    if b.is_zero() {
        return Err(Error::UndefinedRatio { num, den });
    }
    Ok(a / b)
}

/// The dual coordinates `Ê_1(ξ) … Ê_m(ξ)` on the negative simple roots `-α_{2k-1}`.
pub fn build_e_hat(n: usize, xi: &[Rational]) -> Result<Vec<LieElement>> {
    let m = half_rank(n)?;
    check_arity("xi", xi, m)?;
    let p = lone_index(m);
    (1..=m)
        .map(|k| {
            let lead = matrix_unit(n, 2 * k, 2 * k - 1)?;
            if k == p {
                return Ok(lead);
            }
            let ratio = if k < p {
                xi_ratio(xi, 2 * k - 1, 2 * k)?
            } else {
                xi_ratio(xi, n - 2 * k + 1, n - 2 * k + 2)?
            };
            let tail = matrix_unit(n, n - 2 * k + 1, n - 2 * k + 2)?;
            Ok(&lead + &tail.scale(&ratio))
        })
        .collect()
}

/// Additional Jordanian terms `Σ_k ζ_k H_k^⊥ ∧ Ê_k(ξ)`.
pub fn build_rj(n: usize, zeta: &[Rational], xi: &[Rational]) -> Result<BiTensor> {
    let m = half_rank(n)?;
    check_arity("zeta", zeta, m)?;
    let e_hat = build_e_hat(n, xi)?;
    let mut out = BiTensor::zero(n);
    for (k, (z, e)) in zeta.iter().zip(&e_hat).enumerate() {
        if z.is_zero() {
            continue;
        }
        out = &out + &wedge(&h_perp(n, k + 1)?, e)?.scale(z);
    }
    Ok(out)
}

/// The deformed `sl(3)` Jordanian term `H^⊥ ∧ (E_21 + 2 E_13)`.
pub fn build_dj_sl3() -> BiTensor {
    let e = &matrix_unit(3, 2, 1).expect("valid")
        + &matrix_unit(3, 1, 3).expect("valid").scale(&int(2));
    wedge(&h_perp(3, 1).expect("valid"), &e).expect("same n")
}

/// `Σ_l ξ_l Ĥ_l ∧ E_{l,n-l+1} + Σ_l ξ_l Σ_p E_{l,p} ∧ E_{p,n-l+1}`: the rotated
/// chain with the given enlargement Cartans.
pub fn build_rch_with_cartans(n: usize, xi: &[Rational], hat_h: &[LieElement]) -> Result<BiTensor> {
    let m = half_rank(n)?;
    check_arity("xi", xi, m)?;
    Ok(&build_jordanian_links(n, xi, hat_h)? + &build_extension(n, xi)?)
}

/// The enlarged chain with explicitly supplied `Ĥ_k`.
pub fn build_ech_with_cartans(params: &ChainParams, hat_h: &[LieElement]) -> Result<BiTensor> {
    let n = params.n;
    Ok(&build_rch_with_cartans(n, &params.xi, hat_h)? + &build_rj(n, &params.zeta, &params.xi)?)
}

/// The enlarged chain `r_ech(ξ, ζ)` with `Ĥ_k` taken from [`solve_enlargement`].
pub fn build_ech(params: &ChainParams) -> Result<BiTensor> {
    let sol = solve_enlargement(params.n)?;
    build_ech_with_cartans(params, &sol.hat_h)
}

/// The tensor families a file can be built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Fch,
    Rotation,
    Rch,
    RJ,
    Ech,
    /// `rch(3)` plus the deformed Jordanian term; the bare term is not a solution.
    Dj3,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Fch,
        Kind::Rotation,
        Kind::Rch,
        Kind::RJ,
        Kind::Ech,
        Kind::Dj3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Fch => "fch",
            Kind::Rotation => "rotation",
            Kind::Rch => "rch",
            Kind::RJ => "rJ",
            Kind::Ech => "ech",
            Kind::Dj3 => "dj3",
        }
    }

    /// Whether the family takes `ζ` parameters.
    pub fn uses_zeta(self) -> bool {
        matches!(self, Kind::RJ | Kind::Ech)
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// Builds `kind` at `n`; missing `ξ`/`ζ` default to all ones.
pub fn build_kind(
    kind: Kind,
    n: usize,
    xi: Option<Vec<Rational>>,
    zeta: Option<Vec<Rational>>,
) -> Result<BiTensor> {
    if kind == Kind::Dj3 && n != 3 {
        return Err(Error::FixedN {
            kind: "dj3",
            required: 3,
            got: n,
        });
    }
    let m = half_rank(n)?;
    let xi = xi.unwrap_or_else(|| vec![Rational::one(); m]);
    let zeta = zeta.unwrap_or_else(|| vec![Rational::one(); m]);
    check_arity("xi", &xi, m)?;
    match kind {
        Kind::Fch => build_fch(n, &xi),
        Kind::Rotation => build_rotation(n, &xi),
        Kind::Rch => build_rch(n, &xi),
        Kind::RJ => build_rj(n, &zeta, &xi),
        Kind::Ech => build_ech(&ChainParams::new(n, xi, zeta)?),
        Kind::Dj3 => Ok(&build_rch(3, &xi)? + &build_dj_sl3()),
    }
}
