//! Sparse tensors in `g ⊗ g` and `g ⊗ g ⊗ g`, the Schouten bracket and the cobracket.
//!
//! Legs are stored in the `gl(n)` matrix-unit basis, so a Cartan leg such as
//! `E_11 - E_22` occupies two diagonal keys. All brackets are evaluated unit by
//! unit; a leg sum that is traceless stays traceless.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lie::{accumulate, LieElement, MatrixUnit};
use crate::rational::{self, Rational};

pub type BiKey = (MatrixUnit, MatrixUnit);
pub type TriKey = (MatrixUnit, MatrixUnit, MatrixUnit);

/// A sparse element of `g ⊗ g`: `Σ c · E_ij ⊗ E_kl`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiTensor {
    n: usize,
    terms: BTreeMap<BiKey, Rational>,
}

/// A sparse element of `g ⊗ g ⊗ g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriTensor {
    n: usize,
    terms: BTreeMap<TriKey, Rational>,
}

/// Outcome of a CYBE check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CybeVerdict {
    pub holds: bool,
    pub residual_term_count: usize,
}

fn same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

fn check_unit(n: usize, u: MatrixUnit) -> Result<()> {
    if u.i == 0 || u.j == 0 || u.i > n || u.j > n {
        return Err(Error::IndexOutOfRange { n, i: u.i, j: u.j });
    }
    Ok(())
}

impl BiTensor {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a tensor from raw terms, summing duplicates. Each leg must be a
    /// valid `gl(n)` unit; tracelessness of the legs is checked by
    /// [`BiTensor::legs_traceless`], not here, because single diagonal units are
    /// legitimate pieces of a Cartan leg.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BiKey, Rational)>,
    {
        let mut map = BTreeMap::new();
        for ((a, b), c) in terms {
            check_unit(n, a)?;
            check_unit(n, b)?;
            accumulate(&mut map, (a, b), c);
        }
        Ok(Self { n, terms: map })
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &LieElement, b: &LieElement) -> Result<Self> {
        same_n(a.n(), b.n())?;
        let mut terms = BTreeMap::new();
        for (u, x) in a.iter() {
            for (v, y) in b.iter() {
                accumulate(&mut terms, (*u, *v), x * y);
            }
        }
        Ok(Self { n: a.n(), terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<BiKey, Rational> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: MatrixUnit, b: MatrixUnit) -> Rational {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            accumulate(&mut terms, *k, v.clone());
        }
        Ok(Self { n: self.n, terms })
    }

    pub fn swap_legs(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((*b, *a), c.clone()))
                .collect(),
        }
    }

    pub fn is_skew(&self) -> bool {
        self.terms
            .iter()
            .all(|((a, b), c)| self.terms.get(&(*b, *a)).is_some_and(|d| (c + d).is_zero()))
    }

    /// Whether contracting either leg with the identity gives zero, i.e. the
    /// tensor lies in `sl(n) ⊗ sl(n)`.
    pub fn legs_traceless(&self) -> bool {
        let mut left: BTreeMap<MatrixUnit, Rational> = BTreeMap::new();
        let mut right: BTreeMap<MatrixUnit, Rational> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            if a.is_diagonal() {
                accumulate(&mut left, *b, c.clone());
            }
            if b.is_diagonal() {
                accumulate(&mut right, *a, c.clone());
            }
        }
        left.is_empty() && right.is_empty()
    }

    fn pairs(&self) -> Vec<(MatrixUnit, MatrixUnit, Rational)> {
        self.terms
            .iter()
            .map(|((a, b), c)| (*a, *b, c.clone()))
            .collect()
    }
}

impl fmt::Display for BiTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*{}⊗{}", rational::format(c), a, b)?;
        }
        Ok(())
    }
}

impl Add for &BiTensor {
    type Output = BiTensor;
    fn add(self, rhs: &BiTensor) -> BiTensor {
        self.checked_add(rhs)
            .expect("dimension mismatch in BiTensor addition")
    }
}

impl Sub for &BiTensor {
    type Output = BiTensor;
    fn sub(self, rhs: &BiTensor) -> BiTensor {
        self + &(-rhs)
    }
}

impl Neg for &BiTensor {
    type Output = BiTensor;
    fn neg(self) -> BiTensor {
        self.scale(&-Rational::one())
    }
}

impl TriTensor {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<TriKey, Rational> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_n(self.n, other.n)?;
        Ok(Self {
            n: self.n,
            terms: merge(self.terms.clone(), other.terms.clone()),
        })
    }

    /// Human-readable rendering of one term.
    pub fn term_label(key: &TriKey, c: &Rational) -> String {
        format!("({})*{}⊗{}⊗{}", rational::format(c), key.0, key.1, key.2)
    }
}

impl Add for &TriTensor {
    type Output = TriTensor;
    fn add(self, rhs: &TriTensor) -> TriTensor {
        self.checked_add(rhs)
            .expect("dimension mismatch in TriTensor addition")
    }
}

fn merge<K: Ord>(
    mut a: BTreeMap<K, Rational>,
    mut b: BTreeMap<K, Rational>,
) -> BTreeMap<K, Rational> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, v) in b {
        accumulate(&mut a, k, v);
    }
    a
}

/// `a ∧ b = a ⊗ b - b ⊗ a`.
pub fn wedge(a: &LieElement, b: &LieElement) -> Result<BiTensor> {
    let ab = BiTensor::tensor(a, b)?;
    Ok(&ab - &ab.swap_legs())
}

/// Adds `c · [x, y]` for units `x, y` into the leg selected by `place`.
#[inline]
fn push_bracket(
    out: &mut BTreeMap<TriKey, Rational>,
    x: MatrixUnit,
    y: MatrixUnit,
    c: &Rational,
    place: impl Fn(MatrixUnit) -> TriKey,
) {
    let br = x.bracket(y);
    if br.is_zero() {
        return;
    }
    if let Some(u) = br.plus {
        accumulate(out, place(u), c.clone());
    }
    if let Some(u) = br.minus {
        accumulate(out, place(u), -c.clone());
    }
}

/// The bilinear pairing `S(r1, r2) = Σ [a,c]⊗b⊗d + a⊗[b,c]⊗d + a⊗c⊗[b,d]`
/// over terms `a⊗b` of `r1` and `c⊗d` of `r2`. `S(r, r) = [[r, r]]`.
fn pairing(r1: &BiTensor, r2: &BiTensor, exec: Execution) -> TriTensor {
    let left = r1.pairs();
    let right = r2.pairs();
    let terms = exec.map_reduce(
        left.len(),
        BTreeMap::new,
        |out, s| {
            let (a, b, x) = &left[s];
            for (c, d, y) in &right {
                let k = x * y;
                push_bracket(out, *a, *c, &k, |u| (u, *b, *d));
                push_bracket(out, *b, *c, &k, |u| (*a, u, *d));
                push_bracket(out, *b, *d, &k, |u| (*a, *c, u));
            }
        },
        merge,
    );
    TriTensor { n: r1.n, terms }
}

/// `[[r, r]]` with the default execution strategy.
pub fn schouten(r: &BiTensor) -> Result<TriTensor> {
    schouten_with(r, Execution::default())
}

pub fn schouten_with(r: &BiTensor, exec: Execution) -> Result<TriTensor> {
    if !r.is_skew() {
        return Err(Error::NotSkew);
    }
    Ok(pairing(r, r, exec))
}

/// Polarization `[[r1, r2]] + [[r2, r1]] = [[r1+r2]] - [[r1]] - [[r2]]`.
pub fn mixed_schouten(r1: &BiTensor, r2: &BiTensor) -> Result<TriTensor> {
    mixed_schouten_with(r1, r2, Execution::default())
}

pub fn mixed_schouten_with(r1: &BiTensor, r2: &BiTensor, exec: Execution) -> Result<TriTensor> {
    same_n(r1.n, r2.n)?;
    if !r1.is_skew() || !r2.is_skew() {
        return Err(Error::NotSkew);
    }
    let a = pairing(r1, r2, exec);
    let b = pairing(r2, r1, exec);
    Ok(&a + &b)
}

pub fn is_cybe_solution(r: &BiTensor) -> Result<CybeVerdict> {
    is_cybe_solution_with(r, Execution::default())
}

pub fn is_cybe_solution_with(r: &BiTensor, exec: Execution) -> Result<CybeVerdict> {
    let s = schouten_with(r, exec)?;
    Ok(CybeVerdict {
        holds: s.is_zero(),
        residual_term_count: s.term_count(),
    })
}

/// `δ_r(x) = [x ⊗ 1 + 1 ⊗ x, r]`.
pub fn cobracket(r: &BiTensor, x: &LieElement) -> Result<BiTensor> {
    same_n(r.n, x.n())?;
    let mut terms = BTreeMap::new();
    for ((a, b), c) in &r.terms {
        for (u, k) in x.iter() {
            let coeff = c * k;
            let ua = u.bracket(*a);
            if !ua.is_zero() {
                if let Some(v) = ua.plus {
                    accumulate(&mut terms, (v, *b), coeff.clone());
                }
                if let Some(v) = ua.minus {
                    accumulate(&mut terms, (v, *b), -coeff.clone());
                }
            }
            let ub = u.bracket(*b);
            if !ub.is_zero() {
                if let Some(v) = ub.plus {
                    accumulate(&mut terms, (*a, v), coeff.clone());
                }
                if let Some(v) = ub.minus {
                    accumulate(&mut terms, (*a, v), -coeff.clone());
                }
            }
        }
    }
    Ok(BiTensor { n: r.n, terms })
}

/// `(ad_x ⊗ 1 + 1 ⊗ ad_x) t`; the same leg action as [`cobracket`].
pub fn ad_action(x: &LieElement, t: &BiTensor) -> Result<BiTensor> {
    cobracket(t, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{bracket, cartan_h, chain_cartan, h_perp, matrix_unit};
    use crate::rational::{frac, int};

    fn e(n: usize, i: usize, j: usize) -> LieElement {
        matrix_unit(n, i, j).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let a = e(3, 1, 2);
        let b = e(3, 2, 3);
        assert!(wedge(&a, &a).unwrap().is_zero());
        let w = wedge(&a, &b).unwrap();
        assert_eq!(w.term_count(), 2);
        assert_eq!(
            w.coeff(MatrixUnit::new(1, 2), MatrixUnit::new(2, 3)),
            int(1)
        );
        assert_eq!(
            w.coeff(MatrixUnit::new(2, 3), MatrixUnit::new(1, 2)),
            int(-1)
        );
        assert!((&w + &wedge(&b, &a).unwrap()).is_zero());
        assert!(w.is_skew());
        assert!(matches!(
            wedge(&a, &e(4, 1, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn jordanian_solves_cybe() {
        let h = chain_cartan(3, 1, 3).unwrap();
        let x = e(3, 1, 3);
        assert_eq!(bracket(&h, &x).unwrap(), x);
        let r = wedge(&h, &x).unwrap();
        assert!(schouten(&r).unwrap().is_zero());
        // Any Cartan leg works for a single Jordanian-type wedge h∧e with [h,e] ∝ e.
        let r2 = wedge(&cartan_h(3, 1, 3).unwrap(), &x).unwrap();
        assert!(schouten(&r2).unwrap().is_zero());
    }

    #[test]
    fn naive_enlargement_of_sl3_fails() {
        let h = chain_cartan(3, 1, 2).unwrap().scale(&int(2));
        let rch = &wedge(&h, &e(3, 1, 3)).unwrap() + &wedge(&e(3, 1, 2), &e(3, 2, 3)).unwrap();
        assert!(schouten(&rch).unwrap().is_zero());
        let rj = wedge(&h_perp(3, 1).unwrap(), &e(3, 2, 1)).unwrap();
        assert!(!schouten(&(&rch + &rj)).unwrap().is_zero());
    }

    #[test]
    fn non_skew_rejected() {
        let t = BiTensor::tensor(&e(3, 1, 2), &e(3, 2, 3)).unwrap();
        assert_eq!(schouten(&t), Err(Error::NotSkew));
    }

    #[test]
    fn zero_tensor_solves() {
        let v = is_cybe_solution(&BiTensor::zero(5)).unwrap();
        assert!(v.holds);
        assert_eq!(v.residual_term_count, 0);
    }

    #[test]
    fn polarization() {
        let r1 = wedge(&e(3, 1, 2), &e(3, 2, 1)).unwrap();
        let r2 = wedge(&cartan_h(3, 1, 2).unwrap(), &e(3, 2, 3)).unwrap();
        let m = mixed_schouten(&r1, &r2).unwrap();
        let full = schouten(&(&r1 + &r2)).unwrap();
        let expect = &(&full + &schouten(&r1).unwrap().scale(&int(-1)))
            + &schouten(&r2).unwrap().scale(&int(-1));
        assert_eq!(m, expect);
        assert_eq!(
            mixed_schouten(&r1, &r1).unwrap(),
            schouten(&r1).unwrap().scale(&int(2))
        );
        assert!(mixed_schouten(&r1, &BiTensor::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn execution_strategies_agree() {
        let r = &wedge(&e(4, 1, 2), &e(4, 3, 1)).unwrap()
            + &wedge(&cartan_h(4, 2, 4).unwrap(), &e(4, 2, 3))
                .unwrap()
                .scale(&frac(3, 7));
        assert_eq!(
            schouten_with(&r, Execution::Sequential).unwrap(),
            schouten_with(&r, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn cobracket_cases() {
        assert!(cobracket(&BiTensor::zero(3), &e(3, 1, 2))
            .unwrap()
            .is_zero());
        // δ(x) for r = h∧e and x = e: [e,h]⊗e + h⊗[e,e] - ... = -e∧e... = 0 part
        let h = chain_cartan(3, 1, 3).unwrap();
        let x = e(3, 1, 3);
        let r = wedge(&h, &x).unwrap();
        let d = cobracket(&r, &h).unwrap();
        // [h, h∧e] = h∧[h,e] = h∧e
        assert_eq!(d, r);
        assert!(cobracket(&r, &e(3, 2, 1)).unwrap().is_skew());
    }

    #[test]
    fn legs_traceless_detects_gl_legs() {
        let good = wedge(&cartan_h(3, 1, 2).unwrap(), &e(3, 1, 3)).unwrap();
        assert!(good.legs_traceless());
        let bad = BiTensor::from_terms(
            3,
            [
                ((MatrixUnit::new(1, 1), MatrixUnit::new(1, 2)), int(1)),
                ((MatrixUnit::new(1, 2), MatrixUnit::new(1, 1)), int(-1)),
            ],
        )
        .unwrap();
        assert!(!bad.legs_traceless());
    }
}
