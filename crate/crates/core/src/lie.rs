//! The Lie algebra `sl(n)` in the matrix-unit basis.
//!
//! Elements are sparse `n x n` matrices with exact rational entries and zero
//! trace. Diagonal (Cartan) elements are stored as full diagonal matrices, so
//! `H_{i,j}`, `H_k^perp` and the chain Cartans compare entry-wise.
//!
//! Indices are 1-based everywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, frac, half, int, Rational};

/// The matrix unit `E_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixUnit {
    pub i: usize,
    pub j: usize,
}

impl MatrixUnit {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }

    /// Product of two units: `E_ij E_kl = delta_jk E_il`.
    #[inline]
    pub fn compose(self, other: MatrixUnit) -> Option<MatrixUnit> {
        (self.j == other.i).then_some(MatrixUnit::new(self.i, other.j))
    }

    /// `[E_ij, E_kl] = delta_jk E_il - delta_li E_kj`, as at most two signed units.
    #[inline]
    pub fn bracket(self, other: MatrixUnit) -> UnitBracket {
        UnitBracket {
            plus: self.compose(other),
            minus: other.compose(self),
        }
    }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E[{},{}]", self.i, self.j)
    }
}

/// Result of bracketing two matrix units. The two parts cancel when both are
/// the same diagonal unit.
#[derive(Debug, Clone, Copy)]
pub struct UnitBracket {
    pub plus: Option<MatrixUnit>,
    pub minus: Option<MatrixUnit>,
}

impl UnitBracket {
    pub fn is_zero(&self) -> bool {
        match (self.plus, self.minus) {
            (None, None) => true,
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

/// A traceless `n x n` matrix with sparse exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    n: usize,
    entries: BTreeMap<MatrixUnit, Rational>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Builds an element from arbitrary entries, summing duplicates. Fails if any
    /// index is out of range or the trace is nonzero.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MatrixUnit, Rational)>,
    {
        let mut map: BTreeMap<MatrixUnit, Rational> = BTreeMap::new();
        for (u, c) in entries {
            check_index(n, u.i, u.j)?;
            accumulate(&mut map, u, c);
        }
        let out = Self { n, entries: map };
        let tr = out.trace();
        if !tr.is_zero() {
            return Err(Error::NotTraceless {
                trace: rational::format(&tr),
            });
        }
        Ok(out)
    }

    /// Diagonal element with the given entries (length `n`, summing to zero).
    pub fn diagonal(values: &[Rational]) -> Result<Self> {
        let n = values.len();
        Self::from_entries(
            n,
            values
                .iter()
                .enumerate()
                .map(|(k, v)| (MatrixUnit::new(k + 1, k + 1), v.clone())),
        )
    }

    pub(crate) fn from_map_unchecked(n: usize, entries: BTreeMap<MatrixUnit, Rational>) -> Self {
        debug_assert!(entries.values().all(|v| !v.is_zero()));
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<MatrixUnit, Rational> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MatrixUnit, &Rational)> {
        self.entries.iter()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        self.entries
            .get(&MatrixUnit::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> Rational {
        self.entries
            .iter()
            .filter(|(u, _)| u.is_diagonal())
            .fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|u| u.is_diagonal())
    }

    /// Diagonal entries `h_11 .. h_nn` (zeros included).
    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (1..=self.n).map(|i| self.entry(i, i)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            entries: self.entries.iter().map(|(u, v)| (*u, v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_n(self.n, other.n)?;
        let mut entries = self.entries.clone();
        for (u, c) in &other.entries {
            accumulate(&mut entries, *u, c.clone());
        }
        Ok(Self { n: self.n, entries })
    }

    /// Matrix product `self * other`. Not an `sl(n)` operation; the result is
    /// returned as raw entries.
    fn product(&self, other: &Self) -> BTreeMap<MatrixUnit, Rational> {
        let mut out = BTreeMap::new();
        for (a, x) in &self.entries {
            for (b, y) in other
                .entries
                .range(MatrixUnit::new(a.j, 0)..MatrixUnit::new(a.j + 1, 0))
            {
                if let Some(u) = a.compose(*b) {
                    accumulate(&mut out, u, x * y);
                }
            }
        }
        out
    }

    /// The off-diagonal part as a list of units with coefficients.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (&MatrixUnit, &Rational)> {
        self.entries.iter().filter(|(u, _)| !u.is_diagonal())
    }

    /// Human-readable form such as `E[2,1]+1/2*E[4,5]`.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (u, c)) in self.entries.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k > 0 {
                s.push(if neg { '-' } else { '+' });
            } else if neg {
                s.push('-');
            }
            if !abs.is_one() {
                s.push_str(&rational::format(&abs));
                s.push('*');
            }
            s.push_str(&u.to_string());
        }
        s
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        self.checked_add(rhs)
            .expect("dimension mismatch in LieElement addition")
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        self + &(-rhs)
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&-Rational::one())
    }
}

impl Mul<&LieElement> for &Rational {
    type Output = LieElement;
    fn mul(self, rhs: &LieElement) -> LieElement {
        rhs.scale(self)
    }
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { left: a, right: b });
    }
    Ok(())
}

fn check_index(n: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange { n, i, j });
    }
    Ok(())
}

fn half_rank(n: usize) -> Result<usize> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::RequiresOddN { n });
    }
    Ok((n - 1) / 2)
}

fn check_param(name: &'static str, k: usize, max: usize) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::ParameterIndex { name, k, max });
    }
    Ok(())
}

fn diag_from_fn(n: usize, f: impl Fn(usize) -> Rational) -> LieElement {
    let mut entries = BTreeMap::new();
    for v in 1..=n {
        accumulate(&mut entries, MatrixUnit::new(v, v), f(v));
    }
    LieElement { n, entries }
}

/// Off-diagonal matrix unit `E_{i,j}`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> Result<LieElement> {
    check_index(n, i, j)?;
    if i == j {
        return Err(Error::DiagonalUnit { i });
    }
    let mut entries = BTreeMap::new();
    entries.insert(MatrixUnit::new(i, j), Rational::one());
    Ok(LieElement { n, entries })
}

/// `H_{i,j} = E_ii - E_jj` for `i < j`.
pub fn cartan_h(n: usize, i: usize, j: usize) -> Result<LieElement> {
    check_index(n, i, j)?;
    if i >= j {
        return Err(Error::IndexOutOfRange { n, i, j });
    }
    let mut entries = BTreeMap::new();
    entries.insert(MatrixUnit::new(i, i), Rational::one());
    entries.insert(MatrixUnit::new(j, j), -Rational::one());
    Ok(LieElement { n, entries })
}

/// The Cartan element of a Jordanian chain link: `(E_ii - E_jj) / 2`, the
/// unique multiple of `H_{i,j}` acting on `E_{i,j}` with eigenvalue one.
pub fn chain_cartan(n: usize, i: usize, j: usize) -> Result<LieElement> {
    Ok(cartan_h(n, i, j)?.scale(&half()))
}

/// Commutator `xy - yx`.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    same_n(x.n, y.n)?;
    let mut entries = x.product(y);
    for (u, c) in y.product(x) {
        accumulate(&mut entries, u, -c);
    }
    Ok(LieElement { n: x.n, entries })
}

/// `H_k^perp`: the Cartan partner of the `k`-th additional Jordanian term, for odd `n`.
pub fn h_perp(n: usize, k: usize) -> Result<LieElement> {
    let m = half_rank(n)?;
    check_param("k", k, m)?;
    let base = frac(4 * k as i64 - 2, n as i64);
    Ok(diag_from_fn(n, |v| {
        let mut c = base.clone();
        for u in 1..=(2 * k - 1) {
            if v == u {
                c -= int(1);
            }
            if v == n - u + 1 {
                c -= int(1);
            }
        }
        c
    }))
}

/// `sum_{j=i}^{n-i} (-1)^{j+1} H_{j,j+1}`: the rotation Cartan of link `i`.
pub fn h_tilde_perp(n: usize, i: usize) -> Result<LieElement> {
    let m = half_rank(n)?;
    check_param("i", i, m)?;
    let mut entries = BTreeMap::new();
    for j in i..=(n - i) {
        let sign = if (j + 1) % 2 == 0 { int(1) } else { int(-1) };
        accumulate(&mut entries, MatrixUnit::new(j, j), sign.clone());
        accumulate(&mut entries, MatrixUnit::new(j + 1, j + 1), -sign);
    }
    Ok(LieElement { n, entries })
}

/// Closed-form enlargement Cartan `Ĥ_k` for odd `n`, evaluated term by term.
pub fn hat_h_closed(n: usize, k: usize) -> Result<LieElement> {
    let m = half_rank(n)?;
    check_param("k", k, m)?;
    let outer = if k % 2 == 1 { int(1) } else { int(-1) };
    let inner = outer.clone(); // (-1)^{k+1} appears twice
    let lead = frac(2 * k as i64 - 1, n as i64);
    let mirror = n - k + 1;
    Ok(diag_from_fn(n, |v| {
        let mut c = lead.clone();
        if v < k || v > n - k + 1 {
            c -= int(1);
        }
        if v == k {
            c += half() * (&inner - int(1));
        }
        if v == mirror {
            c += half() * (-&inner - int(1));
        }
        c * &outer
    }))
}

/// An integer vector in the orthonormal `e`-basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    pub coords: Vec<i64>,
}

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            coords: vec![0; len],
        }
    }

    /// `e_i - e_j` in dimension `len`.
    pub fn e_diff(len: usize, i: usize, j: usize) -> Self {
        let mut coords = vec![0; len];
        coords[i - 1] += 1;
        coords[j - 1] -= 1;
        Self { coords }
    }

    /// Root of the matrix unit `E_{i,j}` under the diagonal Cartan action.
    pub fn of_unit(n: usize, u: MatrixUnit) -> Self {
        if u.is_diagonal() {
            return Self::zero(n);
        }
        Self::e_diff(n, u.i, u.j)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &Self) -> i64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// `lambda(h) = sum_i lambda_i h_ii` for diagonal `h`.
pub fn root_eval(lambda: &RootVector, h: &LieElement) -> Result<Rational> {
    if !h.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if lambda.len() != h.n {
        return Err(Error::RootLength {
            root: lambda.len(),
            n: h.n,
        });
    }
    Ok(h.entries.iter().fold(Rational::zero(), |acc, (u, c)| {
        acc + c * int(lambda.coords[u.i - 1])
    }))
}

/// The basis `{E_ij : i != j} ∪ {H_{k,k+1}}` of `sl(n)` with a fixed ordering:
/// off-diagonal units in `(i,j)` order first, then the simple Cartans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlBasis {
    n: usize,
}

impl SlBasis {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n - 1
    }

    fn off_diag_count(&self) -> usize {
        self.n * (self.n - 1)
    }

    /// Index of an off-diagonal unit.
    pub fn unit_index(&self, u: MatrixUnit) -> Option<usize> {
        if u.is_diagonal() {
            return None;
        }
        let row = (u.i - 1) * (self.n - 1);
        let col = if u.j < u.i { u.j - 1 } else { u.j - 2 };
        Some(row + col)
    }

    pub fn cartan_index(&self, k: usize) -> usize {
        self.off_diag_count() + k - 1
    }

    /// `Some(unit)` for off-diagonal basis vectors, `None` for Cartans.
    pub fn unit_at(&self, idx: usize) -> Option<MatrixUnit> {
        if idx >= self.off_diag_count() {
            return None;
        }
        let i = idx / (self.n - 1) + 1;
        let c = idx % (self.n - 1) + 1;
        let j = if c < i { c } else { c + 1 };
        Some(MatrixUnit::new(i, j))
    }

    pub fn element(&self, idx: usize) -> LieElement {
        match self.unit_at(idx) {
            Some(u) => matrix_unit(self.n, u.i, u.j).expect("valid unit"),
            None => {
                let k = idx - self.off_diag_count() + 1;
                cartan_h(self.n, k, k + 1).expect("valid cartan")
            }
        }
    }

    pub fn label(&self, idx: usize) -> String {
        match self.unit_at(idx) {
            Some(u) => u.to_string(),
            None => {
                let k = idx - self.off_diag_count() + 1;
                format!("H[{},{}]", k, k + 1)
            }
        }
    }

    /// Coordinates of a single `gl(n)` unit. Diagonal units are mapped through
    /// the cumulative-sum map, which is exact on traceless combinations.
    pub fn unit_coords(&self, u: MatrixUnit) -> Vec<(usize, Rational)> {
        match self.unit_index(u) {
            Some(idx) => vec![(idx, Rational::one())],
            None => (u.i..self.n)
                .map(|k| (self.cartan_index(k), Rational::one()))
                .collect(),
        }
    }

    /// Coordinates of an element, sorted by index.
    pub fn coords(&self, x: &LieElement) -> Vec<(usize, Rational)> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (u, c) in &x.entries {
            for (idx, w) in self.unit_coords(*u) {
                accumulate(&mut out, idx, w * c);
            }
        }
        out.into_iter().collect()
    }

    pub fn from_coords<'a, I>(&self, coords: I) -> LieElement
    where
        I: IntoIterator<Item = (usize, &'a Rational)>,
    {
        let mut entries = BTreeMap::new();
        for (idx, c) in coords {
            match self.unit_at(idx) {
                Some(u) => accumulate(&mut entries, u, c.clone()),
                None => {
                    let k = idx - self.off_diag_count() + 1;
                    accumulate(&mut entries, MatrixUnit::new(k, k), c.clone());
                    accumulate(&mut entries, MatrixUnit::new(k + 1, k + 1), -c.clone());
                }
            }
        }
        LieElement { n: self.n, entries }
    }
}
