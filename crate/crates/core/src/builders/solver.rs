//! Exact solver for the enlargement Cartans `Ĥ_k`.
//!
//! Each `Ĥ_k` is parameterized over the whole Cartan subalgebra,
//! `Ĥ_k = Σ_j x_{kj} H_{j,j+1}`. The unknowns are fixed by the eigenvalue
//! conditions `θ_l(Ĥ_k) = c δ_kl` together with the vanishing of
//! `[[r_rch(Ĥ), r_J]] + [[r_J, r_rch(Ĥ)]]`, which is linear in `x`. The result is
//! then checked against the full CYBE, decomposed over `H_l^⊥`, and compared
//! with the closed form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{
    build_e_hat, build_extension, build_jordanian_links, half_rank, link_extension, theta_unit,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lie::{
    accumulate, cartan_h, chain_cartan, h_perp, hat_h_closed, LieElement, MatrixUnit,
};
use crate::linalg::{LinearSystem, SparseVec};
use crate::rational::{int, Rational};
use crate::tensor::{is_cybe_solution_with, mixed_schouten_with, wedge, BiTensor, TriKey};

/// The data an enlargement is solved against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnlargementInput {
    pub n: usize,
    /// Number of chain links (and of unknown Cartans).
    pub links: usize,
    pub extension: BiTensor,
    pub h_perp: Vec<LieElement>,
    pub e_hat: Vec<LieElement>,
    pub exploratory: bool,
}

impl EnlargementInput {
    /// The normative odd-`n` setting: `H_k^⊥` and `Ê_k(1…1)` as defined by the chain.
    pub fn odd(n: usize) -> Result<Self> {
        let m = half_rank(n)?;
        let ones = vec![Rational::one(); m];
        Ok(Self {
            n,
            links: m,
            extension: build_extension(n, &ones)?,
            h_perp: (1..=m).map(|k| h_perp(n, k)).collect::<Result<_>>()?,
            e_hat: build_e_hat(n, &ones)?,
            exploratory: false,
        })
    }

    pub fn r_j(&self) -> Result<BiTensor> {
        let mut out = BiTensor::zero(self.n);
        for (h, e) in self.h_perp.iter().zip(&self.e_hat) {
            out = &out + &wedge(h, e)?;
        }
        Ok(out)
    }
}

/// Exploratory even-`n` setting. The orthogonal roots are `α_{2k-1}`, `k < m`,
/// with paired coordinates `Ê_k = E_{2k,2k-1} + E_{n-2k+1,n-2k+2}`; each `H_k^⊥` is
/// solved from `θ_s(H) = 0` and `[H_k^⊥, Ê_l] = δ_kl Ê_l`.
pub fn even_default_enlargement(n: usize) -> Result<EnlargementInput> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Parse(format!(
            "exploratory even setting needs even n >= 4, got {n}"
        )));
    }
    let m = n / 2;
    let mut e_hat = Vec::new();
    for k in 1..m {
        let a = crate::lie::matrix_unit(n, 2 * k, 2 * k - 1)?;
        let b = crate::lie::matrix_unit(n, n - 2 * k + 1, n - 2 * k + 2)?;
        e_hat.push(&a + &b);
    }
    let h_perp = (0..e_hat.len())
        .map(|k| solve_h_perp(n, m, &e_hat, k))
        .collect::<Result<Vec<_>>>()?;
    let mut extension = BiTensor::zero(n);
    for k in 1..=m {
        extension = &extension + &link_extension(n, k)?;
    }
    Ok(EnlargementInput {
        n,
        links: m,
        extension,
        h_perp,
        e_hat,
        exploratory: true,
    })
}

fn solve_h_perp(n: usize, links: usize, e_hat: &[LieElement], k: usize) -> Result<LieElement> {
    let mut sys = LinearSystem::new(n);
    let diff = |a: usize, b: usize| -> SparseVec {
        let mut v = SparseVec::new();
        accumulate(&mut v, a - 1, int(1));
        accumulate(&mut v, b - 1, int(-1));
        v
    };
    sys.add_equation(
        &(0..n).map(|i| (i, Rational::one())).collect(),
        &Rational::zero(),
    );
    for s in 1..=links {
        sys.add_equation(&diff(s, n - s + 1), &Rational::zero());
    }
    for (l, e) in e_hat.iter().enumerate() {
        let target = if l == k {
            Rational::one()
        } else {
            Rational::zero()
        };
        for (u, _) in e.off_diagonal() {
            sys.add_equation(&diff(u.i, u.j), &target);
        }
    }
    let sol = sys.solve().map_err(|_| {
        Error::Inconsistent(format!(
            "no Cartan element H_{}^perp is orthogonal to every theta and acts diagonally on the chosen coordinates",
            k + 1
        ))
    })?;
    if !sol.is_unique() {
        return Err(Error::Inconsistent(format!(
            "H_{}^perp is not fixed by the orthogonality conditions ({} free parameters)",
            k + 1,
            sol.nullspace.len()
        )));
    }
    LieElement::diagonal(&sol.particular)
}

/// Comparison of the solved `Ĥ_k` with the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormComparison {
    /// Every `Ĥ_k` equals `scale · closed_k` for one common scale.
    pub agrees: bool,
    pub scale: Option<Rational>,
    /// 1-based indices `k` whose `Ĥ_k` is not a multiple of the closed form.
    pub mismatched: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnlargementSolution {
    pub n: usize,
    pub exploratory: bool,
    /// Eigenvalue `c` in `[Ĥ_k, E_{θ_l}] = c δ_kl E_{θ_l}`.
    pub normalization_c: Rational,
    /// Every scaling tried, with whether its system was consistent.
    pub normalizations_tried: Vec<(Rational, bool)>,
    pub hat_h: Vec<LieElement>,
    /// `γ_kl` in `Ĥ_k = H_{k,n-k+1}/2 + Σ_l γ_kl H_l^⊥`, when `Ĥ_k` lies in that span.
    pub gamma: Option<Vec<Vec<Rational>>>,
    pub unique: bool,
    pub solution_space_dim: usize,
    pub cybe_holds: bool,
    pub closed_form: Option<ClosedFormComparison>,
    pub h_perp: Vec<LieElement>,
    pub e_hat: Vec<LieElement>,
}

fn cache() -> &'static Mutex<HashMap<usize, EnlargementSolution>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, EnlargementSolution>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Solves the normative odd-`n` enlargement. Results are memoized per `n`.
pub fn solve_enlargement(n: usize) -> Result<EnlargementSolution> {
    if let Some(sol) = cache().lock().expect("cache poisoned").get(&n) {
        return Ok(sol.clone());
    }
    let sol = solve_enlargement_with(n, Execution::default())?;
    cache()
        .lock()
        .expect("cache poisoned")
        .insert(n, sol.clone());
    Ok(sol)
}

pub fn solve_enlargement_with(n: usize, exec: Execution) -> Result<EnlargementSolution> {
    solve_enlargement_generic(&EnlargementInput::odd(n)?, exec)
}

/// `θ_l(H_{j,j+1})` for `θ_l = e_l - e_{n-l+1}`.
fn theta_on_simple(n: usize, l: usize, j: usize) -> i64 {
    let ind = |a: usize, b: usize| i64::from(a == b);
    let r = n - l + 1;
    ind(j, l) - ind(j + 1, l) - ind(j, r) + ind(j + 1, r)
}

struct Equations {
    tri_rows: BTreeMap<TriKey, SparseVec>,
    base: BTreeMap<TriKey, Rational>,
}

fn cybe_equations(input: &EnlargementInput, r_j: &BiTensor, exec: Execution) -> Result<Equations> {
    let n = input.n;
    let unknowns: Vec<(usize, usize)> = (1..=input.links)
        .flat_map(|k| (1..n).map(move |j| (k, j)))
        .collect();
    let columns = exec.map(&unknowns, |&(k, j)| -> Result<_> {
        let t = wedge(&cartan_h(n, j, j + 1)?, &theta_unit(n, k)?)?;
        mixed_schouten_with(&t, r_j, Execution::Sequential)
    });
    let mut tri_rows: BTreeMap<TriKey, SparseVec> = BTreeMap::new();
    for (u, col) in columns.into_iter().enumerate() {
        for (key, c) in col?.terms() {
            tri_rows.entry(*key).or_default().insert(u, c.clone());
        }
    }
    let base = mixed_schouten_with(&input.extension, r_j, exec)?
        .terms()
        .clone();
    Ok(Equations { tri_rows, base })
}

fn solve_for_c(
    input: &EnlargementInput,
    eqs: &Equations,
    c: &Rational,
) -> Result<crate::linalg::LinearSolution> {
    let n = input.n;
    let mut sys = LinearSystem::new(input.links * (n - 1));
    for k in 1..=input.links {
        for l in 1..=input.links {
            let mut row = SparseVec::new();
            for j in 1..n {
                let v = theta_on_simple(n, l, j);
                if v != 0 {
                    row.insert((k - 1) * (n - 1) + j - 1, int(v));
                }
            }
            let rhs = if k == l { c.clone() } else { Rational::zero() };
            sys.add_equation(&row, &rhs);
        }
    }
    for (key, row) in &eqs.tri_rows {
        let rhs = eqs
            .base
            .get(key)
            .map(|b| -b.clone())
            .unwrap_or_else(Rational::zero);
        sys.add_equation(row, &rhs);
    }
    for (key, b) in &eqs.base {
        if !eqs.tri_rows.contains_key(key) {
            sys.add_equation(&SparseVec::new(), &-b.clone());
        }
    }
    sys.solve()
}

fn decompose_gamma(
    input: &EnlargementInput,
    hat_h: &[LieElement],
) -> Result<Option<Vec<Vec<Rational>>>> {
    let n = input.n;
    let mut gamma = Vec::new();
    for (k, h) in hat_h.iter().enumerate() {
        let target = h - &chain_cartan(n, k + 1, n - k)?;
        let mut sys = LinearSystem::new(input.h_perp.len());
        for v in 1..=n {
            let row: SparseVec = input
                .h_perp
                .iter()
                .enumerate()
                .filter_map(|(l, p)| {
                    let e = p.entry(v, v);
                    (!e.is_zero()).then_some((l, e))
                })
                .collect();
            sys.add_equation(&row, &target.entry(v, v));
        }
        match sys.solve() {
            Ok(sol) if sol.is_unique() => gamma.push(sol.particular),
            _ => return Ok(None),
        }
    }
    Ok(Some(gamma))
}

fn compare_closed(n: usize, hat_h: &[LieElement]) -> Result<ClosedFormComparison> {
    let mut scale: Option<Rational> = None;
    let mut mismatched = Vec::new();
    let mut common = true;
    for (k, h) in hat_h.iter().enumerate() {
        let closed = hat_h_closed(n, k + 1)?;
        let s = closed
            .iter()
            .next()
            .map(|(u, c)| h.entry(u.i, u.j) / c)
            .unwrap_or_else(Rational::zero);
        if closed.scale(&s) != *h {
            mismatched.push(k + 1);
            continue;
        }
        match &scale {
            None => scale = Some(s),
            Some(prev) if *prev != s => common = false,
            _ => {}
        }
    }
    let agrees = mismatched.is_empty() && common;
    Ok(ClosedFormComparison {
        agrees,
        scale: if agrees { scale } else { None },
        mismatched,
    })
}

/// Solves an enlargement for arbitrary `H_k^⊥` / `Ê_k` data.
pub fn solve_enlargement_generic(
    input: &EnlargementInput,
    exec: Execution,
) -> Result<EnlargementSolution> {
    let n = input.n;
    let r_j = input.r_j()?;
    let eqs = cybe_equations(input, &r_j, exec)?;

    let mut tried = Vec::new();
    let mut chosen = None;
    for c in [int(1), int(2)] {
        match solve_for_c(input, &eqs, &c) {
            Ok(sol) => {
                tried.push((c.clone(), true));
                if chosen.is_none() {
                    chosen = Some((c, sol));
                }
            }
            Err(_) => tried.push((c, false)),
        }
    }
    let Some((c, sol)) = chosen else {
        return Err(Error::Inconsistent(format!(
            "enlargement conditions for n = {n} have no solution for c = 1 or c = 2"
        )));
    };

    let hat_h: Vec<LieElement> = (0..input.links)
        .map(|k| {
            let mut entries: BTreeMap<MatrixUnit, Rational> = BTreeMap::new();
            for j in 1..n {
                let x = &sol.particular[k * (n - 1) + j - 1];
                accumulate(&mut entries, MatrixUnit::new(j, j), x.clone());
                accumulate(&mut entries, MatrixUnit::new(j + 1, j + 1), -x.clone());
            }
            LieElement::from_map_unchecked(n, entries)
        })
        .collect();

    let ones = vec![Rational::one(); input.links];
    let r = &(&build_jordanian_links(n, &ones, &hat_h)? + &input.extension) + &r_j;
    let verdict = is_cybe_solution_with(&r, exec)?;
    if !verdict.holds {
        return Err(Error::Inconsistent(format!(
            "solved Cartans leave {} residual Schouten terms",
            verdict.residual_term_count
        )));
    }

    let closed_form = if input.exploratory {
        None
    } else {
        Some(compare_closed(n, &hat_h)?)
    };
    Ok(EnlargementSolution {
        n,
        exploratory: input.exploratory,
        normalization_c: c,
        normalizations_tried: tried,
        gamma: decompose_gamma(input, &hat_h)?,
        hat_h,
        unique: sol.is_unique(),
        solution_space_dim: sol.nullspace.len(),
        cybe_holds: verdict.holds,
        closed_form,
        h_perp: input.h_perp.clone(),
        e_hat: input.e_hat.clone(),
    })
}
