//! Gradings, primitivity and quasiprimitivity for chain-family duals.
//!
//! A chain-family tensor is a sum of Jordanian wedges `h_e ∧ e` (Cartan leg,
//! root vector) and extension wedges `E_μ ∧ E_ν`. Its dual generators are graded:
//!
//! - `e_θ*` of a Jordanian root vector: blue, grade 0;
//! - `h_e*`: blue, grade `-root(e)`;
//! - `E_μ*` of an extension pair `E_μ ∧ E_ν`: blue, grade `-ν`;
//! - `E_ξ*` outside the carrier: red, grade `ξ`;
//! - duals of the Cartan complement: red, grade 0.
//!
//! Red primal partners are reduced before the table scan: each red element
//! `x` is replaced by `x + c`, `c` a carrier element free of Jordanian root
//! vectors, so that `δ(x + c)` vanishes or lies in `W ⊗ g + g ⊗ W`
//! (`W` spanned by the Jordanian root vectors). Red duals do not change under
//! this, only the adapted basis that the structure table refers to.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{carrier, cartan_complement, Color, DualAlgebra};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lie::{matrix_unit, root_eval, LieElement, MatrixUnit, RootVector, SlBasis};
use crate::linalg::{Echelon, LinearSystem, SparseVec};
use crate::rational::Rational;
use crate::tensor::BiTensor;

/// The recognized structure of a chain-family tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    /// Jordanian root vectors with their Cartan legs, ordered by unit.
    pub jordanian: Vec<(MatrixUnit, LieElement)>,
    /// Extension partners; symmetric.
    pub partners: BTreeMap<MatrixUnit, MatrixUnit>,
}

/// How a red primal partner was reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Primitive,
    Quasiprimitive,
    Unreduced,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingViolation {
    pub left: String,
    pub right: String,
    pub target: String,
}

pub fn recognize_chain(r: &BiTensor) -> Result<ChainSpec> {
    let n = r.n();
    if !r.is_skew() {
        return Err(Error::NotSkew);
    }
    let mut legs: BTreeMap<MatrixUnit, Vec<Rational>> = BTreeMap::new();
    let mut partners: BTreeMap<MatrixUnit, MatrixUnit> = BTreeMap::new();
    for ((a, b), c) in r.terms() {
        match (a.is_diagonal(), b.is_diagonal()) {
            (true, true) => {
                return Err(Error::Unrecognized("Cartan-Cartan term".into()));
            }
            (true, false) => {
                legs.entry(*b).or_insert_with(|| vec![Rational::zero(); n])[a.i - 1] += c;
            }
            (false, true) => {}
            (false, false) => {
                for (x, y) in [(*a, *b), (*b, *a)] {
                    if let Some(prev) = partners.insert(x, y) {
                        if prev != y {
                            return Err(Error::Unrecognized(format!(
                                "{x} pairs with both {prev} and {y}"
                            )));
                        }
                    }
                }
            }
        }
    }
    let sl = SlBasis::new(n);
    let mut ech = Echelon::new();
    let mut jordanian = Vec::new();
    for (e, diag) in legs {
        if partners.contains_key(&e) {
            return Err(Error::Unrecognized(format!(
                "{e} is both a Jordanian root vector and an extension leg"
            )));
        }
        let h = LieElement::diagonal(&diag)
            .map_err(|_| Error::Unrecognized(format!("Cartan leg of {e} is not traceless")))?;
        if h.is_zero() {
            continue;
        }
        if !ech.insert(&super::carrier::coords(&sl, &h)) {
            return Err(Error::Unrecognized(format!(
                "Cartan leg of {e} depends on the other Jordanian legs"
            )));
        }
        jordanian.push((e, h));
    }
    Ok(ChainSpec {
        jordanian,
        partners,
    })
}

pub fn assign_gradings(r: &BiTensor) -> Result<DualAlgebra> {
    assign_gradings_with(r, Execution::default())
}

/// Builds the graded, reduced dual of a chain-family tensor.
pub fn assign_gradings_with(r: &BiTensor, exec: Execution) -> Result<DualAlgebra> {
    let n = r.n();
    let spec = recognize_chain(r)?;
    let car = carrier(r);
    let Some(g) = &car.grading else {
        return Err(Error::Unrecognized("carrier is not root-graded".into()));
    };
    if g.cartan.len() != spec.jordanian.len() {
        return Err(Error::Unrecognized(format!(
            "carrier has a {}-dimensional Cartan part but {} Jordanian legs",
            g.cartan.len(),
            spec.jordanian.len()
        )));
    }
    let jordan_units: BTreeSet<MatrixUnit> = spec.jordanian.iter().map(|(e, _)| *e).collect();

    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut colors = Vec::new();
    let mut grades = Vec::new();
    let mut zero_blue = Vec::new();
    for (e, h) in &spec.jordanian {
        basis.push(h.clone());
        labels.push(format!("h({e})*"));
        colors.push(Color::Blue);
        grades.push(RootVector::of_unit(n, *e).neg());
    }
    for u in &g.units {
        let grade = if jordan_units.contains(u) {
            zero_blue.push(basis.len());
            RootVector::zero(n)
        } else if let Some(p) = spec.partners.get(u) {
            RootVector::of_unit(n, *p).neg()
        } else {
            return Err(Error::Unrecognized(format!(
                "carrier unit {u} is not a leg of the chain"
            )));
        };
        basis.push(matrix_unit(n, u.i, u.j)?);
        labels.push(format!("{u}*"));
        colors.push(Color::Blue);
        grades.push(grade);
    }
    let sl = SlBasis::new(n);
    for idx in 0..sl.dim() {
        if let Some(u) = sl.unit_at(idx) {
            if !g.units.contains(&u) {
                basis.push(sl.element(idx));
                labels.push(format!("{u}*"));
                colors.push(Color::Red);
                grades.push(RootVector::of_unit(n, u));
            }
        }
    }
    let legs: Vec<LieElement> = spec.jordanian.iter().map(|(_, h)| h.clone()).collect();
    for (k, h) in cartan_complement(n, &legs).into_iter().enumerate() {
        basis.push(h);
        labels.push(format!("hperp[{}]*", k + 1));
        colors.push(Color::Red);
        grades.push(RootVector::zero(n));
    }

    let first = DualAlgebra::from_basis(r, basis, labels, colors, exec);
    let reduced = reduce_red(&first, &zero_blue, exec);
    let mut out =
        DualAlgebra::from_basis(r, reduced, first.labels.clone(), first.colors.clone(), exec);
    out.gradings = Some(grades);
    out.zero_blue = zero_blue;
    out.red_cartans = first.red_cartans.clone();
    Ok(out)
}

/// Finds `t` with `δ(x) + Σ t_u δ(b_u)` vanishing on every key accepted by `keep`.
fn correction(
    d: &DualAlgebra,
    x: usize,
    unknowns: &[usize],
    keep: impl Fn(&(usize, usize)) -> bool,
) -> Option<Vec<Rational>> {
    let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (col, u) in unknowns.iter().enumerate() {
        for (key, v) in d.cobracket_coords(*u) {
            if keep(key) {
                rows.entry(*key).or_default().insert(col, v.clone());
            }
        }
    }
    let mut sys = LinearSystem::new(unknowns.len());
    for (key, v) in d.cobracket_coords(x) {
        if keep(key) {
            sys.add_equation(&rows.remove(key).unwrap_or_default(), &-v.clone());
        }
    }
    for row in rows.values() {
        sys.add_equation(row, &Rational::zero());
    }
    sys.solve().ok().map(|s| s.particular)
}

fn reduce_red(d: &DualAlgebra, zero_blue: &[usize], exec: Execution) -> Vec<LieElement> {
    let w: BTreeSet<usize> = zero_blue.iter().copied().collect();
    let unknowns: Vec<usize> = d.blue().filter(|b| !w.contains(b)).collect();
    let red: Vec<usize> = d.red().collect();
    let fixes = exec.map(&red, |&x| {
        correction(d, x, &unknowns, |_| true)
            .or_else(|| correction(d, x, &unknowns, |(a, b)| !w.contains(a) && !w.contains(b)))
    });
    let mut basis = d.basis.clone();
    for (x, fix) in red.into_iter().zip(fixes) {
        if let Some(t) = fix {
            for (u, c) in unknowns.iter().zip(&t) {
                if !c.is_zero() {
                    basis[x] = &basis[x] + &d.basis[*u].scale(c);
                }
            }
        }
    }
    basis
}

/// Classifies each red generator of a reduced dual.
pub fn red_reductions(d: &DualAlgebra) -> Vec<(usize, Reduction)> {
    let w: BTreeSet<usize> = d.zero_blue.iter().copied().collect();
    d.red()
        .map(|x| {
            let cob = d.cobracket_coords(x);
            let kind = if cob.is_empty() {
                Reduction::Primitive
            } else if cob.keys().all(|(a, b)| w.contains(a) || w.contains(b)) {
                Reduction::Quasiprimitive
            } else {
                Reduction::Unreduced
            };
            (x, kind)
        })
        .collect()
}

/// Grades modulo the Jordanian roots `θ_s`: the `e_θ*` carry zero grade, so
/// the grading group is the root lattice with every `θ_s` identified with 0.
struct GradeQuotient {
    thetas: Echelon,
}

impl GradeQuotient {
    fn new(d: &DualAlgebra) -> Self {
        let mut thetas = Echelon::new();
        for k in &d.zero_blue {
            if let Some((u, _)) = d.basis[*k].iter().next() {
                thetas.insert(&Self::sparse(&RootVector::of_unit(d.n, *u)));
            }
        }
        Self { thetas }
    }

    fn sparse(g: &RootVector) -> SparseVec {
        g.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (k, Rational::from_integer((*c).into())))
            .collect()
    }

    fn class(&self, g: &RootVector) -> SparseVec {
        self.thetas.reduce(&Self::sparse(g)).residual
    }
}

/// Structure constants whose grades are not additive modulo the `θ_s`.
pub fn grading_consistency(d: &DualAlgebra) -> Vec<GradingViolation> {
    let Some(grades) = &d.gradings else {
        return Vec::new();
    };
    let q = GradeQuotient::new(d);
    let mut out = Vec::new();
    for ((a, b), v) in d.nonzero_brackets() {
        let sum = q.class(&grades[*a].add(&grades[*b]));
        for c in v.keys() {
            if q.class(&grades[*c]) != sum {
                out.push(GradingViolation {
                    left: d.labels[*a].clone(),
                    right: d.labels[*b].clone(),
                    target: d.labels[*c].clone(),
                });
            }
        }
    }
    out
}

fn appears_only_via(d: &DualAlgebra, w: &BTreeSet<usize>) -> Vec<bool> {
    let mut ok = vec![true; d.dim()];
    for ((a, b), v) in d.nonzero_brackets() {
        if w.contains(a) || w.contains(b) {
            continue;
        }
        for c in v.keys() {
            ok[*c] = false;
        }
    }
    ok
}

/// Red generators appearing in a bracket `[x*, y*]` only when `x*` or `y*` is
/// a zero-grade blue generator, together with every primitive generator.
pub fn quasiprimitive_set(d: &DualAlgebra) -> Vec<String> {
    let w: BTreeSet<usize> = d.zero_blue.iter().copied().collect();
    let prim = appears_only_via(d, &BTreeSet::new());
    appears_only_via(d, &w)
        .into_iter()
        .enumerate()
        .filter(|(k, ok)| prim[*k] || (*ok && d.colors[*k] == Color::Red))
        .map(|(k, _)| d.labels[k].clone())
        .collect()
}

/// Generators never appearing in any dual bracket.
pub fn primitive_set(d: &DualAlgebra) -> Vec<String> {
    appears_only_via(d, &BTreeSet::new())
        .into_iter()
        .enumerate()
        .filter(|(_, ok)| *ok)
        .map(|(k, _)| d.labels[k].clone())
        .collect()
}

/// Quasiprimitive but not primitive.
pub fn strictly_quasiprimitive(d: &DualAlgebra) -> Vec<String> {
    let prim: BTreeSet<String> = primitive_set(d).into_iter().collect();
    quasiprimitive_set(d)
        .into_iter()
        .filter(|l| !prim.contains(l))
        .collect()
}

/// Red generators whose grade cannot be reached in the grading diagram.
///
/// A red grade `λ` is reachable when `λ = ρ + β` for the grade `ρ` of another
/// red generator and a nonzero blue grade `β`, read as literal root-lattice
/// vectors as in the drawn diagram. From a red Cartan dual the shift only
/// counts when `β` does not vanish on the complement of the carrier Cartan.
pub fn diagram_quasiprimitive(d: &DualAlgebra) -> Result<Vec<String>> {
    let Some(grades) = &d.gradings else {
        return Err(Error::Unrecognized("gradings are not assigned".into()));
    };
    let cartan_idx: BTreeSet<usize> = d.red_cartans.iter().copied().collect();
    let red_points: BTreeSet<&RootVector> = d
        .red()
        .filter(|k| !cartan_idx.contains(k))
        .map(|k| &grades[k])
        .collect();
    // h_s^⊥: the trace-orthogonal complement of the carrier Cartan legs.
    let legs: Vec<LieElement> = d
        .blue()
        .map(|k| &d.basis[k])
        .filter(|b| b.is_diagonal() && !b.is_zero())
        .cloned()
        .collect();
    let h_perp = cartan_complement(d.n, &legs);
    let blue: Vec<&RootVector> = d
        .blue()
        .map(|k| &grades[k])
        .filter(|g| !g.is_zero())
        .collect();
    let acts = |beta: &RootVector| {
        h_perp
            .iter()
            .any(|h| !root_eval(beta, h).expect("diagonal").is_zero())
    };
    let reachable = |lambda: &RootVector| {
        blue.iter().any(|beta| {
            let rho = lambda.add(&beta.neg());
            if rho.is_zero() {
                !cartan_idx.is_empty() && acts(beta)
            } else {
                red_points.contains(&rho)
            }
        })
    };
    Ok(d.red()
        .filter(|k| !reachable(&grades[*k]))
        .map(|k| d.labels[k].clone())
        .collect())
}
