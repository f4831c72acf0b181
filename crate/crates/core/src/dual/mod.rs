//! The dual Lie algebra `g^#(r)` of a coboundary bialgebra.
//!
//! For a basis `b_1 … b_N` of `sl(n)` with `δ_r(b_c) = Σ D^c_ab b_a ⊗ b_b`, the
//! dual basis satisfies `[b^a, b^b] = Σ_c D^c_ab b^c`. The basis is adapted to
//! the carrier: carrier elements first (blue duals), then a complement (red
//! duals). Red duals annihilate the carrier and span an abelian ideal.

mod carrier;
mod grading;

pub use carrier::{carrier, Carrier, RootGrading};
pub use grading::{
    assign_gradings, assign_gradings_with, diagram_quasiprimitive, grading_consistency,
    primitive_set, quasiprimitive_set, recognize_chain, red_reductions, strictly_quasiprimitive,
    ChainSpec, GradingViolation, Reduction,
};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exec::Execution;
use crate::lie::{accumulate, LieElement, MatrixUnit, RootVector, SlBasis};
use crate::linalg::{Echelon, LinearSystem, SparseVec};
use crate::rational::{int, one, Rational};
use crate::tensor::{cobracket, BiTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    /// Dual of a carrier element.
    Blue,
    /// Dual of a complement element; lies in the abelian ideal.
    Red,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
        }
    }
}

pub type PairKey = (usize, usize);

/// Structure constants of `g^#(r)` in an adapted dual basis.
#[derive(Debug, Clone)]
pub struct DualAlgebra {
    pub n: usize,
    /// Primal basis; generator `k` is the dual functional of `basis[k]`.
    pub basis: Vec<LieElement>,
    pub labels: Vec<String>,
    pub colors: Vec<Color>,
    /// Per-generator grading vectors, once assigned.
    pub gradings: Option<Vec<RootVector>>,
    /// Indices of red generators whose primal partner is a Cartan element.
    pub red_cartans: Vec<usize>,
    /// Indices of zero-grade blue generators (the `e_θ*`).
    pub zero_blue: Vec<usize>,
    /// `δ_r(basis[c])` in adapted coordinates.
    cob: Vec<BTreeMap<PairKey, Rational>>,
    /// `[a*, b*]` for `a < b`, nonzero entries only.
    table: BTreeMap<PairKey, SparseVec>,
}

/// Maps `gl(n)` units into coordinates over an adapted basis of `sl(n)`.
struct CoordMap {
    n: usize,
    units: Vec<SparseVec>,
}

impl CoordMap {
    fn new(basis: &[LieElement], n: usize) -> Self {
        let sl = SlBasis::new(n);
        let mut ech = Echelon::tracking();
        for b in basis {
            ech.insert(&carrier::coords(&sl, b));
        }
        let express = |x: &LieElement| {
            ech.express(&carrier::coords(&sl, x))
                .expect("adapted basis spans sl(n)")
        };
        let mut units = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let v = if i != j {
                    express(&crate::lie::matrix_unit(n, i, j).expect("valid"))
                } else if i < n {
                    // Any linear extension from sl(n) to gl(n) works on traceless legs.
                    let mut d = vec![Rational::zero(); n];
                    d[i - 1] = one();
                    d[n - 1] = int(-1);
                    express(&LieElement::diagonal(&d).expect("traceless"))
                } else {
                    SparseVec::new()
                };
                units.push(v);
            }
        }
        Self { n, units }
    }

    fn of(&self, u: MatrixUnit) -> &SparseVec {
        &self.units[(u.i - 1) * self.n + (u.j - 1)]
    }

    fn tensor(&self, t: &BiTensor) -> BTreeMap<PairKey, Rational> {
        let mut out = BTreeMap::new();
        for ((u, v), c) in t.terms() {
            let cu = self.of(*u);
            let cv = self.of(*v);
            for (a, x) in cu {
                let cx = c * x;
                for (b, y) in cv {
                    accumulate(&mut out, (*a, *b), &cx * y);
                }
            }
        }
        out
    }
}

impl DualAlgebra {
    /// Builds the dual structure of `r` over an explicit adapted basis.
    pub fn from_basis(
        r: &BiTensor,
        basis: Vec<LieElement>,
        labels: Vec<String>,
        colors: Vec<Color>,
        exec: Execution,
    ) -> Self {
        let n = r.n();
        debug_assert_eq!(basis.len(), n * n - 1);
        let map = CoordMap::new(&basis, n);
        let cob: Vec<BTreeMap<PairKey, Rational>> =
            exec.map(&basis, |x| map.tensor(&cobracket(r, x).expect("same n")));
        let mut table: BTreeMap<PairKey, SparseVec> = BTreeMap::new();
        for (c, d) in cob.iter().enumerate() {
            for ((a, b), v) in d {
                if a < b {
                    table.entry((*a, *b)).or_default().insert(c, v.clone());
                }
            }
        }
        let red_cartans = basis
            .iter()
            .enumerate()
            .filter(|(k, x)| colors[*k] == Color::Red && x.is_diagonal())
            .map(|(k, _)| k)
            .collect();
        Self {
            n,
            basis,
            labels,
            colors,
            gradings: None,
            red_cartans,
            zero_blue: Vec::new(),
            cob,
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn blue(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|k| self.colors[*k] == Color::Blue)
    }

    pub fn red(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|k| self.colors[*k] == Color::Red)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[a*, b*]` as coefficients over the dual basis.
    pub fn bracket(&self, a: usize, b: usize) -> SparseVec {
        if a == b {
            return SparseVec::new();
        }
        let (lo, hi, sign) = if a < b { (a, b, false) } else { (b, a, true) };
        match self.table.get(&(lo, hi)) {
            None => SparseVec::new(),
            Some(v) if sign => v.iter().map(|(k, c)| (*k, -c.clone())).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Nonzero brackets `[a*, b*]` with `a < b`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (&PairKey, &SparseVec)> {
        self.table.iter()
    }

    /// The primal cobracket of `basis[c]` in adapted coordinates.
    pub fn cobracket_coords(&self, c: usize) -> &BTreeMap<PairKey, Rational> {
        &self.cob[c]
    }

    fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, p) in x {
            for (b, q) in y {
                for (c, v) in self.bracket(*a, *b) {
                    accumulate(&mut out, c, p * q * v);
                }
            }
        }
        out
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> SparseVec {
        let e = |k: usize| -> SparseVec { [(k, one())].into_iter().collect() };
        let mut out = SparseVec::new();
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            let inner = self.bracket(y, z);
            for (k, v) in self.bracket_vec(&e(x), &inner) {
                accumulate(&mut out, k, v);
            }
        }
        out
    }

    /// Checks `[red, red] = 0` and `[blue, red] ⊆ red`.
    pub fn abelian_ideal_ok(&self) -> bool {
        self.table.iter().all(|((a, b), v)| {
            let ra = self.colors[*a] == Color::Red;
            let rb = self.colors[*b] == Color::Red;
            match (ra, rb) {
                (true, true) => v.is_empty(),
                (false, false) => true,
                _ => v.keys().all(|c| self.colors[*c] == Color::Red),
            }
        })
    }
}

/// Trace-orthogonal complement of `cartans` inside the diagonal of `sl(n)`.
pub fn cartan_complement(n: usize, cartans: &[LieElement]) -> Vec<LieElement> {
    let mut sys = LinearSystem::new(n);
    sys.add_equation(&(0..n).map(|i| (i, one())).collect(), &Rational::zero());
    for h in cartans {
        let row: SparseVec = (1..=n)
            .map(|i| (i - 1, h.entry(i, i)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        sys.add_equation(&row, &Rational::zero());
    }
    sys.solve()
        .expect("homogeneous")
        .nullspace
        .into_iter()
        .map(|v| LieElement::diagonal(&v).expect("traceless by construction"))
        .collect()
}

fn unit_label(u: MatrixUnit) -> String {
    format!("{u}*")
}

/// Dual structure over the default adapted basis of the carrier.
pub fn dual_structure(r: &BiTensor) -> DualAlgebra {
    dual_structure_with(r, Execution::default())
}

pub fn dual_structure_with(r: &BiTensor, exec: Execution) -> DualAlgebra {
    let n = r.n();
    let car = carrier(r);
    let sl = SlBasis::new(n);
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut colors = Vec::new();
    match &car.grading {
        Some(g) => {
            for (k, h) in g.cartan.iter().enumerate() {
                basis.push(h.clone());
                labels.push(format!("hc[{}]*", k + 1));
                colors.push(Color::Blue);
            }
            for u in &g.units {
                basis.push(crate::lie::matrix_unit(n, u.i, u.j).expect("valid"));
                labels.push(unit_label(*u));
                colors.push(Color::Blue);
            }
            for idx in 0..sl.dim() {
                if let Some(u) = sl.unit_at(idx) {
                    if !g.units.contains(&u) {
                        basis.push(sl.element(idx));
                        labels.push(unit_label(u));
                        colors.push(Color::Red);
                    }
                }
            }
            for (k, h) in cartan_complement(n, &g.cartan).into_iter().enumerate() {
                basis.push(h);
                labels.push(format!("hperp[{}]*", k + 1));
                colors.push(Color::Red);
            }
        }
        None => {
            let mut ech = Echelon::new();
            for (k, x) in car.basis.iter().enumerate() {
                ech.insert(&carrier::coords(&sl, x));
                basis.push(x.clone());
                labels.push(format!("g[{}]*", k + 1));
                colors.push(Color::Blue);
            }
            for idx in 0..sl.dim() {
                let e: SparseVec = [(idx, one())].into_iter().collect();
                if ech.insert(&e) {
                    basis.push(sl.element(idx));
                    labels.push(format!("{}*", sl.label(idx)));
                    colors.push(Color::Red);
                }
            }
        }
    }
    DualAlgebra::from_basis(r, basis, labels, colors, exec)
}

/// Everything `analyze` reports about `g^#(r)`.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub carrier: Carrier,
    pub dual: DualAlgebra,
    /// Whether the chain grading rules applied.
    pub graded: bool,
    pub abelian_ideal_ok: bool,
    pub grading_violations: Option<Vec<GradingViolation>>,
    pub primitive: Vec<String>,
    /// Strictly quasiprimitive generators (red, not primitive); graded duals only.
    pub quasiprimitive: Option<Vec<String>>,
    /// Grading-diagram end points; graded duals only.
    pub diagram_quasiprimitive: Option<Vec<String>>,
}

impl Analysis {
    /// Table and diagram criteria agree on the red generators.
    pub fn criteria_agree(&self) -> Option<bool> {
        let diagram = self.diagram_quasiprimitive.as_ref()?;
        let mut table: Vec<String> = quasiprimitive_set(&self.dual)
            .into_iter()
            .filter(|l| self.dual.index_of(l).map(|k| self.dual.colors[k]) == Some(Color::Red))
            .collect();
        let mut diagram = diagram.clone();
        table.sort();
        diagram.sort();
        Some(table == diagram)
    }
}

pub fn analyze(r: &BiTensor) -> Analysis {
    analyze_with(r, Execution::default())
}

/// Graded analysis for chain-family tensors, plain dual structure otherwise.
pub fn analyze_with(r: &BiTensor, exec: Execution) -> Analysis {
    let car = carrier(r);
    match assign_gradings_with(r, exec) {
        Ok(dual) => Analysis {
            carrier: car,
            graded: true,
            abelian_ideal_ok: dual.abelian_ideal_ok(),
            grading_violations: Some(grading_consistency(&dual)),
            primitive: primitive_set(&dual),
            quasiprimitive: Some(strictly_quasiprimitive(&dual)),
            diagram_quasiprimitive: diagram_quasiprimitive(&dual).ok(),
            dual,
        },
        Err(_) => {
            let dual = dual_structure_with(r, exec);
            Analysis {
                carrier: car,
                graded: false,
                abelian_ideal_ok: dual.abelian_ideal_ok(),
                grading_violations: None,
                primitive: primitive_set(&dual),
                quasiprimitive: None,
                diagram_quasiprimitive: None,
                dual,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_fch, build_rch};
    use crate::lie::matrix_unit;

    #[test]
    fn zero_tensor_dual_is_trivial() {
        let d = dual_structure(&BiTensor::zero(3));
        assert_eq!(d.dim(), 8);
        assert_eq!(d.nonzero_brackets().count(), 0);
        assert!(d.red().count() == 8);
    }

    #[test]
    fn sl3_jacobi_exhaustive() {
        let d = dual_structure(&build_rch(3, &[int(1)]).unwrap());
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    assert!(d.jacobiator(a, b, c).is_empty());
                }
            }
        }
        assert!(d.abelian_ideal_ok());
    }

    #[test]
    fn fch_abelian_ideal() {
        let d = dual_structure(&build_fch(5, &[int(1), int(1)]).unwrap());
        assert!(d.abelian_ideal_ok());
        assert_eq!(d.blue().count(), 12);
    }

    #[test]
    fn complement_is_trace_orthogonal() {
        let h = crate::lie::chain_cartan(5, 1, 5).unwrap();
        let comp = cartan_complement(5, std::slice::from_ref(&h));
        assert_eq!(comp.len(), 3);
        for c in &comp {
            let tr = (1..=5).fold(Rational::zero(), |acc, i| {
                acc + h.entry(i, i) * c.entry(i, i)
            });
            assert!(tr.is_zero());
        }
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let d = dual_structure(&build_rch(5, &[int(1), int(2)]).unwrap());
        for a in 0..d.dim() {
            for b in 0..d.dim() {
                let x = d.bracket(a, b);
                let y: SparseVec = d.bracket(b, a).into_iter().map(|(k, v)| (k, -v)).collect();
                assert_eq!(x, y);
            }
        }
        let _ = matrix_unit(3, 1, 2);
    }
}
