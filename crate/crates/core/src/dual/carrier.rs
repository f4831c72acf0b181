//! The carrier subalgebra of an r-matrix.

use num_traits::Zero;

use crate::lie::{bracket, LieElement, MatrixUnit, SlBasis};
use crate::linalg::{Echelon, SparseVec};
use crate::tensor::BiTensor;

/// The smallest subalgebra containing every leg of `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub n: usize,
    /// A basis; for root-graded carriers the Cartan part comes first, then
    /// the matrix units in `(i, j)` order.
    pub basis: Vec<LieElement>,
    pub dim: usize,
    pub contains_borel: bool,
    pub contains_nplus: bool,
    pub contains_cartan: bool,
    /// `dim (g_c ∩ n_-)`.
    pub negative_intersection_dim: usize,
    /// Present when the carrier is the sum of its Cartan part and the root
    /// spaces it contains.
    pub grading: Option<RootGrading>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootGrading {
    pub cartan: Vec<LieElement>,
    pub units: Vec<MatrixUnit>,
}

impl Carrier {
    pub fn contains(&self, x: &LieElement) -> bool {
        let basis = SlBasis::new(self.n);
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(&coords(&basis, b));
        }
        e.contains(&coords(&basis, x))
    }
}

pub(crate) fn coords(basis: &SlBasis, x: &LieElement) -> SparseVec {
    basis.coords(x).into_iter().collect()
}

/// Span of the legs of `r`, as vectors in [`SlBasis`] coordinates.
pub(crate) fn leg_span(r: &BiTensor) -> Echelon {
    let basis = SlBasis::new(r.n());
    // Row p of the coefficient matrix is the right leg paired with left basis vector p.
    let mut rows: std::collections::BTreeMap<usize, SparseVec> = Default::default();
    let mut cols: std::collections::BTreeMap<usize, SparseVec> = Default::default();
    for ((a, b), c) in r.terms() {
        for (p, x) in basis.unit_coords(*a) {
            for (q, y) in basis.unit_coords(*b) {
                let v = c * &x * &y;
                crate::lie::accumulate(rows.entry(p).or_default(), q, v.clone());
                crate::lie::accumulate(cols.entry(q).or_default(), p, v);
            }
        }
    }
    let mut e = Echelon::new();
    for v in rows.values().chain(cols.values()) {
        if !v.is_empty() {
            e.insert(v);
        }
    }
    e
}

/// Closure of the leg span under the bracket.
pub fn carrier(r: &BiTensor) -> Carrier {
    let n = r.n();
    let basis = SlBasis::new(n);
    let seed = leg_span(r);
    let mut ech = Echelon::new();
    let mut elems: Vec<LieElement> = Vec::new();
    for row in seed.rows() {
        if ech.insert(row) {
            elems.push(basis.from_coords(row.iter().map(|(k, c)| (*k, c))));
        }
    }
    let mut done = 0;
    // Bracket every new element with everything before it until nothing new appears.
    while done < elems.len() {
        let j = done;
        done += 1;
        for i in 0..j {
            let b = bracket(&elems[i], &elems[j]).expect("same n");
            if b.is_zero() {
                continue;
            }
            let v = coords(&basis, &b);
            if ech.insert(&v) {
                elems.push(b);
            }
        }
    }
    finish(n, &basis, &ech, elems)
}

fn finish(n: usize, basis: &SlBasis, ech: &Echelon, elems: Vec<LieElement>) -> Carrier {
    let dim = ech.rank();
    let units: Vec<MatrixUnit> = (0..basis.dim())
        .filter_map(|idx| basis.unit_at(idx))
        .filter(|u| {
            let mut v = SparseVec::new();
            v.insert(
                basis.unit_index(*u).expect("off-diagonal"),
                crate::rational::one(),
            );
            ech.contains(&v)
        })
        .collect();
    let cartan_ok = |k: usize| {
        let mut v = SparseVec::new();
        v.insert(basis.cartan_index(k), crate::rational::one());
        ech.contains(&v)
    };
    let contains_cartan = (1..n).all(cartan_ok);
    let contains_nplus = units.iter().filter(|u| u.i < u.j).count() == n * (n - 1) / 2;

    let mut with_neg = ech.clone();
    let lower = units_lower(n);
    let mut added = 0;
    for u in &lower {
        let mut v = SparseVec::new();
        v.insert(
            basis.unit_index(*u).expect("off-diagonal"),
            crate::rational::one(),
        );
        if with_neg.insert(&v) {
            added += 1;
        }
    }
    let negative_intersection_dim = lower.len() - added;

    // Cartan projection of the carrier.
    let mut proj = Echelon::new();
    let mut cartan = Vec::new();
    for x in &elems {
        let diag: Vec<_> = (1..=n).map(|i| x.entry(i, i)).collect();
        if diag.iter().all(|c| c.is_zero()) {
            continue;
        }
        let h =
            LieElement::diagonal(&diag).expect("diagonal part of a traceless element is traceless");
        if proj.insert(&coords(basis, &h)) {
            cartan.push(h);
        }
    }
    let graded =
        units.len() + cartan.len() == dim && cartan.iter().all(|h| ech.contains(&coords(basis, h)));
    let (basis_elems, grading) = if graded {
        let mut b = cartan.clone();
        b.extend(
            units
                .iter()
                .map(|u| crate::lie::matrix_unit(n, u.i, u.j).expect("valid")),
        );
        (b, Some(RootGrading { cartan, units }))
    } else {
        (elems, None)
    };
    Carrier {
        n,
        basis: basis_elems,
        dim,
        contains_borel: contains_nplus && contains_cartan,
        contains_nplus,
        contains_cartan,
        negative_intersection_dim,
        grading,
    }
}

fn units_lower(n: usize) -> Vec<MatrixUnit> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            out.push(MatrixUnit::new(i, j));
        }
    }
    out
}
