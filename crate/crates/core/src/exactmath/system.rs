use std::collections::{BTreeMap, HashMap};

use super::field::{Field, Scalar};
use super::subspace::Subspace;

/// Sparse row: column index to nonzero coefficient.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Homogeneous linear system built one equation at a time.
///
/// Equations are reduced against the stored echelon rows on insertion, so
/// the stored row count never exceeds the number of unknowns even when
/// the system is fed far more equations than that.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    rows: Vec<SparseRow>,
    pivot_row: HashMap<usize, usize>,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        LinearSystem { field, unknowns, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.unknowns
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let Some(k) = row.range(cursor..).map(|(k, _)| *k).find(|k| self.pivot_row.contains_key(k)) else {
                break;
            };
            let c = row[&k].clone();
            for (j, v) in &self.rows[self.pivot_row[&k]] {
                let entry = row.entry(*j).or_insert_with(|| self.field.zero());
                *entry = &*entry - &(&c * v);
                if entry.is_zero() {
                    row.remove(j);
                }
            }
            cursor = k + 1;
        }
        row
    }

    /// Adds `sum coeff * x_index = 0`. Returns whether the rank grew.
    pub fn add_equation<I: IntoIterator<Item = (usize, Scalar)>>(&mut self, terms: I) -> bool {
        if self.is_full_rank() {
            return false;
        }
        let mut row = SparseRow::new();
        for (j, c) in terms {
            assert!(j < self.unknowns, "unknown index out of range");
            if c.is_zero() {
                continue;
            }
            let e = row.entry(j).or_insert_with(|| self.field.zero());
            *e = &*e + &c;
            if e.is_zero() {
                row.remove(&j);
            }
        }
        let row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inv().unwrap();
        let row: SparseRow = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn add_dense(&mut self, coeffs: &[Scalar]) -> bool {
        self.add_equation(coeffs.iter().cloned().enumerate())
    }

    /// The solution space of the homogeneous system.
    pub fn kernel(&self) -> Subspace {
        let mut pivots: Vec<usize> = self.pivot_row.keys().copied().collect();
        pivots.sort_unstable_by(|a, b| b.cmp(a));
        let free: Vec<usize> = (0..self.unknowns).filter(|j| !self.pivot_row.contains_key(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.unknowns];
            v[f] = self.field.one();
            for &p in &pivots {
                let row = &self.rows[self.pivot_row[&p]];
                let mut acc = self.field.zero();
                for (j, c) in row.range(p + 1..) {
                    if !v[*j].is_zero() {
                        acc = acc - c * &v[*j];
                    }
                }
                v[p] = acc;
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.field, self.unknowns, basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::Matrix;

    #[test]
    fn matches_dense_kernel() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[1, 2, 0, -1], &[2, 4, 1, 0], &[3, 6, 1, -1]]);
        let mut sys = LinearSystem::new(q, 4);
        for i in 0..3 {
            sys.add_dense(m.row(i));
        }
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.kernel(), m.kernel());
    }

    #[test]
    fn redundant_equations_do_not_grow_rank() {
        let f = Field::Prime(5);
        let mut sys = LinearSystem::new(f, 2);
        assert!(sys.add_equation([(0, f.one()), (1, f.one())]));
        assert!(!sys.add_equation([(0, f.from_i64(2)), (1, f.from_i64(2))]));
        assert_eq!(sys.kernel().dim(), 1);
    }
}
