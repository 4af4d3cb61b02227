//! Gaussian elimination over a finite field.

use crate::ff::Field;

/// Brings `rows` to reduced row echelon form in place and returns the pivot
/// columns. After the call the first `pivots.len()` rows are the nonzero
/// rows, in pivot order.
pub fn rref<F: Field>(field: &F, rows: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(&rows[next][col]).expect("nonzero pivot");
        for x in rows[next].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&c, p));
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

/// Basis of `{v : A v = 0}` for `A` given by its rows over `cols` columns.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut work = rows.to_vec();
    let pivots = rref(field, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&work[r][fc]);
            }
            v
        })
        .collect()
}

/// A subspace held in reduced echelon form, able to express members in its
/// own basis.
#[derive(Clone, Debug)]
pub struct Span<F: Field> {
    field: F,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Span<F> {
    pub fn new(field: &F, vectors: &[Vec<F::Elem>]) -> Self {
        let mut work = vectors.to_vec();
        let pivots = rref(field, &mut work);
        work.truncate(pivots.len());
        Span { field: field.clone(), basis: work, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut rebuilt = vec![self.field.zero(); v.len()];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, b) in rebuilt.iter_mut().zip(row) {
                *x = self.field.add(x, &self.field.mul(c, b));
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }
}
