//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! The pivot rule is fixed everywhere: scan columns left to right, take the
//! topmost unfinished row with a nonzero entry. Reduced row echelon form is
//! unique, so every basis derived here is reproducible bit for bit.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize, field: &FieldSpec) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: &FieldSpec) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize, field: &FieldSpec) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {}-column matrix",
                    r.len(),
                    cols
                )));
            }
            entries.extend(r);
        }
        let _ = field;
        ExactMatrix::new(nrows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElement {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self, field: &FieldSpec) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.cols, self.rows, field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix, field: &FieldSpec) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zero(self.rows, other.cols, field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = field.mul(a, b);
                    *out.at_mut(r, c) = field.add(out.at(r, c), &prod);
                }
            }
        }
        Ok(out)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[FieldElement], field: &FieldSpec) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![field.zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                let prod = field.mul(a, &v[c]);
                out[r] = field.add(&out[r], &prod);
            }
        }
        Ok(out)
    }

    /// Kronecker product; used for the induced map on V ⊗ V.
    pub fn kronecker(&self, other: &ExactMatrix, field: &FieldSpec) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.rows * other.rows, self.cols * other.cols, field);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.at(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.at(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        *out.at_mut(r1 * other.rows + r2, c1 * other.cols + c2) = field.mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement, field: &FieldSpec) -> ExactMatrix {
        let entries = self.entries.iter().map(|e| field.mul(e, c)).collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Inverse of a square matrix, by row reduction of [M | I].
    pub fn inverse(&self, field: &FieldSpec) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible("matrix is not square".into()));
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zero(n, 2 * n, field);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, n + r) = field.one();
        }
        let rr = rref(&aug, field)?;
        for r in 0..n {
            if !rr.reduced.at(r, r).is_zero() {
                continue;
            }
            return Err(Error::NotInvertible(format!("matrix has rank {}", rr.rank)));
        }
        let mut out = ExactMatrix::zero(n, n, field);
        for r in 0..n {
            for c in 0..n {
                *out.at_mut(r, c) = rr.reduced.at(r, n + c).clone();
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct RrefResult {
    pub rank: usize,
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form. Total; field inversions are of pivot entries,
/// which are nonzero, but over a non-field quotient (non-irreducible
/// modulus) a pivot can still fail to invert, hence the `Result`.
pub fn rref(m: &ExactMatrix, field: &FieldSpec) -> Result<RrefResult> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..a.cols() {
        if pivot_row == a.rows() {
            break;
        }
        let Some(r) = (pivot_row..a.rows()).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if r != pivot_row {
            for c in 0..a.cols() {
                let tmp = a.at(r, c).clone();
                *a.at_mut(r, c) = a.at(pivot_row, c).clone();
                *a.at_mut(pivot_row, c) = tmp;
            }
        }
        let inv = field.inv(a.at(pivot_row, col))?;
        for c in col..a.cols() {
            *a.at_mut(pivot_row, c) = field.mul(a.at(pivot_row, c), &inv);
        }
        for r2 in 0..a.rows() {
            if r2 == pivot_row || a.at(r2, col).is_zero() {
                continue;
            }
            let factor = a.at(r2, col).clone();
            for c in col..a.cols() {
                let sub = field.mul(&factor, a.at(pivot_row, c));
                *a.at_mut(r2, c) = field.sub(a.at(r2, c), &sub);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    Ok(RrefResult {
        rank: pivots.len(),
        reduced: a,
        pivots,
    })
}

/// Coefficients expressing `v` in the rows of `span`, or `None` when
/// `v` is outside the row span. The particular solution sets every free
/// coordinate to zero, so the answer is deterministic.
pub fn solve_membership(
    span: &ExactMatrix,
    v: &[FieldElement],
    field: &FieldSpec,
) -> Result<Option<Vec<FieldElement>>> {
    if v.len() != span.cols() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against span width {}",
            v.len(),
            span.cols()
        )));
    }
    // Solve span^T x = v via the augmented system.
    let mut aug = ExactMatrix::zero(span.cols(), span.rows() + 1, field);
    for r in 0..span.rows() {
        for c in 0..span.cols() {
            *aug.at_mut(c, r) = span.at(r, c).clone();
        }
    }
    for c in 0..span.cols() {
        *aug.at_mut(c, span.rows()) = v[c].clone();
    }
    let rr = rref(&aug, field)?;
    if rr.pivots.contains(&span.rows()) {
        return Ok(None); // inconsistent: v is not in the span
    }
    let mut x = vec![field.zero(); span.rows()];
    for (row, &pc) in rr.pivots.iter().enumerate() {
        x[pc] = rr.reduced.at(row, span.rows()).clone();
    }
    Ok(Some(x))
}

/// Canonical (rref) basis of the right null space {x : Mx = 0}, returned
/// as rows.
pub fn kernel_basis(m: &ExactMatrix, field: &FieldSpec) -> Result<ExactMatrix> {
    let rr = rref(m, field)?;
    let pivot_set: std::collections::HashSet<usize> = rr.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivot_set.contains(c)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &j in &free {
        let mut v = vec![field.zero(); m.cols()];
        v[j] = field.one();
        for (row, &pc) in rr.pivots.iter().enumerate() {
            v[pc] = field.neg(rr.reduced.at(row, j));
        }
        rows.push(v);
    }
    let basis = ExactMatrix::from_rows(rows, m.cols(), field)?;
    Ok(rref(&basis, field)?.reduced_nonzero(field))
}

impl RrefResult {
    /// Drop the zero rows of the reduced matrix.
    fn reduced_nonzero(&self, field: &FieldSpec) -> ExactMatrix {
        let rows: Vec<Vec<FieldElement>> = (0..self.rank)
            .map(|r| self.reduced.row(r).to_vec())
            .collect();
        ExactMatrix::from_rows(rows, self.reduced.cols(), field)
            .expect("rows taken from an existing matrix")
    }
}

/// Canonical rref basis (zero rows dropped) of the row span.
pub fn row_space_basis(m: &ExactMatrix, field: &FieldSpec) -> Result<ExactMatrix> {
    Ok(rref(m, field)?.reduced_nonzero(field))
}

/// Incrementally maintained reduced row echelon basis. Insertion order does
/// not affect the final basis: rref of a row space is unique.
#[derive(Clone, Debug)]
pub struct RrefBasis {
    cols: usize,
    field: FieldSpec,
    /// Rows in increasing pivot order, fully reduced.
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RrefBasis {
    pub fn new(cols: usize, field: &FieldSpec) -> Self {
        RrefBasis {
            cols,
            field: field.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Reduce `v` against the basis, returning the residual.
    pub fn reduce(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for c in p..self.cols {
                if row[c].is_zero() {
                    continue;
                }
                let sub = self.field.mul(&factor, &row[c]);
                v[c] = self.field.sub(&v[c], &sub);
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v.to_vec()).iter().all(FieldElement::is_zero)
    }

    /// Insert a vector; returns true when the rank grew.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> Result<bool> {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|e| !e.is_zero()) else {
            return Ok(false);
        };
        let inv = self.field.inv(&v[p])?;
        let norm: Vec<FieldElement> = v.iter().map(|e| self.field.mul(e, &inv)).collect();
        // Back-substitute into existing rows to keep the basis reduced.
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for c in p..self.cols {
                if norm[c].is_zero() {
                    continue;
                }
                let sub = self.field.mul(&factor, &norm[c]);
                row[c] = self.field.sub(&row[c], &sub);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, norm);
        Ok(true)
    }

    pub fn into_matrix(self) -> ExactMatrix {
        ExactMatrix::from_rows(self.rows, self.cols, &self.field)
            .expect("echelon rows have uniform length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn mat(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        let f = qq();
        let entries = vals.iter().map(|&v| f.from_integer(v)).collect();
        ExactMatrix::new(rows, cols, entries).unwrap()
    }

    #[test]
    fn identity_is_its_own_rref() {
        let f = qq();
        let m = ExactMatrix::identity(2, &f);
        let rr = rref(&m, &f).unwrap();
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.reduced, m);
        assert_eq!(rr.pivots, vec![0, 1]);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let f = qq();
        let m = mat(2, 2, &[1, 2, 2, 4]);
        let rr = rref(&m, &f).unwrap();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.pivots, vec![0]);
        assert_eq!(rr.reduced, mat(2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn rref_is_idempotent_on_random_matrices() {
        let f = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let rows = rng.random_range(1..=6);
            let cols = rng.random_range(1..=6);
            let entries: Vec<FieldElement> = (0..rows * cols)
                .map(|_| f.from_rational(rat(rng.random_range(-4..=4), rng.random_range(1..=3))))
                .collect();
            let m = ExactMatrix::new(rows, cols, entries).unwrap();
            let rr = rref(&m, &f).unwrap();
            let again = rref(&rr.reduced, &f).unwrap();
            assert_eq!(again.reduced, rr.reduced);
            assert_eq!(again.pivots, rr.pivots);
        }
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let f = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.random_range(1..=8);
            let cols = rng.random_range(1..=8);
            let entries: Vec<FieldElement> = (0..rows * cols)
                .map(|_| f.from_integer(rng.random_range(-3..=3)))
                .collect();
            let m = ExactMatrix::new(rows, cols, entries).unwrap();
            let r1 = rref(&m, &f).unwrap().rank;
            let r2 = rref(&m.transpose(&f), &f).unwrap().rank;
            assert_eq!(r1, r2);
        }
    }

    #[test]
    fn membership_in_coordinate_span() {
        let f = qq();
        let span = mat(1, 2, &[1, 0]);
        let v = vec![f.from_integer(3), f.zero()];
        assert_eq!(
            solve_membership(&span, &v, &f).unwrap(),
            Some(vec![f.from_integer(3)])
        );
        let w = vec![f.zero(), f.one()];
        assert_eq!(solve_membership(&span, &w, &f).unwrap(), None);
    }

    #[test]
    fn membership_mismatched_length_errors() {
        let f = qq();
        let span = mat(1, 2, &[1, 0]);
        assert!(matches!(
            solve_membership(&span, &[f.one()], &f),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn membership_residual_is_zero_on_random_consistent_systems() {
        let f = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let rows = rng.random_range(1..=5);
            let cols = rng.random_range(1..=6);
            let entries: Vec<FieldElement> = (0..rows * cols)
                .map(|_| f.from_integer(rng.random_range(-3..=3)))
                .collect();
            let span = ExactMatrix::new(rows, cols, entries).unwrap();
            // pick v as a random combination of the rows
            let coeffs: Vec<FieldElement> = (0..rows)
                .map(|_| f.from_rational(rat(rng.random_range(-3..=3), rng.random_range(1..=2))))
                .collect();
            let mut v = vec![f.zero(); cols];
            for r in 0..rows {
                for c in 0..cols {
                    let p = f.mul(&coeffs[r], span.at(r, c));
                    v[c] = f.add(&v[c], &p);
                }
            }
            let sol = solve_membership(&span, &v, &f).unwrap().expect("in span");
            // substitute back: residual must be exactly zero
            let mut res = v.clone();
            for r in 0..rows {
                for c in 0..cols {
                    let p = f.mul(&sol[r], span.at(r, c));
                    res[c] = f.sub(&res[c], &p);
                }
            }
            assert!(res.iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn kernel_of_rank_one_projection() {
        let f = qq();
        let m = mat(1, 3, &[1, 2, 3]);
        let k = kernel_basis(&m, &f).unwrap();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let img = m.apply(k.row(r), &f).unwrap();
            assert!(img.iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = qq();
        let m = mat(2, 2, &[1, 2, 3, 5]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&inv, &f).unwrap(), ExactMatrix::identity(2, &f));
        let singular = mat(2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse(&f).is_err());
    }

    #[test]
    fn incremental_basis_matches_batch_rref() {
        let f = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let rows = rng.random_range(1..=7);
            let cols = rng.random_range(1..=7);
            let entries: Vec<FieldElement> = (0..rows * cols)
                .map(|_| f.from_integer(rng.random_range(-3..=3)))
                .collect();
            let m = ExactMatrix::new(rows, cols, entries).unwrap();
            let mut inc = RrefBasis::new(cols, &f);
            for r in 0..rows {
                inc.insert(m.row(r).to_vec()).unwrap();
            }
            let batch = row_space_basis(&m, &f).unwrap();
            assert_eq!(inc.into_matrix(), batch);
        }
    }
}
