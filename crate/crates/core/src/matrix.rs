//! Dense matrices over F_{q^n} with exact determinant, rank and the two
//! block-determinant identities (Schur complement and the bordered form).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Row-major dense matrix. The 0×0 matrix is legal and has determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    ctx: Arc<FieldCtx>,
}

impl MatrixF {
    pub fn new(ctx: Arc<FieldCtx>, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ctx.ensure_member(e)?;
        }
        Ok(MatrixF {
            rows,
            cols,
            entries,
            ctx,
        })
    }

    /// Builds from nested rows of element encodings. All rows must have the
    /// same length; an empty slice is the 0×0 matrix.
    pub fn from_encodings(ctx: Arc<FieldCtx>, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for &v in row {
                entries.push(ctx.decode(v)?);
            }
        }
        MatrixF::new(ctx, rows.len(), cols, entries)
    }

    pub fn from_fn(
        ctx: Arc<FieldCtx>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        MatrixF {
            rows,
            cols,
            entries,
            ctx,
        }
    }

    pub fn zeros(ctx: Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        let z = ctx.zero();
        MatrixF::from_fn(ctx, rows, cols, |_, _| z.clone())
    }

    pub fn identity(ctx: Arc<FieldCtx>, size: usize) -> Self {
        let (z, o) = (ctx.zero(), ctx.one());
        MatrixF::from_fn(ctx, size, size, |r, c| if r == c { o.clone() } else { z.clone() })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn to_encodings(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.ctx.encode(self.get(r, c))).collect())
            .collect()
    }

    fn same_ctx(&self, other: &MatrixF) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn transpose(&self) -> MatrixF {
        MatrixF::from_fn(self.ctx.clone(), self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn add(&self, other: &MatrixF) -> Result<MatrixF> {
        self.same_ctx(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("add: different shapes".into()));
        }
        Ok(MatrixF::from_fn(self.ctx.clone(), self.rows, self.cols, |r, c| {
            self.ctx.add(self.get(r, c), other.get(r, c))
        }))
    }

    pub fn sub(&self, other: &MatrixF) -> Result<MatrixF> {
        self.same_ctx(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("sub: different shapes".into()));
        }
        Ok(MatrixF::from_fn(self.ctx.clone(), self.rows, self.cols, |r, c| {
            self.ctx.sub(self.get(r, c), other.get(r, c))
        }))
    }

    pub fn neg(&self) -> MatrixF {
        MatrixF::from_fn(self.ctx.clone(), self.rows, self.cols, |r, c| {
            self.ctx.neg(self.get(r, c))
        })
    }

    pub fn mul(&self, other: &MatrixF) -> Result<MatrixF> {
        self.same_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        Ok(MatrixF::from_fn(ctx.clone(), self.rows, other.cols, |r, c| {
            (0..self.cols).fold(ctx.zero(), |acc, k| {
                ctx.add(&acc, &ctx.mul(self.get(r, k), other.get(k, c)))
            })
        }))
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> MatrixF {
        MatrixF::from_fn(self.ctx.clone(), rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Drops the listed rows and columns.
    pub fn remove(&self, rows: &[usize], cols: &[usize]) -> MatrixF {
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !cols.contains(c)).collect();
        self.select(&keep_r, &keep_c)
    }

    /// Side-by-side concatenation.
    pub fn hstack(blocks: &[&MatrixF]) -> Result<MatrixF> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::ShapeMismatch("hstack of nothing".into()))?;
        let rows = first.rows;
        let mut col_owner = Vec::new();
        for (b, m) in blocks.iter().enumerate() {
            m.same_ctx(first)?;
            if m.rows != rows {
                return Err(Error::ShapeMismatch("hstack: row counts differ".into()));
            }
            col_owner.extend((0..m.cols).map(|c| (b, c)));
        }
        Ok(MatrixF::from_fn(first.ctx.clone(), rows, col_owner.len(), |r, c| {
            let (b, cc) = col_owner[c];
            blocks[b].get(r, cc).clone()
        }))
    }

    /// Stacked top to bottom.
    pub fn vstack(blocks: &[&MatrixF]) -> Result<MatrixF> {
        let transposed: Vec<MatrixF> = blocks.iter().map(|m| m.transpose()).collect();
        let refs: Vec<&MatrixF> = transposed.iter().collect();
        Ok(MatrixF::hstack(&refs)?.transpose())
    }

    fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    /// Determinant by Gaussian elimination, tracking the sign of row swaps.
    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let ctx = &self.ctx;
        let n = self.rows;
        let mut m = self.row_vecs();
        let mut det = ctx.one();
        let mut negate = false;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(ctx.zero());
            };
            if pivot != col {
                m.swap(pivot, col);
                negate = !negate;
            }
            let inv = ctx.inv(&m[col][col])?;
            det = ctx.mul(&det, &m[col][col]);
            let (upper, lower) = m.split_at_mut(col + 1);
            let prow = &upper[col];
            for row in lower.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = ctx.mul(&row[col], &inv);
                for c in col..n {
                    let t = ctx.mul(&factor, &prow[c]);
                    row[c] = ctx.sub(&row[c], &t);
                }
            }
        }
        Ok(if negate { ctx.neg(&det) } else { det })
    }

    /// `(rank, nullity)` with nullity = cols − rank.
    pub fn rank_nullity(&self) -> (usize, usize) {
        let ctx = &self.ctx;
        let mut m = self.row_vecs();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot, rank);
            let inv = ctx.inv(&m[rank][col]).expect("pivot is nonzero");
            let (upper, lower) = m.split_at_mut(rank + 1);
            let prow = &upper[rank];
            for row in lower.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = ctx.mul(&row[col], &inv);
                for c in col..self.cols {
                    let t = ctx.mul(&factor, &prow[c]);
                    row[c] = ctx.sub(&row[c], &t);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        (rank, self.cols - rank)
    }

    pub fn rank(&self) -> usize {
        self.rank_nullity().0
    }

    /// Gauss-Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<MatrixF> {
        if !self.is_square() {
            return None;
        }
        let ctx = &self.ctx;
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut inv = MatrixF::identity(ctx.clone(), n).row_vecs();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let s = ctx.inv(&a[col][col]).ok()?;
            for c in 0..n {
                a[col][c] = ctx.mul(&a[col][c], &s);
                inv[col][c] = ctx.mul(&inv[col][c], &s);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = ctx.mul(&factor, &a[col][c]);
                    a[r][c] = ctx.sub(&a[r][c], &t);
                    let t = ctx.mul(&factor, &inv[col][c]);
                    inv[r][c] = ctx.sub(&inv[r][c], &t);
                }
            }
        }
        Some(MatrixF {
            rows: n,
            cols: n,
            entries: inv.into_iter().flatten().collect(),
            ctx: ctx.clone(),
        })
    }
}

/// det(W) · det(X − Y W⁻¹ Z) for the block matrix [[X, Y], [Z, W]].
pub fn schur_block_det(x: &MatrixF, y: &MatrixF, z: &MatrixF, w: &MatrixF) -> Result<FieldElement> {
    if !w.is_square() || !x.is_square() {
        return Err(Error::ShapeMismatch("X and W must be square".into()));
    }
    if y.rows != x.rows || y.cols != w.rows || z.rows != w.rows || z.cols != x.cols {
        return Err(Error::ShapeMismatch("incompatible block sizes".into()));
    }
    let w_inv = w.inverse().ok_or(Error::SingularW)?;
    let complement = x.sub(&y.mul(&w_inv)?.mul(z)?)?;
    let ctx = x.ctx();
    Ok(ctx.mul(&w.det()?, &complement.det()?))
}

/// Assembles M = [[A, B, C], [I_l, O, −I_l]] and N = [B, A + C] for
/// k×l blocks A, C and a k×(k−l) block B.
pub fn bordered_blocks(a: &MatrixF, b: &MatrixF, c: &MatrixF) -> Result<(MatrixF, MatrixF)> {
    let (k, l) = (a.rows, a.cols);
    if l > k || (c.rows, c.cols) != (k, l) || (b.rows, b.cols) != (k, k - l) {
        return Err(Error::ShapeMismatch(format!(
            "need A, C of shape k x l and B of shape k x (k - l) with l <= k; got A {}x{}, B {}x{}, C {}x{}",
            a.rows, a.cols, b.rows, b.cols, c.rows, c.cols
        )));
    }
    let ctx = a.ctx().clone();
    let top = MatrixF::hstack(&[a, b, c])?;
    let id = MatrixF::identity(ctx.clone(), l);
    let zero = MatrixF::zeros(ctx.clone(), l, k - l);
    let bottom = MatrixF::hstack(&[&id, &zero, &id.neg()])?;
    let m = MatrixF::vstack(&[&top, &bottom])?;
    let n = MatrixF::hstack(&[b, &a.add(c)?])?;
    Ok((m, n))
}

/// det(M) for the bordered block matrix M of [`bordered_blocks`], checked
/// against (−1)^{l(k−l+1)} det(N).
pub fn bordered_block_det(a: &MatrixF, b: &MatrixF, c: &MatrixF) -> Result<FieldElement> {
    let (m, n) = bordered_blocks(a, b, c)?;
    let ctx = a.ctx();
    let (k, l) = (a.rows, a.cols);
    let det_m = m.det()?;
    let det_n = n.det()?;
    let expected = if (l * (k - l + 1)) % 2 == 1 {
        ctx.neg(&det_n)
    } else {
        det_n
    };
    if det_m != expected {
        return Err(Error::InternalInconsistency(
            "bordered block determinant identity violated".into(),
        ));
    }
    Ok(det_m)
}
