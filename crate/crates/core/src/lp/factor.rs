//! Basis factorization that keeps single-entry ("unit") columns out of the
//! dense part.
//!
//! Basic columns with exactly one nonzero each cover a distinct row. The rows
//! left uncovered (`W`) and the remaining basic columns (the core) form a
//! square block `M = A[W, core]`; only `N = M⁻¹` is stored densely. Each basis
//! change is one of four rank-one updates of `N`, so a pivot costs `O(k²)` for
//! a core of size `k` instead of `O(m²)`.

use crate::scalar::Scalar;

/// Sparse column `(row, value)`, rows ascending.
pub(crate) type SparseCol<S> = Vec<(usize, S)>;

#[derive(Debug)]
pub(crate) struct Singular;

#[derive(Clone, Debug)]
pub(crate) struct Factor<S: Scalar> {
    rows: usize,
    /// per basis position: the column currently basic there
    cols: Vec<SparseCol<S>>,
    /// per row: the basis position of the unit column covering it
    unit_at: Vec<Option<usize>>,
    /// per position: index into `core` when the column is a core column
    core_index: Vec<Option<usize>>,
    /// basis positions of core columns
    core: Vec<usize>,
    /// uncovered rows, aligned with the columns of `n`
    w_rows: Vec<usize>,
    /// per row: index into `w_rows`
    w_index: Vec<Option<usize>>,
    /// `n[i][j]` = entry of `M⁻¹` for core column `i`, uncovered row `w_rows[j]`
    n: Vec<Vec<S>>,
}

fn is_unit<S>(col: &SparseCol<S>) -> bool {
    col.len() == 1
}

impl<S: Scalar> Factor<S> {
    /// Factorizes the basis whose position `p` holds `cols[p]`.
    pub(crate) fn new(rows: usize, cols: Vec<SparseCol<S>>) -> Result<Self, Singular> {
        if cols.len() != rows {
            return Err(Singular);
        }
        let mut unit_at = vec![None; rows];
        let mut core_index = vec![None; rows];
        let mut core = Vec::new();
        for (p, col) in cols.iter().enumerate() {
            if col.is_empty() {
                return Err(Singular);
            }
            if is_unit(col) {
                let r = col[0].0;
                if unit_at[r].is_some() {
                    return Err(Singular);
                }
                unit_at[r] = Some(p);
            } else {
                core_index[p] = Some(core.len());
                core.push(p);
            }
        }
        let w_rows: Vec<usize> = (0..rows).filter(|&r| unit_at[r].is_none()).collect();
        if w_rows.len() != core.len() {
            return Err(Singular);
        }
        let mut w_index = vec![None; rows];
        for (j, &r) in w_rows.iter().enumerate() {
            w_index[r] = Some(j);
        }
        let k = core.len();
        // M as dense rows (uncovered rows × core columns), then Gauss-Jordan on [M | I]
        let mut m = vec![vec![S::zero(); k]; k];
        for (i, &p) in core.iter().enumerate() {
            for (r, x) in &cols[p] {
                if let Some(j) = w_index[*r] {
                    m[j][i] = x.clone();
                }
            }
        }
        let inv = invert(m)?;
        // inv is indexed [core i][w j] since (M⁻¹) has rows = columns of M
        Ok(Factor { rows, cols, unit_at, core_index, core, w_rows, w_index, n: inv })
    }

    pub(crate) fn core_size(&self) -> usize {
        self.core.len()
    }

    /// Solves `B d = a`; `d` is indexed by basis position.
    pub(crate) fn ftran(&self, a: &[(usize, S)]) -> Vec<S> {
        let mut d = vec![S::zero(); self.rows];
        // core part: d_core = N a_W
        for (r, x) in a {
            if let Some(j) = self.w_index[*r] {
                for (i, &p) in self.core.iter().enumerate() {
                    let nij = &self.n[i][j];
                    if !nij.is_zero() {
                        d[p] += nij.clone() * x;
                    }
                }
            }
        }
        // unit rows: α_r d_p = a_r - Σ_core A[r][c] d_c
        let mut acc: Vec<Option<S>> = vec![None; self.rows];
        for (r, x) in a {
            if self.unit_at[*r].is_some() {
                acc[*r] = Some(x.clone());
            }
        }
        for &p in &self.core {
            if d[p].is_zero() {
                continue;
            }
            for (r, x) in &self.cols[p] {
                if self.unit_at[*r].is_some() {
                    let v = acc[*r].get_or_insert_with(S::zero);
                    *v -= x.clone() * &d[p];
                }
            }
        }
        for (r, v) in acc.into_iter().enumerate() {
            if let (Some(v), Some(p)) = (v, self.unit_at[r]) {
                d[p] = v / &self.cols[p][0].1;
            }
        }
        d
    }

    /// Solves `Bᵀ y = c` for costs `c` by basis position; `y` is indexed by row.
    pub(crate) fn btran(&self, c: &[S]) -> Vec<S> {
        let mut y = vec![S::zero(); self.rows];
        for r in 0..self.rows {
            if let Some(p) = self.unit_at[r] {
                y[r] = c[p].clone() / &self.cols[p][0].1;
            }
        }
        let reduced: Vec<S> = self
            .core
            .iter()
            .map(|&p| {
                let mut v = c[p].clone();
                for (r, x) in &self.cols[p] {
                    if self.unit_at[*r].is_some() {
                        v -= x.clone() * &y[*r];
                    }
                }
                v
            })
            .collect();
        for (j, &r) in self.w_rows.iter().enumerate() {
            let mut v = S::zero();
            for (i, ci) in reduced.iter().enumerate() {
                if !ci.is_zero() && !self.n[i][j].is_zero() {
                    v += self.n[i][j].clone() * ci;
                }
            }
            y[r] = v;
        }
        y
    }

    /// Row `r` of `A` restricted to the core columns.
    fn core_row(&self, r: usize) -> Vec<S> {
        self.core
            .iter()
            .map(|&p| {
                self.cols[p]
                    .iter()
                    .find(|(q, _)| *q == r)
                    .map_or_else(S::zero, |(_, x)| x.clone())
            })
            .collect()
    }

    /// `uᵀ N` for a row vector `u` over the core.
    fn row_times_n(&self, u: &[S]) -> Vec<S> {
        let k = self.core.len();
        let mut out = vec![S::zero(); k];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..k {
                if !self.n[i][j].is_zero() {
                    out[j] += ui.clone() * &self.n[i][j];
                }
            }
        }
        out
    }

    /// Replaces the column at basis position `p` by `col`, given `d = ftran(col)`.
    pub(crate) fn replace(&mut self, p: usize, col: SparseCol<S>, d: &[S]) -> Result<(), Singular> {
        if d[p].is_zero() {
            return Err(Singular);
        }
        let enter_unit = is_unit(&col);
        match (self.core_index[p], enter_unit) {
            (Some(i), false) => self.core_to_core(i, p, d),
            (None, false) => self.unit_to_core(p, &col, d),
            (Some(i), true) => self.core_to_unit(i, p, col[0].0),
            (None, true) => self.unit_to_unit(p, col[0].0),
        }
        self.cols[p] = col;
        Ok(())
    }

    fn core_to_core(&mut self, i: usize, p: usize, d: &[S]) {
        let pivot = d[p].clone();
        let row_i: Vec<S> = self.n[i].iter().map(|x| x.clone() / &pivot).collect();
        for (i2, &p2) in self.core.iter().enumerate() {
            if i2 == i || d[p2].is_zero() {
                continue;
            }
            let f = d[p2].clone();
            for (x, y) in self.n[i2].iter_mut().zip(&row_i) {
                if !y.is_zero() {
                    *x -= f.clone() * y;
                }
            }
        }
        self.n[i] = row_i;
    }

    fn unit_to_core(&mut self, p: usize, col: &SparseCol<S>, _d: &[S]) {
        let r = self.cols[p][0].0;
        let k = self.core.len();
        // bordered inverse with new row r and new column `col`
        let u = self.core_row(r);
        let mut nc = vec![S::zero(); k];
        let mut delta = S::zero();
        for (q, x) in col {
            if *q == r {
                delta = x.clone();
            } else if let Some(j) = self.w_index[*q] {
                for i in 0..k {
                    if !self.n[i][j].is_zero() {
                        nc[i] += self.n[i][j].clone() * x;
                    }
                }
            }
        }
        let un = self.row_times_n(&u);
        let mut s = delta;
        for (ui, nci) in u.iter().zip(&nc) {
            if !ui.is_zero() {
                s -= ui.clone() * nci;
            }
        }
        for i in 0..k {
            if nc[i].is_zero() {
                continue;
            }
            let f = nc[i].clone() / &s;
            for j in 0..k {
                if !un[j].is_zero() {
                    let t = f.clone() * &un[j];
                    self.n[i][j] += t;
                }
            }
        }
        for i in 0..k {
            let t = -(nc[i].clone() / &s);
            self.n[i].push(t);
        }
        let mut last: Vec<S> = un.iter().map(|x| -(x.clone() / &s)).collect();
        last.push(S::one() / &s);
        self.n.push(last);
        self.unit_at[r] = None;
        self.w_index[r] = Some(self.w_rows.len());
        self.w_rows.push(r);
        self.core_index[p] = Some(self.core.len());
        self.core.push(p);
    }

    fn core_to_unit(&mut self, i: usize, p: usize, r_new: usize) {
        let j = self.w_index[r_new].expect("entering unit row is uncovered");
        let k = self.core.len();
        let pivot = self.n[i][j].clone();
        let col_j: Vec<S> = (0..k).map(|i2| self.n[i2][j].clone()).collect();
        let row_i = self.n[i].clone();
        for i2 in 0..k {
            if i2 == i || col_j[i2].is_zero() {
                continue;
            }
            let f = col_j[i2].clone() / &pivot;
            for j2 in 0..k {
                if !row_i[j2].is_zero() {
                    self.n[i2][j2] -= f.clone() * &row_i[j2];
                }
            }
        }
        // drop core entry i and uncovered row j by swap-removal
        self.n.swap_remove(i);
        for row in &mut self.n {
            row.swap_remove(j);
        }
        let moved_p = *self.core.last().expect("nonempty core");
        self.core.swap_remove(i);
        self.core_index[p] = None;
        if moved_p != p {
            self.core_index[moved_p] = Some(i);
        }
        let moved_r = *self.w_rows.last().expect("nonempty");
        self.w_rows.swap_remove(j);
        self.w_index[r_new] = None;
        if moved_r != r_new {
            self.w_index[moved_r] = Some(j);
        }
        self.unit_at[r_new] = Some(p);
    }

    fn unit_to_unit(&mut self, p: usize, r_new: usize) {
        let r_old = self.cols[p][0].0;
        if r_old == r_new {
            return;
        }
        let j = self.w_index[r_new].expect("entering unit row is uncovered");
        let k = self.core.len();
        let u = self.core_row(r_old);
        let mut un = self.row_times_n(&u);
        let pivot = un[j].clone();
        un[j] -= S::one();
        let col_j: Vec<S> = (0..k).map(|i| self.n[i][j].clone()).collect();
        for i in 0..k {
            if col_j[i].is_zero() {
                continue;
            }
            let f = col_j[i].clone() / &pivot;
            for j2 in 0..k {
                if !un[j2].is_zero() {
                    self.n[i][j2] -= f.clone() * &un[j2];
                }
            }
        }
        self.w_rows[j] = r_old;
        self.w_index[r_old] = Some(j);
        self.w_index[r_new] = None;
        self.unit_at[r_old] = None;
        self.unit_at[r_new] = Some(p);
    }
}

/// Gauss-Jordan inverse; picks the largest pivot for floats, the first
/// nonzero one otherwise.
fn invert<S: Scalar>(mut m: Vec<Vec<S>>) -> Result<Vec<Vec<S>>, Singular> {
    let k = m.len();
    let mut inv: Vec<Vec<S>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    for col in 0..k {
        let pivot_row = if S::EXACT {
            (col..k).find(|&r| !m[r][col].is_zero())
        } else {
            (col..k)
                .filter(|&r| !m[r][col].is_negligible())
                .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).expect("finite"))
        };
        let pr = pivot_row.ok_or(Singular)?;
        m.swap(col, pr);
        inv.swap(col, pr);
        let piv = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= piv.clone();
        }
        for x in inv[col].iter_mut() {
            *x /= piv.clone();
        }
        for r in 0..k {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..k {
                if !m[col][c].is_zero() {
                    let t = f.clone() * &m[col][c];
                    m[r][c] -= t;
                }
                if !inv[col][c].is_zero() {
                    let t = f.clone() * &inv[col][c];
                    inv[r][c] -= t;
                }
            }
        }
    }
    // inv = M⁻¹ with rows indexed by M's columns (core) and columns by M's rows (W)
    Ok(inv)
}
