use alloc::vec::Vec;

use super::{HomologyError, IntMatrix};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `D`, each dividing the next.
    pub diagonal: Vec<i128>,
    /// Inverse of `U`.
    pub u_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

fn add_scaled(m: &mut IntMatrix, target_row: usize, src_row: usize, c: i128) -> Result<(), HomologyError> {
    for j in 0..m.cols() {
        let s = m.get(src_row, j);
        if s != 0 {
            let t = s.checked_mul(c).and_then(|p| m.get(target_row, j).checked_add(p)).ok_or(HomologyError::Overflow)?;
            m.set(target_row, j, t);
        }
    }
    Ok(())
}

fn add_scaled_col(m: &mut IntMatrix, target_col: usize, src_col: usize, c: i128) -> Result<(), HomologyError> {
    for i in 0..m.rows() {
        let s = m.get(i, src_col);
        if s != 0 {
            let t = s.checked_mul(c).and_then(|p| m.get(i, target_col).checked_add(p)).ok_or(HomologyError::Overflow)?;
            m.set(i, target_col, t);
        }
    }
    Ok(())
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols() {
            let t = m.get(a, j);
            m.set(a, j, m.get(b, j));
            m.set(b, j, t);
        }
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for i in 0..m.rows() {
            let t = m.get(i, a);
            m.set(i, a, m.get(i, b));
            m.set(i, b, t);
        }
    }
}

impl Work {
    // row_t += c row_s
    fn row_add(&mut self, t: usize, s: usize, c: i128) -> Result<(), HomologyError> {
        add_scaled(&mut self.d, t, s, c)?;
        add_scaled(&mut self.u, t, s, c)?;
        add_scaled_col(&mut self.u_inv, s, t, -c)
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        swap_rows(&mut self.d, a, b);
        swap_rows(&mut self.u, a, b);
        swap_cols(&mut self.u_inv, a, b);
    }

    fn row_negate(&mut self, r: usize) {
        for j in 0..self.d.cols() {
            self.d.set(r, j, -self.d.get(r, j));
        }
        for j in 0..self.u.cols() {
            self.u.set(r, j, -self.u.get(r, j));
        }
        for i in 0..self.u_inv.rows() {
            self.u_inv.set(i, r, -self.u_inv.get(i, r));
        }
    }

    // col_t += c col_s
    fn col_add(&mut self, t: usize, s: usize, c: i128) -> Result<(), HomologyError> {
        add_scaled_col(&mut self.d, t, s, c)?;
        add_scaled_col(&mut self.v, t, s, c)
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        swap_cols(&mut self.d, a, b);
        swap_cols(&mut self.v, a, b);
    }
}

/// Smith normal form with smallest-absolute-value pivoting and checked `i128` arithmetic.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfResult, HomologyError> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { d: a.clone(), u: IntMatrix::identity(m), u_inv: IntMatrix::identity(m), v: IntMatrix::identity(n) };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_in(&w.d, t..m, t..n) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let p = w.d.get(t, t);
            let mut clean = true;
            for i in t + 1..m {
                let x = w.d.get(i, t);
                if x != 0 {
                    w.row_add(i, t, -(x / p))?;
                    clean &= w.d.get(i, t) == 0;
                }
            }
            for j in t + 1..n {
                let x = w.d.get(t, j);
                if x != 0 {
                    w.col_add(j, t, -(x / p))?;
                    clean &= w.d.get(t, j) == 0;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived; move it to the pivot slot
                let mut best = (t, t, p.abs());
                for i in t + 1..m {
                    let x = w.d.get(i, t).abs();
                    if x != 0 && x < best.2 {
                        best = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = w.d.get(t, j).abs();
                    if x != 0 && x < best.2 {
                        best = (t, j, x);
                    }
                }
                w.row_swap(t, best.0);
                w.col_swap(t, best.1);
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.d.get(i, j) % p != 0));
            match bad {
                Some(i) => w.row_add(t, i, 1)?,
                None => break,
            }
        }
        if w.d.get(t, t) < 0 {
            w.row_negate(t);
        }
        diagonal.push(w.d.get(t, t));
        t += 1;
    }
    Ok(SnfResult { u: w.u, d: w.d, v: w.v, diagonal, u_inv: w.u_inv })
}

fn smallest_in(
    d: &IntMatrix,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = d.get(i, j).abs();
            if x != 0 && best.is_none_or(|b| x < b.2) {
                best = Some((i, j, x));
                if x == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}
