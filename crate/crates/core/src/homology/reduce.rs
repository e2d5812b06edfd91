use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{smith_normal_form, ClassOrder, HomologyError, IntMatrix, SnfResult, SparseMatrix};
use crate::util::{dist_to_int, gcd};

#[derive(Debug, Clone)]
struct Pivot {
    row: usize,
    col: usize,
    sign: i128,
    others: Vec<(usize, i128)>,
}

/// Exact solver for `A x = b` over ℤ (and ℝ, and ℝ mod ℤ) for a sparse integer `A`.
///
/// Unit entries are eliminated first (each one an exact unimodular step that
/// also fixes one unknown); the small remainder goes through dense Smith
/// normal form. The factorisation is computed once and reused for every
/// right-hand side.
#[derive(Debug, Clone)]
pub struct CoboundarySolver {
    rows: usize,
    cols: usize,
    /// `b[target] += coef * b[source]`, applied in order.
    ops: Vec<(u32, u32, i128)>,
    pivots: Vec<Pivot>,
    zero_rows: Vec<usize>,
    rem_rows: Vec<usize>,
    rem_cols: Vec<usize>,
    rem: SnfResult,
}

fn merge(a: &[(usize, i128)], b: &[(usize, i128)], factor: i128) -> Result<Vec<(usize, i128)>, HomologyError> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = b[j].1.checked_mul(factor).ok_or(HomologyError::Overflow)?;
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = b[j].1.checked_mul(factor).and_then(|x| x.checked_add(a[i].1)).ok_or(HomologyError::Overflow)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

impl CoboundarySolver {
    pub fn new(a: &SparseMatrix) -> Result<Self, HomologyError> {
        let (m, n) = (a.rows(), a.cols());
        let mut rows: Vec<Vec<(usize, i128)>> =
            (0..m).map(|r| a.row(r).iter().map(|&(c, v)| (c, v as i128)).collect()).collect();
        let mut colsets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                colsets[c].insert(r);
            }
        }
        let mut alive = vec![true; m];
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        loop {
            let mut best: Option<(usize, usize, i128, usize)> = None;
            'search: for r in 0..m {
                if !alive[r] || rows[r].is_empty() {
                    continue;
                }
                for &(c, v) in &rows[r] {
                    if v == 1 || v == -1 {
                        let cost = (rows[r].len() - 1) * (colsets[c].len() - 1);
                        if best.is_none_or(|b| cost < b.3) {
                            best = Some((r, c, v, cost));
                            if cost == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((r, c, s, _)) = best else { break };
            let pivot_row = core::mem::take(&mut rows[r]);
            let targets: Vec<usize> = colsets[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in targets {
                let coef = rows[r2].iter().find(|e| e.0 == c).map(|e| e.1).unwrap_or(0);
                let factor = -coef * s;
                let old = core::mem::take(&mut rows[r2]);
                for &(cc, _) in old.iter().chain(pivot_row.iter()) {
                    colsets[cc].remove(&r2);
                }
                let new = merge(&old, &pivot_row, factor)?;
                for &(cc, _) in &new {
                    colsets[cc].insert(r2);
                }
                rows[r2] = new;
                ops.push((r2 as u32, r as u32, factor));
            }
            for &(cc, _) in &pivot_row {
                colsets[cc].remove(&r);
            }
            alive[r] = false;
            let others = pivot_row.into_iter().filter(|e| e.0 != c).collect();
            pivots.push(Pivot { row: r, col: c, sign: s, others });
        }
        let mut zero_rows = Vec::new();
        let mut rem_rows = Vec::new();
        let mut colset = BTreeSet::new();
        for r in 0..m {
            if !alive[r] {
                continue;
            }
            if rows[r].is_empty() {
                zero_rows.push(r);
            } else {
                rem_rows.push(r);
                colset.extend(rows[r].iter().map(|e| e.0));
            }
        }
        let rem_cols: Vec<usize> = colset.into_iter().collect();
        let mut dense = IntMatrix::zeros(rem_rows.len(), rem_cols.len());
        for (i, &r) in rem_rows.iter().enumerate() {
            for &(c, v) in &rows[r] {
                let j = rem_cols.binary_search(&c).unwrap();
                dense.set(i, j, v);
            }
        }
        let rem = smith_normal_form(&dense)?;
        Ok(Self { rows: m, cols: n, ops, pivots, zero_rows, rem_rows, rem_cols, rem })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len() + self.rem.rank()
    }

    /// Nonzero invariant factors in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i128> {
        let mut out = vec![1; self.pivots.len()];
        out.extend_from_slice(&self.rem.diagonal);
        out
    }

    /// Size of the dense remainder left after unit elimination.
    pub fn remainder_shape(&self) -> (usize, usize) {
        (self.rem_rows.len(), self.rem_cols.len())
    }

    fn check_len(&self, len: usize) -> Result<(), HomologyError> {
        if len != self.rows {
            return Err(HomologyError::DimensionMismatch { expected: self.rows, got: len });
        }
        Ok(())
    }

    fn transform_int(&self, b: &mut [i128]) -> Result<(), HomologyError> {
        for &(t, s, c) in &self.ops {
            let v = b[s as usize].checked_mul(c).and_then(|x| x.checked_add(b[t as usize])).ok_or(HomologyError::Overflow)?;
            b[t as usize] = v;
        }
        Ok(())
    }

    fn untransform_int(&self, b: &mut [i128]) -> Result<(), HomologyError> {
        for &(t, s, c) in self.ops.iter().rev() {
            let v = b[s as usize].checked_mul(c).and_then(|x| b[t as usize].checked_sub(x)).ok_or(HomologyError::Overflow)?;
            b[t as usize] = v;
        }
        Ok(())
    }

    fn transform_real(&self, b: &mut [f64]) {
        for &(t, s, c) in &self.ops {
            b[t as usize] += c as f64 * b[s as usize];
        }
    }

    fn remainder_coords_int(&self, b: &[i128]) -> Result<Vec<i128>, HomologyError> {
        let sub: Vec<i128> = self.rem_rows.iter().map(|&r| b[r]).collect();
        self.rem.u.mul_vec(&sub)
    }

    /// Smallest `n >= 1` with `n·b` in the image, or infinite.
    pub fn order_of(&self, b: &[i64]) -> Result<ClassOrder, HomologyError> {
        self.check_len(b.len())?;
        let mut t: Vec<i128> = b.iter().map(|&x| x as i128).collect();
        self.transform_int(&mut t)?;
        if self.zero_rows.iter().any(|&r| t[r] != 0) {
            return Ok(ClassOrder::Infinite);
        }
        let y = self.remainder_coords_int(&t)?;
        let rank = self.rem.rank();
        if y[rank..].iter().any(|&v| v != 0) {
            return Ok(ClassOrder::Infinite);
        }
        let mut order: i128 = 1;
        for (i, &d) in self.rem.diagonal.iter().enumerate() {
            let need = d / gcd(d, y[i]);
            order = order / gcd(order, need) * need;
        }
        Ok(ClassOrder::Finite(order as u64))
    }

    /// Some integer `x` with `A x = b`, if one exists.
    pub fn solve_int(&self, b: &[i64]) -> Result<Option<Vec<i64>>, HomologyError> {
        self.check_len(b.len())?;
        let mut t: Vec<i128> = b.iter().map(|&x| x as i128).collect();
        self.transform_int(&mut t)?;
        if self.zero_rows.iter().any(|&r| t[r] != 0) {
            return Ok(None);
        }
        let y = self.remainder_coords_int(&t)?;
        let rank = self.rem.rank();
        if y[rank..].iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let mut z = vec![0i128; self.rem_cols.len()];
        for (i, &d) in self.rem.diagonal.iter().enumerate() {
            if y[i] % d != 0 {
                return Ok(None);
            }
            z[i] = y[i] / d;
        }
        let xr = self.rem.v.mul_vec(&z)?;
        let mut x = vec![0i128; self.cols];
        for (j, &c) in self.rem_cols.iter().enumerate() {
            x[c] = xr[j];
        }
        for p in self.pivots.iter().rev() {
            let mut acc = t[p.row];
            for &(c, v) in &p.others {
                acc = v.checked_mul(x[c]).and_then(|q| acc.checked_sub(q)).ok_or(HomologyError::Overflow)?;
            }
            x[p.col] = p.sign * acc;
        }
        x.into_iter()
            .map(|v| i64::try_from(v).map_err(|_| HomologyError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    /// Some real `x` with `A x = b` (residual tolerance `tol`), if one exists.
    pub fn solve_real(&self, b: &[f64], tol: f64) -> Result<Option<Vec<f64>>, HomologyError> {
        self.check_len(b.len())?;
        let mut t = b.to_vec();
        self.transform_real(&mut t);
        if self.zero_rows.iter().any(|&r| libm::fabs(t[r]) > tol) {
            return Ok(None);
        }
        let sub: Vec<f64> = self.rem_rows.iter().map(|&r| t[r]).collect();
        let y = self.rem.u.mul_vec_f64(&sub);
        let rank = self.rem.rank();
        if y[rank..].iter().any(|&v| libm::fabs(v) > tol) {
            return Ok(None);
        }
        let mut z = vec![0.0; self.rem_cols.len()];
        for (i, &d) in self.rem.diagonal.iter().enumerate() {
            z[i] = y[i] / d as f64;
        }
        let xr = self.rem.v.mul_vec_f64(&z);
        let mut x = vec![0.0; self.cols];
        for (j, &c) in self.rem_cols.iter().enumerate() {
            x[c] = xr[j];
        }
        for p in self.pivots.iter().rev() {
            let mut acc = t[p.row];
            for &(c, v) in &p.others {
                acc -= v as f64 * x[c];
            }
            x[p.col] = p.sign as f64 * acc;
        }
        Ok(Some(x))
    }

    /// Real `x` and integer `m` with `A x = b + m`, i.e. `A x ≡ b (mod 1)`, if they exist.
    ///
    /// Solvability is read off exactly: the obstruction coordinates of `b`
    /// (zero rows and the cokernel part of the remainder) must be integers.
    pub fn solve_mod_one(&self, b: &[f64], tol: f64) -> Result<Option<(Vec<f64>, Vec<i64>)>, HomologyError> {
        self.check_len(b.len())?;
        let mut t = b.to_vec();
        self.transform_real(&mut t);
        let mut mu = vec![0i128; self.rows];
        for &r in &self.zero_rows {
            if dist_to_int(t[r]) > tol {
                return Ok(None);
            }
            mu[r] = -(libm::round(t[r]) as i128);
        }
        let sub: Vec<f64> = self.rem_rows.iter().map(|&r| t[r]).collect();
        let y = self.rem.u.mul_vec_f64(&sub);
        let rank = self.rem.rank();
        let mut nu = vec![0i128; self.rem_rows.len()];
        for i in rank..y.len() {
            if dist_to_int(y[i]) > tol {
                return Ok(None);
            }
            nu[i] = -(libm::round(y[i]) as i128);
        }
        let mu_rem = self.rem.u_inv.mul_vec(&nu)?;
        for (k, &r) in self.rem_rows.iter().enumerate() {
            mu[r] = mu_rem[k];
        }
        self.untransform_int(&mut mu)?;
        let m: Vec<i64> = mu
            .iter()
            .map(|&v| i64::try_from(v).map_err(|_| HomologyError::Overflow))
            .collect::<Result<_, _>>()?;
        let rhs: Vec<f64> = b.iter().zip(&m).map(|(x, &k)| x + k as f64).collect();
        let scale = rhs.iter().fold(1.0f64, |a, x| a.max(libm::fabs(*x)));
        Ok(self.solve_real(&rhs, tol * scale)?.map(|x| (x, m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse(rows: &[&[i64]]) -> SparseMatrix {
        let cols = rows[0].len();
        let mut s = SparseMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            s.set_row(i, r.iter().enumerate().map(|(j, &v)| (j, v)).collect());
        }
        s
    }

    #[test]
    fn torsion_complex_orders() {
        // image generated by (2, 0): cokernel is Z/2 ⊕ Z
        let a = sparse(&[&[2], &[0]]);
        let s = CoboundarySolver::new(&a).unwrap();
        assert_eq!(s.invariant_factors(), vec![2]);
        assert_eq!(s.order_of(&[1, 0]).unwrap(), ClassOrder::Finite(2));
        assert_eq!(s.order_of(&[2, 0]).unwrap(), ClassOrder::Finite(1));
        assert_eq!(s.order_of(&[0, 1]).unwrap(), ClassOrder::Infinite);
        assert_eq!(s.solve_int(&[4, 0]).unwrap(), Some(vec![2]));
        assert_eq!(s.solve_int(&[1, 0]).unwrap(), None);
    }

    #[test]
    fn mod_one_solvability() {
        let a = sparse(&[&[2], &[0]]);
        let s = CoboundarySolver::new(&a).unwrap();
        // 2x ≡ 0.3 (mod 1) is solvable, second row needs an integer
        let (x, m) = s.solve_mod_one(&[0.3, 0.0], 1e-12).unwrap().unwrap();
        assert!((2.0 * x[0] - 0.3 - m[0] as f64).abs() < 1e-12);
        assert!(s.solve_mod_one(&[0.3, 0.5], 1e-12).unwrap().is_none());
    }

    #[test]
    fn unit_elimination_matches_dense_snf() {
        let rows: &[&[i64]] = &[&[1, -1, 0, 0], &[0, 1, -1, 0], &[0, 0, 1, -1], &[-1, 0, 0, 1], &[2, 0, 2, 0]];
        let a = sparse(rows);
        let s = CoboundarySolver::new(&a).unwrap();
        let dense = smith_normal_form(&a.to_dense()).unwrap();
        assert_eq!(s.invariant_factors(), dense.diagonal);
    }
}
