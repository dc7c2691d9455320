//! Dense exact matrices over the rationals and the integers, with
//! fraction-free elimination, kernels and integer normal forms.
//!
//! Rank and determinant use Bareiss single-step fraction-free elimination.
//! Integer kernels go through the Smith normal form so that the returned
//! basis spans the *saturated* kernel lattice.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{gcd, int, lcm, Int, Rat};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rat::rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.at(k, c);
                    *out.at_mut(r, c) += add;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    /// Scales every row by the lcm of its denominators, dropping to integers.
    /// Returns the scaled matrix and the per-row scale factors.
    pub fn clear_denominators(&self) -> (IntMatrix, Vec<Int>) {
        let mut data = Vec::with_capacity(self.data.len());
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut scale = Int::one();
            for c in 0..self.cols {
                scale = lcm(&scale, self.at(r, c).denom());
            }
            if scale.is_zero() {
                scale = Int::one();
            }
            for c in 0..self.cols {
                let v = self.at(r, c) * Rat::from_integer(scale.clone());
                debug_assert!(v.denom().is_one());
                data.push(v.numer().clone());
            }
            scales.push(scale);
        }
        (IntMatrix::new(self.rows, self.cols, data), scales)
    }

    /// Rank over the rationals, by fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let (m, _) = self.clear_denominators();
        m.rank()
    }

    /// Exact determinant. Rejects non-square input.
    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (m, scales) = self.clear_denominators();
        let det = m.determinant()?;
        let mut denom = Int::one();
        for s in &scales {
            denom *= s;
        }
        Ok(Rat::new(det, denom))
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.at(r, c).recip();
            for cc in c..m.cols {
                let v = m.at(r, cc) * &inv;
                *m.at_mut(r, cc) = v;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for cc in c..m.cols {
                        let v = m.at(i, cc) - &f * m.at(r, cc);
                        *m.at_mut(i, cc) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Columns of the result form a basis of the right kernel; the column
    /// count is `cols - rank`. The basis is the standard one read off the
    /// reduced row echelon form (one vector per free column).
    pub fn rational_kernel_basis(&self) -> RatMatrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = RatMatrix::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, k) = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = -rref.at(r, fc);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|v| v.denom().is_one()) {
            Some(IntMatrix::new(
                self.rows,
                self.cols,
                self.data.iter().map(|v| v.numer().clone()).collect(),
            ))
        } else {
            None
        }
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.at(k, c);
                    *out.at_mut(r, c) += add;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .map(|v| Rat::from_integer(v.clone()))
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row(dst) += f * row(src)
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Int) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = f * self.at(src, c);
            *self.at_mut(dst, c) += add;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Int) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = f * self.at(r, src);
            *self.at_mut(r, dst) += add;
        }
    }

    /// Rank via Bareiss fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Int::one();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| !m.at(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pr);
            for r in rank + 1..m.rows {
                for cc in c + 1..m.cols {
                    let v = (m.at(rank, c) * m.at(r, cc) - m.at(r, c) * m.at(rank, cc)) / &prev;
                    *m.at_mut(r, cc) = v;
                }
                *m.at_mut(r, c) = Int::zero();
            }
            prev = m.at(rank, c).clone();
            rank += 1;
        }
        rank
    }

    /// Exact determinant via Bareiss. Rejects non-square input.
    pub fn determinant(&self) -> Result<Int> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut m = self.clone();
        let mut prev = Int::one();
        let mut sign = 1i32;
        for k in 0..n {
            let Some(pr) = (k..n).find(|&r| !m.at(r, k).is_zero()) else {
                return Ok(Int::zero());
            };
            if pr != k {
                m.swap_rows(k, pr);
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = (m.at(k, k) * m.at(r, c) - m.at(r, k) * m.at(k, c)) / &prev;
                    *m.at_mut(r, c) = v;
                }
                *m.at_mut(r, k) = Int::zero();
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// Row-style Hermite normal form: returns `(H, U)` with `H = U * self`,
    /// `U` unimodular, `H` in row echelon form with positive pivots and
    /// entries above each pivot reduced modulo it.
    pub fn row_hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut r = 0;
        for c in 0..h.cols {
            if r == h.rows {
                break;
            }
            // Euclidean reduction of column c below row r.
            loop {
                let mut best: Option<usize> = None;
                for i in r..h.rows {
                    if !h.at(i, c).is_zero()
                        && best.is_none_or(|b| h.at(i, c).abs() < h.at(b, c).abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                h.swap_rows(r, b);
                u.swap_rows(r, b);
                let mut done = true;
                for i in r + 1..h.rows {
                    if !h.at(i, c).is_zero() {
                        let q = div_round(h.at(i, c), h.at(r, c));
                        let f = -q;
                        h.add_row_multiple(i, r, &f);
                        u.add_row_multiple(i, r, &f);
                        if !h.at(i, c).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h.at(r, c).is_zero() {
                continue;
            }
            if h.at(r, c).is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            for i in 0..r {
                let q = num_integer::Integer::div_floor(h.at(i, c), h.at(r, c));
                let f = -q;
                h.add_row_multiple(i, r, &f);
                u.add_row_multiple(i, r, &f);
            }
            r += 1;
        }
        (h, u)
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// Smith normal form `S = U * self * V` with `U`, `V` unimodular and
    /// `S` diagonal with nonnegative invariant factors `t_1 | t_2 | ...`.
    pub fn smith_normal_form(&self) -> Smith {
        let mut s = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let dim = self.rows.min(self.cols);
        let mut t = 0;
        while t < dim {
            // Pick the nonzero entry of smallest absolute value in s[t.., t..].
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..s.rows {
                for c in t..s.cols {
                    if !s.at(r, c).is_zero()
                        && pivot.is_none_or(|(pr, pc)| s.at(r, c).abs() < s.at(pr, pc).abs())
                    {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else { break };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);
            let mut clean = true;
            for r in t + 1..s.rows {
                if !s.at(r, t).is_zero() {
                    let q = div_round(s.at(r, t), s.at(t, t));
                    let f = -q;
                    s.add_row_multiple(r, t, &f);
                    u.add_row_multiple(r, t, &f);
                    if !s.at(r, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for c in t + 1..s.cols {
                if !s.at(t, c).is_zero() {
                    let q = div_round(s.at(t, c), s.at(t, t));
                    let f = -q;
                    s.add_col_multiple(c, t, &f);
                    v.add_col_multiple(c, t, &f);
                    if !s.at(t, c).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let mut offender = None;
            'scan: for r in t + 1..s.rows {
                for c in t + 1..s.cols {
                    if !(s.at(r, c) % s.at(t, t)).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            if let Some(r) = offender {
                let one = Int::one();
                s.add_row_multiple(t, r, &one);
                u.add_row_multiple(t, r, &one);
                continue;
            }
            if s.at(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        Smith { s, u, v }
    }

    /// Basis of the saturated integer kernel lattice, as matrix columns.
    /// Every integer vector in the rational kernel is an integer combination
    /// of the returned columns.
    pub fn lattice_kernel_basis(&self) -> IntMatrix {
        let Smith { s, v, .. } = self.smith_normal_form();
        let rank = (0..self.rows.min(self.cols))
            .take_while(|&i| !s.at(i, i).is_zero())
            .count();
        let mut out = IntMatrix::zero(self.cols, self.cols - rank);
        for (k, c) in (rank..self.cols).enumerate() {
            for r in 0..self.cols {
                *out.at_mut(r, k) = v.at(r, c).clone();
            }
        }
        out
    }

    /// Divides every entry by the gcd of all entries (no-op on zero matrices).
    pub fn primitive(&self) -> IntMatrix {
        let mut g = Int::zero();
        for v in &self.data {
            g = gcd(&g, v);
        }
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|v| v / &g).collect(),
        )
    }

    /// True when the column lattices of `self` and `other` coincide.
    pub fn same_column_lattice(&self, other: &IntMatrix) -> bool {
        if self.rows != other.rows {
            return false;
        }
        let (ha, _) = self.transpose().row_hnf();
        let (hb, _) = other.transpose().row_hnf();
        let trim = |h: &IntMatrix| -> Vec<Vec<Int>> {
            (0..h.rows())
                .filter(|&r| h.row(r).iter().any(|v| !v.is_zero()))
                .map(|r| h.row(r).to_vec())
                .collect()
        };
        trim(&ha) == trim(&hb)
    }
}

/// Result of [`IntMatrix::smith_normal_form`].
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.at(i, i).clone())
            .take_while(|t| !t.is_zero())
            .collect()
    }
}

/// Rounded division, minimizing the remainder's absolute value.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if Int::from(2) * r.abs() > b.abs() {
        q + Int::one()
    } else {
        q
    }
}
