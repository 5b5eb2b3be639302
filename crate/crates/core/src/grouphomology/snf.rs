//! Smith normal form of integer matrices.
//!
//! Elimination runs on `i64` with checked arithmetic and restarts on
//! [`BigInt`] if an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}

impl<T: Clone + Zero + One> IntMatrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl IntMatrix<BigInt> {
    pub fn mul(&self, other: &IntMatrix<BigInt>) -> IntMatrix<BigInt> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn from_i64(m: &IntMatrix<i64>) -> Self {
        IntMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }
}

/// Integer arithmetic with overflow detection.
trait Ring: Clone + PartialEq + Zero + One + Signed + Integer {
    fn add_mul(&self, c: &Self, b: &Self) -> Option<Self>;
    fn big(&self) -> BigInt;
}

impl Ring for i64 {
    fn add_mul(&self, c: &i64, b: &i64) -> Option<i64> {
        c.checked_mul(*b).and_then(|p| self.checked_add(p))
    }

    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn add_mul(&self, c: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(self + c * b)
    }

    fn big(&self) -> BigInt {
        self.clone()
    }
}

/// Which transforms to accumulate alongside `D`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Track {
    pub p: bool,
    pub p_inv: bool,
    pub q: bool,
    pub q_inv: bool,
}

impl Track {
    pub fn all() -> Self {
        Track {
            p: true,
            p_inv: true,
            q: true,
            q_inv: true,
        }
    }
}

/// `D = P·A·Q` with `P`, `Q` unimodular and `D` diagonal with
/// `d_1 | d_2 | …`. Equivalently `A = U·D·V` with `U = P⁻¹`, `V = Q⁻¹`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// The diagonal of `D`.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub p: Option<IntMatrix<BigInt>>,
    pub p_inv: Option<IntMatrix<BigInt>>,
    pub q: Option<IntMatrix<BigInt>>,
    pub q_inv: Option<IntMatrix<BigInt>>,
}

impl SmithForm {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal[..self.rank].to_vec()
    }

    pub fn d(&self) -> IntMatrix<BigInt> {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    pub fn u(&self) -> Option<&IntMatrix<BigInt>> {
        self.p_inv.as_ref()
    }

    pub fn v(&self) -> Option<&IntMatrix<BigInt>> {
        self.q_inv.as_ref()
    }
}

struct State<T> {
    a: IntMatrix<T>,
    p: Option<IntMatrix<T>>,
    p_inv: Option<IntMatrix<T>>,
    q: Option<IntMatrix<T>>,
    q_inv: Option<IntMatrix<T>>,
}

fn row_axpy<T: Ring>(m: &mut IntMatrix<T>, dst: usize, c: &T, src: usize) -> Option<()> {
    for j in 0..m.cols {
        let s = m.get(src, j).clone();
        if !s.is_zero() {
            let v = m.get(dst, j).add_mul(c, &s)?;
            m.set(dst, j, v);
        }
    }
    Some(())
}

fn col_axpy<T: Ring>(m: &mut IntMatrix<T>, dst: usize, c: &T, src: usize) -> Option<()> {
    for i in 0..m.rows {
        let s = m.get(i, src).clone();
        if !s.is_zero() {
            let v = m.get(i, dst).add_mul(c, &s)?;
            m.set(i, dst, v);
        }
    }
    Some(())
}

fn swap_rows<T: Clone>(m: &mut IntMatrix<T>, i: usize, j: usize) {
    if i != j {
        for c in 0..m.cols {
            m.data.swap(i * m.cols + c, j * m.cols + c);
        }
    }
}

fn swap_cols<T: Clone>(m: &mut IntMatrix<T>, i: usize, j: usize) {
    if i != j {
        for r in 0..m.rows {
            m.data.swap(r * m.cols + i, r * m.cols + j);
        }
    }
}

impl<T: Ring> State<T> {
    /// `row_dst += c·row_src`.
    fn row_add(&mut self, dst: usize, c: &T, src: usize) -> Option<()> {
        row_axpy(&mut self.a, dst, c, src)?;
        if let Some(p) = &mut self.p {
            row_axpy(p, dst, c, src)?;
        }
        if let Some(pi) = &mut self.p_inv {
            col_axpy(pi, src, &-c.clone(), dst)?;
        }
        Some(())
    }

    /// `col_dst += c·col_src`.
    fn col_add(&mut self, dst: usize, c: &T, src: usize) -> Option<()> {
        col_axpy(&mut self.a, dst, c, src)?;
        if let Some(q) = &mut self.q {
            col_axpy(q, dst, c, src)?;
        }
        if let Some(qi) = &mut self.q_inv {
            row_axpy(qi, src, &-c.clone(), dst)?;
        }
        Some(())
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        swap_rows(&mut self.a, i, j);
        if let Some(p) = &mut self.p {
            swap_rows(p, i, j);
        }
        if let Some(pi) = &mut self.p_inv {
            swap_cols(pi, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        swap_cols(&mut self.a, i, j);
        if let Some(q) = &mut self.q {
            swap_cols(q, i, j);
        }
        if let Some(qi) = &mut self.q_inv {
            swap_rows(qi, i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        let neg = |m: &mut IntMatrix<T>, r: usize| {
            for c in 0..m.cols {
                let v = -m.get(r, c).clone();
                m.set(r, c, v);
            }
        };
        let neg_col = |m: &mut IntMatrix<T>, c: usize| {
            for r in 0..m.rows {
                let v = -m.get(r, c).clone();
                m.set(r, c, v);
            }
        };
        neg(&mut self.a, i);
        if let Some(p) = &mut self.p {
            neg(p, i);
        }
        if let Some(pi) = &mut self.p_inv {
            neg_col(pi, i);
        }
    }

    /// Position of the smallest nonzero entry in the block `[t.., t..]`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a.get(i, j).abs();
                if !v.is_zero() && best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                    let one = v.is_one();
                    best = Some((i, j, v));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Option<usize> {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((i, j)) = self.smallest(t) else {
                break;
            };
            self.row_swap(t, i);
            self.col_swap(t, j);
            loop {
                let mut clean = true;
                let pivot = self.a.get(t, t).clone();
                for i in t + 1..rows {
                    let v = self.a.get(i, t).clone();
                    if v.is_zero() {
                        continue;
                    }
                    let (q, r) = v.div_mod_floor(&pivot);
                    self.row_add(i, &-q, t)?;
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    let v = self.a.get(t, j).clone();
                    if v.is_zero() {
                        continue;
                    }
                    let (q, r) = v.div_mod_floor(&pivot);
                    self.col_add(j, &-q, t)?;
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    if pivot.abs().is_one() {
                        break;
                    }
                    // Divisibility of the rest of the block by the pivot.
                    let bad = (t + 1..rows)
                        .find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot)));
                    match bad {
                        None => break,
                        Some(i) => self.row_add(t, &T::one(), i)?,
                    }
                    continue;
                }
                // A smaller remainder appeared in row or column t: make it the pivot.
                let mut best = (t, t, pivot.abs());
                for i in t + 1..rows {
                    let v = self.a.get(i, t).abs();
                    if !v.is_zero() && v < best.2 {
                        best = (i, t, v);
                    }
                }
                for j in t + 1..cols {
                    let v = self.a.get(t, j).abs();
                    if !v.is_zero() && v < best.2 {
                        best = (t, j, v);
                    }
                }
                self.row_swap(t, best.0);
                self.col_swap(t, best.1);
            }
            if self.a.get(t, t).is_negative() {
                self.row_negate(t);
            }
            t += 1;
        }
        Some(t)
    }
}

fn to_big<T: Ring>(m: IntMatrix<T>) -> IntMatrix<BigInt> {
    IntMatrix {
        rows: m.rows,
        cols: m.cols,
        data: m.data.iter().map(Ring::big).collect(),
    }
}

fn solve<T: Ring>(a: IntMatrix<T>, track: Track) -> Option<SmithForm> {
    let (rows, cols) = (a.rows, a.cols);
    let mut st = State {
        a,
        p: track.p.then(|| IntMatrix::identity(rows)),
        p_inv: track.p_inv.then(|| IntMatrix::identity(rows)),
        q: track.q.then(|| IntMatrix::identity(cols)),
        q_inv: track.q_inv.then(|| IntMatrix::identity(cols)),
    };
    let rank = st.run()?;
    let diagonal = (0..rows.min(cols)).map(|i| st.a.get(i, i).big()).collect();
    drop(st.a);
    Some(SmithForm {
        rows,
        cols,
        diagonal,
        rank,
        p: st.p.map(to_big),
        p_inv: st.p_inv.map(to_big),
        q: st.q.map(to_big),
        q_inv: st.q_inv.map(to_big),
    })
}

/// Smith normal form of `a`, accumulating the requested transforms.
pub fn smith_normal_form(a: &IntMatrix<i64>, track: Track) -> SmithForm {
    solve(a.clone(), track).unwrap_or_else(|| {
        solve(IntMatrix::from_i64(a), track).expect("big integers never overflow")
    })
}

/// Same, starting from a big-integer matrix.
pub fn smith_normal_form_big(a: &IntMatrix<BigInt>, track: Track) -> SmithForm {
    solve(a.clone(), track).expect("big integers never overflow")
}

/// Converts to `i64`, failing if the value does not fit.
pub fn small(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Invalid(format!("integer {v} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix<i64> {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn factors(a: &IntMatrix<i64>) -> Vec<i64> {
        smith_normal_form(a, Track::default())
            .invariant_factors()
            .iter()
            .map(|v| small(v).unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(factors(&m(&[&[2, 4], &[6, 8]])), vec![2, 4]);
        assert_eq!(
            factors(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            vec![1, 1, 1]
        );
        assert!(factors(&m(&[&[0, 0], &[0, 0]])).is_empty());
        assert_eq!(factors(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let a = m(&[&[big, big - 1], &[big - 7, big - 2]]);
        let s = smith_normal_form(&a, Track::all());
        let back = s
            .p_inv
            .as_ref()
            .unwrap()
            .mul(&s.d())
            .mul(s.q_inv.as_ref().unwrap());
        assert_eq!(back, IntMatrix::from_i64(&a));
    }

    /// Determinantal-divisor oracle for 2×2 matrices: `d_1 = gcd(entries)`,
    /// `d_1 d_2 = |det|`.
    fn oracle_2x2(a: [[i64; 2]; 2]) -> Vec<i64> {
        let g = a.iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
        let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]).abs();
        match (g, det) {
            (0, _) => vec![],
            (g, 0) => vec![g],
            (g, det) => vec![g, det / g],
        }
    }

    proptest! {
        #[test]
        fn reconstructs_and_is_diagonal(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let a = IntMatrix::from_rows(&(0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect::<Vec<_>>());
            let s = smith_normal_form(&a, Track::all());
            let big = IntMatrix::from_i64(&a);
            prop_assert_eq!(s.p.as_ref().unwrap().mul(&big).mul(s.q.as_ref().unwrap()), s.d());
            prop_assert_eq!(s.p_inv.as_ref().unwrap().mul(&s.d()).mul(s.q_inv.as_ref().unwrap()), big);
            prop_assert_eq!(s.p.as_ref().unwrap().mul(s.p_inv.as_ref().unwrap()), IntMatrix::identity(rows));
            prop_assert_eq!(s.q.as_ref().unwrap().mul(s.q_inv.as_ref().unwrap()), IntMatrix::identity(cols));
            for i in 0..rows {
                for j in 0..cols {
                    if i != j || i >= s.rank {
                        prop_assert!(s.d().get(i, j).is_zero());
                    }
                }
            }
            let f = s.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(f.iter().all(|v| v.is_positive()));
        }

        #[test]
        fn two_by_two_matches_determinantal_divisors(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            prop_assert_eq!(factors(&m(&[&[a, b], &[c, d]])), oracle_2x2([[a, b], [c, d]]));
        }
    }
}
