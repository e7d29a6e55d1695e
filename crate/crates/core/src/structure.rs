//! Module structure over `R_U = Q[A^{±1}][U^-1]`.
//!
//! A presentation matrix (rows = relations, columns = band generators) is
//! brought to Smith normal form over `Q[A^{±1}]`. Zero diagonal entries give
//! the free rank, which is the dimension over `Q(A)`. Nonzero, non-unit
//! factors coprime to `U` are torsion; they make the fiber at a root of
//! unity jump by one per factor vanishing there.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filling::RelationRow;
use crate::torus::PairClass;
use crate::laurent::{cyclotomic, cyclotomic_orders, exceptional_order_filter, lp_xgcd, LaurentPoly, LocalizedRing, Rational};

/// Dense matrix over `Q[A^{±1}]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= c * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        let neg = -c;
        for j in 0..self.cols {
            if self[(src, j)].is_zero() {
                continue;
            }
            let s = self[(src, j)].clone();
            self[(dst, j)].add_mul(&s, &neg);
        }
    }

    /// `col[dst] -= c * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        let neg = -c;
        for i in 0..self.rows {
            if self[(i, src)].is_zero() {
                continue;
            }
            let s = self[(i, src)].clone();
            self[(i, dst)].add_mul(&s, &neg);
        }
    }

    fn scale_row(&mut self, i: usize, c: &LaurentPoly) {
        for j in 0..self.cols {
            if !self[(i, j)].is_zero() {
                self[(i, j)] = &self[(i, j)] * c;
            }
        }
    }

    /// Replaces rows `a`, `b` by `(m00 ra + m01 rb, m10 ra + m11 rb)`.
    fn mix_rows(&mut self, a: usize, b: usize, m: [&LaurentPoly; 4]) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = &(m[0] * &x) + &(m[1] * &y);
            self[(b, j)] = &(m[2] * &x) + &(m[3] * &y);
        }
    }

    /// Replaces columns `a`, `b` by `(m00 ca + m10 cb, m01 ca + m11 cb)`.
    fn mix_cols(&mut self, a: usize, b: usize, m: [&LaurentPoly; 4]) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = &(&x * m[0]) + &(&y * m[2]);
            self[(i, b)] = &(&x * m[1]) + &(&y * m[3]);
        }
    }
}

/// Assembles harvested rows over the given band columns. Fails if a row leaves the band.
pub fn presentation_matrix(rows: &[RelationRow], columns: &[(usize, PairClass)]) -> Result<Matrix> {
    let index: std::collections::BTreeMap<(usize, PairClass), usize> =
        columns.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut m = Matrix::zeros(rows.len(), columns.len());
    for (i, r) in rows.iter().enumerate() {
        for (key, c) in r.row.iter() {
            let j = *index
                .get(key)
                .ok_or_else(|| Error::Internal(format!("harvested row has a term outside the band at {}", key.1)))?;
            m[(i, j)] = c.clone();
        }
    }
    Ok(m)
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

/// Nonzero invariant factors (canonical, divisibility chain) plus the free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantFactors {
    pub factors: Vec<LaurentPoly>,
    /// Number of zero diagonal entries, i.e. `columns - rank`.
    pub zero_count: usize,
}

impl InvariantFactors {
    pub fn nonunit(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.factors.iter().filter(|f| !f.is_one())
    }

    pub fn chain_holds(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

#[derive(Clone, Debug)]
pub struct SnfResult {
    /// The diagonal matrix `D`, same shape as the input.
    pub diagonal: Matrix,
    pub factors: InvariantFactors,
    /// `L` and `R` with `L * M * R = D`, when requested.
    pub left: Option<Matrix>,
    pub right: Option<Matrix>,
}

/// The unit `c A^k` making the entries integral, primitive and with smallest exponent 0;
/// `None` when that unit is 1 or all entries vanish.
fn tidying_unit<'a>(entries: impl Iterator<Item = &'a LaurentPoly> + Clone) -> Option<LaurentPoly> {
    let mut lcm = BigInt::one();
    let mut min_exp = i64::MAX;
    for p in entries.clone().filter(|p| !p.is_zero()) {
        lcm = lcm.lcm(&p.denominator_lcm());
        min_exp = min_exp.min(p.min_exp().unwrap());
    }
    if min_exp == i64::MAX {
        return None;
    }
    let mut gcd = BigInt::zero();
    for p in entries {
        for (_, c) in p.terms() {
            gcd = gcd.gcd((c * Rational::from_integer(lcm.clone())).numer());
        }
    }
    let unit = LaurentPoly::monomial(-min_exp, Rational::new(lcm, gcd));
    (!unit.is_one()).then_some(unit)
}

struct SnfState {
    m: Matrix,
    left: Option<Matrix>,
    right: Option<Matrix>,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        self.m.row_axpy(dst, src, c);
        if let Some(l) = &mut self.left {
            l.row_axpy(dst, src, c);
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, c: &LaurentPoly) {
        self.m.col_axpy(dst, src, c);
        if let Some(r) = &mut self.right {
            r.col_axpy(dst, src, c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &LaurentPoly) {
        self.m.scale_row(i, c);
        if let Some(l) = &mut self.left {
            l.scale_row(i, c);
        }
    }

    /// Multiplies row `i` by a unit that keeps its coefficients integral and small.
    fn tidy_row(&mut self, i: usize) {
        if let Some(unit) = tidying_unit(self.m.row(i).iter()) {
            self.scale_row(i, &unit);
        }
    }

    /// Position of the minimal-span nonzero entry in the lower-right block, ties by position.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((i64, usize), (usize, usize))> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let e = &self.m[(i, j)];
                if let Some(span) = e.span() {
                    let key = (span, e.len());
                    if best.as_ref().is_none_or(|(k, _)| (key.0, key.1) < (k.0, k.1)) {
                        best = Some(((span, e.len()), (i, j)));
                    }
                }
            }
        }
        best.map(|(_, pos)| pos)
    }

    /// Clears row and column `t` except the pivot. An entry the pivot does not
    /// divide is combined with it by one unimodular Bezout step, which replaces
    /// the pivot by their gcd; the loop ends once the pivot divides its whole cross.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut changed = false;
            for i in t + 1..self.m.rows {
                if self.m[(i, t)].is_zero() {
                    continue;
                }
                let a = self.m[(t, t)].clone();
                let b = self.m[(i, t)].clone();
                if let Some(q) = b.exact_div(&a) {
                    self.row_axpy(i, t, &q);
                } else {
                    let (g, s, u, x, y) = bezout(&a, &b);
                    let neg_y = -&y;
                    self.m.mix_rows(t, i, [&s, &u, &neg_y, &x]);
                    if let Some(l) = &mut self.left {
                        l.mix_rows(t, i, [&s, &u, &neg_y, &x]);
                    }
                    debug_assert_eq!(self.m[(t, t)], g);
                    self.tidy_row(t);
                    changed = true;
                }
                self.tidy_row(i);
            }
            for j in t + 1..self.m.cols {
                if self.m[(t, j)].is_zero() {
                    continue;
                }
                let a = self.m[(t, t)].clone();
                let b = self.m[(t, j)].clone();
                if let Some(q) = b.exact_div(&a) {
                    self.col_axpy(j, t, &q);
                } else {
                    let (_, s, u, x, y) = bezout(&a, &b);
                    let neg_y = -&y;
                    self.m.mix_cols(t, j, [&s, &neg_y, &u, &x]);
                    if let Some(r) = &mut self.right {
                        r.mix_cols(t, j, [&s, &neg_y, &u, &x]);
                    }
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }
}

/// `(g, s, u, a/g, b/g)` with `s a + u b = g`.
fn bezout(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly) {
    let (g, s, u) = lp_xgcd(a, b).expect("nonzero");
    let x = a.exact_div(&g).expect("gcd divides");
    let y = b.exact_div(&g).expect("gcd divides");
    (g, s, u, x, y)
}

/// Smith normal form by Euclidean elimination. Pivots are minimal-span entries.
pub fn smith_normal_form(m: &Matrix, with_transforms: bool) -> SnfResult {
    let mut st = SnfState {
        m: m.clone(),
        left: with_transforms.then(|| Matrix::identity(m.rows)),
        right: with_transforms.then(|| Matrix::identity(m.cols)),
    };
    if !with_transforms {
        for i in 0..st.m.rows {
            st.tidy_row(i);
        }
    }
    let n = m.rows.min(m.cols);
    let mut rank = 0;
    for t in 0..n {
        let Some((i, j)) = st.min_entry(t) else { break };
        st.swap_rows(t, i);
        st.swap_cols(t, j);
        st.clear_cross(t);
        rank = t + 1;
    }

    // divisibility chain on the diagonal via 2x2 gcd/lcm moves
    for i in 0..rank {
        for j in i + 1..rank {
            let a = st.m[(i, i)].clone();
            let b = st.m[(j, j)].clone();
            if a.divides(&b) {
                continue;
            }
            let (g, s, t) = lp_xgcd(&a, &b).expect("nonzero");
            let x = a.exact_div(&g).unwrap();
            let y = b.exact_div(&g).unwrap();
            let neg_y = -&y;
            let neg_tb = -&(&t * &y);
            let sx = &s * &x;
            let one = LaurentPoly::one();
            // L' = [[s, t], [-y, x]], R' = [[1, -t y], [1, s x]]
            st.m.mix_rows(i, j, [&s, &t, &neg_y, &x]);
            if let Some(l) = &mut st.left {
                l.mix_rows(i, j, [&s, &t, &neg_y, &x]);
            }
            st.m.mix_cols(i, j, [&one, &neg_tb, &one, &sx]);
            if let Some(r) = &mut st.right {
                r.mix_cols(i, j, [&one, &neg_tb, &one, &sx]);
            }
        }
    }

    // canonical diagonal
    let mut factors = Vec::with_capacity(rank);
    for t in 0..rank {
        let (c, log, scalar) = st.m[(t, t)].normalize_unit().expect("nonzero pivot");
        let inv = LaurentPoly::monomial(-log, scalar.recip());
        if !inv.is_one() {
            st.m.scale_row(t, &inv);
            if let Some(l) = &mut st.left {
                l.scale_row(t, &inv);
            }
        }
        factors.push(c);
    }
    SnfResult {
        diagonal: st.m,
        factors: InvariantFactors {
            factors,
            zero_count: m.cols - rank,
        },
        left: st.left,
        right: st.right,
    }
}

/// Divides every factor by its common part with `U^inf`; units become 1.
pub fn strip_units_u(f: &InvariantFactors, u: &LaurentPoly) -> Result<InvariantFactors> {
    let ring = LocalizedRing::new(u)?;
    let stripped = InvariantFactors {
        factors: f.factors.iter().map(|x| ring.strip(x)).collect(),
        zero_count: f.zero_count,
    };
    if !stripped.chain_holds() {
        return Err(Error::Internal("divisibility chain broken after stripping U".into()));
    }
    Ok(stripped)
}

/// Free rank of the cokernel: `band_size - #nonzero factors`.
pub fn generic_dimension(f: &InvariantFactors, band_size: usize) -> usize {
    band_size - f.factors.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionOrder {
    pub order: u64,
    /// Number of invariant factors vanishing at a primitive root of this order.
    pub jump: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationProfile {
    pub generic_dimension: usize,
    pub torsion_orders: Vec<TorsionOrder>,
    pub inconclusive_orders: Vec<u64>,
}

impl SpecializationProfile {
    /// Predicted fiber dimension at a primitive `m`-th root of unity, `None` when inconclusive.
    pub fn dimension_at(&self, m: u64) -> Option<usize> {
        if self.inconclusive_orders.contains(&m) {
            return None;
        }
        let jump = self.torsion_orders.iter().find(|t| t.order == m).map_or(0, |t| t.jump);
        Some(self.generic_dimension + jump)
    }
}

/// Fiber dimensions at primitive roots of unity of order `2N`, `N` odd.
pub fn specialization_profile(f: &InvariantFactors, u: &LaurentPoly, band_size: usize) -> Result<SpecializationProfile> {
    let mut jumps = std::collections::BTreeMap::<u64, usize>::new();
    for q in f.nonunit() {
        let orders: Vec<u64> = cyclotomic_orders(q)?.into_iter().map(|(m, _)| m).collect();
        for m in exceptional_order_filter(&orders) {
            *jumps.entry(m).or_default() += 1;
        }
    }
    let u_orders: Vec<u64> = cyclotomic_orders(u)?.into_iter().map(|(m, _)| m).collect();
    Ok(SpecializationProfile {
        generic_dimension: generic_dimension(f, band_size),
        torsion_orders: jumps.into_iter().map(|(order, jump)| TorsionOrder { order, jump }).collect(),
        inconclusive_orders: exceptional_order_filter(&u_orders),
    })
}

// ---------------------------------------------------------------------------
// Independent rank computations.

/// Rank over `Q(A)` by fraction-free Gaussian elimination.
pub fn rank_over_fraction_field(m: &Matrix) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(piv) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else { continue };
        a.swap_rows(rank, piv);
        let p = a[(rank, col)].clone();
        for i in rank + 1..a.rows {
            let c = a[(i, col)].clone();
            if c.is_zero() {
                continue;
            }
            // row_i = p * row_i - c * row_rank
            for j in col..a.cols {
                a[(i, j)] = &(&p * &a[(i, j)]) - &(&c * &a[(rank, j)]);
            }
            let min_exp = a.row(i).iter().filter_map(|x| x.min_exp()).min();
            if let Some(e) = min_exp.filter(|&e| e != 0) {
                a.scale_row(i, &LaurentPoly::a_pow(-e));
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &Matrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(piv) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return LaurentPoly::zero();
            };
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                a[(i, j)] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[(i, k)] = LaurentPoly::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Arithmetic in `Q[A]/(Phi_m)`, elements stored densely with `phi(m)` coefficients.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: u64,
    modulus: LaurentPoly,
    degree: usize,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        let modulus = cyclotomic(order);
        let degree = modulus.span().unwrap() as usize;
        Self { order, modulus, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Image of a Laurent polynomial, using `A^m = 1`.
    pub fn reduce(&self, p: &LaurentPoly) -> LaurentPoly {
        let m = self.order as i64;
        let mut r = LaurentPoly::from_terms(p.terms().map(|(e, c)| (e.rem_euclid(m), c.clone())));
        // long division in Q[A] by the monic modulus
        let deg = self.degree as i64;
        while let Some(top) = r.max_exp().filter(|&e| e >= deg) {
            let c = r.coeff(top);
            r = &r - &self.modulus.shift(top - deg).scale(&c);
        }
        r
    }

    pub fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &LaurentPoly) -> LaurentPoly {
        let (g, s, _) = lp_xgcd(a, &self.modulus).expect("nonzero");
        debug_assert!(g.is_one());
        self.reduce(&s)
    }

    /// Rank of the matrix after substituting a primitive `m`-th root of unity for `A`.
    pub fn rank(&self, m: &Matrix) -> usize {
        let mut a: Vec<Vec<LaurentPoly>> = (0..m.rows).map(|i| m.row(i).iter().map(|p| self.reduce(p)).collect()).collect();
        let cols = m.cols;
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
            a.swap(rank, piv);
            let inv = self.inv(&a[rank][col]);
            let pivot_row: Vec<LaurentPoly> = a[rank].iter().map(|x| self.mul(x, &inv)).collect();
            for row in a.iter_mut().skip(rank + 1) {
                let c = row[col].clone();
                if c.is_zero() {
                    continue;
                }
                for j in col..cols {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let v = &row[j] - &self.mul(&c, &pivot_row[j]);
                    row[j] = v;
                }
            }
            a[rank] = pivot_row;
            rank += 1;
        }
        rank
    }
}

/// `columns - rank` at a primitive `m`-th root of unity.
pub fn corank_at_order(m: &Matrix, order: u64) -> usize {
    m.cols - CyclotomicField::new(order).rank(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    fn check(m: &Matrix) -> SnfResult {
        let r = smith_normal_form(m, true);
        let l = r.left.as_ref().unwrap();
        let rt = r.right.as_ref().unwrap();
        assert_eq!(&l.mul(m).mul(rt), &r.diagonal);
        assert!(r.diagonal.is_diagonal());
        assert!(determinant(l).is_unit());
        assert!(determinant(rt).is_unit());
        assert!(r.factors.chain_holds());
        r
    }

    #[test]
    fn snf_examples() {
        let a1 = lp(&[(1, 1), (0, -1)]);
        let a21 = lp(&[(2, 1), (0, -1)]);
        let m = Matrix::from_rows(vec![vec![a1.clone(), LaurentPoly::zero()], vec![LaurentPoly::zero(), a21.clone()]], 2);
        let r = check(&m);
        assert_eq!(r.factors.factors, vec![a1.clone(), a21.clone()]);
        assert_eq!(r.left.unwrap(), Matrix::identity(2));
        assert_eq!(r.right.unwrap(), Matrix::identity(2));

        let m = Matrix::from_rows(
            vec![vec![lp(&[(1, 1)]), LaurentPoly::one()], vec![LaurentPoly::one(), lp(&[(-1, 1)])]],
            2,
        );
        let r = check(&m);
        assert_eq!(r.factors.factors, vec![LaurentPoly::one()]);
        assert_eq!(r.factors.zero_count, 1);

        let m = Matrix::from_rows(
            vec![vec![a1.clone(), a1.clone()], vec![LaurentPoly::zero(), lp(&[(1, 1), (0, 1)])]],
            2,
        );
        let r = check(&m);
        assert_eq!(r.factors.factors, vec![LaurentPoly::one(), a21]);
    }

    #[test]
    fn snf_fixes_divisibility() {
        let m = Matrix::from_rows(
            vec![vec![lp(&[(1, 1), (0, -1)]), LaurentPoly::zero()], vec![LaurentPoly::zero(), lp(&[(1, 1), (0, 1)])]],
            2,
        );
        let r = check(&m);
        assert_eq!(r.factors.factors, vec![LaurentPoly::one(), lp(&[(2, 1), (0, -1)])]);
    }

    #[test]
    fn snf_tall_matrix() {
        let m = Matrix::from_rows(
            vec![
                vec![lp(&[(2, 1), (0, -1)]), lp(&[(1, 3)])],
                vec![lp(&[(1, 1), (0, 1)]), LaurentPoly::zero()],
                vec![LaurentPoly::zero(), lp(&[(1, 1), (0, 1)])],
            ],
            2,
        );
        let r = check(&m);
        assert_eq!(r.factors.factors.len(), 2);
        let r2 = smith_normal_form(&m, false);
        assert_eq!(r.factors, r2.factors);
    }

    #[test]
    fn strip_examples() {
        let u = lp(&[(4, 1), (0, 1)]);
        let f = InvariantFactors {
            factors: vec![u.clone(), &u * &lp(&[(1, 1), (0, 1)])],
            zero_count: 0,
        };
        assert_eq!(strip_units_u(&f, &u).unwrap().factors, vec![LaurentPoly::one(), lp(&[(1, 1), (0, 1)])]);

        let f = InvariantFactors {
            factors: vec![lp(&[(1, 1), (0, -1)])],
            zero_count: 0,
        };
        assert_eq!(strip_units_u(&f, &lp(&[(1, 1), (0, 1)])).unwrap().factors, vec![lp(&[(1, 1), (0, -1)])]);

        let f = InvariantFactors {
            factors: vec![LaurentPoly::one()],
            zero_count: 0,
        };
        assert_eq!(strip_units_u(&f, &u).unwrap().factors, vec![LaurentPoly::one()]);
    }

    #[test]
    fn dimension_examples() {
        let f = InvariantFactors {
            factors: vec![LaurentPoly::one(); 6],
            zero_count: 2,
        };
        assert_eq!(generic_dimension(&f, 8), 2);
        let f = InvariantFactors {
            factors: vec![LaurentPoly::one(); 5],
            zero_count: 0,
        };
        assert_eq!(generic_dimension(&f, 5), 0);
        let r = smith_normal_form(&Matrix::zeros(3, 4), false);
        assert_eq!(generic_dimension(&r.factors, 4), 4);
    }

    #[test]
    fn profile_examples() {
        let phi6 = lp(&[(2, 1), (1, -1), (0, 1)]);
        let f = InvariantFactors {
            factors: vec![phi6],
            zero_count: 1,
        };
        let prof = specialization_profile(&f, &LaurentPoly::one(), 2).unwrap();
        assert_eq!(prof.torsion_orders, vec![TorsionOrder { order: 6, jump: 1 }]);
        assert_eq!(prof.dimension_at(6), Some(prof.generic_dimension + 1));
        assert_eq!(prof.dimension_at(10), Some(prof.generic_dimension));

        let prof = specialization_profile(&InvariantFactors { factors: vec![], zero_count: 1 }, &lp(&[(4, 1), (0, 1)]), 1).unwrap();
        assert!(prof.inconclusive_orders.is_empty());

        let prof = specialization_profile(&InvariantFactors { factors: vec![], zero_count: 1 }, &lp(&[(1, 1), (0, 1)]), 1).unwrap();
        assert_eq!(prof.inconclusive_orders, vec![2]);
        assert_eq!(prof.dimension_at(2), None);
    }

    #[test]
    fn rank_and_corank() {
        let m = Matrix::from_rows(
            vec![
                vec![lp(&[(1, 1)]), LaurentPoly::one()],
                vec![LaurentPoly::one(), lp(&[(-1, 1)])],
            ],
            2,
        );
        assert_eq!(rank_over_fraction_field(&m), 1);
        // diag(1, A^2 - A + 1): rank drops at order 6 only
        let m = Matrix::from_rows(
            vec![vec![LaurentPoly::one(), LaurentPoly::zero()], vec![LaurentPoly::zero(), lp(&[(2, 1), (1, -1), (0, 1)])]],
            2,
        );
        assert_eq!(rank_over_fraction_field(&m), 2);
        assert_eq!(corank_at_order(&m, 6), 1);
        assert_eq!(corank_at_order(&m, 10), 0);
        assert_eq!(corank_at_order(&m, 2), 0);
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows(
            vec![vec![lp(&[(1, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])], vec![LaurentPoly::zero(), lp(&[(1, 1), (0, 1)])]],
            2,
        );
        assert_eq!(determinant(&m), lp(&[(2, 1), (0, -1)]));
    }
}
