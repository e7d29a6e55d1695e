//! Exact arithmetic in `Q[A, A^-1]`.
//!
//! A [`LaurentPoly`] is a sparse map from exponents of `A` to nonzero
//! rationals. The ring is a PID; [`LaurentPoly::div_rem`] is Euclidean with
//! respect to the degree span, and every nonzero element has a canonical
//! associate (monic, nonzero constant term, no negative exponents).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat_int(c))
    }

    /// `A^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer `(exponent, coefficient)` pairs.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| (e, rat_int(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of `Q[A^{±1}]` are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`; the Euclidean degree. `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self += a * b` without materialising the product.
    pub fn add_mul(&mut self, a: &LaurentPoly, b: &LaurentPoly) {
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                self.add_term(ea + eb, ca * cb);
            }
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Euclidean division: `self = q * d + r` with `span(r) < span(d)` (or `r = 0`).
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let ms = self.min_exp().unwrap();
        let md = d.min_exp().unwrap();
        let num = self.shift(-ms);
        let den = d.shift(-md);
        let (q, r) = poly_div_rem(&num, &den);
        (q.shift(ms - md), r.shift(ms))
    }

    /// Exact quotient, if `d` divides `self` in `Q[A^{±1}]`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if d.is_unit() {
            let (e, c) = d.terms().next().unwrap();
            return Some(self.shift(-e).scale(&c.recip()));
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Splits `self = unit_scalar * A^unit_log * canonical`.
    pub fn normalize_unit(&self) -> Result<(LaurentPoly, i64, Rational)> {
        let lo = self.min_exp().ok_or(Error::ZeroAssociate)?;
        let lc = self.leading_coeff().unwrap().clone();
        let canonical = self.shift(-lo).scale(&lc.recip());
        Ok((canonical, lo, lc))
    }

    /// Canonical associate; zero maps to zero.
    pub fn canonical(&self) -> LaurentPoly {
        match self.normalize_unit() {
            Ok((c, _, _)) => c,
            Err(_) => Self::zero(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        !self.is_zero() && self.min_exp() == Some(0) && self.leading_coeff().unwrap().is_one()
    }

    pub fn associate_of(&self, other: &LaurentPoly) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Division in `Q[A]`; both inputs have no negative exponents.
fn poly_div_rem(num: &LaurentPoly, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let dd = den.max_exp().unwrap();
    let lc_inv = den.leading_coeff().unwrap().recip();
    let mut q = LaurentPoly::zero();
    let mut r = num.clone();
    while let Some(top) = r.max_exp() {
        if top < dd {
            break;
        }
        let c = r.leading_coeff().unwrap() * &lc_inv;
        let shift = top - dd;
        for (e, v) in den.terms() {
            r.add_term(e + shift, -(v * &c));
        }
        q.add_term(shift, c);
    }
    (q, r)
}

/// Canonical greatest common divisor.
pub fn lp_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let mut a = p.canonical();
    let mut b = q.canonical();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.canonical();
    }
    Ok(a)
}

/// Extended Euclid: returns `(g, s, t)` with `s*p + t*q = g`, `g` canonical.
pub fn lp_xgcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroGcd);
    }
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(), LaurentPoly::zero());
    let (mut t0, mut t1) = (LaurentPoly::zero(), LaurentPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&quot * &s1);
        let t2 = &t0 - &(&quot * &t1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (g, log, scalar) = r0.normalize_unit()?;
    let inv = LaurentPoly::monomial(-log, scalar.recip());
    Ok((g, &s0 * &inv, &t0 * &inv))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match (*e, show_coeff) {
                (0, _) => {}
                (1, true) => write!(f, "*A")?,
                (1, false) => write!(f, "A")?,
                (e, true) => write!(f, "*A^{e}")?,
                (e, false) => write!(f, "A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        out.add_mul(self, rhs);
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// ---------------------------------------------------------------------------
// Text form: a list of [exponent, numerator, denominator] triples.

fn bigint_to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

fn json_to_bigint(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("expected an integer, got {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer string {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            seq.serialize_element(&(
                serde_json::Value::from(*e),
                bigint_to_json(c.numer()),
                bigint_to_json(c.denom()),
            ))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of [exponent, numerator, denominator] triples")
            }
            fn visit_seq<S: SeqAccess<'de>>(self, mut seq: S) -> std::result::Result<LaurentPoly, S::Error> {
                let mut p = LaurentPoly::zero();
                let mut seen = std::collections::BTreeSet::new();
                while let Some((e, n, d)) =
                    seq.next_element::<(i64, serde_json::Value, serde_json::Value)>()?
                {
                    let n = json_to_bigint(&n).map_err(de::Error::custom)?;
                    let d = json_to_bigint(&d).map_err(de::Error::custom)?;
                    if !d.is_positive() {
                        return Err(de::Error::custom("denominator must be positive"));
                    }
                    if !seen.insert(e) {
                        return Err(de::Error::custom(format!("duplicate exponent {e}")));
                    }
                    p.add_term(e, Rational::new(n, d));
                }
                Ok(p)
            }
        }
        d.deserialize_seq(V)
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic detection.

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

fn divisors(m: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, k) in factorize(m) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Dense integer polynomial, low degree first.
type DensePoly = Vec<BigInt>;

fn dense_mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic divisor.
fn dense_div_monic(a: &DensePoly, d: &DensePoly) -> DensePoly {
    let mut r = a.clone();
    let dd = d.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, v) in d.iter().enumerate() {
            r[k + j] -= &c * v;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

fn cyclotomic_dense(m: u64, cache: &mut HashMap<u64, DensePoly>) -> DensePoly {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // Phi_m = (A^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut den: DensePoly = vec![BigInt::one()];
    for d in divisors(m) {
        if d < m {
            let phi_d = cyclotomic_dense(d, cache);
            den = dense_mul(&den, &phi_d);
        }
    }
    let out = dense_div_monic(&num, &den);
    cache.insert(m, out.clone());
    out
}

/// The `m`-th cyclotomic polynomial, by the recursive quotient formula.
pub fn cyclotomic(m: u64) -> LaurentPoly {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut cache = HashMap::new();
    cyclotomic_with(m, &mut cache)
}

fn cyclotomic_with(m: u64, cache: &mut HashMap<u64, DensePoly>) -> LaurentPoly {
    // Phi_m(A) = Phi_rad(m)(A^(m / rad(m))) keeps the quotient degrees small.
    let rad: u64 = factorize(m).iter().map(|(p, _)| p).product();
    let stride = (m / rad) as i64;
    let base = cyclotomic_dense(rad, cache);
    LaurentPoly::from_terms(
        base.into_iter()
            .enumerate()
            .map(|(i, c)| (i as i64 * stride, Rational::from_integer(c))),
    )
}

/// Orders `m` with `Phi_m | p`, each with its multiplicity, in increasing order.
pub fn cyclotomic_orders(p: &LaurentPoly) -> Result<Vec<(u64, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroCyclotomic);
    }
    let mut rest = p.canonical();
    let span = rest.span().unwrap() as u64;
    let mut out = Vec::new();
    if span == 0 {
        return Ok(out);
    }
    // phi(m) >= sqrt(m / 2), so every candidate satisfies m <= 2 * span^2.
    let bound = 2 * span * span;
    let mut cache = HashMap::new();
    for m in 1..=bound.max(2) {
        if euler_phi(m) > span {
            continue;
        }
        let phi = cyclotomic_with(m, &mut cache);
        let mut mult = 0;
        while rest.span().unwrap_or(0) >= phi.span().unwrap() {
            match rest.exact_div(&phi) {
                Some(q) => {
                    rest = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            out.push((m, mult));
        }
    }
    Ok(out)
}

/// Keeps orders `m = 2N` with `N` odd.
pub fn exceptional_order_filter(orders: &[u64]) -> Vec<u64> {
    orders.iter().copied().filter(|m| m % 4 == 2).collect()
}

// ---------------------------------------------------------------------------
// Localization.

/// `Q[A^{±1}][U^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedRing {
    inverted: LaurentPoly,
}

impl LocalizedRing {
    pub fn new(inverted: &LaurentPoly) -> Result<Self> {
        if inverted.is_zero() {
            return Err(Error::ZeroLocalization);
        }
        Ok(Self {
            inverted: inverted.canonical(),
        })
    }

    pub fn inverted(&self) -> &LaurentPoly {
        &self.inverted
    }

    /// Removes every factor shared with `U`; returns a canonical associate.
    /// Two elements are associates in `R_U` iff their stripped forms agree.
    pub fn strip(&self, p: &LaurentPoly) -> LaurentPoly {
        if p.is_zero() {
            return LaurentPoly::zero();
        }
        let mut rest = p.canonical();
        loop {
            let g = lp_gcd(&rest, &self.inverted).expect("nonzero");
            if g.is_one() {
                return rest;
            }
            rest = rest.exact_div(&g).expect("gcd divides").canonical();
        }
    }

    pub fn is_unit(&self, p: &LaurentPoly) -> bool {
        !p.is_zero() && self.strip(p).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    #[test]
    fn normalize_examples() {
        let (c, log, s) = lp(&[(-2, 3), (-1, 3)]).normalize_unit().unwrap();
        assert_eq!(c, lp(&[(0, 1), (1, 1)]));
        assert_eq!((log, s), (-2, rat_int(3)));

        let (c, log, s) = lp(&[(5, 1)]).normalize_unit().unwrap();
        assert_eq!((c, log, s), (LaurentPoly::one(), 5, rat_int(1)));

        let (c, log, s) = lp(&[(2, -2), (-2, -2)]).normalize_unit().unwrap();
        assert_eq!(c, lp(&[(4, 1), (0, 1)]));
        assert_eq!((log, s), (-2, rat_int(-2)));
    }

    #[test]
    fn normalize_zero_errors() {
        let err = LaurentPoly::zero().normalize_unit().unwrap_err();
        assert_eq!(err.to_string(), "zero has no canonical associate");
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(lp_gcd(&lp(&[(2, 1), (0, -1)]), &lp(&[(1, 1), (0, -1)])).unwrap(), lp(&[(1, 1), (0, -1)]));
        assert_eq!(lp_gcd(&lp(&[(4, 1), (0, 1)]), &lp(&[(2, 1), (0, 1)])).unwrap(), LaurentPoly::one());
        let p = lp(&[(-3, 6), (1, 2)]);
        assert_eq!(lp_gcd(&p, &LaurentPoly::zero()).unwrap(), p.canonical());
        assert!(lp_gcd(&LaurentPoly::zero(), &LaurentPoly::zero()).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let p = lp(&[(3, 1), (0, -1)]);
        let q = lp(&[(2, 1), (0, -1)]);
        let (g, s, t) = lp_xgcd(&p, &q).unwrap();
        assert_eq!(g, lp(&[(1, 1), (0, -1)]));
        assert_eq!(&(&s * &p) + &(&t * &q), g);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_orders(&lp(&[(1, 1), (0, 1)])).unwrap(), vec![(2, 1)]);
        assert_eq!(cyclotomic_orders(&lp(&[(2, 1), (1, -1), (0, 1)])).unwrap(), vec![(6, 1)]);
        assert_eq!(cyclotomic_orders(&lp(&[(2, 1), (0, -2)])).unwrap(), vec![]);
        assert!(cyclotomic_orders(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn cyclotomic_multiplicity_and_shift() {
        // A^-3 (A+1)^2 (A^2+1)
        let p = lp(&[(1, 1), (0, 1)]).pow(2) * lp(&[(2, 1), (0, 1)]).shift(-3);
        assert_eq!(cyclotomic_orders(&p).unwrap(), vec![(2, 2), (4, 1)]);
    }

    #[test]
    fn cyclotomic_small_values() {
        assert_eq!(cyclotomic(1), lp(&[(1, 1), (0, -1)]));
        assert_eq!(cyclotomic(8), lp(&[(4, 1), (0, 1)]));
        assert_eq!(cyclotomic(12), lp(&[(4, 1), (2, -1), (0, 1)]));
        assert_eq!(cyclotomic(9), lp(&[(6, 1), (3, 1), (0, 1)]));
        for m in 1..=40 {
            assert_eq!(cyclotomic(m).span().unwrap() as u64, euler_phi(m));
        }
    }

    #[test]
    fn exceptional_filter_examples() {
        assert_eq!(exceptional_order_filter(&[2, 4, 6, 8, 10]), vec![2, 6, 10]);
        assert_eq!(exceptional_order_filter(&[]), Vec::<u64>::new());
        assert_eq!(exceptional_order_filter(&[14, 12]), vec![14]);
    }

    #[test]
    fn euclidean_division_shrinks_span() {
        let a = lp(&[(-4, 3), (2, 1), (5, -7)]);
        let d = lp(&[(-1, 2), (1, 1)]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.is_zero() || r.span().unwrap() < d.span().unwrap());
    }

    #[test]
    fn text_form() {
        let p = lp(&[(2, 1), (-2, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[2,1,1],[-2,1,1]]");
        let q: LaurentPoly = serde_json::from_str("[[0,1,2],[3,\"-5\",1]]").unwrap();
        assert_eq!(q, LaurentPoly::from_terms([(0, rat(1, 2)), (3, rat_int(-5))]));
        assert!(serde_json::from_str::<LaurentPoly>("[[0,1,0]]").is_err());
        assert!(serde_json::from_str::<LaurentPoly>("[[0,1,1],[0,2,1]]").is_err());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(2, rat_int(1)), (-2, rat(-1, 2)), (0, rat_int(3))]);
        assert_eq!(p.to_string(), "A^2 + 3 - 1/2*A^-2");
    }

    #[test]
    fn localization_strip() {
        let u = lp(&[(4, 1), (0, 1)]);
        let ring = LocalizedRing::new(&u).unwrap();
        let f = &u * &(&u * &lp(&[(1, 1), (0, 1)]));
        assert_eq!(ring.strip(&f), lp(&[(1, 1), (0, 1)]));
        assert!(ring.is_unit(&u.shift(7)));
        assert!(!ring.is_unit(&lp(&[(1, 1), (0, -1)])));
        assert!(LocalizedRing::new(&LaurentPoly::zero()).is_err());
    }
}
