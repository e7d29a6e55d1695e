//! The skein algebra of the torus in the Frohman–Gelca basis.
//!
//! Basis elements `(x, y)_T` are indexed by sign classes of lattice points,
//! since `(x, y)_T = (-x, -y)_T`. The class of `(0, 0)` stands for twice the
//! empty link, so the empty link itself is `(1/2) (0,0)_T`.
//!
//! The algebra is not commutative: the product-to-sum formula weights the two
//! resulting classes by `A^(xt - yz)` and its inverse.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{rat, LaurentPoly, Rational};

/// Canonical representative of `{(x, y), (-x, -y)}`: `x > 0`, or `x = 0` and `y >= 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PairClass {
    x: i64,
    y: i64,
}

impl PairClass {
    /// Canonicalizes any lattice point.
    pub fn new(x: i64, y: i64) -> Self {
        if x > 0 || (x == 0 && y >= 0) {
            Self { x, y }
        } else {
            Self { x: -x, y: -y }
        }
    }

    /// Accepts only canonical representatives.
    pub fn try_canonical(x: i64, y: i64) -> Result<Self> {
        let c = Self::new(x, y);
        if (c.x, c.y) == (x, y) {
            Ok(c)
        } else {
            Err(Error::NonCanonicalPair(x, y))
        }
    }

    pub const ZERO: PairClass = PairClass { x: 0, y: 0 };

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }

    pub fn point(&self) -> (i64, i64) {
        (self.x, self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `gcd(x, y)`; the Chebyshev index of the basis element.
    pub fn multiplicity(&self) -> i64 {
        self.x.gcd(&self.y)
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// `xt - yz`.
#[inline]
pub fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// A finitely supported combination of Frohman–Gelca basis classes.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TorusElement {
    support: BTreeMap<PairClass, LaurentPoly>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `(x, y)_T` with coefficient 1.
    pub fn basis(x: i64, y: i64) -> Self {
        Self::term(PairClass::new(x, y), LaurentPoly::one())
    }

    pub fn term(class: PairClass, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(class, &coeff);
        e
    }

    /// The empty link, `(1/2) (0,0)_T`.
    pub fn empty_link() -> Self {
        Self::term(PairClass::ZERO, LaurentPoly::constant(rat(1, 2)))
    }

    pub fn from_terms<I: IntoIterator<Item = (PairClass, LaurentPoly)>>(iter: I) -> Self {
        let mut e = Self::zero();
        for (c, p) in iter {
            e.add_term(c, &p);
        }
        e
    }

    pub fn add_term(&mut self, class: PairClass, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.support.entry(class).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.support.remove(&class);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PairClass, &LaurentPoly)> {
        self.support.iter()
    }

    pub fn classes(&self) -> impl Iterator<Item = PairClass> + '_ {
        self.support.keys().copied()
    }

    pub fn coeff(&self, class: PairClass) -> LaurentPoly {
        self.support.get(&class).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.support.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &TorusElement) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.support {
            out.add_term(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &TorusElement) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.support {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(k, v)| format!("({v})*{k}_T"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product of two basis classes:
/// `(x,y)_T * (z,t)_T = A^(xt-yz) (x+z, y+t)_T + A^(yz-xt) (x-z, y-t)_T`.
pub fn fg_mult_pairs(a: PairClass, b: PairClass) -> TorusElement {
    let (x, y) = a.point();
    let (z, t) = b.point();
    let d = det((x, y), (z, t));
    let mut out = TorusElement::zero();
    out.add_term(PairClass::new(x + z, y + t), &LaurentPoly::a_pow(d));
    out.add_term(PairClass::new(x - z, y - t), &LaurentPoly::a_pow(-d));
    out
}

/// Bilinear extension of the product-to-sum formula. `a` is stacked over `b`.
pub fn fg_mult(a: &TorusElement, b: &TorusElement) -> TorusElement {
    let mut out = TorusElement::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let (x, y) = ka.point();
            let (z, t) = kb.point();
            let d = det((x, y), (z, t));
            let c = ca * cb;
            out.add_term(PairClass::new(x + z, y + t), &c.shift(d));
            out.add_term(PairClass::new(x - z, y - t), &c.shift(-d));
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    pair: [i64; 2],
    coeff: LaurentPoly,
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .support
            .iter()
            .map(|(k, v)| TermRepr {
                pair: [k.x, k.y],
                coeff: v.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut out = TorusElement::zero();
        let mut seen = std::collections::BTreeSet::new();
        for t in terms {
            let class = PairClass::try_canonical(t.pair[0], t.pair[1]).map_err(D::Error::custom)?;
            if !seen.insert(class) {
                return Err(D::Error::custom(format!("duplicate pair {class}")));
            }
            out.add_term(class, &t.coeff);
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Chebyshev polynomials of the first kind, normalised T_0 = 2, T_1 = X.

/// Integer polynomial in `X`, low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChebPoly {
    coeffs: Vec<BigInt>,
}

impl ChebPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `P(-X)`.
    pub fn negate_arg(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Horner evaluation at a Laurent polynomial.
    pub fn evaluate(&self, at: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * at;
            acc += &LaurentPoly::constant(Rational::from_integer(c.clone()));
        }
        acc
    }
}

/// `T_n` by `T_n = X T_{n-1} - T_{n-2}`.
pub fn chebyshev_t(n: usize) -> ChebPoly {
    let mut prev = vec![BigInt::from(2)];
    if n == 0 {
        return ChebPoly::from_coeffs(prev);
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 2..=n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    ChebPoly::from_coeffs(cur)
}

/// Coefficients `c_k` (as rationals) with `X^n = sum_k c_k T_k(X)`.
pub fn monomial_in_chebyshev_basis(n: usize) -> Vec<Rational> {
    let mut rest: Vec<Rational> = vec![Rational::zero(); n + 1];
    rest[n] = Rational::one();
    let mut out = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        if rest[k].is_zero() {
            continue;
        }
        let t = chebyshev_t(k);
        let lead = Rational::from_integer(t.coeff(k));
        let c = &rest[k] / &lead;
        for (i, tc) in t.coeffs().iter().enumerate() {
            rest[i] -= &c * Rational::from_integer(tc.clone());
        }
        out[k] = c;
    }
    out
}

/// `gamma_(p,q)^n` (n parallel copies of a primitive curve) in the Frohman–Gelca basis.
pub fn multicurve_to_fg(p: i64, q: i64, n: usize) -> Result<TorusElement> {
    if p.gcd(&q) != 1 {
        return Err(Error::NonPrimitiveMulticurve(p, q));
    }
    let coeffs = monomial_in_chebyshev_basis(n);
    Ok(TorusElement::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| {
        let k = k as i64;
        (PairClass::new(k * p, k * q), LaurentPoly::constant(c))
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat_int;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    #[test]
    fn canonical_pairs() {
        assert_eq!(PairClass::new(-1, 2).point(), (1, -2));
        assert_eq!(PairClass::new(0, -3).point(), (0, 3));
        assert_eq!(PairClass::new(0, 0), PairClass::ZERO);
        assert!(PairClass::try_canonical(-1, 0).is_err());
        assert!(PairClass::try_canonical(0, -1).is_err());
        assert!(PairClass::try_canonical(2, -5).is_ok());
    }

    #[test]
    fn product_to_sum_examples() {
        let got = fg_mult(&TorusElement::basis(1, 0), &TorusElement::basis(0, 1));
        let want = TorusElement::from_terms([
            (PairClass::new(1, 1), lp(&[(1, 1)])),
            (PairClass::new(1, -1), lp(&[(-1, 1)])),
        ]);
        assert_eq!(got, want);

        let got = fg_mult(&TorusElement::basis(1, 0), &TorusElement::basis(1, 0));
        assert_eq!(got, TorusElement::basis(2, 0).add(&TorusElement::basis(0, 0)));

        let got = fg_mult(&TorusElement::basis(2, 1), &TorusElement::basis(1, 1));
        let want = TorusElement::from_terms([
            (PairClass::new(3, 2), lp(&[(1, 1)])),
            (PairClass::new(1, 0), lp(&[(-1, 1)])),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn order_matters() {
        let ab = fg_mult(&TorusElement::basis(1, 0), &TorusElement::basis(0, 1));
        let ba = fg_mult(&TorusElement::basis(0, 1), &TorusElement::basis(1, 0));
        assert_ne!(ab, ba);
    }

    #[test]
    fn empty_link_is_identity() {
        let v = TorusElement::from_terms([
            (PairClass::new(3, -1), lp(&[(2, 1), (0, 5)])),
            (PairClass::ZERO, lp(&[(-1, 1)])),
        ]);
        assert_eq!(fg_mult(&TorusElement::empty_link(), &v), v);
        assert_eq!(fg_mult(&v, &TorusElement::empty_link()), v);
    }

    #[test]
    fn chebyshev_examples() {
        let ints = |v: &[i64]| ChebPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect());
        assert_eq!(chebyshev_t(0), ints(&[2]));
        assert_eq!(chebyshev_t(1), ints(&[0, 1]));
        assert_eq!(chebyshev_t(2), ints(&[-2, 0, 1]));
        assert_eq!(chebyshev_t(3), ints(&[0, -3, 0, 1]));
        let t5 = chebyshev_t(5);
        assert_eq!(t5.negate_arg(), t5.neg());
    }

    #[test]
    fn multicurve_examples() {
        assert_eq!(multicurve_to_fg(1, 0, 1).unwrap(), TorusElement::basis(1, 0));
        assert_eq!(
            multicurve_to_fg(1, 0, 2).unwrap(),
            TorusElement::basis(2, 0).add(&TorusElement::basis(0, 0))
        );
        assert_eq!(
            multicurve_to_fg(1, 1, 3).unwrap(),
            TorusElement::basis(3, 3).add(&TorusElement::basis(1, 1).scale(&LaurentPoly::from_int(3)))
        );
        assert_eq!(
            multicurve_to_fg(2, 2, 1).unwrap_err().to_string(),
            "multicurve label must be primitive, got (2, 2)"
        );
        // n = 0 is the empty link
        assert_eq!(multicurve_to_fg(3, 2, 0).unwrap(), TorusElement::empty_link());
    }

    #[test]
    fn multicurve_matches_repeated_product() {
        let g = TorusElement::basis(2, -3);
        let mut acc = TorusElement::empty_link();
        for n in 0..6 {
            assert_eq!(multicurve_to_fg(2, -3, n).unwrap(), acc);
            acc = fg_mult(&acc, &g);
        }
    }

    #[test]
    fn text_form_rejects_non_canonical() {
        let e: TorusElement =
            serde_json::from_str(r#"[{"pair":[0,1],"coeff":[[0,1,1]]},{"pair":[0,0],"coeff":[[2,1,2],[-2,1,2]]}]"#)
                .unwrap();
        assert_eq!(e.coeff(PairClass::ZERO), LaurentPoly::from_terms([(2, rat(1, 2)), (-2, rat(1, 2))]));
        assert!(serde_json::from_str::<TorusElement>(r#"[{"pair":[-1,1],"coeff":[[0,1,1]]}]"#).is_err());
        let json = serde_json::to_string(&TorusElement::basis(1, 0).scale(&LaurentPoly::constant(rat_int(3)))).unwrap();
        assert_eq!(json, r#"[{"pair":[1,0],"coeff":[[0,3,1]]}]"#);
    }
}
