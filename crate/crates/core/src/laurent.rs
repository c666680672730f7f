//! Exact Laurent polynomials in one variable over the integers, and the
//! quantum combinatorics built on them.
//!
//! [`LaurentPoly`] is the carrier of every v- and q-valued quantity in this
//! crate: balanced quantum integers `[[s]] = (v^s - v^{-s})/(v - v^{-1})`,
//! quantum factorials, Gaussian binomials, the bar involution `v -> v^{-1}`,
//! and interpolated point-count polynomials (read in the variable q).
//!
//! Coefficients are arbitrary-precision integers; structure constants grow
//! past machine words already for moderate dimensions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Laurent polynomial with integer coefficients, stored sparsely as an
/// exponent -> coefficient map. Invariants: no stored coefficient is zero;
/// the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    /// The monomial c * v^e (normalized away if c = 0).
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    /// v^e
    pub fn v_pow(exp: i64) -> Self {
        LaurentPoly::monomial(exp, BigInt::one())
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::monomial(0, BigInt::from(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate (exponent, coefficient) pairs in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = coeffs.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let entry = coeffs.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by v^e.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// The bar involution v -> v^{-1} (exponent negation).
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute v -> v^2; turns a polynomial in q into its v-form under q = v^2.
    pub fn double_exponents(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (2 * e, c.clone())).collect(),
        }
    }

    /// Exact value at a nonzero integer point.
    pub fn eval_int(&self, t: i64) -> Result<BigRational> {
        if t == 0 {
            return Err(Error::domain("eval_int: evaluation point must be nonzero"));
        }
        let tq = BigRational::from_integer(BigInt::from(t));
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let mut term = BigRational::from_integer(c.clone());
            let p = pow_rational(&tq, *e);
            term *= p;
            acc += term;
        }
        Ok(acc)
    }

    /// Exact unsigned evaluation at a positive integer point of a genuine
    /// polynomial (no negative exponents). Used for point-count cross-checks.
    pub fn eval_uint(&self, t: u64) -> Result<BigInt> {
        if self.min_exp().unwrap_or(0) < 0 {
            return Err(Error::domain("eval_uint: negative exponents present"));
        }
        let tb = BigInt::from(t);
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            acc += c * tb.pow(*e as u32);
        }
        Ok(acc)
    }

    /// Exact division; the divisor must divide without remainder.
    /// A nonzero remainder is an internal arithmetic fault and aborts.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "div_exact: division by zero");
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dmax = divisor.max_exp().unwrap();
        let dlead = divisor.coeff(dmax);
        while !rem.is_zero() {
            let rmax = rem.max_exp().unwrap();
            let rlead = rem.coeff(rmax);
            let (q, r) = num_integer::Integer::div_rem(&rlead, &dlead);
            assert!(
                r.is_zero(),
                "div_exact: leading coefficient not divisible ({} / {})",
                self, divisor
            );
            let term = LaurentPoly::monomial(rmax - dmax, q);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
            if !rem.is_zero() && rem.max_exp().unwrap() >= rmax {
                panic!("div_exact: no degree progress; remainder {}", rem);
            }
        }
        quot
    }

    /// Quantum integer [[s]] = v^{s-1} + v^{s-3} + ... + v^{1-s}.
    pub fn quantum_integer(s: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        let s = s as i64;
        let mut e = 1 - s;
        while e <= s - 1 {
            coeffs.insert(e, BigInt::one());
            e += 2;
        }
        LaurentPoly { coeffs }
    }

    /// [[s]] for signed s, via [[ -s ]] = -[[s]]. The commutator relation
    /// produces genuinely negative pairings.
    pub fn quantum_integer_signed(s: i64) -> Self {
        if s >= 0 {
            LaurentPoly::quantum_integer(s as u64)
        } else {
            LaurentPoly::quantum_integer((-s) as u64).neg()
        }
    }

    /// Quantum factorial [[s]]! = [[s]][[s-1]]...[[1]]; [[0]]! = 1.
    pub fn quantum_factorial(s: u64) -> Self {
        let mut acc = LaurentPoly::one();
        for t in 1..=s {
            acc = acc.mul(&LaurentPoly::quantum_integer(t));
        }
        acc
    }

    /// Balanced Gaussian binomial [[n]]!/([[k]]! [[n-k]]!), by exact division.
    pub fn quantum_binomial(n: u64, k: u64) -> Self {
        assert!(k <= n, "quantum_binomial: k out of range");
        let num = LaurentPoly::quantum_factorial(n);
        let den = LaurentPoly::quantum_factorial(k).mul(&LaurentPoly::quantum_factorial(n - k));
        num.div_exact(&den)
    }
}

fn pow_rational(base: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let p = base.pow(e.unsigned_abs() as i32 * if e < 0 { -1 } else { 1 });
    p
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}v", a)?,
                (_, true) => write!(f, "v^{}", e)?,
                (_, false) => write!(f, "{}v^{}", a, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// JSON encoding: an object mapping decimal exponent strings to integer
// coefficients; coefficients beyond 2^53 are emitted as decimal strings.
const SAFE_INT: i64 = 1 << 53;

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let key = e.to_string();
            match c.to_string().parse::<i64>() {
                Ok(small) if small.abs() <= SAFE_INT => map.serialize_entry(&key, &small)?,
                _ => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

struct LaurentVisitor;

impl<'de> Visitor<'de> for LaurentVisitor {
    type Value = LaurentPoly;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a map from exponent strings to integer coefficients")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<LaurentPoly, A::Error> {
        use serde::de::Error as DeError;
        let mut coeffs = BTreeMap::new();
        while let Some(key) = access.next_key::<String>()? {
            let exp: i64 = key
                .parse()
                .map_err(|_| A::Error::custom(format!("bad exponent key {key:?}")))?;
            let val: serde_json::Value = access.next_value()?;
            let coeff = match &val {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| A::Error::custom("non-integer coefficient"))?,
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| A::Error::custom(format!("bad coefficient {s:?}")))?,
                _ => return Err(A::Error::custom("coefficient must be integer or string")),
            };
            if !coeff.is_zero() {
                coeffs.insert(exp, coeff);
            }
        }
        Ok(LaurentPoly { coeffs })
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_map(LaurentVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v() -> LaurentPoly {
        LaurentPoly::v_pow(1)
    }
    fn vinv() -> LaurentPoly {
        LaurentPoly::v_pow(-1)
    }

    #[test]
    fn add_inverse_and_disjoint_supports() {
        assert!(v().add(&v().neg()).is_zero());
        let s = v().add(&vinv()).add(&LaurentPoly::one());
        assert_eq!(s.coeff(1), BigInt::one());
        assert_eq!(s.coeff(0), BigInt::one());
        assert_eq!(s.coeff(-1), BigInt::one());
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = v().add(&vinv());
        let b = v().sub(&vinv());
        let prod = a.mul(&b);
        assert_eq!(prod, LaurentPoly::v_pow(2).sub(&LaurentPoly::v_pow(-2)));
    }

    #[test]
    fn mul_expansion() {
        // (v^2 + 1 + v^-2)(v + v^-1) = v^3 + 2v + 2v^-1 + v^-3
        let a = LaurentPoly::v_pow(2)
            .add(&LaurentPoly::one())
            .add(&LaurentPoly::v_pow(-2));
        let b = v().add(&vinv());
        let p = a.mul(&b);
        let mut expect = LaurentPoly::v_pow(3).add(&LaurentPoly::v_pow(-3));
        expect = expect.add(&LaurentPoly::monomial(1, BigInt::from(2)));
        expect = expect.add(&LaurentPoly::monomial(-1, BigInt::from(2)));
        assert_eq!(p, expect);
    }

    #[test]
    fn quantum_integers() {
        assert!(LaurentPoly::quantum_integer(0).is_zero());
        assert!(LaurentPoly::quantum_integer(1).is_one());
        assert_eq!(LaurentPoly::quantum_integer(2), v().add(&vinv()));
        // [[s]] at v=1 equals s
        for s in 0..=50u64 {
            let val = LaurentPoly::quantum_integer(s).eval_int(1).unwrap();
            assert_eq!(val, BigRational::from_integer(BigInt::from(s)));
        }
    }

    #[test]
    fn quantum_factorials() {
        assert!(LaurentPoly::quantum_factorial(0).is_one());
        assert_eq!(LaurentPoly::quantum_factorial(2), v().add(&vinv()));
        // [[3]]! = v^3 + 2v + 2v^-1 + v^-3
        let f3 = LaurentPoly::quantum_factorial(3);
        assert_eq!(f3.coeff(3), BigInt::one());
        assert_eq!(f3.coeff(1), BigInt::from(2));
        assert_eq!(f3.coeff(-1), BigInt::from(2));
        assert_eq!(f3.coeff(-3), BigInt::one());
    }

    /// Independent oracle for the Gaussian binomial: the balanced q-Pascal
    /// recursion [n,k] = v^k [n-1,k] + v^{k-n} [n-1,k-1].
    fn qbinom_pascal(n: u64, k: u64) -> LaurentPoly {
        if k == 0 || k == n {
            return LaurentPoly::one();
        }
        let a = qbinom_pascal(n - 1, k).shift(k as i64);
        let b = qbinom_pascal(n - 1, k - 1).shift(k as i64 - n as i64);
        a.add(&b)
    }

    #[test]
    fn quantum_binomials() {
        assert!(LaurentPoly::quantum_binomial(5, 0).is_one());
        assert_eq!(LaurentPoly::quantum_binomial(2, 1), v().add(&vinv()));
        // derived value for (4,2), frozen from the Pascal oracle
        let b42 = qbinom_pascal(4, 2);
        assert_eq!(LaurentPoly::quantum_binomial(4, 2), b42);
        assert_eq!(b42.coeff(4), BigInt::one());
        assert_eq!(b42.coeff(2), BigInt::one());
        assert_eq!(b42.coeff(0), BigInt::from(2));
        assert_eq!(b42.coeff(-2), BigInt::one());
        assert_eq!(b42.coeff(-4), BigInt::one());
        for n in 0..=12u64 {
            for k in 0..=n {
                let b = LaurentPoly::quantum_binomial(n, k);
                assert_eq!(b, qbinom_pascal(n, k));
                // symmetric under v -> v^{-1} and k -> n-k, nonneg coefficients
                assert_eq!(b, b.bar());
                assert_eq!(b, LaurentPoly::quantum_binomial(n, n - k));
                assert!(b.iter().all(|(_, c)| c.is_positive()));
                // v=1 specialization is the ordinary binomial
                let ordinary: BigInt = (0..k).fold(BigInt::one(), |acc, i| {
                    acc * BigInt::from(n - i) / BigInt::from(i + 1)
                });
                assert_eq!(
                    b.eval_int(1).unwrap(),
                    BigRational::from_integer(ordinary)
                );
            }
        }
    }

    #[test]
    fn bar_examples() {
        let p = LaurentPoly::v_pow(3).add(&LaurentPoly::monomial(1, BigInt::from(2)));
        let b = p.bar();
        assert_eq!(b.coeff(-3), BigInt::one());
        assert_eq!(b.coeff(-1), BigInt::from(2));
        for s in 0..10 {
            let q = LaurentPoly::quantum_integer(s);
            assert_eq!(q, q.bar());
        }
    }

    #[test]
    fn eval_examples() {
        let p = v().add(&vinv());
        assert_eq!(
            p.eval_int(2).unwrap(),
            BigRational::new(BigInt::from(5), BigInt::from(2))
        );
        assert!(LaurentPoly::zero().eval_int(7).unwrap().is_zero());
        assert!(p.eval_int(0).is_err());
        assert_eq!(
            LaurentPoly::quantum_integer(3).eval_int(1).unwrap(),
            BigRational::from_integer(BigInt::from(3))
        );
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::v_pow(1).add(&LaurentPoly::v_pow(-1));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":1,"1":1}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        // big coefficient round-trips through the string form
        let big = LaurentPoly::monomial(2, BigInt::from(10).pow(30));
        let s = serde_json::to_string(&big).unwrap();
        assert!(s.contains('"'));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::btree_map(-6i64..6, -9i64..9, 0..6).prop_map(|m| {
            let mut p = LaurentPoly::zero();
            for (e, c) in m {
                p = p.add(&LaurentPoly::monomial(e, BigInt::from(c)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&LaurentPoly::zero()), a.clone());
            prop_assert_eq!(a.mul(&LaurentPoly::one()), a.clone());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
            prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
        }

        #[test]
        fn exact_division_round_trip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b);
            prop_assert_eq!(prod.div_exact(&b), a);
        }
    }
}
