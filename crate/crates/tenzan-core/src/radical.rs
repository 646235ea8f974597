//! Linear combinations of square roots with exact rational coefficients.
//!
//! A `Radical` is Σ qᵢ·√dᵢ with the radicands dᵢ square-free and strictly
//! increasing; radicand 1 carries the rational part and an empty term list
//! is zero. Distinct square-free roots are linearly independent over the
//! rationals, so the representation is canonical: two radicals denote the
//! same real number iff their term lists are identical. That independence
//! also guarantees that interval refinement of a nonzero multi-term value
//! terminates, which `sign` and `eval_fixed` rely on.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_scaled, trunc_scaled, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Radical {
    terms: Vec<(Rational, BigUint)>,
}

/// Splits n as outside² · inside with inside square-free.
fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut n = n.clone();
    let mut outside = BigUint::one();
    let mut inside = BigUint::one();
    if n.is_zero() {
        return (BigUint::zero(), inside);
    }
    let mut d = BigUint::from(2u8);
    let mut step = 1u8;
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            outside *= d.pow(e / 2);
            if e % 2 == 1 {
                inside *= &d;
            }
        }
        d += step;
        step = 2; // 2, 3, 5, 7, ... is enough at corpus sizes
    }
    if n > BigUint::one() {
        inside *= &n; // remaining cofactor is prime
    }
    (outside, inside)
}

impl Radical {
    pub fn zero() -> Self {
        Radical { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Radical::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Radical::zero();
        }
        Radical { terms: vec![(q, BigUint::one())] }
    }

    pub fn from_int(n: i64) -> Self {
        Radical::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// q·√d with d already square-free; normalizes anyway for safety.
    pub fn from_term(q: Rational, d: BigUint) -> Self {
        Radical::normalize(vec![(q, d)])
    }

    /// Canonicalizes raw (coefficient, radicand) pairs: radicands are made
    /// square-free, like radicands merged, zero terms dropped, order fixed.
    pub fn normalize(raw: Vec<(Rational, BigUint)>) -> Self {
        let mut acc: BTreeMap<BigUint, Rational> = BTreeMap::new();
        for (q, m) in raw {
            if q.is_zero() || m.is_zero() {
                continue;
            }
            let (outside, inside) = square_free_split(&m);
            let coeff = q * Rational::from_integer(BigInt::from(outside));
            let slot = acc.entry(inside).or_insert_with(Rational::zero);
            *slot += coeff;
        }
        let terms = acc.into_iter().filter(|(_, q)| !q.is_zero()).map(|(d, q)| (q, d)).collect();
        Radical { terms }
    }

    pub fn terms(&self) -> &[(Rational, BigUint)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(_, d)| d.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(q, d)] if d.is_one() => Some(q.clone()),
            _ => None,
        }
    }

    /// The rational (radicand 1) component.
    pub fn rational_part(&self) -> Rational {
        self.terms
            .iter()
            .find(|(_, d)| d.is_one())
            .map(|(q, _)| q.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Radical) -> Radical {
        let mut raw: Vec<(Rational, BigUint)> = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        // radicands are already square-free; normalize only merges
        Radical::normalize(raw)
    }

    pub fn neg(&self) -> Radical {
        Radical { terms: self.terms.iter().map(|(q, d)| (-q.clone(), d.clone())).collect() }
    }

    pub fn sub(&self, other: &Radical) -> Radical {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Radical {
        if k.is_zero() {
            return Radical::zero();
        }
        Radical { terms: self.terms.iter().map(|(q, d)| (q * k, d.clone())).collect() }
    }

    /// Multiply by 10^k (used for unit conversions).
    pub fn scale_pow10(&self, k: i32) -> Radical {
        self.scale(&crate::rational::pow10(k))
    }

    pub fn mul(&self, other: &Radical) -> Radical {
        let mut acc: BTreeMap<BigUint, Rational> = BTreeMap::new();
        for (q1, d1) in &self.terms {
            for (q2, d2) in &other.terms {
                // √d1·√d2 = g·√((d1/g)(d2/g)), square-free for square-free inputs
                let g = d1.gcd(d2);
                let rad = (d1 / &g) * (d2 / &g);
                let coeff = q1 * q2 * Rational::from_integer(BigInt::from(g));
                let slot = acc.entry(rad).or_insert_with(Rational::zero);
                *slot += coeff;
            }
        }
        let terms = acc.into_iter().filter(|(_, q)| !q.is_zero()).map(|(d, q)| (q, d)).collect();
        Radical { terms }
    }

    /// Exact division. Divisors of one term invert directly; two-term
    /// divisors go through the conjugate, which collapses the denominator
    /// to a rational. Three or more distinct radicands are unsupported.
    pub fn div(&self, other: &Radical) -> Result<Radical> {
        match other.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(q, d)] => {
                // 1/(q√d) = √d/(q·d)
                let inv_coeff = (q * Rational::from_integer(BigInt::from(d.clone()))).recip();
                Ok(self.mul(&Radical { terms: vec![(inv_coeff, d.clone())] }))
            }
            [t0, t1] => {
                let conj = Radical { terms: vec![t0.clone(), (-t1.0.clone(), t1.1.clone())] };
                let denom = other.mul(&conj);
                let denom_q = denom
                    .as_rational()
                    .expect("conjugate of a two-term radical is rational");
                if denom_q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.mul(&conj).scale(&denom_q.recip()))
            }
            terms => Err(Error::UnsupportedDivisor(format!("{} radicand terms", terms.len()))),
        }
    }

    /// √q for a nonnegative rational: √(a/b) = (o/b)·√i where a·b = o²·i.
    pub fn sqrt_of(q: &Rational) -> Result<Radical> {
        if q.is_negative() {
            return Err(Error::NegativeRadicand(q.to_string()));
        }
        if q.is_zero() {
            return Ok(Radical::zero());
        }
        let m = q.numer().magnitude() * q.denom().magnitude();
        let (outside, inside) = square_free_split(&m);
        let coeff = Rational::new(BigInt::from(outside), q.denom().clone());
        Ok(Radical { terms: vec![(coeff, inside)] })
    }

    /// Binary64 evaluation, summing terms in ascending radicand order.
    /// Error stays within 4 ulp for up to 8 terms of moderate size.
    pub fn eval_float(&self) -> f64 {
        let mut acc = 0.0;
        for (q, d) in &self.terms {
            let qf = q.to_f64().expect("coefficient out of f64 range");
            if d.is_one() {
                acc += qf;
            } else {
                acc += qf * d.to_f64().expect("radicand out of f64 range").sqrt();
            }
        }
        acc
    }

    /// Rational interval [lo, hi] containing the value, with the roots
    /// resolved to p decimal digits by integer square root.
    fn eval_interval(&self, p: u32) -> (Rational, Rational) {
        let scale = BigUint::from(10u8).pow(2 * p);
        let denom = BigInt::from(10u8).pow(p);
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (q, d) in &self.terms {
            if d.is_one() {
                lo += q;
                hi += q;
                continue;
            }
            let s = (d * &scale).sqrt(); // floor(√d·10^p)
            let s_lo = Rational::new(BigInt::from(s.clone()), denom.clone());
            let s_hi = Rational::new(BigInt::from(s + BigUint::one()), denom.clone());
            if q.is_positive() {
                lo += q * &s_lo;
                hi += q * &s_hi;
            } else {
                lo += q * &s_hi;
                hi += q * &s_lo;
            }
        }
        (lo, hi)
    }

    /// trunc(value · 10^k) toward zero, exact.
    pub fn trunc_scaled(&self, k: u32) -> BigInt {
        if self.is_rational() {
            return trunc_scaled(&self.rational_part(), k);
        }
        let mut guard = 12;
        loop {
            let (lo, hi) = self.eval_interval(k + guard);
            let t_lo = trunc_scaled(&lo, k);
            let t_hi = trunc_scaled(&hi, k);
            if t_lo == t_hi {
                return t_lo;
            }
            // irrational values cannot sit on a truncation boundary, so
            // refinement separates the interval eventually
            guard *= 2;
        }
    }

    /// Decimal expansion truncated toward zero at `digits` fractional
    /// places, computed entirely in integer arithmetic. Never rounds.
    pub fn eval_fixed(&self, digits: u32) -> String {
        assert!(digits <= 100, "eval_fixed supports at most 100 digits");
        format_scaled(&self.trunc_scaled(digits), digits)
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i8 {
        match self.terms.as_slice() {
            [] => 0,
            [(q, _)] => {
                if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            _ => {
                let mut p = 32;
                loop {
                    let (lo, hi) = self.eval_interval(p);
                    if lo.is_positive() {
                        return 1;
                    }
                    if hi.is_negative() {
                        return -1;
                    }
                    p *= 2;
                }
            }
        }
    }

    pub fn abs(&self) -> Radical {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact order on values.
    pub fn cmp_value(&self, other: &Radical) -> Ordering {
        match self.sub(other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl std::ops::Add for &Radical {
    type Output = Radical;
    fn add(self, rhs: &Radical) -> Radical {
        Radical::add(self, rhs)
    }
}

impl std::ops::Sub for &Radical {
    type Output = Radical;
    fn sub(self, rhs: &Radical) -> Radical {
        Radical::sub(self, rhs)
    }
}

impl std::ops::Mul for &Radical {
    type Output = Radical;
    fn mul(self, rhs: &Radical) -> Radical {
        Radical::mul(self, rhs)
    }
}

impl std::ops::Neg for &Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        Radical::neg(self)
    }
}
