//! Polynomials over the symbol inventory with radical coefficients, and
//! the quotient form used throughout the toolchain.
//!
//! An `Expr` is a numerator polynomial over a denominator of the shape
//! radical scalar × monomial. Canonical form: the denominator monomial is
//! coprime to every numerator monomial, the common rational content of
//! numerator and denominator is 1, the denominator's leading coefficient
//! is positive, and a zero numerator forces a trivial denominator.
//!
//! Canonical form deliberately does not rationalize the denominator: a/√2
//! and a√2/2 are the same real number in two display shapes, and both are
//! canonical. Value comparison therefore cross-multiplies instead of
//! comparing term lists.
//!
//! Display metadata rides on the side: each (monomial, radicand) pair in
//! the numerator may carry a decimal-display flag and an iroha label. The
//! metadata never influences arithmetic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::radical::Radical;
use crate::rational::Rational;
use crate::symbol::{IrohaLabel, Symbol};

// ---- Monomial ----

/// Product of symbols with positive exponents; empty map is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Symbol, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Monomial { exps: BTreeMap::from([(s, 1)]) }
    }

    pub fn from_pairs(pairs: &[(Symbol, u32)]) -> Self {
        let mut exps = BTreeMap::new();
        for &(s, e) in pairs {
            if e > 0 {
                *exps.entry(s).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exp(&self, s: Symbol) -> u32 {
        self.exps.get(&s).copied().unwrap_or(0)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.exps.contains_key(&s)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.exps.iter().map(|(&s, &e)| (s, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&s, &e) in &other.exps {
            *exps.entry(s).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|(&s, &e)| (s, e * k)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = BTreeMap::new();
        for (&s, &e) in &self.exps {
            let m = e.min(other.exp(s));
            if m > 0 {
                exps.insert(s, m);
            }
        }
        Monomial { exps }
    }

    /// Divides by an exact divisor; panics if not divisible.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        let mut exps = BTreeMap::new();
        for (&s, &e) in &self.exps {
            let d = other.exp(s);
            assert!(d <= e, "monomial division must be exact");
            if e - d > 0 {
                exps.insert(s, e - d);
            }
        }
        Monomial { exps }
    }

    /// Splits off the power of one symbol: (exponent, remaining monomial).
    pub fn split(&self, s: Symbol) -> (u32, Monomial) {
        let k = self.exp(s);
        let mut exps = self.exps.clone();
        exps.remove(&s);
        (k, Monomial { exps })
    }
}

/// Print order: lexicographic over the fixed symbol order with higher
/// exponents first, which also puts higher total degree first and the
/// constant monomial last.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let keys: BTreeSet<Symbol> = self.exps.keys().chain(other.exps.keys()).copied().collect();
        for s in keys {
            let (a, b) = (self.exp(s), other.exp(s));
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (s, e) in &self.exps {
            for _ in 0..*e {
                write!(f, "{}", s.glyph())?;
            }
        }
        Ok(())
    }
}

// ---- Polynomial ----

/// Sum of (coefficient, monomial) terms; monomials pairwise distinct and
/// sorted, coefficients nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: Vec<(Radical, Monomial)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Radical) -> Self {
        Polynomial::from_terms(vec![(c, Monomial::one())])
    }

    pub fn symbol(s: Symbol) -> Self {
        Polynomial::from_terms(vec![(Radical::one(), Monomial::symbol(s))])
    }

    pub fn from_terms(raw: Vec<(Radical, Monomial)>) -> Self {
        let mut acc: BTreeMap<Monomial, Radical> = BTreeMap::new();
        for (c, m) in raw {
            if c.is_zero() {
                continue;
            }
            let slot = acc.entry(m).or_insert_with(Radical::zero);
            *slot = slot.add(&c);
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Radical, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut raw = self.terms.clone();
        raw.extend(other.terms.iter().cloned());
        Polynomial::from_terms(raw)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(c, m)| (c.neg(), m.clone())).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Radical) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_terms(self.terms.iter().map(|(c, m)| (c.mul(k), m.clone())).collect())
    }

    pub fn mul_mono(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(c, mm)| (c.clone(), mm.mul(m))).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut raw = Vec::new();
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                raw.push((c1.mul(c2), m1.mul(m2)));
            }
        }
        Polynomial::from_terms(raw)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Radical::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.iter().map(|(_, m)| m.exp(s)).max().unwrap_or(0)
    }

    /// Divides every monomial by g; g must divide each of them.
    pub fn mono_div(&self, g: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(c, m)| (c.clone(), m.div_exact(g))).collect() }
    }

    pub fn eval(&self, bindings: &BTreeMap<Symbol, Radical>) -> Result<Radical> {
        let mut acc = Radical::zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.symbols() {
                let v = bindings.get(&s).ok_or_else(|| Error::UnboundSymbol(s.alias().to_string()))?;
                for _ in 0..e {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Positive gcd of all rational components of all coefficients;
    /// 1 for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (c, _) in &self.terms {
            for (q, _) in c.terms() {
                num_gcd = num_gcd.gcd(q.numer());
                den_lcm = den_lcm.lcm(q.denom());
            }
        }
        if num_gcd.is_zero() {
            Rational::one()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }
}

// ---- Expr ----

/// Display metadata for one (monomial, radicand) component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TermFlags {
    /// Render the component's value as a decimal fraction with unit words
    /// (√0.5 as "rt(5 bu)") instead of a vulgar fraction.
    pub decimal: bool,
}

impl TermFlags {
    pub fn is_default(&self) -> bool {
        *self == TermFlags::default()
    }
}

pub type DisplayKey = (Monomial, BigUint);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    num: Polynomial,
    den_scalar: Radical,
    den_mono: Monomial,
    flags: BTreeMap<DisplayKey, TermFlags>,
}

/// One rendered term: a single radical component of one numerator term.
#[derive(Debug, Clone)]
pub struct DisplayTerm {
    pub coeff: Rational,
    pub radicand: BigUint,
    pub mono: Monomial,
    pub flags: TermFlags,
}

impl Expr {
    pub fn new(num: Polynomial, den_scalar: Radical, den_mono: Monomial, flags: BTreeMap<DisplayKey, TermFlags>) -> Expr {
        let mut e = Expr { num, den_scalar, den_mono, flags };
        e.normalize();
        e
    }

    pub fn zero() -> Expr {
        Expr::from_poly(Polynomial::zero())
    }

    pub fn from_poly(num: Polynomial) -> Expr {
        Expr::new(num, Radical::one(), Monomial::one(), BTreeMap::new())
    }

    pub fn constant(c: Radical) -> Expr {
        Expr::from_poly(Polynomial::constant(c))
    }

    pub fn from_rational(q: Rational) -> Expr {
        Expr::constant(Radical::from_rational(q))
    }

    pub fn symbol(s: Symbol) -> Expr {
        Expr::from_poly(Polynomial::symbol(s))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den_scalar(&self) -> &Radical {
        &self.den_scalar
    }

    pub fn den_mono(&self) -> &Monomial {
        &self.den_mono
    }

    pub fn flags(&self) -> &BTreeMap<DisplayKey, TermFlags> {
        &self.flags
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_is_trivial(&self) -> bool {
        self.den_scalar.as_rational().map(|q| q.is_one()).unwrap_or(false) && self.den_mono.is_one()
    }

    fn normalize(&mut self) {
        assert!(!self.den_scalar.is_zero(), "expression denominator must be nonzero");
        if self.num.is_zero() {
            self.den_scalar = Radical::one();
            self.den_mono = Monomial::one();
            self.flags.clear();
            return;
        }
        // cancel symbols shared by the denominator and every numerator term
        let mut g = self.den_mono.clone();
        for (_, m) in self.num.terms() {
            g = g.gcd(m);
        }
        if !g.is_one() {
            self.den_mono = self.den_mono.div_exact(&g);
            self.num = self.num.mono_div(&g);
            self.flags = std::mem::take(&mut self.flags)
                .into_iter()
                .map(|((m, d), f)| ((m.div_exact(&m.gcd(&g)), d), f))
                .collect();
        }
        // reduce the common rational content of numerator and denominator
        let c_num = self.num.content();
        let c_den = Polynomial::constant(self.den_scalar.clone()).content();
        let g = Rational::new(
            c_num.numer().gcd(c_den.numer()),
            c_num.denom().lcm(c_den.denom()),
        );
        if !g.is_one() {
            let inv = Radical::from_rational(g.recip());
            self.num = self.num.scale(&inv);
            self.den_scalar = self.den_scalar.mul(&inv);
        }
        // denominator leads positive
        if self.den_scalar.terms()[0].0.is_negative() {
            self.den_scalar = self.den_scalar.neg();
            self.num = self.num.neg();
        }
        // drop metadata that no longer names a live component
        let live: BTreeSet<DisplayKey> = self
            .num
            .terms()
            .iter()
            .flat_map(|(c, m)| c.terms().iter().map(|(_, d)| (m.clone(), d.clone())))
            .collect();
        self.flags.retain(|k, _| live.contains(k));
    }

    /// Equality as real-valued functions of the symbols.
    pub fn value_eq(&self, other: &Expr) -> bool {
        let d1 = Polynomial::from_terms(vec![(self.den_scalar.clone(), self.den_mono.clone())]);
        let d2 = Polynomial::from_terms(vec![(other.den_scalar.clone(), other.den_mono.clone())]);
        self.num.mul(&d2) == other.num.mul(&d1)
    }

    pub fn neg(&self) -> Expr {
        Expr::new(self.num.neg(), self.den_scalar.clone(), self.den_mono.clone(), self.flags.clone())
    }

    pub fn add(&self, other: &Expr) -> Expr {
        if self.den_scalar == other.den_scalar && self.den_mono == other.den_mono {
            let mut flags = self.flags.clone();
            for (k, f) in &other.flags {
                flags.entry(k.clone()).or_insert(*f);
            }
            return Expr::new(self.num.add(&other.num), self.den_scalar.clone(), self.den_mono.clone(), flags);
        }
        // cross-multiply over the monomial lcm and the scalar product
        let g = self.den_mono.gcd(&other.den_mono);
        let m1 = other.den_mono.div_exact(&g);
        let m2 = self.den_mono.div_exact(&g);
        let n1 = self.num.scale(&other.den_scalar).mul_mono(&m1);
        let n2 = other.num.scale(&self.den_scalar).mul_mono(&m2);
        let mut flags = BTreeMap::new();
        if other.den_scalar.is_rational() {
            for ((m, d), f) in &self.flags {
                flags.entry((m.mul(&m1), d.clone())).or_insert(*f);
            }
        }
        if self.den_scalar.is_rational() {
            for ((m, d), f) in &other.flags {
                flags.entry((m.mul(&m2), d.clone())).or_insert(*f);
            }
        }
        Expr::new(
            n1.add(&n2),
            self.den_scalar.mul(&other.den_scalar),
            self.den_mono.mul(&other.den_mono).div_exact(&g),
            flags,
        )
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    /// The factor shape through which display flags survive a product:
    /// a single-component coefficient times a monomial over a rational
    /// scalar denominator.
    fn simple_factor(&self) -> Option<(Rational, BigUint, Monomial)> {
        if self.num.terms().len() != 1 || !self.den_scalar.is_rational() {
            return None;
        }
        let (c, m) = &self.num.terms()[0];
        if c.terms().len() != 1 {
            return None;
        }
        let (q, d) = &c.terms()[0];
        let ds = self.den_scalar.as_rational().expect("checked rational");
        Some((q / ds, d.clone(), m.mul(&self.den_mono)))
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        let num = self.num.mul(&other.num);
        let den_scalar = self.den_scalar.mul(&other.den_scalar);
        let den_mono = self.den_mono.mul(&other.den_mono);
        let mut flags = BTreeMap::new();
        if let Some((_, e, fm)) = other.simple_factor() {
            for ((m, d), f) in &self.flags {
                flags.entry((m.mul(&fm), combine_radicands(d, &e))).or_insert(*f);
            }
        }
        if let Some((_, e, fm)) = self.simple_factor() {
            for ((m, d), f) in &other.flags {
                flags.entry((m.mul(&fm), combine_radicands(d, &e))).or_insert(*f);
            }
        }
        Expr::new(num, den_scalar, den_mono, flags)
    }

    /// Division; the divisor numerator must be a single term, mirroring
    /// the notation's restriction to scalar × monomial denominators.
    pub fn div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.num.terms().len() != 1 {
            return Err(Error::UnsupportedDivisor("divisor is a sum".to_string()));
        }
        let (c, m) = &other.num.terms()[0];
        let recip = Expr::new(
            Polynomial::from_terms(vec![(other.den_scalar.clone(), other.den_mono.clone())]),
            c.clone(),
            m.clone(),
            BTreeMap::new(),
        );
        Ok(self.mul(&recip))
    }

    /// Substitutes an expression with a scalar denominator for a symbol.
    pub fn substitute(&self, sym: Symbol, repl: &Expr) -> Result<Expr> {
        if !repl.den_mono.is_one() {
            return Err(Error::DenominatorSubstitution(sym.alias().to_string()));
        }
        let k_max = self.num.degree_in(sym);
        let (j_den, dm_rest) = self.den_mono.split(sym);
        if j_den > 0 && repl.num.terms().len() != 1 {
            return Err(Error::DenominatorSubstitution(sym.alias().to_string()));
        }
        // numerator: coeff·s^k·rest ↦ coeff·repl_num^k·rest·repl_den^(K−k)
        let mut num = Polynomial::zero();
        for (c, m) in self.num.terms() {
            let (k, rest) = m.split(sym);
            let mut t = repl.num.pow(k).mul_mono(&rest).scale(c);
            for _ in k..k_max {
                t = t.scale(&repl.den_scalar);
            }
            num = num.add(&t);
        }
        let mut den_scalar = self.den_scalar.clone();
        for _ in 0..k_max {
            den_scalar = den_scalar.mul(&repl.den_scalar);
        }
        let mut den_mono = dm_rest;
        if j_den > 0 {
            let (c, m) = &repl.num.terms()[0];
            for _ in 0..j_den {
                den_scalar = den_scalar.mul(c);
                den_mono = den_mono.mul(m);
                num = num.scale(&repl.den_scalar);
            }
        }
        // flags survive on components untouched by the substitution as
        // long as only rational scaling was applied to them
        let mut flags = BTreeMap::new();
        if repl.den_scalar.is_rational() {
            for ((m, d), f) in &self.flags {
                if !m.contains(sym) {
                    flags.insert((m.clone(), d.clone()), *f);
                }
            }
        }
        Ok(Expr::new(num, den_scalar, den_mono, flags))
    }

    pub fn eval(&self, bindings: &BTreeMap<Symbol, Radical>) -> Result<Radical> {
        let num = self.num.eval(bindings)?;
        let den = Polynomial::from_terms(vec![(self.den_scalar.clone(), self.den_mono.clone())]).eval(bindings)?;
        num.div(&den)
    }

    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut set = BTreeSet::new();
        for (_, m) in self.num.terms() {
            set.extend(m.symbols().map(|(s, _)| s));
        }
        set.extend(self.den_mono.symbols().map(|(s, _)| s));
        set
    }

    /// Rendering decomposition: numerator terms in polynomial order, each
    /// coefficient split into components with larger radicands first (the
    /// rooted part of a formula precedes its rational correction).
    pub fn display_terms(&self) -> Vec<DisplayTerm> {
        let mut out = Vec::new();
        for (c, m) in self.num.terms() {
            let mut comps: Vec<_> = c.terms().to_vec();
            comps.reverse();
            for (q, d) in comps {
                let flags = self.flags.get(&(m.clone(), d.clone())).copied().unwrap_or_default();
                out.push(DisplayTerm { coeff: q, radicand: d, mono: m.clone(), flags });
            }
        }
        out
    }

    /// Sets metadata for a component that must already exist.
    pub fn set_flags(&mut self, key: DisplayKey, flags: TermFlags) {
        if flags.is_default() {
            self.flags.remove(&key);
        } else {
            self.flags.insert(key, flags);
        }
    }

    /// Rebuilds this expression with a different denominator display of
    /// the same value: `num'/den'` where both are supplied raw. Used by
    /// the rewrite verbs that re-shape a quotient without changing it.
    pub fn with_denominator(num: Polynomial, den_scalar: Radical, flags: BTreeMap<DisplayKey, TermFlags>) -> Expr {
        Expr::new(num, den_scalar, Monomial::one(), flags)
    }
}

pub(crate) fn combine_radicands(d: &BigUint, e: &BigUint) -> BigUint {
    let g = d.gcd(e);
    (d / &g) * (e / &g)
}

// ---- Equation and zero-sum blocks ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
    /// Column-layout name for the right side (e.g. 中徑); not part of the
    /// modern rendering.
    pub rhs_alias: Option<String>,
}

/// One line of a 合矩 block: an optionally labeled expression. Terms keep
/// their own denominators; a block is a list of quotients, not a single
/// fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTerm {
    pub label: Option<IrohaLabel>,
    pub expr: Expr,
}

/// A group of terms asserted to sum to zero (rendered with 合矩 and 0).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Block {
    pub terms: Vec<BlockTerm>,
}

impl Block {
    pub fn new(terms: Vec<BlockTerm>) -> Block {
        Block { terms }
    }

    /// The block's value as a single expression (sum of all terms).
    pub fn sum(&self) -> Expr {
        self.terms.iter().fold(Expr::zero(), |acc, t| acc.add(&t.expr))
    }
}

impl Equation {
    pub fn new(lhs: Expr, rhs: Expr) -> Equation {
        Equation { lhs, rhs, rhs_alias: None }
    }

    pub fn with_alias(lhs: Expr, rhs: Expr, alias: Option<String>) -> Equation {
        Equation { lhs, rhs, rhs_alias: alias }
    }
}

/// Solves an equation linear in `sym`. The equation is brought to the
/// form N = 0; N must have degree ≤ 1 in `sym` with a scalar coefficient.
pub fn solve_linear(eq: &Equation, sym: Symbol) -> Result<Expr> {
    let diff = eq.lhs.sub(&eq.rhs);
    let mut coeff = Radical::zero();
    let mut rest = Vec::new();
    let mut rest_flags = BTreeMap::new();
    for (c, m) in diff.num().terms() {
        if !m.contains(sym) {
            rest.push((c.clone(), m.clone()));
            continue;
        }
        if *m != Monomial::symbol(sym) {
            return Err(Error::NotLinear(sym.alias().to_string()));
        }
        coeff = coeff.add(c);
    }
    if coeff.is_zero() {
        return Err(Error::NotLinear(sym.alias().to_string()));
    }
    if coeff.is_rational() {
        for ((m, d), f) in diff.flags() {
            if !m.contains(sym) {
                rest_flags.insert((m.clone(), d.clone()), *f);
            }
        }
    }
    Ok(Expr::new(Polynomial::from_terms(rest).neg(), coeff, Monomial::one(), rest_flags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big, rat, rat_int};

    fn sym(alias: &str) -> Symbol {
        Symbol::from_alias(alias).unwrap()
    }

    fn radical(raw: &[(i64, i64, u64)]) -> Radical {
        Radical::normalize(raw.iter().map(|&(n, d, m)| (rat(n, d), big(m))).collect())
    }

    #[test]
    fn monomial_order_puts_constants_last() {
        let a = Monomial::symbol(sym("dai"));
        let b = Monomial::symbol(sym("chu"));
        let a2 = a.pow(2);
        let ab = a.mul(&b);
        let one = Monomial::one();
        let mut v = vec![one.clone(), b.clone(), ab.clone(), a.clone(), a2.clone()];
        v.sort();
        assert_eq!(v, vec![a2, ab, a, b, one]);
    }

    #[test]
    fn polynomial_merges_like_monomials() {
        let a = Monomial::symbol(sym("dai"));
        let p = Polynomial::from_terms(vec![
            (Radical::from_int(2), a.clone()),
            (Radical::from_int(3), a.clone()),
            (Radical::from_int(1), Monomial::one()),
            (Radical::from_int(-1), Monomial::one()),
        ]);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, Radical::from_int(5));
    }

    #[test]
    fn normalization_cancels_shared_structure() {
        let a = sym("dai");
        let b = sym("chu");
        // (a·b)/b → a
        let e = Expr::new(
            Polynomial::from_terms(vec![(Radical::one(), Monomial::from_pairs(&[(a, 1), (b, 1)]))]),
            Radical::one(),
            Monomial::symbol(b),
            BTreeMap::new(),
        );
        assert_eq!(e, Expr::symbol(a));
        // 6/4 → 3/2
        let e = Expr::new(Polynomial::constant(Radical::from_int(6)), Radical::from_int(4), Monomial::one(), BTreeMap::new());
        assert_eq!(e.num().terms()[0].0, Radical::from_int(3));
        assert_eq!(e.den_scalar().as_rational(), Some(rat_int(2)));
        // 2c/2 → c
        let e = Expr::new(Polynomial::symbol(sym("sho")).scale(&Radical::from_int(2)), Radical::from_int(2), Monomial::one(), BTreeMap::new());
        assert_eq!(e, Expr::symbol(sym("sho")));
        // denominator sign: a/(−2) → (−a)/2
        let e = Expr::new(Polynomial::symbol(a), Radical::from_int(-2), Monomial::one(), BTreeMap::new());
        assert_eq!(e.den_scalar().as_rational(), Some(rat_int(2)));
        assert!(e.num().terms()[0].0.as_rational().unwrap().is_negative());
    }

    #[test]
    fn value_equality_ignores_display_shape() {
        let a = sym("dai");
        // a√2/2 vs a/√2
        let lhs = Expr::new(
            Polynomial::symbol(a).scale(&radical(&[(1, 1, 2)])),
            Radical::from_int(2),
            Monomial::one(),
            BTreeMap::new(),
        );
        let rhs = Expr::new(Polynomial::symbol(a), radical(&[(1, 1, 2)]), Monomial::one(), BTreeMap::new());
        assert!(lhs.value_eq(&rhs));
        assert_ne!(lhs, rhs);
        let half = Expr::new(Polynomial::symbol(a), Radical::from_int(2), Monomial::one(), BTreeMap::new());
        assert!(!lhs.value_eq(&half));
    }

    #[test]
    fn substitute_rewrites_value() {
        let (a, b, c) = (sym("dai"), sym("chu"), sym("sho"));
        // a/√2 − b − c with b := a/2 equals a/√2 − a/2 − c
        let e = Expr::new(Polynomial::symbol(a), radical(&[(1, 1, 2)]), Monomial::one(), BTreeMap::new())
            .sub(&Expr::symbol(b))
            .sub(&Expr::symbol(c));
        let half_a = Expr::new(Polynomial::symbol(a), Radical::from_int(2), Monomial::one(), BTreeMap::new());
        let subbed = e.substitute(b, &half_a).unwrap();
        let expected = Expr::new(Polynomial::symbol(a), radical(&[(1, 1, 2)]), Monomial::one(), BTreeMap::new())
            .sub(&half_a)
            .sub(&Expr::symbol(c));
        assert!(subbed.value_eq(&expected));
        // untouched terms stay untouched
        let single = Expr::symbol(c).neg().substitute(b, &half_a).unwrap();
        assert_eq!(single, Expr::symbol(c).neg());
    }

    #[test]
    fn substitution_into_denominator() {
        let (a, b) = (sym("dai"), sym("chu"));
        // 1/b with b := a/2 → 2/a
        let e = Expr::new(Polynomial::constant(Radical::one()), Radical::one(), Monomial::symbol(b), BTreeMap::new());
        let half_a = Expr::new(Polynomial::symbol(a), Radical::from_int(2), Monomial::one(), BTreeMap::new());
        let subbed = e.substitute(b, &half_a).unwrap();
        let expected = Expr::new(
            Polynomial::constant(Radical::from_int(2)),
            Radical::one(),
            Monomial::symbol(a),
            BTreeMap::new(),
        );
        assert!(subbed.value_eq(&expected));
    }

    #[test]
    fn solve_linear_isolates_symbol() {
        let (a, c) = (sym("dai"), sym("sho"));
        // 2c = a → c = a/2
        let eq = Equation::new(
            Expr::from_poly(Polynomial::symbol(c).scale(&Radical::from_int(2))),
            Expr::symbol(a),
        );
        let solved = solve_linear(&eq, c).unwrap();
        assert_eq!(solved.num(), &Polynomial::symbol(a));
        assert_eq!(solved.den_scalar().as_rational(), Some(rat_int(2)));
        // vanishing coefficient → not linear
        let eq = Equation::new(
            Expr::symbol(a).add(&Expr::symbol(c)),
            Expr::symbol(c),
        );
        assert!(solve_linear(&eq, sym("chu")).is_err());
        // quadratic → not linear
        let eq = Equation::new(
            Expr::from_poly(Polynomial::from_terms(vec![(Radical::one(), Monomial::symbol(c).pow(2))])),
            Expr::symbol(a),
        );
        assert!(matches!(solve_linear(&eq, c), Err(Error::NotLinear(_))));
    }

    #[test]
    fn eval_with_bindings() {
        let (a, c) = (sym("dai"), sym("sho"));
        // c = (√0.5 − 0.5)·a at a = 10
        let formula = Expr::from_poly(Polynomial::symbol(a).scale(&radical(&[(-1, 2, 1), (1, 2, 2)])));
        let bindings = BTreeMap::from([(a, Radical::from_int(10))]);
        let v = formula.eval(&bindings).unwrap();
        assert_eq!(v, radical(&[(-5, 1, 1), (5, 1, 2)]));
        assert_eq!(v.eval_float(), 2.0710678118654755);
        let unbound = Expr::symbol(c).eval(&bindings);
        assert!(matches!(unbound, Err(Error::UnboundSymbol(_))));
    }

    #[test]
    fn display_terms_put_roots_before_rational_parts() {
        let a = sym("dai");
        let coeff = radical(&[(-1, 2, 1), (1, 2, 2)]); // √0.5 − 0.5
        let e = Expr::from_poly(Polynomial::symbol(a).scale(&coeff));
        let terms = e.display_terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].radicand, big(2));
        assert_eq!(terms[1].radicand, big(1));
        assert!(terms[1].coeff.is_negative());
    }
}
