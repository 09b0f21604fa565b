//! Sparse multivariate polynomials with exact coefficients.
//!
//! Besides ring arithmetic this module carries the operators used on
//! determinantal polynomials: partial derivatives, the Rayleigh difference
//! `Δ_ij(f) = ∂_i f · ∂_j f − f · ∂_i ∂_j f`, the resultant of two
//! polynomials that are affine in one variable, and exact division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subset::Subset;

/// Maximum number of variables a polynomial may use.
pub const MAX_VARS: usize = 16;

/// Dense exponent vector. Ordered graded-lexicographically with `x1 > x2 > ..`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    /// Squarefree monomial `∏_{k∈S} x_k`.
    pub fn from_subset(s: Subset) -> Self {
        let mut e = [0; MAX_VARS];
        for k in s.iter() {
            e[k] = 1;
        }
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> Subset {
        Subset::from_indices((0..MAX_VARS).filter(|&i| self.0[i] > 0))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(e)
    }

    fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    fn with_exponent(&self, i: usize, v: u8) -> Monomial {
        let mut e = self.0;
        e[i] = v;
        Monomial(e)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self)
    }
}

fn write_monomial(f: &mut impl fmt::Write, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate().filter(|(_, &e)| e > 0) {
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial in `x1..xn` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Scalar::one())
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = MPoly::zero(nvars);
        p.add_term(Monomial::var(i), Scalar::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(nvars: usize, terms: I) -> Self {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::ONE)
    }

    /// Coefficient of the graded-lex largest monomial.
    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(Monomial::is_squarefree)
    }

    /// Variables occurring in some term.
    pub fn support(&self) -> Subset {
        self.terms.keys().fold(Subset::EMPTY, |acc, m| acc.union(m.support()))
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// True when no variable of `vars` occurs.
    pub fn is_free_of(&self, vars: Subset) -> bool {
        self.support().intersection(vars).is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                out.add_term(m.with_exponent(i, e - 1), c * &Scalar::from_int(e as i64));
            }
        }
        out
    }

    /// Substitutes `x_i = value` for every listed pair; the ring is unchanged.
    pub fn substitute(&self, assignments: &[(usize, Scalar)]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut mono = *m;
            let mut coeff = c.clone();
            for (i, v) in assignments {
                let e = mono.0[*i];
                if e > 0 {
                    coeff = &coeff * &v.pow(e as u32);
                    mono.0[*i] = 0;
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// `p|_{x_i = 0}`.
    pub fn at_zero(&self, i: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[i] == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Value at a full point.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                (0..self.nvars).fold(c.clone(), |acc, i| match m.0[i] {
                    0 => acc,
                    e => &acc * &point[i].pow(e as u32),
                })
            })
            .sum()
    }

    /// Re-indexes variables: `x_i` becomes `x_{map[i]}` in a ring with
    /// `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for (i, &target) in map.iter().enumerate() {
                e[target] += m.0[i];
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// `Some(c)` with `self = c · other`, when such a constant exists.
    pub fn constant_ratio(&self, other: &MPoly) -> Option<Scalar> {
        if other.is_zero() {
            return self.is_zero().then(Scalar::zero);
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let c = self.leading_coefficient()? / other.leading_coefficient()?;
        (other.scale(&c) == *self).then_some(c)
    }

    fn check_ring(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn check_affine_in(&self, i: usize) -> Result<()> {
        let d = self.degree_in(i);
        if d > 1 {
            return Err(Error::DegreeTooHigh { var: i + 1, degree: d });
        }
        Ok(())
    }

    /// `Δ_ij(f) = ∂_i f · ∂_j f − f · ∂_i ∂_j f` (zero-based indices).
    pub fn rayleigh_difference(&self, i: usize, j: usize) -> Result<MPoly> {
        if i == j {
            return Err(Error::SameIndex(i + 1));
        }
        if i >= self.nvars || j >= self.nvars {
            return Err(Error::Dimension(format!("variable index out of range for {} variables", self.nvars)));
        }
        self.check_affine_in(i)?;
        self.check_affine_in(j)?;
        let di = self.derivative(i);
        let dj = self.derivative(j);
        let dij = di.derivative(j);
        Ok(&(&di * &dj) - &(self * &dij))
    }

    /// Coefficient of `∏_{k∈S} x_k` in a multiaffine polynomial.
    pub fn coefficient_of(&self, s: Subset) -> Result<Scalar> {
        if !self.is_multiaffine() {
            return Err(Error::NotMultiaffine);
        }
        Ok(self.coefficient(&Monomial::from_subset(s)))
    }

    /// Exact quotient `self / q`, failing on a nonzero remainder.
    ///
    /// Leading terms are eliminated in lex order; for an exact quotient the
    /// leading term of the running remainder is always divisible by the
    /// leading term of `q`, so the first non-divisible one proves inexactness.
    pub fn exact_divide(&self, q: &MPoly) -> Result<MPoly> {
        self.check_ring(q)?;
        let (lead_m, lead_c) = q
            .terms
            .iter()
            .max_by(|a, b| a.0.lex_cmp(b.0))
            .ok_or(Error::DivisionByZero)?;
        let lead_inv = lead_c.inv().expect("stored coefficients are nonzero");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0)) {
            let qm = m.divide(lead_m).ok_or(Error::InexactDivision)?;
            let qc = c * &lead_inv;
            for (tm, tc) in &q.terms {
                rem.add_term(qm.mul(tm), -(&qc * tc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Coefficient map keyed by 1-based variable indices, repeated by
    /// exponent (`"1,1,2"` is `x1^2*x2`, `""` the constant term).
    pub fn to_index_map(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let key: Vec<String> = (0..self.nvars)
                    .flat_map(|i| std::iter::repeat_n(i + 1, m.0[i] as usize))
                    .map(|i| i.to_string())
                    .collect();
                (key.join(","), c.to_string())
            })
            .collect()
    }

    /// Parses the canonical text form (and a little more: implicit
    /// multiplication, parentheses, the imaginary unit `i`).
    pub fn parse(nvars: usize, text: &str) -> Result<MPoly> {
        let mut parser = Parser { src: text.as_bytes(), pos: 0, nvars, text };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error());
        }
        Ok(p)
    }
}

/// [`MPoly`] arithmetic with ring checking.
pub fn poly_arith(p: &MPoly, q: &MPoly, op: PolyOp) -> Result<MPoly> {
    p.check_ring(q)?;
    Ok(match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    })
}

/// `res_{x_k}(g, h) = g|_{x_k=0} · ∂_k h − h|_{x_k=0} · ∂_k g` for `g`, `h`
/// of degree at most one in `x_k` (zero-based `k`).
pub fn affine_resultant(g: &MPoly, h: &MPoly, k: usize) -> Result<MPoly> {
    g.check_ring(h)?;
    g.check_affine_in(k)?;
    h.check_affine_in(k)?;
    Ok(&(&g.at_zero(k) * &h.derivative(k)) - &(&h.at_zero(k) * &g.derivative(k)))
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly { (&self).$m(&rhs) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly { (&self).$m(rhs) }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    /// Canonical form: terms in decreasing graded-lex order, explicit `*`
    /// and `^`, non-real coefficients parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_real() && c.re().is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = *m == Monomial::ONE;
            if is_const {
                if mag.is_real() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.is_real() {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            write_monomial(f, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self) -> Error {
        Error::Input(format!("cannot parse polynomial {:?} at offset {}", self.text, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn small_number(&mut self) -> Result<usize> {
        let parsed = self.digits().and_then(|d| d.parse().ok());
        parsed.ok_or_else(|| self.error())
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(c) if c == b'(' || c == b'x' || c == b'i' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.small_number()?;
            let mut acc = MPoly::one(self.nvars);
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.small_number()?;
                if idx == 0 || idx > self.nvars {
                    return Err(Error::Input(format!("variable x{idx} outside x1..x{}", self.nvars)));
                }
                Ok(MPoly::var(self.nvars, idx - 1))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(MPoly::constant(self.nvars, Scalar::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.digits();
                if self.src.get(self.pos) == Some(&b'/')
                    && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
                {
                    self.pos += 1;
                    self.digits();
                }
                let value: Scalar = self.text[start..self.pos].parse()?;
                Ok(MPoly::constant(self.nvars, value))
            }
            _ => Err(self.error()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, s: &str) -> MPoly {
        MPoly::parse(n, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p(1, "(x1+1)*(x1-1)"), p(1, "x1^2 - 1"));
        let q = p(2, "x1*x2 + 3");
        assert_eq!(poly_arith(&q, &MPoly::zero(2), PolyOp::Add).unwrap(), q);
        assert_eq!(p(2, "(x1+2)*(x2+3)").to_string(), "x1*x2 + 3*x1 + 2*x2 + 6");
        assert!(matches!(
            poly_arith(&q, &MPoly::zero(3), PolyOp::Mul),
            Err(Error::VarCountMismatch(2, 3))
        ));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(MPoly::zero(3).to_string(), "0");
        assert_eq!(p(3, "-x3 - 2*x1^2 + 1/2").to_string(), "-2*x1^2 - x3 + 1/2");
        assert_eq!(p(2, "(1+2i)*x1 - i").to_string(), "(1+2i)*x1 + (0-1i)");
        let q = p(4, "-x3*x4 - 5*x3 - 4*x4 - 15");
        assert_eq!(p(4, &q.to_string()), q);
    }

    #[test]
    fn rayleigh_split_case_vanishes() {
        let f = p(2, "(x1+1)*(x2+2)");
        assert!(f.rayleigh_difference(0, 1).unwrap().is_zero());
    }

    #[test]
    fn rayleigh_of_2x2_pencil() {
        // det([[x1+a, b],[c, x2+d]]) with a=2, b=3, c=5, d=7
        let f = p(2, "(x1+2)*(x2+7) - 15");
        assert_eq!(f.rayleigh_difference(0, 1).unwrap(), MPoly::constant(2, Scalar::from_int(15)));
    }

    #[test]
    fn rayleigh_errors() {
        let f = p(2, "x1^2*x2");
        assert_eq!(f.rayleigh_difference(0, 0), Err(Error::SameIndex(1)));
        assert_eq!(f.rayleigh_difference(0, 1), Err(Error::DegreeTooHigh { var: 1, degree: 2 }));
    }

    #[test]
    fn resultant_examples() {
        let c = p(3, "x2 + 5");
        let g = p(3, "x1");
        let h = &g + &c;
        assert_eq!(affine_resultant(&g, &h, 0).unwrap(), -&c);
        let g2 = p(3, "x2*x3 + 1");
        let h2 = p(3, "x1*x3 - 4*x1 + 2");
        assert_eq!(affine_resultant(&g2, &h2, 0).unwrap(), &g2 * &h2.derivative(0));
        assert!(affine_resultant(&p(3, "x1^2"), &h2, 0).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(2, "x1*x2 + x1").exact_divide(&p(2, "x2 + 1")).unwrap(), p(2, "x1"));
        assert_eq!(p(1, "x1^2 - 1").exact_divide(&p(1, "x1 - 1")).unwrap(), p(1, "x1 + 1"));
        assert_eq!(p(2, "x1 + 1").exact_divide(&p(2, "x2")), Err(Error::InexactDivision));
        assert_eq!(p(2, "x1^2 + 1").exact_divide(&p(2, "x1 + 1")), Err(Error::InexactDivision));
        assert_eq!(p(2, "x1").exact_divide(&MPoly::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn coefficient_extraction() {
        let q = p(2, "x1*x2 + 2*x1 + 3");
        assert_eq!(q.coefficient_of(Subset::from_indices([0])).unwrap(), Scalar::from_int(2));
        assert_eq!(q.coefficient_of(Subset::EMPTY).unwrap(), Scalar::from_int(3));
        assert_eq!(q.coefficient_of(Subset::from_indices([1])).unwrap(), Scalar::zero());
        assert_eq!(p(1, "x1^2").coefficient_of(Subset::EMPTY), Err(Error::NotMultiaffine));
    }

    #[test]
    fn parse_errors() {
        assert!(MPoly::parse(2, "x3").is_err());
        assert!(MPoly::parse(2, "x1 +").is_err());
        assert!(MPoly::parse(2, "(x1").is_err());
    }

    fn multiaffine(n: usize, vars: Subset) -> impl Strategy<Value = MPoly> {
        let subs: Vec<Subset> = vars.subsets().collect();
        prop::collection::vec(-3i64..=3, subs.len()).prop_map(move |cs| {
            MPoly::from_terms(
                n,
                subs.iter().zip(cs).map(|(s, c)| (Monomial::from_subset(*s), Scalar::from_int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn split_polynomials_have_zero_rayleigh_difference(
            // g free of x1, h free of x2, in a ring of four variables
            g in multiaffine(4, Subset::from_indices([1, 2])),
            h in multiaffine(4, Subset::from_indices([0, 3])),
        ) {
            let f = &g * &h;
            prop_assume!(f.is_multiaffine());
            prop_assert!(f.rayleigh_difference(0, 1).unwrap().is_zero());
        }

        #[test]
        fn rayleigh_difference_drops_both_variables(f in multiaffine(4, Subset::full(4))) {
            let d = f.rayleigh_difference(1, 3).unwrap();
            prop_assert!(!d.depends_on(1) && !d.depends_on(3));
        }

        #[test]
        fn division_inverts_multiplication(
            a in multiaffine(3, Subset::full(3)),
            b in multiaffine(3, Subset::full(3)),
        ) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in multiaffine(3, Subset::full(3))) {
            prop_assert_eq!(MPoly::parse(3, &a.to_string()).unwrap(), a);
        }
    }
}
