//! Canonical sparse polynomial values.
//!
//! [`SparsePoly`] is a multivariate polynomial stored as a map from exponent
//! vectors to nonzero coefficients; [`UniPoly`] is its univariate counterpart
//! keyed by degree. Both keep a canonical form at all times: no zero
//! coefficients, prime-field coefficients reduced to `[0, q-1]`, and terms
//! ordered lexicographically by exponent. Exponents are unbounded integers —
//! image degrees reach `2*D*(p-1)` and nothing here assumes they fit a machine
//! word.
//!
//! The text format round-trips bit-exactly: terms joined by `+`/`-` in
//! descending lexicographic order, each term `[coeff*]x<i>[^<exp>]` with `*`
//! between factors, e.g. `3*x1^2*x2 - x3 + 5`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::ring::Ring;
use crate::{Error, Result};

/// Exponent vector of one monomial; ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<BigUint>);

impl ExponentVector {
    pub fn new(exponents: Vec<BigUint>) -> Self {
        ExponentVector(exponents)
    }

    pub fn from_u64s(exponents: &[u64]) -> Self {
        ExponentVector(exponents.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn zeros(arity: usize) -> Self {
        ExponentVector(vec![BigUint::zero(); arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.0
    }

    pub fn total_degree(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }
}

/// Sparse multivariate polynomial over a [`Ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    ring: Ring,
    arity: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl SparsePoly {
    pub fn zero(ring: Ring, arity: usize) -> Self {
        SparsePoly {
            ring,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, arity: usize, value: BigInt) -> Self {
        let mut p = SparsePoly::zero(ring, arity);
        p.add_term(ExponentVector::zeros(arity), value);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates in the ring and dropping zeros.
    pub fn from_terms<I>(ring: Ring, arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut p = SparsePoly::zero(ring, arity);
        for (ev, c) in terms {
            if ev.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: ev.arity(),
                });
            }
            p.add_term(ev, c);
        }
        Ok(p)
    }

    /// Single term `c * x^ev`; a convenience for tests and candidate handling.
    pub fn term(ring: Ring, ev: ExponentVector, coeff: BigInt) -> Self {
        let arity = ev.arity();
        let mut p = SparsePoly::zero(ring, arity);
        p.add_term(ev, coeff);
        p
    }

    fn add_term(&mut self, ev: ExponentVector, c: BigInt) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(ev);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.add(o.get(), &c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, ev: &ExponentVector) -> Option<&BigInt> {
        self.terms.get(ev)
    }

    /// Max total degree over the terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> BigUint {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .max()
            .unwrap_or_else(BigUint::zero)
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (ev, c) in &other.terms {
            out.add_term(ev.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (ev, c) in &other.terms {
            out.add_term(ev.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.ring.clone(), self.arity);
        for (ev, c) in &self.terms {
            out.add_term(ev.clone(), self.ring.neg(c));
        }
        out
    }

    /// Exact evaluation by square-and-multiply powering.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        if let Some(q) = self.ring.small_modulus() {
            if let Some(value) = self.evaluate_mod_u64(point, q) {
                return Ok(value);
            }
        }
        let mut acc = BigInt::zero();
        for (ev, c) in &self.terms {
            let mut term = c.clone();
            for (x, e) in point.iter().zip(ev.exponents()) {
                if e.is_zero() {
                    continue;
                }
                term = self.ring.mul(&term, &self.ring.pow(x, e));
            }
            acc = self.ring.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Machine-word evaluation mod a small prime; `None` falls back to the
    /// exact big-integer route (point outside the canonical range, or
    /// exponents beyond a machine word).
    fn evaluate_mod_u64(&self, point: &[BigInt], q: u64) -> Option<BigInt> {
        let coords: Option<Vec<u64>> = point
            .iter()
            .map(|x| u64::try_from(x).ok().filter(|&v| v < q))
            .collect();
        let coords = coords?;
        let mut acc = 0u64;
        for (ev, c) in &self.terms {
            let mut term = u64::try_from(c).ok()?;
            for (&x, e) in coords.iter().zip(ev.exponents()) {
                if e.is_zero() {
                    continue;
                }
                let e = u64::try_from(e).ok()?;
                term = crate::ring::mulmod_u64(term, crate::ring::powmod_u64(x, e, q), q);
            }
            acc = (acc + term) % q;
        }
        Some(BigInt::from(acc))
    }

    /// Parses the canonical text format in the context of a ring and arity.
    pub fn parse(text: &str, ring: &Ring, arity: usize) -> Result<SparsePoly> {
        parse_sparse(text, ring, arity)
    }
}

impl serde::Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending lexicographic order.
        for (i, (ev, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &magnitude, ev)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, magnitude: &BigInt, ev: &ExponentVector) -> fmt::Result {
    if ev.is_constant() {
        return write!(f, "{magnitude}");
    }
    let mut wrote = false;
    if !magnitude.is_one() {
        write!(f, "{magnitude}")?;
        wrote = true;
    }
    for (i, e) in ev.exponents().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if wrote {
            write!(f, "*")?;
        }
        write!(f, "x{}", i + 1)?;
        if !e.is_one() {
            write!(f, "^{e}")?;
        }
        wrote = true;
    }
    Ok(())
}

/// Sparse univariate polynomial over a [`Ring`], keyed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    ring: Ring,
    terms: BTreeMap<BigUint, BigInt>,
}

impl UniPoly {
    pub fn zero(ring: Ring) -> Self {
        UniPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, value: BigInt) -> Self {
        let mut p = UniPoly::zero(ring);
        p.add_term(BigUint::zero(), value);
        p
    }

    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, BigInt)>,
    {
        let mut p = UniPoly::zero(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from `(degree, coefficient)` machine words.
    pub fn from_u64_terms(ring: Ring, terms: &[(u64, i64)]) -> Self {
        UniPoly::from_terms(
            ring,
            terms
                .iter()
                .map(|&(e, c)| (BigUint::from(e), BigInt::from(c))),
        )
    }

    fn add_term(&mut self, e: BigUint, c: BigInt) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.add(o.get(), &c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Degree of the polynomial, `None` for zero.
    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.keys().next_back()
    }

    /// Terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &BigUint) -> Option<&BigInt> {
        self.terms.get(e)
    }

    fn check_ring(&self, other: &UniPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &UniPoly) -> Result<UniPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    /// Reduction modulo `x^p - 1`: every exponent maps to its residue mod `p`,
    /// merged coefficients summed in the ring.
    pub fn mod_cyclic(&self, p: u64) -> UniPoly {
        assert!(p >= 1, "cyclic modulus must be positive");
        let p = BigUint::from(p);
        let mut out = UniPoly::zero(self.ring.clone());
        for (e, c) in &self.terms {
            out.add_term(e % &p, c.clone());
        }
        out
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        if let Some(q) = self.ring.small_modulus() {
            if let Some(value) = self.evaluate_mod_u64(x, q) {
                return value;
            }
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let term = self.ring.mul(c, &self.ring.pow(x, e));
            acc = self.ring.add(&acc, &term);
        }
        acc
    }

    fn evaluate_mod_u64(&self, x: &BigInt, q: u64) -> Option<BigInt> {
        let x = u64::try_from(x).ok().filter(|&v| v < q)?;
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let e = u64::try_from(e).ok()?;
            let c = u64::try_from(c).ok()?;
            acc = (acc + crate::ring::mulmod_u64(c, crate::ring::powmod_u64(x, e, q), q)) % q;
        }
        Some(BigInt::from(acc))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write!(f, "x")?;
                if !e.is_one() {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Canonical text parsing for SparsePoly.
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }
}

fn parse_sparse(text: &str, ring: &Ring, arity: usize) -> Result<SparsePoly> {
    let mut cur = Cursor::new(text);
    let mut poly = SparsePoly::zero(ring.clone(), arity);
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let sign = match cur.peek() {
            Some(b'+') if !first => {
                cur.bump();
                1
            }
            Some(b'-') => {
                cur.bump();
                -1
            }
            Some(_) if first => 1,
            Some(_) => return Err(cur.err("expected `+` or `-` between terms")),
            None => break,
        };
        cur.skip_ws();
        let (coeff, ev) = parse_sparse_term(&mut cur, arity)?;
        poly.add_term(ev, BigInt::from(sign) * coeff);
        first = false;
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(poly)
}

fn parse_sparse_term(cur: &mut Cursor<'_>, arity: usize) -> Result<(BigInt, ExponentVector)> {
    let mut coeff = BigInt::one();
    let mut exponents = vec![BigUint::zero(); arity];
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                coeff *= BigInt::from(cur.integer()?);
            }
            Some(b'x') => {
                let var_start = cur.pos;
                cur.bump();
                let index = cur.integer().map_err(|_| Error::Parse {
                    offset: var_start,
                    message: "variable needs an index, e.g. `x1`".into(),
                })?;
                let index: usize = index
                    .try_into()
                    .map_err(|_| cur.err("variable index out of range"))?;
                if index == 0 || index > arity {
                    return Err(Error::UnknownVariable {
                        name: format!("x{index}"),
                        offset: var_start,
                    });
                }
                let mut exp = BigUint::one();
                cur.skip_ws();
                if cur.peek() == Some(b'^') {
                    cur.bump();
                    cur.skip_ws();
                    exp = cur.integer()?;
                }
                exponents[index - 1] += exp;
            }
            _ => return Err(cur.err("expected a coefficient or variable factor")),
        }
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.bump();
        } else {
            break;
        }
    }
    Ok((coeff, ExponentVector::new(exponents)))
}
