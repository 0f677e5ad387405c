//! Univariate interpolation backends.
//!
//! Two deterministic backends sit behind one interface:
//!
//! * **Lagrange** — dense Newton interpolation through the canonical points
//!   `0, 1, ..., degree_bound`; works over any ring with enough points and
//!   uses exactly `degree_bound + 1` probes.
//! * **Ben-or–Tiwari** — sparse recovery from `2T` probes at powers of a
//!   fixed base: Berlekamp–Massey finds the minimal linear recurrence, the
//!   recurrence roots encode the exponents, and a transposed Vandermonde
//!   solve recovers the coefficients. The base is `2` over the integers and
//!   the smallest element of sufficient multiplicative order over `F_q`.
//!
//! Exponents are read off the recurrence roots by a deterministic sweep of
//! base powers up to the degree bound, so no discrete logarithms and no root
//! factorization are ever needed. (Classically the integer-point variant
//! factors an auxiliary polynomial instead; sweeping powers of two and
//! reading bit lengths is exact and equivalent for these points.) Over the
//! integers the recurrence arithmetic runs in exact rationals, since the
//! minimal generator of an integer sequence has rational intermediates.
//!
//! A violated term bound surfaces as [`Error::BackendFailure`] — loud, never
//! a silent wrong answer — whenever the recurrence roots fail to be powers of
//! the base or the linear solve leaves the coefficient ring.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::UniPoly;
use crate::ring::Ring;
use crate::{Error, Result};

/// Backend selector for univariate image interpolation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Lagrange,
    #[serde(rename = "bot")]
    BenOrTiwari,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Lagrange => write!(f, "lagrange"),
            Backend::BenOrTiwari => write!(f, "bot"),
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "lagrange" => Ok(Backend::Lagrange),
            "bot" | "ben-or-tiwari" => Ok(Backend::BenOrTiwari),
            other => Err(format!("unknown backend `{other}`; use lagrange or bot")),
        }
    }
}

/// A univariate evaluation oracle; pure function of the point.
///
/// When built from a [`crate::BlackBox`] through
/// [`crate::kronecker::interpolate_image`] the probe counter of the box does
/// the accounting — this wrapper adds none of its own.
pub struct UniOracle<'a> {
    eval: Box<dyn Fn(&BigInt) -> BigInt + 'a>,
}

impl<'a> UniOracle<'a> {
    pub fn new(eval: impl Fn(&BigInt) -> BigInt + 'a) -> Self {
        UniOracle {
            eval: Box::new(eval),
        }
    }

    /// Oracle evaluating an explicit polynomial; handy in tests.
    pub fn from_poly(poly: &'a UniPoly) -> Self {
        UniOracle::new(move |x| poly.evaluate(x))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        (self.eval)(x)
    }
}

/// Dispatches to the chosen backend.
pub fn interpolate(
    oracle: &UniOracle<'_>,
    backend: Backend,
    term_bound: u64,
    degree_bound: u64,
    ring: &Ring,
) -> Result<UniPoly> {
    match backend {
        Backend::Lagrange => lagrange_interpolate(oracle, degree_bound, ring),
        Backend::BenOrTiwari => bot_interpolate(oracle, term_bound, degree_bound, ring),
    }
}

/// Checks up front that the ring can host an interpolation at the given
/// degree bound: Lagrange needs `degree_bound + 1` distinct points, the
/// Ben-or–Tiwari base needs multiplicative order above the bound. The
/// integers always qualify.
pub(crate) fn ensure_ring_capacity(ring: &Ring, backend: Backend, degree_bound: u64) -> Result<()> {
    let Some(q) = ring.modulus() else {
        return Ok(());
    };
    let needed = BigInt::from(degree_bound) + 1;
    let available = match backend {
        Backend::Lagrange => q.clone(),
        Backend::BenOrTiwari => q - 1,
    };
    if available < needed {
        return Err(Error::RingTooSmall {
            needed,
            order: available,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Lagrange (dense Newton form)
// ---------------------------------------------------------------------------

/// The unique polynomial of degree `<= degree_bound` through the points
/// `0, 1, ..., degree_bound`, by Newton divided differences. Exactly
/// `degree_bound + 1` probes.
pub fn lagrange_interpolate(
    oracle: &UniOracle<'_>,
    degree_bound: u64,
    ring: &Ring,
) -> Result<UniPoly> {
    if let Some(q) = ring.modulus() {
        let needed = BigInt::from(degree_bound) + 1;
        if *q < needed {
            return Err(Error::RingTooSmall {
                needed,
                order: q.clone(),
            });
        }
    }
    let n = usize::try_from(degree_bound).expect("degree bound fits usize");
    if let Some(q) = ring.small_modulus() {
        return lagrange_mod_u64(oracle, n, ring, q);
    }
    let mut diffs: Vec<BigInt> = (0..=n)
        .map(|i| ring.normalize(oracle.eval(&BigInt::from(i))))
        .collect();
    // Divided differences in place; at consecutive integer nodes level k
    // divides by the constant k.
    for k in 1..=n {
        let inv_k = match ring {
            Ring::PrimeField { .. } => Some(
                ring.inv(&BigInt::from(k))
                    .expect("0 < k <= degree_bound < q"),
            ),
            Ring::Integers => None,
        };
        for i in (k..=n).rev() {
            let num = ring.sub(&diffs[i], &diffs[i - 1]);
            diffs[i] = match &inv_k {
                Some(inv) => ring.mul(&num, inv),
                None => exact_div(&num, k as u64)?,
            };
        }
    }
    // Newton form to monomial coefficients: fold c -> c*(x - k) + a_k,
    // low-to-high.
    let mut coeffs: Vec<BigInt> = vec![diffs[n].clone()];
    for k in (0..n).rev() {
        let node = BigInt::from(k);
        coeffs.push(BigInt::zero());
        for i in (0..coeffs.len() - 1).rev() {
            let shifted = coeffs[i].clone();
            coeffs[i + 1] = ring.add(&coeffs[i + 1], &shifted);
            coeffs[i] = ring.neg(&ring.mul(&node, &shifted));
        }
        coeffs[0] = ring.add(&coeffs[0], &diffs[k]);
    }
    Ok(UniPoly::from_terms(
        ring.clone(),
        coeffs
            .into_iter()
            .enumerate()
            .map(|(e, c)| (BigUint::from(e), c)),
    ))
}

/// Machine-word Newton interpolation for small prime fields; identical point
/// set, probe count, and result as the generic route.
fn lagrange_mod_u64(oracle: &UniOracle<'_>, n: usize, ring: &Ring, q: u64) -> Result<UniPoly> {
    use crate::ring::{mulmod_u64, powmod_u64};
    let mut diffs: Vec<u64> = (0..=n)
        .map(|i| {
            let v = ring.normalize(oracle.eval(&BigInt::from(i)));
            u64::try_from(&v).expect("canonical residue fits")
        })
        .collect();
    for k in 1..=n {
        let inv_k = powmod_u64(k as u64 % q, q - 2, q);
        for i in (k..=n).rev() {
            let num = (q + diffs[i] - diffs[i - 1]) % q;
            diffs[i] = mulmod_u64(num, inv_k, q);
        }
    }
    let mut coeffs: Vec<u64> = vec![diffs[n]];
    for k in (0..n).rev() {
        let node = k as u64 % q;
        coeffs.push(0);
        for i in (0..coeffs.len() - 1).rev() {
            let shifted = coeffs[i];
            coeffs[i + 1] = (coeffs[i + 1] + shifted) % q;
            coeffs[i] = (q - mulmod_u64(node, shifted, q)) % q;
        }
        coeffs[0] = (coeffs[0] + diffs[k]) % q;
    }
    Ok(UniPoly::from_terms(
        ring.clone(),
        coeffs
            .into_iter()
            .enumerate()
            .map(|(e, c)| (BigUint::from(e), BigInt::from(c))),
    ))
}

fn exact_div(num: &BigInt, den: u64) -> Result<BigInt> {
    let den = BigInt::from(den);
    let (q, r) = num_integer::Integer::div_rem(num, &den);
    if !r.is_zero() {
        return Err(Error::BackendFailure(format!(
            "divided difference {num} not divisible by {den}; oracle is not a polynomial of the claimed degree"
        )));
    }
    Ok(q)
}

// ---------------------------------------------------------------------------
// Field contexts for exact recurrence arithmetic
// ---------------------------------------------------------------------------

trait FieldCtx {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Division by a nonzero element.
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn embed(&self, a: &BigInt) -> Self::E;
    /// Maps back into the coefficient ring; `None` when the value does not
    /// lie in it (a non-integer rational).
    fn lift(&self, a: &Self::E) -> Option<BigInt>;
}

/// Exact rationals; the fraction field of the integers.
struct RationalCtx;

impl FieldCtx for RationalCtx {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn embed(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn lift(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
}

/// Arithmetic mod a prime, canonical residues.
struct PrimeCtx<'a> {
    ring: &'a Ring,
}

impl FieldCtx for PrimeCtx<'_> {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.ring.add(a, b)
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.ring.sub(a, b)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.ring.mul(a, b)
    }
    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let inv = self.ring.inv(b).expect("division by nonzero");
        self.ring.mul(a, &inv)
    }
    fn embed(&self, a: &BigInt) -> BigInt {
        self.ring.normalize(a.clone())
    }
    fn lift(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
}

// ---------------------------------------------------------------------------
// Berlekamp–Massey
// ---------------------------------------------------------------------------

/// Minimal monic generator of `seq` as low-to-high coefficients; length
/// `r + 1` where `r` is the recurrence order.
fn minimal_generator<F: FieldCtx>(ctx: &F, seq: &[F::E]) -> Vec<F::E> {
    // Connection polynomial form: c[0] = 1 and
    // sum_{j=0..l} c[j] * s[i-j] = 0 for l <= i < seq.len().
    let mut c: Vec<F::E> = vec![ctx.one()];
    let mut b: Vec<F::E> = vec![ctx.one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_delta = ctx.one();
    for i in 0..seq.len() {
        let mut delta = ctx.zero();
        for j in 0..=l.min(i).min(c.len() - 1) {
            delta = ctx.add(&delta, &ctx.mul(&c[j], &seq[i - j]));
        }
        if ctx.is_zero(&delta) {
            m += 1;
            continue;
        }
        let coef = ctx.div(&delta, &last_delta);
        if 2 * l <= i {
            let previous_c = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, ctx.zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] = ctx.sub(&c[j + m], &ctx.mul(&coef, bj));
            }
            l = i + 1 - l;
            b = previous_c;
            last_delta = delta;
            m = 1;
        } else {
            if c.len() < b.len() + m {
                c.resize(b.len() + m, ctx.zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] = ctx.sub(&c[j + m], &ctx.mul(&coef, bj));
            }
            m += 1;
        }
    }
    c.truncate(l + 1);
    c.resize(l + 1, ctx.zero());
    // The generator is the reversal: lambda_j = c[l - j], monic by c[0] = 1.
    let mut lambda = Vec::with_capacity(l + 1);
    for j in 0..=l {
        lambda.push(c[l - j].clone());
    }
    lambda
}

/// Minimal monic generator `lambda` of a sequence, as a [`UniPoly`].
///
/// `lambda` has degree `r` and satisfies
/// `sum_j lambda_j * seq[i + j] = 0` for every window of the sequence. The
/// all-zero sequence yields the constant `1` (order zero).
///
/// Over the integers the computation runs in exact rationals. Sequences from
/// polynomial oracles always have integer generators; this function panics if
/// handed an integer sequence whose minimal generator is properly rational.
pub fn berlekamp_massey(ring: &Ring, seq: &[BigInt]) -> UniPoly {
    let coeffs: Vec<BigInt> = match ring {
        Ring::Integers => {
            let ctx = RationalCtx;
            let seq: Vec<BigRational> = seq.iter().map(|s| ctx.embed(s)).collect();
            minimal_generator(&ctx, &seq)
                .into_iter()
                .map(|c| {
                    ctx.lift(&c).expect(
                        "minimal generator of this integer sequence has rational coefficients",
                    )
                })
                .collect()
        }
        Ring::PrimeField { .. } => {
            let ctx = PrimeCtx { ring };
            let seq: Vec<BigInt> = seq.iter().map(|s| ctx.embed(s)).collect();
            minimal_generator(&ctx, &seq)
        }
    };
    UniPoly::from_terms(
        ring.clone(),
        coeffs
            .into_iter()
            .enumerate()
            .map(|(e, c)| (BigUint::from(e), c)),
    )
}

// ---------------------------------------------------------------------------
// Transposed Vandermonde solve
// ---------------------------------------------------------------------------

/// Solves `sum_j c_j * roots[j]^i = values[i]` for `i < roots.len()`.
fn tv_solve<F: FieldCtx>(
    ctx: &F,
    roots: &[F::E],
    values: &[F::E],
) -> std::result::Result<Vec<F::E>, usize> {
    let r = roots.len();
    assert!(values.len() >= r, "need at least as many values as roots");
    for i in 0..r {
        for j in i + 1..r {
            if roots[i] == roots[j] {
                return Err(j);
            }
        }
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    // Master polynomial A(z) = prod (z - root_j), low-to-high coefficients.
    let mut master: Vec<F::E> = vec![ctx.one()];
    for root in roots {
        let mut next = vec![ctx.zero(); master.len() + 1];
        for (i, a) in master.iter().enumerate() {
            next[i + 1] = ctx.add(&next[i + 1], a);
            next[i] = ctx.sub(&next[i], &ctx.mul(root, a));
        }
        master = next;
    }
    let mut out = Vec::with_capacity(r);
    for root in roots {
        // Deflate: s = A / (z - root) by synthetic division.
        let mut s = vec![ctx.zero(); r];
        s[r - 1] = master[r].clone();
        for i in (0..r - 1).rev() {
            s[i] = ctx.add(&master[i + 1], &ctx.mul(root, &s[i + 1]));
        }
        // Denominator s(root) = prod_{k != j} (root_j - root_k) is nonzero.
        let mut denom = ctx.zero();
        for coeff in s.iter().rev() {
            denom = ctx.add(&ctx.mul(&denom, root), coeff);
        }
        let mut numer = ctx.zero();
        for (v, coeff) in values.iter().zip(&s) {
            numer = ctx.add(&numer, &ctx.mul(v, coeff));
        }
        out.push(ctx.div(&numer, &denom));
    }
    Ok(out)
}

/// Coefficients `c` with `sum_j c_j * roots[j]^i = values[i]` for
/// `i < roots.len()`; exact. Repeated roots give [`Error::SingularSystem`].
///
/// Over the integers the solve runs in exact rationals and panics if the
/// solution leaves the integers (systems from polynomial oracles never do).
pub fn solve_transposed_vandermonde(
    ring: &Ring,
    roots: &[BigInt],
    values: &[BigInt],
) -> Result<Vec<BigInt>> {
    match ring {
        Ring::Integers => {
            let ctx = RationalCtx;
            let r: Vec<BigRational> = roots.iter().map(|x| ctx.embed(x)).collect();
            let v: Vec<BigRational> = values.iter().map(|x| ctx.embed(x)).collect();
            tv_solve(&ctx, &r, &v)
                .map_err(|j| Error::SingularSystem(roots[j].clone()))?
                .into_iter()
                .map(|c| {
                    Ok(ctx
                        .lift(&c)
                        .expect("transposed Vandermonde solution left the integers"))
                })
                .collect()
        }
        Ring::PrimeField { .. } => {
            let ctx = PrimeCtx { ring };
            let r: Vec<BigInt> = roots.iter().map(|x| ctx.embed(x)).collect();
            let v: Vec<BigInt> = values.iter().map(|x| ctx.embed(x)).collect();
            tv_solve(&ctx, &r, &v).map_err(|j| Error::SingularSystem(roots[j].clone()))
        }
    }
}

// ---------------------------------------------------------------------------
// Ben-or–Tiwari
// ---------------------------------------------------------------------------

/// Deterministic Ben-or–Tiwari interpolation: exactly `2 * term_bound` probes
/// at `g^0, ..., g^(2T-1)`.
///
/// Over the integers `g = 2`; over `F_q` the base is the smallest element of
/// multiplicative order above `degree_bound`, so distinct exponents give
/// distinct recurrence roots. Exponents are recovered by sweeping powers of
/// `g` up to the degree bound and coefficients by a transposed Vandermonde
/// solve. Requires `term_bound` at least the number of terms of the true
/// polynomial; violations surface as [`Error::BackendFailure`].
pub fn bot_interpolate(
    oracle: &UniOracle<'_>,
    term_bound: u64,
    degree_bound: u64,
    ring: &Ring,
) -> Result<UniPoly> {
    let base = match ring {
        Ring::Integers => BigInt::from(2),
        Ring::PrimeField { .. } => ring.element_of_order_geq(degree_bound + 1)?,
    };
    let samples = usize::try_from(2 * term_bound).expect("term bound fits usize");
    let mut seq = Vec::with_capacity(samples);
    let mut point = BigInt::one();
    for _ in 0..samples {
        seq.push(ring.normalize(oracle.eval(&point)));
        point = ring.mul(&point, &base);
    }
    if seq.iter().all(Zero::is_zero) {
        return Ok(UniPoly::zero(ring.clone()));
    }
    match ring {
        Ring::Integers => bot_finish_integers(&seq, degree_bound, ring),
        Ring::PrimeField { .. } => bot_finish_prime(&seq, degree_bound, ring, &base),
    }
}

fn bot_finish_integers(seq: &[BigInt], degree_bound: u64, ring: &Ring) -> Result<UniPoly> {
    let ctx = RationalCtx;
    let rational_seq: Vec<BigRational> = seq.iter().map(|s| ctx.embed(s)).collect();
    let lambda_q = minimal_generator(&ctx, &rational_seq);
    let lambda: Vec<BigInt> = lambda_q
        .iter()
        .map(|c| ctx.lift(c))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::BackendFailure(
                "recurrence has non-integer coefficients; term bound below the actual term count"
                    .into(),
            )
        })?;
    let order = lambda.len() - 1;
    if order == 0 {
        return Err(Error::BackendFailure(
            "nonzero sequence with order-zero recurrence".into(),
        ));
    }
    if lambda[0].is_zero() {
        return Err(Error::BackendFailure(
            "recurrence root at zero is not a power of 2; term bound below the actual term count"
                .into(),
        ));
    }
    // All roots are powers of two, so their product |lambda_0| caps each
    // exponent by its bit length.
    let max_exp = std::cmp::min(degree_bound, lambda[0].bits() - 1);
    let mut exponents: Vec<u64> = Vec::with_capacity(order);
    for e in 0..=max_exp {
        // Horner at 2^e; multiplying by 2^e is a shift.
        let mut acc = lambda[order].clone();
        for coeff in lambda[..order].iter().rev() {
            acc = (acc << e) + coeff;
        }
        if acc.is_zero() {
            exponents.push(e);
            if exponents.len() == order {
                break;
            }
        }
    }
    if exponents.len() < order {
        return Err(Error::BackendFailure(format!(
            "only {} of {} recurrence roots are powers of 2 within the degree bound; \
             term bound below the actual term count",
            exponents.len(),
            order
        )));
    }
    let roots: Vec<BigRational> = exponents
        .iter()
        .map(|&e| ctx.embed(&(BigInt::one() << e)))
        .collect();
    let coeffs = tv_solve(&ctx, &roots, &rational_seq[..order])
        .expect("roots are distinct powers of two");
    let coeffs: Vec<BigInt> = coeffs
        .iter()
        .map(|c| ctx.lift(c))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::BackendFailure(
                "coefficient solve left the integers; term bound below the actual term count"
                    .into(),
            )
        })?;
    Ok(UniPoly::from_terms(
        ring.clone(),
        exponents
            .into_iter()
            .map(BigUint::from)
            .zip(coeffs),
    ))
}

fn bot_finish_prime(
    seq: &[BigInt],
    degree_bound: u64,
    ring: &Ring,
    base: &BigInt,
) -> Result<UniPoly> {
    let ctx = PrimeCtx { ring };
    let lambda = minimal_generator(&ctx, seq);
    let order = lambda.len() - 1;
    if order == 0 {
        return Err(Error::BackendFailure(
            "nonzero sequence with order-zero recurrence".into(),
        ));
    }
    // Sweep g^0, g^1, ... testing each as a recurrence root; exponent
    // recovery costs O(degree_bound * order) multiplications and never a
    // discrete logarithm.
    let mut exponents: Vec<u64> = Vec::with_capacity(order);
    let mut roots: Vec<BigInt> = Vec::with_capacity(order);
    let mut power = BigInt::one();
    for e in 0..=degree_bound {
        let mut acc = lambda[order].clone();
        for coeff in lambda[..order].iter().rev() {
            acc = ring.add(&ring.mul(&acc, &power), coeff);
        }
        if acc.is_zero() {
            exponents.push(e);
            roots.push(power.clone());
            if exponents.len() == order {
                break;
            }
        }
        power = ring.mul(&power, base);
    }
    if exponents.len() < order {
        return Err(Error::BackendFailure(format!(
            "only {} of {} recurrence roots are powers of the base within the degree bound; \
             term bound below the actual term count",
            exponents.len(),
            order
        )));
    }
    let coeffs = tv_solve(&ctx, &roots, &seq[..order])
        .expect("distinct powers of an element of high order");
    Ok(UniPoly::from_terms(
        ring.clone(),
        exponents
            .into_iter()
            .map(BigUint::from)
            .zip(coeffs),
    ))
}
