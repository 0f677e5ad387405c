//! The oracle model: a [`BlackBox`] is anything evaluable at a point of
//! `R^n`, with probe accounting at the oracle boundary.
//!
//! Probe counting lives here and nowhere else — the interpolation drivers
//! report whatever the box counted, so the measured totals are honest oracle
//! statistics. An arithmetic-expression parser turns opaque text into black
//! boxes, and `.poly` files bundle an expression (or explicit sparse form)
//! with its ring and arity.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};

use crate::poly::SparsePoly;
use crate::ring::Ring;
use crate::{Error, Result};

type EvalFn = dyn Fn(&[BigInt]) -> BigInt + Send + Sync;

/// Evaluation oracle with a monotone probe counter.
///
/// `eval` is a pure function of the point; the counter increases by exactly
/// one per evaluation. Cloning shares the counter, so probes made through any
/// clone are visible to all.
#[derive(Clone)]
pub struct BlackBox {
    ring: Ring,
    arity: usize,
    probes: Arc<AtomicU64>,
    eval: Arc<EvalFn>,
}

impl std::fmt::Debug for BlackBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlackBox")
            .field("ring", &self.ring)
            .field("arity", &self.arity)
            .field("probes", &self.probes())
            .finish_non_exhaustive()
    }
}

impl BlackBox {
    pub fn new(
        ring: Ring,
        arity: usize,
        eval: impl Fn(&[BigInt]) -> BigInt + Send + Sync + 'static,
    ) -> Self {
        BlackBox {
            ring,
            arity,
            probes: Arc::new(AtomicU64::new(0)),
            eval: Arc::new(eval),
        }
    }

    /// Oracle computing an explicit sparse polynomial; the usual test harness.
    pub fn from_sparse(f: SparsePoly) -> Self {
        let ring = f.ring().clone();
        let arity = f.arity();
        BlackBox::new(ring, arity, move |point| {
            f.evaluate(point).expect("arity checked by BlackBox::eval")
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Total evaluations made so far through this box (and its clones).
    pub fn probes(&self) -> u64 {
        self.probes.load(Ordering::SeqCst)
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        self.probes.fetch_add(1, Ordering::SeqCst);
        Ok((self.eval)(point))
    }
}

// ---------------------------------------------------------------------------
// Arithmetic expressions
// ---------------------------------------------------------------------------

/// Parsed arithmetic expression denoting a polynomial in `x1..xn`.
///
/// Grammar precedence: `^` (nonnegative integer literal only) binds tightest,
/// then unary minus, then `*`, then binary `+`/`-`. No division, so the
/// denotation always stays inside the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprTree {
    ring: Ring,
    arity: usize,
    root: Node,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Const(BigInt),
    Var(usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, BigUint),
}

impl ExprTree {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub(crate) fn root(&self) -> &Node {
        &self.root
    }

    /// Bottom-up evaluation in the ring.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        Ok(eval_node(&self.root, &self.ring, point))
    }

    /// Wraps the tree as a probing oracle.
    pub fn to_blackbox(&self) -> BlackBox {
        let tree = self.clone();
        BlackBox::new(self.ring.clone(), self.arity, move |point| {
            eval_node(&tree.root, &tree.ring, point)
        })
    }
}

fn eval_node(node: &Node, ring: &Ring, point: &[BigInt]) -> BigInt {
    match node {
        Node::Const(c) => ring.normalize(c.clone()),
        Node::Var(i) => ring.normalize(point[*i].clone()),
        Node::Add(a, b) => ring.add(&eval_node(a, ring, point), &eval_node(b, ring, point)),
        Node::Sub(a, b) => ring.sub(&eval_node(a, ring, point), &eval_node(b, ring, point)),
        Node::Mul(a, b) => ring.mul(&eval_node(a, ring, point), &eval_node(b, ring, point)),
        Node::Neg(a) => ring.neg(&eval_node(a, ring, point)),
        Node::Pow(a, e) => ring.pow(&eval_node(a, ring, point), e),
    }
}

/// Parses `text` as a polynomial expression in `x1..x<arity>`.
pub fn parse_expr(text: &str, arity: usize, ring: &Ring) -> Result<ExprTree> {
    let mut p = ExprParser {
        bytes: text.as_bytes(),
        pos: 0,
        arity,
    };
    p.skip_ws();
    let root = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(ExprTree {
        ring: ring.clone(),
        arity,
        root,
    })
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    arity: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
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
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Node> {
        let mut node = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    node = Node::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    node = Node::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Node> {
        let mut node = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                node = Node::Mul(Box::new(node), Box::new(self.factor()?));
            } else {
                return Ok(node);
            }
        }
    }

    // factor := '-' factor | power
    fn factor(&mut self) -> Result<Node> {
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    // power := atom ['^' nat]
    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exponent = self
                .integer()
                .map_err(|_| self.err("`^` takes a nonnegative integer literal"))?;
            return Ok(Node::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    // atom := nat | var | '(' expr ')'
    fn atom(&mut self) -> Result<Node> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => Ok(Node::Const(BigInt::from(self.integer()?))),
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let index = self.integer().map_err(|_| Error::Parse {
                    offset: start,
                    message: "variable needs an index, e.g. `x1`".into(),
                })?;
                let index: usize = index
                    .try_into()
                    .map_err(|_| self.err("variable index out of range"))?;
                if index == 0 || index > self.arity {
                    return Err(Error::UnknownVariable {
                        name: format!("x{index}"),
                        offset: start,
                    });
                }
                Ok(Node::Var(index - 1))
            }
            _ => Err(self.err("expected a number, variable, or `(`")),
        }
    }
}

// ---------------------------------------------------------------------------
// `.poly` file ingestion
// ---------------------------------------------------------------------------

/// Contents of a `.poly` file: a ring, an arity, and either an opaque
/// expression or an explicit sparse polynomial.
///
/// ```text
/// ring: fq 13
/// n: 2
/// expr: (x1 + x2)^2 - x1^2
/// ```
///
/// `ring:` accepts `zz` or `fq <q>`; the body line is `expr:` or `sparse:`.
/// Blank lines and `#` comments are ignored.
#[derive(Clone, Debug)]
pub struct PolyFile {
    pub ring: Ring,
    pub arity: usize,
    pub source: PolySource,
}

#[derive(Clone, Debug)]
pub enum PolySource {
    Expr(ExprTree),
    Sparse(SparsePoly),
}

impl PolyFile {
    pub fn to_blackbox(&self) -> BlackBox {
        match &self.source {
            PolySource::Expr(tree) => tree.to_blackbox(),
            PolySource::Sparse(poly) => BlackBox::from_sparse(poly.clone()),
        }
    }
}

/// Parses the `.poly` file format.
pub fn parse_poly_file(text: &str) -> Result<PolyFile> {
    let mut ring: Option<Ring> = None;
    let mut arity: Option<usize> = None;
    let mut body: Option<(bool, String)> = None; // (is_expr, text)
    let mut offset = 0usize;
    for line in text.lines() {
        let line_offset = offset;
        offset += line.len() + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(Error::Parse {
                offset: line_offset,
                message: format!("expected `key: value`, got `{trimmed}`"),
            });
        };
        let value = value.trim();
        match key.trim() {
            "ring" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                ring = Some(match parts.as_slice() {
                    ["zz"] => Ring::integers(),
                    ["fq", q] => {
                        let q: BigInt = q.parse().map_err(|_| Error::Parse {
                            offset: line_offset,
                            message: format!("bad modulus `{q}`"),
                        })?;
                        Ring::prime_field(q)?
                    }
                    _ => {
                        return Err(Error::Parse {
                            offset: line_offset,
                            message: format!("bad ring `{value}`; use `zz` or `fq <q>`"),
                        })
                    }
                });
            }
            "n" => {
                arity = Some(value.parse().map_err(|_| Error::Parse {
                    offset: line_offset,
                    message: format!("bad arity `{value}`"),
                })?);
            }
            "expr" => body = Some((true, value.to_string())),
            "sparse" => body = Some((false, value.to_string())),
            other => {
                return Err(Error::Parse {
                    offset: line_offset,
                    message: format!("unknown key `{other}`"),
                });
            }
        }
    }
    let ring = ring.ok_or_else(|| Error::Parse {
        offset: 0,
        message: "missing `ring:` line".into(),
    })?;
    let arity = arity.ok_or_else(|| Error::Parse {
        offset: 0,
        message: "missing `n:` line".into(),
    })?;
    let (is_expr, body) = body.ok_or_else(|| Error::Parse {
        offset: 0,
        message: "missing `expr:` or `sparse:` line".into(),
    })?;
    let source = if is_expr {
        PolySource::Expr(parse_expr(&body, arity, &ring)?)
    } else {
        PolySource::Sparse(SparsePoly::parse(&body, &ring, arity)?)
    };
    Ok(PolyFile {
        ring,
        arity,
        source,
    })
}
