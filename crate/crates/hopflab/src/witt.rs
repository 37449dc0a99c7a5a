//! Witt polynomials `w_d`, Witt addition polynomials `S_d`, and the
//! finite-length Witt vector group over any supported coefficient ring.
//!
//! The `S_d` are generated exactly over Z from the defining identity
//! `w_d(S_0, ..., S_d) = w_d(X_0, ..., X_d) + w_d(Y_0, ..., Y_d)`; the
//! division by `p^d` in the recursion is checked to be exact, which is the
//! integrality theorem made executable.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::RatFunc;
use crate::trunc::TruncElement;

/// Variables of the integer polynomial ring used by the Witt machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    Y(u32),
    Z(u32),
    /// Extra variable for substitution identities (weighted scaling tests).
    Aux,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "X{i}"),
            Var::Y(i) => write!(f, "Y{i}"),
            Var::Z(i) => write!(f, "Z{i}"),
            Var::Aux => write!(f, "L"),
        }
    }
}

/// Sparse multivariate polynomial over arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    vars: Arc<Vec<Var>>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(vars: Arc<Vec<Var>>) -> Self {
        IntPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<Vec<Var>>, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        IntPoly { vars, terms }
    }

    pub fn one(vars: Arc<Vec<Var>>) -> Self {
        Self::constant(vars, BigInt::one())
    }

    /// The monomial `v^k`.
    pub fn var_pow(vars: Arc<Vec<Var>>, v: Var, k: u32) -> Self {
        let idx = vars
            .iter()
            .position(|&w| w == v)
            .expect("variable not in table");
        let mut e = vec![0; vars.len()];
        e[idx] = k;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        IntPoly { vars, terms }
    }

    pub fn vars(&self) -> &Arc<Vec<Var>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "IntPoly variable tables differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        IntPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        IntPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut acc: HashMap<Vec<u32>, BigInt> =
            HashMap::with_capacity(self.terms.len().max(other.terms.len()) * 2);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let prod = c1 * c2;
                let entry = acc.entry(e).or_insert_with(BigInt::zero);
                *entry += prod;
            }
        }
        IntPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division by an integer; errors if any coefficient is not divisible.
    pub fn div_exact_int(&self, c: &BigInt) -> Result<Self> {
        assert!(!c.is_zero());
        let mut terms = BTreeMap::new();
        for (e, k) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(k, c);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient {k} not divisible by {c}"
                )));
            }
            terms.insert(e.clone(), q);
        }
        Ok(IntPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Evaluates in any [`WittRing`], mapping the i-th table variable to
    /// `args[i]`. Coefficients are taken into the ring first, so rings of
    /// characteristic p never see terms that die mod p.
    pub fn eval<R: WittRing>(&self, zero: &R, args: &[R]) -> R {
        assert_eq!(args.len(), self.vars.len(), "argument count mismatch");
        let mut powers: HashMap<(usize, u32), R> = HashMap::new();
        let mut acc = zero.clone();
        for (e, c) in &self.terms {
            let mut coeff = zero.from_bigint(c);
            if coeff.is_zero_elem() {
                continue;
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, k))
                    .or_insert_with(|| args[i].pow_u(k as u64))
                    .clone();
                coeff = coeff.ring_mul(&pw);
            }
            acc = acc.ring_add(&coeff);
        }
        acc
    }

    /// Re-expresses this polynomial over a different variable table
    /// (which must contain every variable of the current one).
    pub fn relabel(&self, vars: Arc<Vec<Var>>) -> Self {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("missing variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    out[map[i]] = k;
                }
                (out, c.clone())
            })
            .collect();
        IntPoly { vars, terms }
    }

    fn total_degree(e: &[u32]) -> u64 {
        e.iter().map(|&x| x as u64).sum()
    }

    /// Terms in canonical print order: total degree ascending, ties broken by
    /// descending lexicographic exponent vector.
    pub fn ordered_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(e1, _), (e2, _)| {
            Self::total_degree(e1)
                .cmp(&Self::total_degree(e2))
                .then_with(|| e2.cmp(e1))
        });
        ts
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let has_vars = e.iter().any(|&x| x != 0);
            if !has_vars || !abs.is_one() {
                write!(f, "{abs}")?;
                if has_vars {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (vi, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars[vi])?;
                if k != 1 {
                    write!(f, "^{k}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// Rings the Witt machinery can evaluate into.
pub trait WittRing: Clone {
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn pow_u(&self, k: u64) -> Self;
    /// Image of an integer in the ring of `self` (same context).
    fn from_bigint(&self, n: &BigInt) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl WittRing for BigInt {
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn pow_u(&self, k: u64) -> Self {
        num_traits::Pow::pow(self, k)
    }
    fn from_bigint(&self, n: &BigInt) -> Self {
        n.clone()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl WittRing for RatFunc {
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn pow_u(&self, k: u64) -> Self {
        self.pow(k)
    }
    fn from_bigint(&self, n: &BigInt) -> Self {
        let p = BigInt::from(self.ctx().p());
        let r = num_integer::Integer::mod_floor(n, &p);
        let digits = r.to_u64_digits().1;
        RatFunc::constant(self.ctx(), digits.first().copied().unwrap_or(0))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl WittRing for IntPoly {
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn pow_u(&self, k: u64) -> Self {
        self.pow(k as u32)
    }
    fn from_bigint(&self, n: &BigInt) -> Self {
        Self::constant(self.vars.clone(), n.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl WittRing for TruncElement {
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn pow_u(&self, k: u64) -> Self {
        self.pow(k)
    }
    fn from_bigint(&self, n: &BigInt) -> Self {
        let p = BigInt::from(self.algebra().ctx().p());
        let r = num_integer::Integer::mod_floor(n, &p);
        let digits = r.to_u64_digits().1;
        self.algebra_scalar(digits.first().copied().unwrap_or(0))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Cached Witt polynomials `w_0..w_d` and addition polynomials `S_0..S_d`
/// for one prime, immutable after construction.
pub struct WittPolySystem {
    p: u64,
    d_max: u32,
    w_vars: Arc<Vec<Var>>,
    s_vars: Arc<Vec<Var>>,
    w: Vec<IntPoly>,
    s: Vec<IntPoly>,
}

impl WittPolySystem {
    pub fn new(p: u64, d_max: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameters("p must be at least 2".into()));
        }
        let w_vars: Arc<Vec<Var>> = Arc::new((0..=d_max).map(Var::Z).collect());
        let s_vars: Arc<Vec<Var>> = Arc::new(
            (0..=d_max)
                .map(Var::X)
                .chain((0..=d_max).map(Var::Y))
                .collect(),
        );
        let bp = BigInt::from(p);

        let mut w = Vec::with_capacity(d_max as usize + 1);
        for d in 0..=d_max {
            // w_d = Z_0^{p^d} + p Z_1^{p^{d-1}} + ... + p^d Z_d
            let mut acc = IntPoly::zero(w_vars.clone());
            for i in 0..=d {
                let coef = bp.clone().pow(i);
                let mono = IntPoly::var_pow(
                    w_vars.clone(),
                    Var::Z(i),
                    p.pow(d - i)
                        .try_into()
                        .map_err(|_| Error::InvalidParameters("p^d exceeds u32".into()))?,
                );
                acc = acc.add(&mono.scale(&coef));
            }
            w.push(acc);
        }

        // w_d written in the X (resp. Y) variables
        let w_of = |d: u32, mk: fn(u32) -> Var| -> IntPoly {
            let mut acc = IntPoly::zero(s_vars.clone());
            for i in 0..=d {
                let coef = bp.clone().pow(i);
                let mono = IntPoly::var_pow(s_vars.clone(), mk(i), p.pow(d - i) as u32);
                acc = acc.add(&mono.scale(&coef));
            }
            acc
        };

        let mut s: Vec<IntPoly> = Vec::with_capacity(d_max as usize + 1);
        // powcache[i] holds S_i^{p^{d-1-i}} entering round d
        let mut powcache: Vec<IntPoly> = Vec::new();
        for d in 0..=d_max {
            for c in powcache.iter_mut() {
                *c = c.pow(p as u32);
            }
            let mut rhs = w_of(d, Var::X).add(&w_of(d, Var::Y));
            for (i, c) in powcache.iter().enumerate() {
                rhs = rhs.sub(&c.scale(&bp.clone().pow(i as u32)));
            }
            let sd = rhs.div_exact_int(&bp.clone().pow(d))?;
            powcache.push(sd.clone());
            s.push(sd);
        }

        let sys = WittPolySystem {
            p,
            d_max,
            w_vars,
            s_vars,
            w,
            s,
        };
        sys.self_check()?;
        Ok(sys)
    }

    /// Numeric back-substitution of S into the defining identity at a few
    /// integer points, independent of the polynomial assembly above.
    fn self_check(&self) -> Result<()> {
        let points: [(i64, i64); 3] = [(1, 1), (2, -1), (-3, 5)];
        for (a, b) in points {
            let x: Vec<BigInt> = (0..=self.d_max)
                .map(|i| BigInt::from(a + i as i64))
                .collect();
            let y: Vec<BigInt> = (0..=self.d_max)
                .map(|i| BigInt::from(b - 2 * i as i64))
                .collect();
            let s_vals = self.witt_add(&x, &y);
            let lhs = self.ghost_map(&s_vals);
            let gx = self.ghost_map(&x);
            let gy = self.ghost_map(&y);
            for d in 0..lhs.len() {
                if lhs[d] != &gx[d] + &gy[d] {
                    return Err(Error::InexactDivision(format!(
                        "S_{d} fails w_d(S) = w_d(X) + w_d(Y) at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn s_vars(&self) -> &Arc<Vec<Var>> {
        &self.s_vars
    }

    pub fn w_vars(&self) -> &Arc<Vec<Var>> {
        &self.w_vars
    }

    /// `w_d` in the variables `Z_0..Z_d`.
    pub fn witt_polynomial(&self, d: u32) -> &IntPoly {
        &self.w[d as usize]
    }

    /// `S_d` in the variables `X_0..X_d, Y_0..Y_d`.
    pub fn addition_polynomial(&self, d: u32) -> &IntPoly {
        &self.s[d as usize]
    }

    /// Ghost components `(w_0(u), ..., w_d(u))` of an integer Witt vector.
    pub fn ghost_map(&self, u: &[BigInt]) -> Vec<BigInt> {
        let d = u.len() - 1;
        let zero = BigInt::zero();
        (0..=d)
            .map(|k| {
                let mut args = vec![BigInt::zero(); self.w_vars.len()];
                args[..=k].clone_from_slice(&u[..=k]);
                self.w[k].eval(&zero, &args)
            })
            .collect()
    }

    fn assemble_args<R: WittRing>(&self, u: &[R], v: &[R], zero: &R) -> Vec<R> {
        let mut args = vec![zero.clone(); self.s_vars.len()];
        for (i, x) in u.iter().enumerate() {
            args[i] = x.clone();
        }
        for (i, y) in v.iter().enumerate() {
            args[self.d_max as usize + 1 + i] = y.clone();
        }
        args
    }

    /// Componentwise Witt addition `(S_0(u;v), ..., S_d(u;v))`.
    pub fn witt_add<R: WittRing>(&self, u: &[R], v: &[R]) -> Vec<R> {
        assert_eq!(u.len(), v.len(), "Witt vectors of unequal length");
        assert!(u.len() as u32 <= self.d_max + 1, "length exceeds d_max");
        let zero = u[0].ring_add(&u[0].ring_neg());
        let args = self.assemble_args(u, v, &zero);
        (0..u.len())
            .map(|d| self.s[d].eval(&zero, &args))
            .collect()
    }

    /// Additive inverse by triangular solve: `S_d = X_d + Y_d + (lower terms)`,
    /// so with `v_d` set to zero the evaluation yields `u_d + g_d(...)` and
    /// the inverse component is its negative. Componentwise negation is NOT
    /// correct in general (it fails for p = 2 over Z).
    pub fn witt_neg<R: WittRing>(&self, u: &[R]) -> Vec<R> {
        assert!(u.len() as u32 <= self.d_max + 1, "length exceeds d_max");
        let zero = u[0].ring_add(&u[0].ring_neg());
        let mut v: Vec<R> = Vec::with_capacity(u.len());
        for d in 0..u.len() {
            let mut padded = v.clone();
            padded.push(zero.clone());
            let args = self.assemble_args(u, &padded, &zero);
            v.push(self.s[d].eval(&zero, &args).ring_neg());
        }
        v
    }
}
