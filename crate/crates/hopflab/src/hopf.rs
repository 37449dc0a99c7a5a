//! The monogenic Hopf algebras `H_{n,r,f}` over `K = F_p(T_1, ..., T_m)`,
//! the primitive (Chase) algebra, tensor products, and the two-generator
//! example, together with exact verification of the Hopf axioms.
//!
//! The comultiplication of `H_{n,r,f}` on the generator is
//!
//! ```text
//! Delta(t) = S_d((f_d t^{p^{dr}} (x) 1, ..., f_1 t^{p^r} (x) 1, t (x) 1);
//!                (1 (x) f_d t^{p^{dr}}, ..., 1 (x) f_1 t^{p^r}, 1 (x) t))
//! ```
//!
//! with `d = ceil(n/r) - 1` and `f_i` the sequence `f_1 = f^{1/p}`,
//! `f_i = f^{p^-i} f_{i-1}^{p^r}`. The coefficients land in `K` even though
//! the `f_i` do not; the construction asserts this on every coefficient.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, RatFunc};
use crate::report::Report;
use crate::trunc::{GenSpec, TruncAlgebra, TruncElement};
use crate::witt::WittPolySystem;

/// Which Hopf algebra this is.
#[derive(Debug, Clone)]
pub enum HopfKind {
    /// `H_{n,r,f}` with `0 < r < n`, one generator `t`, `t^{p^n} = 0`.
    Monogenic {
        n: u32,
        r: u32,
        f: RatFunc,
        d: u32,
        f_seq: Vec<RatFunc>,
    },
    /// `K[t]/(t^{p^n})` with primitive generator (Chase's Hopf algebra).
    Primitive { n: u32 },
    /// Tensor product of the factors, generators renamed `t1, t2, ...`.
    Tensor(Vec<HopfAlgebra>),
    /// The two-generator example: `K[t,u]/(t^{p^2}, u^{p^2})` with
    /// `Delta(t) = S_1((u^p (x) 1, t (x) 1); (1 (x) u^p, 1 (x) t))` and
    /// primitive `u`.
    Bigenic,
}

/// A finite commutative cocommutative local-local K-Hopf algebra, stored as
/// its underlying truncated algebra plus the images of the generators under
/// comultiplication and antipode (the counit kills every generator).
#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    ctx: FieldCtx,
    kind: HopfKind,
    algebra: Arc<TruncAlgebra>,
    square: Arc<TruncAlgebra>,
    delta: Vec<TruncElement>,
}

/// The sequence `f_1 = f^{1/p}, f_i = f^{p^-i} f_{i-1}^{p^r}`, living in
/// `K^{p^-d}`. Also asserts the closed form `f_i = (f^{a_i})^{p^-i}` with
/// `a_i = 1 + p^{r+1} a_{i-1}`, which the recurrence must reproduce.
pub fn f_sequence(f: &RatFunc, r: u32, d: u32) -> Result<Vec<RatFunc>> {
    let ctx = f.ctx();
    if ctx.depth() < d {
        return Err(Error::DepthExceeded(format!(
            "f_sequence needs depth {d}, field has {}",
            ctx.depth()
        )));
    }
    let p = ctx.p();
    let mut seq: Vec<RatFunc> = Vec::with_capacity(d as usize);
    let mut a_i: u64 = 0;
    for i in 1..=d {
        let next = if i == 1 {
            f.p_root(1)?
        } else {
            let prev = &seq[i as usize - 2];
            f.p_root(i)?.mul(&prev.pow(p.pow(r)))
        };
        a_i = 1 + p.pow(r + 1) * a_i;
        let closed = f.pow(a_i).p_root(i)?;
        if !next.equals(&closed) {
            return Err(Error::InvalidParameters(format!(
                "f_{i} recurrence disagrees with closed form f^({a_i}/p^{i})"
            )));
        }
        seq.push(next);
    }
    Ok(seq)
}

/// `ceil(n/r) - 1`.
pub fn depth_for(n: u32, r: u32) -> u32 {
    n.div_ceil(r) - 1
}

impl HopfAlgebra {
    /// Builds `H_{n,r,f}` and checks the integrality of every coefficient
    /// of `Delta(t)`.
    pub fn monogenic(ctx: FieldCtx, n: u32, r: u32, f: RatFunc) -> Result<Self> {
        if !(0 < r && r < n) {
            return Err(Error::InvalidParameters(format!(
                "need 0 < r < n, got r = {r}, n = {n}"
            )));
        }
        if f.ctx() != ctx {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidParameters("f must be a unit".into()));
        }
        if !f.in_base_field() {
            return Err(Error::NotInBaseField(f.to_string()));
        }
        let d = depth_for(n, r);
        let f_seq = f_sequence(&f, r, d)?;
        // f_i^{p^i} must land back in K
        for (i, fi) in f_seq.iter().enumerate() {
            if !fi.frobenius(i as u32 + 1).in_base_field() {
                return Err(Error::BaseFieldViolation(format!(
                    "f_{}^(p^{}) escaped K",
                    i + 1,
                    i + 1
                )));
            }
        }
        let p = ctx.p();
        let algebra = TruncAlgebra::single(ctx, GenSpec::nilpotent("t", n));
        let square = algebra.tensor_power(2);
        let sys = WittPolySystem::new(p, d)?;
        let t0 = TruncElement::gen(&square, 0);
        let t1 = TruncElement::gen(&square, 1);
        let mut left = Vec::with_capacity(d as usize + 1);
        let mut right = Vec::with_capacity(d as usize + 1);
        for k in 0..=d {
            // argument index k carries f_{d-k} t^{p^{(d-k) r}}
            let j = d - k;
            if j == 0 {
                left.push(t0.clone());
                right.push(t1.clone());
            } else {
                let e = p.pow(j * r);
                left.push(t0.pow(e).scalar_mul(&f_seq[j as usize - 1]));
                right.push(t1.pow(e).scalar_mul(&f_seq[j as usize - 1]));
            }
        }
        let delta_t = crate::trunc::eval_addition_poly(&sys, d, &left, &right)?;
        for (_, c) in delta_t.terms() {
            if !c.in_base_field() {
                return Err(Error::BaseFieldViolation(format!(
                    "Delta(t) coefficient {c} is outside K"
                )));
            }
        }
        Ok(HopfAlgebra {
            ctx,
            kind: HopfKind::Monogenic { n, r, f, d, f_seq },
            algebra,
            square,
            delta: vec![delta_t],
        })
    }

    /// `K[t]/(t^{p^n})` with `Delta(t) = t (x) 1 + 1 (x) t`.
    pub fn primitive(ctx: FieldCtx, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        let algebra = TruncAlgebra::single(ctx, GenSpec::nilpotent("t", n));
        let square = algebra.tensor_power(2);
        let delta_t = TruncElement::gen(&square, 0).add(&TruncElement::gen(&square, 1));
        Ok(HopfAlgebra {
            ctx,
            kind: HopfKind::Primitive { n },
            algebra,
            square,
            delta: vec![delta_t],
        })
    }

    /// Tensor product; `Delta`, counit and antipode act factorwise.
    pub fn tensor(factors: Vec<HopfAlgebra>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameters("empty tensor product".into()));
        }
        if factors.len() == 1 {
            return Ok(factors.into_iter().next().unwrap());
        }
        let ctx = factors[0].ctx;
        if factors.iter().any(|h| h.ctx != ctx) {
            return Err(Error::FieldMismatch);
        }
        // one slot holding all generators, renamed per factor
        let mut gens = Vec::new();
        for (fi, h) in factors.iter().enumerate() {
            for g in &h.algebra.slots()[0] {
                gens.push(GenSpec {
                    name: format!("{}{}", g.name, fi + 1),
                    order_exp: g.order_exp,
                    reduce_to: g.reduce_to.clone(),
                });
            }
        }
        let algebra = TruncAlgebra::new(ctx, vec![gens]);
        let square = algebra.tensor_power(2);
        let total = algebra.num_gens();
        // embed each factor's Delta: factor fi generator gi maps into the
        // combined square at offsets (slot 0, slot 1)
        let mut delta = Vec::with_capacity(total);
        let mut offset = 0usize;
        for h in &factors {
            let k = h.algebra.num_gens();
            for gi in 0..k {
                let images: Vec<TruncElement> = (0..2 * k)
                    .map(|src| {
                        let (slot, within) = (src / k, src % k);
                        TruncElement::gen(&square, slot * total + offset + within)
                    })
                    .collect();
                delta.push(h.delta[gi].apply_map(&square, &images));
            }
            offset += k;
        }
        Ok(HopfAlgebra {
            ctx,
            kind: HopfKind::Tensor(factors),
            algebra,
            square,
            delta,
        })
    }

    /// The two-generator example over `F_p(T_1, T_2)`.
    pub fn bigenic(ctx: FieldCtx) -> Result<Self> {
        if ctx.m() < 2 {
            return Err(Error::InvalidParameters(
                "the bigenic example lives over F_p(T_1, T_2)".into(),
            ));
        }
        let p = ctx.p();
        let algebra = TruncAlgebra::new(
            ctx,
            vec![vec![GenSpec::nilpotent("t", 2), GenSpec::nilpotent("u", 2)]],
        );
        let square = algebra.tensor_power(2);
        let sys = WittPolySystem::new(p, 1)?;
        let t0 = TruncElement::gen(&square, 0);
        let u0 = TruncElement::gen(&square, 1);
        let t1 = TruncElement::gen(&square, 2);
        let u1 = TruncElement::gen(&square, 3);
        let delta_t = crate::trunc::eval_addition_poly(
            &sys,
            1,
            &[u0.pow(p), t0.clone()],
            &[u1.pow(p), t1.clone()],
        )?;
        let delta_u = u0.add(&u1);
        Ok(HopfAlgebra {
            ctx,
            kind: HopfKind::Bigenic,
            algebra,
            square,
            delta: vec![delta_t, delta_u],
        })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn kind(&self) -> &HopfKind {
        &self.kind
    }

    pub fn algebra(&self) -> &Arc<TruncAlgebra> {
        &self.algebra
    }

    pub fn square(&self) -> &Arc<TruncAlgebra> {
        &self.square
    }

    pub fn num_gens(&self) -> usize {
        self.algebra.num_gens()
    }

    /// `Delta(gen_i)` as an element of `H (x) H`.
    pub fn delta(&self, i: usize) -> &TruncElement {
        &self.delta[i]
    }

    /// `lambda(gen_i) = -gen_i`.
    pub fn antipode_gen(&self, i: usize) -> TruncElement {
        TruncElement::gen(&self.algebra, i).neg()
    }

    /// K-dimension `p^n` (product over generators).
    pub fn dim(&self) -> u64 {
        self.algebra.dim()
    }

    pub fn is_monogenic(&self) -> bool {
        matches!(self.kind, HopfKind::Monogenic { .. })
    }

    pub fn params(&self) -> Option<(u32, u32, &RatFunc)> {
        match &self.kind {
            HopfKind::Monogenic { n, r, f, .. } => Some((*n, *r, f)),
            _ => None,
        }
    }

    /// For `r = n - 1` the comultiplication has the closed form
    /// `t (x) 1 + 1 (x) t + f sum_l (1/(l!(p-l)!)) t^{p^r l} (x) t^{p^r (p-l)}`.
    pub fn closed_form_delta_rn1(&self) -> Result<TruncElement> {
        let HopfKind::Monogenic { n, r, f, .. } = &self.kind else {
            return Err(Error::ScopeError("closed form needs a monogenic algebra".into()));
        };
        if *r != n - 1 {
            return Err(Error::ScopeError(format!("r = {r} is not n - 1 = {}", n - 1)));
        }
        let p = self.ctx.p();
        let mut acc = TruncElement::gen(&self.square, 0).add(&TruncElement::gen(&self.square, 1));
        for l in 1..p {
            let c = inv_factorial_pair(self.ctx, l);
            let coeff = f.scale_fp(c);
            let term = TruncElement::monomial(
                &self.square,
                vec![p.pow(*r) * l, p.pow(*r) * (p - l)],
                coeff,
            );
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Replaces the generator by `u = g t` and returns the independently
    /// built `H_{n,r,f g^{1-p^{r+1}}}` together with the witness scalar,
    /// after checking that the two comultiplications agree under `t -> g t`.
    pub fn substitute_generator(&self, g: &RatFunc) -> Result<(HopfAlgebra, RatFunc)> {
        let HopfKind::Monogenic { n, r, f, .. } = &self.kind else {
            return Err(Error::ScopeError(
                "generator substitution needs a monogenic algebra".into(),
            ));
        };
        if g.is_zero() {
            return Err(Error::InvalidParameters("g must be a unit".into()));
        }
        let exp = 1i64 - (self.ctx.p() as i64).pow(r + 1);
        let f_new = f.mul(&g.pow_i(exp)?);
        let other = HopfAlgebra::monogenic(self.ctx, *n, *r, f_new)?;
        // Delta_H(g t) = g Delta_H(t) must equal Delta_other(t') under t' -> g t
        let lhs = self.delta[0].scalar_mul(g);
        let images = vec![
            TruncElement::gen(&self.square, 0).scalar_mul(g),
            TruncElement::gen(&self.square, 1).scalar_mul(g),
        ];
        let rhs = other.delta[0].apply_map(&self.square, &images);
        if lhs != rhs {
            return Err(Error::InvalidParameters(
                "generator substitution failed the Delta identity".into(),
            ));
        }
        Ok((other, g.clone()))
    }

    /// Verifies coassociativity, the counit law and the antipode law on
    /// every generator. Algebra maps agree everywhere once they agree on
    /// generators, so this is a complete check; `verify_axioms_full_basis`
    /// additionally re-runs the identities on every basis monomial.
    pub fn verify_axioms(&self) -> Report {
        let mut report = Report::new();
        let cube = self.algebra.tensor_power(3);
        let k = self.num_gens();
        let emb = |a: usize, b: usize, e: &TruncElement| {
            let images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    let target_slot = if slot == 0 { a } else { b };
                    TruncElement::gen(&cube, target_slot * k + within)
                })
                .collect();
            e.apply_map(&cube, images.as_slice())
        };
        for i in 0..k {
            let name = &self.algebra.gen_spec(i).name;
            // (Delta (x) id) Delta vs (id (x) Delta) Delta
            let left_images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    if slot == 0 {
                        emb(0, 1, &self.delta[within])
                    } else {
                        TruncElement::gen(&cube, 2 * k + within)
                    }
                })
                .collect();
            let lhs = self.delta[i].apply_map(&cube, &left_images);
            let right_images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    if slot == 0 {
                        TruncElement::gen(&cube, within)
                    } else {
                        emb(1, 2, &self.delta[within])
                    }
                })
                .collect();
            let rhs = self.delta[i].apply_map(&cube, &right_images);
            report.record_eq(format!("coassociativity({name})"), &lhs, &rhs);

            // mult(id (x) eps) Delta = id
            let counit_images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    if slot == 0 {
                        TruncElement::gen(&self.algebra, within)
                    } else {
                        TruncElement::zero(&self.algebra)
                    }
                })
                .collect();
            let counit_side = self.delta[i].apply_map(&self.algebra, &counit_images);
            report.record_eq(
                format!("counit({name})"),
                &counit_side,
                &TruncElement::gen(&self.algebra, i),
            );

            // mult(id (x) lambda) Delta = unit . eps
            let antipode_images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    if slot == 0 {
                        TruncElement::gen(&self.algebra, within)
                    } else {
                        self.antipode_gen(within)
                    }
                })
                .collect();
            let antipode_side = self.delta[i].apply_map(&self.algebra, &antipode_images);
            report.record_eq(
                format!("antipode({name})"),
                &antipode_side,
                &TruncElement::zero(&self.algebra),
            );

            // cocommutativity: swapping tensor slots fixes Delta
            let swap_images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    TruncElement::gen(&self.square, (1 - slot) * k + within)
                })
                .collect();
            let swapped = self.delta[i].apply_map(&self.square, &swap_images);
            report.record_eq(format!("cocommutativity({name})"), &swapped, &self.delta[i]);
        }
        report
    }

    /// Coassociativity re-checked on every basis monomial of `H`.
    pub fn verify_coassoc_full_basis(&self) -> Report {
        let mut report = Report::new();
        let cube = self.algebra.tensor_power(3);
        let k = self.num_gens();
        let emb = |a: usize, b: usize, e: &TruncElement| {
            let images: Vec<TruncElement> = (0..2 * k)
                .map(|src| {
                    let (slot, within) = (src / k, src % k);
                    let target_slot = if slot == 0 { a } else { b };
                    TruncElement::gen(&cube, target_slot * k + within)
                })
                .collect();
            e.apply_map(&cube, images.as_slice())
        };
        let left_images: Vec<TruncElement> = (0..2 * k)
            .map(|src| {
                let (slot, within) = (src / k, src % k);
                if slot == 0 {
                    emb(0, 1, &self.delta[within])
                } else {
                    TruncElement::gen(&cube, 2 * k + within)
                }
            })
            .collect();
        let right_images: Vec<TruncElement> = (0..2 * k)
            .map(|src| {
                let (slot, within) = (src / k, src % k);
                if slot == 0 {
                    TruncElement::gen(&cube, within)
                } else {
                    emb(1, 2, &self.delta[within])
                }
            })
            .collect();
        for exps in self.basis_exponents() {
            // Delta(h) for the basis monomial h = prod gen^e
            let mut dh = TruncElement::one(&self.square);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    dh = dh.mul(&self.delta[i].pow(e));
                }
            }
            let lhs = dh.apply_map(&cube, &left_images);
            let rhs = dh.apply_map(&cube, &right_images);
            let label: Vec<String> = exps.iter().map(u64::to_string).collect();
            report.push(
                format!("coassociativity-basis({})", label.join(",")),
                lhs == rhs,
                String::new(),
            );
        }
        report
    }

    /// Exponent tuples of the monomial basis of the underlying algebra.
    pub fn basis_exponents(&self) -> Vec<Vec<u64>> {
        let orders: Vec<u64> = (0..self.num_gens()).map(|i| self.algebra.order(i)).collect();
        let mut out = vec![vec![]];
        for &ord in &orders {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for prefix in &out {
                for e in 0..ord {
                    let mut row = prefix.clone();
                    row.push(e);
                    next.push(row);
                }
            }
            out = next;
        }
        out
    }

    /// Test-only access for negative controls.
    #[cfg(test)]
    pub(crate) fn with_corrupted_delta(&self, i: usize, delta: TruncElement) -> Self {
        let mut out = self.clone();
        out.delta[i] = delta;
        out
    }
}

/// `1/(l!(p-l)!) mod p` as an F_p scalar.
pub fn inv_factorial_pair(ctx: FieldCtx, l: u64) -> u64 {
    let p = ctx.p();
    let mut denom = 1u64;
    for k in 2..=l {
        denom = ctx.fp_mul(denom, k);
    }
    for k in 2..=(p - l) {
        denom = ctx.fp_mul(denom, k);
    }
    ctx.fp_inv(denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_for(p: u64, m: usize, n: u32, r: u32) -> FieldCtx {
        FieldCtx::new(p, m, depth_for(n, r)).unwrap()
    }

    #[test]
    fn f_sequence_base_cases() {
        let ctx = ctx_for(2, 1, 2, 1);
        let f = RatFunc::var(ctx, 0);
        let seq = f_sequence(&f, 1, 1).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0], f.p_root(1).unwrap());

        // r = 1, d = 2: f_2 = f^{1/p^2} * f
        let ctx2 = FieldCtx::new(2, 1, 2).unwrap();
        let f = RatFunc::var(ctx2, 0);
        let seq = f_sequence(&f, 1, 2).unwrap();
        let expected = f.p_root(2).unwrap().mul(&f);
        assert_eq!(seq[1], expected);
    }

    #[test]
    fn delta_matches_hand_expansion_p2() {
        // H_{2,1,T1} over F_2(T1): Delta(t) = t(x)1 + 1(x)t + T1 t^2 (x) t^2
        let ctx = ctx_for(2, 1, 2, 1);
        let f = RatFunc::var(ctx, 0);
        let h = HopfAlgebra::monogenic(ctx, 2, 1, f.clone()).unwrap();
        let sq = h.square();
        let expected = TruncElement::gen(sq, 0)
            .add(&TruncElement::gen(sq, 1))
            .add(&TruncElement::monomial(sq, vec![2, 2], f));
        assert_eq!(h.delta(0), &expected);
        assert_eq!(
            h.delta(0).to_string(),
            "t\u{2297}1 + 1\u{2297}t + (T1)\u{b7}t^2\u{2297}t^2"
        );
    }

    #[test]
    fn delta_matches_hand_expansion_p3() {
        // H_{2,1,T1} over F_3(T1):
        // Delta(t) = t(x)1 + 1(x)t + T1 (2 t^3 (x) t^6 + 2 t^6 (x) t^3)
        let ctx = ctx_for(3, 1, 2, 1);
        let f = RatFunc::var(ctx, 0);
        let h = HopfAlgebra::monogenic(ctx, 2, 1, f.clone()).unwrap();
        let sq = h.square();
        let two_f = f.scale_fp(2);
        let expected = TruncElement::gen(sq, 0)
            .add(&TruncElement::gen(sq, 1))
            .add(&TruncElement::monomial(sq, vec![3, 6], two_f.clone()))
            .add(&TruncElement::monomial(sq, vec![6, 3], two_f));
        assert_eq!(h.delta(0), &expected);
    }

    #[test]
    fn delta_d2_collapses_into_base_field() {
        // (p, n, r) = (2, 3, 1), d = 2:
        // Delta(t) = t(x)1 + 1(x)t + f t^2 (x) t^2 + f^3 (t^6 (x) t^4 + t^4 (x) t^6)
        let ctx = ctx_for(2, 1, 3, 1);
        let f = RatFunc::var(ctx, 0);
        let h = HopfAlgebra::monogenic(ctx, 3, 1, f.clone()).unwrap();
        let sq = h.square();
        let f3 = f.pow(3);
        let expected = TruncElement::gen(sq, 0)
            .add(&TruncElement::gen(sq, 1))
            .add(&TruncElement::monomial(sq, vec![2, 2], f.clone()))
            .add(&TruncElement::monomial(sq, vec![6, 4], f3.clone()))
            .add(&TruncElement::monomial(sq, vec![4, 6], f3));
        assert_eq!(h.delta(0), &expected);
    }

    #[test]
    fn primitive_delta() {
        let ctx = FieldCtx::new(2, 1, 0).unwrap();
        let h = HopfAlgebra::primitive(ctx, 2).unwrap();
        let sq = h.square();
        let expected = TruncElement::gen(sq, 0).add(&TruncElement::gen(sq, 1));
        assert_eq!(h.delta(0), &expected);
        assert!(h.verify_axioms().pass());
    }

    #[test]
    fn axioms_pass_for_small_cases() {
        for (p, n, r) in [(2u64, 2u32, 1u32), (3, 2, 1), (2, 3, 1), (2, 3, 2)] {
            let ctx = ctx_for(p, 1, n, r);
            let f = RatFunc::var(ctx, 0);
            let h = HopfAlgebra::monogenic(ctx, n, r, f).unwrap();
            let rep = h.verify_axioms();
            assert!(rep.pass(), "axioms failed for ({p},{n},{r}):\n{rep}");
        }
    }

    #[test]
    fn corrupted_delta_fails_coassociativity() {
        let ctx = ctx_for(2, 1, 2, 1);
        let f = RatFunc::var(ctx, 0);
        let h = HopfAlgebra::monogenic(ctx, 2, 1, f).unwrap();
        // drop the f-term from Delta(t)
        let sq = h.square();
        let bad = TruncElement::gen(sq, 0).add(&TruncElement::gen(sq, 1));
        let hbad = h.with_corrupted_delta(0, bad);
        let rep = hbad.verify_axioms();
        assert!(!rep.pass());
        assert!(rep
            .failures()
            .any(|c| c.name.starts_with("coassociativity")));
    }

    #[test]
    fn invalid_parameters_rejected() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let f = RatFunc::var(ctx, 0);
        assert!(matches!(
            HopfAlgebra::monogenic(ctx, 2, 0, f.clone()),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            HopfAlgebra::monogenic(ctx, 2, 2, f.clone()),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            HopfAlgebra::monogenic(ctx, 2, 1, RatFunc::zero(ctx)),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn closed_form_matches_for_r_eq_n_minus_1() {
        for (p, n) in [(2u64, 2u32), (3, 2), (2, 3), (3, 3)] {
            let r = n - 1;
            let ctx = ctx_for(p, 1, n, r);
            let f = RatFunc::var(ctx, 0);
            let h = HopfAlgebra::monogenic(ctx, n, r, f).unwrap();
            assert_eq!(h.delta(0), &h.closed_form_delta_rn1().unwrap(), "({p},{n})");
        }
    }

    #[test]
    fn wilson_sign_reconciliation() {
        // -(p-1)!/(l!(p-l)!) = 1/(l!(p-l)!) mod p
        for p in [2u64, 3, 5, 7] {
            let ctx = FieldCtx::new(p, 1, 0).unwrap();
            let mut fact = vec![1u64; p as usize + 1];
            for k in 1..=p as usize {
                fact[k] = ctx.fp_mul(fact[k - 1], k as u64);
            }
            for l in 1..p {
                // (p-1)!/(l!(p-l)!) computed exactly over Z then reduced:
                // equals binom(p, l)/p, always an integer
                let binom: u128 = {
                    let mut num: u128 = 1;
                    let mut den: u128 = 1;
                    for k in 0..l {
                        num *= (p - k) as u128;
                        den *= (k + 1) as u128;
                    }
                    num / den
                };
                let coef = (binom / p as u128) as u64 % p;
                let lhs = ctx.fp_neg(coef);
                let rhs = inv_factorial_pair(ctx, l);
                assert_eq!(lhs, rhs, "p = {p}, l = {l}");
            }
        }
    }

    #[test]
    fn substitute_generator_examples() {
        let ctx = ctx_for(2, 1, 2, 1);
        let f = RatFunc::var(ctx, 0);
        let h = HopfAlgebra::monogenic(ctx, 2, 1, f.clone()).unwrap();
        // g = 1 leaves f unchanged
        let (same, _) = h.substitute_generator(&RatFunc::one(ctx)).unwrap();
        assert_eq!(same.params().unwrap().2, &f);
        // g = T1: new f = T1 * T1^{-3} = T1^{-2}
        let (h2, _) = h.substitute_generator(&f).unwrap();
        let expected = f.pow_i(-2).unwrap();
        assert_eq!(h2.params().unwrap().2, &expected);
        // non-monomial g
        let g = f.add(&RatFunc::one(ctx));
        let (h3, _) = h.substitute_generator(&g).unwrap();
        let expected3 = f.mul(&g.pow_i(-3).unwrap());
        assert_eq!(h3.params().unwrap().2, &expected3);
    }

    #[test]
    fn tensor_of_two_passes_axioms() {
        let ctx = FieldCtx::new(2, 2, 1).unwrap();
        let h1 = HopfAlgebra::monogenic(ctx, 2, 1, RatFunc::var(ctx, 0)).unwrap();
        let h2 = HopfAlgebra::monogenic(ctx, 2, 1, RatFunc::var(ctx, 1)).unwrap();
        let t = HopfAlgebra::tensor(vec![h1, h2]).unwrap();
        assert_eq!(t.dim(), 16);
        assert!(t.verify_axioms().pass());
        // mixing in a primitive factor also works
        let ctx1 = FieldCtx::new(2, 2, 1).unwrap();
        let prim = HopfAlgebra::primitive(ctx1, 2).unwrap();
        let h = HopfAlgebra::monogenic(ctx1, 2, 1, RatFunc::var(ctx1, 0)).unwrap();
        let t2 = HopfAlgebra::tensor(vec![prim, h]).unwrap();
        assert!(t2.verify_axioms().pass());
    }

    #[test]
    fn bigenic_example() {
        let ctx = FieldCtx::new(2, 2, 0).unwrap();
        let h = HopfAlgebra::bigenic(ctx).unwrap();
        // Delta(t) = t(x)1 + 1(x)t + u^2 (x) u^2 at p = 2
        let sq = h.square();
        let expected = TruncElement::gen(sq, 0)
            .add(&TruncElement::gen(sq, 2))
            .add(&TruncElement::monomial(
                sq,
                vec![0, 2, 0, 2],
                RatFunc::one(ctx),
            ));
        assert_eq!(h.delta(0), &expected);
        // Delta(u) primitive
        let exp_u = TruncElement::gen(sq, 1).add(&TruncElement::gen(sq, 3));
        assert_eq!(h.delta(1), &exp_u);
        assert!(h.verify_axioms().pass());
        assert!(h.verify_coassoc_full_basis().pass());
    }

    #[test]
    fn full_basis_coassociativity_small() {
        for (p, n, r) in [(2u64, 2u32, 1u32), (3, 2, 1)] {
            let ctx = ctx_for(p, 1, n, r);
            let h = HopfAlgebra::monogenic(ctx, n, r, RatFunc::var(ctx, 0)).unwrap();
            assert!(h.verify_coassoc_full_basis().pass(), "({p},{n},{r})");
        }
    }
}
