//! Dense univariate polynomials over F_q.
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and equality is structural.
//! Multiplication is schoolbook; `mul` is the single place to swap in a
//! faster routine.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::FieldCtx;

/// Element of A = F_q[t].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(ctx: FieldCtx) -> Self {
        Self { ctx, coeffs: Vec::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: FieldCtx, c: u32) -> Self {
        Self::from_residues(ctx, vec![c % ctx.q()])
    }

    /// The variable t.
    pub fn t(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, 1, 1)
    }

    pub fn monomial(ctx: FieldCtx, c: u32, e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c % ctx.q();
        Self::from_residues(ctx, coeffs)
    }

    /// Builds a polynomial from signed integer coefficients, low degree first.
    pub fn from_coeffs(ctx: FieldCtx, coeffs: &[i64]) -> Self {
        Self::from_residues(ctx, coeffs.iter().map(|&c| ctx.reduce(c)).collect())
    }

    /// Builds a polynomial from residues already in `0..q`.
    pub fn from_residues(ctx: FieldCtx, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < ctx.q()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    #[inline]
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    /// Coefficients, low degree first.
    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, with `None` standing for deg 0 = -∞.
    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    #[inline]
    pub fn degree(&self) -> usize {
        self.deg().expect("degree of the zero polynomial")
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// True for nonzero constants.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// Splits a nonzero polynomial into `(leading coefficient, monic part)`.
    pub fn monic_parts(&self) -> (u32, Poly) {
        let lc = self.leading_coeff();
        assert!(lc != 0, "monic part of the zero polynomial");
        (lc, self.scale(self.ctx.inv(lc)))
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            self.clone()
        } else {
            self.monic_parts().1
        }
    }

    /// ‖a‖ = q^{deg a}; `None` for zero.
    pub fn norm(&self) -> Option<BigUint> {
        self.deg().map(|d| BigUint::from(self.q()).pow(d as u32))
    }

    /// ‖a‖ as a machine integer, panicking on overflow.
    pub fn norm_u64(&self) -> u64 {
        let d = self.degree() as u32;
        u64::from(self.q()).checked_pow(d).expect("norm overflows u64")
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ctx;
        Self::from_residues(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { ctx: self.ctx, coeffs }
    }

    pub fn derivative(&self) -> Poly {
        let f = self.ctx;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64 % u64::from(f.q())) as u32))
            .collect();
        Self::from_residues(f, coeffs)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.ctx;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Substitutes `t -> t + r`.
    pub fn shift_argument(&self, r: u32) -> Poly {
        let lin = Poly::from_residues(self.ctx, vec![r % self.q(), 1]);
        self.coeffs.iter().rev().fold(Poly::zero(self.ctx), |acc, &c| &(&acc * &lin) + &Poly::constant(self.ctx, c))
    }

    fn check_ctx(&self, other: &Poly) {
        assert_eq!(self.ctx, other.ctx, "polynomials over different fields");
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.check_ctx(divisor);
        let f = self.ctx;
        let dd = divisor.deg().expect("division by the zero polynomial");
        if self.coeffs.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv_lc = f.inv(divisor.leading_coeff());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv_lc);
            quot[i - dd] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = f.sub(rem[k], f.mul(factor, dc));
            }
        }
        rem.truncate(dd);
        (Self::from_residues(f, quot), Self::from_residues(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division, `None` if the remainder is nonzero.
    pub fn checked_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, g the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (quo, r2) = r0.div_rem(&r1);
            let s2 = &s0 - &(&quo * &s1);
            let t2 = &t0 - &(&quo * &t1);
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.leading_coeff());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.ctx).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m);
            if e.bit(i) {
                acc = (&acc * &base).rem(m);
            }
        }
        acc
    }

    /// `self^e mod m` for a machine-sized exponent.
    pub fn pow_mod_u64(&self, e: u64, m: &Poly) -> Poly {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Multiplicity of `p` in `self`; `self` must be nonzero and `p` nonconstant.
    pub fn valuation(&self, p: &Poly) -> u32 {
        assert!(!self.is_zero(), "valuation of zero");
        assert!(p.deg().unwrap_or(0) > 0, "valuation at a unit");
        let mut v = 0;
        let mut a = self.clone();
        while let Some(quo) = a.checked_div(p) {
            a = quo;
            v += 1;
        }
        v
    }

    /// Parses the canonical text format (`t^3+2*t+1`, `2*t`, `0`).
    ///
    /// Terms may appear in any order and `-` is accepted; coefficients must
    /// lie in `0..q`.
    pub fn parse(ctx: FieldCtx, input: &str) -> Result<Poly> {
        let err = |reason: &str| Error::Parse { input: input.to_string(), reason: reason.to_string() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = s.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if b == b'+' || b == b'-' {
                if i == 0 {
                    negative = b == b'-';
                    start = 1;
                    continue;
                }
                terms.push((negative, &s[start..i]));
                negative = b == b'-';
                start = i + 1;
            }
        }
        terms.push((negative, &s[start..]));

        let mut acc: Vec<i64> = Vec::new();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coeff_str, var_part) = match term.find('t') {
                None => (term, None),
                Some(pos) => {
                    let head = &term[..pos];
                    let coeff = match head {
                        "" => "1",
                        h => h.strip_suffix('*').ok_or_else(|| err("expected `*` between coefficient and t"))?,
                    };
                    (coeff, Some(&term[pos + 1..]))
                }
            };
            let coeff: u64 = coeff_str.parse().map_err(|_| err("bad coefficient"))?;
            if coeff >= u64::from(ctx.q()) {
                return Err(err("coefficient out of range 0..q"));
            }
            let exp: usize = match var_part {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(|| err("expected `^` after t"))?
                    .parse()
                    .map_err(|_| err("bad exponent"))?,
            };
            if exp > 4096 {
                return Err(err("exponent too large"));
            }
            if acc.len() <= exp {
                acc.resize(exp + 1, 0);
            }
            let c = coeff as i64;
            acc[exp] += if neg { -c } else { c };
        }
        Ok(Poly::from_coeffs(ctx, &acc))
    }

    /// Every polynomial of exact degree `n` (nonzero leading coefficient),
    /// in the canonical table order.
    pub fn all_of_degree(ctx: FieldCtx, n: usize) -> impl Iterator<Item = Poly> {
        let q = ctx.q();
        let count = u64::from(q).pow(n as u32) * u64::from(q - 1);
        (0..count).map(move |idx| {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut r = idx;
            for _ in 0..n {
                coeffs.push((r % u64::from(q)) as u32);
                r /= u64::from(q);
            }
            coeffs.push(r as u32 + 1);
            Poly::from_residues(ctx, coeffs)
        })
    }

    /// Every monic polynomial of degree `n`.
    pub fn monic_of_degree(ctx: FieldCtx, n: usize) -> impl Iterator<Item = Poly> {
        let q = u64::from(ctx.q());
        (0..q.pow(n as u32)).map(move |idx| {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut r = idx;
            for _ in 0..n {
                coeffs.push((r % q) as u32);
                r /= q;
            }
            coeffs.push(1);
            Poly::from_residues(ctx, coeffs)
        })
    }

    /// Every polynomial of degree `< n`, including zero (residues modulo a
    /// degree-n modulus).
    pub fn all_below_degree(ctx: FieldCtx, n: usize) -> impl Iterator<Item = Poly> {
        let q = u64::from(ctx.q());
        (0..q.pow(n as u32)).map(move |idx| {
            let mut coeffs = Vec::with_capacity(n);
            let mut r = idx;
            for _ in 0..n {
                coeffs.push((r % q) as u32);
                r /= q;
            }
            Poly::from_residues(ctx, coeffs)
        })
    }

    /// Nonzero polynomials of degree `<= max_deg`, in table order.
    pub fn nonzero_up_to_degree(ctx: FieldCtx, max_deg: usize) -> impl Iterator<Item = Poly> {
        (0..=max_deg).flat_map(move |n| Poly::all_of_degree(ctx, n))
    }
}

/// Table order: by degree (zero first), then lexicographically on the
/// coefficient sequence read from the leading coefficient down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.ctx.cmp(&other.ctx))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (c, e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, e) => write!(f, "t^{e}")?,
                (c, 1) => write!(f, "{c}*t")?,
                (c, e) => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} mod {})", self.q())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &'a Poly) -> Poly {
        self.check_ctx(rhs);
        let f = self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_residues(f, coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        self.check_ctx(rhs);
        let f = self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_residues(f, coeffs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_ctx(rhs);
        let f = self.ctx;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let q = u64::from(f.q());
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u64::from(a) * u64::from(b)) % q;
            }
        }
        Poly::from_residues(f, acc.into_iter().map(|c| c as u32).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = self.ctx;
        Poly::from_residues(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}
