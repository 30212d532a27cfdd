//! Factorization in F_q[t].
//!
//! Squarefree split, then distinct-degree factorization, then
//! Cantor–Zassenhaus equal-degree splitting driven by a seeded ChaCha stream.
//! The output is sorted, so it does not depend on the seed.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// `unit * prod(p^e)` with monic irreducible, pairwise distinct `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn product(&self, ctx: crate::FieldCtx) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(ctx, self.unit), |acc, (p, e)| &acc * &p.pow(*e))
    }

    /// The distinct monic prime divisors.
    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn multiplicity(&self, p: &Poly) -> u32 {
        self.factors.iter().find(|(f, _)| f == p).map_or(0, |(_, e)| *e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

/// Factors a nonzero polynomial with the default seed.
pub fn factor(a: &Poly) -> Result<Factorization> {
    factor_seeded(a, DEFAULT_SEED)
}

pub fn factor_seeded(a: &Poly, seed: u64) -> Result<Factorization> {
    factor_with_rng(a, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn factor_with_rng<R: Rng>(a: &Poly, rng: &mut R) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::ZeroInput("factor"));
    }
    let (unit, monic) = a.monic_parts();
    let mut factors = Vec::new();
    for (sf, mult) in squarefree_factorization(&monic) {
        for (g, d) in distinct_degree(&sf) {
            for p in equal_degree(&g, d, rng) {
                factors.push((p, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Squarefree factorization of a monic polynomial: pairs `(f_i, i)` with
/// `f = prod f_i^i`, each `f_i` squarefree and the `f_i` pairwise coprime.
pub fn squarefree_factorization(f: &Poly) -> Vec<(Poly, u32)> {
    let ctx = f.ctx();
    let p = ctx.q() as usize;
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.checked_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.checked_div(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.checked_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        // c is a polynomial in t^p; over a prime field its p-th root just
        // keeps every p-th coefficient.
        let root = Poly::from_residues(ctx, c.coeffs().iter().step_by(p).copied().collect());
        for (g, e) in squarefree_factorization(&root) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree d.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let ctx = f.ctx();
    let q = BigUint::from(ctx.q());
    let x = Poly::t(ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.checked_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-d irreducibles (q odd).
fn equal_degree<R: Rng>(g: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = g.degree();
    if n == d {
        return vec![g.clone()];
    }
    let ctx = g.ctx();
    let exponent = (BigUint::from(ctx.q()).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..ctx.q())).collect();
        let r = Poly::from_residues(ctx, coeffs);
        if r.is_constant() {
            continue;
        }
        let mut cand = r.gcd(g);
        if cand.is_one() {
            let s = &r.pow_mod(&exponent, g) - &Poly::one(ctx);
            cand = s.gcd(g);
        }
        if !cand.is_one() && cand != *g {
            let other = g.checked_div(&cand).expect("gcd divides");
            let mut out = equal_degree(&cand, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Deterministic irreducibility test: squarefree and no factor of degree
/// at most half the degree.
pub fn is_irreducible(p: &Poly) -> bool {
    let Some(n) = p.deg() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if !p.gcd(&p.derivative()).is_one() {
        return false;
    }
    let ctx = p.ctx();
    let q = BigUint::from(ctx.q());
    let x = Poly::t(ctx);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(&q, p);
        if !p.gcd(&(&h - &x)).is_one() {
            return false;
        }
    }
    true
}

pub fn is_monic_irreducible(p: &Poly) -> bool {
    p.is_monic() && is_irreducible(p)
}

/// Squarefree test for nonzero input.
pub fn is_squarefree(a: &Poly) -> bool {
    if a.is_zero() {
        return false;
    }
    let d = a.derivative();
    if d.is_zero() {
        return a.is_constant();
    }
    a.gcd(&d).is_one()
}

/// Smallest (in table order) monic irreducible polynomial of degree n.
pub fn first_irreducible(ctx: crate::FieldCtx, n: usize) -> Poly {
    Poly::monic_of_degree(ctx, n)
        .find(is_irreducible)
        .expect("irreducibles exist in every degree")
}

/// All monic irreducibles of degree n, in table order.
pub fn irreducibles_of_degree(ctx: crate::FieldCtx, n: usize) -> Vec<Poly> {
    Poly::monic_of_degree(ctx, n).filter(is_irreducible).collect()
}
