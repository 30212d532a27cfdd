//! Quadratic residue symbols and the behaviour of k(√d) at the infinite place.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::factor::{factor, is_monic_irreducible};
use crate::poly::Poly;

/// How the infinite place of k behaves in k(√d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InfinityType {
    Ramified,
    Inert,
    Split,
}

impl InfinityType {
    /// Ramification index e_∞.
    pub fn e_infinity(self) -> u32 {
        match self {
            InfinityType::Ramified => 2,
            InfinityType::Inert | InfinityType::Split => 1,
        }
    }

    pub fn is_imaginary(self) -> bool {
        self != InfinityType::Split
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InfinityType::Ramified => "ramified",
            InfinityType::Inert => "inert",
            InfinityType::Split => "split",
        }
    }
}

impl fmt::Display for InfinityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Legendre symbol (d/p) for a monic irreducible p, by Euler's criterion in
/// A/p.
pub fn legendre_symbol(d: &Poly, p: &Poly) -> Result<i8> {
    if !is_monic_irreducible(p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    Ok(legendre_unchecked(d, p))
}

/// Euler's criterion without validating `p`.
pub(crate) fn legendre_unchecked(d: &Poly, p: &Poly) -> i8 {
    let r = d.rem(p);
    if r.is_zero() {
        return 0;
    }
    let e = (BigUint::from(p.q()).pow(p.degree() as u32) - 1u32) / 2u32;
    let v = r.pow_mod(&e, p);
    if v.is_one() {
        1
    } else {
        debug_assert_eq!(v, Poly::constant(p.ctx(), p.q() - 1));
        -1
    }
}

/// Jacobi symbol (a/m) for monic m, via quadratic reciprocity in F_q[t].
///
/// Agrees with the product of Legendre symbols over the prime factors of m.
pub fn jacobi_symbol(a: &Poly, m: &Poly) -> i8 {
    assert!(m.is_monic(), "jacobi symbol needs a monic modulus");
    let ctx = a.ctx();
    let half_odd = (ctx.q() - 1) / 2 % 2 == 1;
    let mut result = 1i8;
    let mut a = a.rem(m);
    let mut b = m.clone();
    loop {
        if b.is_one() {
            return result;
        }
        if a.is_zero() {
            return 0;
        }
        let (lc, a1) = a.monic_parts();
        let bd = b.degree();
        if bd % 2 == 1 {
            result *= ctx.quadratic_character(lc);
        }
        if half_odd && a1.degree() % 2 == 1 && bd % 2 == 1 {
            result = -result;
        }
        a = b.rem(&a1);
        b = a1;
    }
}

/// The symbol {d/p}: 0 if ord_p(d) = 1, +1 if ord_p(d) >= 2, otherwise the
/// Legendre symbol.
pub fn bracket_symbol(d: &Poly, p: &Poly) -> Result<i8> {
    if d.is_zero() {
        return Err(Error::ZeroInput("bracket_symbol"));
    }
    if !is_monic_irreducible(p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    Ok(bracket_unchecked(d, p))
}

pub(crate) fn bracket_unchecked(d: &Poly, p: &Poly) -> i8 {
    match d.valuation(p) {
        0 => legendre_unchecked(d, p),
        1 => 0,
        _ => 1,
    }
}

/// Writes `d = d0 * f^2` with `f` monic and `d0` squarefree (carrying the
/// leading coefficient).
pub fn squarefree_decompose(d: &Poly) -> Result<(Poly, Poly)> {
    let fa = factor(d)?;
    let ctx = d.ctx();
    let mut d0 = Poly::constant(ctx, fa.unit);
    let mut f = Poly::one(ctx);
    for (p, e) in &fa.factors {
        if e % 2 == 1 {
            d0 = &d0 * p;
        }
        f = &f * &p.pow(e / 2);
    }
    Ok((d0, f))
}

/// True when `d` is a square in A (zero included).
pub fn is_square(d: &Poly) -> bool {
    if d.is_zero() {
        return true;
    }
    let Ok(fa) = factor(d) else { return false };
    d.ctx().is_square(fa.unit) && fa.factors.iter().all(|(_, e)| e % 2 == 0)
}

/// Classifies the infinite place in k(√d) from the degree parity and the
/// square class of the leading coefficient.
pub fn infinity_type(d: &Poly) -> Result<InfinityType> {
    if d.is_zero() {
        return Err(Error::ZeroInput("infinity_type"));
    }
    if is_square(d) {
        return Err(Error::SquareDiscriminant(d.to_string()));
    }
    Ok(infinity_type_unchecked(d))
}

/// Classification for a nonzero `d` that is not a square.
pub(crate) fn infinity_type_unchecked(d: &Poly) -> InfinityType {
    if d.degree() % 2 == 1 {
        InfinityType::Ramified
    } else if d.ctx().is_square(d.leading_coeff()) {
        InfinityType::Split
    } else {
        InfinityType::Inert
    }
}

/// `d ≺ 0`: k(√d) is a field in which ∞ does not split.
pub fn is_imaginary(d: &Poly) -> bool {
    if d.is_zero() {
        return false;
    }
    // Odd degree, or even degree with non-square leading coefficient, already
    // rules out d being a square.
    infinity_type_unchecked(d).is_imaginary()
}

/// `d ⪯ 0`: d = 0 or d ≺ 0.
pub fn is_preceq_zero(d: &Poly) -> bool {
    d.is_zero() || is_imaginary(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{factor, irreducibles_of_degree};
    use crate::FieldCtx;
    use proptest::prelude::*;

    fn f3() -> FieldCtx {
        FieldCtx::new(3).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(f3(), s).unwrap()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(&p("t+1"), &p("t")), Ok(1));
        assert_eq!(legendre_symbol(&p("2"), &p("t")), Ok(-1));
        assert_eq!(legendre_symbol(&p("t"), &p("t^2+1")), Ok(1));
        assert_eq!(legendre_symbol(&p("t^2"), &p("t")), Ok(0));
        assert!(matches!(legendre_symbol(&p("t"), &p("t^2+2*t")), Err(Error::NotIrreducible(_))));
        assert!(matches!(legendre_symbol(&p("t"), &p("2*t")), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_symbol(&p("t^3"), &p("t")), Ok(1));
        assert_eq!(bracket_symbol(&p("t"), &p("t")), Ok(0));
        assert_eq!(bracket_symbol(&p("2"), &p("t")), Ok(-1));
        assert_eq!(bracket_symbol(&p("0"), &p("t")), Err(Error::ZeroInput("bracket_symbol")));
    }

    #[test]
    fn infinity_examples() {
        let t = infinity_type(&p("t")).unwrap();
        assert_eq!((t, t.e_infinity()), (InfinityType::Ramified, 2));
        let t = infinity_type(&p("2*t^2+2")).unwrap();
        assert_eq!((t, t.e_infinity()), (InfinityType::Inert, 1));
        assert_eq!(infinity_type(&p("t^2+1")), Ok(InfinityType::Split));
        assert!(matches!(infinity_type(&p("t^2+2*t+1")), Err(Error::SquareDiscriminant(_))));
        assert!(matches!(infinity_type(&p("0")), Err(Error::ZeroInput(_))));
        assert!(is_preceq_zero(&p("0")));
        assert!(!is_preceq_zero(&p("1")));
        assert!(is_preceq_zero(&p("2")));
    }

    /// Hensel oracle: for even degree and square leading coefficient, d has a
    /// square root in F_q((1/t)); check by constructing the truncated root
    /// and verifying d - r^2 has degree below deg d / 2.
    #[test]
    fn split_classification_matches_laurent_square_root() {
        let ctx = f3();
        for n in [2usize, 4] {
            for d in Poly::all_of_degree(ctx, n) {
                if !ctx.is_square(d.leading_coeff()) {
                    continue;
                }
                // Solve for r = sum r_i t^i (i = n/2 down to 0) top-down.
                let half = n / 2;
                let lc_root = (1..3).find(|&c| ctx.mul(c, c) == d.leading_coeff()).unwrap();
                let mut r = Poly::monomial(ctx, lc_root, half);
                for i in (0..half).rev() {
                    let resid = &d - &(&r * &r);
                    let c = resid.coeff(half + i);
                    let adj = ctx.mul(c, ctx.inv(ctx.mul(2, lc_root)));
                    r = &r + &Poly::monomial(ctx, adj, i);
                }
                let resid = &d - &(&r * &r);
                assert!(resid.deg().is_none_or(|e| e < half), "{d}");
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_decompose(&p("t^3")).unwrap(), (p("t"), p("t")));
        assert_eq!(squarefree_decompose(&p("2*t")).unwrap(), (p("2*t"), p("1")));
        assert_eq!(squarefree_decompose(&p("2*t^4+2*t^2")).unwrap(), (p("2*t^2+2"), p("t")));
    }

    #[test]
    fn jacobi_matches_factored_legendre() {
        for q in [3u64, 5, 7] {
            let ctx = FieldCtx::new(q).unwrap();
            for m in (1..=3).flat_map(|n| Poly::monic_of_degree(ctx, n)) {
                let fa = factor(&m).unwrap();
                for a in Poly::nonzero_up_to_degree(ctx, 2) {
                    let expected: i8 = fa
                        .factors
                        .iter()
                        .map(|(pf, e)| legendre_symbol(&a, pf).unwrap().pow(*e))
                        .product();
                    assert_eq!(jacobi_symbol(&a, &m), expected, "({a}/{m}) q={q}");
                }
            }
        }
    }

    #[test]
    fn legendre_counts_half_squares() {
        // In A/p exactly (‖p‖-1)/2 nonzero residues are squares.
        let ctx = FieldCtx::new(5).unwrap();
        for pr in irreducibles_of_degree(ctx, 2) {
            let plus = Poly::all_below_degree(ctx, 2)
                .filter(|r| legendre_symbol(r, &pr).unwrap() == 1)
                .count();
            assert_eq!(plus, 12);
        }
    }

    fn arb(q: u64, max_len: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(0i64..q as i64, 1..max_len)
            .prop_map(move |c| Poly::from_coeffs(FieldCtx::new(q).unwrap(), &c))
    }

    proptest! {
        #[test]
        fn legendre_invariant_under_square_factors(d in arb(5, 6), e in arb(5, 4), pi in 0usize..10) {
            let ctx = FieldCtx::new(5).unwrap();
            let primes = irreducibles_of_degree(ctx, 2);
            let pr = &primes[pi % primes.len()];
            prop_assume!(!d.rem(pr).is_zero() && !e.rem(pr).is_zero());
            let de2 = &(&d * &e) * &e;
            prop_assert_eq!(legendre_symbol(&de2, pr).unwrap(), legendre_symbol(&d, pr).unwrap());
        }

        #[test]
        fn squarefree_decomposition_reconstructs(d in arb(3, 9)) {
            prop_assume!(!d.is_zero());
            let (d0, f) = squarefree_decompose(&d).unwrap();
            prop_assert!(f.is_monic());
            prop_assert_eq!(&(&d0 * &f) * &f, d.clone());
            prop_assert!(factor(&d0).unwrap().is_squarefree());
            if !is_square(&d) {
                prop_assert_eq!(infinity_type(&d).unwrap(), infinity_type(&d0).unwrap());
            }
        }
    }
}
