//! Modified Hurwitz class numbers H^{n+,n-}(d).
//!
//! Two independent evaluations are provided: the divisor sum over monic c
//! with c^2 | d, and the product of local sums over the primes of the
//! conductor. They must agree exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::poly::Poly;
use crate::quad_class::{class_data_for, class_number_maximal, unit_index_unchecked, QuadDiscriminant};
use crate::symbols::bracket_unchecked;

/// Coprime squarefree monic levels (n+, n-) of an Eichler order type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPair {
    n_plus: Poly,
    n_minus: Poly,
    plus_primes: Vec<Poly>,
    minus_primes: Vec<Poly>,
}

impl LevelPair {
    pub fn new(n_plus: Poly, n_minus: Poly) -> Result<Self> {
        let plus_primes = level_primes("n+", &n_plus)?;
        let minus_primes = level_primes("n-", &n_minus)?;
        if !n_plus.gcd(&n_minus).is_one() {
            return Err(Error::NotCoprime(n_plus.to_string(), n_minus.to_string()));
        }
        Ok(Self { n_plus, n_minus, plus_primes, minus_primes })
    }

    /// Levels (1, 1).
    pub fn trivial(ctx: crate::FieldCtx) -> Self {
        Self::new(Poly::one(ctx), Poly::one(ctx)).expect("unit levels are valid")
    }

    pub fn n_plus(&self) -> &Poly {
        &self.n_plus
    }

    pub fn n_minus(&self) -> &Poly {
        &self.n_minus
    }

    pub fn plus_primes(&self) -> &[Poly] {
        &self.plus_primes
    }

    pub fn minus_primes(&self) -> &[Poly] {
        &self.minus_primes
    }

    pub fn q(&self) -> u32 {
        self.n_plus.q()
    }

    /// Local weight 1 ± {d/p} for p | n±, and 1 elsewhere.
    fn local_weight(&self, d: &Poly, p: &Poly) -> i64 {
        if self.plus_primes.contains(p) {
            1 + i64::from(bracket_unchecked(d, p))
        } else if self.minus_primes.contains(p) {
            1 - i64::from(bracket_unchecked(d, p))
        } else {
            1
        }
    }

    /// ∏_{p|n+}(1 + {d/p}) ∏_{p|n-}(1 - {d/p}).
    fn level_factor(&self, d: &Poly) -> i64 {
        let plus: i64 = self.plus_primes.iter().map(|p| 1 + i64::from(bracket_unchecked(d, p))).product();
        let minus: i64 = self.minus_primes.iter().map(|p| 1 - i64::from(bracket_unchecked(d, p))).product();
        plus * minus
    }

    /// ∏_{p|n+}(‖p‖+1) ∏_{p|n-}(‖p‖-1).
    fn level_index(&self) -> BigInt {
        let plus = self.plus_primes.iter().map(|p| BigInt::from(p.norm_u64() + 1));
        let minus = self.minus_primes.iter().map(|p| BigInt::from(p.norm_u64() - 1));
        plus.chain(minus).product()
    }
}

fn level_primes(what: &'static str, n: &Poly) -> Result<Vec<Poly>> {
    if !n.is_monic() {
        return Err(Error::NotMonic { what, poly: n.to_string() });
    }
    let fa = factor(n)?;
    if !fa.is_squarefree() {
        return Err(Error::NotSquarefree { what, poly: n.to_string() });
    }
    Ok(fa.factors.into_iter().map(|(p, _)| p).collect())
}

/// Which evaluation route `hurwitz_h` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Sum over monic c with c^2 | d.
    DefinitionSum,
    /// h(d0)/w(d0) times one local sum per prime of the conductor.
    LocalProduct,
}

/// H^{n+,n-}(d) for d ≺ 0.
pub fn hurwitz_h(levels: &LevelPair, d: &Poly, strategy: Strategy) -> Result<BigRational> {
    if d.is_zero() {
        return Err(Error::Domain("H(0) is a separate convention; use hurwitz_h_zero".into()));
    }
    let disc = QuadDiscriminant::new(d)?;
    match strategy {
        Strategy::DefinitionSum => definition_sum(levels, &disc),
        Strategy::LocalProduct => local_product(levels, &disc),
    }
}

fn monic_divisors(fa: &Factorization, ctx: crate::FieldCtx) -> Vec<Poly> {
    let mut divisors = vec![Poly::one(ctx)];
    for (p, e) in &fa.factors {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for dv in &divisors {
            let mut acc = dv.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * p;
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors
}

fn definition_sum(levels: &LevelPair, disc: &QuadDiscriminant) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for c in monic_divisors(&disc.conductor_factors, disc.d.ctx()) {
        let reduced = disc.d.checked_div(&(&c * &c)).expect("c^2 divides d");
        let weight = levels.level_factor(&reduced);
        if weight == 0 {
            continue;
        }
        let data = class_data_for(&QuadDiscriminant::new(&reduced)?)?;
        total += data.h_over_w * BigRational::from_integer(weight.into());
    }
    Ok(total)
}

fn local_product(levels: &LevelPair, disc: &QuadDiscriminant) -> Result<BigRational> {
    let conductor = &disc.conductor_factors;
    let mut factor: i64 = levels
        .plus_primes
        .iter()
        .chain(&levels.minus_primes)
        .filter(|p| conductor.multiplicity(p) == 0)
        .map(|p| levels.local_weight(&disc.d0, p))
        .product();
    for (p, c) in &conductor.factors {
        let local: i64 = (0..=*c)
            .map(|l| {
                let twisted = &disc.d0 * &p.pow(2 * l);
                unit_index_unchecked(&disc.d0, p, l) as i64 * levels.local_weight(&twisted, p)
            })
            .sum();
        factor = factor.checked_mul(local).ok_or(Error::Overflow("local product"))?;
    }
    let maximal = class_number_maximal(&disc.d0)?;
    Ok(maximal.h_over_w * BigRational::from_integer(factor.into()))
}

/// H^{n+,n-}(0) = -∏_{p|n+}(‖p‖+1) ∏_{p|n-}(‖p‖-1) / (q^2 - 1).
pub fn hurwitz_h_zero(levels: &LevelPair) -> BigRational {
    let q = BigInt::from(levels.q());
    BigRational::new(-levels.level_index(), &q * &q - 1)
}

/// vol(O_B^×/O^×) = (q-1)(q^2-1) / (∏_{p|n+}(‖p‖+1) ∏_{p|n-}(‖p‖-1)).
pub fn tamagawa_unit_volume(levels: &LevelPair) -> BigRational {
    let q = BigInt::from(levels.q());
    BigRational::new((&q - 1) * (&q * &q - 1), levels.level_index())
}

/// The local weights e_p(ℓ) ∈ {0, 1, 2} at every prime dividing the
/// conductor of d or the levels, for ℓ = 0..=c_p.
pub fn local_weights(levels: &LevelPair, d: &Poly) -> Result<Vec<(Poly, Vec<i64>)>> {
    let disc = QuadDiscriminant::new(d)?;
    let mut primes: Vec<Poly> = disc
        .conductor_factors
        .primes()
        .chain(levels.plus_primes.iter())
        .chain(levels.minus_primes.iter())
        .cloned()
        .collect();
    primes.sort();
    primes.dedup();
    Ok(primes
        .into_iter()
        .map(|p| {
            let c = disc.conductor_factors.multiplicity(&p);
            let weights = (0..=c).map(|l| levels.local_weight(&(&disc.d0 * &p.pow(2 * l)), &p)).collect();
            (p, weights)
        })
        .collect())
}

/// True when `r`'s denominator divides q+1.
pub fn denominator_divides_q_plus_one(r: &BigRational, q: u32) -> bool {
    (BigInt::from(q) + BigInt::one()) % r.denom() == BigInt::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldCtx;

    fn f3() -> FieldCtx {
        FieldCtx::new(3).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(f3(), s).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn levels(a: &str, b: &str) -> LevelPair {
        LevelPair::new(p(a), p(b)).unwrap()
    }

    fn both(l: &LevelPair, d: &str) -> BigRational {
        let a = hurwitz_h(l, &p(d), Strategy::DefinitionSum).unwrap();
        let b = hurwitz_h(l, &p(d), Strategy::LocalProduct).unwrap();
        assert_eq!(a, b, "strategies disagree at {d}");
        a
    }

    #[test]
    fn worked_values() {
        assert_eq!(both(&levels("1", "1"), "2*t"), rat(1, 1));
        assert_eq!(both(&levels("1", "1"), "t^3"), rat(4, 1));
        assert_eq!(both(&levels("t", "1"), "2*t"), rat(1, 1));
    }

    #[test]
    fn level_prime_dividing_conductor() {
        // d = t^3 with t | n-: c=1 term h(t)/w · (1 - {t/t}) = 1 and c=t^0 term
        // h(t^3)/w · (1 - {t^3/t}) = 0.
        assert_eq!(both(&levels("1", "t"), "t^3"), rat(1, 1));
        assert_eq!(both(&levels("t", "1"), "t^3"), rat(7, 1));
        // d = 2t^4 = 2·(t^2)^2 over levels (t, t+1): only primes t and t+1 matter.
        both(&levels("t", "t+1"), "2*t^4");
    }

    #[test]
    fn h_zero_and_volume() {
        assert_eq!(hurwitz_h_zero(&levels("1", "1")), rat(-1, 8));
        assert_eq!(hurwitz_h_zero(&levels("1", "t^2+t")), rat(-1, 2));
        assert_eq!(hurwitz_h_zero(&levels("t", "t+1")), rat(-1, 1));
        assert_eq!(tamagawa_unit_volume(&levels("1", "1")), rat(16, 1));
        assert_eq!(tamagawa_unit_volume(&levels("1", "t^2+t")), rat(4, 1));
        assert_eq!(tamagawa_unit_volume(&levels("t", "1")), rat(4, 1));
    }

    #[test]
    fn level_validation() {
        assert!(matches!(LevelPair::new(p("t^2"), p("1")), Err(Error::NotSquarefree { .. })));
        assert!(matches!(LevelPair::new(p("2*t"), p("1")), Err(Error::NotMonic { .. })));
        assert!(matches!(LevelPair::new(p("t"), p("t^2+t")), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn errors() {
        let l = levels("1", "1");
        assert!(hurwitz_h(&l, &p("0"), Strategy::DefinitionSum).is_err());
        assert!(matches!(hurwitz_h(&l, &p("t^2+1"), Strategy::LocalProduct), Err(Error::NotImaginary(_))));
    }
}
