//! Fourier-coefficient tables of the two theta series.
//!
//! * ϑ° has coefficients M(d) = H^{n+,n-}(d) on d ≺ 0, H(0) at d = 0 and 0
//!   on discriminants that split at ∞.
//! * ϑ_Λ has constant term -2·H(0) and coefficient
//!   2·Σ_{t²-4a ⪯ 0} H(frak_d·(t²-4a)) at a ≠ 0, with levels
//!   (d+n+, d-n-) coming from splitting frak_d and frak_n.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::hurwitz::{hurwitz_h, hurwitz_h_zero, LevelPair, Strategy};
use crate::poly::Poly;
use crate::symbols::{is_imaginary, is_preceq_zero, legendre_unchecked};

/// Largest `max_deg` a table accepts unless the caller raises it.
pub const DEFAULT_MAX_DEG_CEILING: usize = 8;

/// Levels for ϑ°: n- must have a positive even number of prime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOParams {
    pub levels: LevelPair,
}

impl ThetaOParams {
    pub fn new(levels: LevelPair) -> Result<Self> {
        let r = levels.minus_primes().len();
        if r == 0 || r % 2 == 1 {
            return Err(Error::DefiniteLevelParity(levels.n_minus().to_string()));
        }
        Ok(Self { levels })
    }
}

/// frak_d, frak_n and their splitting by Legendre symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaLambdaParams {
    pub frak_d: Poly,
    pub frak_n: Poly,
    pub n_plus: Poly,
    pub n_minus: Poly,
    pub d_plus: Poly,
    pub d_minus: Poly,
    levels: LevelPair,
}

impl ThetaLambdaParams {
    /// The Eichler type (d+n+, d-n-) of O_{B_1}.
    pub fn levels(&self) -> &LevelPair {
        &self.levels
    }

    /// Number of primes where B_1 ramifies (those dividing d-n-).
    pub fn ramified_prime_count(&self) -> usize {
        self.levels.minus_primes().len()
    }
}

/// Splits frak_n = n+ n- and frak_d = d+ d- by (frak_d/p) and (frak_n/p).
pub fn split_level(frak_d: &Poly, frak_n: &Poly) -> Result<ThetaLambdaParams> {
    let d_primes = squarefree_monic_primes("frak_d", frak_d)?;
    let n_primes = squarefree_monic_primes("frak_n", frak_n)?;
    if frak_d.degree() % 2 == 1 {
        return Err(Error::OddDegree(frak_d.to_string()));
    }
    if !frak_d.gcd(frak_n).is_one() {
        return Err(Error::NotCoprime(frak_d.to_string(), frak_n.to_string()));
    }
    let ctx = frak_d.ctx();
    let split = |primes: &[Poly], other: &Poly| {
        let (mut plus, mut minus) = (Poly::one(ctx), Poly::one(ctx));
        for p in primes {
            if legendre_unchecked(other, p) == 1 {
                plus = &plus * p;
            } else {
                minus = &minus * p;
            }
        }
        (plus, minus)
    };
    let (n_plus, n_minus) = split(&n_primes, frak_d);
    let (d_plus, d_minus) = split(&d_primes, frak_n);
    let ramified = &d_minus * &n_minus;
    if ramified.degree() == 0 {
        return Err(Error::DegenerateLevel);
    }
    let levels = LevelPair::new(&d_plus * &n_plus, ramified.clone())?;
    if levels.minus_primes().len() % 2 == 1 {
        return Err(Error::RamificationParity(ramified.to_string()));
    }
    Ok(ThetaLambdaParams {
        frak_d: frak_d.clone(),
        frak_n: frak_n.clone(),
        n_plus,
        n_minus,
        d_plus,
        d_minus,
        levels,
    })
}

fn squarefree_monic_primes(what: &'static str, a: &Poly) -> Result<Vec<Poly>> {
    if a.is_zero() {
        return Err(Error::ZeroInput(what));
    }
    if !a.is_monic() {
        return Err(Error::NotMonic { what, poly: a.to_string() });
    }
    let fa = factor(a)?;
    if !fa.is_squarefree() {
        return Err(Error::NotSquarefree { what, poly: a.to_string() });
    }
    Ok(fa.factors.into_iter().map(|(p, _)| p).collect())
}

/// Mass M(d) over CM points of discriminant d.
pub fn mass(params: &ThetaOParams, d: &Poly) -> Result<BigRational> {
    if d.is_zero() {
        Ok(hurwitz_h_zero(&params.levels))
    } else if is_imaginary(d) {
        hurwitz_h(&params.levels, d, Strategy::LocalProduct)
    } else {
        Ok(BigRational::zero())
    }
}

/// {t ∈ A : t² - 4a ⪯ 0}, scanning deg t <= ⌈deg a / 2⌉.
pub fn t_support(a: &Poly) -> Vec<Poly> {
    t_support_scan(a, a.deg().map_or(0, |n| n.div_ceil(2)))
}

/// The same predicate scanned over every t with deg t <= `max_deg_t`.
pub fn t_support_scan(a: &Poly, max_deg_t: usize) -> Vec<Poly> {
    let ctx = a.ctx();
    let four_a = a.scale(4 % ctx.q());
    std::iter::once(Poly::zero(ctx))
        .chain(Poly::nonzero_up_to_degree(ctx, max_deg_t))
        .filter(|t| is_preceq_zero(&(&(t * t) - &four_a)))
        .collect()
}

/// 𝒵₁·𝒵(a) = 2 Σ_{t ∈ t_support(a)} H(frak_d·(t² - 4a)), the t² = 4a term
/// contributing H(0).
pub fn intersection_number(params: &ThetaLambdaParams, a: &Poly) -> Result<BigRational> {
    if a.is_zero() {
        return Err(Error::ZeroInput("intersection_number (use the constant term)"));
    }
    let mut total = BigRational::zero();
    for t in t_support(a) {
        total += intersection_term(params, a, &t)?;
    }
    Ok(total * BigRational::from_integer(2.into()))
}

/// H(frak_d·(t² - 4a)) for a single t of the support.
pub fn intersection_term(params: &ThetaLambdaParams, a: &Poly, t: &Poly) -> Result<BigRational> {
    let disc = &(t * t) - &a.scale(4 % a.q());
    if disc.is_zero() {
        Ok(hurwitz_h_zero(&params.levels))
    } else {
        hurwitz_h(&params.levels, &(&params.frak_d * &disc), Strategy::DefinitionSum)
    }
}

/// -vol(𝒵₁) = -2·H^{d+n+, d-n-}(0).
pub fn theta_lambda_constant_term(params: &ThetaLambdaParams) -> BigRational {
    -hurwitz_h_zero(&params.levels) * BigRational::from_integer(2.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    ThetaO,
    ThetaLambda,
}

impl TableKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TableKind::ThetaO => "theta-o",
            TableKind::ThetaLambda => "theta-lambda",
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fourier coefficients indexed by polynomials, in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierTable {
    pub kind: TableKind,
    pub constant_term: BigRational,
    pub coefficients: Vec<(Poly, BigRational)>,
    pub max_deg: usize,
}

impl FourierTable {
    pub fn get(&self, index: &Poly) -> Option<&BigRational> {
        self.coefficients
            .binary_search_by(|(p, _)| p.cmp(index))
            .ok()
            .map(|i| &self.coefficients[i].1)
    }
}

fn check_ceiling(max_deg: usize, ceiling: usize) -> Result<()> {
    if max_deg > ceiling {
        return Err(Error::TableTooLarge { requested: max_deg, ceiling });
    }
    Ok(())
}

fn build_table<F>(kind: TableKind, ctx: crate::FieldCtx, max_deg: usize, constant_term: BigRational, coeff: F) -> Result<FourierTable>
where
    F: Fn(&Poly) -> Result<BigRational> + Sync,
{
    let indices: Vec<Poly> = Poly::nonzero_up_to_degree(ctx, max_deg).collect();
    let values: Vec<BigRational> = indices.par_iter().map(&coeff).collect::<Result<_>>()?;
    let mut coefficients: Vec<(Poly, BigRational)> = indices.into_iter().zip(values).collect();
    coefficients.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FourierTable { kind, constant_term, coefficients, max_deg })
}

/// M(d) for every nonzero d with deg d <= max_deg; M(0) as constant term.
pub fn theta_o_table(params: &ThetaOParams, max_deg: usize, ceiling: usize) -> Result<FourierTable> {
    check_ceiling(max_deg, ceiling)?;
    let ctx = params.levels.n_plus().ctx();
    build_table(TableKind::ThetaO, ctx, max_deg, hurwitz_h_zero(&params.levels), |d| mass(params, d))
}

/// 𝒵₁·𝒵(a) for every nonzero a with deg a <= max_deg.
pub fn theta_lambda_table(params: &ThetaLambdaParams, max_deg: usize, ceiling: usize) -> Result<FourierTable> {
    check_ceiling(max_deg, ceiling)?;
    let ctx = params.frak_d.ctx();
    build_table(TableKind::ThetaLambda, ctx, max_deg, theta_lambda_constant_term(params), |a| {
        intersection_number(params, a)
    })
}

/// β_{a,s}(y) as an exact power q^exponent, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BesselValue {
    Zero,
    Power { q: u32, exponent: BigRational },
}

impl BesselValue {
    /// The value as a rational when the exponent is an integer.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            BesselValue::Zero => Some(BigRational::zero()),
            BesselValue::Power { q, exponent } if exponent.is_integer() => {
                let e = exponent.to_integer();
                let base = BigRational::from_integer(BigInt::from(*q));
                let mag: u32 = e.magnitude().try_into().ok()?;
                let pow = num_traits::pow(base, mag as usize);
                Some(if e < BigInt::zero() { pow.recip() } else { pow })
            }
            BesselValue::Power { .. } => None,
        }
    }
}

impl fmt::Display for BesselValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BesselValue::Zero => f.write_str("0"),
            BesselValue::Power { q, exponent } if exponent.is_zero() => write!(f, "1 (= {q}^0)"),
            BesselValue::Power { q, exponent } => write!(f, "{q}^({exponent})"),
        }
    }
}

/// Truncated Bessel factor: |y|^{s/2} = q^{-ord_∞(y)·s/2} when
/// deg a + 2 <= ord_∞(y), else 0. The index a = 0 is treated as degree 0.
pub fn bessel(a: &Poly, s: &BigRational, y_ord: i64) -> BesselValue {
    let deg = a.deg().unwrap_or(0) as i64;
    if deg + 2 > y_ord {
        return BesselValue::Zero;
    }
    let exponent = -BigRational::from_integer(y_ord.into()) * s / BigRational::from_integer(2.into());
    BesselValue::Power { q: a.q(), exponent }
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

    fn theta_o() -> ThetaOParams {
        ThetaOParams::new(LevelPair::new(p("1"), p("t^2+t")).unwrap()).unwrap()
    }

    #[test]
    fn split_level_examples() {
        let sp = split_level(&p("t^2+1"), &p("t+1")).unwrap();
        assert_eq!((sp.n_plus.clone(), sp.n_minus.clone()), (p("1"), p("t+1")));
        assert_eq!((sp.d_plus.clone(), sp.d_minus.clone()), (p("1"), p("t^2+1")));
        assert_eq!(sp.ramified_prime_count(), 2);
        assert_eq!(split_level(&p("t^2+1"), &p("t")), Err(Error::DegenerateLevel));
    }

    #[test]
    fn split_level_errors() {
        assert!(matches!(split_level(&p("t"), &p("t+1")), Err(Error::OddDegree(_))));
        assert!(matches!(split_level(&p("t^2"), &p("t+1")), Err(Error::NotSquarefree { .. })));
        assert!(matches!(split_level(&p("t^2+t"), &p("t")), Err(Error::NotCoprime(..))));
        assert!(matches!(split_level(&p("2*t^2+2"), &p("t")), Err(Error::NotMonic { .. })));
        assert!(matches!(split_level(&p("t^2+1"), &p("t^2")), Err(Error::NotSquarefree { .. })));
    }

    #[test]
    fn theta_o_requires_even_definite_level() {
        assert!(ThetaOParams::new(LevelPair::new(p("1"), p("t")).unwrap()).is_err());
        assert!(ThetaOParams::new(LevelPair::new(p("t"), p("1")).unwrap()).is_err());
    }

    #[test]
    fn masses() {
        let params = theta_o();
        assert_eq!(mass(&params, &p("t^2+1")), Ok(rat(0, 1)));
        assert_eq!(mass(&params, &p("0")), Ok(rat(-1, 2)));
        assert_eq!(mass(&params, &p("2*t")), Ok(rat(0, 1)));
        // 2 is a non-square constant: h/w = 1/4, both level weights are 2.
        assert_eq!(mass(&params, &p("2")), Ok(rat(1, 1)));
        assert_eq!(mass(&params, &p("1")), Ok(rat(0, 1)));
    }

    #[test]
    fn t_support_examples() {
        assert_eq!(t_support(&p("t")), vec![p("0"), p("1"), p("2")]);
        // a = 1: t = ±1 give t^2 - 4 = 0, t = 0 gives the inert constant 2.
        assert_eq!(t_support(&p("1")), vec![p("0"), p("1"), p("2")]);
        // a = 2: t = 0 gives -8 = 1, a square.
        assert_eq!(t_support(&p("2")), vec![p("1"), p("2")]);
    }

    #[test]
    fn intersection_example() {
        let params = split_level(&p("t^2+1"), &p("t+1")).unwrap();
        let l = params.levels();
        let h = |d: &str| hurwitz_h(l, &(&params.frak_d * &p(d)), Strategy::DefinitionSum).unwrap();
        let expected = (h("2*t") + h("2*t+1") * rat(2, 1)) * rat(2, 1);
        assert_eq!(intersection_number(&params, &p("t")).unwrap(), expected);
        assert!(intersection_number(&params, &p("0")).is_err());
        let one = intersection_number(&params, &p("1")).unwrap();
        let expected_one = (h("2") + hurwitz_h_zero(l) * rat(2, 1)) * rat(2, 1);
        assert_eq!(one, expected_one);
    }

    #[test]
    fn bessel_examples() {
        let q = f3();
        let zero = Poly::zero(q);
        assert_eq!(bessel(&zero, &rat(2, 1), 2).to_rational(), Some(rat(1, 9)));
        assert_eq!(bessel(&zero, &rat(2, 1), 1), BesselValue::Zero);
        assert_eq!(bessel(&p("t"), &rat(3, 2), 4).to_rational(), Some(rat(1, 27)));
        let half = bessel(&zero, &rat(3, 2), 3);
        assert_eq!(half, BesselValue::Power { q: 3, exponent: rat(-9, 4) });
        assert_eq!(half.to_rational(), None);
    }

    #[test]
    fn ceiling_guard() {
        let params = theta_o();
        assert_eq!(
            theta_o_table(&params, 9, DEFAULT_MAX_DEG_CEILING),
            Err(Error::TableTooLarge { requested: 9, ceiling: 8 })
        );
    }

    #[test]
    fn theta_o_constants() {
        let table = theta_o_table(&theta_o(), 0, DEFAULT_MAX_DEG_CEILING).unwrap();
        assert_eq!(table.constant_term, rat(-1, 2));
        assert_eq!(table.get(&p("1")), Some(&rat(0, 1)));
        assert_eq!(table.get(&p("2")), Some(&rat(1, 1)));
        assert_eq!(table.coefficients.len(), 2);
    }
}
