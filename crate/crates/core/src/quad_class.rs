//! Class numbers of imaginary quadratic A-orders O_d = A[√d].
//!
//! The maximal order is handled through the completed quadratic L-value at
//! s = 1; non-maximal orders pick up one local unit index per prime of the
//! conductor.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor, is_monic_irreducible, Factorization};
use crate::poly::Poly;
use crate::symbols::{bracket_unchecked, infinity_type_unchecked, is_square, jacobi_symbol, InfinityType};

/// An imaginary discriminant together with its squarefree part and conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadDiscriminant {
    pub d: Poly,
    /// Squarefree part, carrying the leading coefficient of `d`.
    pub d0: Poly,
    /// Monic conductor, `d = d0 * f^2`.
    pub f: Poly,
    pub itype: InfinityType,
    /// Genus of y^2 = d0; `None` for the constant-field case.
    pub genus: Option<u32>,
    /// ‖Δ(O_K/A)‖ = q^{deg d0}.
    pub disc_norm: BigUint,
    pub conductor_factors: Factorization,
}

impl QuadDiscriminant {
    pub fn new(d: &Poly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroInput("quadratic discriminant"));
        }
        if is_square(d) {
            return Err(Error::SquareDiscriminant(d.to_string()));
        }
        let itype = infinity_type_unchecked(d);
        if !itype.is_imaginary() {
            return Err(Error::NotImaginary(d.to_string()));
        }
        let fa = factor(d)?;
        let ctx = d.ctx();
        let mut d0 = Poly::constant(ctx, fa.unit);
        let mut conductor = Vec::new();
        for (p, e) in &fa.factors {
            if e % 2 == 1 {
                d0 = &d0 * p;
            }
            if *e >= 2 {
                conductor.push((p.clone(), e / 2));
            }
        }
        let f = conductor.iter().fold(Poly::one(ctx), |acc, (p, e)| &acc * &p.pow(*e));
        let deg0 = d0.degree();
        let genus = match (deg0, itype) {
            (0, _) => None,
            (n, InfinityType::Ramified) => Some(((n - 1) / 2) as u32),
            (n, _) => Some(((n - 2) / 2) as u32),
        };
        Ok(Self {
            d: d.clone(),
            disc_norm: BigUint::from(ctx.q()).pow(deg0 as u32),
            d0,
            f,
            itype,
            genus,
            conductor_factors: Factorization { unit: 1, factors: conductor },
        })
    }

    /// True when d0 is a non-square constant, i.e. O_K = F_{q^2}[t].
    pub fn is_constant_field(&self) -> bool {
        self.d0.is_constant()
    }
}

/// Class number, normalized unit count and their ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub h: u64,
    /// #O^× / (q-1).
    pub w: u64,
    pub h_over_w: BigRational,
}

impl ClassData {
    fn new(h: u64, w: u64) -> Self {
        Self { h, w, h_over_w: BigRational::new(h.into(), w.into()) }
    }
}

/// S_n = sum of χ_{d0}(m) over monic m of degree n.
pub fn character_sum(d0: &Poly, n: usize) -> i64 {
    Poly::monic_of_degree(d0.ctx(), n)
        .map(|m| i64::from(jacobi_symbol(d0, &m)))
        .sum()
}

fn check_maximal_imaginary(d0: &Poly) -> Result<InfinityType> {
    if d0.is_zero() {
        return Err(Error::ZeroInput("squarefree discriminant"));
    }
    if !crate::factor::is_squarefree(d0) {
        return Err(Error::NotSquarefree { what: "d0", poly: d0.to_string() });
    }
    if is_square(d0) {
        return Err(Error::SquareDiscriminant(d0.to_string()));
    }
    let itype = infinity_type_unchecked(d0);
    if !itype.is_imaginary() {
        return Err(Error::NotImaginary(d0.to_string()));
    }
    Ok(itype)
}

/// Completed L(1, ς_K) for K = k(√d0), d0 squarefree, imaginary and
/// non-constant. The Euler factor at an inert ∞ is (1 + 1/q)^{-1}.
pub fn dirichlet_l_one(d0: &Poly) -> Result<BigRational> {
    let itype = check_maximal_imaginary(d0)?;
    if d0.is_constant() {
        return Err(Error::Domain(format!("L-value needs a non-constant d0, got {d0}")));
    }
    let q = BigInt::from(d0.q());
    let mut sum = BigRational::zero();
    let mut q_pow = BigInt::one();
    for n in 0..d0.degree() {
        sum += BigRational::new(BigInt::from(character_sum(d0, n)), q_pow.clone());
        q_pow *= &q;
    }
    if itype == InfinityType::Inert {
        sum *= BigRational::new(q.clone(), q + 1);
    }
    Ok(sum)
}

/// h(O_K) and w(O_K) for squarefree imaginary d0.
pub fn class_number_maximal(d0: &Poly) -> Result<ClassData> {
    let itype = check_maximal_imaginary(d0)?;
    let q = u64::from(d0.q());
    if d0.is_constant() {
        return Ok(ClassData::new(1, q + 1));
    }
    let l = dirichlet_l_one(d0)?;
    // h = L · (2/e) · ‖Δ‖^{1/2} · q^{(e-1)/2} / q with ‖Δ‖ = q^{deg d0};
    // the q-exponent (deg d0 + e - 1)/2 - 1 is a nonnegative integer.
    let e = itype.e_infinity() as usize;
    let exponent = (d0.degree() + e - 1) / 2 - 1;
    let factor = BigInt::from(2 / e as u64) * BigInt::from(q).pow(exponent as u32);
    let h = l * BigRational::from_integer(factor);
    if !h.is_integer() || h <= BigRational::zero() {
        return Err(Error::Domain(format!("class number formula gave non-integer {h} for {d0}")));
    }
    let h = h.to_integer().to_u64().ok_or(Error::Overflow("class number"))?;
    Ok(ClassData::new(h, 1))
}

/// #(O_{d0,p}^× / O_{d0 p^{2ℓ},p}^×) = ‖p‖^{ℓ-1}(‖p‖ - {d0/p}) for ℓ >= 1.
pub fn unit_index_local(d0: &Poly, p: &Poly, level: u32) -> Result<u64> {
    if !is_monic_irreducible(p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    if d0.is_zero() {
        return Err(Error::ZeroInput("unit_index_local"));
    }
    Ok(unit_index_unchecked(d0, p, level))
}

pub(crate) fn unit_index_unchecked(d0: &Poly, p: &Poly, level: u32) -> u64 {
    if level == 0 {
        return 1;
    }
    let norm = p.norm_u64();
    let sym = bracket_unchecked(d0, p);
    let base = (norm as i64 - i64::from(sym)) as u64;
    norm.pow(level - 1) * base
}

/// h(d) and w(d) for the order A[√d], d ≺ 0.
pub fn class_data(d: &Poly) -> Result<ClassData> {
    let disc = QuadDiscriminant::new(d)?;
    class_data_for(&disc)
}

pub fn class_data_for(disc: &QuadDiscriminant) -> Result<ClassData> {
    let maximal = class_number_maximal(&disc.d0)?;
    let mut index: u64 = 1;
    for (p, c) in &disc.conductor_factors.factors {
        index = index
            .checked_mul(unit_index_unchecked(&disc.d0, p, *c))
            .ok_or(Error::Overflow("conductor index"))?;
    }
    let w = if disc.d.is_constant() { u64::from(disc.d.q()) + 1 } else { 1 };
    let h_over_w = &maximal.h_over_w * BigRational::from_integer(index.into());
    let h = &h_over_w * BigRational::from_integer(w.into());
    if !h.is_integer() {
        return Err(Error::Domain(format!("non-integral class number {h} for {}", disc.d)));
    }
    let h = h.to_integer().to_u64().ok_or(Error::Overflow("class number"))?;
    Ok(ClassData { h, w, h_over_w })
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

    #[test]
    fn l_values() {
        assert_eq!(dirichlet_l_one(&p("t")).unwrap(), rat(1, 1));
        assert_eq!(dirichlet_l_one(&p("2*t^2+2")).unwrap(), rat(1, 1));
        assert_eq!(character_sum(&p("2*t^2+2"), 1), 1);
        assert!(dirichlet_l_one(&p("2")).is_err());
        assert!(matches!(dirichlet_l_one(&p("t^2+1")), Err(Error::NotImaginary(_))));
    }

    #[test]
    fn elliptic_curve_l_value() {
        // y^2 = t^3+2t+1 over F_3: affine points t=0 (y=±1), t=1 (y^2=1, ±1),
        // t=2 (y^2 = 8+4+1 = 13 = 1, ±1) gives 6 affine + 1 at infinity, so
        // the Frobenius trace is q + 1 - 7 = -3, P(u) = 1 + 3u + 3u^2,
        // L(1) = P(1/3) = 7/3 and h = P(1) = 7.
        assert_eq!(character_sum(&p("t^3+2*t+1"), 1), 3);
        assert_eq!(character_sum(&p("t^3+2*t+1"), 2), 3);
        assert_eq!(dirichlet_l_one(&p("t^3+2*t+1")).unwrap(), rat(7, 3));
        assert_eq!(class_number_maximal(&p("t^3+2*t+1")).unwrap().h, 7);
    }

    #[test]
    fn maximal_class_numbers() {
        assert_eq!(class_number_maximal(&p("t")).unwrap(), ClassData::new(1, 1));
        assert_eq!(class_number_maximal(&p("2*t^2+2")).unwrap(), ClassData::new(2, 1));
        assert_eq!(class_number_maximal(&p("2")).unwrap(), ClassData::new(1, 4));
        assert!(matches!(class_number_maximal(&p("t^2+1")), Err(Error::NotImaginary(_))));
        assert!(matches!(class_number_maximal(&p("t^3")), Err(Error::NotSquarefree { .. })));
    }

    #[test]
    fn unit_indices() {
        assert_eq!(unit_index_local(&p("t"), &p("t"), 0), Ok(1));
        assert_eq!(unit_index_local(&p("t"), &p("t"), 1), Ok(3));
        assert_eq!(unit_index_local(&p("2"), &p("t"), 1), Ok(4));
        assert_eq!(unit_index_local(&p("1"), &p("t"), 2), Ok(6));
        assert!(unit_index_local(&p("t"), &p("t^2"), 1).is_err());
    }

    #[test]
    fn order_class_data() {
        assert_eq!(class_data(&p("t^3")).unwrap(), ClassData::new(3, 1));
        assert_eq!(class_data(&p("2*t")).unwrap(), ClassData::new(1, 1));
        assert_eq!(class_data(&p("2")).unwrap(), ClassData::new(1, 4));
        // 2t^2 = 2·t^2 with constant non-square part: (1/4)·(3+1) = 1.
        assert_eq!(class_data(&p("2*t^2")).unwrap(), ClassData::new(1, 1));
        assert!(matches!(class_data(&p("0")), Err(Error::ZeroInput(_))));
        assert!(matches!(class_data(&p("t^2+1")), Err(Error::NotImaginary(_))));
        assert!(matches!(class_data(&p("t^2")), Err(Error::SquareDiscriminant(_))));
    }

    #[test]
    fn discriminant_fields() {
        let disc = QuadDiscriminant::new(&p("2*t^4+2*t^2")).unwrap();
        assert_eq!(disc.d0, p("2*t^2+2"));
        assert_eq!(disc.f, p("t"));
        assert_eq!(disc.itype, InfinityType::Inert);
        assert_eq!(disc.genus, Some(0));
        assert_eq!(disc.disc_norm, BigUint::from(9u32));
        assert_eq!(QuadDiscriminant::new(&p("2")).unwrap().genus, None);
    }
}
