//! L-polynomial of the hyperelliptic curve y² = d0 from point counts.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::{first_irreducible, is_squarefree};
use crate::poly::Poly;

/// #C(F_{q^n}) for y² = d0 with deg d0 odd: affine points plus the single
/// point at infinity. F_{q^n} is realised as A/π for an irreducible π.
pub fn count_points(d0: &Poly, n: usize) -> u64 {
    let ctx = d0.ctx();
    let modulus = first_irreducible(ctx, n);
    let half = (u64::from(ctx.q()).pow(n as u32) - 1) / 2;
    let mut affine = 0u64;
    for x in Poly::all_below_degree(ctx, n) {
        let mut value = Poly::zero(ctx);
        for &c in d0.coeffs().iter().rev() {
            value = (&(&value * &x) + &Poly::constant(ctx, c)).rem(&modulus);
        }
        affine += if value.is_zero() {
            1
        } else if value.pow_mod_u64(half, &modulus).is_one() {
            2
        } else {
            0
        };
    }
    affine + 1
}

/// Coefficients a_0..a_{2g} of P(u) = ∏(1 - α_i u), from N_1..N_g via
/// Newton's identities and a_{2g-k} = q^{g-k} a_k.
pub fn l_polynomial(d0: &Poly) -> Result<Vec<BigInt>> {
    let g = genus_of(d0)?;
    let q = BigInt::from(d0.q());
    let power_sums: Vec<BigInt> = (1..=g)
        .map(|n| q.pow(n as u32) + 1 - BigInt::from(count_points(d0, n)))
        .collect();
    let mut a = vec![BigInt::from(1)];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc -= &power_sums[i - 1] * &a[k - i];
        }
        debug_assert!((&acc % BigInt::from(k)).is_zero());
        a.push(acc / BigInt::from(k));
    }
    for k in (0..g).rev() {
        a.push(q.pow((g - k) as u32) * &a[k]);
    }
    Ok(a)
}

/// P(1) = #Jac(F_q), the class number of the maximal order for odd deg d0.
pub fn point_count_p1(d0: &Poly) -> Result<u64> {
    let total: BigInt = l_polynomial(d0)?.iter().sum();
    total.to_u64().ok_or(Error::Overflow("point count"))
}

fn genus_of(d0: &Poly) -> Result<usize> {
    if d0.is_zero() {
        return Err(Error::ZeroInput("point_count_p1"));
    }
    if d0.degree().is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "point counting supports odd-degree d0 only, got {d0}"
        )));
    }
    if !is_squarefree(d0) {
        return Err(Error::NotSquarefree { what: "d0", poly: d0.to_string() });
    }
    Ok((d0.degree() - 1) / 2)
}
