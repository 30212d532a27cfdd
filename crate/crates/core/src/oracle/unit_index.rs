//! Local unit index #(O_K,p^× / O(ℓ)_p^×) by enumeration in O_K / p^N.

use crate::error::{Error, Result};
use crate::factor::is_monic_irreducible;
use crate::poly::Poly;

/// Largest residue field accepted by the enumeration.
pub const MAX_RESIDUE_NORM: u64 = 9;

/// (#units of O_K/p^N, #units lying in the image of O(ℓ) = A + p^ℓ O_K).
///
/// Residues are pairs (x, y) ↔ x + y√d0 with x, y ∈ A/p^N; a residue is a
/// unit iff its norm x² - d0 y² is prime to p.
pub fn unit_counts(d0: &Poly, p: &Poly, level: u32, precision: u32) -> (u64, u64) {
    let ctx = d0.ctx();
    let modulus = p.pow(precision);
    let conductor = p.pow(level);
    let residues: Vec<Poly> = Poly::all_below_degree(ctx, modulus.degree()).collect();
    let d0 = d0.rem(&modulus);
    let (mut all, mut order) = (0u64, 0u64);
    for y in &residues {
        let dy2 = (&(&d0 * y) * y).rem(&modulus);
        let in_order = conductor.divides(y);
        for x in &residues {
            let norm = &(x * x) - &dy2;
            if !p.divides(&norm) {
                all += 1;
                if in_order {
                    order += 1;
                }
            }
        }
    }
    (all, order)
}

/// Index of the order's unit image at precision N, checked against N + 1.
///
/// Any N >= max(ℓ, 1) is exact because 1 + p^N O_K lies in O(ℓ)^×; the
/// second precision guards the enumeration itself.
pub fn brute_unit_index(d0: &Poly, p: &Poly, level: u32) -> Result<u64> {
    if !is_monic_irreducible(p) {
        return Err(Error::NotIrreducible(p.to_string()));
    }
    if d0.is_zero() || d0.valuation(p) > 1 {
        return Err(Error::NotSquarefree { what: "d0 at p", poly: d0.to_string() });
    }
    if p.norm_u64() > MAX_RESIDUE_NORM || level > 2 {
        return Err(Error::Domain(format!(
            "unit index enumeration needs ‖p‖ <= {MAX_RESIDUE_NORM} and ℓ <= 2"
        )));
    }
    let n = level.max(1);
    let index_at = |precision: u32| {
        let (all, order) = unit_counts(d0, p, level, precision);
        (all % order == 0).then_some(all / order)
    };
    match (index_at(n), index_at(n + 1)) {
        (Some(a), Some(b)) if a == b => Ok(a),
        (a, b) => Err(Error::RaisePrecision(format!(
            "unit index unstable between precisions {n} and {}: {a:?} vs {b:?}",
            n + 1
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldCtx;

    fn p(s: &str) -> Poly {
        Poly::parse(FieldCtx::new(3).unwrap(), s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(brute_unit_index(&p("t"), &p("t"), 0), Ok(1));
        assert_eq!(brute_unit_index(&p("t"), &p("t"), 1), Ok(3));
        assert_eq!(brute_unit_index(&p("2"), &p("t"), 1), Ok(4));
        assert_eq!(brute_unit_index(&p("t+1"), &p("t"), 1), Ok(2));
        assert_eq!(brute_unit_index(&p("2"), &p("t"), 2), Ok(12));
    }

    #[test]
    fn unit_group_orders() {
        // Inert at t: (O_K/t)^× = F_9^× has 8 elements.
        assert_eq!(unit_counts(&p("2"), &p("t"), 1, 1), (8, 2));
        // Ramified: units of F_3[ε]/ε^2 number 6.
        assert_eq!(unit_counts(&p("t"), &p("t"), 1, 1), (6, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(brute_unit_index(&p("t"), &p("t^2"), 1).is_err());
        assert!(brute_unit_index(&p("t^2"), &p("t"), 1).is_err());
        assert!(brute_unit_index(&p("t"), &p("t"), 3).is_err());
    }
}
