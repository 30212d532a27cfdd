//! Brute-force proper ideal classes of O_d = A[√d] for imaginary d.
//!
//! Ideals are kept as primitive A-lattices [m, b + √d]. Two invertible ideals
//! I, J are equivalent iff I·J̄ is principal, and principality of a primitive
//! ideal is settled by an exhaustive search for a generator x + y√d.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::symbols::is_imaginary;

/// The A-lattice [m, b + √d], an O_d-ideal when m | b² - d.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdealRep {
    pub m: Poly,
    pub b: Poly,
}

impl IdealRep {
    /// Validates m monic, m | b² - d and reduces b mod m.
    pub fn new(d: &Poly, m: Poly, b: &Poly) -> Result<Self> {
        if !m.is_monic() {
            return Err(Error::NotMonic { what: "ideal norm", poly: m.to_string() });
        }
        let b = b.rem(&m);
        if !m.divides(&(&(&b * &b) - d)) {
            return Err(Error::Domain(format!("{m} does not divide b^2 - d for b = {b}")));
        }
        Ok(Self { m, b })
    }

    /// The O_d-ideal (1).
    pub fn unit(d: &Poly) -> Self {
        Self { m: Poly::one(d.ctx()), b: Poly::zero(d.ctx()) }
    }

    /// The conjugate ideal [m, -b + √d].
    pub fn conjugate(&self) -> Self {
        Self { m: self.m.clone(), b: (-&self.b).rem(&self.m) }
    }

    /// Proper (invertible) iff gcd(m, 2b, (b² - d)/m) = 1.
    pub fn is_invertible(&self, d: &Poly) -> bool {
        let c = (&(&self.b * &self.b) - d).checked_div(&self.m).expect("m divides b^2 - d");
        self.m.gcd(&self.b).gcd(&c).is_one()
    }
}

/// All invertible primitive ideals with deg m <= deg_bound, by norm degree.
pub fn enumerate_ideals(d: &Poly, deg_bound: usize) -> Vec<IdealRep> {
    let ctx = d.ctx();
    let mut out = Vec::new();
    for n in 0..=deg_bound {
        for m in Poly::monic_of_degree(ctx, n) {
            for b in Poly::all_below_degree(ctx, n) {
                if m.divides(&(&(&b * &b) - d)) {
                    let ideal = IdealRep { m: m.clone(), b };
                    if ideal.is_invertible(d) {
                        out.push(ideal);
                    }
                }
            }
        }
    }
    out
}

/// Hermite normal form of the A-span of vectors (x, y) ↔ x + y√d, assumed of
/// rank 2: returns (n, x0, g) with span = A·n ⊕ A·(x0 + g√d), n and g monic.
fn lattice_hnf(gens: &[(Poly, Poly)]) -> (Poly, Poly, Poly) {
    let ctx = gens[0].0.ctx();
    let mut n = Poly::zero(ctx);
    let mut pivot: Option<(Poly, Poly)> = None;
    for (x, y) in gens {
        if y.is_zero() {
            n = n.gcd(x);
            continue;
        }
        pivot = Some(match pivot {
            None => (x.clone(), y.clone()),
            Some((px, py)) => {
                let (g, s, u) = py.ext_gcd(y);
                let y_over = y.checked_div(&g).expect("gcd divides");
                let py_over = py.checked_div(&g).expect("gcd divides");
                let eliminated = &(&y_over * &px) - &(&py_over * x);
                n = n.gcd(&eliminated);
                (&(&s * &px) + &(&u * x), g)
            }
        });
    }
    let (px, py) = pivot.expect("rank-2 lattice");
    let inv = ctx.inv(py.leading_coeff());
    let (px, py) = (px.scale(inv), py.scale(inv));
    (n.clone(), px.rem(&n), py)
}

/// I·J as (content g, primitive part): I·J = g·[m', b' + √d].
pub fn ideal_product(d: &Poly, i: &IdealRep, j: &IdealRep) -> (Poly, IdealRep) {
    let (m1, b1, m2, b2) = (&i.m, &i.b, &j.m, &j.b);
    let gens = [
        (m1 * m2, Poly::zero(d.ctx())),
        (m1 * b2, m1.clone()),
        (m2 * b1, m2.clone()),
        (&(b1 * b2) + d, b1 + b2),
    ];
    let (n, x0, g) = lattice_hnf(&gens);
    let m = n.checked_div(&g).expect("content divides the norm generator");
    let b = x0.checked_div(&g).expect("content divides the trace part");
    let b = b.rem(&m);
    debug_assert!(m.divides(&(&(&b * &b) - d)));
    (g, IdealRep { m, b })
}

/// Exhaustive generator search for a primitive ideal [m, b + √d].
///
/// A generator x + y√d has norm x² - d y² = c·m with no cancellation of
/// leading terms (d imaginary), so deg d + 2 deg y <= deg m and
/// 2 deg x <= deg m; x is forced to y·b mod m.
pub fn find_generator(d: &Poly, ideal: &IdealRep) -> Option<(Poly, Poly)> {
    let ctx = d.ctx();
    let dm = ideal.m.degree();
    if dm == 0 {
        return Some((Poly::one(ctx), Poly::zero(ctx)));
    }
    let dd = d.degree();
    if dm < dd {
        return None;
    }
    let max_y = (dm - dd) / 2;
    for k in 0..=max_y {
        for y in Poly::monic_of_degree(ctx, k) {
            let x = (&y * &ideal.b).rem(&ideal.m);
            if 2 * x.deg().unwrap_or(0) > dm {
                continue;
            }
            let norm = &(&x * &x) - &(&(d * &y) * &y);
            if norm.deg() == Some(dm) && ideal.m.divides(&norm) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_principal(d: &Poly, ideal: &IdealRep) -> bool {
    find_generator(d, ideal).is_some()
}

/// I ~ J iff I·J̄ is principal.
pub fn equivalent(d: &Poly, i: &IdealRep, j: &IdealRep) -> bool {
    let (_, prim) = ideal_product(d, i, &j.conjugate());
    is_principal(d, &prim)
}

/// Smallest enumeration bound that is guaranteed to meet every class.
pub fn minimal_bound(d: &Poly) -> usize {
    d.degree() / 2
}

/// Default enumeration bound deg d + 2.
pub fn default_bound(d: &Poly) -> usize {
    d.degree() + 2
}

/// Class representatives found by enumerating ideals up to `deg_bound`.
pub fn class_representatives(d: &Poly, deg_bound: usize) -> Result<Vec<IdealRep>> {
    check_imaginary(d)?;
    if deg_bound < minimal_bound(d) {
        return Err(Error::RaiseBound(format!(
            "bound {deg_bound} is below deg d / 2 = {}, classes may be missed",
            minimal_bound(d)
        )));
    }
    let mut reps: Vec<IdealRep> = Vec::new();
    for ideal in enumerate_ideals(d, deg_bound) {
        if !reps.iter().any(|r| equivalent(d, &ideal, r)) {
            reps.push(ideal);
        }
    }
    Ok(reps)
}

/// Number of proper ideal classes of A[√d].
pub fn brute_class_group(d: &Poly, deg_bound: usize) -> Result<u64> {
    Ok(class_representatives(d, deg_bound)?.len() as u64)
}

/// #O_d^× / (q - 1), counting x + y√d with x² - d y² a nonzero constant.
///
/// Only deg y = 0 needs scanning: a nonconstant y forces deg(norm) > 0.
pub fn brute_unit_count(d: &Poly) -> Result<u64> {
    check_imaginary(d)?;
    let ctx = d.ctx();
    let dd = d.degree();
    let mut units = 0u64;
    let constants: Vec<Poly> = Poly::all_below_degree(ctx, 1).collect();
    for y in &constants {
        for x in &constants {
            let norm = &(x * x) - &(&(d * y) * y);
            if !norm.is_zero() && norm.is_constant() {
                units += 1;
            }
        }
    }
    debug_assert!(dd == 0 || units == u64::from(ctx.q()) - 1);
    Ok(units / (u64::from(ctx.q()) - 1))
}

fn check_imaginary(d: &Poly) -> Result<()> {
    if d.is_zero() {
        return Err(Error::ZeroInput("brute_class_group"));
    }
    if !is_imaginary(d) {
        return Err(Error::NotImaginary(d.to_string()));
    }
    Ok(())
}
