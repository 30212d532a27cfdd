//! Optimal embeddings of O(ℓ) = O_L[π^ℓ √d0] into M_2(O_L) or its standard
//! hereditary (Iwahori) order, counted as conjugation orbits modulo π^N.
//!
//! L is the completion of k at a degree-one prime p = t - r, so O_L = F_q[[π]]
//! with π = t - r. An embedding is fixed by the image X = [[a, b], [c, -a]]
//! of x = π^ℓ √d0, i.e. by a solution of a² + bc = D := π^{2ℓ} d0.

use std::collections::HashMap;

use crate::eichler::{LocalQuatKind, QuatAlgebra, QuatOrder};
use crate::error::{Error, Result};
use crate::factor::is_monic_irreducible;
use crate::poly::Poly;

/// Largest truncated ring F_q[π]/π^M the oracle builds tables for.
const MAX_RING_SIZE: usize = 2187;

/// F_q[π]/π^M with elements encoded as base-q integers (digit i = coefficient
/// of π^i) and a full multiplication table.
struct TruncatedRing {
    q: usize,
    size: usize,
    mul: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl TruncatedRing {
    fn new(q: usize, m: u32) -> Result<Self> {
        let size = q.pow(m);
        if size > MAX_RING_SIZE {
            return Err(Error::Domain(format!("F_{q}[π]/π^{m} is too large to tabulate")));
        }
        let digits = |mut x: usize| {
            let mut v = vec![0usize; m as usize];
            for d in v.iter_mut() {
                *d = x % q;
                x /= q;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &d| acc * q + d) as u32;
        let all: Vec<Vec<usize>> = (0..size).map(digits).collect();
        let mut mul = vec![0u32; size * size];
        let mut add = vec![0u32; size * size];
        for (i, x) in all.iter().enumerate() {
            for (j, y) in all.iter().enumerate() {
                let mut prod = vec![0usize; m as usize];
                for (a, &xa) in x.iter().enumerate() {
                    if xa == 0 {
                        continue;
                    }
                    for (b, &yb) in y.iter().enumerate().take(m as usize - a) {
                        prod[a + b] = (prod[a + b] + xa * yb) % q;
                    }
                }
                let sum: Vec<usize> = x.iter().zip(y).map(|(a, b)| (a + b) % q).collect();
                mul[i * size + j] = encode(&prod);
                add[i * size + j] = encode(&sum);
            }
        }
        let neg = all
            .iter()
            .map(|x| encode(&x.iter().map(|&a| (q - a) % q).collect::<Vec<_>>()))
            .collect();
        Ok(Self { q, size, mul, add, neg })
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.size + y as usize]
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.size + y as usize]
    }

    fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg[y as usize])
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        let m = self.size.ilog(self.q) as usize;
        coeffs.iter().take(m).rev().fold(0u32, |acc, &d| acc * self.q as u32 + d)
    }

    /// π^i as an encoded element (0 once i >= M).
    fn pi_pow(&self, i: u32) -> u32 {
        let p = self.q.checked_pow(i).unwrap_or(usize::MAX);
        if p >= self.size {
            0
        } else {
            p as u32
        }
    }

    fn inv(&self, u: u32) -> u32 {
        (0..self.size as u32).find(|&v| self.mul(u, v) == 1).expect("unit")
    }

    fn is_unit(&self, x: u32) -> bool {
        !(x as usize).is_multiple_of(self.q)
    }

    /// Divisible by π^k.
    fn divisible(&self, x: u32, k: u32) -> bool {
        (x as usize).is_multiple_of(self.q.pow(k))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

type Triple = (u32, u32, u32);

fn is_optimal(ring: &TruncatedRing, order: QuatOrder, (a, b, c): Triple) -> bool {
    match order {
        QuatOrder::Maximal => ring.is_unit(a) || ring.is_unit(b) || ring.is_unit(c),
        QuatOrder::Hereditary => ring.is_unit(a) || ring.is_unit(b) || !ring.divisible(c, 2),
    }
}

/// Number of R^×-orbits on optimal X mod π^N, where only residues that lift
/// to π^{N+1} are kept (every such residue comes from a true embedding).
pub fn orbit_count(d0: &Poly, p: &Poly, level: u32, order: QuatOrder, precision: u32) -> Result<u32> {
    let q = d0.q() as usize;
    let ring = TruncatedRing::new(q, precision + 1)?;
    let root = d0.ctx().neg(p.coeff(0));
    let local = d0.shift_argument(root);
    let d = ring.mul(ring.pi_pow(2 * level), ring.encode(local.coeffs()));

    let c_values: Vec<u32> = (0..ring.size as u32)
        .filter(|&c| order == QuatOrder::Maximal || !ring.is_unit(c))
        .collect();
    let mut by_product: Vec<Vec<(u32, u32)>> = vec![Vec::new(); ring.size];
    for b in 0..ring.size as u32 {
        for &c in &c_values {
            by_product[ring.mul(b, c) as usize].push((b, c));
        }
    }

    let truncate = q.pow(precision) as u32;
    let mut index: HashMap<Triple, usize> = HashMap::new();
    let mut elements: Vec<Triple> = Vec::new();
    for a in 0..ring.size as u32 {
        let target = ring.sub(d, ring.mul(a, a));
        for &(b, c) in &by_product[target as usize] {
            if !is_optimal(&ring, order, (a, b, c)) {
                continue;
            }
            let key = (a % truncate, b % truncate, c % truncate);
            index.entry(key).or_insert_with(|| {
                elements.push(key);
                elements.len() - 1
            });
        }
    }

    // Conjugation by generators of R^× mod π^N: E12(π^i), E21(π^i) (i >= 1 for
    // the hereditary order) and diag(u, 1) for u a primitive root or 1 + π^i.
    let two = ring.add(1, 1);
    let reduce = |x: u32| x % truncate;
    let e12 = |t: u32, (a, b, c): Triple| {
        let tc = ring.mul(t, c);
        let b2 = ring.sub(ring.sub(b, ring.mul(two, ring.mul(t, a))), ring.mul(t, tc));
        (reduce(ring.add(a, tc)), reduce(b2), c)
    };
    let e21 = |s: u32, (a, b, c): Triple| {
        let c2 = ring.sub(ring.add(c, ring.mul(two, ring.mul(s, a))), ring.mul(s, ring.mul(s, b)));
        (reduce(ring.sub(a, ring.mul(s, b))), b, reduce(c2))
    };
    let diag = |u: u32, u_inv: u32, (a, b, c): Triple| (a, reduce(ring.mul(u, b)), reduce(ring.mul(u_inv, c)));

    let lower_start = if order == QuatOrder::Hereditary { 1 } else { 0 };
    let primitive = d0.ctx().primitive_root();
    let mut units: Vec<u32> = vec![primitive];
    units.extend((1..precision).map(|i| ring.add(1, ring.pi_pow(i))));
    let units: Vec<(u32, u32)> = units.into_iter().map(|u| (u, ring.inv(u))).collect();

    let mut uf = UnionFind((0..elements.len()).collect());
    for (i, &x) in elements.iter().enumerate() {
        let mut images = Vec::new();
        for k in 0..precision {
            images.push(e12(ring.pi_pow(k), x));
        }
        for k in lower_start..precision {
            images.push(e21(ring.pi_pow(k), x));
        }
        for &(u, ui) in &units {
            images.push(diag(u, ui, x));
        }
        for y in images {
            let j = *index.get(&y).ok_or_else(|| {
                Error::RaisePrecision(format!("orbit of {x:?} leaves the lifted solutions"))
            })?;
            uf.union(i, j);
        }
    }
    let roots: std::collections::HashSet<usize> = (0..elements.len()).map(|i| uf.find(i)).collect();
    Ok(roots.len() as u32)
}

/// Stabilised orbit count e(O(ℓ), R) for R maximal or hereditary in M_2(O_L).
pub fn brute_embed_count(d0: &Poly, p: &Poly, level: u32, kind: LocalQuatKind, precision: u32) -> Result<u32> {
    if kind.algebra == QuatAlgebra::Division {
        return Err(Error::Domain("no oracle for division-algebra orders".into()));
    }
    if !is_monic_irreducible(p) || p.degree() != 1 {
        return Err(Error::Domain(format!("the embedding oracle needs a degree-one prime, got {p}")));
    }
    if d0.is_zero() || d0.valuation(p) > 1 {
        return Err(Error::NotSquarefree { what: "d0 at p", poly: d0.to_string() });
    }
    if precision < 2 * level + 2 {
        return Err(Error::RaisePrecision(format!("precision {precision} < 2ℓ + 2 = {}", 2 * level + 2)));
    }
    let a = orbit_count(d0, p, level, kind.order, precision)?;
    let b = orbit_count(d0, p, level, kind.order, precision + 1)?;
    if a != b {
        return Err(Error::RaisePrecision(format!(
            "orbit count {a} at precision {precision} differs from {b} at {}",
            precision + 1
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eichler::{embed_count, LocalQuadKind};
    use crate::FieldCtx;

    fn p(s: &str) -> Poly {
        Poly::parse(FieldCtx::new(3).unwrap(), s).unwrap()
    }

    #[test]
    fn examples() {
        let t = p("t");
        assert_eq!(brute_embed_count(&p("t+1"), &t, 0, LocalQuatKind::MATRIX_MAXIMAL, 2), Ok(1));
        assert_eq!(brute_embed_count(&p("2"), &t, 0, LocalQuatKind::MATRIX_HEREDITARY, 2), Ok(0));
        assert_eq!(brute_embed_count(&t, &t, 1, LocalQuatKind::MATRIX_HEREDITARY, 4), Ok(2));
    }

    #[test]
    fn matches_tables() {
        let t = p("t");
        for (d0, kind) in [("t+1", LocalQuadKind::SplitEtale), ("2", LocalQuadKind::UnramifiedField), ("t", LocalQuadKind::RamifiedField)] {
            for level in 0..=1 {
                for order in [LocalQuatKind::MATRIX_MAXIMAL, LocalQuatKind::MATRIX_HEREDITARY] {
                    let brute = brute_embed_count(&p(d0), &t, level, order, 2 * level + 2).unwrap();
                    assert_eq!(brute, embed_count(kind, level, order).unwrap(), "{kind} ℓ={level} {}", order.as_str());
                }
            }
        }
    }

    #[test]
    fn rejects_unsupported() {
        let t = p("t");
        assert!(brute_embed_count(&t, &t, 0, LocalQuatKind::DIVISION_MAXIMAL, 2).is_err());
        assert!(matches!(
            brute_embed_count(&t, &t, 1, LocalQuatKind::MATRIX_MAXIMAL, 3),
            Err(Error::RaisePrecision(_))
        ));
        assert!(brute_embed_count(&t, &p("t^2+1"), 0, LocalQuatKind::MATRIX_MAXIMAL, 2).is_err());
    }
}
