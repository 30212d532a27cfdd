//! Local optimal-embedding numbers of O(ℓ) = O_L + π^ℓ O_E into maximal and
//! hereditary quaternionic orders, and the finite sums built from them.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::is_monic_irreducible;
use crate::poly::Poly;
use crate::symbols::bracket_unchecked;

/// Splitting type of the local quadratic algebra E/L.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalQuadKind {
    SplitEtale,
    UnramifiedField,
    RamifiedField,
}

impl LocalQuadKind {
    pub const ALL: [LocalQuadKind; 3] = [Self::SplitEtale, Self::UnramifiedField, Self::RamifiedField];

    /// The kind of k_p(√d0) for squarefree d0 and a monic irreducible p.
    pub fn at(d0: &Poly, p: &Poly) -> Result<Self> {
        if !is_monic_irreducible(p) {
            return Err(Error::NotIrreducible(p.to_string()));
        }
        if d0.is_zero() || d0.valuation(p) > 1 {
            return Err(Error::NotSquarefree { what: "d0 at p", poly: d0.to_string() });
        }
        Ok(Self::from_symbol(bracket_unchecked(d0, p)).expect("symbol is -1, 0 or 1"))
    }

    /// +1 split, -1 unramified, 0 ramified.
    pub fn from_symbol(sym: i8) -> Option<Self> {
        match sym {
            1 => Some(Self::SplitEtale),
            -1 => Some(Self::UnramifiedField),
            0 => Some(Self::RamifiedField),
            _ => None,
        }
    }

    pub fn symbol(self) -> i8 {
        match self {
            Self::SplitEtale => 1,
            Self::UnramifiedField => -1,
            Self::RamifiedField => 0,
        }
    }

    /// Ramification index e(E/L), `None` when E is not a field.
    pub fn ramification_index(self) -> Option<u32> {
        match self {
            Self::SplitEtale => None,
            Self::UnramifiedField => Some(1),
            Self::RamifiedField => Some(2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::SplitEtale => "split",
            Self::UnramifiedField => "unramified",
            Self::RamifiedField => "ramified",
        }
    }
}

impl fmt::Display for LocalQuadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuatAlgebra {
    Division,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuatOrder {
    Maximal,
    Hereditary,
}

/// A local quaternionic order: maximal in the division algebra, or maximal
/// / hereditary in M_2(L).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalQuatKind {
    pub algebra: QuatAlgebra,
    pub order: QuatOrder,
}

impl LocalQuatKind {
    pub const DIVISION_MAXIMAL: Self = Self { algebra: QuatAlgebra::Division, order: QuatOrder::Maximal };
    pub const MATRIX_MAXIMAL: Self = Self { algebra: QuatAlgebra::Matrix, order: QuatOrder::Maximal };
    pub const MATRIX_HEREDITARY: Self = Self { algebra: QuatAlgebra::Matrix, order: QuatOrder::Hereditary };

    pub fn new(algebra: QuatAlgebra, order: QuatOrder) -> Result<Self> {
        if algebra == QuatAlgebra::Division && order == QuatOrder::Hereditary {
            return Err(Error::Domain("hereditary orders are only considered in M_2(L)".into()));
        }
        Ok(Self { algebra, order })
    }

    pub fn as_str(self) -> &'static str {
        match (self.algebra, self.order) {
            (QuatAlgebra::Division, QuatOrder::Maximal) => "division-maximal",
            (QuatAlgebra::Division, QuatOrder::Hereditary) => "division-hereditary",
            (QuatAlgebra::Matrix, QuatOrder::Maximal) => "matrix-maximal",
            (QuatAlgebra::Matrix, QuatOrder::Hereditary) => "matrix-hereditary",
        }
    }
}

/// e(O(ℓ), R): optimal embeddings of O(ℓ) into R up to R^×-conjugation.
pub fn embed_count(e_kind: LocalQuadKind, level: u32, d_kind: LocalQuatKind) -> Result<u32> {
    use LocalQuadKind::*;
    let value = match (d_kind.algebra, d_kind.order) {
        (QuatAlgebra::Division, QuatOrder::Hereditary) => {
            return Err(Error::Domain("hereditary orders are only considered in M_2(L)".into()))
        }
        (QuatAlgebra::Division, QuatOrder::Maximal) => match (e_kind, level) {
            (SplitEtale, _) => 0,
            (_, l) if l >= 1 => 0,
            (UnramifiedField, _) => 2,
            (RamifiedField, _) => 1,
        },
        (QuatAlgebra::Matrix, QuatOrder::Maximal) => 1,
        (QuatAlgebra::Matrix, QuatOrder::Hereditary) => match (e_kind, level) {
            (_, l) if l >= 1 => 2,
            (UnramifiedField, _) => 0,
            (RamifiedField, _) => 1,
            (SplitEtale, _) => 2,
        },
    };
    Ok(value)
}

/// #(O_E^× / O(ℓ)^×) = 1 for ℓ = 0, else ‖p‖^{ℓ-1}(‖p‖ - symbol).
pub fn local_unit_index(residue_norm: u64, symbol: i8, level: u32) -> u64 {
    if level == 0 {
        1
    } else {
        residue_norm.pow(level - 1) * (residue_norm as i64 - i64::from(symbol)) as u64
    }
}

/// Σ_{ℓ=0}^{c_x} #(O_E^×/O(ℓ)^×) · e(O(ℓ), R).
///
/// The volume ratio vol(R^×)/vol(O_E^×) in front of this sum is left
/// symbolic.
pub fn local_orbital_sum(
    e_kind: LocalQuadKind,
    residue_norm: u64,
    c_x: u32,
    d_kind: LocalQuatKind,
    d0_symbol: i8,
) -> Result<BigRational> {
    if LocalQuadKind::from_symbol(d0_symbol) != Some(e_kind) {
        return Err(Error::Domain(format!("symbol {d0_symbol} is inconsistent with {e_kind}")));
    }
    let mut total: u64 = 0;
    for level in 0..=c_x {
        total += local_unit_index(residue_norm, d0_symbol, level) * u64::from(embed_count(e_kind, level, d_kind)?);
    }
    Ok(BigRational::from_integer(total.into()))
}

/// Coefficient of vol(O_D^×)/vol(O_E^×) in the integral of
/// 1_{O°} - ((q_L+1)/2)·1_{O'°} over x ∈ O_E \ O_L with trace zero:
/// 1/e(E/L) for a field, 0 for split E.
///
/// Computed from the embedding tables with c_x = 0, using
/// vol(O'^×) = vol(O^×)/(q_L+1).
pub fn archimedean_combination(e_kind: LocalQuadKind) -> BigRational {
    archimedean_combination_at(e_kind, 0)
}

/// Same combination for a prescribed c_x; independent of c_x.
pub fn archimedean_combination_at(e_kind: LocalQuadKind, c_x: u32) -> BigRational {
    let mut total = BigRational::zero();
    for level in 0..=c_x {
        // Residue norm does not matter here: the ℓ >= 1 terms cancel.
        let idx = BigRational::from_integer(local_unit_index(3, e_kind.symbol(), level).into());
        let maximal = embed_count(e_kind, level, LocalQuatKind::MATRIX_MAXIMAL).expect("valid kind");
        let hereditary = embed_count(e_kind, level, LocalQuatKind::MATRIX_HEREDITARY).expect("valid kind");
        let weight = BigRational::new((2 * i64::from(maximal) - i64::from(hereditary)).into(), 2.into());
        total += idx * weight;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldCtx;
    use LocalQuadKind::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn table_examples() {
        assert_eq!(embed_count(UnramifiedField, 0, LocalQuatKind::DIVISION_MAXIMAL), Ok(2));
        assert_eq!(embed_count(RamifiedField, 1, LocalQuatKind::DIVISION_MAXIMAL), Ok(0));
        assert_eq!(embed_count(UnramifiedField, 0, LocalQuatKind::MATRIX_HEREDITARY), Ok(0));
        assert!(LocalQuatKind::new(QuatAlgebra::Division, QuatOrder::Hereditary).is_err());
        let bad = LocalQuatKind { algebra: QuatAlgebra::Division, order: QuatOrder::Hereditary };
        assert!(embed_count(SplitEtale, 0, bad).is_err());
    }

    /// Every (kind, ℓ ∈ {0, 1, 2, 5}, order) combination, written out row by row.
    #[test]
    fn full_table_regression() {
        let expected = [
            // (E kind, ℓ = 0 values, ℓ >= 1 values) for (division max, matrix max, matrix hereditary)
            (SplitEtale, [0, 1, 2], [0, 1, 2]),
            (UnramifiedField, [2, 1, 0], [0, 1, 2]),
            (RamifiedField, [1, 1, 1], [0, 1, 2]),
        ];
        let orders = [LocalQuatKind::DIVISION_MAXIMAL, LocalQuatKind::MATRIX_MAXIMAL, LocalQuatKind::MATRIX_HEREDITARY];
        for (kind, at0, at_pos) in expected {
            for (i, order) in orders.iter().enumerate() {
                assert_eq!(embed_count(kind, 0, *order), Ok(at0[i]), "{kind} {:?}", order);
                for level in [1, 2, 5] {
                    assert_eq!(embed_count(kind, level, *order), Ok(at_pos[i]));
                }
            }
        }
    }

    #[test]
    fn orbital_sums() {
        for kind in LocalQuadKind::ALL {
            assert_eq!(local_orbital_sum(kind, 3, 0, LocalQuatKind::MATRIX_MAXIMAL, kind.symbol()), Ok(rat(1, 1)));
        }
        assert_eq!(local_orbital_sum(RamifiedField, 3, 1, LocalQuatKind::MATRIX_MAXIMAL, 0), Ok(rat(4, 1)));
        assert_eq!(local_orbital_sum(UnramifiedField, 3, 1, LocalQuatKind::DIVISION_MAXIMAL, -1), Ok(rat(2, 1)));
        assert!(local_orbital_sum(SplitEtale, 3, 1, LocalQuatKind::MATRIX_MAXIMAL, -1).is_err());
    }

    #[test]
    fn archimedean_weights() {
        assert_eq!(archimedean_combination(SplitEtale), rat(0, 1));
        assert_eq!(archimedean_combination(UnramifiedField), rat(1, 1));
        assert_eq!(archimedean_combination(RamifiedField), rat(1, 2));
        for kind in LocalQuadKind::ALL {
            for c in 0..4 {
                assert_eq!(archimedean_combination_at(kind, c), archimedean_combination(kind));
            }
        }
    }

    #[test]
    fn kind_from_polynomials() {
        let f = FieldCtx::new(3).unwrap();
        let p = |s: &str| Poly::parse(f, s).unwrap();
        assert_eq!(LocalQuadKind::at(&p("t"), &p("t")), Ok(RamifiedField));
        assert_eq!(LocalQuadKind::at(&p("2"), &p("t")), Ok(UnramifiedField));
        assert_eq!(LocalQuadKind::at(&p("t+1"), &p("t")), Ok(SplitEtale));
    }
}
