//! Equality in the stabilized quotient: a class is determined by its
//! transfer function together with its stabilized divisor.

use super::charfun::char_fun;
use super::collig::Colligation;
use super::divisor::divisor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComparison {
    pub equal: bool,
    /// Human-readable first differing invariant, when unequal.
    pub witness: Option<String>,
}

/// True iff the transfer functions agree exactly and the divisors agree
/// after stabilization (the point 1 carries infinite multiplicity on both
/// sides, absorbing diagonal padding).
pub fn quotient_equal(g: &Colligation, h: &Colligation) -> QuotientComparison {
    if g.alpha() != h.alpha() {
        return QuotientComparison {
            equal: false,
            witness: Some(format!(
                "corner sizes differ: {} vs {}",
                g.alpha(),
                h.alpha()
            )),
        };
    }
    let chi_g = char_fun(g);
    let chi_h = char_fun(h);
    if chi_g != chi_h {
        let witness = (0..g.alpha())
            .flat_map(|i| (0..g.alpha()).map(move |j| (i, j)))
            .find(|&(i, j)| chi_g.entry(i, j) != chi_h.entry(i, j))
            .map(|(i, j)| {
                format!(
                    "transfer functions differ at entry ({i},{j}): {} vs {}",
                    chi_g.entry(i, j),
                    chi_h.entry(i, j)
                )
            });
        return QuotientComparison {
            equal: false,
            witness,
        };
    }
    let div_g = divisor(g).stabilize();
    let div_h = divisor(h).stabilize();
    if div_g != div_h {
        let point = div_g.first_difference(&div_h);
        return QuotientComparison {
            equal: false,
            witness: point.map(|p| {
                format!(
                    "divisors differ at {p}: {:?} vs {:?}",
                    div_g.multiplicity(&p),
                    div_h.multiplicity(&p)
                )
            }),
        };
    }
    QuotientComparison {
        equal: true,
        witness: None,
    }
}
