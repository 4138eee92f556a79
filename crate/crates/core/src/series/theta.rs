use super::QSeries;
use crate::rings::Ring;

/// `φ(−q) = Σ_{n∈Z} (−1)^n q^{n²}` below `order`.
pub fn phi_minus_q<R: Ring>(order: i64) -> QSeries<R> {
    let mut terms = Vec::new();
    let mut n = 0i64;
    while n * n < order {
        let c = if n % 2 == 0 { 1 } else { -1 };
        let mult = if n == 0 { 1 } else { 2 };
        terms.push((n * n, R::from_int(c * mult)));
        n += 1;
    }
    QSeries::from_terms(terms, order.max(0))
}

/// `ψ(q) = Σ_{n≥0} q^{n(n+1)/2}` below `order`.
pub fn psi<R: Ring>(order: i64) -> QSeries<R> {
    let mut terms = Vec::new();
    let mut n = 0i64;
    while n * (n + 1) / 2 < order {
        terms.push((n * (n + 1) / 2, R::one()));
        n += 1;
    }
    QSeries::from_terms(terms, order.max(0))
}
