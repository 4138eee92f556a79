use super::{IndexPoly, SumConfig, SumPoch, SumSpec};
use crate::check::{compare, CheckOutcome};
use crate::error::{Error, Result};
use crate::rings::{LaurentPoly, PolyA, Rational, Ring};
use crate::series::{Factor, Length, ProdSpec, QSeries};

/// The terminating sum
///
/// `S_M = Σ (q^{2M};q)_n (q^{2−2M};q²)_n / ((q^{4M+1};q²)_n (q³;q³)_n) · (−1)^n q^{C(n,2)+n+2Mn}`.
pub fn s_m_spec(m: i64) -> SumSpec<Rational> {
    let n = IndexPoly::var(0);
    SumSpec::new(["n"])
        .sign(n.clone())
        .q_exp(n.binom2().add(&n.scale(&Rational::from(1 + 2 * m))))
        .poch(SumPoch::simple(2 * m, 1, n.clone(), 1))
        .poch(SumPoch::simple(2 - 2 * m, 2, n.clone(), 1))
        .poch(SumPoch::simple(4 * m + 1, 2, n.clone(), -1))
        .poch(SumPoch::simple(3, 3, n, -1))
}

pub fn s_m_eval(m: i64, order: i64) -> Result<QSeries<Rational>> {
    s_m_spec(m).eval(order, SumConfig::default())
}

/// Polynomial `∏ (1 − q^e)`.
fn binomials(exps: &[i64], order: i64) -> QSeries<Rational> {
    let mut p = QSeries::one(order);
    for &e in exps {
        p.mul_binomial(&Rational::one(), e);
    }
    p
}

/// Checks `S_M · ∏_{d∈den} (1 − q^d) = S_{M−1} · ∏_{e∈num} (1 − q^e)`.
pub fn s_m_ratio_check(m: i64, order: i64, num: &[i64], den: &[i64]) -> Result<CheckOutcome> {
    let cur = s_m_eval(m, order)?;
    let prev = s_m_eval(m - 1, order)?;
    let lhs = cur.mul(&binomials(den, order));
    let rhs = prev.mul(&binomials(num, order));
    compare(&lhs, &rhs, order)
}

/// Verifies the first-order recurrence for `S_M`, both in its simplified
/// form and cross-multiplied with the raw trinomial denominator.
pub fn s_m_recurrence_check(m: i64, order: i64) -> Result<CheckOutcome> {
    let simplified = s_m_ratio_check(m, order, &[4 * m - 3, 4 * m - 1], &[2 * m - 1, 6 * m - 3])?;
    if !simplified.passed() {
        return Ok(simplified);
    }
    let cur = s_m_eval(m, order)?;
    let prev = s_m_eval(m - 1, order)?;
    let big = order + 8 * m + 8;
    let tri = QSeries::from_terms(
        [(2, Rational::one()), (4 * m, Rational::one()), (1 + 2 * m, Rational::one())],
        big,
    );
    let lhs = cur
        .mul(&binomials(&[2 * m - 1, 2 * m - 1], big))
        .mul(&tri);
    let rhs = prev
        .mul(&binomials(&[4 * m - 3, 4 * m - 1], big))
        .shift(2);
    compare(&lhs, &rhs, order)
}

/// Compares `S_M` with both product forms
/// `(q;q²)_{2M}/((q;q²)_M (q³;q⁶)_M)` and
/// `(q^{2M+1};q²)_∞ (q^{6M+3};q⁶)_∞ / ((q^{4M+1};q²)_∞ (q³;q⁶)_∞)`.
pub fn s_m_closed_form_check(m: i64, order: i64) -> Result<CheckOutcome> {
    let s = s_m_eval(m, order)?;
    let one = Rational::one();
    let finite = ProdSpec::new()
        .with_factor(Factor::new(one.clone(), 1, 2, Length::Finite(2 * m), 1))
        .with_factor(Factor::new(one.clone(), 1, 2, Length::Finite(m), -1))
        .with_factor(Factor::new(one, 3, 6, Length::Finite(m), -1))
        .expand(order)?;
    let infinite = ProdSpec::new()
        .with_factor(Factor::eta(2 * m + 1, 2, 1))
        .with_factor(Factor::eta(6 * m + 3, 6, 1))
        .with_factor(Factor::eta(4 * m + 1, 2, -1))
        .with_factor(Factor::eta(3, 6, -1))
        .expand(order)?;
    Ok(CheckOutcome::all([
        compare(&s, &finite, order)?,
        compare(&s, &infinite, order)?,
    ]))
}

fn a_pow(k: i64) -> PolyA {
    LaurentPoly::var_pow(k)
}

/// Summand of the `a`-generalization over `Q[a, a⁻¹]`.
pub fn a_generalization_sum() -> SumSpec<PolyA> {
    let n = IndexPoly::var(0);
    SumSpec::new(["n"])
        .sign(n.clone())
        .q_exp(n.binom2().add(&n))
        .power(a_pow(1), n.clone())
        .poch(SumPoch {
            c: a_pow(1),
            offset: IndexPoly::zero(),
            step: 1,
            len: Some(n.clone()),
            power: 1,
        })
        .poch(SumPoch {
            c: a_pow(-1),
            offset: IndexPoly::constant(2),
            step: 2,
            len: Some(n.clone()),
            power: 1,
        })
        .poch(SumPoch {
            c: a_pow(2),
            offset: IndexPoly::constant(1),
            step: 2,
            len: Some(n.clone()),
            power: -1,
        })
        .poch(SumPoch::simple(3, 3, n, -1))
}

/// `(aq;q²)_∞ (a³q³;q⁶)_∞ / ((a²q;q²)_∞ (q³;q⁶)_∞)`.
pub fn a_generalization_product() -> ProdSpec<PolyA> {
    ProdSpec::new()
        .with_factor(Factor::new(a_pow(1), 1, 2, Length::Infinite, 1))
        .with_factor(Factor::new(a_pow(3), 3, 6, Length::Infinite, 1))
        .with_factor(Factor::new(a_pow(2), 1, 2, Length::Infinite, -1))
        .with_factor(Factor::eta(3, 6, -1))
}

/// Both sides of the `a`-generalization below `order`.
pub fn a_generalization_sides(order: i64) -> Result<(QSeries<PolyA>, QSeries<PolyA>)> {
    let lhs = a_generalization_sum().eval(order, SumConfig::default())?;
    let rhs = a_generalization_product().expand(order)?;
    Ok((lhs, rhs))
}

/// Largest power of `a` occurring in any coefficient.
pub fn max_a_degree(f: &QSeries<PolyA>) -> i64 {
    f.iter_nonzero()
        .filter_map(|(_, c)| c.max_degree())
        .max()
        .unwrap_or(0)
}

/// Bivariate equality through q-order `order`, at every power of `a`.
///
/// All arithmetic is exact in `a`; `max_degree` is checked afterwards and an
/// excess is reported as [`Error::DegreeBoundExceeded`].
pub fn bivariate_check_a_generalization(order: i64, max_degree: i64) -> Result<CheckOutcome> {
    let (lhs, rhs) = a_generalization_sides(order)?;
    let needed = max_a_degree(&lhs).max(max_a_degree(&rhs));
    if needed > max_degree {
        return Err(Error::DegreeBoundExceeded {
            bound: max_degree,
            needed,
        });
    }
    compare(&lhs, &rhs, order)
}

/// Substitutes `a → q^shift` (`shift ≥ 0`) into a series with polynomial
/// coefficients in `a`. The exact order is unchanged.
pub fn specialize_a(f: &QSeries<PolyA>, shift: i64) -> Result<QSeries<Rational>> {
    assert!(shift >= 0, "specialization needs a nonnegative shift");
    let mut terms = Vec::new();
    for (e, c) in f.iter_nonzero() {
        for (k, x) in c.terms() {
            if *k < 0 {
                return Err(Error::NonIntegerExponent(format!(
                    "negative power a^{k} at q^{e} cannot be specialized"
                )));
            }
            terms.push((e + k * shift, x.clone()));
        }
    }
    Ok(QSeries::from_terms(terms, f.order()))
}

/// Partial sum `Σ_{n<terms} (1/3)_n/n! · (−1/3)^n` in floating point.
pub fn float_1f0_partial(terms: usize) -> f64 {
    let mut term = 1.0f64;
    let mut total = 0.0;
    for n in 0..terms {
        total += term;
        term *= (1.0 / 3.0 + n as f64) / (n as f64 + 1.0) * (-1.0 / 3.0);
    }
    total
}

/// Whether the partial sum is within `tol` of `(3/4)^{1/3}`.
///
/// A tolerance finer than one unit in the last place of the target cannot be
/// certified in double precision and is rejected.
pub fn float_1f0_check(terms: usize, tol: f64) -> bool {
    let target = 0.75f64.cbrt();
    if tol < f64::EPSILON * target {
        return false;
    }
    (float_1f0_partial(terms) - target).abs() < tol
}
