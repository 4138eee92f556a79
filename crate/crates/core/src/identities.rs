//! Ready-made sides of the asymmetric Rogers–Ramanujan type identity, the
//! Andrews–Uncu double sum, and the product manipulations that connect them.

use crate::check::{compare, CheckOutcome};
use crate::error::Result;
use crate::hypergeom::{IndexPoly, SumConfig, SumPoch, SumSpec};
use crate::rings::Rational;
use crate::series::{phi_minus_q, psi, Factor, Length, ProdSpec, QSeries};

fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// `Σ (−1)^n q^{3C(n,2)+4n} (q;q³)_n / (q⁹;q⁹)_n`.
pub fn asy_rr_sum() -> SumSpec<Rational> {
    let n = IndexPoly::var(0);
    SumSpec::new(["n"])
        .sign(n.clone())
        .q_exp(n.binom2().scale(&r(3)).add(&n.scale(&r(4))))
        .poch(SumPoch::simple(1, 3, n.clone(), 1))
        .poch(SumPoch::simple(9, 9, n, -1))
}

/// `(q⁴;q⁶)_∞ (q¹²;q¹⁸)_∞ / ((q⁵;q⁶)_∞ (q⁹;q¹⁸)_∞)`.
pub fn asy_rr_product() -> ProdSpec<Rational> {
    eta(&[(4, 6, 1), (12, 18, 1), (5, 6, -1), (9, 18, -1)])
}

/// `Σ_{m,n} (−1)^n q^{2C(m,2)+9C(n,2)+3mn+2m+7n} / ((q;q)_m (q³;q³)_n)`.
pub fn au_conjecture_sum() -> SumSpec<Rational> {
    let (m, n) = (IndexPoly::var(0), IndexPoly::var(1));
    let e = m
        .binom2()
        .scale(&r(2))
        .add(&n.binom2().scale(&r(9)))
        .add(&m.mul(&n).scale(&r(3)))
        .add(&IndexPoly::linear(&[2, 7], 0));
    SumSpec::new(["m", "n"])
        .sign(n.clone())
        .q_exp(e)
        .poch(SumPoch::simple(1, 1, m, -1))
        .poch(SumPoch::simple(3, 3, n, -1))
}

/// `1 / (q², q³; q⁶)_∞`.
pub fn au_conjecture_product() -> ProdSpec<Rational> {
    eta(&[(2, 6, -1), (3, 6, -1)])
}

fn eta(factors: &[(i64, i64, i64)]) -> ProdSpec<Rational> {
    let mut spec = ProdSpec::new();
    for &(j, m, p) in factors {
        spec.factors.push(Factor::eta(j, m, p));
    }
    spec
}

/// `(q⁴, q², q⁻¹; q³)_∞ / (q⁹; q⁹)_∞`.
pub fn g_prefactor() -> ProdSpec<Rational> {
    eta(&[(4, 3, 1), (2, 3, 1), (-1, 3, 1), (9, 9, -1)])
}

/// The prefactor times the asymmetric sum, exact below `order`.
pub fn g_series(order: i64) -> Result<QSeries<Rational>> {
    let pre = g_prefactor().expand(order)?;
    let sum = asy_rr_sum().eval(order + 1, SumConfig::default())?;
    Ok(pre.mul(&sum))
}

/// The six successive forms of the prefactor-times-sum, each exact below
/// `order`. Adjacent entries are claimed equal.
pub fn long_series_chain(order: i64) -> Result<Vec<QSeries<Rational>>> {
    let one = r(1);
    let tail = [(12, 18, 1), (9, 9, -1), (9, 18, -1)];
    let with = |spec: ProdSpec<Rational>, fs: &[(i64, i64, i64)]| {
        fs.iter()
            .fold(spec, |s, &(j, m, p)| s.with_factor(Factor::eta(j, m, p)))
    };
    let e1 = with(g_prefactor(), &[(4, 6, 1), (12, 18, 1), (5, 6, -1), (9, 18, -1)]);
    let e2 = with(
        ProdSpec::new(),
        &[(-1, 6, 1), (2, 6, 1), (2, 6, 1), (4, 6, 1), (4, 6, 1), (7, 6, 1)],
    );
    let e2 = with(e2, &tail);
    let e3 = with(
        ProdSpec::new().with_factor(Factor::new(one.clone(), -1, 1, Length::Finite(1), 1)),
        &[(5, 6, 1), (7, 6, 1), (2, 2, 2), (6, 6, -2)],
    );
    let e3 = with(e3, &tail);
    let e4 = with(
        ProdSpec::new().with_monomial(r(-1), -1),
        &[(1, 6, 1), (5, 6, 1), (2, 2, 2), (6, 6, -2)],
    );
    let e4 = with(e4, &tail);
    let e5 = with(
        ProdSpec::new().with_monomial(r(-1), -1),
        &[(1, 1, 1), (2, 2, 1), (3, 3, -1), (6, 6, -1)],
    );
    let e5 = with(e5, &tail);
    let mut out = vec![g_series(order)?];
    for spec in [e1, e2, e3, e4, e5] {
        out.push(spec.expand(order)?);
    }
    Ok(out)
}

/// Checks each adjacent pair of [`long_series_chain`].
pub fn long_series_checks(order: i64) -> Result<Vec<CheckOutcome>> {
    let chain = long_series_chain(order)?;
    chain
        .windows(2)
        .map(|w| compare(&w[0], &w[1], order))
        .collect()
}

/// `φ(−q) = (q⁹;q⁹)²/(q¹⁸;q¹⁸) − 2q (q³;q³)(q¹⁸;q¹⁸)²/((q⁶;q⁶)(q⁹;q⁹))`,
/// returned as the two pieces.
pub fn phi_dissection_parts(order: i64) -> Result<[QSeries<Rational>; 2]> {
    let a = eta(&[(9, 9, 2), (18, 18, -1)]).expand(order)?;
    let b = eta(&[(3, 3, 1), (18, 18, 2), (6, 6, -1), (9, 9, -1)])
        .with_monomial(r(-2), 1)
        .expand(order)?;
    Ok([a, b])
}

/// `ψ(q) = (q⁶;q⁶)(q⁹;q⁹)²/((q³;q³)(q¹⁸;q¹⁸)) + q (q¹⁸;q¹⁸)²/(q⁹;q⁹)`,
/// returned as the two pieces.
pub fn psi_dissection_parts(order: i64) -> Result<[QSeries<Rational>; 2]> {
    let c = eta(&[(6, 6, 1), (9, 9, 2), (3, 3, -1), (18, 18, -1)]).expand(order)?;
    let d = eta(&[(18, 18, 2), (9, 9, -1)])
        .with_monomial(r(1), 1)
        .expand(order)?;
    Ok([c, d])
}

/// Checks a theta function against its 3-dissection, both as a sum and
/// piece by piece against the residue classes.
fn dissection_check(
    f: &QSeries<Rational>,
    parts: &[QSeries<Rational>; 2],
    order: i64,
) -> Result<CheckOutcome> {
    let total = parts[0].add(&parts[1]);
    let classes = f.dissect(3);
    Ok(CheckOutcome::all([
        compare(f, &total, order)?,
        compare(&classes[0], &parts[0], order)?,
        compare(&classes[1], &parts[1], order)?,
        compare(&classes[2], &QSeries::zero(order), order)?,
    ]))
}

pub fn phi_dissection_check(order: i64) -> Result<CheckOutcome> {
    dissection_check(&phi_minus_q(order), &phi_dissection_parts(order)?, order)
}

pub fn psi_dissection_check(order: i64) -> Result<CheckOutcome> {
    dissection_check(&psi(order), &psi_dissection_parts(order)?, order)
}

/// `H(q⁻¹ φ(−q) ψ(q)) = −(q⁹;q⁹)_∞ (q¹⁸;q¹⁸)_∞`.
pub fn h_theta_product_check(order: i64) -> Result<CheckOutcome> {
    let prod = phi_minus_q::<Rational>(order + 1).mul(&psi(order + 1));
    let lhs = prod.shift(-1).huff(3);
    let rhs = eta(&[(9, 9, 1), (18, 18, 1)])
        .with_monomial(r(-1), 0)
        .expand(order)?;
    compare(&lhs, &rhs, order)
}

/// `1 / ((q³;q³)_∞ (q⁶, q⁹; q¹⁸)_∞)`.
pub fn h_calculation_product() -> ProdSpec<Rational> {
    eta(&[(3, 3, -1), (6, 18, -1), (9, 18, -1)])
}

/// Huffing the prefactor-times-sum gives [`h_calculation_product`].
pub fn h_calculation_check(order: i64) -> Result<CheckOutcome> {
    let lhs = g_series(order)?.huff(3);
    let rhs = h_calculation_product().expand(order)?;
    compare(&lhs, &rhs, order)
}
