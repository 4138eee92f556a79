//! Series in `q` with Laurent polynomial coefficients in `z`, and their
//! constant terms.
//!
//! The contour integral `∮ f(z) dz/(2πiz)` around a contour separating `0`
//! from every pole is the coefficient of `z⁰`, which is what
//! [`constant_term`] extracts, one q-exponent at a time.

use std::collections::BTreeMap;

use crate::check::{compare, CheckOutcome};
use crate::error::Result;
use crate::hypergeom::{phi_eval, PhiSpec, SumConfig};
use crate::identities::{au_conjecture_product, au_conjecture_sum, g_series};
use crate::rings::{omega_power, Eisenstein, LaurentPoly, PolyZ, Rational, Ring};
use crate::series::{subst_omega, Factor, Length, ProdSpec, QSeries};

/// Series in `q` whose coefficients are Laurent polynomials in `z`.
pub type ZQSeries<R> = QSeries<PolyZ<R>>;

/// `(c·z^d·q^j; q^m)_len ^ power` as a product factor.
pub fn zfactor<R: Ring>(c: R, d: i64, j: i64, m: i64, len: Length, power: i64) -> Factor<PolyZ<R>> {
    Factor::new(LaurentPoly::monomial(c, d), j, m, len, power)
}

/// `(c·z^d·q^j; q^m)_len` exactly below `order`.
pub fn zq_poch<R: Ring>(c: R, d: i64, j: i64, m: i64, len: Length, order: i64) -> Result<ZQSeries<R>> {
    ProdSpec::new()
        .with_factor(zfactor(c, d, j, m, len, 1))
        .expand(order)
}

/// `Σ_ℓ (−1)^ℓ q^{C(ℓ,2)} z^{−ℓ}` over every `ℓ` with `C(ℓ,2) < order`.
pub fn theta_z<R: Ring>(order: i64) -> ZQSeries<R> {
    let mut reach = 0i64;
    while reach * (reach + 1) / 2 < order {
        reach += 1;
    }
    let mut by_exp: BTreeMap<i64, Vec<(i64, R)>> = BTreeMap::new();
    for ell in -reach..=reach + 1 {
        let e = ell * (ell - 1) / 2;
        if e < order {
            let sign = if ell.rem_euclid(2) == 0 { 1 } else { -1 };
            by_exp.entry(e).or_default().push((-ell, R::from_int(sign)));
        }
    }
    QSeries::from_terms(
        by_exp
            .into_iter()
            .map(|(e, zs)| (e, LaurentPoly::from_terms(zs))),
        order,
    )
}

/// `(q, qz, 1/z; q)_∞`.
pub fn jtp_product() -> ProdSpec<PolyZ<Rational>> {
    let one = Rational::one();
    ProdSpec::new()
        .with_factor(zfactor(one.clone(), 0, 1, 1, Length::Infinite, 1))
        .with_factor(zfactor(one.clone(), 1, 1, 1, Length::Infinite, 1))
        .with_factor(zfactor(one, -1, 0, 1, Length::Infinite, 1))
}

/// The bilateral sum against its triple product form.
pub fn jtp_check(order: i64) -> Result<CheckOutcome> {
    compare(&theta_z::<Rational>(order), &jtp_product().expand(order)?, order)
}

/// Coefficient of `z^k` at every q-exponent.
pub fn z_coefficient<R: Ring>(f: &ZQSeries<R>, k: i64) -> QSeries<R> {
    f.map_coeffs(|p| p.coeff(k))
}

/// Coefficient of `z⁰` at every q-exponent.
pub fn constant_term<R: Ring>(f: &ZQSeries<R>) -> QSeries<R> {
    z_coefficient(f, 0)
}

/// Per q-exponent hull `[lo, hi]` of z-degrees the expansion of `spec` can
/// occupy below `order`, derived factor by factor.
pub fn support_bounds<R: Ring>(spec: &ProdSpec<PolyZ<R>>, order: i64) -> BTreeMap<i64, (i64, i64)> {
    type Hull = BTreeMap<i64, (i64, i64)>;
    fn join(h: &mut Hull, e: i64, b: (i64, i64)) {
        h.entry(e)
            .and_modify(|x| *x = (x.0.min(b.0), x.1.max(b.1)))
            .or_insert(b);
    }
    fn degs<R: Ring>(p: &PolyZ<R>) -> (i64, i64) {
        (p.min_degree().unwrap_or(0), p.max_degree().unwrap_or(0))
    }
    let mut binoms: Vec<(i64, (i64, i64), i64)> = Vec::new();
    let mut slack = 0;
    for f in &spec.factors {
        let count = match f.len {
            Length::Finite(n) => n.max(0),
            Length::Infinite => i64::MAX,
        };
        let mut k = 0;
        while k < count {
            let e = f.j + k * f.m;
            if e > order + slack && f.m > 0 {
                break;
            }
            if e < 0 {
                slack += -e * f.power.abs();
            }
            binoms.push((e, degs(&f.c), f.power));
            k += 1;
        }
    }
    let horizon = order + slack + 1;
    let mut h: Hull = BTreeMap::new();
    h.insert(spec.q_exp, degs(&spec.coeff));
    for (k, (dlo, dhi), power) in binoms {
        for _ in 0..power.abs() {
            let mut next = h.clone();
            if power > 0 {
                for (&e, &(lo, hi)) in &h {
                    if k == 0 {
                        join(&mut next, e, (lo + dlo.min(0), hi + dhi.max(0)));
                    } else if e + k < horizon {
                        join(&mut next, e + k, (lo + dlo, hi + dhi));
                    }
                }
            } else {
                // 1/(1 − c q^k) = Σ c^t q^{tk}, or the mirrored expansion for k < 0
                let (step, d) = if k < 0 { (-k, (-dhi, -dlo)) } else { (k, (dlo, dhi)) };
                if k < 0 {
                    next = h
                        .iter()
                        .filter(|(&e, _)| e + step < horizon)
                        .map(|(&e, &(lo, hi))| (e + step, (lo + d.0, hi + d.1)))
                        .collect();
                }
                if step > 0 {
                    let lo_e = next.keys().next().copied().unwrap_or(horizon);
                    for e in lo_e..horizon {
                        if let Some(&(lo, hi)) = next.get(&(e - step)) {
                            join(&mut next, e, (lo + d.0, hi + d.1));
                        }
                    }
                }
            }
            h = next;
        }
    }
    h.into_iter().filter(|(e, _)| *e < order).collect()
}

/// Whether every coefficient's z-support lies inside `bounds`.
pub fn supports_within<R: Ring>(f: &ZQSeries<R>, bounds: &BTreeMap<i64, (i64, i64)>) -> bool {
    f.iter_nonzero().all(|(e, p)| match bounds.get(&e) {
        Some(&(lo, hi)) => p.min_degree().unwrap_or(lo) >= lo && p.max_degree().unwrap_or(hi) <= hi,
        None => false,
    })
}

/// `(q⁶z, q³z, 1/z; q³)_∞ / (q¹²z³; q⁹)_∞`.
pub fn h_connection_integrand() -> ProdSpec<PolyZ<Rational>> {
    let one = Rational::one();
    ProdSpec::new()
        .with_factor(zfactor(one.clone(), 1, 6, 3, Length::Infinite, 1))
        .with_factor(zfactor(one.clone(), 1, 3, 3, Length::Infinite, 1))
        .with_factor(zfactor(one.clone(), -1, 0, 3, Length::Infinite, 1))
        .with_factor(zfactor(one, 3, 12, 9, Length::Infinite, -1))
}

/// `(q²z; q)_∞ (q, qz, 1/z; q)_∞ / (q⁴z³; q³)_∞`.
pub fn au_integrand() -> ProdSpec<PolyZ<Rational>> {
    let mut spec = jtp_product();
    let one = Rational::one();
    spec.factors
        .insert(0, zfactor(one.clone(), 1, 2, 1, Length::Infinite, 1));
    spec.factors
        .push(zfactor(one, 3, 4, 3, Length::Infinite, -1));
    spec
}

/// `∏_{j<3} (ω^j q⁴ z; q³)_∞ = (q¹²z³; q⁹)_∞` over `Q(ω)[z, z⁻¹]`.
pub fn omega_collapse_check(order: i64) -> Result<CheckOutcome> {
    let mut lhs = ProdSpec::<PolyZ<Eisenstein>>::new();
    for j in 0..3 {
        lhs.factors
            .push(zfactor(omega_power(j), 1, 4, 3, Length::Infinite, 1));
    }
    let rhs = zq_poch(Rational::one(), 3, 12, 9, Length::Infinite, order)?
        .map_coeffs(|p| p.map_coeffs(Eisenstein::from_rational));
    compare(&lhs.expand(order)?, &rhs, order)
}

/// Constant term of [`h_connection_integrand`] below `order`.
pub fn ct_h(order: i64) -> Result<QSeries<Rational>> {
    Ok(constant_term(&h_connection_integrand().expand(order)?))
}

/// The constant term equals the huffed prefactor-times-sum; the cube-root
/// collapse of the denominator is checked alongside at `min(order, 60)`.
pub fn verify_h_connection(order: i64) -> Result<CheckOutcome> {
    let collapse = omega_collapse_check(order.min(60))?;
    let lhs = ct_h(order)?;
    let rhs = g_series(order)?.huff(3);
    Ok(CheckOutcome::all([collapse, compare(&lhs, &rhs, order)?]))
}

/// `F` as a ₂φ₂ with its prefactor, computed over `Q(ω)`:
/// `(q⁴,q²,q⁻¹;q³)_∞/(q³,ω,ω²;q³)_∞ · ₂φ₂(0, q; ωq³, ω²q³; q³, q⁴)`.
pub fn f_from_phi(order: i64) -> Result<QSeries<Eisenstein>> {
    let one = Eisenstein::one();
    let pre = ProdSpec::new()
        .with_factor(Factor::new(one.clone(), 4, 3, Length::Infinite, 1))
        .with_factor(Factor::new(one.clone(), 2, 3, Length::Infinite, 1))
        .with_factor(Factor::new(one.clone(), -1, 3, Length::Infinite, 1))
        .with_factor(Factor::new(one.clone(), 3, 3, Length::Infinite, -1))
        .with_factor(Factor::new(omega_power(1), 0, 3, Length::Infinite, -1))
        .with_factor(Factor::new(omega_power(2), 0, 3, Length::Infinite, -1))
        .expand(order)?;
    let phi = phi_eval(
        &PhiSpec {
            upper: vec![(Eisenstein::zero(), 0), (one.clone(), 1)],
            lower: vec![(omega_power(1), 3), (omega_power(2), 3)],
            base: 3,
            arg: (one, 4),
        },
        order + 1,
    )?;
    Ok(pre.mul(&phi))
}

/// `F = G/3` over the rationals.
pub fn f_series(order: i64) -> Result<QSeries<Rational>> {
    Ok(g_series(order)?.scale(&Rational::new(1, 3)))
}

/// Checks the ₂φ₂ form of `F` against its single-sum form, then
/// `F(q) + F(ωq) + F(ω²q) = 3·H(F)`, and that this equals the constant term.
pub fn verify_f_decomposition(order: i64) -> Result<CheckOutcome> {
    let f = f_series(order)?;
    let embed = |s: &QSeries<Rational>| s.map_coeffs(Eisenstein::from_rational);
    let def = compare(&f_from_phi(order)?, &embed(&f), order)?;
    let sum = subst_omega(&f, 0)
        .add(&subst_omega(&f, 1))
        .add(&subst_omega(&f, 2));
    let three_h = f.huff(3).scale(&Rational::from(3));
    let rational = CheckOutcome {
        order,
        mismatch: sum
            .iter_nonzero()
            .find(|(_, c)| !c.is_rational())
            .map(|(e, c)| crate::series::Mismatch {
                exponent: e,
                lhs: c.to_string(),
                rhs: "rational".to_string(),
            }),
    };
    Ok(CheckOutcome::all([
        def,
        rational,
        compare(&sum, &embed(&three_h), order)?,
        compare(&three_h, &ct_h(order)?, order)?,
    ]))
}

/// Outcomes of the three reduction steps for the Andrews–Uncu double sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuReduction {
    /// Double sum equals the constant term of [`au_integrand`].
    pub integral: CheckOutcome,
    /// That constant term, with `q → q³`, equals `(q³;q³)_∞` times the
    /// constant term of [`h_connection_integrand`].
    pub rescaled: CheckOutcome,
    /// Double sum with `q → q³` equals `(q³;q³)_∞ · H(G)`, and the double
    /// sum equals `1/(q², q³; q⁶)_∞`.
    pub assembled: CheckOutcome,
}

impl AuReduction {
    pub fn passed(&self) -> bool {
        self.integral.passed() && self.rescaled.passed() && self.assembled.passed()
    }
}

pub fn verify_au_reduction(order: i64) -> Result<AuReduction> {
    let double = au_conjecture_sum().eval(order, SumConfig::default())?;
    let ct = constant_term(&au_integrand().expand(order)?);
    let integral = compare(&double, &ct, order)?;

    let scaled_order = 3 * (order - 1) + 1;
    let q3 = ProdSpec::new().with_factor(Factor::eta(3, 3, 1)).expand(scaled_order)?;
    let rescaled = compare(
        &ct.scale_exponents(3),
        &q3.mul(&ct_h(scaled_order)?),
        scaled_order,
    )?;

    let h = g_series(scaled_order)?.huff(3);
    let assembled = CheckOutcome::all([
        compare(&double.scale_exponents(3), &q3.mul(&h), scaled_order)?,
        compare(&double, &au_conjecture_product().expand(order)?, order)?,
    ]);
    Ok(AuReduction {
        integral,
        rescaled,
        assembled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(terms: &[(i64, i64)]) -> PolyZ<Rational> {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, Rational::from(c))))
    }

    #[test]
    fn small_z_products() {
        let f = zq_poch(Rational::one(), -1, 0, 1, Length::Infinite, 2).unwrap();
        let expect = QSeries::from_terms(
            [(0, z(&[(0, 1), (-1, -1)])), (1, z(&[(-1, -1), (-2, 1)]))],
            2,
        );
        assert_eq!(f, expect);
        let g = zq_poch(Rational::one(), 3, 4, 3, Length::Infinite, 7).unwrap();
        assert_eq!(g, QSeries::from_terms([(0, z(&[(0, 1)])), (4, z(&[(3, -1)]))], 7));
        let h = zq_poch(Rational::one(), 1, 1, 1, Length::Finite(1), 9).unwrap();
        assert_eq!(h, QSeries::from_terms([(0, z(&[(0, 1)])), (1, z(&[(1, -1)]))], 9));
    }

    #[test]
    fn theta_first_terms() {
        let t0 = theta_z::<Rational>(1);
        assert_eq!(t0, QSeries::from_terms([(0, z(&[(0, 1), (-1, -1)]))], 1));
        let t1 = theta_z::<Rational>(2);
        assert_eq!(t1.coeff(1).unwrap(), z(&[(1, -1), (-2, 1)]));
        assert!(jtp_check(50).unwrap().passed());
    }

    #[test]
    fn constant_term_basics() {
        let f = QSeries::from_terms([(0, z(&[(0, 1), (-1, -1)])), (1, z(&[(-2, 1), (1, -1)]))], 5);
        assert_eq!(constant_term(&f), QSeries::one(5));
        let g = QSeries::from_terms([(0, z(&[(0, 1), (3, 2)])), (2, z(&[(1, 1)]))], 5);
        let zg = g.map_coeffs(|p| p.shift_scale(&Rational::one(), 1));
        assert!(constant_term(&zg).is_zero());
        let t = theta_z::<Rational>(5).map_coeffs(|p| p.shift_scale(&Rational::one(), 1));
        assert_eq!(constant_term(&t), QSeries::monomial(Rational::from(-1), 0, 5));
    }

    #[test]
    fn integrand_support_stays_in_bounds() {
        let spec = au_integrand();
        let f = spec.expand(40).unwrap();
        let bounds = support_bounds(&spec, 40);
        assert!(supports_within(&f, &bounds));
        for (e, (lo, _)) in &bounds {
            assert!(*lo >= -(e + 1), "q^{e}: {lo}");
        }
    }

    #[test]
    fn low_order_reductions() {
        assert!(omega_collapse_check(30).unwrap().passed());
        assert!(verify_h_connection(40).unwrap().passed());
        assert!(verify_f_decomposition(30).unwrap().passed());
        assert!(verify_au_reduction(20).unwrap().passed());
    }

    #[test]
    fn au_constant_term_small_order() {
        let ct = constant_term(&au_integrand().expand(7).unwrap());
        let got: Vec<i64> = (0..7).map(|e| ct.coeff(e).unwrap().to_i64().unwrap()).collect();
        assert_eq!(got, vec![1, 0, 1, 1, 1, 1, 2]);
    }
}
