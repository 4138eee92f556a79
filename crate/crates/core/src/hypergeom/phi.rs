use super::{IndexPoly, SumConfig, SumPoch, SumSpec};
use crate::error::Result;
use crate::rings::{Rational, Ring};
use crate::series::QSeries;

/// Basic hypergeometric series `ᵣφₛ(upper; lower; q^base, arg)`.
///
/// Parameters and the argument are monomials `c·q^j`, given as `(c, j)`; a
/// zero parameter is `(0, 0)`. The summand carries the usual factor
/// `[(−1)^n q^{base·C(n,2)}]^{1+s−r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiSpec<R> {
    pub upper: Vec<(R, i64)>,
    pub lower: Vec<(R, i64)>,
    pub base: i64,
    pub arg: (R, i64),
}

impl<R: Ring> PhiSpec<R> {
    pub fn to_sum(&self) -> SumSpec<R> {
        let n = IndexPoly::var(0);
        let excess = 1 + self.lower.len() as i64 - self.upper.len() as i64;
        let mut spec = SumSpec::new(["n"])
            .sign(n.scale(&Rational::from(excess)))
            .q_exp(
                n.binom2()
                    .scale(&Rational::from(excess * self.base))
                    .add(&n.scale(&Rational::from(self.arg.1))),
            )
            .power(self.arg.0.clone(), n.clone())
            .poch(SumPoch::simple(self.base, self.base, n.clone(), -1));
        let params = self
            .upper
            .iter()
            .map(|p| (p, 1))
            .chain(self.lower.iter().map(|p| (p, -1)));
        for ((c, j), power) in params {
            if c.is_zero() {
                continue;
            }
            spec = spec.poch(SumPoch {
                c: c.clone(),
                offset: IndexPoly::constant(*j),
                step: self.base,
                len: Some(n.clone()),
                power,
            });
        }
        spec
    }
}

/// Evaluates a `ᵣφₛ` below `order`.
pub fn phi_eval<R: Ring>(spec: &PhiSpec<R>, order: i64) -> Result<QSeries<R>> {
    spec.to_sum().eval(order, SumConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rings::{omega_power, Eisenstein};
    use crate::series::{expand_product, Factor, Length, ProdSpec};

    #[test]
    fn trivial_cases() {
        let spec = PhiSpec::<Rational> {
            upper: vec![(Rational::one(), 1)],
            lower: vec![],
            base: 1,
            arg: (Rational::zero(), 0),
        };
        assert_eq!(phi_eval(&spec, 12).unwrap(), QSeries::one(12));
        let spec = PhiSpec::<Rational> {
            upper: vec![(Rational::one(), 2)],
            lower: vec![(Rational::one(), 3)],
            base: 1,
            arg: (Rational::one(), 1),
        };
        assert_eq!(phi_eval(&spec, 1).unwrap(), QSeries::one(1));
    }

    #[test]
    fn q_binomial_theorem() {
        // ₁φ₀(q^3; ; q, q) = (q^4; q)_∞ / (q; q)_∞
        let spec = PhiSpec::<Rational> {
            upper: vec![(Rational::one(), 3)],
            lower: vec![],
            base: 1,
            arg: (Rational::one(), 1),
        };
        let lhs = phi_eval(&spec, 30).unwrap();
        let rhs = ProdSpec::new()
            .with_factor(Factor::eta(4, 1, 1))
            .with_factor(Factor::eta(1, 1, -1))
            .expand(30)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lower_zero_factor_is_an_error() {
        let spec = PhiSpec::<Rational> {
            upper: vec![],
            lower: vec![(Rational::one(), -1)],
            base: 1,
            arg: (Rational::one(), 3),
        };
        assert!(matches!(phi_eval(&spec, 10), Err(Error::ZeroFactor(_))));
    }

    #[test]
    fn two_phi_two_with_cube_roots() {
        // ₂φ₂(0, q; ωq³, ω²q³; q³, q⁴) against the plain single sum
        let spec = PhiSpec::<Eisenstein> {
            upper: vec![(Eisenstein::zero(), 0), (Eisenstein::one(), 1)],
            lower: vec![(omega_power(1), 3), (omega_power(2), 3)],
            base: 3,
            arg: (Eisenstein::one(), 4),
        };
        let lhs = phi_eval(&spec, 80).unwrap();
        let n = IndexPoly::var(0);
        let single = SumSpec::<Eisenstein>::new(["n"])
            .sign(n.clone())
            .q_exp(n.binom2().scale(&Rational::from(3)).add(&n.scale(&Rational::from(4))))
            .poch(SumPoch::simple(1, 3, n.clone(), 1))
            .poch(SumPoch::simple(9, 9, n, -1));
        let rhs = single.eval(80, SumConfig::default()).unwrap();
        assert_eq!(lhs, rhs);
        // (q³, ω, ω²; q³)_∞ = 3 (q⁹; q⁹)_∞
        let prefactor = ProdSpec::new()
            .with_factor(Factor::eta(3, 3, 1))
            .with_factor(Factor::new(omega_power(1), 0, 3, Length::Infinite, 1))
            .with_factor(Factor::new(omega_power(2), 0, 3, Length::Infinite, 1));
        let three_eta = ProdSpec::new()
            .with_monomial(Eisenstein::from_int(3), 0)
            .with_factor(Factor::eta(9, 9, 1));
        assert_eq!(
            expand_product(&prefactor, 80).unwrap(),
            expand_product(&three_eta, 80).unwrap()
        );
    }
}
