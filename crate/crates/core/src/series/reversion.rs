use super::ParamSeries;
use crate::{Error, GradedPoly, Rational, Result};

/// `outer(inner(z))` for a power series `outer` and `inner = z + O(z²)`.
pub fn compose(outer: &ParamSeries, inner: &ParamSeries) -> Result<ParamSeries> {
    if outer.low() < 0 && outer.order().is_some_and(|o| o < 0) {
        return Err(Error::SeriesShape(
            "outer series of a composition must be a power series",
        ));
    }
    check_unit_linear(inner)?;
    let first = match outer.order() {
        Some(o) => o,
        None => return Ok(ParamSeries::zero(outer.valid_to())),
    };
    // inner^n is known below n + (inner.valid_to − 1).
    let rel = inner.valid_to() - 1;
    let hi = if first == 0 {
        let next = (1..outer.valid_to()).find(|&n| !outer.coeff(n).unwrap().is_zero());
        next.map_or(outer.valid_to(), |n| outer.valid_to().min(n + rel))
    } else {
        outer.valid_to().min(first + rel)
    };
    let mut total = ParamSeries::monomial(0, outer.coeff(0)?, hi);
    let mut power = ParamSeries::monomial(0, GradedPoly::one(), hi);
    for n in 1..hi {
        power = power.mul(inner).truncate(hi);
        let c = outer.coeff(n)?;
        if !c.is_zero() {
            total = total.add(&power.scale(&c));
        }
    }
    Ok(total.truncate(hi))
}

fn check_unit_linear(f: &ParamSeries) -> Result<()> {
    if f.order() != Some(1) || f.coeff(1)? != GradedPoly::one() {
        return Err(Error::SeriesShape("expected a series z + O(z^2)"));
    }
    Ok(())
}

/// The compositional inverse `h` with `f(h(z)) = z`, by Newton iteration
/// `h ← h − (f(h) − z)/f′(h)`, each step doubling the number of correct
/// coefficients.
pub fn invert_composition(f: &ParamSeries) -> Result<ParamSeries> {
    check_unit_linear(f)?;
    let hi = f.valid_to();
    let df = f.derivative_z();
    let z = ParamSeries::z(hi);
    let mut h = z.clone();
    let mut correct = 2i64;
    loop {
        let residual = compose(f, &h)?.sub(&z);
        if residual.order().is_none() {
            return Ok(h);
        }
        let slope = compose(&df, &h)?;
        let step = residual.mul(&slope.power_laurent(-1)?).truncate(hi);
        h = h.sub(&step).truncate(hi);
        correct *= 2;
        if correct > 4 * hi + 8 {
            return Err(Error::SeriesShape("Newton reversion failed to converge"));
        }
    }
}

/// Series reversion by Lagrange inversion, `[z^n] h = (1/n) res f^{−n}`.
///
/// Independent of [`invert_composition`]; used to cross-check it.
pub fn invert_lagrange(f: &ParamSeries) -> Result<ParamSeries> {
    check_unit_linear(f)?;
    let hi = f.valid_to();
    let mut h = ParamSeries::zero(hi);
    for n in 1..hi {
        let c = f.power_laurent(-n)?.residue()?.scale(&Rational::new(1, n));
        h = h.add(&ParamSeries::monomial(n, c, hi));
    }
    Ok(h.truncate(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::build_f;
    use crate::{Alpha, Caps};

    #[test]
    fn identity_inverts_to_itself() {
        let z = ParamSeries::z(10);
        assert_eq!(invert_composition(&z).unwrap(), z);
    }

    #[test]
    fn first_order_reversion() {
        let f = build_f(Alpha::Theta, 9, Caps::s_degree(1)).unwrap();
        let h = invert_composition(&f).unwrap();
        assert_eq!(h.coeff(3).unwrap(), "1/3*s1".parse().unwrap());
        assert!(h.coeff(5).unwrap().is_zero());
    }

    #[test]
    fn round_trips_and_lagrange_agree() {
        for alpha in Alpha::ALL {
            let f = build_f(alpha, 11, Caps::NONE).unwrap();
            let h = invert_composition(&f).unwrap();
            assert!(h.check_parity());
            let z = ParamSeries::z(f.valid_to());
            assert_eq!(compose(&f, &h).unwrap(), z);
            assert_eq!(compose(&h, &f).unwrap(), z);
            assert_eq!(invert_lagrange(&f).unwrap(), h);
        }
    }

    #[test]
    fn rejects_bad_shape() {
        let two_z = ParamSeries::z(5).scale_rational(&Rational::from_int(2));
        assert!(invert_composition(&two_z).is_err());
        assert!(invert_composition(&ParamSeries::zero(5)).is_err());
    }
}
