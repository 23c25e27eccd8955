//! Canonical text rendering of polynomials and field elements.
//!
//! The output is accepted by [`parse_field_expr`](super::parse_field_expr):
//! descending powers, `c*q^k` terms with integer or `p/q` coefficients, and a
//! non-trivial denominator written as `(num) / (den)`.

use num_traits::{One, Signed};

use super::{FieldElem, Polynomial, Rational};

fn coeff_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn render_poly(p: &Polynomial) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero_coeff() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let var = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        if k == 0 {
            out.push_str(&coeff_text(&a));
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&coeff_text(&a));
            out.push('*');
            out.push_str(&var);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

trait IsZeroCoeff {
    fn is_zero_coeff(&self) -> bool;
}

impl IsZeroCoeff for Rational {
    fn is_zero_coeff(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

pub fn render(x: &FieldElem) -> String {
    if x.is_polynomial() {
        render_poly(&x.num())
    } else {
        format!("({}) / ({})", render_poly(&x.num()), render_poly(&x.den()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_layout() {
        let p = Polynomial::new(vec![
            Rational::from_integer((-1).into()),
            Rational::new(3.into(), 4.into()),
            Rational::from_integer(0.into()),
            Rational::from_integer((-1).into()),
        ]);
        assert_eq!(render_poly(&p), "-q^3 + 3/4*q - 1");
        assert_eq!(render_poly(&Polynomial::zero()), "0");
    }

    #[test]
    fn ratio_layout() {
        let x = FieldElem::q()
            .div(&FieldElem::from_poly(&Polynomial::from_i64s(&[1, 1])))
            .unwrap();
        assert_eq!(render(&x), "(q) / (q + 1)");
    }
}
