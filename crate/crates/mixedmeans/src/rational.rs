//! Exact rational polynomials and rational functions, with the symbolic
//! D-notation `D(f) = f'/f + x (f'/f)'` computed without rounding.
//!
//! The integer tables driving the counterexample analysis rest on exact
//! signs, so everything here is `BigRational` arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense polynomial with exact rational coefficients, lowest degree first.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![Rat::one()] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean remainder `self mod other`.
    fn rem(&self, other: &Self) -> Self {
        let mut r = self.clone();
        let d = other.degree().expect("division by zero polynomial");
        let lead = other.leading().unwrap().clone();
        while let Some(rd) = r.degree() {
            if rd < d || r.is_zero() {
                break;
            }
            let factor = r.leading().unwrap() / &lead;
            let shift = rd - d;
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &factor));
            r = r.sub(&Self::new(sub));
        }
        r
    }

    /// Monic greatest common divisor (1 for coprime inputs).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&(Rat::one() / lead))
    }

    /// Exact quotient; panics if the division is not exact (callers divide
    /// only by known factors).
    pub fn div_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let d = other.degree().expect("division by zero polynomial");
        let lead = other.leading().unwrap().clone();
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len() - other.coeffs.len() + 1];
        while let Some(rd) = r.degree() {
            if r.is_zero() {
                break;
            }
            assert!(rd >= d, "inexact polynomial division");
            let factor = r.leading().unwrap() / &lead;
            let shift = rd - d;
            q[shift] = factor.clone();
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| c * &factor));
            r = r.sub(&Self::new(sub));
        }
        assert!(r.is_zero(), "inexact polynomial division");
        Self::new(q)
    }

    /// Splits off the largest power of `x` dividing the polynomial.
    pub fn strip_x_power(&self) -> (Self, usize) {
        if self.is_zero() {
            return (Self::zero(), 0);
        }
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (Self::new(self.coeffs[k..].to_vec()), k)
    }

    /// Primitive integer form: integer coefficients with gcd 1 and positive
    /// leading coefficient. Returns the primitive polynomial and the
    /// rational scale `c` with `self = c * primitive`.
    pub fn primitive(&self) -> (Self, Rat) {
        if self.is_zero() {
            return (Self::zero(), Rat::one());
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        let mut scale = Rat::new(g.clone(), denom_lcm);
        let mut prim: Vec<Rat> = ints.iter().map(|v| Rat::from_integer(v / &g)).collect();
        if prim.last().unwrap().is_negative() {
            for c in &mut prim {
                *c = -c.clone();
            }
            scale = -scale;
        }
        (Self::new(prim), scale)
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rat_as_f64(r: &Rat) -> f64 {
    rat_to_f64(r)
}

impl std::fmt::Display for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Reduced ratio of rational polynomials. The denominator carries a
/// positive leading coefficient and the pair is coprime, so the numerator
/// sign pattern is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RationalFunc {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("rational function with zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: RatPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().unwrap().clone();
        let inv = Rat::one() / lead;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Self { num, den }
    }

    pub fn from_poly(p: RatPoly) -> Self {
        Self { num: p, den: RatPoly::one() }
    }

    pub fn numerator(&self) -> &RatPoly {
        &self.num
    }

    pub fn denominator(&self) -> &RatPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Exact D-notation of a polynomial: `D(P) = P'/P + x (P'/P)'` assembled
    /// over the common denominator `P^2`.
    pub fn d_of_poly(p: &RatPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidInput("D-notation of the zero polynomial".into()));
        }
        let dp = p.derivative();
        let dpp = dp.derivative();
        // P'P + x (P''P - P'^2)
        let num = dp
            .mul(p)
            .add(&RatPoly::x().mul(&dpp.mul(p).sub(&dp.mul(&dp))));
        Self::new(num, p.mul(p))
    }

    /// Exact D-notation of a rational function: `D(P/Q) = D(P) - D(Q)`.
    pub fn d_notation(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::InvalidInput("D-notation of the zero function".into()));
        }
        Ok(Self::d_of_poly(&self.num)?.sub(&Self::d_of_poly(&self.den)?))
    }
}

impl std::fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_basics() {
        let p = RatPoly::from_integers(&[1, 0, -2]); // 1 - 2x^2
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(p.derivative(), RatPoly::from_integers(&[0, -4]));
        let q = RatPoly::from_integers(&[0, 0, 0]);
        assert!(q.is_zero());
    }

    #[test]
    fn poly_gcd_and_exact_division() {
        // (x^2)(2-x) and (x)(3+x): gcd should be x (monic).
        let a = RatPoly::from_integers(&[0, 0, 2, -1]);
        let b = RatPoly::from_integers(&[0, 3, 1]);
        assert_eq!(a.gcd(&b), RatPoly::x());
        let q = a.div_exact(&RatPoly::x());
        assert_eq!(q, RatPoly::from_integers(&[0, 2, -1]));
    }

    #[test]
    fn primitive_part() {
        let p = RatPoly::new(vec![rat(4, 3), rat(-8, 3)]); // (4/3)(1 - 2x)
        let (prim, scale) = p.primitive();
        assert_eq!(prim, RatPoly::from_integers(&[-1, 2]));
        assert_eq!(scale, rat(-4, 3));
        assert_eq!(prim.scale(&scale), p);
    }

    #[test]
    fn strip_x() {
        let p = RatPoly::from_integers(&[0, 0, 3, 5]);
        let (q, k) = p.strip_x_power();
        assert_eq!(k, 2);
        assert_eq!(q, RatPoly::from_integers(&[3, 5]));
    }

    #[test]
    fn d_of_simple_polynomials() {
        // D(2-x) = -2/(2-x)^2
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[2, -1])).unwrap();
        assert_eq!(d.numerator(), &RatPoly::from_integers(&[-2]));
        assert_eq!(d.denominator(), &RatPoly::from_integers(&[4, -4, 1]));
        // D(x^3) = 0: pure powers are log-log linear.
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[0, 0, 0, 1])).unwrap();
        assert!(d.numerator().is_zero());
        // D(2-x^2) = -8x/(2-x^2)^2
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[2, 0, -1])).unwrap();
        assert_eq!(d.numerator(), &RatPoly::from_integers(&[0, -8]));
    }

    /// `f`, as a rational function, equals `num/den` up to a positive scalar.
    fn assert_proportional(f: &RationalFunc, num: &[i64], den_factor: &[i64]) {
        let (got_num, _) = f.numerator().primitive();
        let (want_num, _) = RatPoly::from_integers(num).primitive();
        assert_eq!(got_num, want_num, "numerators differ beyond scale");
        let den = RatPoly::from_integers(den_factor);
        let (got_den, _) = f.denominator().primitive();
        let (want_den, _) = den.mul(&den).primitive();
        assert_eq!(got_den, want_den, "denominators differ beyond scale");
        // Pin the overall scale by comparing values at a point.
        let x = rat(1, 3);
        let want = RatPoly::from_integers(num).eval(&x) / (den.eval(&x).pow(2));
        assert_eq!(f.eval(&x).unwrap(), want, "values differ at x=1/3");
    }

    #[test]
    fn d_matches_hand_computations() {
        // D(12x-4x^2-3x^3) = (-48-144x+12x^2)/(12-4x-3x^2)^2
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[0, 12, -4, -3])).unwrap();
        assert_proportional(&d, &[-48, -144, 12], &[12, -4, -3]);
        // D(12-3x-2x^2) = (-36-96x+6x^2)/(12-3x-2x^2)^2
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[12, -3, -2])).unwrap();
        assert_proportional(&d, &[-36, -96, 6], &[12, -3, -2]);
        // D(24-9x-2x^2) = (-216-192x+18x^2)/(24-9x-2x^2)^2
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[24, -9, -2])).unwrap();
        assert_proportional(&d, &[-216, -192, 18], &[24, -9, -2]);
        // D(140x-63x^3-15x^5) = (-35280x-33600x^3+3780x^5)/(140-63x^2-15x^4)^2
        let d = RationalFunc::d_of_poly(&RatPoly::from_integers(&[0, 140, 0, -63, 0, -15])).unwrap();
        assert_proportional(&d, &[0, -35280, 0, -33600, 0, 3780], &[140, 0, -63, 0, -15]);
    }

    #[test]
    fn d_is_additive_over_products() {
        let p = RatPoly::from_integers(&[1, 2, 3]);
        let q = RatPoly::from_integers(&[4, -1]);
        let lhs = RationalFunc::d_of_poly(&p.mul(&q)).unwrap();
        let rhs = RationalFunc::d_of_poly(&p)
            .unwrap()
            .add(&RationalFunc::d_of_poly(&q).unwrap());
        assert_eq!(lhs, rhs);
    }
}
