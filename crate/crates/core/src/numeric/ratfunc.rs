use std::fmt;

use num_traits::One;

use super::{rat_sqrt_exact, squarefree_factors, Rat, UPoly};

/// Rational function `num / den` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    /// `None` when the denominator is zero.
    pub fn new(num: UPoly, den: UPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        let lc = den.leading().unwrap().recip();
        Some(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UPoly::one())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_constant() && self.den.is_constant() && self.num.coeff(0).is_one()
    }

    pub fn as_poly(&self) -> Option<&UPoly> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den).unwrap()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<RatFunc> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Order of vanishing at `t = a` and the value there of the unit part
    /// `self / (t - a)^k`. Panics on zero.
    pub fn valuation_at(&self, a: &Rat) -> (i64, Rat) {
        let (n, kn) = self.num.strip_root(a);
        let (d, kd) = self.den.strip_root(a);
        (kn as i64 - kd as i64, n.eval(a) / d.eval(a))
    }

    /// Valuation at infinity for the uniformizer `1/t`, with the value of the
    /// unit part `self * t^k` there.
    pub fn valuation_at_infinity(&self) -> (i64, Rat) {
        let dn = self.num.degree().expect("valuation of zero") as i64;
        let dd = self.den.degree().unwrap() as i64;
        (dd - dn, self.num.leading().unwrap() / self.den.leading().unwrap())
    }

    /// Square root in `Q(t)`, if this is a square of a rational function.
    pub fn sqrt_exact(&self) -> Option<RatFunc> {
        let n = poly_sqrt_exact(&self.num)?;
        let d = poly_sqrt_exact(&self.den)?;
        RatFunc::new(n, d)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den == UPoly::one() {
            self.num.display_with(var)
        } else {
            format!("({})/({})", self.num.display_with(var), self.den.display_with(var))
        }
    }
}

fn poly_sqrt_exact(p: &UPoly) -> Option<UPoly> {
    if p.is_zero() {
        return Some(UPoly::zero());
    }
    let lc = rat_sqrt_exact(p.leading().unwrap())?;
    let mut root = UPoly::constant(lc);
    for (i, a) in squarefree_factors(p).iter().enumerate() {
        let mult = i + 1;
        if a.is_constant() {
            continue;
        }
        if mult % 2 == 1 {
            return None;
        }
        root = &root * &a.pow((mult / 2) as u32);
    }
    Some(root)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl From<UPoly> for RatFunc {
    fn from(p: UPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    #[test]
    fn normalisation_and_arithmetic() {
        let t = UPoly::x();
        let f = RatFunc::new(&t * &t, t.scale(&int(2))).unwrap();
        assert_eq!(f, RatFunc::from_poly(t.scale(&rat(1, 2))));
        let g = RatFunc::new(UPoly::one(), t.clone()).unwrap();
        assert_eq!(f.mul(&g), RatFunc::constant(rat(1, 2)));
        assert!(RatFunc::new(UPoly::one(), UPoly::zero()).is_none());
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn valuations() {
        // (t - 1)^2 (t + 3) / t
        let f = RatFunc::new(UPoly::from_roots(&[int(1), int(1), int(-3)]), UPoly::x()).unwrap();
        assert_eq!(f.valuation_at(&int(1)), (2, int(4)));
        assert_eq!(f.valuation_at(&int(0)), (-1, int(3)));
        assert_eq!(f.valuation_at_infinity(), (-2, int(1)));
    }

    #[test]
    fn exact_square_roots() {
        let sq = UPoly::from_roots(&[int(1), int(1), int(2), int(2)]).scale(&rat(9, 4));
        let f = RatFunc::from_poly(sq);
        let r = f.sqrt_exact().unwrap();
        assert_eq!(r.mul(&r), f);
        assert!(RatFunc::from_poly(UPoly::x()).sqrt_exact().is_none());
        assert!(RatFunc::constant(int(2)).sqrt_exact().is_none());
    }
}
