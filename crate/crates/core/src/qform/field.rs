use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numeric::{
    format_rat, odd_part, rat_sqrt_exact, sign, sign_at, squarefree_kernel, ExtendedPoint, RatFunc, Rat,
};

use super::QFormError;

/// The fields forms are defined over. All have characteristic different from 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rationals,
    /// Rational entries read in a real closed field: every positive element is
    /// a square. This is how the reals are modelled.
    Reals,
    /// The prime field of odd characteristic `p`.
    Finite(u64),
    /// Rational entries read in an algebraically closed field.
    Complexes,
    /// `R(t)` with elements given by rational-coefficient rational functions.
    RationalFunctions,
}

impl FieldCtx {
    pub fn finite(p: u64) -> Result<Self, QFormError> {
        if p < 3 || p.is_multiple_of(2) || !(3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(QFormError::InvalidContext(p));
        }
        Ok(FieldCtx::Finite(p))
    }

    pub fn is_ordered(&self) -> bool {
        matches!(self, FieldCtx::Rationals | FieldCtx::Reals | FieldCtx::RationalFunctions)
    }

    /// Embeds a rational constant.
    pub fn constant(&self, c: &Rat) -> Elem {
        match self {
            FieldCtx::Finite(p) => {
                let p_big = BigInt::from(*p);
                let n = c.numer().mod_floor(&p_big);
                let d = c.denom().mod_floor(&p_big);
                assert!(!d.is_zero(), "denominator divisible by the characteristic");
                let inv = d.modpow(&(&p_big - 2u32), &p_big);
                Elem::Fp { value: (n * inv).mod_floor(&p_big).to_u64().unwrap(), p: *p }
            }
            FieldCtx::RationalFunctions => Elem::Func(RatFunc::constant(c.clone())),
            _ => Elem::Rat(c.clone()),
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.constant(&Rat::from_integer(BigInt::from(n)))
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (FieldCtx::Finite(p), Elem::Fp { p: q, .. }) => p == q,
            (FieldCtx::RationalFunctions, Elem::Func(_)) => true,
            (FieldCtx::Rationals | FieldCtx::Reals | FieldCtx::Complexes, Elem::Rat(_)) => true,
            _ => false,
        }
    }

    /// Canonical representative of the square class of a nonzero element.
    pub fn square_class(&self, e: &Elem) -> Elem {
        assert!(!e.is_zero(), "square class of zero");
        match (self, e) {
            (FieldCtx::Rationals, Elem::Rat(r)) => {
                Elem::Rat(Rat::from_integer(squarefree_kernel(&(r.numer() * r.denom()))))
            }
            (FieldCtx::Reals, Elem::Rat(r)) => Elem::Rat(Rat::from_integer(BigInt::from(sign(r)))),
            (FieldCtx::Complexes, Elem::Rat(_)) => Elem::Rat(Rat::one()),
            (FieldCtx::Finite(p), Elem::Fp { value, .. }) => {
                if is_residue(*value, *p) {
                    Elem::Fp { value: 1, p: *p }
                } else {
                    Elem::Fp { value: least_nonresidue(*p), p: *p }
                }
            }
            (FieldCtx::RationalFunctions, Elem::Func(f)) => {
                let prod = f.num() * f.den();
                let s = sign(prod.leading().unwrap());
                let kernel = odd_part(&prod).scale(&Rat::from_integer(BigInt::from(s)));
                Elem::Func(RatFunc::from_poly(kernel))
            }
            _ => panic!("element {e} is not in {self:?}"),
        }
    }

    pub fn is_square(&self, e: &Elem) -> bool {
        self.square_class(e).is_one()
    }

    /// A square root inside the representable elements, if there is one.
    ///
    /// Over `Reals` this only succeeds for squares of rationals, so it is a
    /// certificate source rather than a decision procedure.
    pub fn sqrt_exact(&self, e: &Elem) -> Option<Elem> {
        match e {
            Elem::Rat(r) => match self {
                FieldCtx::Complexes if r.is_negative() => None,
                _ => rat_sqrt_exact(r).map(Elem::Rat),
            },
            Elem::Fp { value, p } => {
                (0..*p).find(|x| (x * x) % p == *value).map(|x| Elem::Fp { value: x, p: *p })
            }
            Elem::Func(f) => f.sqrt_exact().map(Elem::Func),
        }
    }
}

fn is_residue(value: u64, p: u64) -> bool {
    let e = BigInt::from(value).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    e.is_one()
}

fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&x| !is_residue(x, p)).expect("odd primes have non-residues")
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => f.write_str("Q"),
            FieldCtx::Reals => f.write_str("R"),
            FieldCtx::Finite(p) => write!(f, "F_{p}"),
            FieldCtx::Complexes => f.write_str("C"),
            FieldCtx::RationalFunctions => f.write_str("R(t)"),
        }
    }
}

/// A field element in one of the supported contexts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(Rat),
    Fp { value: u64, p: u64 },
    Func(RatFunc),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_zero(),
            Elem::Fp { value, .. } => *value == 0,
            Elem::Func(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_one(),
            Elem::Fp { value, .. } => *value == 1,
            Elem::Func(f) => f.is_one(),
        }
    }

    pub fn mul(&self, o: &Elem) -> Elem {
        match (self, o) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Fp { value: a, p }, Elem::Fp { value: b, .. }) => {
                Elem::Fp { value: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            (Elem::Func(a), Elem::Func(b)) => Elem::Func(a.mul(b)),
            _ => panic!("mixed field elements {self} and {o}"),
        }
    }

    pub fn add(&self, o: &Elem) -> Elem {
        match (self, o) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Fp { value: a, p }, Elem::Fp { value: b, .. }) => {
                Elem::Fp { value: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            (Elem::Func(a), Elem::Func(b)) => Elem::Func(a.add(b)),
            _ => panic!("mixed field elements {self} and {o}"),
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Fp { value, p } => Elem::Fp { value: (p - value) % p, p: *p },
            Elem::Func(a) => Elem::Func(a.neg()),
        }
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.add(&o.neg())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Elem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Elem::Rat(a) => Elem::Rat(a.recip()),
            Elem::Fp { value, p } => {
                // Fermat: value^(p-2)
                let (mut base, mut e, mut acc) = (*value as u128, p - 2, 1u128);
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Elem::Fp { value: acc as u64, p: *p }
            }
            Elem::Func(f) => Elem::Func(f.inv()?),
        })
    }

    /// Sign at an ordering point; only meaningful for ordered contexts.
    pub(crate) fn sign_at(&self, at: Option<&ExtendedPoint>) -> i8 {
        match (self, at) {
            (Elem::Rat(r), _) => sign(r),
            (Elem::Func(f), Some(x)) => sign_at(f.num(), x) * sign_at(f.den(), x),
            _ => panic!("no sign for {self}"),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(r) => f.write_str(&format_rat(r)),
            Elem::Fp { value, .. } => write!(f, "{value}"),
            Elem::Func(r) => write!(f, "{r}"),
        }
    }
}
