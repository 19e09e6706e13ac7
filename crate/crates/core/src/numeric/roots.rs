use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{sign, NumericError, Rat, UPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// Which side of a finite base point is meant. `Exact` is the point itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Exact,
    Plus,
}

/// A point of the extended real line, possibly displaced infinitesimally to one
/// side. Side points are how orderings of `R(t)` centred at rational points are
/// addressed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedPoint {
    pub base: Base,
    pub side: Side,
}

impl ExtendedPoint {
    pub fn exact(a: Rat) -> Self {
        ExtendedPoint { base: Base::Finite(a), side: Side::Exact }
    }

    pub fn plus(a: Rat) -> Self {
        ExtendedPoint { base: Base::Finite(a), side: Side::Plus }
    }

    pub fn minus(a: Rat) -> Self {
        ExtendedPoint { base: Base::Finite(a), side: Side::Minus }
    }

    pub fn pos_inf() -> Self {
        ExtendedPoint { base: Base::PosInf, side: Side::Exact }
    }

    pub fn neg_inf() -> Self {
        ExtendedPoint { base: Base::NegInf, side: Side::Exact }
    }

    pub fn finite(&self) -> Option<&Rat> {
        match &self.base {
            Base::Finite(a) => Some(a),
            _ => None,
        }
    }

    /// True for side points and infinities, i.e. points usable as orderings.
    pub fn is_generic(&self) -> bool {
        !matches!((&self.base, self.side), (Base::Finite(_), Side::Exact))
    }

    fn rank(&self) -> (i8, Option<&Rat>, i8) {
        match &self.base {
            Base::NegInf => (-1, None, 0),
            Base::PosInf => (1, None, 0),
            Base::Finite(a) => (
                0,
                Some(a),
                match self.side {
                    Side::Minus => -1,
                    Side::Exact => 0,
                    Side::Plus => 1,
                },
            ),
        }
    }
}

impl PartialOrd for ExtendedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// Sign of `p` at an extended point.
///
/// At a side point the factor `(t - a)^k` is divided out exactly, so the answer
/// is the sign of `p` on a small punctured neighbourhood on that side.
pub fn sign_at(p: &UPoly, x: &ExtendedPoint) -> i8 {
    let Some(lc) = p.leading() else {
        return 0;
    };
    match (&x.base, x.side) {
        (Base::PosInf, _) => sign(lc),
        (Base::NegInf, _) => {
            let s = sign(lc);
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        }
        (Base::Finite(a), Side::Exact) => sign(&p.eval(a)),
        (Base::Finite(a), side) => {
            let (q, k) = p.strip_root(a);
            let s = sign(&q.eval(a));
            if side == Side::Minus && k % 2 == 1 {
                -s
            } else {
                s
            }
        }
    }
}

/// `p / gcd(p, p')`, scaled to be monic and then multiplied by the sign of the
/// leading coefficient of `p`, so that it has the same sign as `p` wherever `p`
/// does not vanish.
pub fn squarefree_part(p: &UPoly) -> Result<UPoly, NumericError> {
    let lc = p.leading().ok_or(NumericError::ZeroPolynomial)?;
    let reduced = p.exact_div(&p.gcd(&p.derivative())).monic();
    Ok(if lc.is_negative() { -reduced } else { reduced })
}

/// Square-free decomposition `p = c * a_1 * a_2^2 * a_3^3 * ...` with monic,
/// pairwise coprime, square-free `a_i` (Yun's algorithm). Returns
/// `[a_1, a_2, ...]`, possibly with constant entries, up to the top multiplicity.
pub fn squarefree_factors(p: &UPoly) -> Vec<UPoly> {
    let p = p.monic();
    if p.is_constant() {
        return Vec::new();
    }
    let dp = p.derivative();
    let b = p.gcd(&dp);
    let mut c = p.exact_div(&b);
    let mut d = &dp.exact_div(&b) - &c.derivative();
    let mut out = Vec::new();
    while !c.is_constant() {
        let a = c.gcd(&d);
        c = c.exact_div(&a);
        d = &d.exact_div(&a) - &c.derivative();
        out.push(a);
    }
    out
}

/// Product of the factors of odd multiplicity in a square-free decomposition,
/// monic. It represents the square class of `p` up to a constant.
pub fn odd_part(p: &UPoly) -> UPoly {
    squarefree_factors(p)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(UPoly::one(), |acc, (_, a)| &acc * a)
}

/// Sturm chain of the square-free reduction `p / gcd(p, p')`.
pub fn sturm_sequence(p: &UPoly) -> Result<Vec<UPoly>, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    let first = p.exact_div(&p.gcd(&p.derivative()));
    let mut chain = vec![first.clone()];
    let second = first.derivative();
    if second.is_zero() {
        return Ok(chain);
    }
    chain.push(second);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    Ok(chain)
}

fn variations(chain: &[UPoly], x: &ExtendedPoint) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for q in chain {
        let s = sign_at(q, x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn open_left(a: &ExtendedPoint) -> ExtendedPoint {
    match (&a.base, a.side) {
        (Base::Finite(v), Side::Exact) => ExtendedPoint::plus(v.clone()),
        _ => a.clone(),
    }
}

fn open_right(b: &ExtendedPoint) -> ExtendedPoint {
    match (&b.base, b.side) {
        (Base::Finite(v), Side::Exact) => ExtendedPoint::minus(v.clone()),
        _ => b.clone(),
    }
}

fn count_with_chain(chain: &[UPoly], a: &ExtendedPoint, b: &ExtendedPoint) -> usize {
    let va = variations(chain, &open_left(a));
    let vb = variations(chain, &open_right(b));
    va.saturating_sub(vb)
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn count_real_roots(
    p: &UPoly,
    a: &ExtendedPoint,
    b: &ExtendedPoint,
) -> Result<usize, NumericError> {
    let chain = sturm_sequence(p)?;
    if open_left(a) >= open_right(b) {
        return Err(NumericError::BadInterval);
    }
    Ok(count_with_chain(&chain, a, b))
}

/// An open interval with rational endpoints holding exactly one real root of
/// `poly`, which does not vanish at either endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub poly: UPoly,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    /// Halves the interval, keeping the half with the root. If the midpoint
    /// is itself the root, a symmetric interval around it is returned.
    pub fn refine(&self) -> IsolatingInterval {
        let mid = self.midpoint();
        let s_lo = sign(&self.poly.eval(&self.lo));
        let s_mid = sign(&self.poly.eval(&mid));
        if s_mid == 0 {
            let (lo, hi) = shrink_around(&self.poly, &mid, &(self.width() / Rat::from_integer(4.into())));
            return IsolatingInterval { lo, hi, poly: self.poly.clone() };
        }
        if s_mid != s_lo {
            IsolatingInterval { lo: self.lo.clone(), hi: mid, poly: self.poly.clone() }
        } else {
            IsolatingInterval { lo: mid, hi: self.hi.clone(), poly: self.poly.clone() }
        }
    }

    /// Refines until the width is strictly below `bound`.
    pub fn refine_below(&self, bound: &Rat) -> IsolatingInterval {
        let mut cur = self.clone();
        while &cur.width() >= bound {
            cur = cur.refine();
        }
        cur
    }

    /// The root, if it is rational and can be read off exactly.
    pub fn rational_root(&self) -> Option<Rat> {
        rational_roots(&self.poly)
            .into_iter()
            .find(|r| &self.lo < r && r < &self.hi)
    }
}

/// Largest `eps <= start` (by halving) with `p(center +- eps) != 0` and `center`
/// the only root in between.
fn shrink_around(p: &UPoly, center: &Rat, start: &Rat) -> (Rat, Rat) {
    let chain = sturm_sequence(p).expect("nonzero polynomial");
    let two = Rat::from_integer(BigInt::from(2));
    let mut eps = start.clone();
    loop {
        let lo = center - &eps;
        let hi = center + &eps;
        if !p.eval(&lo).is_zero()
            && !p.eval(&hi).is_zero()
            && count_with_chain(&chain, &ExtendedPoint::exact(lo.clone()), &ExtendedPoint::exact(hi.clone())) == 1
        {
            return (lo, hi);
        }
        eps /= &two;
    }
}

/// Strict upper bound on the absolute value of every complex root.
fn cauchy_bound(p: &UPoly) -> Rat {
    let lc = p.leading().unwrap().abs();
    let n = p.degree().unwrap();
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rat::zero);
    Rat::one() + max
}

/// Isolating intervals for the distinct real roots of `p`, sorted.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<IsolatingInterval>, NumericError> {
    let chain = sturm_sequence(p)?;
    let sq = chain[0].clone();
    if sq.is_constant() {
        return Ok(Vec::new());
    }
    let two = Rat::from_integer(BigInt::from(2));
    let bound = cauchy_bound(&sq);
    let count = |lo: &Rat, hi: &Rat| {
        count_with_chain(&chain, &ExtendedPoint::exact(lo.clone()), &ExtendedPoint::exact(hi.clone()))
    };
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match count(&lo, &hi) {
            0 => {}
            1 => out.push(IsolatingInterval { lo, hi, poly: sq.clone() }),
            _ => {
                let mid = (&lo + &hi) / &two;
                if sq.eval(&mid).is_zero() {
                    let (a, b) = shrink_around(&sq, &mid, &((&hi - &lo) / Rat::from_integer(4.into())));
                    out.push(IsolatingInterval { lo: a.clone(), hi: b.clone(), poly: sq.clone() });
                    stack.push((lo, a));
                    stack.push((b, hi));
                } else {
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// All distinct rational roots of `p`, sorted.
///
/// With integer primitive coefficients, every rational root lies in
/// `(1/a_n) Z` where `a_n` is the leading coefficient. Points of that lattice
/// are at least `1/|a_n|` apart, so an isolating interval refined below that
/// width holds at most one candidate, which is then tested exactly.
pub fn rational_roots(p: &UPoly) -> Vec<Rat> {
    if p.is_constant() {
        return Vec::new();
    }
    let ints = p.primitive_integer();
    let lead = ints.last().unwrap().abs();
    let step = Rat::new(BigInt::one(), lead.clone());
    let scale = Rat::from_integer(lead);
    let mut roots = Vec::new();
    for iv in isolate_real_roots(p).expect("nonconstant") {
        let iv = iv.refine_below(&step);
        let cand = (&iv.lo * &scale).floor() + Rat::one();
        let cand = cand / &scale;
        if cand < iv.hi && iv.poly.eval(&cand).is_zero() {
            roots.push(cand);
        }
    }
    roots.sort();
    roots
}
