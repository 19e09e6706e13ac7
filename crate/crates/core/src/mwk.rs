//! Milnor–Witt K-theory in degrees 0, 1 and 2.
//!
//! An element of degree `n` is a pair of a Milnor K-theory element and a Witt
//! class in `I^n` whose images in `I^n / I^(n+1)` agree. In degree 0 this is the
//! Grothendieck–Witt ring: rank and Witt class. Conventions:
//! `[a] = ({a}, -<<a>>)`, `η` kills the Milnor part and keeps the Witt class,
//! so `<a> = 1 + η[a]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::qform::{
    discriminant, pfister, sample_orderings, signature, witt_zero_certificate, DiagForm, Elem, FieldCtx, FieldOrdering,
    GWElem, QFormError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MwkError {
    #[error(transparent)]
    Form(#[from] QFormError),
    #[error("degree {0} is outside 0..=2")]
    DegreeOutOfRange(usize),
    #[error("eta multiplication needs degree at least 1")]
    DegreeZero,
    #[error("degrees {0} and {1} differ")]
    DegreeMismatch(usize, usize),
    #[error("milnor and witt parts are incompatible")]
    Incompatible,
}

/// Formal integer combination of symbols `{a_1, ..., a_n}`.
///
/// Kept in a canonical shape: degree 1 collapses to one symbol `{prod a_i^c_i}`
/// (an exact normal form, `K_1 = F^*`); degree 2 is antisymmetrized, `{a, a}`
/// becomes `{a, -1}`, and symbols containing `1`, `{a, -a}` and Steinberg
/// symbols `{a, 1-a}` are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorPart {
    ctx: FieldCtx,
    degree: usize,
    terms: BTreeMap<Vec<Elem>, BigInt>,
}

impl MilnorPart {
    pub fn zero(ctx: FieldCtx, degree: usize) -> Self {
        MilnorPart { ctx, degree, terms: BTreeMap::new() }
    }

    pub fn integer(ctx: FieldCtx, n: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), n);
        MilnorPart { ctx, degree: 0, terms }.canonical()
    }

    pub fn symbol(ctx: FieldCtx, args: &[Elem]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(args.to_vec(), BigInt::one());
        MilnorPart { ctx, degree: args.len(), terms }.canonical()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Elem>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer in degree 0.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.degree == 0).then(|| self.terms.get(&Vec::new()).cloned().unwrap_or_default())
    }

    fn canonical(self) -> Self {
        let ctx = self.ctx;
        let mut out: BTreeMap<Vec<Elem>, BigInt> = BTreeMap::new();
        let mut push = |k: Vec<Elem>, c: BigInt| {
            let e = out.entry(k).or_default();
            *e += c;
        };
        match self.degree {
            0 => {
                for (_, c) in self.terms {
                    push(Vec::new(), c);
                }
            }
            1 => {
                let mut u = ctx.one();
                for (k, c) in self.terms {
                    u = u.mul(&elem_pow(&k[0], &c));
                }
                if !u.is_one() {
                    push(vec![u], BigInt::one());
                }
            }
            _ => {
                let minus_one = ctx.from_int(-1);
                for (k, c) in self.terms {
                    let (mut a, mut b) = (k[0].clone(), k[1].clone());
                    if matches!(ctx, FieldCtx::Finite(_)) {
                        // K_2 of a finite field vanishes
                        continue;
                    }
                    if a.is_one() || b.is_one() || a.add(&b).is_one() || a.add(&b).is_zero() {
                        continue;
                    }
                    if a == b {
                        b = minus_one.clone();
                    }
                    let mut c = c;
                    if a > b {
                        std::mem::swap(&mut a, &mut b);
                        c = -c;
                    }
                    push(vec![a, b], c);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        MilnorPart { ctx, degree: self.degree, terms: out }
    }

    pub fn add(&self, o: &MilnorPart) -> MilnorPart {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            *terms.entry(k.clone()).or_default() += c;
        }
        MilnorPart { ctx: self.ctx, degree: self.degree, terms }.canonical()
    }

    pub fn neg(&self) -> MilnorPart {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect();
        MilnorPart { ctx: self.ctx, degree: self.degree, terms }.canonical()
    }

    pub fn mul(&self, o: &MilnorPart) -> MilnorPart {
        let mut terms: BTreeMap<Vec<Elem>, BigInt> = BTreeMap::new();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let k: Vec<Elem> = a.iter().chain(b).cloned().collect();
                *terms.entry(k).or_default() += c * d;
            }
        }
        MilnorPart { ctx: self.ctx, degree: self.degree + o.degree, terms }.canonical()
    }

    /// Image in `K_1 / 2`, i.e. the square class of the single symbol.
    fn degree_one_class(&self) -> Elem {
        let u = self.terms.keys().next().map(|k| k[0].clone()).unwrap_or_else(|| self.ctx.one());
        self.ctx.square_class(&u)
    }

    /// Image of the degree-2 part under the signature at `ord`, divided by 4,
    /// mod 2: `{a, b}` contributes when `a` and `b` are both negative.
    fn degree_two_parity(&self, ord: &FieldOrdering) -> Result<bool, QFormError> {
        let mut parity = false;
        for (k, c) in &self.terms {
            let s = |e: &Elem| signature(&DiagForm::new(self.ctx, vec![e.clone()])?, ord);
            if s(&k[0])? < 0 && s(&k[1])? < 0 && c.is_odd() {
                parity = !parity;
            }
        }
        Ok(parity)
    }

    fn elems(&self) -> Vec<Elem> {
        self.terms.keys().flatten().cloned().collect()
    }
}

fn elem_pow(a: &Elem, c: &BigInt) -> Elem {
    let base = if c.is_negative() { a.inv().expect("symbol entries are nonzero") } else { a.clone() };
    let mut e = c.abs().to_u64().expect("small exponent");
    let (mut b, mut acc) = (base, a_one(a));
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    acc
}

fn a_one(a: &Elem) -> Elem {
    match a {
        Elem::Rat(_) => Elem::Rat(crate::numeric::int(1)),
        Elem::Fp { p, .. } => Elem::Fp { value: 1, p: *p },
        Elem::Func(_) => Elem::Func(crate::numeric::RatFunc::one()),
    }
}

impl fmt::Display for MilnorPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.as_integer().unwrap_or_default());
        }
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let sym = k.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
                if c.is_one() {
                    format!("{{{sym}}}")
                } else {
                    format!("{c}{{{sym}}}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A Milnor–Witt K-theory element of degree 0, 1 or 2.
#[derive(Clone, Debug)]
pub struct KmwElem {
    milnor: MilnorPart,
    witt: DiagForm,
}

/// Outcome of comparing two elements through computable invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Distinct,
    Indistinguishable,
}

impl KmwElem {
    /// Builds a pair after checking compatibility.
    pub fn new(milnor: MilnorPart, witt: DiagForm) -> Result<Self, MwkError> {
        if milnor.degree > 2 {
            return Err(MwkError::DegreeOutOfRange(milnor.degree));
        }
        if milnor.ctx != witt.ctx() {
            return Err(QFormError::ContextMismatch.into());
        }
        let x = KmwElem { milnor, witt };
        if !x.is_compatible() {
            return Err(MwkError::Incompatible);
        }
        Ok(x)
    }

    /// The unit `1` in degree 0.
    pub fn one(ctx: FieldCtx) -> Self {
        Self::from_gw(&GWElem::integer(ctx, 1))
    }

    pub fn zero(ctx: FieldCtx, degree: usize) -> Self {
        KmwElem { milnor: MilnorPart::zero(ctx, degree), witt: DiagForm::empty(ctx) }
    }

    /// The degree-0 element of a Grothendieck–Witt class.
    pub fn from_gw(x: &GWElem) -> Self {
        KmwElem { milnor: MilnorPart::integer(x.ctx(), BigInt::from(x.rank())), witt: x.witt_form() }
    }

    /// `[a_1] ... [a_n] = ({a_1, ..., a_n}, (-1)^n <<a_1, ..., a_n>>)`.
    pub fn symbol(ctx: FieldCtx, args: &[Elem]) -> Result<Self, MwkError> {
        if args.is_empty() || args.len() > 2 {
            return Err(MwkError::DegreeOutOfRange(args.len()));
        }
        let pf = pfister(ctx, args)?;
        let witt = if args.len() % 2 == 1 { pf.witt_negative() } else { pf };
        Ok(KmwElem { milnor: MilnorPart::symbol(ctx, args), witt })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.witt.ctx()
    }

    pub fn degree(&self) -> usize {
        self.milnor.degree
    }

    pub fn milnor(&self) -> &MilnorPart {
        &self.milnor
    }

    /// Diagonal representative of the Witt component.
    pub fn witt(&self) -> &DiagForm {
        &self.witt
    }

    /// Rank in degree 0.
    pub fn rank(&self) -> Option<BigInt> {
        self.milnor.as_integer()
    }

    /// `η · x`: Milnor part dies, the Witt class is carried into `I^(n-1)`.
    pub fn eta_mul(&self) -> Result<KmwElem, MwkError> {
        if self.degree() == 0 {
            return Err(MwkError::DegreeZero);
        }
        Ok(KmwElem { milnor: MilnorPart::zero(self.ctx(), self.degree() - 1), witt: self.witt.clone() })
    }

    pub fn add(&self, o: &KmwElem) -> Result<KmwElem, MwkError> {
        if self.degree() != o.degree() {
            return Err(MwkError::DegreeMismatch(self.degree(), o.degree()));
        }
        Ok(KmwElem { milnor: self.milnor.add(&o.milnor), witt: self.witt.direct_sum(&o.witt)? })
    }

    pub fn neg(&self) -> KmwElem {
        KmwElem { milnor: self.milnor.neg(), witt: self.witt.witt_negative() }
    }

    pub fn sub(&self, o: &KmwElem) -> Result<KmwElem, MwkError> {
        self.add(&o.neg())
    }

    /// Graded product; total degree at most 2.
    pub fn product(&self, o: &KmwElem) -> Result<KmwElem, MwkError> {
        if self.ctx() != o.ctx() {
            return Err(QFormError::ContextMismatch.into());
        }
        let d = self.degree() + o.degree();
        if d > 2 {
            return Err(MwkError::DegreeOutOfRange(d));
        }
        Ok(KmwElem { milnor: self.milnor.mul(&o.milnor), witt: self.witt.tensor(&o.witt)? })
    }

    fn orderings(&self) -> Vec<FieldOrdering> {
        let mut elems = self.milnor.elems();
        elems.extend(self.witt.entries().iter().cloned());
        sample_orderings(self.ctx(), &elems)
    }

    /// Agreement of both components in `I^n / I^(n+1)` on the computable
    /// invariants: rank parity, discriminant, and signatures mod 8 in degree 2.
    pub fn is_compatible(&self) -> bool {
        let w = &self.witt;
        match self.degree() {
            0 => {
                let r = self.milnor.as_integer().unwrap_or_default();
                r.is_odd() == (w.dim() % 2 == 1)
            }
            1 => w.dim().is_multiple_of(2) && discriminant(w) == self.milnor.degree_one_class(),
            _ => {
                if w.dim() % 2 == 1 || !discriminant(w).is_one() {
                    return false;
                }
                for ord in self.orderings() {
                    let Ok(s) = signature(w, &ord) else { return false };
                    let Ok(parity) = self.milnor.degree_two_parity(&ord) else { return false };
                    if s % 4 != 0 || ((s / 4) % 2 != 0) != parity {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Compares through the Milnor normal form in degrees 0 and 1, a zero
    /// certificate for the difference of Witt parts, and signatures at the
    /// sampled orderings.
    pub fn compare(&self, o: &KmwElem) -> Result<Comparison, MwkError> {
        if self.ctx() != o.ctx() {
            return Err(QFormError::ContextMismatch.into());
        }
        if self.degree() != o.degree() {
            return Err(MwkError::DegreeMismatch(self.degree(), o.degree()));
        }
        let diff = self.sub(o)?;
        let exact_milnor = self.degree() < 2 || matches!(self.ctx(), FieldCtx::Finite(_));
        if exact_milnor && !diff.milnor.is_zero() {
            return Ok(Comparison::Distinct);
        }
        for ord in diff.orderings() {
            if signature(&diff.witt, &ord)? != 0 {
                return Ok(Comparison::Distinct);
            }
        }
        if !discriminant(&diff.witt).is_one() {
            return Ok(Comparison::Distinct);
        }
        if diff.milnor.is_zero() && witt_zero_certificate(&diff.witt).is_some() {
            return Ok(Comparison::Equal);
        }
        Ok(Comparison::Indistinguishable)
    }
}

impl fmt::Display for KmwElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.milnor, self.witt)
    }
}

/// Checks `<a> = 1 + η[a]` on rank and on signatures at the supplied orderings
/// (the archimedean one is always added over the rationals and the reals).
pub fn gw_identity_check(ctx: FieldCtx, a: &Elem, orderings: &[FieldOrdering]) -> Result<bool, MwkError> {
    if a.is_zero() {
        return Err(QFormError::ZeroEntry.into());
    }
    let lhs = KmwElem::one(ctx).add(&KmwElem::symbol(ctx, std::slice::from_ref(a))?.eta_mul()?)?;
    let rhs = KmwElem::from_gw(&GWElem::from_form(DiagForm::new(ctx, vec![a.clone()])?));
    if lhs.rank() != rhs.rank() {
        return Ok(false);
    }
    let mut ords = orderings.to_vec();
    if matches!(ctx, FieldCtx::Rationals | FieldCtx::Reals) && !ords.contains(&FieldOrdering::Archimedean) {
        ords.push(FieldOrdering::Archimedean);
    }
    for ord in &ords {
        if signature(lhs.witt(), ord)? != signature(rhs.witt(), ord)? {
            return Ok(false);
        }
    }
    Ok(true)
}
