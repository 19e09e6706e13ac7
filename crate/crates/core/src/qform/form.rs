use std::fmt;

use super::{Elem, FieldCtx, QFormError};

/// One summand `coeff * <<args>>` of a Pfister presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterTerm {
    pub coeff: i64,
    pub args: Vec<Elem>,
}

/// A Witt-class identity `form = sum coeff_i * <<args_i>>`, recorded when a
/// form is built from Pfister forms and carried through sums and products.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PfisterPresentation {
    pub terms: Vec<PfisterTerm>,
}

impl PfisterPresentation {
    /// Smallest number of slots over the terms; `None` for the empty sum.
    pub fn min_fold(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.args.len()).min()
    }

    fn sum(&self, other: &Self) -> Self {
        PfisterPresentation { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    fn negated(&self) -> Self {
        PfisterPresentation {
            terms: self.terms.iter().map(|t| PfisterTerm { coeff: -t.coeff, args: t.args.clone() }).collect(),
        }
    }

    fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(PfisterTerm {
                    coeff: a.coeff * b.coeff,
                    args: a.args.iter().chain(&b.args).cloned().collect(),
                });
            }
        }
        PfisterPresentation { terms }
    }
}

/// Diagonal form `<a_1, ..., a_n>` with nonzero entries.
#[derive(Clone, Debug)]
pub struct DiagForm {
    ctx: FieldCtx,
    entries: Vec<Elem>,
    presentation: Option<PfisterPresentation>,
}

impl PartialEq for DiagForm {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.entries == other.entries
    }
}

impl Eq for DiagForm {}

impl DiagForm {
    pub fn new(ctx: FieldCtx, entries: Vec<Elem>) -> Result<Self, QFormError> {
        for e in &entries {
            if !ctx.contains(e) {
                return Err(QFormError::ElementOutsideContext(e.to_string()));
            }
            if e.is_zero() {
                return Err(QFormError::ZeroEntry);
            }
        }
        Ok(DiagForm { ctx, entries, presentation: None })
    }

    pub fn from_ints(ctx: FieldCtx, entries: &[i64]) -> Result<Self, QFormError> {
        Self::new(ctx, entries.iter().map(|&a| ctx.from_int(a)).collect())
    }

    /// The zero-dimensional form.
    pub fn empty(ctx: FieldCtx) -> Self {
        DiagForm { ctx, entries: Vec::new(), presentation: Some(PfisterPresentation::default()) }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn presentation(&self) -> Option<&PfisterPresentation> {
        self.presentation.as_ref()
    }

    pub(crate) fn with_presentation(mut self, p: Option<PfisterPresentation>) -> Self {
        self.presentation = p;
        self
    }

    fn same_ctx(&self, other: &DiagForm) -> Result<(), QFormError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(QFormError::ContextMismatch)
        }
    }

    pub fn direct_sum(&self, other: &DiagForm) -> Result<DiagForm, QFormError> {
        self.same_ctx(other)?;
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(a), Some(b)) => Some(a.sum(b)),
            _ => None,
        };
        Ok(DiagForm {
            ctx: self.ctx,
            entries: self.entries.iter().chain(&other.entries).cloned().collect(),
            presentation,
        })
    }

    /// Entries `a_i b_j` in the order `i` outer, `j` inner.
    pub fn tensor(&self, other: &DiagForm) -> Result<DiagForm, QFormError> {
        self.same_ctx(other)?;
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a.mul(b));
            }
        }
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(a), Some(b)) => Some(a.product(b)),
            _ => None,
        };
        Ok(DiagForm { ctx: self.ctx, entries, presentation })
    }

    /// `<c> ⊗ self`.
    pub fn scaled(&self, c: &Elem) -> Result<DiagForm, QFormError> {
        self.tensor(&DiagForm::new(self.ctx, vec![c.clone()])?)
    }

    /// `<-1> ⊗ self`, the additive inverse in the Witt ring.
    pub fn witt_negative(&self) -> DiagForm {
        DiagForm {
            ctx: self.ctx,
            entries: self.entries.iter().map(Elem::neg).collect(),
            presentation: self.presentation.as_ref().map(PfisterPresentation::negated),
        }
    }

    /// The quadratic form `sum a_i v_i^2`.
    pub fn evaluate(&self, v: &[Elem]) -> Result<Elem, QFormError> {
        if v.len() != self.dim() {
            return Err(QFormError::DimensionMismatch);
        }
        let mut acc = self.ctx.from_int(0);
        for (a, x) in self.entries.iter().zip(v) {
            if !self.ctx.contains(x) {
                return Err(QFormError::ElementOutsideContext(x.to_string()));
            }
            acc = acc.add(&a.mul(&x.mul(x)));
        }
        Ok(acc)
    }

    /// Whether `v` is a nonzero isotropic vector.
    pub fn is_isotropic_vector(&self, v: &[Elem]) -> bool {
        v.iter().any(|x| !x.is_zero()) && self.evaluate(v).is_ok_and(|q| q.is_zero())
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(">")
    }
}

/// `<<a_1, ..., a_n>> = <1, -a_1> ⊗ ... ⊗ <1, -a_n>`, dimension `2^n`, with
/// its one-term Pfister presentation recorded.
pub fn pfister(ctx: FieldCtx, args: &[Elem]) -> Result<DiagForm, QFormError> {
    let mut form = DiagForm::new(ctx, vec![ctx.one()])?;
    for a in args {
        if !ctx.contains(a) {
            return Err(QFormError::ElementOutsideContext(a.to_string()));
        }
        if a.is_zero() {
            return Err(QFormError::ZeroEntry);
        }
        form = form.tensor(&DiagForm::new(ctx, vec![ctx.one(), a.neg()])?)?;
    }
    let presentation = PfisterPresentation { terms: vec![PfisterTerm { coeff: 1, args: args.to_vec() }] };
    Ok(form.with_presentation(Some(presentation)))
}

/// Formal difference `plus - minus` of forms: an element of the
/// Grothendieck–Witt ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWElem {
    pub plus: DiagForm,
    pub minus: DiagForm,
}

impl GWElem {
    pub fn new(plus: DiagForm, minus: DiagForm) -> Result<Self, QFormError> {
        plus.same_ctx(&minus)?;
        Ok(GWElem { plus, minus })
    }

    pub fn from_form(form: DiagForm) -> Self {
        let ctx = form.ctx;
        GWElem { plus: form, minus: DiagForm::empty(ctx) }
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        GWElem { plus: DiagForm::empty(ctx), minus: DiagForm::empty(ctx) }
    }

    /// `n * <1>`, negative `n` on the minus side.
    pub fn integer(ctx: FieldCtx, n: i64) -> Self {
        let ones = |k: i64| {
            DiagForm::new(ctx, vec![ctx.one(); k as usize])
                .unwrap()
                .with_presentation(Some(PfisterPresentation {
                    terms: vec![PfisterTerm { coeff: k, args: vec![] }],
                }))
        };
        if n >= 0 {
            GWElem { plus: ones(n), minus: DiagForm::empty(ctx) }
        } else {
            GWElem { plus: DiagForm::empty(ctx), minus: ones(-n) }
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.plus.ctx
    }

    pub fn rank(&self) -> i64 {
        self.plus.dim() as i64 - self.minus.dim() as i64
    }

    pub fn add(&self, o: &GWElem) -> Result<GWElem, QFormError> {
        Ok(GWElem { plus: self.plus.direct_sum(&o.plus)?, minus: self.minus.direct_sum(&o.minus)? })
    }

    pub fn neg(&self) -> GWElem {
        GWElem { plus: self.minus.clone(), minus: self.plus.clone() }
    }

    pub fn sub(&self, o: &GWElem) -> Result<GWElem, QFormError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &GWElem) -> Result<GWElem, QFormError> {
        let plus = self.plus.tensor(&o.plus)?.direct_sum(&self.minus.tensor(&o.minus)?)?;
        let minus = self.plus.tensor(&o.minus)?.direct_sum(&self.minus.tensor(&o.plus)?)?;
        Ok(GWElem { plus, minus })
    }

    /// A diagonal form with the same Witt class: `plus ⊥ <-1> minus`.
    pub fn witt_form(&self) -> DiagForm {
        self.plus.direct_sum(&self.minus.witt_negative()).expect("contexts agree")
    }
}

impl fmt::Display for GWElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{RatFunc, UPoly};

    fn q(entries: &[i64]) -> DiagForm {
        DiagForm::from_ints(FieldCtx::Rationals, entries).unwrap()
    }

    #[test]
    fn sums_and_products() {
        assert_eq!(q(&[1]).direct_sum(&q(&[-1])).unwrap(), q(&[1, -1]));
        assert_eq!(q(&[1, 1]).tensor(&q(&[5])).unwrap(), q(&[5, 5]));
        let ctx = FieldCtx::RationalFunctions;
        let el = |p: UPoly| Elem::Func(RatFunc::from_poly(p));
        let a = el(UPoly::from_ints(&[0, 1]));
        let b = el(UPoly::from_ints(&[1, 1]));
        let l = DiagForm::new(ctx, vec![ctx.one(), a.neg()]).unwrap();
        let r = DiagForm::new(ctx, vec![ctx.one(), b.neg()]).unwrap();
        let expected = DiagForm::new(ctx, vec![ctx.one(), b.neg(), a.neg(), a.mul(&b)]).unwrap();
        assert_eq!(l.tensor(&r).unwrap(), expected);
        assert_eq!(q(&[1]).direct_sum(&DiagForm::from_ints(FieldCtx::Reals, &[1]).unwrap()), Err(QFormError::ContextMismatch));
    }

    #[test]
    fn pfister_examples() {
        let ctx = FieldCtx::Rationals;
        assert_eq!(pfister(ctx, &[ctx.from_int(-1)]).unwrap(), q(&[1, 1]));
        assert_eq!(pfister(ctx, &[]).unwrap(), q(&[1]));
        assert_eq!(pfister(ctx, &[ctx.from_int(0)]), Err(QFormError::ZeroEntry));
        let a = ctx.from_int(3);
        let b = ctx.one().sub(&a);
        let form = pfister(ctx, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(form.entries(), &[ctx.one(), b.neg(), a.neg(), a.mul(&b)]);
        let v = [ctx.one(), ctx.one(), ctx.one(), ctx.from_int(0)];
        assert!(form.is_isotropic_vector(&v));
        assert_eq!(form.presentation().unwrap().min_fold(), Some(2));
    }

    #[test]
    fn zero_entries_rejected() {
        assert_eq!(DiagForm::from_ints(FieldCtx::Rationals, &[1, 0]), Err(QFormError::ZeroEntry));
        let f5 = FieldCtx::finite(5).unwrap();
        assert_eq!(DiagForm::new(f5, vec![FieldCtx::Rationals.one()]), Err(QFormError::ElementOutsideContext("1".into())));
    }

    #[test]
    fn gw_arithmetic_tracks_rank() {
        let ctx = FieldCtx::Rationals;
        let a = GWElem::from_form(q(&[2]));
        let one = GWElem::integer(ctx, 1);
        let x = a.sub(&one).unwrap();
        assert_eq!(x.rank(), 0);
        assert_eq!(x.mul(&x).unwrap().rank(), 0);
        assert_eq!(x.witt_form(), q(&[2, -1]));
        assert_eq!(GWElem::integer(ctx, -2).rank(), -2);
    }
}
