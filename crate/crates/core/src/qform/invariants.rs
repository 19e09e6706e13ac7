use crate::numeric::{isolate_real_roots, ExtendedPoint, Rat, UPoly};

use super::{DiagForm, Elem, FieldCtx, GWElem, QFormError};

/// An ordering of an ordered context.
///
/// `Archimedean` is the ordering of the rationals (and the unique one of
/// `Reals`). Orderings of `R(t)` are addressed by side points `a±` and `±inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldOrdering {
    Archimedean,
    At(ExtendedPoint),
}

impl FieldOrdering {
    fn point_for(&self, ctx: FieldCtx) -> Result<Option<&ExtendedPoint>, QFormError> {
        match (ctx, self) {
            (FieldCtx::Complexes | FieldCtx::Finite(_), _) => Err(QFormError::UnorderedContext),
            (FieldCtx::Rationals | FieldCtx::Reals, FieldOrdering::Archimedean) => Ok(None),
            (FieldCtx::RationalFunctions, FieldOrdering::At(x)) => {
                if x.is_generic() {
                    Ok(Some(x))
                } else {
                    Err(QFormError::EntryVanishesAtOrdering)
                }
            }
            _ => Err(QFormError::OrderingMismatch),
        }
    }
}

/// One ordering in each region where the signs of all `elems` are constant.
///
/// Over `R(t)` the orderings are the side points and the two infinities; signs
/// of the entries only change at real zeros and poles, so a point just to the
/// right of each such root, together with `-inf`, meets every sign pattern.
pub fn sample_orderings(ctx: FieldCtx, elems: &[Elem]) -> Vec<FieldOrdering> {
    match ctx {
        FieldCtx::Rationals | FieldCtx::Reals => vec![FieldOrdering::Archimedean],
        FieldCtx::Complexes | FieldCtx::Finite(_) => Vec::new(),
        FieldCtx::RationalFunctions => {
            let mut prod = UPoly::one();
            for e in elems {
                if let Elem::Func(f) = e {
                    prod = &prod * &(f.num() * f.den());
                }
            }
            let mut out = vec![FieldOrdering::At(ExtendedPoint::neg_inf())];
            if !prod.is_constant() {
                let roots = isolate_real_roots(&prod).expect("nonzero product");
                for r in roots {
                    let right = r.rational_root().unwrap_or_else(|| r.hi.clone());
                    out.push(FieldOrdering::At(ExtendedPoint::plus(right)));
                }
            }
            out
        }
    }
}

/// Sum of the signs of the entries at the ordering.
pub fn signature(form: &DiagForm, ord: &FieldOrdering) -> Result<i64, QFormError> {
    let at = ord.point_for(form.ctx())?;
    let mut total = 0i64;
    for e in form.entries() {
        match e.sign_at(at) {
            0 => return Err(QFormError::EntryVanishesAtOrdering),
            s => total += s as i64,
        }
    }
    Ok(total)
}

pub fn gw_signature(x: &GWElem, ord: &FieldOrdering) -> Result<i64, QFormError> {
    Ok(signature(&x.plus, ord)? - signature(&x.minus, ord)?)
}

/// Signed discriminant `(-1)^(n(n-1)/2) * prod a_i`, as a canonical square
/// class representative.
pub fn discriminant(form: &DiagForm) -> Elem {
    let ctx = form.ctx();
    let n = form.dim();
    let mut d = form.entries().iter().fold(ctx.one(), |acc, a| acc.mul(a));
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        d = d.neg();
    }
    ctx.square_class(&d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub anisotropic_dim: usize,
    pub witt_index: usize,
}

/// Anisotropic dimension and Witt index over the contexts where these follow
/// from rank, signature and discriminant.
pub fn witt_decompose(form: &DiagForm) -> Result<WittDecomposition, QFormError> {
    let n = form.dim();
    let aniso = match form.ctx() {
        FieldCtx::Reals => signature(form, &FieldOrdering::Archimedean)?.unsigned_abs() as usize,
        FieldCtx::Complexes => n % 2,
        FieldCtx::Finite(_) => {
            if n % 2 == 1 {
                1
            } else if discriminant(form).is_one() {
                0
            } else {
                2
            }
        }
        FieldCtx::Rationals | FieldCtx::RationalFunctions => return Err(QFormError::UnsupportedContext),
    };
    Ok(WittDecomposition { anisotropic_dim: aniso, witt_index: (n - aniso) / 2 })
}

/// Evidence that a form is zero in the Witt ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroCertificate {
    /// Entries cancel in pairs `<c>, <-c>` up to squares.
    HyperbolicPairs,
    /// Every term of the recorded Pfister presentation has the given isotropic
    /// vector; isotropic Pfister forms are hyperbolic.
    IsotropicPfister(Vec<Vec<Elem>>),
    /// Anisotropic part is zero by the complete invariants of the field.
    Decided,
}

/// Multiset of square classes after removing pairs `<c>, <-c>`.
fn cancel_hyperbolic_pairs(form: &DiagForm) -> Vec<Elem> {
    let ctx = form.ctx();
    let mut left: Vec<Elem> = Vec::new();
    for e in form.entries() {
        let c = ctx.square_class(e);
        let opposite = ctx.square_class(&c.neg());
        if let Some(pos) = left.iter().position(|x| x == &opposite) {
            left.swap_remove(pos);
        } else {
            left.push(c);
        }
    }
    left
}

/// Isotropic vector of `<<args>>` from a slot that is a square or a pair of
/// slots summing to one. Coordinates follow the entry order of [`super::pfister`],
/// where slot `i` of `n` is bit `n - 1 - i` of the entry index.
pub fn pfister_isotropic_vector(ctx: FieldCtx, args: &[Elem]) -> Option<Vec<Elem>> {
    let n = args.len();
    let zero = ctx.from_int(0);
    let bit = |i: usize| 1usize << (n - 1 - i);
    for (i, a) in args.iter().enumerate() {
        if let Some(r) = ctx.sqrt_exact(a) {
            let mut v = vec![zero.clone(); 1 << n];
            v[0] = r;
            v[bit(i)] = ctx.one();
            return Some(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if args[i].add(&args[j]).is_one() {
                let mut v = vec![zero.clone(); 1 << n];
                v[0] = ctx.one();
                v[bit(i)] = ctx.one();
                v[bit(j)] = ctx.one();
                return Some(v);
            }
        }
    }
    None
}

/// Tries to certify that `form` is zero in the Witt ring.
pub fn witt_zero_certificate(form: &DiagForm) -> Option<ZeroCertificate> {
    let ctx = form.ctx();
    if cancel_hyperbolic_pairs(form).is_empty() {
        return Some(ZeroCertificate::HyperbolicPairs);
    }
    if let Some(p) = form.presentation() {
        let mut vectors = Vec::new();
        for t in &p.terms {
            let pf = super::pfister(ctx, &t.args).ok()?;
            let v = pfister_isotropic_vector(ctx, &t.args)?;
            if !pf.is_isotropic_vector(&v) {
                return None;
            }
            vectors.push(v);
        }
        if !vectors.is_empty() {
            return Some(ZeroCertificate::IsotropicPfister(vectors));
        }
    }
    match witt_decompose(form) {
        Ok(d) if d.anisotropic_dim == 0 => Some(ZeroCertificate::Decided),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

/// Whether the Witt class of `form` lies in `I^n`.
///
/// Necessary conditions are checked first (rank parity, discriminant,
/// signatures divisible by `2^n` at every sampled ordering); `Yes` needs a
/// recorded Pfister presentation of fold at least `n`, a zero certificate, or
/// a context where the checked invariants are complete.
pub fn in_fundamental_power(form: &DiagForm, n: u32, sample_orderings: &[FieldOrdering]) -> Membership {
    if n == 0 {
        return Membership::Yes;
    }
    let ctx = form.ctx();
    if form.dim() % 2 == 1 {
        return Membership::No;
    }
    if n >= 2 && !discriminant(form).is_one() {
        return Membership::No;
    }
    let modulus = 1i64.checked_shl(n).unwrap_or(i64::MAX);
    let mut orderings: Vec<FieldOrdering> = sample_orderings.to_vec();
    if matches!(ctx, FieldCtx::Rationals | FieldCtx::Reals) && !orderings.contains(&FieldOrdering::Archimedean) {
        orderings.push(FieldOrdering::Archimedean);
    }
    if ctx.is_ordered() {
        for ord in &orderings {
            match signature(form, ord) {
                Ok(s) if s % modulus != 0 => return Membership::No,
                _ => {}
            }
        }
    }
    if n <= 2 {
        // even rank gives I, trivial discriminant then gives I^2
        return Membership::Yes;
    }
    match ctx {
        FieldCtx::Reals | FieldCtx::Complexes | FieldCtx::Finite(_) => return Membership::Yes,
        _ => {}
    }
    if let Some(p) = form.presentation() {
        if p.min_fold().is_none_or(|k| k >= n as usize) {
            return Membership::Yes;
        }
    }
    if witt_zero_certificate(form).is_some() {
        return Membership::Yes;
    }
    Membership::Unknown
}

/// Closed point of the projective `t`-line with rational residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// The place `t = a`, uniformizer `t - a`.
    Finite(Rat),
    /// Uniformizer `1/t`.
    Infinity,
}

impl Place {
    /// From a polynomial generating the place; only degree one is supported.
    pub fn from_poly(p: &UPoly) -> Result<Place, QFormError> {
        if p.degree() != Some(1) {
            return Err(QFormError::UnsupportedPlace);
        }
        Ok(Place::Finite(-p.coeff(0) / p.coeff(1)))
    }
}

/// Second residue of a form over `R(t)` at a rational place. Entries with odd
/// valuation contribute the value of their unit part; the result lives over
/// the residue field, modelled by `Reals`.
pub fn second_residue(form: &DiagForm, place: &Place) -> Result<DiagForm, QFormError> {
    if form.ctx() != FieldCtx::RationalFunctions {
        return Err(QFormError::UnsupportedContext);
    }
    let mut out = Vec::new();
    for e in form.entries() {
        let Elem::Func(f) = e else { unreachable!("checked at construction") };
        let (k, u) = match place {
            Place::Finite(a) => f.valuation_at(a),
            Place::Infinity => f.valuation_at_infinity(),
        };
        if k % 2 != 0 {
            out.push(Elem::Rat(u));
        }
    }
    DiagForm::new(FieldCtx::Reals, out)
}

/// `<<-1>> ⊗ form = <1, 1> ⊗ form`.
pub fn mult_by_pfister_minus_one(form: &DiagForm) -> DiagForm {
    let ctx = form.ctx();
    super::pfister(ctx, &[ctx.from_int(-1)])
        .and_then(|p| p.tensor(form))
        .expect("same context")
}
