//! The real cycle class map on curves and the exponent bounds for its cokernel.
//!
//! On a punctured line the image of `γ^0` is the lattice of signature vectors
//! of unit forms; on curves with circles `γ^1` is made surjective by explicit
//! 0-cycles. Higher-dimensional statements enter only through
//! [`exponent_oracle`] and [`punctured_affine_report`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::abgrp::{quotient, AbGroupError, FgAbGroup, Lattice};
use crate::numeric::{format_rat, int, rat, rat_sqrt_exact, sign, sign_at, ExtendedPoint, Rat, UPoly};
use crate::realcurve::{CurveError, CurveModel, CurvePoint, RealLocus, TwistedCohomology};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Group(#[from] AbGroupError),
    #[error("the unit signature lattice is computed for punctured lines only")]
    UnsupportedCurve,
    #[error("twisted coefficients are not supported here")]
    UnsupportedTwist,
    #[error("point {0} is not on the curve")]
    PointOffCurve(String),
    #[error("unit vanishes at {0}")]
    UnitVanishes(String),
    #[error("dimension and codimension must be nonnegative")]
    NegativeInput,
    #[error("dimension {0} out of range")]
    BadDimension(i64),
}

/// Integer vector indexed by the components of the real locus.
pub type SignatureVector = Vec<BigInt>;

/// Free group on the component labels.
pub fn h0_ambient(locus: &RealLocus) -> FgAbGroup {
    FgAbGroup::free(locus.components().iter().map(|c| c.label()).collect())
}

/// Signs of a polynomial unit at the sample point of each component.
pub fn unit_signature(locus: &RealLocus, u: &UPoly) -> SignatureVector {
    locus
        .components()
        .iter()
        .map(|c| BigInt::from(sign_at(u, &ExtendedPoint::exact(locus.sample_point(c.id).x))))
        .collect()
}

/// Units `1, -1` and `t - a` for each puncture `a`.
fn punctured_line_units(punctures: &[Rat]) -> Vec<UPoly> {
    let mut units = vec![UPoly::one(), UPoly::constant(int(-1))];
    units.extend(punctures.iter().map(UPoly::linear_root));
    units
}

/// Image of `γ^0` on a punctured line: signature vectors of `<u>` for the
/// generating units. Sums and `<-u>` realize the rest of the lattice.
pub fn gamma0_image(locus: &RealLocus, twisted: bool) -> Result<Lattice, CycleError> {
    if twisted {
        return Err(CycleError::UnsupportedTwist);
    }
    let CurveModel::PuncturedLine { punctures } = locus.curve() else {
        return Err(CycleError::UnsupportedCurve);
    };
    let gens = punctured_line_units(punctures).iter().map(|u| unit_signature(locus, u)).collect();
    Ok(Lattice::new(h0_ambient(locus), gens)?)
}

/// `Z(1, ..., 1) + 2 Z^m`.
pub fn knebusch_gamma(m: usize) -> Lattice {
    let mut gens = vec![vec![BigInt::one(); m]];
    for i in 0..m {
        let mut e = vec![BigInt::zero(); m];
        e[i] = BigInt::from(2);
        gens.push(e);
    }
    Lattice::new(FgAbGroup::free_rank_n(m, "C"), gens).expect("free ambient")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokerReport {
    /// `None` for an infinite cokernel.
    pub order: Option<BigInt>,
    /// 0 for an infinite cokernel.
    pub exponent: BigInt,
    pub group: FgAbGroup,
}

pub fn coker_report(image: &Lattice) -> CokerReport {
    let group = quotient(image.ambient(), image).expect("image lies in a free ambient");
    CokerReport { order: group.order(), exponent: group.exponent(), group }
}

/// Images of `<<u>>` for the generating units of a punctured line under the
/// mod-2 class map `H^0(X, I/I^2) -> H^0(X(R), Z/2)`: half the signature
/// of `<1, -u>`, i.e. the components where `u < 0`.
pub fn mod2_unit_vectors(locus: &RealLocus) -> Result<Vec<Vec<bool>>, CycleError> {
    let CurveModel::PuncturedLine { punctures } = locus.curve() else {
        return Err(CycleError::UnsupportedCurve);
    };
    Ok(punctured_line_units(punctures)
        .iter()
        .map(|u| unit_signature(locus, u).iter().map(|s| s.is_negative()).collect())
        .collect())
}

/// Whether the vectors span `(Z/2)^m`.
pub fn spans_mod_two(vectors: &[Vec<bool>], m: usize) -> bool {
    let mut rows = vectors.to_vec();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= *y);
            }
        }
        rank += 1;
    }
    rank == m
}

/// A closed point of a curve with rational residue field, or a pair of
/// conjugate points over a rational `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedPoint {
    /// `(x, y)`, `y` omitted on lines.
    Rational { x: Rat, y: Option<Rat> },
    /// The two real points `(x, ±sqrt f(x))` with `f(x) > 0` not a square.
    ConjugatePair { x: Rat },
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Rational { x, y: Some(y) } => write!(f, "({}, {})", format_rat(x), format_rat(y)),
            ClosedPoint::Rational { x, y: None } => write!(f, "({})", format_rat(x)),
            ClosedPoint::ConjugatePair { x } => write!(f, "({}, ±sqrt f)", format_rat(x)),
        }
    }
}

/// The unit `a(x) + b(x) y` attached to a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleUnit {
    pub a: UPoly,
    pub b: UPoly,
}

impl CycleUnit {
    pub fn constant(c: i64) -> Self {
        CycleUnit { a: UPoly::constant(int(c)), b: UPoly::zero() }
    }

    /// `c * y`.
    pub fn y(c: i64) -> Self {
        CycleUnit { a: UPoly::zero(), b: UPoly::constant(int(c)) }
    }
}

impl fmt::Display for CycleUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*y", self.b),
            _ => write!(f, "{} + ({})*y", self.a, self.b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTerm {
    pub point: ClosedPoint,
    pub unit: CycleUnit,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroCycle {
    pub terms: Vec<CycleTerm>,
}

/// Sign of `alpha + beta * s` with `s = sqrt(v) > 0` irrational.
fn sign_with_sqrt(alpha: &Rat, beta: &Rat, v: &Rat) -> i8 {
    let (sa, sb) = (sign(alpha), sign(beta));
    if sb == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    if sa == 0 {
        return sb;
    }
    if alpha * alpha > beta * beta * v {
        sa
    } else {
        sb
    }
}

/// Class in `H^1(X(R), Z(L))` in the coordinates of `coh.h1`: each real place
/// on a circle adds the sign of the unit times the circle's generator, or the
/// `Z/2` generator on a twisted circle; places on intervals add nothing.
pub fn class_of_zero_cycle(
    locus: &RealLocus,
    twist: &[bool],
    coh: &TwistedCohomology,
    z: &ZeroCycle,
) -> Result<Vec<BigInt>, CycleError> {
    let f = locus.curve().f();
    let mut class = vec![BigInt::zero(); coh.h1.num_generators()];
    let mut add = |p: &CurvePoint, s: i8| -> Result<(), CycleError> {
        let c = locus.locate(p).ok_or_else(|| CycleError::PointOffCurve(p.to_string()))?;
        if let Some(i) = coh.h1_index(c) {
            class[i] += if twist[c] { 1 } else { s as i64 };
        }
        Ok(())
    };
    for t in &z.terms {
        let ua = |x: &Rat| t.unit.a.eval(x);
        let ub = |x: &Rat| t.unit.b.eval(x);
        match (&t.point, f) {
            (ClosedPoint::Rational { x, y }, Some(f)) => {
                let y = y.clone().ok_or_else(|| CycleError::PointOffCurve(t.point.to_string()))?;
                if &y * &y != f.eval(x) {
                    return Err(CycleError::PointOffCurve(t.point.to_string()));
                }
                let s = sign(&(ua(x) + ub(x) * &y));
                if s == 0 {
                    return Err(CycleError::UnitVanishes(t.point.to_string()));
                }
                add(&CurvePoint { x: x.clone(), branch: sign(&y) }, s)?;
            }
            (ClosedPoint::Rational { x, y: None }, None) => {
                let s = sign(&ua(x));
                if s == 0 {
                    return Err(CycleError::UnitVanishes(t.point.to_string()));
                }
                add(&CurvePoint { x: x.clone(), branch: 0 }, s)?;
            }
            (ClosedPoint::ConjugatePair { x }, Some(f)) => {
                let v = f.eval(x);
                if !v.is_positive() || rat_sqrt_exact(&v).is_some() {
                    return Err(CycleError::PointOffCurve(t.point.to_string()));
                }
                for branch in [1i8, -1] {
                    let beta = ub(x) * int(branch as i64);
                    let s = sign_with_sqrt(&ua(x), &beta, &v);
                    if s == 0 {
                        return Err(CycleError::UnitVanishes(t.point.to_string()));
                    }
                    add(&CurvePoint { x: x.clone(), branch }, s)?;
                }
            }
            _ => return Err(CycleError::PointOffCurve(t.point.to_string())),
        }
    }
    for (i, c) in coh.h1_components.iter().enumerate() {
        if twist[*c] {
            class[i] = class[i].mod_floor(&BigInt::from(2));
        }
    }
    Ok(class)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    Exact,
    DoubleOnly,
    Vacuous,
    Failed,
}

impl WitnessStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessStatus::Exact => "exact",
            WitnessStatus::DoubleOnly => "double_only",
            WitnessStatus::Vacuous => "vacuous",
            WitnessStatus::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub generator: String,
    pub witness: ZeroCycle,
    pub achieved: Vec<BigInt>,
    pub status: WitnessStatus,
}

/// Summary over certificates: `certified` when every generator is hit
/// exactly, `vacuous` when there is nothing to hit.
pub fn overall_status(certs: &[WitnessCertificate]) -> &'static str {
    if certs.iter().all(|c| c.status == WitnessStatus::Vacuous) {
        "vacuous"
    } else if certs.iter().all(|c| c.status == WitnessStatus::Exact) {
        "certified"
    } else if certs.iter().any(|c| c.status == WitnessStatus::Failed) {
        "failed"
    } else {
        "double_only"
    }
}

/// Rationals `p/q` in lowest terms with `max(|p|, q) = h`, in a fixed order.
fn rationals_of_height(h: i64) -> Vec<Rat> {
    if h == 0 {
        return vec![int(0)];
    }
    let mut out = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.abs().max(q) == h && p.gcd(&q) == 1 {
                out.push(rat(p, q));
            }
        }
    }
    out
}

fn element_eq(g: &FgAbGroup, a: &[BigInt], b: &[BigInt]) -> bool {
    let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    g.is_zero_element(&d).unwrap_or(false)
}

/// Surjectivity certificates for `γ^1` on a curve, one per `H^1` generator.
///
/// Per circle: a rational root of `f` on it, then a rational point of height
/// at most `budget`, otherwise a conjugate pair, which only reaches twice the
/// generator.
pub fn gamma_top_witness_search(
    locus: &RealLocus,
    twist: &[bool],
    coh: &TwistedCohomology,
    budget: u64,
) -> Result<Vec<WitnessCertificate>, CycleError> {
    let f = locus.curve().f();
    let rational_roots = f.map(crate::numeric::rational_roots).unwrap_or_default();
    let n1 = coh.h1.num_generators();
    let mut certs = Vec::new();
    for (i, &c) in coh.h1_components.iter().enumerate() {
        let mut generator = vec![BigInt::zero(); n1];
        generator[i] = BigInt::one();
        let mut witness = None;
        for r in &rational_roots {
            if locus.locate(&CurvePoint { x: r.clone(), branch: 0 }) == Some(c) {
                witness = Some(ClosedPoint::Rational { x: r.clone(), y: Some(int(0)) });
                break;
            }
        }
        'search: for h in 0..=budget as i64 {
            if witness.is_some() {
                break;
            }
            for x in rationals_of_height(h) {
                match f {
                    None => {
                        if locus.locate(&CurvePoint { x: x.clone(), branch: 0 }) == Some(c) {
                            witness = Some(ClosedPoint::Rational { x, y: None });
                            break 'search;
                        }
                    }
                    Some(f) => {
                        let Some(y) = rat_sqrt_exact(&f.eval(&x)) else { continue };
                        for y in [y.clone(), -y] {
                            let p = CurvePoint { x: x.clone(), branch: sign(&y) };
                            if locus.locate(&p) == Some(c) {
                                witness = Some(ClosedPoint::Rational { x, y: Some(y) });
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        let cycle = match witness {
            Some(point) => ZeroCycle { terms: vec![CycleTerm { point, unit: CycleUnit::constant(1) }] },
            None => {
                let sp = locus.sample_point(c);
                let f = f.expect("lines always have rational points");
                let v = f.eval(&sp.x);
                if let Some(y) = rat_sqrt_exact(&v) {
                    let y = if sp.branch < 0 { -y } else { y };
                    let point = ClosedPoint::Rational { x: sp.x.clone(), y: Some(y) };
                    ZeroCycle { terms: vec![CycleTerm { point, unit: CycleUnit::constant(1) }] }
                } else {
                    let point = ClosedPoint::ConjugatePair { x: sp.x.clone() };
                    let other = locus.locate(&CurvePoint { x: sp.x.clone(), branch: -sp.branch });
                    let mut terms = vec![CycleTerm { point: point.clone(), unit: CycleUnit::constant(1) }];
                    if other != Some(c) {
                        // the places lie on different circles: add <± y> to cancel the other one
                        terms.push(CycleTerm { point, unit: CycleUnit::y(sp.branch as i64) });
                    }
                    ZeroCycle { terms }
                }
            }
        };
        let achieved = class_of_zero_cycle(locus, twist, coh, &cycle)?;
        let double: Vec<BigInt> = generator.iter().map(|g| g * 2).collect();
        let status = if element_eq(&coh.h1, &achieved, &generator) {
            WitnessStatus::Exact
        } else if element_eq(&coh.h1, &achieved, &double) {
            WitnessStatus::DoubleOnly
        } else {
            WitnessStatus::Failed
        };
        certs.push(WitnessCertificate { generator: coh.h1.labels()[i].clone(), witness: cycle, achieved, status });
    }
    Ok(certs)
}

/// A bound `2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerOfTwo(pub u32);

impl PowerOfTwo {
    pub fn value(&self) -> BigInt {
        BigInt::one() << self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    pub fn divides(&self, other: &PowerOfTwo) -> bool {
        self.0 <= other.0
    }
}

impl fmt::Display for PowerOfTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_u64() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "2^{}", self.0),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleFlags {
    pub proper: bool,
    pub real_nonempty: bool,
    pub etale_vanishing: bool,
}

/// Exponent bounds for the cokernel and kernel of `γ^c` on a smooth variety of
/// dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    pub d: u32,
    pub c: u32,
    pub flags: OracleFlags,
    pub proven_bound: PowerOfTwo,
    pub conjectured_bound: PowerOfTwo,
    pub kernel_bound: PowerOfTwo,
    /// Labels of the statements attaining the proven bound, then those behind
    /// the conjectured and kernel bounds.
    pub sources: Vec<String>,
}

pub fn exponent_oracle(d: i64, c: i64, flags: OracleFlags) -> Result<ExponentReport, CycleError> {
    if d < 0 || c < 0 {
        return Err(CycleError::NegativeInput);
    }
    let du = u32::try_from(d).map_err(|_| CycleError::BadDimension(d))?;
    let cu = u32::try_from(c).map_err(|_| CycleError::BadDimension(c))?;
    let (d, c) = (du as u64, cu as u64);
    let mut candidates: Vec<(u64, &str)> = Vec::new();
    if c > d {
        candidates.push((0, "vanishing-above-dimension"));
    }
    if c == d {
        candidates.push((0, "top-codimension-surjectivity"));
    }
    if c + 1 == d {
        candidates.push((1, "codim-d-minus-1-exponent-2"));
    }
    if c + 2 == d && flags.etale_vanishing {
        candidates.push((2, "etale-vanishing-codim-d-minus-2"));
    }
    if c == 0 {
        candidates.push((d, "codim-0-exponent-2^d"));
    }
    if c <= d + 1 {
        candidates.push((d + 1 - c, "filtration-bound-2^(d+1-c)"));
    }
    let best = candidates.iter().map(|(k, _)| *k).min().expect("some bound applies");
    let mut sources: Vec<String> = candidates.iter().filter(|(k, _)| *k == best).map(|(_, l)| l.to_string()).collect();
    let conjectured = d.saturating_sub(c);
    sources.push("conjecture-max(1,2^(d-c))".into());
    let kernel = if c > d {
        sources.push("vanishing-above-dimension".into());
        0
    } else if c == d && (!flags.proper || flags.real_nonempty) {
        sources.push("top-codimension-injectivity".into());
        0
    } else {
        sources.push("kernel-bound-2^(2(d+1-c))".into());
        2 * (d + 1 - c)
    };
    sources.dedup();
    let p2 = |k: u64| PowerOfTwo(k as u32);
    Ok(ExponentReport {
        d: du,
        c: cu,
        flags,
        proven_bound: p2(best),
        conjectured_bound: p2(conjectured),
        kernel_bound: p2(kernel),
        sources,
    })
}

/// `A^d \ 0`, whose real locus retracts onto `S^(d-1)`, in codimension `d - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedAffineReport {
    pub d: u32,
    pub codimension: u32,
    /// `H^(d-1)(S^(d-1), Z) = Z`.
    pub target: FgAbGroup,
    /// `CH^(d-1)` vanishes; recorded, not computed.
    pub chow_group_vanishes: bool,
    pub image: Lattice,
    pub coker: CokerReport,
    /// The codimension `d - 1` bound 2 is attained.
    pub bound_is_optimal: bool,
}

pub fn punctured_affine_report(d: i64) -> Result<PuncturedAffineReport, CycleError> {
    if !(2..=u32::MAX as i64).contains(&d) {
        return Err(CycleError::BadDimension(d));
    }
    let target = FgAbGroup::free(vec![format!("S{}", d - 1)]);
    // the image is twice the image of the mod-2 class map, which is onto
    let image = Lattice::new(target.clone(), vec![vec![BigInt::from(2)]])?;
    let coker = coker_report(&image);
    let bound = exponent_oracle(d, d - 1, OracleFlags::default())?;
    let bound_is_optimal = coker.exponent == bound.proven_bound.value();
    Ok(PuncturedAffineReport {
        d: d as u32,
        codimension: d as u32 - 1,
        target,
        chow_group_vanishes: true,
        image,
        coker,
        bound_is_optimal,
    })
}
