//! JSON reports. Field order in the structs is the key order in the output.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use realcycle::abgrp::FgAbGroup;
use realcycle::cycleclass::{
    class_of_zero_cycle, coker_report, exponent_oracle, gamma0_image, gamma_top_witness_search, knebusch_gamma,
    overall_status, ClosedPoint, CycleError, ExponentReport, OracleFlags, PowerOfTwo, WitnessCertificate,
};
use realcycle::numeric::format_rat;
use realcycle::qform::{
    discriminant, in_fundamental_power, sample_orderings, second_residue, signature, witt_decompose,
    witt_zero_certificate, DiagForm, FieldCtx, FieldOrdering, Membership, Place, QFormError, ZeroCertificate,
};
use realcycle::realcurve::{
    real_components, twist_class, twisted_cohomology, CurveError, CurveModel, CurvePoint, RealLocus, RealRoot,
    TwistDivisor, XEnd,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::parse::{form_elements, ordering_label, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<CycleError> for CliError {
    fn from(e: CycleError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<QFormError> for CliError {
    fn from(e: QFormError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

/// Integers as JSON numbers when they fit, else decimal strings.
pub fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn power_value(p: &PowerOfTwo) -> Value {
    match p.to_u64() {
        Some(v) => json!(v),
        None => json!(p.to_string()),
    }
}

#[derive(Serialize)]
pub struct GroupJson {
    pub rank: usize,
    pub torsion: Vec<Value>,
}

impl GroupJson {
    pub fn of(g: &FgAbGroup) -> Self {
        let inv = g.invariants();
        GroupJson { rank: inv.free_rank, torsion: inv.torsion.iter().map(int_value).collect() }
    }
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub id: String,
    pub kind: &'static str,
    pub compact: bool,
    pub x_range: [Value; 2],
    pub twist: &'static str,
}

#[derive(Serialize)]
pub struct CokerJson {
    pub order: Value,
    pub exponent: Value,
}

#[derive(Serialize)]
pub struct Gamma0Json {
    pub image_basis: Vec<Vec<Value>>,
    pub coker: CokerJson,
    pub knebusch_match: bool,
}

#[derive(Serialize)]
pub struct CycleTermJson {
    pub point: Value,
    pub unit: String,
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub generator: String,
    pub status: &'static str,
    pub cycle: Vec<CycleTermJson>,
    pub achieved: Vec<Value>,
}

#[derive(Serialize)]
pub struct GammaTopJson {
    pub status: &'static str,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Serialize)]
pub struct FlagsJson {
    pub proper: bool,
    pub real_nonempty: bool,
    pub etale_vanishing: bool,
}

#[derive(Serialize)]
pub struct BoundsJson {
    pub d: u32,
    pub c: u32,
    pub flags: FlagsJson,
    pub proven: Value,
    pub conjectured: Value,
    pub kernel: Value,
    pub sources: Vec<String>,
}

impl BoundsJson {
    pub fn of(r: &ExponentReport) -> Self {
        BoundsJson {
            d: r.d,
            c: r.c,
            flags: FlagsJson {
                proper: r.flags.proper,
                real_nonempty: r.flags.real_nonempty,
                etale_vanishing: r.flags.etale_vanishing,
            },
            proven: power_value(&r.proven_bound),
            conjectured: power_value(&r.conjectured_bound),
            kernel: power_value(&r.kernel_bound),
            sources: r.sources.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct CurveReport {
    pub curve: String,
    pub components: Vec<ComponentJson>,
    pub h0: GroupJson,
    pub h1: GroupJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<Gamma0Json>,
    pub gamma_top: GammaTopJson,
    pub bounds: BoundsJson,
}

fn end_value(e: &XEnd) -> Value {
    match e {
        XEnd::NegInf => json!("-inf"),
        XEnd::PosInf => json!("inf"),
        XEnd::Puncture(p) | XEnd::Root(RealRoot::Exact(p)) => json!(format_rat(p)),
        XEnd::Root(RealRoot::Isolated(i)) => json!({ "isolating": [format_rat(&i.lo), format_rat(&i.hi)] }),
    }
}

fn point_value(p: &ClosedPoint) -> Value {
    match p {
        ClosedPoint::Rational { x, y: Some(y) } => json!({ "x": format_rat(x), "y": format_rat(y) }),
        ClosedPoint::Rational { x, y: None } => json!({ "x": format_rat(x) }),
        ClosedPoint::ConjugatePair { x } => json!({ "x": format_rat(x), "conjugate_pair": true }),
    }
}

fn witness_json(c: &WitnessCertificate) -> WitnessJson {
    WitnessJson {
        generator: c.generator.clone(),
        status: c.status.as_str(),
        cycle: c
            .witness
            .terms
            .iter()
            .map(|t| CycleTermJson { point: point_value(&t.point), unit: t.unit.to_string() })
            .collect(),
        achieved: c.achieved.iter().map(int_value).collect(),
    }
}

/// Full pipeline for one curve: components, twist, cohomology, `γ^0` on
/// punctured lines, `γ`-top witnesses and the exponent bounds.
pub fn curve_report(model: &CurveModel, twist: &[(CurvePoint, i64)], budget: u64) -> Result<CurveReport, CliError> {
    let locus: RealLocus = real_components(model)?;
    let divisor = TwistDivisor::from_points(&locus, twist)?;
    let bits = twist_class(&locus, &divisor)?;
    let coh = twisted_cohomology(locus.components(), &bits);
    let components = locus
        .components()
        .iter()
        .map(|c| {
            let (lo, hi) = locus.x_range(c.id);
            ComponentJson {
                id: c.label(),
                kind: if c.is_circle() { "circle" } else { "interval" },
                compact: c.compact,
                x_range: [end_value(&lo), end_value(&hi)],
                twist: if bits[c.id] { "nontrivial" } else { "trivial" },
            }
        })
        .collect();
    let punctured = matches!(model, CurveModel::PuncturedLine { .. });
    let gamma0 = if punctured {
        let image = gamma0_image(&locus, false)?;
        let coker = coker_report(&image);
        let basis = image.hermite_basis();
        Some(Gamma0Json {
            image_basis: basis.iter().map(|v| v.iter().map(int_value).collect()).collect(),
            coker: CokerJson {
                order: coker.order.as_ref().map(int_value).unwrap_or(json!("infinite")),
                exponent: int_value(&coker.exponent),
            },
            knebusch_match: basis == knebusch_gamma(locus.components().len()).hermite_basis(),
        })
    } else {
        None
    };
    let certs = gamma_top_witness_search(&locus, &bits, &coh, budget)?;
    for c in &certs {
        debug_assert_eq!(class_of_zero_cycle(&locus, &bits, &coh, &c.witness).ok().as_ref(), Some(&c.achieved));
    }
    let proper = matches!(model, CurveModel::ProjectiveLine | CurveModel::Hyperelliptic { projective: true, .. });
    let flags = OracleFlags { proper, real_nonempty: !locus.is_empty(), etale_vanishing: false };
    let bounds = exponent_oracle(1, if punctured { 0 } else { 1 }, flags)?;
    Ok(CurveReport {
        curve: model.to_string(),
        components,
        h0: GroupJson::of(&coh.h0),
        h1: GroupJson::of(&coh.h1),
        gamma0,
        gamma_top: GammaTopJson { status: overall_status(&certs), witnesses: certs.iter().map(witness_json).collect() },
        bounds: BoundsJson::of(&bounds),
    })
}

#[derive(Serialize)]
pub struct BoundReport {
    pub bounds: BoundsJson,
}

pub fn bound_report(d: i64, c: i64, flags: OracleFlags) -> Result<BoundReport, CliError> {
    Ok(BoundReport { bounds: BoundsJson::of(&exponent_oracle(d, c, flags)?) })
}

#[derive(Serialize)]
pub struct SignatureJson {
    pub ordering: String,
    pub value: i64,
}

#[derive(Serialize)]
pub struct WittJson {
    pub anisotropic_dim: usize,
    pub witt_index: usize,
}

#[derive(Serialize)]
pub struct MembershipJson {
    pub n: u32,
    pub member: &'static str,
}

#[derive(Serialize)]
pub struct ResidueJson {
    pub place: String,
    pub form: String,
}

#[derive(Serialize)]
pub struct FormReport {
    pub form: String,
    pub field: String,
    pub dim: usize,
    pub discriminant: String,
    pub signatures: Vec<SignatureJson>,
    pub witt: Option<WittJson>,
    pub fundamental_ideal: Vec<MembershipJson>,
    pub zero_certificate: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residues: Vec<ResidueJson>,
}

fn membership(m: Membership) -> &'static str {
    match m {
        Membership::Yes => "yes",
        Membership::No => "no",
        Membership::Unknown => "unknown",
    }
}

/// Invariants of a diagonal form at the given orderings (all sign patterns
/// when none are given) and second residues at the given places.
pub fn form_report(
    ctx: FieldCtx,
    entries: &[realcycle::numeric::RatFunc],
    orderings: &[FieldOrdering],
    places: &[Place],
) -> Result<FormReport, CliError> {
    let elems = form_elements(ctx, entries)?;
    let form = DiagForm::new(ctx, elems)?;
    let ords = if orderings.is_empty() { sample_orderings(ctx, form.entries()) } else { orderings.to_vec() };
    let mut signatures = Vec::new();
    for o in &ords {
        signatures.push(SignatureJson { ordering: ordering_label(o), value: signature(&form, o)? });
    }
    let witt = witt_decompose(&form).ok().map(|w| WittJson { anisotropic_dim: w.anisotropic_dim, witt_index: w.witt_index });
    let sample = sample_orderings(ctx, form.entries());
    let fundamental_ideal =
        (1..=3).map(|n| MembershipJson { n, member: membership(in_fundamental_power(&form, n, &sample)) }).collect();
    let zero_certificate = witt_zero_certificate(&form).map(|z| match z {
        ZeroCertificate::HyperbolicPairs => "hyperbolic_pairs",
        ZeroCertificate::IsotropicPfister(_) => "isotropic_pfister",
        ZeroCertificate::Decided => "decided",
    });
    let mut residues = Vec::new();
    for p in places {
        let r = second_residue(&form, p)?;
        let place = match p {
            Place::Finite(a) => format!("t={}", format_rat(a)),
            Place::Infinity => "inf".into(),
        };
        residues.push(ResidueJson { place, form: r.to_string() });
    }
    Ok(FormReport {
        form: form.to_string(),
        field: ctx.to_string(),
        dim: form.dim(),
        discriminant: discriminant(&form).to_string(),
        signatures,
        witt,
        fundamental_ideal,
        zero_certificate,
        residues,
    })
}

/// Serializes with two-space indentation and a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
