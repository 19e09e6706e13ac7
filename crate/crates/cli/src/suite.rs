//! The curated check suite behind `realcycle suite`.
//!
//! Each row names a group, a check and the statement it exercises. Rows are
//! independent and deterministic (seeded RNG).

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realcycle::abgrp::{check_exact, FgAbGroup, IntMatrix, Lattice};
use realcycle::cycleclass::{
    coker_report, exponent_oracle, gamma0_image, gamma_top_witness_search, knebusch_gamma, mod2_unit_vectors,
    punctured_affine_report, spans_mod_two, OracleFlags, WitnessStatus,
};
use realcycle::mwk::{gw_identity_check, KmwElem};
use realcycle::numeric::{count_real_roots, int, isolate_real_roots, rat, sign_at, RatFunc};
use realcycle::qform::{
    mult_by_pfister_minus_one, pfister, sample_orderings, signature, witt_zero_certificate, DiagForm, Elem, FieldCtx,
    FieldOrdering, ZeroCertificate,
};
use realcycle::realcurve::{
    bockstein_ladder, real_components, twist_class, twisted_cohomology, CurveModel, CurvePoint, RealLocus,
    TwistDivisor,
};
use realcycle::{ExtendedPoint, UPoly};

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Negative control: compare the punctured-line images against `Z^m`
    /// instead of the signature lattice.
    pub inject_wrong_gamma: bool,
}

pub struct Row {
    pub group: &'static str,
    pub name: &'static str,
    pub label: &'static str,
    check: fn(&SuiteOptions) -> Result<(), String>,
}

impl Row {
    pub fn id(&self) -> String {
        format!("{}/{}", self.group, self.name)
    }
}

pub struct Outcome {
    pub id: String,
    pub label: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn line(p: &[Rat]) -> RealLocus {
    real_components(&CurveModel::punctured_line(p.to_vec()).expect("distinct")).expect("line")
}

type Rat = realcycle::Rat;

fn hyper(c: &[i64], projective: bool) -> RealLocus {
    real_components(&CurveModel::hyperelliptic(UPoly::from_ints(c), projective).expect("square-free")).expect("curve")
}

fn expected_gamma(m: usize, opts: &SuiteOptions) -> Lattice {
    if opts.inject_wrong_gamma {
        let gens = (0..m).map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        Lattice::new(FgAbGroup::free_rank_n(m, "C"), gens).expect("free")
    } else {
        knebusch_gamma(m)
    }
}

fn gamma0_matches(p: &[Rat], opts: &SuiteOptions) -> Result<(), String> {
    let locus = line(p);
    let image = gamma0_image(&locus, false).map_err(|e| e.to_string())?;
    let m = locus.components().len();
    ensure(image.hermite_basis() == expected_gamma(m, opts).hermite_basis(), format!("image differs from Γ for m = {m}"))?;
    ensure(spans_mod_two(&mod2_unit_vectors(&locus).map_err(|e| e.to_string())?, m), "mod-2 classes do not span")
}

fn check_a1_minus_0(opts: &SuiteOptions) -> Result<(), String> {
    gamma0_matches(&[int(0)], opts)?;
    let r = coker_report(&gamma0_image(&line(&[int(0)]), false).unwrap());
    ensure(r.order == Some(BigInt::from(2)) && r.exponent == BigInt::from(2), "coker is not Z/2")
}

fn check_a1_minus_01(opts: &SuiteOptions) -> Result<(), String> {
    gamma0_matches(&[int(0), int(1)], opts)?;
    let r = coker_report(&gamma0_image(&line(&[int(0), int(1)]), false).unwrap());
    ensure(r.order == Some(BigInt::from(4)) && r.exponent == BigInt::from(2), "coker is not (Z/2)^2")
}

fn check_random_lines(opts: &SuiteOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a6d);
    for _ in 0..100 {
        let k = rng.gen_range(0..=6);
        let mut p: Vec<Rat> = Vec::new();
        while p.len() < k {
            let r = rat(rng.gen_range(-40..=40), rng.gen_range(1..=9));
            if !p.contains(&r) {
                p.push(r);
            }
        }
        gamma0_matches(&p, opts)?;
    }
    Ok(())
}

fn all_exact(l: &RealLocus, circles: usize) -> Result<(), String> {
    let bits = vec![false; l.components().len()];
    let coh = twisted_cohomology(l.components(), &bits);
    let certs = gamma_top_witness_search(l, &bits, &coh, 50).map_err(|e| e.to_string())?;
    ensure(certs.len() == circles, format!("expected {circles} generators, got {}", certs.len()))?;
    ensure(certs.iter().all(|c| c.status == WitnessStatus::Exact), "a generator is not hit exactly")?;
    for c in &certs {
        let roots_only = c.witness.terms.iter().all(|t| {
            matches!(&t.point, realcycle::cycleclass::ClosedPoint::Rational { y: Some(y), .. } if y == &int(0))
        });
        ensure(roots_only, "witness is not a root endpoint")?;
    }
    Ok(())
}

fn check_one_circle(_: &SuiteOptions) -> Result<(), String> {
    all_exact(&hyper(&[1, 0, -1], false), 1)
}

fn check_two_circles(_: &SuiteOptions) -> Result<(), String> {
    all_exact(&hyper(&[-4, 0, 5, 0, -1], false), 2)
}

fn check_elliptic(_: &SuiteOptions) -> Result<(), String> {
    all_exact(&hyper(&[0, -1, 0, 1], true), 2)
}

fn check_twisted_circle(_: &SuiteOptions) -> Result<(), String> {
    let l = hyper(&[1, 0, -1], false);
    let d = TwistDivisor::from_points(&l, &[(CurvePoint { x: rat(1, 3), branch: 1 }, 1)]).map_err(|e| e.to_string())?;
    let bits = twist_class(&l, &d).map_err(|e| e.to_string())?;
    let coh = twisted_cohomology(l.components(), &bits);
    ensure(coh.h0.is_trivial(), "H^0 is not 0")?;
    ensure(coh.h1.order() == Some(BigInt::from(2)), "H^1 is not Z/2")?;
    let certs = gamma_top_witness_search(&l, &bits, &coh, 50).map_err(|e| e.to_string())?;
    ensure(certs.len() == 1 && certs[0].status == WitnessStatus::Exact, "Z/2 generator not witnessed")
}

fn corpus() -> Vec<RealLocus> {
    let mut out = vec![
        line(&[]),
        line(&[int(0)]),
        line(&[int(0), int(1)]),
        real_components(&CurveModel::ProjectiveLine).unwrap(),
    ];
    for (c, p) in [
        (&[1i64, 0, -1][..], false),
        (&[-4, 0, 5, 0, -1], false),
        (&[0, -1, 0, 1], true),
        (&[0, -1, 0, 1], false),
        (&[-1, 0, -1], false),
        (&[1, 0, 1], true),
        (&[1, 0, 0, 0, 1], true),
        (&[-2, 0, 1], true),
    ] {
        out.push(hyper(c, p));
    }
    out
}

fn check_ladders(_: &SuiteOptions) -> Result<(), String> {
    for l in corpus() {
        let n = l.components().len();
        for mask in 0u32..(1 << n) {
            let bits: Vec<bool> = l.components().iter().map(|c| c.is_circle() && mask >> c.id & 1 == 1).collect();
            let seq = bockstein_ladder(l.components(), &bits);
            let ex = check_exact(&seq).map_err(|e| e.to_string())?;
            ensure(ex.is_exact(), format!("{} with twist {bits:?} fails at node {:?}", l.curve(), ex.failure))?;
        }
    }
    Ok(())
}

fn check_oracle(_: &SuiteOptions) -> Result<(), String> {
    let none = OracleFlags::default();
    let et = OracleFlags { etale_vanishing: true, ..none };
    for d in 0..=6i64 {
        for c in 0..=d {
            let r = exponent_oracle(d, c, et).map_err(|e| e.to_string())?;
            let plain = exponent_oracle(d, c, none).map_err(|e| e.to_string())?;
            let expected = if c == d {
                0
            } else if c == d - 1 {
                1
            } else if c == d - 2 {
                2
            } else if c == 0 {
                d
            } else {
                d + 1 - c
            };
            ensure(r.proven_bound.0 as i64 == expected, format!("({d},{c}) proven 2^{}", r.proven_bound.0))?;
            ensure(r.conjectured_bound.0 as i64 == (d - c).max(0), format!("({d},{c}) conjectured"))?;
            ensure(r.conjectured_bound.divides(&r.proven_bound), format!("({d},{c}) divisibility"))?;
            ensure(plain.proven_bound >= r.proven_bound, "flags increased a bound")?;
        }
    }
    Ok(())
}

fn check_punctured_affine(_: &SuiteOptions) -> Result<(), String> {
    for d in [2, 3] {
        let r = punctured_affine_report(d).map_err(|e| e.to_string())?;
        ensure(r.image.hermite_basis() == vec![vec![BigInt::from(2)]], "image is not 2Z")?;
        ensure(r.coker.exponent == BigInt::from(2) && r.bound_is_optimal, "coker exponent is not 2")?;
    }
    Ok(())
}

fn random_func(rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let deg = rng.gen_range(0..=3);
        let num: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
        let den: Vec<i64> = (0..=rng.gen_range(0..=1)).map(|_| rng.gen_range(-3..=3)).collect();
        if let Some(f) = RatFunc::new(UPoly::from_ints(&num), UPoly::from_ints(&den)) {
            if !f.is_zero() {
                return Elem::Func(f);
            }
        }
    }
}

fn random_ordering(rng: &mut ChaCha8Rng) -> FieldOrdering {
    match rng.gen_range(0..6) {
        0 => FieldOrdering::At(ExtendedPoint::pos_inf()),
        1 => FieldOrdering::At(ExtendedPoint::neg_inf()),
        k => {
            let a = rat(rng.gen_range(-12..=12), rng.gen_range(1..=4));
            FieldOrdering::At(if k % 2 == 0 { ExtendedPoint::plus(a) } else { ExtendedPoint::minus(a) })
        }
    }
}

fn check_doubling(_: &SuiteOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(235);
    let ctx = FieldCtx::RationalFunctions;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let form = DiagForm::new(ctx, (0..n).map(|_| random_func(&mut rng)).collect()).unwrap();
        let doubled = mult_by_pfister_minus_one(&form);
        for _ in 0..10 {
            let o = random_ordering(&mut rng);
            let (a, b) = (signature(&doubled, &o).map_err(|e| e.to_string())?, signature(&form, &o).unwrap());
            ensure(a == 2 * b, format!("signature {a} != 2*{b} for {form}"))?;
        }
    }
    Ok(())
}

fn check_gw_identity(_: &SuiteOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let q = FieldCtx::Rationals;
    for _ in 0..100 {
        let mut n = 0;
        while n == 0 {
            n = rng.gen_range(-99..=99);
        }
        let a = q.constant(&rat(n, rng.gen_range(1..=30)));
        ensure(gw_identity_check(q, &a, &[]).map_err(|e| e.to_string())?, format!("fails at {a}"))?;
        let f = random_func(&mut rng);
        let ords = sample_orderings(FieldCtx::RationalFunctions, std::slice::from_ref(&f));
        ensure(gw_identity_check(FieldCtx::RationalFunctions, &f, &ords).map_err(|e| e.to_string())?, format!("fails at {f}"))?;
    }
    Ok(())
}

fn check_steinberg(_: &SuiteOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let q = FieldCtx::Rationals;
    for _ in 0..200 {
        let a = q.constant(&rat(rng.gen_range(-500..=500), rng.gen_range(1..=50)));
        if a.is_zero() || a.is_one() {
            continue;
        }
        let b = q.one().sub(&a);
        let pf = pfister(q, &[a.clone(), b.clone()]).unwrap();
        let v = [q.one(), q.one(), q.one(), q.from_int(0)];
        ensure(pf.is_isotropic_vector(&v), format!("(1,1,1,0) not isotropic for a = {a}"))?;
        ensure(
            matches!(witt_zero_certificate(&pf), Some(ZeroCertificate::IsotropicPfister(_) | ZeroCertificate::HyperbolicPairs)),
            "no zero certificate",
        )?;
        ensure(KmwElem::symbol(q, &[a, b]).unwrap().milnor().is_zero(), "Milnor part survives")?;
    }
    Ok(())
}

fn check_abgrp_laws(_: &SuiteOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let m = IntMatrix::from_i64(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        let g = FgAbGroup::new((0..n).map(|i| format!("g{i}")).collect(), m).unwrap();
        let Some(order) = g.order() else { continue };
        if order > BigInt::from(200) {
            continue;
        }
        // subgroup generated by the first generator and its quotient
        let mut w = vec![BigInt::from(0); n];
        w[0] = BigInt::from(1);
        let sub = g.subgroup(&IntMatrix::from_columns(n, &[w.clone()])).unwrap();
        let quo = g.quotient_by(&IntMatrix::from_columns(n, &[w])).unwrap();
        let (e, e1, e2) = (g.exponent(), sub.exponent(), quo.exponent());
        ensure((&e1 * &e2) % &e == BigInt::from(0), "exponent does not divide e' e''")?;
        ensure(&e % &e1 == BigInt::from(0) && &e % &e2 == BigInt::from(0), "sub/quotient exponent does not divide")?;
        let prod = g.direct_sum(&sub);
        ensure(prod.has_exponent(&e), "product exponent")?;
        ensure(sub.order().zip(quo.order()).map(|(a, b)| a * b) == Some(order), "orders do not multiply")?;
    }
    Ok(())
}

fn check_sturm(_: &SuiteOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let k = rng.gen_range(1..=7);
        let mut roots: Vec<Rat> = Vec::new();
        while roots.len() < k {
            let r = rat(rng.gen_range(-30..=30), rng.gen_range(1..=5));
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let p = UPoly::from_roots(&roots);
        let total = count_real_roots(&p, &ExtendedPoint::neg_inf(), &ExtendedPoint::pos_inf()).map_err(|e| e.to_string())?;
        ensure(total == k, format!("Sturm count {total} != {k}"))?;
        let ivs = isolate_real_roots(&p).map_err(|e| e.to_string())?;
        ensure(ivs.len() == k, "wrong number of isolating intervals")?;
        for iv in ivs {
            let (a, b) = (sign_at(&p, &ExtendedPoint::exact(iv.lo.clone())), sign_at(&p, &ExtendedPoint::exact(iv.hi.clone())));
            ensure(a * b < 0, "interval without a sign change")?;
            ensure(roots.iter().filter(|r| &iv.lo < *r && *r < &iv.hi).count() == 1, "interval holds several roots")?;
        }
    }
    Ok(())
}

pub fn rows() -> Vec<Row> {
    vec![
        Row { group: "gamma0", name: "a1-minus-0", label: "knebusch-signature-lattice", check: check_a1_minus_0 },
        Row { group: "gamma0", name: "a1-minus-0-1", label: "knebusch-signature-lattice", check: check_a1_minus_01 },
        Row { group: "gamma0", name: "random-punctured-lines", label: "knebusch-equality+mod2-surjectivity", check: check_random_lines },
        Row { group: "gamma-top", name: "one-circle", label: "top-codimension-surjectivity", check: check_one_circle },
        Row { group: "gamma-top", name: "two-circles", label: "top-codimension-surjectivity", check: check_two_circles },
        Row { group: "gamma-top", name: "elliptic-projective", label: "top-codimension-surjectivity", check: check_elliptic },
        Row { group: "twist", name: "twisted-circle", label: "twisted-coefficients", check: check_twisted_circle },
        Row { group: "ladder", name: "corpus", label: "bockstein-ladder-exact-rows", check: check_ladders },
        Row { group: "bounds", name: "oracle-table", label: "filtration-bound-2^(d+1-c)", check: check_oracle },
        Row { group: "bounds", name: "punctured-affine", label: "punctured-affine-optimality", check: check_punctured_affine },
        Row { group: "qform", name: "signature-doubling", label: "pfister-minus-one-doubles-signature", check: check_doubling },
        Row { group: "mwk", name: "gw-identity", label: "gw-as-degree-0-kmw", check: check_gw_identity },
        Row { group: "mwk", name: "steinberg", label: "steinberg-relation", check: check_steinberg },
        Row { group: "abgrp", name: "exponent-laws", label: "exponent-calculus", check: check_abgrp_laws },
        Row { group: "numeric", name: "sturm", label: "sturm-root-counting", check: check_sturm },
    ]
}

/// Runs the rows whose id contains `filter`, in corpus order.
pub fn run(filter: Option<&str>, opts: &SuiteOptions) -> Vec<Outcome> {
    rows()
        .into_iter()
        .filter(|r| filter.is_none_or(|f| r.id().contains(f)))
        .map(|r| {
            let start = Instant::now();
            let res = (r.check)(opts);
            Outcome {
                id: r.id(),
                label: r.label,
                passed: res.is_ok(),
                detail: res.err().unwrap_or_default(),
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}
