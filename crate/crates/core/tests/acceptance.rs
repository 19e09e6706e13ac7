//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N ... PASS|FAIL` line with its elapsed time and limit.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realcycle::abgrp::{check_exact, FgAbGroup, GroupMap, IntMatrix, Lattice};
use realcycle::cycleclass::{
    class_of_zero_cycle, coker_report, exponent_oracle, gamma0_image, gamma_top_witness_search, mod2_unit_vectors,
    punctured_affine_report, ClosedPoint, CycleTerm, CycleUnit, OracleFlags, WitnessStatus, ZeroCycle,
};
use realcycle::mwk::{gw_identity_check, Comparison, KmwElem};
use realcycle::numeric::{count_real_roots, int, isolate_real_roots, rat, sign_at, RatFunc};
use realcycle::qform::{
    mult_by_pfister_minus_one, pfister, sample_orderings, signature, witt_zero_certificate, DiagForm, Elem, FieldCtx,
    FieldOrdering, GWElem,
};
use realcycle::realcurve::{
    bockstein_ladder, real_components, twist_class, twisted_cohomology, CurveModel, CurvePoint, RealLocus,
    TwistDivisor,
};
use realcycle::{ExtendedPoint, Rat, UPoly};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `body`, prints the verdict line and fails the test on error or overrun.
fn criterion(n: u32, name: &str, limit: Option<Duration>, body: impl FnOnce() -> Check) {
    let start = Instant::now();
    let res = body();
    let elapsed = start.elapsed();
    let late = limit.is_some_and(|l| elapsed > l);
    let verdict = if res.is_ok() && !late { "PASS" } else { "FAIL" };
    let limit_s = limit.map_or("none".to_string(), |l| format!("{}ms", l.as_millis()));
    println!("criterion {n:>2} {name:<44} {verdict} ({}ms, limit {limit_s})", elapsed.as_millis());
    if let Err(e) = res {
        panic!("criterion {n} failed: {e}");
    }
    assert!(!late, "criterion {n} exceeded its time limit");
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn line(p: &[Rat]) -> RealLocus {
    real_components(&CurveModel::punctured_line(p.to_vec()).unwrap()).unwrap()
}

fn hyper(c: &[i64], projective: bool) -> RealLocus {
    real_components(&CurveModel::hyperelliptic(UPoly::from_ints(c), projective).unwrap()).unwrap()
}

fn unit_vec(m: usize, i: usize, k: i64) -> Vec<BigInt> {
    (0..m).map(|j| big(if i == j { k } else { 0 })).collect()
}

fn lattice_contains(l: &Lattice, v: &[BigInt]) -> bool {
    l.contains(v).unwrap()
}

/// Rank over GF(2) by elimination on bit rows.
fn gf2_rank(vectors: &[Vec<bool>]) -> usize {
    let mut rows: Vec<u64> =
        vectors.iter().map(|v| v.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))).collect();
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row >> bit & 1 == 1 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Integer combinations with coefficients in `-k..=k` of `gens` that hit `target`.
fn small_combination_exists(gens: &[Vec<i64>], target: &[i64], k: i64) -> bool {
    fn go(gens: &[Vec<i64>], acc: &mut Vec<i64>, target: &[i64], k: i64) -> bool {
        let Some((g, rest)) = gens.split_first() else { return acc.as_slice() == target };
        for c in -k..=k {
            for (a, x) in acc.iter_mut().zip(g) {
                *a += c * x;
            }
            let hit = go(rest, acc, target, k);
            for (a, x) in acc.iter_mut().zip(g) {
                *a -= c * x;
            }
            if hit {
                return true;
            }
        }
        false
    }
    go(gens, &mut vec![0; target.len()], target, k)
}

#[test]
fn criterion_01_line_minus_origin() {
    criterion(1, "A1 minus 0: image = Gamma, coker Z/2", Some(Duration::from_secs(1)), || {
        let locus = line(&[int(0)]);
        let image = gamma0_image(&locus, false).map_err(|e| e.to_string())?;
        // Gamma = Z(1,1) + 2Z^2 has Hermite basis (1,1), (0,2).
        ensure(image.hermite_basis() == vec![vec![big(1), big(1)], vec![big(0), big(2)]], || {
            format!("image basis {:?}", image.hermite_basis())
        })?;
        for g in image.generators() {
            ensure(g[0].is_odd() == g[1].is_odd(), || format!("generator {g:?} outside Gamma"))?;
        }
        let r = coker_report(&image);
        ensure(r.order == Some(big(2)) && r.exponent == big(2), || format!("coker {:?} exp {}", r.order, r.exponent))
    });
}

#[test]
fn criterion_02_line_minus_two_points() {
    criterion(2, "A1 minus {0,1}: coker order 4, exponent 2", Some(Duration::from_secs(1)), || {
        // Oracle: sign vectors of the units ±t^a (t-1)^b on (-inf,0), (0,1), (1,inf).
        let samples = [rat(-1, 1), rat(1, 2), int(2)];
        let mut gens = Vec::new();
        for s in [1i64, -1] {
            for a in 0..2u32 {
                for b in 0..2u32 {
                    let u = &(&UPoly::from_ints(&[s]) * &UPoly::x().pow(a)) * &UPoly::from_ints(&[-1, 1]).pow(b);
                    gens.push(samples.iter().map(|x| if u.eval(x) > int(0) { 1 } else { -1 }).collect::<Vec<i64>>());
                }
            }
        }
        // 2e_i lies in the span, so the coker is (Z/2)^3 modulo the mod-2 closure.
        for i in 0..3 {
            let t: Vec<i64> = (0..3).map(|j| if i == j { 2 } else { 0 }).collect();
            ensure(small_combination_exists(&gens, &t, 1), || format!("2e_{i} not in span"))?;
        }
        let mut closure: HashSet<Vec<i64>> = HashSet::from([vec![0, 0, 0]]);
        loop {
            let before = closure.len();
            let items: Vec<_> = closure.iter().cloned().collect();
            for v in &items {
                for g in &gens {
                    closure.insert(v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(2)).collect());
                }
            }
            if closure.len() == before {
                break;
            }
        }
        let oracle_order = 8 / closure.len() as i64;
        ensure(oracle_order == 4, || format!("oracle order {oracle_order}"))?;

        let image = gamma0_image(&line(&[int(0), int(1)]), false).map_err(|e| e.to_string())?;
        for g in &gens {
            let v: Vec<BigInt> = g.iter().map(|&x| big(x)).collect();
            ensure(lattice_contains(&image, &v), || format!("unit vector {g:?} missing from image"))?;
        }
        let r = coker_report(&image);
        ensure(r.order == Some(big(oracle_order)), || format!("coker order {:?}", r.order))?;
        ensure(r.exponent == big(2), || format!("coker exponent {}", r.exponent))
    });
}

#[test]
fn criterion_03_knebusch_random_lines() {
    criterion(3, "Knebusch equality and mod-2 span, 100 lines", Some(Duration::from_secs(10)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..100 {
            let k = rng.gen_range(0..=6);
            let mut p: Vec<Rat> = Vec::new();
            while p.len() < k {
                let r = rat(rng.gen_range(-60..=60), rng.gen_range(1..=12));
                if !p.contains(&r) {
                    p.push(r);
                }
            }
            let locus = line(&p);
            let m = locus.components().len();
            ensure(m == k + 1, || format!("trial {trial}: {m} components for {k} punctures"))?;
            let image = gamma0_image(&locus, false).map_err(|e| e.to_string())?;
            for g in image.generators() {
                let odd = g[0].is_odd();
                ensure(g.iter().all(|x| x.is_odd() == odd), || format!("trial {trial}: {g:?} outside Gamma"))?;
            }
            let ones: Vec<BigInt> = vec![big(1); m];
            ensure(lattice_contains(&image, &ones), || format!("trial {trial}: (1,..,1) missing"))?;
            for i in 0..m {
                ensure(lattice_contains(&image, &unit_vec(m, i, 2)), || format!("trial {trial}: 2e_{i} missing"))?;
            }
            let v = mod2_unit_vectors(&locus).map_err(|e| e.to_string())?;
            ensure(gf2_rank(&v) == m, || format!("trial {trial}: mod-2 rank {} < {m}", gf2_rank(&v)))?;
        }
        Ok(())
    });
}

fn top_witnesses(locus: &RealLocus, circles: usize) -> Check {
    let f = locus.curve().f().expect("hyperelliptic").clone();
    let bits = vec![false; locus.components().len()];
    let coh = twisted_cohomology(locus.components(), &bits);
    let certs = gamma_top_witness_search(locus, &bits, &coh, 50).map_err(|e| e.to_string())?;
    ensure(certs.len() == circles, || format!("{} generators, expected {circles}", certs.len()))?;
    for (i, c) in certs.iter().enumerate() {
        ensure(c.status == WitnessStatus::Exact, || format!("{} is {:?}", c.generator, c.status))?;
        ensure(c.achieved == unit_vec(circles, i, 1), || format!("{} achieves {:?}", c.generator, c.achieved))?;
        for t in &c.witness.terms {
            let ClosedPoint::Rational { x, y: Some(y) } = &t.point else {
                return Err(format!("{}: witness {} is not a rational point", c.generator, t.point));
            };
            ensure(y.is_zero() && f.eval(x).is_zero(), || format!("{}: {} is not a root endpoint", c.generator, t.point))?;
        }
    }
    Ok(())
}

#[test]
fn criterion_04_top_surjectivity() {
    criterion(4, "gamma-top root-endpoint witnesses", None, || {
        let cases: [(&str, &[i64], bool, usize); 3] = [
            ("y^2 = 1 - x^2", &[1, 0, -1], false, 1),
            ("y^2 = -(x^2-1)(x^2-4)", &[-4, 0, 5, 0, -1], false, 2),
            ("y^2 = x^3 - x projective", &[0, -1, 0, 1], true, 2),
        ];
        for (name, f, proj, circles) in cases {
            let start = Instant::now();
            let locus = hyper(f, proj);
            let circle_count = locus.components().iter().filter(|c| c.is_circle()).count();
            ensure(circle_count == circles, || format!("{name}: {circle_count} circles"))?;
            top_witnesses(&locus, circles).map_err(|e| format!("{name}: {e}"))?;
            let t = start.elapsed();
            ensure(t < Duration::from_secs(1), || format!("{name}: took {}ms", t.as_millis()))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_05_twisted_circle() {
    criterion(5, "twisted circle: H0 = 0, H1 = Z/2, points witness", None, || {
        let locus = hyper(&[1, 0, -1], false);
        let div = TwistDivisor::from_points(&locus, &[(CurvePoint { x: rat(1, 3), branch: 1 }, 1)])
            .map_err(|e| e.to_string())?;
        let bits = twist_class(&locus, &div).map_err(|e| e.to_string())?;
        ensure(bits == vec![true], || format!("twist bits {bits:?}"))?;
        let coh = twisted_cohomology(locus.components(), &bits);
        ensure(coh.h0.is_trivial(), || "H0 is not 0".into())?;
        let inv = coh.h1.invariants();
        ensure(inv.free_rank == 0 && inv.torsion == vec![big(2)], || format!("H1 invariants {inv:?}"))?;
        // rational points on x^2 + y^2 = 1, including both branches and the roots
        let points = [(0, 1, 1, 1), (0, 1, -1, 1), (3, 5, 4, 5), (-3, 5, -4, 5), (5, 13, 12, 13), (1, 1, 0, 1), (-1, 1, 0, 1)];
        for (xn, xd, yn, yd) in points {
            let (x, y) = (rat(xn, xd), rat(yn, yd));
            ensure(&x * &x + &y * &y == int(1), || "bad oracle point".into())?;
            let z = ZeroCycle {
                terms: vec![CycleTerm { point: ClosedPoint::Rational { x: x.clone(), y: Some(y.clone()) }, unit: CycleUnit::constant(1) }],
            };
            let class = class_of_zero_cycle(&locus, &bits, &coh, &z).map_err(|e| e.to_string())?;
            let zero = coh.h1.is_zero_element(&class).map_err(|e| e.to_string())?;
            ensure(!zero, || format!("point ({x}, {y}) has class {class:?}"))?;
        }
        let certs = gamma_top_witness_search(&locus, &bits, &coh, 50).map_err(|e| e.to_string())?;
        ensure(certs.len() == 1 && certs[0].status == WitnessStatus::Exact, || "search did not witness Z/2".into())
    });
}

/// `log2 |A/2A|` and `log2 |A[2]|`.
fn two_ranks(g: &FgAbGroup) -> (usize, usize) {
    let inv = g.invariants();
    let even = inv.torsion.iter().filter(|d| d.is_even()).count();
    (inv.free_rank + even, even)
}

#[test]
fn criterion_06_bockstein_ladders() {
    criterion(6, "Bockstein ladders exact on the corpus", None, || {
        let mut corpus = vec![line(&[]), line(&[int(0)]), line(&[int(0), int(1), int(5)])];
        corpus.push(real_components(&CurveModel::ProjectiveLine).unwrap());
        for (c, p) in [
            (&[1i64, 0, -1][..], false),
            (&[-4, 0, 5, 0, -1], false),
            (&[-4, 0, 5, 0, -1], true),
            (&[0, -1, 0, 1], true),
            (&[0, -1, 0, 1], false),
            (&[-1, 0, -1], false),
            (&[1, 0, 1], true),
            (&[1, 0, 1], false),
            (&[-2, 0, 1], true),
            (&[36, 0, -49, 0, 14, 0, -1], true),
        ] {
            corpus.push(hyper(c, p));
        }
        let mut configs = 0;
        for locus in &corpus {
            let comps = locus.components();
            for mask in 0u32..(1 << comps.len()) {
                let bits: Vec<bool> = comps.iter().map(|c| c.is_circle() && mask >> c.id & 1 == 1).collect();
                if mask != 0 && bits.iter().all(|b| !b) {
                    continue;
                }
                configs += 1;
                let seq = bockstein_ladder(comps, &bits);
                ensure(seq.len() == 7, || format!("{}: ladder has {} maps", locus.curve(), seq.len()))?;
                let ex = check_exact(&seq).map_err(|e| e.to_string())?;
                ensure(ex.is_exact(), || format!("{} twist {bits:?}: not exact at {:?}", locus.curve(), ex.failure))?;
                // independent count: |H^0(Z/2)| = |H^0/2| |H^1[2]| and |H^1(Z/2)| = |H^1/2|
                let coh = twisted_cohomology(comps, &bits);
                let (h0_mod, _) = two_ranks(&coh.h0);
                let (h1_mod, h1_tors) = two_ranks(&coh.h1);
                let (a, _) = two_ranks(&coh.h0_mod2);
                let (b, _) = two_ranks(&coh.h1_mod2);
                ensure(a == h0_mod + h1_tors && b == h1_mod, || format!("{} twist {bits:?}: mod-2 sizes", locus.curve()))?;
            }
        }
        ensure(configs > 20, || format!("only {configs} configurations"))
    });
}

#[test]
fn criterion_07_exponent_table() {
    criterion(7, "exponent oracle table, 0 <= c <= d <= 6", Some(Duration::from_secs(1)), || {
        let plain = OracleFlags::default();
        let vanishing = OracleFlags { etale_vanishing: true, ..plain };
        for d in 0..=6i64 {
            for c in 0..=d {
                for (flags, van) in [(plain, false), (vanishing, true)] {
                    let r = exponent_oracle(d, c, flags).map_err(|e| e.to_string())?;
                    let expected = if c == d {
                        1u64
                    } else if c == d - 1 {
                        2
                    } else if c == d - 2 && van {
                        4
                    } else if c == 0 {
                        1 << d
                    } else {
                        1 << (d + 1 - c)
                    };
                    let proven = r.proven_bound.to_u64().unwrap();
                    ensure(proven == expected, || format!("({d},{c}) vanishing={van}: proven {proven}, table {expected}"))?;
                    let conj = r.conjectured_bound.to_u64().unwrap();
                    ensure(conj == 1u64 << (d - c), || format!("({d},{c}): conjectured {conj}"))?;
                    ensure(proven % conj == 0, || format!("({d},{c}): {conj} does not divide {proven}"))?;
                }
            }
        }
        for (d, c) in [(2i64, 5i64), (0, 1), (6, 7)] {
            let r = exponent_oracle(d, c, plain).map_err(|e| e.to_string())?;
            ensure(r.proven_bound.to_u64() == Some(1), || format!("({d},{c}) above dimension"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_08_punctured_affine() {
    criterion(8, "punctured affine space, d = 2, 3: image 2Z", None, || {
        for d in [2, 3] {
            let r = punctured_affine_report(d).map_err(|e| e.to_string())?;
            ensure(r.image.hermite_basis() == vec![vec![big(2)]], || format!("d={d}: image {:?}", r.image.hermite_basis()))?;
            ensure(!lattice_contains(&r.image, &[big(1)]), || format!("d={d}: image contains 1"))?;
            ensure(r.coker.order == Some(big(2)) && r.coker.exponent == big(2), || format!("d={d}: coker"))?;
            let bound = exponent_oracle(d, d - 1, OracleFlags::default()).map_err(|e| e.to_string())?;
            ensure(bound.proven_bound.value() == r.coker.exponent, || format!("d={d}: bound not attained"))?;
        }
        Ok(())
    });
}

fn random_func(rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let num: Vec<i64> = (0..=rng.gen_range(0..=3)).map(|_| rng.gen_range(-6..=6)).collect();
        let den: Vec<i64> = (0..=rng.gen_range(0..=2)).map(|_| rng.gen_range(-4..=4)).collect();
        if let Some(f) = RatFunc::new(UPoly::from_ints(&num), UPoly::from_ints(&den)) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

fn random_ordering(rng: &mut ChaCha8Rng) -> ExtendedPoint {
    match rng.gen_range(0..6) {
        0 => ExtendedPoint::pos_inf(),
        1 => ExtendedPoint::neg_inf(),
        k => {
            let a = rat(rng.gen_range(-12..=12), rng.gen_range(1..=4));
            if k % 2 == 0 {
                ExtendedPoint::plus(a)
            } else {
                ExtendedPoint::minus(a)
            }
        }
    }
}

#[test]
fn criterion_09_signature_doubling() {
    criterion(9, "signature doubling, 500 forms x 10 orderings", Some(Duration::from_secs(5)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ctx = FieldCtx::RationalFunctions;
        for _ in 0..500 {
            let fs: Vec<RatFunc> = (0..rng.gen_range(1..=5)).map(|_| random_func(&mut rng)).collect();
            let form = DiagForm::new(ctx, fs.iter().cloned().map(Elem::Func).collect()).map_err(|e| e.to_string())?;
            let doubled = mult_by_pfister_minus_one(&form);
            ensure(doubled.dim() == 2 * form.dim(), || "doubled dimension".into())?;
            for _ in 0..10 {
                let p = random_ordering(&mut rng);
                // oracle: count signs directly
                let direct: i64 = fs.iter().map(|f| (sign_at(f.num(), &p) * sign_at(f.den(), &p)) as i64).sum();
                let o = FieldOrdering::At(p);
                let s = signature(&form, &o).map_err(|e| e.to_string())?;
                let s2 = signature(&doubled, &o).map_err(|e| e.to_string())?;
                ensure(s == direct, || format!("signature {s} != {direct} for {form}"))?;
                ensure(s2 == 2 * direct, || format!("doubled signature {s2} != 2*{direct} for {form}"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_gw_identity_and_steinberg() {
    criterion(10, "<a> = 1 + eta[a]; Steinberg via (1,1,1,0)", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let q = FieldCtx::Rationals;
        let qt = FieldCtx::RationalFunctions;
        for _ in 0..100 {
            let mut n = 0;
            while n == 0 {
                n = rng.gen_range(-200..=200);
            }
            let a = q.constant(&rat(n, rng.gen_range(1..=40)));
            ensure(gw_identity_check(q, &a, &[]).map_err(|e| e.to_string())?, || format!("identity fails at {a}"))?;
            // rebuild both sides by hand over Q, where comparison is decided
            let lhs = KmwElem::from_gw(&GWElem::from_form(DiagForm::new(q, vec![a.clone()]).unwrap()));
            let eta_a = KmwElem::symbol(q, std::slice::from_ref(&a)).unwrap().eta_mul().unwrap();
            let rhs = KmwElem::one(q).add(&eta_a).unwrap();
            ensure(lhs.compare(&rhs).unwrap() == Comparison::Equal, || format!("<{a}> != 1 + eta[{a}]"))?;

            let f = Elem::Func(random_func(&mut rng));
            let ords = sample_orderings(qt, std::slice::from_ref(&f));
            ensure(gw_identity_check(qt, &f, &ords).map_err(|e| e.to_string())?, || format!("identity fails at {f}"))?;
        }
        let mut done = 0;
        while done < 200 {
            let a = q.constant(&rat(rng.gen_range(-999..=999), rng.gen_range(1..=99)));
            if a.is_zero() || a.is_one() {
                continue;
            }
            done += 1;
            let b = q.one().sub(&a);
            let pf = pfister(q, &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
            // oracle: sum of entries at v = (1,1,1,0) is 1 - a - b = 0
            let v = [1, 1, 1, 0];
            let value = pf.entries().iter().zip(v).filter(|(_, c)| *c == 1).fold(q.from_int(0), |acc, (e, _)| acc.add(e));
            ensure(value.is_zero(), || format!("<<{a}, {b}>> at (1,1,1,0) is {value}"))?;
            ensure(witt_zero_certificate(&pf).is_some(), || format!("<<{a}, {b}>> not certified zero"))?;
            let s = KmwElem::symbol(q, &[a.clone(), b]).map_err(|e| e.to_string())?;
            ensure(s.compare(&KmwElem::zero(q, 2)).unwrap() == Comparison::Equal, || format!("[{a}][1-a] != 0"))?;
        }
        Ok(())
    });
}

/// Finite quotient `Z^n / R` enumerated inside `(Z/D)^n` with `D Z^n ⊂ R`.
struct Enumerated {
    d: i64,
    n: usize,
    relations: HashSet<Vec<i64>>,
}

impl Enumerated {
    fn new(n: usize, d: i64, cols: &[Vec<i64>]) -> Self {
        let mut set: HashSet<Vec<i64>> = HashSet::from([vec![0; n]]);
        let mut frontier = vec![vec![0; n]];
        while let Some(v) = frontier.pop() {
            for c in cols {
                let w: Vec<i64> = v.iter().zip(c).map(|(a, b)| (a + b).rem_euclid(d)).collect();
                if set.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        Enumerated { d, n, relations: set }
    }

    fn order(&self) -> i64 {
        self.d.pow(self.n as u32) / self.relations.len() as i64
    }

    fn reduce(&self, v: &[i64], k: i64) -> Vec<i64> {
        v.iter().map(|x| (x * k).rem_euclid(self.d)).collect()
    }

    fn exponent(&self) -> i64 {
        (1..=self.d)
            .find(|&e| (0..self.n).all(|i| self.relations.contains(&self.reduce(&unit_i64(self.n, i), e))))
            .unwrap()
    }

    /// `|G[k]|` by counting `x` with `kx = 0`.
    fn killed_by(&self, k: i64) -> i64 {
        let mut count = 0i64;
        let mut x = vec![0i64; self.n];
        loop {
            if self.relations.contains(&self.reduce(&x, k)) {
                count += 1;
            }
            let mut i = 0;
            while i < self.n {
                x[i] += 1;
                if x[i] < self.d {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            if i == self.n {
                break;
            }
        }
        count / self.relations.len() as i64
    }
}

fn unit_i64(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| (i == j) as i64).collect()
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i64(&minor)
            })
            .sum(),
    }
}

fn cyclic_group(orders: &[u64]) -> FgAbGroup {
    orders.iter().enumerate().fold(FgAbGroup::trivial(), |g, (i, &n)| g.direct_sum(&FgAbGroup::cyclic(n, &format!("z{i}"))))
}

/// A random well-defined map between sums of cyclic groups.
fn random_map(rng: &mut ChaCha8Rng, src: &[u64], dst: &[u64]) -> GroupMap {
    let rows: Vec<Vec<BigInt>> = dst
        .iter()
        .map(|&b| src.iter().map(|&a| big((b / a.gcd(&b)) as i64 * rng.gen_range(0..4))).collect())
        .collect();
    GroupMap::new(cyclic_group(src), cyclic_group(dst), IntMatrix::from_rows(rows, src.len())).unwrap()
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

#[test]
fn criterion_11_abelian_group_laws() {
    criterion(11, "exponent laws and SNF vs enumeration, 1000 groups", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 1000 {
            let n = rng.gen_range(1..=3usize);
            let k = n + rng.gen_range(0..=1);
            let cols: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-7..=7)).collect()).collect();
            let square: Vec<Vec<i64>> = (0..n).map(|i| cols[..n].iter().map(|c| c[i]).collect()).collect();
            let d = det_i64(&square).abs();
            let cap = if n == 3 { 36 } else { 200 };
            if d == 0 || d > cap {
                continue;
            }
            done += 1;
            let rel = IntMatrix::from_columns(n, &cols.iter().map(|c| c.iter().map(|&x| big(x)).collect()).collect::<Vec<_>>());
            let g = FgAbGroup::new((0..n).map(|i| format!("g{i}")).collect(), rel).unwrap();
            let brute = Enumerated::new(n, d, &cols);

            let order = g.order().ok_or("finite presentation reported infinite")?;
            ensure(order == big(brute.order()), || format!("{cols:?}: order {order} vs {}", brute.order()))?;
            let e = g.exponent();
            ensure(e == big(brute.exponent()), || format!("{cols:?}: exponent {e} vs {}", brute.exponent()))?;
            let torsion = g.invariants().torsion;
            for kk in 1..=order.to_i64().unwrap() {
                if !(order.clone() % kk).is_zero() {
                    continue;
                }
                let predicted: BigInt = torsion.iter().map(|t| t.gcd(&big(kk))).product();
                ensure(predicted == big(brute.killed_by(kk)), || format!("{cols:?}: |G[{kk}]| mismatch"))?;
            }

            // 0 -> <w> -> G -> G/<w> -> 0
            let w: Vec<BigInt> = (0..n).map(|_| big(rng.gen_range(-3..=3))).collect();
            let wm = IntMatrix::from_columns(n, &[w]);
            let sub = g.subgroup(&wm).unwrap();
            let quo = g.quotient_by(&wm).unwrap();
            let (e1, e2) = (sub.exponent(), quo.exponent());
            ensure(divides(&e, &(&e1 * &e2)), || format!("{cols:?}: e does not divide e'e''"))?;
            ensure(divides(&e1, &e) && divides(&e2, &e), || format!("{cols:?}: sub/quotient exponent"))?;
            ensure(g.has_exponent(&(&e1 * &e2)), || format!("{cols:?}: e'e'' does not kill G"))?;
            ensure(sub.order().unwrap() * quo.order().unwrap() == order, || "orders do not multiply".into())?;

            // products of groups of exponent e have exponent e
            let h = quo.direct_sum(&g);
            ensure(h.has_exponent(&e) && h.exponent() == e.lcm(&e2), || format!("{cols:?}: direct sum exponent"))?;

            // kernels of composites
            let orders: Vec<u64> = (0..6).map(|_| rng.gen_range(1..=6)).collect();
            let (a, b, c) = (&orders[0..2], &orders[2..4], &orders[4..6]);
            let u = random_map(&mut rng, a, b);
            let v = random_map(&mut rng, b, c);
            let vu = u.then(&v).unwrap();
            let (ku, kv, kvu) = (u.kernel().exponent(), v.kernel().exponent(), vu.kernel().exponent());
            ensure(divides(&kvu, &(&ku * &kv)), || format!("ker exponents {ku} {kv} {kvu}"))?;
            // oracle for ker(v u): lcm of orders of kernel elements of A
            let mut lcm = BigInt::one();
            for x0 in 0..a[0] as i64 {
                for x1 in 0..a[1] as i64 {
                    let img = vu.apply(&[big(x0), big(x1)]);
                    if vu.target().is_zero_element(&img).unwrap() {
                        let ord = (1..).find(|&m| (m * x0) % a[0] as i64 == 0 && (m * x1) % a[1] as i64 == 0).unwrap();
                        lcm = lcm.lcm(&big(ord));
                    }
                }
            }
            ensure(lcm == kvu, || format!("ker(vu) exponent {kvu} vs enumerated {lcm}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_12_sturm() {
    criterion(12, "Sturm counts and isolating intervals", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let k = rng.gen_range(1..=8);
            let mut roots: Vec<Rat> = Vec::new();
            while roots.len() < k {
                let r = rat(rng.gen_range(-40..=40), rng.gen_range(1..=6));
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            let scale = int(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let p = UPoly::from_roots(&roots).scale(&scale);
            let total = count_real_roots(&p, &ExtendedPoint::neg_inf(), &ExtendedPoint::pos_inf()).map_err(|e| e.to_string())?;
            ensure(total == k, || format!("Sturm count {total}, constructed {k}"))?;
            let ivs = isolate_real_roots(&p).map_err(|e| e.to_string())?;
            ensure(ivs.len() == k, || format!("{} intervals for {k} roots", ivs.len()))?;
            for iv in &ivs {
                let lo = p.eval(&iv.lo);
                let hi = p.eval(&iv.hi);
                ensure(lo.signum() * hi.signum() == -Rat::one(), || format!("no sign change on ({}, {})", iv.lo, iv.hi))?;
                let inside = roots.iter().filter(|r| &iv.lo < *r && *r < &iv.hi).count();
                ensure(inside == 1, || format!("({}, {}) holds {inside} roots", iv.lo, iv.hi))?;
            }
        }
        Ok(())
    });
}
