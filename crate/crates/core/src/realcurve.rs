//! Real loci of curves: components, twists and twisted cohomology.
//!
//! Supported models are the affine line minus finitely many rational points,
//! the projective line, and hyperelliptic curves `y^2 = f(x)` with `f`
//! square-free, affine or with their smooth projective closure.
//!
//! Components are built by gluing arcs. Over each open `x`-gap between
//! consecutive real roots of `f` where `f > 0` sit two arcs `y = ±sqrt(f)`;
//! they meet at the roots, and in the projective closure at the real points
//! at infinity.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abgrp::{FgAbGroup, GroupMap, IntMatrix};
use crate::numeric::{
    format_rat, int, isolate_real_roots, rat_sqrt_exact, rational_roots, sign, IsolatingInterval, Rat, UPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("f is not square-free")]
    NotSquareFree,
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("puncture {0} listed twice")]
    DuplicatePuncture(String),
    #[error("marker {index} does not lie on component {component}")]
    MarkerOffComponent { index: usize, component: usize },
    #[error("point ({0}) is not on the curve")]
    PointOffCurve(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveModel {
    PuncturedLine { punctures: Vec<Rat> },
    ProjectiveLine,
    Hyperelliptic { f: UPoly, projective: bool },
}

impl CurveModel {
    /// `A^1` minus the given points, sorted.
    pub fn punctured_line(mut punctures: Vec<Rat>) -> Result<Self, CurveError> {
        punctures.sort();
        if let Some(w) = punctures.windows(2).find(|w| w[0] == w[1]) {
            return Err(CurveError::DuplicatePuncture(format_rat(&w[0])));
        }
        Ok(CurveModel::PuncturedLine { punctures })
    }

    pub fn hyperelliptic(f: UPoly, projective: bool) -> Result<Self, CurveError> {
        if f.is_constant() {
            return Err(CurveError::UnsupportedModel("f must have positive degree".into()));
        }
        if !f.gcd(&f.derivative()).is_constant() {
            return Err(CurveError::NotSquareFree);
        }
        Ok(CurveModel::Hyperelliptic { f, projective })
    }

    pub fn f(&self) -> Option<&UPoly> {
        match self {
            CurveModel::Hyperelliptic { f, .. } => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveModel::PuncturedLine { punctures } if punctures.is_empty() => fm.write_str("line"),
            CurveModel::PuncturedLine { punctures } => {
                let p: Vec<String> = punctures.iter().map(format_rat).collect();
                write!(fm, "line punctures={}", p.join(","))
            }
            CurveModel::ProjectiveLine => fm.write_str("projective-line"),
            CurveModel::Hyperelliptic { f, projective } => {
                write!(fm, "hyperelliptic f={}{}", f, if *projective { " projective" } else { "" })
            }
        }
    }
}

/// A real root, exact when rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rat),
    Isolated(IsolatingInterval),
}

impl RealRoot {
    /// A rational `<=` the root, equal to it when exact.
    pub fn lower(&self) -> &Rat {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated(i) => &i.lo,
        }
    }

    /// A rational `>=` the root, equal to it when exact.
    pub fn upper(&self) -> &Rat {
        match self {
            RealRoot::Exact(r) => r,
            RealRoot::Isolated(i) => &i.hi,
        }
    }

    /// Position of the root relative to the rational `x`.
    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        match self {
            RealRoot::Exact(r) => r.cmp(x),
            RealRoot::Isolated(i) => {
                let mut i = i.clone();
                // an irrational root never equals x, so refinement separates them
                loop {
                    if x <= &i.lo {
                        return Ordering::Greater;
                    }
                    if x >= &i.hi {
                        return Ordering::Less;
                    }
                    i = i.refine();
                }
            }
        }
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealRoot::Exact(r) => f.write_str(&format_rat(r)),
            RealRoot::Isolated(i) => write!(f, "root in ({}, {})", format_rat(&i.lo), format_rat(&i.hi)),
        }
    }
}

/// End of an open `x`-range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XEnd {
    NegInf,
    PosInf,
    Puncture(Rat),
    Root(RealRoot),
}

impl XEnd {
    fn cmp_rat(&self, x: &Rat) -> Ordering {
        match self {
            XEnd::NegInf => Ordering::Less,
            XEnd::PosInf => Ordering::Greater,
            XEnd::Puncture(p) => p.cmp(x),
            XEnd::Root(r) => r.cmp_rat(x),
        }
    }

    fn is_infinite(&self) -> bool {
        matches!(self, XEnd::NegInf | XEnd::PosInf)
    }
}

impl fmt::Display for XEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XEnd::NegInf => f.write_str("-inf"),
            XEnd::PosInf => f.write_str("inf"),
            XEnd::Puncture(p) => f.write_str(&format_rat(p)),
            XEnd::Root(r) => write!(f, "{r}"),
        }
    }
}

/// Open `x`-interval over which arcs of the real locus lie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub lo: XEnd,
    pub hi: XEnd,
}

impl Gap {
    pub fn contains(&self, x: &Rat) -> bool {
        self.lo.cmp_rat(x) == Ordering::Less && self.hi.cmp_rat(x) == Ordering::Greater
    }

    /// A rational strictly inside: the midpoint of rational roots, `a ± 1` next
    /// to infinity, `0` for the whole line.
    pub fn sample(&self) -> Rat {
        let lo = match &self.lo {
            XEnd::NegInf | XEnd::PosInf => None,
            XEnd::Puncture(p) => Some(p.clone()),
            XEnd::Root(r) => Some(r.upper().clone()),
        };
        let hi = match &self.hi {
            XEnd::NegInf | XEnd::PosInf => None,
            XEnd::Puncture(p) => Some(p.clone()),
            XEnd::Root(r) => Some(r.lower().clone()),
        };
        match (lo, hi) {
            (None, None) => int(0),
            (Some(a), None) => a + int(1),
            (None, Some(b)) => b - int(1),
            (Some(a), Some(b)) if a < b => (a + b) / int(2),
            // adjacent isolating intervals share an endpoint, which is no root
            (Some(a), Some(_)) => a,
        }
    }
}

/// One branch over one gap. `branch` is `+1`/`-1` for `y = ±sqrt(f)` and `0`
/// on lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub gap: usize,
    pub branch: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Interval,
    Circle,
}

/// A connected component of the real locus.
///
/// A circle is oriented by increasing `x` along the `+` branch of its first
/// arc (along the line for the projective line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealComponent {
    pub id: usize,
    pub kind: ComponentKind,
    pub arcs: Vec<Arc>,
    pub compact: bool,
}

impl RealComponent {
    pub fn label(&self) -> String {
        format!("C{}", self.id)
    }

    pub fn is_circle(&self) -> bool {
        self.kind == ComponentKind::Circle
    }
}

/// A real point: rational `x` and branch sign (ignored where `y = 0` and on lines).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub x: Rat,
    pub branch: i8,
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.branch {
            1 => "+",
            -1 => "-",
            _ => "",
        };
        write!(f, "{}{}{}", format_rat(&self.x), if b.is_empty() { "" } else { "," }, b)
    }
}

/// The real locus of a model, decomposed into components.
#[derive(Clone, Debug)]
pub struct RealLocus {
    curve: CurveModel,
    gaps: Vec<Gap>,
    components: Vec<RealComponent>,
    /// Component of each arc, keyed by arc.
    arc_component: Vec<(Arc, usize)>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut j = i;
    while parent[j] != r {
        let n = parent[j];
        parent[j] = r;
        j = n;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Real roots of a square-free `f`, sorted, rational ones exact.
pub fn real_roots(f: &UPoly) -> Vec<RealRoot> {
    let rational = rational_roots(f);
    isolate_real_roots(f)
        .expect("nonzero polynomial")
        .into_iter()
        .map(|iv| match rational.iter().find(|r| &iv.lo < *r && *r < &iv.hi) {
            Some(r) => RealRoot::Exact(r.clone()),
            None => RealRoot::Isolated(iv),
        })
        .collect()
}

/// Computes the components of the real locus.
pub fn real_components(curve: &CurveModel) -> Result<RealLocus, CurveError> {
    match curve {
        CurveModel::PuncturedLine { punctures } => {
            let mut ends = vec![XEnd::NegInf];
            ends.extend(punctures.iter().cloned().map(XEnd::Puncture));
            ends.push(XEnd::PosInf);
            let gaps: Vec<Gap> = ends.windows(2).map(|w| Gap { lo: w[0].clone(), hi: w[1].clone() }).collect();
            let components = (0..gaps.len())
                .map(|i| RealComponent {
                    id: i,
                    kind: ComponentKind::Interval,
                    arcs: vec![Arc { gap: i, branch: 0 }],
                    compact: false,
                })
                .collect();
            let arc_component = (0..gaps.len()).map(|i| (Arc { gap: i, branch: 0 }, i)).collect();
            Ok(RealLocus { curve: curve.clone(), gaps, components, arc_component })
        }
        CurveModel::ProjectiveLine => {
            let gaps = vec![Gap { lo: XEnd::NegInf, hi: XEnd::PosInf }];
            let arc = Arc { gap: 0, branch: 0 };
            let components = vec![RealComponent { id: 0, kind: ComponentKind::Circle, arcs: vec![arc], compact: true }];
            Ok(RealLocus { curve: curve.clone(), gaps, components, arc_component: vec![(arc, 0)] })
        }
        CurveModel::Hyperelliptic { f, projective } => {
            if f.is_constant() || !f.gcd(&f.derivative()).is_constant() {
                return Err(CurveError::NotSquareFree);
            }
            Ok(hyperelliptic_locus(curve, f, *projective))
        }
    }
}

fn hyperelliptic_locus(curve: &CurveModel, f: &UPoly, projective: bool) -> RealLocus {
    let roots = real_roots(f);
    let n = f.degree().unwrap();
    let lead = sign(f.leading().expect("nonzero"));
    let mut ends = vec![XEnd::NegInf];
    ends.extend(roots.into_iter().map(XEnd::Root));
    ends.push(XEnd::PosInf);
    let k = ends.len() - 1;
    // sign on gap i (counted from the right, roots are simple)
    let gap_sign = |i: usize| if (k - 1 - i).is_multiple_of(2) { lead } else { -lead };
    let mut gaps = Vec::new();
    let mut arcs = Vec::new();
    for i in 0..k {
        if gap_sign(i) > 0 {
            let g = gaps.len();
            gaps.push(Gap { lo: ends[i].clone(), hi: ends[i + 1].clone() });
            arcs.push(Arc { gap: g, branch: 1 });
            arcs.push(Arc { gap: g, branch: -1 });
        }
    }
    let idx = |a: Arc| 2 * a.gap + if a.branch > 0 { 0 } else { 1 };
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    // free ends of each arc: number of infinite ends not yet glued
    let mut open_ends = vec![0usize; arcs.len()];
    for (g, gap) in gaps.iter().enumerate() {
        let (p, m) = (idx(Arc { gap: g, branch: 1 }), idx(Arc { gap: g, branch: -1 }));
        if !gap.lo.is_infinite() || !gap.hi.is_infinite() {
            union(&mut parent, p, m);
        }
        let inf = gap.lo.is_infinite() as usize + gap.hi.is_infinite() as usize;
        open_ends[p] = inf;
        open_ends[m] = inf;
    }
    if projective && !gaps.is_empty() {
        let left = gaps.first().filter(|g| g.lo == XEnd::NegInf).map(|_| 0);
        let right = gaps.last().filter(|g| g.hi == XEnd::PosInf).map(|_| gaps.len() - 1);
        let mut close = |a: Arc, b: Arc, parent: &mut Vec<usize>| {
            union(parent, idx(a), idx(b));
            open_ends[idx(a)] -= 1;
            open_ends[idx(b)] -= 1;
        };
        if n % 2 == 1 {
            // one point at infinity joining both branches of the unbounded gap
            let g = left.or(right).expect("odd degree has an unbounded positive gap");
            close(Arc { gap: g, branch: 1 }, Arc { gap: g, branch: -1 }, &mut parent);
        } else if lead > 0 {
            // y / x^(n/2) -> ±1 on both sides; on the left x^(n/2) has sign s
            let s: i8 = if (n / 2).is_multiple_of(2) { 1 } else { -1 };
            let (l, r) = (left.unwrap(), right.unwrap());
            close(Arc { gap: r, branch: 1 }, Arc { gap: l, branch: s }, &mut parent);
            close(Arc { gap: r, branch: -1 }, Arc { gap: l, branch: -s }, &mut parent);
        }
    }
    let mut roots_seen: Vec<usize> = Vec::new();
    let mut components: Vec<RealComponent> = Vec::new();
    let mut arc_component = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        let r = find(&mut parent, i);
        let id = match roots_seen.iter().position(|&x| x == r) {
            Some(id) => id,
            None => {
                roots_seen.push(r);
                components.push(RealComponent { id: components.len(), kind: ComponentKind::Circle, arcs: vec![], compact: true });
                components.len() - 1
            }
        };
        components[id].arcs.push(*a);
        if open_ends[i] > 0 {
            components[id].compact = false;
            components[id].kind = ComponentKind::Interval;
        }
        arc_component.push((*a, id));
    }
    RealLocus { curve: curve.clone(), gaps, components, arc_component }
}

impl RealLocus {
    pub fn curve(&self) -> &CurveModel {
        &self.curve
    }

    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    pub fn components(&self) -> &[RealComponent] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of_arc(&self, arc: Arc) -> Option<usize> {
        self.arc_component.iter().find(|(a, _)| *a == arc).map(|(_, c)| *c)
    }

    /// Closed `x`-range covered by a component, as (lowest end, highest end).
    pub fn x_range(&self, id: usize) -> (XEnd, XEnd) {
        let arcs = &self.components[id].arcs;
        let lo = arcs.iter().map(|a| a.gap).min().unwrap();
        let hi = arcs.iter().map(|a| a.gap).max().unwrap();
        (self.gaps[lo].lo.clone(), self.gaps[hi].hi.clone())
    }

    /// Component holding the point, if the point is on the real locus.
    pub fn locate(&self, p: &CurvePoint) -> Option<usize> {
        match &self.curve {
            CurveModel::PuncturedLine { .. } | CurveModel::ProjectiveLine => {
                let g = self.gaps.iter().position(|g| g.contains(&p.x))?;
                self.component_of_arc(Arc { gap: g, branch: 0 })
            }
            CurveModel::Hyperelliptic { f, .. } => {
                let v = f.eval(&p.x);
                if v.is_negative() {
                    return None;
                }
                if v.is_zero() {
                    // a root: the arcs of the positive gap ending there
                    let g = self.gaps.iter().position(|g| {
                        matches!(&g.lo, XEnd::Root(r) if r.cmp_rat(&p.x) == Ordering::Equal)
                            || matches!(&g.hi, XEnd::Root(r) if r.cmp_rat(&p.x) == Ordering::Equal)
                    })?;
                    return self.component_of_arc(Arc { gap: g, branch: 1 });
                }
                if p.branch == 0 {
                    return None;
                }
                let g = self.gaps.iter().position(|g| g.contains(&p.x))?;
                self.component_of_arc(Arc { gap: g, branch: p.branch.signum() })
            }
        }
    }

    /// A point with rational `x` strictly inside the component, on the `+`
    /// branch when the component has one.
    pub fn sample_point(&self, id: usize) -> CurvePoint {
        let c = &self.components[id];
        let arc = c.arcs.iter().find(|a| a.branch >= 0).unwrap_or(&c.arcs[0]);
        CurvePoint { x: self.gaps[arc.gap].sample(), branch: arc.branch }
    }
}

/// A divisor supported on real points, used to describe a line bundle's twist.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistDivisor {
    pub markers: Vec<(usize, CurvePoint, i64)>,
}

impl TwistDivisor {
    /// Markers with their components located on the curve.
    pub fn from_points(locus: &RealLocus, points: &[(CurvePoint, i64)]) -> Result<Self, CurveError> {
        let mut markers = Vec::new();
        for (p, m) in points {
            let c = locus.locate(p).ok_or_else(|| CurveError::PointOffCurve(p.to_string()))?;
            markers.push((c, p.clone(), *m));
        }
        Ok(TwistDivisor { markers })
    }
}

/// Per-component twist bit: odd total multiplicity on a circle.
pub fn twist_class(locus: &RealLocus, divisor: &TwistDivisor) -> Result<Vec<bool>, CurveError> {
    let mut bits = vec![false; locus.components.len()];
    for (index, (component, p, m)) in divisor.markers.iter().enumerate() {
        if locus.locate(p) != Some(*component) {
            return Err(CurveError::MarkerOffComponent { index, component: *component });
        }
        if m % 2 != 0 {
            bits[*component] ^= true;
        }
    }
    for (b, c) in bits.iter_mut().zip(&locus.components) {
        if !c.is_circle() {
            *b = false;
        }
    }
    Ok(bits)
}

/// Cohomology of the real locus with coefficients `Z(L)` and `Z/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCohomology {
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
    pub h0_mod2: FgAbGroup,
    pub h1_mod2: FgAbGroup,
    /// Component of each generator of `h0`.
    pub h0_components: Vec<usize>,
    /// Component (a circle) of each generator of `h1`.
    pub h1_components: Vec<usize>,
}

impl TwistedCohomology {
    /// Index of the `h1` generator of a circle.
    pub fn h1_index(&self, component: usize) -> Option<usize> {
        self.h1_components.iter().position(|&c| c == component)
    }
}

fn cyclic_sum(parts: &[(String, u64)]) -> FgAbGroup {
    parts.iter().fold(FgAbGroup::trivial(), |g, (l, n)| g.direct_sum(&FgAbGroup::cyclic(*n, l)))
}

/// `H^0` is free on intervals and untwisted circles; `H^1` has `Z` per
/// untwisted circle and `Z/2` per twisted one.
pub fn twisted_cohomology(components: &[RealComponent], twist: &[bool]) -> TwistedCohomology {
    assert_eq!(components.len(), twist.len(), "one twist bit per component");
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    let mut h0m = Vec::new();
    let mut h1m = Vec::new();
    let (mut h0c, mut h1c) = (Vec::new(), Vec::new());
    for (c, &tw) in components.iter().zip(twist) {
        let l = c.label();
        let twisted = tw && c.is_circle();
        if !twisted {
            h0.push((l.clone(), 0));
            h0c.push(c.id);
        }
        h0m.push((l.clone(), 2));
        if c.is_circle() {
            h1.push((l.clone(), if twisted { 2 } else { 0 }));
            h1c.push(c.id);
            h1m.push((l, 2));
        }
    }
    TwistedCohomology {
        h0: cyclic_sum(&h0),
        h1: cyclic_sum(&h1),
        h0_mod2: cyclic_sum(&h0m),
        h1_mod2: cyclic_sum(&h1m),
        h0_components: h0c,
        h1_components: h1c,
    }
}

fn selection(rows: usize, cols: usize, pairs: impl Iterator<Item = (usize, usize)>) -> IntMatrix {
    let mut m = vec![vec![BigInt::zero(); cols]; rows];
    for (r, c) in pairs {
        m[r][c] = BigInt::one();
    }
    IntMatrix::from_rows(m, cols)
}

/// `0 -> H^0 -2-> H^0 -> H^0(Z/2) -> H^1 -2-> H^1 -> H^1(Z/2) -> 0`.
pub fn bockstein_ladder(components: &[RealComponent], twist: &[bool]) -> Vec<GroupMap> {
    let h = twisted_cohomology(components, twist);
    let zero = FgAbGroup::trivial();
    let m = components.len();
    // generator index of component id in H^0(Z/2) is its position
    let reduce0 = selection(m, h.h0.num_generators(), h.h0_components.iter().enumerate().map(|(j, &c)| (c, j)));
    let delta = selection(
        h.h1.num_generators(),
        m,
        h.h1_components.iter().enumerate().filter(|(_, &c)| twist[c]).map(|(i, &c)| (i, c)),
    );
    let n1 = h.h1.num_generators();
    let reduce1 = selection(n1, n1, (0..n1).map(|i| (i, i)));
    let build = |s: &FgAbGroup, t: &FgAbGroup, mat: IntMatrix| GroupMap::new(s.clone(), t.clone(), mat).expect("well defined");
    vec![
        GroupMap::zero(zero.clone(), h.h0.clone()),
        GroupMap::scalar(h.h0.clone(), 2),
        build(&h.h0, &h.h0_mod2, reduce0),
        build(&h.h0_mod2, &h.h1, delta),
        GroupMap::scalar(h.h1.clone(), 2),
        build(&h.h1, &h.h1_mod2, reduce1),
        GroupMap::zero(h.h1_mod2.clone(), zero),
    ]
}

/// `sqrt(f(x))` when rational.
pub fn rational_y(f: &UPoly, x: &Rat) -> Option<Rat> {
    rat_sqrt_exact(&f.eval(x))
}
