//! Finitely generated abelian groups given by generators and relations.
//!
//! A group is `Z^n / R` where the columns of `R` are the relators. Everything
//! is reduced to Smith normal form over arbitrary precision integers: normal
//! forms, exponents, membership in sublattices, kernels and exactness.

mod matrix;
mod snf;

pub use matrix::IntMatrix;
pub use snf::{integer_kernel, smith_normal_form, solve_integer, SmithForm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbGroupError {
    #[error("vector or matrix has {found} rows, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("quotients are only formed from free ambient groups")]
    NotFree,
    #[error("matrix does not carry the relations of the source into those of the target")]
    IllDefinedMap,
    #[error("map {index} does not end where map {} starts", index + 1)]
    NotComposable { index: usize },
}

/// Free rank and invariant factors `d_1 | d_2 | ...` with every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    labels: Vec<String>,
    relations: IntMatrix,
}

impl FgAbGroup {
    /// `relations` must have one row per label.
    pub fn new(labels: Vec<String>, relations: IntMatrix) -> Result<Self, AbGroupError> {
        if relations.rows() != labels.len() {
            return Err(AbGroupError::RankMismatch { expected: labels.len(), found: relations.rows() });
        }
        Ok(FgAbGroup { labels, relations })
    }

    pub fn free(labels: Vec<String>) -> Self {
        let n = labels.len();
        FgAbGroup { labels, relations: IntMatrix::zeros(n, 0) }
    }

    pub fn free_rank_n(n: usize, prefix: &str) -> Self {
        Self::free((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn trivial() -> Self {
        Self::free(Vec::new())
    }

    /// `Z/n` on one generator; `n = 0` gives `Z`.
    pub fn cyclic(n: u64, label: &str) -> Self {
        let relations = if n == 0 {
            IntMatrix::zeros(1, 0)
        } else {
            IntMatrix::from_rows(vec![vec![BigInt::from(n)]], 1)
        };
        FgAbGroup { labels: vec![label.to_string()], relations }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.labels.len()
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn invariants(&self) -> GroupInvariants {
        let n = self.labels.len();
        let snf = smith_normal_form(&self.relations);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        GroupInvariants {
            free_rank: n - rank,
            torsion: diag.into_iter().filter(|d| d > &BigInt::one()).collect(),
        }
    }

    /// Least `e >= 1` with `eG = 0`, or 0 when no such `e` exists.
    pub fn exponent(&self) -> BigInt {
        let inv = self.invariants();
        if inv.free_rank > 0 {
            BigInt::zero()
        } else {
            inv.torsion.last().cloned().unwrap_or_else(BigInt::one)
        }
    }

    /// Whether `eG = 0`; `e` need not be minimal.
    pub fn has_exponent(&self, e: &BigInt) -> bool {
        let x = self.exponent();
        !x.is_zero() && e.is_multiple_of(&x)
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let inv = self.invariants();
        (inv.free_rank == 0).then(|| inv.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_some_and(|o| o.is_one())
    }

    /// Whether `v` (a word in the generators) is zero in the group.
    pub fn is_zero_element(&self, v: &[BigInt]) -> Result<bool, AbGroupError> {
        self.check_len(v.len())?;
        Ok(solve_integer(&self.relations, v).is_some())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let (n, m) = (self.num_generators(), other.num_generators());
        let (r, s) = (self.relations.cols(), other.relations.cols());
        let mut rel = IntMatrix::zeros(n + m, r + s);
        for i in 0..n {
            for j in 0..r {
                rel[(i, j)] = self.relations[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..s {
                rel[(n + i, r + j)] = other.relations[(i, j)].clone();
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        FgAbGroup { labels, relations: rel }
    }

    /// Presentation of the subgroup generated by the columns of `gens`.
    ///
    /// With `W` the generator matrix and `R` the relations, the subgroup is
    /// `Z^w / {y : W y in span R}`.
    pub fn subgroup(&self, gens: &IntMatrix) -> Result<FgAbGroup, AbGroupError> {
        self.check_len(gens.rows())?;
        let w = gens.cols();
        let relations = preimage(gens, &self.relations);
        Ok(FgAbGroup { labels: (0..w).map(|i| format!("w{i}")).collect(), relations })
    }

    /// `G / <columns of gens>`, keeping the generator labels.
    pub fn quotient_by(&self, gens: &IntMatrix) -> Result<FgAbGroup, AbGroupError> {
        self.check_len(gens.rows())?;
        Ok(FgAbGroup { labels: self.labels.clone(), relations: self.relations.hconcat(gens) })
    }

    fn check_len(&self, found: usize) -> Result<(), AbGroupError> {
        if found == self.num_generators() {
            Ok(())
        } else {
            Err(AbGroupError::RankMismatch { expected: self.num_generators(), found })
        }
    }
}

/// Generators of `{y : w y in span(r)}`.
fn preimage(w: &IntMatrix, r: &IntMatrix) -> IntMatrix {
    integer_kernel(&w.hconcat(r)).top_rows(w.cols())
}

/// Sublattice of a free group with labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: FgAbGroup,
    generators: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(ambient: FgAbGroup, generators: Vec<Vec<BigInt>>) -> Result<Self, AbGroupError> {
        if !ambient.is_free_presentation() {
            return Err(AbGroupError::NotFree);
        }
        for g in &generators {
            ambient.check_len(g.len())?;
        }
        Ok(Lattice { ambient, generators })
    }

    pub fn from_i64(ambient: FgAbGroup, generators: &[&[i64]]) -> Result<Self, AbGroupError> {
        let gens = generators
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(ambient, gens)
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.ambient.num_generators()
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank(), &self.generators)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, AbGroupError> {
        self.ambient.check_len(v.len())?;
        Ok(solve_integer(&self.generator_matrix(), v).is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool, AbGroupError> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same subgroup of the same ambient rank.
    pub fn same_subgroup(&self, other: &Lattice) -> Result<bool, AbGroupError> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Canonical basis: the nonzero columns of `W V` after Smith reduction
    /// `U W V = D`, which span the same lattice.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        let w = self.generator_matrix();
        let snf = smith_normal_form(&w);
        let wv = &w * &snf.v;
        (0..snf.rank()).map(|j| wv.column(j)).collect()
    }
}

impl Lattice {
    /// Row-style Hermite normal form of the generators: echelon rows with
    /// positive pivots and entries above each pivot reduced into `[0, pivot)`.
    /// Two lattices are equal exactly when these bases agree.
    pub fn hermite_basis(&self) -> Vec<Vec<BigInt>> {
        let m = self.rank();
        let mut rows: Vec<Vec<BigInt>> = self.generators.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        let mut r = 0;
        for col in 0..m {
            if r == rows.len() {
                break;
            }
            loop {
                let pivot = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(p) = pivot else { break };
                rows.swap(r, p);
                let mut done = true;
                for i in r + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                        *x -= &q * y;
                    }
                    if !tail[0][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if rows[r][col].is_zero() {
                continue;
            }
            if rows[r][col].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                    *x -= &q * y;
                }
            }
            r += 1;
        }
        rows.truncate(r);
        rows
    }
}

/// `ambient / sub`, with the ambient labels.
pub fn quotient(ambient: &FgAbGroup, sub: &Lattice) -> Result<FgAbGroup, AbGroupError> {
    if !ambient.is_free_presentation() {
        return Err(AbGroupError::NotFree);
    }
    ambient.check_len(sub.rank())?;
    ambient.quotient_by(&sub.generator_matrix())
}

/// Homomorphism given by an integer matrix on generator systems; columns are
/// the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupMap {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, AbGroupError> {
        if matrix.rows() != target.num_generators() {
            return Err(AbGroupError::RankMismatch { expected: target.num_generators(), found: matrix.rows() });
        }
        if matrix.cols() != source.num_generators() {
            return Err(AbGroupError::RankMismatch { expected: source.num_generators(), found: matrix.cols() });
        }
        let image = &matrix * source.relations();
        for j in 0..image.cols() {
            if !target.is_zero_element(&image.column(j))? {
                return Err(AbGroupError::IllDefinedMap);
            }
        }
        Ok(GroupMap { source, target, matrix })
    }

    pub fn zero(source: FgAbGroup, target: FgAbGroup) -> Self {
        let matrix = IntMatrix::zeros(target.num_generators(), source.num_generators());
        GroupMap { source, target, matrix }
    }

    pub fn identity(group: FgAbGroup) -> Self {
        let matrix = IntMatrix::identity(group.num_generators());
        GroupMap { source: group.clone(), target: group, matrix }
    }

    /// Multiplication by `k` on `group`.
    pub fn scalar(group: FgAbGroup, k: i64) -> Self {
        let n = group.num_generators();
        let matrix = IntMatrix::diagonal(n, n, &vec![BigInt::from(k); n]);
        GroupMap { source: group.clone(), target: group, matrix }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(v)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupMap) -> Result<GroupMap, AbGroupError> {
        if self.target != next.source {
            return Err(AbGroupError::NotComposable { index: 0 });
        }
        Ok(GroupMap {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: &next.matrix * &self.matrix,
        })
    }

    /// Generators, in source coordinates, of the preimage of the target
    /// relations; together with the source relations they span the kernel.
    pub fn kernel_generators(&self) -> IntMatrix {
        preimage(&self.matrix, self.target.relations())
    }

    pub fn kernel(&self) -> FgAbGroup {
        self.source
            .subgroup(&self.kernel_generators())
            .expect("generator rows match the source")
    }

    pub fn image(&self) -> FgAbGroup {
        self.target.subgroup(&self.matrix).expect("matrix rows match the target")
    }

    pub fn cokernel(&self) -> FgAbGroup {
        self.target.quotient_by(&self.matrix).expect("matrix rows match the target")
    }
}

/// Result of an exactness check on `G_0 -> G_1 -> ... -> G_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    /// Index `i` of the first interior group `G_i` where image and kernel differ.
    pub failure: Option<usize>,
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks image = kernel at every interior node of the sequence.
pub fn check_exact(seq: &[GroupMap]) -> Result<Exactness, AbGroupError> {
    for (i, w) in seq.windows(2).enumerate() {
        if w[0].target != w[1].source {
            return Err(AbGroupError::NotComposable { index: i });
        }
    }
    for (i, w) in seq.windows(2).enumerate() {
        let (f, g) = (&w[0], &w[1]);
        let node = f.target();
        // im f ⊆ ker g
        let composite = &g.matrix * &f.matrix;
        for j in 0..composite.cols() {
            if !g.target().is_zero_element(&composite.column(j))? {
                return Ok(Exactness { failure: Some(i + 1) });
            }
        }
        // ker g ⊆ im f + relations
        let span = f.matrix.hconcat(node.relations());
        let kernel = g.kernel_generators();
        for j in 0..kernel.cols() {
            if solve_integer(&span, &kernel.column(j)).is_none() {
                return Ok(Exactness { failure: Some(i + 1) });
            }
        }
    }
    Ok(Exactness { failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn gamma(m: usize) -> Lattice {
        let mut gens = vec![vec![BigInt::one(); m]];
        for i in 0..m {
            let mut e = vec![BigInt::zero(); m];
            e[i] = BigInt::from(2);
            gens.push(e);
        }
        Lattice::new(FgAbGroup::free_rank_n(m, "c"), gens).unwrap()
    }

    #[test]
    fn hermite_bases() {
        let l = Lattice::from_i64(FgAbGroup::free_rank_n(2, "c"), &[&[2, 0], &[1, 1], &[0, 2]]).unwrap();
        assert_eq!(l.hermite_basis(), vec![big(&[1, 1]), big(&[0, 2])]);
        assert_eq!(gamma(3).hermite_basis(), vec![big(&[1, 1, 1]), big(&[0, 2, 0]), big(&[0, 0, 2])]);
        let z = Lattice::from_i64(FgAbGroup::free_rank_n(2, "c"), &[&[0, 0]]).unwrap();
        assert!(z.hermite_basis().is_empty());
        let m = Lattice::from_i64(FgAbGroup::free_rank_n(2, "c"), &[&[-3, 5], &[6, -4]]).unwrap();
        assert_eq!(m.hermite_basis(), vec![big(&[3, 1]), big(&[0, 6])]);
    }

    #[test]
    fn exponent_examples() {
        let g = FgAbGroup::cyclic(2, "a").direct_sum(&FgAbGroup::cyclic(4, "b"));
        assert_eq!(g.exponent(), BigInt::from(4));
        assert!(g.has_exponent(&BigInt::from(8)));
        assert!(!g.has_exponent(&BigInt::from(2)));
        assert_eq!(FgAbGroup::trivial().exponent(), BigInt::one());
        assert_eq!(FgAbGroup::cyclic(0, "z").exponent(), BigInt::zero());
        assert!(!FgAbGroup::cyclic(0, "z").has_exponent(&BigInt::zero()));
        // Z/6 + Z/4 = Z/2 + Z/12
        let g = FgAbGroup::cyclic(6, "a").direct_sum(&FgAbGroup::cyclic(4, "b"));
        assert_eq!(g.invariants().torsion, big(&[2, 12]));
    }

    #[test]
    fn quotient_examples() {
        let z2 = FgAbGroup::free_rank_n(2, "e");
        let sub = Lattice::from_i64(z2.clone(), &[&[1, 1], &[2, 0]]).unwrap();
        let q = quotient(&z2, &sub).unwrap();
        assert_eq!(q.invariants(), GroupInvariants { free_rank: 0, torsion: big(&[2]) });
        assert_eq!(q.labels(), z2.labels());

        let z = FgAbGroup::free_rank_n(1, "e");
        let q = quotient(&z, &Lattice::from_i64(z.clone(), &[&[1]]).unwrap()).unwrap();
        assert!(q.is_trivial());

        let z3 = FgAbGroup::free_rank_n(3, "c");
        let q = quotient(&z3, &gamma(3)).unwrap();
        assert_eq!(q.invariants().torsion, big(&[2, 2]));
        assert_eq!(q.exponent(), BigInt::from(2));

        let bad = Lattice::from_i64(z2.clone(), &[&[1, 1]]).unwrap();
        assert_eq!(quotient(&z3, &bad), Err(AbGroupError::RankMismatch { expected: 3, found: 2 }));
        assert_eq!(quotient(&FgAbGroup::cyclic(2, "a"), &Lattice::from_i64(z.clone(), &[&[1]]).unwrap()), Err(AbGroupError::NotFree));
    }

    #[test]
    fn membership_examples() {
        let g = gamma(2);
        assert!(g.contains(&big(&[3, 1])).unwrap());
        assert!(!g.contains(&big(&[1, 0])).unwrap());
        assert!(g.contains(&big(&[0, 0])).unwrap());
        let empty = Lattice::new(FgAbGroup::free_rank_n(2, "c"), vec![]).unwrap();
        assert!(empty.contains(&big(&[0, 0])).unwrap());
        assert_eq!(g.contains(&big(&[1])), Err(AbGroupError::RankMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn lattice_basis_spans_same_subgroup() {
        let g = gamma(3);
        let b = Lattice::new(g.ambient().clone(), g.basis()).unwrap();
        assert_eq!(b.generators().len(), 3);
        assert!(b.same_subgroup(&g).unwrap());
    }

    fn z() -> FgAbGroup {
        FgAbGroup::cyclic(0, "z")
    }

    #[test]
    fn untwisted_bockstein_row_is_exact() {
        let z2 = FgAbGroup::cyclic(2, "r");
        let seq = vec![
            GroupMap::zero(FgAbGroup::trivial(), z()),
            GroupMap::scalar(z(), 2),
            GroupMap::new(z(), z2.clone(), IntMatrix::from_i64(&[&[1]])).unwrap(),
            GroupMap::zero(z2, FgAbGroup::trivial()),
        ];
        assert!(check_exact(&seq).unwrap().is_exact());
    }

    #[test]
    fn reduction_into_z4_fails_at_the_end() {
        let z4 = FgAbGroup::cyclic(4, "r");
        let seq = vec![
            GroupMap::zero(FgAbGroup::trivial(), z()),
            GroupMap::scalar(z(), 2),
            GroupMap::new(z(), z4.clone(), IntMatrix::from_i64(&[&[2]])).unwrap(),
            GroupMap::zero(z4, FgAbGroup::trivial()),
        ];
        assert_eq!(check_exact(&seq).unwrap().failure, Some(3));
        let surjective = GroupMap::new(z(), FgAbGroup::cyclic(4, "r"), IntMatrix::from_i64(&[&[1]])).unwrap();
        // cokernel of the reduction map into Z/4 along 1 -> 2 is Z/2
        assert_eq!(seq[2].cokernel().invariants().torsion, big(&[2]));
        assert!(surjective.cokernel().is_trivial());
    }

    #[test]
    fn identity_on_z2_is_exact() {
        let z2 = FgAbGroup::cyclic(2, "a");
        let seq = vec![
            GroupMap::zero(FgAbGroup::trivial(), z2.clone()),
            GroupMap::identity(z2.clone()),
            GroupMap::zero(z2, FgAbGroup::trivial()),
        ];
        assert!(check_exact(&seq).unwrap().is_exact());
    }

    #[test]
    fn construction_rejects_ill_defined_maps() {
        // Z/2 -> Z, 1 -> 1 does not respect 2 = 0
        let r = GroupMap::new(FgAbGroup::cyclic(2, "a"), z(), IntMatrix::from_i64(&[&[1]]));
        assert_eq!(r, Err(AbGroupError::IllDefinedMap));
        let ok = GroupMap::new(FgAbGroup::cyclic(2, "a"), FgAbGroup::cyclic(4, "b"), IntMatrix::from_i64(&[&[2]]));
        assert!(ok.is_ok());
    }

    #[test]
    fn not_composable_is_reported() {
        let seq = vec![GroupMap::identity(z()), GroupMap::identity(FgAbGroup::cyclic(2, "a"))];
        assert_eq!(check_exact(&seq), Err(AbGroupError::NotComposable { index: 0 }));
    }

    #[test]
    fn kernel_of_reduction() {
        let red = GroupMap::new(z(), FgAbGroup::cyclic(6, "r"), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(red.kernel().invariants(), GroupInvariants { free_rank: 1, torsion: vec![] });
        // Z/12 -> Z/4 reduction has kernel Z/3
        let red = GroupMap::new(FgAbGroup::cyclic(12, "a"), FgAbGroup::cyclic(4, "b"), IntMatrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(red.kernel().invariants().torsion, big(&[3]));
        assert_eq!(red.image().invariants().torsion, big(&[4]));
    }

    fn finite_group() -> impl Strategy<Value = FgAbGroup> {
        prop::collection::vec(1u64..8, 1..4).prop_map(|ds| {
            ds.iter()
                .enumerate()
                .fold(FgAbGroup::trivial(), |g, (i, &d)| g.direct_sum(&FgAbGroup::cyclic(d, &format!("g{i}"))))
        })
    }

    proptest! {
        #[test]
        fn hermite_basis_decides_equality(a in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5), b in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..5)) {
            let amb = FgAbGroup::free_rank_n(3, "c");
            let la = Lattice::new(amb.clone(), a.iter().map(|v| big(v)).collect()).unwrap();
            let lb = Lattice::new(amb.clone(), b.iter().map(|v| big(v)).collect()).unwrap();
            let hb = Lattice::new(amb, la.hermite_basis()).unwrap();
            prop_assert!(hb.same_subgroup(&la).unwrap());
            prop_assert_eq!(la.same_subgroup(&lb).unwrap(), la.hermite_basis() == lb.hermite_basis());
        }

        #[test]
        fn direct_product_exponent_is_lcm(a in finite_group(), b in finite_group()) {
            let s = a.direct_sum(&b);
            prop_assert_eq!(s.exponent(), a.exponent().lcm(&b.exponent()));
        }

        #[test]
        fn subgroup_and_quotient_orders_multiply(g in finite_group(), w in prop::collection::vec(-4i64..=4, 0..6)) {
            let n = g.num_generators();
            let cols: Vec<Vec<BigInt>> = w.chunks(n).filter(|c| c.len() == n).map(big).collect();
            let gens = IntMatrix::from_columns(n, &cols);
            let sub = g.subgroup(&gens).unwrap();
            let quo = g.quotient_by(&gens).unwrap();
            prop_assert_eq!(sub.order().unwrap() * quo.order().unwrap(), g.order().unwrap());
        }
    }
}
