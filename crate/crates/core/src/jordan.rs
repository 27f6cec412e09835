//! Jordan data: extraction from concrete matrices by rank sequences,
//! canonical representatives, and the derived invariants.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::partition::Partition;
use crate::scalar::{FieldSpec, Scalar};

/// Abstract Jordan data: the multiset of Jordan block partitions, one per
/// distinct eigenvalue, with the eigenvalue labels discarded.
///
/// Two matrices have the same abstract Jordan data exactly when one is
/// obtained from the other by conjugation and relabeling of (distinct)
/// eigenvalues.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JordanData {
    blocks: Vec<Partition>,
}

impl JordanData {
    /// Canonicalizes the multiset (sorted descending).
    pub fn new(mut blocks: Vec<Partition>) -> Result<Self, Error> {
        if blocks.is_empty() {
            return Err(Error::EmptyJordanData);
        }
        blocks.sort_by(|a, b| b.cmp(a));
        Ok(JordanData { blocks })
    }

    pub fn single(lambda: Partition) -> Self {
        JordanData {
            blocks: vec![lambda],
        }
    }

    pub fn blocks(&self) -> &[Partition] {
        &self.blocks
    }

    /// Total matrix size.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Partition::size).sum()
    }

    /// Number of distinct eigenvalues.
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    /// Componentwise sum of the block partitions.
    pub fn gamma(&self) -> Partition {
        Partition::add(self.blocks.iter())
    }

    /// Dimension of the largest eigenspace: the maximum number of Jordan
    /// blocks attached to a single eigenvalue. Also the number of parts of
    /// gamma, which is asserted.
    pub fn max_eigenspace_dim(&self) -> usize {
        let d = self.blocks.iter().map(Partition::len).max().unwrap();
        debug_assert_eq!(d, self.gamma().len());
        debug_assert_eq!(d, self.gamma().transpose().part(0));
        d
    }

    /// Degree of the minimal polynomial: the sum over eigenvalues of the
    /// largest block size.
    pub fn min_poly_degree(&self) -> usize {
        self.blocks.iter().map(|p| p.part(0)).sum()
    }

    pub fn has_quadratic_min_poly(&self) -> bool {
        self.min_poly_degree() == 2
    }

    /// Centralizer dimension: the per-eigenvalue sums must agree with the
    /// squared parts of the transpose of gamma, and both are computed.
    pub fn centralizer_dim(&self) -> usize {
        let per_eigenvalue: usize = self.blocks.iter().map(Partition::centralizer_dim).sum();
        let via_gamma: usize = self
            .gamma()
            .transpose()
            .parts()
            .iter()
            .map(|&d| d * d)
            .sum();
        assert_eq!(per_eigenvalue, via_gamma, "centralizer identity violated");
        per_eigenvalue
    }

    /// Every multiset of partitions with total size `n`, exactly once, in a
    /// deterministic order.
    pub fn enumerate(n: usize) -> Vec<JordanData> {
        assert!(n >= 1);
        let mut pool: Vec<Partition> = (1..=n).flat_map(Partition::enumerate).collect();
        pool.sort_by(|a, b| b.cmp(a));
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn go(
            pool: &[Partition],
            start: usize,
            remaining: usize,
            chosen: &mut Vec<Partition>,
            out: &mut Vec<JordanData>,
        ) {
            if remaining == 0 {
                out.push(JordanData {
                    blocks: chosen.clone(),
                });
                return;
            }
            for i in start..pool.len() {
                if pool[i].size() > remaining {
                    continue;
                }
                chosen.push(pool[i].clone());
                go(pool, i, remaining - pool[i].size(), chosen, out);
                chosen.pop();
            }
        }
        go(&pool, 0, n, &mut chosen, &mut out);
        out
    }

    /// Canonical concrete representative: block-diagonal Jordan matrix with
    /// eigenvalues 1, 2, ..., m in canonical block order. Over F_p this
    /// needs p > m so the labels stay distinct.
    pub fn representative(&self, field: FieldSpec) -> Result<Matrix, Error> {
        let concrete = self.concrete_representative(field)?;
        Ok(concrete.matrix())
    }

    pub fn concrete_representative(&self, field: FieldSpec) -> Result<ConcreteJordanData, Error> {
        if let Some(size) = field.size() {
            if (self.m() as u64) >= size {
                return Err(Error::FieldTooSmall {
                    field,
                    needed: self.m() + 1,
                });
            }
        }
        let entries = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, lam)| (field.from_i64(i as i64 + 1), lam.clone()))
            .collect();
        Ok(ConcreteJordanData { entries })
    }
}

impl fmt::Display for JordanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for JordanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JordanData{self}")
    }
}

impl Serialize for JordanData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("JordanData", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("blocks", &self.blocks)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for JordanData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as DeError;
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            blocks: Vec<Partition>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let data = JordanData::new(repr.blocks).map_err(D::Error::custom)?;
        if data.n() != repr.n {
            return Err(D::Error::custom(Error::SizeMismatch {
                declared: repr.n,
                actual: data.n(),
            }));
        }
        Ok(data)
    }
}

/// Concrete Jordan data: distinct eigenvalues paired with their block
/// partitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConcreteJordanData {
    entries: Vec<(Scalar, Partition)>,
}

impl ConcreteJordanData {
    pub fn new(entries: Vec<(Scalar, Partition)>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyJordanData);
        }
        for i in 0..entries.len() {
            for j in i + 1..entries.len() {
                if entries[i].0 == entries[j].0 {
                    return Err(Error::EmptyJordanData);
                }
            }
        }
        let mut entries = entries;
        canonical_sort(&mut entries);
        Ok(ConcreteJordanData { entries })
    }

    pub fn entries(&self) -> &[(Scalar, Partition)] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.iter().map(|(_, p)| p.size()).sum()
    }

    pub fn field(&self) -> FieldSpec {
        self.entries[0].0.field()
    }

    /// Forgets the eigenvalue labels.
    pub fn abstract_type(&self) -> JordanData {
        JordanData::new(self.entries.iter().map(|(_, p)| p.clone()).collect())
            .expect("concrete data is nonempty")
    }

    /// The block-diagonal Jordan canonical form these data describe.
    pub fn matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .entries
            .iter()
            .flat_map(|(eig, lam)| {
                lam.parts()
                    .iter()
                    .map(|&size| jordan_block(eig, size))
                    .collect::<Vec<_>>()
            })
            .collect();
        Matrix::block_diag(&blocks)
    }
}

fn canonical_sort(entries: &mut [(Scalar, Partition)]) {
    entries.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then_with(|| a.0.sort_key().cmp(&b.0.sort_key()))
    });
}

impl Serialize for ConcreteJordanData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            eig: String,
            partition: &'a Partition,
        }
        let mut st = serializer.serialize_struct("ConcreteJordanData", 2)?;
        st.serialize_field("n", &self.n())?;
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(eig, partition)| Entry {
                eig: eig.to_string(),
                partition,
            })
            .collect();
        st.serialize_field("concrete", &entries)?;
        st.end()
    }
}

/// Single Jordan block J_size(eig): `eig` on the diagonal, ones on the
/// superdiagonal.
pub fn jordan_block(eig: &Scalar, size: usize) -> Matrix {
    let field = eig.field();
    Matrix::from_fn(field, size, size, |i, j| {
        if i == j {
            eig.clone()
        } else if j == i + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// Computes the concrete Jordan data of a square matrix whose
/// characteristic polynomial splits over its field.
///
/// For each eigenvalue a, the transpose of its partition is read off the
/// rank sequence r_k = rank((A - aI)^k): part k is r_{k-1} - r_k. Powers
/// stop at the first stationary rank.
pub fn jordan_type_of(a: &Matrix) -> Result<ConcreteJordanData, Error> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    let n = a.rows();
    let chi = a.char_poly()?;
    let roots = chi.split_roots()?;
    let mut entries = Vec::with_capacity(roots.len());
    for (alpha, mult) in roots {
        let shifted = a.shift(&alpha);
        let mut diffs = Vec::new();
        let mut prev_rank = n;
        let mut power = shifted.clone();
        loop {
            let r = power.rank();
            if r == prev_rank {
                break;
            }
            diffs.push(prev_rank - r);
            prev_rank = r;
            power = power.mul(&shifted);
        }
        let tlambda = Partition::new(diffs).expect("rank differences are nonincreasing");
        let lambda = tlambda.transpose();
        debug_assert_eq!(
            lambda.size(),
            mult,
            "partition size must match multiplicity"
        );
        entries.push((alpha, lambda));
    }
    ConcreteJordanData::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::testutil;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rational;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn jd(blocks: &[&[usize]]) -> JordanData {
        JordanData::new(blocks.iter().map(|b| p(b)).collect()).unwrap()
    }

    /// Independent counter for multisets of partitions with total size n:
    /// bounded-multiplicity knapsack over the partition pool, sharing no
    /// code with JordanData::enumerate.
    fn count_multiset_types(n: usize) -> usize {
        let pool: Vec<usize> = (1..=n)
            .flat_map(|k| Partition::enumerate(k).into_iter().map(|p| p.size()))
            .collect();
        // ways[m] = multisets of pool items (each usable unboundedly) summing to m;
        // process items one at a time to count multisets, not sequences
        let mut ways = vec![0usize; n + 1];
        ways[0] = 1;
        for item in pool {
            for m in item..=n {
                ways[m] += ways[m - item];
            }
        }
        ways[n]
    }

    #[test]
    fn derived_invariants() {
        let d = jd(&[&[2, 1], &[1, 1]]);
        assert_eq!(d.max_eigenspace_dim(), 2);
        assert_eq!(d.min_poly_degree(), 3);
        assert_eq!(d.n(), 5);
        assert_eq!(d.m(), 2);
        assert_eq!(d.gamma(), p(&[3, 2]));

        assert_eq!(jd(&[&[4]]).max_eigenspace_dim(), 1);
        assert_eq!(jd(&[&[1, 1, 1]]).max_eigenspace_dim(), 3);
        assert_eq!(jd(&[&[2], &[1, 1]]).min_poly_degree(), 3);
        assert_eq!(jd(&[&[1, 1], &[1, 1]]).min_poly_degree(), 2);
        assert!(jd(&[&[1, 1], &[1, 1]]).has_quadratic_min_poly());
        assert_eq!(jd(&[&[2, 1], &[3]]).min_poly_degree(), 5);
    }

    #[test]
    fn centralizer_dim_examples() {
        assert_eq!(jd(&[&[2], &[1, 1]]).centralizer_dim(), 6);
        assert_eq!(jd(&[&[1, 1, 1, 1]]).centralizer_dim(), 16);
        assert_eq!(jd(&[&[5]]).centralizer_dim(), 5);
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(jd(&[&[2], &[1, 1]]).gamma(), p(&[3, 1]));
        assert_eq!(jd(&[&[3, 1]]).gamma(), p(&[3, 1]));
        assert_eq!(jd(&[&[3, 1], &[2, 2]]).gamma(), p(&[5, 3]));
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(JordanData::enumerate(1), vec![jd(&[&[1]])]);
        let two = JordanData::enumerate(2);
        assert_eq!(two.len(), 3);
        assert!(two.contains(&jd(&[&[2]])));
        assert!(two.contains(&jd(&[&[1, 1]])));
        assert!(two.contains(&jd(&[&[1], &[1]])));
        assert_eq!(JordanData::enumerate(3).len(), 6);
        for n in 1..=8 {
            let all = JordanData::enumerate(n);
            assert_eq!(all.len(), count_multiset_types(n), "n={n}");
            for d in &all {
                assert_eq!(d.n(), n);
            }
            // exactly once
            let seen: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(seen.len(), all.len());
        }
    }

    #[test]
    fn jordan_type_examples() {
        let m = Matrix::from_i64_rows(Q, &[&[5]]);
        let t = jordan_type_of(&m).unwrap();
        assert_eq!(t.entries(), &[(Q.from_i64(5), p(&[1]))]);

        let m = Matrix::from_i64_rows(Q, &[&[2, 1], &[0, 2]]);
        let t = jordan_type_of(&m).unwrap();
        assert_eq!(t.entries(), &[(Q.from_i64(2), p(&[2]))]);

        let m = Matrix::from_i64_rows(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let t = jordan_type_of(&m).unwrap();
        assert_eq!(
            t.entries(),
            &[(Q.from_i64(1), p(&[1, 1])), (Q.from_i64(2), p(&[1]))]
        );
    }

    #[test]
    fn round_trip_all_types_up_to_6() {
        for n in 1..=6 {
            for delta in JordanData::enumerate(n) {
                let rep = delta.representative(Q).unwrap();
                let recovered = jordan_type_of(&rep).unwrap().abstract_type();
                assert_eq!(recovered, delta, "round trip failed at n={n}");
            }
        }
    }

    #[test]
    fn round_trip_over_prime_field() {
        let f5 = FieldSpec::Prime(5);
        for delta in JordanData::enumerate(4) {
            if delta.m() >= 5 {
                continue;
            }
            let rep = delta.representative(f5).unwrap();
            assert_eq!(jordan_type_of(&rep).unwrap().abstract_type(), delta);
        }
        // p <= m is refused
        let f2 = FieldSpec::Prime(2);
        let three_eigs = jd(&[&[1], &[1], &[1]]);
        assert!(matches!(
            three_eigs.representative(f2),
            Err(Error::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn similarity_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 2..=5 {
            for delta in JordanData::enumerate(n).into_iter().take(4) {
                let rep = delta.representative(Q).unwrap();
                let g = testutil::random_invertible(Q, n, &mut rng);
                let conj = g.mul(&rep).mul(&g.inverse().unwrap());
                assert_eq!(jordan_type_of(&conj).unwrap().abstract_type(), delta);
            }
        }
    }

    #[test]
    fn commutant_oracle_matches_formula() {
        // ties the rank oracle to the partition formula for every type of
        // size <= 5 with a known-by-construction representative
        for n in 1..=5 {
            for delta in JordanData::enumerate(n) {
                let rep = delta.representative(Q).unwrap();
                assert_eq!(
                    rep.commutant_dim().unwrap(),
                    delta.centralizer_dim(),
                    "commutant mismatch for {delta}"
                );
            }
        }
    }

    #[test]
    fn rank_sequences_reconstruct_canonical_form() {
        // jordan_type_of output rebuilds a matrix similar to the input:
        // all rank sequences of (A - aI)^k agree
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for delta in JordanData::enumerate(4) {
            let a = delta.representative(Q).unwrap();
            let g = testutil::random_invertible(Q, 4, &mut rng);
            let conj = g.mul(&a).mul(&g.inverse().unwrap());
            let concrete = jordan_type_of(&conj).unwrap();
            let rebuilt = concrete.matrix();
            for (alpha, _) in concrete.entries() {
                let mut x = conj.shift(alpha);
                let mut y = rebuilt.shift(alpha);
                let (sx, sy) = (x.clone(), y.clone());
                for _ in 0..4 {
                    assert_eq!(x.rank(), y.rank());
                    x = x.mul(&sx);
                    y = y.mul(&sy);
                }
            }
        }
    }

    #[test]
    fn max_eigenspace_dim_equals_gamma_parts() {
        for n in 1..=6 {
            for delta in JordanData::enumerate(n) {
                assert_eq!(delta.max_eigenspace_dim(), delta.gamma().len());
            }
        }
    }

    #[test]
    fn json_formats() {
        let d = jd(&[&[2], &[1, 1]]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":4,"blocks":[[2],[1,1]]}"#);
        let back: JordanData = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<JordanData>(r#"{"n":5,"blocks":[[2],[1,1]]}"#).is_err());

        let concrete = d.concrete_representative(Q).unwrap();
        let json = serde_json::to_string(&concrete).unwrap();
        assert_eq!(
            json,
            r#"{"n":4,"concrete":[{"eig":"1","partition":[2]},{"eig":"2","partition":[1,1]}]}"#
        );
    }

    #[test]
    fn non_split_propagates() {
        // rotation-like matrix over F_3: char poly x^2 + 1
        let f3 = FieldSpec::Prime(3);
        let m = Matrix::from_i64_rows(f3, &[&[0, -1], &[1, 0]]);
        assert!(matches!(jordan_type_of(&m), Err(Error::NonSplit(_))));
    }

    #[test]
    fn fractional_eigenvalues() {
        // J_2(1/2) + J_1(-3/2): non-integer rational spectrum
        let half = Q.parse("1/2").unwrap();
        let mth = Q.parse("-3/2").unwrap();
        let m = Matrix::block_diag(&[jordan_block(&half, 2), jordan_block(&mth, 1)]);
        let t = jordan_type_of(&m).unwrap();
        assert_eq!(t.entries(), &[(half, p(&[2])), (mth, p(&[1]))]);
        assert_eq!(t.abstract_type(), jd(&[&[2], &[1]]));
    }
}
