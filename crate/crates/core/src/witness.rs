//! Explicit parametrized matrix families whose generic fiber lies in one
//! variety and whose specialization lands in a smaller one, witnessing the
//! two closure containments of the degeneration sandwich.
//!
//! Both families are built from regular blocks: upper-triangular pieces
//! with an all-ones superdiagonal, whose Jordan form has exactly one block
//! per distinct diagonal value, of size its multiplicity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::jordan::{jordan_type_of, JordanData};
use crate::matrix::Matrix;
use crate::partition::Partition;
use crate::scalar::{FieldSpec, Scalar};

/// Which closure containment a family witnesses.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum WitnessKind {
    /// Semisimple matrices degenerating onto the Jordan type: generic fiber
    /// in S(gamma'), special fiber of type delta.
    #[serde(rename = "ss-to-x")]
    SemisimpleToX,
    /// The Jordan type degenerating onto a single eigenvalue: generic fiber
    /// of type delta, special fiber in U(gamma).
    #[serde(rename = "x-to-u")]
    XToU,
}

/// Where a parameter slot goes under specialization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpecTarget {
    /// Collapse onto another slot's value.
    Slot(usize),
    /// Pin to a constant.
    Constant(i64),
}

/// A parametrized block-diagonal matrix family. Each block is
/// upper-triangular with an all-ones superdiagonal; its diagonal is a
/// concatenation of runs, each run repeating one parameter slot.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    kind: WitnessKind,
    n: usize,
    slot_names: Vec<String>,
    /// Per block: (slot index, multiplicity) runs along the diagonal.
    blocks: Vec<Vec<(usize, usize)>>,
    /// Per slot: value in the degenerate fiber.
    specialization: Vec<SpecTarget>,
    generic_type: JordanData,
    special_type: JordanData,
}

impl WitnessFamily {
    /// Family for the containment "the semisimple variety closure contains
    /// the Jordan type": one block per part of each eigenvalue's partition.
    ///
    /// For eigenvalue j with partition parts m_{j,1} >= m_{j,2} >= ..., the
    /// i-th block has diagonal (a_{j,1}, ..., a_{j,m_{j,i}}). With all
    /// slots distinct the fiber is semisimple with eigenspace dimensions
    /// the transpose parts; collapsing a_{j,*} onto a_{j,1} per eigenvalue
    /// recovers type delta.
    pub fn semisimple_to_x(delta: &JordanData) -> WitnessFamily {
        let mut slot_names = Vec::new();
        let mut slot_base = Vec::new(); // first slot index of each eigenvalue
        for (j, lam) in delta.blocks().iter().enumerate() {
            slot_base.push(slot_names.len());
            for k in 1..=lam.part(0) {
                slot_names.push(format!("a{}_{}", j + 1, k));
            }
        }
        let mut blocks = Vec::new();
        for (j, lam) in delta.blocks().iter().enumerate() {
            for &part in lam.parts() {
                let runs = (0..part).map(|k| (slot_base[j] + k, 1)).collect();
                blocks.push(runs);
            }
        }
        let mut specialization = vec![SpecTarget::Slot(0); slot_names.len()];
        for (j, lam) in delta.blocks().iter().enumerate() {
            for k in 0..lam.part(0) {
                specialization[slot_base[j] + k] = SpecTarget::Slot(slot_base[j]);
            }
        }
        // generic fiber: slot a_{j,k} is an eigenvalue with eigenspace
        // dimension (transpose of delta_j)_k; the multiset of those
        // dimensions is exactly the parts of gamma'
        let mut eigenspace_dims = Vec::new();
        for lam in delta.blocks() {
            eigenspace_dims.extend_from_slice(lam.transpose().parts());
        }
        let generic_type = JordanData::new(
            eigenspace_dims
                .iter()
                .map(|&d| Partition::new(vec![1; d]).unwrap())
                .collect(),
        )
        .expect("at least one eigenvalue");
        debug_assert_eq!(
            {
                let mut sorted = eigenspace_dims.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                sorted
            },
            delta.gamma().transpose().parts().to_vec(),
            "per-eigenvalue transposes must union to gamma'"
        );
        WitnessFamily {
            kind: WitnessKind::SemisimpleToX,
            n: delta.n(),
            slot_names,
            blocks,
            specialization,
            generic_type,
            special_type: delta.clone(),
        }
    }

    /// Family for the containment "the Jordan type closure contains the
    /// equipotent variety": one block per column of gamma.
    ///
    /// Block c has diagonal runs (alpha_j repeated (delta_j)_c) and size
    /// gamma_c. With distinct alpha_j each block contributes one Jordan
    /// block of size (delta_j)_c per eigenvalue, so the generic fiber has
    /// type delta; collapsing all alpha_j gives a single eigenvalue with
    /// block sizes gamma.
    pub fn x_to_u(delta: &JordanData) -> WitnessFamily {
        let gamma = delta.gamma();
        let slot_names: Vec<String> = (1..=delta.m()).map(|j| format!("a{j}")).collect();
        let mut blocks = Vec::new();
        for c in 0..gamma.len() {
            let mut runs = Vec::new();
            for (j, lam) in delta.blocks().iter().enumerate() {
                let mult = lam.part(c);
                if mult > 0 {
                    runs.push((j, mult));
                }
            }
            blocks.push(runs);
        }
        let specialization = vec![SpecTarget::Slot(0); slot_names.len()];
        WitnessFamily {
            kind: WitnessKind::XToU,
            n: delta.n(),
            slot_names,
            blocks,
            specialization,
            generic_type: delta.clone(),
            special_type: JordanData::single(gamma),
        }
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slot_count(&self) -> usize {
        self.slot_names.len()
    }

    pub fn slot_names(&self) -> &[String] {
        &self.slot_names
    }

    pub fn generic_type(&self) -> &JordanData {
        &self.generic_type
    }

    pub fn special_type(&self) -> &JordanData {
        &self.special_type
    }

    /// Evaluates the family at a full slot assignment.
    pub fn specialize(&self, values: &[Scalar]) -> Matrix {
        assert_eq!(values.len(), self.slot_names.len(), "one value per slot");
        let blocks: Vec<Matrix> = self
            .blocks
            .iter()
            .map(|runs| {
                let diagonal: Vec<(Scalar, usize)> = runs
                    .iter()
                    .map(|&(slot, mult)| (values[slot].clone(), mult))
                    .collect();
                regular_block(&diagonal)
            })
            .collect();
        Matrix::block_diag(&blocks)
    }

    /// Applies the specialization rule to a generic assignment, producing
    /// the degenerate fiber's slot values.
    pub fn specialized_values(&self, values: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
        self.specialization
            .iter()
            .map(|t| match t {
                SpecTarget::Slot(s) => values[*s].clone(),
                SpecTarget::Constant(c) => field.from_i64(*c),
            })
            .collect()
    }
}

impl Serialize for WitnessFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Run<'a> {
            slot: &'a str,
            mult: usize,
        }
        #[derive(Serialize)]
        struct Rule<'a> {
            slot: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            to_slot: Option<&'a str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            to_constant: Option<i64>,
        }
        let mut st = serializer.serialize_struct("WitnessFamily", 6)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("slots", &self.slot_names)?;
        let blocks: Vec<Vec<Run>> = self
            .blocks
            .iter()
            .map(|runs| {
                runs.iter()
                    .map(|&(slot, mult)| Run {
                        slot: &self.slot_names[slot],
                        mult,
                    })
                    .collect()
            })
            .collect();
        st.serialize_field("blocks", &blocks)?;
        let rules: Vec<Rule> = self
            .specialization
            .iter()
            .enumerate()
            .map(|(i, t)| match t {
                SpecTarget::Slot(s) => Rule {
                    slot: &self.slot_names[i],
                    to_slot: Some(&self.slot_names[*s]),
                    to_constant: None,
                },
                SpecTarget::Constant(c) => Rule {
                    slot: &self.slot_names[i],
                    to_slot: None,
                    to_constant: Some(*c),
                },
            })
            .collect();
        st.serialize_field("specialization", &rules)?;
        st.serialize_field("generic_type", &self.generic_type)?;
        st.serialize_field("special_type", &self.special_type)?;
        st.end()
    }
}

/// Upper-triangular matrix with the given diagonal runs and an all-ones
/// superdiagonal. With pairwise-distinct run values this is a regular
/// matrix: one Jordan block per value, of size its multiplicity.
pub fn regular_block(diagonal: &[(Scalar, usize)]) -> Matrix {
    assert!(!diagonal.is_empty());
    assert!(diagonal.iter().all(|(_, m)| *m >= 1));
    let field = diagonal[0].0.field();
    let values: Vec<&Scalar> = diagonal
        .iter()
        .flat_map(|(v, m)| std::iter::repeat_n(v, *m))
        .collect();
    let n = values.len();
    Matrix::from_fn(field, n, n, |i, j| {
        if i == j {
            values[i].clone()
        } else if j == i + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

/// One verified sample of a witness family.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessSample {
    pub assignment: Vec<String>,
    pub special_assignment: Vec<String>,
    pub generic_observed: JordanData,
    pub special_observed: JordanData,
}

/// The record produced by verifying a family: every sampled generic fiber
/// and its specialization had the declared types, and the two ends of the
/// degeneration share their centralizer dimension.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub kind: WitnessKind,
    pub n: usize,
    pub field: FieldSpec,
    pub seed: u64,
    pub samples: Vec<WitnessSample>,
    pub generic_type: JordanData,
    pub special_type: JordanData,
    pub centralizer_dim: usize,
    pub pass: bool,
}

fn sample_distinct(field: FieldSpec, count: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    // rejection sampling: draw until all values are pairwise distinct
    'outer: loop {
        let mut vals = Vec::with_capacity(count);
        for _ in 0..count {
            let v = match field {
                FieldSpec::Rational => field.from_i64(rng.random_range(0..4 * count as i64 + 16)),
                FieldSpec::Prime(p) => field.from_i64(rng.random_range(0..p) as i64),
            };
            vals.push(v);
        }
        for i in 0..count {
            for j in i + 1..count {
                if vals[i] == vals[j] {
                    continue 'outer;
                }
            }
        }
        return vals;
    }
}

fn check_fiber(
    family: &WitnessFamily,
    fiber: &str,
    values: &[Scalar],
    expected: &JordanData,
) -> Result<JordanData, Error> {
    let matrix = family.specialize(values);
    let observed = jordan_type_of(&matrix)?.abstract_type();
    if observed != *expected {
        return Err(Error::TypeMismatch {
            fiber: fiber.to_string(),
            assignment: format!(
                "[{}]",
                values
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            expected: expected.to_string(),
            observed: observed.to_string(),
        });
    }
    Ok(observed)
}

/// Verifies a family at `samples` seeded random parameter assignments with
/// pairwise-distinct values: the generic fiber must have the declared
/// generic type and the specialized fiber the declared special type; both
/// ends must agree on centralizer dimension.
pub fn verify_witness(
    family: &WitnessFamily,
    field: FieldSpec,
    samples: usize,
    seed: u64,
) -> Result<WitnessReport, Error> {
    let needed = family.slot_count() + family.special_type.m();
    if let Some(size) = field.size() {
        if size <= needed as u64 {
            return Err(Error::FieldTooSmall {
                field,
                needed: needed + 1,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out_samples = Vec::with_capacity(samples);
    for _ in 0..samples {
        let vals = sample_distinct(field, family.slot_count(), &mut rng);
        let generic_observed = check_fiber(family, "generic", &vals, &family.generic_type)?;
        let svals = family.specialized_values(&vals, field);
        let special_observed = check_fiber(family, "special", &svals, &family.special_type)?;
        out_samples.push(WitnessSample {
            assignment: vals.iter().map(|v| v.to_string()).collect(),
            special_assignment: svals.iter().map(|v| v.to_string()).collect(),
            generic_observed,
            special_observed,
        });
    }
    let generic_c = family.generic_type.centralizer_dim();
    let special_c = family.special_type.centralizer_dim();
    if generic_c != special_c {
        return Err(Error::TypeMismatch {
            fiber: "centralizer".to_string(),
            assignment: String::new(),
            expected: generic_c.to_string(),
            observed: special_c.to_string(),
        });
    }
    Ok(WitnessReport {
        kind: family.kind,
        n: family.n,
        field,
        seed,
        samples: out_samples,
        generic_type: family.generic_type.clone(),
        special_type: family.special_type.clone(),
        centralizer_dim: generic_c,
        pass: true,
    })
}

/// Curve-mode verification: slots move along the line
/// `value(t) = target + t * offset` with per-slot offsets, so t != 0 gives
/// generic fibers and t = 0 is exactly the specialization.
pub fn verify_witness_curve(
    family: &WitnessFamily,
    field: FieldSpec,
    t_values: usize,
    seed: u64,
) -> Result<WitnessReport, Error> {
    let needed = family.slot_count() + family.special_type.m() + t_values + 1;
    if let Some(size) = field.size() {
        if size <= needed as u64 {
            return Err(Error::FieldTooSmall {
                field,
                needed: needed + 1,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = sample_distinct(field, family.slot_count(), &mut rng);
    let targets = family.specialized_values(&base, field);
    let offsets: Vec<Scalar> = (0..family.slot_count())
        .map(|i| field.from_i64(i as i64 + 1))
        .collect();
    let at = |t: &Scalar| -> Vec<Scalar> {
        targets
            .iter()
            .zip(offsets.iter())
            .map(|(target, offset)| target.add(&t.mul(offset)))
            .collect()
    };
    let mut out_samples = Vec::new();
    let mut t_int: i64 = 0;
    let mut found = 0;
    while found < t_values {
        t_int += 1;
        let t = field.from_i64(t_int);
        let vals = at(&t);
        // skip t where distinct targets accidentally collide
        let collision = (0..vals.len()).any(|i| (i + 1..vals.len()).any(|j| vals[i] == vals[j]));
        if collision {
            continue;
        }
        found += 1;
        let generic_observed = check_fiber(family, "generic", &vals, &family.generic_type)?;
        let svals = at(&field.zero());
        let special_observed = check_fiber(family, "special", &svals, &family.special_type)?;
        out_samples.push(WitnessSample {
            assignment: vals.iter().map(|v| v.to_string()).collect(),
            special_assignment: svals.iter().map(|v| v.to_string()).collect(),
            generic_observed,
            special_observed,
        });
    }
    Ok(WitnessReport {
        kind: family.kind,
        n: family.n,
        field,
        seed,
        samples: out_samples,
        generic_type: family.generic_type.clone(),
        special_type: family.special_type.clone(),
        centralizer_dim: family.generic_type.centralizer_dim(),
        pass: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::fixed_dim_formula;

    const Q: FieldSpec = FieldSpec::Rational;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn jd(blocks: &[&[usize]]) -> JordanData {
        JordanData::new(blocks.iter().map(|b| p(b)).collect()).unwrap()
    }

    #[test]
    fn regular_block_examples() {
        let b = regular_block(&[(Q.one(), 2), (Q.from_i64(2), 1)]);
        assert_eq!(b.rows(), 3);
        let t = jordan_type_of(&b).unwrap();
        assert_eq!(t.entries(), &[(Q.one(), p(&[2])), (Q.from_i64(2), p(&[1]))]);

        let single = regular_block(&[(Q.from_i64(5), 1)]);
        assert_eq!(
            jordan_type_of(&single).unwrap().entries(),
            &[(Q.from_i64(5), p(&[1]))]
        );

        // all-equal values give one nilpotent-style regular block
        let nil = regular_block(&[(Q.zero(), 4)]);
        assert_eq!(
            jordan_type_of(&nil).unwrap().entries(),
            &[(Q.zero(), p(&[4]))]
        );
    }

    #[test]
    fn regular_block_with_distinct_values_is_cyclic() {
        // commutant dimension n = regularity
        for sizes in [vec![1usize, 1], vec![2, 1], vec![3, 2, 1]] {
            let diag: Vec<(Scalar, usize)> = sizes
                .iter()
                .enumerate()
                .map(|(i, &m)| (Q.from_i64(i as i64 + 1), m))
                .collect();
            let b = regular_block(&diag);
            assert_eq!(b.commutant_dim().unwrap(), b.rows());
        }
    }

    #[test]
    fn semisimple_family_layout() {
        // delta = {(2,1)}: blocks sizes 2 and 1, slots a1_1, a1_2
        let f = WitnessFamily::semisimple_to_x(&jd(&[&[2, 1]]));
        assert_eq!(f.slot_names(), &["a1_1", "a1_2"]);
        assert_eq!(f.n(), 3);
        assert_eq!(f.generic_type(), &jd(&[&[1, 1], &[1]]));
        assert_eq!(f.special_type(), &jd(&[&[2, 1]]));

        let m = f.specialize(&[Q.one(), Q.from_i64(2)]);
        // diag (1, 2 | 1) with ones on the whole superdiagonal
        assert_eq!(m.get(0, 0), &Q.one());
        assert_eq!(m.get(1, 1), &Q.from_i64(2));
        assert_eq!(m.get(2, 2), &Q.one());
        assert_eq!(m.get(0, 1), &Q.one());
        // block boundary: no coupling between blocks
        assert!(m.get(1, 2).is_zero());
    }

    #[test]
    fn x_to_u_family_layout() {
        // delta = {(2),(1,1)}: gamma = (3,1); block 1 diag (a1,a1,a2), block 2 diag (a2)
        let f = WitnessFamily::x_to_u(&jd(&[&[2], &[1, 1]]));
        assert_eq!(f.slot_names(), &["a1", "a2"]);
        let m = f.specialize(&[Q.one(), Q.from_i64(2)]);
        assert_eq!(m.rows(), 4);
        let diag: Vec<String> = (0..4).map(|i| m.get(i, i).to_string()).collect();
        assert_eq!(diag, vec!["1", "1", "2", "2"]);
        let t = jordan_type_of(&m).unwrap();
        assert_eq!(t.abstract_type(), jd(&[&[2], &[1, 1]]));

        // special fiber: nilpotent-shape (3,1) at the collapsed eigenvalue
        let sv = f.specialized_values(&[Q.one(), Q.from_i64(2)], Q);
        let s = f.specialize(&sv);
        assert_eq!(jordan_type_of(&s).unwrap().abstract_type(), jd(&[&[3, 1]]));
    }

    #[test]
    fn verify_small_families_both_fields() {
        for n in 1..=4 {
            for delta in JordanData::enumerate(n) {
                for family in [
                    WitnessFamily::semisimple_to_x(&delta),
                    WitnessFamily::x_to_u(&delta),
                ] {
                    let r = verify_witness(&family, Q, 3, 17).unwrap();
                    assert!(r.pass);
                    let needed = family.slot_count() + family.special_type().m();
                    let p = first_prime_above(needed as u64);
                    let r = verify_witness(&family, FieldSpec::Prime(p), 3, 17).unwrap();
                    assert!(r.pass);
                }
            }
        }
    }

    fn first_prime_above(n: u64) -> u64 {
        let mut p = n + 1;
        while !crate::scalar::is_prime(p) {
            p += 1;
        }
        p
    }

    #[test]
    fn fibers_share_all_sandwich_invariants() {
        for n in 2..=5 {
            for delta in JordanData::enumerate(n) {
                for family in [
                    WitnessFamily::semisimple_to_x(&delta),
                    WitnessFamily::x_to_u(&delta),
                ] {
                    let g = family.generic_type();
                    let s = family.special_type();
                    assert_eq!(g.centralizer_dim(), s.centralizer_dim());
                    assert_eq!(g.max_eigenspace_dim(), s.max_eigenspace_dim());
                    let gt = g.gamma().transpose();
                    let st = s.gamma().transpose();
                    for e in 0..=n {
                        assert_eq!(
                            fixed_dim_formula(gt.parts(), e).unwrap(),
                            fixed_dim_formula(st.parts(), e).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn field_too_small_is_refused() {
        // 4 slots over F_3: pigeonhole
        let delta = jd(&[&[4]]);
        let family = WitnessFamily::semisimple_to_x(&delta);
        assert_eq!(family.slot_count(), 4);
        assert!(matches!(
            verify_witness(&family, FieldSpec::Prime(3), 1, 0),
            Err(Error::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn curve_mode_agrees() {
        let delta = jd(&[&[2], &[1, 1]]);
        for family in [
            WitnessFamily::semisimple_to_x(&delta),
            WitnessFamily::x_to_u(&delta),
        ] {
            let r = verify_witness_curve(&family, Q, 3, 5).unwrap();
            assert!(r.pass);
            assert_eq!(r.samples.len(), 3);
        }
    }

    #[test]
    fn already_semisimple_type_degenerates_trivially() {
        // delta = {(1,1)}: the family is constant, generic = special
        let f = WitnessFamily::semisimple_to_x(&jd(&[&[1, 1]]));
        assert_eq!(f.slot_count(), 1);
        assert_eq!(f.generic_type(), f.special_type());
        let r = verify_witness(&f, Q, 2, 1).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn type_mismatch_carries_the_offending_assignment() {
        let delta = jd(&[&[2]]);
        let mut family = WitnessFamily::x_to_u(&delta);
        family.generic_type = jd(&[&[1, 1]]); // deliberately wrong declaration
        let err = verify_witness(&family, Q, 1, 0).unwrap_err();
        match err {
            Error::TypeMismatch {
                fiber,
                assignment,
                expected,
                observed,
            } => {
                assert_eq!(fiber, "generic");
                assert!(!assignment.is_empty());
                assert_eq!(expected, "{(1,1)}");
                assert_eq!(observed, "{(2)}");
            }
            other => panic!("expected TypeMismatch, got {other}"),
        }
    }

    #[test]
    fn witness_family_json_shape() {
        let f = WitnessFamily::x_to_u(&jd(&[&[2], &[1, 1]]));
        let v: serde_json::Value = serde_json::to_value(&f).unwrap();
        assert_eq!(v["kind"], "x-to-u");
        assert_eq!(v["slots"], serde_json::json!(["a1", "a2"]));
        assert_eq!(v["blocks"][0][0]["slot"], "a1");
        assert_eq!(v["blocks"][0][0]["mult"], 2);
        assert_eq!(v["specialization"][1]["to_slot"], "a1");
    }
}
