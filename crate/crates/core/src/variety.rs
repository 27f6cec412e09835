//! Descriptors for the three matrix varieties tied together by the
//! degeneration sandwich -- semisimple S(gamma'), Jordan-type X(delta),
//! equipotent U(gamma) -- with membership tests and the closed-form
//! dimension of the invariant-subspace variety.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::jordan::{jordan_type_of, JordanData};
use crate::matrix::Matrix;
use crate::partition::Partition;
use crate::scalar::FieldSpec;

/// One of the three varieties in the sandwich.
///
/// * `X(delta)`: matrices with abstract Jordan data `delta`.
/// * `U(gamma)`: matrices with a single eigenvalue and block sizes `gamma`.
/// * `S(gamma)`: semisimple matrices with eigenspace dimensions `gamma`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VarietyDescriptor {
    X(JordanData),
    U(Partition),
    S(Partition),
}

impl VarietyDescriptor {
    pub fn n(&self) -> usize {
        match self {
            VarietyDescriptor::X(d) => d.n(),
            VarietyDescriptor::U(g) | VarietyDescriptor::S(g) => g.size(),
        }
    }

    /// Number of distinct eigenvalues of the canonical representative.
    pub fn eigenvalue_count(&self) -> usize {
        match self {
            VarietyDescriptor::X(d) => d.m(),
            VarietyDescriptor::U(_) => 1,
            VarietyDescriptor::S(g) => g.len(),
        }
    }

    /// Canonical representative. X and S use eigenvalues 1..m; U is the
    /// nilpotent model with eigenvalue 0.
    pub fn representative(&self, field: FieldSpec) -> Result<Matrix, Error> {
        match self {
            VarietyDescriptor::X(d) => d.representative(field),
            VarietyDescriptor::U(g) => {
                let concrete =
                    crate::jordan::ConcreteJordanData::new(vec![(field.zero(), g.clone())])?;
                Ok(concrete.matrix())
            }
            VarietyDescriptor::S(g) => {
                if let Some(size) = field.size() {
                    if (g.len() as u64) >= size {
                        return Err(Error::FieldTooSmall {
                            field,
                            needed: g.len() + 1,
                        });
                    }
                }
                let blocks: Vec<Matrix> = g
                    .parts()
                    .iter()
                    .enumerate()
                    .map(|(i, &dim)| {
                        let eig = field.from_i64(i as i64 + 1);
                        Matrix::from_fn(field, dim, dim, |r, c| {
                            if r == c {
                                eig.clone()
                            } else {
                                field.zero()
                            }
                        })
                    })
                    .collect();
                Ok(Matrix::block_diag(&blocks))
            }
        }
    }

    /// The abstract Jordan data of every member of the variety.
    pub fn jordan_data(&self) -> JordanData {
        match self {
            VarietyDescriptor::X(d) => d.clone(),
            VarietyDescriptor::U(g) => JordanData::single(g.clone()),
            VarietyDescriptor::S(g) => JordanData::new(
                g.parts()
                    .iter()
                    .map(|&dim| Partition::new(vec![1; dim]).unwrap())
                    .collect(),
            )
            .expect("partition is nonempty"),
        }
    }
}

impl fmt::Display for VarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyDescriptor::X(d) => write!(f, "X{d}"),
            VarietyDescriptor::U(g) => write!(f, "U{g}"),
            VarietyDescriptor::S(g) => write!(f, "S{g}"),
        }
    }
}

impl Serialize for VarietyDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "lowercase")]
        enum Repr<'a> {
            X { delta: &'a JordanData },
            U { gamma: &'a Partition },
            S { gamma: &'a Partition },
        }
        let repr = match self {
            VarietyDescriptor::X(delta) => Repr::X { delta },
            VarietyDescriptor::U(gamma) => Repr::U { gamma },
            VarietyDescriptor::S(gamma) => Repr::S { gamma },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VarietyDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(tag = "kind", rename_all = "lowercase")]
        enum Repr {
            X { delta: JordanData },
            U { gamma: Partition },
            S { gamma: Partition },
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::X { delta } => VarietyDescriptor::X(delta),
            Repr::U { gamma } => VarietyDescriptor::U(gamma),
            Repr::S { gamma } => VarietyDescriptor::S(gamma),
        })
    }
}

/// Does the concrete matrix lie in the described variety? Requires a split
/// characteristic polynomial.
pub fn membership(a: &Matrix, v: &VarietyDescriptor) -> Result<bool, Error> {
    let concrete = jordan_type_of(a)?;
    Ok(match v {
        VarietyDescriptor::X(delta) => concrete.abstract_type() == *delta,
        VarietyDescriptor::U(gamma) => {
            concrete.entries().len() == 1 && concrete.entries()[0].1 == *gamma
        }
        VarietyDescriptor::S(gamma) => {
            let semisimple = concrete
                .entries()
                .iter()
                .all(|(_, p)| p.parts().iter().all(|&x| x == 1));
            if !semisimple {
                false
            } else {
                let mut dims: Vec<usize> =
                    concrete.entries().iter().map(|(_, p)| p.len()).collect();
                dims.sort_unstable_by(|x, y| y.cmp(x));
                dims == gamma.parts()
            }
        }
    })
}

/// Dimension of the variety of invariant `e`-dimensional subspaces of a
/// semisimple matrix with eigenspace dimensions `dims`: an invariant
/// subspace splits along the eigenspaces, so the fixed-point variety is a
/// disjoint union over compositions of products of Grassmannians and its
/// dimension is the best value of sum e_i (dims_i - e_i).
///
/// The search over compositions is exhaustive; correctness over speed at
/// this scale.
pub fn fixed_dim_formula(dims: &[usize], e: usize) -> Result<usize, Error> {
    let total: usize = dims.iter().sum();
    if e > total {
        return Err(Error::InfeasibleDimension { e, total });
    }
    fn best(dims: &[usize], e: usize) -> Option<usize> {
        if dims.is_empty() {
            return (e == 0).then_some(0);
        }
        let d0 = dims[0];
        (0..=d0.min(e))
            .filter_map(|e0| best(&dims[1..], e - e0).map(|rest| e0 * (d0 - e0) + rest))
            .max()
    }
    Ok(best(dims, e).expect("feasible because e <= total"))
}

/// The invariants shared by all three members of the sandwich around a
/// Jordan type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub delta: JordanData,
    pub gamma: Partition,
    pub gamma_t: Partition,
    pub centralizer_dim: usize,
    /// Fixed-space dimension on the Grassmannian of e-subspaces, for
    /// e = 1 .. n-1 (index e-1).
    pub fixed_dims: Vec<usize>,
}

/// Computes the sandwich invariants of a Jordan type.
pub fn sandwich(delta: &JordanData) -> SandwichReport {
    let gamma = delta.gamma();
    let gamma_t = gamma.transpose();
    let n = delta.n();
    let fixed_dims = (1..n)
        .map(|e| fixed_dim_formula(gamma_t.parts(), e).expect("e < n"))
        .collect();
    SandwichReport {
        delta: delta.clone(),
        gamma,
        gamma_t,
        centralizer_dim: delta.centralizer_dim(),
        fixed_dims,
    }
}
