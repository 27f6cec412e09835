//! Executable verification campaigns: the degeneration sandwich checked
//! end to end for a given Jordan type, and the fixed-space sum inequality
//! scanned exhaustively over small type universes.

use serde::Serialize;

use crate::error::Error;
use crate::grassmann::{dimension_by_interpolation, CountOptions, InterpolationOutcome};
use crate::jordan::JordanData;
use crate::partition::Partition;
use crate::scalar::FieldSpec;
use crate::variety::{fixed_dim_formula, VarietyDescriptor};
use crate::witness::{verify_witness, WitnessFamily, WitnessReport};

/// A tuple of Jordan types sharing the matrix size, the object of the sum
/// inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumTheoremInstance {
    pub n: usize,
    pub types: Vec<JordanData>,
}

impl SumTheoremInstance {
    pub fn new(types: Vec<JordanData>) -> Result<Self, Error> {
        if types.len() < 2 {
            return Err(Error::CheckFailed {
                claim: "sum-inequality".into(),
                detail: "need at least two types".into(),
            });
        }
        let n = types[0].n();
        if types.iter().any(|t| t.n() != n) {
            return Err(Error::SizeMismatch {
                declared: n,
                actual: types.iter().map(JordanData::n).max().unwrap(),
            });
        }
        Ok(SumTheoremInstance { n, types })
    }

    pub fn s(&self) -> usize {
        self.types.len()
    }
}

/// Which arm of the sum inequality an instance falls into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The eigenspace hypothesis fails; nothing is claimed.
    HypothesisFails,
    /// Two types, both with quadratic minimal polynomial: the strict
    /// inequality is not required (and can genuinely fail).
    ExceptionCase,
    /// The strict inequality must hold for every e up to n/2.
    InequalityCase,
}

/// Per-e data: the summed fixed-space dimensions against the bound.
#[derive(Clone, Debug, Serialize)]
pub struct SumInequalityRow {
    pub e: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub strict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub instance: SumTheoremInstance,
    pub hypothesis_holds: bool,
    pub branch: Branch,
    pub rows: Vec<SumInequalityRow>,
    pub pass: bool,
}

/// Evaluates one instance of the sum inequality.
///
/// Hypothesis: the largest eigenspace dimensions sum to at most (s-1) n.
/// When it holds, either the types are two quadratic-minimal-polynomial
/// types (the exception arm, where nothing is asserted), or the summed
/// fixed-space dimensions on every Grassmannian of e <= n/2 stay strictly
/// below (s-1) e (n-e).
///
/// Scalar types -- linear minimal polynomial -- fix every subspace and
/// contribute exactly e(n-e) to the left side and n to the hypothesis
/// budget, so deleting them reduces the instance, verbatim, to the one on
/// the remaining types with s lowered. The exception condition is
/// therefore tested after that reduction; otherwise a scalar summand would
/// smuggle a two-type exception pair past the s = 2 guard and falsify the
/// strict inequality (e.g. {(2,2)}, {(2,2)}, {(1,1,1,1)} at n = 4).
pub fn check_sum_theorem(inst: &SumTheoremInstance) -> CheckReport {
    let n = inst.n;
    let s = inst.s();
    let d_sum: usize = inst.types.iter().map(JordanData::max_eigenspace_dim).sum();
    let hypothesis_holds = d_sum <= (s - 1) * n;
    let gamma_ts: Vec<Partition> = inst.types.iter().map(|t| t.gamma().transpose()).collect();
    let rows: Vec<SumInequalityRow> = (1..=n / 2)
        .map(|e| {
            let lhs = gamma_ts
                .iter()
                .map(|gt| fixed_dim_formula(gt.parts(), e).expect("e <= n/2"))
                .sum();
            let rhs = (s - 1) * e * (n - e);
            SumInequalityRow {
                e,
                lhs,
                rhs,
                strict: lhs < rhs,
            }
        })
        .collect();
    let nonscalar: Vec<&JordanData> = inst
        .types
        .iter()
        .filter(|t| t.min_poly_degree() > 1)
        .collect();
    let branch = if !hypothesis_holds {
        Branch::HypothesisFails
    } else if nonscalar.len() == 2 && nonscalar.iter().all(|t| t.has_quadratic_min_poly()) {
        // a scalar type costs d = n, so the hypothesis forces at least two
        // nonscalar types
        Branch::ExceptionCase
    } else {
        Branch::InequalityCase
    };
    let pass = match branch {
        Branch::HypothesisFails | Branch::ExceptionCase => true,
        Branch::InequalityCase => rows.iter().all(|r| r.strict),
    };
    CheckReport {
        instance: inst.clone(),
        hypothesis_holds,
        branch,
        rows,
        pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub s: usize,
    pub instances: usize,
    pub hypothesis_fails: usize,
    pub exception_cases: usize,
    pub inequality_cases: usize,
    /// Instances containing a scalar type; these reduce verbatim to an
    /// instance with fewer types and are not re-checked here.
    pub scalar_degenerate: usize,
    pub exceptions: Vec<SumTheoremInstance>,
    pub pass: bool,
}

/// Checks every multiset of `s` Jordan types of size `n` (tuple order is
/// irrelevant to both hypothesis and conclusion). Returns the branch
/// tallies and the exception instances; a failing instance is an error,
/// since it would mean a dimension computation is wrong.
///
/// Multisets containing a scalar type (linear minimal polynomial) are
/// tallied separately and skipped: deleting the scalar changes neither the
/// hypothesis margin nor the conclusion margin, so such an instance is the
/// instance on the remaining types, which a scan at smaller s covers.
pub fn exhaustive_sum_scan(n: usize, s: usize) -> Result<ScanReport, Error> {
    assert!(s >= 2, "the inequality concerns at least two types");
    let universe = JordanData::enumerate(n);
    let mut report = ScanReport {
        n,
        s,
        instances: 0,
        hypothesis_fails: 0,
        exception_cases: 0,
        inequality_cases: 0,
        scalar_degenerate: 0,
        exceptions: Vec::new(),
        pass: true,
    };
    let mut indices = vec![0usize; s];
    scan_multisets(&universe, &mut indices, 0, 0, &mut |types| {
        report.instances += 1;
        if types.iter().any(|t| t.min_poly_degree() == 1) {
            report.scalar_degenerate += 1;
            return Ok(());
        }
        let inst = SumTheoremInstance {
            n,
            types: types.to_vec(),
        };
        let rep = check_sum_theorem(&inst);
        match rep.branch {
            Branch::HypothesisFails => report.hypothesis_fails += 1,
            Branch::ExceptionCase => {
                report.exception_cases += 1;
                report.exceptions.push(inst.clone());
            }
            Branch::InequalityCase => report.inequality_cases += 1,
        }
        if rep.pass {
            Ok(())
        } else {
            Err(Error::Counterexample {
                instance: format!("n={n} s={s} types={types:?}"),
            })
        }
    })?;
    Ok(report)
}

fn scan_multisets(
    universe: &[JordanData],
    indices: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[JordanData]) -> Result<(), Error>,
) -> Result<(), Error> {
    if depth == indices.len() {
        let types: Vec<JordanData> = indices.iter().map(|&i| universe[i].clone()).collect();
        return visit(&types);
    }
    for i in start..universe.len() {
        indices[depth] = i;
        scan_multisets(universe, indices, depth + 1, i, visit)?;
    }
    Ok(())
}

/// Options for the full sandwich verification.
#[derive(Clone, Debug)]
pub struct SandwichOptions {
    pub field: FieldSpec,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub samples: usize,
    pub count: CountOptions,
}

impl Default for SandwichOptions {
    fn default() -> Self {
        SandwichOptions {
            field: FieldSpec::Rational,
            primes: vec![2, 3, 5, 7, 11, 13],
            seed: 1,
            samples: 3,
            count: CountOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerCheck {
    pub expected: usize,
    pub semisimple: usize,
    pub jordan_type: usize,
    pub equipotent: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedDimCheck {
    pub d: usize,
    pub expected: usize,
    pub semisimple: InterpolationOutcome,
    pub jordan_type: InterpolationOutcome,
    pub equipotent: InterpolationOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichVerification {
    pub delta: JordanData,
    pub gamma: Partition,
    pub gamma_t: Partition,
    pub claims: Vec<&'static str>,
    pub witness_semisimple: WitnessReport,
    pub witness_equipotent: WitnessReport,
    pub centralizer: CentralizerCheck,
    pub fixed_dimensions: Vec<FixedDimCheck>,
    pub pass: bool,
}

/// Runs the whole sandwich verification for one Jordan type:
///
/// 1. both witness families verify (the two closure containments),
/// 2. the three canonical representatives share their commutant dimension,
///    equal to the partition formula,
/// 3. for every 1 <= d < n the interpolated fixed-space dimensions of all
///    three representatives equal the closed-form value.
pub fn check_sandwich_full(
    delta: &JordanData,
    opts: &SandwichOptions,
) -> Result<SandwichVerification, Error> {
    let gamma = delta.gamma();
    let gamma_t = gamma.transpose();
    let n = delta.n();

    let witness_semisimple = verify_witness(
        &WitnessFamily::semisimple_to_x(delta),
        opts.field,
        opts.samples,
        opts.seed,
    )?;
    let witness_equipotent = verify_witness(
        &WitnessFamily::x_to_u(delta),
        opts.field,
        opts.samples,
        opts.seed,
    )?;

    // commutant-rank oracle over the rationals for all three varieties
    let expected = delta.centralizer_dim();
    let rational = FieldSpec::Rational;
    let descriptors = [
        VarietyDescriptor::S(gamma_t.clone()),
        VarietyDescriptor::X(delta.clone()),
        VarietyDescriptor::U(gamma.clone()),
    ];
    let mut commutants = [0usize; 3];
    for (slot, desc) in commutants.iter_mut().zip(descriptors.iter()) {
        let rep = desc.representative(rational)?;
        *slot = rep.commutant_dim()?;
        if *slot != expected {
            return Err(Error::CheckFailed {
                claim: "centralizer-identity".into(),
                detail: format!("{desc}: commutant dim {} != {expected}", *slot),
            });
        }
    }
    let centralizer = CentralizerCheck {
        expected,
        semisimple: commutants[0],
        jordan_type: commutants[1],
        equipotent: commutants[2],
    };

    let mut fixed_dimensions = Vec::with_capacity(n.saturating_sub(1));
    for d in 1..n {
        let expected = fixed_dim_formula(gamma_t.parts(), d)?;
        let mut outcomes = Vec::with_capacity(3);
        for desc in &descriptors {
            let out = dimension_by_interpolation(desc, d, &opts.primes, &opts.count)?;
            if out.dimension != expected {
                return Err(Error::CheckFailed {
                    claim: "fixed-dim-constancy".into(),
                    detail: format!(
                        "{desc} at d={d}: interpolated {} != expected {expected}",
                        out.dimension
                    ),
                });
            }
            outcomes.push(out);
        }
        let equipotent = outcomes.pop().unwrap();
        let jordan_type = outcomes.pop().unwrap();
        let semisimple = outcomes.pop().unwrap();
        fixed_dimensions.push(FixedDimCheck {
            d,
            expected,
            semisimple,
            jordan_type,
            equipotent,
        });
    }

    Ok(SandwichVerification {
        delta: delta.clone(),
        gamma,
        gamma_t,
        claims: vec![
            "closure-ss-to-x",
            "closure-x-to-u",
            "centralizer-identity",
            "fixed-dim-constancy",
        ],
        witness_semisimple,
        witness_equipotent,
        centralizer,
        fixed_dimensions,
        pass: true,
    })
}
