//! Rank of matrices over a quaternion algebra and the low-rank combination
//! bound.
//!
//! The rank of `Z` is the largest size of an invertible square submatrix.
//! Given `M ≥ 1 + n·M₀` distinct `m×n` matrices, some nontrivial right
//! combination `Σ Aᵢ·aᵢ` has its first `m−d+1` rows zero, hence rank at most
//! `d−1`.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::budget::Budget;
use crate::exactfields::{BaseField, Elem};
use crate::linalg;
use crate::matalg::{self, CompMatrix, MatError};
use crate::quatalg::{is_split, QuatAlgebra, Quaternion, Splitness};
use crate::rng::{self, Rng};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrankError {
    #[error("could not decide whether the algebra is split")]
    SplitnessUndecided,
    #[error("need at least {need} matrices, got {have}")]
    PreconditionViolated { have: usize, need: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("estimated {estimate_ms} ms exceeds the budget of {budget_ms} ms")]
    InfeasibleScale { estimate_ms: u128, budget_ms: u64 },
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Row and column index subsets of size `r`, lexicographic.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] != i + n - r) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// First invertible `r×r` submatrix, scanning row subsets then column subsets
/// lexicographically.
pub fn invertible_minor(z: &CompMatrix, r: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let rows = combinations(z.rows(), r);
    let cols = combinations(z.cols(), r);
    for rs in &rows {
        for cs in &cols {
            let sub = z.submatrix(rs, cs);
            if matalg::is_invertible(&sub).expect("square submatrix") {
                return Some((rs.clone(), cs.clone()));
            }
        }
    }
    None
}

/// Largest `r` such that some `r×r` submatrix is invertible; sizes are tried
/// in decreasing order.
pub fn c_rank(z: &CompMatrix) -> usize {
    let top = z.rows().min(z.cols());
    (1..=top).rev().find(|&r| invertible_minor(z, r).is_some()).unwrap_or(0)
}

/// Threshold `M₀`: `m−d+1` for a division algebra, `4(m−d+1)` when split.
pub fn m_zero(alg: &Arc<QuatAlgebra>, m: usize, d: usize) -> Result<usize, CrankError> {
    if d == 0 || d > m {
        return Err(CrankError::InvalidInstance(format!("need 1 ≤ d ≤ m, got d={d}, m={m}")));
    }
    match is_split(alg) {
        Splitness::Split(_) => Ok(4 * (m - d + 1)),
        Splitness::Nonsplit => Ok(m - d + 1),
        Splitness::Undecided => Err(CrankError::SplitnessUndecided),
    }
}

/// `M` distinct `m×n` matrices over one algebra with target rank `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInstance {
    matrices: Vec<CompMatrix>,
    d: usize,
}

impl RankInstance {
    pub fn new(matrices: Vec<CompMatrix>, d: usize) -> Result<Self, CrankError> {
        let first = matrices
            .first()
            .ok_or_else(|| CrankError::InvalidInstance("no matrices".into()))?;
        let (m, n) = (first.rows(), first.cols());
        for a in &matrices {
            if a.algebra() != first.algebra() {
                return Err(MatError::AlgebraMismatch.into());
            }
            if (a.rows(), a.cols()) != (m, n) {
                return Err(CrankError::InvalidInstance("matrices differ in shape".into()));
            }
        }
        if m > n {
            return Err(CrankError::InvalidInstance(format!("need m ≤ n, got {m}x{n}")));
        }
        if d == 0 || d > m {
            return Err(CrankError::InvalidInstance(format!("need 1 ≤ d ≤ m, got d={d}, m={m}")));
        }
        for (i, a) in matrices.iter().enumerate() {
            if matrices[..i].contains(a) {
                return Err(CrankError::InvalidInstance(format!("matrix {i} repeats an earlier one")));
            }
        }
        Ok(RankInstance { matrices, d })
    }

    pub fn matrices(&self) -> &[CompMatrix] {
        &self.matrices
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn algebra(&self) -> &Arc<QuatAlgebra> {
        self.matrices[0].algebra()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.matrices[0].rows(), self.matrices[0].cols())
    }

    /// Number of leading rows that the combination must annihilate.
    pub fn kept_rows(&self) -> usize {
        self.shape().0 - self.d + 1
    }
}

/// First `m−d+1` rows of `z`.
pub fn truncate(z: &CompMatrix, d: usize) -> CompMatrix {
    z.top_rows(z.rows() + 1 - d)
}

/// `Σ Aᵢ·aᵢ`.
pub fn combine(matrices: &[CompMatrix], coeffs: &[Quaternion]) -> Result<CompMatrix, CrankError> {
    let first = matrices
        .first()
        .ok_or_else(|| CrankError::InvalidInstance("no matrices".into()))?;
    if coeffs.len() != matrices.len() {
        return Err(CrankError::InvalidInstance(format!(
            "{} coefficients for {} matrices",
            coeffs.len(),
            matrices.len()
        )));
    }
    let mut acc = CompMatrix::zero(first.algebra(), first.rows(), first.cols());
    for (a, c) in matrices.iter().zip(coeffs) {
        acc = acc.try_add(&a.mul_right(c)?)?;
    }
    Ok(acc)
}

/// Nonzero coefficients `(a₁,…,a_M)` with the first `m−d+1` rows of
/// `Σ Aᵢ·aᵢ` zero.
///
/// Split algebras are handled k-linearly on the four coordinates of each kept
/// entry, giving coefficients in `k`; division algebras by right elimination
/// over the algebra. The first null vector of the deterministic elimination
/// is returned.
pub fn find_low_rank_combination(inst: &RankInstance) -> Result<Vec<Quaternion>, CrankError> {
    let alg = inst.algebra().clone();
    let (m, n) = inst.shape();
    let split = matches!(is_split(&alg), Splitness::Split(_));
    let m0 = m_zero(&alg, m, inst.d)?;
    let need = 1 + n * m0;
    if inst.matrices.len() < need {
        return Err(CrankError::PreconditionViolated {
            have: inst.matrices.len(),
            need,
        });
    }
    let kept = inst.kept_rows();
    let cols = inst.matrices.len();
    if split {
        let base = alg.base();
        let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(4 * kept * n);
        for i in 0..kept {
            for j in 0..n {
                for c in 0..4 {
                    rows.push(inst.matrices.iter().map(|a| a.get(i, j).coeffs()[c].clone()).collect());
                }
            }
        }
        let x = linalg::first_null_vector(&rows, cols, &base.zero())
            .expect("field elimination")
            .expect("more unknowns than equations");
        Ok(x.into_iter().map(|e| alg.scalar(e)).collect())
    } else {
        let mut entries = Vec::with_capacity(kept * n * cols);
        for i in 0..kept {
            for j in 0..n {
                entries.extend(inst.matrices.iter().map(|a| a.get(i, j).clone()));
            }
        }
        let system = CompMatrix::new(alg.clone(), kept * n, cols, entries)?;
        Ok(matalg::skew_solve(&system)?.expect("more unknowns than equations"))
    }
}

/// Why a produced combination failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    AllZero,
    TruncationNonzero,
    RankTooLarge(usize),
    Failed(String),
}

impl Violation {
    pub fn describe(&self) -> String {
        match self {
            Violation::AllZero => "all coefficients are zero".into(),
            Violation::TruncationNonzero => "leading rows of the combination are not zero".into(),
            Violation::RankTooLarge(r) => format!("combination has rank {r}"),
            Violation::Failed(e) => e.clone(),
        }
    }
}

/// Checks a coefficient vector by substitution.
pub fn verify_combination(inst: &RankInstance, coeffs: &[Quaternion]) -> Result<usize, Violation> {
    if coeffs.iter().all(Quaternion::is_zero) {
        return Err(Violation::AllZero);
    }
    let sum = combine(&inst.matrices, coeffs).map_err(|e| Violation::Failed(e.to_string()))?;
    if !truncate(&sum, inst.d).is_zero() {
        return Err(Violation::TruncationNonzero);
    }
    let r = c_rank(&sum);
    if r + 1 > inst.d {
        return Err(Violation::RankTooLarge(r));
    }
    Ok(r)
}

/// Parameters of a bound check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// Entries over ℚ are drawn from `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
}

impl BoundParams {
    pub fn new(m: usize, n: usize, d: usize, trials: usize, seed: u64) -> Self {
        BoundParams {
            m,
            n,
            d,
            trials,
            seed,
            entry_bound: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub matrices: Vec<CompMatrix>,
    pub coefficients: Option<Vec<Quaternion>>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub algebra: Arc<QuatAlgebra>,
    pub params: BoundParams,
    pub m_zero: usize,
    pub family_size: usize,
    pub trials: usize,
    pub successes: usize,
    pub counterexample: Option<Counterexample>,
}

fn random_matrix(rng: &mut Rng, alg: &Arc<QuatAlgebra>, p: &BoundParams) -> CompMatrix {
    let base = alg.base();
    let entries = (0..p.m * p.n)
        .map(|_| {
            let c = [(); 4].map(|_| rng::random_elem(rng, base, p.entry_bound));
            alg.element(c).expect("same field")
        })
        .collect();
    CompMatrix::new(alg.clone(), p.m, p.n, entries).expect("shape")
}

/// Number of distinct matrices the sampler can produce, if it is below `cap`.
fn sample_space(base: BaseField, p: &BoundParams, cap: u128) -> Option<u128> {
    let per = match base {
        BaseField::Prime(q) => q as u128,
        BaseField::Rationals => (2 * p.entry_bound + 1) as u128,
    };
    let mut total: u128 = 1;
    for _ in 0..4 * p.m * p.n {
        total = total.checked_mul(per)?;
        if total >= cap {
            return None;
        }
    }
    Some(total)
}

fn c_rank_cost(m: usize, n: usize) -> u128 {
    let binom = |n: usize, k: usize| -> u128 { combinations(n, k).len() as u128 };
    (1..=m.min(n))
        .map(|r| binom(m, r) * binom(n, r) * (2 * r as u128).pow(3) * 16)
        .sum()
}

/// Estimated elementary operations for the whole run.
pub fn estimate_work(p: &BoundParams, family_size: usize, split: bool) -> u128 {
    let rows = (p.m + 1 - p.d) * p.n * if split { 4 } else { 16 };
    let solve = (rows as u128).pow(2) * family_size as u128 * 4;
    let sample = (family_size as u128).pow(2) * (p.m * p.n) as u128 * 4;
    p.trials as u128 * (solve + sample + c_rank_cost(p.m, p.n))
}

/// Samples `1 + n·M₀` distinct matrices per trial and checks that the
/// constructive combination exists and verifies by substitution.
pub fn verify_bound(alg: &Arc<QuatAlgebra>, params: &BoundParams, budget: Budget) -> Result<BoundReport, CrankError> {
    let (m, n, d) = (params.m, params.n, params.d);
    if m == 0 || m > n {
        return Err(CrankError::InvalidInstance(format!("need 1 ≤ m ≤ n, got {m}x{n}")));
    }
    let m0 = m_zero(alg, m, d)?;
    let split = matches!(is_split(alg), Splitness::Split(_));
    let family_size = 1 + n * m0;
    if let Some(space) = sample_space(alg.base(), params, family_size as u128) {
        return Err(CrankError::InvalidInstance(format!(
            "only {space} distinct matrices exist, need {family_size}"
        )));
    }
    let work = estimate_work(params, family_size, split);
    if !budget.admits(work) {
        return Err(CrankError::InfeasibleScale {
            estimate_ms: Budget::estimate_ms(work),
            budget_ms: budget.ms,
        });
    }
    let outcomes: Vec<Option<Counterexample>> = (0..params.trials)
        .into_par_iter()
        .map(|t| run_trial(alg, params, family_size, t))
        .collect();
    let successes = outcomes.iter().filter(|o| o.is_none()).count();
    let counterexample = outcomes.into_iter().flatten().next();
    Ok(BoundReport {
        algebra: alg.clone(),
        params: params.clone(),
        m_zero: m0,
        family_size,
        trials: params.trials,
        successes,
        counterexample,
    })
}

fn run_trial(alg: &Arc<QuatAlgebra>, p: &BoundParams, family_size: usize, t: usize) -> Option<Counterexample> {
    let mut rng = rng::trial_rng(p.seed, t as u64);
    let mut matrices: Vec<CompMatrix> = Vec::with_capacity(family_size);
    while matrices.len() < family_size {
        let z = random_matrix(&mut rng, alg, p);
        if !matrices.contains(&z) {
            matrices.push(z);
        }
    }
    let fail = |coefficients, reason| {
        Some(Counterexample {
            trial: t,
            matrices: matrices.clone(),
            coefficients,
            reason,
        })
    };
    let inst = match RankInstance::new(matrices.clone(), p.d) {
        Ok(i) => i,
        Err(e) => return fail(None, e.to_string()),
    };
    match find_low_rank_combination(&inst) {
        Err(e) => fail(None, e.to_string()),
        Ok(coeffs) => match verify_combination(&inst, &coeffs) {
            Ok(_) => None,
            Err(v) => fail(Some(coeffs), v.describe()),
        },
    }
}
