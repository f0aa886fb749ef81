use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framecore::random::{
    random_nonzero_scalars, random_permutation, random_unitary, rng_from_seed,
};
use crate::framecore::{Frame, FrameBounds};
use crate::numkernel::{DenseMatrix, HermitianOperator};
use crate::partition::{
    ceil_guarded, erasure_robust, floor_guarded, pack_spanning, partition_independent,
};
use crate::redundancy::{canonical_dual_sandwich, redundancy_report, RedundancyReport};
use crate::scalar::{Field, Scalar};
use crate::tol::Tolerances;

const ABS: f64 = 1e-9;
const RANGE_SLACK: f64 = 1e-8;

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub applicable: bool,
    pub pass: bool,
    pub detail: String,
}

/// The full property report for one frame, optionally compared with a second.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub field: Field,
    pub dim: usize,
    pub count: usize,
    pub report: RedundancyReport<f64>,
    pub frame_bounds: FrameBounds<f64>,
    pub tight: bool,
    pub properties: Vec<PropertyResult>,
    pub all_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalent: Option<bool>,
}

fn result(name: &str, applicable: bool, pass: bool, detail: String) -> PropertyResult {
    PropertyResult {
        name: name.into(),
        applicable,
        pass: !applicable || pass,
        detail,
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS
}

/// Runs the redundancy property battery on `f`. Randomized checks draw from `seed`.
pub fn run_battery<S: Scalar<Real = f64>>(
    f: &Frame<S>,
    seed: u64,
    tol: &Tolerances,
) -> Result<CheckReport> {
    let report = redundancy_report(f, tol)?;
    let bounds = f.frame_bounds(tol)?;
    let mut rng = rng_from_seed(seed);
    let n = f.dim();
    let count = f.len();
    let nonzero = f.nonzero_count();
    let (lo, hi) = (report.lower, report.upper);
    let mut props = Vec::new();

    let norms = f.norms_sq();
    let (nmin, nmax) = norms
        .iter()
        .fold((f64::INFINITY, 0f64), |(a, b), &x| (a.min(x), b.max(x)));
    let equal_norm = nmin > 0.0 && nmax - nmin <= ABS * nmax;
    let parseval = f
        .frame_operator()
        .max_abs_diff(&HermitianOperator::identity(n))
        <= ABS;
    let ratio = count as f64 / n as f64;
    props.push(result(
        "D1",
        equal_norm && parseval,
        close(lo, ratio) && close(hi, ratio),
        format!("equal-norm {equal_norm}, Parseval {parseval}; expected N/n = {ratio}"),
    ));

    let nonzero_idx: Vec<usize> = (0..count).filter(|&i| !f.is_zero_vector(i)).collect();
    let normalized = f.subset(&nonzero_idx)?.normalized();
    let nb = normalized.frame_bounds(tol)?;
    let normalized_tight = nb.upper - nb.lower <= tol.uniform * nb.upper;
    let gram = normalized
        .synthesis_matrix()
        .adjoint()
        .mul(&normalized.synthesis_matrix())?;
    let onb = nonzero == n && gram.max_abs_diff(&DenseMatrix::identity(nonzero)) <= ABS;
    let unit = close(lo, 1.0) && close(hi, 1.0);
    props.push(result(
        "D2",
        true,
        report.uniform == normalized_tight && unit == onb,
        format!("uniform {}, normalized tight {normalized_tight}; redundancy one {unit}, orthonormal basis {onb}", report.uniform),
    ));

    props.push(result(
        "D3",
        true,
        lo > 0.0 && lo <= hi && hi.is_finite(),
        format!("0 < {lo} <= {hi} < inf"),
    ));

    let with_onb = redundancy_report(&f.union(&Frame::standard_basis(n)?)?, tol)?;
    let u = random_unitary::<S>(&mut rng, n)?;
    let g = f.apply_operator(&u)?;
    let rg = redundancy_report(&g, tol)?;
    let joint = redundancy_report(&f.union(&g)?, tol)?;
    let onb_shift = close(with_onb.lower, lo + 1.0) && close(with_onb.upper, hi + 1.0);
    let superadditive = joint.lower >= lo + rg.lower - ABS;
    let subadditive = joint.upper <= hi + rg.upper + ABS;
    props.push(result(
        "D4",
        true,
        onb_shift && superadditive && subadditive,
        format!(
            "basis shift {onb_shift}, superadditive {superadditive}, subadditive {subadditive}"
        ),
    ));

    let scaled = f.scale_vectors(&random_nonzero_scalars::<S>(&mut rng, count))?;
    let permuted = f.permute(&random_permutation(&mut rng, count))?;
    let mut invariant = true;
    for image in [&g, &scaled, &permuted] {
        let r = redundancy_report(image, tol)?;
        invariant &= close(r.lower, lo) && close(r.upper, hi);
    }
    props.push(result(
        "D5",
        true,
        invariant,
        "unitary image, rescaling and permutation".into(),
    ));

    let mean = nonzero as f64 / n as f64;
    let range_ok = lo > 0.0
        && lo <= mean + ABS
        && hi >= mean - ABS
        && hi < nonzero as f64
        && (n as f64 - 1.0) * lo + hi <= nonzero as f64 + RANGE_SLACK
        && (!close(lo, mean) || report.uniform);
    props.push(result(
        "range",
        n >= 2,
        range_ok,
        format!(
            "0 < {lo} <= {mean} <= {hi} < {nonzero}; (n-1)*lower + upper = {}",
            (n as f64 - 1.0) * lo + hi
        ),
    ));

    props.push(result(
        "mean",
        true,
        (report.mean() - mean).abs() <= ABS,
        format!("spectrum mean {} vs N'/n = {mean}", report.mean()),
    ));

    let packing = pack_spanning(f, tol)?;
    let floor_bound = floor_guarded(lo);
    let mut d6 = packing.len() >= floor_bound && packing.verify(f, tol).is_ok();
    let mut d6_detail = format!(
        "{} disjoint spanning sets, bound {floor_bound}",
        packing.len()
    );
    if floor_bound >= 1 {
        match erasure_robust(f, floor_bound - 1, tol) {
            Ok(v) => {
                d6 &= v.robust;
                d6_detail.push_str(&format!(
                    "; robust to {} erasures: {}",
                    floor_bound - 1,
                    v.robust
                ));
            }
            Err(Error::TooManySubsets { count, .. }) => {
                d6_detail.push_str(&format!("; erasure check skipped ({count} subsets)"));
            }
            Err(e) => return Err(e),
        }
    }
    props.push(result("D6", true, d6, d6_detail));

    let zero_free = nonzero == count;
    let (d7, d7_detail) = if zero_free {
        let p = partition_independent(f, tol)?;
        let bound = ceil_guarded(hi);
        (
            p.len() <= bound && p.verify(f, tol).is_ok(),
            format!("{} independent sets, bound {bound}", p.len()),
        )
    } else {
        (true, "frame contains zero vectors".into())
    };
    props.push(result("D7", zero_free, d7, d7_detail));

    let (dual_ok, dual_detail) = if zero_free {
        let m = canonical_dual_sandwich(f, tol)?;
        (
            m.min_margin() >= -RANGE_SLACK,
            format!("kappa {}, smallest margin {}", m.kappa, m.min_margin()),
        )
    } else {
        (true, "frame contains zero vectors".into())
    };
    props.push(result("dual_sandwich", zero_free, dual_ok, dual_detail));

    let all_pass = props.iter().all(|p| p.pass);
    Ok(CheckReport {
        field: S::FIELD,
        dim: n,
        count,
        tight: bounds.upper - bounds.lower <= tol.uniform * bounds.upper,
        frame_bounds: bounds,
        report,
        properties: props,
        all_pass,
        equivalent: None,
    })
}
