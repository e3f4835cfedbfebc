// C entry point for the conic backend: one call, dense arrays in, primal out.

use clarabel::algebra::CscMatrix;
use clarabel::solver::*;
use std::slice;

extern crate openblas_src;

#[repr(C)]
pub struct LcSettings {
    pub tol: f64,
    pub max_iter: u32,
    pub time_limit: f64,
    pub verbose: i32,
}

#[repr(C)]
pub struct LcInfo {
    pub status: i32,
    pub iterations: u32,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub solve_seconds: f64,
}

fn status_code(s: SolverStatus) -> i32 {
    match s {
        SolverStatus::Solved => 0,
        SolverStatus::AlmostSolved => 1,
        SolverStatus::PrimalInfeasible => 2,
        SolverStatus::AlmostPrimalInfeasible => 3,
        SolverStatus::DualInfeasible => 4,
        SolverStatus::AlmostDualInfeasible => 5,
        SolverStatus::MaxIterations => 6,
        SolverStatus::MaxTime => 7,
        SolverStatus::NumericalError => 8,
        SolverStatus::InsufficientProgress => 9,
        _ => 10,
    }
}

/// Solves min c'x s.t. Ax + s = b, s in {0}^nzero x R+^nnonneg x PSD blocks
/// (upper triangle by columns, off-diagonals times sqrt 2). A is m x n CSC.
/// Returns 0 when the call itself went through, -1 on bad input.
///
/// # Safety
/// All pointers must reference arrays of the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn lc_clarabel_solve(
    n: usize,
    m: usize,
    colptr: *const usize,
    rowval: *const usize,
    nzval: *const f64,
    b: *const f64,
    c: *const f64,
    nzero: usize,
    nnonneg: usize,
    npsd: usize,
    psd_sizes: *const usize,
    settings: *const LcSettings,
    x_out: *mut f64,
    info: *mut LcInfo,
) -> i32 {
    let colptr = slice::from_raw_parts(colptr, n + 1).to_vec();
    let nnz = colptr[n];
    let rowval = slice::from_raw_parts(rowval, nnz).to_vec();
    let nzval = slice::from_raw_parts(nzval, nnz).to_vec();
    let b = slice::from_raw_parts(b, m);
    let c = slice::from_raw_parts(c, n);
    let st = &*settings;

    let mut cones: Vec<SupportedConeT<f64>> = Vec::new();
    if nzero > 0 {
        cones.push(ZeroConeT(nzero));
    }
    if nnonneg > 0 {
        cones.push(NonnegativeConeT(nnonneg));
    }
    if npsd > 0 {
        for &s in slice::from_raw_parts(psd_sizes, npsd) {
            cones.push(PSDTriangleConeT(s));
        }
    }

    let a = CscMatrix::new(m, n, colptr, rowval, nzval);
    let p = CscMatrix::<f64>::zeros((n, n));
    let mut builder = DefaultSettingsBuilder::default();
    builder
        .verbose(st.verbose != 0)
        .tol_gap_abs(st.tol)
        .tol_gap_rel(st.tol)
        .tol_feas(st.tol)
        .max_iter(st.max_iter);
    if st.time_limit > 0.0 {
        builder.time_limit(st.time_limit);
    }
    let stg = match builder.build() {
        Ok(s) => s,
        Err(_) => return -1,
    };
    let mut solver = match DefaultSolver::new(&p, c, &a, b, &cones, stg) {
        Ok(s) => s,
        Err(_) => return -1,
    };
    solver.solve();
    let sol = &solver.solution;
    slice::from_raw_parts_mut(x_out, n).copy_from_slice(&sol.x);
    *info = LcInfo {
        status: status_code(sol.status),
        iterations: sol.iterations,
        primal_objective: sol.obj_val,
        dual_objective: sol.obj_val_dual,
        primal_residual: sol.r_prim,
        dual_residual: sol.r_dual,
        solve_seconds: sol.solve_time,
    };
    0
}
