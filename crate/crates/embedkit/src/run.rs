//! Command implementations behind the CLI: each produces a [`RunReport`]
//! and an exit code, or a [`RunError`] when no meaningful report exists.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or parse error,
//! 3 search or distance budget exhausted, 4 prediction-only (a family whose
//! maps this tool does not generate).

use std::fs;
use std::path::Path;
use std::time::Instant;

use embedkit_core::css::side_min_weight_stripe;
use embedkit_core::{
    build_css, expected_faces_k4r1, faces_match_cyclically, is_self_dual, merge_block_outcomes,
    merge_side_minima, scheme_k4r1, scheme_k4s, search_self_dual_bipartite_block, trace_faces,
    BinaryMatrix, CssCode, CssError, DistanceBound, DistanceError, FamilyError, FamilySpec,
    RotationSystem, SearchError, SearchOutcome, SurfaceMap,
};
use thiserror::Error;

use crate::format::{self, FormatError};
use crate::report::{CheckStatus, CodeStats, MapStats, PredictedStats, RunReport};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET_EXHAUSTED: i32 = 3;
pub const EXIT_PREDICTION_ONLY: i32 = 4;

/// Largest vertex count the generate path will materialize.
const MAX_GENERATED_VERTICES: u64 = 1024;

#[derive(Debug, Error)]
pub enum RunError {
    /// Bad invocation, unparseable input, or an IO problem. Exit 2.
    #[error("{0}")]
    Usage(String),
    /// A mathematically definite negative result or failed check. Exit 1.
    #[error("{0}")]
    Check(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Check(_) => EXIT_CHECK_FAILURE,
        }
    }
}

impl From<FormatError> for RunError {
    fn from(e: FormatError) -> Self {
        RunError::Usage(e.to_string())
    }
}

#[derive(Debug)]
pub struct CmdOutput {
    pub report: RunReport,
    pub exit_code: i32,
}

fn map_stats(m: &SurfaceMap) -> MapStats {
    MapStats {
        vertices: m.vertex_count(),
        edges: m.edge_count(),
        faces: m.face_count(),
        euler: m.euler_characteristic(),
        genus: m.genus(),
    }
}

fn read_file(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path)
        .map_err(|e| RunError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents)
        .map_err(|e| RunError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Minimum distance, split across `threads` stripes per side when asked.
pub fn distance_with_threads(
    code: &CssCode,
    cap: usize,
    threads: usize,
) -> Result<DistanceBound, DistanceError> {
    if threads <= 1 {
        return code.min_distance(cap);
    }
    if code.k() == 0 {
        return Err(DistanceError::ZeroLogicalDim);
    }
    if cap < 1 {
        return Err(DistanceError::CapTooSmall);
    }
    let side = |kernel_of: &BinaryMatrix, boundary_of: &BinaryMatrix| -> Option<usize> {
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..threads)
                .map(|stripe| {
                    scope.spawn(move || {
                        side_min_weight_stripe(kernel_of, boundary_of, cap, stripe, threads)
                    })
                })
                .collect();
            merge_side_minima(workers.into_iter().map(|w| w.join().expect("stripe worker")))
        })
    };
    let dz = side(code.hx(), code.hz());
    let dx = side(code.hz(), code.hx());
    Ok(match (dz, dx) {
        (Some(a), Some(b)) => DistanceBound::Certified(a.min(b)),
        (Some(a), None) => DistanceBound::Certified(a),
        (None, Some(b)) => DistanceBound::Certified(b),
        (None, None) => DistanceBound::ExceedsCap { cap },
    })
}

/// Bipartite search, block-decomposed across `threads` workers when asked.
/// Workers cover disjoint slices of the enumeration and the merge keeps the
/// earliest find, so thread count does not change which map is returned.
pub fn search_with_threads(
    r: usize,
    s: usize,
    budget: Option<u64>,
    threads: usize,
) -> Result<SearchOutcome, SearchError> {
    if threads <= 1 {
        return search_self_dual_bipartite_block(r, s, budget, 0, 1);
    }
    let blocks = threads as u64;
    let per_block = budget.map(|b| b.div_ceil(blocks));
    std::thread::scope(|scope| {
        let workers: Vec<_> = (0..blocks)
            .map(|block| {
                scope.spawn(move || {
                    search_self_dual_bipartite_block(r, s, per_block, block, blocks)
                })
            })
            .collect();
        let mut outcomes = Vec::with_capacity(workers.len());
        for w in workers {
            outcomes.push(w.join().expect("search worker")?);
        }
        Ok(merge_block_outcomes(outcomes))
    })
}

/// Pass when the file's rotation system is one of the generated schemes and
/// its traced faces match the scheme's predicted sequences; Skipped for
/// maps this tool has no face oracle for.
fn face_oracle_status(rot: &RotationSystem, map: &SurfaceMap) -> CheckStatus {
    let n = rot.vertex_count();
    if n >= 5 && n % 4 == 1 {
        let r = n / 4;
        if scheme_k4r1(r).is_ok_and(|canonical| &canonical == rot) {
            return CheckStatus::from_bool(faces_match_cyclically(map, &expected_faces_k4r1(r)));
        }
    }
    if n >= 8 && n % 4 == 0 {
        if let Ok(scheme) = scheme_k4s(n) {
            if &scheme.rotation == rot {
                return CheckStatus::from_bool(faces_match_cyclically(
                    map,
                    &scheme.expected_faces,
                ));
            }
        }
    }
    CheckStatus::Skipped
}

/// Runs the map-level and code-level checks shared by generate and verify,
/// filling in the report. Returns the code when the matrices assemble.
fn check_map(
    report: &mut RunReport,
    rot: &RotationSystem,
    map: &SurfaceMap,
    cap: usize,
    threads: usize,
) -> Option<CssCode> {
    report.map = Some(map_stats(map));
    let code = match build_css(map) {
        Ok(code) => {
            report.push_check("orthogonality", CheckStatus::Pass);
            report.push_check("k_equals_2g", CheckStatus::Pass);
            Some(code)
        }
        Err(CssError::Orthogonality { vertex, face }) => {
            report.push_check("orthogonality", CheckStatus::Fail);
            report.push_check("k_equals_2g", CheckStatus::Skipped);
            report.note(format!(
                "X check of vertex {vertex} anticommutes with Z check of face {face}"
            ));
            None
        }
        Err(CssError::LogicalDimMismatch { k, twice_genus }) => {
            report.push_check("orthogonality", CheckStatus::Pass);
            report.push_check("k_equals_2g", CheckStatus::Fail);
            report.note(format!("k={k} but 2g={twice_genus}"));
            None
        }
    };
    report.push_check("self_dual", CheckStatus::from_bool(is_self_dual(map)));
    report.push_check("face_oracle", face_oracle_status(rot, map));
    let code = code?;
    let mut code = code;
    if code.k() >= 1 {
        match distance_with_threads(&code, cap, threads) {
            Ok(bound) => code.set_distance(bound, cap),
            Err(e) => report.note(format!("distance search failed: {e}")),
        }
    } else {
        report.note("k=0: no logical operators, distance undefined");
    }
    report.code = Some(CodeStats {
        n: code.n(),
        k: code.k(),
        d: code.distance().and_then(|b| b.certified()),
        cap: code.distance_cap().unwrap_or(0),
    });
    Some(code)
}

fn parse_family(spec_str: &str) -> Result<FamilySpec, RunError> {
    let spec = FamilySpec::parse(spec_str).map_err(|e| RunError::Usage(e.to_string()))?;
    match spec.validate() {
        Ok(()) => Ok(spec),
        Err(FamilyError::BipartiteNonexistent) => {
            Err(RunError::Check(FamilyError::BipartiteNonexistent.to_string()))
        }
        Err(e) => Err(RunError::Usage(e.to_string())),
    }
}

pub fn cmd_generate(
    spec_str: &str,
    out: Option<&Path>,
    budget: Option<u64>,
    cap: usize,
    threads: usize,
) -> Result<CmdOutput, RunError> {
    let start = Instant::now();
    let spec = parse_family(spec_str)?;
    let predicted = spec.predicted_params().expect("spec was validated");
    let mut report = RunReport::new(format!("generate {spec}"));
    report.predicted = Some(PredictedStats {
        n: predicted.n,
        k: predicted.k,
        d: predicted.d,
    });
    if predicted.n > MAX_GENERATED_VERTICES * MAX_GENERATED_VERTICES {
        return Err(RunError::Usage(format!(
            "{spec} is beyond desk scale (n={})",
            predicted.n
        )));
    }

    let rot = match spec {
        FamilySpec::Class1 { r } => scheme_k4r1(r as usize)
            .map_err(|e| RunError::Usage(e.to_string()))?,
        FamilySpec::Class2 { s } => {
            let n = 4 * s as usize;
            scheme_k4s(n).map_err(|e| RunError::Check(e.to_string()))?.rotation
        }
        FamilySpec::Class3 { r: 4, s: 4 } => {
            match search_with_threads(4, 4, budget, threads)
                .map_err(|e| RunError::Usage(e.to_string()))?
            {
                SearchOutcome::Found { map, .. } => map
                    .rotation_system()
                    .expect("searched bipartite maps are simple"),
                SearchOutcome::NotFound {
                    examined,
                    space_exhausted,
                } => {
                    report.note(format!(
                        "search stopped after {examined} rotation systems ({})",
                        if space_exhausted { "space exhausted" } else { "budget exhausted" }
                    ));
                    report.wall_ms = start.elapsed().as_millis();
                    return Ok(CmdOutput {
                        report,
                        exit_code: EXIT_BUDGET_EXHAUSTED,
                    });
                }
                SearchOutcome::Nonexistent => unreachable!("validated spec excludes K_6,6"),
            }
        }
        FamilySpec::Class3 { .. } | FamilySpec::Class4 { .. } => {
            report.note(
                "prediction-only: no explicit scheme is generated for this family; \
                 parameters above follow from the family formula",
            );
            report.wall_ms = start.elapsed().as_millis();
            return Ok(CmdOutput {
                report,
                exit_code: EXIT_PREDICTION_ONLY,
            });
        }
    };

    let map = trace_faces(&rot);
    let code = check_map(&mut report, &rot, &map, cap, threads);
    if let Some(code) = &code {
        let d = code.distance().and_then(|b| b.certified());
        let realized_match = code.n() as u64 == predicted.n
            && code.k() as u64 == predicted.k
            && d == Some(predicted.d as usize);
        report.push_check("predicted_params_match", CheckStatus::from_bool(realized_match));
    }
    if let Some(path) = out {
        write_file(path, &format::write_rotation(&rot))?;
        report.note(format!("wrote {}", path.display()));
    }
    report.wall_ms = start.elapsed().as_millis();
    let exit_code = if report.all_checks_pass() {
        EXIT_SUCCESS
    } else {
        EXIT_CHECK_FAILURE
    };
    Ok(CmdOutput { report, exit_code })
}

pub fn cmd_verify(path: &Path, cap: usize, threads: usize) -> Result<CmdOutput, RunError> {
    let start = Instant::now();
    let rot = format::parse_rotation(&read_file(path)?)?;
    let mut report = RunReport::new(format!("verify {}", path.display()));
    let map = trace_faces(&rot);
    check_map(&mut report, &rot, &map, cap, threads);
    report.wall_ms = start.elapsed().as_millis();
    let exit_code = if report.all_checks_pass() {
        EXIT_SUCCESS
    } else {
        EXIT_CHECK_FAILURE
    };
    Ok(CmdOutput { report, exit_code })
}

pub fn cmd_code(path: &Path, out_prefix: &Path) -> Result<CmdOutput, RunError> {
    let start = Instant::now();
    let rot = format::parse_rotation(&read_file(path)?)?;
    let map = trace_faces(&rot);
    let code = build_css(&map).map_err(|e| RunError::Check(e.to_string()))?;
    let mut report = RunReport::new(format!("code {}", path.display()));
    report.map = Some(map_stats(&map));
    report.code = Some(CodeStats {
        n: code.n(),
        k: code.k(),
        d: None,
        cap: 0,
    });
    let prefix = out_prefix.to_string_lossy();
    for (suffix, contents) in [
        ("hx", format::write_matrix(code.hx())),
        ("hz", format::write_matrix(code.hz())),
        ("css", format::css_meta_line(&code)),
    ] {
        let file = format!("{prefix}.{suffix}");
        write_file(Path::new(&file), &contents)?;
        report.note(format!("wrote {file}"));
    }
    report.wall_ms = start.elapsed().as_millis();
    Ok(CmdOutput {
        report,
        exit_code: EXIT_SUCCESS,
    })
}

pub fn cmd_distance(
    hx_path: &Path,
    hz_path: &Path,
    cap: usize,
    threads: usize,
) -> Result<CmdOutput, RunError> {
    let start = Instant::now();
    let hx = format::parse_matrix(&read_file(hx_path)?)?;
    let hz = format::parse_matrix(&read_file(hz_path)?)?;
    let mut code =
        CssCode::from_checks(hx, hz).map_err(|e| RunError::Check(e.to_string()))?;
    if code.k() == 0 {
        return Err(RunError::Check(
            "code has no logical operators (k=0); distance is undefined".into(),
        ));
    }
    if cap < 1 {
        return Err(RunError::Usage("--cap must be at least 1".into()));
    }
    let bound = distance_with_threads(&code, cap, threads)
        .map_err(|e| RunError::Check(e.to_string()))?;
    code.set_distance(bound, cap);
    let mut report = RunReport::new(format!(
        "distance {} {}",
        hx_path.display(),
        hz_path.display()
    ));
    report.code = Some(CodeStats {
        n: code.n(),
        k: code.k(),
        d: bound.certified(),
        cap,
    });
    let exit_code = match bound {
        DistanceBound::Certified(_) => EXIT_SUCCESS,
        DistanceBound::ExceedsCap { cap } => {
            report.note(format!("no logical operator of weight <= {cap}: d > {cap}"));
            EXIT_BUDGET_EXHAUSTED
        }
    };
    report.wall_ms = start.elapsed().as_millis();
    Ok(CmdOutput { report, exit_code })
}

/// One table row per the params grammar: `n k d family`.
pub fn cmd_params(spec_str: &str) -> Result<String, RunError> {
    let spec = parse_family(spec_str)?;
    let p = spec.predicted_params().expect("spec was validated");
    Ok(format!("{} {} {} {spec}", p.n, p.k, p.d))
}

pub fn cmd_search(
    r: usize,
    s: usize,
    budget: Option<u64>,
    out: Option<&Path>,
    cap: usize,
    threads: usize,
) -> Result<CmdOutput, RunError> {
    let start = Instant::now();
    let mut report = RunReport::new(format!("search r={r},s={s}"));
    let outcome =
        search_with_threads(r, s, budget, threads).map_err(|e| RunError::Usage(e.to_string()))?;
    match outcome {
        SearchOutcome::Nonexistent => Err(RunError::Check(
            "no orientable self-dual embedding of K_6,6 exists".into(),
        )),
        SearchOutcome::NotFound {
            examined,
            space_exhausted: false,
        } => {
            report.note(format!("budget exhausted after {examined} rotation systems"));
            report.wall_ms = start.elapsed().as_millis();
            Ok(CmdOutput {
                report,
                exit_code: EXIT_BUDGET_EXHAUSTED,
            })
        }
        SearchOutcome::NotFound {
            examined,
            space_exhausted: true,
        } => {
            report.note(format!(
                "enumerated all {examined} rotation systems: no self-dual embedding at the target genus"
            ));
            report.wall_ms = start.elapsed().as_millis();
            Ok(CmdOutput {
                report,
                exit_code: EXIT_CHECK_FAILURE,
            })
        }
        SearchOutcome::Found { map, index } => {
            let rot = map
                .rotation_system()
                .expect("searched bipartite maps are simple");
            report.note(format!("found at enumeration index {index}"));
            check_map(&mut report, &rot, &map, cap, threads);
            if let Some(path) = out {
                write_file(path, &format::write_rotation(&rot))?;
                report.note(format!("wrote {}", path.display()));
            }
            report.wall_ms = start.elapsed().as_millis();
            let exit_code = if report.all_checks_pass() {
                EXIT_SUCCESS
            } else {
                EXIT_CHECK_FAILURE
            };
            Ok(CmdOutput { report, exit_code })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_k5_reports_golden_parameters() {
        let out = cmd_generate("class1:r=1", None, None, 6, 1).unwrap();
        assert_eq!(out.exit_code, EXIT_SUCCESS);
        let code = out.report.code.unwrap();
        assert_eq!((code.n, code.k, code.d), (10, 2, Some(3)));
        let predicted = out.report.predicted.unwrap();
        assert_eq!((predicted.n, predicted.k, predicted.d), (10, 2, 3));
        assert!(out.report.all_checks_pass());
    }

    #[test]
    fn generate_rejects_invalid_specs() {
        assert_eq!(
            cmd_generate("class1:r=0", None, None, 6, 1)
                .unwrap_err()
                .exit_code(),
            EXIT_USAGE
        );
        assert_eq!(
            cmd_generate("nonsense", None, None, 6, 1)
                .unwrap_err()
                .exit_code(),
            EXIT_USAGE
        );
    }

    #[test]
    fn generate_k66_cites_nonexistence() {
        let err = cmd_generate("class3:r=6,s=6", None, None, 6, 1).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_CHECK_FAILURE);
        assert!(err.to_string().contains("no orientable self-dual embedding"));
    }

    #[test]
    fn generate_class4_is_prediction_only() {
        let out = cmd_generate("class4:r=2,s=2", None, None, 6, 1).unwrap();
        assert_eq!(out.exit_code, EXIT_PREDICTION_ONLY);
        let predicted = out.report.predicted.unwrap();
        assert_eq!((predicted.n, predicted.k, predicted.d), (20, 2, 3));
        assert!(out.report.map.is_none());
    }

    #[test]
    fn generate_class3_large_is_prediction_only() {
        let out = cmd_generate("class3:r=4,s=8", None, None, 6, 1).unwrap();
        assert_eq!(out.exit_code, EXIT_PREDICTION_ONLY);
        let predicted = out.report.predicted.unwrap();
        assert_eq!((predicted.n, predicted.k, predicted.d), (32, 6, 4));
    }

    #[test]
    fn generate_k44_budget_zero_exhausts() {
        let out = cmd_generate("class3:r=4,s=4", None, Some(0), 6, 1).unwrap();
        assert_eq!(out.exit_code, EXIT_BUDGET_EXHAUSTED);
    }

    #[test]
    fn params_rows() {
        assert_eq!(cmd_params("class1:r=3").unwrap(), "78 54 3 class1:r=3");
        assert_eq!(cmd_params("class4:r=2,s=2").unwrap(), "20 2 3 class4:r=2,s=2");
        assert_eq!(cmd_params("class3:r=4,s=8").unwrap(), "32 6 4 class3:r=4,s=8");
        assert_eq!(cmd_params("class2:s=2").unwrap(), "28 14 3 class2:s=2");
        let err = cmd_params("class3:r=6,s=6").unwrap_err();
        assert_eq!(err.exit_code(), EXIT_CHECK_FAILURE);
    }

    #[test]
    fn distance_threads_agree_with_serial() {
        let map = trace_faces(&scheme_k4r1(1).unwrap());
        let code = build_css(&map).unwrap();
        let serial = distance_with_threads(&code, 6, 1).unwrap();
        let threaded = distance_with_threads(&code, 6, 3).unwrap();
        assert_eq!(serial, threaded);
        assert_eq!(serial, DistanceBound::Certified(3));
    }

    #[test]
    fn search_threads_agree_with_serial() {
        let serial = search_with_threads(4, 4, None, 1).unwrap();
        let threaded = search_with_threads(4, 4, None, 3).unwrap();
        assert_eq!(serial, threaded);
        assert!(matches!(serial, SearchOutcome::Found { .. }));
    }
}
