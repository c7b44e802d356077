use std::path::PathBuf;
use std::process::{Command, Output};

use deformed_coulomb::ladder::{closed_form_energy, BoundStateKey};
use deformed_coulomb::{eval_radial, ground_state, DeformedCoulombModel};
use deformed_coulomb_cli::output::{SpectrumDoc, VerifyDoc, WavefnDoc};

fn dcoulomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcoulomb"))
        .args(args)
        .env_remove("DCOULOMB_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> &str {
    std::str::from_utf8(&o.stderr).unwrap()
}

/// `(k, l)` with `(l+k+1)^2 + l(l+1) < bound`, ordered by `(l, k)`.
fn scan(bound: u64) -> Vec<(u32, u32)> {
    let mut keys = Vec::new();
    for l in 0..100u64 {
        for k in 0..100u64 {
            if (l + k + 1).pow(2) + l * (l + 1) < bound {
                keys.push((l as u32, k as u32));
            }
        }
    }
    keys
}

fn keys(doc: &SpectrumDoc) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = doc.states.iter().map(|s| (s.l, s.k)).collect();
    v.sort();
    v
}

#[test]
fn deformed_table_matches_inequality_scan() {
    let o = dcoulomb(&["spectrum", "--picture", "deformed", "--Z", "1", "--alpha", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SpectrumDoc = serde_json::from_str(stdout(&o)).unwrap();
    // 2Z/alpha - 1 = 19
    assert_eq!(keys(&doc), scan(19));
    assert_eq!(doc.l_max, Some(2));
    assert_eq!(doc.counts.as_ref().unwrap().per_l, vec![4, 3, 1]);
    assert!(doc.ordering.is_none() && doc.banner.is_none());
    for s in &doc.states {
        assert_eq!(s.n, s.k + s.l + 1);
        let e = closed_form_energy(1.0, 0.1, s.l, s.n);
        assert!((s.energy - e).abs() <= 1e-11 * e.abs() + 1e-15);
    }
}

#[test]
fn undeformed_spectrum_lists_leading_levels() {
    let o = dcoulomb(&["spectrum", "--picture", "deformed", "--Z", "1", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("infinite spectrum (alpha=0)"));
    let doc: SpectrumDoc = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(doc.banner.as_deref(), Some("infinite spectrum (alpha=0)"));
    assert_eq!(doc.states.len(), 10);
    let energies: Vec<f64> = doc.states.iter().map(|s| s.energy).collect();
    let mut expected = Vec::new();
    for n in 1..=4u32 {
        for _ in 0..n {
            expected.push(-1.0 / (2.0 * f64::from(n * n)));
        }
    }
    for (e, x) in energies.iter().zip(&expected) {
        assert!((e - x).abs() < 1e-12, "{e} vs {x}");
    }
    let o = dcoulomb(&["spectrum", "--alpha", "0", "--levels", "3"]);
    let doc: SpectrumDoc = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(doc.states.len(), 3);
}

#[test]
fn pdm_table_uses_shifted_charge() {
    let o = dcoulomb(&["spectrum", "--picture", "pdm", "--Z", "1", "--alpha", "0.1", "--delta", "0", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SpectrumDoc = serde_json::from_str(stdout(&o)).unwrap();
    let ordering = doc.ordering.unwrap();
    assert_eq!((ordering.delta, ordering.lambda), (0.0, 0.0));
    // 2Z/alpha - (2 - delta - lambda) = 18
    assert_eq!(keys(&doc), scan(18));
    let (alpha, z_star) = (0.1, 1.0 - 0.05);
    let shift = 0.5 * alpha * alpha * (1.0 + 0.25);
    for s in &doc.states {
        let e = closed_form_energy(z_star, alpha, s.l, s.n) + shift;
        assert!((s.energy - e).abs() <= 1e-11 * e.abs() + 1e-15, "{s:?}");
    }
}

#[test]
fn wavefn_passes_through_library_values() {
    let rho = [0.25, 0.5, 1.0, 2.0, 7.5];
    let list = rho.map(|r| r.to_string()).join(",");
    let o = dcoulomb(&["wavefn", "--Z", "1", "--alpha", "0.1", "--k", "0", "--l", "0", "--rho", &list]);
    assert_eq!(o.status.code(), Some(0));
    let doc: WavefnDoc = serde_json::from_str(stdout(&o)).unwrap();
    let state = ground_state(&DeformedCoulombModel::new(1.0, 0.1).unwrap(), 0).unwrap();
    assert_eq!(doc.samples.len(), 5);
    for (s, r) in doc.samples.iter().zip(rho) {
        assert_eq!(s.rho, r);
        let v = eval_radial(&state, r).unwrap();
        assert!((s.value - v).abs() <= 1e-11 * v.abs());
    }
    assert!((doc.norm_audit - 1.0).abs() < 1e-6);
}

#[test]
fn wavefn_excited_state_norm_audit() {
    let o = dcoulomb(&["wavefn", "--picture", "curved", "--alpha", "0.1", "--k", "2", "--l", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("rho,value,norm_audit"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 200);
    assert!((rows[0][2] - 1.0).abs() < 1e-6);
}

#[test]
fn unbound_state_exits_with_domain_error() {
    let o = dcoulomb(&["wavefn", "--Z", "1", "--alpha", "0.1", "--l", "5", "--k", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(l+1)(2l+1) = 66 ≥ 19"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let o = dcoulomb(&["wavefn", "--Z", "1", "--alpha", "0.1", "--l", "1", "--k", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(l+k+1)^2 + l(l+1) = 27 ≥ 19"), "{}", stderr(&o));
}

#[test]
fn invalid_configuration_exits_2() {
    for args in [
        &["spectrum", "--Z", "0"][..],
        &["spectrum", "--alpha", "nan"],
        &["spectrum", "--picture", "curved", "--delta", "0.5"],
        &["spectrum", "--picture", "sideways"],
        &["wavefn", "--rho", "1,-2"],
        &["verify", "--n-points", "5"],
    ] {
        let o = dcoulomb(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn default_verification_passes() {
    let o = dcoulomb(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: VerifyDoc = serde_json::from_str(stdout(&o)).unwrap();
    assert!(doc.passed);
    let names: Vec<&str> = doc.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "spectrum_vs_oracle",
            "bound_state_count",
            "orthonormality",
            "annihilation",
            "ladder_recursion",
            "laguerre_relation",
            "laguerre_limit",
            "curvature",
            "laplace"
        ]
    );
}

#[test]
fn undeformed_verification_runs_hydrogen_subset() {
    let o = dcoulomb(&["verify", "--alpha", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("check,measured,tolerance,passed\n"));
    assert!(!text.contains("curvature") && !text.contains("bound_state_count"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn corrupted_tolerance_fails_verification() {
    let o = dcoulomb(&["verify", "--tolerance-scale", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("first failing check spectrum_vs_oracle"), "{}", stderr(&o));
    let doc: VerifyDoc = serde_json::from_str(stdout(&o)).unwrap();
    assert!(!doc.passed);
}

#[test]
fn json_round_trips_and_output_is_deterministic() {
    let args = ["spectrum", "--Z", "2", "--alpha", "0.1", "--picture", "pdm", "--delta", "0.25", "--lambda", "-1"];
    let a = dcoulomb(&args);
    let b = dcoulomb(&args);
    assert_eq!(a.stdout, b.stdout);
    let doc: SpectrumDoc = serde_json::from_str(stdout(&a)).unwrap();
    let again: SpectrumDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
    let mut pretty = serde_json::to_string_pretty(&doc).unwrap();
    pretty.push('\n');
    assert_eq!(pretty, stdout(&a));
}

#[test]
fn csv_uses_lf_and_a_header() {
    let o = dcoulomb(&["spectrum", "--Z", "2", "--alpha", "0.1", "--format", "csv"]);
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert!(text.starts_with("n,k,l,energy,g_k,s_k\n"));
    assert_eq!(text.lines().count(), 1 + 16);
}

#[test]
fn output_directory_from_environment() {
    let dir: PathBuf = std::env::temp_dir().join(format!("dcoulomb-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let o = Command::new(env!("CARGO_BIN_EXE_dcoulomb"))
        .args(["spectrum", "--format", "csv"])
        .env("DCOULOMB_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.join("spectrum.csv")).unwrap();
    assert!(written.starts_with("n,k,l,"));
    let o = Command::new(env!("CARGO_BIN_EXE_dcoulomb"))
        .args(["spectrum", "--output", "nested/table.json"])
        .env("DCOULOMB_OUTPUT_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.join("nested/table.json").is_file());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn key_order_is_by_energy() {
    let o = dcoulomb(&["spectrum", "--Z", "1", "--alpha", "0.1"]);
    let doc: SpectrumDoc = serde_json::from_str(stdout(&o)).unwrap();
    assert!(doc.states.windows(2).all(|w| w[0].energy <= w[1].energy));
    assert!(doc.states.iter().any(|s| BoundStateKey::new(s.k, s.l) == BoundStateKey::new(3, 0)));
}
