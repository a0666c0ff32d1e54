use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use house_alloc::{Instance, Objective};
use house_alloc_cli::*;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, inst: &Instance) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, inst.to_json()).unwrap();
    p
}

fn sets(m: usize, sets: &[&[usize]]) -> Instance {
    let owned: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
    Instance::from_valued_sets(m, &owned).unwrap()
}

fn table2() -> Instance {
    sets(
        10,
        &[&[0], &[0, 1], &[0, 1], &[0, 1, 2], &[0, 1, 2], &[7, 8, 9], &[7, 8, 9], &[8, 9], &[9]],
    )
}

fn solve_args(file: &Path, objective: Objective, method: SolveMethod, json: bool) -> SolveArgs {
    SolveArgs { file: file.to_path_buf(), objective, method, json }
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
        .to_string()
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = |out: &str| GenArgs {
        n: 6,
        m: 8,
        n_star: 3,
        seed: 17,
        kind: Kind::Binary,
        out: Some(dir.path().join(out)),
    };
    cmd_gen(&args("a.json")).unwrap();
    cmd_gen(&args("b.json")).unwrap();
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
    let inst = Instance::from_json(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!((inst.n(), inst.m()), (6, 8));
}

#[test]
fn gen_identical_and_distinct_rows() {
    let rows = |n_star| {
        let text = cmd_gen(&GenArgs { n: 5, m: 6, n_star, seed: 1, kind: Kind::Binary, out: None }).unwrap();
        let inst = Instance::from_json(&text).unwrap();
        (0..5).map(|a| inst.valued_houses(a)).collect::<Vec<_>>()
    };
    let same = rows(1);
    assert!(same.iter().all(|r| *r == same[0]));
    let distinct = rows(5);
    for i in 0..5 {
        for j in i + 1..5 {
            assert_ne!(distinct[i], distinct[j]);
        }
    }
    assert!(cmd_gen(&GenArgs { n: 4, m: 2, n_star: 4, seed: 0, kind: Kind::Binary, out: None }).is_err());
}

#[test]
fn solve_table2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "t2.json", &table2());
    let auto = cmd_solve(&solve_args(&f, Objective::NumEnvious, SolveMethod::Auto, false)).unwrap();
    assert_eq!(field(&auto, "method"), "extremal");
    let oracle = cmd_solve(&solve_args(&f, Objective::NumEnvious, SolveMethod::Fpt, false)).unwrap();
    assert_eq!(field(&auto, "value"), field(&oracle, "value"));
    assert_eq!(field(&auto, "kappa_num"), field(&auto, "value"));
}

#[test]
fn solve_square_and_json() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sq.json", &sets(3, &[&[0], &[0], &[0]]));
    let text = cmd_solve(&solve_args(&f, Objective::MaxEnvy, SolveMethod::Auto, true)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["method"], "square");
    assert_eq!(v["value"], 1);
    assert_eq!(v["kappa_num"], 2);
    assert_eq!(v["welfare"], 1);
    assert_eq!(v["allocation"].as_array().unwrap().len(), 3);
}

#[test]
fn every_method_agrees_with_oracle_where_it_applies() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (sets(4, &[&[0], &[0], &[1]]), vec![SolveMethod::SingleMinded, SolveMethod::Degree2, SolveMethod::Extremal]),
        (sets(5, &[&[0, 1], &[1, 2], &[2, 0], &[3]]), vec![SolveMethod::Fpt, SolveMethod::Ilp, SolveMethod::Degree2]),
        (sets(4, &[&[0, 1], &[0, 1], &[2, 3], &[3]]), vec![SolveMethod::Square, SolveMethod::Ilp]),
    ];
    for (i, (inst, methods)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("c{i}.json"), inst);
        for obj in Objective::ALL {
            let want = field(&cmd_solve(&solve_args(&f, obj, SolveMethod::Oracle, false)).unwrap(), "value");
            let auto = field(&cmd_solve(&solve_args(&f, obj, SolveMethod::Auto, false)).unwrap(), "value");
            assert_eq!(auto, want);
            for &m in methods {
                if m == SolveMethod::Degree2 && obj != Objective::NumEnvious {
                    assert!(cmd_solve(&solve_args(&f, obj, m, false)).is_err());
                    continue;
                }
                let got = cmd_solve(&solve_args(&f, obj, m, false)).unwrap();
                assert_eq!(field(&got, "value"), want, "{m:?} {obj} on case {i}");
            }
        }
    }
}

#[test]
fn solve_rankings() {
    let dir = TempDir::new().unwrap();
    let inst = Instance::strict(4, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1]]).unwrap();
    let f = write(&dir, "strict.json", &inst);
    let out = cmd_solve(&solve_args(&f, Objective::TotalEnvy, SolveMethod::Auto, false)).unwrap();
    assert_eq!(field(&out, "value"), "3");
    assert_eq!(field(&out, "welfare"), "n/a");
}

#[test]
fn check_ef_verdicts() {
    let dir = TempDir::new().unwrap();
    let roomy = write(&dir, "roomy.json", &sets(7, &[&[0, 1], &[1, 2], &[0]]));
    assert!(cmd_check_ef(&roomy).unwrap().starts_with("envy-free: yes"));
    let tight = write(&dir, "tight.json", &sets(3, &[&[0], &[0], &[1]]));
    assert_eq!(cmd_check_ef(&tight).unwrap(), "envy-free: no\n");
}

#[test]
fn kernelize_writes_files() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &sets(5, &[&[0, 1], &[2, 3], &[2, 3], &[2, 3]]));
    let out = dir.path().join("reduced.json");
    let trace = dir.path().join("trace.json");
    cmd_kernelize(&KernelizeArgs { file: f, out: Some(out.clone()), trace: Some(trace.clone()) }).unwrap();
    let reduced = Instance::from_json(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(reduced.m() <= 2 * (reduced.n() - 1));
    let t: serde_json::Value = serde_json::from_str(&fs::read_to_string(trace).unwrap()).unwrap();
    assert!(t["steps"].as_array().is_some_and(|s| !s.is_empty()));
}

#[test]
fn kernelize_trivial_instance() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "triv.json", &sets(7, &[&[0, 1], &[1, 2], &[0]]));
    let text = cmd_kernelize(&KernelizeArgs { file: f, out: None, trace: None }).unwrap();
    assert!(text.starts_with("trivial yes-instance"));
}

#[test]
fn pof_output() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "lb.json", &house_alloc::welfare::pof_lower_bound_instance(3).unwrap());
    let text = cmd_pof(&PofArgs { file: f, max_agents: 8, max_houses: 12 }).unwrap();
    assert!(text.contains("max welfare: 5"));
    assert_eq!(text.matches("ratio 5/2").count(), 3);
}

#[test]
fn export_lp_sections() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "three.json", &sets(3, &[&[0], &[0], &[0]]));
    for model in [LpModel::P1, LpModel::P2, LpModel::Uha] {
        let text = cmd_export_lp(&ExportArgs { file: f.clone(), model, out: None }).unwrap();
        let heads: Vec<&str> = text.lines().filter(|l| !l.starts_with(' ')).collect();
        assert_eq!(heads, ["Minimize", "Subject To", "Bounds", "Generals", "Binaries", "End"]);
    }
}

#[test]
fn experiment_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("e.csv");
    let args = ExperimentArgs {
        configs: vec![parse_point("5:6:2").unwrap()],
        trials: 3,
        seed: 4,
        out: out.clone(),
        serial: false,
    };
    cmd_experiment(&args).unwrap();
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 3);

    let empty = ExperimentArgs { configs: vec![], trials: 3, seed: 4, out: out.clone(), serial: true };
    cmd_experiment(&empty).unwrap();
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1);
}

#[test]
fn grid_point_parsing() {
    let p = parse_point("12:14:6").unwrap();
    assert_eq!((p.n, p.m, p.n_star), (12, 14, 6));
    assert!(parse_point("12:14").is_err());
    assert!(parse_point("a:b:c").is_err());
}

#[test]
fn binary_end_to_end() {
    let dir = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_house-alloc");
    let inst = dir.path().join("g.json");
    let status = Command::new(bin)
        .args(["gen", "--n", "4", "--m", "5", "--n-star", "2", "--seed", "8", "--out"])
        .arg(&inst)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(bin)
        .args(["solve", "--objective", "uha"])
        .arg(&inst)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("objective: uha"));
    let bad = Command::new(bin).args(["solve", "missing.json"]).output().unwrap();
    assert!(!bad.status.success());
}
