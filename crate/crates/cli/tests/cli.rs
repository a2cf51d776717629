use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use stabgeo::bodies::io::write_polygon;
use stabgeo::pl1d::write_function;
use stabgeo::pln::write_stack;
use stabgeo::{ConvexPolygon, Domain, GridFn1D, LevelStack};

fn stabgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabgeo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn header(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or("").to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn santalo_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("square.csv");
    write_polygon(&sq, &ConvexPolygon::rectangle(1.0, 1.0).unwrap()).unwrap();
    let o = stabgeo(&["santalo", "--body", p(&sq), "--polygon"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&o), "zx,zy,volume,polar_volume,product,deficit");
    let row: Vec<f64> = stdout(&o).lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    let target = std::f64::consts::PI.powi(2) / 8.0 - 1.0;
    assert!((row[5] - target).abs() < 1e-9, "{row:?}");
    // header sniffing picks the polygon reader too
    let o2 = stabgeo(&["santalo", "--body", p(&sq)]);
    assert_eq!(stdout(&o), stdout(&o2));
}

#[test]
fn profile_without_dim_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ball.csv");
    stabgeo::bodies::io::write_profile(&f, &stabgeo::RevolutionBody::ball(3, 1.0, 129).unwrap()).unwrap();
    assert_eq!(stabgeo(&["santalo", "--body", p(&f), "--profile"]).status.code(), Some(1));
    let o = stabgeo(&["santalo", "--body", p(&f), "--profile", "--dim", "3"]);
    assert!(o.status.success());
}

#[test]
fn pl1d_and_fmp_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let (f, g) = (dir.path().join("f.csv"), dir.path().join("g.csv"));
    let one = |x: f64| if x.abs() <= 0.5 { 1.0 } else { 0.0 };
    write_function(&f, &GridFn1D::uniform(-1.0, 1.0, 401, Domain::WholeLine, one).unwrap()).unwrap();
    write_function(&g, &GridFn1D::uniform(-1.0, 1.0, 401, Domain::WholeLine, |x| (-x * x).exp()).unwrap()).unwrap();
    let o = stabgeo(&["pl1d", "--f", p(&f), "--g", p(&g), "--mode", "arith"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&o), "eps,omega,a,b,l1_f,l1_g,vacuous");
    assert_eq!(stabgeo(&["pl1d", "--f", p(&f), "--g", p(&g), "--mode", "median"]).status.code(), Some(1));

    let (k, c) = (dir.path().join("k.csv"), dir.path().join("c.csv"));
    write_polygon(&k, &ConvexPolygon::rectangle(1.0, 1.0).unwrap()).unwrap();
    write_polygon(&c, &ConvexPolygon::regular(6, 1.0, 0.0).unwrap()).unwrap();
    let o = stabgeo(&["fmp", "--k", p(&k), "--c", p(&c)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&o), "sigma,A,gamma_star,lhs_add,rhs_add,lhs_prod,rhs_prod,eta");
}

#[test]
fn pln_tables_and_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let f = LevelStack::gaussian(3, 12, 129).unwrap();
    let raw = dir.path().join("raw.stack");
    write_stack(&raw, &f).unwrap();
    let norm = dir.path().join("norm.stack");
    write_stack(&norm, &f.normalized().unwrap()).unwrap();
    let g = dir.path().join("g.stack");
    write_stack(&g, &f.normalized().unwrap().dilated_axis(1.2).normalized().unwrap()).unwrap();

    let o = stabgeo(&["pln", "--f", p(&norm), "--g", p(&g)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert!(blocks[0].starts_with("dim,eps,omega,b,swapped,"));
    assert!(blocks[1].starts_with("t,alpha,beta,sigma,eta,in_I\n"));
    assert_eq!(blocks[1].trim_end().lines().count(), 13);

    let bad = stabgeo(&["pln", "--f", p(&raw), "--g", p(&raw)]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn bad_configs_exit_one_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let cases: [&[&str]; 4] = [
        &["cap-scan", "--grid", ""],
        &["cap-scan", "--grid", "0.5,3.0"],
        &["cap-scan", "--grid", "1e-3", "--dim", "1"],
        &["pl-scan", "--grid", "0.1", "--family", "wobble"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.extend(["--output", p(&out)]);
        let o = stabgeo(&a);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!out.exists(), "{args:?}");
    }
    let cfg = dir.path().join("scan.cfg");
    fs::write(&cfg, format!("grid=1e-3\ncolour=red\noutput={}\n", p(&out))).unwrap();
    assert_eq!(stabgeo(&["cap-scan", "--config", p(&cfg)]).status.code(), Some(1));
    assert!(!out.exists());
    assert_eq!(stabgeo(&["cap-scan", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(stabgeo(&["santalo", "--body", p(&dir.path().join("missing.csv"))]).status.code(), Some(1));
}

#[test]
fn config_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let cfg = dir.path().join("bs.cfg");
    fs::write(&cfg, "# small family\nexperiment=bs-scan\ndim=3\ncount=12\nseed=5\nsamples=513\n").unwrap();
    for out in [&a, &b] {
        let o = stabgeo(&["bs-scan", "--config", p(&cfg), "--output", p(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("max_ratio="));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.starts_with("bs_deficit,delta_bm\n"));
    assert_eq!(text.lines().count(), 13);
    let o = stabgeo(&["bs-scan", "--config", p(&cfg), "--seed", "6"]);
    assert_ne!(o.stdout, fs::read(&a).unwrap());
}

#[test]
fn pl_scan_schema() {
    let o = stabgeo(&["pl-scan", "--grid", "0.1,0.2,0.4", "--points", "513"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(header(&o), "delta,eps,l1,omega,ratio");
    assert!(String::from_utf8_lossy(&o.stderr).contains("slope="));
}
