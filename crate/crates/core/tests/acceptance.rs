//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use medial::brauer::{lift, yang_baxter_suite, StrandDiagram};
use medial::constructions::{
    b_bw, b_fw, instantiate, labels, pentagon_from_lifting, psi_lift, psi_shape,
    LiftArgs,
};
use medial::groups::oracle::image;
use medial::groups::{def_cm_expansion, gamma, nseq, verify_direct_product, DEFAULT_BUDGET};
use medial::sample::{group_alphabet, random_formula, random_group_word, random_term};
use medial::{
    arrows_equal, eval_perm, parse_arrow, parse_formula, ArrowTerm, Dialect, Error, Formula,
    Shape,
};

const VERIFY_LIMIT: Duration = Duration::from_secs(1);
const GROUP4_LIMIT: Duration = Duration::from_secs(60);
const ORDERS: [u64; 5] = [1, 1, 2, 36, 414_720];
const ORACLE_PAIRS: usize = 1000;
const ORACLE_WORD_LEN: usize = 6;
const ROUNDTRIPS: usize = 10_000;
const ILL_TYPED: usize = 1000;
const SEED: u64 = 0x6d65_6469_616c;

type Outcome = Result<String, String>;

fn medial_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_medial"))
        .args(args)
        .env_remove("MEDIAL_BUDGET")
        .output()
        .expect("run medial binary")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn equation_suite() -> Outcome {
    let start = Instant::now();
    let out = medial_cli(&["verify", "all"]);
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let passed = stdout.lines().filter(|l| l.starts_with("pass ")).count();
    let expected = labels().count();
    ensure(out.status.success(), || format!("exit {:?}: {stdout}", out.status.code()))?;
    ensure(passed == expected, || format!("{passed}/{expected} labels passed"))?;
    ensure(elapsed < VERIFY_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{passed} labels in {elapsed:.2?}"))
}

fn group_structure() -> Outcome {
    let mut orders = Vec::new();
    let mut group4 = Duration::ZERO;
    for (n, &order) in ORDERS.iter().enumerate() {
        let start = Instant::now();
        let report = verify_direct_product(n, DEFAULT_BUDGET).map_err(|e| format!("n={n}: {e}"))?;
        if n == 4 {
            group4 = start.elapsed();
        }
        ensure(report.order == order, || format!("n={n}: order {} != {order}", report.order))?;
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        ensure(failed.is_empty(), || format!("n={n}: failed {failed:?}"))?;
        orders.push(report.order.to_string());
    }
    ensure(group4 < GROUP4_LIMIT, || format!("n=4 took {group4:?}"))?;
    let out = medial_cli(&["group", "3"]);
    let json: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("group 3 output: {e}"))?;
    ensure(out.status.success() && json["order"] == 36, || format!("cli group 3: {json}"))?;
    Ok(format!("orders {} (n=4 in {group4:.2?})", orders.join(", ")))
}

fn labelling() -> Outcome {
    let expected = [
        "0_1 1_1",
        "0_1 1_1 1_2 2_1",
        "0_1 1_1 1_2 2_1 1_3 2_2 2_3 3_1",
        "0_1 1_1 1_2 2_1 1_3 2_2 2_3 3_1 1_4 2_4 2_5 3_2 2_6 3_3 3_4 4_1",
    ];
    for (k, want) in expected.iter().enumerate() {
        let n = k + 1;
        let out = medial_cli(&["nseq", &n.to_string()]);
        let got = String::from_utf8_lossy(&out.stdout);
        ensure(got == format!("{want}\n"), || format!("nseq {n} printed {got:?}"))?;
        ensure(nseq(n).to_string() == *want, || format!("nseq({n}) differs"))?;
    }
    Ok("N^1..N^4 byte-exact".into())
}

fn def_cm() -> Outcome {
    for n in 2..=4 {
        let expansion = def_cm_expansion(n).map_err(|e| e.to_string())?;
        let lhs = eval_perm(&expansion).map_err(|e| e.to_string())?;
        let rhs = eval_perm(&gamma(n + 1)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("n={n}: {lhs} != {rhs}"))?;
    }
    Ok("n = 2, 3, 4".into())
}

fn brauer() -> Outcome {
    let g = lift(&StrandDiagram::crossing(2, 1));
    let table = serde_json::to_string(&g).map_err(|e| e.to_string())?;
    let want = r#"{"00":"00","01":"10","10":"01","11":"11"}"#;
    ensure(table == want, || format!("crossing lifts to {table}"))?;
    let checks = yang_baxter_suite().map_err(|e| e.to_string())?;
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), || format!("failed {failed:?}"))?;
    let out = medial_cli(&["brauer-yb"]);
    ensure(out.status.success(), || "cli brauer-yb failed".into())?;
    Ok(format!("{} checks", checks.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let alphabet = group_alphabet(3);
    let mut equal = 0;
    for k in 0..ORACLE_PAIRS {
        let w1 = random_group_word(&mut rng, &alphabet, ORACLE_WORD_LEN);
        let w2 = if k % 2 == 0 {
            random_group_word(&mut rng, &alphabet, ORACLE_WORD_LEN)
        } else {
            let mut w = w1.clone();
            w.shuffle(&mut rng);
            w
        };
        let (f, g) = (ArrowTerm::chain(w1), ArrowTerm::chain(w2));
        let decided = arrows_equal(&f, &g).map_err(|e| e.to_string())?;
        let oracle = image(&f).map_err(|e| e.to_string())? == image(&g).map_err(|e| e.to_string())?;
        ensure(decided == oracle, || format!("pair {k}: {f}  vs  {g}"))?;
        equal += usize::from(decided);
    }
    Ok(format!("{ORACLE_PAIRS} pairs agree ({equal} equal)"))
}

fn psi_constructions() -> Outcome {
    let l = |s: &str| Formula::letter(s);
    let (a, ap, b, c) = (l("a"), l("a'"), l("b"), l("c"));
    let hole = || Shape::Hole;
    let hh = || Shape::conj(hole(), hole());

    let args = LiftArgs::new(vec![], vec![a.clone()], vec![ap.clone()], vec![c.clone()]);
    let got = psi_lift(&hh(), 1, &hole(), &args).map_err(|e| e.to_string())?;
    ensure(got == b_bw(&a, &ap, &c), || format!("(N,1,_) gave {got}"))?;

    let args = LiftArgs::new(vec![b.clone()], vec![a.clone()], vec![ap.clone()], vec![]);
    let got = psi_lift(&hh(), 2, &hole(), &args).map_err(|e| e.to_string())?;
    ensure(got == b_fw(&b, &a, &ap), || format!("(N,2,_) gave {got}"))?;

    let shapes = [hole(), hh(), Shape::conj(hh(), Shape::conj(hole(), hh()))];
    for m in shapes {
        let n = m.arity();
        let left: Vec<_> = (1..=n).map(|k| l(&format!("x{k}"))).collect();
        let right: Vec<_> = (1..=n).map(|k| l(&format!("y{k}"))).collect();
        let args = LiftArgs::new(vec![], left.clone(), right.clone(), vec![]);
        let got = psi_lift(&hole(), 1, &m, &args).map_err(|e| e.to_string())?;
        let want = psi_shape(&m, &left, &right).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("(_,1,M) for M = {m:?} gave {got}"))?;
    }

    let (pa, pb, pc, pd) = (l("a"), l("b"), l("c"), l("d"));
    let lifted = pentagon_from_lifting(&pa, &pb, &pc, &pd).map_err(|e| e.to_string())?;
    let bindings = [("A", pa), ("B", pb), ("C", pc), ("D", pd)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let pentagon = instantiate("b5", &bindings).map_err(|e| e.to_string())?;
    ensure(lifted == pentagon, || "lifting square differs from the pentagon".into())?;
    Ok("base cases and pentagon structural".into())
}

fn parser() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 8);
    for k in 0..ROUNDTRIPS {
        let full = k % 2 == 1;
        let leaves = rng.gen_range(1..10);
        let a = random_formula(&mut rng, leaves, if full { 0.2 } else { 0.0 });
        let parsed = parse_formula(&a.to_string()).map_err(|e| format!("{a}: {e}"))?;
        ensure(parsed == a, || format!("formula {a} reparsed as {parsed}"))?;

        let dialect = if full { Dialect::Full } else { Dialect::CmOnly };
        let size = rng.gen_range(1..12);
        let f = random_term(&mut rng, &a, size, dialect);
        let text = f.to_string();
        let once = parse_arrow(&text).map_err(|e| format!("{text}: {e}"))?;
        let twice = parse_arrow(&once.to_string()).map_err(|e| format!("{once}: {e}"))?;
        ensure(once == f && twice == once, || format!("arrow {text} did not roundtrip"))?;
    }

    let mut rejected = 0;
    while rejected < ILL_TYPED {
        let leaves = rng.gen_range(1..7);
        let a = random_formula(&mut rng, leaves, 0.1);
        let f = random_term(&mut rng, &a, 4, Dialect::Full);
        let leaves = rng.gen_range(1..7);
        let b = random_formula(&mut rng, leaves, 0.1);
        let g = random_term(&mut rng, &b, 4, Dialect::Full);
        if f.target().ok() == Some(b) {
            continue;
        }
        let text = format!("({g}) . ({f})");
        match parse_arrow(&text) {
            Err(Error::TypeMismatch { .. }) => rejected += 1,
            other => return Err(format!("{text} gave {other:?}")),
        }
    }
    Ok(format!("{ROUNDTRIPS} roundtrips, {ILL_TYPED} ill-typed rejected"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("equation suite", equation_suite),
        ("group structure", group_structure),
        ("labelling", labelling),
        ("def cm", def_cm),
        ("brauer correspondence", brauer),
        ("oracle equivalence", oracle_equivalence),
        ("psi constructions", psi_constructions),
        ("parser", parser),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(detail) => {
                all = false;
                println!("FAIL {} {name}: {detail}", k + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
