//! Acceptance checks. Each test prints one `criterion N: PASS|FAIL|SKIP` line.

mod common;

use std::time::{Duration, Instant};

use knotwork::alexander::{alexander_polynomial, genus_lower_bound, knot_determinant};
use knotwork::catalog::{ingest_pd_file, KnotRecord};
use knotwork::jones::{jones_polynomial, kauffman_bracket, kauffman_bracket_naive, unnormalized_jones};
use knotwork::khovanov::{
    cube_of_resolutions, khovanov_homology, khovanov_homology_full_cube, lee_rank, reduced_complex, s_invariant,
    s_invariant_full_cube, FieldChoice, KhovanovOptions, F2, Q,
};
use knotwork::slice::{
    fox_milnor_determinant_test, slice_report, trace_transfer_verdict, transfer_summary, Obstruction,
    TraceSiblingCertificate, Verdict,
};
use knotwork::{LaurentPoly, PlanarDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{catalog, data_path, kprime, random_walk};

fn verdict(n: u32, failures: &[String], summary: &str) {
    if failures.is_empty() {
        println!("criterion {n}: PASS ({summary})");
    } else {
        println!("criterion {n}: FAIL ({summary})");
        for f in failures {
            println!("  - {f}");
        }
        panic!("criterion {n} failed: {}", failures.join("; "));
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[test]
fn criterion_1_alexander_values() {
    let c = catalog();
    let mut fails = Vec::new();
    let expected = [("unknot", "1"), ("trefoil", "t^2 - t + 1"), ("conway", "1"), ("kt", "1")];
    for (name, want) in expected {
        let (p, t) = timed(|| alexander_polynomial(&c.lookup(name).unwrap().pd).unwrap());
        check(&mut fails, p.to_string() == want, format!("{name}: got {p}, want {want}"));
        check(&mut fails, t < Duration::from_secs(1), format!("{name}: took {t:?}"));
    }
    verdict(1, &fails, "unknot 1, trefoil t^2 - t + 1, Conway 1, KT 1; each under 1 s");
}

#[test]
fn criterion_2_jones_mutation() {
    let c = catalog();
    let mut fails = Vec::new();
    let (pair, t) = timed(|| {
        (jones_polynomial(&c.lookup("conway").unwrap().pd).unwrap(), jones_polynomial(&c.lookup("kt").unwrap().pd).unwrap())
    });
    check(&mut fails, pair.0 == pair.1, format!("Conway {} vs KT {}", pair.0, pair.1));
    check(&mut fails, t < Duration::from_secs(5), format!("took {t:?}"));
    verdict(2, &fails, &format!("V = {} for both, {t:?}", pair.0));
}

#[test]
fn criterion_3_categorification() {
    let c = catalog();
    let mut fails = Vec::new();
    let start = Instant::now();
    let mut count = 0;
    for r in c.records().iter().filter(|r| r.pd.crossing_count() <= 11) {
        let jones = unnormalized_jones(&r.pd).unwrap();
        for field in [FieldChoice::F2, FieldChoice::Q] {
            let chi = khovanov_homology(&r.pd, field).unwrap().euler_characteristic();
            check(&mut fails, chi == jones, format!("{} over {field}: chi {chi} vs {jones}", r.name));
        }
        count += 1;
    }
    let t = start.elapsed();
    check(&mut fails, t < Duration::from_secs(300), format!("took {t:?}"));
    verdict(3, &fails, &format!("{count} knots, F2 and Q, {t:?}"));
}

#[test]
fn criterion_4_s_pipeline() {
    let c = catalog();
    let mut fails = Vec::new();
    for (name, want) in [("unknot", 0), ("trefoil", 2), ("left-trefoil", -2)] {
        let s = s_invariant(&c.lookup(name).unwrap().pd).unwrap().s;
        check(&mut fails, s == want, format!("s({name}) = {s}, want {want}"));
    }
    let (conway, t) = timed(|| s_invariant(&c.lookup("conway").unwrap().pd).unwrap());
    check(&mut fails, conway.s == 0, format!("s(Conway) = {}", conway.s));
    check(&mut fails, t < Duration::from_secs(600), format!("Conway took {t:?}"));
    verdict(
        4,
        &fails,
        &format!(
            "0, +2, -2, Conway 0 in {t:?} (peak {} generators, {} after reduction)",
            conway.peak_generators, conway.final_generators
        ),
    );
}

#[test]
fn criterion_5_kprime_s() {
    let Some(k) = kprime() else {
        println!("criterion 5: SKIP (optional; no PD for K' supplied via KNOTWORK_EXTRA_KNOTS or data/kprime.pd)");
        return;
    };
    let mut fails = Vec::new();
    let (r, t) = timed(|| s_invariant(&k.pd));
    match r {
        Ok(r) => check(&mut fails, r.s == 2, format!("s(K') = {}", r.s)),
        Err(e) => fails.push(format!("s(K') failed: {e}")),
    }
    verdict(5, &fails, &format!("{} crossings, {t:?}", k.pd.crossing_count()));
}

#[test]
fn criterion_6_fox_milnor() {
    let c = catalog();
    let mut fails = Vec::new();
    let trefoil = &c.lookup("trefoil").unwrap().pd;
    let kt = &c.lookup("kt").unwrap().pd;
    check(&mut fails, knot_determinant(trefoil).unwrap() == 3, "trefoil determinant");
    check(&mut fails, !fox_milnor_determinant_test(trefoil).unwrap(), "trefoil passes the test");
    let r = slice_report("trefoil", trefoil, false).unwrap();
    check(&mut fails, r.verdict == Verdict::NotSlice, "trefoil verdict");
    check(&mut fails, r.obstructions == vec![Obstruction::DeterminantNonsquare], "trefoil obstructions");
    check(&mut fails, knot_determinant(kt).unwrap() == 1, "KT determinant");
    check(&mut fails, fox_milnor_determinant_test(kt).unwrap(), "KT fails the test");
    verdict(6, &fails, "trefoil det 3 -> NotSlice; KT det 1 -> passes");
}

#[test]
fn criterion_7_trace_transfer() {
    let mut fails = Vec::new();
    let cert: TraceSiblingCertificate =
        std::fs::read_to_string(data_path("conway_kprime.cert")).unwrap().parse().unwrap();
    let mut c = catalog();
    let Some(k) = kprime() else {
        fails.push("no PD for K' available, so s(K') cannot be computed and nothing transfers".into());
        return verdict(7, &fails, "Conway NotSlice via trace-transfer with own s = 0");
    };
    c.extend(vec![k.clone()]).unwrap();
    let cert = c.resolve_certificate(&cert).unwrap();
    let conway = c.lookup("conway").unwrap();
    let rc = slice_report(&conway.name, &conway.pd, true).unwrap();
    let rk = slice_report(&k.name, &k.pd, true).unwrap();
    let (rc, rk) = match trace_transfer_verdict(&cert, &rc, &rk) {
        Ok(pair) => pair,
        Err(e) => {
            fails.push(format!("transfer failed: {e}"));
            return verdict(7, &fails, "");
        }
    };
    check(&mut fails, rk.s == Some(2), format!("s(K') = {:?}", rk.s));
    check(&mut fails, rc.verdict == Verdict::NotSlice, "Conway verdict");
    check(&mut fails, rc.obstructions == vec![Obstruction::TraceTransfer], "Conway obstructions");
    check(&mut fails, rc.s == Some(0), format!("own s(Conway) = {:?}", rc.s));
    verdict(7, &fails, &transfer_summary(&rc));
}

fn same_invariants(a: &PlanarDiagram, b: &PlanarDiagram) -> Result<(), String> {
    let (da, db) = (alexander_polynomial(a).unwrap(), alexander_polynomial(b).unwrap());
    if da != db {
        return Err(format!("alexander {da} vs {db}"));
    }
    let (ja, jb) = (jones_polynomial(a).unwrap(), jones_polynomial(b).unwrap());
    if ja != jb {
        return Err(format!("jones {ja} vs {jb}"));
    }
    for f in [FieldChoice::F2, FieldChoice::Q] {
        if khovanov_homology(a, f).unwrap() != khovanov_homology(b, f).unwrap() {
            return Err(format!("khovanov over {f}"));
        }
    }
    Ok(())
}

#[test]
fn criterion_8_property_suites() {
    let c = catalog();
    let mut fails = Vec::new();
    let opts = KhovanovOptions::default();

    // Reidemeister invariance.
    let small: Vec<&KnotRecord> = c.records().iter().filter(|r| r.pd.crossing_count() <= 9).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sequences = 240;
    for k in 0..sequences {
        let r = small[k % small.len()];
        let n = r.pd.crossing_count();
        let moved = random_walk(&r.pd, &mut rng, 6, n.max(3) + 4);
        if let Err(e) = same_invariants(&r.pd, &moved) {
            fails.push(format!("{} after random moves ({}): {e}", r.name, moved.to_pd_string()));
        }
    }

    // Catalog-wide: Δ symmetric, Δ(1) = ±1, Lee rank 2.
    for r in c.records() {
        let d = alexander_polynomial(&r.pd).unwrap();
        check(&mut fails, d.equal_up_to_units(&d.invert_variable()), format!("{}: Δ not symmetric", r.name));
        let at_one = d.eval_int(1).unwrap();
        let at_one = at_one.to_string();
        check(&mut fails, at_one == "1" || at_one == "-1", format!("{}: Δ(1) = {at_one}", r.name));
        check(&mut fails, lee_rank(&r.pd, &opts).unwrap() == 2, format!("{}: Lee rank", r.name));
    }

    // Connected sums: Δ multiplies, s adds.
    let summands = ["trefoil", "left-trefoil", "figure-eight", "5_1", "5_2", "6_1", "conway"];
    let mut pairs = 0;
    for (i, a) in summands.iter().enumerate() {
        for b in &summands[i..] {
            let (ka, kb) = (&c.lookup(a).unwrap().pd, &c.lookup(b).unwrap().pd);
            let sum = ka.connected_sum(kb, 1, 1).unwrap();
            let prod = &alexander_polynomial(ka).unwrap() * &alexander_polynomial(kb).unwrap();
            check(&mut fails, alexander_polynomial(&sum).unwrap().equal_up_to_units(&prod), format!("Δ({a} # {b})"));
            let s = s_invariant(&sum).unwrap().s;
            let (sa, sb) = (s_invariant(ka).unwrap().s, s_invariant(kb).unwrap().s);
            check(&mut fails, s == sa + sb, format!("s({a} # {b}) = {s}, want {}", sa + sb));
            pairs += 1;
        }
    }

    // Optimized paths against the unreduced ones, and d∘d = 0.
    let limit = 1 << 26;
    let mut oracle_knots = 0;
    for r in c.records().iter().filter(|r| r.pd.crossing_count() <= 8) {
        let d = &r.pd;
        check(&mut fails, kauffman_bracket(d) == kauffman_bracket_naive(d), format!("{}: bracket", r.name));
        check(
            &mut fails,
            khovanov_homology(d, FieldChoice::Q).unwrap() == khovanov_homology_full_cube::<Q>(d, limit).unwrap(),
            format!("{}: Kh over Q", r.name),
        );
        check(
            &mut fails,
            khovanov_homology(d, FieldChoice::F2).unwrap() == khovanov_homology_full_cube::<F2>(d, limit).unwrap(),
            format!("{}: Kh over F2", r.name),
        );
        check(
            &mut fails,
            s_invariant(d).unwrap().s == s_invariant_full_cube(d, limit).unwrap().s,
            format!("{}: s", r.name),
        );
        let cube = cube_of_resolutions(d, limit).unwrap();
        check(&mut fails, cube.complex::<Q>().unwrap().check_d_squared().is_ok(), format!("{}: cube d∘d", r.name));
        let (reduced, _) = reduced_complex::<Q>(d, &opts).unwrap();
        check(&mut fails, reduced.check_d_squared().is_ok(), format!("{}: reduced d∘d", r.name));
        oracle_knots += 1;
    }

    verdict(
        8,
        &fails,
        &format!(
            "{sequences} move sequences, {} catalog knots, {pairs} connected sums, {oracle_knots} oracle comparisons",
            c.records().len()
        ),
    );
}

#[test]
fn criterion_9_genus_bound() {
    let c = catalog();
    let mut fails = Vec::new();
    let mut checked = 0;
    for r in c.records() {
        let Some(g) = r.reference.as_ref().and_then(|x| x.genus) else { continue };
        let bound = genus_lower_bound(&r.pd).unwrap();
        check(&mut fails, bound <= g, format!("{}: bound {bound} > genus {g}", r.name));
        checked += 1;
    }
    let tref = genus_lower_bound(&c.lookup("trefoil").unwrap().pd).unwrap();
    let conway = genus_lower_bound(&c.lookup("conway").unwrap().pd).unwrap();
    check(&mut fails, tref == 1, "trefoil bound");
    check(&mut fails, conway == 0, "Conway bound");
    verdict(9, &fails, &format!("{checked} knots; trefoil 1 <= 1, Conway 0 <= 3"));
}

#[test]
fn kprime_file_round_trip() {
    // Ingestion path used for K': a file whose record matches a built-in knot.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.pd");
    std::fs::write(&path, "kprime: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\n").unwrap();
    let records = ingest_pd_file(&path).unwrap();
    assert_eq!(alexander_polynomial(&records[0].pd).unwrap(), LaurentPoly::parse("t^2 - t + 1", "t").unwrap());
}
