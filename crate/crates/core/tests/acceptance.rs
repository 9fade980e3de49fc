//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nakayama_core::coxeter::{apply, coxeter_matrix, format_polynomial};
use nakayama_core::engine::{minimize, nakayama_functor, resolve_complex, tau, two_strand_indecomposable};
use nakayama_core::obstructions::coarse_fine::{
    coarse_fine_radical_lengths, coarse_fine_sequences, CoarseFine,
};
use nakayama_core::obstructions::derivation::{hs_derivation, hs_threshold};
use nakayama_core::obstructions::tau_orbit::{tau_orbit_test, OrbitConfig, TauOrbitOutcome};
use nakayama_core::{
    battery, coxeter, enumerate_algebras, BatteryConfig, Certificate, Evidence, NakayamaAlgebra,
    PerfectComplex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan_counts() -> Check {
    let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (n, &want) in (1..=9).zip(&expected) {
        let got = enumerate_algebras(n).count();
        ensure(got == want, || format!("n = {n}: {got} algebras, expected {want}"))?;
    }
    Ok("1, 1, 2, 5, 14, 42, 132, 429, 1430".into())
}

fn golden_chains() -> Check {
    let chains = common::chains();
    for c in &chains {
        if let Some(m) = common::chain_mismatch(c) {
            return Err(format!("from {}: {m}", c.start));
        }
    }
    let steps: usize = chains.iter().map(|c| c.steps.len()).sum();
    Ok(format!("{steps} intermediate algebras match"))
}

fn golden_tables() -> Check {
    let tables = common::tau_tables();
    for t in &tables {
        if let Some(m) = common::table_mismatch(t) {
            return Err(m);
        }
    }
    let rows: Vec<String> = tables.iter().map(|t| (t.rows.len() + 1).to_string()).collect();
    Ok(format!("rows {} reproduce", rows.join(" + ")))
}

fn periodicity(certs: &mut Vec<Certificate>) -> Check {
    let mut cases: Vec<(NakayamaAlgebra, usize, usize, i32)> = vec![
        (NakayamaAlgebra::rad_power(11, 5).unwrap(), 1, 15, 1),
        (NakayamaAlgebra::rad_power(11, 4).unwrap(), 1, 15, 1),
        (NakayamaAlgebra::rad_power(12, 3).unwrap(), 1, 21, 1),
        (NakayamaAlgebra::rad_power(12, 6).unwrap(), 1, 21, 1),
        (NakayamaAlgebra::rad_power(12, 7).unwrap(), 1, 21, 1),
        (common::a9(), 2, 4, 1),
        (common::a10_single(), 3, 7, 2),
    ];
    for a in common::a10_double() {
        cases.push((a, 2, 9, 1));
    }
    for (a, start, power, shift) in &cases {
        let cfg = OrbitConfig {
            max_steps: 30,
            ..OrbitConfig::default()
        };
        let want = Evidence::TauPeriodic {
            start: *start,
            power: *power,
            shift: *shift,
        };
        match tau_orbit_test(a, &[*start], &cfg) {
            TauOrbitOutcome::Periodic(c) if c.evidence == want => certs.push(c),
            other => return Err(format!("{a}: expected {want:?}, got {other:?}")),
        }
    }
    Ok(format!("{} certificates", cases.len()))
}

fn coxeter_checks() -> Check {
    let mut algebras = vec![NakayamaAlgebra::rad_power(10, 9).unwrap()];
    algebras.extend(common::a10_double());
    for a in &algebras {
        let p = format_polynomial(&coxeter(a).polynomial);
        ensure(p == "T^10 + T^9 + T + 1", || format!("{a}: {p}"))?;
    }
    // Invariance along both chains is part of the chain comparison.
    for c in &common::chains() {
        if let Some(m) = common::chain_mismatch(c) {
            return Err(m);
        }
    }
    Ok("T^10 + T^9 + T + 1 three times; invariant along both chains".into())
}

fn coarse_fine(certs: &mut Vec<Certificate>) -> Check {
    let a = common::simpleminded();
    let CoarseFine::Computed(r) = coarse_fine_sequences(&a) else {
        return Err("construction does not apply".into());
    };
    ensure(r.c == [10, 9, 6, 3] && r.f == [10, 8, 7, 5, 4, 2], || {
        format!("c = {:?}, f = {:?}", r.c, r.f)
    })?;
    ensure(r.fires, || format!("does not fire: {:?}", r.diagnostic))?;
    certs.push(nakayama_core::obstructions::coarse_fine_test(&a)?);

    let rad = NakayamaAlgebra::rad_power(11, 4).unwrap();
    let intertwined = two_strand_indecomposable(&rad, &[10, 7, 4, 1], &[10, 9, 6, 5, 2, 1])
        .map_err(|e| e.to_string())?;
    ensure(!intertwined, || "strands of the non-example intertwine".into())?;

    let mut mismatches = Vec::new();
    for m in 3..=7 {
        for n in m + 1..=24 {
            let closed = coarse_fine_radical_lengths(n, m).map_err(|e| e.to_string())?;
            let built = match coarse_fine_sequences(&NakayamaAlgebra::rad_power(n, m).unwrap()) {
                CoarseFine::Computed(r) => Some((r.l_c, r.l_f)),
                CoarseFine::Inapplicable => None,
            };
            if built != Some(closed) {
                mismatches.push(format!("({n},{m}) built {built:?} formula {closed:?}"));
            }
        }
    }
    ensure(mismatches.is_empty(), || {
        format!("{} length pairs disagree: {}", mismatches.len(), mismatches.join("; "))
    })?;
    Ok("simpleminded fires; non-example strands do not intertwine; 95 length pairs agree".into())
}

fn survey(certs: &mut Vec<Certificate>) -> Check {
    let cfg = BatteryConfig::default();
    for n in 1..=9 {
        let flagged: Vec<NakayamaAlgebra> = enumerate_algebras(n)
            .filter_map(|a| {
                let v = battery(&a, &cfg);
                certs.extend(v.certificates().iter().cloned());
                v.is_flagged().then_some(a)
            })
            .collect();
        let want = if n == 9 { vec![common::a9()] } else { vec![] };
        ensure(flagged == want, || {
            let names: Vec<String> = flagged.iter().map(|a| a.to_string()).collect();
            format!("n = {n} flags [{}]", names.join(", "))
        })?;
    }
    Ok("n <= 8: no flags; n = 9: only n=9;rels=1-4,3-6,4-7,6-9".into())
}

fn hs_table(certs: &mut Vec<Certificate>) -> Check {
    let mut pairs = Vec::new();
    for r in 3..=7 {
        pairs.extend((hs_threshold(r).unwrap()..=20).map(|n| (n, r)));
    }
    pairs.extend((8..=15).map(|r| (r + 5, r)));
    for &(n, r) in &pairs {
        let c = hs_derivation(n, r).map_err(|e| e.to_string())?;
        let Evidence::Derivation { seed, moves, .. } = &c.evidence else {
            return Err(format!("({n},{r}): not a derivation"));
        };
        let mut a: NakayamaAlgebra = seed.parse().map_err(|e| format!("{e}"))?;
        for m in moves {
            a = m.apply(&a).map_err(|e| format!("({n},{r}) {m}: {e}"))?;
        }
        ensure(a == NakayamaAlgebra::rad_power(n, r).unwrap(), || {
            format!("({n},{r}) replays to {a}")
        })?;
        certs.push(c);
    }
    ensure(hs_derivation(10, 4).is_err(), || "(10,4) should be out of table".into())?;
    Ok(format!("{} derivations replay exactly", pairs.len()))
}

fn random_corpus(size: usize) -> Vec<(NakayamaAlgebra, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let by_n: Vec<Vec<NakayamaAlgebra>> = (0..=9).map(|n| enumerate_algebras(n.max(1)).collect()).collect();
    (0..size)
        .map(|_| {
            let n = rng.gen_range(2..=9);
            let a = by_n[n][rng.gen_range(0..by_n[n].len())].clone();
            let start = rng.gen_range(1..=n);
            (a, start)
        })
        .collect()
}

fn properties(certs: &[Certificate]) -> Check {
    let corpus = random_corpus(120);
    let mut outputs = 0;
    for (a, start) in &corpus {
        let phi = coxeter_matrix(a);
        let mut x = PerfectComplex::stalk(Arc::new(a.clone()), *start, 0).unwrap();
        for _ in 0..3 {
            let nu = nakayama_functor(&x);
            let resolved = resolve_complex(&nu).map_err(|e| format!("{a}: {e}"))?;
            let y = tau(&x).map_err(|e| format!("{a}: {e}"))?;
            let m = minimize(&resolved);
            for c in [&resolved, &m, &y] {
                c.check_d_squared().map_err(|e| format!("{a}: {e}"))?;
                outputs += 1;
            }
            ensure(resolved.homology_dims() == nu.homology_dims(), || {
                format!("{a}: resolution changed homology")
            })?;
            ensure(m.homology_dims() == resolved.homology_dims(), || {
                format!("{a}: minimization changed homology")
            })?;
            ensure(y.k_class() == apply(&phi, &x.k_class()), || {
                format!("{a}: K-theory law fails from P{start}")
            })?;
            x = y;
        }
    }
    for c in certs {
        c.verify().map_err(|e| format!("{}: {e}", c.algebra))?;
    }
    Ok(format!(
        "{} (algebra, start) pairs, {outputs} engine outputs, {} certificates replayed",
        corpus.len(),
        certs.len()
    ))
}

fn main() -> ExitCode {
    let mut certs = Vec::new();
    let mut all_ok = true;
    let mut report = |id: usize, name: &str, budget: Duration, f: &mut dyn FnMut() -> Check| {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = t.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; over the {budget:?} budget"))
            }
        });
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        all_ok &= result.is_ok();
        println!("criterion {id} {tag} {name} ({:.2} s): {detail}", elapsed.as_secs_f64());
    };
    let s = Duration::from_secs;
    report(1, "catalan counts", s(1), &mut catalan_counts);
    report(2, "golden mutation chains", s(1), &mut golden_chains);
    report(3, "golden tau tables", s(30), &mut golden_tables);
    report(4, "periodicity certificates", s(60), &mut || periodicity(&mut certs));
    report(5, "coxeter polynomials", s(1), &mut coxeter_checks);
    report(6, "coarse/fine", s(1), &mut || coarse_fine(&mut certs));
    report(7, "survey n <= 9", s(600), &mut || survey(&mut certs));
    report(8, "hs table", s(5), &mut || hs_table(&mut certs));
    let snapshot = certs.clone();
    report(9, "property suites and certificate replay", s(300), &mut || properties(&snapshot));
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
