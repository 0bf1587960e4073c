//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use rayon::prelude::*;

use paraorbit::crossed::CrossedModule;
use paraorbit::format;
use paraorbit::group::{product_set, FiniteGroup, GroupAction, GroupHom};
use paraorbit::instances;
use paraorbit::para::{enumerate, ParaMorphism};
use paraorbit::preorder::cosieve_from_duality;

const MAX_RANK: usize = 4;
const WINDOW: usize = 2;

fn rank_pool() -> BTreeMap<(usize, usize), Vec<ParaMorphism>> {
    let mut pool = BTreeMap::new();
    for n in 0..=MAX_RANK {
        for m in 0..=MAX_RANK {
            pool.insert((n, m), enumerate(n, m, WINDOW));
        }
    }
    pool
}

#[test]
fn criterion_1_paracyclic_duality() {
    let start = Instant::now();
    let pool = rank_pool();
    let total: usize = pool.values().map(|v| v.len()).sum();
    assert!(total > 1000, "enumeration too small: {total}");

    // id° = id
    for n in 0..=MAX_RANK {
        let id = ParaMorphism::identity(n);
        assert_eq!(id.cyclic_dual(), id);
    }

    // f°° = f for every enumerated morphism
    let duals: BTreeMap<(usize, usize), Vec<ParaMorphism>> = pool
        .iter()
        .map(|(&k, fs)| (k, fs.iter().map(|f| f.cyclic_dual()).collect()))
        .collect();
    for (key, fs) in &pool {
        for (f, d) in fs.iter().zip(&duals[key]) {
            assert_eq!(&d.cyclic_dual(), f, "double dual differs at {f}");
        }
    }

    // (g ∘ f)° = f° ∘ g° over all composable pairs with the window start
    // inside [-2(m+1), 2(m+1)]
    let in_range = |f: &ParaMorphism| f.values()[0] <= 2 * (f.target_rank() as i64 + 1);
    let exact: BTreeMap<(usize, usize), (Vec<ParaMorphism>, Vec<ParaMorphism>)> = pool
        .iter()
        .map(|(&key, fs)| {
            let kept: Vec<ParaMorphism> = fs.iter().filter(|f| in_range(f)).cloned().collect();
            let kept_duals = kept.iter().map(|f| f.cyclic_dual()).collect();
            (key, (kept, kept_duals))
        })
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..=MAX_RANK)
        .flat_map(|n| {
            (0..=MAX_RANK).flat_map(move |m| (0..=MAX_RANK).map(move |k| (n, m, k)))
        })
        .collect();
    let pair_failures: usize = triples
        .par_iter()
        .map(|&(n, m, k)| {
            let (fs, fds) = &exact[&(n, m)];
            let (gs, gds) = &exact[&(m, k)];
            let mut failures = 0;
            for (g, gd) in gs.iter().zip(gds) {
                for (f, fd) in fs.iter().zip(fds) {
                    let composite_dual = g.compose(f).unwrap().cyclic_dual();
                    let dual_composite = fd.compose(gd).unwrap();
                    if composite_dual != dual_composite {
                        failures += 1;
                    }
                }
            }
            failures
        })
        .sum();
    assert_eq!(pair_failures, 0);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 1: involution, contravariance, unit over {total} morphisms in {elapsed:?}"
    );
}

#[test]
fn criterion_2_k_restriction_and_delta_escape() {
    let pool = rank_pool();
    let mut escapes = Vec::new();
    for fs in pool.values() {
        for f in fs {
            let dual = f.cyclic_dual();
            if f.in_k() {
                assert!(dual.in_k(), "duplicial membership lost at {f}");
            }
            if f.in_delta() && !dual.in_delta() {
                escapes.push(f.clone());
            }
        }
    }
    assert!(!escapes.is_empty());
    let witness = ParaMorphism::new(0, 1, vec![1]).unwrap();
    assert!(escapes.contains(&witness), "expected witness not found");
    println!(
        "[PASS] criterion 2: duplicial membership preserved; {} simplicial escapes found",
        escapes.len()
    );
}

#[test]
fn criterion_3_cyclic_quotient() {
    for n in 0..=MAX_RANK {
        let t = ParaMorphism::cycle(n);
        let mut power = t.clone();
        for _ in 0..n {
            power = t.compose(&power).unwrap();
        }
        assert_eq!(power.lambda_canonical(), ParaMorphism::identity(n));
    }
    let classes = |n: usize, m: usize| {
        enumerate(n, m, 2)
            .iter()
            .map(|f| f.lambda_canonical())
            .collect::<std::collections::BTreeSet<_>>()
            .len()
    };
    assert_eq!(classes(0, 0), 1);
    assert_eq!(classes(1, 1), 6);
    println!("[PASS] criterion 3: full turns become identities; class counts 1 and 6");
}

#[test]
fn criterion_4_orbit_category_oracle() {
    let start = Instant::now();
    for (name, expected_pairs) in [("z4-orbit", 9), ("s3-orbit", 36)] {
        let inst = instances::build(name).unwrap();
        let carriers = inst
            .as_orbit_of_group()
            .expect("catalog orbit instances are orbit constructions");
        let objects = inst.preorder.size();
        assert_eq!(objects * objects, expected_pairs);
        let report = inst.check_oracle();
        assert!(report.passed(), "{name}:\n{}", report.render_text());
        // spot totals: every pair was compared, none skipped
        assert!(report
            .records
            .iter()
            .all(|r| r.status == paraorbit::Status::Pass));
        assert_eq!(carriers.len(), objects);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "[PASS] criterion 4: hom sizes match equivariant-map counts on 9 + 36 pairs in {elapsed:?}"
    );
}

#[test]
fn criterion_5_crossed_module_mutations() {
    for group in [FiniteGroup::cyclic(6), FiniteGroup::symmetric(3)] {
        assert!(CrossedModule::conjugation(group).validate().passed());
    }

    let failed_ids = |cm: &CrossedModule| -> Vec<String> {
        let report = cm.validate();
        assert!(
            report.failures().all(|r| !r.witnesses.is_empty()),
            "every rejection must carry a witness"
        );
        report.failures().map(|r| r.id.clone()).collect()
    };

    let s3 = FiniteGroup::symmetric(3);
    let z6 = FiniteGroup::cyclic(6);

    // 1: one action entry of the S3 module: a((1 2 3)) fixes (1 2)
    let good = CrossedModule::conjugation(s3.clone());
    let mut perms = good.action().perms().clone();
    perms[3][2] = 2;
    let broken = CrossedModule::new(
        s3.clone(),
        s3.clone(),
        good.target_map().clone(),
        GroupAction::from_raw(6, perms),
    )
    .unwrap();
    let ids = failed_ids(&broken);
    assert!(ids.contains(&"crossed.peiffer".to_string()));
    assert!(ids.contains(&"crossed.equivariance".to_string()));

    // 2: one target-map entry of the S3 module: t((1 2)) := e
    let mut map = good.target_map().map().to_vec();
    map[2] = 0;
    let broken = CrossedModule::new(
        s3.clone(),
        s3.clone(),
        GroupHom::from_raw(map),
        good.action().clone(),
    )
    .unwrap();
    assert!(failed_ids(&broken).contains(&"crossed.t-homomorphism".to_string()));

    // 3: one action entry of the Z6 module: a(1) moves 2 to 3
    let good = CrossedModule::conjugation(z6.clone());
    let mut perms = good.action().perms().clone();
    perms[1][2] = 3;
    let broken = CrossedModule::new(
        z6.clone(),
        z6.clone(),
        good.target_map().clone(),
        GroupAction::from_raw(6, perms),
    )
    .unwrap();
    let ids = failed_ids(&broken);
    assert!(ids.contains(&"crossed.peiffer".to_string()));
    assert!(ids.contains(&"crossed.equivariance".to_string()));

    // 4: one target-map entry of the Z6 module: t(1) := 2
    let mut map = good.target_map().map().to_vec();
    map[1] = 2;
    let broken = CrossedModule::new(
        z6.clone(),
        z6,
        GroupHom::from_raw(map),
        good.action().clone(),
    )
    .unwrap();
    assert!(failed_ids(&broken).contains(&"crossed.t-homomorphism".to_string()));

    println!("[PASS] criterion 5: conjugation modules pass; 4 single-entry mutations rejected with witnesses");
}

#[test]
fn criterion_6_lemma_suite() {
    let mut checked = 0;
    for entry in instances::catalog() {
        let inst = instances::build(entry.name).unwrap();
        if inst.duality.is_none() {
            continue;
        }
        let report = inst.check_lemmas().unwrap();
        assert!(report.passed(), "{}:\n{}", entry.name, report.render_text());
        checked += 1;
    }
    assert!(checked >= 5);

    let z6 = instances::build("z6-two-normals").unwrap();
    let h = z6.object_index("H").unwrap();
    let hd = z6.duality.as_ref().unwrap().of(h);
    let product = product_set(z6.cm.source(), z6.presheaf.at(h), z6.presheaf.at(hd));
    assert_eq!(product.len(), 6);

    println!("[PASS] criterion 6: normalizer and product lemmas on {checked} instances; |H H°| = 6 on z6-two-normals");
}

#[test]
fn criterion_7_degenerate_cosieves() {
    // pairwise-generating isolated carriers: empty
    let z30 = instances::build("z30-primes").unwrap();
    let induced = cosieve_from_duality(
        z30.cm.source(),
        &z30.preorder,
        &z30.presheaf,
        z30.duality.as_ref().unwrap(),
    );
    assert!(induced.is_empty());

    // identity duality over a proper normal carrier: empty
    let ind = instances::build("s3-indiscrete").unwrap();
    let induced = cosieve_from_duality(
        ind.cm.source(),
        &ind.preorder,
        &ind.presheaf,
        ind.duality.as_ref().unwrap(),
    );
    assert!(induced.is_empty());

    // all carriers equal to the whole group: the cosieve is the order
    let trivial = instances::build("trivial").unwrap();
    let induced = cosieve_from_duality(
        trivial.cm.source(),
        &trivial.preorder,
        &trivial.presheaf,
        trivial.duality.as_ref().unwrap(),
    );
    assert_eq!(induced.matrix(), trivial.preorder.leq_matrix());

    // same phenomenon away from the one-point case
    let z6 = FiniteGroup::cyclic(6);
    let action = GroupAction::trivial(&z6, 2);
    let pre = paraorbit::preorder::EquivariantPreorder::new(
        vec!["a".into(), "b".into()],
        vec![vec![true, true], vec![false, true]],
        action,
    )
    .unwrap();
    let full: Vec<usize> = (0..6).collect();
    let sheaf =
        paraorbit::preorder::SubgroupPresheaf::new(&z6, 2, vec![full.clone(), full]).unwrap();
    let duality = paraorbit::preorder::SelfDuality::identity(2);
    let induced = cosieve_from_duality(&z6, &pre, &sheaf, &duality);
    assert_eq!(induced.matrix(), pre.leq_matrix());

    println!("[PASS] criterion 7: induced cosieve empty on z30-primes and s3-indiscrete, equal to the order when carriers are full");
}

#[test]
fn criterion_8_main_theorem_suite() {
    let start = Instant::now();
    for name in ["s3-collapse", "z6-two-normals"] {
        let inst = instances::build(name).unwrap();
        assert!(inst.validate().passed());
        assert!(
            inst.duality.as_ref().unwrap().strict_involution(),
            "{name} must carry a strict involution"
        );

        // the 2-cell relation is an equivalence and a congruence, the
        // action descends, the tubular condition holds
        inst.ho_table().unwrap();
        assert!(inst.check_congruence().unwrap().passed());
        assert!(inst.check_ho_descent().unwrap().passed());
        assert!(inst.check_tubular().unwrap().passed());

        // lift well-defined per class and member, contravariant, and an
        // exact involution on these strict instances
        let functor = inst.check_duality_functor().unwrap();
        assert!(functor.passed(), "{name}:\n{}", functor.render_text());
        for rec in functor.records {
            assert_ne!(
                rec.status,
                paraorbit::Status::Skipped,
                "{name} must run the full lift suite ({})",
                rec.id
            );
        }
    }

    let collapse = instances::build("s3-collapse").unwrap();
    let pt = collapse.object_index("pt").unwrap();
    assert_eq!(collapse.ho_hom(pt, pt).unwrap().len(), 2);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("[PASS] criterion 8: equivalence, congruence, tubular, well-defined exact involutive duality; 2 classes at (pt, pt); {elapsed:?}");
}

#[test]
fn criterion_9_determinism_and_roundtrip() {
    for entry in instances::catalog() {
        let first = format::emit_instance(&instances::build(entry.name).unwrap());
        let second = format::emit_instance(&instances::build(entry.name).unwrap());
        assert_eq!(first, second, "{} emission is not reproducible", entry.name);
        let parsed = format::parse_instance(&first).unwrap();
        assert_eq!(parsed, instances::build(entry.name).unwrap());
        assert_eq!(format::emit_instance(&parsed), first, "{} re-emission differs", entry.name);
    }

    // repeated CLI runs are byte-identical
    let bin = env!("CARGO_BIN_EXE_paraorbit");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().unwrap();
        (out.status.code(), out.stdout)
    };
    for args in [
        vec!["instances", "list"],
        vec!["para", "enumerate", "--n", "2", "--m", "2", "--window", "1"],
        vec!["instances", "check", "z6-two-normals"],
        vec!["--format", "structured", "instances", "check", "s3-collapse"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "nondeterministic output for {args:?}");
        assert_eq!(first.0, Some(0));
    }

    println!("[PASS] criterion 9: instance files round-trip bit-exactly; repeated CLI runs are byte-identical");
}
