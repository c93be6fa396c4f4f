mod common;

use dfa_decomp::families::{
    example31_partitions, gen_a4b4_triple, gen_example31, gen_grid, gen_k_extension, gen_lkl,
    gen_ln, gen_sb_not_asb, grid_cols, grid_rows,
};
use dfa_decomp::oracle::{brute_is_minimal, brute_sp_partitions};
use dfa_decomp::{
    decompose_asb, decompose_sb, equivalent, from_partitions, is_minimal, isomorphic, minimize,
    separates_finals, sp_lattice, verify, Dfa, DecompositionKind as K,
};

/// Checks `dfa` against a predicate on symbol-name words up to `max_len`.
fn agrees(dfa: &Dfa, max_len: usize, lang: impl Fn(&[&str]) -> bool) {
    for w in common::words(dfa.num_symbols(), max_len) {
        let names = common::names(dfa, &w);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        assert_eq!(
            dfa.accepts_ids(&w),
            lang(&refs),
            "{} on {:?}",
            dfa.name(),
            refs
        );
    }
}

fn count(w: &[&str], c: &str) -> usize {
    w.iter().filter(|&&x| x == c).count()
}

/// `a^i b^j` with the given test on `(i, j)`.
fn ab_shape(w: &[&str], ok: impl Fn(usize, usize) -> bool) -> bool {
    let i = w.iter().take_while(|&&x| x == "a").count();
    w[i..].iter().all(|&x| x == "b") && ok(i, w.len() - i)
}

#[test]
fn ln_language_and_minimality() {
    for n in 1..=6 {
        let d = gen_ln(n).unwrap();
        assert_eq!(d.num_states(), n);
        agrees(&d, 9, |w| w.len() + 1 >= n);
        assert!(brute_is_minimal(&d));
        assert!(isomorphic(&minimize(&d).0, &d));
    }
    assert!(gen_ln(0).is_err());
}

#[test]
fn lkl_language() {
    let d = gen_lkl(3, 5).unwrap();
    assert_eq!(d.num_states(), 15);
    agrees(&d, 9, |w| count(w, "a") % 3 == 0 && count(w, "b") % 5 == 0);
    assert!(brute_is_minimal(&d));
    assert!(gen_lkl(1, 3).is_err());
}

#[test]
fn grid_follows_the_saturating_clauses() {
    for r in 2..=4 {
        for s in 2..=4 {
            let g = gen_grid(r, s).unwrap();
            assert_eq!(g.num_states(), r * s);
            agrees(&g, 8, |w| count(w, "a") + 1 >= r && count(w, "b") + 1 >= s);
            assert!(brute_is_minimal(&g), "grid {r}x{s}");
            assert!(is_minimal(&g));
        }
    }
    let g = gen_grid(2, 2).unwrap();
    let q = g.run(&["a", "b"]).unwrap();
    assert_eq!(g.state_name(q), "q1_1");
    assert!(g.is_accepting(q));
    assert!(gen_grid(1, 2).is_err());
}

#[test]
fn grid_lattice_shape() {
    let g = gen_grid(2, 2).unwrap();
    let lattice = sp_lattice(&g);
    assert_eq!(lattice.elements().to_vec(), brute_sp_partitions(&g).unwrap());
    assert!(lattice.contains(&grid_rows(2, 2)));
    assert!(lattice.contains(&grid_cols(2, 2)));
    assert!(grid_rows(2, 2).meet(&grid_cols(2, 2)).unwrap().is_zero());
}

#[test]
fn k_extension_simulates_the_original() {
    let base = gen_grid(2, 2).unwrap();
    for k in 1..=3 {
        let ext = gen_k_extension(&base, k, None).unwrap();
        assert_eq!(ext.num_states(), 4 + k);
        assert_eq!(ext.alphabet(), ["a", "b", "c"]);
        assert!(is_minimal(&ext));
        let c = ext.symbol_index("c").unwrap();
        for w in common::words(3, 6) {
            let mut prefixed = vec![c; k];
            prefixed.extend(&w);
            let h: Vec<usize> = w.iter().copied().filter(|&x| x != c).collect();
            assert_eq!(ext.accepts_ids(&prefixed), base.accepts_ids(&h), "{w:?}");
        }
    }
    assert!(gen_k_extension(&base, 0, None).is_err());
    assert!(gen_k_extension(&base, 1, Some("a")).is_err());
    let ext = gen_k_extension(&base, 2, Some("z")).unwrap();
    assert_eq!(ext.alphabet(), ["a", "b", "z"]);
}

#[test]
fn grid_and_extension_decomposition_counts() {
    for r in 2..=3 {
        for s in 2..=3 {
            let g = gen_grid(r, s).unwrap();
            assert_eq!(decompose_sb(&g).nonredundant().sizes(), vec![(r, s).min((s, r))]);
            assert_eq!(decompose_asb(&g).nonredundant().sizes(), vec![(r, s).min((s, r))]);
            for k in 1..=2 {
                let ext = gen_k_extension(&g, k, None).unwrap();
                assert!(is_minimal(&ext));
                assert_eq!(ext.num_states(), k + r * s);
                let want = vec![(k + r.min(s), k + r.max(s))];
                assert_eq!(decompose_sb(&ext).nonredundant().sizes(), want, "r={r} s={s} k={k}");
                assert_eq!(decompose_asb(&ext).nonredundant().sizes(), want, "r={r} s={s} k={k}");
            }
        }
    }
}

#[test]
fn example31_automata() {
    let (min, prime) = gen_example31();
    assert_eq!((min.num_states(), prime.num_states()), (5, 6));
    // F = {a0, b0}: an even number of a's followed by an even number of b's
    let even = |w: &[&str]| ab_shape(w, |i, j| i % 2 == 0 && j % 2 == 0);
    agrees(&min, 10, even);
    agrees(&prime, 10, even);
    assert!(equivalent(&min, &prime).unwrap());
    assert!(is_minimal(&min));
    assert!(!is_minimal(&prime));
    assert!(isomorphic(&minimize(&prime).0, &min));
    assert!(min.accepts_str("aabb").unwrap());
    assert!(!min.accepts_str("ab").unwrap());

    // with F = {b0} alone the language is the l ≥ 1 variant
    let b0 = min.state_index("b0").unwrap();
    agrees(&min.with_accepting([b0]).unwrap(), 10, |w| {
        ab_shape(w, |i, j| i % 2 == 0 && j % 2 == 0 && j >= 2)
    });
}

#[test]
fn example31_decompositions() {
    let (min, prime) = gen_example31();
    assert!(decompose_sb(&min).is_empty());
    let (p1, p2) = example31_partitions();
    assert_eq!((p1.num_blocks(), p2.num_blocks()), (4, 2));
    assert!(p1.meet(&p2).unwrap().is_zero());
    assert!(separates_finals(&p1, &p2, prime.accepting_mask()).unwrap().is_some());
    let d = from_partitions(K::Asb, &prime, &p1, &p2).unwrap().unwrap();
    assert_eq!(d.sizes(), (4, 2));
    assert!(d.a1.num_states() < min.num_states() && d.a2.num_states() < min.num_states());
    assert!(verify(K::Asb, &prime, &d.a1, &d.a2).unwrap().is_verified());
    // the listed pair appears in the enumeration (smaller factor first)
    let report = decompose_asb(&prime);
    assert!(report.entries.iter().any(|e| {
        e.decomposition.source_partitions == Some((p2.clone(), p1.clone()))
    }));
}

#[test]
fn a4b4_triple() {
    let (a, a1, a2) = gen_a4b4_triple();
    // regression sizes of the minimal automata
    assert_eq!((a.num_states(), a1.num_states(), a2.num_states()), (9, 6, 4));
    for d in [&a, &a1, &a2] {
        assert!(brute_is_minimal(d), "{}", d.name());
    }
    agrees(&a, 12, |w| ab_shape(w, |i, j| i % 4 == 0 && j % 4 == 0 && j >= 4));
    agrees(&a1, 12, |w| ab_shape(w, |i, j| i % 4 == 0 && j >= 1));
    agrees(&a2, 12, |w| count(w, "b") % 4 == 0);
    assert!(decompose_sb(&a).is_empty());
    assert!(verify(K::Ai, &a, &a1, &a2).unwrap().is_verified());
    assert!(verify(K::Si, &a, &a1, &a2).unwrap().is_verified());
    assert!(!verify(K::Sb, &a, &a1, &a2).unwrap().is_verified());
}

#[test]
fn sb_but_not_asb() {
    let d = gen_sb_not_asb();
    assert_eq!(d.num_states(), 15);
    agrees(&d, 8, |w| {
        let (x, y) = (count(w, "a") % 3, count(w, "b") % 5);
        (x, y) == (0, 0) || (x, y) == (2, 4)
    });
    assert!(d.accepts_str("aabbbb").unwrap());
    assert!(!decompose_sb(&d).is_empty());
    assert!(decompose_asb(&d).is_empty());
}

#[test]
fn lkl_perfect_asb() {
    let d = gen_lkl(3, 5).unwrap();
    let report = decompose_asb(&d);
    let e = report
        .entries
        .iter()
        .find(|e| e.perfect && e.decomposition.sizes() == (3, 5))
        .expect("perfect (3,5) entry");
    assert!(verify(K::Asb, &d, &e.decomposition.a1, &e.decomposition.a2)
        .unwrap()
        .is_verified());
    for k in 2..=4 {
        for l in 2..=4 {
            let d = gen_lkl(k, l).unwrap();
            assert!(decompose_asb(&d).perfect_only().sizes().contains(&(k.min(l), k.max(l))));
        }
    }
}

#[test]
fn a4b4_si_needs_the_minimal_automaton() {
    let (a, a1, a2) = gen_a4b4_triple();
    // copy the state reached on "b" and send the initial b-edge to the copy
    let b = a.symbol_index("b").unwrap();
    let target = a.next(a.initial(), b);
    let n = a.num_states();
    let mut table = a.table();
    table.push(table[target].clone());
    table[a.initial()][b] = n;
    let mut states = a.states().to_vec();
    states.push(format!("{}_copy", a.state_name(target)));
    let mut accepting = a.accepting_states();
    if a.is_accepting(target) {
        accepting.push(n);
    }
    let split = Dfa::new("a4b4_split", states, a.alphabet().to_vec(), table, a.initial(), accepting)
        .unwrap();
    assert!(equivalent(&split, &a).unwrap());
    assert!(!is_minimal(&split));
    // "b" and "aaaab" reach the same factor pair but different copies
    match verify(K::Si, &split, &a1, &a2).unwrap() {
        dfa_decomp::Verdict::Refuted(dfa_decomp::Refutation::StateConflict { .. }) => {}
        other => panic!("{other:?}"),
    }
    assert!(verify(K::Ai, &split, &a1, &a2).unwrap().is_verified());
    let (min, _) = minimize(&split);
    assert_eq!(min.num_states(), 9);
    assert!(verify(K::Si, &min, &a1, &a2).unwrap().is_verified());
}
