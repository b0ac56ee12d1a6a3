use proptest::prelude::*;

use rsumset::bounds::delta0;
use rsumset::proof::{
    build_nested_tail, containment_check, level_sets, structural_checks, CheckStatus,
};
use rsumset::verifier::{sweep, InstanceFamily, SweepOptions};
use rsumset::{
    canonicalize, dgm_integer_bound, main_bound, multiplicity_profile, pairwise_sumset,
    shift_to_zero, sigma_l, sigma_l_bruteforce, sigma_max, Engine, IntSet, SetSequence,
};

fn int_set(max: usize, len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::btree_set(0..=max, 1..=len).prop_map(|s| s.into_iter().collect())
}

fn zero_set(max: usize, len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::btree_set(1..=max, 0..len).prop_map(|s| std::iter::once(0).chain(s).collect())
}

fn sequence(k: usize, max: usize, len: usize) -> impl Strategy<Value = SetSequence> {
    prop::collection::vec(int_set(max, len), 1..=k).prop_map(|v| SetSequence::new(v).unwrap())
}

fn zero_sequence(k: usize, max: usize, len: usize) -> impl Strategy<Value = SetSequence> {
    prop::collection::vec(zero_set(max, len), 1..=k).prop_map(|v| SetSequence::new(v).unwrap())
}

fn with_level(
    s: impl Strategy<Value = SetSequence>,
) -> impl Strategy<Value = (SetSequence, usize)> {
    s.prop_flat_map(|seq| {
        let k = seq.k();
        (Just(seq), 1..=k)
    })
}

proptest! {
    #[test]
    fn shift_to_zero_keeps_size(s in int_set(300, 20)) {
        let (t, offset) = shift_to_zero(&s).unwrap();
        prop_assert_eq!(t.min(), Some(0));
        prop_assert_eq!(t.len(), s.len());
        prop_assert_eq!(offset, s.min().unwrap());
    }

    #[test]
    fn oracle_equivalence((s, l) in with_level(sequence(5, 40, 6))) {
        prop_assert_eq!(sigma_l(&s, l).unwrap(), sigma_l_bruteforce(&s, l).unwrap());
    }

    #[test]
    fn permutation_invariance((s, l) in with_level(sequence(5, 80, 6)), rot in 0usize..5) {
        let mut sets = s.sets().to_vec();
        let r = rot % sets.len();
        sets.rotate_left(r);
        sets.reverse();
        let p = SetSequence::new(sets).unwrap();
        prop_assert_eq!(sigma_l(&s, l).unwrap(), sigma_l(&p, l).unwrap());
    }

    #[test]
    fn monotone_in_each_set((s, l) in with_level(sequence(4, 60, 5)), extra in 0usize..200, i in 0usize..4) {
        let mut sets = s.sets().to_vec();
        let i = i % sets.len();
        sets[i] = sets[i].union(&IntSet::singleton(extra).unwrap());
        let bigger = SetSequence::new(sets).unwrap();
        prop_assert!(sigma_l(&s, l).unwrap().is_subset(&sigma_l(&bigger, l).unwrap()));
    }

    #[test]
    fn full_sum_is_iterated_sumset(s in sequence(5, 100, 8)) {
        let iterated = s.sets()[1..]
            .iter()
            .fold(s.sets()[0].clone(), |acc, a| pairwise_sumset(&acc, a).unwrap());
        prop_assert_eq!(sigma_l(&s, s.k()).unwrap(), iterated);
    }

    #[test]
    fn first_layer_is_union(s in sequence(6, 200, 8)) {
        prop_assert_eq!(sigma_l(&s, 1).unwrap(), s.union_all());
    }

    #[test]
    fn extremes_with_zero((s, l) in with_level(zero_sequence(5, 150, 6))) {
        let sigma = sigma_l(&s, l).unwrap();
        prop_assert_eq!(sigma.min(), Some(0));
        prop_assert_eq!(sigma.max(), Some(sigma_max(&s, l).unwrap()));
    }

    #[test]
    fn dilation_and_translation((s, l) in with_level(sequence(4, 50, 5)), d in 1usize..6, t in 0usize..40) {
        let base = sigma_l(&s, l).unwrap();
        let cap = rsumset::intset::DEFAULT_CAPACITY;
        let dilated = SetSequence::new(s.sets().iter().map(|a| a.dilate(d, cap).unwrap()).collect()).unwrap();
        prop_assert_eq!(sigma_l(&dilated, l).unwrap(), base.dilate(d, cap).unwrap());
        let moved = SetSequence::new(s.sets().iter().map(|a| a.translate_up(t, cap).unwrap()).collect()).unwrap();
        prop_assert_eq!(sigma_l(&moved, l).unwrap(), base.translate_up(l * t, cap).unwrap());
    }

    #[test]
    fn canonicalize_invariants((s, l) in with_level(sequence(5, 60, 6))) {
        let (c, log) = canonicalize(&s, l).unwrap();
        let sizes: Vec<usize> = log.permutation.iter().map(|&i| s.sets()[i].len()).collect();
        let got: Vec<usize> = c.sets().iter().map(IntSet::len).collect();
        prop_assert_eq!(got, sizes);
        prop_assert!(c.maxima().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(c.all_contain_zero());
        if log.sigma_preserving {
            let orig = sigma_l(&s, l).unwrap();
            let canon = sigma_l(&c, l).unwrap();
            prop_assert_eq!(orig.len(), canon.len());
            let mapped: IntSet = canon.iter().map(|x| log.to_original(x).unwrap()).collect();
            prop_assert_eq!(mapped, orig);
        }
    }

    #[test]
    fn canonicalize_preserves_sigma_under_uniform_shift((s, l) in with_level(zero_sequence(4, 30, 5)), t in 0usize..20, d in 1usize..4) {
        let cap = rsumset::intset::DEFAULT_CAPACITY;
        let moved = SetSequence::new(
            s.sets().iter().map(|a| a.dilate(d, cap).unwrap().translate_up(t, cap).unwrap()).collect(),
        ).unwrap();
        let (c, log) = canonicalize(&moved, l).unwrap();
        prop_assert!(log.sigma_preserving);
        prop_assert_eq!(sigma_l(&c, l).unwrap().len(), sigma_l(&moved, l).unwrap().len());
    }

    #[test]
    fn multiplicity_mass((s, lo, hi) in sequence(6, 50, 6).prop_flat_map(|s| {
        let k = s.k();
        (Just(s), 1..=k).prop_flat_map(move |(s, lo)| (Just(s), Just(lo), lo..=k))
    })) {
        let p = multiplicity_profile(&s, lo, hi).unwrap();
        let mass: usize = s.sets()[lo - 1..hi].iter().map(IntSet::len).sum();
        prop_assert_eq!(p.total(), mass);
        prop_assert!(p.counts.values().all(|&c| c >= 1));
    }

    #[test]
    fn main_bound_sound_when_applicable((s, l) in with_level(zero_sequence(5, 12, 6))) {
        let (c, _) = canonicalize(&s, l).unwrap();
        let r = main_bound(&c, l).unwrap();
        prop_assert_eq!(r.bound, r.term_max.min(r.term_mult));
        if r.applicable {
            prop_assert!(sigma_l(&c, l).unwrap().len() as i64 >= r.bound, "{} l={} {:?}", c, l, r);
        }
    }

    #[test]
    fn dgm_always_sound((s, l) in with_level(sequence(5, 20, 6))) {
        prop_assert!(sigma_l(&s, l).unwrap().len() as i64 >= dgm_integer_bound(&s, l).unwrap());
    }

    #[test]
    fn delta0_dilation_invariant((s, l) in with_level(zero_sequence(4, 20, 5)), d in 1usize..5) {
        let cap = rsumset::intset::DEFAULT_CAPACITY;
        let dilated = SetSequence::new(s.sets().iter().map(|a| a.dilate(d, cap).unwrap()).collect()).unwrap();
        prop_assert_eq!(delta0(&s, l).unwrap(), delta0(&dilated, l).unwrap());
    }

    #[test]
    fn nested_tail_properties((s, l) in with_level(sequence(6, 15, 6))) {
        let t = build_nested_tail(&s, l).unwrap();
        prop_assert!(t.is_nested());
        prop_assert_eq!(t.member(s.k()), &s.union_range(l, s.k()));
        prop_assert!(containment_check(&Engine::default(), &s, l).unwrap());
        let b = level_sets(&s, l).unwrap();
        prop_assert!(b.b.windows(2).all(|w| w[1].is_subset(&w[0])));
    }

    #[test]
    fn structural_checks_always_pass((s, l) in with_level(sequence(5, 10, 5))) {
        let checks = structural_checks(&Engine::default(), &s, l).unwrap();
        prop_assert!(checks.iter().all(|c| c.status == CheckStatus::Pass), "{:?}", checks);
    }
}

#[test]
fn sweep_is_deterministic() {
    let mut family = InstanceFamily::exhaustive(3, 2, 3);
    family.dedup = false;
    let opts = SweepOptions {
        proof_invariants: true,
        ..SweepOptions::default()
    };
    let (r1, s1) = sweep(&family, &opts).unwrap();
    let (r2, s2) = sweep(&family, &opts).unwrap();
    assert_eq!(s1, s2);
    assert_eq!(r1, r2);
    assert_eq!(s1.violations, 0);
    assert_eq!(s1.invariant_failures, 0);
}

#[test]
fn random_sweep_cross_checks_oracle() {
    let family = InstanceFamily::random(4, 2, 20, 7, 300);
    let opts = SweepOptions {
        oracle_check: true,
        proof_invariants: true,
        ..SweepOptions::default()
    };
    let (records, summary) = sweep(&family, &opts).unwrap();
    assert_eq!(summary.violations, 0);
    assert_eq!(summary.invariant_failures, 0);
    assert!(records.iter().all(|r| r.oracle_agrees == Some(true)));
}
