use proptest::prelude::*;

use liekernel::exterior::KForm;
use liekernel::gradings::families::{family_member, Family};
use liekernel::gradings::tables::{entries, violated, Table, TableEntry};
use liekernel::gradings::{find_positive_grading, grading_extension, validate_grading};
use liekernel::liealg::LieAlgebra;
use liekernel::linalg::Subspace;
use liekernel::notation::{parse, print_algebra, ParamAlgebra};
use liekernel::scalars::{rat, Bindings, Rational};
use liekernel::verify::{run_section, Section, VerifyOptions};

type Q = Rational;

fn small_rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn bound(e: &TableEntry, values: &[Q]) -> Option<LieAlgebra<Q>> {
    let b = Bindings::from_pairs(e.params().into_iter().zip(values.iter().cloned()));
    matches!(violated(&e.constraints, &b), Ok(None)).then(|| e.algebra().bind(&b).unwrap())
}

fn solvable_entry() -> impl Strategy<Value = (TableEntry, Vec<Q>)> {
    let all: Vec<TableEntry> = entries(Table::T2).into_iter().chain(entries(Table::T3)).collect();
    (proptest::sample::select(all), proptest::collection::vec(small_rational(), 3))
}

/// The same algebra with basis vector `i` renamed `perm[i]`.
fn relabel(g: &LieAlgebra<Q>, perm: &[usize]) -> LieAlgebra<Q> {
    let n = g.dim();
    let mut diff = vec![KForm::zero(n, 2); n];
    for k in 0..n {
        for (idx, c) in g.diff(k).sorted_terms() {
            let term = KForm::monomial(n, &[perm[idx[0]], perm[idx[1]]], c).unwrap();
            diff[perm[k]] = diff[perm[k]].add(&term).unwrap();
        }
    }
    LieAlgebra::new(diff).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn print_then_parse_is_identity((e, v) in solvable_entry()) {
        let Some(g) = bound(&e, &v) else { return Ok(()) };
        let text = print_algebra(&g);
        prop_assert_eq!(parse(&text).unwrap().bind(&Bindings::new()).unwrap(), g);
        let p = e.algebra().normalized();
        prop_assert_eq!(parse(&p.to_string()).unwrap().normalized(), p.clone());
        prop_assert_eq!(ParamAlgebra::from_algebra(&parse(&text).unwrap().bind(&Bindings::new()).unwrap()).to_string(), text);
    }

    #[test]
    fn solvable_tables_have_trivial_low_cohomology((e, v) in solvable_entry()) {
        let Some(g) = bound(&e, &v) else { return Ok(()) };
        let b = g.betti_numbers();
        prop_assert_eq!(&b[..4], &[1, 1, 0, 0]);
        let chi: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(chi, 0);
        for k in 0..g.dim() - 1 {
            prop_assert!(g.ce_differential(k + 1).mul(&g.ce_differential(k)).unwrap().is_zero());
        }
    }

    #[test]
    fn gradings_survive_relabelling(e in proptest::sample::select(entries(Table::T1)), seed in any::<u64>()) {
        let k = e.algebra().bind(&Bindings::new()).unwrap();
        let n = k.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let k = relabel(&k, &perm);
        let w = find_positive_grading(&k).unwrap().expect("nilpotent with a positive grading");
        prop_assert!(validate_grading(&k, w.weights()).unwrap());
        let g = grading_extension(&k, w.weights()).unwrap();
        let tail: Vec<Vec<Q>> = (1..=n).map(|i| g.unit(i)).collect();
        prop_assert!(g.is_solvable());
        prop_assert_eq!(g.derived_algebra(), Subspace::span(n + 1, tail.clone()));
        prop_assert_eq!(g.subalgebra(&tail).unwrap(), k);
        prop_assert_eq!((g.betti(2), g.betti(3)), (0, 0));
    }

    #[test]
    fn families_are_trivial(f in proptest::sample::select(Family::ALL.to_vec()), n in 4usize..=8, k in 1usize..4, v in proptest::collection::vec(small_rational(), 8)) {
        let Ok(m) = family_member(f, n, f.uses_k().then_some(k)) else { return Ok(()) };
        let b = Bindings::from_pairs(m.params.iter().cloned().zip(v));
        if !m.admissible(&b).unwrap() {
            return Ok(());
        }
        prop_assert!(m.bind(&b).unwrap().is_23_trivial());
    }
}

#[test]
fn verification_is_deterministic() {
    let opts = VerifyOptions::default();
    let once = || {
        [Section::Tables, Section::Families]
            .map(|s| serde_json::to_value(&run_section(s, &opts).checks).unwrap())
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    assert_eq!(once(), pool.install(once));
}
