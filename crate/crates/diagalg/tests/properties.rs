//! Property tests over randomly chosen basis diagrams and parameters.

use std::sync::OnceLock;

use diagalg::diagram::{enumerate_basis, AlgebraType, Diagram};
use diagalg::forms::{FormBasis, IrrepSystem};
use diagalg::scalar::{parse_rational, set_precision_bits, Exact, Real, Scalar};
use diagalg::sov::TransversalTable;
use diagalg::Rational;
use proptest::prelude::*;

const TYPES: [AlgebraType; 5] = [
    AlgebraType { family: diagalg::diagram::Family::Partition, n: 2, wall: None },
    AlgebraType { family: diagalg::diagram::Family::Partition, n: 3, wall: None },
    AlgebraType { family: diagalg::diagram::Family::Brauer, n: 4, wall: None },
    AlgebraType { family: diagalg::diagram::Family::Walled, n: 3, wall: Some((1, 2)) },
    AlgebraType { family: diagalg::diagram::Family::Symmetric, n: 4, wall: None },
];

fn bases() -> &'static Vec<Vec<Diagram>> {
    static B: OnceLock<Vec<Vec<Diagram>>> = OnceLock::new();
    B.get_or_init(|| TYPES.iter().map(|&t| enumerate_basis(t, usize::MAX).unwrap()).collect())
}

/// A family index and three diagram indices into its basis.
fn triple() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0..TYPES.len()).prop_flat_map(|k| {
        let n = bases()[k].len();
        (Just(k), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative((k, a, b, c) in triple()) {
        let [x, y, z] = [a, b, c].map(|i| &bases()[k][i]);
        let xy = x.compose(y).unwrap();
        let left = xy.diagram.compose(z).unwrap();
        let yz = y.compose(z).unwrap();
        let right = x.compose(&yz.diagram).unwrap();
        prop_assert_eq!(&left.diagram, &right.diagram);
        prop_assert_eq!(xy.removed + left.removed, yz.removed + right.removed);
    }

    #[test]
    fn involution_reverses_products((k, a, b, _c) in triple()) {
        let (x, y) = (&bases()[k][a], &bases()[k][b]);
        prop_assert_eq!(&x.involution().involution(), x);
        let xy = x.compose(y).unwrap();
        let yx = y.involution().compose(&x.involution()).unwrap();
        prop_assert_eq!(xy.diagram.involution(), yx.diagram);
        prop_assert_eq!(xy.removed, yx.removed);
    }

    #[test]
    fn composition_stays_in_family((k, a, b, _c) in triple()) {
        let p = bases()[k][a].compose(&bases()[k][b]).unwrap().diagram;
        prop_assert!(p.check_family().is_ok());
        prop_assert!(p.propagating_number() <= bases()[k][a].propagating_number().min(bases()[k][b].propagating_number()));
    }

    #[test]
    fn factorization_round_trips((k, a, _b, _c) in triple()) {
        let ty = TYPES[k];
        let table = TransversalTable::new(ty).unwrap();
        let d = &bases()[k][a];
        let f = table.last_possible_factorization(d).unwrap();
        let (back, removed) = table.recompose(f.transversal, &f.sub).unwrap();
        prop_assert_eq!(&back, d);
        prop_assert_eq!(removed, f.d_power);
    }

    #[test]
    fn irreps_are_homomorphisms(a in 0usize..15, b in 0usize..15, d in 5i64..200) {
        set_precision_bits(256);
        let ty = AlgebraType::partition(2);
        let basis = &bases()[0];
        let sys = IrrepSystem::<Real>::build(ty, &Rational::from(d), FormBasis::Orthogonal).unwrap();
        let prod = basis[a].compose(&basis[b]).unwrap();
        let scale = Real::from_i64(d).powi(prod.removed as i32);
        for k in 0..sys.forms().len() {
            let lhs = sys.of_diagram(k, &basis[a]).unwrap().mul(&sys.of_diagram(k, &basis[b]).unwrap());
            let rhs = sys.of_diagram(k, &prod.diagram).unwrap().scale(&scale);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-50);
            let t = sys.of_diagram(k, &basis[a].involution()).unwrap();
            prop_assert!(t.max_abs_diff(&sys.of_diagram(k, &basis[a]).unwrap().transpose()) < 1e-50);
        }
    }

    #[test]
    fn seminormal_exact_homomorphism(a in 0usize..15, b in 0usize..15, num in 28i64..500, den in 1i64..9) {
        let d = Rational::from((num, den));
        let ty = AlgebraType::partition(2);
        let basis = &bases()[0];
        let sys = IrrepSystem::<Exact>::build(ty, &d, FormBasis::Seminormal).unwrap();
        let prod = basis[a].compose(&basis[b]).unwrap();
        let scale = Exact(d.clone()).powi(prod.removed as i32);
        for k in 0..sys.forms().len() {
            let lhs = sys.of_diagram(k, &basis[a]).unwrap().mul(&sys.of_diagram(k, &basis[b]).unwrap());
            let rhs = sys.of_diagram(k, &prod.diagram).unwrap().scale(&scale);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rationals_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let q = Rational::from((num, den));
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q.clone());
        prop_assert_eq!(Exact(q.clone()).to_report_string(), q.to_string());
    }
}
