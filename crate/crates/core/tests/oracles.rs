//! Independent checks of the rank-based computations: exact polynomial
//! interpolation for the potential, and exhaustive enumeration over tiny
//! prime fields for tangent dimensions and point counts.

use num_rational::BigRational;
use quotlab_core::enumerate::{
    count_first_order_lifts, count_quot_points, n_one_orbit_formula, CountParams, DEFAULT_BUDGET,
};
use quotlab_core::potential::{hessian, potential_gradient, potential_value};
use quotlab_core::sample::{random_rep, random_stable_commuting, random_vector};
use quotlab_core::tangent::{relation_jacobian, tangent_dim};
use quotlab_core::{etale_point, punctual_point, Field, FramedRep, Matrix, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;

fn rational(s: &Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational scalar")
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Coefficients of the cubic through `(t, y_t)` for `t = 0, 1, 2, 3`, by
/// Newton forward differences.
fn cubic_through(y: [BigRational; 4]) -> [BigRational; 4] {
    let d1 = [&y[1] - &y[0], &y[2] - &y[1], &y[3] - &y[2]];
    let d2 = [&d1[1] - &d1[0], &d1[2] - &d1[1]];
    let d3 = &d2[1] - &d2[0];
    // p(t) = y0 + d1₀ t + d2₀ t(t−1)/2 + d3 t(t−1)(t−2)/6
    let c3 = &d3 / int(6);
    let c2 = &d2[0] / int(2) - &d3 / int(2);
    let c1 = &d1[0] - &d2[0] / int(2) + &d3 / int(3);
    [y[0].clone(), c1, c2, c3]
}

fn shifted(rep: &FramedRep, direction: &[Scalar], t: i64) -> FramedRep {
    let ts = Scalar::from_i64(Q, t);
    let coords: Vec<Scalar> = rep
        .coordinates()
        .iter()
        .zip(direction)
        .map(|(x, d)| x + &(&ts * d))
        .collect();
    FramedRep::from_coordinates(Q, rep.m(), rep.n(), rep.r(), &coords).unwrap()
}

#[test]
fn taylor_expansion_of_the_potential_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    for trial in 0..40 {
        let n = 1 + trial % 3;
        let rep = random_rep(Q, 3, n, 2, &mut rng).unwrap();
        let xi = random_vector(Q, rep.rep_space_dim(), &mut rng);
        let values =
            [0, 1, 2, 3].map(|t| rational(&potential_value(&shifted(&rep, &xi, t)).unwrap()));
        let [c0, c1, c2, c3] = cubic_through(values);

        let grad = potential_gradient(&rep).unwrap();
        let pairing = grad
            .iter()
            .zip(&xi)
            .fold(int(0), |acc, (g, x)| acc + rational(g) * rational(x));
        let h = hessian(&rep).unwrap();
        let hxi = h.mul_vec(&xi).unwrap();
        let quadratic = hxi
            .iter()
            .zip(&xi)
            .fold(int(0), |acc, (a, b)| acc + rational(a) * rational(b));
        let direction = FramedRep::from_coordinates(Q, 3, n, 2, &xi).unwrap();

        assert_eq!(c0, rational(&potential_value(&rep).unwrap()));
        assert_eq!(c1, pairing, "first-order term, trial {trial}");
        assert_eq!(int(2) * c2, quadratic, "second-order term, trial {trial}");
        assert_eq!(c3, rational(&potential_value(&direction).unwrap()));
    }
}

#[test]
fn jacobian_kernel_matches_brute_force_over_f2() {
    // |ker d₂| counted by visiting every vector of 𝔽₂^{mn²+rn}.
    let f2 = Field::Prime(2);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let rep = random_rep(f2, 2, 2, 1, &mut rng).unwrap();
        let d2 = relation_jacobian(&rep);
        let dim = rep.rep_space_dim();
        let mut kernel = 0u32;
        for bits in 0u32..(1 << dim) {
            let x: Vec<Scalar> = (0..dim)
                .map(|k| Scalar::from_u64(f2, u64::from(bits >> k & 1)))
                .collect();
            if d2.mul_vec(&x).unwrap().iter().all(Scalar::is_zero) {
                kernel += 1;
            }
        }
        assert_eq!(kernel, 1 << (dim - d2.rank()));
    }
}

fn tiny_suite(field: Field) -> Vec<FramedRep> {
    let s = |v: i64| Scalar::from_i64(field, v);
    let shift = Matrix::elementary(field, 2, 1, 0);
    let mut suite = vec![
        punctual_point(field, 2, 1).unwrap(),
        punctual_point(field, 2, 2).unwrap(),
        etale_point(field, 2, 1, &[vec![s(0), s(0)], vec![s(1), s(0)]], &[0, 0]).unwrap(),
        etale_point(field, 2, 2, &[vec![s(0), s(1)], vec![s(1), s(1)]], &[0, 1]).unwrap(),
        etale_point(field, 2, 2, &[vec![s(0), s(0)], vec![s(0), s(1)]], &[1, 1]).unwrap(),
        FramedRep::new(
            field,
            2,
            vec![shift.clone(), Matrix::zeros(field, 2, 2)],
            vec![vec![s(1), s(0)]],
        )
        .unwrap(),
        FramedRep::new(
            field,
            2,
            vec![shift.clone(), shift.clone()],
            vec![vec![s(1), s(0)], vec![s(0), s(0)]],
        )
        .unwrap(),
        FramedRep::new(
            field,
            2,
            vec![Matrix::zeros(field, 2, 2), shift],
            vec![vec![s(1), s(0)], vec![s(1), s(1)]],
        )
        .unwrap(),
    ];
    for r in 1..=2 {
        suite.push(
            FramedRep::new(
                field,
                1,
                vec![Matrix::identity(field, 1), Matrix::zeros(field, 1, 1)],
                vec![vec![s(1)]; r],
            )
            .unwrap(),
        );
    }
    suite
}

#[test]
fn first_order_lifts_match_tangent_dimension() {
    for field in [Field::Prime(2), Field::Prime(3)] {
        let q = u128::from(field.order().unwrap() as u32);
        for rep in tiny_suite(field) {
            if field == Field::Prime(3) && rep.rep_space_dim() > 10 {
                continue;
            }
            assert!(rep.is_stable() && rep.is_commuting());
            let lifts = count_first_order_lifts(&rep, DEFAULT_BUDGET).unwrap();
            assert_eq!(lifts.stabilizer, 1);
            assert_eq!(
                lifts.classes,
                q.pow(tangent_dim(&rep).unwrap() as u32),
                "{rep:?}"
            );
        }
    }
}

#[test]
fn first_order_lifts_at_random_points_over_f3() {
    let f3 = Field::Prime(3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        let rep = random_stable_commuting(f3, 2, 2, 1, &mut rng).unwrap();
        let lifts = count_first_order_lifts(&rep, DEFAULT_BUDGET).unwrap();
        assert_eq!(lifts.classes, 3u128.pow(tangent_dim(&rep).unwrap() as u32));
    }
}

#[test]
fn hilbert_scheme_of_two_points_in_the_plane() {
    // Hilb²(𝔸²) has q⁴ + q³ points over 𝔽_q: pairs of rational points,
    // conjugate pairs over 𝔽_{q²}, and a point with a tangent direction.
    for q in [2u32, 3] {
        let c = count_quot_points(&CountParams::new(2, 2, 1, q).unwrap(), DEFAULT_BUDGET).unwrap();
        let q = u128::from(q);
        assert_eq!(c.orbit_count, q.pow(4) + q.pow(3));
    }
}

/// Points of Quot_{𝔸²}(𝒪², 2) over 𝔽_q, stratified by support:
/// two rational points (a line in k² at each), a conjugate pair (a line over
/// 𝔽_{q²}), or one point carrying either k_p² (one quotient) or a cyclic
/// length-two module (q+1 ideals, q(q+1) surjections up to automorphism).
fn quot_rank_two_length_two(q: u128) -> u128 {
    let distinct = q * q * (q * q - 1) / 2 * (q + 1) * (q + 1);
    let conjugate = (q.pow(4) - q * q) / 2 * (q * q + 1);
    let punctual = q * q * (1 + q * (q + 1) * (q + 1));
    distinct + conjugate + punctual
}

#[test]
fn rank_two_quot_scheme_of_length_two_over_f2() {
    let c = count_quot_points(&CountParams::new(2, 2, 2, 2).unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(c.gauge_group_order, 6);
    assert_eq!(c.stable_commuting_points % 6, 0);
    assert_eq!(c.orbit_count, quot_rank_two_length_two(2));
    assert_eq!(c.orbit_count, 160);
}

#[test]
fn n_one_counts() {
    for m in 1..=3 {
        for r in 1..=2 {
            for q in [2u32, 3] {
                let c = count_quot_points(&CountParams::new(m, 1, r, q).unwrap(), DEFAULT_BUDGET)
                    .unwrap();
                assert_eq!(c.orbit_count, n_one_orbit_formula(m, r, u64::from(q)));
            }
        }
    }
    let c = count_quot_points(&CountParams::new(2, 1, 2, 2).unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(c.orbit_count, 12);
}
