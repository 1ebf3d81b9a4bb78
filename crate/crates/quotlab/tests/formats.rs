use quotlab::formats::{read_reps, AdhmJson, MatrixJson, RepJson};
use quotlab_core::adhm::AdhmDatum;
use quotlab_core::sample::{random_adhm_stable, random_rep};
use quotlab_core::{Error, Field, FramedRep, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn matrix_json_shape() {
    let m = Matrix::from_i64_rows(Field::Rationals, &[&[1, -2], &[0, 3]]).unwrap();
    let json = serde_json::to_string(&MatrixJson::from(&m)).unwrap();
    assert_eq!(
        json,
        r#"{"rows":2,"cols":2,"field":"Q","entries":["1","-2","0","3"]}"#
    );
    let back: MatrixJson = serde_json::from_str(&json).unwrap();
    assert_eq!(Matrix::try_from(&back).unwrap(), m);
}

#[test]
fn reps_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for field in [Field::Rationals, Field::Prime(7)] {
        for (m, n, r) in [(1, 0, 1), (2, 2, 1), (3, 3, 2)] {
            let rep = random_rep(field, m, n, r, &mut rng).unwrap();
            let text = serde_json::to_string(&RepJson::from(&rep)).unwrap();
            let parsed: RepJson = serde_json::from_str(&text).unwrap();
            assert_eq!(FramedRep::try_from(&parsed).unwrap(), rep);
            assert_eq!(
                read_reps(&format!("{text}\n\n{text}\n")).unwrap(),
                vec![rep.clone(), rep]
            );
        }
    }
}

#[test]
fn rational_entries_are_exact_strings() {
    let text = r#"{"m":1,"n":1,"r":1,"field":"Q","A":[{"rows":1,"cols":1,"field":"Q","entries":["-7/3"]}],"V":[["2/4"]]}"#;
    let rep = FramedRep::try_from(&serde_json::from_str::<RepJson>(text).unwrap()).unwrap();
    let again = serde_json::to_string(&RepJson::from(&rep)).unwrap();
    assert!(again.contains(r#""-7/3""#) && again.contains(r#""1/2""#));
}

#[test]
fn adhm_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for field in [Field::Rationals, Field::Prime(5)] {
        let d = random_adhm_stable(field, 2, 2, &mut rng).unwrap();
        let text = serde_json::to_string(&AdhmJson::from(&d)).unwrap();
        for key in ["\"B1\"", "\"B2\"", "\"i\"", "\"j\""] {
            assert!(text.contains(key));
        }
        let parsed: AdhmJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AdhmDatum::try_from(&parsed).unwrap(), d);
    }
}

#[test]
fn malformed_input_is_rejected() {
    let mixed = r#"{"m":1,"n":1,"r":1,"field":"Fp:5","A":[{"rows":1,"cols":1,"field":"Q","entries":["1"]}],"V":[["1"]]}"#;
    let err = FramedRep::try_from(&serde_json::from_str::<RepJson>(mixed).unwrap()).unwrap_err();
    assert!(matches!(err, Error::FieldMismatch { .. }));

    let residue = r#"{"m":1,"n":1,"r":1,"field":"Fp:5","A":[{"rows":1,"cols":1,"field":"Fp:5","entries":["7"]}],"V":[["1"]]}"#;
    assert!(FramedRep::try_from(&serde_json::from_str::<RepJson>(residue).unwrap()).is_err());

    let count = r#"{"m":2,"n":1,"r":1,"field":"Q","A":[{"rows":1,"cols":1,"field":"Q","entries":["1"]}],"V":[["1"]]}"#;
    let err = FramedRep::try_from(&serde_json::from_str::<RepJson>(count).unwrap()).unwrap_err();
    assert!(matches!(err, Error::ShapeMismatch(_)));

    assert!(read_reps("{not json").is_err());
}
