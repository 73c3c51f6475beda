use knotcalc_core::linalg::torsion_orders;
use knotcalc_core::presentation::{ParseOptions, Presentation};
use num_bigint::BigInt;
use proptest::prelude::*;

fn presentation_text() -> impl Strategy<Value = String> {
    (1usize..=4).prop_flat_map(|gens| {
        let letter = (0..gens, any::<bool>()).prop_map(|(g, inv)| {
            let c = (b'a' + g as u8) as char;
            if inv {
                c.to_ascii_uppercase()
            } else {
                c
            }
        });
        let relator = prop::collection::vec(letter, 1..12).prop_map(|ls| ls.into_iter().collect::<String>());
        prop::collection::vec(relator, 0..4).prop_map(move |rs| {
            let names: Vec<String> = (0..gens).map(|g| ((b'a' + g as u8) as char).to_string()).collect();
            format!("<{} | {}>", names.join(","), rs.join(", "))
        })
    })
}

proptest! {
    #[test]
    fn triangularization_keeps_length_and_homology(text in presentation_text()) {
        let p = Presentation::parse(&text).unwrap();
        let t = p.triangularize();
        prop_assert_eq!(t.length(), p.length());
        prop_assert!(t.relators().iter().all(|w| (2..=3).contains(&w.len())));
        prop_assert_eq!(
            torsion_orders(&p.abelianization_matrix::<BigInt>()),
            torsion_orders(&t.abelianization_matrix::<BigInt>())
        );
    }

    #[test]
    fn display_round_trips(text in presentation_text()) {
        let p = Presentation::parse(&text).unwrap();
        prop_assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p.clone());
        let t = p.triangularize().into_presentation();
        let back = Presentation::parse_with(&t.to_string(), ParseOptions { allow_reserved: true }).unwrap();
        prop_assert_eq!(back, t);
    }
}

#[test]
fn trefoil_and_figure_eight() {
    assert_eq!(Presentation::parse("<a,b | abaBAB>").unwrap().length(), 4);
    assert_eq!(Presentation::parse("<x, y | x y x^-1 y x y^-1 x^-1 y^-1>").unwrap().length(), 6);
}

#[test]
fn errors_carry_positions() {
    let e = Presentation::parse("<a,b | abc>").unwrap_err().to_string();
    assert!(e.contains("byte"), "{e}");
    assert!(Presentation::parse("<a,b | ab").is_err());
    assert!(Presentation::parse("<_t0 | _t0_t0>").is_err());
}
