use basepoints::baselocus::get_basepoints;
use basepoints::parse::parse_tower;
use basepoints::{Basis, Field, FieldElement, NSClass, Poly, Tower};
use basepoints_cli::format::{
    class_from_json, class_to_json, series_from_json, series_to_json, to_json_text, tree_from_json,
    tree_to_json, ClassJson, SeriesJson, TreeJson,
};
use proptest::prelude::*;

fn vars() -> [String; 2] {
    ["x".to_string(), "y".to_string()]
}

fn tower(k: usize) -> Tower {
    match k {
        0 => Tower::rational(),
        1 => parse_tower([("i", "t^2 + 1")]).unwrap(),
        _ => parse_tower([("i", "t^2 + 1"), ("r", "t^3 - i - 2")]).unwrap(),
    }
}

fn elem(tower: &Tower, (n, d, g): (i64, i64, i64)) -> FieldElement {
    let q = FieldElement::from_i64(n) / FieldElement::from_i64(d);
    match tower.len() {
        0 => q,
        k => q + FieldElement::from_i64(g) * tower.generator(k - 1).pow(k as u32),
    }
}

fn poly(tower: &Tower, ts: &[(u32, u32, (i64, i64, i64))]) -> Poly {
    ts.iter().fold(Poly::zero(), |acc, &(a, b, c)| {
        &acc + &Poly::monomial(elem(tower, c), a, b)
    })
}

fn reencode<T: serde::Serialize + serde::de::DeserializeOwned>(text: &str) -> T {
    serde_json::from_str(text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn series_json_is_stable(
        k in 0usize..3,
        series in prop::collection::vec(
            prop::collection::vec((0u32..4, 0u32..4, (-9i64..=9, 1i64..=4, -3i64..=3)), 0..5),
            1..4,
        ),
    ) {
        let t = tower(k);
        let polys: Vec<Poly> = series.iter().map(|ts| poly(&t, ts)).collect();
        let text = to_json_text(&series_to_json(&polys, &t, &vars()));
        let (back, t2) = series_from_json(&reencode::<SeriesJson>(&text)).unwrap();
        prop_assert_eq!(&back, &polys);
        prop_assert_eq!(&t2, &t);
        prop_assert_eq!(to_json_text(&series_to_json(&back, &t2, &vars())), text);
    }

    #[test]
    fn class_json_is_stable(type2 in any::<bool>(), coeffs in prop::collection::vec(-20i64..=20, 2..10)) {
        let basis = if type2 { Basis::Type2(coeffs.len() - 2) } else { Basis::Type1(coeffs.len() - 1) };
        let c = NSClass::new(basis, coeffs).unwrap();
        let text = to_json_text(&class_to_json(&c));
        let back = class_from_json(&reencode::<ClassJson>(&text)).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(to_json_text(&class_to_json(&back)), text);
    }
}

#[test]
fn tree_json_is_stable() {
    let cases: &[&[&str]] = &[
        &["u^2 + v^2", "v^2 + u"],
        &["u^2", "u*v", "u", "v^2", "v"],
        &["u^2 - 2", "v^3 - u"],
        &["v^2 - u^3", "u*v^2"],
    ];
    for series in cases {
        let t = Tower::rational();
        let polys: Vec<Poly> = series
            .iter()
            .map(|s| basepoints::parse::parse_bipoly(s, ["u", "v"], &t).unwrap())
            .collect();
        let tree = get_basepoints(&polys, &t).unwrap();
        let vars = ["u".to_string(), "v".to_string()];
        let text = to_json_text(&tree_to_json(&tree, &vars));
        let back = tree_from_json(&reencode::<TreeJson>(&text)).unwrap();
        assert_eq!(back, tree, "{series:?}");
        assert_eq!(to_json_text(&tree_to_json(&back, &vars)), text);
    }
}
