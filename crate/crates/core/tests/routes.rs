use ginlab_core::pipeline::{
    compute_gin, generic_templates, FieldKind, GinRequest, Route, UGeneric,
};
use ginlab_core::properties::is_lexsegment;
use ginlab_core::series::froeberg_lexsegment;
use ginlab_core::BaseOrder;

fn gin(
    n: usize,
    d: &[u32],
    order: BaseOrder,
    route: Route,
    field: FieldKind,
) -> ginlab_core::GinResult {
    let inst = generic_templates(n, d).unwrap();
    let mut req = GinRequest::new(order, route);
    req.field = field;
    compute_gin(&inst, &req).unwrap()
}

#[test]
fn all_routes_and_fields_agree_on_small_cases() {
    for (n, d) in [(2, vec![2, 2]), (3, vec![2, 2]), (2, vec![2, 3])] {
        for order in [BaseOrder::Lex, BaseOrder::DegRevLex] {
            let reference = gin(n, &d, order, Route::Sampling, FieldKind::Gf32003).ideal;
            for (route, field) in [
                (Route::Sampling, FieldKind::Rational),
                (Route::Parametric, FieldKind::Rational),
                (Route::Parametric, FieldKind::Gf32003),
            ] {
                let r = gin(n, &d, order, route, field);
                assert_eq!(
                    r.ideal, reference,
                    "n={n} d={d:?} {order:?} {route:?} {field:?}"
                );
            }
        }
    }
}

#[test]
fn rational_sampling_flags_u_generic_samples() {
    let r = gin(
        3,
        &[2, 2, 2],
        BaseOrder::Lex,
        Route::Sampling,
        FieldKind::Rational,
    );
    assert_eq!(r.field, "Q");
    assert_eq!(r.agreement, 5);
    assert!(r.u_generic.iter().all(|u| *u == UGeneric::Yes));
    let r = gin(
        2,
        &[2, 2, 2],
        BaseOrder::DegRevLex,
        Route::Sampling,
        FieldKind::Rational,
    );
    assert!(r.u_generic.iter().all(|u| *u == UGeneric::ConjecturalYes));
}

#[test]
fn lex_gin_equals_the_expected_lexsegment_ideal_when_s_le_n() {
    for (n, d) in [(3, vec![2, 3]), (3, vec![2, 2, 3]), (4, vec![2, 2, 2])] {
        let r = gin(n, &d, BaseOrder::Lex, Route::Sampling, FieldKind::Gf32003);
        assert!(is_lexsegment(&r.ideal).holds);
        assert_eq!(r.ideal, froeberg_lexsegment(n, &d).unwrap().ideal);
    }
}
