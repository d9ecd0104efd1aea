use std::sync::{Arc, OnceLock};

use monogen_core::composite::{CompositeElement, CompositeField};
use monogen_core::exact::resultant::discriminant;
use monogen_core::index_form::index_form_value;
use monogen_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn example() -> Arc<NumberField> {
    static F: OnceLock<Arc<NumberField>> = OnceLock::new();
    F.get_or_init(|| Arc::new(NumberField::with_power_basis(IntPoly::from_i64s(&[1, -1, -4, 0, 1]), None).unwrap()))
        .clone()
}

fn quartic(a: u64) -> Arc<NumberField> {
    static F: OnceLock<Vec<Arc<NumberField>>> = OnceLock::new();
    let fields = F.get_or_init(|| [1u64, 2, 4, 5].iter().map(|&a| Arc::new(make_simplest_quartic(a).unwrap())).collect());
    fields[[1u64, 2, 4, 5].iter().position(|&b| b == a).unwrap()].clone()
}

fn composites() -> &'static [CompositeField] {
    static K: OnceLock<Vec<CompositeField>> = OnceLock::new();
    K.get_or_init(|| {
        vec![
            CompositeField::new(example(), ImagQuadField::new(1).unwrap()).unwrap(),
            CompositeField::new(example(), ImagQuadField::new(3).unwrap()).unwrap(),
            CompositeField::new(quartic(1), ImagQuadField::new(2).unwrap()).unwrap(),
            CompositeField::new(quartic(2), ImagQuadField::new(7).unwrap()).unwrap(),
            CompositeField::new(quartic(5), ImagQuadField::new(1).unwrap()).unwrap(),
        ]
    })
}

fn coords(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, len)
}

#[test]
fn example_composite_values() {
    let k = &composites()[0];
    let alpha = CompositeElement::from_tail(&[0, 0, 0], &[0, 1, 0, 0]);
    assert!(k.composite_index(&alpha).unwrap().is_one());
    let xi = CompositeElement::from_tail(&[1, 0, 0], &[0, 0, 0, 0]);
    assert!(k.factor_eq1(&xi).unwrap().is_one());
    assert!(k.factor_eq2(&xi).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factor_product_identity(which in 0usize..5, x in coords(4), y in coords(4)) {
        let k = &composites()[which];
        let alpha = CompositeElement::new(x, y);
        let fac = k.factors(&alpha).unwrap();
        prop_assert_eq!(k.composite_index(&alpha).unwrap(), fac.product_abs());
        let form = k.real_field().index_form().unwrap();
        prop_assert_eq!(form.eval_quad(k.quadratic(), alpha.x_tail(), alpha.y_tail()), fac.relative_form);
    }

    #[test]
    fn translation_invariance(which in 0usize..5, x in coords(4), y in coords(4), m in -20i64..=20) {
        let k = &composites()[which];
        let alpha = CompositeElement::new(x.clone(), y.clone());
        let mut shifted = x;
        shifted[0] += m;
        let beta = CompositeElement::new(shifted, y);
        prop_assert_eq!(k.factors(&alpha).unwrap(), k.factors(&beta).unwrap());
        prop_assert_eq!(k.composite_index(&alpha).unwrap(), k.composite_index(&beta).unwrap());
    }

    #[test]
    fn relative_form_at_real_points(x in coords(3)) {
        let l = example();
        let k = &composites()[0];
        let alpha = CompositeElement::from_tail(&x, &[0, 0, 0, 0]);
        let rel = k.relative_index_form(&alpha).unwrap();
        prop_assert!(rel.b.is_zero());
        prop_assert_eq!(rel.a, index_form_value(&l, &x, 8192).unwrap());
        prop_assert_eq!(k.factor_eq1(&alpha).unwrap(), l.element_index(&x).unwrap().pow(2));
    }

    #[test]
    fn discriminant_is_index_squared_times_dl(a in prop::sample::select(vec![1u64, 2, 4, 5]), x in coords(3)) {
        let l = quartic(a);
        let idx = l.element_index(&x).unwrap();
        prop_assert_eq!(l.element_discriminant(&x).unwrap().magnitude().clone(), (&idx * &idx * l.discriminant()).magnitude().clone());
    }

    #[test]
    fn homogeneity(a in prop::sample::select(vec![1u64, 2, 4, 5]), x in coords(3), lambda in 0i64..=4) {
        let l = quartic(a);
        let scaled: Vec<i64> = x.iter().map(|c| c * lambda).collect();
        prop_assert_eq!(l.element_index(&scaled).unwrap(), BigInt::from(lambda).pow(6) * l.element_index(&x).unwrap());
    }

    #[test]
    fn translation_of_field_elements(x in coords(3), m in -30i64..=30) {
        let l = example();
        let e = l.element_from_tail(&x);
        let mut shifted = e.clone();
        shifted.coords[0] += BigRational::from_integer(m.into());
        let d1 = discriminant(&l.char_poly(&e).unwrap()).unwrap();
        let d2 = discriminant(&l.char_poly(&shifted).unwrap()).unwrap();
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn norm_is_multiplicative(x in coords(4), y in coords(4)) {
        let l = quartic(2);
        let a = FieldElement::from_ints(&x);
        let b = FieldElement::from_ints(&y);
        let prod = l.mul(&a, &b);
        prop_assert!(prod.is_integral());
        prop_assert_eq!(l.norm(&prod).unwrap(), l.norm(&a).unwrap() * l.norm(&b).unwrap());
    }
}
