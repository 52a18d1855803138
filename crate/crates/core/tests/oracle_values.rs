//! Values frozen from an independent computation: monic Askey-Wilson
//! polynomials from their basic hypergeometric representation, re-expanded
//! in the basis `⟨z;t₀⟩_{q,k}`.

use koornwinder::branching::{askey_wilson, branching_coeffs};
use koornwinder::field::rat;
use koornwinder::{FieldElement, ParameterPoint, Partition, Rational};
use num_bigint::BigInt;

fn params() -> ParameterPoint {
    "q=1/3,t=1/2,t0=1/5,t1=2/7,t2=1/4,t3=3/8".parse().unwrap()
}

fn big(n: &str, d: &str) -> Rational {
    Rational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
}

fn coeffs(m: usize) -> Vec<Rational> {
    let c = branching_coeffs(&Partition::new(vec![m]).unwrap(), &Partition::default(), m, &params()).unwrap();
    c.b.iter().map(|x| x.to_rational().unwrap().clone()).collect()
}

#[test]
fn askey_wilson_degree_one_and_two() {
    let p1 = askey_wilson(1, &params()).unwrap();
    assert_eq!(p1.coefficient(&[0]), FieldElement::rational(rat(-1153, 1114)));
    let p2 = askey_wilson(2, &params()).unwrap();
    assert_eq!(p2.coefficient(&[1]), FieldElement::rational(rat(-7282, 5037)));
    assert_eq!(p2.coefficient(&[0]), FieldElement::rational(rat(1736905, 866364)));
    assert_eq!(p2.coefficient(&[-2]), FieldElement::rational(rat(1, 1)));
}

#[test]
fn interpolation_coefficients() {
    assert_eq!(coeffs(2), vec![rat(140980323, 7219700), rat(158002, 8395), rat(1, 1)]);
    assert_eq!(
        coeffs(3),
        vec![
            big("939945842249799", "9839539403000"),
            big("526716494213", "1758107100"),
            rat(6667213, 104670),
            rat(1, 1),
        ]
    );
}
