//! Hopf algebra axioms, checked exhaustively on every basis element of degree
//! at most 5 in two variables, for Sym(V) and T(V).

use hopfpres::hopf::{HopfAlgebra, HopfBasisElement, HopfVector};
use hopfpres::linear::{rat, LinComb, Rational};
use num_traits::{One, Zero};

const MAX_DEGREE: u32 = 5;

type Triple = (HopfBasisElement, HopfBasisElement, HopfBasisElement);

fn algebras() -> [HopfAlgebra; 2] {
    [HopfAlgebra::sym(2), HopfAlgebra::tensor(2)]
}

fn basis_up_to(h: &HopfAlgebra, d: u32) -> Vec<HopfBasisElement> {
    (0..=d).flat_map(|k| h.basis_of_degree(k)).collect()
}

fn antipode_vec(h: &HopfAlgebra, v: &HopfVector) -> HopfVector {
    let mut out = HopfVector::new();
    for (x, c) in v.iter() {
        out.add_scaled(&h.antipode(x).unwrap(), c);
    }
    out
}

fn product_vec(h: &HopfAlgebra, u: &HopfVector, v: &HopfVector) -> HopfVector {
    let mut out = HopfVector::new();
    for (x, a) in u.iter() {
        for (y, b) in v.iter() {
            out.add_term(h.product(x, y).unwrap(), a * b);
        }
    }
    out
}

#[test]
fn unit_and_counit_values() {
    for h in algebras() {
        assert_eq!(h.counit(&h.unit()), Rational::one());
        for x in basis_up_to(&h, MAX_DEGREE).into_iter().filter(|x| x.degree() > 0) {
            assert!(h.counit(&x).is_zero());
            assert_eq!(h.product(&h.unit(), &x).unwrap(), x);
            assert_eq!(h.product(&x, &h.unit()).unwrap(), x);
        }
    }
}

#[test]
fn coassociativity() {
    for h in algebras() {
        for x in basis_up_to(&h, MAX_DEGREE) {
            let d = h.coproduct(&x).unwrap();
            let mut left: LinComb<Triple> = LinComb::new();
            let mut right: LinComb<Triple> = LinComb::new();
            for ((a, b), c) in d.iter() {
                for ((a1, a2), e) in h.coproduct(a).unwrap().iter() {
                    left.add_term((a1.clone(), a2.clone(), b.clone()), c * e);
                }
                for ((b1, b2), e) in h.coproduct(b).unwrap().iter() {
                    right.add_term((a.clone(), b1.clone(), b2.clone()), c * e);
                }
            }
            assert_eq!(left, right, "{h} {x:?}");
        }
    }
}

#[test]
fn counit_law_and_cocommutativity() {
    for h in algebras() {
        for x in basis_up_to(&h, MAX_DEGREE) {
            let d = h.coproduct(&x).unwrap();
            let mut left = HopfVector::new();
            let mut right = HopfVector::new();
            let mut flipped = LinComb::new();
            for ((a, b), c) in d.iter() {
                left.add_term(b.clone(), c * h.counit(a));
                right.add_term(a.clone(), c * h.counit(b));
                flipped.add_term((b.clone(), a.clone()), c.clone());
            }
            assert_eq!(left, HopfVector::basis(x.clone()));
            assert_eq!(right, HopfVector::basis(x.clone()));
            assert_eq!(flipped, d, "{h} {x:?} not cocommutative");
        }
    }
}

#[test]
fn antipode_law() {
    for h in algebras() {
        for x in basis_up_to(&h, MAX_DEGREE) {
            let expected = if x.degree() == 0 {
                HopfVector::basis(h.unit())
            } else {
                HopfVector::new()
            };
            let mut left = HopfVector::new();
            let mut right = HopfVector::new();
            for ((a, b), c) in h.coproduct(&x).unwrap().iter() {
                let sa = h.antipode(a).unwrap();
                let sb = h.antipode(b).unwrap();
                left.add_scaled(&product_vec(&h, &sa, &HopfVector::basis(b.clone())), c);
                right.add_scaled(&product_vec(&h, &HopfVector::basis(a.clone()), &sb), c);
            }
            assert_eq!(left, expected, "{h} {x:?}");
            assert_eq!(right, expected, "{h} {x:?}");
        }
    }
}

#[test]
fn antipode_is_an_involution() {
    for h in algebras() {
        for x in basis_up_to(&h, MAX_DEGREE) {
            let ss = antipode_vec(&h, &h.antipode(&x).unwrap());
            assert_eq!(ss, HopfVector::basis(x));
        }
    }
}

#[test]
fn antipode_reverses_products() {
    for h in algebras() {
        let basis = basis_up_to(&h, MAX_DEGREE);
        for x in &basis {
            for y in basis.iter().filter(|y| x.degree() + y.degree() <= MAX_DEGREE) {
                let xy = h.product(x, y).unwrap();
                let lhs = h.antipode(&xy).unwrap();
                let rhs = product_vec(&h, &h.antipode(y).unwrap(), &h.antipode(x).unwrap());
                assert_eq!(lhs, rhs, "{h} {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn bialgebra_law() {
    for h in algebras() {
        let basis = basis_up_to(&h, MAX_DEGREE);
        for x in &basis {
            for y in basis.iter().filter(|y| x.degree() + y.degree() <= MAX_DEGREE) {
                let lhs = h.coproduct(&h.product(x, y).unwrap()).unwrap();
                let mut rhs = LinComb::new();
                for ((x1, x2), a) in h.coproduct(x).unwrap().iter() {
                    for ((y1, y2), b) in h.coproduct(y).unwrap().iter() {
                        let l = h.product(x1, y1).unwrap();
                        let r = h.product(x2, y2).unwrap();
                        rhs.add_term((l, r), a * b);
                    }
                }
                assert_eq!(lhs, rhs, "{h} {x:?} {y:?}");
            }
        }
    }
}

#[test]
fn generators_are_primitive() {
    for h in algebras() {
        for i in 0..2 {
            let v = h.generator(i);
            let mut expected = LinComb::new();
            expected.add_term((v.clone(), h.unit()), rat(1));
            expected.add_term((h.unit(), v.clone()), rat(1));
            assert_eq!(h.coproduct(&v).unwrap(), expected);
            assert_eq!(h.antipode(&v).unwrap(), HopfVector::term(v, rat(-1)));
        }
    }
}

#[test]
fn descriptor_mismatch_is_reported() {
    let sym = HopfAlgebra::sym(2);
    let word = HopfAlgebra::tensor(2).generator(0);
    assert!(sym.coproduct(&word).is_err());
    assert!(sym.product(&sym.unit(), &word).is_err());
    assert!(HopfAlgebra::tensor(1).antipode(&HopfBasisElement::Word(vec![1])).is_err());
}
