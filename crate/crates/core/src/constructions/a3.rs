//! The relation list for the `n = 3` family built from `δ_i, β_i, θ, γ`,
//! kept in its listed order.

use super::params::A3Params;
use super::{at, Check, Scope, Violation};
use crate::linalg::GroupElement;

type GE = GroupElement;

/// Which variables a relation quantifies over (`x ∈ K`, `y, z ∈ J`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    YZ,
    YX,
}

/// One relation: a list of equalities `lhs = rhs` in the variables.
pub struct A3Relation {
    pub text: &'static str,
    pub quantifier: Quantifier,
    eval: fn(&Ev, &GE, &GE, &GE) -> Vec<(GE, GE)>,
}

impl std::fmt::Debug for A3Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.text)
    }
}

pub(super) struct Ev<'a> {
    s: &'a Scope<'a>,
    p: &'a A3Params,
}

impl Ev<'_> {
    fn d(&self, i: usize, y: &GE) -> GE {
        at(&self.p.delta[i - 1], y)
    }
    fn b(&self, i: usize, y: &GE) -> GE {
        at(&self.p.beta[i - 1], y)
    }
    fn th(&self, y: &GE) -> GE {
        at(&self.p.theta, y)
    }
    fn ga(&self, y: &GE) -> GE {
        at(&self.p.gamma, y)
    }
    fn m(&self, a: &GE, b: &GE) -> GE {
        self.s.mul(a, b)
    }
    fn sum(&self, terms: &[GE]) -> GE {
        self.s.sum(terms)
    }
    fn zero(&self) -> GE {
        self.s.k.zero()
    }
}

impl A3Relation {
    pub(super) fn check(&self, s: &Scope, p: &A3Params) -> Check {
        let ev = Ev { s, p };
        let zero = s.k.zero();
        let fail = |w: Vec<(&str, &GE)>| Violation {
            map: "a3".to_string(),
            relation: self.text.to_string(),
            index: None,
            witnesses: w.into_iter().map(|(n, v)| (n.to_string(), v.clone())).collect(),
        };
        match self.quantifier {
            Quantifier::YZ => {
                for y in &s.j_basis {
                    for z in &s.j_basis {
                        if (self.eval)(&ev, &zero, y, z).iter().any(|(l, r)| l != r) {
                            return Err(fail(vec![("y", y), ("z", z)]));
                        }
                    }
                }
            }
            Quantifier::YX => {
                for y in &s.j_basis {
                    for x in &s.k_basis {
                        if (self.eval)(&ev, x, y, &zero).iter().any(|(l, r)| l != r) {
                            return Err(fail(vec![("y", y), ("x", x)]));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

use Quantifier::{YX, YZ};

/// The 26 displayed relations, numbered from 1 in this order.
pub static A3_RELATIONS: [A3Relation; 26] = [
    A3Relation {
        text: "delta2(yz) = 0",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.d(2, &e.m(y, z)), e.zero())],
    },
    A3Relation {
        text: "beta2(J) in Ann_K J",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.m(&e.b(2, y), z), e.zero()), (e.m(z, &e.b(2, y)), e.zero())],
    },
    A3Relation {
        text: "delta1(yz) = z beta1(y) + y delta1(z) + delta1(z) y",
        quantifier: YZ,
        eval: |e, _, y, z| {
            vec![(
                e.d(1, &e.m(y, z)),
                e.sum(&[e.m(z, &e.b(1, y)), e.m(y, &e.d(1, z)), e.m(&e.d(1, z), y)]),
            )]
        },
    },
    A3Relation {
        text: "y beta3(z) = delta1(yz)",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.m(y, &e.b(3, z)), e.d(1, &e.m(y, z)))],
    },
    A3Relation {
        text: "delta1(yz) = y theta(z)",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.d(1, &e.m(y, z)), e.m(y, &e.th(z)))],
    },
    A3Relation {
        text: "delta2(y) z + z delta2(y) = 0",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.sum(&[e.m(&e.d(2, y), z), e.m(z, &e.d(2, y))]), e.zero())],
    },
    A3Relation {
        text: "z gamma(y) + theta(z) y = 0",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.sum(&[e.m(z, &e.ga(y)), e.m(&e.th(z), y)]), e.zero())],
    },
    A3Relation {
        text: "delta3(yz) = beta1(y) z",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.d(3, &e.m(y, z)), e.m(&e.b(1, y), z))],
    },
    A3Relation {
        text: "delta3(yz) = delta3(y) z + z delta3(y) + beta3(z) y",
        quantifier: YZ,
        eval: |e, _, y, z| {
            vec![(
                e.d(3, &e.m(y, z)),
                e.sum(&[e.m(&e.d(3, y), z), e.m(z, &e.d(3, y)), e.m(&e.b(3, z), y)]),
            )]
        },
    },
    A3Relation {
        text: "gamma(y) z = delta3(yz)",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.m(&e.ga(y), z), e.d(3, &e.m(y, z)))],
    },
    A3Relation {
        text: "z delta1(y) + delta3(y) z = beta1(yz) + beta3(yz)",
        quantifier: YZ,
        eval: |e, _, y, z| {
            let yz = e.m(y, z);
            vec![(
                e.sum(&[e.m(z, &e.d(1, y)), e.m(&e.d(3, y), z)]),
                e.sum(&[e.b(1, &yz), e.b(3, &yz)]),
            )]
        },
    },
    A3Relation {
        text: "gamma(y) x = beta1(yx) + beta2(xy)",
        quantifier: YX,
        eval: |e, x, y, _| vec![(e.m(&e.ga(y), x), e.sum(&[e.b(1, &e.m(y, x)), e.b(2, &e.m(x, y))]))],
    },
    A3Relation {
        text: "beta1(yz + zy) = beta1(y) z + beta1(z) y",
        quantifier: YZ,
        eval: |e, _, y, z| {
            let arg = e.sum(&[e.m(y, z), e.m(z, y)]);
            vec![(e.b(1, &arg), e.sum(&[e.m(&e.b(1, y), z), e.m(&e.b(1, z), y)]))]
        },
    },
    A3Relation {
        text: "z beta1(y) + beta3(z) y = 0",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.sum(&[e.m(z, &e.b(1, y)), e.m(&e.b(3, z), y)]), e.zero())],
    },
    A3Relation {
        text: "x theta(y) = beta2(yx) + beta3(xy)",
        quantifier: YX,
        eval: |e, x, y, _| vec![(e.m(x, &e.th(y)), e.sum(&[e.b(2, &e.m(y, x)), e.b(3, &e.m(x, y))]))],
    },
    A3Relation {
        text: "theta(yz) = y theta(z) + z beta2(y)",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.th(&e.m(y, z)), e.sum(&[e.m(y, &e.th(z)), e.m(z, &e.b(2, y))]))],
    },
    A3Relation {
        text: "theta(y) z + y beta1(z) = 0",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.sum(&[e.m(&e.th(y), z), e.m(y, &e.b(1, z))]), e.zero())],
    },
    A3Relation {
        text: "theta(xy) = x delta1(y) + delta2(y) x",
        quantifier: YX,
        eval: |e, x, y, _| vec![(e.th(&e.m(x, y)), e.sum(&[e.m(x, &e.d(1, y)), e.m(&e.d(2, y), x)]))],
    },
    A3Relation {
        text: "theta(yz) = y beta3(z)",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.th(&e.m(y, z)), e.m(y, &e.b(3, z)))],
    },
    A3Relation {
        text: "z gamma(y) + beta3(z) y = 0",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.sum(&[e.m(z, &e.ga(y)), e.m(&e.b(3, z), y)]), e.zero())],
    },
    A3Relation {
        text: "gamma(yz) = beta1(y) z",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.ga(&e.m(y, z)), e.m(&e.b(1, y), z))],
    },
    A3Relation {
        text: "gamma(yz) = gamma(y) z",
        quantifier: YZ,
        eval: |e, _, y, z| vec![(e.ga(&e.m(y, z)), e.m(&e.ga(y), z))],
    },
    A3Relation {
        text: "delta3(y) x + x delta2(y) = gamma(yx)",
        quantifier: YX,
        eval: |e, x, y, _| vec![(e.sum(&[e.m(&e.d(3, y), x), e.m(x, &e.d(2, y))]), e.ga(&e.m(y, x)))],
    },
    A3Relation {
        text: "z gamma(y) + delta1(z) y + y delta2(z) = 0",
        quantifier: YZ,
        eval: |e, _, y, z| {
            vec![(
                e.sum(&[e.m(z, &e.ga(y)), e.m(&e.d(1, z), y), e.m(y, &e.d(2, z))]),
                e.zero(),
            )]
        },
    },
    A3Relation {
        text: "delta1(y) z + z delta3(y) + delta1(z) y + y delta3(z) = 0",
        quantifier: YZ,
        eval: |e, _, y, z| {
            vec![(
                e.sum(&[
                    e.m(&e.d(1, y), z),
                    e.m(z, &e.d(3, y)),
                    e.m(&e.d(1, z), y),
                    e.m(y, &e.d(3, z)),
                ]),
                e.zero(),
            )]
        },
    },
    A3Relation {
        text: "delta2(y) z + z delta3(y) + theta(z) y = 0",
        quantifier: YZ,
        eval: |e, _, y, z| {
            vec![(
                e.sum(&[e.m(&e.d(2, y), z), e.m(z, &e.d(3, y)), e.m(&e.th(z), y)]),
                e.zero(),
            )]
        },
    },
];
