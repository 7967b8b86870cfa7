//! Catalog of quadratic algebras with inner-faithful U-actions, and a
//! verification pipeline certifying each instance.
//!
//! Every family fixes the U-module `V` on the generators:
//! - `M(2,i)` on `x1, x2` (two generators),
//! - `M(3,i)` on `x1, x2, x3`,
//! - `M(2,i) ⊕ S_j` on `x1, x2, y`.
//!
//! Parameters range over `F_{p^k}`, so an instance is certified individually.
//! Side conditions on parameters are kept as named predicates, checked at
//! instantiation and reported again by [`verify`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::action::{self, make_action, ActionError, UAction};
use crate::gf::{Field, FieldElem, GfError, Matrix};
use crate::quadalg::{frobenius_check, QuadAlgebra, QuadError, RelationTerms};
use crate::umod::{self, UModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {id} is not defined for p = {p}")]
    BadCharacteristic { id: String, p: u32 },
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("family {id} has no parameter {name:?}")]
    UnknownParam { id: String, name: String },
    #[error("bad value for parameter {name}: {reason}")]
    BadParam { name: String, reason: String },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `M(2,i)` on `x1, x2`.
    M2,
    /// `M(3,i)` on `x1, x2, x3`.
    M3,
    /// `M(2,i) ⊕ S_j` on `x1, x2, y`.
    M2PlusS,
}

impl Shape {
    pub fn generator_names(self) -> &'static [&'static str] {
        match self {
            Shape::M2 => &["x1", "x2"],
            Shape::M3 => &["x1", "x2", "x3"],
            Shape::M2PlusS => &["x1", "x2", "y"],
        }
    }

    pub fn n_gens(self) -> usize {
        self.generator_names().len()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Element of `Z_p`.
    Weight,
    /// Any field element.
    Scalar,
    /// Nonzero field element.
    Unit,
    /// 0 or 1.
    Bit,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AllowedP {
    Any,
    AtLeast(u32),
    Only(u32),
}

impl AllowedP {
    pub fn allows(self, p: u32) -> bool {
        match self {
            AllowedP::Any => true,
            AllowedP::AtLeast(m) => p >= m,
            AllowedP::Only(q) => p == q,
        }
    }

    pub fn smallest(self) -> u32 {
        match self {
            AllowedP::Any => 2,
            AllowedP::AtLeast(m) => m,
            AllowedP::Only(q) => q,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamSlot {
    pub name: &'static str,
    pub domain: Domain,
}

/// Parameter values of one instance. Weights and bits are stored in the prime
/// subfield.
#[derive(Clone, Debug)]
pub struct Params {
    pub field: Field,
    pub values: BTreeMap<&'static str, FieldElem>,
}

impl Params {
    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn get(&self, name: &str) -> FieldElem {
        *self.values.get(name).unwrap_or_else(|| panic!("parameter {name} is declared"))
    }

    /// Weight parameter as an integer in `[0, p)`.
    pub fn weight(&self, name: &str) -> u32 {
        self.field.to_prime(self.get(name)).expect("weights lie in the prime field")
    }

    pub fn is_zero(&self, name: &str) -> bool {
        self.get(name).is_zero()
    }

    fn int(&self, n: i64) -> FieldElem {
        self.field.from_int(n)
    }

    /// Display form `name=value` in slot order.
    pub fn display(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, &v)| (k.to_string(), self.field.format(v))).collect()
    }
}

pub type Predicate = fn(&Params) -> bool;
pub type Template = fn(&Params) -> Vec<RelationTerms>;
/// Sample parameter assignments at a given p.
pub type Samples = fn(u32) -> Vec<Vec<(&'static str, i64)>>;

pub struct Constraint {
    pub text: &'static str,
    pub check: Predicate,
}

pub struct FamilySpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub allowed_p: AllowedP,
    pub shape: Shape,
    pub params: Vec<ParamSlot>,
    pub constraints: Vec<Constraint>,
    pub relations: Template,
    /// In-constraint sample parameters at a given p (integers, read in the prime field).
    pub samples: Samples,
}

impl FamilySpec {
    /// Smallest characteristic where the family is defined; `M(3,i)` needs p >= 3.
    pub fn smallest_p(&self) -> u32 {
        let floor = if self.shape == Shape::M3 { 3 } else { 2 };
        let mut p = self.allowed_p.smallest().max(floor);
        while !self.allows_p(p) {
            p += 1;
        }
        p
    }

    pub fn allows_p(&self, p: u32) -> bool {
        self.allowed_p.allows(p) && (self.shape != Shape::M3 || p >= 3)
    }
}

impl fmt::Debug for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilySpec").field("id", &self.id).field("allowed_p", &self.allowed_p).finish()
    }
}

fn slot(name: &'static str, domain: Domain) -> ParamSlot {
    ParamSlot { name, domain }
}

// term helper: (coefficient, left generator, right generator)
fn t(c: FieldElem, i: usize, j: usize) -> (FieldElem, usize, usize) {
    (c, i, j)
}

const X1: usize = 0;
const X2: usize = 1;
const X3: usize = 2;
const Y: usize = 2;

fn commutative(n: usize) -> Template {
    match n {
        2 => |p: &Params| vec![vec![t(p.int(1), X2, X1), t(p.int(-1), X1, X2)]],
        _ => |p: &Params| {
            let one = p.int(1);
            let m1 = p.int(-1);
            vec![
                vec![t(one, X2, X1), t(m1, X1, X2)],
                vec![t(one, X3, X1), t(m1, X1, X3)],
                vec![t(one, X3, X2), t(m1, X2, X3)],
            ]
        },
    }
}

fn w(p: &Params, n: i64) -> FieldElem {
    p.int(n)
}

fn weight_diff(p: &Params, a: i64, b: i64) -> FieldElem {
    let i = p.weight("i") as i64;
    let j = p.weight("j") as i64;
    w(p, a * i + b * j)
}

fn sample_ij(p: u32, di: u32) -> (i64, i64) {
    (0, (di % p) as i64)
}

/// The full catalog.
pub fn list_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec {
            id: "gl2",
            summary: "commutative k[x1,x2], V = M(2,i)",
            allowed_p: AllowedP::Any,
            shape: Shape::M2,
            params: vec![slot("i", Domain::Weight)],
            constraints: vec![],
            relations: commutative(2),
            samples: |_| vec![vec![("i", 0)]],
        },
        FamilySpec {
            id: "t05-1a",
            summary: "commutative k[x1,x2,x3], V = M(3,i)",
            allowed_p: AllowedP::AtLeast(3),
            shape: Shape::M3,
            params: vec![slot("i", Domain::Weight)],
            constraints: vec![],
            relations: commutative(3),
            samples: |_| vec![vec![("i", 0)]],
        },
        FamilySpec {
            id: "t05-1b",
            summary: "commutative k[x1,x2,y], V = M(2,i) + S_j",
            allowed_p: AllowedP::Any,
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight)],
            constraints: vec![],
            relations: commutative(3),
            samples: |_| vec![vec![("i", 0), ("j", 0)]],
        },
        FamilySpec {
            id: "t05-2",
            summary: "x2x1 - x1x2 + x3^2, x3x1 - x1x3, x3x2 - x2x3; V = M(3,i)",
            allowed_p: AllowedP::Only(3),
            shape: Shape::M3,
            params: vec![slot("i", Domain::Weight)],
            constraints: vec![],
            relations: |p| {
                let (one, m1) = (p.int(1), p.int(-1));
                vec![
                    vec![t(one, X2, X1), t(m1, X1, X2), t(one, X3, X3)],
                    vec![t(one, X3, X1), t(m1, X1, X3)],
                    vec![t(one, X3, X2), t(m1, X2, X3)],
                ]
            },
            samples: |_| vec![vec![("i", 0)]],
        },
        FamilySpec {
            id: "t05-3",
            summary: "x1x2 + x1y - yx1, x2x1 - x1x2, x2^2 + x2y - yx2; j = i+1",
            allowed_p: AllowedP::Any,
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight)],
            constraints: vec![Constraint { text: "j = i+1", check: |p| weight_diff(p, -1, 1) == p.int(1) }],
            relations: |p| {
                let (one, m1) = (p.int(1), p.int(-1));
                vec![
                    vec![t(one, X1, X2), t(one, X1, Y), t(m1, Y, X1)],
                    vec![t(one, X2, X1), t(m1, X1, X2)],
                    vec![t(one, X2, X2), t(one, X2, Y), t(m1, Y, X2)],
                ]
            },
            samples: |p| {
                let (i, j) = sample_ij(p, 1);
                vec![vec![("i", i), ("j", j)]]
            },
        },
        FamilySpec {
            id: "t05-3-alt",
            summary: "x1x2 + x1y - yx1, x2x1 + x1y - yx1, x2^2 + x2y - yx2; j = i+1",
            allowed_p: AllowedP::Any,
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight)],
            constraints: vec![Constraint { text: "j = i+1", check: |p| weight_diff(p, -1, 1) == p.int(1) }],
            relations: |p| {
                let (one, m1) = (p.int(1), p.int(-1));
                vec![
                    vec![t(one, X1, X2), t(one, X1, Y), t(m1, Y, X1)],
                    vec![t(one, X2, X1), t(one, X1, Y), t(m1, Y, X1)],
                    vec![t(one, X2, X2), t(one, X2, Y), t(m1, Y, X2)],
                ]
            },
            samples: |p| {
                let (i, j) = sample_ij(p, 1);
                vec![vec![("i", i), ("j", j)]]
            },
        },
        FamilySpec {
            id: "t05-4",
            summary: "yx1 + a x1y, yx2 + a x2y, x2x1 - x1x2; (i-j)(2i+1-2j) != 0, a != 0",
            allowed_p: AllowedP::Any,
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight), slot("a", Domain::Unit)],
            constraints: vec![Constraint {
                text: "(i-j)(2i+1-2j) != 0",
                check: |p| {
                    let f = &p.field;
                    !f.mul(weight_diff(p, 1, -1), f.add(weight_diff(p, 2, -2), p.int(1))).is_zero()
                },
            }],
            relations: |p| {
                let (one, m1, a) = (p.int(1), p.int(-1), p.get("a"));
                vec![
                    vec![t(one, Y, X1), t(a, X1, Y)],
                    vec![t(one, Y, X2), t(a, X2, Y)],
                    vec![t(one, X2, X1), t(m1, X1, X2)],
                ]
            },
            samples: |p| {
                // j = i+1 gives (i-j)(2i+1-2j) = (-1)(-1) = 1
                let (i, j) = sample_ij(p, 1);
                vec![vec![("i", i), ("j", j), ("a", 1)]]
            },
        },
        FamilySpec {
            id: "t05-5",
            summary: "yx1 + a x1y, yx2 + a x2y, x2x1 - x1x2 + eps y^2; 2i+1-2j = 0, a != 0, eps(a^2-1) = 0",
            allowed_p: AllowedP::AtLeast(3),
            shape: Shape::M2PlusS,
            params: vec![
                slot("i", Domain::Weight),
                slot("j", Domain::Weight),
                slot("a", Domain::Unit),
                slot("eps", Domain::Bit),
            ],
            constraints: vec![
                Constraint { text: "2i+1-2j = 0", check: |p| p.field.add(weight_diff(p, 2, -2), p.int(1)).is_zero() },
                Constraint {
                    text: "eps(a^2-1) = 0",
                    check: |p| {
                        let f = &p.field;
                        let a = p.get("a");
                        f.mul(p.get("eps"), f.sub(f.mul(a, a), p.int(1))).is_zero()
                    },
                },
            ],
            relations: |p| {
                let (one, m1, a) = (p.int(1), p.int(-1), p.get("a"));
                vec![
                    vec![t(one, Y, X1), t(a, X1, Y)],
                    vec![t(one, Y, X2), t(a, X2, Y)],
                    vec![t(one, X2, X1), t(m1, X1, X2), t(p.get("eps"), Y, Y)],
                ]
            },
            samples: |p| {
                // 2j = 2i + 1, so j = i + (p+1)/2
                let (i, j) = sample_ij(p, p.div_ceil(2));
                vec![vec![("i", i), ("j", j), ("a", 1), ("eps", 0)], vec![("i", i), ("j", j), ("a", 1), ("eps", 1)]]
            },
        },
        FamilySpec {
            id: "t05-6",
            summary: "yx1 + a x1y + b y^2, yx2 + a x2y, x2x1 - x1x2 + eps x2y; i = j, a != 0, (a+1)(b-eps) = 0",
            allowed_p: AllowedP::Any,
            shape: Shape::M2PlusS,
            params: vec![
                slot("i", Domain::Weight),
                slot("j", Domain::Weight),
                slot("a", Domain::Unit),
                slot("b", Domain::Scalar),
                slot("eps", Domain::Bit),
            ],
            constraints: vec![
                Constraint { text: "i = j", check: |p| p.weight("i") == p.weight("j") },
                Constraint {
                    text: "(a+1)(b-eps) = 0",
                    check: |p| {
                        let f = &p.field;
                        f.mul(f.add(p.get("a"), p.int(1)), f.sub(p.get("b"), p.get("eps"))).is_zero()
                    },
                },
            ],
            relations: |p| {
                let (one, m1, a) = (p.int(1), p.int(-1), p.get("a"));
                vec![
                    vec![t(one, Y, X1), t(a, X1, Y), t(p.get("b"), Y, Y)],
                    vec![t(one, Y, X2), t(a, X2, Y)],
                    vec![t(one, X2, X1), t(m1, X1, X2), t(p.get("eps"), X2, Y)],
                ]
            },
            samples: |p| {
                if p == 2 {
                    // a + 1 = 0, so b is free
                    vec![
                        vec![("i", 0), ("j", 0), ("a", 1), ("b", 0), ("eps", 0)],
                        vec![("i", 0), ("j", 0), ("a", 1), ("b", 0), ("eps", 1)],
                    ]
                } else {
                    vec![
                        vec![("i", 0), ("j", 0), ("a", 1), ("b", 0), ("eps", 0)],
                        vec![("i", 0), ("j", 0), ("a", 1), ("b", 1), ("eps", 1)],
                    ]
                }
            },
        },
        FamilySpec {
            id: "t05-7",
            summary: "yx2 - x2y, x1x2 - x2x1 + c x2y + b y^2, x2^2 + yx1 - x1y + d y^2; j = i+2",
            allowed_p: AllowedP::Any,
            shape: Shape::M2PlusS,
            params: vec![
                slot("i", Domain::Weight),
                slot("j", Domain::Weight),
                slot("b", Domain::Scalar),
                slot("c", Domain::Scalar),
                slot("d", Domain::Scalar),
            ],
            constraints: vec![
                Constraint { text: "j = i+2", check: |p| weight_diff(p, -1, 1) == p.int(2) },
                Constraint {
                    text: "c != 0 or d != 0 only if p = 2",
                    check: |p| p.p() == 2 || (p.is_zero("c") && p.is_zero("d")),
                },
                Constraint { text: "b != 0 only if p = 3", check: |p| p.p() == 3 || p.is_zero("b") },
            ],
            relations: |p| {
                let (one, m1) = (p.int(1), p.int(-1));
                vec![
                    vec![t(one, Y, X2), t(m1, X2, Y)],
                    vec![t(one, X1, X2), t(m1, X2, X1), t(p.get("c"), X2, Y), t(p.get("b"), Y, Y)],
                    vec![t(one, X2, X2), t(one, Y, X1), t(m1, X1, Y), t(p.get("d"), Y, Y)],
                ]
            },
            samples: |p| {
                let (i, j) = sample_ij(p, 2);
                if p == 2 {
                    [(0, 0), (1, 0), (0, 1), (1, 1)]
                        .iter()
                        .map(|&(c, d)| vec![("i", i), ("j", j), ("b", 0), ("c", c), ("d", d)])
                        .collect()
                } else if p == 3 {
                    vec![
                        vec![("i", i), ("j", j), ("b", 0), ("c", 0), ("d", 0)],
                        vec![("i", i), ("j", j), ("b", 1), ("c", 0), ("d", 0)],
                    ]
                } else {
                    vec![vec![("i", i), ("j", j), ("b", 0), ("c", 0), ("d", 0)]]
                }
            },
        },
        FamilySpec {
            id: "t05-8",
            summary: "yx2 + x2y, x1^2 + y^2 + e x2^2, x1x2 + x2x1; p = 2, i = j",
            allowed_p: AllowedP::Only(2),
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight), slot("e", Domain::Scalar)],
            constraints: vec![Constraint { text: "i = j", check: |p| p.weight("i") == p.weight("j") }],
            relations: |p| {
                let one = p.int(1);
                vec![
                    vec![t(one, Y, X2), t(one, X2, Y)],
                    vec![t(one, X1, X1), t(one, Y, Y), t(p.get("e"), X2, X2)],
                    vec![t(one, X1, X2), t(one, X2, X1)],
                ]
            },
            samples: |_| vec![vec![("i", 0), ("j", 0), ("e", 0)], vec![("i", 0), ("j", 0), ("e", 1)]],
        },
        FamilySpec {
            id: "t05-9",
            summary:
                "yx2 + x2y + b y^2, x1^2 + c x2y + y^2 + e x2^2, x1x2 + x2x1; p = 2, i != j, (b,c) in {(0,1),(1,0)}",
            allowed_p: AllowedP::Only(2),
            shape: Shape::M2PlusS,
            params: vec![
                slot("i", Domain::Weight),
                slot("j", Domain::Weight),
                slot("b", Domain::Scalar),
                slot("c", Domain::Scalar),
                slot("e", Domain::Scalar),
            ],
            constraints: vec![
                Constraint { text: "i != j", check: |p| p.weight("i") != p.weight("j") },
                Constraint {
                    text: "(b,c) = (0,1) or (1,0)",
                    check: |p| {
                        let (b, c) = (p.get("b"), p.get("c"));
                        let (zero, one) = (p.int(0), p.int(1));
                        (b, c) == (zero, one) || (b, c) == (one, zero)
                    },
                },
            ],
            relations: |p| {
                let one = p.int(1);
                vec![
                    vec![t(one, Y, X2), t(one, X2, Y), t(p.get("b"), Y, Y)],
                    vec![t(one, X1, X1), t(p.get("c"), X2, Y), t(one, Y, Y), t(p.get("e"), X2, X2)],
                    vec![t(one, X1, X2), t(one, X2, X1)],
                ]
            },
            samples: |_| {
                vec![
                    vec![("i", 0), ("j", 1), ("b", 0), ("c", 1), ("e", 0)],
                    vec![("i", 0), ("j", 1), ("b", 1), ("c", 0), ("e", 0)],
                ]
            },
        },
        FamilySpec {
            id: "t05-10a",
            summary: "x1^2 + c(x2y + yx2) + y^2, x1x2 + x2x1, x2^2 + x2y + yx2; p = 2, i != j",
            allowed_p: AllowedP::Only(2),
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight), slot("c", Domain::Scalar)],
            constraints: vec![Constraint { text: "i != j", check: |p| p.weight("i") != p.weight("j") }],
            relations: |p| {
                let (one, c) = (p.int(1), p.get("c"));
                vec![
                    vec![t(one, X1, X1), t(c, X2, Y), t(c, Y, X2), t(one, Y, Y)],
                    vec![t(one, X1, X2), t(one, X2, X1)],
                    vec![t(one, X2, X2), t(one, X2, Y), t(one, Y, X2)],
                ]
            },
            samples: |_| vec![vec![("i", 0), ("j", 1), ("c", 0)], vec![("i", 0), ("j", 1), ("c", 1)]],
        },
        FamilySpec {
            id: "t05-10b",
            summary: "x1^2 + x2y + yx2 + e y^2, x1x2 + x2x1, x2^2 + y^2; p = 2, i != j",
            allowed_p: AllowedP::Only(2),
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight), slot("e", Domain::Scalar)],
            constraints: vec![Constraint { text: "i != j", check: |p| p.weight("i") != p.weight("j") }],
            relations: |p| {
                let one = p.int(1);
                vec![
                    vec![t(one, X1, X1), t(one, X2, Y), t(one, Y, X2), t(p.get("e"), Y, Y)],
                    vec![t(one, X1, X2), t(one, X2, X1)],
                    vec![t(one, X2, X2), t(one, Y, Y)],
                ]
            },
            samples: |_| vec![vec![("i", 0), ("j", 1), ("e", 0)], vec![("i", 0), ("j", 1), ("e", 1)]],
        },
    ]
}

/// Ids of the catalog proper, without aliases.
pub const CATALOG_IDS: [&str; 13] = [
    "gl2", "t05-1a", "t05-1b", "t05-2", "t05-3", "t05-4", "t05-5", "t05-6", "t05-7", "t05-8", "t05-9", "t05-10a",
    "t05-10b",
];

/// Candidate algebras that look plausible from the module structure of `R` but
/// are not AS regular. Each is a pseudo-family for [`verify`].
pub fn negative_controls() -> Vec<FamilySpec> {
    vec![
        FamilySpec {
            id: "neg-cubic",
            summary: "x3x2 - x2x3 + x1^2, x2x1 + x1x2, x3x1 + x1x3 - x2^2; V = M(3,i), forces x2^3 = 0",
            allowed_p: AllowedP::Only(3),
            shape: Shape::M3,
            params: vec![slot("i", Domain::Weight)],
            constraints: vec![],
            relations: |p| {
                let (one, m1) = (p.int(1), p.int(-1));
                vec![
                    vec![t(one, X3, X2), t(m1, X2, X3), t(one, X1, X1)],
                    vec![t(one, X2, X1), t(one, X1, X2)],
                    vec![t(one, X3, X1), t(one, X1, X3), t(m1, X2, X2)],
                ]
            },
            samples: |_| vec![vec![("i", 0)]],
        },
        FamilySpec {
            id: "neg-dual-line",
            summary: "x1^2 + x2x3 + x3x2, x1x2 + x2x1 + 2x3^2, -x1x3 + x2^2 - x3x1; V = M(3,i), dual maps onto k[t]",
            allowed_p: AllowedP::Only(3),
            shape: Shape::M3,
            params: vec![slot("i", Domain::Weight)],
            constraints: vec![],
            relations: |p| {
                let (one, m1, two) = (p.int(1), p.int(-1), p.int(2));
                vec![
                    vec![t(one, X1, X1), t(one, X2, X3), t(one, X3, X2)],
                    vec![t(one, X1, X2), t(one, X2, X1), t(two, X3, X3)],
                    vec![t(m1, X1, X3), t(one, X2, X2), t(m1, X3, X1)],
                ]
            },
            samples: |_| vec![vec![("i", 0)]],
        },
        FamilySpec {
            id: "neg-equal-weights",
            summary: "x1^2 + a x1y + y^2, x1x2 + x2x1 + a x2y, x2^2 + y^2; p = 2, i = j",
            allowed_p: AllowedP::Only(2),
            shape: Shape::M2PlusS,
            params: vec![slot("i", Domain::Weight), slot("j", Domain::Weight), slot("a", Domain::Scalar)],
            constraints: vec![Constraint { text: "i = j", check: |p| p.weight("i") == p.weight("j") }],
            relations: |p| {
                let (one, a) = (p.int(1), p.get("a"));
                vec![
                    vec![t(one, X1, X1), t(a, X1, Y), t(one, Y, Y)],
                    vec![t(one, X1, X2), t(one, X2, X1), t(a, X2, Y)],
                    vec![t(one, X2, X2), t(one, Y, Y)],
                ]
            },
            samples: |_| vec![vec![("i", 0), ("j", 0), ("a", 0)], vec![("i", 0), ("j", 0), ("a", 1)]],
        },
    ]
}

pub fn find_family(id: &str) -> Result<FamilySpec, FamilyError> {
    list_families()
        .into_iter()
        .chain(negative_controls())
        .find(|s| s.id == id)
        .ok_or_else(|| FamilyError::UnknownFamily(id.to_string()))
}

/// Matrices of `u` and `w` on the generators for the given shape.
pub fn v_module(field: &Field, shape: Shape, i: u32, j: u32) -> UModule {
    match shape {
        Shape::M2 => umod::standard_module(field, 2, i).expect("p >= 2"),
        Shape::M3 => umod::standard_module(field, 3, i).expect("p >= 3 checked by caller"),
        Shape::M2PlusS => {
            umod::direct_sum(&umod::standard_module(field, 2, i).expect("p >= 2"), &umod::simple_module(field, j))
                .expect("same field")
        }
    }
}

/// A parameter value as written by a user: an integer or a coefficient sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Coeffs(Vec<u32>),
}

impl std::str::FromStr for ParamValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|e| format!("{c:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ParamValue::Coeffs(coeffs));
        }
        s.parse::<i64>().map(ParamValue::Int).map_err(|e| format!("{s:?}: {e}"))
    }
}

/// A concrete member of a family.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: &'static str,
    pub shape: Shape,
    pub params: Params,
    pub algebra: Arc<QuadAlgebra>,
    pub v: UModule,
    /// Each side condition with whether it holds.
    pub constraints: Vec<(String, bool)>,
}

impl Instance {
    pub fn p(&self) -> u32 {
        self.params.p()
    }

    pub fn action(&self) -> Result<UAction, ActionError> {
        make_action(self.algebra.clone(), self.v.mat_u().clone(), self.v.mat_w().clone())
    }
}

fn resolve_params(
    spec: &FamilySpec,
    field: &Field,
    given: &BTreeMap<String, ParamValue>,
) -> Result<Params, FamilyError> {
    let p = field.characteristic();
    for name in given.keys() {
        if !spec.params.iter().any(|s| s.name == name) {
            return Err(FamilyError::UnknownParam { id: spec.id.to_string(), name: name.clone() });
        }
    }
    let defaults: BTreeMap<&str, i64> = (spec.samples)(p).into_iter().next().unwrap_or_default().into_iter().collect();
    let mut values = BTreeMap::new();
    for s in &spec.params {
        let bad = |reason: String| FamilyError::BadParam { name: s.name.to_string(), reason };
        let v = match given.get(s.name) {
            Some(ParamValue::Int(n)) => field.from_int(*n),
            Some(ParamValue::Coeffs(c)) => field.from_coeffs(c).map_err(|e| bad(e.to_string()))?,
            None => field.from_int(*defaults.get(s.name).unwrap_or(&0)),
        };
        match s.domain {
            Domain::Weight if field.to_prime(v).is_none() => return Err(bad("weights lie in Z_p".into())),
            Domain::Unit if v.is_zero() => return Err(bad("must be nonzero".into())),
            Domain::Bit if v.packed() > 1 => return Err(bad("must be 0 or 1".into())),
            _ => {}
        }
        values.insert(s.name, v);
    }
    Ok(Params { field: field.clone(), values })
}

fn build(spec: &FamilySpec, field: &Field, params: Params) -> Result<Instance, FamilyError> {
    let algebra = QuadAlgebra::from_terms(field, spec.shape.generator_names(), &(spec.relations)(&params))?;
    let i = params.weight("i");
    let j = if spec.shape == Shape::M2PlusS { params.weight("j") } else { 0 };
    let v = v_module(field, spec.shape, i, j);
    let constraints = spec.constraints.iter().map(|c| (c.text.to_string(), (c.check)(&params))).collect();
    Ok(Instance { family: spec.id, shape: spec.shape, params, algebra: Arc::new(algebra), v, constraints })
}

fn check_p(spec: &FamilySpec, field: &Field) -> Result<(), FamilyError> {
    let p = field.characteristic();
    if !spec.allows_p(p) {
        return Err(FamilyError::BadCharacteristic { id: spec.id.to_string(), p });
    }
    Ok(())
}

/// Builds an instance, rejecting parameters that violate a side condition.
/// Missing parameters take the family's first sample value.
pub fn instantiate(id: &str, field: &Field, params: &BTreeMap<String, ParamValue>) -> Result<Instance, FamilyError> {
    let spec = find_family(id)?;
    check_p(&spec, field)?;
    let resolved = resolve_params(&spec, field, params)?;
    let inst = build(&spec, field, resolved)?;
    if let Some((text, _)) = inst.constraints.iter().find(|(_, ok)| !ok) {
        return Err(FamilyError::ConstraintViolated(format!("{text} fails")));
    }
    Ok(inst)
}

/// Like [`instantiate`] but keeps instances whose side conditions fail; the
/// failures show up in the verification report.
pub fn instantiate_unchecked(
    id: &str,
    field: &Field,
    params: &BTreeMap<String, ParamValue>,
) -> Result<Instance, FamilyError> {
    let spec = find_family(id)?;
    check_p(&spec, field)?;
    let resolved = resolve_params(&spec, field, params)?;
    build(&spec, field, resolved)
}

/// Every sample instance of a family at prime `p`.
pub fn sample_instances(id: &str, p: u32) -> Result<Vec<Instance>, FamilyError> {
    let spec = find_family(id)?;
    let field = Field::prime(p)?;
    (spec.samples)(p)
        .into_iter()
        .map(|s| {
            let given = s.into_iter().map(|(k, v)| (k.to_string(), ParamValue::Int(v))).collect();
            instantiate(id, &field, &given)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub detail: serde_json::Value,
}

impl Check {
    fn new(passed: bool, detail: serde_json::Value) -> Check {
        Check { passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub p: u32,
    pub params: BTreeMap<String, String>,
    pub relations: Vec<String>,
    pub checks: BTreeMap<String, Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> &Check {
        &self.checks[name]
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| !c.passed).map(|(k, _)| k.as_str()).collect()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Hilbert function of a polynomial ring in `g` variables.
pub fn polynomial_hilbert(g: usize, max_deg: usize) -> Vec<usize> {
    (0..=max_deg).map(|n| binomial(n + g - 1, g - 1)).collect()
}

/// Hilbert function of an exterior algebra on `g` generators, padded with zeros.
pub fn exterior_hilbert(g: usize, len: usize) -> Vec<usize> {
    (0..len).map(|n| if n <= g { binomial(g, n) } else { 0 }).collect()
}

/// Default cutoff for the dual Frobenius certificate.
pub const FROBENIUS_CUTOFF: usize = 8;

/// Runs every certificate on an instance. Failures are data, not errors.
pub fn verify(inst: &Instance, max_deg: usize) -> VerificationReport {
    let alg = &inst.algebra;
    let g = alg.n_gens();
    let expected_rel = if g == 2 { 1 } else { 3 };
    let mut checks = BTreeMap::new();

    let rdim = alg.relations().dim();
    checks.insert(
        "relations_dim".into(),
        Check::new(rdim == expected_rel, serde_json::json!({ "dim": rdim, "expected": expected_rel })),
    );

    let u_ok = action::preserves_relations(alg, inst.v.mat_u());
    let w_ok = action::preserves_relations(alg, inst.v.mat_w());
    checks.insert(
        "relations_U_submodule".into(),
        Check::new(u_ok && w_ok, serde_json::json!({ "u_stable": u_ok, "w_stable": w_ok })),
    );

    let faithful = !inst.v.mat_u().is_zero();
    checks.insert("inner_faithful".into(), Check::new(faithful, serde_json::json!({ "rho_u_nonzero": faithful })));

    let expected = polynomial_hilbert(g, max_deg);
    let hilbert = match alg.hilbert(max_deg) {
        Ok(dims) => {
            let first_bad = dims.iter().zip(&expected).position(|(a, b)| a != b);
            Check::new(
                first_bad.is_none(),
                serde_json::json!({ "dims": dims, "expected": expected, "first_mismatch_degree": first_bad }),
            )
        }
        Err(e) => Check::new(false, serde_json::json!({ "error": e.to_string() })),
    };
    checks.insert("hilbert_matches".into(), hilbert);

    let dual = alg.koszul_dual();
    let expected_dual = exterior_hilbert(g, g + 1);
    let frob = match frobenius_check(&dual, FROBENIUS_CUTOFF) {
        Ok(rep) => {
            let dims_ok = rep.dims.len() > g && rep.dims[..=g] == expected_dual[..] && rep.top_degree == g;
            Check::new(
                rep.passed() && dims_ok,
                serde_json::json!({
                    "dims": rep.dims,
                    "expected_prefix": expected_dual,
                    "top_degree": rep.top_degree,
                    "pairing_ranks": rep.pairing_ranks,
                    "pairings_nondegenerate": rep.pairings_nondegenerate,
                }),
            )
        }
        Err(QuadError::Inconclusive { cutoff, dims }) => {
            Check::new(false, serde_json::json!({ "dims": dims, "finite_within_cutoff": false, "cutoff": cutoff }))
        }
        Err(e) => Check::new(false, serde_json::json!({ "error": e.to_string() })),
    };
    checks.insert("koszul_dual_frobenius".into(), frob);

    let preds: BTreeMap<&str, bool> = inst.constraints.iter().map(|(t, ok)| (t.as_str(), *ok)).collect();
    let all = preds.values().all(|&b| b);
    checks.insert("constraint_predicates".into(), Check::new(all, serde_json::json!(preds)));

    let passed = checks.values().all(|c| c.passed);
    VerificationReport {
        family: inst.family.to_string(),
        p: inst.p(),
        params: inst.params.display(),
        relations: alg.relations_display(),
        checks,
        passed,
    }
}

/// The same algebra as a `t05-4` instance, written as a skew polynomial ring
/// on `x1, x2, y` with `x2x1 = x1x2`, `yx1 = -a x1y`, `yx2 = -a x2y`.
pub fn t05_4_as_skew(inst: &Instance) -> Result<Instance, FamilyError> {
    if inst.family != "t05-4" {
        return Err(FamilyError::UnknownFamily(format!("{} is not t05-4", inst.family)));
    }
    let f = &inst.params.field;
    let minus_a = f.neg(inst.params.get("a"));
    let q: BTreeMap<(usize, usize), FieldElem> =
        [((0, 1), FieldElem::ONE), ((0, 2), minus_a), ((1, 2), minus_a)].into();
    let skew = crate::quadalg::skew_polynomial_ring(f, 3, &q);
    let renamed = QuadAlgebra::new(f, Shape::M2PlusS.generator_names(), &skew.relations().basis_vectors())?;
    Ok(Instance { algebra: Arc::new(renamed), ..inst.clone() })
}

/// The three two-parameter-block relation forms in characteristic 2 on
/// generators `x1, x2, y`, with the exact conditions under which each is AS
/// regular of global dimension 3.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Char2Form {
    /// `x1^2 + c1 x2y + d1 yx2 + e1 y^2`, `x1x2 + x2x1`, `x2^2 + c3 x2y + d3 yx2 + e3 y^2`.
    Squares,
    /// `yx2 - q x2y`, `x1^2 + a x1y + d y^2 + e x2^2`, `x1x2 + x2x1 + a x2y`.
    Twisted,
    /// `yx2 - q x2y + c1 y^2`, `x1^2 + c x2y + d y^2 + e x2^2`, `x1x2 + x2x1`.
    Normal,
}

impl Char2Form {
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Char2Form::Squares => &["c1", "d1", "e1", "c3", "d3", "e3"],
            Char2Form::Twisted => &["q", "a", "d", "e"],
            Char2Form::Normal => &["q", "c1", "c", "d", "e"],
        }
    }

    pub fn algebra(self, field: &Field, v: &[FieldElem]) -> QuadAlgebra {
        assert_eq!(v.len(), self.param_names().len());
        let (one, zero) = (FieldElem::ONE, FieldElem::ZERO);
        let neg = |x| field.neg(x);
        let rels: Vec<RelationTerms> = match self {
            Char2Form::Squares => vec![
                vec![t(one, X1, X1), t(v[0], X2, Y), t(v[1], Y, X2), t(v[2], Y, Y)],
                vec![t(one, X1, X2), t(one, X2, X1)],
                vec![t(one, X2, X2), t(v[3], X2, Y), t(v[4], Y, X2), t(v[5], Y, Y)],
            ],
            Char2Form::Twisted => vec![
                vec![t(one, Y, X2), t(neg(v[0]), X2, Y)],
                vec![t(one, X1, X1), t(v[1], X1, Y), t(v[2], Y, Y), t(v[3], X2, X2)],
                vec![t(one, X1, X2), t(one, X2, X1), t(v[1], X2, Y)],
            ],
            Char2Form::Normal => vec![
                vec![t(one, Y, X2), t(neg(v[0]), X2, Y), t(v[1], Y, Y)],
                vec![t(one, X1, X1), t(v[2], X2, Y), t(v[3], Y, Y), t(v[4], X2, X2)],
                vec![t(one, X1, X2), t(one, X2, X1), t(zero, X1, X1)],
            ],
        };
        QuadAlgebra::from_terms(field, Shape::M2PlusS.generator_names(), &rels).expect("generators exist")
    }

    /// The exact regularity condition on the parameters.
    pub fn predicate(self, field: &Field, v: &[FieldElem]) -> bool {
        let f = field;
        match self {
            Char2Form::Squares => {
                let (c1, d1, e1, c3, d3, e3) = (v[0], v[1], v[2], v[3], v[4], v[5]);
                d1 == c1
                    && d3 == c3
                    && f.sub(f.mul(c3, c3), e3) != FieldElem::ZERO
                    && f.sub(f.mul(c1, e3), f.mul(c3, e1)) != FieldElem::ZERO
            }
            Char2Form::Twisted => {
                let (q, a, d) = (v[0], v[1], v[2]);
                a.is_zero() && q == FieldElem::ONE && !d.is_zero()
            }
            Char2Form::Normal => {
                let (q, c1, c, d) = (v[0], v[1], v[2], v[3]);
                q == FieldElem::ONE && !d.is_zero() && f.mul(c1, c).is_zero()
            }
        }
    }
}

/// Algebra-level certificate: Hilbert function of a polynomial ring in three
/// variables up to `max_deg`, and a Frobenius Koszul dual with dims (1,3,3,1).
pub fn regularity_certificate(alg: &QuadAlgebra, max_deg: usize) -> bool {
    let g = alg.n_gens();
    if alg.relations().dim() != g * (g - 1) / 2 {
        return false;
    }
    let hilbert_ok = alg.hilbert(max_deg).map(|d| d == polynomial_hilbert(g, max_deg)).unwrap_or(false);
    if !hilbert_ok {
        return false;
    }
    match frobenius_check(&alg.koszul_dual(), FROBENIUS_CUTOFF) {
        Ok(rep) => rep.passed() && rep.top_degree == g,
        Err(_) => false,
    }
}

/// Matrix pair of an instance, for cross-checks against the action solver.
pub fn instance_matrices(inst: &Instance) -> (Matrix, Matrix) {
    (inst.v.mat_u().clone(), inst.v.mat_w().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, ParamValue> {
        pairs.iter().map(|&(k, v)| (k.to_string(), ParamValue::Int(v))).collect()
    }

    #[test]
    fn catalog_shape() {
        let specs = list_families();
        let ids: Vec<&str> = specs.iter().map(|s| s.id).filter(|id| *id != "t05-3-alt").collect();
        assert_eq!(ids, CATALOG_IDS.to_vec());
        assert_eq!(find_family("t05-2").unwrap().allowed_p, AllowedP::Only(3));
        for id in ["t05-8", "t05-9", "t05-10a", "t05-10b"] {
            assert_eq!(find_family(id).unwrap().allowed_p, AllowedP::Only(2));
        }
    }

    #[test]
    fn instantiate_examples() {
        let f3 = Field::prime(3).unwrap();
        let inst = instantiate("t05-2", &f3, &params(&[("i", 0)])).unwrap();
        assert!(inst.action().is_ok());

        let f5 = Field::prime(5).unwrap();
        let err = instantiate("t05-5", &f5, &params(&[("i", 2), ("j", 0), ("a", 2), ("eps", 1)])).unwrap_err();
        assert_eq!(err, FamilyError::ConstraintViolated("eps(a^2-1) = 0 fails".into()));

        let err = instantiate("t05-4", &f3, &params(&[("i", 0), ("j", 0)])).unwrap_err();
        assert_eq!(err, FamilyError::ConstraintViolated("(i-j)(2i+1-2j) != 0 fails".into()));

        let f2 = Field::prime(2).unwrap();
        assert!(matches!(instantiate("t05-2", &f2, &params(&[])), Err(FamilyError::BadCharacteristic { .. })));
        assert!(matches!(instantiate("t05-1a", &f2, &params(&[])), Err(FamilyError::BadCharacteristic { .. })));
        assert!(matches!(instantiate("gl2", &f2, &params(&[("z", 1)])), Err(FamilyError::UnknownParam { .. })));
        assert!(matches!(instantiate("t05-4", &f3, &params(&[("a", 0)])), Err(FamilyError::BadParam { .. })));
    }

    #[test]
    fn t05_2_verifies() {
        let inst = instantiate("t05-2", &Field::prime(3).unwrap(), &params(&[("i", 0)])).unwrap();
        let rep = verify(&inst, 6);
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn param_value_parsing() {
        assert_eq!("3".parse::<ParamValue>().unwrap(), ParamValue::Int(3));
        assert_eq!("[0, 1]".parse::<ParamValue>().unwrap(), ParamValue::Coeffs(vec![0, 1]));
        assert!("x".parse::<ParamValue>().is_err());
    }
}
