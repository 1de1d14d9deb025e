//! The 34 six-dimensional nilpotent Lie algebras.

/// Algebras with a half-flat structure: notation, adapted frame, basis of `Λ^{2,0}`
/// solutions (`None` for all two-forms).
pub(super) const HALF_FLAT: &[(&str, &str, Option<&str>)] = &[
    ("0,0,12,13,23,14", "e1,e5,e2,e4,e3,e6", Some("e12")),
    ("0,0,12,13,23,14+25", "e1-e2,e4,e5,e2,e6,e3", Some("e12")),
    ("0,0,12,13,23,14-25", "e3,e6,e4,e4-e2,-e5,e1+e5", Some("e12")),
    ("0,0,12,13,14+23,24+15", "-e5,e2,e4,e1,r2*(e3-e5),1/2*r2*e6", Some("e12")),
    ("0,0,0,12,14,15+23", "e2+e5,e2+e5+e6,e4,e2,e3,e1", Some("e12,e13")),
    ("0,0,0,12,14-23,15+34", "e2,e4,e3,e1,e6,e5", Some("e13")),
    ("0,0,0,12,14,15", "e1,e3,e2,e5,e4,e6", Some("e12,e13")),
    ("0,0,0,12,23,14+35", "e1,e3,e4,e5,e6,e2", Some("e13")),
    ("0,0,0,12,23,14-35", "e1,e3,e2,e6,e5,e4", Some("e13")),
    ("0,0,0,12,13,14+35", "e2,e6,-e3,e4,e1,-e2-e5", Some("e13")),
    ("0,0,0,12,13,14+23", "e2-e6,e1+e5,e4,e1,e6,e3", Some("e12,e13")),
    ("0,0,0,12,13,24", "e1,e6,e2,e3,e4,e5", Some("e12,e23")),
    ("0,0,0,12,13,23", "e1,e4,e2,e5,e3,e6", Some("e12,e13,e23")),
    ("0,0,0,12,14,15+24", "e1,e3,e2,e4,e3+e5,-e6", Some("e12")),
    ("0,0,0,12,14,15+23+24", "e1,e3,e2,e4-e2,e3+e5,-e6", Some("e12")),
    ("0,0,0,0,12,14+25", "e1-e6,e4,e5,e2,e6,e3", Some("e12,e24")),
    ("0,0,0,0,12,15+34", "e1,e3,e5,e4,e6,e2", Some("e13,e14")),
    ("0,0,0,0,13+42,14+23", "e1,e2,e3,e4,e5,e6", Some("e12,-e14+e23,e13+e24,e34")),
    ("0,0,0,0,12,14+23", "e1,e3,e2,e4,e6,e5", Some("e12,e13,e23-e14,e24")),
    ("0,0,0,0,12,13", "e1,e4,e2,e3,e5,e6", Some("e12,e13,e14,e23")),
    ("0,0,0,0,12,34", "e1+e3,e1,e6,e5,e2,e4", Some("e13,e14,e23,e24")),
    ("0,0,0,0,0,12+34", "e1,e2,e4,e3,e5,e6", Some("e13,e14,e23,e24,-e12+e34")),
    ("0,0,0,0,0,12", "e1,e3,e2,e4,e5,e6", Some("e12,e13,e14,e15,e23,e24,e25")),
    ("0,0,0,0,0,0", "e1,e2,e3,e4,e5,e6", None),
];

/// Algebras without: notation, `b1`, `b2`, basis of `E_1^{0,2}` (empty for the sporadic pair).
pub(super) const OBSTRUCTED: &[(&str, usize, usize, &str)] = &[
    ("0,0,12,13,14+23,34+52", 2, 2, ""),
    ("0,0,12,13,14,34+52", 2, 2, ""),
    ("0,0,12,13,14,15", 2, 3, "e34,-e36+e45"),
    ("0,0,12,13,14,23+15", 2, 3, "e34,e45-e36"),
    ("0,0,0,12,14,24", 3, 5, "e34,e45,e46"),
    ("0,0,0,12,13+42,14+23", 3, 5, "e34,e45+e36,e46-e35"),
    ("0,0,0,12,14,13+42", 3, 5, "e34,e45,e35+e46"),
    ("0,0,0,12,13+14,24", 3, 5, "e34,e45+e35,e46"),
    ("0,0,0,12,13,14", 3, 6, "e34,e35,e36+e45,e46"),
    ("0,0,0,0,12,15", 4, 7, "e34,e35,e45,e56"),
];
