//! Projections shipped with the crate, in gpd form.

use crate::gpd::{parse, GpdDocument};

/// Cube graph drawn with three double points; every lift has a Hopf link.
pub const KNOTTED_CUBE: &str = include_str!("../fixtures/fig2_taniyama.gpd");
/// Petersen graph drawn with two double points.
pub const PETERSEN: &str = include_str!("../fixtures/fig5_nonplanar.gpd");
/// Handcuff whose loops cross four times, with a lift of linking number 0.
pub const HANDCUFF_CR4: &str = include_str!("../fixtures/handcuff_cr4.gpd");
pub const THETA_EMBEDDED: &str = include_str!("../fixtures/theta_embedded.gpd");
/// Theta graph with one crossing between two of its edges.
pub const THETA_TYPE_A: &str = include_str!("../fixtures/theta_type_a.gpd");
/// Circle drawn as the trefoil shadow, lifted to a trefoil.
pub const TREFOIL_SHADOW: &str = include_str!("../fixtures/trefoil_shadow.gpd");
/// Embedded loop crossed once by each of three parallel edges.
pub const INTERFERENCY_THREE: &str = include_str!("../fixtures/interferency_three.gpd");
/// A 2-edge cycle with one self double point, two edges crossing it and
/// one loop in each of its three regions.
pub const REGIONS_THREE_PIECES: &str = include_str!("../fixtures/regions_three_pieces.gpd");

/// Every valid fixture with its file name.
pub const ALL: [(&str, &str); 8] = [
    ("fig2_taniyama.gpd", KNOTTED_CUBE),
    ("fig5_nonplanar.gpd", PETERSEN),
    ("handcuff_cr4.gpd", HANDCUFF_CR4),
    ("theta_embedded.gpd", THETA_EMBEDDED),
    ("theta_type_a.gpd", THETA_TYPE_A),
    ("trefoil_shadow.gpd", TREFOIL_SHADOW),
    ("interferency_three.gpd", INTERFERENCY_THREE),
    ("regions_three_pieces.gpd", REGIONS_THREE_PIECES),
];

/// Broken documents and the diagnostic code each must produce.
pub const CORRUPT: [(&str, &str, &str); 7] = [
    (
        "bad_header.gpd",
        include_str!("../fixtures/corrupt/bad_header.gpd"),
        "S001",
    ),
    (
        "unknown_section.gpd",
        include_str!("../fixtures/corrupt/unknown_section.gpd"),
        "S002",
    ),
    ("bad_dart.gpd", include_str!("../fixtures/corrupt/bad_dart.gpd"), "S004"),
    (
        "unknown_edge.gpd",
        include_str!("../fixtures/corrupt/unknown_edge.gpd"),
        "V001",
    ),
    (
        "transversality.gpd",
        include_str!("../fixtures/corrupt/transversality.gpd"),
        "V203",
    ),
    ("rotation.gpd", include_str!("../fixtures/corrupt/rotation.gpd"), "V205"),
    (
        "not_spherical.gpd",
        include_str!("../fixtures/corrupt/not_spherical.gpd"),
        "V206",
    ),
];

/// Parses a shipped fixture; they are all valid.
pub fn load(text: &str) -> GpdDocument {
    parse(text).expect("shipped fixtures parse")
}
