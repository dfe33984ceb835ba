//! Reference signotopes given by their `+`-triples.

use crate::format::parse;
use crate::signotope::Signotope;

/// Three 6-element signotopes of the minimum-crossing flip class that come
/// from drawings.
pub const REALIZABLE_SIX: [&str; 3] = [
    "n=6 {235,236,245,246,345,346,356,456}",
    "n=6 {235,236,245,246,256,345,346,356}",
    "n=6 {234,235,245,246,256,346,356,456}",
];

/// The seven remaining 6-element signotopes of that flip class, which no
/// drawing realizes.
pub const NON_REALIZABLE_SIX: [&str; 7] = [
    "n=6 {234,235,236,245,256,346,356,456}",
    "n=6 {234,235,236,246,256,345,356,456}",
    "n=6 {234,235,246,256,345,346,356,456}",
    "n=6 {136,234,245,256,345,456}",
    "n=6 {234,236,245,246,256,345,356,456}",
    "n=6 {234,236,245,256,345,346,356,456}",
    "n=6 {235,236,245,246,256,345,346,456}",
];

/// A 7-element signotope with 7 crossings.
pub const SEVEN_CROSSINGS_SEVEN: &str =
    "n=7 {235,236,237,245,246,247,257,267,345,346,347,356,367,456,457,567}";

/// Every drawing of `K_7` has at least this many crossings.
pub const K7_DRAWING_MIN_CROSSINGS: usize = 9;

/// Every drawing of `K_6` has at least this many crossings.
pub const K6_DRAWING_MIN_CROSSINGS: usize = 3;

/// Number of generalized signotopes on 7 elements, used for the upper bound.
pub const G7: u128 = 630_988_832;

/// All ten 6-element listings, realizable ones first.
pub fn six_element_listings() -> Vec<Signotope> {
    REALIZABLE_SIX
        .iter()
        .chain(NON_REALIZABLE_SIX.iter())
        .map(|t| parse(t).expect("listing is a valid signotope"))
        .collect()
}

pub fn seven_element_listing() -> Signotope {
    parse(SEVEN_CROSSINGS_SEVEN).expect("listing is a valid signotope")
}
