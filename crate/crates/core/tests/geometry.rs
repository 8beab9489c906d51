//! The distance profile recomputed from its definition as scaled vertical
//! distances between lattice columns and the boundary lines of the annulus
//! at t = 1/2.

use torsig::maxsig::distance_profile;
use torsig::verify::coprime_pairs;
use torsig::TorusKnot;

/// `(index, distance)` pairs in increasing index order.
type Distances = Vec<(i64, i64)>;

/// Column `i` (abscissa `i/p`) has index `2i - p` in coordinates centred at
/// x = 1/2. `D` measures from points below the annulus up to `L`, `d` from
/// points inside the annulus up to `U`. The row `y = 0` is not a lattice
/// point but stands in for a column with nothing below `L`.
fn geometric_profile(p: i64, q: i64) -> (Distances, Distances) {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for i in 1..p {
        let index = 2 * i - p;
        if index < 0 {
            // 2pq (L(x) - y) for L: x + y = 1/2, over points strictly below L
            let best = (0..q)
                .map(|r| p * q - 2 * i * q - 2 * r * p)
                .filter(|&d| d > 0)
                .min()
                .expect("the row y = 0 lies below L");
            lower.push((index, best));
        } else if index > 0 {
            // 2pq (U(x) - y) for U: x + y = 3/2, over points between L and U
            let best = (1..q)
                .filter(|r| 2 * i * q + 2 * r * p > p * q)
                .map(|r| 3 * p * q - 2 * i * q - 2 * r * p)
                .filter(|&d| d > 0)
                .min()
                .expect("the row y = 1/q lies inside the annulus");
            upper.push((index, best));
        }
    }
    (lower, upper)
}

#[test]
fn congruences_match_vertical_distances() {
    for (p, q) in coprime_pairs(40, 90) {
        let profile = distance_profile(&TorusKnot::new(p, q).unwrap()).unwrap();
        let lower: Vec<(i64, i64)> = profile.lower.iter().map(|(&j, &d)| (j, d)).collect();
        let upper: Vec<(i64, i64)> = profile.upper.iter().map(|(&k, &d)| (k, d)).collect();
        let (geo_lower, geo_upper) = geometric_profile(p, q);
        assert_eq!(lower, geo_lower, "D for T({p},{q})");
        assert_eq!(upper, geo_upper, "d for T({p},{q})");
    }
}

#[test]
fn four_seven_distances() {
    let (lower, upper) = geometric_profile(4, 7);
    assert_eq!(lower, [(-2, 6)]);
    assert_eq!(upper, [(2, 2)]);
}
