use super::DegreeVector;
use crate::error::{Error, Result};

/// Complementary CDF: for each distinct value `k` ascending, the fraction
/// of values `>= k`. The first point always has fraction 1.
pub fn ccdf(values: &[f64]) -> Result<Vec<(f64, f64)>> {
    if values.is_empty() {
        return Err(Error::EmptyInput("ccdf of no values"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("ccdf values must be finite".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut curve = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let k = sorted[i];
        curve.push((k, (sorted.len() - i) as f64 / n));
        while i < sorted.len() && sorted[i] == k {
            i += 1;
        }
    }
    Ok(curve)
}

/// Indices of the `k` highest values, ties broken by ascending node id.
fn top_k(d: &DegreeVector, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.values().len()).collect();
    order.sort_by(|&a, &b| {
        d.values()[b]
            .cmp(&d.values()[a])
            .then_with(|| d.nodes()[a].cmp(&d.nodes()[b]))
    });
    order.truncate(k);
    order.sort_unstable();
    order
}

/// Percentage of users shared by the top `x`% by in-degree and the top `x`%
/// by out-degree. Both sets hold `⌈x·N/100⌉` users.
pub fn top_overlap(in_deg: &DegreeVector, out_deg: &DegreeVector, x: f64) -> Result<f64> {
    if in_deg.nodes() != out_deg.nodes() {
        return Err(Error::InvalidParameter(
            "degree vectors cover different nodes".into(),
        ));
    }
    let n = in_deg.nodes().len();
    if n == 0 {
        return Err(Error::EmptyInput("overlap of an empty node set"));
    }
    if !(x > 0.0 && x <= 100.0) {
        return Err(Error::InvalidParameter(format!(
            "overlap percentage must be in (0, 100], got {x}"
        )));
    }
    let k = ((x * n as f64 / 100.0).ceil() as usize).clamp(1, n);
    let a = top_k(in_deg, k);
    let b = top_k(out_deg, k);
    let common = a.iter().filter(|i| b.binary_search(i).is_ok()).count();
    Ok(100.0 * common as f64 / k as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioCdf {
    /// `(ratio, fraction of nodes with out/in <= ratio)` at each distinct ratio.
    pub points: Vec<(f64, f64)>,
    /// Nodes with positive in-degree, the population of the curve.
    pub nodes: usize,
    /// Fraction of those nodes with out/in inside `[0.8, 1.25]`.
    pub within_20pct: f64,
}

pub const RATIO_BAND: (f64, f64) = (0.8, 1.25);

/// CDF of out-degree / in-degree over nodes with positive in-degree.
pub fn degree_ratio_cdf(out_deg: &DegreeVector, in_deg: &DegreeVector) -> Result<RatioCdf> {
    if in_deg.nodes() != out_deg.nodes() {
        return Err(Error::InvalidParameter(
            "degree vectors cover different nodes".into(),
        ));
    }
    let mut ratios: Vec<f64> = out_deg
        .values()
        .iter()
        .zip(in_deg.values())
        .filter(|&(_, &i)| i > 0)
        .map(|(&o, &i)| o as f64 / i as f64)
        .collect();
    if ratios.is_empty() {
        return Err(Error::NoPositiveInDegree);
    }
    ratios.sort_by(f64::total_cmp);
    let n = ratios.len();
    let mut points = Vec::new();
    for (i, &r) in ratios.iter().enumerate() {
        if i + 1 == n || ratios[i + 1] != r {
            points.push((r, (i + 1) as f64 / n as f64));
        }
    }
    let within = ratios
        .iter()
        .filter(|&&r| (RATIO_BAND.0..=RATIO_BAND.1).contains(&r))
        .count();
    Ok(RatioCdf {
        points,
        nodes: n,
        within_20pct: within as f64 / n as f64,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::corpus::UserId;
    use crate::interaction::Direction;

    fn deg(direction: Direction, values: &[u64]) -> DegreeVector {
        let nodes = (0..values.len())
            .map(|i| UserId::new(format!("n{i:03}")))
            .collect();
        DegreeVector::new(direction, true, nodes, values.to_vec())
    }

    #[test]
    fn ccdf_direct_count() {
        assert_eq!(
            ccdf(&[1.0, 2.0, 2.0, 3.0]).unwrap(),
            [(1.0, 1.0), (2.0, 0.75), (3.0, 0.25)]
        );
        assert_eq!(ccdf(&[4.0, 4.0]).unwrap(), [(4.0, 1.0)]);
        assert!(ccdf(&[]).is_err());
    }

    #[test]
    fn identical_rankings_overlap_fully() {
        let v = [5, 3, 9, 1, 1, 0, 7];
        for x in [1.0, 10.0, 33.0, 50.0, 100.0] {
            let o = top_overlap(&deg(Direction::In, &v), &deg(Direction::Out, &v), x).unwrap();
            assert_eq!(o, 100.0);
        }
    }

    #[test]
    fn anti_correlated_top_ten_percent() {
        let ins: Vec<u64> = (0..100).collect();
        let outs: Vec<u64> = (0..100).rev().collect();
        let o = top_overlap(&deg(Direction::In, &ins), &deg(Direction::Out, &outs), 10.0).unwrap();
        assert_eq!(o, 0.0);
    }

    #[test]
    fn overlap_rejects_bad_input() {
        let v = deg(Direction::In, &[1, 2]);
        assert!(top_overlap(&v, &v, 0.0).is_err());
        assert!(top_overlap(&v, &v, 101.0).is_err());
        let empty = deg(Direction::In, &[]);
        assert!(top_overlap(&empty, &empty, 10.0).is_err());
    }

    #[test]
    fn balanced_nodes_step_at_one() {
        let v = [3, 1, 4];
        let r = degree_ratio_cdf(&deg(Direction::Out, &v), &deg(Direction::In, &v)).unwrap();
        assert_eq!(r.points, [(1.0, 1.0)]);
        assert_eq!(r.within_20pct, 1.0);
    }

    #[test]
    fn ratio_two_is_outside_band() {
        let r = degree_ratio_cdf(&deg(Direction::Out, &[4]), &deg(Direction::In, &[2])).unwrap();
        assert_eq!(r.points, [(2.0, 1.0)]);
        assert_eq!(r.within_20pct, 0.0);
    }

    #[test]
    fn ratio_band_is_inclusive() {
        let r = degree_ratio_cdf(
            &deg(Direction::Out, &[4, 5, 0]),
            &deg(Direction::In, &[5, 4, 0]),
        )
        .unwrap();
        assert_eq!(r.nodes, 2);
        assert_eq!(r.within_20pct, 1.0);
    }

    #[test]
    fn ten_node_fixture_matches_sort() {
        let outs = [3, 0, 8, 2, 5, 5, 1, 9, 4, 6];
        let ins = [1, 4, 2, 0, 5, 2, 1, 3, 8, 6];
        let r = degree_ratio_cdf(&deg(Direction::Out, &outs), &deg(Direction::In, &ins)).unwrap();
        let mut oracle: Vec<f64> = outs
            .iter()
            .zip(&ins)
            .filter(|(_, &i)| i > 0)
            .map(|(&o, &i)| o as f64 / i as f64)
            .collect();
        oracle.sort_by(f64::total_cmp);
        assert_eq!(r.nodes, 9);
        for &(ratio, frac) in &r.points {
            let le = oracle.iter().filter(|&&x| x <= ratio).count();
            assert_eq!(frac, le as f64 / 9.0);
        }
        // ratios 3, 0, 4, 1, 2.5, 1, 3, 0.5, 1
        assert!((r.within_20pct - 3.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn no_positive_in_degree() {
        assert!(matches!(
            degree_ratio_cdf(&deg(Direction::Out, &[1, 2]), &deg(Direction::In, &[0, 0])),
            Err(Error::NoPositiveInDegree)
        ));
    }

    proptest! {
        #[test]
        fn ccdf_monotone_from_one(values in proptest::collection::vec(0u32..50, 1..200)) {
            let v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
            let c = ccdf(&v).unwrap();
            prop_assert_eq!(c[0].1, 1.0);
            for w in c.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
                prop_assert!(w[0].1 >= w[1].1);
            }
        }

        #[test]
        fn full_overlap_at_hundred(
            pairs in proptest::collection::vec((0u64..20, 0u64..20), 1..100)
        ) {
            let ins: Vec<u64> = pairs.iter().map(|p| p.0).collect();
            let outs: Vec<u64> = pairs.iter().map(|p| p.1).collect();
            let o = top_overlap(&deg(Direction::In, &ins), &deg(Direction::Out, &outs), 100.0).unwrap();
            prop_assert_eq!(o, 100.0);
        }
    }
}
