//! Covolumes, elliptic-point splitting under finite-index coverings, and
//! enumeration of feasible subgroup signatures.
//!
//! An elliptic point of order `e` upstairs of a degree-`m` covering splits
//! according to the orbit sizes of a cyclic group of order `e` acting on `m`
//! cosets: a partition of `m` into parts `d | e`, an orbit of size `d`
//! contributing a point of order `e/d` (dropped when `e/d = 1`). Candidate
//! signatures are filtered by parity of the total branch number and
//! integrality and nonnegativity of the covered genus. The enumeration is by
//! necessary conditions only; no realisability check is attempted.

use thiserror::Error;

use crate::algebra::rational::{rat_int, Rational};
use crate::forms::OrbSignature;

#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("malformed signature string: {0}")]
    Parse(String),
    #[error("orders must be at least 2 (cusps are not supported)")]
    BadOrder,
}

/// One way an elliptic point of order `e` can split in a degree-`m` cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitChoice {
    pub parent_order: u32,
    /// Orbit sizes `d_i | e` with `sum d_i = m`.
    pub partition: Vec<u32>,
    /// Orders `e / d_i` with entries equal to 1 dropped.
    pub child_orders: Vec<u32>,
    /// Contribution `sum (d_i - 1)` to the total branch number.
    pub branch_number: u32,
}

/// All splittings of an order-`e` point in a degree-`m` covering.
pub fn split_choices(e: u32, m: u32) -> Vec<SplitChoice> {
    let divisors: Vec<u32> = (1..=e.min(m)).filter(|d| e % d == 0).collect();
    let mut out = vec![];
    // partitions of m into nonincreasing parts from `divisors`
    fn rec(divisors: &[u32], remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for &d in divisors.iter().rev() {
            if d <= max_part && d <= remaining {
                cur.push(d);
                rec(divisors, remaining - d, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut parts = vec![];
    rec(&divisors, m, m, &mut vec![], &mut parts);
    for partition in parts {
        let child_orders: Vec<u32> =
            partition.iter().map(|&d| e / d).filter(|&o| o > 1).collect();
        let branch_number = partition.iter().map(|&d| d - 1).sum();
        out.push(SplitChoice { parent_order: e, partition, child_orders, branch_number });
    }
    out
}

/// Exact covolume measure `2g - 2 + sum(1 - 1/e)` of a signature.
pub fn covolume(sig: &OrbSignature) -> Rational {
    sig.covolume()
}

/// Options for [`enumerate_subsignatures`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOpts {
    /// Require the total branch number to be strictly positive.
    pub positive_branch: bool,
}

/// Possible signatures of an index-`m` subgroup of a group with the given
/// genus-0 signature: all splitting combinations with an even (optionally
/// positive) total branch number and an integral nonnegative covered genus,
/// deduplicated and sorted.
pub fn enumerate_subsignatures(
    sig: &OrbSignature,
    m: u32,
    opts: EnumerateOpts,
) -> Vec<OrbSignature> {
    if m == 1 {
        return vec![sig.clone()];
    }
    let per_point: Vec<Vec<SplitChoice>> =
        sig.orders.iter().map(|&e| split_choices(e, m)).collect();
    let mut out = vec![];
    let mut stack: Vec<usize> = vec![];
    enumerate_rec(sig, m, &per_point, opts, &mut stack, &mut out);
    out.sort();
    out.dedup();
    out
}

fn enumerate_rec(
    sig: &OrbSignature,
    m: u32,
    per_point: &[Vec<SplitChoice>],
    opts: EnumerateOpts,
    chosen: &mut Vec<usize>,
    out: &mut Vec<OrbSignature>,
) {
    if chosen.len() == per_point.len() {
        let mut branch: i64 = 0;
        let mut orders = vec![];
        for (i, &c) in chosen.iter().enumerate() {
            let ch = &per_point[i][c];
            branch += ch.branch_number as i64;
            orders.extend_from_slice(&ch.child_orders);
        }
        if branch % 2 != 0 {
            return;
        }
        if opts.positive_branch && branch == 0 {
            return;
        }
        // Riemann-Hurwitz: 2g' - 2 = m(2g - 2) + branch
        let doubled = m as i64 * (2 * sig.genus as i64 - 2) + branch + 2;
        if doubled % 2 != 0 || doubled < 0 {
            return;
        }
        let genus = (doubled / 2) as u32;
        out.push(OrbSignature::new(genus, orders).expect("orders >= 2"));
        return;
    }
    for c in 0..per_point[chosen.len()].len() {
        chosen.push(c);
        enumerate_rec(sig, m, per_point, opts, chosen, out);
        chosen.pop();
    }
}

/// Multiset intersection of two candidate lists.
pub fn intersect_feasible(a: &[OrbSignature], b: &[OrbSignature]) -> Vec<OrbSignature> {
    let mut out: Vec<OrbSignature> = a.iter().filter(|s| b.contains(s)).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// Parses `"g;e1,e2,..."` (repetitions written out).
pub fn parse_signature(s: &str) -> Result<OrbSignature, SignatureError> {
    let bad = || SignatureError::Parse(s.to_string());
    let t = s.trim();
    let (g, rest) = t.split_once(';').ok_or_else(bad)?;
    let genus: u32 = g.trim().parse().map_err(|_| bad())?;
    let mut orders = vec![];
    let rest = rest.trim();
    if !rest.is_empty() {
        for part in rest.split(',') {
            let e: u32 = part.trim().parse().map_err(|_| bad())?;
            if e < 2 {
                return Err(SignatureError::BadOrder);
            }
            orders.push(e);
        }
    }
    OrbSignature::new(genus, orders).map_err(|_| SignatureError::BadOrder)
}

/// Plain form `g;e1,e2,...` with repetitions written out.
pub fn format_signature(sig: &OrbSignature) -> String {
    let orders: Vec<String> = sig.orders.iter().map(|e| e.to_string()).collect();
    format!("{};{}", sig.genus, orders.join(","))
}

/// Pretty form with exponent shorthand, e.g. `(0; 2^3, 6^3)`.
pub fn pretty_signature(sig: &OrbSignature) -> String {
    let mut runs: Vec<(u32, u32)> = vec![];
    for &e in &sig.orders {
        match runs.last_mut() {
            Some((v, n)) if *v == e => *n += 1,
            _ => runs.push((e, 1)),
        }
    }
    let body: Vec<String> = runs
        .iter()
        .map(|(v, n)| if *n == 1 { v.to_string() } else { format!("{v}^{n}") })
        .collect();
    format!("({}; {})", sig.genus, body.join(", "))
}

/// Covolume must scale by the covering degree; used as an independent check
/// of the enumeration.
pub fn covolume_scales(parent: &OrbSignature, child: &OrbSignature, m: u32) -> bool {
    child.covolume() == parent.covolume() * rat_int(m as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn sig(s: &str) -> OrbSignature {
        parse_signature(s).unwrap()
    }

    #[test]
    fn covolume_values() {
        assert_eq!(covolume(&sig("0;2,4,6,12")), rat_int(1));
        assert_eq!(covolume(&sig("0;2,3,7")), rat(1, 42));
        assert_eq!(covolume(&sig("1;")), rat_int(0));
    }

    #[test]
    fn split_choice_rules() {
        // order 6, degree 4: the four printed cases
        let cs = split_choices(6, 4);
        let mut orders: Vec<Vec<u32>> = cs.iter().map(|c| c.child_orders.clone()).collect();
        orders.iter_mut().for_each(|v| v.sort_unstable());
        orders.sort();
        assert_eq!(
            orders,
            vec![vec![2, 6], vec![3, 3], vec![3, 6, 6], vec![6, 6, 6, 6]]
        );
        for c in &cs {
            assert_eq!(c.partition.iter().sum::<u32>(), 4);
            assert!(c.partition.iter().all(|d| 6 % d == 0));
        }
        // order 3 point cannot ramify in a degree-2 cover
        let cs = split_choices(3, 2);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].child_orders, vec![3, 3]);
    }

    #[test]
    fn index_two_of_2_4_6_12() {
        let out = enumerate_subsignatures(&sig("0;2,4,6,12"), 2, EnumerateOpts::default());
        let expect: Vec<OrbSignature> = [
            "1;2,3,6",
            "0;2,6,6,12,12",
            "0;3,4,4,12,12",
            "0;4,4,6,6,6",
            "0;2,2,2,3,12,12",
            "0;2,2,2,6,6,6",
            "0;2,2,3,4,4,6",
        ]
        .iter()
        .map(|s| sig(s))
        .collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(out, expect);
        for s in &out {
            assert!(covolume_scales(&sig("0;2,4,6,12"), s, 2));
        }
    }

    #[test]
    fn index_four_of_6_6_6() {
        let out = enumerate_subsignatures(
            &sig("0;6,6,6"),
            4,
            EnumerateOpts { positive_branch: true },
        );
        let expect: Vec<OrbSignature> = [
            "0;2,2,2,6,6,6",
            "0;2,2,3,3,6,6",
            "0;2,3,3,3,3,6",
            "0;3,3,3,3,3,3",
        ]
        .iter()
        .map(|s| sig(s))
        .collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(out, expect);
        // the same four survive without the positivity flag here (genus
        // integrality already forces branch >= 6)
        let out2 = enumerate_subsignatures(&sig("0;6,6,6"), 4, EnumerateOpts::default());
        assert_eq!(out, out2);
    }

    #[test]
    fn intersections() {
        let a = enumerate_subsignatures(&sig("0;2,4,6,12"), 2, EnumerateOpts::default());
        let b = enumerate_subsignatures(
            &sig("0;6,6,6"),
            4,
            EnumerateOpts { positive_branch: true },
        );
        assert_eq!(intersect_feasible(&a, &b), vec![sig("0;2,2,2,6,6,6")]);
        assert_eq!(intersect_feasible(&a, &a), a);
    }

    #[test]
    fn deeper_index_two_lists() {
        let a = enumerate_subsignatures(&sig("0;2,2,2,6,6,6"), 2, EnumerateOpts::default());
        let expect_a: Vec<OrbSignature> = [
            "0;2,2,2,2,2,2,3,3,6,6",
            "0;2,2,2,2,3,6,6,6,6",
            "0;2,2,6,6,6,6,6,6",
            "1;2,2,2,2,3,3,3",
            "1;2,2,3,3,6,6",
            "1;3,6,6,6,6",
            "2;3,3,3",
        ]
        .iter()
        .map(|s| sig(s))
        .collect();
        let mut expect_a = expect_a;
        expect_a.sort();
        assert_eq!(a, expect_a);

        let b = enumerate_subsignatures(&sig("0;3,4,4,12,12"), 2, EnumerateOpts::default());
        let expect_b: Vec<OrbSignature> = [
            "0;3,3,4,4,4,4,6,6",
            "0;2,3,3,4,4,6,12,12",
            "0;2,2,3,3,12,12,12,12",
            "1;2,2,3,3,6,6",
        ]
        .iter()
        .map(|s| sig(s))
        .collect();
        let mut expect_b = expect_b;
        expect_b.sort();
        assert_eq!(b, expect_b);

        assert_eq!(intersect_feasible(&a, &b), vec![sig("1;2,2,3,3,6,6")]);
    }

    #[test]
    fn trivial_index() {
        let s = sig("0;2,3,7");
        assert_eq!(enumerate_subsignatures(&s, 1, EnumerateOpts::default()), vec![s]);
    }

    #[test]
    fn determinism_and_dedup() {
        let s = sig("0;2,2,4,4");
        let a = enumerate_subsignatures(&s, 2, EnumerateOpts::default());
        let b = enumerate_subsignatures(&s, 2, EnumerateOpts::default());
        assert_eq!(a, b);
        let mut c = a.clone();
        c.dedup();
        assert_eq!(a, c);
    }

    #[test]
    fn parse_and_pretty() {
        let s = sig("0;2,6,6,12,12");
        assert_eq!(format_signature(&s), "0;2,6,6,12,12");
        assert_eq!(pretty_signature(&s), "(0; 2, 6^2, 12^2)");
        assert!(parse_signature("0;2,1").is_err());
        assert!(parse_signature("x;2").is_err());
        assert!(parse_signature("2;").is_ok());
    }

    #[test]
    fn covolume_consistency_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(3..6);
            let orders: Vec<u32> = (0..n).map(|_| [2u32, 3, 4, 6, 12][rng.gen_range(0..5)]).collect();
            let parent = OrbSignature::new(0, orders).unwrap();
            for m in 2..=4u32 {
                for child in enumerate_subsignatures(&parent, m, EnumerateOpts::default()) {
                    assert!(covolume_scales(&parent, &child, m), "{parent:?} -> {child:?} @ {m}");
                }
            }
        }
    }
}
