use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::complex::degree_label;

pub const REPORT_SCHEMA: &str = "bos-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Specialized,
    Cancelled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    CertifiedEqualToExact,
    UpperBoundOnly,
}

/// Field the ranks were computed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    #[serde(rename = "GF(2)(u,z)")]
    Rational,
    #[serde(rename = "GF(2)(t)")]
    Univariate,
    /// `t` evaluated at a random element of GF(2^64).
    #[serde(rename = "GF(2^64)")]
    Point,
}

/// Cohomology ranks keyed by doubled degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub ranks: BTreeMap<i64, usize>,
    pub states: BTreeMap<i64, usize>,
    pub mode: Mode,
    pub field: Field,
    pub certification: Certification,
    pub euler: i64,
    pub seed: Option<u64>,
}

/// Sign of a doubled degree in the alternating sum. Degrees of one complex
/// share a parity, so half-integer gradings only flip the global sign.
pub fn degree_sign(doubled: i64) -> i64 {
    if doubled.div_euclid(2) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn euler_characteristic(counts: &BTreeMap<i64, usize>) -> i64 {
    counts
        .iter()
        .map(|(&d, &n)| degree_sign(d) * n as i64)
        .sum()
}

impl HomologyReport {
    /// `rank H^d = #states_d - rank d^d - rank d^{d-1}`; `diff_ranks` keyed by source degree.
    pub fn from_ranks(
        states: BTreeMap<i64, usize>,
        diff_ranks: &BTreeMap<i64, usize>,
        mode: Mode,
        certification: Certification,
        seed: Option<u64>,
    ) -> Self {
        let ranks = states
            .iter()
            .map(|(&d, &n)| {
                let out = diff_ranks.get(&d).copied().unwrap_or(0);
                let inc = diff_ranks.get(&(d - 2)).copied().unwrap_or(0);
                (d, n - out - inc)
            })
            .collect();
        let euler = euler_characteristic(&states);
        let field = if mode == Mode::Specialized {
            Field::Univariate
        } else {
            Field::Rational
        };
        HomologyReport {
            ranks,
            states,
            mode,
            field,
            certification,
            euler,
            seed,
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// Nonzero ranks only.
    pub fn support(&self) -> BTreeMap<i64, usize> {
        self.ranks
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|(&d, &r)| (d, r))
            .collect()
    }

    /// Whether two reports have the same nonzero ranks in the same degrees.
    pub fn same_ranks(&self, other: &HomologyReport) -> bool {
        self.support() == other.support()
    }

    /// Nonzero ranks with degrees negated.
    pub fn reflected_support(&self) -> BTreeMap<i64, usize> {
        self.support().into_iter().map(|(d, r)| (-d, r)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::from("degree  states  rank\n");
        for (&d, &r) in &self.ranks {
            out.push_str(&format!(
                "{:>6}  {:>6}  {:>4}\n",
                degree_label(d),
                self.states[&d],
                r
            ));
        }
        out.push_str(&format!(
            "total {}  euler {}  mode {} over {}  certification {}\n",
            self.total_rank(),
            self.euler,
            serde_json::to_value(self.mode).unwrap().as_str().unwrap(),
            serde_json::to_value(self.field).unwrap().as_str().unwrap(),
            serde_json::to_value(self.certification)
                .unwrap()
                .as_str()
                .unwrap(),
        ));
        out
    }
}

struct ByDegree<'a>(&'a BTreeMap<i64, usize>);

impl Serialize for ByDegree<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (&d, r) in self.0 {
            m.serialize_entry(&degree_label(d), r)?;
        }
        m.end()
    }
}

impl Serialize for HomologyReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HomologyReport", 9)?;
        st.serialize_field("schema", REPORT_SCHEMA)?;
        st.serialize_field("ranks", &ByDegree(&self.ranks))?;
        st.serialize_field("states", &ByDegree(&self.states))?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("certification", &self.certification)?;
        st.serialize_field("euler_characteristic", &self.euler)?;
        st.serialize_field("total_rank", &self.total_rank())?;
        st.serialize_field("seed", &self.seed)?;
        st.end()
    }
}

/// Upgrades a specialized report when its ranks cannot exceed the generic
/// ones: all nonzero ranks share one sign in the alternating sum and the
/// total equals `|chi|`. Otherwise the ranks are only upper bounds.
pub fn certify(report: &HomologyReport, chi: i64) -> HomologyReport {
    let mut out = report.clone();
    if report.mode != Mode::Specialized {
        return out;
    }
    let signs: Vec<i64> = report.support().keys().map(|&d| degree_sign(d)).collect();
    let one_class = signs.windows(2).all(|w| w[0] == w[1]);
    out.certification = if one_class && report.total_rank() as i64 == chi.abs() {
        Certification::CertifiedEqualToExact
    } else {
        Certification::UpperBoundOnly
    };
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(ranks: &[(i64, usize)]) -> HomologyReport {
        let ranks: BTreeMap<i64, usize> = ranks.iter().copied().collect();
        HomologyReport {
            states: ranks.clone(),
            euler: euler_characteristic(&ranks),
            ranks,
            mode: Mode::Specialized,
            field: Field::Univariate,
            certification: Certification::UpperBoundOnly,
            seed: Some(1),
        }
    }

    #[test]
    fn certification_cases() {
        assert_eq!(
            certify(&spec(&[(2, 3)]), -3).certification,
            Certification::CertifiedEqualToExact
        );
        assert_eq!(
            certify(&spec(&[(0, 2), (2, 1)]), 1).certification,
            Certification::UpperBoundOnly
        );
        assert_eq!(
            certify(&spec(&[(0, 0)]), 0).certification,
            Certification::CertifiedEqualToExact
        );
        // same parity class two degrees apart: still forced
        assert_eq!(
            certify(&spec(&[(0, 2), (4, 1)]), 3).certification,
            Certification::CertifiedEqualToExact
        );
    }

    #[test]
    fn rank_nullity() {
        let states = BTreeMap::from([(-1, 2), (1, 5), (3, 3)]);
        let diffs = BTreeMap::from([(-1, 2), (1, 3)]);
        let r = HomologyReport::from_ranks(states, &diffs, Mode::Exact, Certification::Exact, None);
        assert_eq!(r.ranks, BTreeMap::from([(-1, 0), (1, 0), (3, 0)]));
        assert_eq!(r.euler, -2 + 5 - 3);
    }

    #[test]
    fn json_shape() {
        let r = spec(&[(-3, 1), (1, 2)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], REPORT_SCHEMA);
        assert_eq!(v["ranks"]["-3/2"], 1);
        assert_eq!(v["mode"], "specialized");
        assert_eq!(v["certification"], "upper-bound-only");
        let text = r.to_json();
        assert!(text.find("\"schema\"").unwrap() < text.find("\"ranks\"").unwrap());
    }
}
