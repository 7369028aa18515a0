use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::CountError;

/// A multiset of positive sizes, written `1^a1 2^a2 ...` in multiplicity notation and
/// `"1:a1,2:a2"` on the command line. Stored canonically: sorted by size,
/// zero multiplicities dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeDistribution {
    parts: BTreeMap<usize, usize>,
}

impl SizeDistribution {
    /// Builds from `(size, multiplicity)` pairs. Sizes must be positive and
    /// listed at most once.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CountError> {
        let mut parts = BTreeMap::new();
        for (size, mult) in pairs {
            if size == 0 {
                return Err(CountError::InvalidDistribution("sizes must be positive".into()));
            }
            if parts.insert(size, mult).is_some() {
                return Err(CountError::InvalidDistribution(format!("size {size} listed twice")));
            }
        }
        parts.retain(|_, m| *m > 0);
        Ok(SizeDistribution { parts })
    }

    /// The distribution of a list of observed sizes.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let mut parts = BTreeMap::new();
        for &s in sizes {
            *parts.entry(s).or_insert(0) += 1;
        }
        SizeDistribution { parts }
    }

    /// Sum of size times multiplicity.
    pub fn total(&self) -> usize {
        self.parts.iter().map(|(s, m)| s * m).sum()
    }

    /// Number of parts.
    pub fn count(&self) -> usize {
        self.parts.values().sum()
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.parts.get(&size).copied().unwrap_or(0)
    }

    pub fn min_size(&self) -> Option<usize> {
        self.parts.keys().next().copied()
    }

    /// `(size, multiplicity)` pairs in increasing size.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().map(|(&s, &m)| (s, m))
    }

    /// All partitions of `total` into parts of size at least `min_part`.
    pub fn partitions(total: usize, min_part: usize) -> Vec<SizeDistribution> {
        fn go(rest: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<SizeDistribution>) {
            if rest == 0 {
                out.push(SizeDistribution::from_sizes(cur));
                return;
            }
            for part in (min..=max.min(rest)).rev() {
                cur.push(part);
                go(rest - part, part, min, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(total, total, min_part.max(1), &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for SizeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.iter().map(|(s, m)| format!("{s}:{m}")).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for SizeDistribution {
    type Err = CountError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || CountError::InvalidDistribution(format!("expected \"size:count,...\", got {text:?}"));
        let pairs = text
            .split(',')
            .map(|pair| {
                let (s, m) = pair.trim().split_once(':').ok_or_else(bad)?;
                Ok((s.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<(usize, usize)>, CountError>>()?;
        SizeDistribution::new(pairs)
    }
}
