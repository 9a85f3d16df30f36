use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Invariant factors `d₁ | d₂ | … ` of a finitely generated torsion module
/// over a PID, with the unit factors counted but not listed.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct InvariantFactorList {
    pub units: usize,
    /// Positive, non-unit, each dividing the next.
    #[serde(with = "serde_bigints")]
    pub factors: Vec<BigInt>,
}

impl InvariantFactorList {
    /// Normalizes an arbitrary list of nonzero diagonal entries into invariant
    /// factor form (repeated gcd/lcm exchange). Zeros are ignored.
    pub fn from_nonzero_diagonal<'a, I>(diag: I) -> Self
    where
        I: IntoIterator<Item = &'a BigInt>,
    {
        let mut d: Vec<BigInt> = diag
            .into_iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.abs())
            .collect();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
        let units = d.iter().filter(|x| x.is_one()).count();
        let factors = d.into_iter().filter(|x| !x.is_one()).collect();
        InvariantFactorList { units, factors }
    }

    /// Number of non-unit factors.
    pub fn count(&self) -> usize {
        self.factors.len()
    }
}

/// Serde adapter storing integers as decimal strings.
pub mod serde_bigints {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }

    /// One list per degree.
    pub mod nested {
        use num_bigint::BigInt;
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|s| s.parse().map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}
