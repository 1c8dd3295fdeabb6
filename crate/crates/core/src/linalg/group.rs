use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{invariant_factors, IntMatrix};

/// `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_m` with `1 < t_1 | t_2 | … | t_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// From the invariant factors of a relation matrix; unit factors are dropped.
    pub(crate) fn from_smith(free_rank: usize, factors: &[BigInt]) -> Self {
        AbelianGroupStructure {
            free_rank,
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    /// `Z^free ⊕ ⊕_i Z/orders_i`, for arbitrary integers: `Z/0` counts as a
    /// free summand, `Z/±1` vanishes, signs are ignored, and the torsion is
    /// brought into divisibility order.
    pub fn from_cyclic_orders(free: usize, orders: &[BigInt]) -> Self {
        let extra_free = orders.iter().filter(|d| d.is_zero()).count();
        let finite: Vec<BigInt> = orders.iter().filter(|d| !d.is_zero()).map(|d| d.abs()).collect();
        let factors = invariant_factors(&IntMatrix::diagonal(&finite));
        Self::from_smith(free + extra_free, &factors)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

// Torsion orders are written as JSON numbers when they fit in u64 and as
// decimal strings otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Order {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    rank: usize,
    torsion: Vec<Order>,
}

impl Serialize for AbelianGroupStructure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GroupJson {
            rank: self.free_rank,
            torsion: self
                .torsion
                .iter()
                .map(|t| t.to_u64().map_or_else(|| Order::Big(t.to_string()), Order::Small))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianGroupStructure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GroupJson::deserialize(d)?;
        let orders = raw
            .torsion
            .into_iter()
            .map(|o| match o {
                Order::Small(v) => Ok(BigInt::from(v)),
                Order::Big(s) => s.parse::<BigInt>().map_err(D::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbelianGroupStructure::from_cyclic_orders(raw.rank, &orders))
    }
}
