use std::fmt;

use crate::error::{Error, Result};
use crate::exactbase::is_prime;

/// Finite abelian p-group `⊕ Z/p^{r_i}`, exponents non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianPGroup {
    p: u32,
    exponents: Vec<u32>,
}

impl AbelianPGroup {
    pub fn new(p: u32, mut exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("p = {p} is not prime")));
        }
        exponents.retain(|&r| r > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(AbelianPGroup { p, exponents })
    }

    pub fn trivial(p: u32) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// Parses cyclic orders such as `[2, 4]`; every order must be a power of `p`.
    pub fn from_orders(p: u32, orders: &[u64]) -> Result<Self> {
        let mut exps = Vec::new();
        for &o in orders {
            let r = p_log(p, o).ok_or_else(|| {
                Error::invalid(format!("cyclic order {o} is not a power of {p}"))
            })?;
            exps.push(r);
        }
        Self::new(p, exps)
    }

    /// Infers `p` from the orders (all must be powers of one prime).
    pub fn parse_orders(orders: &[u64]) -> Result<Self> {
        let Some(&first) = orders.iter().find(|&&o| o > 1) else {
            return Self::trivial(2);
        };
        let mut p = 2u64;
        while first % p != 0 {
            p += 1;
        }
        Self::from_orders(p as u32, orders)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Orders of the cyclic factors, largest first.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        self.exponents.iter().map(|&r| (self.p as u64).pow(r)).collect()
    }

    pub fn order(&self) -> u64 {
        self.cyclic_orders().iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `r_1`, the log of the exponent (0 for the trivial group).
    pub fn max_exponent(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    pub fn presentation(&self) -> GroupPresentation {
        GroupPresentation::new(self.cyclic_orders())
    }
}

impl fmt::Display for AbelianPGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.presentation())
    }
}

pub(crate) fn p_log(p: u32, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut r = 0;
    while n % p as u64 == 0 {
        n /= p as u64;
        r += 1;
    }
    (n == 1).then_some(r)
}

/// Finite abelian group given by invariant factors, listed so that each
/// divides the next. Factors equal to 1 are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupPresentation {
    factors: Vec<u64>,
}

impl GroupPresentation {
    /// Canonicalizes an arbitrary list of cyclic orders of a p-group.
    ///
    /// For p-groups sorting ascending is already the divisibility chain.
    pub fn new(mut factors: Vec<u64>) -> Self {
        factors.retain(|&f| f > 1);
        factors.sort_unstable();
        GroupPresentation { factors }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Recovers a p-group from `counts[j] = |G[p^j]|`, the number of elements
    /// killed by `p^j`, for `j = 0, 1, ...` until the whole group is reached.
    ///
    /// `log_p counts[j] = Σ_i min(j, r_i)`, so consecutive differences count
    /// the cyclic factors of exponent at least `j`.
    pub fn from_torsion_counts(p: u32, counts: &[u64]) -> Result<Self> {
        let logs = counts
            .iter()
            .map(|&c| p_log(p, c).ok_or_else(|| Error::Internal(format!("torsion count {c} is not a power of {p}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut at_least = Vec::new();
        for j in 1..logs.len() {
            if logs[j] < logs[j - 1] {
                return Err(Error::Internal("torsion counts must be non-decreasing".into()));
            }
            at_least.push(logs[j] - logs[j - 1]);
        }
        let mut factors = Vec::new();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            if at_least[j] < next {
                return Err(Error::Internal("inconsistent torsion counts".into()));
            }
            for _ in 0..at_least[j] - next {
                factors.push((p as u64).pow(j as u32 + 1));
            }
        }
        Ok(Self::new(factors))
    }

    /// Invariant factors of a finite abelian p-group from the orders of all
    /// of its elements.
    pub fn from_element_orders(p: u32, orders: impl IntoIterator<Item = u64>) -> Result<Self> {
        let orders: Vec<u64> = orders.into_iter().collect();
        let max = orders.iter().copied().max().unwrap_or(1);
        let top = p_log(p, max).ok_or_else(|| Error::Internal(format!("element order {max} is not a power of {p}")))?;
        let counts: Vec<u64> = (0..=top)
            .map(|j| {
                let bound = (p as u64).pow(j);
                orders.iter().filter(|&&o| bound % o == 0).count() as u64
            })
            .collect();
        Self::from_torsion_counts(p, &counts)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let a = AbelianPGroup::from_orders(2, &[2, 4]).unwrap();
        assert_eq!(a.exponents(), &[2, 1]);
        assert_eq!(a.presentation().factors(), &[2, 4]);
        assert_eq!(a.to_string(), "Z/2 ⊕ Z/4");
        assert_eq!(AbelianPGroup::trivial(3).unwrap().to_string(), "0");
    }

    #[test]
    fn torsion_counts_roundtrip() {
        // Z/2 ⊕ Z/8: |G[1]|=1, |G[2]|=4, |G[4]|=8, |G[8]|=16
        let g = GroupPresentation::from_torsion_counts(2, &[1, 4, 8, 16]).unwrap();
        assert_eq!(g.factors(), &[2, 8]);
        let g = GroupPresentation::from_torsion_counts(3, &[1, 3, 9]).unwrap();
        assert_eq!(g.factors(), &[9]);
    }

    #[test]
    fn element_orders_of_z4() {
        let g = GroupPresentation::from_element_orders(2, [1, 4, 2, 4]).unwrap();
        assert_eq!(g.factors(), &[4]);
    }

    #[test]
    fn non_power_rejected() {
        assert!(AbelianPGroup::from_orders(2, &[6]).is_err());
    }
}
