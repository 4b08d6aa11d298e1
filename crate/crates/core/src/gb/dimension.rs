use std::fmt;

use super::{Ideal, Submodule};
use crate::polyring::matrix_support::combinations;

/// Length of a module over `k`: finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// Size of the largest set of variables containing the support of no
/// leading monomial.
pub(super) fn krull_dimension(ideal: &Ideal) -> i64 {
    let gb = ideal.gb();
    if gb.is_unit() {
        return -1;
    }
    let n = ideal.nvars();
    let leads = gb.leading_monomials();
    for size in (0..=n).rev() {
        for set in combinations(n, size) {
            let independent = leads.iter().all(|m| m.support().any(|v| !set.contains(&v)));
            if independent {
                return size as i64;
            }
        }
    }
    unreachable!("the empty set is independent for a proper ideal")
}

/// Standard monomials of the relation module, summed over positions.
pub(super) fn module_vs_dimension(relations: &Submodule) -> Length {
    let gb = relations.gb();
    let n = relations.nvars();
    let leads = gb.leading_terms();
    let mut total: u64 = 0;
    for pos in 0..relations.rank() {
        let here: Vec<&[u32]> = leads
            .iter()
            .filter(|(p, _)| *p == pos)
            .map(|(_, m)| m.exponents())
            .collect();
        if here.iter().any(|e| e.iter().all(|&x| x == 0)) {
            continue;
        }
        // staircase box: smallest pure power of each variable
        let mut bounds = Vec::with_capacity(n);
        for v in 0..n {
            let pure = here
                .iter()
                .filter(|e| e.iter().enumerate().all(|(i, &x)| i == v || x == 0))
                .map(|e| e[v])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Length::Infinite,
            }
        }
        total += count_standard(&bounds, &here);
    }
    Length::Finite(total)
}

fn count_standard(bounds: &[u32], leads: &[&[u32]]) -> u64 {
    let n = bounds.len();
    let mut exp = vec![0u32; n];
    let mut count = 0u64;
    loop {
        if !leads
            .iter()
            .any(|l| l.iter().zip(&exp).all(|(a, b)| a <= b))
        {
            count += 1;
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            exp[i] += 1;
            if exp[i] < bounds[i] {
                break;
            }
            exp[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::ModulePresentation;
    use crate::parse::parse_poly;
    use crate::polyring::RingContext;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let ctx = RingContext::new(vars).unwrap();
        Ideal::new(
            ctx.nvars(),
            gens.iter().map(|g| parse_poly(g, &ctx).unwrap()).collect(),
        )
    }

    #[test]
    fn krull() {
        let xyz = ["x", "y", "z"];
        assert_eq!(ideal(&xyz, &["x^2 + y^3", "z"]).krull_dimension(), 1);
        assert_eq!(ideal(&xyz, &[]).krull_dimension(), 3);
        assert_eq!(ideal(&xyz, &["x", "y", "z"]).krull_dimension(), 0);
        assert_eq!(ideal(&xyz, &["x*y - 1", "x"]).krull_dimension(), -1);
    }

    #[test]
    fn vector_space_dimension() {
        let xyz = ["x", "y", "z"];
        let dim = |i: Ideal| ModulePresentation::cyclic(&i).vs_dimension();
        assert_eq!(dim(ideal(&xyz, &["x", "y", "z"])), Length::Finite(1));
        assert_eq!(
            dim(ideal(&xyz, &["x", "x^2 + y^3", "z"])),
            Length::Finite(3)
        );
        assert_eq!(dim(ideal(&["x", "y"], &["x"])), Length::Infinite);
        assert_eq!(dim(ideal(&xyz, &["1"])), Length::Finite(0));
    }
}
