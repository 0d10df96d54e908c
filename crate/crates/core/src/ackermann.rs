//! The Ackermann bijection between canonical sets and naturals, `code(x) = Σ_{y∈x} 2^code(y)`.
//!
//! This is arithmetic on bit positions only; it never consults the canonical order, which is
//! what makes it usable as an oracle for it.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::iset::ISet;

/// Largest member code whose power of two we are willing to materialize.
pub const MAX_SHIFT: u64 = 1 << 24;

/// The Ackermann code of `x`.
///
/// Codes grow as towers of exponentials, so this fails with [`Error::BudgetExceeded`] once a
/// member's code exceeds [`MAX_SHIFT`] (the result would need more than 2^24 bits).
pub fn ackermann_code(x: &ISet) -> Result<BigUint> {
    let mut memo: HashMap<u64, BigUint> = HashMap::new();
    code_memo(x, &mut memo)
}

fn code_memo(x: &ISet, memo: &mut HashMap<u64, BigUint>) -> Result<BigUint> {
    if let Some(c) = memo.get(&x.id()) {
        return Ok(c.clone());
    }
    let mut code = BigUint::zero();
    for m in x.members() {
        let exponent = code_memo(m, memo)?;
        let shift = exponent
            .to_u64()
            .filter(|&s| s <= MAX_SHIFT)
            .ok_or_else(|| Error::BudgetExceeded {
                what: "ackermann code exponent",
                needed: format!("a member with a {}-bit code", exponent.bits()),
                cap: MAX_SHIFT,
            })?;
        code.set_bit(shift, true);
    }
    memo.insert(x.id(), code.clone());
    Ok(code)
}

/// The code of `x` if it fits in a `u64`.
pub fn code_u64(x: &ISet) -> Option<u64> {
    let mut code = 0u64;
    for m in x.members() {
        let shift = code_u64(m)?;
        if shift >= 64 {
            return None;
        }
        code |= 1u64 << shift;
    }
    Some(code)
}

/// The set whose code is `n`; fails beyond the configured code bound.
pub fn from_ackermann(n: &BigUint) -> Result<ISet> {
    from_ackermann_with(n, &Budget::current())
}

pub fn from_ackermann_with(n: &BigUint, budget: &Budget) -> Result<ISet> {
    match n.to_u64().filter(|&v| v < budget.code_bound) {
        Some(v) => Ok(from_code_u64(v)),
        None => Err(Error::BudgetExceeded {
            what: "ackermann code",
            needed: n.to_string(),
            cap: budget.code_bound,
        }),
    }
}

/// Decodes a machine-word code. Members are the bit positions, which are already in
/// canonical order.
pub fn from_code_u64(n: u64) -> ISet {
    let members = (0..64u64)
        .filter(|&bit| n >> bit & 1 == 1)
        .map(from_code_u64)
        .collect();
    ISet::intern_sorted(members)
}

/// All sets with code below `code_bound`, in code order.
pub fn enumerate_upto(code_bound: u64) -> Result<Vec<ISet>> {
    enumerate_upto_with(code_bound, &Budget::current())
}

pub fn enumerate_upto_with(code_bound: u64, budget: &Budget) -> Result<Vec<ISet>> {
    Budget::check("enumeration code bound", code_bound, budget.code_bound)?;
    let mut table: Vec<ISet> = Vec::with_capacity(code_bound as usize);
    for n in 0..code_bound {
        let members = (0..64u64)
            .filter(|&bit| n >> bit & 1 == 1)
            .map(|bit| table[bit as usize].clone())
            .collect();
        table.push(ISet::intern_sorted(members));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_codes() {
        let e = ISet::empty();
        let one = ISet::singleton(e.clone());
        assert_eq!(ackermann_code(&e).unwrap(), BigUint::from(0u32));
        assert_eq!(ackermann_code(&one).unwrap(), BigUint::from(1u32));
        let three = ISet::sup0([e.clone(), one.clone()]).unwrap();
        assert_eq!(ackermann_code(&three).unwrap(), BigUint::from(3u32));
        assert_eq!(code_u64(&three), Some(3));
    }

    #[test]
    fn enumerate_first_four() {
        let e = ISet::empty();
        let one = ISet::singleton(e.clone());
        let two = ISet::singleton(one.clone());
        let three = ISet::sup0([e.clone(), one.clone()]).unwrap();
        assert_eq!(enumerate_upto(4).unwrap(), vec![e, one, two, three]);
        assert_eq!(enumerate_upto(1 << 10).unwrap().len(), 1 << 10);
    }

    #[test]
    fn decode_round_trip_and_bounds() {
        for n in 0..4096u64 {
            let s = from_ackermann(&BigUint::from(n)).unwrap();
            assert_eq!(code_u64(&s), Some(n));
        }
        assert!(matches!(
            from_ackermann_with(&BigUint::from(1u64 << 16), &Budget::DEFAULT),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(enumerate_upto_with((1 << 16) + 1, &Budget::DEFAULT).is_err());
    }

    #[test]
    fn huge_codes_are_refused() {
        // code(#5) is about 2^2059, so the code of #6 would need that many bits.
        let mut x = ISet::empty();
        for _ in 0..6 {
            x = x.insert(x.clone());
        }
        assert!(matches!(
            ackermann_code(&x),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
