use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::Order;
use crate::util::{lcm_u64, residue, residue_order};

/// A direct sum of cyclic groups `Z/n_1 ⊕ ... ⊕ Z/n_s`, with `n_i = 0`
/// standing for `Z`. Unlike `FgAbelian` specs the orders need not be in
/// invariant-factor form; abelianizations land here directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Self {
        AbelianGroup { orders }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.orders.len()]
    }

    pub fn unit(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero();
        v[i] = self.reduce_coord(i, BigInt::from(1));
        v
    }

    fn reduce_coord(&self, i: usize, x: BigInt) -> BigInt {
        match self.orders[i] {
            0 => x,
            n => residue(&x, n),
        }
    }

    pub fn reduce(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        v.into_iter()
            .enumerate()
            .map(|(i, x)| self.reduce_coord(i, x))
            .collect()
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(i, (x, y))| self.reduce_coord(i, x + y))
            .collect()
    }

    pub fn neg(&self, a: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .enumerate()
            .map(|(i, x)| self.reduce_coord(i, -x))
            .collect()
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
        a.iter()
            .enumerate()
            .map(|(i, x)| self.reduce_coord(i, x * k))
            .collect()
    }

    pub fn is_reduced(&self, a: &[BigInt]) -> bool {
        a.len() == self.orders.len()
            && a.iter()
                .zip(&self.orders)
                .all(|(x, &n)| n == 0 || (x >= &BigInt::zero() && x < &BigInt::from(n)))
    }

    pub fn order(&self, a: &[BigInt]) -> Order {
        let mut acc = 1u64;
        for (x, &n) in a.iter().zip(&self.orders) {
            if n == 0 {
                if !x.is_zero() {
                    return Order::Infinite;
                }
            } else {
                acc = lcm_u64(acc, residue_order(x, n));
            }
        }
        Order::Finite(acc)
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .map(|&n| {
                if n == 0 {
                    "Z".to_string()
                } else {
                    format!("Z_{n}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
