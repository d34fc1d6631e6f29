//! Monomials in at most 16 variables with exponents below 128, packed one
//! byte per variable into a `u128` so lcm and divisibility are word ops.

use crate::algebra::Monomial;

pub const MAX_LANES: usize = 16;
const MAX_EXP: u8 = 127;
const HIGH: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;
const LOW: u128 = 0x0101_0101_0101_0101_0101_0101_0101_0101;

pub fn fits(gens: &[Monomial]) -> bool {
    gens.first().is_none_or(|g| g.n() <= MAX_LANES)
        && gens.iter().all(|g| g.exponents().iter().all(|&e| e <= MAX_EXP))
}

pub fn pack(m: &Monomial) -> u128 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &e)| acc | (e as u128) << (8 * i))
}

pub fn unpack(p: u128, n: usize) -> Monomial {
    let mut m = Monomial::one(n);
    for i in 0..n {
        m.set(i, (p >> (8 * i)) as u8);
    }
    m
}

/// High bit of each byte set where `a ≥ b`.
#[inline]
fn ge_bits(a: u128, b: u128) -> u128 {
    ((a | HIGH) - b) & HIGH
}

#[inline]
pub fn lcm(a: u128, b: u128) -> u128 {
    let mask = (ge_bits(a, b) >> 7) * 0xFF;
    (a & mask) | (b & !mask)
}

#[inline]
pub fn divides(g: u128, m: u128) -> bool {
    ge_bits(m, g) == HIGH
}

/// Bitmask of lanes `j < n` with `g_j < m_j`.
#[inline]
pub fn lt_lanes(g: u128, m: u128, n: usize) -> u32 {
    let lt = (!ge_bits(g, m) & HIGH) >> 7;
    let gather = |x: u64| ((x & LOW as u64).wrapping_mul(0x0102_0408_1020_4080) >> 56) as u32;
    let bits = gather(lt as u64) | gather((lt >> 64) as u64) << 8;
    bits & ((1u32 << n) - 1)
}
