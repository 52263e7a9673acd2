//! Shared inputs for the criterion benches.

use collatz_bits::BinaryNat;

/// Deterministic odd values with exactly `bits` binary digits.
pub fn odd_inputs(bits: u64, count: usize) -> Vec<BinaryNat> {
    // Linear congruential walk over the low bits; top and bottom bits forced to 1.
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    (0..count)
        .map(|_| {
            let mut n = BinaryNat::pow2(bits - 1).add(&BinaryNat::one());
            for i in 1..bits.saturating_sub(1) {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if state >> 63 == 1 {
                    n = n.add(&BinaryNat::pow2(i));
                }
            }
            n
        })
        .collect()
}
