//! The extended binary Golay code, built from the cyclic quadratic-residue
//! code of length 23 and checked before use.

use crate::error::{Error, Result};

/// Generator polynomial `1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11` of the
/// cyclic [23, 12, 7] Golay code, bit `i` = coefficient of `x^i`.
const CYCLIC_GENERATOR: u32 = 0b1100_0111_0101;

/// Codewords are 24-bit masks; bit 23 is the overall parity bit.
#[derive(Clone, Debug)]
pub struct GolayCode {
    generators: Vec<u32>,
    words: Vec<u32>,
}

impl GolayCode {
    pub fn new() -> Result<Self> {
        let generators: Vec<u32> = (0..12)
            .map(|i| {
                let w = CYCLIC_GENERATOR << i;
                w | ((w.count_ones() & 1) << 23)
            })
            .collect();
        let mut words = Vec::with_capacity(4096);
        for mask in 0u32..(1 << generators.len()) {
            let w = generators
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, g)| acc ^ g);
            words.push(w);
        }
        words.sort_unstable();
        words.dedup();
        let code = GolayCode { generators, words };
        code.verify()?;
        Ok(code)
    }

    fn verify(&self) -> Result<()> {
        if self.words.len() != 4096 {
            return Err(Error::Lattice(format!(
                "Golay code has {} words, expected 2^12",
                self.words.len()
            )));
        }
        if self.words.iter().any(|w| w >> 24 != 0) {
            return Err(Error::Lattice("Golay word longer than 24".into()));
        }
        let min = self.min_weight();
        if min != 8 {
            return Err(Error::Lattice(format!("Golay minimum weight {min} != 8")));
        }
        Ok(())
    }

    pub fn length(&self) -> usize {
        24
    }

    /// log2 of the number of codewords.
    pub fn dimension(&self) -> usize {
        self.words.len().trailing_zeros() as usize
    }

    pub fn min_weight(&self) -> u32 {
        self.words
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min()
            .unwrap_or(0)
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }
}
