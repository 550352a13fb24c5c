//! Bit-packed elimination over GF(2).
//!
//! Rows are packed into `u64` words; a row operation is a word-wise XOR.
//! The output is the same reduced row echelon form the generic routine
//! produces.

use super::Elem;

pub(crate) struct BitRows {
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    pub(crate) fn pack(rows: usize, cols: usize, data: &[Elem]) -> Self {
        let words = cols.div_ceil(64).max(1);
        let mut bits = vec![0u64; rows * words];
        for r in 0..rows {
            for c in 0..cols {
                if data[r * cols + c] & 1 == 1 {
                    bits[r * words + c / 64] |= 1 << (c % 64);
                }
            }
        }
        Self { cols, words, bits }
    }

    fn rows(&self) -> usize {
        self.bits.len() / self.words
    }

    #[inline]
    fn bit(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn xor_into(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for i in 0..w {
            let s = self.bits[src * w + i];
            self.bits[dst * w + i] ^= s;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            let w = self.words;
            for i in 0..w {
                self.bits.swap(a * w + i, b * w + i);
            }
        }
    }

    /// Gauss-Jordan in place; returns pivot columns.
    pub(crate) fn rref(&mut self) -> Vec<usize> {
        let rows = self.rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows {
                break;
            }
            let Some(found) = (r..rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            self.swap(r, found);
            for i in 0..rows {
                if i != r && self.bit(i, c) {
                    self.xor_into(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub(crate) fn unpack(&self) -> Vec<Elem> {
        let rows = self.rows();
        let mut out = vec![0; rows * self.cols];
        for r in 0..rows {
            for c in 0..self.cols {
                out[r * self.cols + c] = self.bit(r, c) as Elem;
            }
        }
        out
    }
}
