/// Fixed-length bit set with the shift-or needed by subset-sum tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self |= src << shift`, truncated to the length.
    pub fn or_shifted(&mut self, src: &BitSet, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        for i in (ws..self.words.len()).rev() {
            let lo = src.words[i - ws] << bs;
            let hi = if bs > 0 && i > ws { src.words[i - ws - 1] >> (64 - bs) } else { 0 };
            self.words[i] |= lo | hi;
        }
        self.trim();
    }

    /// `self |= src >> shift`.
    pub fn or_shifted_down(&mut self, src: &BitSet, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let n = self.words.len();
        for i in 0..n.saturating_sub(ws) {
            let lo = src.words[i + ws] >> bs;
            let hi = if bs > 0 && i + ws + 1 < n { src.words[i + ws + 1] << (64 - bs) } else { 0 };
            self.words[i] |= lo | hi;
        }
        self.trim();
    }

    /// `self |= rotate_up(src, shift)` on a cyclic index space of size `len`.
    pub fn or_rotated(&mut self, src: &BitSet, shift: usize) {
        let shift = shift % self.len.max(1);
        if shift == 0 {
            for (d, s) in self.words.iter_mut().zip(&src.words) {
                *d |= s;
            }
            return;
        }
        self.or_shifted(src, shift);
        self.or_shifted_down(src, self.len - shift);
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_against_naive() {
        for len in [1usize, 63, 64, 65, 130] {
            for shift in [0usize, 1, 5, 63, 64, 65, 100] {
                let mut src = BitSet::new(len);
                for i in (0..len).step_by(3) {
                    src.set(i);
                }
                let mut up = BitSet::new(len);
                up.or_shifted(&src, shift);
                let mut rot = BitSet::new(len);
                rot.or_rotated(&src, shift);
                for i in 0..len {
                    assert_eq!(up.get(i), i >= shift && src.get(i - shift));
                    let from = (i + len - shift % len) % len;
                    assert_eq!(rot.get(i), src.get(from), "len {len} shift {shift} i {i}");
                }
            }
        }
    }
}
