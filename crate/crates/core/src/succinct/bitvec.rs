const WORD_BITS: usize = 64;
const WORDS_PER_SUPER: usize = 8;

/// Plain bit vector with a two-level rank directory.
///
/// Superblocks of 512 bits store absolute counts, words store counts relative
/// to their superblock. Select is a binary search over the directory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RsBitVector {
    words: Vec<u64>,
    len: usize,
    supers: Vec<u64>,
    blocks: Vec<u16>,
    ones: usize,
}

impl RsBitVector {
    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                words.push(0u64);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// Builds from packed little-endian words; bits past `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if !len.is_multiple_of(WORD_BITS) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % WORD_BITS)) - 1;
        }
        let mut supers = Vec::with_capacity(words.len() / WORDS_PER_SUPER + 1);
        let mut blocks = Vec::with_capacity(words.len());
        let mut total = 0u64;
        let mut within = 0u16;
        for (i, w) in words.iter().enumerate() {
            if i % WORDS_PER_SUPER == 0 {
                supers.push(total);
                within = 0;
            }
            blocks.push(within);
            let c = w.count_ones();
            within += c as u16;
            total += c as u64;
        }
        supers.push(total);
        RsBitVector {
            words,
            len,
            supers,
            blocks,
            ones: total as usize,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// Number of set bits in `[0, i)`. Panics if `i > len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank index {i} out of range {}", self.len);
        let w = i / WORD_BITS;
        if w == self.words.len() {
            return self.ones;
        }
        let base = self.supers[w / WORDS_PER_SUPER] as usize + self.blocks[w] as usize;
        let rem = i % WORD_BITS;
        if rem == 0 {
            base
        } else {
            base + (self.words[w] & ((1u64 << rem) - 1)).count_ones() as usize
        }
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th set bit (0-based).
    pub fn select1(&self, k: usize) -> Option<usize> {
        if k >= self.ones {
            return None;
        }
        self.select_by(k, |bv, w| bv.ones_before_word(w), |word| word)
    }

    /// Position of the `k`-th cleared bit (0-based).
    pub fn select0(&self, k: usize) -> Option<usize> {
        if k >= self.count_zeros() {
            return None;
        }
        self.select_by(
            k,
            |bv, w| w * WORD_BITS - bv.ones_before_word(w),
            |word| !word,
        )
    }

    #[inline]
    fn ones_before_word(&self, w: usize) -> usize {
        if w == self.words.len() {
            self.ones
        } else {
            self.supers[w / WORDS_PER_SUPER] as usize + self.blocks[w] as usize
        }
    }

    fn select_by(
        &self,
        k: usize,
        before: impl Fn(&Self, usize) -> usize,
        flip: impl Fn(u64) -> u64,
    ) -> Option<usize> {
        // last word whose preceding count is <= k
        let (mut lo, mut hi) = (0usize, self.words.len());
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before(self, mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut rest = k - before(self, lo);
        let mut word = flip(self.words[lo]);
        loop {
            let tz = word.trailing_zeros() as usize;
            if rest == 0 {
                let pos = lo * WORD_BITS + tz;
                return (pos < self.len).then_some(pos);
            }
            word &= word - 1;
            rest -= 1;
        }
    }
}
