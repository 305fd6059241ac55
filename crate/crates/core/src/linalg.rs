//! Dense linear algebra over F_2 on packed bit vectors.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i);
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A subspace kept in reduced row echelon form, optionally tracking for
/// every row which input combination produced it.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    tags: Vec<BitVec>,
    tag_len: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon::with_tags(dim, 0)
    }

    fn with_tags(dim: usize, tag_len: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new(), tags: Vec::new(), tag_len }
    }

    pub fn from_vectors<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Echelon::new(dim);
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduces `v` against the stored rows and returns the remainder plus the
    /// tag combination that was subtracted.
    fn reduce_tagged(&self, mut v: BitVec, mut tag: BitVec) -> (BitVec, BitVec) {
        for (k, row) in self.rows.iter().enumerate() {
            if v.get(self.pivots[k]) {
                v.xor_assign(row);
                if self.tag_len > 0 {
                    tag.xor_assign(&self.tags[k]);
                }
            }
        }
        (v, tag)
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        self.reduce_tagged(v.clone(), BitVec::zeros(0)).0
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let tag = BitVec::zeros(self.tag_len);
        self.insert_tagged(v, tag).is_none()
    }

    /// Returns the dependency tag when `v` is already in the span.
    fn insert_tagged(&mut self, v: BitVec, tag: BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.dim);
        let (v, tag) = self.reduce_tagged(v, tag);
        let Some(p) = v.first_one() else {
            return Some(tag);
        };
        for k in 0..self.rows.len() {
            if self.rows[k].get(p) {
                self.rows[k].xor_assign(&v);
                if self.tag_len > 0 {
                    self.tags[k].xor_assign(&tag);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        self.tags.push(tag);
        None
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// Basis of `{ c : sum_j c_j images[j] = 0 }`, as vectors of length
/// `images.len()`.
pub fn kernel(dim: usize, images: &[BitVec]) -> Vec<BitVec> {
    let count = images.len();
    let mut e = Echelon::with_tags(dim, count);
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        if let Some(dep) = e.insert_tagged(img.clone(), BitVec::unit(count, j)) {
            out.push(dep);
        }
    }
    out
}

/// Basis of `{ c : sum_j c_j images[j] in target }`.
pub fn preimage(images: &[BitVec], target: &Echelon) -> Vec<BitVec> {
    let reduced: Vec<BitVec> = images.iter().map(|v| target.reduce(v)).collect();
    kernel(target.dim(), &reduced)
}
