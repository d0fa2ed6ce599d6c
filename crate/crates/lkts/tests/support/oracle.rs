//! Brute-force facts about `F_q^n` for prime `q`, using integer arithmetic
//! mod `q` only. Point ids follow the library layout: lexicographic, first
//! coordinate most significant.

use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy)]
pub struct PrimeSpace {
    pub q: u32,
    pub n: u32,
}

impl PrimeSpace {
    pub fn size(&self) -> u32 {
        self.q.pow(self.n)
    }

    pub fn decode(&self, mut id: u32) -> Vec<u32> {
        let mut v = vec![0; self.n as usize];
        for c in v.iter_mut().rev() {
            *c = id % self.q;
            id /= self.q;
        }
        v
    }

    pub fn encode(&self, v: &[u32]) -> u32 {
        v.iter().fold(0, |acc, &c| acc * self.q + c)
    }

    fn sub(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(a, b)| (a + self.q - b) % self.q).collect()
    }

    /// All 2x2 minors vanish.
    pub fn dependent(&self, x: &[u32], y: &[u32]) -> bool {
        let q = self.q as u64;
        (0..x.len()).all(|i| {
            (i + 1..x.len()).all(|j| (x[i] as u64 * y[j] as u64 + q * q - x[j] as u64 * y[i] as u64).is_multiple_of(q))
        })
    }

    /// `{x, y, -x-y}` with `x, y` independent, as sorted id triples.
    pub fn zero_sum_noncollinear(&self) -> BTreeSet<[u32; 3]> {
        let vs: Vec<_> = (0..self.size()).map(|id| self.decode(id)).collect();
        let mut out = BTreeSet::new();
        for x in &vs {
            for y in &vs {
                if self.dependent(x, y) {
                    continue;
                }
                let z: Vec<u32> = x.iter().zip(y).map(|(a, b)| (2 * self.q - a - b) % self.q).collect();
                let mut t = [self.encode(x), self.encode(y), self.encode(&z)];
                t.sort();
                out.insert(t);
            }
        }
        out
    }

    pub fn count_noncollinear(&self) -> u64 {
        let vs: Vec<_> = (0..self.size()).map(|id| self.decode(id)).collect();
        let mut count = 0;
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let d = self.sub(&vs[b], &vs[a]);
                for c in b + 1..vs.len() {
                    if !self.dependent(&d, &self.sub(&vs[c], &vs[a])) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Ids of the line through 0 and `dir`.
    pub fn line(&self, dir: &[u32]) -> BTreeSet<u32> {
        (0..self.q).map(|s| self.encode(&dir.iter().map(|&c| c * s % self.q).collect::<Vec<_>>())).collect()
    }
}
