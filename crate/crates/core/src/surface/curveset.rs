use serde::{Deserialize, Serialize};

/// Set of curve indices stored as a bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveSet(pub u64);

impl CurveSet {
    pub fn full(n: usize) -> Self {
        CurveSet(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(c: usize) -> Self {
        CurveSet(1 << c)
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = CurveSet::default();
        for c in it {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: usize) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1 << c);
    }

    pub fn contains(self, c: usize) -> bool {
        c < 64 && self.0 >> c & 1 == 1
    }

    pub fn contains_set(self, other: CurveSet) -> bool {
        other.0 & !self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn union(self, o: CurveSet) -> Self {
        CurveSet(self.0 | o.0)
    }

    pub fn intersection(self, o: CurveSet) -> Self {
        CurveSet(self.0 & o.0)
    }

    pub fn minus(self, o: CurveSet) -> Self {
        CurveSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: CurveSet) -> bool {
        self.0 & o.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(c)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Serialize for CurveSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for CurveSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&c| c >= 64) {
            return Err(serde::de::Error::custom(format!("curve index {bad} out of range")));
        }
        let set = CurveSet::from_indices(v.iter().copied());
        if set.len() != v.len() || v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom("curve indices must be strictly increasing"));
        }
        Ok(set)
    }
}
