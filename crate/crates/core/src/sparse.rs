/// Row-compressed sparse matrix with `u32` column ids, strictly increasing
/// within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseRows<T> {
    offsets: Vec<usize>,
    indices: Vec<u32>,
    values: Vec<T>,
}

impl<T: Copy> SparseRows<T> {
    pub fn empty(n_rows: usize) -> Self {
        SparseRows {
            offsets: vec![0; n_rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Assemble from per-row entry lists. Each row must already be sorted by
    /// strictly increasing column id.
    pub fn from_rows<I>(rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<(u32, T)>>,
    {
        let mut offsets = vec![0];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for row in rows {
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            for (c, v) in row {
                indices.push(c);
                values.push(v);
            }
            offsets.push(indices.len());
        }
        SparseRows {
            offsets,
            indices,
            values,
        }
    }

    pub(crate) fn from_raw(offsets: Vec<usize>, indices: Vec<u32>, values: Vec<T>) -> Self {
        SparseRows {
            offsets,
            indices,
            values,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn row(&self, r: usize) -> (&[u32], &[T]) {
        let (lo, hi) = (self.offsets[r], self.offsets[r + 1]);
        (&self.indices[lo..hi], &self.values[lo..hi])
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.offsets[r + 1] - self.offsets[r]
    }

    pub fn get(&self, r: usize, c: u32) -> Option<T> {
        let (idx, vals) = self.row(r);
        idx.binary_search(&c).ok().map(|i| vals[i])
    }

    pub fn iter_row(&self, r: usize) -> impl Iterator<Item = (u32, T)> + '_ {
        let (idx, vals) = self.row(r);
        idx.iter().copied().zip(vals.iter().copied())
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Apply `f(row, col, value)` to every stored entry, keeping the layout.
    pub fn map_values<U, F>(&self, mut f: F) -> SparseRows<U>
    where
        F: FnMut(usize, u32, T) -> U,
    {
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.n_rows() {
            for (c, v) in self.iter_row(r) {
                values.push(f(r, c, v));
            }
        }
        SparseRows {
            offsets: self.offsets.clone(),
            indices: self.indices.clone(),
            values,
        }
    }
}
