use crate::Real;

/// Flat storage for `len` points of dimension `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    dim: usize,
    coords: Vec<T>,
}

impl<T: Real> PointSet<T> {
    pub fn new(dim: usize) -> Self {
        Self { dim, coords: Vec::new() }
    }

    pub fn from_flat(dim: usize, coords: Vec<T>) -> Self {
        assert!(dim > 0 && coords.len() % dim == 0, "flat coordinates must be a multiple of dim");
        Self { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn push(&mut self, p: &[T]) {
        assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub fn extend(&mut self, other: &PointSet<T>) {
        assert_eq!(self.dim, other.dim);
        self.coords.extend_from_slice(&other.coords);
    }

    pub fn flat(&self) -> &[T] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = &[T]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Keep the points for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(&[T]) -> bool) -> Self {
        let mut out = Self::new(self.dim);
        for p in self.iter() {
            if keep(p) {
                out.push(p);
            }
        }
        out
    }
}
