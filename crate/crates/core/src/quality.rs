use crate::{Error, Result, Scalar};

/// Non-increasing vector of position weights (`alpha` or `beta`).
///
/// Positions are 1-based; [`QualityVector::weight`] returns zero for any
/// position beyond the last one.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> QualityVector<T> {
    /// Strictly positive, non-increasing weights.
    pub fn new(entries: Vec<T>) -> Result<Self> {
        Self::validate(&entries, true)?;
        Ok(Self { entries })
    }

    /// Non-negative, non-increasing weights.
    ///
    /// Trailing zeros are allowed so that the zero-weight corner cases of the
    /// equilibrium characterizations can be exercised.
    pub fn with_zeros(entries: Vec<T>) -> Result<Self> {
        Self::validate(&entries, false)?;
        Ok(Self { entries })
    }

    fn validate(entries: &[T], strict: bool) -> Result<()> {
        if entries.is_empty() {
            return Err(Error::InvalidQuality("no positions".into()));
        }
        for (j, w) in entries.iter().enumerate() {
            if strict && !w.is_strictly_positive() {
                return Err(Error::InvalidQuality(format!(
                    "entry {} is {:?}, must be positive",
                    j + 1,
                    w
                )));
            }
            if w.is_strictly_negative() {
                return Err(Error::InvalidQuality(format!(
                    "entry {} is {:?}, must be non-negative",
                    j + 1,
                    w
                )));
            }
            if w.partial_cmp(w).is_none() {
                return Err(Error::InvalidQuality(format!(
                    "entry {} is not a number",
                    j + 1
                )));
            }
        }
        if let Some(j) = entries.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidQuality(format!(
                "entries must be non-increasing, but entry {} < entry {}",
                j + 1,
                j + 2
            )));
        }
        Ok(())
    }

    /// Number of positions `k`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weight of 1-based `position`; zero when `position > k`.
    pub fn weight(&self, position: usize) -> T {
        assert!(position >= 1, "positions are 1-based");
        self.entries
            .get(position - 1)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// `weight(j) - weight(j + 1)`.
    pub fn step(&self, position: usize) -> T {
        self.weight(position) - self.weight(position + 1)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn to_f64(&self) -> QualityVector<f64> {
        QualityVector {
            entries: self.entries.iter().map(Scalar::to_f64_lossy).collect(),
        }
    }
}
