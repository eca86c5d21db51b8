//! Partial-derivative symbols of the dilaton function.

use std::fmt;

/// A coordinate direction on the base, `1..=4`.
pub type Direction = u8;

/// The symbol `f_I` for a sorted multi-index `I` over the base directions.
///
/// Mixed partials commute, so the index is kept sorted non-decreasingly and
/// `f_12` and `f_21` are the same symbol. The index is never empty: the bare
/// dilaton value enters expressions only through integer powers of `e^f`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetSymbol {
    index: Vec<Direction>,
}

impl JetSymbol {
    /// Builds `f_I`; the directions are sorted internally.
    ///
    /// Panics if the index is empty or contains a direction outside `1..=4`.
    pub fn new(index: &[Direction]) -> Self {
        assert!(!index.is_empty(), "jet index must be non-empty");
        assert!(
            index.iter().all(|&i| (1..=4).contains(&i)),
            "jet directions must lie in 1..=4"
        );
        let mut index = index.to_vec();
        index.sort_unstable();
        Self { index }
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.index
    }

    /// The symbol for `∂_i f_I`, i.e. `f_{sort(I ∪ {i})}`.
    pub fn derive(&self, i: Direction) -> Self {
        let mut index = self.index.clone();
        index.push(i);
        index.sort_unstable();
        Self { index }
    }
}

impl fmt::Display for JetSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f")?;
        for d in &self.index {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Shorthand constructor, `jet(&[1,2])` is `f_12`.
pub fn jet(index: &[Direction]) -> JetSymbol {
    JetSymbol::new(index)
}
