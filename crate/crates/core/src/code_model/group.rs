use super::strings::ZString;
use crate::error::{Error, Result};

/// Enumerates all products of a generator list in reflected Gray-code order.
///
/// Each item carries the index of the generator multiplied in to reach it from the
/// previous item (`None` for the leading identity).
pub struct GrayGroup<'a> {
    generators: &'a [ZString],
    current: ZString,
    step: u64,
    total: u64,
}

impl<'a> GrayGroup<'a> {
    pub fn new(generators: &'a [ZString], cap: usize) -> Result<Self> {
        if generators.len() > cap || generators.len() >= 64 {
            return Err(Error::GroupTooLarge { generators: generators.len(), cap });
        }
        Ok(GrayGroup {
            generators,
            current: ZString::identity(),
            step: 0,
            total: 1u64 << generators.len(),
        })
    }

    pub fn size(&self) -> u64 {
        self.total
    }
}

impl Iterator for GrayGroup<'_> {
    type Item = (ZString, Option<usize>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.step >= self.total {
            return None;
        }
        let flipped = if self.step == 0 {
            None
        } else {
            let g = self.step.trailing_zeros() as usize;
            self.current *= self.generators[g];
            Some(g)
        };
        self.step += 1;
        Some((self.current, flipped))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}
