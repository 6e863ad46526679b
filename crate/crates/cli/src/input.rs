//! Loading matrices and permutations from files or inline text.

use std::path::Path;

use pavoid_core::format::{parse_text, Parsed};
use pavoid_core::highdim::DDimPermutation;
use pavoid_core::{BinaryMatrix, Permutation, Result};

/// Reads `arg` as a file if one exists at that path, otherwise as inline
/// text where `;` separates lines (`"2 2;10;01"`, `"1 3 2"`).
pub fn load(arg: &str) -> Result<Parsed> {
    if Path::new(arg).is_file() {
        return pavoid_core::format::parse_matrix_file(arg);
    }
    parse_text(&arg.replace(';', "\n"))
}

pub fn matrix(arg: &str) -> Result<BinaryMatrix> {
    load(arg)?.into_matrix()
}

pub fn permutation(arg: &str) -> Result<Permutation> {
    load(arg)?.into_permutation()
}

pub fn ddim(arg: &str) -> Result<DDimPermutation> {
    load(arg)?.into_ddim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_forms() {
        assert_eq!(matrix("2 2;10;01").unwrap(), Permutation::identity(2).to_matrix());
        assert_eq!(permutation("1 3 2").unwrap().images(), &[1, 3, 2]);
        assert_eq!(ddim("3 2;1 1 1;2 2 2").unwrap(), DDimPermutation::identity(3, 2).unwrap());
        assert!(matrix("2 2;1x;01").is_err());
    }
}
