//! Built-in irreducible moduli.
//!
//! These are the Conway polynomials for `p` in {2, 3, 5, 7, 11, 13} and
//! extension degree `e <= 4`, written constant coefficient first. Each entry
//! is re-verified for irreducibility whenever an algebra is built from it.

const TABLE: &[(u64, &[&[u64]])] = &[
    (2, &[&[1, 1], &[1, 1, 1], &[1, 1, 0, 1], &[1, 1, 0, 0, 1]]),
    (3, &[&[1, 1], &[2, 2, 1], &[1, 2, 0, 1], &[2, 0, 0, 2, 1]]),
    (5, &[&[3, 1], &[2, 4, 1], &[3, 3, 0, 1], &[2, 4, 4, 0, 1]]),
    (7, &[&[4, 1], &[3, 6, 1], &[4, 0, 6, 1], &[3, 4, 5, 0, 1]]),
    (11, &[&[9, 1], &[2, 7, 1], &[9, 2, 0, 1], &[2, 10, 8, 0, 1]]),
    (13, &[&[11, 1], &[2, 12, 1], &[11, 2, 0, 1], &[2, 12, 3, 0, 1]]),
];

/// Default modulus for `F_{p^e}`, if the table has one.
pub fn default_modulus(p: u64, e: usize) -> Option<Vec<u64>> {
    TABLE
        .iter()
        .find(|(q, _)| *q == p)
        .and_then(|(_, polys)| polys.get(e.checked_sub(1)?))
        .map(|m| m.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfect_algebra::fp_poly::is_irreducible;

    #[test]
    fn every_table_entry_is_irreducible() {
        for (p, polys) in TABLE {
            for (i, m) in polys.iter().enumerate() {
                assert_eq!(m.len(), i + 2);
                assert_eq!(*m.last().unwrap(), 1);
                assert!(is_irreducible(m, *p), "p={p} e={}", i + 1);
            }
        }
    }

    #[test]
    fn f4_uses_g_squared_plus_g_plus_one() {
        assert_eq!(default_modulus(2, 2), Some(vec![1, 1, 1]));
        assert_eq!(default_modulus(2, 5), None);
        assert_eq!(default_modulus(17, 1), None);
    }
}
