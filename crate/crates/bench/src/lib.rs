//! Fixture committees shared by the benchmarks.

use logroll_core::Committee;

/// `(name, intensities, kappa)` for committees of growing size.
pub fn fixtures() -> Vec<(&'static str, Committee)> {
    let raw: [(&str, &[i64], i64); 5] = [
        ("three", &[-4, 1, 5], 2),
        ("seven", &[-14, -8, 2, 4, 6, 8, 8], 3),
        ("ten", &[-9, -7, -4, -2, 1, 3, 5, 8, 12, 15], 6),
        ("twelve", &[-11, -9, -6, -3, -1, 2, 4, 5, 9, 10, 14, 20], 7),
        ("sixteen", &[-13, -12, -9, -8, -5, -3, -2, 1, 2, 4, 6, 9, 11, 14, 17, 22], 9),
    ];
    raw.iter()
        .map(|(name, u, kappa)| (*name, Committee::from_integers(u, *kappa).expect("valid fixture")))
        .collect()
}
