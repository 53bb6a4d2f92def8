/// Published `(n, ℓ, P^M, P^U)` for `n <= 5`, `ℓ <= 4`, ordered by `ℓ` then `n`.
/// `P^L = n + ℓ` is exact and omitted.
pub const P_TABLE: [(u32, u32, f64, f64); 25] = [
    (1, 0, 1.18804, 1.37608),
    (2, 0, 2.59065, 3.18131),
    (3, 0, 3.99627, 4.99255),
    (4, 0, 5.40257, 6.80514),
    (5, 0, 6.80911, 8.61823),
    (1, 1, 2.18596, 2.37192),
    (2, 1, 3.57750, 4.15501),
    (3, 1, 4.97650, 5.95300),
    (4, 1, 6.37850, 7.75701),
    (5, 1, 7.78204, 9.56408),
    (1, 2, 3.18509, 3.37018),
    (2, 2, 4.57067, 5.14135),
    (3, 2, 5.96455, 6.92911),
    (4, 2, 7.36257, 8.72515),
    (5, 2, 8.76298, 10.52596),
    (1, 3, 4.18461, 4.36923),
    (2, 3, 5.56649, 6.13298),
    (3, 3, 6.95652, 7.91304),
    (4, 3, 8.35118, 9.70236),
    (5, 3, 9.74874, 11.49748),
    (1, 4, 5.18431, 5.36863),
    (2, 4, 6.56366, 7.12732),
    (3, 4, 7.95074, 8.90148),
    (4, 4, 9.34260, 10.68521),
    (5, 4, 10.73766, 12.47532),
];

pub const P_TABLE_TOLERANCE: f64 = 1e-4;

pub fn p_reference(n: u32, ell: u32) -> Option<(f64, f64)> {
    P_TABLE
        .iter()
        .find(|&&(rn, rl, _, _)| rn == n && rl == ell)
        .map(|&(_, _, mean, upper)| (mean, upper))
}
