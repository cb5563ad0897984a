//! Hard-coded integer prefixes for catalog entries whose kernels reference
//! published integer series without a simple generation rule in scope.
//! Each table carries 24 terms; catalog b-vectors built from them are
//! finite, so indices past the prefix evaluate to zero.

/// OEIS A074664 with alternating use: `b = [1, 0, -A074664[1], -A074664[2], ...]`
/// steers the recurrence onto the Bell numbers.
pub const BELL_B_TAIL: [i64; 22] = [
    1, 2, 6, 22, 92, 426, 2146, 11624, 67146, 411142, 2656052, 18035178,
    128318314, 954086192, 7396278762, 59659032142, 499778527628,
    4341025729290, 39035256389026, 362878164902216, 3482882959111530,
    34472032118214598,
];

/// Bell numbers (A000110), the expected output of the entry above.
pub const BELL: [i64; 24] = [
    1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597,
    27644437, 190899322, 1382958545, 10480142147, 82864869804, 682076806159,
    5832742205057, 51724158235372, 474869816156751, 4506715738447323,
    44152005855084346,
];

/// OEIS A308986 excluding its first two values (signs preserved);
/// `b = [1, -1, 2, -4, ...]` produces Gould's sequence.
pub const GOULD_B: [i64; 24] = [
    1, -1, 2, -4, 10, -20, 36, -72, 154, -308, 596, -1192, 2420, -4840,
    9608, -19216, 38586, -77172, 154036, -308072, 616740, -1233480,
    2465768, -4931536,
];

/// Gould's sequence (A001316): number of odd entries in row n of Pascal's
/// triangle.
pub const GOULD: [i64; 24] = [
    1, 2, 2, 4, 2, 4, 4, 8, 2, 4, 4, 8, 4, 8, 8, 16, 2, 4, 4, 8, 4, 8, 8, 16,
];

/// OEIS A006922 (coefficients of 1/Δ(q) up to the leading power) excluding
/// its first two values; `b = [1, 25, 324, ...]` produces Ramanujan's tau.
pub const TAU_B: [i64; 24] = [
    1, 25, 324, 3200, 25650, 176256, 1073720, 5930496, 30178575, 143184000,
    639249300, 2705114880, 10914317934, 42189811200, 156883829400,
    563116739584, 1956790259235, 6599620022400, 21651325216200,
    69228721526400, 216108718571250, 659641645039360, 1971466420726656,
    5776331152550400,
];

/// Ramanujan's tau function (A000594), the expected output of the entry
/// above.
pub const TAU: [i64; 24] = [
    1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
    534612, -370944, -577738, 401856, 1217160, 987136, -6905934, 2727432,
    10661420, -7109760, -4219488, -12830688, 18643272, 21288960,
];

/// Motzkin numbers (A001006); `b = [1, 0, -M0, -M1, ...]` reproduces them.
pub const MOTZKIN: [i64; 24] = [
    1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511, 41835, 113634,
    310572, 853467, 2356779, 6536382, 18199284, 50852019, 142547559,
    400763223, 1129760415,
];

/// Catalan numbers (A000108), used both as a kernel tail and as an oracle.
pub const CATALAN: [i64; 24] = [
    1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012, 742900,
    2674440, 9694845, 35357670, 129644790, 477638700, 1767263190,
    6564120420, 24466267020, 91482563640, 343059613650,
];

/// Shifted Fine numbers (A000957 shifted), oracle for the Fine catalog
/// entry.
pub const FINE_SHIFTED: [i64; 10] = [1, 0, 1, 2, 6, 18, 57, 186, 622, 2120];
