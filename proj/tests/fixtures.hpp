#pragma once

// Hand-checked reference vectors shared by the test binaries: a
// four-level chain (1, 3, 9, 27 bits) with one known-good recursive
// share triple, the slices of the lower-level shares embedded in it,
// and a known-good single-level triple for the same 27-bit message.

namespace fixtures {

// nested messages, smallest level first; the last one is the cover
inline constexpr const char* kNestedLevels[4] = {
    "1",
    "010",
    "110101101",
    "011011010110110011100101101",
};

inline constexpr const char* kTopMessage = kNestedLevels[3];

// recursive share triple for the nested chain
inline constexpr const char* kRecursiveShares[3] = {
    "011122102011101221001121202",
    "020101122121021200101022100",
    "002110112201211212201220001",
};

// the level-k share of share j sits verbatim inside kRecursiveShares[j-1];
// indexed [level-1][share-1]
inline constexpr const char* kEmbeddedSlices[3][3] = {
    {"0", "2", "1"},
    {"011", "021", "001"},
    {"011122102", "121021200", "201220001"},
};

// single-level share triple for kTopMessage
inline constexpr const char* kPlainShares[3] = {
    "102012012010201201201020102",
    "110020022120111210101221001",
    "121001002200021222001122200",
};

}  // namespace fixtures
