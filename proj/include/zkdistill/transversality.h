#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zkdistill/codes.h"
#include "zkdistill/gf2.h"

namespace zkd {

struct WardWitness {
    size_t j = 0;              // subset size
    std::vector<size_t> rows;  // row indices, ascending
    size_t weight = 0;         // weight of their componentwise product
    uint64_t modulus = 0;      // 2^(k+2-j), which does not divide `weight`
};

struct WardResult {
    bool passed = false;
    std::optional<WardWitness> witness;
};

/// Ward's divisibility test for 2^(k+1)-divisibility of rowspan(rows):
/// every product of j distinct rows, 1 <= j <= k+1, must have weight
/// divisible by 2^(k+2-j). Subsets are scanned by size, then
/// lexicographically, so the witness is the first violation in that order.
WardResult ward_test(const BitMatrix &rows, size_t k);

/// Checks every rowspan codeword's weight against `divisor` directly.
bool divisibility_direct(const BitMatrix &rows, uint64_t divisor);

/// x with a*x = 1 (mod modulus) and 0 < x < modulus.
uint64_t extended_euclid_inverse(uint64_t a, uint64_t modulus);

struct TransversalityCertificate {
    size_t k = 0;
    uint64_t a = 0;                // n mod 2^(k+1)
    std::optional<uint64_t> x;     // inverse of a when a is odd
    bool passed = false;
    std::optional<WardWitness> witness;
};

/// Transversal Z_k^{(x)n} on `code` acts as logical (Z_k)^a when the X-check
/// rows pass Ward's test. Requires a single logical qubit.
TransversalityCertificate certify_zk(const CssCode &code, size_t k);

}  // namespace zkd
