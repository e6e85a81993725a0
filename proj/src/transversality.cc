#include "zkdistill/transversality.h"

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>

namespace zkd {

namespace {

// Depth-first over ascending index subsets of a fixed size, carrying the
// running product. Returns false to stop early.
template <typename F>
bool visit_subsets(const BitMatrix &rows, size_t size, std::vector<size_t> &chosen, const BitVector &product,
                   size_t start, F &&f) {
    if (chosen.size() == size) {
        return f(chosen, product);
    }
    for (size_t i = start; i < rows.row_count(); ++i) {
        chosen.push_back(i);
        BitVector next = chosen.size() == 1 ? rows.row(i) : product & rows.row(i);
        bool keep_going = visit_subsets(rows, size, chosen, next, i + 1, f);
        chosen.pop_back();
        if (!keep_going) {
            return false;
        }
    }
    return true;
}

}  // namespace

WardResult ward_test(const BitMatrix &rows, size_t k) {
    if (k + 2 >= 64) {
        throw DomainError("ward_test supports k < 62");
    }
    WardResult result;
    result.passed = true;
    // j = k+2 would need divisibility by 2^0, which always holds.
    size_t max_j = std::min(k + 1, rows.row_count());
    for (size_t j = 1; j <= max_j && result.passed; ++j) {
        uint64_t modulus = uint64_t{1} << (k + 2 - j);
        std::vector<size_t> chosen;
        visit_subsets(rows, j, chosen, BitVector(rows.col_count()), 0,
                      [&](const std::vector<size_t> &subset, const BitVector &product) {
                          size_t w = product.weight();
                          if (w % modulus != 0) {
                              result.passed = false;
                              result.witness = WardWitness{j, subset, w, modulus};
                              return false;
                          }
                          return true;
                      });
    }
    return result;
}

bool divisibility_direct(const BitMatrix &rows, uint64_t divisor) {
    if (divisor == 0) {
        throw std::invalid_argument("divisor must be positive");
    }
    CodewordStream stream(rows);
    BitVector word;
    while (stream.next(word)) {
        if (word.weight() % divisor != 0) {
            return false;
        }
    }
    return true;
}

uint64_t extended_euclid_inverse(uint64_t a, uint64_t modulus) {
    if (modulus < 2) {
        throw DomainError("modulus must be at least 2");
    }
    // Invariant: old_r = old_s * a (mod modulus), r = s * a (mod modulus).
    int64_t old_r = static_cast<int64_t>(a % modulus);
    int64_t r = static_cast<int64_t>(modulus);
    int64_t old_s = 1;
    int64_t s = 0;
    while (r != 0) {
        int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) {
        throw DomainError("gcd(" + std::to_string(a) + ", " + std::to_string(modulus) + ") != 1, no inverse");
    }
    int64_t m = static_cast<int64_t>(modulus);
    return static_cast<uint64_t>(((old_s % m) + m) % m);
}

TransversalityCertificate certify_zk(const CssCode &code, size_t k) {
    if (code.k_logical() != 1) {
        throw DomainError("certify_zk needs a code with exactly one logical qubit");
    }
    if (k + 1 >= 63) {
        throw DomainError("certify_zk supports k <= 61");
    }
    TransversalityCertificate cert;
    cert.k = k;
    uint64_t modulus = uint64_t{1} << (k + 1);
    cert.a = code.n() % modulus;
    WardResult ward = ward_test(code.hx(), k);
    cert.passed = ward.passed;
    cert.witness = ward.witness;
    if (cert.a % 2 == 1) {
        cert.x = extended_euclid_inverse(cert.a, modulus);
    }
    return cert;
}

}  // namespace zkd
