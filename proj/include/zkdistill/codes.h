#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "zkdistill/gf2.h"

namespace zkd {

inline constexpr size_t kMaxReedMullerM = 16;

/// Binary linear [n, k, d] code. The distance is either supplied (closed
/// form for Reed-Muller codes) or computed on first request by exhaustive
/// enumeration.
class LinearCode {
   public:
    explicit LinearCode(BitMatrix generator, std::optional<size_t> distance = std::nullopt);
    /// For generators whose rank is known in closed form.
    LinearCode(BitMatrix generator, std::optional<size_t> distance, size_t dimension);

    const BitMatrix &generator() const { return generator_; }
    size_t n() const { return generator_.col_count(); }
    size_t k() const { return k_; }
    /// Minimum distance; 0 for the zero code.
    size_t d() const;
    bool distance_known() const { return distance_.has_value(); }

   private:
    BitMatrix generator_;
    size_t k_;
    mutable std::optional<size_t> distance_;
};

/// Exhaustive minimum nonzero codeword weight (rank <= 30).
size_t minimum_distance(const LinearCode &code);

/// RM(r, m) in standard form: the all-ones row first, then monomials by
/// ascending degree. Within a degree, monomials are ordered lexicographically
/// by variable index, and variable x_i is 1 on column j exactly when bit
/// (m - i) of j is clear, so x_1 is the slowest-alternating block and the
/// last column is the origin.
LinearCode reed_muller(size_t r, size_t m);

size_t reed_muller_dimension(size_t r, size_t m);

/// (m - r - 1, m), after confirming G(r,m) * G(m-r-1,m)^T = 0.
std::pair<size_t, size_t> dual_parameters(size_t r, size_t m);

/// Puncture the last column and expurgate the unique row supported on it.
LinearCode shorten(const LinearCode &code);

/// CSS code given by X- and Z-check matrices.
class CssCode {
   public:
    CssCode(BitMatrix hx, BitMatrix hz);
    /// Reuses the dimensions already known to the two classical codes.
    CssCode(const LinearCode &x_checks, const LinearCode &z_checks);

    const BitMatrix &hx() const { return hx_; }
    const BitMatrix &hz() const { return hz_; }
    size_t n() const { return n_; }
    size_t k_logical() const { return k_logical_; }

    /// Only set for single-logical-qubit codes built by `qrm`.
    const std::optional<BitVector> &logical_x() const { return logical_x_; }
    const std::optional<BitVector> &logical_z() const { return logical_z_; }
    void set_logicals(BitVector x, BitVector z);

   private:
    void check_commutation() const;

    BitMatrix hx_;
    BitMatrix hz_;
    size_t n_;
    size_t k_logical_;
    std::optional<BitVector> logical_x_;
    std::optional<BitVector> logical_z_;
};

/// QRM(r, m): X checks from RM(r, m), Z checks from its dual RM(m-r-1, m).
/// The shortened variant shortens both and fixes both logicals to the
/// all-ones vector. Throws DomainError when the shortened X part is empty
/// (r = 0) or when the result would not encode exactly one qubit.
CssCode qrm(size_t r, size_t m, bool shortened);

}  // namespace zkd
