#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zkd {

/// Raised when an operation's mathematical precondition fails (bad code
/// parameters, out-of-range k, enumeration bound exceeded, ...).
class DomainError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Largest rank for which rowspans are enumerated exhaustively.
inline constexpr size_t kEnumerationRankLimit = 30;

/// Fixed-length vector over GF(2), packed into 64-bit words.
/// Bit 0 is the leftmost column as printed.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t length);

    static BitVector ones(size_t length);
    static BitVector from_string(std::string_view bits);
    static BitVector unit(size_t length, size_t index);

    size_t size() const { return length_; }
    bool get(size_t index) const;
    void set(size_t index, bool value);
    void flip(size_t index);
    bool operator[](size_t index) const { return get(index); }

    size_t weight() const;
    bool any() const;
    bool none() const { return !any(); }
    /// Parity of the inner product with `other`.
    bool dot(const BitVector &other) const;
    BitVector complement() const;

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    BitVector operator&(const BitVector &other) const;

    bool operator==(const BitVector &other) const = default;
    /// Lexicographic on the bit string.
    bool operator<(const BitVector &other) const;

    std::string to_string() const;
    std::span<const uint64_t> words() const { return words_; }

   private:
    void require_same_length(const BitVector &other) const;
    void clear_padding();

    size_t length_ = 0;
    std::vector<uint64_t> words_;
};

size_t hamming_weight(const BitVector &v);

/// Bitwise AND of all inputs. Throws std::invalid_argument on an empty list
/// or mismatched lengths.
BitVector componentwise_product(std::span<const BitVector> vectors);

/// Dense rectangular matrix over GF(2), stored as rows.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols);
    explicit BitMatrix(std::vector<BitVector> rows);
    /// Needed for matrices with zero rows, whose width cannot be inferred.
    BitMatrix(std::vector<BitVector> rows, size_t cols);

    static BitMatrix identity(size_t n);
    /// One row per line of '0'/'1' characters. Blank lines are skipped.
    static BitMatrix from_text(std::string_view text);

    size_t row_count() const { return rows_.size(); }
    size_t col_count() const { return cols_; }
    bool empty() const { return rows_.empty(); }

    const BitVector &row(size_t i) const { return rows_.at(i); }
    const std::vector<BitVector> &rows() const { return rows_; }
    bool get(size_t r, size_t c) const { return rows_.at(r).get(c); }
    void set(size_t r, size_t c, bool value) { rows_.at(r).set(c, value); }

    void append_row(BitVector row);
    BitMatrix without_row(size_t index) const;
    BitMatrix without_column(size_t index) const;
    BitVector column(size_t index) const;
    BitMatrix transpose() const;
    BitMatrix operator*(const BitMatrix &rhs) const;
    /// Syndrome M·v.
    BitVector apply(const BitVector &v) const;
    bool is_zero() const;

    size_t rank() const;

    bool operator==(const BitMatrix &other) const = default;

    std::string to_text() const;

   private:
    size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

struct RowEchelon {
    BitMatrix reduced;  // nonzero rows only, in pivot order
    size_t rank = 0;
    std::vector<size_t> pivot_columns;
};

/// Reduced row-echelon form over GF(2). The returned matrix keeps only the
/// `rank` nonzero rows.
RowEchelon row_reduce(const BitMatrix &m);

/// True iff `v` lies in the rowspan of the echelon form.
bool in_rowspan(const RowEchelon &echelon, const BitVector &v);

/// Restartable stream over the rowspan of a matrix. Yields each of the
/// 2^rank codewords exactly once, starting with the zero word, in Gray-code
/// order over a reduced basis.
class CodewordStream {
   public:
    explicit CodewordStream(const BitMatrix &m);

    uint64_t size() const { return uint64_t{1} << basis_.size(); }
    size_t rank() const { return basis_.size(); }
    bool next(BitVector &out);
    void reset();

   private:
    std::vector<BitVector> basis_;
    BitVector current_;
    uint64_t step_ = 0;
};

std::vector<BitVector> enumerate_codewords(const BitMatrix &m);

struct WeightDistribution {
    std::map<size_t, uint64_t> counts;

    uint64_t total() const;
    uint64_t operator[](size_t weight) const;
    bool operator==(const WeightDistribution &other) const = default;
};

WeightDistribution weight_distribution(const BitMatrix &m);

std::ostream &operator<<(std::ostream &out, const BitVector &v);
std::ostream &operator<<(std::ostream &out, const BitMatrix &m);

}  // namespace zkd
