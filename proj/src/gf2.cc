#include "zkdistill/gf2.h"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>

namespace zkd {

namespace {

constexpr size_t kWordBits = 64;

size_t word_count(size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

}  // namespace

BitVector::BitVector(size_t length) : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::ones(size_t length) {
    BitVector v(length);
    std::fill(v.words_.begin(), v.words_.end(), ~uint64_t{0});
    v.clear_padding();
    return v;
}

BitVector BitVector::unit(size_t length, size_t index) {
    BitVector v(length);
    v.set(index, true);
    return v;
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

bool BitVector::get(size_t index) const {
    if (index >= length_) {
        throw std::out_of_range("BitVector index out of range");
    }
    return (words_[index / kWordBits] >> (index % kWordBits)) & 1;
}

void BitVector::set(size_t index, bool value) {
    if (index >= length_) {
        throw std::out_of_range("BitVector index out of range");
    }
    uint64_t mask = uint64_t{1} << (index % kWordBits);
    if (value) {
        words_[index / kWordBits] |= mask;
    } else {
        words_[index / kWordBits] &= ~mask;
    }
}

void BitVector::flip(size_t index) { set(index, !get(index)); }

size_t BitVector::weight() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](uint64_t w) { return w != 0; });
}

bool BitVector::dot(const BitVector &other) const {
    require_same_length(other);
    uint64_t acc = 0;
    for (size_t i = 0; i < words_.size(); ++i) {
        acc ^= words_[i] & other.words_[i];
    }
    return std::popcount(acc) & 1;
}

BitVector BitVector::complement() const {
    BitVector out = *this;
    for (auto &w : out.words_) {
        w = ~w;
    }
    out.clear_padding();
    return out;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require_same_length(other);
    for (size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    require_same_length(other);
    for (size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector out = *this;
    out ^= other;
    return out;
}

BitVector BitVector::operator&(const BitVector &other) const {
    BitVector out = *this;
    out &= other;
    return out;
}

bool BitVector::operator<(const BitVector &other) const {
    if (length_ != other.length_) {
        return length_ < other.length_;
    }
    for (size_t i = 0; i < length_; ++i) {
        bool a = get(i);
        bool b = other.get(i);
        if (a != b) {
            return b;
        }
    }
    return false;
}

std::string BitVector::to_string() const {
    std::string s(length_, '0');
    for (size_t i = 0; i < length_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

void BitVector::require_same_length(const BitVector &other) const {
    if (length_ != other.length_) {
        throw std::invalid_argument("BitVector length mismatch");
    }
}

void BitVector::clear_padding() {
    size_t tail = length_ % kWordBits;
    if (tail != 0 && !words_.empty()) {
        words_.back() &= (uint64_t{1} << tail) - 1;
    }
}

size_t hamming_weight(const BitVector &v) { return v.weight(); }

BitVector componentwise_product(std::span<const BitVector> vectors) {
    if (vectors.empty()) {
        throw std::invalid_argument("componentwise_product of an empty list");
    }
    BitVector out = vectors.front();
    for (const auto &v : vectors.subspan(1)) {
        out &= v;
    }
    return out;
}

BitMatrix::BitMatrix(size_t rows, size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix::BitMatrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
        return;
    }
    cols_ = rows_.front().size();
    for (const auto &r : rows_) {
        if (r.size() != cols_) {
            throw std::invalid_argument("BitMatrix rows must all have the same length");
        }
    }
}

BitMatrix::BitMatrix(std::vector<BitVector> rows, size_t cols) : cols_(cols), rows_(std::move(rows)) {
    for (const auto &r : rows_) {
        if (r.size() != cols_) {
            throw std::invalid_argument("BitMatrix rows must all have the same length");
        }
    }
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_text(std::string_view text) {
    std::vector<BitVector> rows;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            rows.push_back(BitVector::from_string(line));
        }
        start = end + 1;
    }
    return BitMatrix(std::move(rows));
}

void BitMatrix::append_row(BitVector row) {
    if (rows_.empty() && cols_ == 0) {
        cols_ = row.size();
    }
    if (row.size() != cols_) {
        throw std::invalid_argument("appended row has the wrong length");
    }
    rows_.push_back(std::move(row));
}

BitMatrix BitMatrix::without_row(size_t index) const {
    if (index >= rows_.size()) {
        throw std::out_of_range("row index out of range");
    }
    std::vector<BitVector> rows = rows_;
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(index));
    return BitMatrix(std::move(rows), cols_);
}

BitMatrix BitMatrix::without_column(size_t index) const {
    if (index >= cols_) {
        throw std::out_of_range("column index out of range");
    }
    std::vector<BitVector> rows;
    rows.reserve(rows_.size());
    for (const auto &r : rows_) {
        BitVector shorter(cols_ - 1);
        for (size_t c = 0, out = 0; c < cols_; ++c) {
            if (c == index) {
                continue;
            }
            shorter.set(out++, r.get(c));
        }
        rows.push_back(std::move(shorter));
    }
    return BitMatrix(std::move(rows), cols_ - 1);
}

BitVector BitMatrix::column(size_t index) const {
    BitVector out(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) {
        out.set(r, rows_[r].get(index));
    }
    return out;
}

BitMatrix BitMatrix::transpose() const {
    std::vector<BitVector> cols;
    cols.reserve(cols_);
    for (size_t c = 0; c < cols_; ++c) {
        cols.push_back(column(c));
    }
    return BitMatrix(std::move(cols), rows_.size());
}

BitMatrix BitMatrix::operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.row_count()) {
        throw std::invalid_argument("BitMatrix product dimension mismatch");
    }
    BitMatrix out(rows_.size(), rhs.col_count());
    for (size_t r = 0; r < rows_.size(); ++r) {
        BitVector acc(rhs.col_count());
        for (size_t k = 0; k < cols_; ++k) {
            if (rows_[r].get(k)) {
                acc ^= rhs.row(k);
            }
        }
        out.rows_[r] = std::move(acc);
    }
    return out;
}

BitVector BitMatrix::apply(const BitVector &v) const {
    BitVector out(rows_.size());
    for (size_t r = 0; r < rows_.size(); ++r) {
        out.set(r, rows_[r].dot(v));
    }
    return out;
}

bool BitMatrix::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVector &r) { return r.none(); });
}

size_t BitMatrix::rank() const { return row_reduce(*this).rank; }

std::string BitMatrix::to_text() const {
    std::string out;
    for (const auto &r : rows_) {
        out += r.to_string();
        out += '\n';
    }
    return out;
}

RowEchelon row_reduce(const BitMatrix &m) {
    std::vector<BitVector> rows = m.rows();
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < m.col_count() && next < rows.size(); ++c) {
        size_t found = next;
        while (found < rows.size() && !rows[found].get(c)) {
            ++found;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r != next && rows[r].get(c)) {
                rows[r] ^= rows[next];
            }
        }
        pivots.push_back(c);
        ++next;
    }
    rows.resize(next);
    RowEchelon out{BitMatrix(std::move(rows), m.col_count()), next, std::move(pivots)};
    return out;
}

bool in_rowspan(const RowEchelon &echelon, const BitVector &v) {
    BitVector residue = v;
    for (size_t i = 0; i < echelon.rank; ++i) {
        if (residue.get(echelon.pivot_columns[i])) {
            residue ^= echelon.reduced.row(i);
        }
    }
    return residue.none();
}

CodewordStream::CodewordStream(const BitMatrix &m) : current_(m.col_count()) {
    RowEchelon echelon = row_reduce(m);
    if (echelon.rank > kEnumerationRankLimit) {
        throw DomainError("rank " + std::to_string(echelon.rank) + " exceeds the enumeration bound of " +
                          std::to_string(kEnumerationRankLimit));
    }
    basis_ = echelon.reduced.rows();
}

bool CodewordStream::next(BitVector &out) {
    if (step_ >= size()) {
        return false;
    }
    if (step_ > 0) {
        current_ ^= basis_[std::countr_zero(step_)];
    }
    ++step_;
    out = current_;
    return true;
}

void CodewordStream::reset() {
    step_ = 0;
    current_ = BitVector(current_.size());
}

std::vector<BitVector> enumerate_codewords(const BitMatrix &m) {
    CodewordStream stream(m);
    std::vector<BitVector> out;
    out.reserve(stream.size());
    BitVector word;
    while (stream.next(word)) {
        out.push_back(word);
    }
    return out;
}

uint64_t WeightDistribution::total() const {
    uint64_t sum = 0;
    for (const auto &[w, c] : counts) {
        sum += c;
    }
    return sum;
}

uint64_t WeightDistribution::operator[](size_t weight) const {
    auto it = counts.find(weight);
    return it == counts.end() ? 0 : it->second;
}

WeightDistribution weight_distribution(const BitMatrix &m) {
    CodewordStream stream(m);
    WeightDistribution out;
    BitVector word;
    while (stream.next(word)) {
        ++out.counts[word.weight()];
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const BitVector &v) { return out << v.to_string(); }

std::ostream &operator<<(std::ostream &out, const BitMatrix &m) { return out << m.to_text(); }

}  // namespace zkd
