#include "zkdistill/codes.h"

#include <limits>
#include <string>

namespace zkd {

namespace {

size_t binomial(size_t n, size_t k) {
    if (k > n) {
        return 0;
    }
    size_t out = 1;
    for (size_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

// Visits every degree-`degree` subset of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(size_t m, size_t degree, std::vector<size_t> &chosen, size_t start, F &&f) {
    if (chosen.size() == degree) {
        f(chosen);
        return;
    }
    for (size_t v = start; v < m; ++v) {
        chosen.push_back(v);
        for_each_subset(m, degree, chosen, v + 1, f);
        chosen.pop_back();
    }
}

}  // namespace

LinearCode::LinearCode(BitMatrix generator, std::optional<size_t> distance)
    : generator_(std::move(generator)), k_(generator_.rank()), distance_(distance) {}

LinearCode::LinearCode(BitMatrix generator, std::optional<size_t> distance, size_t dimension)
    : generator_(std::move(generator)), k_(dimension), distance_(distance) {}

size_t LinearCode::d() const {
    if (!distance_) {
        distance_ = minimum_distance(*this);
    }
    return *distance_;
}

size_t minimum_distance(const LinearCode &code) {
    CodewordStream stream(code.generator());
    size_t best = std::numeric_limits<size_t>::max();
    BitVector word;
    while (stream.next(word)) {
        size_t w = word.weight();
        if (w != 0 && w < best) {
            best = w;
        }
    }
    return best == std::numeric_limits<size_t>::max() ? 0 : best;
}

size_t reed_muller_dimension(size_t r, size_t m) {
    size_t k = 0;
    for (size_t i = 0; i <= r; ++i) {
        k += binomial(m, i);
    }
    return k;
}

LinearCode reed_muller(size_t r, size_t m) {
    if (m < 1 || m > kMaxReedMullerM) {
        throw DomainError("Reed-Muller m must lie in [1, " + std::to_string(kMaxReedMullerM) + "]");
    }
    if (r > m) {
        throw DomainError("Reed-Muller order r must not exceed m");
    }
    const size_t n = size_t{1} << m;

    std::vector<BitVector> variables;
    for (size_t i = 0; i < m; ++i) {
        BitVector v(n);
        size_t bit = m - 1 - i;
        for (size_t j = 0; j < n; ++j) {
            if (((j >> bit) & 1) == 0) {
                v.set(j, true);
            }
        }
        variables.push_back(std::move(v));
    }

    BitMatrix g;
    g.append_row(BitVector::ones(n));
    std::vector<size_t> chosen;
    for (size_t degree = 1; degree <= r; ++degree) {
        for_each_subset(m, degree, chosen, 0, [&](const std::vector<size_t> &vars) {
            BitVector row = variables[vars.front()];
            for (size_t idx = 1; idx < vars.size(); ++idx) {
                row &= variables[vars[idx]];
            }
            g.append_row(std::move(row));
        });
    }
    return LinearCode(std::move(g), size_t{1} << (m - r), reed_muller_dimension(r, m));
}

std::pair<size_t, size_t> dual_parameters(size_t r, size_t m) {
    if (r + 1 > m) {
        throw DomainError("dual of RM(r, m) needs r <= m - 1");
    }
    size_t r_dual = m - r - 1;
    LinearCode primal = reed_muller(r, m);
    LinearCode dual = reed_muller(r_dual, m);
    if (!(primal.generator() * dual.generator().transpose()).is_zero()) {
        throw DomainError("RM(r, m) and RM(m-r-1, m) generators are not orthogonal");
    }
    return {r_dual, m};
}

LinearCode shorten(const LinearCode &code) {
    const BitMatrix &g = code.generator();
    if (g.col_count() == 0) {
        throw DomainError("cannot shorten a length-0 code");
    }
    size_t last = g.col_count() - 1;
    std::optional<size_t> supporting;
    for (size_t r = 0; r < g.row_count(); ++r) {
        if (g.get(r, last)) {
            if (supporting) {
                throw DomainError("shortening needs exactly one generator row supported on the last column");
            }
            supporting = r;
        }
    }
    if (!supporting) {
        throw DomainError("shortening needs exactly one generator row supported on the last column");
    }
    return LinearCode(g.without_row(*supporting).without_column(last), std::nullopt, code.k() - 1);
}

CssCode::CssCode(BitMatrix hx, BitMatrix hz) : hx_(std::move(hx)), hz_(std::move(hz)) {
    if (hx_.col_count() != hz_.col_count()) {
        throw std::invalid_argument("X and Z check matrices must have the same width");
    }
    n_ = hx_.col_count();
    check_commutation();
    k_logical_ = n_ - hx_.rank() - hz_.rank();
}

CssCode::CssCode(const LinearCode &x_checks, const LinearCode &z_checks)
    : hx_(x_checks.generator()), hz_(z_checks.generator()) {
    if (hx_.col_count() != hz_.col_count()) {
        throw std::invalid_argument("X and Z check matrices must have the same width");
    }
    n_ = hx_.col_count();
    check_commutation();
    k_logical_ = n_ - x_checks.k() - z_checks.k();
}

void CssCode::check_commutation() const {
    for (const BitVector &x : hx_.rows()) {
        for (const BitVector &z : hz_.rows()) {
            if (x.dot(z)) {
                throw DomainError("X and Z checks do not commute");
            }
        }
    }
}

void CssCode::set_logicals(BitVector x, BitVector z) {
    if (x.size() != n_ || z.size() != n_) {
        throw std::invalid_argument("logical operator length mismatch");
    }
    logical_x_ = std::move(x);
    logical_z_ = std::move(z);
}

CssCode qrm(size_t r, size_t m, bool shortened) {
    if (r + 1 > m) {
        throw DomainError("QRM(r, m) needs r <= m - 1 so the dual order is defined");
    }
    size_t r_dual = m - r - 1;
    LinearCode primal = reed_muller(r, m);
    LinearCode dual = reed_muller(r_dual, m);
    if (!shortened) {
        return CssCode(primal, dual);
    }
    if (r == 0) {
        throw DomainError("shortened QRM(0, m) has no X generators");
    }
    CssCode code(shorten(primal), shorten(dual));
    if (code.k_logical() != 1) {
        throw DomainError("shortened QRM(" + std::to_string(r) + ", " + std::to_string(m) + ") encodes " +
                          std::to_string(code.k_logical()) + " logical qubits, expected 1");
    }
    code.set_logicals(BitVector::ones(code.n()), BitVector::ones(code.n()));
    return code;
}

}  // namespace zkd
