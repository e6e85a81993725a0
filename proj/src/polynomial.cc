#include "zkdistill/polynomial.h"

#include <array>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zkd {

namespace {

// Polynomials over F_p with p < 2^62, ascending coefficients.
using ModPoly = std::vector<uint64_t>;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t base, uint64_t e, uint64_t p) {
    uint64_t out = 1;
    while (e != 0) {
        if (e & 1) {
            out = mulmod(out, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    return out;
}

void trim_mod(ModPoly &f) {
    while (!f.empty() && f.back() == 0) {
        f.pop_back();
    }
}

ModPoly reduce_mod(const IntPoly &f, uint64_t p) {
    ModPoly out;
    out.reserve(f.coefficients().size());
    static_assert(sizeof(unsigned long) == sizeof(uint64_t), "mpz_fdiv_ui needs a 64-bit unsigned long");
    for (const auto &c : f.coefficients()) {
        out.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    }
    trim_mod(out);
    return out;
}

// Degree of gcd(a, b) over F_p; -1 if both are zero.
long mod_gcd_degree(ModPoly a, ModPoly b, uint64_t p) {
    while (!b.empty()) {
        uint64_t inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            uint64_t factor = mulmod(a.back(), inv, p);
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t sub = mulmod(factor, b[i], p);
                uint64_t &slot = a[i + shift];
                slot = slot >= sub ? slot - sub : slot + p - sub;
            }
            trim_mod(a);
            if (a.empty()) {
                break;
            }
        }
        std::swap(a, b);
    }
    return static_cast<long>(a.size()) - 1;
}

// Sound certificate of coprimality: if a prime not dividing either leading
// coefficient gives a constant gcd, the integer gcd is constant too.
bool certainly_coprime(const IntPoly &a, const IntPoly &b) {
    static constexpr std::array<uint64_t, 4> kPrimes = {2305843009213693951ULL, 4611686018427387847ULL,
                                                        1000000007ULL, 998244353ULL};
    for (uint64_t p : kPrimes) {
        ModPoly am = reduce_mod(a, p);
        ModPoly bm = reduce_mod(b, p);
        if (static_cast<long>(am.size()) - 1 != a.degree() || static_cast<long>(bm.size()) - 1 != b.degree()) {
            continue;
        }
        if (mod_gcd_degree(am, bm, p) == 0) {
            return true;
        }
    }
    return false;
}

IntPoly primitive_part(const IntPoly &f) {
    if (f.is_zero()) {
        return f;
    }
    IntPoly out = f.exact_div(f.content());
    if (out.leading() < 0) {
        out = -out;
    }
    return out;
}

IntPoly pseudo_remainder(IntPoly a, const IntPoly &b) {
    const mpz_class &lb = b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
        size_t shift = static_cast<size_t>(a.degree() - b.degree());
        mpz_class la = a.leading();
        a *= lb;
        a -= b * IntPoly::monomial(la, shift);
    }
    return a;
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly::IntPoly(long constant) {
    if (constant != 0) {
        coeffs_.emplace_back(constant);
    }
}

IntPoly IntPoly::monomial(const mpz_class &c, size_t power) {
    std::vector<mpz_class> coeffs(power + 1, 0);
    coeffs[power] = c;
    return IntPoly(std::move(coeffs));
}

IntPoly IntPoly::binomial_power(long a, long b, size_t e) {
    std::vector<mpz_class> coeffs(e + 1);
    mpz_class a_pow, b_pow, choose;
    mpz_class az(a), bz(b);
    for (size_t i = 0; i <= e; ++i) {
        mpz_bin_uiui(choose.get_mpz_t(), e, i);
        mpz_pow_ui(a_pow.get_mpz_t(), az.get_mpz_t(), e - i);
        mpz_pow_ui(b_pow.get_mpz_t(), bz.get_mpz_t(), i);
        coeffs[i] = choose * a_pow * b_pow;
    }
    return IntPoly(std::move(coeffs));
}

mpz_class IntPoly::operator[](size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

IntPoly &IntPoly::operator+=(const IntPoly &rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), 0);
    }
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    trim();
    return *this;
}

IntPoly &IntPoly::operator-=(const IntPoly &rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), 0);
    }
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    trim();
    return *this;
}

IntPoly &IntPoly::operator*=(const mpz_class &scalar) {
    for (auto &c : coeffs_) {
        c *= scalar;
    }
    trim();
    return *this;
}

IntPoly IntPoly::operator+(const IntPoly &rhs) const {
    IntPoly out = *this;
    out += rhs;
    return out;
}

IntPoly IntPoly::operator-(const IntPoly &rhs) const {
    IntPoly out = *this;
    out -= rhs;
    return out;
}

IntPoly IntPoly::operator*(const IntPoly &rhs) const {
    if (is_zero() || rhs.is_zero()) {
        return IntPoly();
    }
    std::vector<mpz_class> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const mpz_class &scalar) const {
    IntPoly out = *this;
    out *= scalar;
    return out;
}

IntPoly IntPoly::operator-() const {
    IntPoly out = *this;
    for (auto &c : out.coeffs_) {
        c = -c;
    }
    return out;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto &c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

IntPoly IntPoly::exact_div(const mpz_class &divisor) const {
    if (divisor == 0) {
        throw std::domain_error("division of a polynomial by zero");
    }
    IntPoly out = *this;
    for (auto &c : out.coeffs_) {
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    }
    return out;
}

mpq_class IntPoly::evaluate(const mpq_class &x) const {
    // Horner in integers: sum c_i a^i b^(n-i), then divide by b^n.
    if (coeffs_.empty()) {
        return 0;
    }
    const mpz_class &a = x.get_num();
    const mpz_class &b = x.get_den();
    mpz_class acc = coeffs_.back();
    mpz_class b_pow = 1;
    for (size_t i = coeffs_.size() - 1; i-- > 0;) {
        b_pow *= b;
        acc = acc * a + coeffs_[i] * b_pow;
    }
    mpq_class out(acc, b_pow);
    out.canonicalize();
    return out;
}

double IntPoly::evaluate(double x) const { return evaluate(mpq_class(x)).get_d(); }

std::string IntPoly::to_string() const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const mpz_class &c = coeffs_[i];
        if (c == 0) {
            continue;
        }
        mpz_class magnitude = abs(c);
        if (first) {
            if (c < 0) {
                out << "-";
            }
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || magnitude != 1) {
            out << magnitude.get_str();
            if (i > 0) {
                out << "*";
            }
        }
        if (i == 1) {
            out << "e";
        } else if (i > 1) {
            out << "e^" << i;
        }
    }
    return out.str();
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

IntPoly gcd(const IntPoly &a, const IntPoly &b) {
    if (a.is_zero()) {
        return primitive_part(b) * b.content();
    }
    if (b.is_zero()) {
        return primitive_part(a) * a.content();
    }
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    IntPoly x = primitive_part(a);
    IntPoly y = primitive_part(b);
    if (x.degree() < y.degree()) {
        std::swap(x, y);
    }
    while (!y.is_zero()) {
        IntPoly r = primitive_part(pseudo_remainder(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    return primitive_part(x) * c;
}

IntPoly exact_quotient(const IntPoly &a, const IntPoly &b) {
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    if (a.is_zero()) {
        return IntPoly();
    }
    if (a.degree() < b.degree()) {
        throw std::domain_error("polynomial does not divide exactly");
    }
    std::vector<mpz_class> q(static_cast<size_t>(a.degree() - b.degree()) + 1, 0);
    IntPoly r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        size_t shift = static_cast<size_t>(r.degree() - b.degree());
        if (!mpz_divisible_p(r.leading().get_mpz_t(), b.leading().get_mpz_t())) {
            throw std::domain_error("polynomial does not divide exactly");
        }
        mpz_class factor = r.leading() / b.leading();
        q[shift] = factor;
        r -= b * IntPoly::monomial(factor, shift);
    }
    if (!r.is_zero()) {
        throw std::domain_error("polynomial does not divide exactly");
    }
    return IntPoly(std::move(q));
}

RationalFunction::RationalFunction(IntPoly numerator) : num_(std::move(numerator)), den_(1) { canonicalize(); }

RationalFunction::RationalFunction(IntPoly numerator, IntPoly denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    canonicalize();
}

RationalFunction RationalFunction::from_rational_coefficients(const std::vector<mpq_class> &coefficients) {
    mpz_class common = 1;
    for (const auto &c : coefficients) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<mpz_class> scaled;
    scaled.reserve(coefficients.size());
    for (const auto &c : coefficients) {
        scaled.push_back(c.get_num() * (common / c.get_den()));
    }
    return RationalFunction(IntPoly(std::move(scaled)), IntPoly::monomial(common, 0));
}

void RationalFunction::canonicalize() {
    if (den_.is_zero()) {
        throw std::domain_error("rational function with zero denominator");
    }
    if (num_.is_zero()) {
        den_ = IntPoly(1);
        return;
    }
    if (den_.degree() > 0 && num_.degree() > 0 && !certainly_coprime(num_, den_)) {
        IntPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_quotient(num_, g);
            den_ = exact_quotient(den_, g);
        }
    }
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), num_.content().get_mpz_t(), den_.content().get_mpz_t());
    if (den_.leading() < 0) {
        c = -c;
    }
    if (c != 1) {
        num_ = num_.exact_div(c);
        den_ = den_.exact_div(c);
    }
}

RationalFunction RationalFunction::operator+(const RationalFunction &rhs) const {
    if (den_ == rhs.den_) {
        return RationalFunction(num_ + rhs.num_, den_);
    }
    return RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction &rhs) const {
    if (den_ == rhs.den_) {
        return RationalFunction(num_ - rhs.num_, den_);
    }
    return RationalFunction(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction &rhs) const {
    return RationalFunction(num_ * rhs.num_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction &rhs) const {
    if (rhs.num_.is_zero()) {
        throw std::domain_error("division by the zero rational function");
    }
    return RationalFunction(num_ * rhs.den_, den_ * rhs.num_);
}

mpq_class RationalFunction::evaluate(const mpq_class &x) const {
    mpq_class d = den_.evaluate(x);
    if (d == 0) {
        throw std::domain_error("rational function has a pole at the evaluation point");
    }
    mpq_class out = num_.evaluate(x) / d;
    return out;
}

double RationalFunction::evaluate(double x) const { return evaluate(mpq_class(x)).get_d(); }

std::vector<mpq_class> RationalFunction::series(size_t order) const {
    mpz_class d0 = den_[0];
    if (d0 == 0) {
        throw std::domain_error("series about 0 needs a nonzero constant denominator term");
    }
    std::vector<mpq_class> c(order + 1);
    for (size_t i = 0; i <= order; ++i) {
        mpq_class acc(num_[i]);
        for (size_t j = 1; j <= i; ++j) {
            mpz_class dj = den_[j];
            if (dj != 0) {
                acc -= mpq_class(dj) * c[i - j];
            }
        }
        c[i] = acc / mpq_class(d0);
    }
    return c;
}

std::ostream &operator<<(std::ostream &out, const IntPoly &p) { return out << p.to_string(); }

std::ostream &operator<<(std::ostream &out, const RationalFunction &f) {
    return out << "(" << f.numerator() << ") / (" << f.denominator() << ")";
}

}  // namespace zkd
