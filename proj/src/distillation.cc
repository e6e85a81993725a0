#include "zkdistill/distillation.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "zkdistill/gf2.h"

namespace zkd {

namespace {

void require_k(size_t k) {
    if (k < kMinDistillK || k > kMaxDistillK) {
        throw DomainError("k must lie in [" + std::to_string(kMinDistillK) + ", " + std::to_string(kMaxDistillK) +
                          "], got " + std::to_string(k));
    }
}

void require_probability(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw DomainError("error rate must lie in [0, 1]");
    }
}

struct CodeConstants {
    long n;           // 2^(k+2) - 1
    size_t half;      // 2^(k+1)
    long block;       // 2^(k+2)
};

CodeConstants constants(size_t k) {
    long block = 1L << (k + 2);
    return {block - 1, size_t{1} << (k + 1), block};
}

// Bits of working precision: enough headroom for the eps^3 term to survive
// cancellation between O(1) terms.
mp_bitcnt_t working_precision(size_t k, double eps) {
    int exponent = eps > 0 ? -std::ilogb(eps) : 0;
    return static_cast<mp_bitcnt_t>(128 + 4 * std::max(exponent, 0) + 2 * static_cast<int>(k + 2));
}

struct PrecisePowers {
    mpf_class x_m_minus_1;  // x^(M-1)
    mpf_class x_m;          // x^M
};

PrecisePowers precise_powers(size_t k, double eps, mp_bitcnt_t prec) {
    CodeConstants c = constants(k);
    mpf_class x(1.0, prec);
    x -= mpf_class(2.0 * eps, prec);  // 2*eps is exact in binary
    PrecisePowers out{mpf_class(0, prec), mpf_class(0, prec)};
    mpf_pow_ui(out.x_m_minus_1.get_mpf_t(), x.get_mpf_t(), c.half - 1);
    out.x_m = out.x_m_minus_1 * x;
    return out;
}

double double_output_error(size_t k, double eps) {
    CodeConstants c = constants(k);
    double x = 1.0 - 2.0 * eps;
    double xm1 = std::pow(x, static_cast<double>(c.half - 1));
    double xm = xm1 * x;
    double n = static_cast<double>(c.n);
    return (1.0 - n * xm1 + n * xm - xm1 * xm) / (2.0 * (1.0 + n * xm));
}

double evaluate_coefficients(const std::vector<double> &coeffs, double eps) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * eps + *it;
    }
    return acc;
}

}  // namespace

RationalFunction cisc_output_error(size_t k) {
    require_k(k);
    CodeConstants c = constants(k);
    IntPoly x_m_minus_1 = IntPoly::binomial_power(1, -2, c.half - 1);
    IntPoly x_m = IntPoly::binomial_power(1, -2, c.half);
    IntPoly x_top = IntPoly::binomial_power(1, -2, 2 * c.half - 1);
    mpz_class n(c.n);
    IntPoly numerator = IntPoly(1) - x_m_minus_1 * n + x_m * n - x_top;
    IntPoly denominator = (IntPoly(1) + x_m * n) * mpz_class(2);
    return RationalFunction(std::move(numerator), std::move(denominator));
}

RationalFunction cisc_acceptance(size_t k) {
    require_k(k);
    CodeConstants c = constants(k);
    IntPoly numerator = IntPoly(1) + IntPoly::binomial_power(1, -2, c.half) * mpz_class(c.n);
    return RationalFunction(std::move(numerator), IntPoly(c.block));
}

RationalFunction cisc_expected_repetitions(size_t k) {
    require_k(k);
    CodeConstants c = constants(k);
    IntPoly denominator = IntPoly(1) + IntPoly::binomial_power(1, -2, c.half) * mpz_class(c.n);
    return RationalFunction(IntPoly(c.block), std::move(denominator));
}

double cisc_output_error_value(size_t k, double eps) {
    require_k(k);
    require_probability(eps);
    if (eps == 0.0) {
        return 0.0;
    }
    CodeConstants c = constants(k);
    mp_bitcnt_t prec = working_precision(k, eps);
    PrecisePowers p = precise_powers(k, eps, prec);
    mpf_class n(static_cast<double>(c.n), prec);
    mpf_class one(1.0, prec);
    mpf_class numerator = one - n * p.x_m_minus_1 + n * p.x_m - p.x_m_minus_1 * p.x_m;
    mpf_class denominator = 2 * (one + n * p.x_m);
    mpf_class value = numerator / denominator;
    return value.get_d();
}

double cisc_acceptance_value(size_t k, double eps) {
    require_k(k);
    require_probability(eps);
    CodeConstants c = constants(k);
    double x = 1.0 - 2.0 * eps;
    return (1.0 + static_cast<double>(c.n) * std::pow(x, static_cast<double>(c.half))) /
           static_cast<double>(c.block);
}

double cisc_expected_repetitions_value(size_t k, double eps) { return 1.0 / cisc_acceptance_value(k, eps); }

double threshold(size_t k, double tol) {
    require_k(k);
    if (!(tol > 0.0)) {
        throw DomainError("bisection tolerance must be positive");
    }
    // Both 0 and 1/2 are fixed points, so bracket strictly inside. Scan a
    // logarithmic grid upward for the first sign change.
    auto f = [k](double eps) { return double_output_error(k, eps) - eps; };
    double lo = 0.0;
    double hi = 0.0;
    bool bracketed = false;
    double prev = 1e-12;
    if (f(prev) >= 0.0) {
        throw DomainError("no sign change: eps_out(eps) >= eps near zero");
    }
    for (int i = 1; i <= 400; ++i) {
        double eps = std::min(1e-12 * std::pow(10.0, i * 0.03), 0.5 - 1e-9);
        if (f(eps) > 0.0) {
            lo = prev;
            hi = eps;
            bracketed = true;
            break;
        }
        prev = eps;
        if (eps >= 0.5 - 1e-9) {
            break;
        }
    }
    if (!bracketed) {
        throw DomainError("no sign change of eps_out(eps) - eps detected in (0, 1/2)");
    }
    while (hi - lo >= tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

DistillationSchedule levels_required(size_t k, double eps, double target, LevelRule rule) {
    require_k(k);
    if (!(eps > 0.0 && eps < 0.5)) {
        throw DomainError("base error must lie in (0, 1/2)");
    }
    if (!(target > 0.0)) {
        throw DomainError("target error must be positive");
    }
    if (eps >= threshold(k)) {
        throw DomainError("base error is at or above the distillation threshold; distillation diverges");
    }
    DistillationSchedule schedule;
    schedule.k = k;
    schedule.base_error = eps;
    schedule.target = target;
    schedule.rule = rule;
    if (target >= eps) {
        return schedule;
    }

    auto step = [&](double current) {
        schedule.per_level_repetitions.push_back(cisc_expected_repetitions_value(k, current));
        double next = cisc_output_error_value(k, current);
        schedule.per_level_errors.push_back(next);
        return next;
    };

    constexpr size_t kMaxLevels = 64;
    if (rule == LevelRule::composition) {
        double current = eps;
        while (current > target) {
            if (schedule.per_level_errors.size() >= kMaxLevels) {
                throw DomainError("target not reached within " + std::to_string(kMaxLevels) + " levels");
            }
            current = step(current);
        }
    } else {
        double one_round = cisc_output_error_value(k, eps);
        double ratio = std::log(target) / std::log(one_round);
        size_t levels = static_cast<size_t>(std::max(0.0, std::ceil(ratio)));
        if (levels > kMaxLevels) {
            throw DomainError("paper formula asks for more than " + std::to_string(kMaxLevels) + " levels");
        }
        double current = eps;
        for (size_t i = 0; i < levels; ++i) {
            current = step(current);
        }
        schedule.meets_target = current <= target;
    }
    schedule.levels = schedule.per_level_errors.size();
    return schedule;
}

uint64_t selinger_t_count(double eps_qc) {
    if (!(eps_qc > 0.0 && eps_qc < 1.0)) {
        throw DomainError("compiling error must lie in (0, 1)");
    }
    return static_cast<uint64_t>(std::ceil(11.0 + 4.0 * std::log2(1.0 / eps_qc)));
}

double asymptotic_beta(size_t k) {
    if (k < kMinDistillK) {
        throw DomainError("asymptotic_beta needs k >= 2");
    }
    return std::log(std::ldexp(1.0, static_cast<int>(k + 2)) - 1.0) / std::log(3.0);
}

DistillationStepModel cisc_step_model(size_t k) {
    require_k(k);
    DistillationStepModel model;
    model.label = k == 2 ? "qrm15" : "qrm" + std::to_string(constants(k).n);
    model.inputs_per_round = static_cast<size_t>(constants(k).n);
    model.outputs_per_round = 1;
    model.output_error = [k](double eps) { return cisc_output_error_value(k, eps); };
    model.acceptance = [k](double eps) { return cisc_acceptance_value(k, eps); };
    return model;
}

MekParameters default_mek_parameters() {
    MekParameters p;
    p.acceptance = {1.0, -8.0};
    p.output_error = {0.0, 0.0, 6.0};
    p.source = "NON-AUTHORITATIVE placeholder: output 6 eps^2, acceptance 1 - 8 eps";
    p.authoritative = false;
    return p;
}

MekParameters parse_mek_parameters(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("MEK parameter file is not valid JSON: ") + e.what());
    }
    MekParameters p;
    try {
        p.acceptance = doc.at("acceptance").get<std::vector<double>>();
        p.output_error = doc.at("output_error").get<std::vector<double>>();
        p.source = doc.value("source", std::string("unspecified"));
    } catch (const nlohmann::json::exception &e) {
        throw DomainError(std::string("MEK parameter file is missing fields: ") + e.what());
    }
    if (p.acceptance.empty() || p.acceptance.front() != 1.0) {
        throw DomainError("MEK acceptance must satisfy acceptance(0) = 1");
    }
    if (!p.output_error.empty() && p.output_error.front() != 0.0) {
        throw DomainError("MEK output error must satisfy output_error(0) = 0");
    }
    return p;
}

MekParameters load_mek_parameters(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open MEK parameter file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_mek_parameters(buffer.str());
}

DistillationStepModel mek_model(const MekParameters &params) {
    if (params.acceptance.empty() || params.acceptance.front() != 1.0) {
        throw DomainError("MEK acceptance must satisfy acceptance(0) = 1");
    }
    if (!params.output_error.empty() && params.output_error.front() != 0.0) {
        throw DomainError("MEK output error must satisfy output_error(0) = 0");
    }
    DistillationStepModel model;
    model.label = params.authoritative ? "mek" : "mek(NON-AUTHORITATIVE)";
    model.inputs_per_round = 10;
    model.outputs_per_round = 2;
    model.output_error = [coeffs = params.output_error](double eps) { return evaluate_coefficients(coeffs, eps); };
    model.acceptance = [coeffs = params.acceptance](double eps) { return evaluate_coefficients(coeffs, eps); };
    model.authoritative = params.authoritative;
    return model;
}

std::string to_string(LevelRule rule) {
    return rule == LevelRule::composition ? "composition" : "paper_formula";
}

LevelRule parse_level_rule(std::string_view text) {
    if (text == "composition") {
        return LevelRule::composition;
    }
    if (text == "paper_formula" || text == "paper") {
        return LevelRule::paper_formula;
    }
    throw std::invalid_argument("unknown level rule: " + std::string(text));
}

}  // namespace zkd
