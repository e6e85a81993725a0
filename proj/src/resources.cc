#include "zkdistill/resources.h"

#include <charconv>
#include <cmath>
#include <json.hpp>
#include <ostream>

#include "zkdistill/gf2.h"

namespace zkd {

namespace {

constexpr size_t kMaxChainLevels = 64;

std::string shortest(double v) {
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

std::string mode_label(LevelRule rule, CountMode mode) { return to_string(mode) + "+" + to_string(rule); }

}  // namespace

ErrorBudget ErrorBudget::make(double c_qc, double c_t, double c_1, double c_2) {
    for (double c : {c_qc, c_t, c_1, c_2}) {
        if (!(c > 0.0 && c < 1.0)) {
            throw DomainError("budget fractions must lie in (0, 1)");
        }
    }
    if (c_qc + c_t > 1.0) {
        throw DomainError("budget violates C_qc + C_T <= 1");
    }
    if (c_1 + c_2 > 1.0) {
        throw DomainError("budget violates C_1 + C_2 <= 1");
    }
    return ErrorBudget(c_qc, c_t, c_1, c_2);
}

ChainResult distillation_chain(double target, double eps, const DistillationStepModel &model) {
    if (!(target > 0.0)) {
        throw DomainError("target error must be positive");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw DomainError("base error must lie in (0, 1)");
    }
    ChainResult out;
    double current = eps;
    while (current > target) {
        if (out.levels >= kMaxChainLevels) {
            throw DomainError("target not reached within " + std::to_string(kMaxChainLevels) + " levels");
        }
        double a = model.acceptance(current);
        double next = model.output_error(current);
        if (!(a > 0.0 && a <= 1.0)) {
            throw DomainError(model.label + ": acceptance outside (0, 1] at eps = " + shortest(current));
        }
        if (!(next < current)) {
            throw DomainError(model.label + ": input error " + shortest(current) +
                              " is not below the distiller threshold");
        }
        out.expected_states *= model.inputs_per_output() / a;
        out.per_level_errors.push_back(next);
        current = next;
        ++out.levels;
    }
    return out;
}

ChainResult mek_chain(double target, double eps, const DistillationStepModel &model) {
    if (model.inputs_per_round != 10 || model.outputs_per_round != 2) {
        throw DomainError("mek_chain expects a 10-to-2 model");
    }
    return distillation_chain(target, eps, model);
}

ResourceEstimate risc_count(double eps_target, double eps, const ErrorBudget &budget,
                            const DistillationStepModel &distiller) {
    if (!(eps_target > 0.0)) {
        throw DomainError("target error must be positive");
    }
    ResourceEstimate est;
    est.architecture = Architecture::risc;
    est.eps = eps;
    est.eps_target = eps_target;
    est.distiller_label = distiller.label;
    est.mode = "chain";
    est.authoritative = distiller.authoritative;
    est.t_count = selinger_t_count(budget.c_qc() * eps_target);
    double per_state_target = budget.c_t() * eps_target / static_cast<double>(est.t_count);
    ChainResult chain = distillation_chain(per_state_target, eps, distiller);
    est.levels = chain.levels;
    est.achieved_error = chain.per_level_errors.empty() ? eps : chain.per_level_errors.back();
    est.expected_states = static_cast<double>(est.t_count) * chain.expected_states;
    est.within_budget = est.achieved_error <= per_state_target;
    return est;
}

double cisc_count(size_t k, size_t levels, double eps, CountMode mode) {
    if (k < kMinDistillK) {
        throw DomainError("cisc_count needs k >= 2");
    }
    if (k > kMaxDistillK) {
        throw DomainError("cisc_count supports k <= " + std::to_string(kMaxDistillK));
    }
    if (!(eps >= 0.0 && eps < 0.5)) {
        throw DomainError("base error must lie in [0, 1/2)");
    }
    // n[j][l] for 1 <= j <= k; row 1 stays zero because S is free.
    std::vector<std::vector<double>> n(k + 1, std::vector<double>(levels + 1, 0.0));
    for (size_t j = 2; j <= k; ++j) {
        n[j][0] = 1.0;
        // Input error to each round of the Z_j distiller, for exact mode.
        double input = eps;
        for (size_t l = 1; l <= levels; ++l) {
            double repetitions = cisc_expected_repetitions_value(j, mode == CountMode::paper ? eps : input);
            if (mode == CountMode::paper && j == 2) {
                n[j][l] = repetitions * std::pow(15.0, static_cast<double>(l));
            } else {
                double width = std::ldexp(1.0, static_cast<int>(j + 2)) - 1.0;
                n[j][l] = width * (n[j][l - 1] + 0.5 * n[j - 1][l - 1]) * repetitions + 0.5 * n[j - 1][l];
            }
            if (mode == CountMode::exact) {
                input = cisc_output_error_value(j, input);
            }
        }
    }
    return n[k][levels];
}

double teleport_only_cost(size_t k) {
    double cost = 0.0;
    for (size_t j = 2; j <= k; ++j) {
        cost = 1.0 + 0.5 * cost;
    }
    return cost;
}

ResourceEstimate cisc_for_target(size_t k, double eps, double eps_target, const ErrorBudget &budget, LevelRule rule,
                                 CountMode mode) {
    DistillationSchedule schedule = levels_required(k, eps, eps_target, rule);
    ResourceEstimate est;
    est.architecture = Architecture::cisc;
    est.k = k;
    est.eps = eps;
    est.eps_target = eps_target;
    est.levels = schedule.levels;
    est.distiller_label = "qrm" + std::to_string((1UL << (k + 2)) - 1);
    est.mode = mode_label(rule, mode);
    est.achieved_error = schedule.achieved_error();
    if (schedule.levels == 0) {
        est.expected_states = teleport_only_cost(k);
        est.correction_error = k > 2 ? eps : 0.0;
    } else {
        est.expected_states = cisc_count(k, schedule.levels, eps, mode);
        double correction = 0.0;
        if (k > 2) {
            correction = eps;
            for (size_t l = 0; l < schedule.levels; ++l) {
                correction = cisc_output_error_value(k - 1, correction);
            }
        }
        est.correction_error = correction;
    }
    est.within_budget =
        est.achieved_error <= budget.c_1() * eps_target && est.correction_error <= budget.c_2() * eps_target;
    return est;
}

std::vector<SweepRow> sweep(const SweepRequest &request) {
    std::vector<SweepRow> rows;
    for (const auto &distiller : request.risc_distillers) {
        for (size_t k : request.k_values) {
            for (double target : request.targets) {
                try {
                    ResourceEstimate est = risc_count(target, request.eps, request.budget, distiller);
                    rows.push_back(SweepRow{Architecture::risc, k, request.eps, target, est.levels,
                                            est.expected_states, est.distiller_label, est.mode});
                } catch (const DomainError &) {
                }
            }
        }
    }
    for (size_t k : request.k_values) {
        for (double target : request.targets) {
            try {
                ResourceEstimate est =
                    cisc_for_target(k, request.eps, target, request.budget, request.rule, request.mode);
                rows.push_back(SweepRow{Architecture::cisc, k, request.eps, target, est.levels, est.expected_states,
                                        est.distiller_label, est.mode});
            } catch (const DomainError &) {
            }
        }
    }
    return rows;
}

std::vector<double> log_grid(double from_exponent, double to_exponent, size_t per_decade) {
    if (per_decade == 0 || to_exponent < from_exponent) {
        throw DomainError("log_grid needs per_decade > 0 and to >= from");
    }
    std::vector<double> out;
    size_t steps = static_cast<size_t>(std::llround((to_exponent - from_exponent) * static_cast<double>(per_decade)));
    for (size_t i = 0; i <= steps; ++i) {
        double exponent = from_exponent + static_cast<double>(i) / static_cast<double>(per_decade);
        out.push_back(std::pow(10.0, -exponent));
    }
    return out;
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto &r : rows) {
        out << to_string(r.architecture) << ',' << r.k << ',' << shortest(r.eps) << ',' << shortest(r.eps_target)
            << ',' << r.levels << ',' << shortest(r.expected_states) << ',' << r.distiller << ',' << r.mode << '\n';
    }
}

void write_sweep_json(std::ostream &out, const std::vector<SweepRow> &rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto &r : rows) {
        doc.push_back({{"architecture", to_string(r.architecture)},
                       {"k", r.k},
                       {"eps", r.eps},
                       {"eps_target", r.eps_target},
                       {"levels", r.levels},
                       {"expected_states", r.expected_states},
                       {"distiller", r.distiller},
                       {"mode", r.mode}});
    }
    out << doc.dump(2) << '\n';
}

std::string to_string(Architecture a) { return a == Architecture::risc ? "risc" : "cisc"; }

std::string to_string(CountMode m) { return m == CountMode::paper ? "paper" : "exact"; }

CountMode parse_count_mode(std::string_view text) {
    if (text == "paper") {
        return CountMode::paper;
    }
    if (text == "exact") {
        return CountMode::exact;
    }
    throw std::invalid_argument("unknown count mode: " + std::string(text));
}

}  // namespace zkd
