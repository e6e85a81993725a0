#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zkdistill/distillation.h"

namespace zkd {

/// Error-budget fractions. C_qc + C_T <= 1 splits a RISC target between
/// compiling and T-state error; C_1 + C_2 <= 1 splits a CISC target between
/// the teleported state and its Z_(k-1) correction. Invalid budgets cannot
/// be constructed.
class ErrorBudget {
   public:
    static ErrorBudget make(double c_qc, double c_t, double c_1, double c_2);
    static ErrorBudget balanced() { return make(0.5, 0.5, 0.5, 0.5); }

    double c_qc() const { return c_qc_; }
    double c_t() const { return c_t_; }
    double c_1() const { return c_1_; }
    double c_2() const { return c_2_; }

   private:
    ErrorBudget(double c_qc, double c_t, double c_1, double c_2) : c_qc_(c_qc), c_t_(c_t), c_1_(c_1), c_2_(c_2) {}
    double c_qc_, c_t_, c_1_, c_2_;
};

enum class Architecture { risc, cisc };

enum class CountMode {
    paper,  // constant E[t(eps)] and n(2, l) = E[t] 15^l
    exact,  // E[t] at each level's actual input error
};

struct ResourceEstimate {
    Architecture architecture = Architecture::risc;
    size_t k = 0;
    double eps = 0;
    double eps_target = 0;
    size_t levels = 0;
    double expected_states = 0;
    std::string distiller_label;
    std::string mode;
    /// Error of each distilled state actually consumed.
    double achieved_error = 0;
    /// RISC only: T gates from the compiler.
    uint64_t t_count = 0;
    /// CISC only: error of the Z_(k-1) correction distilled to the same level.
    double correction_error = 0;
    /// Whether achieved errors fit the budget split (C_T / n_T for RISC,
    /// C_1 and C_2 for CISC).
    bool within_budget = true;
    /// False when a non-authoritative distiller placeholder was used.
    bool authoritative = true;
};

struct ChainResult {
    size_t levels = 0;
    std::vector<double> per_level_errors;
    double expected_states = 1;  // bare inputs per distilled output
};

/// Repeats `model` until the error reaches `target`. Cost follows
/// n(l) = (inputs / outputs) * n(l-1) / a(eps_(l-1)) with n(0) = 1.
/// Throws DomainError if a round fails to lower the error.
ChainResult distillation_chain(double target, double eps, const DistillationStepModel &model);

/// distillation_chain with a 10-to-2 MEK model.
ChainResult mek_chain(double target, double eps, const DistillationStepModel &model);

/// Compile to T gates (n_T from the Selinger count at C_qc * target), then
/// distill each T state to C_T * target / n_T. Independent of k.
ResourceEstimate risc_count(double eps_target, double eps, const ErrorBudget &budget,
                            const DistillationStepModel &distiller);

/// Expected bare Z_j|+> states for a Z_k|+> state distilled `levels` times:
///   n(k, l) = (2^(k+2) - 1) [n(k, l-1) + n(k-1, l-1) / 2] E[t] + n(k-1, l) / 2
/// with n(k, 0) = 1 and n(1, .) = 0. Paper mode uses E[t(eps)] throughout and
/// n(2, l) = E[t(eps)] 15^l; exact mode evaluates E[t] at each level's input.
double cisc_count(size_t k, size_t levels, double eps, CountMode mode);

/// Expected states to teleport Z_k with bare resources: 1 + t(k-1) / 2,
/// t(1) = 0.
double teleport_only_cost(size_t k);

ResourceEstimate cisc_for_target(size_t k, double eps, double eps_target, const ErrorBudget &budget,
                                 LevelRule rule = LevelRule::composition, CountMode mode = CountMode::exact);

struct SweepRow {
    Architecture architecture;
    size_t k;
    double eps;
    double eps_target;
    size_t levels;
    double expected_states;
    std::string distiller;
    std::string mode;
};

struct SweepRequest {
    std::vector<size_t> k_values;
    double eps = 1e-4;
    std::vector<double> targets;
    ErrorBudget budget = ErrorBudget::balanced();
    std::vector<DistillationStepModel> risc_distillers;
    LevelRule rule = LevelRule::composition;
    CountMode mode = CountMode::exact;
};

/// RISC rows (one per distiller, k, target) followed by CISC rows. Points
/// that are infeasible (e.g. unreachable targets) are omitted.
std::vector<SweepRow> sweep(const SweepRequest &request);

/// Targets 10^-from .. 10^-to in `per_decade` steps per decade.
std::vector<double> log_grid(double from_exponent, double to_exponent, size_t per_decade);

inline constexpr std::string_view kSweepCsvHeader = "architecture,k,eps,eps_target,levels,expected_states,distiller,mode";

void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows);
void write_sweep_json(std::ostream &out, const std::vector<SweepRow> &rows);

std::string to_string(Architecture a);
std::string to_string(CountMode m);
CountMode parse_count_mode(std::string_view text);

}  // namespace zkd
