#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "zkdistill/polynomial.h"

namespace zkd {

inline constexpr size_t kMinDistillK = 2;
inline constexpr size_t kMaxDistillK = 12;
inline constexpr double kDefaultBisectionTol = 1e-12;

// Closed forms for one round of the shortened QRM(1, k+2) protocol that
// distills Z_k^dagger|+> from 2^(k+2) - 1 noisy inputs. With N = 2^(k+2) - 1,
// M = 2^(k+1) and x = 1 - 2 eps:
//
//   acceptance = [1 + N x^M] / 2^(k+2)
//   eps_out    = [1 - N x^(M-1) + N x^M - x^(2M-1)] / (2 [1 + N x^M])

/// Exact output error as a function of the input error.
RationalFunction cisc_output_error(size_t k);
/// Exact acceptance probability (1 / E[t]).
RationalFunction cisc_acceptance(size_t k);
/// Exact expected repetitions E[t] = 2^(k+2) / [1 + N x^M].
RationalFunction cisc_expected_repetitions(size_t k);

/// Numeric evaluators. These use extended-precision arithmetic sized to eps,
/// so tiny inputs do not lose the eps^3 term to cancellation.
double cisc_output_error_value(size_t k, double eps);
double cisc_acceptance_value(size_t k, double eps);
double cisc_expected_repetitions_value(size_t k, double eps);

/// Fixed point of eps_out(eps) = eps inside (0, 1/2), by bisection until the
/// bracket is narrower than `tol`.
double threshold(size_t k, double tol = kDefaultBisectionTol);

enum class LevelRule {
    composition,    // smallest l with the l-fold composed error <= target
    paper_formula,  // ceil(log target / log eps_out(eps))
};

struct DistillationSchedule {
    size_t k = 0;
    double base_error = 0;
    double target = 0;
    LevelRule rule = LevelRule::composition;
    size_t levels = 0;
    /// Error after each round, by exact composition, whatever the rule.
    std::vector<double> per_level_errors;
    /// E[t] for each round, evaluated at that round's input error.
    std::vector<double> per_level_repetitions;
    /// False when the paper formula picks too few rounds for the target.
    bool meets_target = true;

    double achieved_error() const { return per_level_errors.empty() ? base_error : per_level_errors.back(); }
};

DistillationSchedule levels_required(size_t k, double eps, double target, LevelRule rule = LevelRule::composition);

/// ceil(11 + 4 log2(1 / eps_qc)).
uint64_t selinger_t_count(double eps_qc);

/// log_3(2^(k+2) - 1).
double asymptotic_beta(size_t k);

/// One round of a distillation protocol, as consumed by the resource models.
struct DistillationStepModel {
    std::string label;
    size_t inputs_per_round = 0;
    size_t outputs_per_round = 0;
    std::function<double(double)> output_error;
    std::function<double(double)> acceptance;
    /// False for shipped placeholders whose numbers are not from a source.
    bool authoritative = true;

    double inputs_per_output() const {
        return static_cast<double>(inputs_per_round) / static_cast<double>(outputs_per_round);
    }
};

/// The QRM(1, k+2) round as a step model; k = 2 is the 15-to-1 distiller.
DistillationStepModel cisc_step_model(size_t k);

struct MekParameters {
    std::vector<double> acceptance;    // ascending powers of eps
    std::vector<double> output_error;  // ascending powers of eps
    std::string source;
    bool authoritative = true;
};

/// Placeholder 10-to-2 numbers (output 6 eps^2, acceptance 1 - 8 eps),
/// marked non-authoritative.
MekParameters default_mek_parameters();

/// Parses {"acceptance": [...], "output_error": [...], "source": "..."}.
/// Throws DomainError if acceptance(0) != 1 or output_error(0) != 0.
MekParameters parse_mek_parameters(std::string_view json_text);
MekParameters load_mek_parameters(const std::string &path);

/// 10-to-2 step model over the supplied coefficient lists.
DistillationStepModel mek_model(const MekParameters &params);

std::string to_string(LevelRule rule);
LevelRule parse_level_rule(std::string_view text);

}  // namespace zkd
