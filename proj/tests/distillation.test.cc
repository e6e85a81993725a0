#include "zkdistill/distillation.h"

#include <gtest/gtest.h>

#include <cmath>

#include "zkdistill/codes.h"

namespace zkd {
namespace {

const long kTableCoefficients[] = {35, 155, 651, 2667, 10795, 43435, 174251, 698027, 2794155};
const double kTablePercent[] = {14.15, 6.94, 3.44, 1.71, 0.85, 0.43, 0.21, 0.11, 0.05};

// Exact value of eps_out at a dyadic eps from the bare formula.
mpq_class direct_output_error(size_t k, const mpq_class &eps) {
    mpq_class x = 1 - 2 * eps;
    size_t m = size_t{1} << (k + 1);
    mpq_class n((1L << (k + 2)) - 1);
    mpq_class xm1 = 1;
    for (size_t i = 0; i + 1 < m; ++i) {
        xm1 *= x;
    }
    mpq_class xm = xm1 * x;
    return (1 - n * xm1 + n * xm - xm1 * xm) / (2 * (1 + n * xm));
}

// Weight-3 Z patterns that pass every X check but flip the logical.
long count_weight3_logical_errors(size_t k) {
    CssCode code = qrm(1, k + 2, true);
    size_t n = code.n();
    long count = 0;
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
            for (size_t c = b + 1; c < n; ++c) {
                BitVector e(n);
                e.set(a, true);
                e.set(b, true);
                e.set(c, true);
                if (code.hx().apply(e).none()) {
                    ++count;
                }
            }
        }
    }
    return count;
}

TEST(OutputError, TableLeadingCoefficients) {
    for (size_t k = 2; k <= 10; ++k) {
        std::vector<mpq_class> s = cisc_output_error(k).series(4);
        EXPECT_EQ(s[0], 0);
        EXPECT_EQ(s[1], 0);
        EXPECT_EQ(s[2], 0);
        EXPECT_EQ(s[3], kTableCoefficients[k - 2]) << k;
        EXPECT_EQ(s[4], 3 * s[3]) << k;
        long closed = (1L - 3L * (1L << (k + 1)) + (1L << (2 * k + 3))) / 3;
        EXPECT_EQ(s[3], closed);
    }
}

TEST(OutputError, LeadingCoefficientCountsUndetectedTriples) {
    for (size_t k = 2; k <= 3; ++k) {
        EXPECT_EQ(cisc_output_error(k).series(3)[3], count_weight3_logical_errors(k));
    }
}

TEST(OutputError, DenominatorIdentity) {
    for (size_t k = 2; k <= 6; ++k) {
        RationalFunction eout = cisc_output_error(k);
        RationalFunction acc = cisc_acceptance(k);
        EXPECT_EQ(acc * cisc_expected_repetitions(k), RationalFunction(IntPoly(1)));
        IntPoly expected =
            (IntPoly(1) + IntPoly::binomial_power(1, -2, size_t{1} << (k + 1)) * mpz_class((1L << (k + 2)) - 1)) *
            mpz_class(2);
        EXPECT_EQ(eout.denominator(), expected.exact_div(expected.content()));
    }
}

TEST(OutputError, Anchors) {
    for (size_t k = 2; k <= 8; ++k) {
        RationalFunction f = cisc_output_error(k);
        EXPECT_EQ(f.evaluate(mpq_class(0)), 0);
        EXPECT_EQ(f.evaluate(mpq_class(1, 2)), mpq_class(1, 2));
        EXPECT_EQ(cisc_output_error_value(k, 0.0), 0.0);
    }
    EXPECT_THROW(cisc_output_error(1), DomainError);
    EXPECT_THROW(cisc_output_error(13), DomainError);
}

TEST(OutputError, PreciseEvaluatorMatchesExact) {
    for (size_t k : {2, 3, 5}) {
        for (int e = 2; e <= 12; ++e) {
            double eps = std::ldexp(1.0, -3 * e);
            double exact = direct_output_error(k, mpq_class(eps)).get_d();
            EXPECT_NEAR(cisc_output_error_value(k, eps) / exact, 1.0, 1e-12) << "k=" << k << " eps=" << eps;
        }
    }
}

TEST(OutputError, MonotoneBelowThreshold) {
    for (size_t k = 2; k <= 10; ++k) {
        double th = threshold(k);
        double prev = 0.0;
        for (int i = 1; i <= 400; ++i) {
            double eps = th * i / 400.0;
            double v = cisc_output_error_value(k, eps);
            EXPECT_GT(v, prev) << "k=" << k << " eps=" << eps;
            prev = v;
        }
    }
}

TEST(Acceptance, Anchors) {
    for (size_t k = 2; k <= 10; ++k) {
        EXPECT_EQ(cisc_expected_repetitions(k).evaluate(mpq_class(0)), 1);
        EXPECT_EQ(cisc_acceptance(k).evaluate(mpq_class(0)), 1);
        EXPECT_EQ(cisc_acceptance(k).evaluate(mpq_class(1, 2)), mpq_class(1, 1L << (k + 2)));
    }
    double direct = 16.0 / (1.0 + 15.0 * std::pow(1.0 - 2e-4, 8));
    EXPECT_NEAR(cisc_expected_repetitions_value(2, 1e-4) / direct, 1.0, 1e-12);
    EXPECT_NEAR(cisc_expected_repetitions_value(2, 1e-4), 1.0015, 1e-4);
}

TEST(Threshold, TableValues) {
    for (size_t k = 2; k <= 10; ++k) {
        double pct = 100.0 * threshold(k);
        EXPECT_NEAR(std::round(pct * 100.0) / 100.0, kTablePercent[k - 2], 1e-9) << k;
    }
    EXPECT_LT(threshold(2), (2.0 - std::sqrt(2.0)) / 4.0);
}

TEST(Threshold, IsAFixedPointWithSignChange) {
    for (size_t k = 2; k <= 10; ++k) {
        double th = threshold(k, 1e-14);
        mpq_class below(th * (1 - 1e-9)), above(th * (1 + 1e-9));
        EXPECT_LT(direct_output_error(k, below), below);
        EXPECT_GT(direct_output_error(k, above), above);
        if (k < 10) {
            EXPECT_LT(threshold(k + 1), th);
        }
    }
    EXPECT_THROW(threshold(2, 0.0), DomainError);
}

TEST(Levels, Examples) {
    DistillationSchedule none = levels_required(2, 1e-4, 1e-3);
    EXPECT_EQ(none.levels, 0u);
    EXPECT_DOUBLE_EQ(none.achieved_error(), 1e-4);

    DistillationSchedule one = levels_required(2, 1e-4, 1e-10);
    EXPECT_EQ(one.levels, 1u);
    EXPECT_NEAR(one.per_level_errors[0], 3.5e-11, 0.01e-11);
    EXPECT_NEAR(one.per_level_repetitions[0], cisc_expected_repetitions_value(2, 1e-4), 1e-15);

    DistillationSchedule paper = levels_required(2, 1e-4, 1e-20, LevelRule::paper_formula);
    EXPECT_EQ(paper.levels, 2u);
    EXPECT_EQ(paper.per_level_errors.size(), 2u);

    EXPECT_THROW(levels_required(2, 0.2, 1e-8), DomainError);
    EXPECT_THROW(levels_required(3, 0.08, 1e-8), DomainError);
}

TEST(Levels, CompositionIsMinimalAndDecreasing) {
    for (size_t k = 2; k <= 5; ++k) {
        for (double target : {1e-6, 1e-12, 1e-30, 1e-60}) {
            DistillationSchedule s = levels_required(k, 1e-3, target);
            ASSERT_GE(s.levels, 1u);
            EXPECT_LE(s.achieved_error(), target);
            double before = s.levels >= 2 ? s.per_level_errors[s.levels - 2] : 1e-3;
            EXPECT_GT(before, target);
            for (size_t i = 1; i < s.levels; ++i) {
                EXPECT_LT(s.per_level_errors[i], s.per_level_errors[i - 1]);
            }
        }
    }
}

TEST(Selinger, Examples) {
    EXPECT_EQ(selinger_t_count(std::ldexp(1.0, -10)), 51u);
    EXPECT_EQ(selinger_t_count(0.5), 15u);
    EXPECT_EQ(selinger_t_count(1e-6), 91u);
    EXPECT_THROW(selinger_t_count(0.0), DomainError);
    EXPECT_THROW(selinger_t_count(1.0), DomainError);
}

TEST(Beta, Examples) {
    EXPECT_NEAR(asymptotic_beta(2), 2.465, 1e-3);
    EXPECT_NEAR(asymptotic_beta(3), 3.126, 1e-3);
    EXPECT_NEAR(asymptotic_beta(6), 5.044, 1e-3);
}

TEST(StepModel, CiscRound) {
    DistillationStepModel m = cisc_step_model(2);
    EXPECT_EQ(m.label, "qrm15");
    EXPECT_EQ(m.inputs_per_round, 15u);
    EXPECT_EQ(m.outputs_per_round, 1u);
    EXPECT_DOUBLE_EQ(m.acceptance(0.0), 1.0);
    EXPECT_DOUBLE_EQ(m.output_error(0.0), 0.0);
}

TEST(Mek, PlaceholderIsFlagged) {
    DistillationStepModel m = mek_model(default_mek_parameters());
    EXPECT_FALSE(m.authoritative);
    EXPECT_NE(m.label.find("NON-AUTHORITATIVE"), std::string::npos);
    EXPECT_EQ(m.inputs_per_round, 10u);
    EXPECT_EQ(m.outputs_per_round, 2u);
    EXPECT_DOUBLE_EQ(m.acceptance(0.0), 1.0);
    EXPECT_DOUBLE_EQ(m.output_error(0.0), 0.0);
    EXPECT_DOUBLE_EQ(m.output_error(1e-3), 6e-6);
}

TEST(Mek, ParsingEnforcesAnchors) {
    MekParameters p = parse_mek_parameters(R"({"acceptance":[1,-8],"output_error":[0,0,9],"source":"test"})");
    EXPECT_EQ(p.source, "test");
    EXPECT_TRUE(p.authoritative);
    EXPECT_DOUBLE_EQ(mek_model(p).output_error(0.01), 9e-4);
    EXPECT_THROW(parse_mek_parameters(R"({"acceptance":[0.9],"output_error":[0]})"), DomainError);
    EXPECT_THROW(parse_mek_parameters(R"({"acceptance":[1],"output_error":[0.1]})"), DomainError);
    EXPECT_THROW(parse_mek_parameters("not json"), DomainError);
    EXPECT_THROW(parse_mek_parameters(R"({"acceptance":[1]})"), DomainError);
    EXPECT_THROW(load_mek_parameters("/nonexistent/mek.json"), DomainError);
}

TEST(LevelRule, RoundTrip) {
    EXPECT_EQ(parse_level_rule(to_string(LevelRule::composition)), LevelRule::composition);
    EXPECT_EQ(parse_level_rule(to_string(LevelRule::paper_formula)), LevelRule::paper_formula);
    EXPECT_THROW(parse_level_rule("other"), std::invalid_argument);
}

}  // namespace
}  // namespace zkd
