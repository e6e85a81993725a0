#include "zkdistill/transversality.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace zkd {
namespace {

BitMatrix shortened_rows(size_t m) { return qrm(1, m, true).hx(); }

TEST(Ward, ShortenedRm14PassesAtK2) {
    WardResult r = ward_test(shortened_rows(4), 2);
    EXPECT_TRUE(r.passed);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(Ward, ShortenedRm14FailsAtK3) {
    WardResult r = ward_test(shortened_rows(4), 3);
    ASSERT_FALSE(r.passed);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->j, 1u);
    EXPECT_EQ(r.witness->rows, std::vector<size_t>{0});
    EXPECT_EQ(r.witness->weight, 8u);
    EXPECT_EQ(r.witness->modulus, 16u);
}

TEST(Ward, AllOnesRow) {
    for (size_t k = 0; k <= 8; ++k) {
        BitMatrix m(std::vector<BitVector>{BitVector::ones(size_t{1} << (k + 1))});
        EXPECT_TRUE(ward_test(m, k).passed) << k;
    }
}

TEST(Direct, Examples) {
    EXPECT_TRUE(divisibility_direct(shortened_rows(4), 8));
    EXPECT_TRUE(divisibility_direct(shortened_rows(5), 16));
    EXPECT_FALSE(divisibility_direct(shortened_rows(4), 16));
}

TEST(WardEquivalence, ShortenedFamily) {
    for (size_t m = 3; m <= 12; ++m) {
        BitMatrix rows = shortened_rows(m);
        for (size_t k = 0; k + 2 <= m + 1; ++k) {
            EXPECT_EQ(ward_test(rows, k).passed, divisibility_direct(rows, uint64_t{1} << (k + 1)))
                << "m=" << m << " k=" << k;
        }
    }
}

TEST(WardEquivalence, RandomSmallMatrices) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        size_t rows = 1 + rng() % 6;
        size_t cols = 2 + rng() % 20;
        BitMatrix m(rows, cols);
        // Bias toward even-weight rows so that passes are not vanishingly rare.
        for (size_t r = 0; r < rows; ++r) {
            for (size_t c = 0; c < cols; ++c) {
                m.set(r, c, (rng() % 3) != 0);
            }
        }
        for (size_t k = 0; k <= 3; ++k) {
            EXPECT_EQ(ward_test(m, k).passed, divisibility_direct(m, uint64_t{1} << (k + 1)));
        }
    }
}

TEST(WardEquivalence, RowPermutationInvariant) {
    std::mt19937_64 rng(99);
    BitMatrix base = shortened_rows(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<BitVector> rows = base.rows();
        std::shuffle(rows.begin(), rows.end(), rng);
        BitMatrix permuted(rows, base.col_count());
        for (size_t k = 0; k <= 4; ++k) {
            EXPECT_EQ(ward_test(permuted, k).passed, ward_test(base, k).passed);
        }
    }
}

TEST(Euclid, Examples) {
    EXPECT_EQ(extended_euclid_inverse(1, 8), 1u);
    EXPECT_EQ(extended_euclid_inverse(7, 8), 7u);
    EXPECT_EQ(extended_euclid_inverse(15, 16), 15u);
    EXPECT_EQ(extended_euclid_inverse(3, 16), 11u);
    EXPECT_THROW(extended_euclid_inverse(2, 8), DomainError);
    EXPECT_THROW(extended_euclid_inverse(1, 1), DomainError);
}

TEST(Euclid, AllOddResidues) {
    for (uint64_t mod = 2; mod <= 1024; mod *= 2) {
        for (uint64_t a = 1; a < mod; a += 2) {
            uint64_t x = extended_euclid_inverse(a, mod);
            EXPECT_GT(x, 0u);
            EXPECT_LT(x, mod);
            EXPECT_EQ((a * x) % mod, 1u);
        }
    }
}

TEST(Certify, Examples) {
    TransversalityCertificate c2 = certify_zk(qrm(1, 4, true), 2);
    EXPECT_TRUE(c2.passed);
    EXPECT_EQ(c2.a, 7u);
    EXPECT_EQ(c2.x, std::optional<uint64_t>(7));

    TransversalityCertificate c3 = certify_zk(qrm(1, 5, true), 3);
    EXPECT_TRUE(c3.passed);
    EXPECT_EQ(c3.a, 15u);
    EXPECT_EQ(c3.x, std::optional<uint64_t>(15));

    TransversalityCertificate bad = certify_zk(qrm(1, 4, true), 3);
    EXPECT_FALSE(bad.passed);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_EQ(bad.witness->j, 1u);
}

TEST(Certify, Family) {
    for (size_t k = 2; k <= 10; ++k) {
        TransversalityCertificate c = certify_zk(qrm(1, k + 2, true), k);
        EXPECT_TRUE(c.passed) << k;
        EXPECT_EQ(c.a, (uint64_t{1} << (k + 1)) - 1);
        ASSERT_TRUE(c.x.has_value());
        EXPECT_EQ((c.a * *c.x) % (uint64_t{1} << (k + 1)), 1u);
    }
}

TEST(Certify, NeedsOneLogicalQubit) { EXPECT_THROW(certify_zk(qrm(1, 4, false), 2), DomainError); }

}  // namespace
}  // namespace zkd
