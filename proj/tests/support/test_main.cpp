#include "probe/pmf.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdint>

namespace probe::testing {

namespace {
std::atomic<std::uint64_t> g_expected{0};
} // namespace

void expect_violations(std::uint64_t n) { g_expected += n; }

} // namespace probe::testing

namespace {

/// Every distribution built while the tests ran must have been normalized,
/// apart from those a test deliberately made invalid.
class NormalizationSweep : public ::testing::Environment {
public:
    void TearDown() override {
        auto stats = probe::pmf_stats();
        EXPECT_EQ(stats.violations, probe::testing::g_expected.load())
            << "unexpected unnormalized distributions (" << stats.constructed << " constructed)";
    }
};

} // namespace

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    ::testing::AddGlobalTestEnvironment(new NormalizationSweep);
    return RUN_ALL_TESTS();
}
