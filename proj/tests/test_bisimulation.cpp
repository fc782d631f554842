#include "probe/bisimulation.hpp"
#include "probe/hotel.hpp"
#include "probe/parser.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace probe;

namespace {

const char* kThrow = "act head,tail; proc Throw = dist b:Bool[1/2].((b) -> head <> tail).Throw; init Throw;";

PLTS load(const std::string& text) { return explore(parse_spec(text)); }

} // namespace

TEST(Minimize, CoinIsAlreadyMinimal) {
    PLTS p = load(kThrow);
    Minimized m = minimize(p);
    EXPECT_EQ(m.partition.block_count, 2u);
    EXPECT_EQ(m.quotient.nd_states.size(), 2u);
    EXPECT_EQ(m.quotient.prob_states.size(), 1u);
    EXPECT_EQ(m.quotient.transition_count(), 2u);
}

TEST(Minimize, HotelTwo) {
    Minimized m = minimize(explore(generate_hotel_spec(2)));
    // a-enabled (one or two copies), deadlock, terminated.
    EXPECT_EQ(m.partition.block_count, 3u);
    const IdPMF& init = m.quotient.prob_states[m.quotient.initial];
    std::map<std::string, mpq_class> by_kind;
    for (const auto& [b, p] : init) {
        const NdState& s = m.quotient.nd_states[b];
        by_kind[s.transitions.empty() ? "deadlock" : s.transitions[0].label] += p.rational();
    }
    EXPECT_EQ(by_kind["a"], mpq_class(3, 4));
    EXPECT_EQ(by_kind["deadlock"], mpq_class(1, 4));
}

TEST(Minimize, LiftPreservesMass) {
    PLTS p = explore(generate_hotel_spec(3));
    Minimized m = minimize(p);
    auto masses = lift(p.prob_states[p.initial], m.partition);
    Prob total = Prob::zero();
    for (const auto& x : masses) total += x;
    EXPECT_EQ(total.rational(), 1);
}

TEST(Equivalent, Examples) {
    EXPECT_TRUE(equivalent(load(kThrow), load(kThrow)).equivalent);
    EXPECT_TRUE(equivalent(explore(generate_hotel_spec(2)), explore(bernoulli_reference(mpq_class(3, 4)))).equivalent);
    Verdict v = equivalent(load(kThrow), load("init delta;"));
    EXPECT_FALSE(v.equivalent);
    EXPECT_NE(v.str().find("DISTINGUISHED"), std::string::npos);
    EXPECT_NE(v.str().find("witness="), std::string::npos);
    EXPECT_FALSE(equivalent(explore(generate_hotel_spec(2)), explore(bernoulli_reference(mpq_class(2, 3)))).equivalent);
}

TEST(Equivalent, CoinVersusSequenceDiffers) {
    // The counting process remembers how many heads remain, the coin does not.
    PLTS seq = load("act head, tail; proc H(k: Nat) = (k > 0) -> (head . H(k - 1)) <> (tail . S);"
                    "proc S = dist k:[0..3][if(k < 3, (1/2)^(k + 1), (1/2)^3)]. H(k); init S;");
    EXPECT_FALSE(equivalent(load(kThrow), seq).equivalent);
}

TEST(Equivalent, LabelsMatter) {
    EXPECT_FALSE(equivalent(load("act a; init a;"), load("act b; init b;")).equivalent);
    EXPECT_TRUE(equivalent(load("act a; init a . a;"), load("act a; proc X = a . Y; proc Y = a; init X;")).equivalent);
    EXPECT_FALSE(equivalent(load("act a; init a;"), load("act a; init a . a;")).equivalent);
}

TEST(Equivalent, FloatAndExactMassesMeet) {
    PLTS exact = read_plts("pdes (0, 2, 3)\nP 0 0 1/2\nP 0 1 1/2\nP 1 2 1\nT 0 \"a\" 1\nT 1 \"b\" 1\nF 2 terminated\n");
    PLTS flt = read_plts("pdes (0, 2, 3)\nP 0 0 0.5\nP 0 1 0.5\nP 1 2 1.0\nT 0 \"a\" 1\nT 1 \"b\" 1\nF 2 terminated\n");
    EXPECT_TRUE(equivalent(exact, flt).equivalent);
}

// Partition refinement against the naive greatest fixed point on random systems.
TEST(Minimize, NaiveFixpointOracle) {
    testgen::Rng rng(99);
    for (int i = 0; i < 300; ++i) {
        PLTS p = testgen::random_plts(rng, 6);
        p.check();
        Minimized m = minimize(p);
        auto rel = oracle::naive_bisimulation(p);
        for (std::size_t s = 0; s < p.nd_states.size(); ++s)
            for (std::size_t t = 0; t < p.nd_states.size(); ++t)
                EXPECT_EQ(m.partition.block_of[s] == m.partition.block_of[t], bool(rel[s][t]))
                    << "case " << i << " states " << s << "," << t << "\n" << write_plts(p);
    }
}

TEST(Equivalent, NaiveOracleOnPairs) {
    testgen::Rng rng(123);
    int agree_eq = 0;
    for (int i = 0; i < 300; ++i) {
        PLTS a = testgen::random_plts(rng, 4);
        PLTS b = i % 3 == 0 ? a : testgen::random_plts(rng, 4);
        DisjointUnion u = disjoint_union(a, b);
        auto rel = oracle::naive_bisimulation(u.plts);
        const IdPMF& da = u.plts.prob_states[a.initial];
        const IdPMF& db = u.plts.prob_states[b.initial + u.prob_offset];
        bool naive = true;
        for (std::size_t c = 0; c < u.plts.nd_states.size(); ++c) {
            mpq_class x = 0, y = 0;
            for (const auto& [s, m] : da) if (rel[c][s]) x += m.rational();
            for (const auto& [s, m] : db) if (rel[c][s]) y += m.rational();
            if (x != y) naive = false;
        }
        EXPECT_EQ(equivalent(a, b).equivalent, naive) << "case " << i;
        agree_eq += naive;
    }
    EXPECT_GT(agree_eq, 90);
}

TEST(Minimize, QuotientIsMinimalAndEquivalent) {
    testgen::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        PLTS p = testgen::random_plts(rng, 6);
        Minimized m = minimize(p);
        m.quotient.check();
        EXPECT_TRUE(equivalent(p, m.quotient).equivalent) << write_plts(p);
        EXPECT_EQ(minimize(m.quotient).partition.block_count, m.quotient.nd_states.size());
    }
}

TEST(Minimize, DuplicateTransitionsMerge) {
    PLTS p = load("act a; init a . delta + a . delta;");
    ASSERT_EQ(p.nd_states[0].transitions.size(), 2u);
    Minimized m = minimize(p);
    EXPECT_EQ(m.partition.block_count, 2u);
    EXPECT_EQ(m.quotient.transition_count(), 1u);
}

TEST(Minimize, Idempotent) {
    testgen::Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        Minimized once = minimize(testgen::random_plts(rng, 6));
        Minimized twice = minimize(once.quotient);
        EXPECT_EQ(twice.partition.block_count, once.partition.block_count);
        EXPECT_EQ(twice.quotient.transition_count(), once.quotient.transition_count());
    }
}

TEST(Equivalent, ReflexiveSymmetricAndReorderInvariant) {
    testgen::Rng rng(17);
    for (int i = 0; i < 150; ++i) {
        PLTS a = testgen::random_plts(rng, 5);
        PLTS b = testgen::random_plts(rng, 5);
        EXPECT_TRUE(equivalent(a, a).equivalent);
        EXPECT_EQ(equivalent(a, b).equivalent, equivalent(b, a).equivalent);

        // Renumber nd-states by a random permutation.
        std::vector<std::size_t> perm(a.nd_states.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        PLTS r = a;
        for (std::size_t s = 0; s < perm.size(); ++s) r.nd_states[perm[s]] = a.nd_states[s];
        r.prob_states.clear();
        for (const auto& d : a.prob_states) {
            std::vector<IdPMF::Entry> es;
            for (const auto& [s, m] : d) es.emplace_back(perm[s], m);
            r.prob_states.emplace_back(std::move(es));
        }
        EXPECT_TRUE(equivalent(a, r).equivalent) << i;
        Minimized ma = minimize(a), mr = minimize(r);
        EXPECT_EQ(ma.partition.block_count, mr.partition.block_count);
        for (std::size_t s = 0; s < perm.size(); ++s)
            for (std::size_t t = 0; t < perm.size(); ++t)
                EXPECT_EQ(ma.partition.block_of[s] == ma.partition.block_of[t],
                          mr.partition.block_of[perm[s]] == mr.partition.block_of[perm[t]]);
    }
}

TEST(Equivalent, TruncationIsVisible) {
    // Bisimilar to the coin when fully explored, but this copy counts its throws
    // and is cut off at depth 6.
    PLTS counting = explore(parse_spec("act head, tail; proc C(n: Nat) = dist b:Bool[1/2]. ((b) -> head <> tail) . C(n + 1);"
                                       "init C(0);"),
                            {1000, 6});
    ASSERT_TRUE(counting.truncated);
    Verdict v = equivalent(load(kThrow), counting);
    EXPECT_FALSE(v.equivalent);
    // The unexplored frontier is what separates them: every block deeper down is
    // eventually reached only through it.
    Minimized m = minimize(disjoint_union(load(kThrow), counting).plts);
    bool unexplored_block = false;
    for (const auto& s : m.quotient.nd_states) unexplored_block = unexplored_block || s.unexplored;
    EXPECT_TRUE(unexplored_block);
}
