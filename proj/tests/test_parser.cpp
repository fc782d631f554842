#include "probe/hotel.hpp"
#include "probe/parser.hpp"
#include "probe/plts.hpp"
#include "probe/printer.hpp"
#include "probe/validate.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace probe;
using K = ProcNode::Kind;

namespace {

std::string read_model(const std::string& name) {
    std::ifstream in(std::string(PROBE_MODELS_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> messages(const std::vector<Diagnostic>& ds) {
    std::vector<std::string> out;
    for (const auto& d : ds) out.push_back(d.message);
    return out;
}

bool mentions(const std::vector<Diagnostic>& ds, const std::string& text, Diagnostic::Severity sev) {
    for (const auto& d : ds)
        if (d.severity == sev && d.message.find(text) != std::string::npos) return true;
    return false;
}

const char* kThrow = "act head,tail; proc Throw = dist b:Bool[1/2].((b) -> head <> tail).Throw; init Throw;";

} // namespace

TEST(Parser, CoinThrow) {
    Spec s = parse_spec(kThrow);
    ASSERT_EQ(s.actions.size(), 2u);
    const Equation* eq = s.find_equation("Throw");
    ASSERT_NE(eq, nullptr);
    // dist b:Bool[1/2]. (cond) . Throw: the binder takes the parenthesised factor only.
    ASSERT_EQ(eq->body->kind, K::Seq);
    const ProcExpr& d = eq->body->children[0];
    ASSERT_EQ(d->kind, K::Dist);
    EXPECT_EQ(d->density.kind, DensitySpec::Kind::Pmf);
    EXPECT_TRUE(equal(d->density.params[0], ex::fraction(mpq_class(1, 2))));
    EXPECT_EQ(d->children[0]->kind, K::Cond);
    EXPECT_EQ(eq->body->children[1]->kind, K::ProcRef);
    EXPECT_EQ(s.init->kind, K::ProcRef);
    EXPECT_TRUE(validate(s).empty());
}

TEST(Parser, MinimalProgram) {
    Spec s = parse_spec("init delta;");
    EXPECT_TRUE(s.actions.empty());
    EXPECT_TRUE(s.equations.empty());
    EXPECT_EQ(s.init->kind, K::Delta);
    EXPECT_EQ(pretty_print(s), "init delta;\n");
}

TEST(Parser, SumOverRange) {
    Spec s = parse_spec("act read:Nat; init sum n:[0..99].read(n).delta;");
    // The binder extends to the next factor: (sum n. read(n)) . delta.
    ASSERT_EQ(s.init->kind, K::Seq);
    const ProcExpr& sum = s.init->children[0];
    ASSERT_EQ(sum->kind, K::Sum);
    EXPECT_EQ(sum->sort.kind, Sort::Kind::Range);
    EXPECT_EQ(sum->sort.lo, 0);
    EXPECT_EQ(sum->sort.hi, 99);
    EXPECT_EQ(s.init->children[1]->kind, K::Delta);
    const ProcExpr& body = sum->children[0];
    ASSERT_EQ(body->kind, K::Action);
    EXPECT_EQ(body->name, "read");
    EXPECT_TRUE(validate(s).empty());
}

TEST(Parser, Precedence) {
    Spec s = parse_spec("act a, b, c; init a . b + c . a . b;");
    ASSERT_EQ(s.init->kind, K::Alt);
    EXPECT_EQ(s.init->children[0]->kind, K::Seq);
    // Left-associated: (c . a) . b
    ASSERT_EQ(s.init->children[1]->kind, K::Seq);
    EXPECT_EQ(s.init->children[1]->children[0]->kind, K::Seq);
}

TEST(Parser, CondDefaultLaw) {
    Spec a = parse_spec("act x; init dist b:Bool[1/2]. (b) -> x;");
    Spec b = parse_spec("act x; init dist b:Bool[1/2]. (b) -> x <> delta;");
    EXPECT_TRUE(equal(a, b));
}

TEST(Parser, Densities) {
    EXPECT_EQ(parse_density("Uniform(0, 1)").kind, DensitySpec::Kind::Uniform);
    EXPECT_EQ(parse_density("Exp(1 + t)").kind, DensitySpec::Kind::Exponential);
    DensitySpec n = parse_density("NormalTrunc(0, 1, 0, inf)");
    EXPECT_EQ(n.kind, DensitySpec::Kind::NormalTrunc);
    EXPECT_EQ(n.params.size(), 4u);
    EXPECT_EQ(parse_density("if(b, 1/3, 2/3)").kind, DensitySpec::Kind::Pmf);
    EXPECT_THROW(parse_density("Exp(1, 2)"), ParseError);
    EXPECT_THROW(parse_density("Uniform(1)"), ParseError);
}

TEST(Parser, ErrorsCarryLocation) {
    try {
        parse_spec("act a;\ninit a .. a;");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location().line, 2);
        EXPECT_GT(e.location().column, 1);
    }
    EXPECT_THROW(parse_spec("act a: Colour; init delta;"), ParseError);
    EXPECT_THROW(parse_spec("init sum n:[3..1]. delta;"), ParseError);
    EXPECT_THROW(parse_spec("act a;"), ParseError);
    EXPECT_THROW(parse_spec("init delta; init delta;"), ParseError);
    EXPECT_THROW(parse_spec("init dist x:Real[Gamma(1)]. delta;"), ParseError);
}

TEST(Parser, CommentsAndWhitespace) {
    Spec s = parse_spec("% header\nact a; % trailing\n\n  init   a ; % done");
    EXPECT_EQ(s.init->kind, K::Action);
}

TEST(Printer, RoundTripExamples) {
    for (const char* text : {kThrow, "init delta;", "act read:Nat; init sum n:[0..99].read(n).delta;",
                             "act a, b; init a . (b + a) . (a . b);", "act a; init (a + a) . a + a;",
                             "act a; proc X(k: Nat) = (k > 0) -> (a . X(k - 1)); init X(3);",
                             "act s: Nat # Real; init dist r:Real[Exp(2 + 3 * 2)]. s(1, r);",
                             "act a; init dist x:Real[NormalTrunc(0, 1, 0, inf)]. (x > 1) -> a <> (a . a);"}) {
        Spec s = parse_spec(text);
        std::string printed = pretty_print(s);
        Spec again = parse_spec(printed);
        EXPECT_TRUE(equal(s, again)) << text << "\nprinted as\n" << printed;
        EXPECT_EQ(pretty_print(again), printed);
    }
}

TEST(Printer, RoundTripGeneratedHotel) {
    for (std::uint64_t n : {1u, 2u, 7u}) {
        Spec s = generate_hotel_spec(n);
        EXPECT_TRUE(equal(parse_spec(pretty_print(s)), s)) << n;
    }
}

TEST(Printer, RoundTripRandomSpecs) {
    testgen::Rng rng(20260101);
    for (int i = 0; i < 300; ++i) {
        Spec s;
        s.actions = testgen::finite_actions();
        s.init = testgen::random_finite_proc(rng, 4);
        std::string printed = pretty_print(s);
        Spec again;
        ASSERT_NO_THROW(again = parse_spec(printed)) << printed;
        EXPECT_TRUE(equal(s, again)) << printed << "\nreprinted\n" << pretty_print(again);
    }
}

TEST(Validate, UnguardedRecursion) {
    auto ds = validate(parse_spec("proc X = X; init X;"));
    EXPECT_TRUE(mentions(ds, "unguarded recursion at X", Diagnostic::Severity::Error));
    auto mutual = validate(parse_spec("act a; proc X = Y + a; proc Y = X; init X;"));
    EXPECT_TRUE(has_errors(mutual));
    auto guarded = validate(parse_spec("act a; proc X = a . Y; proc Y = X; init X;"));
    EXPECT_FALSE(has_errors(guarded));
}

TEST(Validate, ScopingSortsAndArity) {
    EXPECT_TRUE(mentions(validate(parse_spec("act a: Nat; init a(k);")), "unbound", Diagnostic::Severity::Error));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a: Nat; init a(1, 2);"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a: Nat; init a(true);"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("init b;"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a; proc X(n: Nat) = a; init X;"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a; init (1 + 2) -> a;"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a; init dist x:Nat[1/2]. a;"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a; init dist x:Bool[Exp(1)]. a;"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a; init dist x:Real[Exp(0 - 1)]. a;"))));
    EXPECT_TRUE(has_errors(validate(parse_spec("act a; init dist x:Real[Uniform(2, 1)]. a;"))));
}

TEST(Validate, ContinuousHotelWarns) {
    Spec s = parse_spec(read_model("real_hotel_continuous.prb"));
    auto ds = validate(s);
    EXPECT_FALSE(has_errors(ds)) << ::testing::PrintToString(messages(ds));
    EXPECT_TRUE(mentions(ds, "not finitely explorable", Diagnostic::Severity::Warning));
    EXPECT_TRUE(mentions(ds, "sum over infinite sort", Diagnostic::Severity::Warning));
}

TEST(Validate, NarrowingBoundedSums) {
    Spec s = parse_spec("act read:Nat; init sum n:Nat. (n < 100) -> read(n);");
    EXPECT_TRUE(validate(s).empty());
    Spec n = narrow_sums(s);
    ASSERT_EQ(n.init->kind, K::Sum);
    EXPECT_EQ(n.init->sort.kind, Sort::Kind::Range);
    EXPECT_EQ(n.init->sort.lo, 0);
    EXPECT_EQ(n.init->sort.hi, 99);

    Spec both = narrow_sums(parse_spec("act r:Int; init sum n:Int. (n >= 0 - 2 && 5 > n) -> r(n);"));
    ASSERT_EQ(both.init->sort.kind, Sort::Kind::Range);
    EXPECT_EQ(both.init->sort.lo, -2);
    EXPECT_EQ(both.init->sort.hi, 4);

    // Integer sum without a lower bound stays infinite.
    auto ds = validate(parse_spec("act r:Int; init sum n:Int. (n < 3) -> r(n);"));
    EXPECT_TRUE(mentions(ds, "not finitely explorable", Diagnostic::Severity::Warning));
}

TEST(Validate, CorpusAsDocumented) {
    for (const char* f : {"throw.prb", "throw_sequence.prb", "hotel1.prb", "hotel2.prb", "hotel3.prb", "hotel4.prb",
                          "bernoulli_3_4.prb", "delta.prb"})
        EXPECT_TRUE(validate(parse_spec(read_model(f))).empty()) << f;
    for (const char* f : {"slot_machine.prb", "store_employees.prb", "real_hotel_continuous.prb"}) {
        auto ds = validate(parse_spec(read_model(f)));
        EXPECT_FALSE(has_errors(ds)) << f;
        EXPECT_FALSE(ds.empty()) << f;
    }
    EXPECT_TRUE(has_errors(validate(parse_spec(read_model("unguarded.prb")))));
}

// Specs that validate cleanly must explore without scoping or sort failures.
TEST(Validate, SoundnessFuzz) {
    testgen::Rng rng(77);
    const std::vector<std::pair<std::string, std::string>> mutations = {
        {"n0", "d0"}, {"d1", "n1"}, {"c(", "a("}, {"(true)", "(1)"}, {"n2", "zz"}, {"[0..2]", "Nat"}, {"Bool", "[0..1]"}};
    int clean = 0;
    for (int i = 0; i < 400; ++i) {
        Spec s;
        s.actions = testgen::finite_actions();
        s.init = testgen::random_finite_proc(rng, 3);
        std::string text = pretty_print(s);
        auto [from, to] = mutations[testgen::pick(rng, static_cast<int>(mutations.size()))];
        if (auto pos = text.find(from); pos != std::string::npos) text.replace(pos, from.size(), to);
        Spec m;
        try {
            m = parse_spec(text);
        } catch (const ParseError&) {
            continue;
        }
        if (!validate(m).empty()) continue;
        ++clean;
        try {
            explore(m);
        } catch (const EvalError& e) {
            ADD_FAILURE() << "validated spec failed: " << e.what() << "\n" << text;
        }
    }
    EXPECT_GT(clean, 100);
}
