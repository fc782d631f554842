#include "probe/error.hpp"
#include "probe/eval.hpp"
#include "probe/parser.hpp"
#include "probe/prob.hpp"

#include <gtest/gtest.h>

using namespace probe;

namespace {

Value ev(const std::string& text, const Env& env = {}) { return eval_expr(parse_expr(text), env); }

mpq_class q(const char* s) { return mpq_class(s); }

} // namespace

TEST(Prob, ExactArithmeticStaysExact) {
    Prob a(q("1/3")), b(q("1/6"));
    Prob s = a + b;
    ASSERT_TRUE(s.is_exact());
    EXPECT_EQ(s.rational(), q("1/2"));
    EXPECT_EQ((a * b).rational(), q("1/18"));
    EXPECT_EQ(s.str(), "1/2");
}

TEST(Prob, FloatContaminates) {
    Prob s = Prob(q("1/2")) + Prob(0.25);
    EXPECT_FALSE(s.is_exact());
    EXPECT_DOUBLE_EQ(s.to_double(), 0.75);
    EXPECT_TRUE(approx_equal(s, Prob(q("3/4"))));
    EXPECT_FALSE(approx_equal(s, Prob(0.75 + 1e-6)));
}

TEST(Prob, StrParsesBack) {
    for (const Prob& p : {Prob(q("7/9")), Prob(0.1), Prob(1.0), Prob::zero(), Prob(1e-12)}) {
        Prob r = Prob::parse(p.str());
        EXPECT_EQ(r.is_exact(), p.is_exact()) << p.str();
        if (p.is_exact())
            EXPECT_EQ(r.rational(), p.rational());
        else
            EXPECT_EQ(r.to_double(), p.to_double()) << p.str();
    }
    EXPECT_THROW(Prob::parse("abc"), Error);
}

TEST(Prob, RangeChecks) {
    EXPECT_TRUE(Prob(q("-1/2")).is_negative());
    EXPECT_TRUE(Prob(q("3/2")).exceeds_one());
    EXPECT_FALSE(Prob(1.0 + 1e-12).exceeds_one());
    EXPECT_TRUE(Prob(1.0 + 1e-6).exceeds_one());
}

TEST(Eval, ExactRationalArithmetic) {
    EXPECT_EQ(ev("1/3 + 1/6"), Value::rational(q("1/2")));
    EXPECT_EQ(ev("(1/2)^3"), Value::rational(q("1/8")));
    EXPECT_EQ(ev("4/2"), Value::integer(2));
    EXPECT_EQ(ev("4/2").kind(), Value::Kind::Int);
    EXPECT_EQ(ev("2^10"), Value::integer(1024));
    EXPECT_EQ(ev("-3 + 1"), Value::integer(-2));
}

TEST(Eval, FloatsWhenRealLiteralEnters) {
    Value v = ev("1/2 + 0.25");
    EXPECT_EQ(v.kind(), Value::Kind::Real);
    EXPECT_DOUBLE_EQ(v.as_double(), 0.75);
}

TEST(Eval, ComparisonsAndLogic) {
    EXPECT_TRUE(ev("1/2 < 2/3").as_bool());
    EXPECT_TRUE(ev("1/2 = 0.5").as_bool());
    EXPECT_TRUE(ev("3 != 4 && !(2 > 5)").as_bool());
    EXPECT_FALSE(ev("true && false || false").as_bool());
    // Lazy: the right operand would divide by zero.
    EXPECT_FALSE(ev("false && 1/0 = 1").as_bool());
    EXPECT_TRUE(ev("true || 1/0 = 1").as_bool());
}

TEST(Eval, ConditionalAndVariables) {
    Env env{{"k", Value::integer(3)}, {"b", Value::boolean(true)}};
    EXPECT_EQ(ev("if(b, k * 2, 0)", env), Value::integer(6));
    EXPECT_EQ(ev("if(k < 2, (1/2)^(k+1), (1/2)^2)", env), Value::rational(q("1/4")));
    EXPECT_THROW(ev("zz + 1", env), EvalError);
}

TEST(Eval, Errors) {
    EXPECT_THROW(ev("1/0"), EvalError);
    EXPECT_THROW(ev("2^(1/2)"), EvalError);
    EXPECT_THROW(ev("2^(0-1)"), EvalError);
    EXPECT_THROW(ev("true + 1"), EvalError);
    EXPECT_THROW(ev("if(1, 2, 3)"), EvalError);
}

TEST(Sorts, EnumerationAndMembership) {
    auto vs = enumerate_sort(Sort::range(2, 4));
    ASSERT_EQ(vs.size(), 3u);
    EXPECT_EQ(vs.front(), Value::integer(2));
    auto bs = enumerate_sort(Sort::boolean());
    ASSERT_EQ(bs.size(), 2u);
    EXPECT_THROW(enumerate_sort(Sort::nat()), EvalError);
    EXPECT_THROW(Sort::range(3, 2), Error);
    EXPECT_TRUE(Sort::nat().contains(Value::integer(0)));
    EXPECT_FALSE(Sort::nat().contains(Value::integer(-1)));
    EXPECT_FALSE(Sort::range(0, 3).contains(Value::integer(4)));
    EXPECT_TRUE(Sort::real().contains(Value::real(0.5)));
    EXPECT_EQ(Sort::range(1, 4).str(), "[1..4]");
}
