#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

namespace probe {

/// Absolute tolerance for comparing floating-point probabilities.
inline constexpr double kProbTolerance = 1e-9;

/// A probability that is exact (GMP rational) as long as every input was
/// exact, and degrades to a double as soon as one floating input enters.
class Prob {
public:
    Prob() : v_(mpq_class(0)) {}
    explicit Prob(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
    explicit Prob(double d) : v_(d) {}

    static Prob zero() { return Prob(mpq_class(0)); }
    static Prob one() { return Prob(mpq_class(1)); }

    bool is_exact() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    double to_double() const;

    bool is_zero() const;
    bool is_negative() const;
    /// True when the value exceeds 1 (beyond tolerance for floats).
    bool exceeds_one() const;

    Prob operator+(const Prob& o) const;
    Prob operator-(const Prob& o) const;
    Prob operator*(const Prob& o) const;
    Prob& operator+=(const Prob& o) { return *this = *this + o; }
    Prob& operator*=(const Prob& o) { return *this = *this * o; }

    /// "1/2" for exact values, shortest round-trip decimal for floats.
    std::string str() const;

    /// Parse the output of str(); fractions become exact, decimals become floats.
    static Prob parse(const std::string& text);

private:
    std::variant<mpq_class, double> v_;
};

/// Exact equality when both sides are exact, |a-b| <= tolerance otherwise.
bool approx_equal(const Prob& a, const Prob& b, double tol = kProbTolerance);

} // namespace probe
