#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <variant>

namespace probe {

/// A data value. Integers are arbitrary precision; rationals stay exact and
/// are normalised to integers when the denominator is 1; reals are doubles.
class Value {
public:
    enum class Kind { Bool, Int, Rat, Real };

    Value() : v_(false) {}

    static Value boolean(bool b) { return Value(Storage(b)); }
    static Value integer(mpz_class z) { return Value(Storage(std::move(z))); }
    static Value integer(long long z) { return integer(mpz_class(std::to_string(z))); }
    static Value rational(mpq_class q);
    static Value real(double d) { return Value(Storage(d)); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_bool() const { return kind() == Kind::Bool; }
    bool is_numeric() const { return kind() != Kind::Bool; }
    bool is_exact_number() const { return kind() == Kind::Int || kind() == Kind::Rat; }

    bool as_bool() const;
    const mpz_class& as_int() const;
    /// Int or Rat as an exact rational.
    mpq_class as_rational() const;
    /// Any numeric value as a double.
    double as_double() const;

    std::string str() const;

    /// Structural equality: same kind and same value.
    friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
    /// Canonical total order: by kind first, then by value.
    friend bool operator<(const Value& a, const Value& b);

private:
    using Storage = std::variant<bool, mpz_class, mpq_class, double>;
    explicit Value(Storage s) : v_(std::move(s)) {}
    Storage v_;
};

/// Variable environment. Lookup of an unbound name is an error.
using Env = std::map<std::string, Value>;

const Value& lookup(const Env& env, const std::string& name);

/// "{k=3,b=true}"; used in state fingerprints.
std::string env_str(const Env& env);

} // namespace probe
