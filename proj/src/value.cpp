#include "probe/value.hpp"

#include "probe/error.hpp"

#include <charconv>
#include <cmath>

namespace probe {

Value Value::rational(mpq_class q) {
    q.canonicalize();
    if (q.get_den() == 1) return Value(Storage(mpz_class(q.get_num())));
    return Value(Storage(std::move(q)));
}

bool Value::as_bool() const {
    if (!is_bool()) throw EvalError("sort mismatch: expected Bool, got " + str());
    return std::get<bool>(v_);
}

const mpz_class& Value::as_int() const {
    if (kind() != Kind::Int) throw EvalError("sort mismatch: expected an integer, got " + str());
    return std::get<mpz_class>(v_);
}

mpq_class Value::as_rational() const {
    switch (kind()) {
    case Kind::Int: return mpq_class(std::get<mpz_class>(v_));
    case Kind::Rat: return std::get<mpq_class>(v_);
    default: throw EvalError("sort mismatch: expected an exact number, got " + str());
    }
}

double Value::as_double() const {
    switch (kind()) {
    case Kind::Int: return std::get<mpz_class>(v_).get_d();
    case Kind::Rat: return std::get<mpq_class>(v_).get_d();
    case Kind::Real: return std::get<double>(v_);
    default: throw EvalError("sort mismatch: expected a number, got " + str());
    }
}

std::string Value::str() const {
    switch (kind()) {
    case Kind::Bool: return std::get<bool>(v_) ? "true" : "false";
    case Kind::Int: return std::get<mpz_class>(v_).get_str();
    case Kind::Rat: return std::get<mpq_class>(v_).get_str();
    case Kind::Real: {
        double d = std::get<double>(v_);
        if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, d);
        std::string s(buf, res.ptr);
        if (s.find_first_of(".e") == std::string::npos && s.find("nan") == std::string::npos) s += ".0";
        return s;
    }
    }
    return {};
}

bool operator<(const Value& a, const Value& b) {
    if (a.kind() != b.kind()) return a.kind() < b.kind();
    return a.v_ < b.v_;
}

const Value& lookup(const Env& env, const std::string& name) {
    auto it = env.find(name);
    if (it == env.end()) throw EvalError("unbound variable '" + name + "'");
    return it->second;
}

std::string env_str(const Env& env) {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : env) {
        if (!first) s += ',';
        first = false;
        s += k;
        s += '=';
        s += v.str();
    }
    s += '}';
    return s;
}

} // namespace probe
