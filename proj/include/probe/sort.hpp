#pragma once

#include "probe/value.hpp"

#include <cstdint>
#include <string>

namespace probe {

/// Built-in data sorts. Range(lo, hi) is an inclusive integer interval.
struct Sort {
    enum class Kind { Bool, Nat, Int, Real, Range };

    Kind kind = Kind::Bool;
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    static Sort boolean() { return {Kind::Bool}; }
    static Sort nat() { return {Kind::Nat}; }
    static Sort integer() { return {Kind::Int}; }
    static Sort real() { return {Kind::Real}; }
    /// Throws SemanticError when lo > hi.
    static Sort range(std::int64_t lo, std::int64_t hi);

    bool is_finite() const { return kind == Kind::Bool || kind == Kind::Range; }
    bool is_numeric() const { return kind != Kind::Bool; }
    bool is_integral() const { return kind == Kind::Nat || kind == Kind::Int || kind == Kind::Range; }

    /// Whether a value inhabits this sort.
    bool contains(const Value& v) const;

    std::string str() const;

    friend bool operator==(const Sort& a, const Sort& b) {
        return a.kind == b.kind && (a.kind != Kind::Range || (a.lo == b.lo && a.hi == b.hi));
    }
};

} // namespace probe
