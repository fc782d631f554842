#include "probe/sort.hpp"

#include "probe/error.hpp"

namespace probe {

Sort Sort::range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi)
        throw SemanticError("empty range [" + std::to_string(lo) + ".." + std::to_string(hi) + "]");
    return {Kind::Range, lo, hi};
}

bool Sort::contains(const Value& v) const {
    switch (kind) {
    case Kind::Bool: return v.is_bool();
    case Kind::Nat: return v.kind() == Value::Kind::Int && sgn(v.as_int()) >= 0;
    case Kind::Int: return v.kind() == Value::Kind::Int;
    case Kind::Real: return v.is_numeric();
    case Kind::Range:
        return v.kind() == Value::Kind::Int && v.as_int() >= mpz_class(std::to_string(lo)) &&
               v.as_int() <= mpz_class(std::to_string(hi));
    }
    return false;
}

std::string Sort::str() const {
    switch (kind) {
    case Kind::Bool: return "Bool";
    case Kind::Nat: return "Nat";
    case Kind::Int: return "Int";
    case Kind::Real: return "Real";
    case Kind::Range: return "[" + std::to_string(lo) + ".." + std::to_string(hi) + "]";
    }
    return {};
}

} // namespace probe
