#pragma once

#include "probe/ast.hpp"

#include <string>
#include <vector>

namespace probe {

struct Diagnostic {
    enum class Severity { Error, Warning };

    Severity severity = Severity::Error;
    std::string message;
    SourceLoc loc;

    /// "3:14: error: unguarded recursion at X"
    std::string str() const;
};

bool has_errors(const std::vector<Diagnostic>& diags);

/// Rewrite `sum n:Nat. (n < k) -> p` (and conjunctions of bounds on n) into a
/// sum over the corresponding finite range. Sums that cannot be narrowed are
/// left untouched; an empty narrowed range is reported as an error in `diags`.
Spec narrow_sums(const Spec& spec, std::vector<Diagnostic>* diags = nullptr);

/// Static checks: scoping, sorts, arities, declared actions, guarded recursion,
/// admissible densities. Sums over infinite sorts (after narrowing) and
/// continuous distributions are warnings: such specs can be simulated but not
/// explored. An empty result means the model is well-formed and finite.
std::vector<Diagnostic> validate(const Spec& spec);

} // namespace probe
