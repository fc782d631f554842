#pragma once

#include "probe/error.hpp"
#include "probe/expr.hpp"
#include "probe/sort.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace probe {

/// How the bound variable of a `dist` is distributed.
struct DensitySpec {
    enum class Kind { Pmf, Uniform, Exponential, NormalTrunc };

    Kind kind = Kind::Pmf;
    /// Pmf: {f}; Uniform: {lo, hi}; Exponential: {rate}; NormalTrunc: {mu, sigma, lo, hi}.
    std::vector<Expr> params;

    bool is_continuous() const { return kind != Kind::Pmf; }

    static DensitySpec pmf(Expr f) { return {Kind::Pmf, {std::move(f)}}; }
    static DensitySpec uniform(Expr lo, Expr hi) { return {Kind::Uniform, {std::move(lo), std::move(hi)}}; }
    static DensitySpec exponential(Expr rate) { return {Kind::Exponential, {std::move(rate)}}; }
    static DensitySpec normal_trunc(Expr mu, Expr sigma, Expr lo, Expr hi) {
        return {Kind::NormalTrunc, {std::move(mu), std::move(sigma), std::move(lo), std::move(hi)}};
    }
};

bool equal(const DensitySpec& a, const DensitySpec& b);

struct ProcNode;
/// Immutable, shareable process expression.
using ProcExpr = std::shared_ptr<const ProcNode>;

struct ProcNode {
    enum class Kind { Delta, Terminated, Action, Seq, Alt, Cond, Sum, Dist, ProcRef };

    Kind kind = Kind::Delta;
    /// Action or process name.
    std::string name;
    /// Bound variable of Sum/Dist.
    std::string var;
    /// Action/ProcRef arguments; for Cond the single condition.
    std::vector<Expr> args;
    /// Bound sort of Sum/Dist.
    Sort sort;
    DensitySpec density;
    /// Seq/Alt: {left, right}; Cond: {then, else}; Sum/Dist: {body}.
    std::vector<ProcExpr> children;
    /// Sorted, duplicate free.
    std::vector<std::string> free_vars;
    SourceLoc loc;
};

namespace pr {

ProcExpr delta(SourceLoc loc = {});
ProcExpr terminated();
ProcExpr action(std::string name, std::vector<Expr> args = {}, SourceLoc loc = {});
ProcExpr seq(ProcExpr l, ProcExpr r, SourceLoc loc = {});
ProcExpr alt(ProcExpr l, ProcExpr r, SourceLoc loc = {});
/// The else branch defaults to delta.
ProcExpr cond(Expr c, ProcExpr then_p, ProcExpr else_p = nullptr, SourceLoc loc = {});
ProcExpr sum(std::string var, Sort sort, ProcExpr body, SourceLoc loc = {});
ProcExpr dist(std::string var, Sort sort, DensitySpec density, ProcExpr body, SourceLoc loc = {});
ProcExpr ref(std::string name, std::vector<Expr> args = {}, SourceLoc loc = {});

} // namespace pr

/// Structural equality (locations ignored).
bool equal(const ProcExpr& a, const ProcExpr& b);

struct ActionDecl {
    std::string name;
    std::vector<Sort> sorts;
    SourceLoc loc;
};

struct Param {
    std::string name;
    Sort sort;
};

struct Equation {
    std::vector<Param> params;
    ProcExpr body;
    SourceLoc loc;
};

/// A parsed model: action declarations, process equations, initial process.
struct Spec {
    std::vector<ActionDecl> actions;
    std::map<std::string, Equation> equations;
    ProcExpr init;

    const ActionDecl* find_action(const std::string& name) const;
    const Equation* find_equation(const std::string& name) const;
};

/// Structural equality of two models (locations ignored).
bool equal(const Spec& a, const Spec& b);

} // namespace probe
