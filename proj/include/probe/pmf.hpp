#pragma once

#include "probe/prob.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace probe {

/// Counters over every FinitePMF constructed in this process.
struct PmfStats {
    std::uint64_t constructed = 0;
    std::uint64_t violations = 0;
};

PmfStats pmf_stats();
void reset_pmf_stats();

namespace detail {
/// Throws SemanticError unless every mass lies in [0,1] and the masses sum to 1
/// (exactly when all are rational, within kProbTolerance otherwise).
void check_normalized(const std::vector<const Prob*>& masses);
} // namespace detail

/// Finite probability mass function. Outcomes are distinct and kept sorted by
/// `Less`; zero-mass entries are dropped. Normalization is checked on
/// construction, so every instance is a proper distribution.
template <class T, class Less = std::less<T>>
class FinitePMF {
public:
    using Entry = std::pair<T, Prob>;

    explicit FinitePMF(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::vector<const Prob*> masses;
        masses.reserve(entries_.size());
        for (const auto& e : entries_) masses.push_back(&e.second);
        detail::check_normalized(masses);
        entries_.erase(std::remove_if(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second.is_zero(); }),
                       entries_.end());
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& a, const Entry& b) { return Less{}(a.first, b.first); });
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (!Less{}(entries_[i - 1].first, entries_[i].first))
                throw std::logic_error("FinitePMF: duplicate outcome");
    }

    static FinitePMF dirac(T outcome) { return FinitePMF({{std::move(outcome), Prob::one()}}); }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    Prob mass(const T& outcome) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), outcome,
                                   [](const Entry& e, const T& o) { return Less{}(e.first, o); });
        if (it != entries_.end() && !Less{}(outcome, it->first)) return it->second;
        return Prob::zero();
    }

    bool all_exact() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second.is_exact(); });
    }

private:
    std::vector<Entry> entries_;
};

/// Accumulates (outcome, mass) pairs, merging equal outcomes.
template <class T, class Less = std::less<T>>
class PmfBuilder {
public:
    void add(const T& outcome, const Prob& p) {
        auto [it, inserted] = acc_.try_emplace(outcome, p);
        if (!inserted) it->second += p;
    }
    std::size_t size() const { return acc_.size(); }

    FinitePMF<T, Less> build() && {
        std::vector<typename FinitePMF<T, Less>::Entry> entries;
        entries.reserve(acc_.size());
        for (auto& [k, v] : acc_) entries.emplace_back(k, v);
        return FinitePMF<T, Less>(std::move(entries));
    }

private:
    std::map<T, Prob, Less> acc_;
};

} // namespace probe
