#ifndef MAHLER_RECEPTACLE_HPP
#define MAHLER_RECEPTACLE_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mahler/epsilon.hpp"
#include "mahler/maps.hpp"
#include "mahler/newton.hpp"

namespace mahler {

class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultElementBudget = 10'000'000;

// The nondecreasing receptacle levels V_0, V_1, ..., optionally intersected
// with a cap Q_{<=B}. Levels share their elements: only the per-level
// additions are stored, the full level is a prefix union.
class ReceptacleRun {
public:
    ReceptacleRun(std::vector<std::vector<Rational>> added, std::size_t requested_levels,
                  std::optional<Rational> cap)
        : added_(std::move(added)), requested_levels_(requested_levels), cap_(std::move(cap)) {
        std::size_t total = 0;
        for (const auto& a : added_) {
            total += a.size();
            prefix_sizes_.push_back(total);
        }
        std::vector<Rational> all;
        all.reserve(total);
        for (const auto& a : added_) all.insert(all.end(), a.begin(), a.end());
        std::sort(all.begin(), all.end());
        cumulative_ = SortedRationalSet::from_sorted(std::move(all));
    }

    // levels requested (M + 1 entries conceptually, constant past stabilization)
    std::size_t requested_levels() const { return requested_levels_; }

    // index of the last level that added elements
    std::size_t stabilized_at() const { return added_.size() - 1; }
    bool stabilized_early() const { return added_.size() < requested_levels_; }

    const std::optional<Rational>& cap() const { return cap_; }

    std::size_t level_size(std::size_t i) const {
        return prefix_sizes_[std::min(i, prefix_sizes_.size() - 1)];
    }

    SortedRationalSet level(std::size_t i) const {
        i = std::min(i, added_.size() - 1);
        std::vector<Rational> out;
        out.reserve(prefix_sizes_[i]);
        for (std::size_t j = 0; j <= i; ++j) out.insert(out.end(), added_[j].begin(), added_[j].end());
        std::sort(out.begin(), out.end());
        return SortedRationalSet::from_sorted(std::move(out));
    }

    const std::vector<Rational>& added_at(std::size_t i) const { return added_[i]; }

    const SortedRationalSet& final_level() const { return cumulative_; }

private:
    std::vector<std::vector<Rational>> added_;
    std::vector<std::size_t> prefix_sizes_;
    std::size_t requested_levels_;
    std::optional<Rational> cap_;
    SortedRationalSet cumulative_;
};

// Levels up to V_M, each the union of the successor sets of the previous
// level. Only the successor sets of elements new since the previous level
// are expanded. With a cap, every level is the uncapped level intersected
// with Q_{<=cap}; the identity holds because min successor_set(v) = v.
inline ReceptacleRun compute_receptacle(const NewtonData& nd, std::size_t levels_m,
                                        std::optional<Rational> cap = std::nullopt,
                                        std::size_t element_budget = kDefaultElementBudget) {
    std::vector<Rational> base;
    for (const auto& v : nd.neg_slopes())
        if (!cap || v <= *cap) base.push_back(v);

    std::vector<std::vector<Rational>> added;
    SortedRationalSet current = SortedRationalSet::from_sorted(base);
    std::vector<Rational> frontier = base;
    added.push_back(std::move(base));

    const std::size_t fanout = nd.points.size();
    for (std::size_t i = 1; i <= levels_m && !frontier.empty(); ++i) {
        if (current.size() + frontier.size() * fanout > element_budget)
            throw budget_exceeded("compute_receptacle: projected level size exceeds the element budget");
        std::vector<Rational> images;
        images.reserve(frontier.size() * fanout);
        for (const auto& v : frontier)
            for (const auto& w : successor_set(nd, v)) {
                if (cap && w > *cap) continue;
                if (!current.contains(w)) images.push_back(w);
            }
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        if (images.empty()) break;
        current = current.set_union(SortedRationalSet::from_sorted(images));
        frontier = images;
        added.push_back(std::move(images));
    }
    return ReceptacleRun(std::move(added), levels_m + 1, std::move(cap));
}

// floor((n+1) (v + mu_kappa) / tau_lb + h(v)): the level by which v must
// have appeared if it belongs to the receptacle at all.
inline long long iota_bound(const NewtonData& nd, const Rational& v, const Rational& tau_lb) {
    if (tau_lb <= 0) throw std::invalid_argument("iota_bound: tau_lb must be positive");
    if (!nd.in_lattice(v)) throw std::invalid_argument("iota_bound: v outside the lattice");
    if (v < -nd.mu_max()) throw std::invalid_argument("iota_bound: v below the receptacle minimum");
    const Rational value =
        Rational(nd.n + 1) * (v + nd.mu_max()) / tau_lb + Rational(nd.lattice_height(v));
    return static_cast<long long>(floor_rational(value));
}

// Decides receptacle membership. Holds the tau bound (and nothing else)
// across queries; each query runs a capped receptacle recursion to the
// certified depth.
class MembershipOracle {
public:
    explicit MembershipOracle(const NewtonData& nd, std::size_t element_budget = kDefaultElementBudget)
        : nd_(&nd), tau_lb_(tau_lower_bound(nd)), budget_(element_budget) {}

    const Rational& tau_lb() const { return tau_lb_; }

    // iota is defined only for lattice points at or above -mu_kappa
    std::optional<long long> iota(const Rational& v) const {
        if (!nd_->in_lattice(v) || v < -nd_->mu_max()) return std::nullopt;
        return iota_bound(*nd_, v, tau_lb_);
    }

    bool contains(const Rational& v) const {
        const auto depth = iota(v);
        if (!depth) return false;
        // capping at v is exact for deciding whether v itself appears
        const auto run = compute_receptacle(*nd_, static_cast<std::size_t>(*depth), v, budget_);
        return run.final_level().contains(v);
    }

private:
    const NewtonData* nd_;
    Rational tau_lb_;
    std::size_t budget_;
};

inline bool v_membership(const NewtonData& nd, const Rational& v) {
    return MembershipOracle(nd).contains(v);
}

}  // namespace mahler

#endif
