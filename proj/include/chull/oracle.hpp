#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "chull/levi.hpp"
#include "chull/rational.hpp"
#include "chull/root_data.hpp"

namespace chull {

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Lattice points of the sector in the box |x_i| <= radius, lexicographic.
std::vector<Coweight> box_points(GroupKind kind, Sector sector, std::int64_t radius);

/// Dominant coweights whose entries all lie in [lo, hi], lexicographic.
std::vector<Coweight> dominant_coweights(GroupKind kind, Sector sector, std::int64_t lo, std::int64_t hi);

/// The standard acceptance grid of dominant mu: entries in [0, max_entry] for
/// A, |entries| <= max_entry for B and D.
std::vector<Coweight> grid_mus(GroupKind kind, Sector sector, std::int64_t max_entry);

/// X_M classes with batch sums |s_k| <= n_k * bound (of the right parity in
/// the half-doubled sector), every SO residue. Ordered by canonical lift.
std::vector<XMClass> candidate_classes(const LeviShape& shape, Sector sector, std::int64_t bound);

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

struct EnumerationLimits {
    int max_rank = 6;
};

/// P_mu: lattice points of mu's sector and X_G class lying in Conv(W mu).
/// The search box |nu_i| <= max |mu_i| contains the hull because its
/// vertices are signed permutations of mu.
std::vector<Coweight> enumerate_Pmu(const Coweight& mu, const EnumerationLimits& limits = {});

struct VerificationReport {
    GroupKind kind;
    Sector sector = Sector::Integral;
    LeviShape shape;
    Coweight mu;
    std::set<XMClass> lhs_classes;
    std::set<XMClass> rhs_classes;
    bool equal = false;
    std::vector<XMClass> missing_from_lhs;  // in rhs only
    std::vector<XMClass> missing_from_rhs;  // in lhs only
    std::map<XMClass, Coweight> witnesses;  // lexicographically first nu in P_mu per lhs class
    std::chrono::nanoseconds elapsed{0};
};

/// Both sides of phi_M(P_mu) = {classes satisfying (i) and (ii)}, by independent enumeration.
VerificationReport verify_main_theorem(const LeviShape& shape, const Coweight& mu,
                                       const EnumerationLimits& limits = {});

/// Independent hull-membership oracle: enumerates W mu explicitly and looks
/// for an exact convex combination of at most n + 1 orbit points equal to x.
///
/// The search is phase one of the simplex method in exact rationals with
/// Bland's rule: each basis it visits is a vertex subset of size <= n + 1 with
/// its linear system solved exactly, and a basic feasible solution is a
/// Caratheodory combination. It shares nothing with in_hull.
class CaratheodoryOracle {
public:
    struct Limits {
        std::uint64_t max_group_order = 384;
    };

    struct Term {
        Entries vertex;
        Rational weight;
    };

    explicit CaratheodoryOracle(const Coweight& mu) : CaratheodoryOracle(mu, Limits{}) {}
    CaratheodoryOracle(const Coweight& mu, Limits limits);

    bool contains(std::span<const Rational> x) const { return combination(x).has_value(); }

    /// Positive weights summing to one with sum weight * vertex = x, or nullopt.
    std::optional<std::vector<Term>> combination(std::span<const Rational> x) const;

    const std::vector<Entries>& orbit() const { return orbit_; }

private:
    int n_ = 0;
    std::vector<Entries> orbit_;
};

bool caratheodory_in_hull(std::span<const Rational> x, const Coweight& mu,
                          CaratheodoryOracle::Limits limits = {});

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepConfig {
    std::vector<Family> families;
    std::vector<int> ranks;
    std::vector<Sector> sectors{Sector::Integral};  // half is ignored outside family D
    std::int64_t max_entry = 1;
    std::optional<std::vector<std::string>> shapes;  // nullopt: all shapes
    std::vector<Coweight> mus;                       // non-empty: use these instead of the grid
    int jobs = 1;
    bool extra_checks = true;  // run the Levi-reduction and eta properties per instance
    EnumerationLimits limits;
};

struct InstanceOutcome {
    std::optional<VerificationReport> report;
    std::optional<std::string> error;
    GroupKind kind;
    Sector sector = Sector::Integral;
    std::string shape;
    Entries mu;
    // Extra per-instance property checks.
    std::uint64_t batch_end_checked = 0, batch_end_failures = 0;
    std::uint64_t eta_checked = 0, eta_failures = 0;
    std::uint64_t end_to_end_checked = 0, end_to_end_failures = 0;
};

struct SweepSummary {
    std::uint64_t instances = 0, equal = 0, unequal = 0, errors = 0;
    std::uint64_t batch_end_checked = 0, batch_end_failures = 0;
    std::uint64_t eta_checked = 0, eta_failures = 0;
    std::uint64_t end_to_end_checked = 0, end_to_end_failures = 0;

    bool all_passed() const {
        return unequal == 0 && errors == 0 && batch_end_failures == 0 && eta_failures == 0 &&
               end_to_end_failures == 0;
    }
};

struct SweepOutcome {
    std::vector<InstanceOutcome> instances;
    SweepSummary summary;
};

/// Grid of (kind, sector, shape, mu) in deterministic order. Invalid shape
/// strings are reported as per-instance errors later, not thrown here.
struct GridEntry {
    GroupKind kind;
    Sector sector;
    std::string shape_text;
    std::optional<Coweight> mu;
};
std::vector<GridEntry> sweep_grid(const SweepConfig& config);

/// Runs one grid entry: the set-equality check plus, when enabled, the
/// batch-end reduction and eta properties on every candidate class.
InstanceOutcome run_instance(const GridEntry& entry, const SweepConfig& config);

/// Runs the grid on config.jobs workers; output order is grid order.
/// on_result, when set, is called in grid order as results become available.
SweepOutcome sweep(const SweepConfig& config,
                   const std::function<void(const InstanceOutcome&)>& on_result = nullptr);

}  // namespace chull
