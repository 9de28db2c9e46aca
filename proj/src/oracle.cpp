#include "chull/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <numeric>
#include <thread>

#include "chull/error.hpp"
#include "chull/eta.hpp"

namespace chull {

namespace {

// Odometer over [lo, hi]^n, last coordinate fastest, so output is lexicographic.
template <class Visit>
void for_each_box_point(int n, std::int64_t lo, std::int64_t hi, std::int64_t step, Visit&& visit) {
    if (lo > hi) return;
    Entries v(static_cast<std::size_t>(n), lo);
    while (true) {
        visit(v);
        int i = n - 1;
        while (i >= 0 && v[i] + step > hi) {
            v[i] = lo;
            --i;
        }
        if (i < 0) return;
        v[i] += step;
    }
}

std::int64_t first_with_parity(std::int64_t lo, bool odd) {
    const bool lo_odd = (lo % 2) != 0;
    return lo_odd == odd ? lo : lo + 1;
}

void require_rank_cap(const Coweight& mu, const EnumerationLimits& limits) {
    if (mu.rank() > limits.max_rank)
        throw Error(ErrorCode::CapExceeded, "rank " + std::to_string(mu.rank()) + " exceeds the enumeration cap " +
                                                std::to_string(limits.max_rank));
}

}  // namespace

std::vector<Coweight> box_points(GroupKind kind, Sector sector, std::int64_t radius) {
    std::vector<Coweight> points;
    const bool half = sector == Sector::HalfDoubled;
    const std::int64_t lo = half ? first_with_parity(-radius, true) : -radius;
    for_each_box_point(kind.rank, lo, radius, half ? 2 : 1,
                       [&](const Entries& v) { points.emplace_back(kind, v, sector); });
    return points;
}

std::vector<Coweight> dominant_coweights(GroupKind kind, Sector sector, std::int64_t lo, std::int64_t hi) {
    std::vector<Coweight> out;
    const bool half = sector == Sector::HalfDoubled;
    const std::int64_t start = half ? first_with_parity(lo, true) : lo;
    for_each_box_point(kind.rank, start, hi, half ? 2 : 1, [&](const Entries& v) {
        Coweight c(kind, v, sector);
        if (is_dominant(c)) out.push_back(std::move(c));
    });
    return out;
}

std::vector<Coweight> grid_mus(GroupKind kind, Sector sector, std::int64_t max_entry) {
    const std::int64_t lo = kind.family == Family::D ? -max_entry : 0;
    return dominant_coweights(kind, sector, lo, max_entry);
}

std::vector<XMClass> candidate_classes(const LeviShape& shape, Sector sector, std::int64_t bound) {
    const bool half = sector == Sector::HalfDoubled;
    const int r = shape.batch_count();
    std::vector<std::int64_t> lo(r), hi(r);
    for (int k = 0; k < r; ++k) {
        const std::int64_t size = shape.batch_size(k + 1);
        hi[k] = size * bound;
        lo[k] = half ? first_with_parity(-hi[k], size % 2 == 1) : -hi[k];
        if (half && (hi[k] - lo[k]) % 2 != 0) --hi[k];
    }
    std::vector<XMClass> classes;
    const auto so_classes = valid_so_classes(shape, sector);
    std::vector<std::int64_t> sums(lo);
    while (true) {
        bool feasible = true;
        for (int k = 0; k < r; ++k) feasible = feasible && lo[k] <= hi[k];
        if (!feasible) break;
        for (int so : so_classes) classes.push_back(XMClass{shape, minuscule_lift(shape, sector, sums, so)});
        int k = r - 1;
        const std::int64_t step = half ? 2 : 1;
        while (k >= 0 && sums[k] + step > hi[k]) {
            sums[k] = lo[k];
            --k;
        }
        if (k < 0) break;
        sums[k] += step;
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

std::vector<Coweight> enumerate_Pmu(const Coweight& mu, const EnumerationLimits& limits) {
    if (!is_dominant(mu)) throw Error(ErrorCode::NotDominant, "mu = " + mu.str() + " is not dominant");
    require_rank_cap(mu, limits);
    std::vector<Coweight> points;
    for (Coweight& p : box_points(mu.kind(), mu.sector(), mu.max_abs()))
        if (same_class_XG(p, mu) && in_hull(p, mu)) points.push_back(std::move(p));
    return points;
}

VerificationReport verify_main_theorem(const LeviShape& shape, const Coweight& mu, const EnumerationLimits& limits) {
    const auto start = std::chrono::steady_clock::now();
    if (shape.kind() != mu.kind()) throw Error(ErrorCode::ShapeMismatch, "shape and mu are for different groups");
    const auto points = enumerate_Pmu(mu, limits);

    VerificationReport report{mu.kind(), mu.sector(), shape, mu, {}, {}, false, {}, {}, {}, {}};
    for (const Coweight& nu : points) {
        XMClass c = class_of(shape, nu);
        report.witnesses.emplace(c, nu);
        report.lhs_classes.insert(std::move(c));
    }
    for (XMClass& c : candidate_classes(shape, mu.sector(), mu.max_abs())) {
        if (!same_class_XG(c.canonical_lift, mu)) continue;
        if (!in_hull(project(shape, c.canonical_lift).expand(), mu)) continue;
        report.rhs_classes.insert(std::move(c));
    }
    std::set_difference(report.rhs_classes.begin(), report.rhs_classes.end(), report.lhs_classes.begin(),
                        report.lhs_classes.end(), std::back_inserter(report.missing_from_lhs));
    std::set_difference(report.lhs_classes.begin(), report.lhs_classes.end(), report.rhs_classes.begin(),
                        report.rhs_classes.end(), std::back_inserter(report.missing_from_rhs));
    report.equal = report.missing_from_lhs.empty() && report.missing_from_rhs.empty();
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

CaratheodoryOracle::CaratheodoryOracle(const Coweight& mu, Limits limits) : n_(mu.rank()) {
    const std::uint64_t order = weyl_group_order(mu.kind());
    if (order > limits.max_group_order)
        throw Error(ErrorCode::CapExceeded, "|W| = " + std::to_string(order) + " exceeds the oracle cap " +
                                                std::to_string(limits.max_group_order));
    orbit_ = weyl_orbit(mu);
}

std::optional<std::vector<CaratheodoryOracle::Term>> CaratheodoryOracle::combination(
    std::span<const Rational> x) const {
    if (static_cast<int>(x.size()) != n_) throw Error(ErrorCode::KindMismatch, "point has the wrong length");

    // Rows: the n coordinates and sum(lambda) = 1. Columns: one per orbit
    // point, then one artificial per row, then the right-hand side.
    const int rows = n_ + 1;
    const int m = static_cast<int>(orbit_.size());
    const int cols = m + rows;
    std::vector<RationalVector> t(static_cast<std::size_t>(rows), RationalVector(static_cast<std::size_t>(cols) + 1));
    for (int i = 0; i < rows; ++i) {
        const Rational rhs = i < n_ ? x[i] : Rational(1);
        const bool flip = rhs < Rational(0);
        for (int c = 0; c < m; ++c) {
            const Rational a = i < n_ ? Rational(orbit_[c][i]) : Rational(1);
            t[i][c] = flip ? -a : a;
        }
        t[i][m + i] = 1;
        t[i][cols] = flip ? -rhs : rhs;
    }
    std::vector<int> basis(static_cast<std::size_t>(rows));
    std::iota(basis.begin(), basis.end(), m);

    // Minimize the sum of artificials (Bland's rule). Artificials never re-enter.
    while (true) {
        int enter = -1;
        for (int c = 0; c < m && enter < 0; ++c) {
            if (std::find(basis.begin(), basis.end(), c) != basis.end()) continue;
            Rational reduced = 0;
            for (int i = 0; i < rows; ++i)
                if (basis[i] >= m) reduced -= t[i][c];
            if (reduced < Rational(0)) enter = c;
        }
        if (enter < 0) break;
        int leave = -1;
        Rational best = 0;
        for (int i = 0; i < rows; ++i) {
            if (t[i][enter] <= Rational(0)) continue;
            const Rational ratio = t[i][cols] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded cannot happen in phase one
        const Rational pivot = t[leave][enter];
        for (Rational& v : t[leave]) v /= pivot;
        for (int i = 0; i < rows; ++i) {
            if (i == leave || t[i][enter] == Rational(0)) continue;
            const Rational f = t[i][enter];
            for (int c = 0; c <= cols; ++c) t[i][c] -= f * t[leave][c];
        }
        basis[leave] = enter;
    }

    for (int i = 0; i < rows; ++i)
        if (basis[i] >= m && t[i][cols] != Rational(0)) return std::nullopt;
    std::vector<Term> terms;
    for (int i = 0; i < rows; ++i)
        if (basis[i] < m && t[i][cols] != Rational(0)) terms.push_back({orbit_[basis[i]], t[i][cols]});
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.vertex < b.vertex; });
    return terms;
}

bool caratheodory_in_hull(std::span<const Rational> x, const Coweight& mu, CaratheodoryOracle::Limits limits) {
    return CaratheodoryOracle(mu, limits).contains(x);
}

std::vector<GridEntry> sweep_grid(const SweepConfig& config) {
    std::vector<GridEntry> grid;
    for (Family family : config.families)
        for (int rank : config.ranks) {
            if (rank < (family == Family::D ? 2 : 1)) continue;
            const GroupKind kind = GroupKind::make(family, rank);
            for (Sector sector : config.sectors) {
                if (sector == Sector::HalfDoubled && family != Family::D) continue;
                std::vector<Coweight> mus;
                if (config.mus.empty()) {
                    mus = grid_mus(kind, sector, config.max_entry);
                } else {
                    for (const Coweight& mu : config.mus)
                        if (mu.kind() == kind && mu.sector() == sector) mus.push_back(mu);
                }
                std::vector<std::string> shape_texts;
                if (config.shapes) {
                    shape_texts = *config.shapes;
                } else {
                    for (const LeviShape& s : all_shapes(kind)) shape_texts.push_back(s.str());
                }
                for (const std::string& text : shape_texts) {
                    bool valid = true;
                    try {
                        LeviShape::parse(kind, text);
                    } catch (const Error&) {
                        valid = false;
                    }
                    if (!valid) {
                        grid.push_back({kind, sector, text, std::nullopt});
                        continue;
                    }
                    for (const Coweight& mu : mus) grid.push_back({kind, sector, text, mu});
                }
            }
        }
    return grid;
}

InstanceOutcome run_instance(const GridEntry& entry, const SweepConfig& config) {
    InstanceOutcome out;
    out.kind = entry.kind;
    out.sector = entry.sector;
    out.shape = entry.shape_text;
    if (entry.mu) out.mu.assign(entry.mu->entries().begin(), entry.mu->entries().end());
    try {
        const LeviShape shape = LeviShape::parse(entry.kind, entry.shape_text);
        if (!entry.mu) throw Error(ErrorCode::InvalidArgument, "no mu for shape " + entry.shape_text);
        const Coweight& mu = *entry.mu;
        out.report = verify_main_theorem(shape, mu, config.limits);
        if (!config.extra_checks) return out;

        for (const XMClass& c : candidate_classes(shape, mu.sector(), mu.max_abs())) {
            const Coweight& nu = c.canonical_lift;
            const LeviPoint beta = project(shape, nu);
            const RationalVector beta_full = beta.expand();
            const bool in_span = mu.family() != Family::A || PartialSumLedger(beta_full).at(mu.size()) == Rational(mu.sum());
            if (in_span) {
                ++out.batch_end_checked;
                if (leq_batch_ends(shape, beta, mu) != leq(beta_full, mu)) ++out.batch_end_failures;
            }
            if (!is_dominant(mu.family(), beta_full)) continue;
            ++out.eta_checked;
            const EtaResult eta = build_eta(shape, nu);
            const auto checks = eta_postconditions(shape, nu, eta, mu);
            if (std::any_of(checks.begin(), checks.end(), [](const NamedCheck& k) { return k.applicable && !k.passed; }))
                ++out.eta_failures;
            if (same_class_XG(nu, mu) && leq(beta_full, mu)) {
                ++out.end_to_end_checked;
                if (!in_hull(nu, mu)) ++out.end_to_end_failures;
            }
        }
    } catch (const Error& e) {
        out.report.reset();
        out.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    return out;
}

SweepOutcome sweep(const SweepConfig& config, const std::function<void(const InstanceOutcome&)>& on_result) {
    const auto grid = sweep_grid(config);
    std::vector<std::optional<InstanceOutcome>> results(grid.size());
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            InstanceOutcome outcome = run_instance(grid[i], config);
            std::lock_guard lock(mutex);
            results[i] = std::move(outcome);
            ready.notify_all();
        }
    };

    const int jobs = std::max(1, config.jobs);
    std::vector<std::thread> threads;
    if (jobs > 1)
        for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);

    SweepOutcome outcome;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (jobs == 1) {
            results[i] = run_instance(grid[i], config);
        } else {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return results[i].has_value(); });
        }
        InstanceOutcome& r = *results[i];
        SweepSummary& s = outcome.summary;
        ++s.instances;
        if (r.error) {
            ++s.errors;
        } else if (r.report->equal) {
            ++s.equal;
        } else {
            ++s.unequal;
        }
        s.batch_end_checked += r.batch_end_checked;
        s.batch_end_failures += r.batch_end_failures;
        s.eta_checked += r.eta_checked;
        s.eta_failures += r.eta_failures;
        s.end_to_end_checked += r.end_to_end_checked;
        s.end_to_end_failures += r.end_to_end_failures;
        if (on_result) on_result(r);
        outcome.instances.push_back(std::move(r));
        results[i].reset();
    }
    for (auto& t : threads) t.join();
    return outcome;
}

}  // namespace chull
