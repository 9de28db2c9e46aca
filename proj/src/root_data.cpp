#include "chull/root_data.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "chull/error.hpp"

namespace chull {

namespace {

std::int64_t abs_value(std::int64_t v) { return v < 0 ? checked::sub(0, v) : v; }
Rational abs_value(const Rational& v) { return v.abs(); }

template <class T>
bool dominant_chain(Family family, std::span<const T> x) {
    const std::size_t n = x.size();
    if (n == 0) return true;
    const std::size_t chain_end = (family == Family::D) ? n - 1 : n;
    for (std::size_t i = 0; i + 1 < chain_end; ++i)
        if (x[i] < x[i + 1]) return false;
    switch (family) {
        case Family::A: return true;
        case Family::B: return !(x[n - 1] < T(0));
        case Family::D:
            if (n < 2) return true;
            return !(x[n - 2] < x[n - 1]) && !(x[n - 2] + x[n - 1] < T(0));
    }
    return false;
}

template <class T>
std::vector<T> dominant_rep(Family family, std::span<const T> x) {
    std::vector<T> v(x.begin(), x.end());
    if (family == Family::A) {
        std::sort(v.begin(), v.end(), std::greater<>());
        return v;
    }
    std::size_t negatives = 0;
    bool has_zero = false;
    for (const T& e : v) {
        if (e < T(0)) ++negatives;
        if (e == T(0)) has_zero = true;
    }
    for (T& e : v) e = abs_value(e);
    std::sort(v.begin(), v.end(), std::greater<>());
    if (family == Family::D && !has_zero && negatives % 2 == 1) v.back() = -v.back();
    return v;
}

void require_dominant(const Coweight& mu) {
    if (!is_dominant(mu)) throw Error(ErrorCode::NotDominant, "mu = " + mu.str() + " is not dominant");
}

void require_same_kind(const Coweight& x, const Coweight& y) {
    if (x.kind() != y.kind())
        throw Error(ErrorCode::KindMismatch, "kind mismatch: " + x.kind().name() + " vs " + y.kind().name());
}

void require_same_sector(const Coweight& x, const Coweight& y) {
    require_same_kind(x, y);
    if (x.sector() != y.sector()) throw Error(ErrorCode::KindMismatch, "sector mismatch");
}

void require_length(std::span<const Rational> x, const Coweight& mu) {
    if (x.size() != mu.size())
        throw Error(ErrorCode::KindMismatch, "vector of length " + std::to_string(x.size()) +
                                                 " against rank " + std::to_string(mu.rank()));
}

}  // namespace

std::string_view to_string(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::D: return "D";
    }
    return "?";
}

std::string_view to_string(Sector s) { return s == Sector::Integral ? "integral" : "half"; }

Family parse_family(std::string_view text) {
    if (text == "A" || text == "a") return Family::A;
    if (text == "B" || text == "b") return Family::B;
    if (text == "D" || text == "d") return Family::D;
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + std::string(text) + "' (expected A, B or D)");
}

Sector parse_sector(std::string_view text) {
    if (text == "integral" || text == "int") return Sector::Integral;
    if (text == "half" || text == "half-doubled") return Sector::HalfDoubled;
    throw Error(ErrorCode::InvalidArgument, "unknown sector '" + std::string(text) + "' (expected integral or half)");
}

GroupKind GroupKind::make(Family family, int rank) {
    const int min_rank = family == Family::D ? 2 : 1;
    if (rank < min_rank)
        throw Error(ErrorCode::InvalidArgument, std::string("rank ") + std::to_string(rank) + " is too small for family " +
                                                    std::string(to_string(family)));
    return GroupKind{family, rank};
}

std::string GroupKind::name() const { return std::string(to_string(family)) + std::to_string(rank); }

Coweight::Coweight(GroupKind kind, Entries entries, Sector sector)
    : kind_(GroupKind::make(kind.family, kind.rank)), sector_(sector), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(kind_.rank))
        throw Error(ErrorCode::InvalidArgument, "coweight " + format_vector(entries_) + " has length " +
                                                    std::to_string(entries_.size()) + ", expected " +
                                                    std::to_string(kind_.rank));
    if (sector_ == Sector::HalfDoubled) {
        if (kind_.family != Family::D)
            throw Error(ErrorCode::InvalidArgument, "the half-doubled sector exists only for family D");
        for (std::int64_t e : entries_)
            if (e % 2 == 0)
                throw Error(ErrorCode::Parity,
                            "half-doubled coweight " + format_vector(entries_) + " must have odd entries");
    }
}

std::int64_t Coweight::sum() const {
    std::int64_t s = 0;
    for (std::int64_t e : entries_) s = checked::add(s, e);
    return s;
}

std::int64_t Coweight::max_abs() const {
    std::int64_t m = 0;
    for (std::int64_t e : entries_) m = std::max(m, abs_value(e));
    return m;
}

std::string Coweight::str() const { return format_vector(entries_); }

PartialSumLedger::PartialSumLedger(std::span<const Rational> x) : sums_(x.size() + 1, Rational(0)) {
    for (std::size_t i = 0; i < x.size(); ++i) sums_[i + 1] = sums_[i] + x[i];
}

std::string format_vector(std::span<const Rational> v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].str();
    os << ')';
    return os.str();
}

std::string format_vector(std::span<const std::int64_t> v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

bool is_dominant(const Coweight& x) { return dominant_chain(x.family(), x.entries()); }

bool is_dominant(Family family, std::span<const Rational> x) { return dominant_chain(family, x); }

Coweight dominant_representative(const Coweight& x) {
    return x.with_entries(dominant_rep(x.family(), x.entries()));
}

RationalVector dominant_representative(Family family, std::span<const Rational> x) {
    return dominant_rep(family, x);
}

std::vector<InequalityTerm> leq_terms(std::span<const Rational> x, const Coweight& mu) {
    require_dominant(mu);
    require_length(x, mu);
    const std::size_t n = x.size();
    const PartialSumLedger sx(x);
    const RationalVector mu_r = mu.as_rational();
    const PartialSumLedger sm(mu_r);

    std::vector<InequalityTerm> terms;
    auto push = [&](std::string label, Rational lhs, Rational rhs, Relation rel) {
        const bool holds = rel == Relation::Equal ? lhs == rhs : lhs <= rhs;
        terms.push_back({std::move(label), lhs, rhs, rel, holds});
    };
    auto S = [](std::size_t i) { return "S" + std::to_string(i); };

    switch (mu.family()) {
        case Family::A:
            for (std::size_t i = 1; i < n; ++i) push(S(i), sx.at(i), sm.at(i), Relation::LessEqual);
            push(S(n), sx.at(n), sm.at(n), Relation::Equal);
            break;
        case Family::B:
            for (std::size_t i = 1; i <= n; ++i) push(S(i), sx.at(i), sm.at(i), Relation::LessEqual);
            break;
        case Family::D:
            for (std::size_t i = 1; i + 2 <= n; ++i) push(S(i), sx.at(i), sm.at(i), Relation::LessEqual);
            push(S(n - 1) + "-x" + std::to_string(n), sx.at(n - 1) - x[n - 1], sm.at(n - 1) - mu_r[n - 1],
                 Relation::LessEqual);
            push(S(n), sx.at(n), sm.at(n), Relation::LessEqual);
            break;
    }
    return terms;
}

bool leq(std::span<const Rational> x, const Coweight& mu) {
    const auto terms = leq_terms(x, mu);
    return std::all_of(terms.begin(), terms.end(), [](const InequalityTerm& t) { return t.holds; });
}

bool leq(const Coweight& x, const Coweight& mu) {
    require_same_sector(x, mu);
    return leq(x.as_rational(), mu);
}

bool same_class_XG(const Coweight& x, const Coweight& mu) {
    require_same_kind(x, mu);
    if (x.sector() != mu.sector()) return false;
    const std::int64_t diff = checked::sub(mu.sum(), x.sum());
    switch (x.family()) {
        case Family::A: return diff == 0;
        case Family::B: return diff % 2 == 0;
        case Family::D: return diff % (x.half() ? 4 : 2) == 0;
    }
    return false;
}

bool in_hull(std::span<const Rational> x, const Coweight& mu) {
    require_dominant(mu);
    require_length(x, mu);
    // For A the orbit spans only the hyperplane S_n = S_n(mu); leq's final
    // equality term enforces it.
    return leq(dominant_representative(mu.family(), x), mu);
}

bool in_hull(const Coweight& x, const Coweight& mu) {
    require_same_sector(x, mu);
    return in_hull(x.as_rational(), mu);
}

bool weyl_orbit_equivalent(const Coweight& x, const Coweight& y) {
    require_same_kind(x, y);
    if (x.sector() != y.sector()) return false;
    if (x.family() == Family::A) {
        Entries a(x.entries().begin(), x.entries().end()), b(y.entries().begin(), y.entries().end());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }
    auto profile = [](const Coweight& c) {
        Entries abs_sorted;
        int negatives = 0;
        bool zero = false;
        for (std::int64_t e : c.entries()) {
            abs_sorted.push_back(abs_value(e));
            negatives += e < 0;
            zero = zero || e == 0;
        }
        std::sort(abs_sorted.begin(), abs_sorted.end());
        return std::tuple(abs_sorted, negatives % 2, zero);
    };
    const auto [ax, px, zx] = profile(x);
    const auto [ay, py, zy] = profile(y);
    if (ax != ay) return false;
    if (x.family() == Family::B || zx) return true;
    return px == py;
}

std::uint64_t weyl_group_order(GroupKind kind) {
    std::uint64_t order = 1;
    for (int i = 2; i <= kind.rank; ++i) order *= static_cast<std::uint64_t>(i);
    switch (kind.family) {
        case Family::A: return order;
        case Family::B: return order << kind.rank;
        case Family::D: return order << (kind.rank - 1);
    }
    return order;
}

std::vector<Entries> weyl_orbit(const Coweight& x) {
    const std::size_t n = x.size();
    const Family family = x.family();
    // Simple reflections: adjacent transpositions s_1..s_{n-1}, plus the
    // family's extra generator acting on the tail.
    auto reflect = [&](const Entries& v, std::size_t which) {
        Entries w = v;
        if (which + 1 < n) {
            std::swap(w[which], w[which + 1]);
        } else if (family == Family::B) {
            w[n - 1] = -w[n - 1];
        } else {
            const std::int64_t a = w[n - 2], b = w[n - 1];
            w[n - 2] = -b;
            w[n - 1] = -a;
        }
        return w;
    };
    const std::size_t generators = family == Family::A ? n - 1 : n;

    std::set<Entries> seen;
    std::vector<Entries> frontier{Entries(x.entries().begin(), x.entries().end())};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<Entries> next;
        for (const Entries& v : frontier)
            for (std::size_t g = 0; g < generators; ++g) {
                Entries w = reflect(v, g);
                if (seen.insert(w).second) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace chull
