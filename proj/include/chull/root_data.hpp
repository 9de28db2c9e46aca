#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chull/rational.hpp"

namespace chull {

/// A: GL_n, B: SO_{2n+1}, D: SO_{2n}/{±1}.
enum class Family { A, B, D };

/// Type D coweights come in two sectors; the half-integral one is stored with
/// every entry doubled, so all of its entries are odd integers.
enum class Sector { Integral, HalfDoubled };

std::string_view to_string(Family f);
std::string_view to_string(Sector s);
Family parse_family(std::string_view text);
Sector parse_sector(std::string_view text);

struct GroupKind {
    Family family = Family::A;
    int rank = 1;

    /// Validating constructor: rank >= 1 for A and B, rank >= 2 for D.
    static GroupKind make(Family family, int rank);

    std::string name() const;  // "A3", "B2", ...

    friend auto operator<=>(const GroupKind&, const GroupKind&) = default;
};

using Entries = std::vector<std::int64_t>;

class Coweight {
public:
    Coweight(GroupKind kind, Entries entries, Sector sector = Sector::Integral);

    const GroupKind& kind() const { return kind_; }
    Family family() const { return kind_.family; }
    int rank() const { return kind_.rank; }
    Sector sector() const { return sector_; }
    bool half() const { return sector_ == Sector::HalfDoubled; }

    std::span<const std::int64_t> entries() const { return entries_; }
    std::int64_t operator[](std::size_t i) const { return entries_[i]; }
    std::size_t size() const { return entries_.size(); }
    std::int64_t sum() const;
    std::int64_t max_abs() const;

    RationalVector as_rational() const { return to_rational(entries_); }

    /// Same kind and sector, different entries.
    Coweight with_entries(Entries entries) const { return Coweight(kind_, std::move(entries), sector_); }

    std::string str() const;  // "(2,1,0)"

    friend bool operator==(const Coweight&, const Coweight&) = default;
    friend auto operator<=>(const Coweight&, const Coweight&) = default;

private:
    GroupKind kind_;
    Sector sector_;
    Entries entries_;
};

/// S_i(x) = x_1 + ... + x_i, with S_0 = 0.
class PartialSumLedger {
public:
    explicit PartialSumLedger(std::span<const Rational> x);

    /// 1-based; at(0) is zero.
    const Rational& at(std::size_t i) const { return sums_[i]; }
    std::size_t size() const { return sums_.size() - 1; }

private:
    RationalVector sums_;
};

std::string format_vector(std::span<const Rational> v);
std::string format_vector(std::span<const std::int64_t> v);

bool is_dominant(const Coweight& x);
bool is_dominant(Family family, std::span<const Rational> x);

/// Unique dominant element of the Weyl orbit.
Coweight dominant_representative(const Coweight& x);
RationalVector dominant_representative(Family family, std::span<const Rational> x);

enum class Relation { LessEqual, Equal };

/// One member of a fundamental-weight inequality family, with both sides.
struct InequalityTerm {
    std::string label;
    Rational lhs;
    Rational rhs;
    Relation relation = Relation::LessEqual;
    bool holds = false;
};

/// The full inequality family behind x <= mu: prefix sums, plus the
/// type-D pair S_{n-1}-x_n and S_n. For A the last term is the equality
/// forced by the coroot span.
std::vector<InequalityTerm> leq_terms(std::span<const Rational> x, const Coweight& mu);

bool leq(std::span<const Rational> x, const Coweight& mu);
bool leq(const Coweight& x, const Coweight& mu);

/// Same image in X_G. Distinct type-D sectors are always distinct classes.
bool same_class_XG(const Coweight& x, const Coweight& mu);

/// x in Conv(W mu), decided through the dominant representative of x.
bool in_hull(std::span<const Rational> x, const Coweight& mu);
bool in_hull(const Coweight& x, const Coweight& mu);

bool weyl_orbit_equivalent(const Coweight& x, const Coweight& y);

/// |W| for the family and rank: n!, 2^n n!, 2^(n-1) n!.
std::uint64_t weyl_group_order(GroupKind kind);

/// Explicit Weyl orbit, generated by closing {x} under the simple
/// reflections. Sorted lexicographically.
std::vector<Entries> weyl_orbit(const Coweight& x);

}  // namespace chull
