#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chull/rational.hpp"
#include "chull/root_data.hpp"

namespace chull {

/// Standard Levi subgroup GL_{n_1} x ... x GL_{n_r} x SO-factor, described by
/// the batch sizes (n_1, ..., n_r) and the rank j of the SO factor.
///
/// Batches are consecutive coordinate blocks: batch k occupies positions
/// sigma(k-1) .. sigma(k)-1 (0-based), and the SO batch the final j slots.
class LeviShape {
public:
    LeviShape(GroupKind kind, std::vector<int> gl_sizes, int so_rank = 0);

    /// "2,1,1;2" style. The ";j" suffix may be omitted when j = 0.
    static LeviShape parse(GroupKind kind, std::string_view text);

    const GroupKind& kind() const { return kind_; }
    const std::vector<int>& gl_sizes() const { return gl_sizes_; }
    int so_rank() const { return so_rank_; }
    int batch_count() const { return static_cast<int>(gl_sizes_.size()); }
    bool has_so_batch() const { return so_rank_ > 0; }

    /// sigma(k) = n_1 + ... + n_k for 0 <= k <= r, and sigma(r+1) = n.
    int sigma(int k) const;
    /// 0-based first coordinate of GL batch k (1-based k), or of the SO batch for k = r+1.
    int batch_begin(int k) const { return sigma(k - 1); }
    int batch_size(int k) const;

    /// "3,1;2" for B/D, "3,1" for A.
    std::string str() const;

    friend bool operator==(const LeviShape&, const LeviShape&) = default;
    friend auto operator<=>(const LeviShape&, const LeviShape&) = default;

private:
    GroupKind kind_;
    std::vector<int> gl_sizes_;
    int so_rank_ = 0;
};

/// Every valid standard Levi shape of the kind, ordered by SO rank and then
/// lexicographically by batch sizes.
std::vector<LeviShape> all_shapes(GroupKind kind);

/// A W_M-fixed vector: constant on each GL batch, zero on the SO batch.
struct LeviPoint {
    LeviShape shape;
    RationalVector averages;

    LeviPoint(LeviShape s, RationalVector avg);

    RationalVector expand() const;
};

/// Invariants of X_M: GL batch sums together with the SO-factor residue
/// (sum of the SO slots mod 2, or mod 4 in the half-doubled sector; 0 when j = 0).
struct ClassData {
    std::vector<std::int64_t> sums;
    int so_class = 0;

    friend auto operator<=>(const ClassData&, const ClassData&) = default;
};

/// Element of X_M, held as its unique M-dominant M-minuscule lift.
struct XMClass {
    LeviShape shape;
    Coweight canonical_lift;

    ClassData data() const;

    friend bool operator==(const XMClass&, const XMClass&) = default;
    friend auto operator<=>(const XMClass&, const XMClass&) = default;
};

LeviPoint project(const LeviShape& shape, const Coweight& x);

bool is_M_dominant(const LeviShape& shape, const Coweight& x);
bool is_M_minuscule(const LeviShape& shape, const Coweight& x);

ClassData class_data(const LeviShape& shape, const Coweight& x);
XMClass class_of(const LeviShape& shape, const Coweight& x);

/// SO residues that occur for the shape in the given sector.
std::vector<int> valid_so_classes(const LeviShape& shape, Sector sector);

/// The unique M-dominant, M-minuscule coweight with the given batch sums and
/// SO residue. Throws Parity when a half-doubled batch sum has the wrong
/// parity, InvalidClass for an SO residue that does not occur.
Coweight minuscule_lift(const LeviShape& shape, Sector sector, std::span<const std::int64_t> sums, int so_class);

/// beta <= mu checked only at the batch ends (the reduction valid for W_M-fixed
/// beta). For family A, throws SpanViolation when the total sums differ.
bool leq_batch_ends(const LeviShape& shape, const LeviPoint& beta, const Coweight& mu);

}  // namespace chull
