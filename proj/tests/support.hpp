#pragma once

// Oracles for the tests. Nothing here calls the predicates it is used to
// check: orbits come from raw signed permutations, dominance and minuscule
// conditions from explicit positive roots of M.

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chull/levi.hpp"
#include "chull/rational.hpp"
#include "chull/root_data.hpp"
#include "cli.hpp"

namespace support {

using namespace chull;

/// Every permutation with every sign pattern allowed by the family: none for
/// A, any for B, an even number of sign changes for D.
inline std::set<Entries> signed_permutation_orbit(const Coweight& x) {
    const int n = x.rank();
    Entries base(x.entries().begin(), x.entries().end());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Entries> out;
    do {
        const int patterns = x.family() == Family::A ? 1 : (1 << n);
        for (int mask = 0; mask < patterns; ++mask) {
            if (x.family() == Family::D && __builtin_popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
            Entries v(n);
            for (int i = 0; i < n; ++i) v[i] = ((mask >> i) & 1) ? -base[perm[i]] : base[perm[i]];
            out.insert(v);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Positive roots of M as integer vectors on the n coordinates.
inline std::vector<Entries> positive_roots(const LeviShape& shape) {
    const int n = shape.kind().rank;
    std::vector<Entries> roots;
    auto add = [&](int a, int sa, int b, int sb) {
        Entries r(n, 0);
        r[a] += sa;
        if (b >= 0) r[b] += sb;
        roots.push_back(r);
    };
    for (int k = 1; k <= shape.batch_count(); ++k)
        for (int a = shape.batch_begin(k); a < shape.sigma(k); ++a)
            for (int b = a + 1; b < shape.sigma(k); ++b) add(a, 1, b, -1);
    const int so = shape.sigma(shape.batch_count());
    for (int a = so; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            add(a, 1, b, -1);
            add(a, 1, b, 1);
        }
        if (shape.kind().family == Family::B) add(a, 1, -1, 0);
    }
    return roots;
}

inline std::int64_t pair(const Entries& root, std::span<const std::int64_t> x) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < root.size(); ++i) s += root[i] * x[i];
    return s;
}

inline bool root_dominant(const std::vector<Entries>& roots, std::span<const std::int64_t> x) {
    return std::all_of(roots.begin(), roots.end(), [&](const Entries& r) { return pair(r, x) >= 0; });
}

/// <alpha, x> in {-b, 0, b} for every root, b = 1 (2 for the doubled sector).
inline bool root_minuscule(const std::vector<Entries>& roots, std::span<const std::int64_t> x, std::int64_t b) {
    return std::all_of(roots.begin(), roots.end(), [&](const Entries& r) {
        const auto p = pair(r, x);
        return p == 0 || p == b || p == -b;
    });
}

/// Batch sums and the SO residue, straight from the definition.
inline std::pair<Entries, int> class_invariants(const LeviShape& shape, std::span<const std::int64_t> x, bool half) {
    Entries sums;
    for (int k = 1; k <= shape.batch_count(); ++k) {
        std::int64_t s = 0;
        for (int i = shape.batch_begin(k); i < shape.sigma(k); ++i) s += x[i];
        sums.push_back(s);
    }
    std::int64_t so = 0;
    for (int i = shape.sigma(shape.batch_count()); i < shape.kind().rank; ++i) so += x[i];
    const int m = half ? 4 : 2;
    return {sums, shape.has_so_batch() ? static_cast<int>(((so % m) + m) % m) : 0};
}

/// Distinct p/q with 1 <= q <= max_den and |p| <= max_num.
inline std::vector<Rational> small_rationals(std::int64_t max_den, std::int64_t max_num) {
    std::set<Rational> s;
    for (std::int64_t q = 1; q <= max_den; ++q)
        for (std::int64_t p = -max_num; p <= max_num; ++p) s.insert(Rational(p, q));
    return {s.begin(), s.end()};
}

/// Every rational point of [-radius, radius]^n whose coordinates share a
/// denominator dividing 4 or 3, i.e. lcm of denominators <= 4.
inline std::vector<RationalVector> rational_box(int n, std::int64_t radius) {
    std::set<RationalVector> out;
    for (std::int64_t den : {4, 3}) {
        const std::int64_t hi = radius * den;
        std::vector<std::int64_t> v(n, -hi);
        while (true) {
            RationalVector p;
            for (auto num : v) p.emplace_back(num, den);
            out.insert(p);
            int i = n - 1;
            while (i >= 0 && v[i] == hi) v[i--] = -hi;
            if (i < 0) break;
            ++v[i];
        }
    }
    return {out.begin(), out.end()};
}

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = chull::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

inline std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace support
