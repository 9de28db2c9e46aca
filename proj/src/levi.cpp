#include "chull/levi.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "chull/error.hpp"

namespace chull {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int mod(std::int64_t a, int m) { return static_cast<int>(((a % m) + m) % m); }

void require_compatible(const LeviShape& shape, const Coweight& x) {
    if (shape.kind() != x.kind())
        throw Error(ErrorCode::ShapeMismatch,
                    "shape " + shape.str() + " of " + shape.kind().name() + " does not match coweight of " + x.kind().name());
}

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty())
        throw Error(ErrorCode::InvalidArgument, "malformed shape '" + std::string(whole) + "'");
    return value;
}

}  // namespace

LeviShape::LeviShape(GroupKind kind, std::vector<int> gl_sizes, int so_rank)
    : kind_(GroupKind::make(kind.family, kind.rank)), gl_sizes_(std::move(gl_sizes)), so_rank_(so_rank) {
    if (so_rank_ < 0) throw Error(ErrorCode::InvalidShape, "negative SO rank");
    for (int size : gl_sizes_)
        if (size < 1) throw Error(ErrorCode::InvalidShape, "GL batch sizes must be positive");
    const int total = std::accumulate(gl_sizes_.begin(), gl_sizes_.end(), 0) + so_rank_;
    if (total != kind_.rank)
        throw Error(ErrorCode::InvalidShape, "shape " + str() + " covers " + std::to_string(total) +
                                                 " coordinates, rank is " + std::to_string(kind_.rank));
    if (kind_.family == Family::A && so_rank_ != 0)
        throw Error(ErrorCode::InvalidShape, "family A Levi subgroups have no SO factor");
    if (kind_.family == Family::D && so_rank_ == 1) {
        std::vector<int> redirect = gl_sizes_;
        redirect.push_back(1);
        throw Error(ErrorCode::InvalidShape,
                    "SO factor of rank j = 1 is not used for family D: it is the same Levi subgroup as j = 0 with an "
                    "extra trailing GL batch of size 1; use shape " +
                        LeviShape(kind_, redirect, 0).str() + " instead");
    }
}

LeviShape LeviShape::parse(GroupKind kind, std::string_view text) {
    std::string_view gl_part = text;
    int so_rank = 0;
    if (const auto semi = text.find(';'); semi != std::string_view::npos) {
        gl_part = text.substr(0, semi);
        so_rank = parse_int(text.substr(semi + 1), text);
    }
    std::vector<int> sizes;
    while (!gl_part.empty()) {
        const auto comma = gl_part.find(',');
        sizes.push_back(parse_int(gl_part.substr(0, comma), text));
        if (comma == std::string_view::npos) break;
        gl_part.remove_prefix(comma + 1);
        if (gl_part.empty()) throw Error(ErrorCode::InvalidArgument, "malformed shape '" + std::string(text) + "'");
    }
    return LeviShape(kind, std::move(sizes), so_rank);
}

int LeviShape::sigma(int k) const {
    const int r = batch_count();
    if (k < 0 || k > r + 1) throw Error(ErrorCode::InvalidArgument, "batch index out of range");
    if (k == r + 1) return kind_.rank;
    return std::accumulate(gl_sizes_.begin(), gl_sizes_.begin() + k, 0);
}

int LeviShape::batch_size(int k) const { return k == batch_count() + 1 ? so_rank_ : gl_sizes_[k - 1]; }

std::string LeviShape::str() const {
    std::string out;
    for (std::size_t i = 0; i < gl_sizes_.size(); ++i) out += (i ? "," : "") + std::to_string(gl_sizes_[i]);
    if (kind_.family != Family::A) out += ";" + std::to_string(so_rank_);
    return out;
}

std::vector<LeviShape> all_shapes(GroupKind kind) {
    std::vector<int> so_ranks;
    if (kind.family == Family::A) {
        so_ranks = {0};
    } else {
        for (int j = 0; j <= kind.rank; ++j)
            if (!(kind.family == Family::D && j == 1)) so_ranks.push_back(j);
    }
    std::vector<LeviShape> shapes;
    for (int j : so_ranks) {
        std::vector<std::vector<int>> compositions;
        std::vector<int> current;
        auto recurse = [&](auto&& self, int remaining) -> void {
            if (remaining == 0) {
                compositions.push_back(current);
                return;
            }
            for (int part = 1; part <= remaining; ++part) {
                current.push_back(part);
                self(self, remaining - part);
                current.pop_back();
            }
        };
        recurse(recurse, kind.rank - j);
        for (auto& c : compositions) shapes.emplace_back(kind, std::move(c), j);
    }
    return shapes;
}

LeviPoint::LeviPoint(LeviShape s, RationalVector avg) : shape(std::move(s)), averages(std::move(avg)) {
    if (averages.size() != static_cast<std::size_t>(shape.batch_count()))
        throw Error(ErrorCode::ShapeMismatch, "LeviPoint needs one average per GL batch");
}

RationalVector LeviPoint::expand() const {
    RationalVector out;
    out.reserve(static_cast<std::size_t>(shape.kind().rank));
    for (int k = 1; k <= shape.batch_count(); ++k) out.insert(out.end(), shape.batch_size(k), averages[k - 1]);
    out.insert(out.end(), shape.so_rank(), Rational(0));
    return out;
}

LeviPoint project(const LeviShape& shape, const Coweight& x) {
    require_compatible(shape, x);
    RationalVector averages;
    for (int k = 1; k <= shape.batch_count(); ++k) {
        std::int64_t sum = 0;
        for (int i = shape.batch_begin(k); i < shape.sigma(k); ++i) sum = checked::add(sum, x[i]);
        averages.emplace_back(sum, shape.batch_size(k));
    }
    return LeviPoint(shape, std::move(averages));
}

bool is_M_dominant(const LeviShape& shape, const Coweight& x) {
    require_compatible(shape, x);
    for (int k = 1; k <= shape.batch_count(); ++k)
        for (int i = shape.batch_begin(k); i + 1 < shape.sigma(k); ++i)
            if (x[i] < x[i + 1]) return false;
    if (!shape.has_so_batch()) return true;
    const auto so = x.entries().subspan(shape.sigma(shape.batch_count()));
    return is_dominant(x.family(), RationalVector(so.begin(), so.end()));
}

bool is_M_minuscule(const LeviShape& shape, const Coweight& x) {
    require_compatible(shape, x);
    const std::int64_t gap = x.half() ? 2 : 1;
    for (int k = 1; k <= shape.batch_count(); ++k) {
        const auto batch = x.entries().subspan(shape.batch_begin(k), shape.batch_size(k));
        const auto [lo, hi] = std::minmax_element(batch.begin(), batch.end());
        if (*hi - *lo > gap) return false;
    }
    if (!shape.has_so_batch()) return true;
    const auto so = x.entries().subspan(shape.sigma(shape.batch_count()));
    if (x.half()) return std::all_of(so.begin(), so.end(), [](std::int64_t e) { return e == 1 || e == -1; });
    int nonzero = 0;
    for (std::int64_t e : so) {
        if (e > 1 || e < -1) return false;
        nonzero += e != 0;
    }
    return nonzero <= 1;
}

ClassData class_data(const LeviShape& shape, const Coweight& x) {
    require_compatible(shape, x);
    ClassData data;
    for (int k = 1; k <= shape.batch_count(); ++k) {
        std::int64_t sum = 0;
        for (int i = shape.batch_begin(k); i < shape.sigma(k); ++i) sum = checked::add(sum, x[i]);
        data.sums.push_back(sum);
    }
    if (shape.has_so_batch()) {
        std::int64_t so_sum = 0;
        for (int i = shape.sigma(shape.batch_count()); i < shape.kind().rank; ++i) so_sum = checked::add(so_sum, x[i]);
        data.so_class = mod(so_sum, x.half() ? 4 : 2);
    }
    return data;
}

XMClass class_of(const LeviShape& shape, const Coweight& x) {
    const ClassData data = class_data(shape, x);
    return XMClass{shape, minuscule_lift(shape, x.sector(), data.sums, data.so_class)};
}

ClassData XMClass::data() const { return class_data(shape, canonical_lift); }

std::vector<int> valid_so_classes(const LeviShape& shape, Sector sector) {
    if (!shape.has_so_batch()) return {0};
    if (sector == Sector::Integral) return {0, 1};
    std::vector<int> classes{shape.so_rank() % 4, (shape.so_rank() + 2) % 4};
    std::sort(classes.begin(), classes.end());
    return classes;
}

Coweight minuscule_lift(const LeviShape& shape, Sector sector, std::span<const std::int64_t> sums, int so_class) {
    if (sums.size() != static_cast<std::size_t>(shape.batch_count()))
        throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(shape.batch_count()) + " batch sums");
    const auto classes = valid_so_classes(shape, sector);
    if (std::find(classes.begin(), classes.end(), so_class) == classes.end())
        throw Error(ErrorCode::InvalidClass,
                    "SO class " + std::to_string(so_class) + " does not occur for shape " + shape.str());
    const bool half = sector == Sector::HalfDoubled;

    Entries entries;
    entries.reserve(static_cast<std::size_t>(shape.kind().rank));
    for (int k = 1; k <= shape.batch_count(); ++k) {
        const std::int64_t size = shape.batch_size(k);
        std::int64_t s = sums[k - 1];
        if (half) {
            if (mod(s - size, 2) != 0)
                throw Error(ErrorCode::Parity, "batch " + std::to_string(k) + " sum " + std::to_string(s) +
                                                   " must have the parity of its size " + std::to_string(size));
            s = (s - size) / 2;
        }
        const std::int64_t q = floor_div(s, size);
        const std::int64_t t = s - q * size;
        const std::int64_t high = half ? 2 * (q + 1) + 1 : q + 1;
        const std::int64_t low = half ? 2 * q + 1 : q;
        entries.insert(entries.end(), t, high);
        entries.insert(entries.end(), size - t, low);
    }
    const int j = shape.so_rank();
    if (j > 0) {
        if (half) {
            entries.insert(entries.end(), j, 1);
            if (so_class != j % 4) entries.back() = -1;
        } else {
            entries.push_back(so_class == 1 ? 1 : 0);
            entries.insert(entries.end(), j - 1, 0);
        }
    }
    return Coweight(shape.kind(), std::move(entries), sector);
}

bool leq_batch_ends(const LeviShape& shape, const LeviPoint& beta, const Coweight& mu) {
    if (beta.shape != shape) throw Error(ErrorCode::ShapeMismatch, "LeviPoint is over a different shape");
    require_compatible(shape, mu);
    if (!is_dominant(mu)) throw Error(ErrorCode::NotDominant, "mu = " + mu.str() + " is not dominant");

    const int n = shape.kind().rank;
    const int r = shape.batch_count();
    // Prefix sums of expand(beta) and of mu at the batch ends.
    std::vector<Rational> beta_end(static_cast<std::size_t>(r) + 1, Rational(0));
    for (int k = 1; k <= r; ++k) beta_end[k] = beta_end[k - 1] + beta.averages[k - 1] * Rational(shape.batch_size(k));
    std::vector<Rational> mu_prefix(static_cast<std::size_t>(n) + 1, Rational(0));
    for (int i = 1; i <= n; ++i) mu_prefix[i] = mu_prefix[i - 1] + Rational(mu[i - 1]);

    switch (shape.kind().family) {
        case Family::A:
            if (beta_end[r] != mu_prefix[n])
                throw Error(ErrorCode::SpanViolation, "mu - beta is not in the coroot span (total sums " +
                                                          beta_end[r].str() + " vs " + mu_prefix[n].str() + ")");
            for (int k = 1; k < r; ++k)
                if (beta_end[k] > mu_prefix[shape.sigma(k)]) return false;
            return true;
        case Family::B:
            for (int k = 1; k <= r; ++k)
                if (beta_end[k] > mu_prefix[shape.sigma(k)]) return false;
            return true;
        case Family::D: {
            for (int k = 1; k <= r; ++k)
                if (shape.sigma(k) <= n - 2 && beta_end[k] > mu_prefix[shape.sigma(k)]) return false;
            if (beta_end[r] > mu_prefix[n]) return false;
            if (shape.so_rank() == 0 && r >= 1 && shape.batch_size(r) == 1) {
                const Rational lhs = beta_end[r - 1] - beta.averages[r - 1];
                const Rational rhs = mu_prefix[n - 1] - Rational(mu[n - 1]);
                if (lhs > rhs) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace chull
