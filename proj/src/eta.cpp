#include "chull/eta.hpp"

#include <algorithm>
#include <functional>

#include "chull/error.hpp"

namespace chull {

std::vector<std::int64_t> batch_first_entries(const LeviShape& shape, const Coweight& nu) {
    if (shape.kind() != nu.kind()) throw Error(ErrorCode::ShapeMismatch, "shape and coweight kinds differ");
    std::vector<std::int64_t> firsts;
    for (int k = 1; k <= shape.batch_count(); ++k) firsts.push_back(nu[shape.batch_begin(k)]);
    return firsts;
}

namespace {

void require_construction_domain(const LeviShape& shape, const Coweight& nu) {
    if (!is_M_dominant(shape, nu))
        throw Error(ErrorCode::Precondition, "nu = " + nu.str() + " is not M-dominant for shape " + shape.str());
    if (!is_M_minuscule(shape, nu))
        throw Error(ErrorCode::Precondition, "nu = " + nu.str() + " is not M-" +
                                                 std::string(nu.half() ? "2-minuscule" : "minuscule") + " for shape " +
                                                 shape.str());
}

}  // namespace

void require_eta_preconditions(const LeviShape& shape, const Coweight& nu) {
    require_construction_domain(shape, nu);
    const RationalVector nu_M = project(shape, nu).expand();
    if (!is_dominant(nu.family(), nu_M))
        throw Error(ErrorCode::NormalizationRequired,
                    "projection " + format_vector(nu_M) +
                        " is not G-dominant; choose a Borel making it dominant (the Levi shape changes with it), or "
                        "use the brute-force oracle");
}

bool check_batch_order(const LeviShape& shape, const Coweight& nu) {
    try {
        require_eta_preconditions(shape, nu);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NormalizationRequired) throw Error(ErrorCode::Precondition, e.what());
        throw;
    }
    const auto firsts = batch_first_entries(shape, nu);
    return std::is_sorted(firsts.begin(), firsts.end(), std::greater<>());
}

EtaResult build_eta(const LeviShape& shape, const Coweight& nu) {
    require_construction_domain(shape, nu);
    const int r = shape.batch_count();
    const int n = shape.kind().rank;

    // Stage 1: merge runs of batches sharing a first entry.
    Entries prime;
    std::vector<int> merged_sizes;
    for (int k = 1; k <= r;) {
        const std::int64_t first = nu[shape.batch_begin(k)];
        const auto run_begin = prime.size();
        int size = 0;
        while (k <= r && nu[shape.batch_begin(k)] == first) {
            for (int i = shape.batch_begin(k); i < shape.sigma(k); ++i) prime.push_back(nu[i]);
            size += shape.batch_size(k);
            ++k;
        }
        std::sort(prime.begin() + static_cast<std::ptrdiff_t>(run_begin), prime.end(), std::greater<>());
        merged_sizes.push_back(size);
    }
    for (int i = shape.sigma(r); i < n; ++i) prime.push_back(nu[i]);

    LeviShape coarser(shape.kind(), merged_sizes, shape.so_rank());
    const int s = coarser.batch_count();
    const Coweight eta_prime = nu.with_entries(prime);

    EtaResult result{eta_prime, coarser, eta_prime, eta_prime, 0, false,
                     is_dominant(nu.family(), project(shape, nu).expand())};
    if (s == 0) return result;
    const int last_of_s = coarser.sigma(s) - 1;

    if (!nu.half()) {
        // Stage 2: the SO batch is (1,0,...,0) and batch s ends in zero.
        const int so_begin = coarser.sigma(s);
        bool so_is_unit = coarser.has_so_batch() && prime[so_begin] == 1;
        for (int i = so_begin + 1; so_is_unit && i < n; ++i) so_is_unit = prime[i] == 0;
        if (so_is_unit && prime[last_of_s] == 0) {
            Entries eta = prime;
            const auto leftmost_zero = std::find(eta.begin(), eta.end(), 0) - eta.begin();
            std::swap(eta[leftmost_zero], eta[so_begin]);
            result.eta = nu.with_entries(std::move(eta));
            result.swapped = true;
        }
        return result;
    }

    // Stages 2-3: flip the -1s of batch s, then fix the parity on entry n.
    Entries double_prime = prime;
    int flips = 0;
    for (int i = coarser.batch_begin(s); i <= last_of_s; ++i)
        if (double_prime[i] == -1) {
            double_prime[i] = 1;
            ++flips;
        }
    Entries eta = double_prime;
    if (flips % 2 == 1) eta[n - 1] = -eta[n - 1];
    result.eta_double_prime = nu.with_entries(std::move(double_prime));
    result.eta = nu.with_entries(std::move(eta));
    result.sign_flips = flips;
    return result;
}

std::vector<NamedCheck> eta_postconditions(const LeviShape& shape, const Coweight& nu, const EtaResult& result,
                                           const std::optional<Coweight>& mu) {
    const Coweight& eta = result.eta;
    const LeviShape& L = result.coarser_shape;
    const std::string minuscule = nu.half() ? "2-minuscule" : "minuscule";
    std::vector<NamedCheck> checks;
    auto add = [&](std::string name, bool passed) { checks.push_back({std::move(name), true, passed}); };

    add("eta G-dominant", is_dominant(eta));
    add("eta L-dominant", is_M_dominant(L, eta));
    add("eta L-" + minuscule, is_M_minuscule(L, eta));
    add("eta in W nu", weyl_orbit_equivalent(eta, nu));
    add("eta_L G-dominant", is_dominant(eta.family(), project(L, eta).expand()));

    // L must be obtained from the shape by merging consecutive GL batches.
    bool coarsens = L.so_rank() == shape.so_rank();
    for (int k = 1, m = 1; coarsens && m <= L.batch_count(); ++m) {
        int covered = 0;
        while (k <= shape.batch_count() && covered < L.batch_size(m)) covered += shape.batch_size(k++);
        coarsens = covered == L.batch_size(m);
    }
    add("L coarsens M", coarsens);

    if (mu) {
        const bool applicable = is_dominant(*mu) && same_class_XG(nu, *mu) && leq(project(shape, nu).expand(), *mu);
        checks.push_back({"eta_L <= mu", applicable, applicable && leq(project(L, eta).expand(), *mu)});
    }
    return checks;
}

}  // namespace chull
