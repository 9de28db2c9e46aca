#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chull/levi.hpp"
#include "chull/root_data.hpp"

namespace chull {

/// Output of the reordering construction. For the integral sectors
/// eta_double_prime equals eta_prime and sign_flips is zero.
struct EtaResult {
    Coweight eta;
    LeviShape coarser_shape;
    Coweight eta_prime;
    Coweight eta_double_prime;
    int sign_flips = 0;
    bool swapped = false;  // the B/D-integral swap fired
    bool projection_dominant = true;  // nu_M G-dominant, the hypothesis of the order and transfer lemmas
};

struct NamedCheck {
    std::string name;
    bool applicable = true;
    bool passed = false;
};

/// f_k(nu): first entry of each GL batch.
std::vector<std::int64_t> batch_first_entries(const LeviShape& shape, const Coweight& nu);

/// Throws Precondition unless nu is M-dominant and M-minuscule (2-minuscule
/// in the half-doubled sector), and NormalizationRequired unless
/// project(shape, nu) is G-dominant.
void require_eta_preconditions(const LeviShape& shape, const Coweight& nu);

/// f_1 >= f_2 >= ... >= f_r. Under the preconditions this always holds; a
/// violated precondition throws Precondition rather than returning false.
bool check_batch_order(const LeviShape& shape, const Coweight& nu);

/// Merge consecutive GL batches with equal first entries and sort them
/// (eta'), then repair the tail: the B / D-integral swap, or the
/// half-doubled sign flips. Needs nu M-dominant and M-minuscule only; whether
/// nu_M is G-dominant is recorded in the result, not enforced.
EtaResult build_eta(const LeviShape& shape, const Coweight& nu);

/// The conclusions the construction must satisfy. When mu is supplied the
/// transfer bound project(L, eta) <= mu is checked; it is marked not
/// applicable unless nu and mu share an X_G class and project(shape, nu) <= mu.
std::vector<NamedCheck> eta_postconditions(const LeviShape& shape, const Coweight& nu, const EtaResult& result,
                                           const std::optional<Coweight>& mu = std::nullopt);

}  // namespace chull
