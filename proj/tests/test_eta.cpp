#include "doctest.h"

#include "chull/error.hpp"
#include "chull/eta.hpp"
#include "chull/oracle.hpp"
#include "support.hpp"

using namespace chull;

namespace {

Coweight cw(Family f, Entries e, Sector s = Sector::Integral) {
    const int n = static_cast<int>(e.size());
    return Coweight(GroupKind::make(f, n), std::move(e), s);
}

LeviShape shape(Family f, int n, const char* text) { return LeviShape::parse(GroupKind::make(f, n), text); }

bool all_pass(const std::vector<NamedCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return !c.applicable || c.passed; });
}

}  // namespace

TEST_CASE("the SO_13 walkthrough") {
    const LeviShape s = shape(Family::B, 6, "2,1,1;2");
    const Coweight nu = cw(Family::B, {2, 1, 2, 0, 1, 0});
    const EtaResult r = build_eta(s, nu);
    CHECK(r.eta_prime == cw(Family::B, {2, 2, 1, 0, 1, 0}));
    CHECK(r.coarser_shape == shape(Family::B, 6, "3,1;2"));
    CHECK(r.eta == cw(Family::B, {2, 2, 1, 1, 0, 0}));
    CHECK(r.swapped);
    CHECK(batch_first_entries(s, nu) == std::vector<std::int64_t>{2, 2, 0});
    CHECK_FALSE(r.projection_dominant);
    CHECK(all_pass(eta_postconditions(s, nu, r)));
}

TEST_CASE("single batch and distinct first entries leave nu alone") {
    const Coweight nu = cw(Family::A, {1, 1, 0, 0});
    const EtaResult r = build_eta(shape(Family::A, 4, "4"), nu);
    CHECK(r.eta == nu);
    const Coweight nu2 = cw(Family::A, {2, 1, 1, 0});
    const EtaResult r2 = build_eta(shape(Family::A, 4, "2,2"), nu2);
    CHECK(r2.eta == nu2);
    CHECK(r2.coarser_shape == shape(Family::A, 4, "2,2"));
    CHECK(check_batch_order(shape(Family::A, 2, "2"), cw(Family::A, {1, 0})));
}

TEST_CASE("half-doubled three-stage example") {
    const LeviShape s = shape(Family::D, 4, "2;2");
    const Coweight nu = cw(Family::D, {1, -1, 1, -1}, Sector::HalfDoubled);
    const EtaResult r = build_eta(s, nu);
    CHECK(r.eta_prime == nu);
    CHECK(r.eta_double_prime == cw(Family::D, {1, 1, 1, -1}, Sector::HalfDoubled));
    CHECK(r.sign_flips == 1);
    CHECK(r.eta == cw(Family::D, {1, 1, 1, 1}, Sector::HalfDoubled));
    CHECK(weyl_orbit_equivalent(r.eta, nu));
    CHECK(is_dominant(r.eta));
}

TEST_CASE("preconditions are distinct from a false answer") {
    try {
        check_batch_order(shape(Family::A, 2, "1,1"), cw(Family::A, {0, 1}));
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Precondition);
    }
    try {
        require_eta_preconditions(shape(Family::A, 2, "1,1"), cw(Family::A, {0, 1}));
        FAIL("expected NormalizationRequired");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NormalizationRequired);
    }
    CHECK_THROWS_AS(build_eta(shape(Family::A, 3, "3"), cw(Family::A, {2, 0, 0})), Error);
    CHECK_THROWS_AS(build_eta(shape(Family::A, 2, "2"), cw(Family::A, {0, 1})), Error);
}

TEST_CASE("the swap fires only when batch s of eta' ends in zero") {
    // SO batch (1,0) but batch s ends in 1: eta = eta'.
    const LeviShape s = shape(Family::B, 4, "1,1;2");
    const EtaResult r = build_eta(s, cw(Family::B, {1, 1, 1, 0}));
    CHECK_FALSE(r.swapped);
    CHECK(r.eta == r.eta_prime);
    const EtaResult swapped = build_eta(s, cw(Family::B, {1, 0, 1, 0}));
    CHECK(swapped.swapped);
    CHECK(swapped.eta == cw(Family::B, {1, 1, 0, 0}));
}

TEST_CASE("eta properties on every valid input, rank <= 3, entries bounded by 2") {
    for (Family f : {Family::A, Family::B, Family::D})
        for (Sector sec : {Sector::Integral, Sector::HalfDoubled}) {
            if (sec == Sector::HalfDoubled && f != Family::D) continue;
            for (int n = (f == Family::D ? 2 : 1); n <= 3; ++n) {
                const GroupKind k = GroupKind::make(f, n);
                const auto mus = dominant_coweights(k, sec, -2, 2);
                for (const LeviShape& s : all_shapes(k))
                    for (const Coweight& nu : box_points(k, sec, 2)) {
                        if (!is_M_dominant(s, nu) || !is_M_minuscule(s, nu)) continue;
                        if (!is_dominant(f, project(s, nu).expand())) continue;
                        REQUIRE(check_batch_order(s, nu));
                        const EtaResult r = build_eta(s, nu);
                        CHECK(r.projection_dominant);
                        for (const Coweight& mu : mus) {
                            const auto checks = eta_postconditions(s, nu, r, mu);
                            REQUIRE(all_pass(checks));
                        }
                        CHECK(support::signed_permutation_orbit(nu).count(
                                  Entries(r.eta.entries().begin(), r.eta.entries().end())) == 1);
                    }
            }
        }
}

TEST_CASE("eta_postconditions marks the transfer bound applicable only with matching hypotheses") {
    const LeviShape s = shape(Family::A, 3, "2,1");
    const Coweight nu = cw(Family::A, {1, 0, 0});
    const EtaResult r = build_eta(s, nu);
    const auto with = eta_postconditions(s, nu, r, cw(Family::A, {1, 0, 0}));
    CHECK(with.back().name == "eta_L <= mu");
    CHECK(with.back().applicable);
    CHECK(with.back().passed);
    const auto other = eta_postconditions(s, nu, r, cw(Family::A, {2, 0, 0}));
    CHECK_FALSE(other.back().applicable);
}
