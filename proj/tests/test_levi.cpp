#include "doctest.h"

#include <map>

#include "chull/error.hpp"
#include "chull/levi.hpp"
#include "chull/oracle.hpp"
#include "support.hpp"

using namespace chull;

namespace {

GroupKind kind(Family f, int n) { return GroupKind::make(f, n); }

Coweight cw(Family f, Entries e, Sector s = Sector::Integral) {
    const int n = static_cast<int>(e.size());
    return Coweight(kind(f, n), std::move(e), s);
}

LeviShape shape(Family f, int n, const char* text) { return LeviShape::parse(kind(f, n), text); }

}  // namespace

TEST_CASE("shape parsing, sigma and validation") {
    const LeviShape s = shape(Family::B, 6, "2,1,1;2");
    CHECK(s.batch_count() == 3);
    CHECK(s.so_rank() == 2);
    CHECK(s.sigma(0) == 0);
    CHECK(s.sigma(2) == 3);
    CHECK(s.sigma(3) == 4);
    CHECK(s.sigma(4) == 6);
    CHECK(s.str() == "2,1,1;2");
    CHECK(shape(Family::A, 3, "2,1").str() == "2,1");
    CHECK(shape(Family::D, 2, ";2").batch_count() == 0);
    CHECK(shape(Family::D, 2, "1,1;0") == shape(Family::D, 2, "1,1"));
    CHECK_THROWS_AS(shape(Family::A, 3, "2,2"), Error);
    CHECK_THROWS_AS(shape(Family::A, 3, "2;1"), Error);
    CHECK_THROWS_AS(shape(Family::B, 3, "2,x;1"), Error);
    CHECK_THROWS_AS(shape(Family::B, 3, "2,;1"), Error);
    CHECK_THROWS_AS(shape(Family::B, 3, "0,2;1"), Error);
}

TEST_CASE("family D rejects j = 1 and names the equivalent shape") {
    try {
        shape(Family::D, 3, "2;1");
        FAIL("j = 1 accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidShape);
        const std::string msg = e.what();
        CHECK(msg.find("j = 0") != std::string::npos);
        CHECK(msg.find("2,1;0") != std::string::npos);
    }
}

TEST_CASE("all_shapes counts compositions per SO rank") {
    CHECK(all_shapes(kind(Family::A, 4)).size() == 8);
    CHECK(all_shapes(kind(Family::B, 2)).size() == 4);  // 1,1;0  2;0  1;1  ;2
    CHECK(all_shapes(kind(Family::D, 2)).size() == 3);  // 1,1;0  2;0  ;2
    CHECK(all_shapes(kind(Family::D, 4)).size() == 8 + 2 + 1 + 1);
}

TEST_CASE("project examples") {
    const auto p = project(shape(Family::A, 4, "2,2"), cw(Family::A, {2, 1, 1, 0}));
    CHECK(p.averages == RationalVector{Rational(3, 2), Rational(1, 2)});
    const auto b = project(shape(Family::B, 6, "2,1,1;2"), cw(Family::B, {2, 1, 2, 0, 1, 0}));
    CHECK(b.averages == RationalVector{Rational(3, 2), 2, 0});
    CHECK(b.expand() == RationalVector{Rational(3, 2), Rational(3, 2), 2, 0, 0, 0});
    for (const LeviShape& s : all_shapes(kind(Family::B, 3)))
        for (const Rational& a : project(s, cw(Family::B, {0, 0, 0})).expand()) CHECK(a == 0);
    CHECK_THROWS_AS(project(shape(Family::A, 2, "2"), cw(Family::B, {1, 0})), Error);
}

TEST_CASE("project equals the average over the W_M orbit") {
    for (Family f : {Family::A, Family::B, Family::D}) {
        for (int n = (f == Family::D ? 2 : 1); n <= 3; ++n) {
            const GroupKind k = kind(f, n);
            for (const LeviShape& s : all_shapes(k)) {
                for (const Coweight& x : box_points(k, Sector::Integral, 2)) {
                    // W_M: permutations within GL batches; the SO factor's Weyl group on the tail.
                    std::set<Entries> orbit{Entries(x.entries().begin(), x.entries().end())};
                    bool grew = true;
                    while (grew) {
                        grew = false;
                        for (Entries v : std::set<Entries>(orbit)) {
                            for (int b = 1; b <= s.batch_count(); ++b)
                                for (int i = s.batch_begin(b); i + 1 < s.sigma(b); ++i) {
                                    Entries w = v;
                                    std::swap(w[i], w[i + 1]);
                                    grew |= orbit.insert(w).second;
                                }
                            const int so = s.sigma(s.batch_count());
                            for (int i = so; i < n; ++i) {
                                Entries w = v;
                                if (i + 1 < n) {
                                    std::swap(w[i], w[i + 1]);
                                    grew |= orbit.insert(w).second;
                                }
                                w = v;
                                if (f == Family::B) {
                                    w[i] = -w[i];
                                    grew |= orbit.insert(w).second;
                                } else if (i + 1 < n) {
                                    w[i] = -w[i];
                                    w[i + 1] = -w[i + 1];
                                    grew |= orbit.insert(w).second;
                                }
                            }
                        }
                    }
                    RationalVector mean(n, Rational(0));
                    for (const Entries& v : orbit)
                        for (int i = 0; i < n; ++i) mean[i] += Rational(v[i], static_cast<std::int64_t>(orbit.size()));
                    REQUIRE(project(s, x).expand() == mean);
                }
            }
        }
    }
}

TEST_CASE("M-dominant and M-minuscule examples") {
    const LeviShape s = shape(Family::B, 6, "2,1,1;2");
    const Coweight nu = cw(Family::B, {2, 1, 2, 0, 1, 0});
    CHECK(is_M_dominant(s, nu));
    CHECK(is_M_minuscule(s, nu));
    CHECK_FALSE(is_M_minuscule(shape(Family::A, 3, "3"), cw(Family::A, {2, 0, 0})));
    const LeviShape h = shape(Family::D, 4, "2;2");
    const Coweight x = cw(Family::D, {3, 1, 1, -1}, Sector::HalfDoubled);
    CHECK(is_M_dominant(h, x));
    CHECK(is_M_minuscule(h, x));
    CHECK_FALSE(is_M_minuscule(h, cw(Family::D, {5, 1, 1, -1}, Sector::HalfDoubled)));
    CHECK_FALSE(is_M_minuscule(h, cw(Family::D, {3, 1, 3, 1}, Sector::HalfDoubled)));
    CHECK_FALSE(is_M_minuscule(shape(Family::B, 3, "1;2"), cw(Family::B, {0, 1, 1})));
}

TEST_CASE("M predicates agree with the explicit root system of M") {
    for (Family f : {Family::A, Family::B, Family::D})
        for (Sector sec : {Sector::Integral, Sector::HalfDoubled}) {
            if (sec == Sector::HalfDoubled && f != Family::D) continue;
            for (int n = (f == Family::D ? 2 : 1); n <= 4; ++n) {
                const GroupKind k = kind(f, n);
                const auto box = box_points(k, sec, 3);
                for (const LeviShape& s : all_shapes(k)) {
                    const auto roots = support::positive_roots(s);
                    for (const Coweight& x : box) {
                        REQUIRE(is_M_dominant(s, x) == support::root_dominant(roots, x.entries()));
                        if (is_M_dominant(s, x))
                            REQUIRE(is_M_minuscule(s, x) ==
                                    support::root_minuscule(roots, x.entries(), sec == Sector::HalfDoubled ? 2 : 1));
                    }
                }
            }
        }
}

TEST_CASE("class_of examples") {
    const LeviShape s = shape(Family::A, 4, "2,2");
    const XMClass c = class_of(s, cw(Family::A, {2, 1, 1, 0}));
    CHECK(c.data().sums == Entries{3, 1});
    CHECK(c.canonical_lift == cw(Family::A, {2, 1, 1, 0}));
    const XMClass b = class_of(shape(Family::B, 2, "1;1"), cw(Family::B, {0, 1}));
    CHECK(b.data().so_class == 1);
    CHECK(b.canonical_lift == cw(Family::B, {0, 1}));
    CHECK(class_of(s, cw(Family::A, {0, 3, 1, 0})) == c);
    CHECK_FALSE(class_of(s, cw(Family::A, {3, 1, 0, 0})) == c);
}

TEST_CASE("minuscule_lift examples and errors") {
    CHECK(minuscule_lift(shape(Family::A, 4, "2,2"), Sector::Integral, Entries{3, 1}, 0) ==
          cw(Family::A, {2, 1, 1, 0}));
    CHECK(minuscule_lift(shape(Family::B, 3, "2;1"), Sector::Integral, Entries{3}, 1) == cw(Family::B, {2, 1, 1}));
    CHECK(minuscule_lift(shape(Family::D, 4, "2;2"), Sector::HalfDoubled, Entries{4}, 0) ==
          cw(Family::D, {3, 1, 1, -1}, Sector::HalfDoubled));
    CHECK(minuscule_lift(shape(Family::A, 3, "3"), Sector::Integral, Entries{-4}, 0) == cw(Family::A, {-1, -1, -2}));
    CHECK_THROWS_AS(minuscule_lift(shape(Family::D, 4, "2;2"), Sector::HalfDoubled, Entries{3}, 0), Error);
    CHECK_THROWS_AS(minuscule_lift(shape(Family::D, 4, "2;2"), Sector::HalfDoubled, Entries{4}, 1), Error);
    CHECK_THROWS_AS(minuscule_lift(shape(Family::B, 3, "2;1"), Sector::Integral, Entries{3}, 2), Error);
    CHECK_THROWS_AS(minuscule_lift(shape(Family::B, 3, "2;1"), Sector::Integral, Entries{3, 0}, 0), Error);
}

TEST_CASE("the lift is the unique M-dominant M-minuscule point of its class") {
    // B shape (2;1), sums (3), SO class 1, box [0,3]^3.
    const LeviShape s = shape(Family::B, 3, "2;1");
    const auto roots = support::positive_roots(s);
    std::vector<Coweight> hits;
    for (const Coweight& x : box_points(kind(Family::B, 3), Sector::Integral, 3)) {
        const auto [sums, so] = support::class_invariants(s, x.entries(), false);
        if (sums == Entries{3} && so == 1 && support::root_dominant(roots, x.entries()) &&
            support::root_minuscule(roots, x.entries(), 1))
            hits.push_back(x);
    }
    REQUIRE(hits.size() == 1);
    CHECK(hits.front() == cw(Family::B, {2, 1, 1}));
}

TEST_CASE("class_of and minuscule_lift invert each other") {
    for (Family f : {Family::A, Family::B, Family::D})
        for (Sector sec : {Sector::Integral, Sector::HalfDoubled}) {
            if (sec == Sector::HalfDoubled && f != Family::D) continue;
            for (int n = (f == Family::D ? 2 : 1); n <= 4; ++n) {
                const GroupKind k = kind(f, n);
                for (const LeviShape& s : all_shapes(k)) {
                    for (const XMClass& c : candidate_classes(s, sec, 2)) {
                        REQUIRE(is_M_dominant(s, c.canonical_lift));
                        REQUIRE(is_M_minuscule(s, c.canonical_lift));
                        REQUIRE(class_of(s, c.canonical_lift) == c);
                        const ClassData d = c.data();
                        REQUIRE(minuscule_lift(s, sec, d.sums, d.so_class) == c.canonical_lift);
                    }
                }
            }
        }
}

TEST_CASE("equal X_M classes have equal X_G classes") {
    for (Family f : {Family::A, Family::B, Family::D})
        for (Sector sec : {Sector::Integral, Sector::HalfDoubled}) {
            if (sec == Sector::HalfDoubled && f != Family::D) continue;
            for (int n = (f == Family::D ? 2 : 1); n <= 3; ++n) {
                const GroupKind k = kind(f, n);
                const auto box = box_points(k, sec, 2);
                for (const LeviShape& s : all_shapes(k)) {
                    std::map<XMClass, Coweight> first;
                    for (const Coweight& x : box) {
                        const auto [it, fresh] = first.emplace(class_of(s, x), x);
                        if (!fresh) REQUIRE(same_class_XG(x, it->second));
                    }
                }
            }
        }
}

TEST_CASE("leq_batch_ends examples") {
    const LeviShape s = shape(Family::A, 4, "2,2");
    const LeviPoint beta(s, {Rational(3, 2), Rational(1, 2)});
    CHECK(leq_batch_ends(s, beta, cw(Family::A, {2, 1, 1, 0})));
    const LeviShape b = shape(Family::B, 6, "2,1,1;2");
    const Coweight mu = cw(Family::B, {2, 2, 1, 1, 0, 0});
    CHECK(leq_batch_ends(b, project(b, mu), mu));
    const LeviShape d = shape(Family::D, 2, "1,1;0");
    CHECK_FALSE(leq_batch_ends(d, LeviPoint(d, {2, -1}), cw(Family::D, {2, 1})));
    CHECK(leq_batch_ends(shape(Family::D, 2, ";2"), LeviPoint(shape(Family::D, 2, ";2"), {}), cw(Family::D, {0, 0})));
}

TEST_CASE("leq_batch_ends refuses inputs off the coroot span") {
    const LeviShape s = shape(Family::A, 2, "1,1");
    try {
        leq_batch_ends(s, LeviPoint(s, {1, 1}), cw(Family::A, {1, 0}));
        FAIL("expected a span violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SpanViolation);
    }
    CHECK_THROWS_AS(leq_batch_ends(s, LeviPoint(s, {1, 0}), cw(Family::A, {0, 1})), Error);
}

TEST_CASE("leq_batch_ends agrees with leq on W_M-fixed points, rank <= 3") {
    const auto values = support::small_rationals(4, 4);
    for (Family f : {Family::A, Family::B, Family::D})
        for (int n = (f == Family::D ? 2 : 1); n <= 3; ++n) {
            const GroupKind k = kind(f, n);
            const auto mus = grid_mus(k, Sector::Integral, 2);
            for (const LeviShape& s : all_shapes(k)) {
                if (s.batch_count() > 2) continue;
                for (const Rational& a : values)
                    for (const Rational& b : values) {
                        RationalVector avg;
                        if (s.batch_count() >= 1) avg.push_back(a);
                        if (s.batch_count() == 2) avg.push_back(b);
                        const LeviPoint beta(s, avg);
                        const RationalVector full = beta.expand();
                        Rational total = 0;
                        for (const auto& v : full) total += v;
                        for (const Coweight& mu : mus) {
                            if (f == Family::A && total != Rational(mu.sum())) continue;
                            REQUIRE(leq_batch_ends(s, beta, mu) == leq(full, mu));
                        }
                    }
            }
        }
}
