#include "doctest.h"

#include <limits>
#include <sstream>

#include "chull/error.hpp"
#include "chull/rational.hpp"

using chull::Rational;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    const Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(r.str() == "-3/2");
    CHECK(Rational(4, 2).is_integer());
    CHECK(Rational(0, -7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), chull::Error);
}

TEST_CASE("field operations") {
    const Rational a(3, 2), b(-1, 3);
    CHECK(a + b == Rational(7, 6));
    CHECK(a - b == Rational(11, 6));
    CHECK(a * b == Rational(-1, 2));
    CHECK(a / b == Rational(-9, 2));
    CHECK(-a == Rational(-3, 2));
    CHECK((a * Rational(2, 3)).is_integer());
    CHECK_THROWS_AS(a / Rational(0), chull::Error);
}

TEST_CASE("ordering matches cross multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(5, 3).sign() == 1);
    CHECK(Rational(-5, 3).abs() == Rational(5, 3));
    std::ostringstream os;
    os << Rational(7) << ' ' << Rational(-1, 4);
    CHECK(os.str() == "7 -1/4");
}

TEST_CASE("overflow is reported, never wrapped") {
    const auto big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
    try {
        (void)(Rational(big) + Rational(big));
        FAIL("expected overflow");
    } catch (const chull::Error& e) {
        CHECK(e.code() == chull::ErrorCode::Overflow);
    }
    CHECK_THROWS_AS(Rational(big) * Rational(3), chull::Error);
    CHECK_NOTHROW(Rational(big, 3) * Rational(3, big));
}
