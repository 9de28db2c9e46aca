#include "chull/rational.hpp"

#include <numeric>
#include <ostream>

#include "chull/error.hpp"

namespace chull {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::KindMismatch: return "kind-mismatch";
        case ErrorCode::ShapeMismatch: return "shape-mismatch";
        case ErrorCode::NotDominant: return "not-dominant";
        case ErrorCode::InvalidShape: return "invalid-shape";
        case ErrorCode::Parity: return "parity";
        case ErrorCode::InvalidClass: return "invalid-class";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::NormalizationRequired: return "normalization-required";
        case ErrorCode::SpanViolation: return "span-violation";
        case ErrorCode::CapExceeded: return "cap-exceeded";
        case ErrorCode::Overflow: return "overflow";
    }
    return "unknown";
}

namespace checked {

void overflow(const char* op) { throw Error(ErrorCode::Overflow, std::string("integer overflow in ") + op); }

}  // namespace checked

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
    if (den < 0) {
        num = checked::sub(0, num);
        den = checked::sub(0, den);
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked::sub(0, num_);
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
        num_ = checked::add(num_, o.num_);
        return *this;
    }
    const std::int64_t g = std::gcd(den_, o.den_);
    const std::int64_t lhs = checked::mul(num_, o.den_ / g);
    const std::int64_t rhs = checked::mul(o.num_, den_ / g);
    *this = Rational(checked::add(lhs, rhs), checked::mul(den_, o.den_ / g));
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    const std::int64_t g1 = std::gcd(num_, o.den_);
    const std::int64_t g2 = std::gcd(o.num_, den_);
    const std::int64_t n = checked::mul(num_ / (g1 ? g1 : 1), o.num_ / (g2 ? g2 : 1));
    const std::int64_t d = checked::mul(den_ / (g2 ? g2 : 1), o.den_ / (g1 ? g1 : 1));
    *this = Rational(n, d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw Error(ErrorCode::InvalidArgument, "rational division by zero");
    return *this *= Rational(o.den_, o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    return checked::mul(a.num_, b.den_) <=> checked::mul(b.num_, a.den_);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

RationalVector to_rational(std::span<const std::int64_t> v) {
    return RationalVector(v.begin(), v.end());
}

}  // namespace chull
