#include "casq/angle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace casq {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double wrap(double v) {
    double r = std::fmod(v, two_pi);
    if (r < 0)
        r += two_pi;
    return r;
}

} // namespace

void Angle::normalize() {
    if (!exact_)
        return;
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    if (den_ == 0)
        throw std::invalid_argument("Angle: zero denominator");
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    std::int64_t m = 2 * den_;
    num_ %= m;
    if (num_ < 0)
        num_ += m;
}

Angle Angle::pi_frac(std::int64_t num, std::int64_t den) {
    Angle a;
    a.exact_ = true;
    a.num_ = num;
    a.den_ = den;
    a.normalize();
    return a;
}

Angle Angle::radians(double value) {
    Angle a;
    a.exact_ = false;
    a.val_ = value;
    return a;
}

bool Angle::zero() const {
    if (exact_)
        return num_ == 0;
    double w = wrap(val_);
    return w < tol || two_pi - w < tol;
}

double Angle::value() const {
    if (exact_)
        return M_PI * static_cast<double>(num_) / static_cast<double>(den_);
    return wrap(val_);
}

std::optional<std::pair<std::int64_t, std::int64_t>> Angle::pi_fraction() const {
    if (!exact_)
        return std::nullopt;
    std::int64_t n = num_;
    if (n > den_)
        n -= 2 * den_; // shift from [0, 2den) to (-den, den]
    return std::make_pair(n, den_);
}

Angle Angle::operator+(const Angle& o) const {
    if (exact_ && o.exact_) {
        // num/den + num'/den' over a common denominator; normalize() reduces.
        return pi_frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    return radians(value() + o.value());
}

Angle Angle::operator-() const {
    if (exact_)
        return pi_frac(-num_, den_);
    return radians(-val_);
}

Angle Angle::operator-(const Angle& o) const { return *this + (-o); }

Angle Angle::scaled(std::int64_t num, std::int64_t den) const {
    if (exact_)
        return pi_frac(num_ * num, den_ * den);
    return radians(val_ * static_cast<double>(num) / static_cast<double>(den));
}

bool Angle::operator==(const Angle& o) const {
    if (exact_ && o.exact_)
        return num_ == o.num_ && den_ == o.den_;
    double d = wrap(value() - o.value());
    return d < tol || two_pi - d < tol;
}

} // namespace casq
