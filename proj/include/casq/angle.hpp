#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace casq {

/// Rotation angle: either an exact rational multiple of pi or floating-point
/// radians. Exact angles are closed under +, - and rational scaling; any
/// operation mixing an exact angle with a float collapses to float. Values
/// are kept normalized mod 2*pi so that a sum of exact angles totaling 2*pi
/// is bitwise equal to the zero angle.
class Angle {
  public:
    Angle() = default; // exact zero

    static Angle pi_frac(std::int64_t num, std::int64_t den);
    static Angle radians(double value);

    bool exact() const { return exact_; }
    bool zero() const;

    /// Radians in [0, 2*pi).
    double value() const;

    /// Exact numerator/denominator, with the numerator normalized to
    /// (-den, den]. Empty for float angles.
    std::optional<std::pair<std::int64_t, std::int64_t>> pi_fraction() const;

    Angle operator+(const Angle& o) const;
    Angle operator-(const Angle& o) const;
    Angle operator-() const;

    /// Multiply by num/den. Exact stays exact.
    Angle scaled(std::int64_t num, std::int64_t den) const;

    bool operator==(const Angle& o) const;
    bool operator!=(const Angle& o) const { return !(*this == o); }

    /// Comparison tolerance for float angles, in radians.
    static constexpr double tol = 1e-9;

  private:
    bool exact_ = true;
    std::int64_t num_ = 0; // canonical in [0, 2*den), gcd-reduced
    std::int64_t den_ = 1;
    double val_ = 0.0; // used when !exact_
    void normalize();
};

} // namespace casq
