#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casq/angle.hpp"

namespace casq {

/// n-qubit signed Pauli operator in symplectic (x,z) bit form. Qubit i
/// carries X iff the x bit is set, Z iff the z bit is set, Y iff both.
/// The sign is +/-1 only; i-factors arising from Y products are resolved
/// during multiplication and never stored.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t n);

    static PauliString single(std::size_t n, std::size_t qubit, char axis);

    std::size_t num_qubits() const { return n_; }
    bool x(std::size_t q) const { return bit(x_, q); }
    bool z(std::size_t q) const { return bit(z_, q); }
    void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
    void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

    int sign() const { return sign_; }
    void set_sign(int s) { sign_ = s; }
    PauliString negated() const;

    bool identity() const;
    bool trivial_on(std::size_t q) const { return !x(q) && !z(q); }
    std::vector<std::size_t> support() const;

    /// True iff the symplectic inner product sum(x_i z'_i + z_i x'_i) is even.
    bool commutes_with(const PauliString& o) const;

    /// Product with exact sign tracking; throws if the result is imaginary
    /// (cannot happen for products arising from valid conjugations).
    PauliString operator*(const PauliString& o) const;

    bool operator==(const PauliString& o) const;
    bool operator!=(const PauliString& o) const { return !(*this == o); }
    bool same_axes(const PauliString& o) const; // equality ignoring sign

    std::string str() const; // e.g. "-XIZY"

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> x_, z_;
    int sign_ = +1;

    static bool bit(const std::vector<std::uint64_t>& w, std::size_t q) {
        return (w[q >> 6] >> (q & 63)) & 1;
    }
    static void set_bit(std::vector<std::uint64_t>& w, std::size_t q, bool v) {
        if (v)
            w[q >> 6] |= std::uint64_t(1) << (q & 63);
        else
            w[q >> 6] &= ~(std::uint64_t(1) << (q & 63));
    }
};

/// The rotation R(theta, P) = (1+e^{i theta})/2 I + (1-e^{i theta})/2 P.
/// R(pi/4, Z_i) is exactly the T gate on qubit i.
struct Rotation {
    Angle angle;
    PauliString pauli;
};

struct MergeResult {
    Rotation rotation;
    Angle global_phase; // zero when merging same-sign Paulis
};

/// Merge rule for two rotations: equal Paulis add angles; Paulis equal up
/// to sign give R(theta - theta', P) times the global phase e^{i theta'}.
std::optional<MergeResult> merge(const Rotation& r1, const Rotation& r2);

/// Clifford operator C represented by the images C X_i C^dag and
/// C Z_i C^dag for each qubit. Gate application composes on the left
/// (apply_* updates C to g*C).
class CliffordTableau {
  public:
    explicit CliffordTableau(std::size_t n);

    std::size_t num_qubits() const { return n_; }
    const PauliString& x_image(std::size_t q) const { return xs_[q]; }
    const PauliString& z_image(std::size_t q) const { return zs_[q]; }

    void apply_h(std::size_t q);
    void apply_s(std::size_t q);
    void apply_sdg(std::size_t q);
    void apply_x(std::size_t q);
    void apply_y(std::size_t q);
    void apply_z(std::size_t q);
    void apply_cx(std::size_t c, std::size_t t);
    void apply_cz(std::size_t c, std::size_t t);
    void apply_cy(std::size_t c, std::size_t t);
    void apply_swap(std::size_t a, std::size_t b);

    /// C P C^dag with sign tracking.
    PauliString conjugate(const PauliString& p) const;

    /// this composed after other: (this o other).
    CliffordTableau then_after(const CliffordTableau& first) const;

    /// Symplectic validity of the generator images.
    bool valid() const;

    bool is_identity() const;

  private:
    std::size_t n_;
    std::vector<PauliString> xs_, zs_;
};

} // namespace casq
