#include "casq/pauli.hpp"

#include <stdexcept>

namespace casq {

namespace {

// Exponent of i incurred when multiplying single-qubit Paulis written in the
// Y-normalized convention (x=z=1 means Y, not XZ).
int g_phase(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1)
        return 0;
    if (x1 && z1) // Y
        return (z2 ? 1 : 0) - (x2 ? 1 : 0);
    if (x1) // X
        return z2 ? (x2 ? 1 : -1) : 0;
    // Z
    return x2 ? (z2 ? -1 : 1) : 0;
}

} // namespace

PauliString::PauliString(std::size_t n)
    : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

PauliString PauliString::single(std::size_t n, std::size_t qubit, char axis) {
    PauliString p(n);
    switch (axis) {
        case 'X':
            p.set_x(qubit, true);
            break;
        case 'Y':
            p.set_x(qubit, true);
            p.set_z(qubit, true);
            break;
        case 'Z':
            p.set_z(qubit, true);
            break;
        default:
            throw std::invalid_argument("PauliString: bad axis");
    }
    return p;
}

PauliString PauliString::negated() const {
    PauliString p = *this;
    p.sign_ = -p.sign_;
    return p;
}

bool PauliString::identity() const {
    if (sign_ != +1)
        return false;
    for (std::size_t i = 0; i < x_.size(); ++i)
        if (x_[i] || z_[i])
            return false;
    return true;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> s;
    for (std::size_t q = 0; q < n_; ++q)
        if (x(q) || z(q))
            s.push_back(q);
    return s;
}

bool PauliString::commutes_with(const PauliString& o) const {
    if (n_ != o.n_)
        throw std::invalid_argument("PauliString: dimension mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        acc ^= (x_[i] & o.z_[i]) ^ (z_[i] & o.x_[i]);
    return __builtin_parityll(acc) == 0;
}

PauliString PauliString::operator*(const PauliString& o) const {
    if (n_ != o.n_)
        throw std::invalid_argument("PauliString: dimension mismatch");
    PauliString r(n_);
    int iexp = 0;
    for (std::size_t q = 0; q < n_; ++q)
        iexp += g_phase(x(q), z(q), o.x(q), o.z(q));
    for (std::size_t i = 0; i < x_.size(); ++i) {
        r.x_[i] = x_[i] ^ o.x_[i];
        r.z_[i] = z_[i] ^ o.z_[i];
    }
    iexp = ((iexp % 4) + 4) % 4;
    if (iexp == 1 || iexp == 3)
        throw std::logic_error("PauliString: imaginary product");
    r.sign_ = sign_ * o.sign_ * (iexp == 2 ? -1 : +1);
    return r;
}

bool PauliString::operator==(const PauliString& o) const {
    return n_ == o.n_ && sign_ == o.sign_ && x_ == o.x_ && z_ == o.z_;
}

bool PauliString::same_axes(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
}

std::string PauliString::str() const {
    std::string s = sign_ < 0 ? "-" : "+";
    for (std::size_t q = 0; q < n_; ++q) {
        bool xb = x(q), zb = z(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

std::optional<MergeResult> merge(const Rotation& r1, const Rotation& r2) {
    if (r1.pauli.num_qubits() != r2.pauli.num_qubits())
        return std::nullopt;
    if (!r1.pauli.same_axes(r2.pauli))
        return std::nullopt;
    if (r1.pauli.sign() == r2.pauli.sign())
        return MergeResult{Rotation{r1.angle + r2.angle, r1.pauli}, Angle{}};
    // R(theta, P) R(theta', -P) = e^{i theta'} R(theta - theta', P)
    return MergeResult{Rotation{r1.angle - r2.angle, r1.pauli}, r2.angle};
}

CliffordTableau::CliffordTableau(std::size_t n) : n_(n) {
    xs_.reserve(n);
    zs_.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        xs_.push_back(PauliString::single(n, q, 'X'));
        zs_.push_back(PauliString::single(n, q, 'Z'));
    }
}

void CliffordTableau::apply_h(std::size_t q) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v) {
            bool xb = p.x(q), zb = p.z(q);
            if (xb && zb)
                p.set_sign(-p.sign());
            p.set_x(q, zb);
            p.set_z(q, xb);
        }
}

void CliffordTableau::apply_s(std::size_t q) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v) {
            bool xb = p.x(q), zb = p.z(q);
            if (xb && zb)
                p.set_sign(-p.sign());
            p.set_z(q, zb ^ xb);
        }
}

void CliffordTableau::apply_sdg(std::size_t q) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v) {
            bool xb = p.x(q), zb = p.z(q);
            if (xb && !zb)
                p.set_sign(-p.sign());
            p.set_z(q, zb ^ xb);
        }
}

void CliffordTableau::apply_x(std::size_t q) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v)
            if (p.z(q))
                p.set_sign(-p.sign());
}

void CliffordTableau::apply_y(std::size_t q) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v)
            if (p.x(q) ^ p.z(q))
                p.set_sign(-p.sign());
}

void CliffordTableau::apply_z(std::size_t q) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v)
            if (p.x(q))
                p.set_sign(-p.sign());
}

void CliffordTableau::apply_cx(std::size_t c, std::size_t t) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v) {
            bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
            if (xc && zt && (xt == zc))
                p.set_sign(-p.sign());
            p.set_x(t, xt ^ xc);
            p.set_z(c, zc ^ zt);
        }
}

void CliffordTableau::apply_cz(std::size_t c, std::size_t t) {
    apply_h(t);
    apply_cx(c, t);
    apply_h(t);
}

void CliffordTableau::apply_cy(std::size_t c, std::size_t t) {
    apply_sdg(t);
    apply_cx(c, t);
    apply_s(t);
}

void CliffordTableau::apply_swap(std::size_t a, std::size_t b) {
    for (auto* v : {&xs_, &zs_})
        for (auto& p : *v) {
            bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
            p.set_x(a, xb);
            p.set_z(a, zb);
            p.set_x(b, xa);
            p.set_z(b, za);
        }
}

PauliString CliffordTableau::conjugate(const PauliString& p) const {
    if (p.num_qubits() != n_)
        throw std::invalid_argument("CliffordTableau: dimension mismatch");
    // P = sign * i^{#Y} * prod_q X_q^{x_q} Z_q^{z_q}, so the image is the
    // corresponding product of generator images. The fold keeps the
    // accumulator Y-normalized and pushes all i-factors into iexp.
    PauliString acc(n_);
    int iexp = 0;
    int sign = p.sign();
    auto mul_in = [&](const PauliString& f) {
        for (std::size_t k = 0; k < n_; ++k)
            iexp += g_phase(acc.x(k), acc.z(k), f.x(k), f.z(k));
        sign *= f.sign();
        for (std::size_t k = 0; k < n_; ++k) {
            acc.set_x(k, acc.x(k) ^ f.x(k));
            acc.set_z(k, acc.z(k) ^ f.z(k));
        }
    };
    for (std::size_t q = 0; q < n_; ++q) {
        bool xb = p.x(q), zb = p.z(q);
        if (xb && zb)
            ++iexp; // Y_q = i X_q Z_q
        if (xb)
            mul_in(xs_[q]);
        if (zb)
            mul_in(zs_[q]);
    }
    iexp = ((iexp % 4) + 4) % 4;
    if (iexp % 2 != 0)
        throw std::logic_error("CliffordTableau: imaginary conjugation result");
    acc.set_sign(sign * (iexp == 2 ? -1 : +1));
    return acc;
}

CliffordTableau CliffordTableau::then_after(const CliffordTableau& first) const {
    CliffordTableau r(n_);
    for (std::size_t q = 0; q < n_; ++q) {
        r.xs_[q] = conjugate(first.x_image(q));
        r.zs_[q] = conjugate(first.z_image(q));
    }
    return r;
}

bool CliffordTableau::valid() const {
    for (std::size_t i = 0; i < n_; ++i) {
        if (xs_[i].commutes_with(zs_[i]))
            return false;
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (!xs_[i].commutes_with(xs_[j]) || !zs_[i].commutes_with(zs_[j]) ||
                !xs_[i].commutes_with(zs_[j]) || !zs_[i].commutes_with(xs_[j]))
                return false;
        }
    }
    return true;
}

bool CliffordTableau::is_identity() const {
    for (std::size_t q = 0; q < n_; ++q) {
        if (xs_[q] != PauliString::single(n_, q, 'X'))
            return false;
        if (zs_[q] != PauliString::single(n_, q, 'Z'))
            return false;
    }
    return true;
}

} // namespace casq
