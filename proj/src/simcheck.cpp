#include "casq/simcheck.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace casq {

using cplx = std::complex<double>;

UnitaryMatrix::UnitaryMatrix(std::size_t qubits) : n_(qubits), a_(dim() * dim(), cplx(0, 0)) {
    for (std::size_t i = 0; i < dim(); ++i)
        a_[i * dim() + i] = 1;
}

void UnitaryMatrix::apply1(std::size_t q, const cplx g[2][2]) {
    std::size_t d = dim();
    std::size_t stride = std::size_t(1) << (n_ - 1 - q);
    for (std::size_t base = 0; base < d; base += 2 * stride) {
        for (std::size_t r = base; r < base + stride; ++r) {
            cplx* row0 = &a_[r * d];
            cplx* row1 = &a_[(r + stride) * d];
            for (std::size_t j = 0; j < d; ++j) {
                cplx u0 = row0[j], u1 = row1[j];
                row0[j] = g[0][0] * u0 + g[0][1] * u1;
                row1[j] = g[1][0] * u0 + g[1][1] * u1;
            }
        }
    }
}

void UnitaryMatrix::apply_cx(std::size_t c, std::size_t t) {
    std::size_t d = dim();
    std::size_t cb = std::size_t(1) << (n_ - 1 - c);
    std::size_t tb = std::size_t(1) << (n_ - 1 - t);
    for (std::size_t r = 0; r < d; ++r) {
        if ((r & cb) && !(r & tb)) {
            cplx* row0 = &a_[r * d];
            cplx* row1 = &a_[(r | tb) * d];
            for (std::size_t j = 0; j < d; ++j)
                std::swap(row0[j], row1[j]);
        }
    }
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& o) const {
    if (n_ != o.n_)
        throw std::invalid_argument("UnitaryMatrix: dimension mismatch");
    UnitaryMatrix r(n_);
    std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            r.a_[i * d + j] = 0;
        for (std::size_t k = 0; k < d; ++k) {
            cplx v = a_[i * d + k];
            if (v == cplx(0, 0))
                continue;
            const cplx* orow = &o.a_[k * d];
            cplx* rrow = &r.a_[i * d];
            for (std::size_t j = 0; j < d; ++j)
                rrow[j] += v * orow[j];
        }
    }
    return r;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    UnitaryMatrix r(n_);
    std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            r.a_[i * d + j] = std::conj(a_[j * d + i]);
    return r;
}

double UnitaryMatrix::unitarity_defect() const {
    UnitaryMatrix p = adjoint() * *this;
    double m = 0;
    std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m = std::max(m, std::abs(p.a_[i * d + j] - (i == j ? cplx(1, 0) : cplx(0, 0))));
    return m;
}

namespace {

class Builder {
  public:
    explicit Builder(const Program& p) : p_(p) {
        std::int64_t n = p.total_qubits();
        if (n > static_cast<std::int64_t>(simcheck_max_qubits))
            throw std::invalid_argument("unitary: too many qubits (" + std::to_string(n) + ")");
        if (n == 0)
            throw std::invalid_argument("unitary: program has no qubits");
        u_ = UnitaryMatrix(static_cast<std::size_t>(n));
    }

    UnitaryMatrix run() {
        for (const auto* s : p_.main_statements())
            apply_stmt(*s, {}, {});
        return std::move(u_);
    }

  private:
    const Program& p_;
    UnitaryMatrix u_;

    using QubitEnv = std::map<std::string, std::size_t>;
    using AngleEnv = std::map<std::string, AngleExprPtr>;

    std::size_t resolve(const Arg& a, const QubitEnv& env) const {
        if (!a.indexed()) {
            auto it = env.find(a.reg);
            if (it != env.end())
                return it->second;
            const auto* r = p_.find_register(a.reg);
            if (r && r->size > 1)
                throw std::invalid_argument("unitary: uniform gate argument '" + a.reg +
                                            "' (desugar first)");
        }
        if (env.empty())
            return static_cast<std::size_t>(p_.qubit_address(a));
        throw std::invalid_argument("unitary: unresolvable qubit " + a.str());
    }

    void apply_stmt(const Stmt& s, const QubitEnv& qenv, const AngleEnv& aenv) {
        if (s.as<BarrierStmt>())
            return;
        const auto* g = s.as<GateCall>();
        if (!g)
            throw std::invalid_argument("unitary: unsupported statement '" + std::string(
                                            s.as<MeasureStmt>()  ? "measure"
                                            : s.as<ResetStmt>()  ? "reset"
                                                                 : "if") +
                                        "'");
        std::vector<std::size_t> qs;
        qs.reserve(g->qargs.size());
        for (const auto& a : g->qargs)
            qs.push_back(resolve(a, qenv));

        if (g->name == "U") {
            apply_u(eval_angle(g->cargs[0], aenv), eval_angle(g->cargs[1], aenv),
                    eval_angle(g->cargs[2], aenv), qs[0]);
            return;
        }
        if (g->name == "CX") {
            u_.apply_cx(qs[0], qs[1]);
            return;
        }
        const GateDecl* decl = p_.find_gate(g->name);
        if (!decl || decl->opaque || !decl->ancillas.empty())
            throw std::invalid_argument("unitary: cannot expand gate '" + g->name + "'");
        QubitEnv sub_q;
        for (std::size_t i = 0; i < decl->qparams.size(); ++i)
            sub_q[decl->qparams[i]] = qs[i];
        AngleEnv sub_a;
        for (std::size_t i = 0; i < decl->cparams.size(); ++i) {
            AngleExprPtr actual = g->cargs[i];
            if (!aenv.empty())
                actual = AngleExpr::substitute(actual, aenv);
            sub_a[decl->cparams[i]] = actual;
        }
        for (const auto& b : decl->body)
            apply_stmt(b, sub_q, sub_a);
    }

    double eval_angle(const AngleExprPtr& e, const AngleEnv& aenv) const {
        AngleExprPtr expr = aenv.empty() ? e : AngleExpr::substitute(e, aenv);
        auto v = expr->eval();
        if (!v)
            throw std::invalid_argument("unitary: unbound angle expression");
        return v->value();
    }

    void apply_u(double theta, double phi, double lambda, std::size_t q) {
        cplx g[2][2];
        double c = std::cos(theta / 2), s = std::sin(theta / 2);
        g[0][0] = c;
        g[0][1] = -std::exp(cplx(0, lambda)) * s;
        g[1][0] = std::exp(cplx(0, phi)) * s;
        g[1][1] = std::exp(cplx(0, phi + lambda)) * c;
        u_.apply1(q, g);
    }
};

} // namespace

UnitaryMatrix unitary(const Program& p) { return Builder(p).run(); }

UnitaryMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
    std::size_t n = perm.size();
    UnitaryMatrix m(n);
    std::size_t d = m.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m.at(i, j) = 0;
    for (std::size_t x = 0; x < d; ++x) {
        std::size_t y = 0;
        for (std::size_t p = 0; p < n; ++p)
            if (x & (std::size_t(1) << (n - 1 - p)))
                y |= std::size_t(1) << (n - 1 - perm[p]);
        m.at(y, x) = 1;
    }
    return m;
}

bool equiv(const UnitaryMatrix& a, const UnitaryMatrix& b, bool up_to_phase,
           const std::vector<std::size_t>* perm, double tol) {
    if (a.qubits() != b.qubits())
        throw std::invalid_argument("equiv: dimension mismatch");
    UnitaryMatrix pb = perm ? permutation_matrix(*perm) * b : b;
    std::size_t d = a.dim();
    cplx phase(1, 0);
    if (up_to_phase) {
        double best = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (std::abs(pb.at(i, j)) > best) {
                    best = std::abs(pb.at(i, j));
                    phase = a.at(i, j) / pb.at(i, j);
                }
        if (best == 0)
            return false;
        double mag = std::abs(phase);
        if (mag == 0)
            return false;
        phase /= mag;
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (std::abs(a.at(i, j) - phase * pb.at(i, j)) >= tol)
                return false;
    return true;
}

} // namespace casq
