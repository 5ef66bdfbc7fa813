#include <doctest.h>

#include <cmath>
#include <random>

#include "astgen.hpp"
#include "casq/desugar.hpp"
#include "casq/parser.hpp"
#include "casq/simcheck.hpp"
#include "testutil.hpp"

using namespace casq;

namespace {

Program parse_main(const std::string& body) {
    return parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n" + body);
}

} // namespace

TEST_CASE("h;h is the identity") {
    auto u = unitary(parse_main("qreg q[1];\nh q[0];\nh q[0];\n"));
    UnitaryMatrix id(1);
    double d = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            d = std::max(d, std::abs(u.at(i, j) - id.at(i, j)));
    CHECK(d < 1e-12);
}

TEST_CASE("bell preparation matrix has the expected first column") {
    auto u = unitary(parse_main("qreg q[2];\nh q[0];\ncx q[0],q[1];\n"));
    double s = 1 / std::sqrt(2.0);
    CHECK(std::abs(u.at(0, 0) - s) < 1e-12);
    CHECK(std::abs(u.at(1, 0)) < 1e-12);
    CHECK(std::abs(u.at(2, 0)) < 1e-12);
    CHECK(std::abs(u.at(3, 0) - s) < 1e-12);
}

TEST_CASE("declared gates expand through their bodies") {
    auto with_decl = unitary(parse_main(
        "gate bellPrep x,y {\n  h x;\n  cx x,y;\n}\nqreg q[2];\nbellPrep q[0],q[1];\n"));
    auto direct = unitary(parse_main("qreg q[2];\nh q[0];\ncx q[0],q[1];\n"));
    CHECK(equiv(with_decl, direct, /*up_to_phase=*/false));
}

TEST_CASE("qelib1 gate matrices match the oracle library") {
    std::mt19937 rng(5);
    auto check_gate = [&](const std::string& stmt, const testutil::Mat& want, std::size_t n) {
        auto u = unitary(parse_main("qreg q[" + std::to_string(n) + "];\n" + stmt + "\n"));
        double d = 0;
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t j = 0; j < u.dim(); ++j)
                d = std::max(d, std::abs(u.at(i, j) - want[i][j]));
        CHECK_MESSAGE(d < 1e-12, stmt);
    };
    using namespace testutil;
    check_gate("x q[0];", m_x(), 1);
    check_gate("y q[0];", m_y(), 1);
    check_gate("z q[0];", m_z(), 1);
    check_gate("h q[0];", m_h(), 1);
    check_gate("s q[0];", m_s(), 1);
    check_gate("sdg q[0];", m_sdg(), 1);
    check_gate("t q[0];", Mat{{1, 0}, {0, std::exp(cplx(0, M_PI / 4))}}, 1);
    check_gate("rz(0.37) q[0];", Mat{{1, 0}, {0, std::exp(cplx(0, 0.37))}}, 1);
    check_gate("cx q[0],q[1];", embed_cx(2, 0, 1), 2);
    check_gate("cx q[1],q[0];", embed_cx(2, 1, 0), 2);
    check_gate("cz q[0],q[1];", embed_cz(2, 0, 1), 2);
    // rx up to the u3 phase convention: rx(t) = e^{-it/2} R(t, X)
    auto rx = unitary(parse_main("qreg q[1];\nrx(0.8) q[0];\n"));
    Mat want = {{std::cos(0.4), cplx(0, -std::sin(0.4))},
                {cplx(0, -std::sin(0.4)), std::cos(0.4)}};
    double d = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            d = std::max(d, std::abs(rx.at(i, j) - want[i][j]));
    CHECK(d < 1e-12);
}

TEST_CASE("composition order: unitary(p1;p2) = U(p2) * U(p1)") {
    auto u12 = unitary(parse_main("qreg q[2];\nh q[0];\ncx q[0],q[1];\n"));
    auto u1 = unitary(parse_main("qreg q[2];\nh q[0];\n"));
    auto u2 = unitary(parse_main("qreg q[2];\ncx q[0],q[1];\n"));
    auto prod = u2 * u1;
    double d = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            d = std::max(d, std::abs(u12.at(i, j) - prod.at(i, j)));
    CHECK(d < 1e-12);
}

TEST_CASE("constructed unitaries are unitary") {
    std::mt19937 rng(777);
    int done = 0;
    for (int i = 0; done < 30 && i < 200; ++i) {
        Program p = astgen::random_program(rng, /*allow_nonunitary=*/false);
        if (p.total_qubits() > 9)
            continue;
        auto u = unitary(desugar(p));
        CHECK(u.unitarity_defect() < 1e-9);
        ++done;
    }
    CHECK(done == 30);
}

TEST_CASE("equiv accepts a global phase when asked") {
    auto u = unitary(parse_main("qreg q[1];\nt q[0];\n"));
    UnitaryMatrix v = u;
    auto ph = std::exp(std::complex<double>(0, M_PI / 8));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            v.at(i, j) *= ph;
    CHECK(equiv(u, v, /*up_to_phase=*/true));
    CHECK(!equiv(u, v, /*up_to_phase=*/false));
    CHECK(equiv(u, u, /*up_to_phase=*/false));
}

TEST_CASE("equiv handles qubit permutations") {
    // a circuit that ends with its wires exchanged: cx then an explicit swap
    auto a = unitary(
        parse_main("qreg q[2];\ncx q[0],q[1];\ncx q[0],q[1];\ncx q[1],q[0];\ncx q[0],q[1];\n"));
    auto b = unitary(parse_main("qreg q[2];\ncx q[0],q[1];\n"));
    std::vector<std::size_t> swap01 = {1, 0};
    CHECK(equiv(a, b, false, &swap01));
    CHECK(!equiv(a, b, false));

    // swap gate equals the permutation matrix itself
    auto sw = unitary(parse_main("qreg q[2];\ncx q[0],q[1];\ncx q[1],q[0];\ncx q[0],q[1];\n"));
    auto pm = permutation_matrix(swap01);
    double d = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            d = std::max(d, std::abs(sw.at(i, j) - pm.at(i, j)));
    CHECK(d < 1e-12);
}

TEST_CASE("unsupported statements are rejected") {
    CHECK_THROWS_AS(unitary(parse_main("qreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(unitary(parse_main("qreg q[11];\nh q[0];\n")), std::invalid_argument);
}

namespace {

// Independent broadcast expansion for the oracle: expands uniform gate
// applications in reverse index order (index-wise targets are disjoint, so
// the unitary must be identical to the desugarer's forward order).
Program expand_reverse(const Program& p) {
    Program out;
    out.includes = p.includes;
    for (const auto& it : p.items) {
        const auto* s = it.as<Stmt>();
        const GateCall* g = s ? s->as<GateCall>() : nullptr;
        if (!g) {
            out.items.push_back(it);
            continue;
        }
        std::int64_t n = 0;
        for (const auto& a : g->qargs)
            if (!a.indexed())
                if (const auto* r = p.find_register(a.reg); r && r->quantum)
                    n = std::max(n, r->size);
        if (n == 0) {
            out.items.push_back(it);
            continue;
        }
        for (std::int64_t i = n - 1; i >= 0; --i) {
            GateCall c = *g;
            for (auto& a : c.qargs)
                if (!a.indexed())
                    a.index = i;
            out.items.push_back(TopLevel{it.pos, Stmt{s->pos, std::move(c)}});
        }
    }
    return out;
}

} // namespace

TEST_CASE("desugar preserves semantics") {
    std::mt19937 rng(424243);
    int done = 0;
    for (int i = 0; done < 40 && i < 400; ++i) {
        Program p = astgen::random_program(rng, /*allow_nonunitary=*/false);
        if (p.total_qubits() > 8)
            continue;
        auto a = unitary(desugar(p));
        auto b = unitary(expand_reverse(p));
        CHECK(equiv(a, b, /*up_to_phase=*/false));
        ++done;
    }
    CHECK(done == 40);
}
