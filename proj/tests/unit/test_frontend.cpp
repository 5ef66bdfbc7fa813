#include <doctest.h>

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include "astgen.hpp"
#include "casq/checker.hpp"
#include "casq/desugar.hpp"
#include "casq/parser.hpp"
#include "casq/printer.hpp"

using namespace casq;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data_file(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

// Token stream for whitespace/comment-insensitive comparison.
std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> toks;
    std::size_t i = 0;
    auto word_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
            while (i < s.size() && s[i] != '\n')
                ++i;
            continue;
        }
        if (word_char(c)) {
            std::string w;
            while (i < s.size() && word_char(s[i]))
                w += s[i++];
            toks.push_back(w);
            continue;
        }
        toks.push_back(std::string(1, c));
        ++i;
    }
    return toks;
}

} // namespace

TEST_CASE("teleport listing parses to the expected shape") {
    Program p = parse_file(data_file("teleport.qasm"));
    int user_gates = 0;
    for (const auto& it : p.items)
        if (const auto* g = it.as<GateDecl>(); g && !g->from_include)
            ++user_gates;
    CHECK(user_gates == 1);
    REQUIRE(p.find_gate("bellPrep") != nullptr);
    CHECK(p.find_gate("bellPrep")->qparams.size() == 2);
    auto qrs = p.qregs();
    REQUIRE(qrs.size() == 1);
    CHECK(qrs[0]->size == 3);
    CHECK(p.cregs().size() == 2);
    CHECK(p.main_statements().size() == 7);
}

TEST_CASE("empty program") {
    Program p = parse("OPENQASM 2.0;");
    CHECK(p.items.empty());
    CHECK(print(p) == "OPENQASM 2.0;\n");
}

TEST_CASE("print is token-identical to the source modulo whitespace") {
    std::string src = read_file(data_file("teleport.qasm"));
    Program p = parse(src);
    CHECK(tokenize(print(p)) == tokenize(src));
}

TEST_CASE("parse-print round trip is structural identity") {
    std::string src = read_file(data_file("teleport.qasm"));
    Program p = parse(src);
    Program q = parse(print(p));
    CHECK(structurally_equal(p, q));
}

TEST_CASE("round-trip fuzzing") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 1000; ++i) {
        Program p = astgen::random_program(rng);
        Program q = parse(print(p));
        REQUIRE(structurally_equal(p, q));
        REQUIRE(structurally_equal(q, parse(print(q))));
    }
}

TEST_CASE("syntax errors carry a position and expected token") {
    try {
        parse("OPENQASM 2.0;\nqreg q[2;\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos().line == 2);
        CHECK(std::string(e.what()).find("']'") != std::string::npos);
    }
}

TEST_CASE("unresolvable include") {
    CHECK_THROWS_AS(parse("OPENQASM 2.0;\ninclude \"nope.inc\";\n"), ParseError);
}

TEST_CASE("oracle declarations parse and print") {
    std::string src = "OPENQASM 2.0;\noracle MUX sel,x,y,out { \"mux.v\" }\n";
    Program p = parse(src);
    REQUIRE(p.find_oracle("MUX") != nullptr);
    CHECK(p.find_oracle("MUX")->file == "mux.v");
    CHECK(tokenize(print(p)) == tokenize(src));
}

TEST_CASE("ancilla declarations parse and print") {
    std::string src = "OPENQASM 2.0;\n"
                      "include \"qelib1.inc\";\n"
                      "gate foo a {\n  ancilla b[1];\n  dirty ancilla c[2];\n  cx a,b[0];\n}\n"
                      "qreg x[1];\nfoo x[0];\n";
    Program p = parse(src);
    const auto* g = p.find_gate("foo");
    REQUIRE(g != nullptr);
    REQUIRE(g->ancillas.size() == 2);
    CHECK(!g->ancillas[0].dirty);
    CHECK(g->ancillas[1].dirty);
    CHECK(g->ancillas[1].size == 2);
    CHECK(tokenize(print(p)) == tokenize(src));
}

TEST_CASE("check accepts the teleport listing") {
    Program p = parse_file(data_file("teleport.qasm"));
    CHECK(check(p).empty());
}

TEST_CASE("check flags uniform register length mismatch") {
    Program p = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
                      "qreg x[2];\nqreg y[3];\ncx x,y;\n");
    auto ds = check(p);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].message.find("length mismatch") != std::string::npos);
}

TEST_CASE("check flags undeclared gates") {
    Program p = parse("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n");
    auto ds = check(p);
    REQUIRE(!ds.empty());
    CHECK(ds[0].message.find("undeclared gate") != std::string::npos);
}

TEST_CASE("check flags assorted violations") {
    auto diag_count = [](const std::string& body) {
        Program p = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n" + body);
        return check(p).size();
    };
    CHECK(diag_count("cx q[0],q[0];\n") == 1);    // repeated qubit
    CHECK(diag_count("cx q[0],q;\n") == 1);       // overlapping broadcast
    CHECK(diag_count("h q[5];\n") == 1);          // out of bounds
    CHECK(diag_count("h c[0];\n") == 1);          // wrong kind
    CHECK(diag_count("rz q[0];\n") == 1);         // missing angle
    CHECK(diag_count("measure q -> c;\n") == 0);  // uniform measure is fine
    CHECK(diag_count("if(q==1) h q[0];\n") == 1); // condition on a qreg
    CHECK(diag_count("qreg q[3];\n") == 1);       // redeclaration
    CHECK(diag_count("U(0,0,0) q[0];\n") == 0);
    CHECK(diag_count("U(0) q[0];\n") == 1);
}

TEST_CASE("check is clean on fuzzed programs") {
    std::mt19937 rng(99281);
    for (int i = 0; i < 200; ++i) {
        Program p = astgen::random_program(rng);
        auto ds = check(p);
        if (!ds.empty())
            FAIL(format_diagnostics(ds, "<fuzz>") << print(p));
    }
}

TEST_CASE("desugar expands uniform gates index-wise") {
    Program p = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
                      "qreg x[2];\nqreg y[2];\ncx x,y;\n");
    Program d = desugar(p);
    auto ss = d.main_statements();
    REQUIRE(ss.size() == 2);
    CHECK(print_stmt(*ss[0]) == "cx x[0],y[0];");
    CHECK(print_stmt(*ss[1]) == "cx x[1],y[1];");
}

TEST_CASE("desugar broadcasts single-register gates") {
    Program p = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg x[3];\nh x;\n");
    Program d = desugar(p);
    auto ss = d.main_statements();
    REQUIRE(ss.size() == 3);
    CHECK(print_stmt(*ss[0]) == "h x[0];");
    CHECK(print_stmt(*ss[2]) == "h x[2];");
}

TEST_CASE("desugar holds fixed qubits while iterating registers") {
    Program p = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
                      "qreg x[1];\nqreg y[2];\ncx x[0],y;\n");
    Program d = desugar(p);
    auto ss = d.main_statements();
    REQUIRE(ss.size() == 2);
    CHECK(print_stmt(*ss[0]) == "cx x[0],y[0];");
    CHECK(print_stmt(*ss[1]) == "cx x[0],y[1];");
}

TEST_CASE("desugar replicates classical controls and expands measures") {
    Program p = parse("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
                      "qreg x[2];\ncreg c[2];\nif(c==3) h x;\nmeasure x -> c;\nbarrier x;\n");
    Program d = desugar(p);
    auto ss = d.main_statements();
    REQUIRE(ss.size() == 5);
    CHECK(print_stmt(*ss[0]) == "if(c==3) h x[0];");
    CHECK(print_stmt(*ss[1]) == "if(c==3) h x[1];");
    CHECK(print_stmt(*ss[2]) == "measure x[0] -> c[0];");
    CHECK(print_stmt(*ss[3]) == "measure x[1] -> c[1];");
    CHECK(print_stmt(*ss[4]) == "barrier x[0],x[1];");
}

TEST_CASE("desugar is idempotent") {
    std::mt19937 rng(5150);
    for (int i = 0; i < 100; ++i) {
        Program p = astgen::random_program(rng);
        Program d = desugar(p);
        CHECK(structurally_equal(d, desugar(d)));
    }
}

TEST_CASE("traverse visits statements pre-order and splices in place") {
    Program p = parse_file(data_file("teleport.qasm"));

    struct Counter : Visitor {
        int gate_calls = 0;
        int stmts = 0;
        void on_gate_call(const GateCall&, const Stmt&) override { ++gate_calls; }
        void on_measure(const MeasureStmt&, const Stmt&) override { ++stmts; }
        void on_if(const IfStmt&, const Stmt&) override { ++stmts; }
    } counter;
    traverse(p, counter);
    // 2 in bellPrep body + 3 main gates + 2 under if; plus 2 measures + 2 ifs
    CHECK(counter.gate_calls - 2 == 5);
    CHECK(counter.stmts == 4);

    // identity splice
    Program same = splice_statements(p, [](const Stmt&) { return std::nullopt; }, true);
    CHECK(structurally_equal(p, same));

    // replace every cx with h;cx;h
    int sites = 0;
    Program spliced = splice_statements(
        p,
        [&](const Stmt& s) -> std::optional<std::vector<Stmt>> {
            const auto* g = s.as<GateCall>();
            if (!g || g->name != "cx")
                return std::nullopt;
            ++sites;
            Stmt h1 = make_gate("h", {}, {g->qargs[0]});
            Stmt h2 = make_gate("h", {}, {g->qargs[0]});
            return std::vector<Stmt>{h1, s, h2};
        },
        true);
    CHECK(sites == 2); // one in bellPrep, one in main
    CHECK(spliced.main_statements().size() == p.main_statements().size() + 2);
    CHECK(spliced.find_gate("bellPrep")->body.size() == 4);
}
