#include "casq/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace casq {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    Id,
    Int,
    Real,
    Str,
    Semi,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Arrow,
    EqEq,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::int64_t ival = 0;
    double fval = 0.0;
    Position pos;
};

const char* tok_name(Tok k) {
    switch (k) {
        case Tok::Id: return "identifier";
        case Tok::Int: return "integer";
        case Tok::Real: return "real";
        case Tok::Str: return "string";
        case Tok::Semi: return "';'";
        case Tok::Comma: return "','";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Arrow: return "'->'";
        case Tok::EqEq: return "'=='";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws_and_comments();
        Position pos{line_, col_};
        if (i_ >= src_.size())
            return {Tok::End, "", 0, 0, pos};
        char c = src_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                id += advance();
            return {Tok::Id, std::move(id), 0, 0, pos};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return lex_number(pos);
        if (c == '"') {
            advance();
            std::string s;
            while (i_ < src_.size() && src_[i_] != '"')
                s += advance();
            if (i_ >= src_.size())
                throw ParseError(pos, "unterminated string literal");
            advance();
            return {Tok::Str, std::move(s), 0, 0, pos};
        }
        advance();
        switch (c) {
            case ';': return {Tok::Semi, ";", 0, 0, pos};
            case ',': return {Tok::Comma, ",", 0, 0, pos};
            case '(': return {Tok::LParen, "(", 0, 0, pos};
            case ')': return {Tok::RParen, ")", 0, 0, pos};
            case '[': return {Tok::LBracket, "[", 0, 0, pos};
            case ']': return {Tok::RBracket, "]", 0, 0, pos};
            case '{': return {Tok::LBrace, "{", 0, 0, pos};
            case '}': return {Tok::RBrace, "}", 0, 0, pos};
            case '+': return {Tok::Plus, "+", 0, 0, pos};
            case '*': return {Tok::Star, "*", 0, 0, pos};
            case '/': return {Tok::Slash, "/", 0, 0, pos};
            case '-':
                if (i_ < src_.size() && src_[i_] == '>') {
                    advance();
                    return {Tok::Arrow, "->", 0, 0, pos};
                }
                return {Tok::Minus, "-", 0, 0, pos};
            case '=':
                if (i_ < src_.size() && src_[i_] == '=') {
                    advance();
                    return {Tok::EqEq, "==", 0, 0, pos};
                }
                throw ParseError(pos, "unexpected '='; expected '=='");
        }
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }

  private:
    const std::string& src_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;

    char advance() {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
                while (i_ < src_.size() && src_[i_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(Position pos) {
        std::string num;
        bool real = false;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
            num += advance();
        if (i_ < src_.size() && src_[i_] == '.') {
            real = true;
            num += advance();
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
                num += advance();
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            real = true;
            num += advance();
            if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-'))
                num += advance();
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
                num += advance();
        }
        if (num.empty() || num == ".")
            throw ParseError(pos, "malformed number");
        Token t{real ? Tok::Real : Tok::Int, num, 0, 0, pos};
        if (real)
            t.fval = std::strtod(num.c_str(), nullptr);
        else
            t.ival = std::strtoll(num.c_str(), nullptr, 10);
        return t;
    }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
  public:
    Parser(const std::string& src, std::string include_dir, bool is_include)
        : lex_(src), include_dir_(std::move(include_dir)), is_include_(is_include) {
        cur_ = lex_.next();
    }

    Program parse_program() {
        Program p;
        if (!is_include_) {
            expect_keyword("OPENQASM");
            Token v = expect(Tok::Real);
            if (v.text != "2.0")
                throw ParseError(v.pos, "unsupported openQASM version " + v.text);
            expect(Tok::Semi);
        }
        while (cur_.kind != Tok::End) {
            if (cur_.kind == Tok::Id && cur_.text == "include") {
                Position pos = cur_.pos;
                next();
                Token path = expect(Tok::Str);
                expect(Tok::Semi);
                p.includes.push_back(path.text);
                resolve_include(p, path.text, pos);
                continue;
            }
            parse_item(p);
        }
        return p;
    }

  private:
    Lexer lex_;
    Token cur_;
    std::string include_dir_;
    bool is_include_;

    void next() { cur_ = lex_.next(); }

    Token expect(Tok k) {
        if (cur_.kind != k)
            throw ParseError(cur_.pos, std::string("expected ") + tok_name(k) + ", found " +
                                           (cur_.kind == Tok::Id ? "'" + cur_.text + "'"
                                                                 : tok_name(cur_.kind)));
        Token t = cur_;
        next();
        return t;
    }

    void expect_keyword(const std::string& kw) {
        if (cur_.kind != Tok::Id || cur_.text != kw)
            throw ParseError(cur_.pos, "expected '" + kw + "'");
        next();
    }

    bool at_keyword(const std::string& kw) const {
        return cur_.kind == Tok::Id && cur_.text == kw;
    }

    void resolve_include(Program& p, const std::string& path, Position pos) {
        std::string text;
        if (path == "qelib1.inc") {
            text = qelib1_source();
        } else {
            std::string full = include_dir_.empty() ? path : include_dir_ + "/" + path;
            std::ifstream in(full);
            if (!in)
                throw ParseError(pos, "cannot resolve include \"" + path + "\"");
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        Parser sub(text, include_dir_, /*is_include=*/true);
        Program q = sub.parse_program();
        for (auto& it : q.items) {
            if (auto* g = it.as<GateDecl>())
                g->from_include = true;
            if (auto* o = it.as<OracleDecl>())
                o->from_include = true;
            p.items.push_back(std::move(it));
        }
    }

    void parse_item(Program& p) {
        Position pos = cur_.pos;
        if (at_keyword("qreg") || at_keyword("creg")) {
            bool quantum = cur_.text == "qreg";
            next();
            Token name = expect(Tok::Id);
            expect(Tok::LBracket);
            Token size = expect(Tok::Int);
            expect(Tok::RBracket);
            expect(Tok::Semi);
            p.items.push_back(TopLevel{pos, RegisterDecl{quantum, name.text, size.ival}});
            return;
        }
        if (at_keyword("gate") || at_keyword("opaque")) {
            p.items.push_back(TopLevel{pos, parse_gate_decl()});
            return;
        }
        if (at_keyword("oracle")) {
            p.items.push_back(TopLevel{pos, parse_oracle_decl()});
            return;
        }
        p.items.push_back(TopLevel{pos, parse_statement(/*in_body=*/false)});
    }

    GateDecl parse_gate_decl() {
        GateDecl g;
        g.opaque = cur_.text == "opaque";
        next();
        g.name = expect(Tok::Id).text;
        if (cur_.kind == Tok::LParen) {
            next();
            if (cur_.kind != Tok::RParen) {
                g.cparams.push_back(expect(Tok::Id).text);
                while (cur_.kind == Tok::Comma) {
                    next();
                    g.cparams.push_back(expect(Tok::Id).text);
                }
            }
            expect(Tok::RParen);
        }
        g.qparams.push_back(expect(Tok::Id).text);
        while (cur_.kind == Tok::Comma) {
            next();
            g.qparams.push_back(expect(Tok::Id).text);
        }
        if (g.opaque) {
            expect(Tok::Semi);
            return g;
        }
        expect(Tok::LBrace);
        while (cur_.kind != Tok::RBrace) {
            if (at_keyword("ancilla") || at_keyword("dirty")) {
                bool dirty = cur_.text == "dirty";
                next();
                if (dirty)
                    expect_keyword("ancilla");
                Token name = expect(Tok::Id);
                expect(Tok::LBracket);
                Token size = expect(Tok::Int);
                expect(Tok::RBracket);
                expect(Tok::Semi);
                g.ancillas.push_back(AncillaDecl{dirty, name.text, size.ival});
                continue;
            }
            g.body.push_back(parse_statement(/*in_body=*/true));
        }
        expect(Tok::RBrace);
        return g;
    }

    OracleDecl parse_oracle_decl() {
        OracleDecl o;
        next();
        o.name = expect(Tok::Id).text;
        o.params.push_back(expect(Tok::Id).text);
        while (cur_.kind == Tok::Comma) {
            next();
            o.params.push_back(expect(Tok::Id).text);
        }
        expect(Tok::LBrace);
        o.file = expect(Tok::Str).text;
        expect(Tok::RBrace);
        return o;
    }

    Stmt parse_statement(bool in_body) {
        Position pos = cur_.pos;
        if (at_keyword("if")) {
            if (in_body)
                throw ParseError(pos, "'if' is not allowed inside gate bodies");
            next();
            expect(Tok::LParen);
            Token creg = expect(Tok::Id);
            expect(Tok::EqEq);
            Token val = expect(Tok::Int);
            expect(Tok::RParen);
            Stmt body = parse_statement(false);
            if (body.as<IfStmt>())
                throw ParseError(pos, "nested 'if' is not allowed");
            return Stmt{pos, IfStmt{creg.text, val.ival, std::make_shared<const Stmt>(body)}};
        }
        if (at_keyword("measure")) {
            if (in_body)
                throw ParseError(pos, "'measure' is not allowed inside gate bodies");
            next();
            Arg q = parse_arg();
            expect(Tok::Arrow);
            Arg c = parse_arg();
            expect(Tok::Semi);
            return Stmt{pos, MeasureStmt{q, c}};
        }
        if (at_keyword("reset")) {
            if (in_body)
                throw ParseError(pos, "'reset' is not allowed inside gate bodies");
            next();
            Arg t = parse_arg();
            expect(Tok::Semi);
            return Stmt{pos, ResetStmt{t}};
        }
        if (at_keyword("barrier")) {
            next();
            BarrierStmt b;
            if (cur_.kind != Tok::Semi) {
                b.args.push_back(parse_arg());
                while (cur_.kind == Tok::Comma) {
                    next();
                    b.args.push_back(parse_arg());
                }
            }
            expect(Tok::Semi);
            return Stmt{pos, b};
        }
        // gate application (including U and CX)
        Token name = expect(Tok::Id);
        GateCall g;
        g.name = name.text;
        if (cur_.kind == Tok::LParen) {
            next();
            if (cur_.kind != Tok::RParen) {
                g.cargs.push_back(parse_expr());
                while (cur_.kind == Tok::Comma) {
                    next();
                    g.cargs.push_back(parse_expr());
                }
            }
            expect(Tok::RParen);
        }
        g.qargs.push_back(parse_arg());
        while (cur_.kind == Tok::Comma) {
            next();
            g.qargs.push_back(parse_arg());
        }
        expect(Tok::Semi);
        return Stmt{pos, std::move(g)};
    }

    Arg parse_arg() {
        Position pos = cur_.pos;
        Token name = expect(Tok::Id);
        Arg a{name.text, std::nullopt, pos};
        if (cur_.kind == Tok::LBracket) {
            next();
            Token idx = expect(Tok::Int);
            expect(Tok::RBracket);
            a.index = idx.ival;
        }
        return a;
    }

    // expr := term (('+'|'-') term)*
    // term := factor (('*'|'/') factor)*
    // factor := '-' factor | primary
    // primary := number | pi | ident | func '(' expr ')' | '(' expr ')'
    AngleExprPtr parse_expr() {
        AngleExprPtr e = parse_term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            auto k = cur_.kind == Tok::Plus ? AngleExpr::Kind::Add : AngleExpr::Kind::Sub;
            next();
            e = AngleExpr::binary(k, e, parse_term());
        }
        return e;
    }

    AngleExprPtr parse_term() {
        AngleExprPtr e = parse_factor();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            auto k = cur_.kind == Tok::Star ? AngleExpr::Kind::Mul : AngleExpr::Kind::Div;
            next();
            e = AngleExpr::binary(k, e, parse_factor());
        }
        return e;
    }

    AngleExprPtr parse_factor() {
        if (cur_.kind == Tok::Minus) {
            next();
            return AngleExpr::neg(parse_factor());
        }
        return parse_primary();
    }

    AngleExprPtr parse_primary() {
        switch (cur_.kind) {
            case Tok::Int: {
                auto v = cur_.ival;
                next();
                return AngleExpr::integer(v);
            }
            case Tok::Real: {
                auto v = cur_.fval;
                next();
                return AngleExpr::floating(v);
            }
            case Tok::LParen: {
                next();
                auto e = parse_expr();
                expect(Tok::RParen);
                return e;
            }
            case Tok::Id: {
                std::string name = cur_.text;
                next();
                if (name == "pi")
                    return AngleExpr::pi();
                if (cur_.kind == Tok::LParen &&
                    (name == "sin" || name == "cos" || name == "tan" || name == "exp" ||
                     name == "ln" || name == "sqrt")) {
                    next();
                    auto arg = parse_expr();
                    expect(Tok::RParen);
                    return AngleExpr::func(name, arg);
                }
                return AngleExpr::ident(name);
            }
            default:
                throw ParseError(cur_.pos, std::string("expected expression, found ") +
                                               tok_name(cur_.kind));
        }
    }
};

} // namespace

Program parse(const std::string& source, const std::string& include_dir) {
    Parser p(source, include_dir, /*is_include=*/false);
    return p.parse_program();
}

Program parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError({0, 0}, "cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto dir_end = path.find_last_of('/');
    std::string dir = dir_end == std::string::npos ? "" : path.substr(0, dir_end);
    return parse(ss.str(), dir);
}

} // namespace casq
