#include "eppe/io.hpp"

#include "eppe/errors.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace eppe {

EmitFormat parse_emit_format(std::string_view name)
{
    if (name == "sexpr")
        return EmitFormat::Sexpr;
    if (name == "plain")
        return EmitFormat::Plain;
    if (name == "latex")
        return EmitFormat::Latex;
    throw InvalidArgument("unknown emission format: " + std::string(name));
}

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { LParen, RParen, Nat, Ident, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next()
    {
        skip();
        Token t{Tok::End, {}, line_, col_};
        if (pos_ >= s_.size())
            return t;
        char c = s_[pos_];
        if (c == '(' || c == ')') {
            t.kind = c == '(' ? Tok::LParen : Tok::RParen;
            t.text = c;
            advance();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Nat;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                t.text += advance();
        } else if (ident_start(c)) {
            t.kind = Tok::Ident;
            while (pos_ < s_.size() && ident_char(s_[pos_]))
                t.text += advance();
        } else if (c == '<') {
            t.kind = Tok::Symbol;
            t.text += advance();
            if (pos_ < s_.size() && s_[pos_] == '=')
                t.text += advance();
        } else if (c == '+' || c == '*' || c == '-' || c == '^' || c == '=') {
            t.kind = Tok::Symbol;
            t.text += advance();
        } else {
            throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
        }
        return t;
    }

private:
    char advance()
    {
        char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip()
    {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == ';') {
                while (pos_ < s_.size() && s_[pos_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

const char* const kKeywords[] = {"and", "exists", "forall", "params"};

bool is_keyword(const std::string& s)
{
    for (const char* k : kKeywords)
        if (s == k)
            return true;
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) { cur_ = lex_.next(); }

    Term term()
    {
        if (cur_.kind == Tok::Nat) {
            Integer v(cur_.text, 10);
            take();
            return Term(v);
        }
        if (cur_.kind == Tok::Ident) {
            if (is_keyword(cur_.text))
                fail("keyword '" + cur_.text + "' used as an identifier");
            std::string n = cur_.text;
            take();
            return Term::var(n);
        }
        expect(Tok::LParen, "'(' or term");
        if (cur_.kind != Tok::Symbol)
            fail("expected term operator");
        std::string op = cur_.text;
        Token at = cur_;
        take();
        std::vector<Term> args;
        while (cur_.kind != Tok::RParen) {
            if (cur_.kind == Tok::End)
                fail("unterminated term");
            args.push_back(term());
        }
        take();
        if (op == "+" || op == "*") {
            if (args.size() < 2)
                throw ParseError(at.line, at.col, "'" + op + "' needs at least two operands");
            return op == "+" ? Term::sum(std::move(args)) : Term::product(std::move(args));
        }
        if (op == "-" || op == "^") {
            if (args.size() != 2)
                throw ParseError(at.line, at.col, "'" + op + "' needs exactly two operands");
            return op == "-" ? Term::difference(args[0], args[1]) : Term::power(args[0], args[1]);
        }
        throw ParseError(at.line, at.col, "unknown term operator '" + op + "'");
    }

    Formula formula()
    {
        expect(Tok::LParen, "'('");
        Token head = cur_;
        if (head.kind == Tok::Symbol && head.text == "=") {
            take();
            Term t = term();
            if (cur_.kind != Tok::Nat || cur_.text != "0")
                fail("equation right-hand side must be 0");
            take();
            expect(Tok::RParen, "')'");
            return Formula::equation(t);
        }
        if (head.kind != Tok::Ident)
            fail("expected formula keyword");
        take();
        if (head.text == "and") {
            std::vector<Formula> parts;
            while (cur_.kind != Tok::RParen) {
                if (cur_.kind == Tok::End)
                    fail("unterminated conjunction");
                parts.push_back(formula());
            }
            take();
            if (parts.empty())
                throw ParseError(head.line, head.col, "empty conjunction");
            return Formula::conj(std::move(parts));
        }
        if (head.text == "exists") {
            expect(Tok::LParen, "'('");
            std::vector<std::string> vars;
            while (cur_.kind == Tok::Ident)
                vars.push_back(ident());
            expect(Tok::RParen, "')'");
            if (vars.empty())
                throw ParseError(head.line, head.col, "empty variable list");
            Formula body = formula();
            expect(Tok::RParen, "')'");
            return Formula::exists(std::move(vars), body);
        }
        if (head.text == "forall") {
            expect(Tok::LParen, "'('");
            if (cur_.kind != Tok::Ident)
                fail("expected bound variable");
            std::string v = ident();
            if (cur_.kind != Tok::Symbol || (cur_.text != "<" && cur_.text != "<="))
                fail("expected '<' or '<='");
            bool strict = cur_.text == "<";
            take();
            Term bound = term();
            expect(Tok::RParen, "')'");
            Formula body = formula();
            expect(Tok::RParen, "')'");
            return Formula::forall(v, bound, strict, body);
        }
        throw ParseError(head.line, head.col, "unknown formula keyword '" + head.text + "'");
    }

    std::optional<std::vector<std::string>> params_header()
    {
        if (cur_.kind != Tok::LParen)
            return std::nullopt;
        Lexer save = lex_;
        Token save_tok = cur_;
        take();
        if (cur_.kind != Tok::Ident || cur_.text != "params") {
            lex_ = save;
            cur_ = save_tok;
            return std::nullopt;
        }
        take();
        std::vector<std::string> ps;
        while (cur_.kind == Tok::Ident)
            ps.push_back(ident());
        expect(Tok::RParen, "')'");
        return ps;
    }

    void finish()
    {
        if (cur_.kind != Tok::End)
            fail("trailing input");
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(cur_.line, cur_.col, msg);
    }

    const Token& current() const { return cur_; }

private:
    void take() { cur_ = lex_.next(); }

    void expect(Tok k, const char* what)
    {
        if (cur_.kind != k)
            fail(std::string("expected ") + what);
        take();
    }

    std::string ident()
    {
        if (is_keyword(cur_.text))
            fail("keyword '" + cur_.text + "' used as an identifier");
        std::string s = cur_.text;
        take();
        return s;
    }

    Lexer lex_;
    Token cur_;
};

} // namespace

Term parse_term(std::string_view text)
{
    Parser p(text);
    Term t = p.term();
    p.finish();
    return t;
}

Formula parse_formula(std::string_view text)
{
    Parser p(text);
    Formula f = p.formula();
    p.finish();
    return f;
}

Document parse_document(std::string_view text)
{
    Parser p(text);
    auto header = p.params_header();
    Token start = p.current();
    Formula f = p.formula();
    p.finish();
    if (header) {
        try {
            validate(f, *header);
        } catch (const InvalidArgument& e) {
            throw ParseError(start.line, start.col, e.what());
        }
        return {*header, f};
    }
    auto fv = free_vars(f);
    return {{fv.begin(), fv.end()}, f};
}

// ---------------------------------------------------------------- emission

std::string latex_identifier(const std::string& name)
{
    auto us = name.find('_');
    if (us != std::string::npos && us > 0 && us + 1 < name.size()
        && name.find_first_of(".@'") == std::string::npos) {
        std::string sub = name.substr(us + 1);
        if (sub.front() == '{')
            return name;
        return name.substr(0, us) + "_{" + sub + "}";
    }
    std::size_t i = name.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1])))
        --i;
    bool plain_letters = true;
    for (std::size_t k = 0; k < i; ++k)
        if (!std::isalpha(static_cast<unsigned char>(name[k])))
            plain_letters = false;
    if (plain_letters && i > 0) {
        std::string head = name.substr(0, i);
        if (head.size() > 1)
            head = "\\mathit{" + head + "}";
        if (i == name.size())
            return head;
        return head + "_{" + name.substr(i) + "}";
    }
    std::string esc;
    for (char c : name) {
        if (c == '_')
            esc += "\\_";
        else
            esc += c;
    }
    return "\\mathrm{" + esc + "}";
}

namespace {

class Emitter {
public:
    Emitter(EmitFormat fmt, const NameMap& names) : fmt_(fmt), names_(names) {}

    std::string name(const std::string& n) const
    {
        auto it = names_.find(n);
        const std::string& shown = it == names_.end() ? n : it->second;
        return fmt_ == EmitFormat::Latex ? latex_identifier(shown) : shown;
    }

    void term(std::ostream& os, const Term& t) const
    {
        if (fmt_ == EmitFormat::Sexpr)
            sexpr_term(os, t);
        else
            infix(os, t, 0);
    }

    void formula(std::ostream& os, const Formula& f, int indent) const
    {
        switch (fmt_) {
        case EmitFormat::Sexpr:
            sexpr_formula(os, f, indent);
            break;
        case EmitFormat::Plain:
        case EmitFormat::Latex:
            infix_formula(os, f);
            break;
        }
    }

private:
    void sexpr_term(std::ostream& os, const Term& t) const
    {
        switch (t.kind()) {
        case Term::Kind::Const:
            os << t.value().get_str();
            return;
        case Term::Kind::Var:
            os << name(t.name());
            return;
        case Term::Kind::Sum:
        case Term::Kind::Product:
        case Term::Kind::Difference:
        case Term::Kind::Power: {
            const char* op = t.kind() == Term::Kind::Sum ? "+"
                : t.kind() == Term::Kind::Product        ? "*"
                : t.kind() == Term::Kind::Difference     ? "-"
                                                         : "^";
            os << '(' << op;
            for (const auto& k : t.children()) {
                os << ' ';
                sexpr_term(os, k);
            }
            os << ')';
            return;
        }
        }
    }

    static int prec(const Term& t)
    {
        switch (t.kind()) {
        case Term::Kind::Sum:
        case Term::Kind::Difference:
            return 1;
        case Term::Kind::Product:
            return 2;
        case Term::Kind::Power:
            return 3;
        default:
            return 4;
        }
    }

    std::string render(const Term& t, int min_prec) const
    {
        std::ostringstream os;
        infix(os, t, min_prec);
        return os.str();
    }

    void open(std::ostream& os) const { os << (fmt_ == EmitFormat::Latex ? "\\left(" : "("); }
    void close(std::ostream& os) const { os << (fmt_ == EmitFormat::Latex ? "\\right)" : ")"); }

    // Parenthesizes when the node binds looser than min_prec.
    void infix(std::ostream& os, const Term& t, int min_prec) const
    {
        bool paren = prec(t) < min_prec;
        if (paren)
            open(os);
        switch (t.kind()) {
        case Term::Kind::Const:
            os << t.value().get_str();
            break;
        case Term::Kind::Var:
            os << name(t.name());
            break;
        case Term::Kind::Sum: {
            bool first = true;
            for (const auto& k : t.children()) {
                if (!first)
                    os << " + ";
                infix(os, k, 1);
                first = false;
            }
            break;
        }
        case Term::Kind::Difference:
            infix(os, t.children()[0], 1);
            os << " - ";
            infix(os, t.children()[1], 2);
            break;
        case Term::Kind::Product: {
            bool first = true;
            for (const auto& k : t.children()) {
                std::string piece = render(k, 2);
                if (!first) {
                    if (fmt_ == EmitFormat::Plain)
                        os << '*';
                    else if (std::isdigit(static_cast<unsigned char>(piece.front())))
                        os << " \\cdot ";
                    else if (std::isalpha(static_cast<unsigned char>(piece.front())))
                        os << ' ';
                }
                os << piece;
                first = false;
            }
            break;
        }
        case Term::Kind::Power:
            if (fmt_ == EmitFormat::Latex) {
                std::string base = render(t.children()[0], 4);
                if (t.children()[0].kind() == Term::Kind::Power)
                    base = "\\left(" + base + "\\right)";
                os << base << "^{" << render(t.children()[1], 0) << '}';
            } else {
                infix(os, t.children()[0], 4);
                os << '^';
                infix(os, t.children()[1], 4);
            }
            break;
        }
        if (paren)
            close(os);
    }

    void sexpr_formula(std::ostream& os, const Formula& f, int indent) const
    {
        std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
        os << pad;
        switch (f.kind()) {
        case Formula::Kind::Equation:
            os << "(= ";
            sexpr_term(os, f.term());
            os << " 0)";
            break;
        case Formula::Kind::And:
            os << "(and";
            for (const auto& p : f.parts()) {
                os << '\n';
                sexpr_formula(os, p, indent + 1);
            }
            os << ')';
            break;
        case Formula::Kind::Exists:
            os << "(exists (";
            for (std::size_t i = 0; i < f.vars().size(); ++i)
                os << (i ? " " : "") << name(f.vars()[i]);
            os << ")\n";
            sexpr_formula(os, f.body(), indent + 1);
            os << ')';
            break;
        case Formula::Kind::ForallBounded:
            os << "(forall (" << name(f.bound_var()) << (f.strict() ? " < " : " <= ");
            sexpr_term(os, f.term());
            os << ")\n";
            sexpr_formula(os, f.body(), indent + 1);
            os << ')';
            break;
        }
    }

    void infix_formula(std::ostream& os, const Formula& f) const
    {
        bool latex = fmt_ == EmitFormat::Latex;
        switch (f.kind()) {
        case Formula::Kind::Equation:
            infix(os, f.term(), 0);
            os << " = 0";
            break;
        case Formula::Kind::And: {
            bool first = true;
            for (const auto& p : f.parts()) {
                if (!first)
                    os << (latex ? " \\land " : " & ");
                bool wrap = p.kind() != Formula::Kind::Equation;
                if (wrap)
                    os << (latex ? "\\left[" : "[");
                infix_formula(os, p);
                if (wrap)
                    os << (latex ? "\\right]" : "]");
                first = false;
            }
            break;
        }
        case Formula::Kind::Exists:
            os << (latex ? "\\exists " : "exists ");
            for (std::size_t i = 0; i < f.vars().size(); ++i)
                os << (i ? ", " : "") << name(f.vars()[i]);
            os << (latex ? "\\, \\left[" : " [");
            infix_formula(os, f.body());
            os << (latex ? "\\right]" : "]");
            break;
        case Formula::Kind::ForallBounded:
            os << (latex ? "\\forall " : "forall ") << name(f.bound_var());
            os << (f.strict() ? " < " : (latex ? " \\le " : " <= "));
            infix(os, f.term(), 0);
            os << (latex ? "\\, \\left[" : " [");
            infix_formula(os, f.body());
            os << (latex ? "\\right]" : "]");
            break;
        }
    }

    EmitFormat fmt_;
    const NameMap& names_;
};

} // namespace

std::string emit(const Term& t, EmitFormat fmt, const NameMap& names)
{
    std::ostringstream os;
    Emitter(fmt, names).term(os, t);
    return os.str();
}

std::string emit(const Formula& f, EmitFormat fmt, const NameMap& names)
{
    std::ostringstream os;
    Emitter(fmt, names).formula(os, f, 0);
    return os.str();
}

std::string emit(const Document& d, EmitFormat fmt, const NameMap& names)
{
    std::ostringstream os;
    Emitter e(fmt, names);
    if (fmt == EmitFormat::Sexpr) {
        os << "(params";
        for (const auto& p : d.params)
            os << ' ' << e.name(p);
        os << ")\n";
    } else if (!d.params.empty()) {
        os << (fmt == EmitFormat::Latex ? "% params:" : "params:");
        for (const auto& p : d.params)
            os << ' ' << p;
        os << '\n';
    }
    e.formula(os, d.formula, 0);
    os << '\n';
    return os.str();
}

} // namespace eppe
