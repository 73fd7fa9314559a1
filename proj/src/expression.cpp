#include "kpinf/expression.hpp"

#include <cctype>
#include <optional>

#include "kpinf/errors.hpp"

namespace kpinf {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::shared_ptr<const KGraph> g, Field f, std::string_view text)
        : g_(std::move(g)), f_(f), text_(text) {}

    KPElement parse() {
        skip();
        if (at_end()) fail("empty expression");
        const std::size_t start = pos_;
        if (text_[pos_] == '0') {
            std::size_t p = pos_ + 1;
            while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
            if (p == text_.size()) return KPElement(g_, f_);
        }
        pos_ = start;
        KPElement e = expr();
        skip();
        if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return !at_end() && text_[pos_] == c;
    }

    KPElement expr() {
        bool negate = false;
        if (peek('-')) {
            ++pos_;
            negate = true;
        }
        KPElement acc = product();
        if (negate) acc = -acc;
        for (;;) {
            if (peek('+')) {
                ++pos_;
                acc = acc + product();
            } else if (peek('-')) {
                ++pos_;
                acc = acc - product();
            } else {
                return acc;
            }
        }
    }

    // A numeric token is a scalar only when followed by '/' or a bare '*'.
    std::optional<Scalar> scalar_prefix() {
        skip();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        if (p == start || (p < text_.size() && ident_char(text_[p]))) return std::nullopt;
        std::string num(text_.substr(start, p - start));
        std::string den = "1";
        std::size_t q = p;
        while (q < text_.size() && text_[q] == ' ') ++q;
        if (q < text_.size() && text_[q] == '/') {
            ++q;
            while (q < text_.size() && text_[q] == ' ') ++q;
            const std::size_t ds = q;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q == ds) {
                pos_ = q;
                fail("expected denominator");
            }
            den = std::string(text_.substr(ds, q - ds));
            while (q < text_.size() && text_[q] == ' ') ++q;
        }
        if (q >= text_.size() || text_[q] != '*' || (q + 1 < text_.size() && text_[q + 1] == '*')) {
            if (den != "1") {
                pos_ = q;
                fail("expected '*' after scalar");
            }
            return std::nullopt;
        }
        if (mpz_class(den) == 0) {
            pos_ = start;
            fail("zero denominator");
        }
        pos_ = q + 1;
        return Scalar(mpz_class(num), mpz_class(den));
    }

    KPElement product() {
        Scalar c = 1;
        while (auto s = scalar_prefix()) c *= *s;
        std::optional<KPElement> acc;
        for (;;) {
            skip();
            if (at_end() || text_[pos_] == '+' || text_[pos_] == '-' || text_[pos_] == ')') break;
            KPElement f = factor();
            acc = acc ? *acc * f : f;
        }
        if (!acc) fail("expected a path or '('");
        return c == 1 ? *acc : acc->scaled(c);
    }

    KPElement factor() {
        skip();
        if (text_[pos_] == '(') {
            ++pos_;
            KPElement e = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        const std::size_t start = pos_;
        std::size_t p = pos_;
        for (;;) {
            const std::size_t s = p;
            while (p < text_.size() && ident_char(text_[p])) ++p;
            if (p == s) {
                pos_ = p;
                fail(p < text_.size() ? std::string("unexpected '") + text_[p] + "'" : "unexpected end of input");
            }
            if (p < text_.size() && text_[p] == '.') {
                ++p;
                continue;
            }
            break;
        }
        const std::string_view ref = text_.substr(start, p - start);
        pos_ = p;
        std::optional<Path> path;
        try {
            path = parse_path(*g_, ref);
        } catch (const Error& e) {
            pos_ = start;
            fail(e.what());
        }
        if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '*') {
            pos_ += 2;
            return KPElement::ghost(g_, f_, *path);
        }
        if (pos_ < text_.size() && text_[pos_] == '^') fail("expected '^*'");
        return KPElement::path(g_, f_, *path);
    }

    std::shared_ptr<const KGraph> g_;
    Field f_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string scalar_text(const Scalar& c) {
    return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string term_text(const KGraph& g, const KPTerm& t) {
    if (t.lambda.is_vertex() && t.mu.is_vertex()) return g.vertex_name(t.lambda.range());
    if (t.mu.is_vertex()) return path_name(g, t.lambda);
    if (t.lambda.is_vertex()) return path_name(g, t.mu) + "^*";
    return path_name(g, t.lambda) + " " + path_name(g, t.mu) + "^*";
}

}  // namespace

KPElement parse_expression(std::shared_ptr<const KGraph> g, Field f, std::string_view text) {
    return Parser(std::move(g), f, text).parse();
}

std::string to_expression(const KPElement& a) {
    if (a.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [t, x] : a.terms()) {
        Scalar c = x;
        // Over F_p print the symmetric residue so that -1 reads as a minus sign.
        if (!a.field().is_rational()) {
            const mpz_class p(a.field().characteristic());
            if (2 * c.get_num() > p) c = Scalar(c.get_num() - p);
        }
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (c != 1) out += scalar_text(c) + "*";
        out += term_text(a.graph(), t);
        first = false;
    }
    return out;
}

}  // namespace kpinf
