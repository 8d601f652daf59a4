#include "metab/text.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "metab/errors.hpp"

namespace metab {

namespace {

class Cursor {
public:
    Cursor(std::string_view text, std::size_t rank) : text_(text), rank_(rank) {}

    std::size_t pos() const { return pos_; }
    std::size_t rank() const { return rank_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    // Next significant character with U+2212 folded to '-', or '\0' at end.
    char peek() {
        skip_ws();
        if (pos_ >= text_.size())
            return '\0';
        if (text_.substr(pos_, 3) == "\xE2\x88\x92")
            return '-';
        return text_[pos_];
    }

    void advance() {
        if (text_.substr(pos_, 3) == "\xE2\x88\x92")
            pos_ += 3;
        else
            ++pos_;
    }

    bool accept(char c) {
        if (peek() != c)
            return false;
        advance();
        return true;
    }

    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    bool at_digit() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) != 0;
    }

    // Unsigned decimal literal of arbitrary size.
    Integer natural() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    std::int64_t small_integer(bool allow_sign) {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (allow_sign) {
            if (peek() == '-') {
                negative = true;
                advance();
            } else if (peek() == '+') {
                advance();
            }
        }
        Integer v = natural();
        if (negative)
            v = -v;
        if (!v.fits_slong_p())
            throw ParseError(start, "integer out of range");
        return v.get_si();
    }

    std::size_t index(const char* what) {
        const std::size_t start = (skip_ws(), pos_);
        const std::int64_t v = small_integer(false);
        if (v < 1 || static_cast<std::size_t>(v) > rank_)
            throw ParseError(start, std::string(what) + " index " + std::to_string(v) + " out of range for rank " +
                                        std::to_string(rank_));
        return static_cast<std::size_t>(v);
    }

private:
    std::string_view text_;
    std::size_t rank_;
    std::size_t pos_ = 0;
};

// mono := 's' index ('^' integer)?
void parse_mono(Cursor& c, Exponents& e) {
    c.expect('s');
    const std::size_t var = c.index("variable");
    std::int64_t power = 1;
    if (c.accept('^'))
        power = c.small_integer(true);
    e[var - 1] += power;
}

LaurentPoly parse_poly_term(Cursor& c) {
    Exponents e(c.rank(), 0);
    Integer coef = 1;
    if (c.at_digit()) {
        coef = c.natural();
        while (c.accept('*'))
            parse_mono(c, e);
    } else if (c.peek() == 's') {
        parse_mono(c, e);
        while (c.accept('*'))
            parse_mono(c, e);
    } else {
        c.fail("expected a term");
    }
    return LaurentPoly::monomial(c.rank(), std::move(e), coef);
}

LaurentPoly parse_poly_expr(Cursor& c) {
    LaurentPoly p(c.rank());
    bool negative = false;
    if (c.peek() == '-' || c.peek() == '+') {
        negative = c.peek() == '-';
        c.advance();
    }
    for (;;) {
        LaurentPoly t = parse_poly_term(c);
        if (negative)
            p -= t;
        else
            p += t;
        const char next = c.peek();
        if (next != '+' && next != '-')
            break;
        negative = next == '-';
        c.advance();
    }
    return p;
}

Word parse_word_seq(Cursor& c);

Word parse_atom(Cursor& c) {
    const std::size_t r = c.rank();
    switch (c.peek()) {
    case 'a': {
        c.advance();
        const std::size_t gen = c.index("generator");
        return Word{r, {{gen, 1}}};
    }
    case 'e':
        c.advance();
        return Word{r, {}};
    case '(': {
        c.advance();
        Word w = parse_word_seq(c);
        c.expect(')');
        return w;
    }
    case '[': {
        c.advance();
        Word u = parse_word_seq(c);
        c.expect(',');
        Word v = parse_word_seq(c);
        c.expect(']');
        return word_commutator(u, v);
    }
    default:
        c.fail("expected a generator, '(' or '['");
    }
}

bool starts_atom(char ch) { return ch == 'a' || ch == 'e' || ch == '(' || ch == '['; }

Word parse_word_seq(Cursor& c) {
    Word w{c.rank(), {}};
    while (starts_atom(c.peek())) {
        const bool single = c.peek() == 'a';
        Word item = parse_atom(c);
        if (c.accept('^')) {
            const std::int64_t k = c.small_integer(true);
            if (single)
                item = k == 0 ? Word{c.rank(), {}} : Word{c.rank(), {{item.letters[0].gen, k}}};
            else
                item = word_power(item, k);
        }
        w.letters.insert(w.letters.end(), item.letters.begin(), item.letters.end());
    }
    return w;
}

void parse_nterm(Cursor& c, RawNCombination& out, bool negative) {
    Integer coef = 1;
    if (c.at_digit()) {
        coef = c.natural();
        if (c.peek() != '*') {
            if (sgn(coef) != 0)
                c.fail("expected '*' after coefficient");
            return;  // literal zero
        }
        c.advance();
    }
    if (negative)
        coef = -coef;
    c.expect('x');
    c.expect('[');
    const std::size_t pos_i = (c.skip_ws(), c.pos());
    const std::size_t i = c.index("pair");
    c.expect(',');
    const std::size_t j = c.index("pair");
    if (i >= j)
        throw ParseError(pos_i, "pair x[" + std::to_string(i) + "," + std::to_string(j) + "] needs i < j");
    c.expect(']');
    LaurentPoly poly = LaurentPoly::constant(c.rank(), 1);
    if (c.accept('^')) {
        c.expect('(');
        poly = parse_poly_expr(c);
        c.expect(')');
    }
    out.add(i, j, poly * coef);
}

std::string render_monomial(const Exponents& e) {
    std::string out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += 's' + std::to_string(k + 1);
        if (e[k] != 1)
            out += '^' + std::to_string(e[k]);
    }
    return out;
}

void append_signed(std::string& out, bool negative, const std::string& body) {
    if (out.empty())
        out = negative ? "-" + body : body;
    else
        out += (negative ? " - " : " + ") + body;
}

}  // namespace

LaurentPoly parse_poly(std::string_view text, std::size_t rank) {
    Cursor c(text, rank);
    LaurentPoly p = parse_poly_expr(c);
    if (!c.at_end())
        c.fail("unexpected trailing input");
    return p;
}

Word parse_word(std::string_view text, std::size_t rank) {
    Cursor c(text, rank);
    Word w = parse_word_seq(c);
    if (!c.at_end())
        c.fail("unexpected character in word");
    return w;
}

RawNCombination parse_nelement(std::string_view text, std::size_t rank) {
    Cursor c(text, rank);
    RawNCombination out(rank);
    bool negative = false;
    if (c.peek() == '-' || c.peek() == '+') {
        negative = c.peek() == '-';
        c.advance();
    }
    for (;;) {
        parse_nterm(c, out, negative);
        const char next = c.peek();
        if (next != '+' && next != '-')
            break;
        negative = next == '-';
        c.advance();
    }
    if (!c.at_end())
        c.fail("unexpected trailing input");
    return out;
}

std::string render_poly(const LaurentPoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        const std::string mono = render_monomial(e);
        const Integer mag = abs(c);
        std::string body;
        if (mono.empty())
            body = mag.get_str();
        else if (mag == 1)
            body = mono;
        else
            body = mag.get_str() + "*" + mono;
        append_signed(out, sgn(c) < 0, body);
    }
    return out;
}

std::string render_word(const Word& w) {
    if (w.letters.empty())
        return "e";
    std::string out;
    for (const auto& l : w.letters) {
        if (!out.empty())
            out += ' ';
        out += 'a' + std::to_string(l.gen);
        if (l.exp != 1)
            out += '^' + std::to_string(l.exp);
    }
    return out;
}

namespace {

void render_nterm(std::string& out, std::size_t i, std::size_t j, const LaurentPoly& poly) {
    const std::string sym = "x[" + std::to_string(i) + "," + std::to_string(j) + "]";
    const Exponents zero(poly.rank(), 0);
    if (poly.size() == 1 && poly.terms().begin()->first == zero && abs(poly.terms().begin()->second) == 1)
        append_signed(out, sgn(poly.terms().begin()->second) < 0, sym);
    else
        append_signed(out, false, sym + "^(" + render_poly(poly) + ")");
}

}  // namespace

std::string render_nelement(const NElement& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (const auto& [pair, poly] : f.coords())
        render_nterm(out, pair.i, pair.j, poly);
    return out;
}

std::string render_raw(const RawNCombination& raw) {
    if (raw.terms().empty())
        return "0";
    std::string out;
    for (const auto& t : raw.terms())
        render_nterm(out, t.i, t.j, t.poly);
    return out;
}

std::string render_q(const QElement& q) {
    std::string m = render_monomial(q.exponents());
    return m.empty() ? "1" : m;
}

}  // namespace metab
