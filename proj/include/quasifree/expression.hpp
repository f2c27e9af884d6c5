#pragma once

// Text grammar for algebra elements.
//
//   element := ['+'|'-'] product (('+'|'-') product)*
//   product := factor (('*' | '·') factor)*
//   factor  := 'S[' letters ']' | 'S*[' letters ']' | 'chi{' points '}' | 'chi[' real ',' real ')'
//            | integer ['/' integer] | 'i' | '(' element ')'
//   letters := [] | n (',' n)*        points := point (',' point)*,  point := int | '(' int (',' int)* ')'
//   real    := ['-'] rterm (('+'|'-') rterm)*,  rterm := q | q '*' name | name
//
// A bare rational in a real endpoint is the coefficient of the basis element named "1".

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "function.hpp"
#include "gamma.hpp"
#include "rational.hpp"
#include "words.hpp"

namespace quasifree {

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(const Algebra& alg, std::string_view text) : alg_(alg), text_(text) {}

    AlgebraElement parse() {
        skip();
        if (at_end()) fail_here("empty expression");
        AlgebraElement x = element();
        skip();
        if (!at_end()) fail_here("unexpected trailing input");
        return x;
    }

private:
    AlgebraElement element() {
        skip();
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
        }
        AlgebraElement acc = product();
        if (negative) acc = alg_.scale(acc, Scalar(-1));
        for (;;) {
            skip();
            if (peek() != '+' && peek() != '-') break;
            bool minus = peek() == '-';
            ++pos_;
            AlgebraElement t = product();
            acc = minus ? alg_.sub(acc, t) : alg_.add(acc, t);
        }
        return acc;
    }

    AlgebraElement product() {
        AlgebraElement acc = factor();
        for (;;) {
            skip();
            if (peek() == '*') {
                ++pos_;
            } else if (text_.substr(pos_, 2) == "\xC2\xB7") {
                pos_ += 2;
            } else {
                break;
            }
            acc = alg_.multiply(acc, factor());
        }
        return acc;
    }

    AlgebraElement factor() {
        skip();
        if (at_end()) fail_here("expected a factor");
        char c = peek();
        if (c == '(') {
            ++pos_;
            AlgebraElement x = element();
            expect(')');
            return x;
        }
        if (text_.substr(pos_, 2) == "S*") {
            pos_ += 2;
            return alg_.S_star(word());
        }
        if (c == 'S') {
            ++pos_;
            return alg_.S(word());
        }
        if (text_.substr(pos_, 3) == "chi") {
            pos_ += 3;
            skip();
            if (peek() == '{') return alg_.function(point_set());
            if (peek() == '[') return alg_.function(real_interval());
            fail_here("expected '{' or '[' after chi");
        }
        if (c == 'i' && !ident_char(peek(1))) {
            ++pos_;
            return alg_.scalar(Scalar::imaginary_unit());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Integer den = 1;
            skip();
            if (peek() == '/') {
                ++pos_;
                den = integer();
                if (den == 0) fail_here("zero denominator");
            }
            Scalar value(make_rational(num, den));
            if (peek() == 'i' && !ident_char(peek(1))) {
                ++pos_;
                value *= Scalar::imaginary_unit();
            }
            return alg_.scalar(value);
        }
        fail_here("unexpected character");
    }

    Word word() {
        expect('[');
        std::vector<Word::Letter> letters;
        skip();
        if (peek() != ']') {
            for (;;) {
                Integer l = integer();
                if (l < 1 || !l.fits_ulong_p()) fail_here("letters are positive integers");
                letters.push_back(static_cast<Word::Letter>(l.get_ui()));
                skip();
                if (peek() != ',') break;
                ++pos_;
            }
        }
        expect(']');
        Word w(std::move(letters));
        check_letters(w, alg_.alphabet());
        return w;
    }

    FiniteFunction point_set() {
        const auto& desc = alg_.descriptor();
        if (!desc.is_discrete()) fail_here("chi{...} needs a discrete group; use chi[a, b)");
        expect('{');
        std::vector<GroupElement> pts;
        skip();
        if (peek() != '}') {
            for (;;) {
                pts.push_back(point());
                skip();
                if (peek() != ',') break;
                ++pos_;
            }
        }
        expect('}');
        return alg_.functions().indicator(pts);
    }

    GroupElement point() {
        const auto& desc = alg_.descriptor();
        GroupElement g;
        skip();
        if (peek() == '(') {
            ++pos_;
            for (;;) {
                g.coords.emplace_back(signed_integer());
                skip();
                if (peek() != ',') break;
                ++pos_;
            }
            expect(')');
        } else {
            g.coords.emplace_back(signed_integer());
        }
        if (g.coords.size() != desc.dimension()) fail_here("point arity does not match the group");
        return gamma::normalize(desc, std::move(g));
    }

    FiniteFunction real_interval() {
        const auto& desc = alg_.descriptor();
        if (!desc.is_real()) fail_here("chi[a, b) needs a real_line group");
        expect('[');
        GroupElement lo = real_value();
        expect(',');
        GroupElement hi = real_value();
        expect(')');
        return alg_.functions().interval(lo, hi);
    }

    GroupElement real_value() {
        const auto& desc = alg_.descriptor();
        GroupElement g = gamma::zero(desc);
        skip();
        bool first = true;
        for (;;) {
            skip();
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            first = false;
            skip();
            Rational coeff = 1;
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                Integer num = integer();
                Integer den = 1;
                skip();
                if (peek() == '/') {
                    ++pos_;
                    den = integer();
                    if (den == 0) fail_here("zero denominator");
                }
                coeff = make_rational(num, den);
                have_coeff = true;
                skip();
            }
            std::string name;
            if (have_coeff && peek() == '*') {
                ++pos_;
                skip();
                name = identifier();
            } else if (!have_coeff) {
                name = identifier();
            } else {
                name = "1";
            }
            std::size_t k = basis_index(name);
            g.coords[k] += sign * coeff;
        }
        return g;
    }

    std::size_t basis_index(const std::string& name) {
        const auto& basis = alg_.descriptor().basis();
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (basis[k].name == name) return k;
        fail_here("unknown basis name '" + name + "'");
    }

    std::string identifier() {
        skip();
        std::size_t start = pos_;
        while (!at_end() && ident_char(peek())) ++pos_;
        if (start == pos_) fail_here("expected a basis name");
        return std::string(text_.substr(start, pos_ - start));
    }

    Integer integer() {
        skip();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail_here("expected an integer");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Integer signed_integer() {
        skip();
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            ++pos_;
        }
        Integer v = integer();
        return negative ? Integer(-v) : v;
    }

    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

    void expect(char c) {
        skip();
        if (peek() != c) fail_here(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail_here(const std::string& message) const {
        fail(ErrorKind::argument, "expression", message, "at offset " + std::to_string(pos_) + " of '" + std::string(text_) + "'");
    }

    const Algebra& alg_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::string coefficient_prefix(const Scalar& c) { return c == Scalar(1) ? "" : "(" + c.str() + ")\xC2\xB7"; }

} // namespace detail

inline AlgebraElement parse_expression(const Algebra& alg, std::string_view text) {
    return detail::ExpressionParser(alg, text).parse();
}

/// Canonical text form, e.g. "S[1]·chi{0}·S*[1] + (1/4)·chi{1}". Zero renders as "0".
inline std::string render(const Algebra& alg, const AlgebraElement& x) {
    const auto& desc = alg.descriptor();
    std::vector<std::string> summands;
    for (const auto& [key, f] : x.terms()) {
        const auto& [mu, nu] = key;
        std::string left = mu.empty() ? "" : "S" + mu.str();
        std::string right = nu.empty() ? "" : "S*" + nu.str();
        auto assemble = [&](const Scalar& c, const std::string& middle) {
            std::vector<std::string> parts;
            for (const std::string* p : std::initializer_list<const std::string*>{&left, &middle, &right})
                if (!p->empty()) parts.push_back(*p);
            if (parts.empty()) {
                summands.push_back(c == Scalar(1) ? "1" : "(" + c.str() + ")");
                return;
            }
            std::string s = detail::coefficient_prefix(c);
            for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "\xC2\xB7" : "") + parts[i];
            summands.push_back(std::move(s));
        };
        const Scalar& bg = f.background();
        if (!bg.is_zero()) assemble(bg, "");
        if (desc.is_discrete()) {
            std::map<Scalar, std::vector<GroupElement>> by_value;
            for (const auto& [g, v] : f.points()) by_value[v - bg].push_back(g);
            for (const auto& [v, pts] : by_value) {
                std::string chi = "chi{";
                for (std::size_t i = 0; i < pts.size(); ++i) chi += (i ? "," : "") + gamma::render(desc, pts[i]);
                assemble(v, chi + "}");
            }
        } else {
            for (const auto& p : f.pieces())
                assemble(p.value - bg,
                         "chi[" + gamma::render(desc, p.lo) + "," + gamma::render(desc, p.hi) + ")");
        }
    }
    if (summands.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < summands.size(); ++i) out += (i ? " + " : "") + summands[i];
    return out;
}

} // namespace quasifree
