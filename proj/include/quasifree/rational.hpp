#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace quasifree {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Least non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Integer lcm_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd_of(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline std::int64_t to_int64(const Integer& z, const char* what = "integer") {
    if (!z.fits_slong_p()) fail(ErrorKind::resource, "rational", std::string(what) + " exceeds 64 bits");
    return z.get_si();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "7", "-3/4", "1.414213" or "-0.5e0"-free decimals into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    auto bad = [&]() -> Rational { fail(ErrorKind::argument, "rational", "malformed rational '" + std::string(text) + "'"); };
    if (s.empty()) return bad();
    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        pos = 1;
    }
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t i = from; i < to; ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    Rational value;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        if (!digits(pos, slash) || !digits(slash + 1, s.size())) return bad();
        Integer num(s.substr(pos, slash - pos)), den(s.substr(slash + 1));
        if (den == 0) fail(ErrorKind::argument, "rational", "zero denominator in '" + s + "'");
        value = make_rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string whole = s.substr(pos, dot - pos), frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty() && dot + 1 != s.size()) return bad();
        for (char c : whole)
            if (c < '0' || c > '9') return bad();
        for (char c : frac)
            if (c < '0' || c > '9') return bad();
        Integer den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        value = make_rational(Integer(whole + (frac.empty() ? "" : frac)), den);
    } else {
        if (!digits(pos, s.size())) return bad();
        value = Rational(Integer(s.substr(pos)));
    }
    return negative ? Rational(-value) : value;
}

/// Exact square root of a non-negative rational that is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rational(rn, rd);
}

/// Exact complex rational a + b i.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int re) : re_(re) {}
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational imaginary_unit() { return {0, 1}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    /// "3/4", "-i", "1/2+3i".
    std::string str() const {
        auto imag_part = [](const Rational& q) {
            if (q == 1) return std::string("i");
            if (q == -1) return std::string("-i");
            return to_string(q) + "i";
        };
        if (im_ == 0) return to_string(re_);
        if (re_ == 0) return imag_part(im_);
        std::string im = imag_part(im_);
        return to_string(re_) + (im[0] == '-' ? "" : "+") + im;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Exact square root for the values the constructions use: non-negative rational squares.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
    if (!z.is_real()) return std::nullopt;
    auto r = exact_sqrt(z.real());
    if (!r) return std::nullopt;
    return GaussianRational(*r);
}

} // namespace quasifree
