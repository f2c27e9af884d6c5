#pragma once

// Randomized *-algebra law checks shared by the verify command. Each property
// is an exact equality of canonical forms on seeded random inputs.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "expression.hpp"
#include "random_elements.hpp"

namespace quasifree {

struct PropertyResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::string first_failure;
    bool passed() const { return failures == 0; }
};

/// u = sum_{|mu| = k} S_mu S_1^k S_2 S_mu*, the isometry that compresses onto the
/// balanced part: u* y u = sigma_{k omega_1 + omega_2}(E(y)) for y on words of length <= k.
inline MultiplierWordSum compression_multiplier(const Algebra& alg, std::size_t k) {
    if (alg.alphabet() < 2) fail(ErrorKind::argument, "star_algebra", "the compression multiplier needs two letters");
    MultiplierWordSum u;
    Word core = Word(std::vector<Word::Letter>(k, 1)).appended(2);
    for (const auto& mu : words_of_length(alg.alphabet(), k, alg.caps().max_terms))
        u.coefficients[{mu + core, mu}] = Scalar(1);
    return u;
}

inline GroupElement compression_shift(const Algebra& alg, std::size_t k) {
    return alg.weight(Word(std::vector<Word::Letter>(k, 1)).appended(2));
}

inline std::vector<PropertyResult> run_property_suite(const Algebra& alg, std::uint64_t seed, std::size_t samples) {
    RandomElements gen(alg, seed);
    std::vector<PropertyResult> results;
    auto check = [&](const std::string& name, const std::function<bool(std::string&)>& body) {
        PropertyResult r;
        r.name = name;
        for (std::size_t s = 0; s < samples; ++s) {
            std::string detail;
            ++r.checked;
            if (!body(detail)) {
                if (r.failures++ == 0) r.first_failure = detail;
            }
        }
        results.push_back(std::move(r));
    };
    auto show = [&](const AlgebraElement& x) { return render(alg, x); };

    check("associativity", [&](std::string& d) {
        auto x = gen.element(), y = gen.element(), z = gen.element();
        d = show(x) + " | " + show(y) + " | " + show(z);
        return alg.multiply(alg.multiply(x, y), z) == alg.multiply(x, alg.multiply(y, z));
    });
    check("adjoint reverses products", [&](std::string& d) {
        auto x = gen.element(), y = gen.element();
        d = show(x) + " | " + show(y);
        return alg.adjoint(alg.multiply(x, y)) == alg.multiply(alg.adjoint(y), alg.adjoint(x));
    });
    check("adjoint is an involution", [&](std::string& d) {
        auto x = gen.element();
        d = show(x);
        return alg.adjoint(alg.adjoint(x)) == x;
    });
    check("multiplication is bilinear", [&](std::string& d) {
        auto x = gen.element(), y = gen.element(), z = gen.element();
        Scalar c = gen.scalar();
        d = show(x) + " | " + show(y) + " | " + show(z);
        return alg.multiply(alg.add(x, alg.scale(y, c)), z) ==
                   alg.add(alg.multiply(x, z), alg.scale(alg.multiply(y, z), c)) &&
               alg.multiply(z, alg.add(x, y)) == alg.add(alg.multiply(z, x), alg.multiply(z, y));
    });
    check("gauge expectation is an idempotent *-map", [&](std::string& d) {
        auto x = gen.element();
        d = show(x);
        auto e = alg.gauge_expectation(x);
        return alg.gauge_expectation(e) == e && alg.gauge_expectation(alg.adjoint(x)) == alg.adjoint(e);
    });
    check("gauge expectation is a function bimodule map", [&](std::string& d) {
        auto x = gen.element();
        auto f = alg.function(gen.function()), g = alg.function(gen.function());
        d = show(x) + " | " + show(f) + " | " + show(g);
        return alg.gauge_expectation(alg.product({f, x, g})) == alg.product({f, alg.gauge_expectation(x), g});
    });
    check("rho_1 is a *-endomorphism", [&](std::string& d) {
        auto x = gen.element(), y = gen.element();
        d = show(x) + " | " + show(y);
        return alg.rho(alg.multiply(x, y), 1) == alg.multiply(alg.rho(x, 1), alg.rho(y, 1)) &&
               alg.rho(alg.adjoint(x), 1) == alg.adjoint(alg.rho(x, 1));
    });
    check("rho_1 rho_1 = rho_2", [&](std::string& d) {
        auto x = gen.element(2);
        d = show(x);
        return alg.rho(alg.rho(x, 1), 1) == alg.rho(x, 2);
    });
    check("diagonal conjugates commute", [&](std::string& d) {
        auto mu = gen.word(3), nu = gen.word(3);
        auto a = alg.term(mu, gen.function(), mu), b = alg.term(nu, gen.function(), nu);
        d = show(a) + " | " + show(b);
        return alg.multiply(a, b) == alg.multiply(b, a);
    });
    check("render/parse round trip", [&](std::string& d) {
        auto x = gen.element();
        d = show(x);
        return parse_expression(alg, d) == x;
    });
    // The compression multiplier is an isometry only when sum_i S_i S_i* = 1.
    if (alg.alphabet() >= 2 && !alg.infinite()) {
        for (std::size_t k = 1; k <= 2; ++k) {
            auto u = compression_multiplier(alg, k);
            auto shift = compression_shift(alg, k);
            check("compression identity k=" + std::to_string(k), [&](std::string& d) {
                auto y = gen.element(k);
                d = show(y);
                return alg.multiplier_conjugate(u, y) == alg.shift_middle(alg.gauge_expectation(y), shift);
            });
        }
    }
    return results;
}

} // namespace quasifree
