#pragma once

// Seeded random algebra elements for property suites: short words, small
// Gaussian-rational coefficients, supports inside a radius-R window.

#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "algebra.hpp"
#include "function.hpp"
#include "gamma.hpp"
#include "words.hpp"

namespace quasifree {

struct RandomShape {
    std::size_t max_word_length = 3;
    std::size_t max_terms = 3;
    long radius = 5;
    std::size_t max_support = 3;
};

class RandomElements {
public:
    RandomElements(const Algebra& alg, std::uint64_t seed, RandomShape shape = {})
        : alg_(alg), rng_(seed), shape_(shape) {}

    Word word(std::size_t max_len) {
        std::size_t len = pick(0, static_cast<long>(max_len));
        std::vector<Word::Letter> letters;
        for (std::size_t i = 0; i < len; ++i)
            letters.push_back(static_cast<Word::Letter>(pick(1, static_cast<long>(alg_.alphabet()))));
        return Word(std::move(letters));
    }

    Scalar scalar() {
        // Small numerators over {1,2,3}; one in four draws gets an imaginary part.
        Rational re = make_rational(Integer(pick(-3, 3)), Integer(pick(1, 3)));
        Rational im = pick(0, 3) == 0 ? make_rational(Integer(pick(-2, 2)), Integer(pick(1, 2))) : Rational(0);
        if (re == 0 && im == 0) re = 1;
        return Scalar(re, im);
    }

    GroupElement point() {
        const auto& desc = alg_.descriptor();
        GroupElement g;
        for (std::size_t k = 0; k < desc.dimension(); ++k) g.coords.emplace_back(Integer(pick(-shape_.radius, shape_.radius)));
        return gamma::normalize(desc, std::move(g));
    }

    FiniteFunction function() {
        const auto& fs = alg_.functions();
        const auto& desc = alg_.descriptor();
        FiniteFunction f = fs.zero();
        std::size_t count = pick(1, static_cast<long>(shape_.max_support));
        for (std::size_t k = 0; k < count; ++k) {
            if (desc.is_discrete()) {
                f = fs.add(f, fs.indicator({point()}, scalar()));
            } else {
                GroupElement a = point(), b = point();
                auto order = gamma::compare_real(desc, a, b, fs.depth());
                if (order == gamma::Order::equal) continue;
                if (order == gamma::Order::greater) std::swap(a, b);
                f = fs.add(f, fs.interval(a, b, scalar()));
            }
        }
        if (f.is_zero())
            f = desc.is_discrete() ? fs.indicator({gamma::zero(desc)}) : fs.interval(gamma::zero(desc), gamma::unit(desc, 0));
        return f;
    }

    /// Sum of up to max_terms random S_mu f S_nu*.
    AlgebraElement element(std::size_t max_word_length) {
        std::vector<std::tuple<Word, FiniteFunction, Word>> terms;
        std::size_t count = pick(1, static_cast<long>(shape_.max_terms));
        for (std::size_t k = 0; k < count; ++k) terms.emplace_back(word(max_word_length), function(), word(max_word_length));
        return alg_.from_terms(terms);
    }

    AlgebraElement element() { return element(shape_.max_word_length); }

    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

private:
    const Algebra& alg_;
    std::mt19937_64 rng_;
    RandomShape shape_;
};

} // namespace quasifree
