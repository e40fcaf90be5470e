#include <doctest.h>

#include <cmath>

#include "adelic/errors.hpp"
#include "adelic/mzv.hpp"
#include "oracles.hpp"

using namespace adelic;

namespace {

Composition comp(std::initializer_list<double> xs) {
    Composition c;
    for (double x : xs)
        c.exponents.emplace_back(x);
    return c;
}

QuadratureSpec kspec() {
    QuadratureSpec spec;
    spec.lower_cutoff = 1e-15;
    return spec;
}

} // namespace

TEST_CASE("empty composition is one") {
    const auto r = mzf_eval(Composition{}, TruncationSpec{});
    CHECK(r.value == Complex(1.0));
    CHECK(r.abs_error_estimate == 0.0);
}

TEST_CASE("zeta(2) and zeta(3) against Euler-Maclaurin") {
    const auto z2 = mzf_eval(comp({2}), TruncationSpec{400'000'000, 8e-9});
    CHECK(std::abs(z2.value - oracle::zeta(2.0)) < 1e-8);
    CHECK(std::abs(z2.value - oracle::zeta(2.0)) <= z2.abs_error_estimate);
    CHECK(std::abs(z2.value.real() - 1.6449340668) < 1e-8);
    const auto z3 = mzf_eval(comp({3}), TruncationSpec{});
    CHECK(std::abs(z3.value.real() - 1.2020569032) < 1.1e-8);
}

TEST_CASE("depth-one agreement with Euler-Maclaurin at 1e-10") {
    // ζ(2) would need 1e10 terms for 1e-10 by plain partial sums; it is covered above at 1e-8.
    for (double s : {3.0, 4.0, 6.0}) {
        const auto r = mzf_eval(comp({s}), TruncationSpec{400'000'000, 5e-11});
        CHECK(std::abs(r.value - oracle::zeta(s)) < 1e-10);
    }
}

TEST_CASE("Euler's identity zeta(1,2) = zeta(3)") {
    const auto a = mzf_eval(comp({1, 2}), TruncationSpec{400'000'000, 9e-8});
    const auto b = mzf_eval(comp({3}), TruncationSpec{400'000'000, 5e-9});
    CHECK(std::abs(a.value - b.value) <= 1e-7);
    CHECK(std::abs(a.value - oracle::zeta(3.0)) <= a.abs_error_estimate);
}

TEST_CASE("convergence domain") {
    CHECK(comp({2}).converges());
    CHECK(comp({1, 2}).converges());
    CHECK_FALSE(comp({1}).converges());
    CHECK_FALSE(comp({0.5, 1.5}).converges());
    CHECK_FALSE(comp({3, 1}).converges());
    CHECK_THROWS_AS(mzf_eval(comp({1}), TruncationSpec{}), DivergenceError);
    CHECK_THROWS_AS(mzf_eval(comp({2, 1}), TruncationSpec{}), DivergenceError);
    CHECK_THROWS_AS(mzf_eval(Composition{{Complex(1.0, 5.0)}}, TruncationSpec{}), DivergenceError);
}

TEST_CASE("tail too large for the cap") {
    CHECK_THROWS_AS(mzf_eval(comp({2}), TruncationSpec{1000, 1e-8}), TailTooLarge);
    CHECK_THROWS_AS(TruncationSpec({1, 1e-3}).validate(), InvalidArgument);
    CHECK_THROWS_AS(TruncationSpec({100, 0.0}).validate(), InvalidArgument);
}

TEST_CASE("complex exponents") {
    const Composition c{{Complex(3.0, 2.0)}};
    const auto r = mzf_eval(c, TruncationSpec{400'000'000, 1e-10});
    CHECK(std::abs(r.value - oracle::zeta(Complex(3.0, 2.0))) < 1e-9);
}

TEST_CASE("truncations form a Cauchy sequence inside the tail bound") {
    for (const auto &c : {comp({2.5}), comp({1.5, 2.5}), comp({1.2, 1.4, 2.5})}) {
        const auto coarse = mzf_eval(c, TruncationSpec{400'000'000, 1e-3});
        const auto mid = mzf_eval(c, TruncationSpec{400'000'000, 1e-4});
        const auto fine = mzf_eval(c, TruncationSpec{400'000'000, 1e-6});
        CHECK(coarse.terms_or_nodes_used < mid.terms_or_nodes_used);
        CHECK(mid.terms_or_nodes_used < fine.terms_or_nodes_used);
        // Positive terms: partial sums increase and stay below the bound.
        CHECK(coarse.value.real() <= mid.value.real());
        CHECK(mid.value.real() <= fine.value.real());
        CHECK(fine.value.real() - coarse.value.real() <= coarse.abs_error_estimate);
        CHECK(fine.value.real() - mid.value.real() <= mid.abs_error_estimate);
        CHECK(nested_tail_bound(c, coarse.terms_or_nodes_used) <= 1e-3);
    }
}

TEST_CASE("required truncation is minimal") {
    const auto c = comp({3});
    const TruncationSpec t{1'000'000, 1e-6};
    const auto N = required_truncation(c, t);
    CHECK(nested_tail_bound(c, N) <= 1e-6);
    CHECK(nested_tail_bound(c, N - 1) > 1e-6);
}

TEST_CASE("composition to word") {
    CHECK(composition_to_word({{2}}).to_string() == "10");
    CHECK(composition_to_word({{3}}).to_string() == "100");
    CHECK(composition_to_word({{1, 2}}).to_string() == "110");
    CHECK(composition_to_word({{2, 1, 3}}).to_string() == "101100");
    CHECK(IntegerComposition{{2, 1, 3}}.weight() == 6);
    CHECK_THROWS_AS(composition_to_word({{2, 1}}), InvalidComposition);
    CHECK_THROWS_AS(composition_to_word({{0, 2}}), InvalidComposition);
    CHECK_THROWS_AS(composition_to_word({{}}), InvalidComposition);
}

TEST_CASE("word parsing") {
    const auto w = IteratedWord::parse("110");
    REQUIRE(w.letters.size() == 3);
    CHECK(w.letters[0] == Form::omega1);
    CHECK(w.letters[2] == Form::omega0);
    CHECK(w.convergent());
    CHECK_FALSE(IteratedWord::parse("01").convergent());
    CHECK_FALSE(IteratedWord::parse("11").convergent());
    CHECK_THROWS_AS(IteratedWord::parse("12"), InvalidArgument);
}

TEST_CASE("iterated integrals of low weight") {
    const double z2 = oracle::zeta(2.0).real(), z3 = oracle::zeta(3.0).real();
    CHECK(std::abs(kontsevich_eval(IteratedWord::parse("10"), kspec()).value - z2) < 1e-6);
    CHECK(std::abs(kontsevich_eval(IteratedWord::parse("100"), kspec()).value - z3) < 1e-6);
    CHECK(std::abs(kontsevich_eval(IteratedWord::parse("110"), kspec()).value - z3) < 1e-6);
    // ζ(4) = π^4/90 and ζ(2,2) = (ζ(2)^2 - ζ(4))/2
    const double z4 = std::pow(oracle::pi, 4) / 90;
    CHECK(std::abs(kontsevich_eval(IteratedWord::parse("1000"), kspec()).value - z4) < 1e-10);
    CHECK(std::abs(kontsevich_eval(IteratedWord::parse("1010"), kspec()).value - 0.5 * (z2 * z2 - z4)) < 1e-10);
}

TEST_CASE("divergent words are rejected") {
    CHECK_THROWS_AS(kontsevich_eval(IteratedWord::parse("01"), kspec()), DivergentWord);
    CHECK_THROWS_AS(kontsevich_eval(IteratedWord::parse("1"), kspec()), DivergentWord);
    CHECK_THROWS_AS(kontsevich_eval(IteratedWord::parse(""), kspec()), DivergentWord);
}

TEST_CASE("iterated integrals match nested sums up to weight 5") {
    const std::vector<std::vector<int>> all = {
        {2},       {3},       {1, 2},    {4},       {1, 3},       {2, 2},       {1, 1, 2},    {5},
        {1, 4},    {2, 3},    {3, 2},    {1, 1, 3}, {1, 2, 2},    {2, 1, 2},    {1, 1, 1, 2},
    };
    for (const auto &parts : all) {
        const IntegerComposition k{parts};
        const auto word = composition_to_word(k);
        const auto a = kontsevich_eval(word, kspec());
        // Compositions ending in 2 converge like 1/N; a loose target keeps them quick.
        const auto b = mzf_eval(k.to_composition(), TruncationSpec{400'000'000, parts.back() == 2 ? 2e-4 : 1e-7});
        INFO("word " << word.to_string());
        CHECK(std::abs(a.value - b.value) <= a.abs_error_estimate + b.abs_error_estimate);
    }
}
