#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "adelic/errors.hpp"
#include "adelic/modular.hpp"
#include "adelic/ordering.hpp"
#include "adelic/theta.hpp"
#include "oracles.hpp"

using namespace adelic;

namespace {

Composition comp(std::vector<double> xs) {
    Composition c;
    for (double x : xs)
        c.exponents.emplace_back(x);
    return c;
}

std::set<std::string> strings(const std::vector<Ordering> &os) {
    std::set<std::string> out;
    for (const auto &o : os)
        out.insert(o.to_string());
    return out;
}

std::multiset<std::string> term_set(const std::vector<CompositionTerm> &terms) {
    std::multiset<std::string> out;
    for (const auto &t : terms)
        out.insert(format_composition(t.composition));
    return out;
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST_CASE("order of values") {
    // n5 < n3 = n1 < n2 < n4
    const auto o = order_of({3.0, 4.0, 3.0, 5.0, 1.0});
    CHECK(o.blocks() == std::vector<std::vector<int>>{{5}, {1, 3}, {2}, {4}});
    CHECK(o.to_string() == "(5(13)24)");
    CHECK(order_of({7.0}).to_string() == "(1)");
    CHECK(order_of({2.0, 2.0, 2.0}).blocks() == std::vector<std::vector<int>>{{1, 2, 3}});
    CHECK_THROWS_AS(order_of({}), InvalidArgument);
}

TEST_CASE("display format round trip") {
    const auto a = Ordering::parse("(5(31)24)");
    CHECK(a == Ordering::parse("(5(13)24)"));
    CHECK(a.to_string() == "(5(13)24)");
    const Ordering wide({{12}, {1, 10}, {2, 3, 4, 5, 6, 7, 8, 9, 11}});
    CHECK(wide.to_string() == "(12,(1,10),(2,3,4,5,6,7,8,9,11))");
    CHECK(Ordering::parse(wide.to_string()) == wide);
    CHECK(Ordering::parse(" ( 1 (2 3) ) ").to_string() == "(1(23))");
    for (const auto &o : oracle::all_orderings(4))
        CHECK(Ordering::parse(o.to_string()) == o);
}

TEST_CASE("malformed orderings") {
    CHECK_THROWS_AS(Ordering({{1}, {1}}), InvalidArgument);
    CHECK_THROWS_AS(Ordering({{1}, {}}), InvalidArgument);
    CHECK_THROWS_AS(Ordering(std::vector<std::vector<int>>{{0}}), InvalidArgument);
    CHECK_THROWS_AS(Ordering::parse("1(23)"), InvalidArgument);
    CHECK_THROWS_AS(Ordering::parse("(1(23)"), InvalidArgument);
    CHECK_THROWS_AS(Ordering::parse("(1a)"), InvalidArgument);
    CHECK_THROWS_AS(Ordering::parse("()"), InvalidArgument);
    CHECK_THROWS_AS(Ordering::parse("(11)"), InvalidArgument);
}

TEST_CASE("restriction") {
    const auto o = Ordering::parse("(5(13)24)");
    CHECK(o.restriction({1, 2}).to_string() == "(12)");
    CHECK(o.restriction({3, 4, 5}).to_string() == "(534)");
    CHECK(o.restriction({1, 3}).to_string() == "((13))");
    CHECK(o.size() == 5);
    CHECK_FALSE(o.strict());
}

TEST_CASE("compatible orderings of small chains") {
    const auto one = enumerate_compatible(Ordering::chain(1, 1), Ordering::chain(2, 1));
    CHECK(strings(one) == std::set<std::string>{"(12)", "(21)", "((12))"});
    const auto two = enumerate_compatible(Ordering::chain(1, 2), Ordering::chain(3, 1));
    CHECK(two.size() == 5);
    CHECK(enumerate_strict_compatible(Ordering::chain(1, 2), Ordering::chain(3, 1)).size() == 3);
    CHECK_THROWS_AS(enumerate_compatible(Ordering::chain(1, 2), Ordering::chain(2, 1)), InvalidArgument);
}

TEST_CASE("chain counts match brute force up to seven indices") {
    for (int total = 2; total <= 7; ++total)
        for (int a = 1; a < total; ++a) {
            const int b = total - a;
            const auto s1 = Ordering::chain(1, a), s2 = Ordering::chain(a + 1, b);
            const auto fast = enumerate_compatible(s1, s2);
            const auto brute = oracle::compatible_by_filter(s1, s2);
            CHECK(strings(fast) == strings(brute));
            CHECK(fast.size() == brute.size());
            const auto strict = enumerate_strict_compatible(s1, s2);
            CHECK(static_cast<double>(strict.size()) == binomial(a + b, a));
            CHECK(std::all_of(strict.begin(), strict.end(), [](const Ordering &o) { return o.strict(); }));
        }
}

TEST_CASE("general orderings with ties on each side") {
    const auto s1 = Ordering::parse("(1(23))"), s2 = Ordering::parse("((45)6)");
    const auto fast = enumerate_compatible(s1, s2);
    CHECK(strings(fast) == strings(oracle::compatible_by_filter(s1, s2)));
    for (const auto &o : fast) {
        CHECK(o.restriction({1, 2, 3}) == s1);
        CHECK(o.restriction({4, 5, 6}) == s2);
    }
    // Index sets need not be contiguous.
    const auto t1 = Ordering::parse("(31)"), t2 = Ordering::parse("(2)");
    CHECK(strings(enumerate_compatible(t1, t2)) == strings(oracle::compatible_by_filter(t1, t2)));
}

TEST_CASE("stuffle expansion") {
    const auto t = stuffle_expand(comp({2}), comp({3}));
    CHECK(term_set(t) == std::multiset<std::string>{"(2,3)", "(3,2)", "(5)"});
    const Composition s1{{Complex(2, 1)}}, s2{{Complex(3, -1)}};
    CHECK(term_set(stuffle_expand(s1, s2)) == std::multiset<std::string>{"(2+1i,3-1i)", "(3-1i,2+1i)", "(5)"});
    const auto five = stuffle_expand(comp({1.5, 2.5}), comp({3}));
    CHECK(term_set(five) ==
          std::multiset<std::string>{"(1.5,2.5,3)", "(1.5,3,2.5)", "(3,1.5,2.5)", "(4.5,2.5)", "(1.5,5.5)"});
    const auto empty = stuffle_expand(Composition{}, comp({4}));
    REQUIRE(empty.size() == 1);
    CHECK(format_composition(empty[0].composition) == "(4)");
}

TEST_CASE("stuffle term count and depth follow the orderings") {
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            Composition x, y;
            for (int i = 0; i < a; ++i)
                x.exponents.emplace_back(2.0 + i);
            for (int i = 0; i < b; ++i)
                y.exponents.emplace_back(5.0 + i);
            const auto terms = stuffle_expand(x, y);
            CHECK(terms.size() == enumerate_compatible(Ordering::chain(1, a), Ordering::chain(a + 1, b)).size());
            for (const auto &t : terms) {
                CHECK(t.composition.depth() == t.ordering.blocks().size());
                CHECK(t.coefficient == 1);
            }
        }
}

TEST_CASE("stuffle over words of strings") {
    const std::vector<std::string> a{"a", "b"}, b{"c"};
    const auto words = stuffle_words<std::string>(a, b, [](const std::string &x, const std::string &y) {
        return "[" + x + y + "]";
    });
    std::set<std::string> joined;
    for (const auto &w : words) {
        std::string s;
        for (const auto &l : w)
            s += l;
        joined.insert(s);
    }
    CHECK(joined == std::set<std::string>{"abc", "acb", "cab", "[ac]b", "a[bc]"});
}

TEST_CASE("numeric stuffle identities for zeta") {
    auto eval = [](const Composition &c) { return mzf_eval(c, TruncationSpec{400'000'000, 1e-8}); };
    const auto r = verify_stuffle_numeric(comp({2}), comp({3}), eval, 1e-8);
    CHECK(r.pass);
    CHECK(r.residual <= 1e-8);
    const auto q = verify_stuffle_numeric(comp({2}), comp({2}), eval, 1e-8);
    CHECK(q.pass);
    CHECK(q.residual <= 1e-8);
    // Rearranged: 2 ζ(2,2) = ζ(2)^2 - ζ(4).
    const auto z22 = eval(comp({2, 2})).value, z2 = eval(comp({2})).value, z4 = eval(comp({4})).value;
    CHECK(std::abs(2.0 * z22 - (z2 * z2 - z4)) <= 1e-8);
}

TEST_CASE("numeric stuffle identities on random pairs of weight at most 8") {
    std::mt19937 rng(8);
    auto eval = [](const Composition &c) { return mzf_eval(c, TruncationSpec{400'000'000, 1e-6}); };
    std::uniform_int_distribution<int> part(1, 4);
    int done = 0;
    while (done < 10) {
        auto draw = [&] {
            IntegerComposition k;
            const int d = part(rng) % 2 + 1;
            for (int i = 0; i < d; ++i)
                k.parts.push_back(part(rng));
            return k;
        };
        const auto a = draw(), b = draw();
        if (a.weight() + b.weight() > 8 || !a.to_composition().converges() || !b.to_composition().converges())
            continue;
        const auto r = verify_stuffle_numeric(a.to_composition(), b.to_composition(), eval, 1e-6);
        INFO(r.identity);
        CHECK(r.pass);
        ++done;
    }
}

TEST_CASE("a wrong evaluator fails the check") {
    auto constant = [](const Composition &) { return EvaluationResult{1.0, 0.0, Method::series, 1}; };
    const auto r = verify_stuffle_numeric(comp({2}), comp({3}), constant, 1e-8);
    CHECK_FALSE(r.pass);
    CHECK(std::abs(r.residual - 2.0) < 1e-15);
}

TEST_CASE("modular stuffle identity") {
    const auto d = delta_coefficients(10000);
    const TruncationSpec t{10000, 1e-7};
    const auto a = l_series(d, 9.0, t), b = l_series(d, 10.0, t);
    const auto x = double_l_series(d, d, 9.0, 10.0, t), y = double_l_series(d, d, 10.0, 9.0, t);
    const auto z = diagonal_l_series(d, d, 19.0, t);
    CHECK(std::abs(a.value * b.value - (x.value + y.value + z.value)) <= 1e-6);
}

TEST_CASE("archimedean shuffle identities") {
    const auto spec = theta_default_spec();
    auto single = [&](Complex s) { return completed_zeta_via_theta(s, spec).primary; };
    auto iterated = [&](Complex s1, Complex s2) { return completed_iterated_theta(s1, s2, spec).primary; };
    const auto r = verify_shuffle_archimedean(4.0, 6.0, single, iterated, 1e-5);
    CHECK(r.pass);
    CHECK(r.residual <= 1e-5);
    const auto e = verify_shuffle_archimedean(4.0, 4.0, single, iterated, 1e-5);
    CHECK(e.pass);
    CHECK(e.residual <= 1e-5);

    const auto d = delta_coefficients(2000);
    const auto mspec = modular_default_spec();
    const auto m = verify_shuffle_archimedean(
        7.0, 9.0, [&](Complex s) { return completed_l_integral(d, s, mspec); },
        [&](Complex s1, Complex s2) { return completed_double_l(d, d, s1, s2, mspec).primary; }, 1e-5);
    CHECK(m.pass);
    CHECK(m.residual <= 1e-12 * std::abs(m.lhs));
}
