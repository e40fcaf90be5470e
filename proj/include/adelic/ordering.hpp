#pragma once

// Enriched orderings (ordered set partitions with ties) and the quasi-shuffle
// expansion of a product of two nested series.

#include <functional>
#include <string>
#include <vector>

#include "adelic/mzv.hpp"
#include "adelic/numerics.hpp"

namespace adelic {

/// Ordered sequence of disjoint nonempty blocks covering a set of indices.
/// Earlier blocks hold strictly smaller values; indices inside a block are
/// tied. Blocks are kept sorted ascending internally.
class Ordering {
  public:
    Ordering() = default;
    /// Throws InvalidArgument on empty blocks or repeated indices.
    explicit Ordering(std::vector<std::vector<int>> blocks);

    const std::vector<std::vector<int>> &blocks() const { return blocks_; }
    std::size_t size() const; // number of indices
    std::vector<int> indices() const; // ascending

    /// True when every block holds a single index.
    bool strict() const;

    /// Keep only the listed indices and drop blocks that become empty.
    Ordering restriction(const std::vector<int> &keep) const;

    /// "(5(13)24)"; when some index exceeds 9 the entries are separated by
    /// commas, e.g. "(5,(1,13),2)".
    std::string to_string() const;
    static Ordering parse(const std::string &text);

    /// The chain [{first}, {first+1}, ..., {first+length-1}].
    static Ordering chain(int first, int length);

    auto operator<=>(const Ordering &) const = default;

  private:
    std::vector<std::vector<int>> blocks_;
};

/// The ordering realized by the values: ascending, ties grouped. Index i
/// refers to values[i-1]. Throws InvalidArgument on empty input.
Ordering order_of(const std::vector<double> &values);

/// Every ordering of the union whose restrictions to the two index sets give
/// sigma1 and sigma2, built by interleaving the block sequences and optionally
/// merging one block from each side. Sorted. Throws InvalidArgument if the
/// index sets overlap.
std::vector<Ordering> enumerate_compatible(const Ordering &sigma1, const Ordering &sigma2);

/// Interleavings without merged blocks (the count is binomial(a+b, a) for chains).
std::vector<Ordering> enumerate_strict_compatible(const Ordering &sigma1, const Ordering &sigma2);

struct CompositionTerm {
    Composition composition;
    Ordering ordering; // over 1..d1+d2, the source of the merge pattern
    int coefficient = 1;
};

/// One term per compatible ordering of the two chains; the exponents of tied
/// indices are summed.
std::vector<CompositionTerm> stuffle_expand(const Composition &a, const Composition &b);

/// Generic form over letters of any type: letters placed in one block are
/// combined with merge(x, y).
template <class Letter>
std::vector<std::vector<Letter>> stuffle_words(const std::vector<Letter> &a,
                                               const std::vector<Letter> &b,
                                               const std::function<Letter(const Letter &, const Letter &)> &merge) {
    std::vector<Letter> all(a);
    all.insert(all.end(), b.begin(), b.end());
    std::vector<std::vector<Letter>> out;
    const int da = static_cast<int>(a.size()), db = static_cast<int>(b.size());
    for (const auto &o : enumerate_compatible(Ordering::chain(1, da), Ordering::chain(da + 1, db))) {
        std::vector<Letter> word;
        for (const auto &block : o.blocks()) {
            Letter x = all[block.front() - 1];
            for (std::size_t i = 1; i < block.size(); ++i)
                x = merge(x, all[block[i] - 1]);
            word.push_back(x);
        }
        out.push_back(std::move(word));
    }
    return out;
}

struct IdentityReport {
    std::string identity;
    Complex lhs;
    Complex rhs;
    double residual = 0;
    double tolerance = 0;
    double error_budget = 0; // summed error estimates of all evaluations
    bool pass = false;
};

using SeriesEvaluator = std::function<EvaluationResult(const Composition &)>;

/// |E(a) E(b) - Σ E(term)| against tol + propagated error estimates.
IdentityReport verify_stuffle_numeric(const Composition &a, const Composition &b,
                                      const SeriesEvaluator &evaluator, double tol);

/// Completed evaluators with an archimedean factor: ties have measure zero, so
/// single(s1) single(s2) = iterated(s1, s2) + iterated(s2, s1).
using CompletedSingle = std::function<EvaluationResult(Complex)>;
using CompletedIterated = std::function<EvaluationResult(Complex, Complex)>;

IdentityReport verify_shuffle_archimedean(Complex s1, Complex s2, const CompletedSingle &single,
                                          const CompletedIterated &iterated, double tol);

std::string format_composition(const Composition &c);

} // namespace adelic
