#include "adelic/ordering.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

Ordering::Ordering(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
    std::set<int> seen;
    for (auto &b : blocks_) {
        if (b.empty())
            throw InvalidArgument("ordering blocks must be nonempty");
        std::sort(b.begin(), b.end());
        for (int i : b) {
            if (i < 1)
                throw InvalidArgument("ordering indices must be positive");
            if (!seen.insert(i).second)
                throw InvalidArgument("index " + std::to_string(i) + " appears twice in an ordering");
        }
    }
}

std::size_t Ordering::size() const {
    std::size_t n = 0;
    for (const auto &b : blocks_)
        n += b.size();
    return n;
}

std::vector<int> Ordering::indices() const {
    std::vector<int> out;
    for (const auto &b : blocks_)
        out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool Ordering::strict() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto &b) { return b.size() == 1; });
}

Ordering Ordering::restriction(const std::vector<int> &keep) const {
    const std::set<int> k(keep.begin(), keep.end());
    std::vector<std::vector<int>> out;
    for (const auto &b : blocks_) {
        std::vector<int> nb;
        std::copy_if(b.begin(), b.end(), std::back_inserter(nb), [&](int i) { return k.count(i) > 0; });
        if (!nb.empty())
            out.push_back(std::move(nb));
    }
    return Ordering(std::move(out));
}

std::string Ordering::to_string() const {
    const auto idx = indices();
    const bool wide = !idx.empty() && idx.back() > 9;
    std::ostringstream os;
    os << '(';
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        if (wide && bi > 0)
            os << ',';
        const auto &b = blocks_[bi];
        if (b.size() > 1)
            os << '(';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (wide && i > 0)
                os << ',';
            os << b[i];
        }
        if (b.size() > 1)
            os << ')';
    }
    os << ')';
    return os.str();
}

Ordering Ordering::parse(const std::string &raw) {
    std::string text;
    std::copy_if(raw.begin(), raw.end(), std::back_inserter(text),
                 [](unsigned char c) { return !std::isspace(c); });
    auto fail = [&](const std::string &why) -> Ordering {
        throw InvalidArgument("cannot parse ordering '" + raw + "': " + why);
    };
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        return fail("expected outer parentheses");
    const std::string body = text.substr(1, text.size() - 2);
    const bool wide = body.find(',') != std::string::npos;

    std::vector<std::vector<int>> blocks;
    std::size_t pos = 0;
    auto read_number = [&]() {
        if (pos >= body.size() || !std::isdigit(static_cast<unsigned char>(body[pos])))
            fail("expected a digit at position " + std::to_string(pos + 1));
        int v = 0;
        if (wide) {
            while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos])))
                v = v * 10 + (body[pos++] - '0');
        } else {
            v = body[pos++] - '0';
        }
        return v;
    };
    while (pos < body.size()) {
        if (wide && !blocks.empty()) {
            if (body[pos] != ',')
                fail("expected ',' between entries");
            ++pos;
        }
        if (body[pos] == '(') {
            ++pos;
            std::vector<int> block{read_number()};
            while (pos < body.size() && body[pos] != ')') {
                if (wide) {
                    if (body[pos] != ',')
                        fail("expected ',' inside a tied block");
                    ++pos;
                }
                block.push_back(read_number());
            }
            if (pos >= body.size())
                fail("unclosed tied block");
            ++pos;
            blocks.push_back(std::move(block));
        } else {
            blocks.push_back({read_number()});
        }
    }
    if (blocks.empty())
        return fail("no indices");
    return Ordering(std::move(blocks));
}

Ordering Ordering::chain(int first, int length) {
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < length; ++i)
        blocks.push_back({first + i});
    return Ordering(std::move(blocks));
}

Ordering order_of(const std::vector<double> &values) {
    if (values.empty())
        throw InvalidArgument("order_of needs at least one value");
    std::vector<int> idx(values.size());
    std::iota(idx.begin(), idx.end(), 1);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return values[a - 1] < values[b - 1]; });
    std::vector<std::vector<int>> blocks;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0 && values[idx[i] - 1] == values[idx[i - 1] - 1])
            blocks.back().push_back(idx[i]);
        else
            blocks.push_back({idx[i]});
    }
    return Ordering(std::move(blocks));
}

namespace {

using Blocks = std::vector<std::vector<int>>;

void interleave(const Blocks &a, std::size_t i, const Blocks &b, std::size_t j, bool allow_merge,
                Blocks &prefix, std::vector<Ordering> &out) {
    if (i == a.size() && j == b.size()) {
        out.emplace_back(prefix);
        return;
    }
    if (i < a.size()) {
        prefix.push_back(a[i]);
        interleave(a, i + 1, b, j, allow_merge, prefix, out);
        prefix.pop_back();
    }
    if (j < b.size()) {
        prefix.push_back(b[j]);
        interleave(a, i, b, j + 1, allow_merge, prefix, out);
        prefix.pop_back();
    }
    if (allow_merge && i < a.size() && j < b.size()) {
        auto merged = a[i];
        merged.insert(merged.end(), b[j].begin(), b[j].end());
        prefix.push_back(std::move(merged));
        interleave(a, i + 1, b, j + 1, allow_merge, prefix, out);
        prefix.pop_back();
    }
}

std::vector<Ordering> compatible(const Ordering &s1, const Ordering &s2, bool allow_merge) {
    const auto i1 = s1.indices(), i2 = s2.indices();
    std::vector<int> common;
    std::set_intersection(i1.begin(), i1.end(), i2.begin(), i2.end(), std::back_inserter(common));
    if (!common.empty())
        throw InvalidArgument("orderings share index " + std::to_string(common.front()));
    Blocks prefix;
    std::vector<Ordering> out;
    interleave(s1.blocks(), 0, s2.blocks(), 0, allow_merge, prefix, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_complex(Complex z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0)
        os << (z.imag() > 0 ? "+" : "") << z.imag() << 'i';
    return os.str();
}

} // namespace

std::vector<Ordering> enumerate_compatible(const Ordering &sigma1, const Ordering &sigma2) {
    return compatible(sigma1, sigma2, true);
}

std::vector<Ordering> enumerate_strict_compatible(const Ordering &sigma1, const Ordering &sigma2) {
    return compatible(sigma1, sigma2, false);
}

std::vector<CompositionTerm> stuffle_expand(const Composition &a, const Composition &b) {
    const int da = static_cast<int>(a.depth()), db = static_cast<int>(b.depth());
    std::vector<Complex> all(a.exponents);
    all.insert(all.end(), b.exponents.begin(), b.exponents.end());
    std::vector<CompositionTerm> out;
    for (const auto &o : enumerate_compatible(Ordering::chain(1, da), Ordering::chain(da + 1, db))) {
        Composition c;
        for (const auto &block : o.blocks()) {
            Complex s = 0;
            for (int i : block)
                s += all[i - 1];
            c.exponents.push_back(s);
        }
        out.push_back({std::move(c), o, 1});
    }
    return out;
}

std::string format_composition(const Composition &c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.depth(); ++i)
        s += (i ? "," : "") + format_complex(c.exponents[i]);
    return s + ")";
}

IdentityReport verify_stuffle_numeric(const Composition &a, const Composition &b,
                                      const SeriesEvaluator &evaluator, double tol) {
    const auto ea = evaluator(a), eb = evaluator(b);
    IdentityReport r;
    r.lhs = ea.value * eb.value;
    double budget = std::abs(ea.value) * eb.abs_error_estimate + std::abs(eb.value) * ea.abs_error_estimate +
                    ea.abs_error_estimate * eb.abs_error_estimate;
    CompensatedSum rhs;
    std::string terms;
    for (const auto &t : stuffle_expand(a, b)) {
        const auto e = evaluator(t.composition);
        rhs.add(static_cast<double>(t.coefficient) * e.value);
        budget += t.coefficient * e.abs_error_estimate;
        terms += (terms.empty() ? "" : " + ") + std::string("Z") + format_composition(t.composition);
    }
    r.identity = "Z" + format_composition(a) + " * Z" + format_composition(b) + " = " + terms;
    r.rhs = rhs.value();
    r.residual = std::abs(r.lhs - r.rhs);
    r.tolerance = tol;
    r.error_budget = budget;
    r.pass = r.residual <= tol + budget;
    return r;
}

IdentityReport verify_shuffle_archimedean(Complex s1, Complex s2, const CompletedSingle &single,
                                          const CompletedIterated &iterated, double tol) {
    const auto a = single(s1), b = single(s2);
    const auto i12 = iterated(s1, s2), i21 = iterated(s2, s1);
    IdentityReport r;
    r.identity = "L(" + format_complex(s1) + ") L(" + format_complex(s2) + ") = L(" + format_complex(s1) +
                 "," + format_complex(s2) + ") + L(" + format_complex(s2) + "," + format_complex(s1) + ")";
    r.lhs = a.value * b.value;
    r.rhs = i12.value + i21.value;
    r.residual = std::abs(r.lhs - r.rhs);
    r.tolerance = tol;
    r.error_budget = std::abs(a.value) * b.abs_error_estimate + std::abs(b.value) * a.abs_error_estimate +
                     i12.abs_error_estimate + i21.abs_error_estimate;
    r.pass = r.residual <= tol + r.error_budget;
    return r;
}

} // namespace adelic
