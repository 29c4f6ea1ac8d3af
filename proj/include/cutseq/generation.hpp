#pragma once

#include "cutseq/farey.hpp"
#include "cutseq/words.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace cutseq {

struct SynthesisFailure : std::logic_error {
    explicit SynthesisFailure(const std::string& w) : std::logic_error("interpolation synthesis failed: " + w) {}
};

struct InadmissibleInput : std::domain_error {
    explicit InadmissibleInput(const std::string& w) : std::domain_error(w) {}
};

// group[L] is the letter that must sandwich L. Group l uses pi_up on
// L_1..L_{n-l} and pi_right on the rest.
using SandwichGroup = std::vector<Letter>;

inline SandwichGroup sandwich_group(int l, int n)
{
    if (l < 0 || l >= n) throw IndexOutOfRange("group index " + std::to_string(l));
    LetterPermutation up = pi_up(n), right = pi_right(n);
    SandwichGroup g;
    for (int j = 1; j <= n; ++j) g.push_back(j <= n - l ? up(static_cast<Letter>(j - 1)) : right(static_cast<Letter>(j - 1)));
    return g;
}

struct InterpolationTable {
    int n = 0;
    std::map<std::tuple<int, Letter, Letter>, Letters> words;

    const Letters& at(int k, Letter a, Letter b) const
    {
        auto it = words.find({k, a, b});
        if (it == words.end()) throw InadmissibleInput("transition not in diagram " + std::to_string(k));
        return it->second;
    }
};

namespace detail {

// All words x such that a x b is a path in D_0, no letter of x is
// sandwiched inside a x b, and a, b are sandwiched as group g demands
// once the neighbouring interpolations are in place.
inline std::vector<Letters> interpolation_candidates(const TransitionDiagram& d0, const SandwichGroup& g, Letter a,
                                                     Letter b)
{
    std::vector<Letters> found;
    const size_t max_len = static_cast<size_t>(4 * d0.n);
    Letters path{a};
    auto dfs = [&](auto&& self) -> void {
        Letter last = path.back();
        if (d0.has(last, b)) {
            Letters full = path;
            full.push_back(b);
            bool ok = full[1] == g[a] && full[full.size() - 2] == g[b];
            for (size_t t = 1; ok && t + 1 < full.size(); ++t) ok = full[t - 1] != full[t + 1];
            if (ok) found.emplace_back(full.begin() + 1, full.end() - 1);
        }
        if (path.size() > max_len) return;
        for (int c = 0; c < d0.n; ++c) {
            if (!d0.has(last, static_cast<Letter>(c))) continue;
            if (path.size() == 1 && c != g[a]) continue;
            if (path.size() >= 2 && path[path.size() - 2] == c) continue; // would sandwich `last`
            path.push_back(static_cast<Letter>(c));
            self(self);
            path.pop_back();
        }
    };
    dfs(dfs);
    return found;
}

} // namespace detail

// For each diagram k = 1..2n-1 and each edge of D_k, the unique sandwich-free
// path in D_0 whose endpoints are sandwiched according to group floor(k/2).
inline InterpolationTable synthesize_table(int n)
{
    if (n < 3) throw InvalidN(n);
    InterpolationTable tab;
    tab.n = n;
    TransitionDiagram d0 = diagram_zero(n);
    for (int k = 1; k < 2 * n; ++k) {
        SandwichGroup g = sandwich_group(k / 2, n);
        for (auto [a, b] : build_diagram(k, n).edges()) {
            auto c = detail::interpolation_candidates(d0, g, a, b);
            if (c.size() != 1)
                throw SynthesisFailure("diagram " + std::to_string(k) + " edge " + letter_name(a, n) +
                                       letter_name(b, n) + ": " + std::to_string(c.size()) + " candidates");
            tab.words[{k, a, b}] = c.front();
        }
    }
    return tab;
}

inline const InterpolationTable& interpolation_table(int n)
{
    static std::mutex mu;
    static std::map<int, InterpolationTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    return cache.emplace(n, synthesize_table(n)).first->second;
}

namespace detail {

inline void check_generation_args(int k, int i, int n)
{
    if (k < 1 || k >= 2 * n) throw IndexOutOfRange("source diagram must be in 1..2n-1");
    if (i < 0 || i >= 2 * n) throw IndexOutOfRange("target diagram must be in 0..2n-1");
}

} // namespace detail

// g_{k->i}: interpolate with diagram k's words, then relabel by pi_i^{-1}.
inline FiniteWord generate(int k, int i, const FiniteWord& w)
{
    detail::check_generation_args(k, i, w.n);
    const auto& tab = interpolation_table(w.n);
    if (!admissible_in(all_diagrams(w.n)[static_cast<size_t>(k)], w.letters, false))
        throw InadmissibleInput(to_string(w) + " is not admissible in diagram " + std::to_string(k));
    Letters out;
    for (size_t t = 0; t < w.size(); ++t) {
        out.push_back(w[t]);
        if (t + 1 < w.size()) {
            const Letters& x = tab.at(k, w[t], w[t + 1]);
            out.insert(out.end(), x.begin(), x.end());
        }
    }
    return {w.n, permute(induced_permutation(i, w.n).inverse(), out)};
}

inline PeriodicWord generate(int k, int i, const PeriodicWord& w)
{
    int n = w.n();
    detail::check_generation_args(k, i, n);
    const auto& tab = interpolation_table(n);
    if (!admissible_in(all_diagrams(n)[static_cast<size_t>(k)], w.period(), true))
        throw InadmissibleInput(to_string(w) + " is not admissible in diagram " + std::to_string(k));
    Letters out;
    for (size_t t = 0; t < w.size(); ++t) {
        out.push_back(w.at(t));
        const Letters& x = tab.at(k, w.at(t), w.at(t + 1));
        out.insert(out.end(), x.begin(), x.end());
    }
    return {n, permute(induced_permutation(i, n).inverse(), out)};
}

// P_k: words of period 1 or 2 running on D_{k-1,k} or D_{k,k+1}.
inline std::vector<PeriodicWord> periodic_seeds(int k, int n)
{
    if (k < 0 || k >= 2 * n) throw IndexOutOfRange("seed index " + std::to_string(k));
    std::set<PeriodicWord> s;
    for (const auto& e : {boundary_diagram(k, n), boundary_diagram(k + 1, n)}) {
        for (int a = 0; a < n; ++a) {
            if (e.has(static_cast<Letter>(a), static_cast<Letter>(a))) s.insert(PeriodicWord(n, {static_cast<Letter>(a)}));
            for (int b = a + 1; b < n; ++b)
                if (e.has(static_cast<Letter>(a), static_cast<Letter>(b)) && e.has(static_cast<Letter>(b), static_cast<Letter>(a)))
                    s.insert(PeriodicWord(n, {static_cast<Letter>(a), static_cast<Letter>(b)}));
        }
    }
    return {s.begin(), s.end()};
}

inline void check_family_prefix(const std::vector<int>& prefix, int n)
{
    if (prefix.empty()) throw InvalidPrefix("empty prefix");
    Expansion e{prefix, std::nullopt};
    if (!e.in_s_star(n)) throw InvalidPrefix("S* violated");
}

// g(s_1->s_0, g(s_2->s_1, ... g(s_k->s_{k-1}, u))) for every seed u.
template <class W>
std::vector<W> build_family(const std::vector<int>& prefix, const std::vector<W>& seeds, int n)
{
    check_family_prefix(prefix, n);
    std::set<W> cur(seeds.begin(), seeds.end());
    for (size_t j = prefix.size() - 1; j >= 1; --j) {
        std::set<W> next;
        for (const auto& u : cur) next.insert(generate(prefix[j], prefix[j - 1], u));
        cur = std::move(next);
    }
    return {cur.begin(), cur.end()};
}

// P(s_0, ..., s_k)
inline std::vector<PeriodicWord> periodic_family(const std::vector<int>& prefix, int n)
{
    check_family_prefix(prefix, n);
    return build_family(prefix, periodic_seeds(prefix.back(), n), n);
}

struct FactorEnumeration {
    std::set<Letters> factors;
    int depth = 0;              // deepest family used
    std::vector<int> itinerary; // prefix used
};

// Length-len factors of the words of P(s_0..s_d), s the itinerary of the
// direction. Shallow families can carry factors foreign to the direction, so
// only the deepest family counts. Without an explicit depth, d grows until
// the factor set is the same for three consecutive depths.
inline FactorEnumeration enumerate_factors(const std::vector<int>& itin, int n, size_t len, std::optional<int> depth,
                                           size_t max_word_length = 20'000'000)
{
    if (len < 1) throw std::invalid_argument("factor length must be positive");
    FactorEnumeration out;
    int last_d = depth ? *depth : static_cast<int>(itin.size()) - 1;
    if (last_d >= static_cast<int>(itin.size())) throw std::invalid_argument("itinerary shorter than depth");
    int stable = 0;
    for (int d = depth ? *depth : 0; d <= last_d; ++d) {
        std::vector<int> pre(itin.begin(), itin.begin() + d + 1);
        std::set<Letters> fs;
        size_t total = 0;
        for (const auto& u : periodic_family(pre, n)) {
            auto f = factor_set(u.period(), len, true);
            fs.insert(f.begin(), f.end());
            total += u.size();
        }
        stable = (d > 0 && fs == out.factors) ? stable + 1 : 0;
        out.factors = std::move(fs);
        out.depth = d;
        if (depth || stable >= 2 || total > max_word_length) break;
    }
    out.itinerary.assign(itin.begin(), itin.begin() + out.depth + 1);
    return out;
}

// An exact terminating direction stops at the family of the step that lands
// on the fixed point; deeper families belong to nearby directions.
inline FactorEnumeration enumerate_factors(const ProjectiveDirection& d, int n, size_t len, std::optional<int> depth)
{
    if (!depth && d.is_exact() && scalar_traits<Q2>::supports(n)) {
        auto rep = is_terminating(d, n, 60);
        if (rep.terminating) depth = rep.depth;
    }
    int need = depth ? *depth + 1 : 40;
    return enumerate_factors(itinerary(d, n, need), n, len, depth);
}

} // namespace cutseq
