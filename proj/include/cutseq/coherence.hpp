#pragma once

#include "cutseq/farey.hpp"
#include "cutseq/generation.hpp"
#include "cutseq/words.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutseq {

// profile[L] = letters seen sandwiching L
using SandwichProfile = std::vector<std::set<Letter>>;

namespace detail {

inline const Letters& letters_of(const WordWindow& w) { return w.word.letters; }
inline const Letters& letters_of(const PeriodicWord& w) { return w.period(); }
inline int n_of(const WordWindow& w) { return w.word.n; }
inline int n_of(const PeriodicWord& w) { return w.n(); }
inline bool cyclic_of(const WordWindow&) { return false; }
inline bool cyclic_of(const PeriodicWord&) { return true; }

} // namespace detail

inline SandwichProfile sandwich_profile(const Letters& w, int n, bool cyclic)
{
    SandwichProfile p(static_cast<size_t>(n));
    size_t m = w.size();
    if (cyclic) {
        for (size_t i = 0; i < m; ++i)
            if (w[(i + m - 1) % m] == w[(i + 1) % m]) p[w[i]].insert(w[(i + 1) % m]);
        return p;
    }
    for (size_t i = 1; i + 1 < m; ++i)
        if (w[i - 1] == w[i + 1]) p[w[i]].insert(w[i + 1]);
    return p;
}

template <class W>
SandwichProfile sandwich_profile(const W& w)
{
    return sandwich_profile(detail::letters_of(w), detail::n_of(w), detail::cyclic_of(w));
}

// Groups l whose prescription agrees with every observed sandwich.
inline std::vector<int> fitting_groups(const SandwichProfile& p, int n)
{
    std::vector<int> out;
    for (int l = 0; l < n; ++l) {
        SandwichGroup g = sandwich_group(l, n);
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (Letter s : p[static_cast<size_t>(a)]) ok = ok && s == g[static_cast<size_t>(a)];
        if (ok) out.push_back(l);
    }
    return out;
}

enum class Condition { C0, C1, C2, C3 };

inline const char* to_string(Condition c)
{
    switch (c) {
    case Condition::C0: return "C0";
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    default: return "C3";
    }
}

struct CoherenceVerdict {
    bool accepted = false;
    std::optional<Condition> reason;
    std::vector<int> groups; // groups fitting the sandwich profile of pi_i . w
};

// (C0) w admissible in D_i; (C1) the sandwiches of pi_i . w follow one group
// G_l; (C2) the derived word is admissible in D_j; (C3) l = floor(j/2).
// On windows only interior letters count. A periodic word with nothing
// sandwiched has no bi-infinite derived word and fails C2.
template <class W>
CoherenceVerdict check_coherent(const W& w, int i, int j)
{
    int n = detail::n_of(w);
    if (i < 0 || i >= 2 * n || j < 1 || j >= 2 * n) throw IndexOutOfRange("coherence pair out of range");
    CoherenceVerdict v;
    const auto& ds = all_diagrams(n);
    if (!admissible_in(ds[static_cast<size_t>(i)], detail::letters_of(w), detail::cyclic_of(w))) {
        v.reason = Condition::C0;
        return v;
    }
    W u = permute(induced_permutation(i, n), w);
    v.groups = fitting_groups(sandwich_profile(u), n);
    if (v.groups.empty()) {
        v.reason = Condition::C1;
        return v;
    }
    W d = derive(u);
    if ((detail::cyclic_of(w) && detail::letters_of(d).empty()) ||
        !admissible_in(ds[static_cast<size_t>(j)], detail::letters_of(d), detail::cyclic_of(w))) {
        v.reason = Condition::C2;
        return v;
    }
    bool c3 = false;
    for (int l : v.groups) c3 = c3 || l == j / 2;
    if (!c3) {
        v.reason = Condition::C3;
        return v;
    }
    v.accepted = true;
    return v;
}

struct NotCoherent : std::domain_error {
    NotCoherent() : std::domain_error("word is not coherent: no generation decomposition") {}
};

template <class W>
struct Decomposition {
    std::vector<int> diagrams; // every j with w = g(j -> i, v)
    W derived;                 // v = (pi_i . w)'
    int j() const { return diagrams.front(); }
};

// Writes w as g(j -> i, v) with v = (pi_i . w)', by regenerating from v and
// comparing. On a window the comparison covers the stretch from the letter
// before the first sandwiched letter to the letter after the last one.
template <class W>
Decomposition<W> decompose_generation(const W& w, int i)
{
    int n = detail::n_of(w);
    if (i < 0 || i >= 2 * n) throw IndexOutOfRange("diagram index");
    const auto& ds = all_diagrams(n);
    Decomposition<W> out;
    if (!admissible_in(ds[static_cast<size_t>(i)], detail::letters_of(w), detail::cyclic_of(w))) throw NotCoherent();
    W u = permute(induced_permutation(i, n), w);
    out.derived = derive(u);
    const Letters& v = detail::letters_of(out.derived);
    for (int j = 1; j < 2 * n; ++j) {
        if (!admissible_in(ds[static_cast<size_t>(j)], v, detail::cyclic_of(w))) continue;
        bool match;
        if constexpr (std::is_same_v<W, PeriodicWord>) {
            match = !v.empty() && generate(j, 0, out.derived) == u;
        } else {
            const Letters& ul = u.word.letters;
            auto pos = sandwiched_positions(ul);
            if (pos.empty()) {
                match = true;
            } else {
                SandwichGroup g = sandwich_group(j / 2, n);
                Letters expect{g[v.front()]};
                Letters core = generate(j, 0, out.derived.word).letters;
                expect.insert(expect.end(), core.begin(), core.end());
                expect.push_back(g[v.back()]);
                Letters seen(ul.begin() + static_cast<long>(pos.front() - 1), ul.begin() + static_cast<long>(pos.back() + 2));
                match = seen == expect;
            }
        }
        if (match) out.diagrams.push_back(j);
    }
    if (out.diagrams.empty()) throw NotCoherent();
    return out;
}

enum class Halt { None, WindowExhausted, Inadmissible, Ambiguous };

inline const char* to_string(Halt h)
{
    switch (h) {
    case Halt::None: return "none";
    case Halt::WindowExhausted: return "window_exhausted";
    case Halt::Inadmissible: return "inadmissible";
    default: return "ambiguous";
    }
}

template <class W>
struct RenormalizationTrace {
    std::vector<W> words;       // w_0, w_1, ...
    std::vector<int> diagrams;  // d_k
    std::vector<W> normalized;  // pi_{d_k} . w_k
    Halt halt = Halt::None;
    std::vector<int> candidates; // admissible diagrams at an ambiguous halt
    int depth() const { return static_cast<int>(diagrams.size()); }
};

// w_{k+1} = (pi_{d_k} . w_k)' with d_k the unique admissible diagram
// (0 excluded after the first step). Stops after max_depth diagrams or at
// the first step that cannot be decided.
template <class W>
RenormalizationTrace<W> renormalize(const W& w, int max_depth, std::optional<int> start = std::nullopt)
{
    int n = detail::n_of(w);
    RenormalizationTrace<W> tr;
    W cur = w;
    for (int k = 0; k < max_depth; ++k) {
        tr.words.push_back(cur);
        const Letters& l = detail::letters_of(cur);
        if (l.empty() || (!detail::cyclic_of(cur) && l.size() < 2)) {
            tr.halt = Halt::WindowExhausted;
            return tr;
        }
        std::vector<int> ds = admissible_diagrams(cur);
        if (k > 0) std::erase(ds, 0);
        int d;
        if (k == 0 && start) {
            if (std::find(ds.begin(), ds.end(), *start) == ds.end()) {
                tr.halt = Halt::Inadmissible;
                return tr;
            }
            d = *start;
        } else if (ds.empty()) {
            tr.halt = Halt::Inadmissible;
            return tr;
        } else if (ds.size() > 1) {
            tr.halt = Halt::Ambiguous;
            tr.candidates = ds;
            return tr;
        } else {
            d = ds.front();
        }
        tr.diagrams.push_back(d);
        W u = permute(induced_permutation(d, n), cur);
        tr.normalized.push_back(u);
        cur = derive(u);
    }
    return tr;
}

// For periodic words, where ambiguity is expected: every diagram sequence
// of the given length obtained by branching at each ambiguous step.
inline std::vector<std::vector<int>> periodic_branches(const PeriodicWord& w, int depth, std::optional<int> start,
                                                       size_t max_branches = 64)
{
    std::vector<std::vector<int>> out;
    auto rec = [&](auto&& self, const PeriodicWord& cur, std::vector<int>& seq) -> void {
        if (out.size() >= max_branches) return;
        if (static_cast<int>(seq.size()) == depth) {
            out.push_back(seq);
            return;
        }
        if (cur.empty()) return;
        std::vector<int> ds = admissible_diagrams(cur);
        if (!seq.empty()) std::erase(ds, 0);
        if (seq.empty() && start) ds = std::find(ds.begin(), ds.end(), *start) != ds.end() ? std::vector<int>{*start} : std::vector<int>{};
        for (int d : ds) {
            seq.push_back(d);
            self(self, derive(permute(induced_permutation(d, cur.n()), cur)), seq);
            seq.pop_back();
        }
    };
    std::vector<int> seq;
    rec(rec, w, seq);
    return out;
}

struct InsufficientWindow : std::domain_error {
    InsufficientWindow() : std::domain_error("window too short for the requested depth") {}
};
struct AmbiguousDiagram : std::domain_error {
    std::vector<int> candidates;
    explicit AmbiguousDiagram(std::vector<int> c)
        : std::domain_error("admissible diagram not unique"), candidates(std::move(c)) {}
};

// Cylinder of directions compatible with the first max_depth diagrams.
template <class T>
SectorInterval<T> recognize_direction(const WordWindow& w, int max_depth)
{
    auto tr = renormalize(w, max_depth);
    switch (tr.halt) {
    case Halt::WindowExhausted: throw InsufficientWindow();
    case Halt::Ambiguous: throw AmbiguousDiagram(tr.candidates);
    case Halt::Inadmissible: throw Inadmissible();
    default: break;
    }
    return sector_interval<T>(tr.diagrams, w.word.n);
}

} // namespace cutseq
