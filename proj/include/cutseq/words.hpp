#pragma once

#include "cutseq/polygon.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <type_traits>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace cutseq {

using Letters = std::vector<Letter>;

struct FiniteWord {
    int n = 4;
    Letters letters;

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Letter operator[](size_t i) const { return letters[i]; }
    friend bool operator==(const FiniteWord& a, const FiniteWord& b) { return a.n == b.n && a.letters == b.letters; }
    friend bool operator<(const FiniteWord& a, const FiniteWord& b) { return a.letters < b.letters; }
};

// Bi-infinite periodic word stored by its primitive period in the
// lexicographically least rotation.
class PeriodicWord {
public:
    PeriodicWord() = default;
    PeriodicWord(int n, Letters period) : n_(n), period_(canonical(std::move(period))) {}

    int n() const { return n_; }
    const Letters& period() const { return period_; }
    size_t size() const { return period_.size(); }
    bool empty() const { return period_.empty(); }
    Letter at(size_t i) const { return period_[i % period_.size()]; }

    friend bool operator==(const PeriodicWord& a, const PeriodicWord& b) { return a.n_ == b.n_ && a.period_ == b.period_; }
    friend bool operator<(const PeriodicWord& a, const PeriodicWord& b)
    {
        if (a.period_.size() != b.period_.size()) return a.period_.size() < b.period_.size();
        return a.period_ < b.period_;
    }

    static Letters canonical(Letters w)
    {
        size_t m = w.size();
        if (m == 0) return w;
        for (size_t p = 1; p <= m; ++p) {
            if (m % p != 0) continue;
            bool ok = true;
            for (size_t i = p; i < m && ok; ++i) ok = w[i] == w[i - p];
            if (ok) {
                w.resize(p);
                break;
            }
        }
        Letters best = w;
        for (size_t r = 1; r < w.size(); ++r) {
            Letters rot(w.begin() + static_cast<long>(r), w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
            if (rot < best) best = std::move(rot);
        }
        return best;
    }

private:
    int n_ = 4;
    Letters period_;
};

// Piece of a bi-infinite word; truncated ends have unknown sandwich status.
struct WordWindow {
    FiniteWord word;
    bool left_truncated = true;
    bool right_truncated = true;
};

// ---- text format ------------------------------------------------------------

inline Letters parse_letters(const std::string& text, int n)
{
    Letters out;
    if (n <= 4) {
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            int v = std::toupper(static_cast<unsigned char>(c)) - 'A';
            if (v < 0 || v >= n) throw std::invalid_argument(std::string("letter out of alphabet: ") + c);
            out.push_back(static_cast<Letter>(v));
        }
        return out;
    }
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || (tok[0] != 'L' && tok[0] != 'l'))
            throw std::invalid_argument("expected L<k> token, got " + tok);
        int v = std::stoi(tok.substr(1)) - 1;
        if (v < 0 || v >= n) throw std::invalid_argument("letter out of alphabet: " + tok);
        out.push_back(static_cast<Letter>(v));
    }
    return out;
}

inline std::string format_letters(const Letters& w, int n)
{
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (n > 4 && i) s += ' ';
        s += letter_name(w[i], n);
    }
    return s;
}

inline FiniteWord make_word(const std::string& text, int n = 4) { return {n, parse_letters(text, n)}; }
inline PeriodicWord make_periodic(const std::string& text, int n = 4) { return {n, parse_letters(text, n)}; }

inline std::string to_string(const FiniteWord& w) { return format_letters(w.letters, w.n); }
inline std::string to_string(const PeriodicWord& w) { return "per:" + format_letters(w.period(), w.n()); }

using AnyWord = std::variant<FiniteWord, PeriodicWord>;

// "per:..." gives a periodic word, anything else a finite word.
inline AnyWord parse_word(const std::string& text, int n)
{
    if (text.rfind("per:", 0) == 0) return make_periodic(text.substr(4), n);
    return make_word(text, n);
}

// ---- permutations -------------------------------------------------------------

inline Letters permute(const LetterPermutation& p, const Letters& w)
{
    Letters out;
    out.reserve(w.size());
    for (Letter a : w) out.push_back(p(a));
    return out;
}
inline FiniteWord permute(const LetterPermutation& p, const FiniteWord& w) { return {w.n, permute(p, w.letters)}; }
inline PeriodicWord permute(const LetterPermutation& p, const PeriodicWord& w) { return {w.n(), permute(p, w.period())}; }
inline WordWindow permute(const LetterPermutation& p, const WordWindow& w)
{
    return {permute(p, w.word), w.left_truncated, w.right_truncated};
}

// ---- derivation ---------------------------------------------------------------

// Keeps interior letters whose two neighbours agree; both ends always go.
inline Letters derive_letters(const Letters& w)
{
    Letters out;
    for (size_t i = 1; i + 1 < w.size(); ++i)
        if (w[i - 1] == w[i + 1]) out.push_back(w[i]);
    return out;
}

inline WordWindow derive(const WordWindow& w)
{
    return {{w.word.n, derive_letters(w.word.letters)}, true, true};
}

inline PeriodicWord derive(const PeriodicWord& w)
{
    const Letters& p = w.period();
    size_t m = p.size();
    Letters out;
    for (size_t i = 0; i < m; ++i)
        if (p[(i + m - 1) % m] == p[(i + 1) % m]) out.push_back(p[i]);
    return {w.n(), out};
}

// Positions (in w) of the letters kept by derivation.
inline std::vector<size_t> sandwiched_positions(const Letters& w)
{
    std::vector<size_t> pos;
    for (size_t i = 1; i + 1 < w.size(); ++i)
        if (w[i - 1] == w[i + 1]) pos.push_back(i);
    return pos;
}

// ---- transition diagrams ------------------------------------------------------

struct TransitionDiagram {
    int n = 0;
    int index = 0;          // i for D_i, or k for the boundary diagram D_{k-1,k}
    bool boundary = false;
    std::vector<std::vector<bool>> adj;

    bool has(Letter a, Letter b) const { return adj[a][b]; }
    std::vector<std::pair<Letter, Letter>> edges() const
    {
        std::vector<std::pair<Letter, Letter>> e;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (adj[a][b]) e.emplace_back(static_cast<Letter>(a), static_cast<Letter>(b));
        return e;
    }
    size_t edge_count() const { return edges().size(); }
};

inline TransitionDiagram empty_diagram(int n)
{
    TransitionDiagram d;
    d.n = n;
    d.adj.assign(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    return d;
}

// D_0: L_j -> L_{n+1-j} for every j, and L_j -> L_{n+2-j} for j >= 2.
inline TransitionDiagram diagram_zero(int n)
{
    TransitionDiagram d = empty_diagram(n);
    for (int j = 1; j <= n; ++j) {
        d.adj[j - 1][n - j] = true;
        if (j >= 2) d.adj[j - 1][n + 1 - j] = true;
    }
    return d;
}

// D_i: the relabelling of D_0 that pi_i carries back to D_0.
inline TransitionDiagram build_diagram(int i, int n)
{
    if (n < 2) throw InvalidN(n);
    if (i < 0 || i >= 2 * n) throw IndexOutOfRange("diagram index " + std::to_string(i));
    TransitionDiagram d0 = diagram_zero(n);
    LetterPermutation inv = induced_permutation(i, n).inverse();
    TransitionDiagram d = empty_diagram(n);
    d.index = i;
    for (auto [a, b] : d0.edges()) d.adj[inv(a)][inv(b)] = true;
    return d;
}

inline const std::vector<TransitionDiagram>& all_diagrams(int n)
{
    static std::mutex mu;
    static std::map<int, std::vector<TransitionDiagram>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<TransitionDiagram> ds;
    for (int i = 0; i < 2 * n; ++i) ds.push_back(build_diagram(i, n));
    return cache.emplace(n, std::move(ds)).first->second;
}

// D_{k-1,k} = D_{k-1} intersected with D_k, indices mod 2n.
inline TransitionDiagram boundary_diagram(int k, int n)
{
    int m = 2 * n;
    const auto& ds = all_diagrams(n);
    const TransitionDiagram& a = ds[static_cast<size_t>(((k - 1) % m + m) % m)];
    const TransitionDiagram& b = ds[static_cast<size_t>((k % m + m) % m)];
    TransitionDiagram d = empty_diagram(n);
    d.index = (k % m + m) % m;
    d.boundary = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) d.adj[x][y] = a.adj[x][y] && b.adj[x][y];
    return d;
}

// ---- admissibility ------------------------------------------------------------

inline bool admissible_in(const TransitionDiagram& d, const Letters& w, bool cyclic)
{
    if (w.empty()) return true;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (!d.has(w[i], w[i + 1])) return false;
    return !cyclic || d.has(w.back(), w.front());
}

inline std::vector<int> admissible_diagrams(const Letters& w, int n, bool cyclic)
{
    std::vector<int> out;
    for (const auto& d : all_diagrams(n))
        if (admissible_in(d, w, cyclic)) out.push_back(d.index);
    return out;
}
inline std::vector<int> admissible_diagrams(const FiniteWord& w) { return admissible_diagrams(w.letters, w.n, false); }
inline std::vector<int> admissible_diagrams(const WordWindow& w) { return admissible_diagrams(w.word); }
inline std::vector<int> admissible_diagrams(const PeriodicWord& w) { return admissible_diagrams(w.period(), w.n(), true); }

struct Inadmissible : std::domain_error {
    Inadmissible() : std::domain_error("word is admissible in no diagram") {}
};
struct Ambiguous : std::domain_error {
    std::vector<int> candidates;
    explicit Ambiguous(std::vector<int> c) : std::domain_error("word is admissible in several diagrams"), candidates(std::move(c)) {}
};

template <class W>
struct NormalForm {
    W word;
    int diagram;
};

// pi_i . w, with i the unique admissible diagram unless given explicitly.
template <class W>
NormalForm<W> normal_form(const W& w, std::optional<int> diagram = std::nullopt)
{
    int n;
    if constexpr (std::is_same_v<W, PeriodicWord>)
        n = w.n();
    else if constexpr (std::is_same_v<W, WordWindow>)
        n = w.word.n;
    else
        n = w.n;
    int i;
    if (diagram) {
        i = *diagram;
    } else {
        auto ds = admissible_diagrams(w);
        if (ds.empty()) throw Inadmissible();
        if (ds.size() > 1) throw Ambiguous(ds);
        i = ds.front();
    }
    return {permute(induced_permutation(i, n), w), i};
}

// ---- factors ------------------------------------------------------------------

inline std::set<Letters> factor_set(const Letters& w, size_t len, bool cyclic = false)
{
    std::set<Letters> out;
    if (len == 0 || w.empty()) return out;
    if (!cyclic) {
        for (size_t i = 0; i + len <= w.size(); ++i)
            out.emplace(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + len));
        return out;
    }
    for (size_t i = 0; i < w.size(); ++i) {
        Letters f;
        for (size_t k = 0; k < len; ++k) f.push_back(w[(i + k) % w.size()]);
        out.insert(std::move(f));
    }
    return out;
}
inline std::set<Letters> factor_set(const FiniteWord& w, size_t len) { return factor_set(w.letters, len); }
inline size_t factor_count(const FiniteWord& w, size_t len) { return factor_set(w, len).size(); }

// counts[l] = number of distinct factors of length l, for l = 0..max_len,
// via a trie of all length-max_len windows.
inline std::vector<size_t> factor_counts(const Letters& w, int n, size_t max_len)
{
    std::vector<size_t> counts(max_len + 1, 0);
    counts[0] = 1;
    std::vector<std::vector<int>> trie(1, std::vector<int>(static_cast<size_t>(n), -1));
    for (size_t i = 0; i < w.size(); ++i) {
        int node = 0;
        for (size_t k = 0; k < max_len && i + k < w.size(); ++k) {
            int child = trie[static_cast<size_t>(node)][w[i + k]];
            if (child < 0) {
                child = static_cast<int>(trie.size());
                trie[static_cast<size_t>(node)][w[i + k]] = child;
                trie.emplace_back(static_cast<size_t>(n), -1);
                ++counts[k + 1];
            }
            node = child;
        }
    }
    return counts;
}

} // namespace cutseq
