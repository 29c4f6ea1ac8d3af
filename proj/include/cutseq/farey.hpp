#pragma once

#include "cutseq/polygon.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutseq {

struct InvalidPrefix : std::invalid_argument {
    explicit InvalidPrefix(const std::string& w) : std::invalid_argument("invalid expansion prefix: " + w) {}
};

// Branch i of the Farey map: gamma_n * nu_i on the closed sector i.
template <class T>
Mat2<T> farey_branch(int i, int n)
{
    return veech_elements<T>(n).gamma * isometry_nu<T>(i, n);
}

// Index of the half-open sector [i pi/2n, (i+1) pi/2n) holding d; the last
// sector is closed.
template <class T>
int sector_of(const Dir<T>& d, int n)
{
    for (int i = 2 * n - 1; i > 0; --i)
        if (angle_dir<T>(i, 2 * n) <= d) return i;
    return 0;
}

template <class T>
struct FareyStep {
    Dir<T> image;
    int sector;
};

template <class T>
FareyStep<T> farey_apply(const Dir<T>& d, int n)
{
    int i = sector_of(d, n);
    Dir<T> img = apply(farey_branch<T>(i, n), d);
    if constexpr (!scalar_traits<T>::exact) {
        // The range is [pi/2n, pi]. A rounded image just past pi wraps to a
        // tiny angle after canonicalisation; one just under pi/2n is rounding.
        Dir<T> lo = angle_dir<T>(1, 2 * n);
        if (img < lo) img = (img < angle_dir<T>(1, 4 * n)) ? Dir<T>::pi_angle() : lo;
    }
    return {img, i};
}

inline FareyStep<Real> farey_apply(const ProjectiveDirection& d, int n)
{
    return farey_apply(d.real_dir(), n);
}

template <class T>
std::vector<int> itinerary(Dir<T> d, int n, int depth)
{
    std::vector<int> s;
    for (int k = 0; k < depth; ++k) {
        auto st = farey_apply(d, n);
        s.push_back(st.sector);
        d = st.image;
    }
    return s;
}

// Exact for the octagon (and square), floating otherwise.
inline std::vector<int> itinerary(const ProjectiveDirection& d, int n, int depth)
{
    if (d.is_exact() && scalar_traits<Q2>::supports(n)) return itinerary(d.exact_dir(), n, depth);
    return itinerary(d.real_dir(), n, depth);
}

// A sector sequence (s_0, s_1, ...): the listed entries, then optionally a
// constant tail repeated forever.
struct Expansion {
    std::vector<int> entries;
    std::optional<int> tail;

    bool in_s_star(int n) const
    {
        for (size_t k = 0; k < entries.size(); ++k) {
            if (entries[k] < 0 || entries[k] >= 2 * n) return false;
            if (entries[k] == 0 && k != 0) return false;
        }
        if (tail && (*tail <= 0 || *tail >= 2 * n)) return false;
        return true;
    }

    // Constraints on eventually-constant sequences: a tail of 1s follows an
    // odd entry, a tail of (2n-1)s an even one. A sequence that is constant
    // from the start is allowed, and so is (0; 2n-1, 2n-1, ...), which is
    // the itinerary of theta = 0.
    bool is_sector_sequence(int n) const
    {
        if (!in_s_star(n)) return false;
        std::vector<int> s = entries;
        std::optional<int> t = tail;
        if (!t) {
            // a finite prefix constrains nothing beyond S*
            return true;
        }
        if (*t != 1 && *t != 2 * n - 1) return true;
        while (!s.empty() && s.back() == *t) s.pop_back();
        if (s.empty()) return true;
        int p = s.back();
        if (*t == 1) return p % 2 == 1;
        if (p == 0) return s.size() == 1;
        return p % 2 == 0;
    }
};

template <class T>
struct SectorInterval {
    Dir<T> lo, hi;
    std::vector<int> prefix;

    bool contains(const Dir<T>& d) const { return lo <= d && d <= hi; }
    bool is_point() const { return lo == hi; }
    Real width() const { return hi.theta() - lo.theta(); }
};

// F_i^{-1} applied to an angle in [pi/2n, pi], landing in the closed sector i.
template <class T>
Dir<T> inverse_branch(int i, int n, const Dir<T>& d)
{
    return apply(farey_branch<T>(i, n).inverse(), d);
}

template <class T>
Dir<T> pull_back(const std::vector<int>& prefix, int n, Dir<T> d)
{
    for (size_t k = prefix.size(); k-- > 0;) d = inverse_branch<T>(prefix[k], n, d);
    return d;
}

// The closed cylinder F_{s_0}^{-1} ... F_{s_k}^{-1} [0, pi].
template <class T>
SectorInterval<T> sector_interval(const std::vector<int>& prefix, int n)
{
    Expansion e{prefix, std::nullopt};
    if (prefix.empty() || !e.in_s_star(n)) throw InvalidPrefix("S* violated or empty");
    // every branch maps onto [pi/2n, pi]
    std::vector<int> rest(prefix.begin(), prefix.end() - 1);
    Dir<T> a = pull_back(rest, n, angle_dir<T>(prefix.back(), 2 * n));
    Dir<T> b = pull_back(rest, n, angle_dir<T>(prefix.back() + 1, 2 * n));
    if (b < a) std::swap(a, b);
    return {a, b, prefix};
}

// The fixed point of the constant branch 1 (angle pi/2n) or 2n-1 (angle pi).
template <class T>
Dir<T> tail_fixed_point(int tail, int n)
{
    if (tail == 1) return angle_dir<T>(1, 2 * n);
    if (tail == 2 * n - 1) return Dir<T>::pi_angle();
    throw InvalidPrefix("only constant 1 or 2n-1 tails have a fixed point");
}

// Cylinder of the first `depth` entries, or the exact point when the
// expansion ends in a constant 1 or 2n-1 tail.
template <class T>
SectorInterval<T> direction_from_expansion(const Expansion& s, int depth, int n)
{
    if (!s.in_s_star(n)) throw InvalidPrefix("S* violated");
    if (s.tail) {
        Dir<T> p = pull_back(s.entries, n, tail_fixed_point<T>(*s.tail, n));
        std::vector<int> pre = s.entries;
        return {p, p, pre};
    }
    std::vector<int> pre(s.entries.begin(), s.entries.begin() + std::min<long>(depth, static_cast<long>(s.entries.size())));
    return sector_interval<T>(pre, n);
}

struct TerminationReport {
    bool terminating = false;
    bool proof = false;       // exact landing on a fixed point
    int depth = 0;            // steps taken before landing (exact) or sampled
    int tail = 0;             // 1 or 2n-1 when terminating
    std::vector<int> itinerary;
};

// Exact mode: iterate until the orbit lands on a fixed point. Floating mode:
// heuristic, the last ten sampled entries all 1 or all 2n-1 with the orbit
// ending within 1e-6 rad of the matching fixed point.
inline TerminationReport is_terminating(const ProjectiveDirection& d, int n, int max_depth)
{
    TerminationReport r;
    if (d.is_exact() && scalar_traits<Q2>::supports(n)) {
        Dir<Q2> x = d.exact_dir();
        Dir<Q2> f1 = tail_fixed_point<Q2>(1, n), f7 = tail_fixed_point<Q2>(2 * n - 1, n);
        for (int k = 0; k <= max_depth; ++k) {
            if (x == f1 || x == f7) {
                r.terminating = r.proof = true;
                r.depth = k;
                r.tail = x == f1 ? 1 : 2 * n - 1;
                int fill = 10;
                for (int j = 0; j < fill; ++j) r.itinerary.push_back(r.tail);
                return r;
            }
            if (k == max_depth) break;
            auto st = farey_apply(x, n);
            r.itinerary.push_back(st.sector);
            x = st.image;
        }
        r.depth = max_depth;
        return r;
    }
    // A run of 1s or (2n-1)s is also what a generic orbit does while it
    // drifts past a neutral fixed point, so the orbit must also end close
    // to that point.
    Dir<Real> x = d.real_dir();
    for (int k = 0; k < max_depth; ++k) {
        auto st = farey_apply(x, n);
        r.itinerary.push_back(st.sector);
        x = st.image;
    }
    r.depth = max_depth;
    const int window = 10;
    const Real near = 1e-6L;
    if (static_cast<int>(r.itinerary.size()) >= window) {
        int last = r.itinerary.back();
        bool constant = last == 1 || last == 2 * n - 1;
        for (int j = 0; j < window && constant; ++j) constant = r.itinerary[r.itinerary.size() - 1 - static_cast<size_t>(j)] == last;
        if (constant && std::fabs(x.theta() - tail_fixed_point<Real>(last, n).theta()) < near) {
            r.terminating = true;
            r.tail = last;
        }
    }
    return r;
}

// ---- square warm-up -------------------------------------------------------------

template <class T>
T square_farey(const T& t)
{
    if (t < T(0) || t > T(1)) throw std::domain_error("square Farey map needs 0 <= t <= 1");
    if (t * 2 <= T(1)) return t / (T(1) - t);
    return (T(1) - t) / t;
}

inline Real square_t(Real theta) { return std::sin(theta) / (std::cos(theta) + std::sin(theta)); }

// Square derivation: with no AA, drop one B from every block of Bs; with no
// BB, drop one A from every block of As.
inline std::string square_derive(const std::string& w)
{
    bool has_aa = w.find("AA") != std::string::npos;
    bool has_bb = w.find("BB") != std::string::npos;
    if (has_aa && has_bb) throw std::domain_error("word is not admissible on the square");
    char drop = has_aa ? 'A' : 'B';
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        bool block_start = w[i] == drop && (i == 0 || w[i - 1] != drop);
        if (!block_start) out += w[i];
    }
    return out;
}

} // namespace cutseq
