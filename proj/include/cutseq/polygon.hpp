#pragma once

#include "cutseq/geometry.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutseq {

struct InvalidN : std::invalid_argument {
    explicit InvalidN(int n) : std::invalid_argument("invalid side-pair count n = " + std::to_string(n)) {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

using Letter = unsigned char;

// Letter names: A..D when n <= 4, otherwise L1..Ln.
inline std::string letter_name(Letter l, int n)
{
    if (n <= 4) return std::string(1, static_cast<char>('A' + l));
    return "L" + std::to_string(l + 1);
}

// Regular 2n-gon with unit sides, centred at the origin, vertices clockwise
// from O_1 with O_1O_2 the top horizontal side. Side k joins vertex k and
// k+1 (0-based) and carries letter k mod n.
template <class T>
struct Polygon {
    int n = 0;
    std::vector<Vec2<T>> vertices;

    int sides() const { return 2 * n; }
    const Vec2<T>& vertex(int k) const { return vertices[static_cast<size_t>(((k % sides()) + sides()) % sides())]; }
    Vec2<T> edge(int k) const { return vertex(k + 1) - vertex(k); }
    Vec2<T> midpoint_twice(int k) const { return vertex(k) + vertex(k + 1); }
    Letter label(int k) const { return static_cast<Letter>(k % n); }
    int opposite(int k) const { return (k + n) % sides(); }
    // Translation carrying side k onto its partner.
    Vec2<T> pairing_translation(int k) const { return Vec2<T>{T(0), T(0)} - midpoint_twice(k); }
    // Clockwise orientation: the outward normal of edge e is (-e.y, e.x).
    Vec2<T> outward_normal(int k) const
    {
        Vec2<T> e = edge(k);
        return {-e.y, e.x};
    }
    bool strictly_inside(const Vec2<T>& p) const
    {
        for (int k = 0; k < sides(); ++k)
            if (scalar_traits<T>::sign(cross(edge(k), p - vertex(k))) >= 0) return false;
        return true;
    }
};

template <class T>
Polygon<T> build_polygon(int n)
{
    using S = scalar_traits<T>;
    if (n < 2) throw InvalidN(n);
    if (!S::supports(n)) throw std::domain_error("exact coordinates need n in {2, 4}");
    Polygon<T> p;
    p.n = n;
    T half = T(1) / T(2);
    T apothem = S::cot_pi(1, 2 * n) * half;
    Vec2<T> cur{-half, apothem};
    p.vertices.push_back(cur);
    for (int k = 0; k + 1 < 2 * n; ++k) {
        cur = cur + Vec2<T>{S::cos_pi(-k, n), S::sin_pi(-k, n)};
        p.vertices.push_back(cur);
    }
    return p;
}

struct LetterPermutation {
    std::vector<Letter> map; // map[a] = image of letter a

    static LetterPermutation identity(int n)
    {
        LetterPermutation p;
        for (int i = 0; i < n; ++i) p.map.push_back(static_cast<Letter>(i));
        return p;
    }
    int n() const { return static_cast<int>(map.size()); }
    Letter operator()(Letter a) const { return map[a]; }
    LetterPermutation inverse() const
    {
        LetterPermutation q;
        q.map.resize(map.size());
        for (size_t a = 0; a < map.size(); ++a) q.map[map[a]] = static_cast<Letter>(a);
        return q;
    }
    // (p * q)(a) = p(q(a))
    friend LetterPermutation operator*(const LetterPermutation& p, const LetterPermutation& q)
    {
        LetterPermutation r;
        for (Letter a : q.map) r.map.push_back(p.map[a]);
        return r;
    }
    friend bool operator==(const LetterPermutation& a, const LetterPermutation& b) { return a.map == b.map; }
    bool is_bijection() const
    {
        std::vector<bool> seen(map.size(), false);
        for (Letter a : map) {
            if (a >= map.size() || seen[a]) return false;
            seen[a] = true;
        }
        return true;
    }
    std::string cycles() const
    {
        int n = this->n();
        std::vector<bool> done(map.size(), false);
        std::string out;
        for (int a = 0; a < n; ++a) {
            if (done[a] || map[a] == a) continue;
            std::string c = "(";
            int b = a;
            bool first = true;
            while (!done[b]) {
                done[b] = true;
                if (!first && n > 4) c += " ";
                c += letter_name(static_cast<Letter>(b), n);
                first = false;
                b = map[b];
            }
            out += c + ")";
        }
        return out.empty() ? "Id" : out;
    }
};

template <class T>
Mat2<T> isometry_nu(int i, int n)
{
    using S = scalar_traits<T>;
    if (n < 2) throw InvalidN(n);
    if (i < 0 || i >= 2 * n) throw IndexOutOfRange("sector index " + std::to_string(i));
    Mat2<T> alpha{T(1), T(0), T(0), T(-1)};
    T c = S::cos_pi(1, n), s = S::sin_pi(1, n);
    Mat2<T> beta{c, s, s, -c};
    Mat2<T> step = (i % 2 == 0) ? alpha * beta : beta * alpha;
    Mat2<T> m = Mat2<T>::identity();
    for (int k = 0; k < i / 2; ++k) m = m * step;
    if (i % 2 == 1) m = m * beta;
    return m;
}

template <class T>
LetterPermutation induced_permutation_with(int i, int n)
{
    Polygon<T> poly = build_polygon<T>(n);
    Mat2<T> m = isometry_nu<T>(i, n);
    LetterPermutation p;
    for (int k = 0; k < n; ++k) {
        Vec2<T> img = m(poly.midpoint_twice(k));
        int found = -1;
        for (int j = 0; j < poly.sides(); ++j) {
            Vec2<T> d = img - poly.midpoint_twice(j);
            bool hit;
            if constexpr (scalar_traits<T>::exact)
                hit = d.x.is_zero() && d.y.is_zero();
            else
                hit = std::fabs(d.x) < 1e-9L && std::fabs(d.y) < 1e-9L;
            if (hit) found = j;
        }
        if (found < 0) throw std::logic_error("isometry does not preserve the polygon");
        p.map.push_back(static_cast<Letter>(found % n));
    }
    return p;
}

// pi_i, cached per (i, n). Exact geometry is used where available.
inline const LetterPermutation& induced_permutation(int i, int n)
{
    if (n < 2) throw InvalidN(n);
    if (i < 0 || i >= 2 * n) throw IndexOutOfRange("sector index " + std::to_string(i));
    static std::mutex mu;
    static std::map<std::pair<int, int>, LetterPermutation> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({i, n});
    if (it != cache.end()) return it->second;
    LetterPermutation p = scalar_traits<Q2>::supports(n) ? induced_permutation_with<Q2>(i, n)
                                                          : induced_permutation_with<Real>(i, n);
    return cache.emplace(std::make_pair(i, n), std::move(p)).first->second;
}

// pi_up: L_j <-> L_{n+1-j};  pi_right: L_j <-> L_{n+2-j}, L_1 fixed.
inline LetterPermutation pi_up(int n)
{
    LetterPermutation p;
    for (int j = 0; j < n; ++j) p.map.push_back(static_cast<Letter>(n - 1 - j));
    return p;
}

inline LetterPermutation pi_right(int n)
{
    LetterPermutation p;
    p.map.push_back(0);
    for (int j = 1; j < n; ++j) p.map.push_back(static_cast<Letter>(n - j));
    return p;
}

template <class T>
struct VeechPair {
    Mat2<T> sigma;
    Mat2<T> gamma;
};

// sigma_n = (1, 2cot(pi/2n); 0, 1), gamma_n = sigma_n composed with the
// reflection in the vertical axis.
template <class T>
VeechPair<T> veech_elements(int n)
{
    if (n < 2) throw InvalidN(n);
    T c = scalar_traits<T>::cot_pi(1, 2 * n);
    T two_c = T(2) * c;
    return {Mat2<T>{T(1), two_c, T(0), T(1)}, Mat2<T>{T(-1), two_c, T(0), T(1)}};
}

} // namespace cutseq
