#pragma once

#include "cutseq/words.hpp"

#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutseq {

struct VertexHit : std::domain_error {
    size_t crossing;
    explicit VertexHit(size_t k)
        : std::domain_error("trajectory hits a vertex at crossing " + std::to_string(k)), crossing(k) {}
};

struct TraceConfig {
    Real epsilon = 1e-9L;       // vertex exclusion, floating mode only
    size_t max_crossings = 1000;
    bool keep_log = true;
};

template <class T>
struct Crossing {
    Letter letter;
    Vec2<T> point; // exit point on the side
    int side;
    T s;           // position along the side, 0 at its first vertex
};

template <class T>
struct TraceResult {
    FiniteWord word;
    std::vector<Crossing<T>> log;
};

namespace detail {

template <class T>
struct Exit {
    int side;
    T s;
};

// Side through which the ray p + t d leaves the polygon.
template <class T>
Exit<T> next_exit(const Polygon<T>& poly, const Vec2<T>& p, const Vec2<T>& d, size_t step, Real eps)
{
    using S = scalar_traits<T>;
    int best = -1;
    T best_t{}, best_s{};
    for (int k = 0; k < poly.sides(); ++k) {
        if (S::sign(dot(d, poly.outward_normal(k))) <= 0) continue;
        Vec2<T> e = poly.edge(k);
        Vec2<T> w = poly.vertex(k) - p;
        T den = cross(d, e);
        T t = cross(w, e) / den;
        if (best < 0 || t < best_t) {
            best = k;
            best_t = t;
            best_s = cross(w, d) / den;
        }
    }
    if constexpr (S::exact) {
        if (best_s.sign() <= 0 || (best_s - T(1)).sign() >= 0) throw VertexHit(step);
    } else {
        if (best_s < eps || best_s > 1 - eps) throw VertexHit(step);
    }
    return {best, best_s};
}

} // namespace detail

// Cutting sequence of the trajectory from start in direction dir.
template <class T>
TraceResult<T> trace(const Polygon<T>& poly, const Vec2<T>& start, const Vec2<T>& dir, const TraceConfig& cfg)
{
    if (!poly.strictly_inside(start)) throw std::domain_error("start point is not strictly inside the polygon");
    if (scalar_traits<T>::sign(dir.x) == 0 && scalar_traits<T>::sign(dir.y) == 0)
        throw std::domain_error("zero direction");
    TraceResult<T> res;
    res.word.n = poly.n;
    res.word.letters.reserve(cfg.max_crossings);
    if (cfg.keep_log) res.log.reserve(cfg.max_crossings);
    Vec2<T> p = start;
    for (size_t k = 0; k < cfg.max_crossings; ++k) {
        auto ex = detail::next_exit(poly, p, dir, k, cfg.epsilon);
        res.word.letters.push_back(poly.label(ex.side));
        if (cfg.keep_log) res.log.push_back({poly.label(ex.side), poly.vertex(ex.side) + ex.s * poly.edge(ex.side), ex.side, ex.s});
        // re-enter on the partner side; rebuilt from the side parameter so
        // floating error cannot drift off the boundary
        int o = poly.opposite(ex.side);
        p = poly.vertex(o) + (T(1) - ex.s) * poly.edge(o);
    }
    return res;
}

// Smallest p such that the crossing state (side, position) returns after p
// crossings; the first-return map is a bijection, so checking the initial
// state suffices.
template <class T>
std::optional<size_t> detect_period(const Polygon<T>& poly, const Vec2<T>& start, const Vec2<T>& dir,
                                    const TraceConfig& cfg, Real tolerance = 1e-9L)
{
    if (!poly.strictly_inside(start)) throw std::domain_error("start point is not strictly inside the polygon");
    Vec2<T> p = start;
    int side0 = -1;
    T s0{};
    for (size_t k = 0; k <= cfg.max_crossings; ++k) {
        auto ex = detail::next_exit(poly, p, dir, k, cfg.epsilon);
        if (k == 0) {
            side0 = ex.side;
            s0 = ex.s;
        } else if (ex.side == side0) {
            bool same;
            if constexpr (scalar_traits<T>::exact)
                same = ex.s == s0;
            else
                same = std::fabs(ex.s - s0) < tolerance;
            if (same) return k;
        }
        int o = poly.opposite(ex.side);
        p = poly.vertex(o) + (T(1) - ex.s) * poly.edge(o);
    }
    return std::nullopt;
}

inline Real circumradius(int n) { return 0.5L / std::sin(kPi / (2 * n)); }

// Uniform point of the polygon interior from a seeded generator.
inline Vec2<Real> random_interior_point(const Polygon<Real>& poly, std::mt19937_64& rng)
{
    Real r = circumradius(poly.n);
    std::uniform_real_distribution<double> u(-static_cast<double>(r), static_cast<double>(r));
    for (;;) {
        Vec2<Real> p{u(rng), u(rng)};
        if (poly.strictly_inside(p)) return p;
    }
}

// Rational interior point with denominator 2^16.
inline Vec2<Q2> random_interior_point(const Polygon<Q2>& poly, std::mt19937_64& rng)
{
    const long den = 1L << 16;
    std::uniform_int_distribution<long> u(-3 * den / 2, 3 * den / 2);
    for (;;) {
        Vec2<Q2> p{Q2::rational(u(rng), den), Q2::rational(u(rng), den)};
        if (poly.strictly_inside(p)) return p;
    }
}

template <class T>
Vec2<Real> to_real(const Vec2<T>& v)
{
    return {scalar_traits<T>::to_ld(v.x), scalar_traits<T>::to_ld(v.y)};
}

// SVG picture of a traced piece of trajectory: outline, side letters and one
// line element per segment between consecutive side crossings.
template <class T>
std::string plot_svg(const Polygon<T>& poly, const Vec2<T>& start, const std::vector<Crossing<T>>& log)
{
    if (log.empty()) throw std::invalid_argument("empty trajectory log");
    const double scale = 200.0;
    auto X = [&](Real x) { return static_cast<double>(x) * scale; };
    auto Y = [&](Real y) { return -static_cast<double>(y) * scale; };
    Real r = circumradius(poly.n);
    double half = static_cast<double>(r) * scale + 30.0;
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << -half << ' ' << -half << ' '
       << 2 * half << ' ' << 2 * half << "\">\n";
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (int k = 0; k < poly.sides(); ++k) {
        Vec2<Real> v = to_real(poly.vertex(k));
        os << (k == 0 ? "M" : " L") << X(v.x) << ' ' << Y(v.y);
    }
    os << " Z\"/>\n";
    for (int k = 0; k < poly.sides(); ++k) {
        Vec2<Real> m = to_real(poly.midpoint_twice(k));
        os << "<text x=\"" << X(m.x * 0.5L * 1.12L) << "\" y=\"" << Y(m.y * 0.5L * 1.12L)
           << "\" font-size=\"14\" text-anchor=\"middle\" dominant-baseline=\"middle\">"
           << letter_name(poly.label(k), poly.n) << "</text>\n";
    }
    Vec2<Real> from = to_real(start);
    for (const auto& c : log) {
        Vec2<Real> to = to_real(c.point);
        os << "<line x1=\"" << X(from.x) << "\" y1=\"" << Y(from.y) << "\" x2=\"" << X(to.x) << "\" y2=\"" << Y(to.y)
           << "\" stroke=\"steelblue\" stroke-width=\"1\"/>\n";
        from = to_real(Vec2<T>(c.point + poly.pairing_translation(c.side)));
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace cutseq
