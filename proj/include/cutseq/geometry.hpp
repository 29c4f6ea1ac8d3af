#pragma once

#include "cutseq/q2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace cutseq {

using Real = long double;

inline constexpr Real kPi = std::numbers::pi_v<long double>;

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("singular matrix") {}
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Real> {
    static constexpr bool exact = false;
    static bool supports(int) { return true; }
    static Real from_int(long v) { return static_cast<Real>(v); }
    static Real cos_pi(long k, long m) { return std::cos(kPi * k / m); }
    static Real sin_pi(long k, long m) { return std::sin(kPi * k / m); }
    static Real cot_pi(long k, long m) { return cos_pi(k, m) / sin_pi(k, m); }
    static Real to_ld(Real v) { return v; }
    static int sign(Real v) { return (v > 0) - (v < 0); }
};

template <>
struct scalar_traits<Q2> {
    static constexpr bool exact = true;
    // Q(sqrt2) holds the geometry of the square and of the octagon only.
    static bool supports(int n) { return n == 2 || n == 4; }
    static Q2 from_int(long v) { return Q2(v); }

    static long eighths(long k, long m, long unit)
    {
        if ((k * unit) % m != 0)
            throw std::domain_error("angle leaves Q(sqrt2): " + std::to_string(k) + "*pi/" +
                                    std::to_string(m));
        return (k * unit) / m;
    }
    static Q2 cos_pi(long k, long m)
    {
        long j = ((eighths(k, m, 4) % 8) + 8) % 8;
        Q2 h(0, mpq_class(1, 2));
        switch (j) {
        case 0: return 1;
        case 1: return h;
        case 2: return 0;
        case 3: return -h;
        case 4: return -1;
        case 5: return -h;
        case 6: return 0;
        default: return h;
        }
    }
    static Q2 sin_pi(long k, long m) { return cos_pi(2 * k - m, 2 * m); }
    static Q2 cot_pi(long k, long m)
    {
        long j = ((eighths(k, m, 8) % 8) + 8) % 8;
        switch (j) {
        case 1: return Q2(1, 1);
        case 2: return 1;
        case 3: return Q2(-1, 1);
        case 4: return 0;
        case 5: return Q2(1, -1);
        case 6: return -1;
        case 7: return Q2(-1, -1);
        default: throw std::domain_error("cot undefined at multiples of pi");
        }
    }
    static Real to_ld(const Q2& v) { return v.to_ld(); }
    static int sign(const Q2& v) { return v.sign(); }
};

template <class T>
struct Vec2 {
    T x{}, y{};
    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const T& s, const Vec2& a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b)
{
    return a.x * b.y - a.y * b.x;
}

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b)
{
    return a.x * b.x + a.y * b.y;
}

template <class T>
struct Mat2 {
    T m11{1}, m12{0}, m21{0}, m22{1};

    static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }
    T det() const { return m11 * m22 - m12 * m21; }
    Mat2 inverse() const
    {
        T d = det();
        if (scalar_traits<T>::sign(d) == 0) throw SingularMatrix();
        return {m22 / d, -m12 / d, -m21 / d, m11 / d};
    }
    Vec2<T> operator()(const Vec2<T>& v) const { return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y}; }
    friend Mat2 operator*(const Mat2& a, const Mat2& b)
    {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
    friend bool operator==(const Mat2& a, const Mat2& b)
    {
        return a.m11 == b.m11 && a.m12 == b.m12 && a.m21 == b.m21 && a.m22 == b.m22;
    }
};

inline Mat2<Real> to_real(const Mat2<Q2>& m)
{
    return {m.m11.to_ld(), m.m12.to_ld(), m.m21.to_ld(), m.m22.to_ld()};
}

// A direction in [0, pi] kept as a canonical vector: y > 0, or y == 0 with
// x = +1 (theta = 0) or x = -1 (theta = pi). Exact vectors are scaled to y = 1,
// floating ones to unit length.
template <class T>
struct Dir {
    Vec2<T> v;

    static Dir canonical(Vec2<T> w)
    {
        using S = scalar_traits<T>;
        if (S::sign(w.x) == 0 && S::sign(w.y) == 0) throw std::domain_error("zero direction vector");
        if (S::sign(w.y) < 0) w = {-w.x, -w.y};
        if (S::sign(w.y) == 0) return Dir{{T(S::sign(w.x)), T(0)}};
        if constexpr (S::exact) {
            return Dir{{w.x / w.y, T(1)}};
        } else {
            Real r = std::hypot(w.x, w.y);
            return Dir{{w.x / r, w.y / r}};
        }
    }
    static Dir zero_angle() { return Dir{{T(1), T(0)}}; }
    static Dir pi_angle() { return Dir{{T(-1), T(0)}}; }

    bool is_zero_angle() const { return scalar_traits<T>::sign(v.y) == 0 && scalar_traits<T>::sign(v.x) > 0; }
    bool is_pi_angle() const { return scalar_traits<T>::sign(v.y) == 0 && scalar_traits<T>::sign(v.x) < 0; }

    Real theta() const
    {
        if (is_pi_angle()) return kPi;
        if (is_zero_angle()) return 0.0L;
        return std::atan2(scalar_traits<T>::to_ld(v.y), scalar_traits<T>::to_ld(v.x));
    }

    friend bool operator==(const Dir& a, const Dir& b) { return a.v == b.v; }
    friend bool operator!=(const Dir& a, const Dir& b) { return !(a == b); }
    // angle order on [0, pi]
    friend bool operator<(const Dir& a, const Dir& b)
    {
        if (a == b) return false;
        if (a.is_zero_angle() || b.is_pi_angle()) return true;
        if (a.is_pi_angle() || b.is_zero_angle()) return false;
        return scalar_traits<T>::sign(cross(a.v, b.v)) > 0;
    }
    friend bool operator<=(const Dir& a, const Dir& b) { return !(b < a); }
};

// The direction at angle k*pi/m.
template <class T>
Dir<T> angle_dir(long k, long m)
{
    using S = scalar_traits<T>;
    if (k == 0) return Dir<T>::zero_angle();
    if (k == m) return Dir<T>::pi_angle();
    if constexpr (S::exact) {
        return Dir<T>{{S::cot_pi(k, m), T(1)}};
    } else {
        return Dir<T>::canonical({S::cos_pi(k, m), S::sin_pi(k, m)});
    }
}

inline Dir<Real> dir_from_theta(Real theta)
{
    if (theta == 0.0L) return Dir<Real>::zero_angle();
    if (theta == kPi) return Dir<Real>::pi_angle();
    return Dir<Real>::canonical({std::cos(theta), std::sin(theta)});
}

template <class T>
Dir<T> apply(const Mat2<T>& m, const Dir<T>& d)
{
    return Dir<T>::canonical(m(d.v));
}

// A direction in [0, pi], exact over Q(sqrt2) or floating.
class ProjectiveDirection {
public:
    static ProjectiveDirection exact(const Dir<Q2>& d) { return ProjectiveDirection(d); }
    static ProjectiveDirection from_vector(const Q2& x, const Q2& y) { return ProjectiveDirection(Dir<Q2>::canonical({x, y})); }
    // inverse slope mu = x / y
    static ProjectiveDirection from_cot(const Q2& mu) { return ProjectiveDirection(Dir<Q2>{{mu, Q2(1)}}); }
    static ProjectiveDirection approx(Real theta)
    {
        if (!(theta >= 0.0L && theta <= kPi)) throw std::domain_error("theta outside [0, pi]");
        return ProjectiveDirection(theta);
    }

    bool is_exact() const { return std::holds_alternative<Dir<Q2>>(rep_); }
    const Dir<Q2>& exact_dir() const { return std::get<Dir<Q2>>(rep_); }
    Real theta() const { return is_exact() ? exact_dir().theta() : std::get<Real>(rep_); }
    Dir<Real> real_dir() const { return is_exact() ? dir_from_theta(theta()) : dir_from_theta(std::get<Real>(rep_)); }
    // one-way: exact to floating
    ProjectiveDirection to_approx() const { return ProjectiveDirection(theta()); }

private:
    explicit ProjectiveDirection(Dir<Q2> d) : rep_(std::move(d)) {}
    explicit ProjectiveDirection(Real t) : rep_(t) {}
    std::variant<Dir<Q2>, Real> rep_;
};

inline ProjectiveDirection moebius_apply(const Mat2<Q2>& m, const ProjectiveDirection& d)
{
    if (sgn(m.det().norm()) == 0) throw SingularMatrix();
    if (d.is_exact()) return ProjectiveDirection::exact(apply(m, d.exact_dir()));
    return ProjectiveDirection::approx(apply(to_real(m), d.real_dir()).theta());
}

inline ProjectiveDirection moebius_apply(const Mat2<Real>& m, const ProjectiveDirection& d)
{
    return ProjectiveDirection::approx(apply(m, d.real_dir()).theta());
}

inline std::string to_string(const Mat2<Q2>& m)
{
    return "[" + m.m11.str() + ", " + m.m12.str() + ", " + m.m21.str() + ", " + m.m22.str() + "]";
}

} // namespace cutseq
