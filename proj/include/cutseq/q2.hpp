#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace cutseq {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in Q(sqrt2)") {}
};

namespace detail {

// Accurate mpq -> long double: keeps the full 64-bit mantissa even when
// numerator and denominator are huge.
inline long double mpq_to_ld(const mpq_class& q)
{
    if (sgn(q) == 0) return 0.0L;
    mpz_class num = abs(q.get_num());
    const mpz_class& den = q.get_den();
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // quotient with roughly 66 significant bits
    long shift = 66 - e;
    mpz_class t;
    if (shift >= 0) {
        t = num << static_cast<mp_bitcnt_t>(shift);
        t /= den;
    } else {
        mpz_class d2 = den << static_cast<mp_bitcnt_t>(-shift);
        t = num / d2;
    }
    long double v = 0.0L;
    size_t limbs = mpz_size(t.get_mpz_t());
    for (size_t i = limbs; i-- > 0;) {
        v = std::ldexp(v, GMP_NUMB_BITS) +
            static_cast<long double>(mpz_getlimbn(t.get_mpz_t(), i));
    }
    v = std::ldexp(v, static_cast<int>(-shift));
    return sgn(q) < 0 ? -v : v;
}

inline std::string trim(std::string s)
{
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

inline mpq_class parse_rational(const std::string& text)
{
    std::string t = trim(text);
    if (t.empty() || t == "+") return 1;
    if (t == "-") return -1;
    if (t[0] == '+') t = t.substr(1);
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    q.canonicalize();
    return q;
}

} // namespace detail

// a + b*sqrt(2) with exact rational coefficients.
class Q2 {
public:
    Q2() = default;
    Q2(long v) : a_(v) {}
    Q2(int v) : a_(v) {}
    Q2(mpq_class a, mpq_class b = 0) : a_(std::move(a)), b_(std::move(b))
    {
        a_.canonicalize();
        b_.canonicalize();
    }
    static Q2 rational(long p, long q = 1) { return Q2(mpq_class(p, q)); }
    static Q2 sqrt2() { return Q2(0, 1); }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }

    Q2 conj() const { return Q2(a_, -b_); }
    // field norm a^2 - 2 b^2, zero only for 0
    mpq_class norm() const { return a_ * a_ - 2 * b_ * b_; }

    int sign() const
    {
        int sa = sgn(a_), sb = sgn(b_);
        if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
        if (sa <= 0 && sb <= 0) return -1;
        int c = cmp(a_ * a_, 2 * b_ * b_);
        return sa > 0 ? c : -c;
    }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

    Q2 operator-() const { return Q2(-a_, -b_); }
    Q2& operator+=(const Q2& o) { a_ += o.a_; b_ += o.b_; return *this; }
    Q2& operator-=(const Q2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    Q2& operator*=(const Q2& o)
    {
        mpq_class na = a_ * o.a_ + 2 * b_ * o.b_;
        mpq_class nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    Q2& operator/=(const Q2& o)
    {
        mpq_class n = o.norm();
        if (sgn(n) == 0) throw DivisionByZero();
        *this *= o.conj();
        a_ /= n;
        b_ /= n;
        return *this;
    }
    friend Q2 operator+(Q2 l, const Q2& r) { return l += r; }
    friend Q2 operator-(Q2 l, const Q2& r) { return l -= r; }
    friend Q2 operator*(Q2 l, const Q2& r) { return l *= r; }
    friend Q2 operator/(Q2 l, const Q2& r) { return l /= r; }

    friend bool operator==(const Q2& l, const Q2& r) { return l.a_ == r.a_ && l.b_ == r.b_; }
    friend bool operator!=(const Q2& l, const Q2& r) { return !(l == r); }
    friend bool operator<(const Q2& l, const Q2& r) { return (l - r).sign() < 0; }
    friend bool operator>(const Q2& l, const Q2& r) { return r < l; }
    friend bool operator<=(const Q2& l, const Q2& r) { return !(r < l); }
    friend bool operator>=(const Q2& l, const Q2& r) { return !(l < r); }

    long double to_ld() const
    {
        return detail::mpq_to_ld(a_) + detail::mpq_to_ld(b_) * std::sqrt(2.0L);
    }

    // "p/q + r/s*sqrt2"
    std::string str() const
    {
        std::string s = a_.get_str();
        if (sgn(b_) < 0)
            s += " - " + mpq_class(-b_).get_str() + "*sqrt2";
        else
            s += " + " + b_.get_str() + "*sqrt2";
        return s;
    }

    // Accepts "a", "a + b*sqrt2", "a - b*sqrt2", "b*sqrt2", "sqrt2" with rational
    // a, b written as p or p/q.
    static Q2 parse(const std::string& text)
    {
        std::string t;
        for (char c : text)
            if (c != ' ' && c != '\t') t += c;
        if (t.empty()) throw std::invalid_argument("empty Q(sqrt2) literal");
        size_t pos = t.find("sqrt2");
        if (pos == std::string::npos) return Q2(detail::parse_rational(t));
        if (pos + 5 != t.size()) throw std::invalid_argument("bad Q(sqrt2) literal: " + text);
        std::string head = t.substr(0, pos);
        if (!head.empty() && head.back() == '*') head.pop_back();
        // split head into rational part and sqrt2 coefficient at the last sign
        size_t split = std::string::npos;
        for (size_t i = head.size(); i-- > 1;) {
            if ((head[i] == '+' || head[i] == '-') && head[i - 1] != 'e') {
                split = i;
                break;
            }
        }
        mpq_class a = 0, b;
        if (split == std::string::npos) {
            b = detail::parse_rational(head);
        } else {
            a = detail::parse_rational(head.substr(0, split));
            b = detail::parse_rational(head.substr(split));
        }
        return Q2(a, b);
    }

    friend std::ostream& operator<<(std::ostream& os, const Q2& q) { return os << q.str(); }

private:
    mpq_class a_ = 0;
    mpq_class b_ = 0;
};

inline Q2 abs(const Q2& q) { return q.sign() < 0 ? -q : q; }

} // namespace cutseq
