#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace meeting {

/// A real algebraic number field Q(theta) given by the monic minimal
/// polynomial of theta and a rational isolating interval for the real root
/// that theta denotes. Fields are process-wide singletons; elements refer to
/// them by pointer.
class NumberField {
public:
    std::string name;
    /// Monic minimal polynomial, low degree first; coeffs.size() == degree + 1.
    std::vector<mpq_class> minpoly;
    mpq_class lo, hi;
    double approx = 0.0;

    std::size_t degree() const { return minpoly.size() - 1; }

    /// Q(sqrt 3): holds cos/sin of multiples of pi/6.
    static const NumberField* sqrt3();
    /// Q(sin 2pi/5): holds cos/sin of multiples of pi/5.
    static const NumberField* sin72();
    static const NumberField* by_name(std::string_view name);
};

/// Exact element of Q or of a registered real number field. Rationals carry
/// a null field pointer and mix freely with elements of any one field.
class Real {
public:
    Real() : c_(1) {}
    Real(long v) : c_(1, mpq_class(v)) {}
    Real(int v) : c_(1, mpq_class(v)) {}
    Real(const mpq_class& q) : c_(1, q) { c_[0].canonicalize(); }
    Real(long num, long den);
    /// Element sum_i coeffs[i] * theta^i of `field`.
    Real(const NumberField* field, std::vector<mpq_class> coeffs);

    /// theta itself.
    static Real generator(const NumberField* field);

    const NumberField* field() const { return f_; }
    bool is_rational() const { return f_ == nullptr; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    /// Only valid when is_rational().
    const mpq_class& rational() const;

    int sign() const;
    bool is_zero() const;
    double to_double() const;

    Real operator-() const;
    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }

    friend bool operator==(const Real& a, const Real& b);
    friend std::strong_ordering operator<=>(const Real& a, const Real& b);

    /// Total order on representations (not numeric); cheap, for map keys.
    friend bool repr_less(const Real& a, const Real& b);
    std::size_t hash() const;

    /// "p/q" for rationals; "[c0,c1,...]@field" otherwise.
    std::string str() const;
    static Real parse(std::string_view text);

private:
    void normalize();
    void promote(const NumberField* f);
    static const NumberField* common(const Real& a, const Real& b);

    const NumberField* f_ = nullptr;
    std::vector<mpq_class> c_;
};

inline Real abs(const Real& x) { return x.sign() < 0 ? -x : x; }
std::ostream& operator<<(std::ostream& os, const Real& x);

struct ReprLess {
    bool operator()(const Real& a, const Real& b) const { return repr_less(a, b); }
};

}  // namespace meeting
