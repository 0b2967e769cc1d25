#include "meeting/number.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace meeting {

namespace {

NumberField make_field(std::string name, std::vector<mpq_class> minpoly, mpq_class lo, mpq_class hi,
                       double approx) {
    NumberField f;
    f.name = std::move(name);
    f.minpoly = std::move(minpoly);
    f.lo = lo;
    f.hi = hi;
    f.approx = approx;
    return f;
}

mpq_class eval_poly(const std::vector<mpq_class>& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

int sgn(const mpq_class& q) { return ::sgn(q); }

}  // namespace

const NumberField* NumberField::sqrt3() {
    static const NumberField f =
        make_field("sqrt3", {mpq_class(-3), mpq_class(0), mpq_class(1)}, mpq_class(17320508, 10000000),
                   mpq_class(17320509, 10000000), std::sqrt(3.0));
    return &f;
}

const NumberField* NumberField::sin72() {
    // 16 x^4 - 20 x^2 + 5 = 0, made monic.
    static const NumberField f =
        make_field("sin72", {mpq_class(5, 16), mpq_class(0), mpq_class(-5, 4), mpq_class(0), mpq_class(1)},
                   mpq_class(95105651, 100000000), mpq_class(95105652, 100000000), std::sin(2.0 * M_PI / 5.0));
    return &f;
}

const NumberField* NumberField::by_name(std::string_view name) {
    if (name == "sqrt3") return sqrt3();
    if (name == "sin72") return sin72();
    throw std::invalid_argument("unknown number field '" + std::string(name) + "'");
}

Real::Real(long num, long den) : c_(1) {
    if (den == 0) throw std::domain_error("zero denominator");
    c_[0] = mpq_class(num, den);
    c_[0].canonicalize();
}

Real::Real(const NumberField* field, std::vector<mpq_class> coeffs) : f_(field), c_(std::move(coeffs)) {
    if (f_ == nullptr) {
        if (c_.size() != 1) throw std::invalid_argument("rational needs exactly one coefficient");
    } else {
        if (c_.size() > f_->degree()) throw std::invalid_argument("too many coefficients for field");
        c_.resize(f_->degree());
    }
    for (auto& q : c_) q.canonicalize();
    normalize();
}

Real Real::generator(const NumberField* field) {
    std::vector<mpq_class> c(field->degree());
    c[1] = 1;
    return Real(field, std::move(c));
}

const mpq_class& Real::rational() const {
    if (f_ != nullptr) throw std::domain_error("value is not rational");
    return c_[0];
}

void Real::normalize() {
    if (f_ == nullptr) return;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return;
    c_.resize(1);
    f_ = nullptr;
}

void Real::promote(const NumberField* f) {
    if (f == nullptr || f_ == f) return;
    if (f_ != nullptr) throw std::domain_error("mixing elements of different number fields");
    f_ = f;
    c_.resize(f->degree());
}

const NumberField* Real::common(const Real& a, const Real& b) {
    if (a.f_ && b.f_ && a.f_ != b.f_) throw std::domain_error("mixing elements of different number fields");
    return a.f_ ? a.f_ : b.f_;
}

Real Real::operator-() const {
    Real r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Real& Real::operator+=(const Real& o) {
    if (f_ == nullptr && o.f_ == nullptr) {
        c_[0] += o.c_[0];
        return *this;
    }
    const NumberField* f = common(*this, o);
    promote(f);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

Real& Real::operator-=(const Real& o) {
    if (f_ == nullptr && o.f_ == nullptr) {
        c_[0] -= o.c_[0];
        return *this;
    }
    const NumberField* f = common(*this, o);
    promote(f);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

Real& Real::operator*=(const Real& o) {
    if (o.f_ == nullptr) {
        if (o.c_[0] == 0) {
            f_ = nullptr;
            c_.assign(1, mpq_class(0));
            return *this;
        }
        for (auto& q : c_) q *= o.c_[0];
        return *this;
    }
    if (f_ == nullptr) {
        mpq_class s = c_[0];
        *this = o;
        if (s == 0) {
            f_ = nullptr;
            c_.assign(1, mpq_class(0));
            return *this;
        }
        for (auto& q : c_) q *= s;
        return *this;
    }
    const NumberField* f = common(*this, o);
    const std::size_t d = f->degree();
    std::vector<mpq_class> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
        if (prod[k] == 0) continue;
        mpq_class lead = prod[k];
        for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= lead * f->minpoly[i];
    }
    prod.resize(d);
    c_ = std::move(prod);
    normalize();
    return *this;
}

Real& Real::operator/=(const Real& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.f_ == nullptr) {
        for (auto& q : c_) q /= o.c_[0];
        return *this;
    }
    // Invert o by solving (multiplication-by-o matrix) * y = e0.
    const NumberField* f = o.f_;
    const std::size_t d = f->degree();
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1));
    Real basis = Real(1);
    const Real theta = generator(f);
    for (std::size_t j = 0; j < d; ++j) {
        Real col = o * basis;
        col.promote(f);
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
        basis *= theta;
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) throw std::domain_error("singular field element");
        std::swap(m[piv], m[col]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            mpq_class factor = m[r][col] / m[col][col];
            for (std::size_t k = col; k <= d; ++k) m[r][k] -= factor * m[col][k];
        }
    }
    std::vector<mpq_class> inv(d);
    for (std::size_t i = 0; i < d; ++i) inv[i] = m[i][d] / m[i][i];
    return *this *= Real(f, std::move(inv));
}

bool Real::is_zero() const { return f_ == nullptr && c_[0] == 0; }

int Real::sign() const {
    if (f_ == nullptr) return sgn(c_[0]);
    // Fast path: double evaluation with a generous error bound.
    double value = 0.0, magnitude = 0.0, power = 1.0;
    bool finite = true;
    for (const auto& q : c_) {
        double term = q.get_d() * power;
        if (!std::isfinite(term)) finite = false;
        value += term;
        magnitude += std::fabs(term);
        power *= f_->approx;
    }
    if (finite && std::fabs(value) > magnitude * 1e-12) return value > 0 ? 1 : -1;

    // Exact path: interval evaluation over a shrinking isolating interval.
    // theta > 0 for every registered field.
    mpq_class lo = f_->lo, hi = f_->hi;
    const int sign_lo = sgn(eval_poly(f_->minpoly, lo));
    for (;;) {
        mpq_class sum_lo = 0, sum_hi = 0, plo = 1, phi = 1;
        for (const auto& q : c_) {
            if (q >= 0) {
                sum_lo += q * plo;
                sum_hi += q * phi;
            } else {
                sum_lo += q * phi;
                sum_hi += q * plo;
            }
            plo *= lo;
            phi *= hi;
        }
        if (sum_lo > 0) return 1;
        if (sum_hi < 0) return -1;
        mpq_class mid = (lo + hi) / 2;
        const int s = sgn(eval_poly(f_->minpoly, mid));
        if (s == 0) {
            lo = hi = mid;
        } else if (s == sign_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

double Real::to_double() const {
    if (f_ == nullptr) return c_[0].get_d();
    double value = 0.0, power = 1.0;
    for (const auto& q : c_) {
        value += q.get_d() * power;
        power *= f_->approx;
    }
    return value;
}

bool operator==(const Real& a, const Real& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

std::strong_ordering operator<=>(const Real& a, const Real& b) {
    if (a.f_ == nullptr && b.f_ == nullptr) {
        const int c = cmp(a.c_[0], b.c_[0]);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool repr_less(const Real& a, const Real& b) {
    if (a.f_ != b.f_) return std::less<const NumberField*>()(a.f_, b.f_);
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::size_t Real::hash() const {
    std::size_t h = std::hash<const void*>()(f_);
    for (const auto& q : c_) {
        h ^= std::hash<std::string>()(q.get_str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::string Real::str() const {
    auto one = [](const mpq_class& q) {
        return q.get_den() == 1 ? q.get_num().get_str() + "/1" : q.get_str();
    };
    if (f_ == nullptr) return one(c_[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += one(c_[i]);
    }
    return s + "]@" + f_->name;
}

Real Real::parse(std::string_view text) {
    auto parse_q = [](std::string_view t) {
        std::string s(t);
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        if (s.empty()) throw std::invalid_argument("empty rational");
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    };
    if (!text.empty() && text.front() == '[') {
        const auto at = text.find("]@");
        if (at == std::string_view::npos) throw std::invalid_argument("malformed field element");
        const NumberField* f = NumberField::by_name(text.substr(at + 2));
        std::vector<mpq_class> coeffs;
        std::string_view body = text.substr(1, at - 1);
        std::size_t start = 0;
        while (start <= body.size()) {
            const auto comma = body.find(',', start);
            const auto end = comma == std::string_view::npos ? body.size() : comma;
            coeffs.push_back(parse_q(body.substr(start, end - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return Real(f, std::move(coeffs));
    }
    return Real(parse_q(text));
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.str(); }

}  // namespace meeting
