#include "meeting/encoding.hpp"

#include <algorithm>
#include <map>

namespace meeting {

namespace {

constexpr std::size_t max_exponent = std::size_t(1) << 20;

bool is_dyadic(const mpq_class& q) {
    mpz_class d = q.get_den();
    return mpz_popcount(d.get_mpz_t()) == 1;
}

// Least e >= 0 with |a| < 2^e.
std::size_t exponent_of(const mpq_class& a) {
    std::size_t e = 0;
    mpq_class bound = 1;
    while (a >= bound) {
        bound *= 2;
        ++e;
    }
    return e;
}

const mpq_class& rational_of(const Real& r) {
    if (!r.is_rational()) throw CodecError("coordinate is not rational: " + r.str());
    return r.rational();
}

}  // namespace

int BitReader::bit() {
    if (pos_ >= bits_.size()) {
        ++pos_;
        return 0;
    }
    char c = bits_[pos_++];
    if (c != '0' && c != '1') throw CodecError("not a bit string");
    return c == '1';
}

mpq_class bits_value(std::string_view bits) {
    mpz_class num = 0;
    for (char c : bits) {
        num *= 2;
        if (c == '1') num += 1;
    }
    mpz_class den = 1;
    den <<= bits.size();
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

std::string bits_to_hex(std::string_view bits) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        int v = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            v <<= 1;
            if (i + k < bits.size()) {
                if (bits[i + k] == '1') v |= 1;
                else if (bits[i + k] != '0') throw CodecError("not a bit string");
            }
        }
        out += digits[v];
    }
    return out;
}

BitString hex_to_bits(std::string_view hex) {
    BitString out;
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw CodecError(std::string("bad hex digit '") + c + "'");
        for (int k = 3; k >= 0; --k) out += (v >> k) & 1 ? '1' : '0';
    }
    return out;
}

BitString encode_uint(std::size_t n) { return BitString(n, '0') + '1'; }

std::size_t decode_uint(BitReader& in) {
    std::size_t n = 0;
    while (!in.at_end()) {
        if (in.bit()) return n;
        ++n;
    }
    throw CodecError("malformed integer code: no terminating 1");
}

std::size_t decode_uint(std::string_view bits) {
    BitReader in(bits);
    return decode_uint(in);
}

BitString encode_rational(const mpq_class& r) {
    mpq_class q = r;
    q.canonicalize();
    mpz_class p = abs(q.get_num());
    if (!p.fits_ulong_p() || !q.get_den().fits_ulong_p()) throw CodecError("rational too large for unary code");
    return encode_uint(q < 0 ? 1 : 0) + encode_uint(p.get_ui()) + encode_uint(q.get_den().get_ui());
}

mpq_class decode_rational(BitReader& in) {
    std::size_t s = decode_uint(in);
    if (s > 1) throw CodecError("malformed sign");
    std::size_t p = decode_uint(in);
    std::size_t q = decode_uint(in);
    if (q == 0) throw CodecError("zero denominator");
    mpq_class r{mpz_class(p), mpz_class(q)};
    r.canonicalize();
    return s ? mpq_class(-r) : r;
}

mpq_class decode_rational(std::string_view bits) {
    BitReader in(bits);
    return decode_rational(in);
}

BitString pack_reals(const std::vector<mpq_class>& values, std::size_t lambda) {
    std::size_t n = values.size();
    std::vector<std::string> mant(n), expo(n);
    BitString out(lambda, '0');
    out += std::string(n, '1');
    out += '0';
    std::size_t columns = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const mpq_class& a = values[i];
        if (!is_dyadic(a)) throw CodecError("value has no finite binary expansion: " + a.get_str());
        out += a < 0 ? '1' : '0';
        mpq_class m = abs(a);
        std::size_t e = exponent_of(m);
        m /= mpq_class(mpz_class(1) << e);
        while (m != 0) {
            m *= 2;
            if (m >= 1) {
                mant[i] += '1';
                m -= 1;
            } else {
                mant[i] += '0';
            }
        }
        for (; e; e >>= 1) expo[i] += (e & 1) ? '1' : '0';
        columns = std::max({columns, mant[i].size(), expo[i].size()});
    }
    for (std::size_t j = 0; j < columns; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            out += j < mant[i].size() ? mant[i][j] : '0';
            out += j < expo[i].size() ? expo[i][j] : '0';
        }
    return out;
}

Unpacked unpack_reals(std::string_view bits) {
    BitReader in(bits);
    Unpacked u;
    std::size_t zeros = 0;
    bool one = false;
    while (!in.at_end() && !(one = in.bit())) ++zeros;
    if (!one) {
        if (zeros == 0) throw CodecError("empty packed number");
        u.lambda = zeros - 1;
        return u;
    }
    u.lambda = zeros;
    std::size_t n = 1;
    while (in.bit()) ++n;
    std::vector<int> sign(n);
    for (auto& s : sign) s = in.bit();
    std::vector<mpz_class> mant(n, 0);
    std::vector<mpz_class> expo(n, 0);
    std::size_t columns = 0;
    while (!in.at_end()) {
        for (std::size_t i = 0; i < n; ++i) {
            mant[i] = 2 * mant[i] + in.bit();
            if (in.bit()) mpz_setbit(expo[i].get_mpz_t(), columns);
        }
        ++columns;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (expo[i] > mpz_class(static_cast<unsigned long>(max_exponent))) throw CodecError("exponent out of range");
        std::size_t e = expo[i].get_ui();
        // |a| = mant * 2^(e - columns)
        mpq_class a(mant[i]);
        if (e >= columns) a *= mpq_class(mpz_class(1) << (e - columns));
        else a /= mpq_class(mpz_class(1) << (columns - e));
        u.values.push_back(sign[i] ? mpq_class(-a) : a);
    }
    return u;
}

EncodedSnapshot normalize_snapshot(const VisibilityRegion& region, std::size_t v, std::size_t w) {
    std::vector<std::pair<Point, bool>> pts;
    for (const auto& s : region.segments) {
        pts.emplace_back(s.a, s.a_vertex);
        pts.emplace_back(s.b, s.b_vertex);
    }
    if (v >= pts.size() || w >= pts.size()) throw CodecError("reference index out of range");
    if (!pts[v].second || !pts[w].second) throw CodecError("reference point is undefined");
    const Point o = pts[v].first;
    const Point d = pts[w].first - o;
    const Real den = d.x * d.x + d.y * d.y;
    if (den.is_zero()) throw CodecError("reference points coincide");
    EncodedSnapshot out{v, w, {}};
    for (const auto& [p, defined] : pts) {
        SnapshotEntry e;
        e.defined = defined;
        if (defined) {
            Point r = p - o;
            e.x = rational_of((r.x * d.x + r.y * d.y) / den);
            e.y = rational_of((r.y * d.x - r.x * d.y) / den);
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

BitString encode_snapshot(const EncodedSnapshot& s) {
    BitString out = encode_uint(s.entries.size()) + encode_uint(s.v) + encode_uint(s.w);
    for (const auto& e : s.entries) {
        out += e.defined ? '0' : '1';
        out += encode_rational(e.defined ? e.x : mpq_class(0));
        out += encode_rational(e.defined ? e.y : mpq_class(0));
    }
    return out;
}

EncodedSnapshot decode_snapshot(BitReader& in) {
    EncodedSnapshot s;
    std::size_t count = decode_uint(in);
    s.v = decode_uint(in);
    s.w = decode_uint(in);
    for (std::size_t i = 0; i < count; ++i) {
        SnapshotEntry e;
        e.defined = !in.bit();
        e.x = decode_rational(in);
        e.y = decode_rational(in);
        s.entries.push_back(std::move(e));
    }
    return s;
}

EncodedSnapshot decode_snapshot(std::string_view bits) {
    BitReader in(bits);
    return decode_snapshot(in);
}

BitString encode_snapshots(const std::vector<EncodedSnapshot>& list, std::size_t lambda) {
    BitString out = encode_uint(lambda) + encode_uint(list.size());
    for (const auto& s : list) out += encode_snapshot(s);
    return out;
}

std::vector<EncodedSnapshot> decode_snapshots(std::string_view bits, std::size_t* lambda) {
    BitReader in(bits);
    std::size_t l = decode_uint(in);
    if (lambda) *lambda = l;
    std::size_t m = decode_uint(in);
    std::vector<EncodedSnapshot> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(decode_snapshot(in));
    return out;
}

VirtualVertex virtual_vertex(const VisibilityRegion& region) {
    std::map<Point, Real, PointLess> cand;
    for (const auto& s : region.segments) {
        if (s.a_vertex) cand.emplace(s.a, Real());
        if (s.b_vertex) cand.emplace(s.b, Real());
    }
    VirtualVertex out;
    bool first = true;
    for (auto& [p, d2] : cand) {
        Point r = p - region.viewpoint;
        d2 = r.x * r.x + r.y * r.y;
        if (first || d2 < out.distance2) {
            out.distance2 = d2;
            out.vertices = {p};
            first = false;
        } else if (d2 == out.distance2) {
            out.vertices.push_back(p);
        }
    }
    out.tie = out.vertices.size() > 1;
    return out;
}

}  // namespace meeting
