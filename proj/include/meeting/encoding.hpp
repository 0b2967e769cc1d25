#pragma once

#include "meeting/geometry.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace meeting {

/// Fractional binary digits b1 b2 ... of a number in [0,1), as '0'/'1'
/// characters. Digits past the end of the string are 0.
using BitString = std::string;

class CodecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact value sum b_i 2^-i.
mpq_class bits_value(std::string_view bits);
/// Right-pads with zeros to a multiple of four bits.
std::string bits_to_hex(std::string_view bits);
BitString hex_to_bits(std::string_view hex);

/// Reads bits at `pos`, treating positions past the end as 0. Streaming
/// decoders advance `pos`.
class BitReader {
public:
    explicit BitReader(std::string_view bits, std::size_t pos = 0) : bits_(bits), pos_(pos) {}
    int bit();
    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= bits_.size(); }

private:
    std::string_view bits_;
    std::size_t pos_;
};

/// 0^n 1.
BitString encode_uint(std::size_t n);
/// Throws CodecError when no terminating 1 is found.
std::size_t decode_uint(BitReader& in);
std::size_t decode_uint(std::string_view bits);

/// code(sign) code(|p|) code(q), with sign 0 for p >= 0 and 1 otherwise.
BitString encode_rational(const mpq_class& r);
mpq_class decode_rational(BitReader& in);
mpq_class decode_rational(std::string_view bits);

struct Unpacked {
    std::vector<mpq_class> values;
    std::size_t lambda = 0;
};

/// 0^lambda 1^n 0 s_1..s_n, then column j holds b^(1)_j e^(1)_j .. b^(n)_j e^(n)_j,
/// where |a_i| = sum_j b^(i)_j 2^(e_i - j) and e_i = sum_j e^(i)_j 2^(j-1).
/// e_i is the least exponent with |a_i| < 2^e_i. Values must be dyadic.
BitString pack_reals(const std::vector<mpq_class>& values, std::size_t lambda);
/// An all-zero string decodes to no values with lambda = length - 1.
Unpacked unpack_reals(std::string_view bits);

struct SnapshotEntry {
    bool defined = false;
    mpq_class x, y;

    friend bool operator==(const SnapshotEntry& a, const SnapshotEntry& b) {
        return a.defined == b.defined && a.x == b.x && a.y == b.y;
    }
};

/// Segment endpoints in order (a_1, b_1, a_2, b_2, ...), each with a defined
/// bit. Defined points are expressed in the frame sending entry v to the
/// origin and entry w to (1,0); undefined ones are stored as (0,0).
struct EncodedSnapshot {
    std::size_t v = 0, w = 0;
    std::vector<SnapshotEntry> entries;

    friend bool operator==(const EncodedSnapshot& a, const EncodedSnapshot& b) {
        return a.v == b.v && a.w == b.w && a.entries == b.entries;
    }
};

/// Normalizes the region and builds the entry list. Throws CodecError if v or
/// w is undefined, they coincide, or a defined coordinate is not rational.
EncodedSnapshot normalize_snapshot(const VisibilityRegion& region, std::size_t v, std::size_t w);
/// code(count) code(v) code(w) then per entry: undefined bit, code(x), code(y).
BitString encode_snapshot(const EncodedSnapshot& s);
EncodedSnapshot decode_snapshot(BitReader& in);
EncodedSnapshot decode_snapshot(std::string_view bits);

/// 0^lambda 1 code(m) followed by m snapshot codes.
BitString encode_snapshots(const std::vector<EncodedSnapshot>& list, std::size_t lambda);
std::vector<EncodedSnapshot> decode_snapshots(std::string_view bits, std::size_t* lambda = nullptr);

struct VirtualVertex {
    bool tie = false;
    /// The closest fully visible vertex, or every tied vertex.
    std::vector<Point> vertices;
    /// Squared distance from the viewpoint.
    Real distance2;
};

/// Closest fully visible vertex of the region. Empty `vertices` when none
/// is visible.
VirtualVertex virtual_vertex(const VisibilityRegion& region);

}  // namespace meeting
