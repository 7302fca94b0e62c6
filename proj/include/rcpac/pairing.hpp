#pragma once

#include <cassert>
#include <cstring>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rcpac {

using Nat = boost::multiprecision::cpp_int;

// The canonical pairing is bit interleaving: pair(a, b) holds a's bits at
// even positions and b's at odd positions. A total bijection N x N <-> N,
// monotone in each argument, with |pair(a,b)| = 2 max(|a|,|b|) bits and
// linear-time pair/unpair (program codes reach hundreds of kilobits in the
// recursion-theorem machinery). One pairing serves everywhere: machine
// codes, proof indices, two-coordinate domain points.

namespace pairing_detail {

struct Tables {
    std::uint16_t spread[256];   // byte -> bits at even positions
    std::uint8_t even[256];      // byte -> its even-position bits, packed
    constexpr Tables() : spread{}, even{} {
        for (int v = 0; v < 256; ++v) {
            std::uint16_t s = 0;
            std::uint8_t e = 0;
            for (int bit = 0; bit < 8; ++bit) {
                if (v & (1 << bit)) s |= static_cast<std::uint16_t>(1) << (2 * bit);
                if (bit % 2 == 0 && (v & (1 << bit))) e |= static_cast<std::uint8_t>(1) << (bit / 2);
            }
            spread[v] = s;
            even[v] = e;
        }
    }
};
inline constexpr Tables tables{};

// Raw little-endian bytes straight from the limb array (and back): the
// pairing is linear-time even on the multi-kilobit codes the recursion
// machinery produces.
inline std::vector<unsigned char> to_bytes(const Nat& n) {
    const auto& be = n.backend();
    const std::size_t limb_bytes = sizeof(be.limbs()[0]);
    std::vector<unsigned char> bytes(be.size() * limb_bytes);
    std::memcpy(bytes.data(), be.limbs(), bytes.size());
    while (!bytes.empty() && bytes.back() == 0) bytes.pop_back();
    return bytes;
}

inline Nat from_bytes(const std::vector<unsigned char>& bytes) {
    Nat n = 0;
    if (bytes.empty()) return n;
    auto& be = n.backend();
    using limb_t = std::decay_t<decltype(be.limbs()[0])>;
    const std::size_t limb_bytes = sizeof(limb_t);
    const std::size_t limbs = (bytes.size() + limb_bytes - 1) / limb_bytes;
    be.resize(static_cast<unsigned>(limbs), static_cast<unsigned>(limbs));
    std::memset(be.limbs(), 0, limbs * limb_bytes);
    std::memcpy(be.limbs(), bytes.data(), bytes.size());
    be.normalize();
    return n;
}

}  // namespace pairing_detail

inline Nat nat_pair(const Nat& a, const Nat& b) {
    using namespace pairing_detail;
    auto ab = to_bytes(a);
    auto bb = to_bytes(b);
    std::size_t n = std::max(ab.size(), bb.size());
    if (n == 0) return 0;
    std::vector<unsigned char> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint16_t w = tables.spread[i < ab.size() ? ab[i] : 0];
        w |= static_cast<std::uint16_t>(tables.spread[i < bb.size() ? bb[i] : 0] << 1);
        out[2 * i] = static_cast<unsigned char>(w & 0xff);
        out[2 * i + 1] = static_cast<unsigned char>(w >> 8);
    }
    return from_bytes(out);
}

inline std::pair<Nat, Nat> nat_unpair(const Nat& n) {
    using namespace pairing_detail;
    auto bytes = to_bytes(n);
    if (bytes.size() % 2) bytes.push_back(0);
    std::size_t half = bytes.size() / 2;
    std::vector<unsigned char> ab(half), bb(half);
    for (std::size_t i = 0; i < half; ++i) {
        unsigned char lo = bytes[2 * i];
        unsigned char hi = bytes[2 * i + 1];
        ab[i] = static_cast<unsigned char>(tables.even[lo] | (tables.even[hi] << 4));
        bb[i] = static_cast<unsigned char>(tables.even[static_cast<unsigned char>(lo >> 1)] |
                                           (tables.even[static_cast<unsigned char>(hi >> 1)] << 4));
    }
    return {from_bytes(ab), from_bytes(bb)};
}

// 64-bit variant for domain points (each side below 2^32).
inline std::uint64_t u64_pair(std::uint64_t a, std::uint64_t b) {
    using namespace pairing_detail;
    if ((a >> 32) != 0 || (b >> 32) != 0)
        throw std::overflow_error("u64_pair: components must fit 32 bits");
    std::uint64_t out = 0;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t w = tables.spread[(a >> (8 * i)) & 0xff];
        w |= static_cast<std::uint64_t>(tables.spread[(b >> (8 * i)) & 0xff]) << 1;
        out |= w << (16 * i);
    }
    return out;
}

inline std::pair<std::uint64_t, std::uint64_t> u64_unpair(std::uint64_t n) {
    using namespace pairing_detail;
    std::uint64_t a = 0, b = 0;
    for (int i = 0; i < 8; ++i) {
        unsigned char byte = static_cast<unsigned char>((n >> (8 * i)) & 0xff);
        std::uint64_t ea = tables.even[byte];
        std::uint64_t eb = tables.even[static_cast<unsigned char>(byte >> 1)];
        a |= ea << (4 * i);
        b |= eb << (4 * i);
    }
    return {a, b};
}

}  // namespace rcpac
