#pragma once
#include <cstdint>
#include <string>

#include "mfl/error.hpp"

namespace mfl {

// Hierarchical vertex address. A derived vertex is identified by the level at
// which it appeared (birth), the edge of the previous-level graph whose
// replacement gadget created it (parent edge path, one label per level), and
// the gadget slot it occupies. Addresses are stable across levels: the
// level-n graph contains the level-(n-1) vertex set with identical addresses.
enum class VertexKind : std::uint8_t { root_bottom, root_top, derived };

struct VertexAddress {
  VertexKind kind = VertexKind::derived;
  std::uint8_t birth = 0;     // level at which the vertex appeared (roots: 0)
  std::uint8_t slot = 0;      // gadget slot index (quaternary: unused)
  std::uint8_t path_len = 0;  // birth-1 for derived vertices of recursive families
  std::uint64_t path = 0;     // label digits packed base 10, first label most significant

  friend bool operator==(const VertexAddress& a, const VertexAddress& b) {
    return a.kind == b.kind && a.birth == b.birth && a.slot == b.slot &&
           a.path_len == b.path_len && a.path == b.path;
  }
};

// Packed paths hold one decimal digit per label; 18 digits fit in uint64 with
// headroom, far beyond any level the edge-count cap admits.
constexpr int kMaxPathLen = 18;

inline std::uint64_t pow10_u64(int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 10;
  return r;
}

inline std::uint64_t path_append(std::uint64_t path, int label) {
  return path * 10 + static_cast<std::uint64_t>(label);
}

inline int path_digit(std::uint64_t path, int len, int i) {
  return static_cast<int>(path / pow10_u64(len - 1 - i) % 10);
}

// True if `p` (length lp) is a prefix of `q` (length lq).
inline bool path_is_prefix(std::uint64_t p, int lp, std::uint64_t q, int lq) {
  if (lp > lq) return false;
  return q / pow10_u64(lq - lp) == p;
}

inline std::string path_str(std::uint64_t path, int len) {
  std::string s(static_cast<size_t>(len), '0');
  for (int i = len - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = static_cast<char>('0' + path % 10);
    path /= 10;
  }
  return s;
}

struct AddrKey {
  std::uint64_t hi, lo;
  friend bool operator==(const AddrKey& a, const AddrKey& b) { return a.hi == b.hi && a.lo == b.lo; }
};

inline AddrKey addr_key(const VertexAddress& a) {
  return AddrKey{(std::uint64_t(a.kind) << 24) | (std::uint64_t(a.birth) << 16) |
                     (std::uint64_t(a.slot) << 8) | std::uint64_t(a.path_len),
                 a.path};
}

struct AddrKeyHash {
  size_t operator()(const AddrKey& k) const {
    std::uint64_t x = k.hi * 0x9e3779b97f4a7c15ULL ^ k.lo;
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27; x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<size_t>(x);
  }
};

}  // namespace mfl
