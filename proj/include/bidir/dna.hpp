#pragma once

// DNA strings over {A,C,G,T}: reverse complements, canonical k-mers and a
// 2-bit packed encoding (A=0, C=1, G=2, T=3) for k <= 32. Packed order equals
// lexicographic order for equal lengths.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "bidir/error.hpp"

namespace bidir {

inline constexpr unsigned kMaxPackedLength = 32;

namespace detail {

// 0..3 for ACGT in either case, 4 otherwise.
inline constexpr std::array<std::uint8_t, 256> kBaseCode = [] {
  std::array<std::uint8_t, 256> t{};
  for (auto& x : t) x = 4;
  t['A'] = t['a'] = 0;
  t['C'] = t['c'] = 1;
  t['G'] = t['g'] = 2;
  t['T'] = t['t'] = 3;
  return t;
}();

inline constexpr char kBaseChar[4] = {'A', 'C', 'G', 'T'};

}  // namespace detail

constexpr bool is_base(char c) noexcept { return detail::kBaseCode[static_cast<unsigned char>(c)] < 4; }

inline bool is_dna(std::string_view s) noexcept {
  for (char c : s)
    if (!is_base(c)) return false;
  return true;
}

inline char complement(char c) {
  const auto code = detail::kBaseCode[static_cast<unsigned char>(c)];
  if (code > 3) throw InputError(std::string("not a DNA base: '") + c + "'");
  return detail::kBaseChar[3 - code];
}

// Output is upper case regardless of input case.
inline std::string reverse_complement(std::string_view s) {
  std::string out(s.size(), 'A');
  for (std::size_t i = 0; i < s.size(); ++i) out[s.size() - 1 - i] = complement(s[i]);
  return out;
}

// A k-mer together with its reverse complement; `positive` is the
// lexicographically smaller strand.
struct KMolecule {
  std::string positive;
  std::string negative;
  friend bool operator==(const KMolecule&, const KMolecule&) = default;
};

inline KMolecule canonical(std::string_view s) {
  std::string fwd(s.size(), 'A');
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_base(s[i])) throw InputError(std::string("not a DNA base: '") + s[i] + "'");
    fwd[i] = detail::kBaseChar[detail::kBaseCode[static_cast<unsigned char>(s[i])]];
  }
  std::string rc = reverse_complement(fwd);
  if (rc < fwd) return {std::move(rc), std::move(fwd)};
  return {std::move(fwd), std::move(rc)};
}

// Packed k-mers. The low 2*k bits hold the bases, first base most significant.
using PackedKmer = std::uint64_t;

constexpr PackedKmer kmer_mask(unsigned k) noexcept {
  return k >= 32 ? ~PackedKmer{0} : (PackedKmer{1} << (2 * k)) - 1;
}

inline PackedKmer pack(std::string_view s) {
  if (s.size() > kMaxPackedLength) throw DomainError("k-mer longer than 32 bases cannot be packed");
  PackedKmer code = 0;
  for (char c : s) {
    const auto b = detail::kBaseCode[static_cast<unsigned char>(c)];
    if (b > 3) throw InputError(std::string("not a DNA base: '") + c + "'");
    code = (code << 2) | b;
  }
  return code;
}

inline std::string unpack(PackedKmer code, unsigned k) {
  std::string s(k, 'A');
  for (unsigned i = 0; i < k; ++i) {
    s[k - 1 - i] = detail::kBaseChar[code & 3];
    code >>= 2;
  }
  return s;
}

constexpr PackedKmer reverse_complement(PackedKmer code, unsigned k) noexcept {
  PackedKmer rc = 0;
  for (unsigned i = 0; i < k; ++i) {
    rc = (rc << 2) | (3 - (code & 3));
    code >>= 2;
  }
  return rc;
}

constexpr PackedKmer canonical(PackedKmer code, unsigned k) noexcept {
  const PackedKmer rc = reverse_complement(code, k);
  return rc < code ? rc : code;
}

}  // namespace bidir
