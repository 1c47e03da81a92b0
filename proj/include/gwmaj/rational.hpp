#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gwmaj {

// Exact rational scalar. gmpxx keeps values canonical (gcd(|num|, den) = 1,
// den > 0), so operator== is exact arithmetic equality.
using Rational = mpq_class;

using Vec = std::vector<Rational>;

// Deterministic random stream. Generators consume raw 64-bit draws only;
// std::*_distribution is avoided because its output is implementation-defined
// and fixed-seed fixtures must reproduce across platforms.
using Rng = std::mt19937_64;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Rational& value) { return value.get_str(); }

/// Parses "p" or "p/q" with q > 0. Whitespace anywhere in the token is
/// ignored; any other character is rejected.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  const auto fail = [&text]() -> void {
    throw ParseError("\"" + text + "\" is not an integer or fraction p/q with q > 0");
  };
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) fail();
  if (i < s.size()) {
    if (s[i] != '/') fail();
    const std::string den = s.substr(i + 1);
    if (den.empty()) fail();
    for (char ch : den) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) fail();
    }
    if (den.find_first_not_of('0') == std::string::npos) {
      throw ParseError("\"" + text + "\" has a zero denominator");
    }
  }
  if (s.front() == '+') s.erase(0, 1);
  Rational value(s);
  value.canonicalize();
  return value;
}

/// Uniform integer in [lo, hi] from the raw engine stream.
inline long draw_int(Rng& rng, long lo, long hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

// Single-digit numerators and denominators keep elimination bit-growth tame
// in randomized runs.
inline Rational draw_rational(Rng& rng, long num_lo = -9, long num_hi = 9,
                              long den_lo = 1, long den_hi = 9) {
  const long num = draw_int(rng, num_lo, num_hi);
  const long den = draw_int(rng, den_lo, den_hi);
  Rational value{mpz_class(num), mpz_class(den)};
  value.canonicalize();
  return value;
}

/// Derives an independent substream seed from a master seed (splitmix64).
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gwmaj
