#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hrpks/error.hpp"

namespace hrpks {

using Integer = mpz_class;
using Rational = mpq_class;
using Bytes = std::vector<std::uint8_t>;

inline std::size_t bit_length(const Integer& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

/// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer pow_mod(const Integer& base, const Integer& exp, const Integer& m) {
  Integer r;
  if (exp < 0) {
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t()) == 0) {
      throw Error(ErrorCode::kInvariant, "negative exponent of non-invertible base");
    }
    Integer e = -exp;
    mpz_powm(r.get_mpz_t(), inv.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

/// Inverse of a modulo m; throws kInvariant when gcd(a, m) != 1.
inline Integer inv_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(ErrorCode::kInvariant, "element not invertible modulo " + m.get_str());
  }
  return r;
}

/// Miller-Rabin with 64 rounds.
inline bool is_probable_prime(const Integer& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Big-endian magnitude without leading zero bytes; zero maps to an empty string.
inline Bytes magnitude_bytes(const Integer& n) {
  Integer a = abs(n);
  if (a == 0) return {};
  std::size_t count = (mpz_sizeinbase(a.get_mpz_t(), 2) + 7) / 8;
  Bytes out(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, a.get_mpz_t());
  out.resize(written);
  return out;
}

inline Integer from_magnitude_bytes(const std::uint8_t* data, std::size_t len) {
  Integer r;
  if (len > 0) mpz_import(r.get_mpz_t(), len, 1, 1, 1, 0, data);
  return r;
}

/// Strict decimal parse: optional '-', digits only, no leading zeros.
inline Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  bool ok = !digits.empty();
  for (char c : digits) ok = ok && c >= '0' && c <= '9';
  if (ok && digits.size() > 1 && digits.front() == '0') ok = false;
  if (ok && text.front() == '-' && digits == "0") ok = false;
  if (!ok) throw Error(ErrorCode::kParse, "malformed integer '" + std::string(text) + "'");
  return Integer(std::string(text), 10);
}

/// Parses "n" or "n/d"; rejects non-canonical fractions.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r = Rational(parse_integer(text));
  } else {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den <= 1) throw Error(ErrorCode::kParse, "bad denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
    r.canonicalize();
    if (r.get_den() != den) {
      throw Error(ErrorCode::kParse, "rational not in lowest terms: '" + std::string(text) + "'");
    }
  }
  return r;
}

}  // namespace hrpks
