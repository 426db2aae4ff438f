#pragma once

#include <openssl/sha.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hrpks/bigint.hpp"
#include "hrpks/weierstrass.hpp"

namespace hrpks {

using ModPoint = AffinePoint<Integer>;
using RationalPoint = AffinePoint<Rational>;
using Json = nlohmann::json;

/// Domain tags for every hash in the scheme.
namespace tags {
inline constexpr std::string_view kChallenge = "HRPKS-v1/chal";
inline constexpr std::string_view kGamma = "HRPKS-v1/gamma";
inline constexpr std::string_view kAuxH = "HRPKS-v1/h";
}  // namespace tags

/// Tagged value fed to the transcript hash.
struct Encodable {
  enum class Tag : std::uint8_t {
    kInteger = 0x01,
    kRational = 0x02,
    kModPoint = 0x03,
    kBytes = 0x04,
    kSequence = 0x05,
  };

  std::variant<Integer, Rational, ModPoint, Bytes, std::vector<Encodable>> value;

  Encodable(Integer v) : value(std::move(v)) {}
  Encodable(long v) : value(Integer(v)) {}
  Encodable(Rational v) : value(std::move(v)) {}
  Encodable(ModPoint v) : value(std::move(v)) {}
  Encodable(Bytes v) : value(std::move(v)) {}
  Encodable(std::vector<Encodable> v) : value(std::move(v)) {}

  static Encodable bytes(std::string_view s) { return Encodable(Bytes(s.begin(), s.end())); }
  static Encodable seq(std::vector<Encodable> items) { return Encodable(std::move(items)); }

  friend bool operator==(const Encodable&, const Encodable&) = default;
};

namespace detail {

inline void put_header(Bytes& out, Encodable::Tag tag, std::size_t len) {
  if (len > 0xffffffffu) throw Error(ErrorCode::kInvariant, "encoding payload exceeds 4 GiB");
  out.push_back(static_cast<std::uint8_t>(tag));
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
}

inline void put(Bytes& out, Encodable::Tag tag, const Bytes& payload) {
  put_header(out, tag, payload.size());
  out.insert(out.end(), payload.begin(), payload.end());
}

inline Bytes integer_payload(const Integer& n) {
  Bytes payload{static_cast<std::uint8_t>(n < 0 ? 1 : 0)};
  Bytes mag = magnitude_bytes(n);
  payload.insert(payload.end(), mag.begin(), mag.end());
  return payload;
}

inline void encode_into(Bytes& out, const Encodable& v);

inline void encode_integer(Bytes& out, const Integer& n) { put(out, Encodable::Tag::kInteger, integer_payload(n)); }

inline void encode_into(Bytes& out, const Encodable& v) {
  std::visit(
      [&out](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Integer>) {
          encode_integer(out, x);
        } else if constexpr (std::is_same_v<T, Rational>) {
          Bytes payload;
          encode_integer(payload, x.get_num());
          encode_integer(payload, x.get_den());
          put(out, Encodable::Tag::kRational, payload);
        } else if constexpr (std::is_same_v<T, ModPoint>) {
          Bytes payload{static_cast<std::uint8_t>(x.infinity ? 1 : 0)};
          encode_integer(payload, x.infinity ? Integer(0) : x.x);
          encode_integer(payload, x.infinity ? Integer(0) : x.y);
          put(out, Encodable::Tag::kModPoint, payload);
        } else if constexpr (std::is_same_v<T, Bytes>) {
          put(out, Encodable::Tag::kBytes, x);
        } else {
          Bytes payload;
          for (const auto& item : x) encode_into(payload, item);
          put(out, Encodable::Tag::kSequence, payload);
        }
      },
      v.value);
}

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t len) : data_(data), len_(len) {}

  bool done() const { return pos_ == len_; }

  Encodable next() {
    if (len_ - pos_ < 5) fail("truncated header");
    auto tag = static_cast<Encodable::Tag>(data_[pos_]);
    std::size_t len = 0;
    for (int i = 1; i <= 4; ++i) len = (len << 8) | data_[pos_ + i];
    pos_ += 5;
    if (len_ - pos_ < len) fail("truncated payload");
    Reader body(data_ + pos_, len);
    pos_ += len;
    switch (tag) {
      case Encodable::Tag::kInteger:
        return Encodable(body.integer_payload());
      case Encodable::Tag::kRational: {
        Integer num = body.integer();
        Integer den = body.integer();
        body.expect_done();
        if (den <= 0) fail("non-positive denominator");
        Rational q(num, den);
        q.canonicalize();
        if (q.get_den() != den) fail("rational not in lowest terms");
        return Encodable(q);
      }
      case Encodable::Tag::kModPoint: {
        if (body.len_ < 1) fail("empty point");
        std::uint8_t flag = body.data_[body.pos_++];
        if (flag > 1) fail("bad infinity flag");
        Integer x = body.integer();
        Integer y = body.integer();
        body.expect_done();
        if (flag == 1) {
          if (x != 0 || y != 0) fail("infinity with coordinates");
          return Encodable(ModPoint::at_infinity());
        }
        return Encodable(ModPoint::affine(x, y));
      }
      case Encodable::Tag::kBytes:
        return Encodable(Bytes(body.data_, body.data_ + body.len_));
      case Encodable::Tag::kSequence: {
        std::vector<Encodable> items;
        while (!body.done()) items.push_back(body.next());
        return Encodable(std::move(items));
      }
    }
    fail("unknown tag");
  }

 private:
  [[noreturn]] static void fail(const std::string& why) { throw Error(ErrorCode::kParse, "decode: " + why); }

  void expect_done() const {
    if (!done()) fail("trailing bytes");
  }

  Integer integer() {
    Encodable e = next();
    if (auto* n = std::get_if<Integer>(&e.value)) return *n;
    fail("expected integer");
  }

  Integer integer_payload() {
    if (len_ < 1) fail("missing sign byte");
    std::uint8_t sign = data_[0];
    if (sign > 1) fail("bad sign byte");
    if (len_ > 1 && data_[1] == 0) fail("non-minimal magnitude");
    if (sign == 1 && len_ == 1) fail("negative zero");
    Integer n = from_magnitude_bytes(data_ + 1, len_ - 1);
    return sign == 1 ? Integer(-n) : n;
  }

  const std::uint8_t* data_;
  std::size_t len_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Tag-length-value encoding: one tag byte, a 4-byte big-endian length, then the payload.
inline Bytes encode(const Encodable& value) {
  Bytes out;
  detail::encode_into(out, value);
  return out;
}

/// Inverse of encode; rejects every byte string encode cannot produce.
inline Encodable decode(const Bytes& bytes) {
  detail::Reader reader(bytes.data(), bytes.size());
  Encodable v = reader.next();
  if (!reader.done()) throw Error(ErrorCode::kParse, "decode: trailing bytes");
  return v;
}

using Digest = std::array<std::uint8_t, SHA256_DIGEST_LENGTH>;

inline Digest sha256(const std::uint8_t* data, std::size_t len) {
  Digest d{};
  SHA256(data, len, d.data());
  return d;
}

inline Digest sha256(std::string_view s) {
  return sha256(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

inline Bytes to_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }

inline std::string to_hex(const Digest& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (auto b : d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

/// SHA-256(domain_tag || encode(seq(parts))) truncated to its leading
/// challenge_bits bits. Requests wider than 256 bits append further blocks
/// SHA-256(domain_tag || encode(...) || be32(i)) for i = 1, 2, ...
inline Integer hash_to_challenge(std::string_view domain_tag, const std::vector<Encodable>& parts,
                                 std::size_t challenge_bits) {
  if (challenge_bits < 8) throw Error(ErrorCode::kInvariant, "challenge_bits must be at least 8");
  Bytes input(domain_tag.begin(), domain_tag.end());
  Bytes body = encode(Encodable::seq(parts));
  input.insert(input.end(), body.begin(), body.end());

  Bytes stream;
  Digest first = sha256(input.data(), input.size());
  stream.insert(stream.end(), first.begin(), first.end());
  for (std::uint32_t block = 1; stream.size() * 8 < challenge_bits; ++block) {
    Bytes extended = input;
    for (int shift = 24; shift >= 0; shift -= 8) extended.push_back(static_cast<std::uint8_t>(block >> shift));
    Digest d = sha256(extended.data(), extended.size());
    stream.insert(stream.end(), d.begin(), d.end());
  }
  Integer value = from_magnitude_bytes(stream.data(), stream.size());
  return value >> static_cast<mp_bitcnt_t>(stream.size() * 8 - challenge_bits);
}

// ---- canonical text documents ------------------------------------------

inline constexpr std::string_view kFormatVersion = "1";

inline Json int_to_json(const Integer& n) { return n.get_str(); }

inline Integer int_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::kParse, "integer field must be a decimal string");
  return parse_integer(j.get<std::string>());
}

inline Json rational_to_json(const Rational& q) { return q.get_str(); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::kParse, "rational field must be a string");
  return parse_rational(j.get<std::string>());
}

inline Json point_to_json(const ModPoint& p) {
  if (p.infinity) return Json{{"inf", true}};
  return Json{{"inf", false}, {"x", int_to_json(p.x)}, {"y", int_to_json(p.y)}};
}

inline ModPoint point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("inf") || !j["inf"].is_boolean()) {
    throw Error(ErrorCode::kParse, "malformed point");
  }
  if (j["inf"].get<bool>()) return ModPoint::at_infinity();
  return ModPoint::affine(int_from_json(j.at("x")), int_from_json(j.at("y")));
}

inline Json rational_point_to_json(const RationalPoint& p) {
  if (p.infinity) return Json{{"inf", true}};
  return Json{{"inf", false}, {"x", rational_to_json(p.x)}, {"y", rational_to_json(p.y)}};
}

inline RationalPoint rational_point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("inf") || !j["inf"].is_boolean()) {
    throw Error(ErrorCode::kParse, "malformed rational point");
  }
  if (j["inf"].get<bool>()) return RationalPoint::at_infinity();
  return RationalPoint::affine(rational_from_json(j.at("x")), rational_from_json(j.at("y")));
}

inline Json int_vector_to_json(const std::vector<Integer>& v) {
  Json arr = Json::array();
  for (const auto& n : v) arr.push_back(int_to_json(n));
  return arr;
}

inline std::vector<Integer> int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kParse, "expected array of integers");
  std::vector<Integer> out;
  for (const auto& e : j) out.push_back(int_from_json(e));
  return out;
}

inline std::string string_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::kParse, "expected string");
  return j.get<std::string>();
}

/// Wraps a body with kind/version and renders it canonically: sorted keys, no whitespace.
inline std::string canonical_document(std::string_view kind, Json body) {
  body["kind"] = std::string(kind);
  body["version"] = std::string(kFormatVersion);
  return body.dump();
}

/// Parses a document and checks its kind/version header.
inline Json open_document(std::string_view text, std::string_view expected_kind) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "document is not an object");
  if (string_from_json(j.value("kind", Json())) != expected_kind) {
    throw Error(ErrorCode::kParse, "expected kind '" + std::string(expected_kind) + "'");
  }
  if (string_from_json(j.value("version", Json())) != kFormatVersion) {
    throw Error(ErrorCode::kParse, "unsupported format version");
  }
  return j;
}

inline std::string peek_kind(std::string_view text) {
  try {
    Json j = Json::parse(text);
    return j.is_object() && j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  } catch (const Json::parse_error&) {
    return "";
  }
}

}  // namespace hrpks
