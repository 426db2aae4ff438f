#include <gtest/gtest.h>

#include <set>

#include "hrpks/encoding.hpp"
#include "hrpks/rng.hpp"

namespace hrpks {
namespace {

std::string hex(const Bytes& b) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (auto v : b) {
    out.push_back(kHex[v >> 4]);
    out.push_back(kHex[v & 15]);
  }
  return out;
}

// Vectors from tests/oracles/encoding_vectors.py.
TEST(Encode, IntegerZeroHasEmptyMagnitude) { EXPECT_EQ(hex(encode(Encodable(Integer(0)))), "010000000100"); }

TEST(Encode, IntegerToyPrime) {
  EXPECT_EQ(hex(encode(Encodable(Integer("3123456773")))), "010000000500ba2c2b05");
}

TEST(Encode, NegativeInteger) { EXPECT_EQ(hex(encode(Encodable(Integer(-1)))), "01000000020101"); }

TEST(Encode, SequenceDiffersFromConcatenatedBlob) {
  Encodable a = Encodable::bytes("ab");
  Encodable b = Encodable::bytes("c");
  Encodable pair = Encodable::seq({a, b});
  Encodable blob = Encodable::bytes("abc");
  EXPECT_NE(encode(pair), encode(blob));
  EXPECT_NE(encode(pair), encode(Encodable::seq({blob})));
}

TEST(Encode, ModPointCarriesInfinityFlag) {
  Bytes inf = encode(Encodable(ModPoint::at_infinity()));
  Bytes origin = encode(Encodable(ModPoint::affine(0, 0)));
  EXPECT_NE(inf, origin);
  EXPECT_EQ(inf[5], 1);
  EXPECT_EQ(origin[5], 0);
}

TEST(Decode, RejectsNonCanonicalInputs) {
  EXPECT_THROW(decode(Bytes{0x01, 0, 0, 0, 2, 0x00, 0x00}), Error);           // leading zero magnitude
  EXPECT_THROW(decode(Bytes{0x01, 0, 0, 0, 1, 0x01}), Error);                 // negative zero
  EXPECT_THROW(decode(Bytes{0x01, 0, 0, 0, 1, 0x00, 0xff}), Error);           // trailing byte
  EXPECT_THROW(decode(Bytes{0x09, 0, 0, 0, 0}), Error);                       // unknown tag
  EXPECT_THROW(decode(Bytes{0x04, 0, 0, 0, 9, 1}), Error);                    // truncated
  Bytes unreduced = encode(Encodable::seq({}));                               // build 2/4 by hand
  unreduced = {0x02, 0, 0, 0, 14, 0x01, 0, 0, 0, 2, 0, 2, 0x01, 0, 0, 0, 2, 0, 4};
  EXPECT_THROW(decode(unreduced), Error);
}

Encodable random_value(Rng& rng, int depth) {
  switch (static_cast<int>(rng.below(depth > 0 ? 5 : 4).get_ui())) {
    case 0: {
      Integer n = rng.bits(rng.below(200).get_ui());
      return Encodable(rng.below(2) == 1 ? Integer(-n) : n);
    }
    case 1: {
      Integer num = rng.bits(80) - rng.bits(80);
      Integer den = rng.bits(60) + 1;
      Rational q(num, den);
      q.canonicalize();
      return Encodable(q);
    }
    case 2:
      return rng.below(8) == 0 ? Encodable(ModPoint::at_infinity()) : Encodable(ModPoint::affine(rng.bits(64), rng.bits(64)));
    case 3: {
      Bytes b(rng.below(12).get_ui());
      for (auto& v : b) v = static_cast<std::uint8_t>(rng.below(256).get_ui());
      return Encodable(b);
    }
    default: {
      std::vector<Encodable> items;
      for (unsigned long i = rng.below(4).get_ui(); i > 0; --i) items.push_back(random_value(rng, depth - 1));
      return Encodable::seq(std::move(items));
    }
  }
}

TEST(EncodeProperty, RoundTripOverRandomValues) {
  Rng rng = Rng::seeded("encoding-roundtrip");
  for (int i = 0; i < 1000; ++i) {
    Encodable v = random_value(rng, 3);
    EXPECT_EQ(decode(encode(v)), v);
  }
}

TEST(EncodeProperty, DistinctValuesNeverCollide) {
  Rng rng = Rng::seeded("encoding-injective");
  for (int i = 0; i < 1000; ++i) {
    Encodable a = random_value(rng, 2);
    Encodable b = random_value(rng, 2);
    if (a == b) continue;
    EXPECT_NE(encode(a), encode(b));
  }
}

std::vector<Encodable> fixed_parts() { return {Encodable(Integer("3123456773")), Encodable(Integer(-2))}; }

TEST(HashToChallenge, MatchesIndependentVectors) {
  EXPECT_EQ(hash_to_challenge(tags::kChallenge, fixed_parts(), 31), 1667855369);
  EXPECT_EQ(hash_to_challenge(tags::kChallenge, fixed_parts(), 8), 198);
  EXPECT_EQ(hash_to_challenge(tags::kChallenge, fixed_parts(), 128), Integer("264282232580534571900289661931414412848"));
  EXPECT_EQ(hash_to_challenge(tags::kGamma, fixed_parts(), 31), 610998676);
}

TEST(HashToChallenge, DeterministicAndDomainSeparated) {
  EXPECT_EQ(hash_to_challenge(tags::kChallenge, fixed_parts(), 64), hash_to_challenge(tags::kChallenge, fixed_parts(), 64));
  EXPECT_NE(hash_to_challenge(tags::kChallenge, fixed_parts(), 64), hash_to_challenge(tags::kGamma, fixed_parts(), 64));
}

TEST(HashToChallenge, OutputBelowTwoToTheBits) {
  Rng rng = Rng::seeded("challenge-range");
  for (std::size_t bits : {8u, 9u, 31u, 64u, 255u, 256u, 257u, 600u}) {
    for (int i = 0; i < 50; ++i) {
      Integer c = hash_to_challenge(tags::kChallenge, {Encodable(rng.bits(100))}, bits);
      EXPECT_GE(c, 0);
      EXPECT_LT(c, Integer(1) << bits);
    }
  }
  EXPECT_THROW(hash_to_challenge(tags::kChallenge, {}, 7), Error);
}

TEST(Parse, StrictIntegerAndRationalText) {
  EXPECT_EQ(parse_integer("-17"), -17);
  EXPECT_THROW(parse_integer("017"), Error);
  EXPECT_THROW(parse_integer("-0"), Error);
  EXPECT_THROW(parse_integer("1e3"), Error);
  EXPECT_EQ(parse_rational("19/25"), Rational(19, 25));
  EXPECT_THROW(parse_rational("2/4"), Error);
  EXPECT_THROW(parse_rational("1/-3"), Error);
}

TEST(CanonicalDocument, SortedKeysNoWhitespace) {
  std::string doc = canonical_document("rl", Json{{"zeta", "1"}, {"alpha", "2"}});
  EXPECT_EQ(doc, R"({"alpha":"2","kind":"rl","version":"1","zeta":"1"})");
  EXPECT_THROW(open_document(doc, "params"), Error);
  EXPECT_THROW(open_document("{not json", "rl"), Error);
}

}  // namespace
}  // namespace hrpks
