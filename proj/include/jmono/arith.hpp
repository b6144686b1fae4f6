#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "jmono/error.hpp"

namespace jmono {

using bigint = boost::multiprecision::cpp_int;

bigint floor_div(const bigint& a, const bigint& b);

// 2x2 integer matrix, determinant 1 expected by most operations.
struct MatSL2 {
  bigint a{1}, b{0}, c{0}, d{1};

  bigint det() const { return a * d - b * c; }
  bigint trace() const { return a + d; }
  MatSL2 inverse() const { return {d, -b, -c, a}; }
  MatSL2 operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const MatSL2&) const = default;
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  static MatSL2 identity() { return {}; }
  static MatSL2 parse(const std::string& text);  // "[[a,b],[c,d]]"
  std::string str() const;
};

MatSL2 operator*(const MatSL2& x, const MatSL2& y);
MatSL2 pow(const MatSL2& m, long e);

// Generators. kU = kS * kT has order 6 in SL2(Z); its image in PSL2(Z) has order 3.
inline const MatSL2 kS{0, -1, 1, 0};
inline const MatSL2 kT{1, 1, 0, 1};
inline const MatSL2 kU{0, -1, 1, 1};
inline const MatSL2 kB{1, 0, -1, 1};  // kS * kT * kS.inverse()

// ---- words in PSL2(Z) = Z/2 * Z/3 ----

enum class PslGen : std::uint8_t { S, U, U2 };  // sigma, upsilon, upsilon^2

PslGen psl_inv(PslGen g);

struct PslWord {
  std::vector<PslGen> letters;  // kept reduced: no SS, no adjacent U-family pair

  void push(PslGen g);
  void push_word(const PslWord& w);
  PslWord inverse() const;
  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(const PslWord&) const = default;

  static PslWord from_text(const std::string& text);  // whitespace-separated tokens s u u2
  std::string text() const;
};

PslWord operator*(const PslWord& x, const PslWord& y);
PslWord conjugate(const PslWord& w, const PslWord& by);  // by * w * by^-1
PslWord psl_pow(const PslWord& w, long e);

// S -> kS, U -> kU, U2 -> kU^2; the product is one fixed lift of the word to SL2(Z).
MatSL2 word_to_matrix(const PslWord& w);

struct WordLift {
  PslWord word;
  int sign;  // word_to_matrix(word) == sign * m
};

// Inverts word_to_matrix up to sign; input must have determinant 1.
WordLift matrix_to_word(const MatSL2& m);

// ---- conjugacy classification ----

enum class MatClass { Identity, MinusIdentity, Elliptic, Parabolic, Hyperbolic };

struct MatInfo {
  MatClass cls = MatClass::Identity;
  int sl_order = 0;   // order in SL2(Z); 0 when infinite
  int psl_order = 0;  // order of the image in PSL2(Z); 0 when infinite
  bigint width = 0;   // parabolic only: the w >= 1 with m conjugate to sign * (translation by w)
  int sign = 0;       // parabolic only: sign of the trace
};

MatInfo classify_element(const MatSL2& m);

// ---- words in the free group <a, b> used for fiber monodromy ----

enum class TwistGen : std::uint8_t { A, Ainv, B, Binv };

struct TwistWord {
  std::vector<TwistGen> letters;  // free word, stored as written

  TwistWord inverse() const;
  bool operator==(const TwistWord&) const = default;

  static TwistWord from_text(const std::string& text);  // tokens a a-1 b b-1
  std::string text() const;
};

TwistWord operator*(const TwistWord& x, const TwistWord& y);
TwistWord twist_pow(const TwistWord& w, long e);
long twist_degree(const TwistWord& w);        // exponent sum of both letters
MatSL2 twist_to_matrix(const TwistWord& w);   // a -> kT, b -> kB

}  // namespace jmono
