#include "jmono/arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <sstream>

namespace jmono {

namespace {

// matrix_to_word emits roughly 2*|entry| letters for parabolic powers; keep a sane bound
constexpr std::size_t kMaxWordLetters = 1u << 20;

[[noreturn]] void fail_parse(const std::string& what) {
  throw input_error("matrix parse: " + what);
}

}  // namespace

bigint floor_div(const bigint& a, const bigint& b) {
  if (b == 0) throw internal_error("floor_div by zero");
  bigint q = a / b;  // truncates toward zero
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

MatSL2 operator*(const MatSL2& x, const MatSL2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

MatSL2 pow(const MatSL2& m, long e) {
  MatSL2 base = e < 0 ? m.inverse() : m;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  MatSL2 acc = MatSL2::identity();
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

MatSL2 MatSL2::parse(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char ch) {
    skip_ws();
    if (i >= text.size() || text[i] != ch) fail_parse(std::string("expected '") + ch + "'");
    ++i;
  };
  auto read_int = [&]() -> bigint {
    skip_ws();
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail_parse("expected integer");
    return bigint(text.substr(start, i - start));
  };

  MatSL2 m;
  expect('[');
  expect('[');
  m.a = read_int();
  expect(',');
  m.b = read_int();
  expect(']');
  expect(',');
  expect('[');
  m.c = read_int();
  expect(',');
  m.d = read_int();
  expect(']');
  expect(']');
  skip_ws();
  if (i != text.size()) fail_parse("trailing characters");
  return m;
}

std::string MatSL2::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

// ---- PslWord ----

PslGen psl_inv(PslGen g) {
  switch (g) {
    case PslGen::S: return PslGen::S;
    case PslGen::U: return PslGen::U2;
    case PslGen::U2: return PslGen::U;
  }
  throw internal_error("psl_inv: bad letter");
}

namespace {
inline bool is_u_family(PslGen g) { return g != PslGen::S; }
inline int u_exp(PslGen g) { return g == PslGen::U ? 1 : 2; }
}  // namespace

void PslWord::push(PslGen g) {
  if (!letters.empty()) {
    PslGen last = letters.back();
    if (last == PslGen::S && g == PslGen::S) {
      letters.pop_back();
      return;
    }
    if (is_u_family(last) && is_u_family(g)) {
      int e = (u_exp(last) + u_exp(g)) % 3;
      letters.pop_back();
      if (e != 0) letters.push_back(e == 1 ? PslGen::U : PslGen::U2);
      return;
    }
  }
  letters.push_back(g);
}

void PslWord::push_word(const PslWord& w) {
  for (PslGen g : w.letters) push(g);
}

PslWord PslWord::inverse() const {
  PslWord r;
  r.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    r.letters.push_back(psl_inv(*it));  // reduced in, reduced out
  return r;
}

PslWord operator*(const PslWord& x, const PslWord& y) {
  PslWord r = x;
  r.push_word(y);
  return r;
}

PslWord conjugate(const PslWord& w, const PslWord& by) {
  PslWord r = by;
  r.push_word(w);
  r.push_word(by.inverse());
  return r;
}

PslWord psl_pow(const PslWord& w, long e) {
  PslWord base = e < 0 ? w.inverse() : w;
  long k = e < 0 ? -e : e;
  PslWord acc;
  for (long i = 0; i < k; ++i) acc.push_word(base);
  return acc;
}

PslWord PslWord::from_text(const std::string& text) {
  PslWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "s")
      w.push(PslGen::S);
    else if (tok == "u")
      w.push(PslGen::U);
    else if (tok == "u2")
      w.push(PslGen::U2);
    else
      throw input_error("word parse: unknown token '" + tok + "'");
  }
  return w;
}

std::string PslWord::text() const {
  std::string out;
  for (PslGen g : letters) {
    if (!out.empty()) out += ' ';
    out += g == PslGen::S ? "s" : (g == PslGen::U ? "u" : "u2");
  }
  return out;
}

MatSL2 word_to_matrix(const PslWord& w) {
  static const MatSL2 u2 = kU * kU;
  MatSL2 m = MatSL2::identity();
  for (PslGen g : w.letters)
    m = m * (g == PslGen::S ? kS : (g == PslGen::U ? kU : u2));
  return m;
}

WordLift matrix_to_word(const MatSL2& m) {
  if (m.det() != 1) throw input_error("matrix_to_word: determinant must be 1");

  PslWord w;
  auto push_t_power = [&](const bigint& q) {
    // T = [S][U] in PSL2(Z), T^-1 = [U^2][S]
    if (q > kMaxWordLetters || q < -bigint(kMaxWordLetters) ||
        w.size() > kMaxWordLetters)
      throw input_error("matrix_to_word: entries too large");
    long n = static_cast<long>(q < 0 ? -q : q);
    for (long i = 0; i < n; ++i) {
      if (q > 0) {
        w.push(PslGen::S);
        w.push(PslGen::U);
      } else {
        w.push(PslGen::U2);
        w.push(PslGen::S);
      }
    }
  };

  MatSL2 r = m;
  while (r.c != 0) {
    bigint q = floor_div(r.a, r.c);
    push_t_power(q);
    // r <- T^-q * r : row1 -= q*row2
    r.a -= q * r.c;
    r.b -= q * r.d;
    w.push(PslGen::S);
    // r <- S^-1 * r : (row1, row2) <- (row2, -row1)
    MatSL2 next{r.c, r.d, -r.a, -r.b};
    r = next;
  }
  // now r = (e, x; 0, e) with e = +-1, i.e. e * T^(e*x)
  if (!(r.a == r.d && (r.a == 1 || r.a == -1)))
    throw internal_error("matrix_to_word: reduction failed");
  push_t_power(r.a * r.b);

  MatSL2 check = word_to_matrix(w);
  if (check == m) return {w, 1};
  if (check == -m) return {w, -1};
  throw internal_error("matrix_to_word: lift mismatch");
}

MatInfo classify_element(const MatSL2& m) {
  if (m.det() != 1) throw input_error("classify_element: determinant must be 1");
  MatInfo info;
  if (m.is_identity()) {
    info.cls = MatClass::Identity;
    info.sl_order = 1;
    info.psl_order = 1;
    return info;
  }
  if ((-m).is_identity()) {
    info.cls = MatClass::MinusIdentity;
    info.sl_order = 2;
    info.psl_order = 1;
    return info;
  }
  bigint t = m.trace();
  if (t >= 3 || t <= -3) {
    info.cls = MatClass::Hyperbolic;
    return info;
  }
  if (t == 0) {
    info.cls = MatClass::Elliptic;
    info.sl_order = 4;
    info.psl_order = 2;
    return info;
  }
  if (t == 1) {
    info.cls = MatClass::Elliptic;
    info.sl_order = 6;
    info.psl_order = 3;
    return info;
  }
  if (t == -1) {
    info.cls = MatClass::Elliptic;
    info.sl_order = 3;
    info.psl_order = 3;
    return info;
  }
  // |trace| == 2, not +-I: parabolic. m - sign*I has rank 1; the gcd of its
  // entries is invariant under conjugation and equals the translation width.
  info.cls = MatClass::Parabolic;
  info.sign = t > 0 ? 1 : -1;
  MatSL2 n = m;
  n.a -= info.sign;
  n.d -= info.sign;
  using boost::multiprecision::gcd;
  bigint g = gcd(gcd(abs(n.a), abs(n.b)), gcd(abs(n.c), abs(n.d)));
  if (g <= 0) throw internal_error("classify_element: zero parabolic width");
  info.width = g;
  return info;
}

// ---- TwistWord ----

namespace {
TwistGen twist_inv(TwistGen g) {
  switch (g) {
    case TwistGen::A: return TwistGen::Ainv;
    case TwistGen::Ainv: return TwistGen::A;
    case TwistGen::B: return TwistGen::Binv;
    case TwistGen::Binv: return TwistGen::B;
  }
  throw internal_error("twist_inv: bad letter");
}
}  // namespace

TwistWord TwistWord::inverse() const {
  TwistWord r;
  r.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    r.letters.push_back(twist_inv(*it));
  return r;
}

TwistWord operator*(const TwistWord& x, const TwistWord& y) {
  TwistWord r = x;
  r.letters.insert(r.letters.end(), y.letters.begin(), y.letters.end());
  return r;
}

TwistWord twist_pow(const TwistWord& w, long e) {
  TwistWord base = e < 0 ? w.inverse() : w;
  long k = e < 0 ? -e : e;
  TwistWord acc;
  for (long i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

TwistWord TwistWord::from_text(const std::string& text) {
  TwistWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "a")
      w.letters.push_back(TwistGen::A);
    else if (tok == "a-1")
      w.letters.push_back(TwistGen::Ainv);
    else if (tok == "b")
      w.letters.push_back(TwistGen::B);
    else if (tok == "b-1")
      w.letters.push_back(TwistGen::Binv);
    else
      throw input_error("twist word parse: unknown token '" + tok + "'");
  }
  return w;
}

std::string TwistWord::text() const {
  std::string out;
  for (TwistGen g : letters) {
    if (!out.empty()) out += ' ';
    switch (g) {
      case TwistGen::A: out += "a"; break;
      case TwistGen::Ainv: out += "a-1"; break;
      case TwistGen::B: out += "b"; break;
      case TwistGen::Binv: out += "b-1"; break;
    }
  }
  return out;
}

long twist_degree(const TwistWord& w) {
  long d = 0;
  for (TwistGen g : w.letters)
    d += (g == TwistGen::A || g == TwistGen::B) ? 1 : -1;
  return d;
}

MatSL2 twist_to_matrix(const TwistWord& w) {
  static const MatSL2 ainv = kT.inverse();
  static const MatSL2 binv = kB.inverse();
  MatSL2 m = MatSL2::identity();
  for (TwistGen g : w.letters) {
    switch (g) {
      case TwistGen::A: m = m * kT; break;
      case TwistGen::Ainv: m = m * ainv; break;
      case TwistGen::B: m = m * kB; break;
      case TwistGen::Binv: m = m * binv; break;
    }
  }
  return m;
}

}  // namespace jmono
