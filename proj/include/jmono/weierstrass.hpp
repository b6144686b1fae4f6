#pragma once
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "jmono/fibers.hpp"

namespace jmono {

using rational = boost::multiprecision::cpp_rational;

// Dense univariate polynomial with exact rational coefficients, ascending
// degree; the trailing coefficient is nonzero unless the polynomial is zero.
struct RationalPoly {
  std::vector<rational> c;

  RationalPoly() = default;
  explicit RationalPoly(std::vector<rational> coeffs);
  static RationalPoly constant(const rational& a);

  int deg() const { return (int)c.size() - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  rational at(int i) const;
  const rational& lead() const;  // requires nonzero

  bool operator==(const RationalPoly&) const = default;
};

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator-(const RationalPoly& a);
RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator*(const rational& s, const RationalPoly& a);

// quotient and remainder over the rationals; b must be nonzero
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a,
                                             const RationalPoly& b);
RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b);
RationalPoly derivative(const RationalPoly& a);
RationalPoly monic(const RationalPoly& a);
RationalPoly gcd_poly(RationalPoly a, RationalPoly b);  // monic, gcd(0,0) = 0
RationalPoly pow_poly(const RationalPoly& a, int n);

// multiplicity of the (nonconstant) factor in f; f must be nonzero
long valuation(const RationalPoly& f, const RationalPoly& place);

// f(1/s) * s^n, the coefficient reversal padded to degree n (n >= deg f)
RationalPoly reverse_to(const RationalPoly& f, int n);

// Yun decomposition: monic strata with f ~ prod strata[k]^(k+1); constant
// strata are returned as 1-entries so indices keep their meaning
std::vector<RationalPoly> squarefree_strata(const RationalPoly& f);

// pairwise coprime monic refinement of the given nonconstant factors
std::vector<RationalPoly> coprime_basis(std::vector<RationalPoly> in);

std::string poly_str(const RationalPoly& f, const std::string& var = "t");

// y^2 = x^3 + p(t) x + q(t) over P^1, a member of the family F_r
struct WeierstrassModel {
  int r = 1;
  RationalPoly p, q;

  // validates r >= 1, deg p <= 4r, deg q <= 6r, and 4p^3 + 27q^2 != 0
  static WeierstrassModel make(int r, RationalPoly p, RationalPoly q);
};

struct JInfo {
  RationalPoly delta;         // 4p^3 + 27q^2
  RationalPoly j_num, j_den;  // 4p^3 / delta in lowest terms
  long deg_j = 0;             // degree of J as a map P^1 -> P^1
};

// errors when the model is singular or J is constant (isotrivial)
JInfo discriminant_and_j(const WeierstrassModel& m);

struct PlaceReport {
  std::string place;    // primitive integer form of the factor, or "infinity"
  RationalPoly factor;  // monic; the zero polynomial stands for infinity
  int multiplicity = 1;  // number of fibers this place accounts for
  long v_p = 0, v_q = 0, v_delta = 0;  // after minimality shifts
  int shifts = 0;  // (p,q) <- (p/u^4, q/u^6) reductions applied here
  KodairaType kodaira;
  long df = 0, e = 0, j_pole = 0;  // per fiber, from the type table
};

// Valuation triples and Kodaira types at every place dividing the
// discriminant plus the place at infinity (reported even when smooth).
// Places are the coprime refinement of the squarefree strata of p, q and
// the discriminant: every root of one factor carries the same valuations,
// so no algebraic-number arithmetic is needed.
std::vector<PlaceReport> local_types(const WeierstrassModel& m);

struct ModelReport {
  int r = 0;
  long deg_j = 0;       // 0 when J is constant
  long df_total = 0;    // 12 r_min - deg_j
  long euler_total = 0; // 12 r - 12 * (total shifts)
  int shifts = 0;       // minimality reductions, counted per fiber
  std::vector<PlaceReport> places;
  std::vector<KodairaType> fibers;  // one entry per singular fiber
};

ModelReport model_report(const WeierstrassModel& m);

// p <- u^2 p, q <- u^3 q for squarefree nonconstant u; errors when the
// result leaves F_r
WeierstrassModel quadratic_twist(const WeierstrassModel& m,
                                 const RationalPoly& u);

}  // namespace jmono
