#include "jmono/weierstrass.hpp"

#include <algorithm>
#include <sstream>

#include "jmono/error.hpp"

namespace jmono {

namespace {

using bigint = boost::multiprecision::cpp_int;

// stand-in valuation of the zero polynomial; survives minimality shifts
const long kInfty = 1L << 40;

}  // namespace

RationalPoly::RationalPoly(std::vector<rational> coeffs) : c(std::move(coeffs)) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

RationalPoly RationalPoly::constant(const rational& a) {
  return RationalPoly({a});
}

rational RationalPoly::at(int i) const {
  return i >= 0 && i < (int)c.size() ? c[i] : rational(0);
}

const rational& RationalPoly::lead() const {
  if (c.empty()) throw internal_error("leading coefficient of the zero polynomial");
  return c.back();
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<rational> out(std::max(a.c.size(), b.c.size()), rational(0));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.at((int)i) + b.at((int)i);
  return RationalPoly(std::move(out));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<rational> out(std::max(a.c.size(), b.c.size()), rational(0));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.at((int)i) - b.at((int)i);
  return RationalPoly(std::move(out));
}

RationalPoly operator-(const RationalPoly& a) {
  std::vector<rational> out = a.c;
  for (rational& x : out) x = -x;
  return RationalPoly(std::move(out));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly();
  std::vector<rational> out(a.c.size() + b.c.size() - 1, rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
  return RationalPoly(std::move(out));
}

RationalPoly operator*(const rational& s, const RationalPoly& a) {
  std::vector<rational> out = a.c;
  for (rational& x : out) x *= s;
  return RationalPoly(std::move(out));
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a,
                                             const RationalPoly& b) {
  if (b.is_zero()) throw internal_error("polynomial division by zero");
  if (a.deg() < b.deg()) return {RationalPoly(), a};
  std::vector<rational> rem = a.c;
  std::vector<rational> quo(a.deg() - b.deg() + 1, rational(0));
  for (int i = a.deg(); i >= b.deg(); --i) {
    rational f = rem[i] / b.lead();
    if (f == 0) continue;
    quo[i - b.deg()] = f;
    for (int j = 0; j <= b.deg(); ++j) rem[i - b.deg() + j] -= f * b.c[j];
  }
  return {RationalPoly(std::move(quo)), RationalPoly(std::move(rem))};
}

RationalPoly exact_div(const RationalPoly& a, const RationalPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw internal_error("polynomial division was not exact");
  return q;
}

RationalPoly derivative(const RationalPoly& a) {
  if (a.deg() < 1) return RationalPoly();
  std::vector<rational> out(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) out[i - 1] = rational(i) * a.c[i];
  return RationalPoly(std::move(out));
}

RationalPoly monic(const RationalPoly& a) {
  if (a.is_zero()) return a;
  return (rational(1) / a.lead()) * a;
}

RationalPoly gcd_poly(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

RationalPoly pow_poly(const RationalPoly& a, int n) {
  if (n < 0) throw internal_error("negative polynomial power");
  RationalPoly out = RationalPoly::constant(1);
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

long valuation(const RationalPoly& f, const RationalPoly& place) {
  if (f.is_zero()) throw input_error("valuation of the zero polynomial");
  if (place.deg() < 1) throw input_error("valuation places must be nonconstant");
  long v = 0;
  RationalPoly rest = f;
  while (rest.deg() >= place.deg()) {
    auto [q, r] = divmod(rest, place);
    if (!r.is_zero()) break;
    rest = std::move(q);
    ++v;
  }
  return v;
}

RationalPoly reverse_to(const RationalPoly& f, int n) {
  if (n < f.deg()) throw internal_error("reversal degree below the actual degree");
  std::vector<rational> out(n + 1, rational(0));
  for (int k = 0; k <= n; ++k) out[k] = f.at(n - k);
  return RationalPoly(std::move(out));
}

std::vector<RationalPoly> squarefree_strata(const RationalPoly& f) {
  if (f.deg() < 1) return {};
  RationalPoly w = monic(f);
  RationalPoly g = gcd_poly(w, derivative(w));
  if (g.deg() == 0) return {w};
  RationalPoly W = exact_div(w, g);
  RationalPoly Y = exact_div(derivative(w), g);
  std::vector<RationalPoly> out;
  while (W.deg() > 0) {
    RationalPoly Z = Y - derivative(W);
    RationalPoly A = gcd_poly(W, Z);
    out.push_back(A);
    W = exact_div(W, A);
    Y = exact_div(Z, A);
  }
  return out;
}

std::vector<RationalPoly> coprime_basis(std::vector<RationalPoly> in) {
  std::vector<RationalPoly> basis;
  std::vector<RationalPoly> queue;
  for (RationalPoly& f : in)
    if (f.deg() >= 1) queue.push_back(monic(f));
  while (!queue.empty()) {
    RationalPoly f = std::move(queue.back());
    queue.pop_back();
    for (std::size_t i = 0; i < basis.size() && f.deg() >= 1; ++i) {
      while (f.deg() >= 1) {
        RationalPoly g = gcd_poly(f, basis[i]);
        if (g.deg() == 0) break;
        if (g.deg() < basis[i].deg()) {
          queue.push_back(exact_div(basis[i], g));
          basis[i] = g;
        }
        f = exact_div(f, g);
      }
    }
    if (f.deg() >= 1) basis.push_back(std::move(f));
  }
  return basis;
}

std::string poly_str(const RationalPoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.deg(); i >= 0; --i) {
    rational a = f.at(i);
    if (a == 0) continue;
    bool neg = a < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    rational mag = neg ? rational(-a) : a;
    bool frac = denominator(mag) != 1;
    if (i == 0) {
      os << mag;
    } else {
      if (mag != 1) {
        if (frac)
          os << "(" << mag << ")";
        else
          os << mag;
      }
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// scale a monic factor to coprime integer coefficients for display
std::string place_str(const RationalPoly& f) {
  bigint l = 1;
  for (const rational& x : f.c) l = lcm(l, denominator(x));
  bigint g = 0;
  for (const rational& x : f.c) g = gcd(g, numerator(x) * (l / denominator(x)));
  if (g == 0) g = 1;
  return poly_str(rational(l, g) * f);
}

RationalPoly discriminant(const WeierstrassModel& m) {
  return rational(4) * pow_poly(m.p, 3) + rational(27) * (m.q * m.q);
}

RationalPoly validate(const WeierstrassModel& m) {
  if (m.r < 1) throw input_error("the family index r must be positive");
  if (m.p.deg() > 4 * m.r || m.q.deg() > 6 * m.r)
    throw input_error("coefficient degrees exceed the family bounds");
  RationalPoly delta = discriminant(m);
  if (delta.is_zero())
    throw input_error("singular model: the discriminant vanishes identically");
  return delta;
}

struct JData {
  RationalPoly delta, j_num, j_den;
  long deg_j = 0;
};

JData build_j(const WeierstrassModel& m, RationalPoly delta) {
  JData out;
  RationalPoly num = rational(4) * pow_poly(m.p, 3);
  RationalPoly g = gcd_poly(num, delta);
  out.j_num = num.is_zero() ? RationalPoly() : exact_div(num, g);
  out.j_den = exact_div(delta, g);
  out.deg_j = std::max({(long)out.j_num.deg(), (long)out.j_den.deg(), 0L});
  out.delta = std::move(delta);
  return out;
}

KodairaType type_from_valuations(long vp, long vq, long vd) {
  if (vd == 0) return {FiberKind::I, 0};
  if (vp == 0) return {FiberKind::I, (int)vd};
  if (vq == 1) return {FiberKind::II, 0};
  if (vp == 1) return {FiberKind::III, 0};
  if (vq == 2) return {FiberKind::IV, 0};
  if (vd == 6) return {FiberKind::Istar, 0};
  if (vp == 2 && vq == 3) return {FiberKind::Istar, (int)(vd - 6)};
  if (vq == 4) return {FiberKind::IVstar, 0};
  if (vp == 3) return {FiberKind::IIIstar, 0};
  if (vq == 5) return {FiberKind::IIstar, 0};
  throw internal_error("valuation triple escaped the Kodaira table");
}

PlaceReport build_place(std::string name, RationalPoly factor, int multiplicity,
                        long vp, long vq, long vd) {
  int k = 0;
  while (vp >= 4 && vq >= 6) {
    vp -= 4;
    vq -= 6;
    vd -= 12;
    ++k;
  }
  if (vd < 0) throw internal_error("negative discriminant valuation after shifts");
  PlaceReport rep;
  rep.place = std::move(name);
  rep.factor = std::move(factor);
  rep.multiplicity = multiplicity;
  rep.v_p = vp;
  rep.v_q = vq;
  rep.v_delta = vd;
  rep.shifts = k;
  rep.kodaira = type_from_valuations(vp, vq, vd);
  rep.df = rep.kodaira.defect();
  rep.e = rep.kodaira.euler();
  rep.j_pole = rep.kodaira.j_pole();
  if (rep.e != vd)
    throw internal_error("local Euler number disagrees with the discriminant valuation");
  return rep;
}

}  // namespace

WeierstrassModel WeierstrassModel::make(int r, RationalPoly p, RationalPoly q) {
  WeierstrassModel m{r, std::move(p), std::move(q)};
  validate(m);
  return m;
}

JInfo discriminant_and_j(const WeierstrassModel& m) {
  JData d = build_j(m, validate(m));
  if (d.deg_j == 0) throw input_error("isotrivial model: j is constant");
  return {std::move(d.delta), std::move(d.j_num), std::move(d.j_den), d.deg_j};
}

std::vector<PlaceReport> local_types(const WeierstrassModel& m) {
  RationalPoly delta = validate(m);

  std::vector<RationalPoly> inputs;
  auto add_strata = [&inputs](const RationalPoly& f) {
    for (const RationalPoly& s : squarefree_strata(f))
      if (s.deg() >= 1) inputs.push_back(s);
  };
  add_strata(m.p);
  add_strata(m.q);
  add_strata(delta);

  std::vector<PlaceReport> out;
  for (const RationalPoly& b : coprime_basis(std::move(inputs))) {
    long vd = valuation(delta, b);
    if (vd == 0) continue;
    long vp = m.p.is_zero() ? kInfty : valuation(m.p, b);
    long vq = m.q.is_zero() ? kInfty : valuation(m.q, b);
    out.push_back(build_place(place_str(b), b, b.deg(), vp, vq, vd));
  }
  std::sort(out.begin(), out.end(), [](const PlaceReport& a, const PlaceReport& b) {
    if (a.factor.deg() != b.factor.deg()) return a.factor.deg() < b.factor.deg();
    return a.place < b.place;
  });

  long vpi = m.p.is_zero() ? kInfty : 4L * m.r - m.p.deg();
  long vqi = m.q.is_zero() ? kInfty : 6L * m.r - m.q.deg();
  long vdi = 12L * m.r - delta.deg();
  out.push_back(build_place("infinity", RationalPoly(), 1, vpi, vqi, vdi));
  return out;
}

ModelReport model_report(const WeierstrassModel& m) {
  ModelReport rep;
  rep.r = m.r;
  rep.places = local_types(m);
  long poles = 0;
  for (const PlaceReport& pl : rep.places) {
    rep.euler_total += pl.e * pl.multiplicity;
    rep.df_total += pl.df * pl.multiplicity;
    rep.shifts += pl.shifts * pl.multiplicity;
    poles += pl.j_pole * pl.multiplicity;
    if (!(pl.kodaira.kind == FiberKind::I && pl.kodaira.width == 0))
      for (int i = 0; i < pl.multiplicity; ++i) rep.fibers.push_back(pl.kodaira);
  }
  rep.deg_j = build_j(m, discriminant(m)).deg_j;
  if (rep.euler_total != 12L * m.r - 12L * rep.shifts)
    throw internal_error("Euler accounting 12r failed");
  if (poles != rep.deg_j)
    throw internal_error("pole bookkeeping disagrees with deg j");
  if (rep.df_total != rep.euler_total - rep.deg_j)
    throw internal_error("degree defect totals disagree");
  return rep;
}

WeierstrassModel quadratic_twist(const WeierstrassModel& m,
                                 const RationalPoly& u) {
  validate(m);
  if (u.deg() < 1) throw input_error("twist polynomials must be nonconstant");
  if (gcd_poly(u, derivative(u)).deg() != 0)
    throw input_error("twist polynomials must be squarefree");
  RationalPoly u2 = u * u;
  RationalPoly p2 = u2 * m.p;
  RationalPoly q2 = u2 * u * m.q;
  if (p2.deg() > 4 * m.r || q2.deg() > 6 * m.r)
    throw input_error("twist leaves the family F_r");
  return WeierstrassModel::make(m.r, std::move(p2), std::move(q2));
}

}  // namespace jmono
