#include "tropfact/divlcm.hpp"

#include <map>
#include <stdexcept>

#include "tropfact/newton.hpp"

namespace tropfact {

namespace {

// q_k = max(floor, max_i (s_i - d_{i-k})); `clamped` records whether the
// floor was strictly binding anywhere.
TropPoly superquotient(const TropPoly& d, const TropPoly& s, int quotient_degree,
                       const std::optional<Rational>& floor, bool* clamped) {
  if (d.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (quotient_degree < 0 || d.degree() + quotient_degree < s.degree()) {
    throw std::invalid_argument("quotient degree too small for the dividend");
  }
  std::vector<TropScalar> q(quotient_degree + 1);
  for (int k = 0; k <= quotient_degree; ++k) {
    bool any = false;
    bool infinite = false;
    Rational best;
    for (int j = 0; j <= d.degree() && !infinite; ++j) {
      if (d[j].is_infinite()) continue;
      const TropScalar& target = s[j + k];
      if (target.is_infinite()) {
        infinite = true;
        break;
      }
      Rational v = target.value() - d[j].value();
      if (!any || v > best) best = v;
      any = true;
    }
    if (infinite) continue;  // q[k] stays infinite
    if (floor && (!any || best < *floor)) {
      if (any && clamped) *clamped = true;
      best = *floor;
    }
    q[k] = TropScalar(best);
  }
  return TropPoly(std::move(q));
}

void require_lcm_input(const TropPoly& p, const char* name) {
  if (p.is_zero() || p[0] != TropScalar(0)) {
    throw std::invalid_argument(std::string("lcm: ") + name +
                                " needs constant term 0");
  }
  for (const auto& c : p.coeffs()) {
    if (c.is_finite() && c.value() < 0) {
      throw std::invalid_argument(std::string("lcm: ") + name +
                                  " needs nonnegative coefficients");
    }
  }
}

// h minus its smallest finite coefficient, plus that coefficient.
std::pair<TropPoly, Rational> split_translation(const TropPoly& h) {
  Rational low;
  bool first = true;
  for (const auto& c : h.coeffs()) {
    if (c.is_finite() && (first || c.value() < low)) low = c.value();
    if (c.is_finite()) first = false;
  }
  return {translate(h, Rational(-low)), low};
}

}  // namespace

TropPoly least_superquotient(const TropPoly& d, const TropPoly& s,
                             int quotient_degree,
                             const std::optional<Rational>& floor) {
  return superquotient(d, s, quotient_degree, floor, nullptr);
}

DivisionResult divides(const TropPoly& d, const TropPoly& s) {
  if (d.is_zero() || s.is_zero()) {
    throw std::invalid_argument("divides needs nonzero polynomials");
  }
  if (s.degree() < d.degree()) {
    throw std::invalid_argument("divides needs deg s >= deg d");
  }
  DivisionResult r;
  r.quotient = superquotient(d, s, s.degree() - d.degree(), std::nullopt, nullptr);
  r.divides = trop_mul(d, r.quotient) == s;
  return r;
}

std::string to_string(LcmStatus status) {
  switch (status) {
    case LcmStatus::Converged:
      return "converged";
    case LcmStatus::NoCommonMultiple:
      return "no-common-multiple";
    case LcmStatus::IterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

LcmReport lcm(const TropPoly& f, const TropPoly& g, int degree,
              std::int64_t iteration_limit) {
  require_lcm_input(f, "f");
  require_lcm_input(g, "g");
  if (degree < std::max(f.degree(), g.degree()) ||
      degree > f.degree() + g.degree()) {
    throw std::invalid_argument("lcm degree must lie in [" +
                                std::to_string(std::max(f.degree(), g.degree())) +
                                ", " + std::to_string(f.degree() + g.degree()) +
                                "]");
  }
  LcmReport report;
  report.degree = degree;

  TropPoly h(std::vector<TropScalar>(degree + 1, TropScalar(0)));
  auto half_step = [&](const TropPoly& p, const TropPoly& cur, bool& clamped) {
    TropPoly next = trop_mul(
        p, superquotient(p, cur, degree - p.degree(), Rational(0), &clamped));
    if (!coefficientwise_le(cur, next)) {
      throw std::logic_error("lcm iteration decreased a coefficient");
    }
    return next;
  };
  auto stop = [&](LcmStatus status, std::string why) {
    report.status = status;
    report.detail = std::move(why);
    return report;
  };

  // Shape of h up to translation -> (round, offset) where it was seen.
  std::map<std::string, std::pair<std::int64_t, Rational>> seen;
  std::int64_t last_clamp = -1;
  while (report.iterations < iteration_limit) {
    bool clamped = false;
    const TropPoly mid = half_step(f, h, clamped);
    const TropPoly next = half_step(g, mid, clamped);
    ++report.iterations;
    if (next == h) {
      if (!divides(f, h).divides || !divides(g, h).divides) {
        throw std::logic_error("lcm fixed point is not a common multiple");
      }
      report.result = h;
      report.status = LcmStatus::Converged;
      return report;
    }
    if (next.degree() < degree || next[0].is_infinite()) {
      return stop(LcmStatus::NoCommonMultiple, "end coefficient became infinite");
    }
    if (clamped) last_clamp = report.iterations;
    auto [shape, offset] = split_translation(next);
    auto [it, fresh] =
        seen.try_emplace(to_string(shape), report.iterations, offset);
    if (!fresh) {
      // Unclamped rounds commute with translation, so the cycle repeats.
      if (it->second.second < offset && last_clamp <= it->second.first) {
        return stop(LcmStatus::NoCommonMultiple,
                    "iteration grows by a constant every " +
                        std::to_string(report.iterations - it->second.first) +
                        " rounds");
      }
      it->second = {report.iterations, offset};
    }
    h = next;
  }
  return stop(LcmStatus::IterationLimit, "iteration limit reached");
}

GcdReport gcd(const TropPoly& f, const TropPoly& g, std::int64_t iteration_limit) {
  for (int degree = std::max(f.degree(), g.degree());
       degree <= f.degree() + g.degree(); ++degree) {
    LcmReport r = lcm(f, g, degree, iteration_limit);
    if (r.status == LcmStatus::IterationLimit) {
      throw std::runtime_error("gcd: lcm iteration limit reached at degree " +
                               std::to_string(degree));
    }
    if (r.status != LcmStatus::Converged) continue;
    GcdReport out;
    out.gcd = least_superquotient(*r.result, trop_mul(f, g),
                                  f.degree() + g.degree() - degree);
    out.lcm = std::move(r);
    return out;
  }
  throw std::logic_error("lcm did not converge at degree deg f + deg g");
}

}  // namespace tropfact
