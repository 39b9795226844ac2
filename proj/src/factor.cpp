#include "tropfact/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "choice_search.hpp"

namespace tropfact {

DegreeSplit DegreeSplit::mirrored() const {
  DegreeSplit m{right_degree, left_degree, {}};
  for (const auto& [l, r] : edge_assignment) m.edge_assignment.emplace_back(r, l);
  return m;
}

TropPoly FactorizationCertificate::recombine() const {
  TropPoly out{constant};
  for (const auto& f : factors) out = trop_mul(out, f);
  return shift_degree(out, monomial_degree);
}

bool irreducible_by_chord(const TropPoly& p) {
  if (!is_normalized(p)) {
    throw std::invalid_argument("chord certificate needs a normalized polynomial");
  }
  if (!p.all_finite()) {
    throw std::invalid_argument("chord certificate needs finite coefficients");
  }
  if (p.degree() < 2) return false;
  return is_strictly_above_chord(p);
}

FactorizationCertificate factor_convex(const TropPoly& p) {
  if (p.is_zero() || !p.all_finite()) {
    throw std::invalid_argument("factor_convex needs finite coefficients");
  }
  if (!is_convex(p)) {
    throw std::invalid_argument("factor_convex: polynomial is not convex");
  }
  const NewtonDiagram d = lower_hull(p);
  FactorizationCertificate cert;
  cert.constant = p[0];
  for (const auto& e : d.edges) {
    for (int w = 0; w < e.width; ++w) {
      cert.factors.push_back(TropPoly{TropScalar(0), TropScalar(e.slope)});
    }
  }
  if (!cert.verifies(p)) throw std::logic_error("convex factorization mismatch");
  return cert;
}

std::vector<DegreeSplit> candidate_degree_splits(const TropPoly& p,
                                                 bool integer_only) {
  if (!is_normalized(p)) {
    throw std::invalid_argument("degree splits need a normalized polynomial");
  }
  const NewtonDiagram d = lower_hull(p);
  const std::size_t m = d.edges.size();
  std::vector<DegreeSplit> out;
  if (m == 0) return out;

  const Rational c0 = p[0].value();
  std::vector<int> wl(m, 0);
  for (;;) {
    int r = 0;
    for (int w : wl) r += w;
    const int n = d.span();
    if (r > 0 && r < n) {
      bool keep = true;
      if (integer_only) {
        // Factor vertices sit at cumulative widths times slopes.
        Rational left_h = 0, right_h = c0;
        keep = is_integer(right_h);
        for (std::size_t e = 0; e < m && keep; ++e) {
          left_h += wl[e] * d.edges[e].slope;
          right_h += (d.edges[e].width - wl[e]) * d.edges[e].slope;
          keep = is_integer(left_h) && is_integer(right_h);
        }
      }
      if (keep) {
        DegreeSplit s{r, n - r, {}};
        for (std::size_t e = 0; e < m; ++e) {
          s.edge_assignment.emplace_back(wl[e], d.edges[e].width - wl[e]);
        }
        out.push_back(std::move(s));
      }
    }
    std::size_t e = 0;
    while (e < m && wl[e] == d.edges[e].width) wl[e++] = 0;
    if (e == m) break;
    ++wl[e];
  }
  return out;
}

namespace {

// Enumerates support pairs (A, B) with A + B = S and 0 in both. `left` fixes
// max A when >= 0. `visit` returns true to stop.
class SupportSearch {
 public:
  SupportSearch(const BoolPoly& s, int left, bool break_symmetry)
      : n_(s.degree()),
        left_(left),
        break_symmetry_(break_symmetry),
        member_(static_cast<std::size_t>(n_ + 1), 0),
        in_a_(member_.size(), 0),
        in_b_(member_.size(), 0) {
    for (int d : s.support()) member_[d] = 1;
  }

  void run(const std::function<bool(const std::vector<int>&,
                                     const std::vector<int>&)>& visit) {
    visit_ = &visit;
    if (n_ < 0 || !member_[0]) return;
    a_ = {0};
    b_ = {0};
    in_a_[0] = in_b_[0] = 1;
    step(1);
  }

 private:
  bool can_add_a(int d) const {
    if (left_ >= 0 && d > left_) return false;
    for (int b : b_) {
      if (d + b > n_ || !member_[d + b]) return false;
    }
    return true;
  }
  bool can_add_b(int d) const {
    if (left_ >= 0 && d > n_ - left_) return false;
    for (int a : a_) {
      if (a + d > n_ || !member_[a + d]) return false;
    }
    return true;
  }
  bool covered(int d) const {
    for (int a : a_) {
      if (a <= d && in_b_[d - a]) return true;
    }
    return false;
  }

  bool finish() {
    if (a_.size() < 2 || b_.size() < 2) return false;
    if (a_.back() + b_.back() != n_) return false;
    if (left_ >= 0 && a_.back() != left_) return false;
    return (*visit_)(a_, b_);
  }

  // Returns true when the visitor asked to stop.
  bool step(int d) {
    if (d > n_) return finish();
    if (left_ >= 0) {
      // max A = left forces left into A; likewise n - left into B.
      if (d > left_ && a_.back() != left_) return false;
      if (d > n_ - left_ && b_.back() != n_ - left_) return false;
    }
    if (!member_[d]) return step(d + 1);

    const bool only_zeros = a_.size() == 1 && b_.size() == 1;
    // Options in order: A only, B only, both, neither.
    for (int option = 0; option < 4; ++option) {
      const bool to_a = option == 0 || option == 2;
      const bool to_b = option == 1 || option == 2;
      if (break_symmetry_ && only_zeros && option == 1) continue;
      if (to_a && !can_add_a(d)) continue;
      if (to_a) {
        a_.push_back(d);
        in_a_[d] = 1;
      }
      bool ok = true;
      if (to_b) {
        ok = can_add_b(d);
        if (ok) {
          b_.push_back(d);
          in_b_[d] = 1;
        }
      }
      if (ok && covered(d) && step(d + 1)) return true;
      if (to_b && ok) {
        b_.pop_back();
        in_b_[d] = 0;
      }
      if (to_a) {
        a_.pop_back();
        in_a_[d] = 0;
      }
    }
    return false;
  }

  int n_;
  int left_;
  bool break_symmetry_;
  std::vector<char> member_, in_a_, in_b_;
  std::vector<int> a_, b_;
  const std::function<bool(const std::vector<int>&, const std::vector<int>&)>*
      visit_ = nullptr;
};

BoolPoly support_of(const TropPoly& p) {
  std::vector<int> s;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p[k].is_finite()) s.push_back(k);
  }
  return BoolPoly(std::move(s));
}

mpz_class lcm_of_denominators(const std::vector<const Rational*>& values) {
  mpz_class l = 1;
  for (const Rational* q : values) {
    mpz_class den = q->get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  return l;
}

struct RationalProblem {
  int r = 0, s = 0;
  std::vector<Rational> c;
  std::vector<char> c_finite, in_a, in_b;
  std::vector<Rational> lb_a, ub_a, lb_b, ub_b;
};

template <typename W>
W convert(const mpz_class& z);

template <>
std::int64_t convert<std::int64_t>(const mpz_class& z) {
  return z.get_si();
}

template <>
mpz_class convert<mpz_class>(const mpz_class& z) {
  return z;
}

template <typename W>
BnbResult run_scaled(const RationalProblem& rp, const mpz_class& scale) {
  detail::SearchProblem<W> sp;
  sp.left_degree = rp.r;
  sp.right_degree = rp.s;
  sp.c_finite = rp.c_finite;
  sp.in_a = rp.in_a;
  sp.in_b = rp.in_b;
  auto scaled = [&](const std::vector<Rational>& v) {
    std::vector<W> out;
    out.reserve(v.size());
    for (const Rational& q : v) {
      mpz_class z = q.get_num() * (scale / q.get_den());
      out.push_back(convert<W>(z));
    }
    return out;
  };
  sp.c = scaled(rp.c);
  sp.lb_a = scaled(rp.lb_a);
  sp.ub_a = scaled(rp.ub_a);
  sp.lb_b = scaled(rp.lb_b);
  sp.ub_b = scaled(rp.ub_b);

  detail::ChoiceSearch<W> search(std::move(sp));
  BnbResult result;
  const bool found = search.run();
  result.stats.nodes = search.nodes();
  result.stats.trials = search.trials();
  if (!found) return result;

  auto back = [&](const std::vector<W>& v, const std::vector<char>& in) {
    std::vector<TropScalar> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!in[i]) continue;
      Rational q{mpz_class(v[i]), scale};
      q.canonicalize();
      out[i] = TropScalar(q);
    }
    return TropPoly(std::move(out));
  };
  result.factors.emplace(back(search.a(), rp.in_a), back(search.b(), rp.in_b));
  result.profile.index = search.profile();
  return result;
}

// Scaled magnitudes below this stay on the 64-bit path; propagation only ever
// forms differences of two stored values.
bool fits_int64(const RationalProblem& rp, const mpz_class& scale) {
  const mpz_class limit = mpz_class(1) << 60;
  auto ok = [&](const std::vector<Rational>& v) {
    for (const Rational& q : v) {
      mpz_class z = abs(q.get_num()) * (scale / q.get_den());
      if (4 * z >= limit) return false;
    }
    return true;
  };
  return ok(rp.c) && ok(rp.lb_a) && ok(rp.ub_a) && ok(rp.lb_b) && ok(rp.ub_b);
}

// Adds hull-split constraints. False when the split is impossible for these
// supports.
bool apply_split(RationalProblem& rp, const DegreeSplit& split,
                 const NewtonDiagram& hull, const Rational& c0) {
  if (split.edge_assignment.empty()) return true;
  std::vector<HullEdge> left, right;
  for (std::size_t e = 0; e < hull.edges.size(); ++e) {
    left.push_back({split.edge_assignment[e].first, hull.edges[e].slope});
    right.push_back({split.edge_assignment[e].second, hull.edges[e].slope});
  }
  const NewtonDiagram dl = diagram_from_edges({0, Rational(0)}, left);
  const NewtonDiagram dr = diagram_from_edges({0, c0}, right);

  auto constrain = [](const NewtonDiagram& d, const std::vector<char>& in,
                      std::vector<Rational>& lb, std::vector<Rational>& ub) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!in[i]) continue;
      const Rational h = d.height_at(static_cast<int>(i));
      if (h > lb[i]) lb[i] = h;
    }
    for (const auto& v : d.vertices) {
      if (!in[v.degree]) return false;
      if (v.value > lb[v.degree]) lb[v.degree] = v.value;
      if (v.value < ub[v.degree]) ub[v.degree] = v.value;
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (in[i] && lb[i] > ub[i]) return false;
    }
    return true;
  };
  return constrain(dl, rp.in_a, rp.lb_a, rp.ub_a) &&
         constrain(dr, rp.in_b, rp.lb_b, rp.ub_b);
}

void validate_split(const TropPoly& p, const DegreeSplit& split,
                    const NewtonDiagram& hull) {
  if (split.left_degree < 1 || split.right_degree < 1 ||
      split.left_degree + split.right_degree != p.degree()) {
    throw std::invalid_argument("split degrees must be positive and sum to " +
                                std::to_string(p.degree()));
  }
  if (split.edge_assignment.empty()) return;
  if (split.edge_assignment.size() != hull.edges.size()) {
    throw std::invalid_argument("edge assignment does not match the hull");
  }
  int r = 0;
  for (std::size_t e = 0; e < hull.edges.size(); ++e) {
    const auto [l, w] = split.edge_assignment[e];
    if (l < 0 || w < 0 || l + w != hull.edges[e].width) {
      throw std::invalid_argument("edge assignment widths do not match");
    }
    r += l;
  }
  if (r != split.left_degree) {
    throw std::invalid_argument("edge assignment does not sum to left degree");
  }
}

}  // namespace

BnbResult factor_bnb_search(const TropPoly& p, const DegreeSplit& split) {
  if (!is_normalized(p)) {
    throw std::invalid_argument("factor_bnb needs a normalized polynomial");
  }
  const NewtonDiagram hull = lower_hull(p);
  validate_split(p, split, hull);
  const int n = p.degree();
  const int r = split.left_degree;
  const int s = split.right_degree;

  std::vector<std::pair<std::vector<char>, std::vector<char>>> supports;
  if (p.all_finite()) {
    supports.emplace_back(std::vector<char>(r + 1, 1), std::vector<char>(s + 1, 1));
  } else {
    SupportSearch search(support_of(p), r, false);
    search.run([&](const std::vector<int>& a, const std::vector<int>& b) {
      std::vector<char> in_a(r + 1, 0), in_b(s + 1, 0);
      for (int i : a) in_a[i] = 1;
      for (int j : b) in_b[j] = 1;
      supports.emplace_back(std::move(in_a), std::move(in_b));
      return false;
    });
  }

  const Rational c0 = p[0].value();
  Rational top = 0;
  for (const auto& c : p.coeffs()) {
    if (c.is_finite() && c.value() > top) top = c.value();
  }

  BnbResult total;
  for (auto& [in_a, in_b] : supports) {
    RationalProblem rp;
    rp.r = r;
    rp.s = s;
    rp.c.assign(n + 1, Rational(0));
    rp.c_finite.assign(n + 1, 0);
    for (int k = 0; k <= n; ++k) {
      if (p[k].is_finite()) {
        rp.c[k] = p[k].value();
        rp.c_finite[k] = 1;
      }
    }
    rp.in_a = in_a;
    rp.in_b = in_b;
    // With a_0 = 0 and b_0 = c_0, residuation keeps every coefficient of a
    // greatest-a solution in [c_i - c_0, max c] and of b in [c_j, max c + c_0].
    rp.lb_a.assign(r + 1, Rational(0));
    rp.ub_a.assign(r + 1, top);
    rp.lb_b.assign(s + 1, Rational(0));
    rp.ub_b.assign(s + 1, Rational(top + c0));
    for (int i = 0; i <= r; ++i) {
      if (in_a[i]) rp.lb_a[i] = p[i].value() - c0;
    }
    for (int j = 0; j <= s; ++j) {
      if (in_b[j]) rp.lb_b[j] = p[j].value();
    }
    rp.ub_a[0] = 0;
    rp.lb_a[0] = 0;
    rp.ub_b[0] = c0;
    rp.lb_b[0] = c0;
    if (!apply_split(rp, split, hull, c0)) continue;

    std::vector<const Rational*> all;
    for (const auto* v : {&rp.c, &rp.lb_a, &rp.ub_a, &rp.lb_b, &rp.ub_b}) {
      for (const Rational& q : *v) all.push_back(&q);
    }
    const mpz_class scale = lcm_of_denominators(all);
    BnbResult part = fits_int64(rp, scale)
                         ? run_scaled<std::int64_t>(rp, scale)
                         : run_scaled<mpz_class>(rp, scale);
    total.stats.nodes += part.stats.nodes;
    total.stats.trials += part.stats.trials;
    if (part.factors) {
      const auto& [a, b] = *part.factors;
      if (trop_mul(a, b) != p) {
        throw std::logic_error("branch and bound returned a wrong factorization");
      }
      total.factors = std::move(part.factors);
      total.profile = std::move(part.profile);
      return total;
    }
  }
  return total;
}

std::optional<FactorizationCertificate> factor_bnb(const TropPoly& p,
                                                   const DegreeSplit& split) {
  BnbResult r = factor_bnb_search(p, split);
  if (!r.factors) return std::nullopt;
  FactorizationCertificate cert;
  cert.factors = {r.factors->first, r.factors->second};
  return cert;
}

std::pair<TropPoly, TropPoly> round_to_integer_factorization(const TropPoly& f,
                                                             const TropPoly& g) {
  const TropPoly product = trop_mul(f, g);
  for (const auto& c : product.coeffs()) {
    if (c.is_finite() && !is_integer(c.value())) {
      throw std::invalid_argument("rounding needs an integer product");
    }
  }
  auto round_each = [](const TropPoly& p, bool up) {
    std::vector<TropScalar> out = p.coeffs();
    for (auto& c : out) {
      if (c.is_finite()) c = TropScalar(up ? ceil(c.value()) : floor(c.value()));
    }
    return TropPoly(std::move(out));
  };
  std::pair<TropPoly, TropPoly> out{round_each(f, true), round_each(g, false)};
  if (trop_mul(out.first, out.second) != product) {
    throw std::logic_error("rounding changed the product");
  }
  return out;
}

std::optional<std::pair<BoolPoly, BoolPoly>> factor_boolean_bnb(
    const BoolPoly& b) {
  if (b.empty() || !b.contains(0)) {
    throw std::invalid_argument("boolean factoring needs 0 in the support");
  }
  std::optional<std::pair<BoolPoly, BoolPoly>> found;
  SupportSearch search(b, -1, true);
  search.run([&](const std::vector<int>& a, const std::vector<int>& c) {
    found.emplace(BoolPoly(a), BoolPoly(c));
    return true;
  });
  if (found && bool_mul(found->first, found->second) != b) {
    throw std::logic_error("boolean search returned a wrong decomposition");
  }
  return found;
}

std::vector<std::pair<BoolPoly, BoolPoly>> boolean_decompositions(
    const BoolPoly& b, int left_degree) {
  std::vector<std::pair<BoolPoly, BoolPoly>> out;
  if (b.empty() || !b.contains(0)) return out;
  SupportSearch search(b, left_degree, false);
  search.run([&](const std::vector<int>& a, const std::vector<int>& c) {
    out.emplace_back(BoolPoly(a), BoolPoly(c));
    return false;
  });
  return out;
}

bool boolean_triple_test(const BoolPoly& b) {
  if (b.empty() || !b.contains(0)) {
    throw std::invalid_argument("triple test needs 0 in the support");
  }
  std::set<int> covered;
  const auto& s = b.support();
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (s[x] == 0) continue;
    for (std::size_t y = x; y < s.size(); ++y) {
      if (b.contains(s[x] + s[y])) {
        covered.insert({s[x], s[y], s[x] + s[y]});
      }
    }
  }
  return covered.size() + 1 != s.size();
}

namespace {

FactorizationCertificate certificate_from(const Content& content,
                                          std::vector<TropPoly> factors) {
  FactorizationCertificate cert;
  cert.monomial_degree = content.monomial_degree;
  cert.constant = content.constant;
  cert.factors = std::move(factors);
  return cert;
}

bool all_finite_equal(const TropPoly& p) {
  for (const auto& c : p.coeffs()) {
    if (c.is_finite() && c.value() != 0) return false;
  }
  return true;
}

bool integral(const TropPoly& p) {
  for (const auto& c : p.coeffs()) {
    if (c.is_finite() && !is_integer(c.value())) return false;
  }
  return true;
}

}  // namespace

IrreducibilityVerdict is_irreducible(const TropPoly& p, bool integer_only) {
  if (p.is_zero()) throw std::invalid_argument("irreducibility of zero");
  const Content content = normalize_content(p);
  const TropPoly& core = content.core;
  IrreducibilityVerdict v;
  auto reducible = [&](std::string reason, std::vector<TropPoly> factors) {
    v.irreducible = false;
    v.reason = std::move(reason);
    v.certificate = certificate_from(content, std::move(factors));
    if (!v.certificate->verifies(p)) {
      throw std::logic_error("factorization certificate does not verify");
    }
    return v;
  };
  auto irreducible = [&](std::string reason) {
    v.irreducible = true;
    v.reason = std::move(reason);
    return v;
  };

  if (core.degree() <= 1) return irreducible("degree <= 1");

  if (!core.all_finite() && all_finite_equal(core)) {
    const BoolPoly support = support_of(core);
    if (boolean_triple_test(support)) return irreducible("triple test");
    auto found = factor_boolean_bnb(support);
    if (!found) return irreducible("boolean search");
    return reducible("boolean search",
                     {found->first.to_trop(), found->second.to_trop()});
  }

  if (core.all_finite()) {
    if (irreducible_by_chord(core)) return irreducible("chord certificate");
    if (is_convex(core)) {
      FactorizationCertificate c = factor_convex(core);
      c.factors.front() = translate(c.factors.front(), c.constant.value());
      return reducible("convex", std::move(c.factors));
    }
  }

  std::vector<DegreeSplit> seen;
  for (const DegreeSplit& split : candidate_degree_splits(core, integer_only)) {
    if (std::find(seen.begin(), seen.end(), split.mirrored()) != seen.end()) {
      continue;
    }
    seen.push_back(split);
    BnbResult r = factor_bnb_search(core, split);
    if (!r.factors) continue;
    auto [f, g] = *r.factors;
    if (integer_only && integral(core) && !(integral(f) && integral(g))) {
      std::tie(f, g) = round_to_integer_factorization(f, g);
    }
    return reducible("branch and bound", {f, g});
  }
  return irreducible("exhaustive search");
}

FactorizationCertificate factor_completely(const TropPoly& p,
                                           bool integer_only) {
  const IrreducibilityVerdict v = is_irreducible(p, integer_only);
  if (v.irreducible) {
    const Content content = normalize_content(p);
    return certificate_from(content, {content.core});
  }
  FactorizationCertificate out;
  out.monomial_degree = v.certificate->monomial_degree;
  Rational constant = v.certificate->constant.value();
  for (const TropPoly& f : v.certificate->factors) {
    FactorizationCertificate sub = factor_completely(f, integer_only);
    out.monomial_degree += sub.monomial_degree;
    constant += sub.constant.value();
    for (auto& g : sub.factors) {
      if (g.degree() > 0) out.factors.push_back(std::move(g));
    }
  }
  out.constant = TropScalar(constant);
  if (!out.verifies(p)) throw std::logic_error("complete factorization mismatch");
  return out;
}

}  // namespace tropfact
