#include "tropfact/newton.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropfact {

namespace {

// Sign of the turn (o -> a -> b); positive when b lies strictly above the
// line through o and a, viewed left to right.
int turn(int ox, const Rational& oy, int ax, const Rational& ay, int bx,
         const Rational& by) {
  Rational lhs = (ay - oy) * (bx - ox);
  Rational rhs = (by - oy) * (ax - ox);
  return cmp(rhs, lhs);
}

}  // namespace

Rational NewtonDiagram::height_at(int k) const {
  if (vertices.empty() || k < vertices.front().degree ||
      k > vertices.back().degree) {
    throw std::out_of_range("degree outside the hull span");
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const HullVertex& left = vertices[e];
    if (k <= vertices[e + 1].degree) {
      return Rational(left.value + edges[e].slope * (k - left.degree));
    }
  }
  return vertices.back().value;
}

int NewtonDiagram::span() const {
  return vertices.empty() ? 0
                          : vertices.back().degree - vertices.front().degree;
}

NewtonDiagram lower_hull(const TropPoly& p) {
  if (p.is_zero()) {
    throw std::invalid_argument("lower hull of the zero polynomial");
  }
  std::vector<HullVertex> hull;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p[k].is_infinite()) continue;
    const Rational& y = p[k].value();
    // Pop while the last vertex is on or above the segment to the new point.
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      if (turn(o.degree, o.value, a.degree, a.value, k, y) > 0) break;
      hull.pop_back();
    }
    hull.push_back({k, y});
  }
  NewtonDiagram d;
  d.vertices = hull;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const int w = hull[i + 1].degree - hull[i].degree;
    d.edges.push_back({w, Rational((hull[i + 1].value - hull[i].value) / w)});
  }
  return d;
}

NewtonDiagram diagram_from_edges(const HullVertex& start,
                                 std::vector<HullEdge> edges) {
  std::stable_sort(edges.begin(), edges.end(),
                   [](const HullEdge& a, const HullEdge& b) {
                     return a.slope < b.slope;
                   });
  NewtonDiagram d;
  for (const auto& e : edges) {
    if (e.width <= 0) continue;
    if (!d.edges.empty() && d.edges.back().slope == e.slope) {
      d.edges.back().width += e.width;
    } else {
      d.edges.push_back(e);
    }
  }
  d.vertices.push_back(start);
  for (const auto& e : d.edges) {
    const HullVertex& last = d.vertices.back();
    d.vertices.push_back(
        {last.degree + e.width, Rational(last.value + e.slope * e.width)});
  }
  return d;
}

NewtonDiagram merge_hulls(const NewtonDiagram& d1, const NewtonDiagram& d2) {
  if (d1.vertices.empty() || d2.vertices.empty()) {
    throw std::invalid_argument("merging an empty diagram");
  }
  HullVertex start{d1.vertices.front().degree + d2.vertices.front().degree,
                   Rational(d1.vertices.front().value +
                            d2.vertices.front().value)};
  std::vector<HullEdge> edges = d1.edges;
  edges.insert(edges.end(), d2.edges.begin(), d2.edges.end());
  return diagram_from_edges(start, std::move(edges));
}

bool is_strictly_above_chord(const TropPoly& p) {
  if (!p.all_finite() || p.is_zero()) {
    throw std::invalid_argument("chord test needs finite coefficients");
  }
  const int n = p.degree();
  if (n < 2) throw std::invalid_argument("chord test needs degree >= 2");
  const Rational& first = p[0].value();
  const Rational& last = p[n].value();
  for (int k = 1; k < n; ++k) {
    // p_k > first + (last - first) k / n, scaled by n.
    if (p[k].value() * n <= first * (n - k) + last * k) return false;
  }
  return true;
}

bool is_convex(const TropPoly& p) {
  const NewtonDiagram d = lower_hull(p);
  for (int k = 0; k <= p.degree(); ++k) {
    if (p[k].is_infinite()) continue;
    if (p[k].value() != d.height_at(k)) return false;
  }
  return true;
}

Content normalize_content(const TropPoly& p) {
  if (p.is_zero()) {
    throw std::invalid_argument("normalizing the zero polynomial");
  }
  Content out;
  out.monomial_degree = p.low_degree();
  Rational lowest;
  bool first = true;
  for (const auto& c : p.coeffs()) {
    if (c.is_infinite()) continue;
    if (first || c.value() < lowest) lowest = c.value();
    first = false;
  }
  out.constant = TropScalar(lowest);
  std::vector<TropScalar> core(p.coeffs().begin() + out.monomial_degree,
                               p.coeffs().end());
  for (auto& c : core) {
    if (c.is_finite()) c = TropScalar(Rational(c.value() - lowest));
  }
  out.core = TropPoly(std::move(core));
  return out;
}

bool is_normalized(const TropPoly& p) {
  if (p.is_zero() || p[0].is_infinite()) return false;
  bool has_zero = false;
  for (const auto& c : p.coeffs()) {
    if (c.is_infinite()) continue;
    if (c.value() < 0) return false;
    if (c.value() == 0) has_zero = true;
  }
  return has_zero;
}

}  // namespace tropfact
