#pragma once

// Newton diagrams: lower convex hulls of the points (k, c_k).

#include <vector>

#include "tropfact/poly.hpp"

namespace tropfact {

struct HullVertex {
  int degree = 0;
  Rational value;
  friend bool operator==(const HullVertex&, const HullVertex&) = default;
};

struct HullEdge {
  int width = 0;  // > 0
  Rational slope;
  friend bool operator==(const HullEdge&, const HullEdge&) = default;
};

/// Lower hull with edges left to right. Slopes strictly increase, so
/// collinear interior points are never vertices.
struct NewtonDiagram {
  std::vector<HullVertex> vertices;
  std::vector<HullEdge> edges;

  /// Height of the hull at integer degree k inside its span.
  Rational height_at(int k) const;
  int span() const;

  friend bool operator==(const NewtonDiagram&, const NewtonDiagram&) = default;
};

/// Throws std::invalid_argument for the zero polynomial.
NewtonDiagram lower_hull(const TropPoly& p);

/// Hull of a product from the hulls of its factors: sum of the start
/// vertices followed by all edges sorted by slope.
NewtonDiagram merge_hulls(const NewtonDiagram& d1, const NewtonDiagram& d2);

/// Rebuilds the vertex list from a start point and edges (equal slopes are
/// merged first).
NewtonDiagram diagram_from_edges(const HullVertex& start,
                                 std::vector<HullEdge> edges);

/// Every interior coefficient strictly above the segment joining the end
/// coefficients. Needs degree >= 2 and finite coefficients.
bool is_strictly_above_chord(const TropPoly& p);

/// Every finite point lies on the lower hull.
bool is_convex(const TropPoly& p);

struct Content {
  int monomial_degree = 0;
  TropScalar constant;
  TropPoly core;
};

/// p = x^monomial_degree (x) constant (x) core, where core has a finite
/// constant term and minimum coefficient 0.
Content normalize_content(const TropPoly& p);

bool is_normalized(const TropPoly& p);

}  // namespace tropfact
