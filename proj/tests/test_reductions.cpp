#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tropfact/factor.hpp"
#include "tropfact/reductions.hpp"

using namespace tropfact;

namespace {

TropPoly P(const char* text) { return parse_poly(text); }

std::vector<int> shape_of(const SatInstance& inst) {
  std::vector<int> shape;
  for (const auto& c : inst.clauses) shape.push_back(static_cast<int>(c.size()));
  return shape;
}

// Every clause as a nonempty subset of the 2V literals.
std::vector<std::vector<Literal>> all_clauses(int variables) {
  std::vector<std::vector<Literal>> out;
  const int lits = 2 * variables;
  for (int mask = 1; mask < (1 << lits); ++mask) {
    std::vector<Literal> c;
    for (int t = 0; t < lits; ++t) {
      if (mask >> t & 1) c.push_back({t / 2, t % 2 == 0});
    }
    out.push_back(c);
  }
  return out;
}

SatInstance random_instance(oracle::Rng& rng, int variables, int clauses, int max_width) {
  SatInstance inst{variables, {}};
  for (int i = 0; i < clauses; ++i) {
    std::vector<Literal> c;
    const int width = oracle::uniform(rng, 1, max_width);
    for (int j = 0; j < width; ++j) {
      c.push_back({oracle::uniform(rng, 0, variables - 1), oracle::uniform(rng, 0, 1) == 1});
    }
    inst.clauses.push_back(c);
  }
  return inst;
}

}  // namespace

TEST(Dimacs, ParseAndPrint) {
  const SatInstance inst = parse_dimacs("c example\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n");
  EXPECT_EQ(inst.variable_count, 3);
  ASSERT_EQ(inst.clauses.size(), 2u);
  EXPECT_EQ(inst.clauses[0], (std::vector<Literal>{{0, true}, {1, false}}));
  EXPECT_EQ(inst.clauses[1], (std::vector<Literal>{{1, true}, {2, true}, {0, false}}));
  EXPECT_EQ(to_dimacs(inst), "p cnf 3 2\n1 -2 0\n2 3 -1 0\n");
  EXPECT_EQ(parse_dimacs(to_dimacs(inst)).clauses, inst.clauses);
  EXPECT_EQ(parse_dimacs("p cnf 1 1\n1 0\n%\n0\n").clauses.size(), 1u);
  EXPECT_THROW(parse_dimacs("1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n1\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n1 x 0\n"), ParseError);
  try {
    parse_dimacs("p cnf 2 1\n1 y 0\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Gadget, Examples) {
  GadgetLayout L = build_gadget({1}, 40);
  EXPECT_EQ(audit_layout(L), "");
  ASSERT_EQ(L.z.size(), 1u);
  EXPECT_GT(5 * L.z[0], 40);
  EXPECT_LT(4 * L.z[0], 40);
  EXPECT_EQ(L.pairs[0][0].first + L.pairs[0][0].second, L.z[0]);

  // The counting bound for one clause with one literal.
  EXPECT_EQ(audit_layout(build_gadget({1}, (1 << 8) * 16 + 1)), "");

  const int n = minimal_gadget_n({2, 2});
  EXPECT_EQ(audit_layout(build_gadget({2, 2}, n)), "");
  try {
    build_gadget({2, 2}, n - 1);
    ADD_FAILURE() << "expected a gadget failure below the minimal n";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("n = " + std::to_string(n - 1)), std::string::npos);
  }
}

TEST(Gadget, AuditAgreesWithGreedyAcrossShapes) {
  for (const auto& shape : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 1}, {2, 1}, {2, 2}, {3, 1}}) {
    const int n = minimal_gadget_n(shape);
    for (int m = n; m < n + 40; ++m) {
      try {
        EXPECT_EQ(audit_layout(build_gadget(shape, m)), "");
      } catch (const std::invalid_argument&) {
      }
    }
  }
}

TEST(Gadget, AuditCatchesCollisions) {
  GadgetLayout L = build_gadget({2, 2}, minimal_gadget_n({2, 2}));
  GadgetLayout bad = L;
  bad.pairs[1][1] = bad.pairs[0][0];
  bad.pairs[1][1].second += bad.z[1] - bad.z[0];
  EXPECT_NE(audit_layout(bad), "");
  bad = L;
  bad.z[1] = bad.z[0];
  EXPECT_NE(audit_layout(bad), "");
  bad = L;
  bad.constraint_degrees.clear();
  EXPECT_NE(audit_layout(bad), "");
  // Doubling a gadget degree onto a sum is rejected too.
  bad = L;
  const auto [x, y] = bad.pairs[0][0];
  bad.pairs[0][1] = {2 * x, bad.z[0] - 2 * x};
  EXPECT_NE(audit_layout(bad), "");
}

TEST(Encode, CoefficientAudit) {
  oracle::Rng rng(211);
  for (int t = 0; t < 10; ++t) {
    const SatInstance inst = random_instance(rng, 3, oracle::uniform(rng, 1, 3), 2);
    const int n = minimal_gadget_n(shape_of(inst));
    const auto [p, L] = sat_to_poly(inst, n);
    ASSERT_EQ(p.degree(), 2 * n);
    for (int k = 0; k <= 2 * n; ++k) {
      ASSERT_TRUE(p[k].is_finite());
      const bool end = k == 0 || k == n || k == 2 * n;
      EXPECT_EQ(p[k] == TropScalar(0), end) << k;
      EXPECT_TRUE(end || p[k] == TropScalar(1) || p[k] == TropScalar(2) || p[k] == TropScalar(3));
    }
    for (int g : L.gadget_degrees()) {
      EXPECT_EQ(p[g], TropScalar(1));
      EXPECT_EQ(p[g + n], TropScalar(1));
    }
    for (int z : L.z) {
      EXPECT_EQ(p[z], TropScalar(2));
      EXPECT_EQ(p[z + n], TropScalar(3));
    }
  }
}

TEST(Encode, SingleClauseAndContradiction) {
  const SatInstance one{1, {{{0, true}}}};
  const int n = minimal_gadget_n({1});
  const auto [p, L] = sat_to_poly(one, n);
  const auto [a, b] = assignment_to_factors(one, L, {true});
  EXPECT_EQ(trop_mul(a, b), p);
  EXPECT_THROW(assignment_to_factors(one, L, {false}), std::invalid_argument);
  EXPECT_EQ(factors_to_assignment(L, a, b), std::vector<bool>{true});
  // Exchanging the factors complements every parity and decodes the same.
  EXPECT_EQ(factors_to_assignment(L, b, a), std::vector<bool>{true});

  const SatInstance contra{1, {{{0, true}}, {{0, false}}}};
  const int m = minimal_gadget_n({1, 1});
  const auto [q, L2] = sat_to_poly(contra, m);
  EXPECT_FALSE(factor_bnb_search(q, DegreeSplit::degrees_only(m, m)).factors);
}

TEST(Encode, LayoutJsonRoundTrip) {
  const SatInstance inst = parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n");
  const auto [p, L] = sat_to_poly(inst, minimal_gadget_n({2, 2}));
  const GadgetLayout back = layout_from_json(layout_to_json(L));
  EXPECT_EQ(back.n, L.n);
  EXPECT_EQ(back.z, L.z);
  EXPECT_EQ(back.pairs, L.pairs);
  EXPECT_EQ(back.constraint_degrees, L.constraint_degrees);
  EXPECT_EQ(back.literals, L.literals);
  EXPECT_EQ(layout_to_json(back), layout_to_json(L));
  EXPECT_THROW(layout_from_json("{\"n\": 3}"), std::invalid_argument);
  std::string broken = layout_to_json(L);
  broken.replace(broken.find("\"n\": ") + 5, std::to_string(L.n).size(), "7");
  EXPECT_THROW(layout_from_json(broken), std::invalid_argument);
}

TEST(Encode, ExhaustiveSmallInstances) {
  // Clause lists up to reordering; the acceptance run covers ordered lists.
  int satisfiable = 0;
  int total = 0;
  for (int vars = 0; vars <= 2; ++vars) {
    const auto clauses = all_clauses(vars);
    std::vector<SatInstance> family{{vars, {}}};
    for (std::size_t a = 0; a < clauses.size(); ++a) {
      family.push_back({vars, {clauses[a]}});
      for (std::size_t b = a; b < clauses.size(); ++b) family.push_back({vars, {clauses[a], clauses[b]}});
    }
    for (const SatInstance& inst : family) {
      ++total;
      const auto solution = solve_by_exhaustion(inst);
      const int n = minimal_gadget_n(shape_of(inst));
      const auto [p, L] = sat_to_poly(inst, n);
      const BnbResult r = factor_bnb_search(p, DegreeSplit::degrees_only(n, n));
      ASSERT_EQ(bool(solution), bool(r.factors)) << to_dimacs(inst);
      if (!solution) continue;
      ++satisfiable;
      EXPECT_TRUE(inst.satisfied_by(factors_to_assignment(L, r.factors->first, r.factors->second)));
      const auto [a, b] = assignment_to_factors(inst, L, *solution);
      EXPECT_EQ(trop_mul(a, b), p);
    }
  }
  EXPECT_GT(satisfiable, 0);
  EXPECT_LT(satisfiable, total);
}

TEST(Encode, RoundTripRandomSatisfiable) {
  oracle::Rng rng(223);
  int done = 0;
  for (int t = 0; t < 60 && done < 20; ++t) {
    const SatInstance inst = random_instance(rng, 3, oracle::uniform(rng, 1, 3), 2);
    const auto solution = solve_by_exhaustion(inst);
    if (!solution) continue;
    ++done;
    const auto [p, L] = sat_to_poly(inst, minimal_gadget_n(shape_of(inst)));
    // Every satisfying assignment encodes; each decodes to some satisfying one.
    for (int mask = 0; mask < 8; ++mask) {
      const std::vector<bool> a{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
      if (!inst.satisfied_by(a)) {
        EXPECT_THROW(assignment_to_factors(inst, L, a), std::invalid_argument);
        continue;
      }
      const auto [f, g] = assignment_to_factors(inst, L, a);
      ASSERT_EQ(trop_mul(f, g), p);
      EXPECT_TRUE(inst.satisfied_by(factors_to_assignment(L, f, g)));
    }
  }
  EXPECT_GE(done, 10);
}

TEST(Encode, TamperedFactorIsRejected) {
  const SatInstance inst = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n");
  const auto [p, L] = sat_to_poly(inst, minimal_gadget_n({2, 1}));
  const auto [f, g] = assignment_to_factors(inst, L, {false, true});
  for (int t : L.gadget_degrees()) {
    std::vector<TropScalar> a = f.coeffs(), b = g.coeffs();
    std::swap(a[t], b[t]);
    EXPECT_THROW(factors_to_assignment(L, TropPoly(a), TropPoly(b)), std::invalid_argument) << t;
  }
}

TEST(Encode, NormalFormIsIdempotentAndKeepsProduct) {
  oracle::Rng rng(227);
  const SatInstance inst = parse_dimacs("p cnf 2 2\n1 -2 0\n2 1 0\n");
  const auto [p, L] = sat_to_poly(inst, minimal_gadget_n({2, 2}));
  const int n = L.n;
  int checked = 0;
  std::vector<int> interesting = L.gadget_degrees();
  for (const auto& [s, role] : L.constraint_degrees) interesting.push_back(s);
  for (int t = 0; t < 40; ++t) {
    const std::vector<bool> a{bool(oracle::uniform(rng, 0, 1)), bool(oracle::uniform(rng, 0, 1))};
    if (!inst.satisfied_by(a)) continue;
    auto [f, g] = assignment_to_factors(inst, L, a);
    // Loosen: raise non-1 coefficients to random values >= 2 that keep the
    // product, and translate the pair.
    std::vector<TropScalar> fa = f.coeffs(), gb = g.coeffs();
    std::vector<int> degrees = interesting;
    for (int r = 0; r < 6; ++r) degrees.push_back(oracle::uniform(rng, 1, n - 1));
    for (int k : degrees) {
      for (auto* v : {&fa[k], &gb[k]}) {
        if (*v == TropScalar(1)) continue;
        const TropScalar old = *v;
        *v = TropScalar(Rational(*v == TropScalar(2) ? 2 : 3) + oracle::ratio(oracle::uniform(rng, 0, 8), 2));
        if (trop_mul(TropPoly(fa), TropPoly(gb)) != p) *v = old;
      }
    }
    const Rational shift = oracle::random_rational(rng);
    const TropPoly lf = translate(TropPoly(fa), shift), lg = translate(TropPoly(gb), -shift);
    ASSERT_EQ(trop_mul(lf, lg), p);
    const auto once = normalize_reduction_factors(p, lf, lg);
    EXPECT_EQ(trop_mul(once.first, once.second), p);
    EXPECT_EQ(once, normalize_reduction_factors(p, once.first, once.second));
    EXPECT_EQ(once, std::make_pair(f, g));
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Bool2, Examples) {
  BoolPoly2 expect;
  {
    std::set<Exponent2> s;
    for (int i = 0; i <= 2; ++i) {
      for (int j = 0; j <= 2; ++j) s.insert({i, j});
    }
    expect = BoolPoly2(s);
  }
  EXPECT_EQ(trop_to_bool2(P("0"), 2), expect);
  EXPECT_EQ(trop_to_bool2(P("0 1"), 2), expect);
  EXPECT_EQ(trop_to_staircase(P("0 1"), 2).corners(), (std::vector<Exponent2>{{2, 2}}));
  EXPECT_EQ(trop_to_staircase(P("2 0"), 2).corners(), (std::vector<Exponent2>{{1, 2}, {2, 0}}));
  EXPECT_THROW(trop_to_bool2(P("0 1 2"), 1), std::invalid_argument);
  EXPECT_THROW(trop_to_bool2(P("0 5"), 3), std::invalid_argument);
  EXPECT_THROW(trop_to_bool2(P("0 -1"), 3), std::invalid_argument);
  EXPECT_THROW(trop_to_bool2(P("0 1/2"), 3), std::invalid_argument);
}

TEST(Bool2, FillInIsMultiplicative) {
  oracle::Rng rng(229);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::int64_t> a(oracle::uniform(rng, 1, 5)), b(oracle::uniform(rng, 1, 5));
    for (auto& x : a) x = oracle::uniform(rng, 0, 5) == 0 ? oracle::kInf : oracle::uniform(rng, 0, 6);
    for (auto& x : b) x = oracle::uniform(rng, 0, 5) == 0 ? oracle::kInf : oracle::uniform(rng, 0, 6);
    a.front() = oracle::uniform(rng, 0, 6);
    b.front() = oracle::uniform(rng, 0, 6);
    a.back() = b.back() = 0;
    const TropPoly f = oracle::from_ints(a), g = oracle::from_ints(b);
    const int half = oracle::uniform(rng, 6, 9);
    const BoolPoly2 product = trop_to_bool2(trop_mul(f, g), 2 * half);
    EXPECT_TRUE(product.is_filled());
    EXPECT_EQ(product, bool2_mul(trop_to_bool2(f, half), trop_to_bool2(g, half)));
    EXPECT_EQ(trop_to_staircase(trop_mul(f, g), 2 * half),
              staircase_mul(trop_to_staircase(f, half), trop_to_staircase(g, half)));
  }
}
