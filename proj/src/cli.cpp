#include "tropfact/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "tropfact/divlcm.hpp"
#include "tropfact/factor.hpp"
#include "tropfact/matrix.hpp"
#include "tropfact/newton.hpp"
#include "tropfact/reductions.hpp"

namespace tropfact {

namespace {

using Json = nlohmann::ordered_json;

// Polynomials above this degree print as a summary unless --full.
constexpr int kSummaryDegree = 200;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  int code = 0;
  std::string status = "ok";
  std::string text;
  Json inputs = Json::object();
  Json result = Json::object();
};

struct Globals {
  bool json = false;
  bool timings = false;
  bool full = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write file '" + path + "'");
}

// `@path` reads the argument from a file.
std::string resolve(const std::string& arg) {
  std::string s = !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
  const auto end = s.find_last_not_of(" \t\r\n");
  s.erase(end == std::string::npos ? 0 : end + 1);
  const auto begin = s.find_first_not_of(" \t\r\n");
  return begin == std::string::npos ? std::string() : s.substr(begin);
}

template <class F>
auto parse_arg(const std::string& name, const std::string& arg, F parse) {
  try {
    return parse(resolve(arg));
  } catch (const ParseError& e) {
    throw UsageError(name + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(name + ": " + e.what());
  }
}

TropPoly poly_arg(const std::string& name, const std::string& arg) {
  return parse_arg(name, arg, [](const std::string& s) { return parse_poly(s); });
}

TropMatrix matrix_arg(const std::string& name, const std::string& arg) {
  return parse_arg(name, arg, [](const std::string& s) { return parse_matrix(s); });
}

std::string hull_text(const TropPoly& p) {
  std::string out;
  for (const auto& v : lower_hull(p).vertices) {
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(v.degree) + "," + to_string(v.value) + ")";
  }
  return out;
}

std::string poly_text(const TropPoly& p, const Globals& g) {
  if (g.full || p.degree() <= kSummaryDegree) return to_string(p);
  int finite = 0;
  for (const auto& c : p.coeffs()) finite += c.is_finite();
  return "degree " + std::to_string(p.degree()) + ", " + std::to_string(finite) +
         " finite coefficients, hull " + hull_text(p) + " (use --full for all coefficients)";
}

Json hull_json(const TropPoly& p) {
  Json v = Json::array();
  for (const auto& x : lower_hull(p).vertices) v.push_back({x.degree, to_string(x.value)});
  return v;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string assignment_text(const std::vector<bool>& a) {
  std::string out = "v";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += " " + std::string(a[i] ? "" : "-") + std::to_string(i + 1);
  }
  return out + " 0";
}

Json assignment_json(const std::vector<bool>& a) {
  Json v = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back(a[i] ? int(i + 1) : -int(i + 1));
  return v;
}

// Text and JSON forms of a factorization certificate.
void describe_certificate(const FactorizationCertificate& c, bool boolean, Outcome& o,
                          const Globals& g) {
  Json factors = Json::array();
  for (const TropPoly& f : c.factors) {
    const std::string s = boolean ? to_string(BoolPoly::from_trop(f)) : poly_text(f, g);
    o.text += "factor: " + s + "\n";
    factors.push_back(boolean ? to_string(BoolPoly::from_trop(f)) : to_string(f));
  }
  if (c.constant != TropScalar(0)) o.text += "constant: " + to_string(c.constant) + "\n";
  if (c.monomial_degree) o.text += "monomial: x^" + std::to_string(c.monomial_degree) + "\n";
  o.result["factors"] = factors;
  o.result["constant"] = to_string(c.constant);
  o.result["monomial_degree"] = c.monomial_degree;
}

using Handler = std::function<Outcome(const Globals&)>;

struct Command {
  CLI::App* app;
  Handler run;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tropical (min-plus) polynomial toolkit.\n"
               "Polynomials are whitespace separated coefficients, lowest degree first\n"
               "(integers, p/q or inf). Any input argument may be @path to read a file.\n"
               "Exit codes: 0 affirmative, 1 negative decision, 2 usage or input error,\n"
               "3 iteration limit, 4 internal error.",
               "tropfact"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON envelope {command, inputs, result, status, timings}");
  app.add_flag("--timings", g.timings, "Include wall-clock seconds in JSON output");
  app.add_flag("--full", g.full, "Print large polynomials in full instead of a summary");

  std::vector<Command> commands;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->positionals_at_end(false);
    commands.push_back({sub, nullptr});
    return &commands.back();
  };
  commands.reserve(32);

  // --- arithmetic -------------------------------------------------------
  std::string p1, p2;
  {
    Command* c = add("mul", "Tropical product of two polynomials");
    c->app->add_option("p", p1, "First polynomial")->required();
    c->app->add_option("q", p2, "Second polynomial")->required();
    c->run = [&](const Globals& g) {
      Outcome o;
      const TropPoly r = trop_mul(poly_arg("p", p1), poly_arg("q", p2));
      o.inputs = {{"p", to_string(poly_arg("p", p1))}, {"q", to_string(poly_arg("q", p2))}};
      o.result["polynomial"] = to_string(r);
      o.text = poly_text(r, g) + "\n";
      return o;
    };
  }
  {
    Command* c = add("add", "Tropical sum (coefficientwise min) of two polynomials");
    c->app->add_option("p", p1, "First polynomial")->required();
    c->app->add_option("q", p2, "Second polynomial")->required();
    c->run = [&](const Globals& g) {
      Outcome o;
      const TropPoly r = trop_add(poly_arg("p", p1), poly_arg("q", p2));
      o.inputs = {{"p", to_string(poly_arg("p", p1))}, {"q", to_string(poly_arg("q", p2))}};
      o.result["polynomial"] = to_string(r);
      o.text = poly_text(r, g) + "\n";
      return o;
    };
  }
  std::string point;
  {
    Command* c = add("eval", "Evaluate a polynomial at a point: min_k (c_k + k x)");
    c->app->add_option("p", p1, "Polynomial")->required();
    c->app->add_option("x", point, "Point (integer, p/q or inf)")->required();
    c->run = [&](const Globals&) {
      Outcome o;
      const TropPoly p = poly_arg("p", p1);
      const TropScalar x =
          parse_arg("x", point, [](const std::string& s) { return parse_scalar(s); });
      const TropScalar v = eval(p, x);
      o.inputs = {{"p", to_string(p)}, {"x", to_string(x)}};
      o.result["value"] = to_string(v);
      o.text = to_string(v) + "\n";
      return o;
    };
  }
  {
    Command* c = add("hull", "Vertices of the lower Newton hull");
    c->app->add_option("p", p1, "Polynomial")->required();
    c->run = [&](const Globals&) {
      Outcome o;
      const TropPoly p = poly_arg("p", p1);
      if (p.is_zero()) throw UsageError("p: the zero polynomial has no hull");
      o.inputs = {{"p", to_string(p)}};
      o.result["vertices"] = hull_json(p);
      o.text = "vertices: " + hull_text(p) + "\n";
      return o;
    };
  }

  // --- factoring --------------------------------------------------------
  bool integer = false, boolean = false, complete = false;
  int split = -1;
  {
    Command* c = add("factor", "Decide irreducibility; print factors when reducible (exit 0) or the verdict (exit 1)");
    c->app->add_option("p", p1, "Polynomial (a support with --boolean)")->required();
    c->app->add_flag("--integer", integer, "Integer factors (rounded from a rational factorization)");
    c->app->add_option("--split", split, "Only try a left factor of this degree (degrees of the content-free core)");
    c->app->add_flag("--boolean", boolean, "Input is a Boolean support, e.g. \"0 1 5\"");
    c->app->add_flag("--complete", complete, "Split recursively into irreducible factors");
    c->run = [&](const Globals& g) {
      Outcome o;
      TropPoly p;
      if (boolean) {
        const BoolPoly b = parse_arg("p", p1, [](const std::string& s) { return parse_bool_poly(s); });
        if (b.empty()) throw UsageError("p: empty support");
        p = b.to_trop();
        o.inputs["p"] = to_string(b);
      } else {
        p = poly_arg("p", p1);
        if (p.is_zero()) throw UsageError("p: cannot factor the zero polynomial");
        o.inputs["p"] = to_string(p);
      }
      o.inputs["integer"] = integer;
      if (split >= 0) o.inputs["split"] = split;
      auto irreducible = [&](const std::string& reason) {
        o.code = 1;
        o.status = "irreducible";
        o.result["verdict"] = "irreducible";
        o.result["reason"] = reason;
        o.text = "irreducible (" + reason + ")\n";
      };
      auto reducible = [&](const std::string& reason, const FactorizationCertificate& cert) {
        o.status = "reducible";
        o.result["verdict"] = "reducible";
        o.result["reason"] = reason;
        o.text = "reducible (" + reason + ")\n";
        describe_certificate(cert, boolean, o, g);
      };
      if (split >= 0) {
        const Content content = normalize_content(p);
        const int n = content.core.degree();
        if (split < 1 || split >= n) {
          throw UsageError("--split must lie in [1, " + std::to_string(n - 1) + "] for this core degree");
        }
        auto found = factor_bnb(content.core, DegreeSplit::degrees_only(split, n - split));
        if (!found) {
          irreducible("no factors of degrees " + std::to_string(split) + " and " + std::to_string(n - split));
          return o;
        }
        FactorizationCertificate cert = *found;
        if (integer && cert.factors.size() == 2) {
          bool integral = true;
          for (const auto& f : cert.factors) {
            for (const auto& x : f.coeffs()) integral = integral && (x.is_infinite() || is_integer(x.value()));
          }
          if (!integral) {
            std::tie(cert.factors[0], cert.factors[1]) =
                round_to_integer_factorization(cert.factors[0], cert.factors[1]);
          }
        }
        cert.constant = content.constant + cert.constant;
        cert.monomial_degree += content.monomial_degree;
        if (!cert.verifies(p)) throw std::logic_error("split certificate does not verify");
        reducible("branch and bound", cert);
        return o;
      }
      const IrreducibilityVerdict v = is_irreducible(p, integer);
      if (v.irreducible) {
        irreducible(v.reason);
        return o;
      }
      if (complete) {
        const FactorizationCertificate cert = factor_completely(p, integer);
        reducible(v.reason, cert);
      } else {
        reducible(v.reason, *v.certificate);
      }
      return o;
    };
  }

  // --- residuation ------------------------------------------------------
  int degree = -1;
  std::int64_t limit = kDefaultLcmIterations;
  auto lcm_report = [&](const LcmReport& r, Outcome& o, const Globals& g) {
    o.status = to_string(r.status);
    o.result["degree"] = r.degree;
    o.result["status"] = to_string(r.status);
    o.result["iterations"] = r.iterations;
    o.result["lcm"] = r.result ? Json(to_string(*r.result)) : Json(nullptr);
    o.text += (r.result ? poly_text(*r.result, g) : std::string("no result")) + "\n";
    o.text += "degree: " + std::to_string(r.degree) + "\n";
    o.text += "status: " + to_string(r.status) + "\n";
    o.text += "iterations: " + std::to_string(r.iterations) + "\n";
    if (!r.detail.empty()) {
      o.text += "detail: " + r.detail + "\n";
      o.result["detail"] = r.detail;
    }
    o.code = r.status == LcmStatus::Converged ? 0 : r.status == LcmStatus::NoCommonMultiple ? 1 : 3;
  };
  {
    Command* c = add("lcm", "Least common multiple by alternating residuation");
    c->app->add_option("f", p1, "First polynomial (constant term 0, coefficients >= 0)")->required();
    c->app->add_option("g", p2, "Second polynomial (same conditions)")->required();
    c->app->add_option("--degree", degree, "Degree of the multiple (default: smallest that converges)");
    c->app->add_option("--limit", limit, "Iteration limit per degree")->capture_default_str();
    c->run = [&](const Globals& g) {
      Outcome o;
      const TropPoly f = poly_arg("f", p1), h = poly_arg("g", p2);
      o.inputs = {{"f", to_string(f)}, {"g", to_string(h)}};
      if (degree >= 0) o.inputs["degree"] = degree;
      try {
        if (degree >= 0) {
          lcm_report(lcm(f, h, degree, limit), o, g);
          return o;
        }
        LcmReport last;
        for (int d = std::max(f.degree(), h.degree()); d <= f.degree() + h.degree(); ++d) {
          last = lcm(f, h, d, limit);
          if (last.status != LcmStatus::NoCommonMultiple) break;
        }
        lcm_report(last, o, g);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      return o;
    };
  }
  {
    Command* c = add("gcd", "Least superquotient of f (x) g by their lcm at the smallest convergent degree");
    c->app->add_option("f", p1, "First polynomial (constant term 0, coefficients >= 0)")->required();
    c->app->add_option("g", p2, "Second polynomial (same conditions)")->required();
    c->app->add_option("--limit", limit, "Iteration limit per lcm degree")->capture_default_str();
    c->run = [&](const Globals& g) {
      Outcome o;
      const TropPoly f = poly_arg("f", p1), h = poly_arg("g", p2);
      o.inputs = {{"f", to_string(f)}, {"g", to_string(h)}};
      GcdReport r;
      try {
        r = gcd(f, h, limit);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      } catch (const std::runtime_error& e) {
        o.code = 3;
        o.status = "iteration-limit";
        o.result["detail"] = e.what();
        o.text = std::string("iteration limit: ") + e.what() + "\n";
        return o;
      }
      o.result["gcd"] = to_string(r.gcd);
      o.result["lcm"] = to_string(*r.lcm.result);
      o.result["lcm_degree"] = r.lcm.degree;
      o.text = poly_text(r.gcd, g) + "\n";
      o.text += "lcm: " + poly_text(*r.lcm.result, g) + "\n";
      o.text += "lcm degree: " + std::to_string(r.lcm.degree) + "\n";
      return o;
    };
  }
  {
    Command* c = add("divides", "Exact divisibility d | s with the quotient as witness (exit 1 when not)");
    c->app->add_option("d", p1, "Divisor")->required();
    c->app->add_option("s", p2, "Dividend")->required();
    c->run = [&](const Globals& g) {
      Outcome o;
      const TropPoly d = poly_arg("d", p1), s = poly_arg("s", p2);
      if (d.is_zero() || s.is_zero()) throw UsageError("divides needs nonzero polynomials");
      o.inputs = {{"d", to_string(d)}, {"s", to_string(s)}};
      if (s.degree() < d.degree()) {
        o.code = 1;
        o.status = "no";
        o.result["divides"] = false;
        o.text = "no\nreason: deg d > deg s\n";
        return o;
      }
      const DivisionResult r = divides(d, s);
      o.code = r.divides ? 0 : 1;
      o.status = r.divides ? "yes" : "no";
      o.result["divides"] = r.divides;
      o.result[r.divides ? "quotient" : "least_superquotient"] = to_string(r.quotient);
      o.text = std::string(r.divides ? "yes\nquotient: " : "no\nleast superquotient: ") +
               poly_text(r.quotient, g) + "\n";
      return o;
    };
  }
  std::string floor_text = "0";
  bool no_floor = false;
  {
    Command* c = add("superquot", "Least q of a given degree with d (x) q >= s coefficientwise");
    c->app->add_option("d", p1, "Divisor")->required();
    c->app->add_option("s", p2, "Dividend")->required();
    c->app->add_option("--degree", degree, "Quotient degree (default deg s - deg d)");
    auto* fl = c->app->add_option("--floor", floor_text, "Lower clamp for the coefficients")->capture_default_str();
    c->app->add_flag("--no-floor", no_floor, "Disable the clamp")->excludes(fl);
    c->run = [&](const Globals& g) {
      Outcome o;
      const TropPoly d = poly_arg("d", p1), s = poly_arg("s", p2);
      const int qd = degree >= 0 ? degree : s.degree() - d.degree();
      std::optional<Rational> floor;
      if (!no_floor) floor = parse_arg("--floor", floor_text, [](const std::string& t) { return parse_rational(t); });
      o.inputs = {{"d", to_string(d)}, {"s", to_string(s)}, {"degree", qd},
                  {"floor", floor ? Json(to_string(*floor)) : Json(nullptr)}};
      TropPoly q;
      try {
        q = least_superquotient(d, s, qd, floor);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      o.result["quotient"] = to_string(q);
      o.text = poly_text(q, g) + "\n";
      return o;
    };
  }

  // --- matrices ---------------------------------------------------------
  {
    Command* c = add("eliminant", "Eliminant matrix of f and g (rows of shifted coefficients)");
    c->app->add_option("f", p1, "First polynomial (degree >= 1)")->required();
    c->app->add_option("g", p2, "Second polynomial (degree >= 1)")->required();
    c->run = [&](const Globals&) {
      Outcome o;
      const TropPoly f = poly_arg("f", p1), h = poly_arg("g", p2);
      o.inputs = {{"f", to_string(f)}, {"g", to_string(h)}};
      TropMatrix m;
      try {
        m = eliminant(f, h);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      o.result["matrix"] = to_string(m);
      o.text = to_string(m) + "\n";
      return o;
    };
  }
  std::string matrix_text;
  {
    Command* c = add("singular", "Is the minimal permutation sum non-unique (exit 0) or unique (exit 1)?");
    c->app->add_option("m", matrix_text, "Matrix: rows on lines or separated by ';'")->required();
    c->run = [&](const Globals&) {
      Outcome o;
      const TropMatrix m = matrix_arg("m", matrix_text);
      if (!m.is_square()) throw UsageError("m: matrix must be square");
      o.inputs = {{"m", to_string(m)}};
      const AssignmentResult r = min_assignment(m);
      const bool singular = !(r.optimal_value.is_finite() && r.unique);
      o.code = singular ? 0 : 1;
      o.status = singular ? "singular" : "nonsingular";
      o.result["singular"] = singular;
      o.result["minimum"] = to_string(r.optimal_value);
      o.result["witness"] = r.witness;
      o.text = o.status + "\nminimum: " + to_string(r.optimal_value) + "\n";
      if (!r.witness.empty()) o.text += "witness: " + join_ints(r.witness) + "\n";
      return o;
    };
  }
  int cap = kDefaultRankCap, threads = 1;
  bool two_value = false;
  {
    Command* c = add("rank", "Tropical rank by exhaustive minors, or the two-value full-rank test");
    c->app->add_option("m", matrix_text, "Matrix: rows on lines or separated by ';'")->required();
    c->app->add_option("--cap", cap, "Largest min(rows, cols) searched exhaustively")->capture_default_str();
    c->app->add_flag("--two-value", two_value, "k x n two-valued matrix: is the rank k? (exit 1 when not)");
    c->app->add_option("--threads", threads, "Worker threads for the minor search")->capture_default_str();
    c->run = [&](const Globals&) {
      Outcome o;
      const TropMatrix m = matrix_arg("m", matrix_text);
      o.inputs = {{"m", to_string(m)}};
      try {
        if (two_value) {
          const bool full = two_value_rank_full(m);
          o.code = full ? 0 : 1;
          o.status = full ? "full" : "not-full";
          o.result["full_rank"] = full;
          o.text = std::string(full ? "full" : "not full") + " (rows " + std::to_string(m.rows()) + ")\n";
          return o;
        }
        const int r = tropical_rank(m, cap, threads);
        o.result["rank"] = r;
        o.text = std::to_string(r) + "\n";
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      return o;
    };
  }

  // --- reductions -------------------------------------------------------
  std::string cnf_path, poly_out, layout_out;
  int half_degree = -1;
  {
    Command* c = add("sat-encode", "Encode a DIMACS CNF file as a tropical polynomial plus gadget layout");
    c->app->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
    c->app->add_option("--n", half_degree, "Half degree n (default: smallest passing the audit)");
    c->app->add_option("--poly-out", poly_out, "Write the polynomial to this file");
    c->app->add_option("--layout-out", layout_out, "Write the layout JSON to this file");
    c->run = [&](const Globals& g) {
      Outcome o;
      const SatInstance inst =
          parse_arg("cnf", "@" + cnf_path, [](const std::string& s) { return parse_dimacs(s); });
      std::vector<int> shape;
      for (const auto& cl : inst.clauses) shape.push_back(static_cast<int>(cl.size()));
      const int n = half_degree >= 0 ? half_degree : minimal_gadget_n(shape);
      std::pair<TropPoly, GadgetLayout> enc;
      try {
        enc = sat_to_poly(inst, n);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const std::string layout = layout_to_json(enc.second);
      o.inputs = {{"cnf", to_dimacs(inst)}, {"n", n}};
      o.result["n"] = n;
      o.result["polynomial"] = to_string(enc.first);
      o.result["layout"] = Json::parse(layout);
      o.text = "n: " + std::to_string(n) + "\n";
      if (!poly_out.empty()) {
        write_file(poly_out, to_string(enc.first) + "\n");
        o.text += "polynomial written to " + poly_out + "\n";
      } else {
        o.text += "polynomial: " + poly_text(enc.first, g) + "\n";
      }
      if (!layout_out.empty()) {
        write_file(layout_out, layout + "\n");
        o.text += "layout written to " + layout_out + "\n";
      } else {
        o.text += "layout:\n" + layout + "\n";
      }
      return o;
    };
  }
  std::string layout_path;
  {
    Command* c = add("sat-decode",
                     "Read a satisfying assignment off a factorization (searched for when f, g are omitted)");
    c->app->add_option("layout", layout_path, "Layout JSON written by sat-encode")->required();
    c->app->add_option("f", p1, "First factor");
    c->app->add_option("g", p2, "Second factor");
    c->run = [&](const Globals&) {
      Outcome o;
      const GadgetLayout layout =
          parse_arg("layout", "@" + layout_path, [](const std::string& s) { return layout_from_json(s); });
      TropPoly f, h;
      if (p1.empty() != p2.empty()) throw UsageError("give both factors or neither");
      if (!p1.empty()) {
        f = poly_arg("f", p1);
        h = poly_arg("g", p2);
        o.inputs = {{"f", to_string(f)}, {"g", to_string(h)}};
      } else {
        const TropPoly p = encoded_polynomial(layout);
        auto found = factor_bnb_search(p, DegreeSplit::degrees_only(layout.n, layout.n)).factors;
        if (!found) {
          o.code = 1;
          o.status = "unsatisfiable";
          o.text = "unsatisfiable (no factorization in the n, n split)\n";
          return o;
        }
        std::tie(f, h) = *found;
      }
      std::vector<bool> a;
      try {
        a = factors_to_assignment(layout, f, h);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("factors: ") + e.what());
      }
      o.status = "satisfiable";
      o.result["assignment"] = assignment_json(a);
      o.text = assignment_text(a) + "\n";
      return o;
    };
  }

  // --- experiments ------------------------------------------------------
  int samples = 1000;
  std::uint64_t seed = 1;
  std::string mode = "boolean";
  {
    Command* c = add("random-stats",
                     "Factorable fraction of random polynomials. PRNG: std::mt19937_64 seeded with --seed;\n"
                     "boolean: each interior degree present with probability 1/2;\n"
                     "concave: degree 2m, c_0 = c_m = c_2m = 0, other coefficients k/1000 with k uniform in 1..10000");
    c->app->add_option("--degree", degree, "Degree")->required();
    c->app->add_option("--samples", samples, "Number of samples")->capture_default_str();
    c->app->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    c->app->add_option("--mode", mode, "boolean or concave")->check(CLI::IsMember({"boolean", "concave"}))->capture_default_str();
    c->app->add_option("--threads", threads, "Worker threads (results do not depend on it)")->capture_default_str();
    c->run = [&](const Globals&) {
      Outcome o;
      if (degree < 1) throw UsageError("--degree must be at least 1");
      if (mode == "concave" && (degree % 2 || degree < 2)) throw UsageError("concave mode needs an even degree");
      if (samples < 0) throw UsageError("--samples must be nonnegative");
      std::mt19937_64 rng(seed);
      std::vector<TropPoly> polys;
      polys.reserve(samples);
      for (int t = 0; t < samples; ++t) {
        std::vector<TropScalar> c(degree + 1);
        if (mode == "boolean") {
          c[0] = c[degree] = TropScalar(0);
          for (int k = 1; k < degree; ++k) {
            if (rng() & 1) c[k] = TropScalar(0);
          }
        } else {
          const int m = degree / 2;
          for (int k = 0; k <= degree; ++k) {
            if (k == 0 || k == m || k == degree) {
              c[k] = TropScalar(0);
            } else {
              c[k] = TropScalar(make_rational(static_cast<std::int64_t>(rng() % 10000 + 1), 1000));
            }
          }
        }
        polys.emplace_back(std::move(c));
      }
      std::vector<char> factorable(samples, 0);
      std::atomic<int> next{0};
      auto work = [&] {
        for (int i = next++; i < samples; i = next++) factorable[i] = !is_irreducible(polys[i]).irreducible;
      };
      if (threads <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
      }
      const int hits = static_cast<int>(std::count(factorable.begin(), factorable.end(), 1));
      o.inputs = {{"mode", mode}, {"degree", degree}, {"samples", samples}, {"seed", seed}};
      o.result["factorable"] = hits;
      o.result["irreducible"] = samples - hits;
      std::ostringstream s;
      s << "mode: " << mode << "\ndegree: " << degree << "\nsamples: " << samples << "\nseed: " << seed
        << "\nfactorable: " << hits << "\nirreducible: " << samples - hits << "\n";
      if (samples > 0) {
        const Rational f = make_rational(hits, samples);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(hits) / samples);
        s << "fraction: " << to_string(f) << " (" << buf << ")\n";
        o.result["fraction"] = to_string(f);
      } else {
        o.result["fraction"] = nullptr;
      }
      o.text = s.str();
      return o;
    };
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const Command* chosen = nullptr;
  for (const Command& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }
  const std::string name = chosen->app->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string error;
  try {
    o = chosen->run(g);
  } catch (const UsageError& e) {
    o.code = 2;
    error = e.what();
  } catch (const std::invalid_argument& e) {
    o.code = 2;
    error = e.what();
  } catch (const std::exception& e) {
    o.code = 4;
    error = std::string("internal error: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!error.empty()) {
    o.status = "error";
    o.result = {{"message", error}};
    err << "error: " << error << "\n";
  }
  if (g.json) {
    Json env;
    env["command"] = name;
    env["inputs"] = o.inputs;
    env["result"] = o.result;
    env["status"] = o.status;
    env["timings"] = g.timings ? Json({{"seconds", seconds}}) : Json(nullptr);
    out << env.dump(2) << "\n";
  } else {
    out << o.text;
  }
  return o.code;
}

}  // namespace tropfact
