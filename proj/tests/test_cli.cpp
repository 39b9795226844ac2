#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "tropfact/cli.hpp"
#include "tropfact/factor.hpp"
#include "tropfact/matrix.hpp"
#include "tropfact/reductions.hpp"

using namespace tropfact;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.insert(args.begin(), "--json");
  const CliRun r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.out << r.err;
  return nlohmann::json::parse(r.out);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tropfact_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
  static inline int counter = 0;
};

}  // namespace

TEST(Cli, ArithmeticExamples) {
  EXPECT_EQ(run({"mul", "0 1 0", "0 2 3"}).out, "0 1 0 2 3\n");
  EXPECT_EQ(run({"add", "0 1 0", "0 2 3"}).out, "0 1 0\n");
  EXPECT_EQ(run({"eval", "0 5 0", "0"}).out, "0\n");
  EXPECT_EQ(run({"eval", "0 5 0", "-1"}).out, "-2\n");
  EXPECT_EQ(run({"eval", "0 5 0", "inf"}).out, "0\n");
  EXPECT_EQ(run({"hull", "0 1 0 2 3"}).out, "vertices: (0,0) (2,0) (4,3)\n");
}

TEST(Cli, ParseErrorsExitTwoWithPosition) {
  CliRun r = run({"mul", "0 x", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("p: token 1"), std::string::npos) << r.err;
  r = run({"singular", "0 1; 2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"mul", "0"}).code, 2);
  EXPECT_EQ(run({"eliminant", "0", "0 1"}).code, 2);
  EXPECT_EQ(run({"mul", "@/nonexistent/file", "0"}).code, 2);
}

TEST(Cli, HelpListsCommandsAndFlags) {
  CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* s : {"mul", "factor", "lcm", "sat-encode", "random-stats", "--json", "--full"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
  r = run({"factor", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* s : {"--integer", "--split", "--boolean", "--complete"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
}

TEST(Cli, FactorExamples) {
  CliRun r = run({"factor", "0 1 0 2 3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "reducible (branch and bound)\nfactor: 0 1 0\nfactor: 0 2 3\n");
  EXPECT_EQ(trop_mul(parse_poly("0 1 0"), parse_poly("0 2 3")), parse_poly("0 1 0 2 3"));

  r = run({"factor", "0 5 0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "irreducible (chord certificate)\n");

  r = run({"factor", "--boolean", "0 1 5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "irreducible (triple test)\n");

  r = run({"factor", "--boolean", "0 1 2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("reducible", 0), 0u);
}

TEST(Cli, FactorOptions) {
  // content is reported separately from the factors
  CliRun r = run({"factor", "inf 2 3 2 4 5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("constant: 2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("monomial: x^1"), std::string::npos) << r.out;

  r = run({"factor", "--split", "2", "0 1 0 2 3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "reducible (branch and bound)\nfactor: 0 2 3\nfactor: 0 1 0\n");
  EXPECT_EQ(run({"factor", "--split", "1", "0 5 0"}).code, 1);
  EXPECT_EQ(run({"factor", "--split", "7", "0 1 0 2 3"}).code, 2);

  const nlohmann::json j = run_json({"factor", "--integer", "--complete", "0 1 2 3 4 5 6"});
  FactorizationCertificate cert;
  for (const auto& f : j["result"]["factors"]) {
    const TropPoly p = parse_poly(f.get<std::string>());
    for (const auto& c : p.coeffs()) EXPECT_TRUE(c.is_infinite() || is_integer(c.value()));
    cert.factors.push_back(p);
  }
  cert.constant = parse_scalar(j["result"]["constant"].get<std::string>());
  cert.monomial_degree = j["result"]["monomial_degree"];
  EXPECT_TRUE(cert.verifies(parse_poly("0 1 2 3 4 5 6")));
  EXPECT_EQ(cert.factors.size(), 6u);
}

TEST(Cli, ResiduationExamples) {
  CliRun r = run({"divides", "0 inf 0", "0 0 0 0 0 0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "yes\nquotient: 0 0 0 0\n");
  EXPECT_EQ(trop_mul(parse_poly("0 inf 0"), parse_poly("0 0 0 0")), parse_poly("0 0 0 0 0 0"));

  r = run({"divides", "0 0", "0 inf 0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("no\n", 0), 0u);
  EXPECT_EQ(run({"divides", "0 0 0", "0 0"}).code, 1);

  r = run({"lcm", "0 inf 0", "0 inf inf 0", "--degree", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 0 0 0 0 0\ndegree: 5\nstatus: converged\niterations: 1\n");

  EXPECT_EQ(run({"lcm", "0 1", "0 2", "--degree", "1"}).code, 1);
  EXPECT_EQ(run({"lcm", "0 1", "0 2", "--degree", "1", "--limit", "1"}).code, 3);
  r = run({"lcm", "0 1", "0 2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "0 1 3");

  for (const char* p : {"0 3 1 4", "0 0 0", "0 2"}) {
    r = run({"gcd", p, p});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), p);
  }

  EXPECT_EQ(run({"superquot", "0 0", "-1 -1 -1"}).out, "0 0\n");
  EXPECT_EQ(run({"superquot", "0 0", "-1 -1 -1", "--no-floor"}).out, "-1 -1\n");
  EXPECT_EQ(run({"superquot", "0 0", "-1 -1 -1", "--floor", "-1/2"}).out, "-1/2 -1/2\n");
  EXPECT_EQ(run({"superquot", "0 0", "0 1 2", "--degree", "2"}).out, "1 2\n");
}

TEST(Cli, MatrixExamples) {
  EXPECT_EQ(run({"eliminant", "0 1", "0 2"}).out, "0 1\n0 2\n");
  EXPECT_EQ(run({"rank", "0 1 1; 1 0 1; 1 1 0"}).out, "3\n");
  EXPECT_EQ(run({"rank", "0 inf inf\ninf 0 inf\ninf inf 0"}).out, "3\n");

  // the eliminant of a planted common factor is singular
  const TropPoly h = parse_poly("0 1"), a = parse_poly("0 3 2"), b = parse_poly("0 2 5");
  const std::string m = to_string(eliminant(trop_mul(a, h), trop_mul(b, h)));
  CliRun r = run({"singular", m});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("singular\n", 0), 0u);

  r = run({"singular", "0 1; 1 0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "nonsingular\nminimum: 0\nwitness: 0 1\n");

  EXPECT_EQ(run({"rank", "--two-value", "0 1 1; 1 0 1"}).code, 0);
  EXPECT_EQ(run({"rank", "--two-value", "0 1 1; 1 0 1; 0 0 1"}).code, 1);
  EXPECT_EQ(run({"rank", "0 1 1; 1 0 1; 0 0 1"}).out, "2\n");
  EXPECT_EQ(run({"rank", "--two-value", "0 1; 0 1; 1 0"}).code, 2);
  EXPECT_EQ(run({"rank", "--cap", "2", "0 1 1; 1 0 1; 1 1 0"}).code, 2);
  EXPECT_EQ(run({"rank", "--threads", "3", "0 1 1; 1 0 1; 1 1 0"}).out, "3\n");
}

TEST(Cli, FileArguments) {
  TempDir dir;
  const std::string p = dir.file("p.txt", "0 1 0\n");
  const std::string m = dir.file("m.txt", "0 inf inf\ninf 0 inf\ninf inf 0\n");
  EXPECT_EQ(run({"mul", "@" + p, "0 2 3"}).out, "0 1 0 2 3\n");
  EXPECT_EQ(run({"rank", "@" + m}).out, "3\n");
}

TEST(Cli, SatRoundTrip) {
  TempDir dir;
  const std::string cnf = dir.file("one.cnf", "c one clause\np cnf 2 1\n1 -2 0\n");
  CliRun r = run({"sat-encode", cnf, "--poly-out", dir.name("p"), "--layout-out", dir.name("l.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n: ", 0), 0u);

  std::ifstream pin(dir.name("p"));
  std::string ptext((std::istreambuf_iterator<char>(pin)), {});
  const TropPoly poly = parse_poly(ptext);

  // factor the encoded polynomial, then decode the factors it printed
  const nlohmann::json fj = run_json({"factor", "--split", std::to_string(poly.degree() / 2), ptext});
  const auto factors = fj["result"]["factors"];
  ASSERT_EQ(factors.size(), 2u);
  r = run({"sat-decode", dir.name("l.json"), factors[0], factors[1]});
  ASSERT_EQ(r.code, 0) << r.err;
  SatInstance inst = parse_dimacs("p cnf 2 1\n1 -2 0\n");
  std::istringstream v(r.out);
  std::string tag;
  v >> tag;
  EXPECT_EQ(tag, "v");
  std::vector<bool> a;
  for (int lit; v >> lit && lit != 0;) a.push_back(lit > 0);
  EXPECT_TRUE(inst.satisfied_by(a));

  // without factors the decoder searches the designated split itself
  r = run({"sat-decode", dir.name("l.json")});
  EXPECT_EQ(r.code, 0);

  // a tampered factor is an input error
  TropPoly bad = parse_poly(factors[0].get<std::string>());
  std::vector<TropScalar> c = bad.coeffs();
  c[1] = TropScalar(make_rational(7));
  EXPECT_EQ(run({"sat-decode", dir.name("l.json"), to_string(TropPoly(c)), factors[1]}).code, 2);
}

TEST(Cli, SatUnsatisfiableAndAuditFailure) {
  TempDir dir;
  const std::string cnf = dir.file("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  CliRun r = run({"sat-encode", cnf, "--poly-out", dir.name("p"), "--layout-out", dir.name("l.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(run({"factor", "@" + dir.name("p")}).code, 1);
  EXPECT_EQ(run({"sat-decode", dir.name("l.json")}).code, 1);

  r = run({"sat-encode", cnf, "--n", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no room"), std::string::npos) << r.err;
}

TEST(Cli, SatEncodeInlineOutputParses) {
  TempDir dir;
  const std::string cnf = dir.file("one.cnf", "p cnf 1 1\n1 0\n");
  const nlohmann::json j = run_json({"sat-encode", cnf});
  const GadgetLayout layout = layout_from_json(j["result"]["layout"].dump());
  EXPECT_EQ(parse_poly(j["result"]["polynomial"].get<std::string>()), encoded_polynomial(layout));
  EXPECT_EQ(j["result"]["n"], minimal_gadget_n({1}));
}

TEST(Cli, LargePolynomialsAreSummarized) {
  std::string big = "0";
  for (int k = 0; k < 300; ++k) big += " 0";
  CliRun r = run({"mul", big, "0 0"});
  EXPECT_NE(r.out.find("degree 301"), std::string::npos);
  EXPECT_NE(r.out.find("--full"), std::string::npos);
  EXPECT_LT(r.out.size(), 200u);
  r = run({"--full", "mul", big, "0 0"});
  EXPECT_EQ(parse_poly(r.out).degree(), 301);
  const nlohmann::json j = run_json({"mul", big, "0 0"});
  EXPECT_EQ(parse_poly(j["result"]["polynomial"].get<std::string>()).degree(), 301);
}

TEST(Cli, JsonEnvelopeRoundTrips) {
  nlohmann::json j = run_json({"mul", "0 1 0", "0 2 3"});
  for (const char* k : {"command", "inputs", "result", "status", "timings"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["command"], "mul");
  EXPECT_TRUE(j["timings"].is_null());
  EXPECT_EQ(parse_poly(j["result"]["polynomial"].get<std::string>()),
            trop_mul(parse_poly(j["inputs"]["p"].get<std::string>()),
                     parse_poly(j["inputs"]["q"].get<std::string>())));

  j = run_json({"--timings", "hull", "0 1 0 2 3"});
  EXPECT_TRUE(j["timings"]["seconds"].is_number());
  EXPECT_EQ(j["result"]["vertices"], nlohmann::json::parse(R"([[0,"0"],[2,"0"],[4,"3"]])"));

  j = run_json({"singular", "0 1; 1 0"}, 1);
  EXPECT_EQ(j["status"], "nonsingular");
  EXPECT_EQ(parse_matrix(j["inputs"]["m"].get<std::string>()), parse_matrix("0 1\n1 0"));

  j = run_json({"lcm", "0 1", "0 2", "--degree", "1"}, 1);
  EXPECT_EQ(j["status"], "no-common-multiple");
  EXPECT_TRUE(j["result"]["lcm"].is_null());

  j = run_json({"mul", "0 x", "0"}, 2);
  EXPECT_EQ(j["status"], "error");
  EXPECT_NE(j["result"]["message"].get<std::string>().find("token 1"), std::string::npos);

  // flags after the subcommand are accepted too
  EXPECT_EQ(nlohmann::json::parse(run({"eval", "0 5 0", "0", "--json"}).out)["result"]["value"], "0");
}

TEST(Cli, RandomStatsIsSeedDeterministic) {
  const std::vector<std::string> args = {"random-stats", "--degree", "8", "--samples", "1000", "--seed", "7"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("factorable: "), std::string::npos);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "4"});
  EXPECT_EQ(run(threaded).out, a.out);
  std::vector<std::string> other = args;
  other.back() = "8";
  EXPECT_NE(run(other).out, a.out);
}

TEST(Cli, RandomStatsModes) {
  const nlohmann::json j =
      run_json({"random-stats", "--mode", "concave", "--degree", "10", "--samples", "200", "--seed", "3"});
  EXPECT_EQ(j["result"]["factorable"], 0);
  EXPECT_EQ(j["result"]["irreducible"], 200);

  const CliRun r = run({"random-stats", "--degree", "8", "--samples", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("samples: 0"), std::string::npos);
  EXPECT_EQ(r.out.find("fraction"), std::string::npos);

  EXPECT_EQ(run({"random-stats", "--mode", "concave", "--degree", "7"}).code, 2);
  EXPECT_EQ(run({"random-stats", "--mode", "other", "--degree", "8"}).code, 2);
}
