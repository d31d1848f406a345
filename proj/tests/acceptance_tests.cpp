// Acceptance suite: one criterion per test case, one printed verdict line
// each. Every tolerance is pinned here; the checks are exact integer and
// boolean comparisons throughout.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "jetcheck/builtins.hpp"
#include "jetcheck/cli.hpp"
#include "jetcheck/feasibility.hpp"
#include "jetcheck/rankmatrix.hpp"

using namespace jetcheck;
namespace chrono = std::chrono;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double seconds_since(chrono::steady_clock::time_point t0) {
  return chrono::duration_cast<chrono::milliseconds>(
             chrono::steady_clock::now() - t0)
             .count() /
         1000.0;
}

void verdict(int criterion, bool ok, const std::string& what) {
  std::cout << "ACCEPTANCE " << criterion << ": " << (ok ? "PASS" : "FAIL")
            << " - " << what << std::endl;
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", what);
}

const std::vector<std::vector<int>> kPublishedWindow = {
    {4, 1, 1, 1, 0, 0, 0, 0},
    {2, 0, 0, 0, 1, 0, 0, 0},
    {1, 1, 0, 0, 0, 1, 0, 0},
    {0, 1, 1, 0, 0, 0, 1, 0},
    {0, 0, 1, 1, 0, 0, 0, 1},
};

class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    path_ = std::string("/tmp/jetcheck_acceptance_") +
            std::to_string(counter_++) + ".prob";
    std::ofstream f(path_);
    f << text;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  static int counter_;
  std::string path_;
};

int TempFile::counter_ = 0;

std::string replace_once(std::string text, const std::string& from,
                         const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("criterion 1: the published rank-matrix window is reproduced") {
  auto t0 = chrono::steady_clock::now();
  CliResult r = run({"rank-matrix", "example47", "--json"});
  double elapsed = seconds_since(t0);

  bool ok = r.exit_code == 0;
  int p = -1, q = -1, r1 = -1, r2 = -1;
  std::vector<std::vector<int>> window;
  if (ok) {
    auto j = nlohmann::json::parse(r.out);
    p = j["height"][0];
    q = j["height"][1];
    r1 = j["r1"];
    r2 = j["r2"];
    window = j["window"].get<std::vector<std::vector<int>>>();
  }
  ok = ok && p == 3 && q == 2 && r1 == 1 && r2 == 1 &&
       window == kPublishedWindow && elapsed < 30.0;
  verdict(1, ok,
          "rank-matrix example47 = published 5x8 window, (p,q)=(3,2), "
          "r1=r2=1, exact integers, " +
              std::to_string(elapsed) + "s < 30s");
}

TEST_CASE("criterion 2: the height inequality is tight on the example") {
  CliResult r = run({"heights", "--n1", "7", "--n2", "7", "--m", "3",
                     "--json"});
  bool found = false;
  if (r.exit_code == 0) {
    auto j = nlohmann::json::parse(r.out);
    for (const auto& c : j["candidates"]) {
      if (c["p"] == 3 && c["q"] == 2 && c["r1"] == 1 && c["r2"] == 1)
        found = c["admissible"] == true && c["lhs"] == 10 && c["rhs"] == 10 &&
                c["equality"] == true;
    }
  }
  verdict(2, found,
          "heights --n1 7 --n2 7 --m 3 admits (3,2,1,1) with lhs = rhs = 10");
}

TEST_CASE("criterion 3: the chained pairs verify at heights (2,2) and (3,3)") {
  bool ok = true;
  std::string detail;
  for (auto [name, p] : {std::pair<const char*, int>{"double-chain", 2},
                         {"double-chain-p3", 3}}) {
    auto t0 = chrono::steady_clock::now();
    CliResult r = run({"verify", name, "--json"});
    double elapsed = seconds_since(t0);
    bool this_ok = r.exit_code == 0 && elapsed < 10.0;
    if (this_ok) {
      auto j = nlohmann::json::parse(r.out);
      this_ok = j["verdict"] == "pass" && j["height"][0] == p &&
                j["height"][1] == p;
      for (const auto& [key, value] : j["checks"].items())
        this_ok = this_ok && value == true;
    }
    detail += std::string(name) + " (" + std::to_string(elapsed) + "s) ";
    ok = ok && this_ok;
  }
  verdict(3, ok, "verify passes all four conditions at (p,p): " + detail +
                     "each < 10s");
}

TEST_CASE("criterion 4: the flat aircraft verifies at height (0,4)") {
  // the inverse fixture must pass the roundtrip oracle under three seeds
  bool seeds_ok = true;
  ProblemFile file = load_builtin("pvtol");
  const EquivalencePair& pair = file.pair("pvtol");
  for (std::uint64_t seed : {1ull, 42ull, 1337ull}) {
    Sampler s = file.sampler.with_seed(seed);
    seeds_ok = seeds_ok && check_roundtrip_direction(pair.psi, pair.phi, s).ok;
    seeds_ok = seeds_ok && check_roundtrip_direction(pair.phi, pair.psi, s).ok;
  }

  auto t0 = chrono::steady_clock::now();
  CliResult r = run({"verify", "pvtol", "--json"});
  double elapsed = seconds_since(t0);
  bool ok = seeds_ok && r.exit_code == 0 && elapsed < 60.0;
  if (ok) {
    auto j = nlohmann::json::parse(r.out);
    ok = j["verdict"] == "pass" && j["height"][0] == 0 &&
         j["height"][1] == 4 &&
         j["state_count_balance"]["applicable"] == true &&
         j["state_count_balance"]["ok"] == true &&
         j["state_count_balance"]["lhs"] == 6 &&
         j["state_count_balance"]["rhs"] == 6;
  }
  verdict(4, ok,
          "pvtol passes at height (0,4), balance 6 + 0 = 2 + 4 confirmed, "
          "inverse fixture survives seeds {1,42,1337}, " +
              std::to_string(elapsed) + "s < 60s");
}

TEST_CASE("criterion 5: single-control exclusion is exhaustive") {
  bool ok = true;
  for (int n = 1; n <= 8; ++n) {
    auto out = enumerate_heights(n, n, 1, 5, 5);
    ok = ok && out.size() == 1 && out[0].kind == CandidateKind::Static &&
         out[0].p == 0 && out[0].q == 0;
  }
  CliResult r = run({"heights", "--n1", "8", "--n2", "8", "--m", "1",
                     "--pmax", "5", "--qmax", "5", "--json"});
  if (r.exit_code == 0) {
    auto j = nlohmann::json::parse(r.out);
    ok = ok && j["candidates"].size() == 1 &&
         j["candidates"][0]["kind"] == "static";
  } else {
    ok = false;
  }
  verdict(5, ok,
          "heights --m 1 yields only the static candidate for all n <= 8, "
          "p,q <= 5");
}

TEST_CASE("criterion 6: two controls force the state-count balance") {
  bool ok = true;
  int emitted = 0;
  for (int n1 = 1; n1 <= 8; ++n1) {
    for (int n2 = 1; n2 <= 8; ++n2) {
      for (const auto& c : enumerate_heights(n1, n2, 2, 4, 4)) {
        if (c.p >= 1 && c.q >= 1) {
          ++emitted;
          ok = ok && n1 + c.p == n2 + c.q;
        }
      }
    }
  }
  verdict(6, ok && emitted > 0,
          "for all n1,n2 <= 8 and p,q <= 4 the emitted positive heights "
          "satisfy n1 + p = n2 + q (" +
              std::to_string(emitted) + " entries)");
}

TEST_CASE("criterion 7: property suite over the builtin corpus") {
  bool ok = true;
  std::string detail;

  // every builtin positive pair must verify
  int verified = 0;
  for (const char* name : {"example47", "double-chain", "double-chain-p3",
                           "pvtol", "prolong-pair"}) {
    ProblemFile file = load_builtin(name);
    VerificationReport rep =
        verify_equivalence(file.pair(name), file.sampler);
    ok = ok && rep.verdict();
    ++verified;
  }

  // far-diagonal and rank-matrix properties on the pairs with p, q > 0
  int checked = 0;
  for (const char* name : {"example47", "double-chain", "double-chain-p3"}) {
    ProblemFile file = load_builtin(name);
    const EquivalencePair& pair = file.pair(name);

    RankMatrix base;
    bool first = true;
    for (std::uint64_t seed : {1ull, 42ull, 1337ull}) {
      Sampler s = file.sampler.with_seed(seed);
      // rank_matrix enforces the stationarity of the far blocks, the rank
      // equalities and every sum/zero-pattern invariant before returning
      RankMatrix r = rank_matrix(pair, s);
      ok = ok && validate_rank_matrix(r).all_ok();
      ok = ok && r.r1 + r.r2 >= 2 && r.r1 + r.r2 <= r.m;
      if (first) {
        base = r;
        first = false;
      } else {
        ok = ok && r.window == base.window && r.r1 == base.r1 &&
             r.r2 == base.r2;
      }
    }

    // inclusion-exclusion reconstruction against the filtration dims
    Sampler s = file.sampler;
    BlockFamily fwd = compute_blocks(pair, Direction::Forward,
                                     base.q + base.margin + base.p + 2, s);
    FiltrationDims dims = filtration_dims(
        pair, fwd, base.q + base.margin, base.p + base.q + base.margin, s);
    for (int i = 0; i <= base.q + base.margin; ++i) {
      for (int j = 0; j <= base.p + base.q + base.margin; ++j) {
        int sum = 0;
        for (int a = 0; a <= i; ++a)
          for (int b = 0; b <= j; ++b) sum += base.window[a][b];
        ok = ok && sum == dims.at(i, j);
      }
    }
    ++checked;
  }
  verdict(7, ok,
          "all " + std::to_string(verified) +
              " builtin pairs verify; far-block stationarity, rank bounds, "
              "sum/inequality constraints, seed stability {1,42,1337} and "
              "the inclusion-exclusion reconstruction hold on the " +
              std::to_string(checked) + " positive-height pairs");
}

TEST_CASE("criterion 8: negative controls fail with their error classes") {
  bool ok = true;
  std::string detail;

  // broken roundtrip: return the bare state and its induced control so the
  // contact check still passes
  {
    std::string text = find_builtin("double-chain")->text;
    text = replace_once(text, "state.x1 = \"v2@1 - y1\"",
                        "state.x1 = \"y1\"");
    text = replace_once(text, "control.u1 = \"v2@2 - v1\"",
                        "control.u1 = \"v1\"");
    TempFile f(text);
    CliResult r = run({"verify", "double-chain", "--file", f.path()});
    bool this_ok = r.exit_code == 1 &&
                   r.out.find("roundtrip") != std::string::npos &&
                   r.out.find("witness point:") != std::string::npos;
    detail += "roundtrip:" + std::string(this_ok ? "ok " : "BAD ");
    ok = ok && this_ok;
  }

  // rank-deficient dynamics: both controls through one column
  {
    TempFile f("[system bad]\nstates = [x1, x2]\ncontrols = [u1, u2]\n"
               "dynamics.x1 = \"u1\"\ndynamics.x2 = \"u1\"\n");
    CliResult r = run({"prolong", "bad", "--file", f.path(), "--total", "1"});
    bool this_ok = r.exit_code == 2 &&
                   r.err.find("not a control system") != std::string::npos;
    detail += "rank-deficient:" + std::string(this_ok ? "ok " : "BAD ");
    ok = ok && this_ok;
  }

  // control-count mismatch between the paired systems
  {
    TempFile f(
        "[system M]\nstates = [x1]\ncontrols = [u1]\ndynamics.x1 = \"u1\"\n"
        "[system N]\nstates = [y1, y2]\ncontrols = [v1, v2]\n"
        "dynamics.y1 = \"v1\"\ndynamics.y2 = \"v2\"\n"
        "[map phi]\nfrom = M\nto = N\norder = 0\nstate.y1 = \"x1\"\n"
        "state.y2 = \"x1\"\ncontrol.v1 = \"u1\"\ncontrol.v2 = \"u1\"\n"
        "[map psi]\nfrom = N\nto = M\norder = 0\nstate.x1 = \"y1\"\n"
        "control.u1 = \"v1\"\n"
        "[pair mismatch]\nphi = phi\npsi = psi\n");
    CliResult r = run({"verify", "mismatch", "--file", f.path()});
    bool this_ok =
        r.exit_code == 1 &&
        r.err.find("control-count mismatch") != std::string::npos;
    detail += "control-count:" + std::string(this_ok ? "ok " : "BAD ");
    ok = ok && this_ok;
  }

  // the builtin negative fixture fails its contact check
  {
    CliResult r = run({"verify", "single-control"});
    bool this_ok = r.exit_code == 1 &&
                   r.out.find("contact") != std::string::npos &&
                   r.out.find("verdict: FAIL") != std::string::npos;
    detail += "single-control:" + std::string(this_ok ? "ok" : "BAD");
    ok = ok && this_ok;
  }

  verdict(8, ok, "corrupted fixtures fail with nonzero exits: " + detail);
}
