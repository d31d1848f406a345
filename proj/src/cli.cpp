#include "jetcheck/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jetcheck/builtins.hpp"
#include "jetcheck/errors.hpp"
#include "jetcheck/report.hpp"

namespace jetcheck {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Loads either the given file or the builtin corpus entry whose pair name
/// matches.
ProblemFile load_problem(const std::string& file, const std::string& pair) {
  if (!file.empty()) return parse_problem_file(read_file(file));
  if (find_builtin(pair)) return load_builtin(pair);
  throw Error("no builtin example named '" + pair +
              "' (pass --file to use your own problem file)");
}

struct CommonOptions {
  std::string file;
  std::uint64_t seed = 42;
  int trials = 5;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--file", opts.file, "problem file (default: builtins)");
  cmd->add_option("--seed", opts.seed, "sampler seed");
  cmd->add_option("--trials", opts.trials, "sample trials per zero test")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--json", opts.json, "machine-readable report");
}

// explicit CLI flags win over the file's sampler section; the box always
// comes from the file
Sampler file_sampler(const ProblemFile& file, const CommonOptions& opts,
                     bool seed_set, bool trials_set) {
  Sampler s = file.sampler;
  if (seed_set) s.seed = opts.seed;
  if (trials_set) s.trials = opts.trials;
  return s;
}

std::map<std::string, int> parse_orders(const std::string& spec) {
  std::map<std::string, int> orders;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error("bad --partial entry '" + item + "', expected name:k");
    std::string name = item.substr(0, colon);
    orders[name] = std::stoi(item.substr(colon + 1));
  }
  return orders;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"symbolic checks for dynamic equivalence of control systems"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "run the equivalence checks on a candidate pair");
  std::string verify_pair;
  CommonOptions verify_opts;
  verify->add_option("pair", verify_pair, "pair name")->required();
  add_common(verify, verify_opts);

  // rank-matrix --------------------------------------------------------
  auto* rank = app.add_subcommand(
      "rank-matrix", "compute and validate the rank matrix of a pair");
  std::string rank_pair;
  CommonOptions rank_opts;
  int rank_margin = 2;
  rank->add_option("pair", rank_pair, "pair name")->required();
  add_common(rank, rank_opts);
  rank->add_option("--window-margin", rank_margin, "window margin")
      ->check(CLI::PositiveNumber);

  // heights -------------------------------------------------------------
  auto* heights = app.add_subcommand(
      "heights", "enumerate height profiles not ruled out");
  int h_n1 = 0, h_n2 = 0, h_m = 1, h_pmax = 4, h_qmax = 4, h_margin = 2;
  bool h_witness = false, h_json = false;
  heights->add_option("--n1", h_n1, "states of the first system")->required();
  heights->add_option("--n2", h_n2, "states of the second system")->required();
  heights->add_option("--m", h_m, "controls (shared)")->required();
  heights->add_option("--pmax", h_pmax, "largest p");
  heights->add_option("--qmax", h_qmax, "largest q");
  heights->add_flag("--witness", h_witness,
                    "search a rank-matrix window per candidate");
  heights->add_option("--window-margin", h_margin, "witness window margin");
  heights->add_flag("--json", h_json, "machine-readable report");

  // prolong ---------------------------------------------------------------
  auto* prolong = app.add_subcommand(
      "prolong", "print a total or partial prolongation of a system");
  std::string prolong_system, prolong_file, prolong_partial;
  int prolong_total = -1;
  prolong->add_option("system", prolong_system, "system name")->required();
  prolong->add_option("--file", prolong_file, "problem file");
  prolong->add_option("--total", prolong_total, "total prolongation order");
  prolong->add_option("--partial", prolong_partial,
                      "per-control orders, e.g. u1:1,u2:2");

  // examples ---------------------------------------------------------------
  auto* examples = app.add_subcommand("examples", "builtin example corpus");
  auto* ex_list = examples->add_subcommand("list", "list builtin examples");
  auto* ex_show = examples->add_subcommand("show", "print one example file");
  std::string show_name;
  ex_show->add_option("name", show_name, "example name")->required();
  examples->require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("jetcheck");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      ProblemFile file = load_problem(verify_opts.file, verify_pair);
      Sampler s = file_sampler(file, verify_opts,
                               verify->count("--seed") > 0,
                               verify->count("--trials") > 0);
      const EquivalencePair& pair = file.pair(verify_pair);
      ReportContext ctx{s.seed, s.trials};
      VerificationReport rep;
      try {
        rep = verify_equivalence(pair, s);
      } catch (const ControlCountMismatchError& e) {
        err << "control-count mismatch: " << e.what() << "\n";
        return kExitCheckFailed;
      }
      if (verify_opts.json)
        out << verify_report_json(rep, pair, ctx).dump(2) << "\n";
      else
        out << verify_report_text(rep, pair, ctx);
      return rep.verdict() ? kExitPass : kExitCheckFailed;
    }

    if (*rank) {
      ProblemFile file = load_problem(rank_opts.file, rank_pair);
      Sampler s = file_sampler(file, rank_opts, rank->count("--seed") > 0,
                               rank->count("--trials") > 0);
      const EquivalencePair& pair = file.pair(rank_pair);
      ReportContext ctx{s.seed, s.trials};
      VerificationReport rep = verify_equivalence(pair, s);
      if (!rep.verdict()) {
        err << "pair '" << rank_pair
            << "' does not verify; rank matrix not computed\n";
        return kExitCheckFailed;
      }
      RankMatrix r;
      try {
        r = rank_matrix(pair, s, rank_margin);
      } catch (const PreconditionError& e) {
        err << e.what() << "\n";
        return kExitCheckFailed;
      }
      RankValidation validation = validate_rank_matrix(r);
      if (rank_opts.json)
        out << rank_matrix_json(r, validation, rank_pair, ctx).dump(2) << "\n";
      else
        out << rank_matrix_text(r, validation, rank_pair, ctx);
      return validation.all_ok() ? kExitPass : kExitCheckFailed;
    }

    if (*heights) {
      auto candidates = enumerate_heights(h_n1, h_n2, h_m, h_pmax, h_qmax);
      if (h_json)
        out << heights_json(candidates, h_n1, h_n2, h_m, h_pmax, h_qmax,
                            h_witness, h_margin)
                   .dump(2)
            << "\n";
      else
        out << heights_text(candidates, h_n1, h_n2, h_m, h_pmax, h_qmax,
                            h_witness, h_margin);
      return kExitPass;
    }

    if (*prolong) {
      ProblemFile file;
      if (!prolong_file.empty()) {
        file = parse_problem_file(read_file(prolong_file));
      } else {
        // search the builtin corpus for the system name
        bool found = false;
        for (const auto& b : builtin_examples()) {
          ProblemFile candidate = parse_problem_file(b.text);
          if (candidate.systems.count(prolong_system)) {
            file = std::move(candidate);
            found = true;
            break;
          }
        }
        if (!found)
          throw Error("no builtin defines a system named '" + prolong_system +
                      "'");
      }
      const SystemPtr& sys = file.system(prolong_system);
      if ((prolong_total >= 0) == !prolong_partial.empty())
        throw Error("pass exactly one of --total or --partial");
      ControlSystem result =
          prolong_total >= 0
              ? sys->total_prolong(prolong_total)
              : sys->partial_prolong(parse_orders(prolong_partial));
      out << render_system_section(result);
      return kExitPass;
    }

    if (*examples) {
      if (*ex_list) {
        for (const auto& b : builtin_examples())
          out << b.name << "  -  " << b.description << "\n";
        return kExitPass;
      }
      if (*ex_show) {
        const BuiltinExample* b = find_builtin(show_name);
        if (!b) throw Error("no builtin example named '" + show_name + "'");
        out << b->text;
        return kExitPass;
      }
    }
  } catch (const FileFormatError& e) {
    err << "problem file error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownIdentifierError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotAControlSystemError& e) {
    err << "invalid system: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ControlCountMismatchError& e) {
    err << "control-count mismatch: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const DegenerateSamplingError& e) {
    err << "sampling error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const InvariantViolationError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "no command executed\n";
  return kExitUsage;
}

}  // namespace jetcheck
