#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tq/certify.hpp"
#include "tq/checks.hpp"
#include "tq/homotopy.hpp"
#include "tq/polysys.hpp"
#include "tq/schubert.hpp"
#include "tq/search.hpp"

using namespace tq;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kParseError = 2;
constexpr int kBudget = 3;
constexpr int kShortfall = 4;

struct Global {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string settings_file;
  std::string out = ".";
  std::string table = std::string(TQ_DATA_DIR) + "/triangle.json";

  json settings = json::object();
  TrackerSettings tracker;
  CertifySettings certify;

  void load() {
    if (!settings_file.empty()) {
      std::ifstream in(settings_file);
      if (!in) throw std::runtime_error("cannot open settings file " + settings_file);
      settings = json::parse(in);
    }
    tracker = settings_from_json(settings.value("tracker", json::object()));
    certify = certify_settings_from_json(settings.value("certify", json::object()));
    tracker.rng_seed = settings.contains("tracker") && settings["tracker"].contains("rng_seed") ? tracker.rng_seed : seed;
    tracker.threads = certify.threads = threads;
    tracker.validate();
    certify.validate();
    fs::create_directories(out);
  }
  std::string path(const std::string& name) const { return (fs::path(out) / name).string(); }
};

void write_json(const std::string& path, const json& j) {
  std::ofstream o(path);
  if (!o) throw std::runtime_error("cannot write " + path);
  o << j.dump(2) << "\n";
}

std::string digest(const TangencyInstance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : to_json(inst).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<std::uint64_t> expected_count(const Global& g, const Signature& sig) {
  CountTable t = CountTable::builtin();
  if (fs::exists(g.table)) t.merge(CountTable::load(g.table));
  try {
    return pyramid_entry(t, sig);
  } catch (const UnknownDependency&) {
    return std::nullopt;
  }
}

std::string solve_text(const SolveReport& rep, double real_tol) {
  std::size_t ns = 0, ns_real = 0, sing = 0, sing_real = 0;
  for (const auto& s : rep.solutions) {
    const bool real = s.x.size() > 0 && s.x.allFinite() && reality_defect(s.x) < real_tol;
    if (s.status == PathStatus::converged) ++ns, ns_real += real;
    if (s.status == PathStatus::singular_endpoint) ++sing, sing_real += real;
  }
  auto row = [](const std::string& label, const std::string& v) {
    std::string l = label;
    l.resize(34, ' ');
    return l + v + "\n";
  };
  auto pair = [](std::size_t a, std::size_t b) { return std::to_string(a) + " (" + std::to_string(b) + ")"; };
  std::string t = "Tracking " + std::to_string(rep.paths) + " paths... 100%\n";
  t += row("# paths tracked:", std::to_string(rep.paths));
  t += row("# non-singular solutions (real):", pair(ns, ns_real));
  t += row("# singular endpoints (real):", pair(sing, sing_real));
  t += row("# total solutions (real):", pair(ns + sing, ns_real + sing_real));
  return t;
}

json solutions_json(const SolveReport& rep) {
  json a = json::array();
  for (const auto& s : rep.solutions) a.push_back(to_json(s));
  return a;
}

json path_counts(const SolveReport& rep) {
  json j;
  for (auto s : {PathStatus::converged, PathStatus::singular_endpoint, PathStatus::diverged, PathStatus::failed})
    j[to_string(s)] = rep.count(s);
  return j;
}

// Certification, files and exit status shared by solve and certify.
int finish(const Global& g, const std::string& command, const TangencyInstance& inst, const SolveReport& rep,
           std::optional<std::uint64_t> expected, bool do_certify, std::chrono::steady_clock::time_point t0,
           const CertificationReport* certified = nullptr, int passes = 1) {
  json report{{"command", command},
               {"instance_digest", digest(inst)},
               {"signature", inst.signature().to_string()},
               {"paths", rep.paths},
               {"path_counts", path_counts(rep)},
               {"gamma", {rep.gamma.real(), rep.gamma.imag()}},
               {"settings", {{"seed", g.seed}, {"tracker", to_json(g.tracker)}, {"certify", to_json(g.certify)}}}};
  write_json(g.path("solutions.json"), solutions_json(rep));
  int code = 0;
  if (do_certify) {
    const auto cr = certified ? *certified : certify_solutions(inst, rep, g.certify);
    std::cout << "\n" << cr.summary.to_text();
    write_json(g.path("certificates.json"), to_json(cr));
    report["certification"] = to_json(cr.summary);
    if (expected && cr.summary.nondegenerate < *expected) {
      std::cout << "shortfall: " << cr.summary.nondegenerate << " of " << *expected << " expected\n";
      code = kShortfall;
    }
  }
  if (expected) report["expected"] = *expected;
  if (passes > 1) report["passes"] = passes;
  report["seconds"] = seconds_since(t0);
  report["exit_code"] = code;
  write_json(g.path("report.json"), report);
  return code;
}

TangencyInstance instance_arg(const Global& g, const std::string& file, const std::string& random_sig) {
  if (!random_sig.empty()) {
    Rng rng(g.seed);
    return random_instance(Signature::parse(random_sig), rng);
  }
  if (file.empty()) throw CLI::ValidationError("an instance file or --random is required");
  return load_instance(file);
}

void print_checks(const std::vector<CheckOutcome>& v) {
  for (const auto& c : v)
    std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << " (" << c.trials << " trials)"
              << (c.witness.empty() ? "" : "\n      witness: " + c.witness) << "\n";
}

void print_triangle(const CountTable& t) {
  for (int a = 9; a >= 0; --a) {
    std::string line(static_cast<std::size_t>(a) * 3, ' ');
    for (int b = 9 - a; b >= 0; --b) {
      const auto v = t.get({a, b, 9 - a - b, 0});
      std::string cell = v ? std::to_string(*v) : "?";
      line += std::string(6 - std::min<std::size_t>(6, cell.size()), ' ') + cell;
    }
    std::cout << line << "\n";
  }
}

json table_report(const CountTable& t) {
  json j{{"entries", t.to_json()}, {"violations", t.check()}};
  if (t.triangle_complete()) {
    j["flag_power"] = flag_power_aggregate(t);
    j["q9"] = q9_aggregate(t);
  } else {
    json m = json::array();
    for (const auto& s : t.missing_triangle()) m.push_back(s.to_string());
    j["missing"] = m;
  }
  return j;
}

CountTable load_table(const Global& g) {
  CountTable t = CountTable::builtin();
  if (fs::exists(g.table)) t.merge(CountTable::load(g.table));
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrics tangent to nine figures in 3-space: solve, certify, count and search."};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "RNG seed for gamma, instances and search");
  app.add_option("--threads", g.threads, "worker threads (0: all cores)");
  app.add_option("--settings", g.settings_file, "JSON file with tracker, certify, census and search objects");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--table", g.table, "count table JSON");

  std::string instance_file, random_sig, solutions_file;
  std::optional<std::uint64_t> expected;
  std::uint64_t budget = 50000;
  bool no_certify = false;

  auto* solve = app.add_subcommand("solve", "solve an instance from a total-degree start system and certify");
  solve->add_option("instance", instance_file, "instance JSON");
  solve->add_option("--random", random_sig, "solve a random real instance of this signature instead");
  solve->add_option("--expected", expected, "expected count (default: from the count table)");
  solve->add_option("--path-budget", budget, "refuse systems with more paths");
  solve->add_flag("--no-certify", no_certify, "skip certification");

  auto* cert = app.add_subcommand("certify", "certify stored solutions of an instance");
  cert->add_option("instance", instance_file, "instance JSON")->required();
  cert->add_option("--solutions", solutions_file, "solutions JSON from solve")->required();
  cert->add_option("--expected", expected, "expected count (default: from the count table)");

  std::vector<std::string> census_sigs;
  int trials = 3;
  bool all_missing = false, save = false;
  auto* cen = app.add_subcommand("census", "count solutions of random instances and fill the table");
  cen->add_option("signatures", census_sigs, "signatures a,b,g or a,b,g,d");
  cen->add_option("--trials", trials, "agreeing trials per signature");
  cen->add_option("--path-budget", budget, "path budget per trial");
  cen->add_flag("--missing", all_missing, "census every missing triangle entry (one of each dual pair)");
  cen->add_flag("--save", save, "merge the results into the table file");

  app.add_subcommand("triangle", "print the triangle with provenance and aggregates");

  int delta = 1;
  auto* pyr = app.add_subcommand("pyramid", "print a layer of the pyramid");
  pyr->add_option("--delta", delta, "layer")->check(CLI::Range(0, 9));

  std::string check_kind;
  int check_trials = 20;
  auto* chk = app.add_subcommand("check", "exact checks and table reports");
  chk->add_option("kind", check_kind, "degeneration | identities | triangle | pyramid")
      ->required()
      ->check(CLI::IsMember({"degeneration", "identities", "triangle", "pyramid"}));
  chk->add_option("--trials", check_trials, "random trials for degeneration");

  std::string sig_text, strategy = "random", checkpoint, log, record, resume, seed_file;
  double perturbation = -1.0;
  SearchSettings ss;
  auto* sea = app.add_subcommand("search", "hill climbing towards instances with many real solutions");
  sea->add_option("--signature", sig_text, "a,b,g,d")->required();
  sea->add_option("--strategy", strategy, "random | coordinate_lines | coordinate_planes | twisted_cubic");
  sea->add_option("--seed-instance", seed_file, "start from this instance instead of a strategy");
  sea->add_option("--perturbation", perturbation, "perturbation of the seeded figures (default per strategy)");
  sea->add_option("--iters", ss.iters, "iteration budget");
  sea->add_option("--neighbors", ss.neighbors, "perturbations per iteration");
  sea->add_option("--scale", ss.scale, "initial neighbourhood scale");
  sea->add_option("--stagnation", ss.stagnation, "idle rounds before a restart or stop");
  sea->add_option("--restarts", ss.restarts, "restarts from the seed after stagnation");
  sea->add_option("--checkpoint", checkpoint, "checkpoint file");
  sea->add_option("--resume", resume, "resume from a checkpoint");
  sea->add_option("--log", log, "JSON lines log");
  sea->add_option("--record", record, "final instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int c = app.exit(e);
    return c == 0 ? 0 : kParseError;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    g.load();

    if (*solve || *cert) {
      TangencyInstance inst;
      try {
        inst = instance_arg(g, instance_file, random_sig);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParseError;
      }
      for (const auto& w : inst.warnings()) std::cerr << "warning: " << w << "\n";
      if (!random_sig.empty()) save_instance(inst, g.path("instance.json"));
      if (!expected) expected = expected_count(g, inst.signature());
      const SlpSystem sys = assemble(inst, g.tracker.chart_seed);
      SolveReport rep;
      if (*solve) {
        if (sys.total_degree() > budget) {
          std::cerr << "error: " << sys.total_degree() << " paths exceed the budget of " << budget << "\n";
          return kBudget;
        }
        if (!no_certify && expected) {
          // short of the expected count: fresh gammas, merged candidates
          const auto r = solve_and_certify(inst, g.tracker, g.certify, expected);
          std::cout << solve_text(r.solve, g.tracker.real_tol);
          if (r.passes > 1) std::cout << "# solve passes: " << r.passes << "\n";
          return finish(g, "solve", inst, r.solve, expected, true, t0, &r.certification, r.passes);
        }
        rep = solve_total_degree(sys, g.tracker);
        std::cout << solve_text(rep, g.tracker.real_tol);
      } else {
        std::ifstream in(solutions_file);
        if (!in) {
          std::cerr << "error: cannot open " << solutions_file << "\n";
          return kParseError;
        }
        try {
          for (const auto& j : json::parse(in)) rep.solutions.push_back(solution_from_json(j));
        } catch (const std::exception& e) {
          std::cerr << "error: " << e.what() << "\n";
          return kParseError;
        }
        rep.paths = rep.solutions.size();
      }
      return finish(g, *solve ? "solve" : "certify", inst, rep, expected, !no_certify, t0);
    }

    if (*cen) {
      CensusSettings cs;
      cs.trials = trials;
      cs.seed = g.seed;
      cs.path_budget = budget;
      cs.tracker = g.tracker;
      cs.certify = g.certify;
      if (g.settings.contains("census")) {
        const auto& c = g.settings["census"];
        cs.trials = c.value("trials", cs.trials);
        cs.path_budget = c.value("path_budget", cs.path_budget);
        cs.reruns = c.value("reruns", cs.reruns);
        cs.replacements = c.value("replacements", cs.replacements);
      }
      std::vector<Signature> sigs;
      for (const auto& s : census_sigs) sigs.push_back(Signature::parse(s));
      CountTable table = load_table(g);
      if (all_missing)
        for (const auto& s : table.missing_triangle())
          if (s.alpha >= s.gamma || table.get({s.gamma, s.beta, s.alpha, 0})) sigs.push_back(s);
      if (sigs.empty()) throw CLI::ValidationError("no signatures to census");
      json results = json::array();
      int code = 0;
      for (const auto& s : sigs) {
        try {
          const auto r = census(s, cs);
          std::cout << s.to_string() << ": " << r.count << "\n";
          results.push_back(to_json(r));
          if (const auto* e = table.find(s); e && e->count != r.count) {
            std::cout << "  disagrees with the table entry " << e->count << " (" << to_string(e->provenance) << ")\n";
            code = kShortfall;
          } else if (!e) {
            table.set(s, r.count, Provenance::census, std::to_string(cs.trials) + " trials");
          }
        } catch (const InconsistentCensus& e) {
          std::cout << s.to_string() << ": " << e.what() << "\n";
          results.push_back({{"signature", s.to_string()}, {"error", e.what()}});
          code = kShortfall;
        } catch (const std::runtime_error& e) {
          std::cout << s.to_string() << ": " << e.what() << "\n";
          results.push_back({{"signature", s.to_string()}, {"error", e.what()}});
          code = kBudget;
        }
      }
      table.fill_duals();
      write_json(g.path("census.json"), results);
      if (save) table.save(g.table);
      return code;
    }

    if (app.got_subcommand("triangle") || (*chk && check_kind == "triangle")) {
      const CountTable t = load_table(g);
      print_triangle(t);
      const json j = table_report(t);
      for (const auto& v : t.check()) std::cout << "violation: " << v << "\n";
      if (t.triangle_complete()) {
        std::cout << "(p+l+h)^9 = " << flag_power_aggregate(t) << "\n";
        std::cout << "q^9 = " << q9_aggregate(t) << "\n";
        std::cout << "flag systems total = " << flag_system_total(t) << "\n";
      } else {
        std::cout << t.missing_triangle().size() << " entries missing\n";
      }
      write_json(g.path("triangle.json"), j);
      return t.check().empty() ? 0 : 1;
    }

    if (*pyr || (*chk && check_kind == "pyramid")) {
      CountTable t = load_table(g);
      const int d = *pyr ? delta : 2;
      json layer = json::object();
      bool complete = true;
      for (int a = 9 - d; a >= 0; --a) {
        std::string line(static_cast<std::size_t>(a) * 4, ' ');
        for (int b = 9 - d - a; b >= 0; --b) {
          const Signature s{a, b, 9 - d - a - b, d};
          std::string cell;
          try {
            const auto v = pyramid_entry(t, s);
            cell = std::to_string(v);
            layer[s.to_string()] = v;
          } catch (const UnknownDependency&) {
            cell = "?";
            complete = false;
          }
          line += std::string(8 - std::min<std::size_t>(8, cell.size()), ' ') + cell;
        }
        std::cout << line << "\n";
      }
      json j{{"delta", d}, {"layer", layer}};
      if (*chk) {
        bool ok = complete && t.check().empty();
        if (const auto v = t.get({2, 3, 2, 2})) std::cout << "(2,3,2,2) = " << *v << "\n";
        if (t.triangle_complete()) {
          std::cout << "q^9 = " << q9_aggregate(t) << "\n";
          j["q9"] = q9_aggregate(t);
        } else {
          ok = false;
        }
        write_json(g.path("pyramid.json"), j);
        return ok ? 0 : 1;
      }
      write_json(g.path("pyramid.json"), j);
      return 0;
    }

    if (*chk) {
      const auto v = check_kind == "degeneration" ? check_degeneration(check_trials, g.seed) : check_identities(g.seed);
      print_checks(v);
      json a = json::array();
      for (const auto& c : v) a.push_back(to_json(c));
      write_json(g.path("check_" + check_kind + ".json"), {{"seed", g.seed}, {"checks", a}});
      return all_pass(v) ? 0 : 1;
    }

    if (*sea) {
      const Signature sig = Signature::parse(sig_text);
      ss.seed = g.seed;
      if (g.settings.contains("search")) {
        const auto& j = g.settings["search"];
        ss.min_scale = j.value("min_scale", ss.min_scale);
        ss.anneal_every = j.value("anneal_every", ss.anneal_every);
        ss.min_separation = j.value("min_separation", ss.min_separation);
        ss.max_failure_rate = j.value("max_failure_rate", ss.max_failure_rate);
        ss.verify = j.value("verify", ss.verify);
      }
      ss.tracker = g.tracker;
      ss.certify = g.certify;
      ss.checkpoint_path = checkpoint;
      ss.log_path = log;
      ss.record_path = record;
      std::optional<SearchState> state;
      if (!resume.empty()) {
        std::ifstream in(resume);
        if (!in) throw std::runtime_error("cannot open " + resume);
        state = search_state_from_json(json::parse(in));
      }
      TangencyInstance seed;
      if (!seed_file.empty()) {
        seed = load_instance(seed_file);
      } else {
        Rng rng(derive_seed(g.seed, 0));
        seed = seed_instance(sig, seed_strategy_from_string(strategy), rng, perturbation);
      }
      const auto s = hill_climb(sig, seed, ss, state);
      std::cout << "iterations " << s.iteration << ", real " << s.real_count << " of " << s.target << ", nearness "
                << s.nearness << "\n";
      if (s.verified)
        std::cout << "verified: " << s.verified_certified << " certified, " << s.verified_real << " real\n";
      save_instance(s.instance, g.path("search_instance.json"));
      write_json(g.path("search_state.json"), to_json(s));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
