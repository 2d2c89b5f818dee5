#include "tq/search.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "tq/schubert.hpp"

namespace tq {

namespace {

Rational jitter(Rng& rng, double scale) { return rational_from_double(rng.gaussian() * scale); }

std::array<Rational, 4> unit(int k) {
  std::array<Rational, 4> e{0, 0, 0, 0};
  e[static_cast<std::size_t>(k)] = 1;
  return e;
}

Figure line_through(std::array<Rational, 4> a, std::array<Rational, 4> b, double pert, Rng& rng) {
  for (;;) {
    Mat<Rational, 2, 4> M{a, b};
    if (pert > 0)
      for (auto& row : M)
        for (auto& v : row) v += jitter(rng, pert);
    try {
      return Figure::line(plucker_from_span(M));
    } catch (const DegenerateFigure&) {
    }
  }
}

// Two points spanning a decomposable line, from the columns of its skew matrix.
std::array<std::array<double, 4>, 2> line_span(const std::vector<double>& l) {
  double M[4][4] = {};
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [i, j] = kLinePairs[k];
    M[i][j] = l[k];
    M[j][i] = -l[k];
  }
  auto col = [&](int c) { return std::array<double, 4>{M[0][c], M[1][c], M[2][c], M[3][c]}; };
  auto norm2 = [](const std::array<double, 4>& v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]; };
  int best = 0;
  for (int c = 1; c < 4; ++c)
    if (norm2(col(c)) > norm2(col(best))) best = c;
  const auto a = col(best);
  std::array<double, 4> b{};
  double bn = -1.0;
  for (int c = 0; c < 4; ++c) {
    if (c == best) continue;
    auto v = col(c);
    const double t = (v[0] * a[0] + v[1] * a[1] + v[2] * a[2] + v[3] * a[3]) / norm2(a);
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] -= t * a[static_cast<std::size_t>(i)];
    if (norm2(v) > bn) {
      bn = norm2(v);
      b = v;
    }
  }
  return {a, b};
}

std::vector<Figure> perturbed(const std::vector<Figure>& figs, double scale, Rng& rng) {
  std::vector<Figure> out;
  for (const auto& f : figs) {
    const auto d = f.to_double();
    double mag = 0.0;
    for (double v : d) mag = std::max(mag, std::abs(v));
    if (f.kind() == FigureKind::line) {
      const auto span = line_span(d);
      for (;;) {
        Mat<Rational, 2, 4> M;
        for (std::size_t r = 0; r < 2; ++r) {
          double rm = 0.0;
          for (double v : span[r]) rm = std::max(rm, std::abs(v));
          for (std::size_t i = 0; i < 4; ++i) M[r][i] = rational_from_double(span[r][i] + rng.gaussian() * scale * rm);
        }
        try {
          out.push_back(Figure::line(plucker_from_span(M)));
          break;
        } catch (const DegenerateFigure&) {
        }
      }
    } else {
      std::vector<Rational> c;
      for (double v : d) c.push_back(rational_from_double(v + rng.gaussian() * scale * mag));
      out.emplace_back(f.kind(), std::move(c));
    }
  }
  return out;
}

double min_separation(const std::vector<TrackedSolution>& sols) {
  double m = INFINITY;
  for (std::size_t i = 0; i < sols.size(); ++i)
    for (std::size_t j = i + 1; j < sols.size(); ++j) {
      const double s = std::max(1.0, std::max(sols[i].x.cwiseAbs().maxCoeff(), sols[j].x.cwiseAbs().maxCoeff()));
      m = std::min(m, (sols[i].x - sols[j].x).cwiseAbs().maxCoeff() / s);
    }
  return m;
}

std::size_t expected_count(const Signature& sig, std::size_t found) {
  CountTable t = CountTable::builtin();
  try {
    return static_cast<std::size_t>(pyramid_entry(t, sig));
  } catch (const UnknownDependency&) {
    return found;
  }
}

void solve_into(SearchState& s, const SearchSettings& st) {
  const auto rep = solve_total_degree(assemble(s.instance, st.tracker.chart_seed), st.tracker);
  s.solutions = rep.converged();
  std::tie(s.real_count, s.nearness) = reality_score(s.solutions, st.tracker.real_tol);
}

}  // namespace

std::string to_string(SeedStrategy s) {
  switch (s) {
    case SeedStrategy::random: return "random";
    case SeedStrategy::coordinate_lines: return "coordinate_lines";
    case SeedStrategy::coordinate_planes: return "coordinate_planes";
    case SeedStrategy::twisted_cubic: return "twisted_cubic";
  }
  return "random";
}

SeedStrategy seed_strategy_from_string(const std::string& s) {
  if (s == "random") return SeedStrategy::random;
  if (s == "coordinate_lines") return SeedStrategy::coordinate_lines;
  if (s == "coordinate_planes") return SeedStrategy::coordinate_planes;
  if (s == "twisted_cubic") return SeedStrategy::twisted_cubic;
  throw std::invalid_argument("unknown strategy: " + s);
}

TangencyInstance seed_instance(const Signature& sig, SeedStrategy strategy, Rng& rng, double perturbation) {
  if (!sig.valid()) throw std::invalid_argument("invalid signature " + sig.to_string());
  TangencyInstance inst;
  int points = sig.alpha, lines = sig.beta, planes = sig.gamma;
  switch (strategy) {
    case SeedStrategy::random: return random_instance(sig, rng);
    case SeedStrategy::coordinate_lines: {
      if (sig.beta < 6) throw std::invalid_argument("coordinate_lines needs at least six lines");
      const double pert = perturbation < 0 ? 1e-3 : perturbation;
      for (const auto& [i, j] : kLinePairs) inst.lines.push_back(line_through(unit(i), unit(j), pert, rng));
      const std::array<std::array<long, 4>, 3> chosen{{{1, 2, 8, 7}, {1, 1, 9, 2}, {2, 5, 3, 1}}};
      for (int k = 0; k < std::min(points, 3); ++k)
        inst.points.push_back(
            Figure::point({{Rational(chosen[k][0]), Rational(chosen[k][1]), Rational(chosen[k][2]), Rational(chosen[k][3])}}));
      points -= std::min(points, 3);
      lines -= 6;
      break;
    }
    case SeedStrategy::coordinate_planes: {
      if (sig.gamma < 4) throw std::invalid_argument("coordinate_planes needs at least four planes");
      const double pert = perturbation < 0 ? 0.0 : perturbation;
      for (int k = 0; k < 4; ++k) {
        Mat<Rational, 3, 4> M;
        int r = 0;
        for (int i = 0; i < 4; ++i)
          if (i != k) M[static_cast<std::size_t>(r++)] = unit(i);
        if (pert > 0)
          for (auto& row : M)
            for (auto& v : row) v += jitter(rng, pert);
        inst.planes.push_back(Figure::plane(plane_from_span(M)));
      }
      planes -= 4;
      break;
    }
    case SeedStrategy::twisted_cubic: {
      if (sig.beta < 1) throw std::invalid_argument("twisted_cubic needs lines");
      const double pert = perturbation < 0 ? 1e-3 : perturbation;
      for (int k = 0; k < sig.beta; ++k) {
        const Rational t = Rational(2 * k - (sig.beta - 1), 4) + jitter(rng, 1.0 / 64);
        inst.lines.push_back(line_through({1, t, t * t, t * t * t}, {0, 1, 2 * t, 3 * t * t}, pert, rng));
      }
      lines = 0;
      break;
    }
  }
  for (int k = 0; k < points; ++k) inst.points.push_back(random_figure(FigureKind::point, rng));
  for (int k = 0; k < lines; ++k) inst.lines.push_back(random_figure(FigureKind::line, rng));
  for (int k = 0; k < planes; ++k) inst.planes.push_back(random_figure(FigureKind::plane, rng));
  for (int k = 0; k < sig.delta; ++k) inst.quadrics.push_back(random_figure(FigureKind::quadric, rng));
  inst.validate();
  return inst;
}

TangencyInstance perturb_instance(const TangencyInstance& inst, double scale, Rng& rng) {
  TangencyInstance out;
  out.points = perturbed(inst.points, scale, rng);
  out.lines = perturbed(inst.lines, scale, rng);
  out.planes = perturbed(inst.planes, scale, rng);
  out.quadrics = perturbed(inst.quadrics, scale, rng);
  return out;
}

std::pair<std::size_t, double> reality_score(const std::vector<TrackedSolution>& solutions, double real_tol) {
  std::size_t real = 0;
  double nearness = INFINITY;
  for (const auto& s : solutions) {
    if (s.status != PathStatus::converged) continue;
    const double d = reality_defect(s.x);
    if (d < real_tol)
      ++real;
    else
      nearness = std::min(nearness, d);
  }
  return {real, std::isfinite(nearness) ? nearness : 0.0};
}

nlohmann::json to_json(const SearchState& s) {
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& x : s.solutions) sols.push_back(to_json(x));
  return {{"instance", to_json(s.instance)},
          {"solutions", sols},
          {"real_count", s.real_count},
          {"nearness", s.nearness},
          {"target", s.target},
          {"iteration", s.iteration},
          {"stagnant", s.stagnant},
          {"restarts_used", s.restarts_used},
          {"scale", s.scale},
          {"rng_seed", s.rng_seed},
          {"verified", s.verified},
          {"verified_real", s.verified_real},
          {"verified_certified", s.verified_certified}};
}

SearchState search_state_from_json(const nlohmann::json& j) {
  SearchState s;
  s.instance = instance_from_json(j.at("instance"));
  for (const auto& x : j.at("solutions")) s.solutions.push_back(solution_from_json(x));
  s.real_count = j.at("real_count").get<std::size_t>();
  s.nearness = j.at("nearness").get<double>();
  s.target = j.at("target").get<std::size_t>();
  s.iteration = j.at("iteration").get<int>();
  s.stagnant = j.value("stagnant", 0);
  s.restarts_used = j.value("restarts_used", 0);
  s.scale = j.at("scale").get<double>();
  s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  s.verified = j.value("verified", false);
  s.verified_real = j.value("verified_real", std::size_t{0});
  s.verified_certified = j.value("verified_certified", std::size_t{0});
  return s;
}

void verify_state(SearchState& s, const SearchSettings& st) {
  const auto cr = solve_and_certify(s.instance, st.tracker, st.certify, s.target).certification;
  s.verified = true;
  s.verified_certified = cr.summary.nondegenerate;
  s.verified_real = 0;
  for (const auto& b : cr.boxes)
    if (b.distinct && b.nondegenerate && b.real == Reality::real) ++s.verified_real;
}

SearchState hill_climb(const Signature& sig, const TangencyInstance& seed, const SearchSettings& st,
                       std::optional<SearchState> resume) {
  st.tracker.validate();
  if (seed.signature() != sig) throw std::invalid_argument("seed instance does not have signature " + sig.to_string());
  if (st.neighbors < 1 || st.iters < 0) throw std::invalid_argument("bad search budget");

  SearchState s;
  if (resume) {
    s = std::move(*resume);
  } else {
    s.instance = seed;
    s.scale = st.scale;
    s.rng_seed = st.seed;
    solve_into(s, st);
    s.target = expected_count(sig, s.solutions.size());
  }

  std::ofstream log;
  if (!st.log_path.empty()) log.open(st.log_path, std::ios::app);
  const auto checkpoint = [&] {
    if (st.checkpoint_path.empty()) return;
    std::ofstream out(st.checkpoint_path);
    out << to_json(s).dump() << "\n";
  };

  TrackerSettings inner = st.tracker;
  inner.threads = 1;

  while (s.iteration < st.iters && s.real_count < s.target) {
    if (s.stagnant >= st.stagnation) {
      if (s.restarts_used >= st.restarts) break;
      ++s.restarts_used;
      Rng r(derive_seed(s.rng_seed, 1000000 + static_cast<std::uint64_t>(s.restarts_used)));
      s.instance = perturb_instance(seed, st.scale, r);
      s.scale = st.scale;
      s.stagnant = 0;
      solve_into(s, st);
      checkpoint();
      continue;
    }
    ++s.iteration;
    const std::uint64_t base = derive_seed(s.rng_seed, static_cast<std::uint64_t>(s.iteration));

    struct Candidate {
      TangencyInstance instance;
      std::vector<TrackedSolution> solutions;
      std::size_t real = 0;
      double nearness = 0.0;
      bool valid = false;
    };
    std::vector<Candidate> cands(static_cast<std::size_t>(st.neighbors));
    parallel_for(cands.size(), st.tracker.threads, [&](std::size_t k) {
      Candidate& c = cands[k];
      Rng r(derive_seed(base, k));
      c.instance = perturb_instance(s.instance, s.scale, r);
      try {
        const auto rep = parameter_homotopy(s.instance, s.solutions, c.instance, inner);
        const double failed = static_cast<double>(rep.paths - rep.count(PathStatus::converged));
        if (failed > st.max_failure_rate * static_cast<double>(rep.paths)) return;
        c.solutions = rep.converged();
        if (c.solutions.size() != s.solutions.size()) return;
        if (min_separation(c.solutions) < st.min_separation) return;
        std::tie(c.real, c.nearness) = reality_score(c.solutions, st.tracker.real_tol);
        c.valid = true;
      } catch (const std::exception&) {
      }
    });

    const Candidate* best = nullptr;
    for (const auto& c : cands) {
      if (!c.valid) continue;
      if (!best || c.real > best->real || (c.real == best->real && c.nearness < best->nearness)) best = &c;
    }
    const bool improved =
        best && (best->real > s.real_count || (best->real == s.real_count && best->nearness < s.nearness));
    if (improved) {
      s.instance = best->instance;
      s.solutions = best->solutions;
      s.real_count = best->real;
      s.nearness = best->nearness;
      s.stagnant = 0;
      checkpoint();
    } else {
      ++s.stagnant;
      if (st.anneal_every > 0 && s.stagnant % st.anneal_every == 0) s.scale = std::max(0.5 * s.scale, st.min_scale);
    }
    if (log.is_open())
      log << nlohmann::json{{"iteration", s.iteration}, {"real_count", s.real_count}, {"nearness", s.nearness},
                            {"scale", s.scale}, {"accepted", improved}}
                 .dump()
          << "\n"
          << std::flush;
  }

  if (st.verify) verify_state(s, st);
  if (!st.record_path.empty()) save_instance(s.instance, st.record_path);
  checkpoint();
  return s;
}

}  // namespace tq
