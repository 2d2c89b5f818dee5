#include "tq/schubert.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "tq/random.hpp"

namespace tq {

namespace {

int rank(Provenance p) {
  switch (p) {
    case Provenance::quoted: return 3;
    case Provenance::bezout: return 3;
    case Provenance::census: return 2;
    case Provenance::recurrence: return 1;
  }
  return 0;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int k = 2; k <= n; ++k) r *= static_cast<std::uint64_t>(k);
  return r;
}

std::string join(const std::vector<Signature>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.to_string();
  return s;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::quoted: return "quoted";
    case Provenance::bezout: return "bezout";
    case Provenance::census: return "census";
    case Provenance::recurrence: return "recurrence";
  }
  return "census";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "quoted") return Provenance::quoted;
  if (s == "bezout") return Provenance::bezout;
  if (s == "census") return Provenance::census;
  if (s == "recurrence") return Provenance::recurrence;
  throw std::invalid_argument("unknown provenance: " + s);
}

IncompleteTriangle::IncompleteTriangle(std::vector<Signature> m)
    : std::runtime_error("triangle incomplete, missing: " + join(m)), missing(std::move(m)) {}

std::optional<std::uint64_t> bezout_count(const Signature& s) {
  if (!s.valid() || s.delta != 0 || s.alpha < 4 || s.gamma > 2) return std::nullopt;
  return ipow(2, s.beta) * ipow(3, s.gamma);
}

std::uint64_t trinomial9(const Signature& s) {
  if (!s.valid() || s.delta != 0) throw std::invalid_argument("trinomial9 needs a triangle signature");
  return factorial(9) / (factorial(s.alpha) * factorial(s.beta) * factorial(s.gamma));
}

std::vector<Signature> triangle_signatures() {
  std::vector<Signature> v;
  for (int a = 9; a >= 0; --a)
    for (int b = 9 - a; b >= 0; --b) v.push_back({a, b, 9 - a - b, 0});
  return v;
}

CountTable CountTable::builtin() {
  CountTable t;
  for (const auto& s : triangle_signatures())
    if (auto b = bezout_count(s)) t.set(s, *b, Provenance::bezout);
  const std::pair<Signature, std::uint64_t> quoted[] = {
      {{3, 3, 3, 0}, 104}, {{2, 5, 2, 0}, 128}, {{3, 4, 2, 0}, 112}, {{3, 5, 1, 0}, 80}, {{2, 6, 1, 0}, 104},
      {{1, 7, 1, 0}, 104}, {{1, 8, 0, 0}, 92},  {{3, 6, 0, 0}, 56},  {{5, 0, 4, 0}, 21},
  };
  for (const auto& [s, c] : quoted) t.set(s, c, Provenance::quoted);
  return t;
}

const CountEntry* CountTable::find(const Signature& s) const {
  const auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::uint64_t> CountTable::get(const Signature& s) const {
  if (const auto* e = find(s)) return e->count;
  return std::nullopt;
}

void CountTable::set(const Signature& s, std::uint64_t count, Provenance p, std::string note) {
  if (!s.valid()) throw std::invalid_argument("invalid signature " + s.to_string());
  entries_[s] = CountEntry{count, p, std::move(note)};
}

void CountTable::merge(const CountTable& other) {
  for (const auto& [s, e] : other.entries_) {
    const auto* mine = find(s);
    if (!mine || rank(e.provenance) >= rank(mine->provenance)) entries_[s] = e;
  }
}

std::vector<Signature> CountTable::missing_triangle() const {
  std::vector<Signature> m;
  for (const auto& s : triangle_signatures())
    if (!find(s)) m.push_back(s);
  return m;
}

void CountTable::fill_duals() {
  for (const auto& s : triangle_signatures()) {
    const Signature d{s.gamma, s.beta, s.alpha, 0};
    if (find(s) || !find(d)) continue;
    const auto& e = *find(d);
    set(s, e.count, e.provenance == Provenance::recurrence ? Provenance::recurrence : Provenance::census,
        "dual of " + d.to_string());
  }
}

std::vector<std::string> CountTable::check() const {
  std::vector<std::string> bad;
  for (const auto& [s, e] : entries_) {
    if (s.delta == 0) {
      if (auto b = bezout_count(s); b && *b != e.count)
        bad.push_back(s.to_string() + ": " + std::to_string(e.count) + " differs from the Bezout count " +
                      std::to_string(*b));
      const std::uint64_t bound = ipow(2, s.beta) * ipow(3, s.gamma);
      if (e.count > bound)
        bad.push_back(s.to_string() + ": " + std::to_string(e.count) + " exceeds the Bezout bound " +
                      std::to_string(bound));
      if (auto d = get({s.gamma, s.beta, s.alpha, 0}); d && *d != e.count)
        bad.push_back(s.to_string() + ": " + std::to_string(e.count) + " differs from its dual " + std::to_string(*d));
    } else {
      const auto a = get({s.alpha + 1, s.beta, s.gamma, s.delta - 1});
      const auto b = get({s.alpha, s.beta + 1, s.gamma, s.delta - 1});
      const auto c = get({s.alpha, s.beta, s.gamma + 1, s.delta - 1});
      if (a && b && c && 2 * (*a + *b + *c) != e.count)
        bad.push_back(s.to_string() + ": " + std::to_string(e.count) + " breaks the recurrence (" +
                      std::to_string(2 * (*a + *b + *c)) + ")");
    }
  }
  return bad;
}

nlohmann::json CountTable::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [s, e] : entries_) {
    nlohmann::json v{{"count", e.count}, {"provenance", tq::to_string(e.provenance)}};
    if (!e.note.empty()) v["note"] = e.note;
    j[s.to_string()] = v;
  }
  return j;
}

CountTable CountTable::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("count table must be a JSON object");
  CountTable t;
  for (const auto& [key, v] : j.items()) {
    const Signature s = Signature::parse(key);
    if (v.is_null() || (v.is_object() && v.value("count", nlohmann::json()).is_null())) continue;
    t.set(s, v.at("count").get<std::uint64_t>(), provenance_from_string(v.at("provenance").get<std::string>()),
          v.value("note", std::string()));
  }
  return t;
}

CountTable CountTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return from_json(nlohmann::json::parse(in));
}

void CountTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json().dump(2) << "\n";
}

std::uint64_t pyramid_entry(CountTable& table, const Signature& s) {
  if (!s.valid()) throw std::invalid_argument("invalid signature " + s.to_string());
  if (auto v = table.get(s)) return *v;
  if (s.delta == 0) throw UnknownDependency(s);
  const std::uint64_t v = 2 * (pyramid_entry(table, {s.alpha + 1, s.beta, s.gamma, s.delta - 1}) +
                               pyramid_entry(table, {s.alpha, s.beta + 1, s.gamma, s.delta - 1}) +
                               pyramid_entry(table, {s.alpha, s.beta, s.gamma + 1, s.delta - 1}));
  table.set(s, v, Provenance::recurrence);
  return v;
}

std::uint64_t flag_power_aggregate(const CountTable& table) {
  const auto missing = table.missing_triangle();
  if (!missing.empty()) throw IncompleteTriangle(missing);
  std::uint64_t sum = 0;
  for (const auto& s : triangle_signatures()) sum += trinomial9(s) * *table.get(s);
  return sum;
}

std::uint64_t q9_aggregate(const CountTable& table) { return 512 * flag_power_aggregate(table); }

nlohmann::json to_json(const CensusResult& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"instance_seed", t.instance_seed},
                      {"certified", t.certified},
                      {"real", t.real},
                      {"converged", t.converged},
                      {"failed", t.failed},
                      {"reruns", t.reruns},
                      {"seconds", t.seconds}});
  nlohmann::json replaced = nlohmann::json::array();
  for (const auto& t : r.replaced) replaced.push_back({{"instance_seed", t.instance_seed}, {"certified", t.certified}});
  return {{"signature", r.signature.to_string()}, {"count", r.count}, {"trials", trials}, {"replaced", replaced}};
}

CensusResult census(const Signature& s, const CensusSettings& st) {
  if (!s.valid()) throw std::invalid_argument("invalid signature " + s.to_string());
  if (st.trials < 1) throw std::invalid_argument("census needs at least one trial");
  CensusResult out;
  out.signature = s;
  std::vector<TangencyInstance> instances;
  std::vector<SolveReport> merged;
  // one solve and certification of instance k with gamma stream `pass`
  const auto run = [&](std::size_t k, std::uint64_t pass) {
    const auto t0 = std::chrono::steady_clock::now();
    CensusTrial& trial = out.trials[k];
    TrackerSettings ts = st.tracker;
    ts.rng_seed = derive_seed(trial.instance_seed, pass == 0 ? 1 : 10 + pass);
    ts.chart_seed = derive_seed(trial.instance_seed, 2);
    const SlpSystem sys = assemble(instances[k], ts.chart_seed);
    if (sys.total_degree() > st.path_budget)
      throw std::runtime_error("census of " + s.to_string() + " needs " + std::to_string(sys.total_degree()) +
                               " paths, over the budget of " + std::to_string(st.path_budget));
    SolveReport rep = solve_total_degree(sys, ts);
    const std::size_t failed = rep.count(PathStatus::failed);
    const std::size_t converged = rep.count(PathStatus::converged);
    if (static_cast<double>(failed) > ts.retry_failure_rate * static_cast<double>(rep.paths))
      throw std::runtime_error("census of " + s.to_string() + ": " + std::to_string(failed) + " of " +
                               std::to_string(rep.paths) + " paths failed");
    CertifySettings cs = st.certify;
    cs.chart_seed = derive_seed(trial.instance_seed, 3);
    // reruns add their candidates to the earlier ones
    SolveReport& all = merged[k];
    if (pass == 0) {
      all = std::move(rep);
    } else {
      for (auto& sol : rep.solutions) {
        sol.path_index += static_cast<int>(pass * all.paths);
        all.solutions.push_back(std::move(sol));
      }
    }
    const CertificationReport cr = certify_solutions(instances[k], all, cs);
    std::size_t real = 0;
    for (const auto& b : cr.boxes)
      if (b.distinct && b.nondegenerate && b.real == Reality::real) ++real;
    trial.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (pass == 0 || cr.summary.nondegenerate > trial.certified) {
      trial.certified = cr.summary.nondegenerate;
      trial.real = real;
      trial.converged = converged;
      trial.failed = failed;
    }
  };
  for (int k = 0; k < st.trials; ++k) {
    CensusTrial trial;
    trial.instance_seed = derive_seed(st.seed, static_cast<std::uint64_t>(k));
    Rng rng(trial.instance_seed);
    instances.push_back(random_instance(s, rng));
    merged.emplace_back();
    out.trials.push_back(trial);
    run(out.trials.size() - 1, 0);
  }
  // certified counts are lower bounds: short trials get fresh gammas, then
  // fresh instances
  const auto best = [&] {
    std::size_t b = 0;
    for (const auto& t : out.trials) b = std::max(b, t.certified);
    return b;
  };
  const auto retry = [&](std::size_t k) {
    for (int pass = 1; pass <= st.reruns && out.trials[k].certified < best(); ++pass) {
      run(k, static_cast<std::uint64_t>(pass));
      ++out.trials[k].reruns;
    }
  };
  for (std::size_t k = 0; k < out.trials.size(); ++k) retry(k);
  std::uint64_t next = static_cast<std::uint64_t>(st.trials);
  for (int r = 0; r < st.replacements; ++r) {
    std::size_t k = 0;
    while (k < out.trials.size() && out.trials[k].certified >= best()) ++k;
    if (k == out.trials.size()) break;
    out.replaced.push_back(out.trials[k]);
    CensusTrial fresh;
    fresh.instance_seed = derive_seed(st.seed, next++);
    Rng rng(fresh.instance_seed);
    instances[k] = random_instance(s, rng);
    out.trials[k] = fresh;
    run(k, 0);
    retry(k);
  }
  out.count = out.trials.front().certified;
  for (const auto& t : out.trials)
    if (t.certified != out.count) {
      std::string counts;
      for (const auto& u : out.trials) counts += (counts.empty() ? "" : ", ") + std::to_string(u.certified);
      throw InconsistentCensus("census of " + s.to_string() + " disagrees across trials: " + counts);
    }
  return out;
}

Flag<Rational> random_flag(Rng& rng) {
  for (;;) {
    Mat<Rational, 4, 4> V;
    for (auto& row : V)
      for (auto& v : row) v = dyadic_gaussian(rng);
    try {
      return flag_from_rows(V);
    } catch (const DegenerateFigure&) {
    }
  }
}

Signature signature_of(const Psi& psi) {
  Signature s;
  for (auto k : psi) {
    switch (k) {
      case FigureKind::point: ++s.alpha; break;
      case FigureKind::line: ++s.beta; break;
      case FigureKind::plane: ++s.gamma; break;
      case FigureKind::quadric: throw std::invalid_argument("psi takes values in point, line, plane");
    }
  }
  return s;
}

TangencyInstance flag_system(const std::vector<Flag<Rational>>& flags, const Psi& psi) {
  if (flags.size() != 9) throw std::invalid_argument("flag_system needs nine flags");
  TangencyInstance inst;
  for (std::size_t i = 0; i < 9; ++i) {
    for (const auto& r : flag_residuals(flags[i]))
      if (r != 0) throw std::invalid_argument("flag " + std::to_string(i + 1) + " is not a valid flag");
    switch (psi[i]) {
      case FigureKind::point: inst.points.push_back(Figure::point(flags[i].point)); break;
      case FigureKind::line: inst.lines.push_back(Figure::line(flags[i].line)); break;
      case FigureKind::plane: inst.planes.push_back(Figure::plane(flags[i].plane)); break;
      case FigureKind::quadric: throw std::invalid_argument("psi takes values in point, line, plane");
    }
  }
  return inst;
}

void for_each_psi(const std::function<void(const Psi&)>& visit) {
  constexpr FigureKind kinds[3] = {FigureKind::point, FigureKind::line, FigureKind::plane};
  Psi psi;
  for (int code = 0; code < 19683; ++code) {
    int c = code;
    for (int i = 8; i >= 0; --i) {
      psi[static_cast<std::size_t>(i)] = kinds[c % 3];
      c /= 3;
    }
    visit(psi);
  }
}

std::uint64_t flag_system_total(const CountTable& table) {
  std::uint64_t sum = 0;
  for_each_psi([&](const Psi& psi) {
    const auto s = signature_of(psi);
    const auto v = table.get(s);
    if (!v) throw UnknownDependency(s);
    sum += *v;
  });
  return sum;
}

}  // namespace tq
