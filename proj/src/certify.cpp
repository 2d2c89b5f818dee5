#include "tq/certify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tq/geometry.hpp"
#include "tq/random.hpp"

namespace tq {

namespace {

template <class F>
using CI = BasicCInterval<F>;
template <class F>
using RI = BasicInterval<F>;

template <class F>
CI<F> param_interval(const Rational& q) {
  if constexpr (std::is_same_v<F, double>) {
    return CI<F>(enclose(q));
  } else {
    return CI<F>(enclose_quad(q));
  }
}

template <class F>
CI<F> thin(std::complex<double> z) {
  return CI<F>(RI<F>(F(z.real())), RI<F>(F(z.imag())));
}

template <class F>
std::vector<CI<F>> tape_inputs(const CertSystem& s, const std::vector<CI<F>>& x) {
  std::vector<CI<F>> in(x);
  in.reserve(s.n + s.params.size());
  for (const auto& q : s.params) in.push_back(param_interval<F>(q));
  return in;
}

template <class F>
std::vector<CI<F>> eval_interval(const CertSystem& s, const std::vector<CI<F>>& x) {
  const auto in = tape_inputs<F>(s, x);
  return s.tape->evaluate<CI<F>>(in);
}

template <class F>
std::vector<CI<F>> jac_interval(const CertSystem& s, const std::vector<CI<F>>& x) {
  const auto in = tape_inputs<F>(s, x);
  std::vector<CI<F>> seeds(in.size() * s.n);
  for (std::size_t i = 0; i < s.n; ++i) seeds[i * s.n + i] = CI<F>(F(1));
  std::vector<CI<F>> out(s.n), J(s.n * s.n);
  s.tape->forward<CI<F>>(in, seeds, s.n, out, J);
  return J;
}

template <class F>
Eigen::VectorXcd mid_of(const std::vector<CI<F>>& box) {
  Eigen::VectorXcd m(static_cast<Eigen::Index>(box.size()));
  for (std::size_t i = 0; i < box.size(); ++i) m[static_cast<Eigen::Index>(i)] = box[i].mid();
  return m;
}

bool approximate_inverse(const CertSystem& s, const Eigen::VectorXcd& y, Eigen::MatrixXcd& Y) {
  Eigen::VectorXcd F;
  Eigen::MatrixXcd J;
  s.evaluate({y.data(), static_cast<std::size_t>(y.size())}, F, J);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
  Y = lu.inverse();
  return Y.allFinite();
}

template <class F>
struct KrawczykResult {
  bool inside = false;
  std::vector<CI<F>> K;
  double contraction = 0.0;  // row-sum bound on |I - Y J(B)|
  double image_radius = 0.0;
  bool overlaps = true;
};

// K(B) = y - Y F(y) + (I - Y J(B))(B - y) with y the midpoint of B.
template <class F>
KrawczykResult<F> krawczyk_step(const CertSystem& s, const std::vector<CI<F>>& B, const Eigen::MatrixXcd& Y) {
  const std::size_t n = s.n;
  std::vector<CI<F>> y(n), dB(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = CI<F>(RI<F>(B[i].re.mid), RI<F>(B[i].im.mid));
    dB[i] = CI<F>(RI<F>(F(0), B[i].re.rad), RI<F>(F(0), B[i].im.rad));
  }
  const auto Fy = eval_interval<F>(s, y);
  const auto JB = jac_interval<F>(s, B);

  std::vector<CI<F>> Yc(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      Yc[i * n + j] = thin<F>(Y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));

  KrawczykResult<F> r;
  r.K.resize(n);
  r.inside = true;
  for (std::size_t i = 0; i < n; ++i) {
    CI<F> yf;
    for (std::size_t j = 0; j < n; ++j) yf = yf + Yc[i * n + j] * Fy[j];
    CI<F> acc = y[i] - yf;
    double row = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      CI<F> m = i == k ? CI<F>(F(1)) : CI<F>();
      for (std::size_t j = 0; j < n; ++j) m = m - Yc[i * n + j] * JB[j * n + k];
      acc = acc + m * dB[k];
      row += std::abs(static_cast<double>(m.re.mid)) + static_cast<double>(m.re.rad) +
             std::abs(static_cast<double>(m.im.mid)) + static_cast<double>(m.im.rad);
    }
    r.K[i] = acc;
    r.contraction = std::max(r.contraction, row);
    r.image_radius = std::max(r.image_radius, static_cast<double>(acc.max_rad()));
    if (!strictly_inside(acc, B[i])) r.inside = false;
    if (disjoint(acc, B[i])) r.overlaps = false;
  }
  return r;
}

template <class F>
std::vector<CI<F>> box_around(const std::vector<std::complex<F>>& y, F r) {
  std::vector<CI<F>> B(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) B[i] = CI<F>(RI<F>(y[i].real(), r), RI<F>(y[i].imag(), r));
  return B;
}

double scale_of(const Eigen::VectorXcd& x) { return std::max(1.0, x.cwiseAbs().maxCoeff()); }

// Adaptive Krawczyk loop in tier F. On success `out` is the box B with K(B) inside it.
template <class F>
bool adaptive_krawczyk(const CertSystem& s, std::vector<std::complex<F>> y, double r, const CertifySettings& st,
                       std::vector<CI<F>>& out, double& final_r, int& attempts) {
  for (int a = 0; a < st.max_attempts; ++a) {
    ++attempts;
    std::vector<CI<F>> B = box_around<F>(y, F(r));
    Eigen::MatrixXcd Y;
    if (!approximate_inverse(s, mid_of(B), Y)) return false;
    const auto res = krawczyk_step<F>(s, B, Y);
    if (res.inside) {
      // Shrink towards the image while the test still passes.
      auto K = res.K;
      double image = res.image_radius;
      for (int t = 0; t < 4 && 4.0 * image < r; ++t) {
        std::vector<std::complex<F>> c(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) c[i] = {K[i].re.mid, K[i].im.mid};
        const double r2 = 4.0 * image;
        auto B2 = box_around<F>(c, F(r2));
        Eigen::MatrixXcd Y2;
        if (!approximate_inverse(s, mid_of(B2), Y2)) break;
        const auto res2 = krawczyk_step<F>(s, B2, Y2);
        if (!res2.inside) break;
        B = std::move(B2);
        K = res2.K;
        image = res2.image_radius;
        r = r2;
      }
      out = B;
      final_r = r;
      return true;
    }
    if (!std::isfinite(res.contraction) || !std::isfinite(res.image_radius)) {
      r *= 0.5;
      continue;
    }
    if (res.contraction >= 0.5) {
      r *= 0.5;
    } else {
      // Contracting but off centre or too tight for the rounding noise.
      if (res.overlaps)
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = {res.K[i].re.mid, res.K[i].im.mid};
      r = std::max(2.0 * r, 2.0 * res.image_radius);
    }
  }
  return false;
}

// Newton with the residual in quad and the step from the double Jacobian.
bool refine_quad(const CertSystem& s, const Eigen::VectorXcd& x0, std::vector<std::complex<quad>>& xq, double& last_step) {
  const std::size_t n = s.n;
  xq.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) xq[i] = {quad(x0[static_cast<Eigen::Index>(i)].real()), quad(x0[static_cast<Eigen::Index>(i)].imag())};
  std::vector<std::complex<quad>> in(n + s.params.size());
  for (std::size_t k = 0; k < s.params.size(); ++k) in[n + k] = {to_quad(s.params[k]), quad(0)};
  const double scale = scale_of(x0);
  last_step = INFINITY;
  for (int it = 0; it < 12; ++it) {
    for (std::size_t i = 0; i < n; ++i) in[i] = xq[i];
    const auto Fq = s.tape->evaluate<std::complex<quad>>(in);
    Eigen::VectorXcd x(static_cast<Eigen::Index>(n)), Fd(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      x[static_cast<Eigen::Index>(i)] = {static_cast<double>(xq[i].real()), static_cast<double>(xq[i].imag())};
      Fd[static_cast<Eigen::Index>(i)] = {static_cast<double>(Fq[i].real()), static_cast<double>(Fq[i].imag())};
    }
    Eigen::VectorXcd Fx;
    Eigen::MatrixXcd J;
    s.evaluate({x.data(), n}, Fx, J);
    const Eigen::VectorXcd dx = J.partialPivLu().solve(-Fd);
    if (!dx.allFinite()) return false;
    for (std::size_t i = 0; i < n; ++i)
      xq[i] += std::complex<quad>(quad(dx[static_cast<Eigen::Index>(i)].real()), quad(dx[static_cast<Eigen::Index>(i)].imag()));
    const double step = dx.cwiseAbs().maxCoeff();
    if (step <= 1e-29 * scale) {
      last_step = step;
      return true;
    }
    if (it >= 3 && step > 0.5 * last_step) {
      last_step = step;
      return step <= 1e-24 * scale;
    }
    last_step = step;
  }
  return last_step <= 1e-24 * scale;
}

template <class F>
bool box_test(const CertSystem& s, const std::vector<CI<F>>& box) {
  if (box.size() != s.n) throw std::invalid_argument("box dimension mismatch");
  Eigen::MatrixXcd Y;
  if (!approximate_inverse(s, mid_of(box), Y)) return false;
  return krawczyk_step<F>(s, box, Y).inside;
}

// Box symmetric about the real axis containing B and conj(B).
template <class F>
std::vector<CI<F>> real_hull(const std::vector<CI<F>>& B) {
  std::vector<CI<F>> H(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) {
    const F r = iv::up(iv::fabs(B[i].im.mid) + B[i].im.rad);
    H[i] = CI<F>(B[i].re, RI<F>(F(0), r));
  }
  return H;
}

nlohmann::json interval_json(const CInterval& c) {
  return {{"re_mid", c.re.mid}, {"re_rad", c.re.rad}, {"im_mid", c.im.mid}, {"im_rad", c.im.rad}};
}

}  // namespace

CertSystem CertSystem::from(const SlpSystem& s11) {
  if (!s11.has_det_variable()) throw std::invalid_argument("certification needs the determinant variable");
  CertSystem c;
  c.tape = s11.tape_ptr();
  c.n = s11.n();
  c.params = s11.figure_params();
  for (const auto& z : s11.chart()) {
    c.params.emplace_back(z.real());
    if (z.imag() != 0.0) c.real = false;
  }
  c.det_index = 0;
  return c;
}

void CertSystem::evaluate(std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) const {
  thread_local std::vector<cd> in, seeds, out, jac;
  in.assign(x.begin(), x.end());
  for (const auto& q : params) in.emplace_back(q.get_d());
  seeds.assign(in.size() * n, cd(0.0));
  for (std::size_t i = 0; i < n; ++i) seeds[i * n + i] = 1.0;
  out.resize(n);
  jac.resize(n * n);
  tape->forward<cd>(in, seeds, n, out, jac);
  F = Eigen::Map<const Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(n));
  J = Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      jac.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

std::string to_string(Reality r) {
  switch (r) {
    case Reality::real: return "real";
    case Reality::nonreal: return "nonreal";
    case Reality::unknown: return "unknown";
  }
  return "unknown";
}

nlohmann::json to_json(const CertificateBox& b) {
  nlohmann::json iv = nlohmann::json::array();
  for (const auto& c : b.intervals) iv.push_back(interval_json(c));
  nlohmann::json x = nlohmann::json::array();
  for (const auto& z : b.solution_approx) x.push_back({z.real(), z.imag()});
  return {{"intervals", iv},         {"certified", b.certified},         {"real", to_string(b.real)},
          {"nondegenerate", b.nondegenerate}, {"distinct", b.distinct}, {"extended", b.extended},
          {"radius", b.inflation},   {"attempts", b.attempts},           {"path_index", b.path_index},
          {"solution_approx", x}};
}

void CertifySettings::validate() const {
  if (!(inflation_factor >= 1.0)) throw std::invalid_argument("inflation_factor must be at least 1");
  if (!(inflation_floor > 0.0)) throw std::invalid_argument("inflation_floor must be positive");
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be nonnegative");
}

nlohmann::json to_json(const CertifySettings& s) {
  return {{"inflation_factor", s.inflation_factor}, {"inflation_floor", s.inflation_floor},
          {"max_attempts", s.max_attempts},         {"extended", s.extended},
          {"threads", s.threads},                   {"chart_seed", s.chart_seed}};
}

CertifySettings certify_settings_from_json(const nlohmann::json& j, CertifySettings s) {
  if (j.contains("inflation_factor")) s.inflation_factor = j.at("inflation_factor").get<double>();
  if (j.contains("inflation_floor")) s.inflation_floor = j.at("inflation_floor").get<double>();
  if (j.contains("max_attempts")) s.max_attempts = j.at("max_attempts").get<int>();
  if (j.contains("extended")) s.extended = j.at("extended").get<bool>();
  if (j.contains("threads")) s.threads = j.at("threads").get<int>();
  if (j.contains("chart_seed")) s.chart_seed = j.at("chart_seed").get<std::uint64_t>();
  s.validate();
  return s;
}

double default_inflation(const CertSystem& s, const Eigen::VectorXcd& x, const CertifySettings& st) {
  Eigen::VectorXcd F;
  Eigen::MatrixXcd J;
  s.evaluate({x.data(), static_cast<std::size_t>(x.size())}, F, J);
  const Eigen::VectorXcd dx = J.partialPivLu().solve(F);
  const double floor = st.inflation_floor * scale_of(x);
  if (!dx.allFinite()) return floor;
  return std::max(st.inflation_factor * dx.cwiseAbs().maxCoeff(), floor);
}

CertificateBox krawczyk_certify(const CertSystem& s, const Eigen::VectorXcd& x, double inflation,
                                const CertifySettings& st) {
  if (static_cast<std::size_t>(x.size()) != s.n) throw std::invalid_argument("solution dimension mismatch");
  CertificateBox box;
  box.solution_approx = x;
  if (!x.allFinite() || !(inflation > 0.0)) return box;

  // A few double Newton steps to centre the box.
  Eigen::VectorXcd y = x;
  for (int it = 0; it < 3; ++it) {
    Eigen::VectorXcd F;
    Eigen::MatrixXcd J;
    s.evaluate({y.data(), s.n}, F, J);
    const Eigen::VectorXcd dx = J.partialPivLu().solve(-F);
    if (!dx.allFinite() || dx.cwiseAbs().maxCoeff() > 1e-3 * scale_of(y)) break;
    y += dx;
  }

  std::vector<std::complex<double>> yd(y.data(), y.data() + y.size());
  std::vector<CInterval> K;
  double r = inflation;
  if (adaptive_krawczyk<double>(s, yd, inflation, st, K, r, box.attempts)) {
    box.certified = true;
    box.intervals = K;
    box.inflation = r;
  }
  const bool d_open = box.certified && s.det_index && K[*s.det_index].contains_zero();
  if ((!box.certified || d_open) && st.extended) {
    std::vector<std::complex<quad>> yq;
    double last = 0.0;
    if (refine_quad(s, y, yq, last)) {
      const double r0 = std::max(st.inflation_factor * last, 1e-30 * scale_of(y));
      std::vector<QCInterval> KQ;
      if (adaptive_krawczyk<quad>(s, yq, r0, st, KQ, r, box.attempts)) {
        box.certified = true;
        box.extended = true;
        box.qintervals = KQ;
        box.inflation = r;
        box.intervals.clear();
        for (const auto& c : KQ) box.intervals.push_back(to_double(c));
      }
    }
  }
  if (box.certified) {
    if (s.det_index) box.nondegenerate = nondegeneracy_check(box, *s.det_index);
    box.solution_approx = mid_of(box.intervals);
  }
  return box;
}

CertificateBox krawczyk_certify(const SlpSystem& s11, const Eigen::VectorXcd& x, double inflation,
                                const CertifySettings& st) {
  return krawczyk_certify(CertSystem::from(s11), x, inflation, st);
}

bool krawczyk_box_test(const CertSystem& s, const std::vector<CInterval>& box) { return box_test<double>(s, box); }
bool krawczyk_box_test(const CertSystem& s, const std::vector<QCInterval>& box) { return box_test<quad>(s, box); }

bool nondegeneracy_check(const CertificateBox& box, std::size_t det_index) {
  if (!box.certified || det_index >= box.intervals.size()) return false;
  if (box.extended && det_index < box.qintervals.size()) return !box.qintervals[det_index].contains_zero();
  return !box.intervals[det_index].contains_zero();
}

std::string CertificationSummary::to_text() const {
  std::string t = "CertificationResult\n===================\n";
  t += "- " + std::to_string(given) + " solutions given\n";
  t += "- " + std::to_string(certified) + " certified solutions (" + std::to_string(certified_real) + " real)\n";
  t += "- " + std::to_string(distinct) + " distinct certified solutions (" + std::to_string(distinct_real) +
       " real)\n";
  t += "- " + std::to_string(nondegenerate) + " nondegenerate distinct certified solutions\n";
  if (real_unknown > 0) t += "- " + std::to_string(real_unknown) + " with reality unproven\n";
  return t;
}

nlohmann::json to_json(const CertificationSummary& s) {
  return {{"given", s.given},
          {"certified", s.certified},
          {"certified_real", s.certified_real},
          {"distinct", s.distinct},
          {"distinct_real", s.distinct_real},
          {"nondegenerate", s.nondegenerate},
          {"nonreal", s.nonreal},
          {"real_unknown", s.real_unknown}};
}

CertificationSummary verdicts(const CertSystem& s, std::vector<CertificateBox>& boxes) {
  CertificationSummary sum;
  sum.given = boxes.size();
  const auto overlap = [](const std::vector<CInterval>& a, const std::vector<CInterval>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (disjoint(a[k], b[k])) return false;
    return true;
  };
  const auto conj_box = [](const std::vector<CInterval>& a) {
    std::vector<CInterval> c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = conj(a[k]);
    return c;
  };

  // Distinct: disjoint from every earlier distinct box.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    auto& b = boxes[i];
    b.distinct = false;
    if (!b.certified) continue;
    bool clash = false;
    for (std::size_t j : kept)
      if (overlap(b.intervals, boxes[j].intervals)) clash = true;
    if (!clash) {
      b.distinct = true;
      kept.push_back(i);
    }
  }

  for (std::size_t i = 0; i < boxes.size(); ++i) {
    auto& b = boxes[i];
    if (!b.certified) continue;
    b.real = Reality::unknown;
    if (s.real) {
      const auto c = conj_box(b.intervals);
      if (!overlap(c, b.intervals)) {
        b.real = Reality::nonreal;
      } else {
        bool others = false;
        for (std::size_t j : kept)
          if (j != i && overlap(c, boxes[j].intervals)) others = true;
        bool hull_ok = box_test<double>(s, real_hull<double>(b.intervals));
        if (!hull_ok && b.extended) hull_ok = box_test<quad>(s, real_hull<quad>(b.qintervals));
        if (!others && hull_ok) b.real = Reality::real;
      }
    }
    ++sum.certified;
    if (b.real == Reality::real) ++sum.certified_real;
    if (b.real == Reality::nonreal) ++sum.nonreal;
    if (b.real == Reality::unknown) ++sum.real_unknown;
    if (b.distinct) {
      ++sum.distinct;
      if (b.real == Reality::real) ++sum.distinct_real;
      if (b.nondegenerate) ++sum.nondegenerate;
    }
  }
  return sum;
}

Eigen::VectorXcd to_chart_with_det(const Eigen::VectorXcd& x10, const SlpSystem& s11) {
  if (x10.size() != 10) throw std::invalid_argument("expected the ten entries of X");
  cd dot = 0.0;
  for (int i = 0; i < 10; ++i) dot += s11.chart()[static_cast<std::size_t>(i)] * x10[i];
  const Eigen::VectorXcd x = x10 / dot;
  SymQuadric<cd> X;
  for (int i = 0; i < 10; ++i) X.x[static_cast<std::size_t>(i)] = x[i];
  Eigen::VectorXcd out(11);
  out[0] = det4(X);
  out.tail(10) = x;
  return out;
}

std::size_t CertificationReport::certified_nondegenerate_distinct() const { return summary.nondegenerate; }

nlohmann::json to_json(const CertificationReport& r) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& b : r.boxes) boxes.push_back(to_json(b));
  nlohmann::json chart = nlohmann::json::array();
  for (const auto& c : r.system.chart()) chart.push_back(c.real());
  return {{"chart", chart}, {"boxes", boxes}, {"summary", to_json(r.summary)}};
}

CertificationReport certify_solutions(const TangencyInstance& instance, const SolveReport& report,
                                      const CertifySettings& st) {
  st.validate();
  std::vector<const TrackedSolution*> cand;
  for (const auto& s : report.solutions) {
    if (s.status != PathStatus::converged && s.status != PathStatus::singular_endpoint) continue;
    if (s.x.size() != 10 || !s.x.allFinite()) continue;
    cand.push_back(&s);
  }

  // Real chart keeping every candidate well away from the hyperplane at infinity.
  const SlpSystem base = assemble(instance, st.chart_seed);
  std::array<cd, 10> best{};
  double best_q = -1.0;
  for (std::uint64_t k = 0; k < 8; ++k) {
    Rng rng(derive_seed(st.chart_seed, 1000 + k));
    const auto c = random_real_chart(rng);
    double cn = 0.0;
    for (const auto& v : c) cn += std::norm(v);
    cn = std::sqrt(cn);
    double q = INFINITY;
    for (const auto* s : cand) {
      cd dot = 0.0;
      for (int i = 0; i < 10; ++i) dot += c[static_cast<std::size_t>(i)] * s->x[i];
      q = std::min(q, std::abs(dot) / (cn * s->x.norm()));
    }
    if (q > best_q) {
      best_q = q;
      best = c;
    }
  }

  CertificationReport out{with_det_variable(base.with_chart(best)), {}, {}};
  const CertSystem cs = CertSystem::from(out.system);
  out.boxes.resize(cand.size());
  parallel_for(cand.size(), st.threads, [&](std::size_t i) {
    const Eigen::VectorXcd x = to_chart_with_det(cand[i]->x, out.system);
    CertificateBox b = krawczyk_certify(cs, x, default_inflation(cs, x, st), st);
    b.path_index = cand[i]->path_index;
    out.boxes[i] = std::move(b);
  });
  out.summary = verdicts(cs, out.boxes);
  return out;
}

SolveCertifyReport solve_and_certify(const TangencyInstance& instance, const TrackerSettings& tracker,
                                     const CertifySettings& certify, std::optional<std::size_t> expected,
                                     int max_passes) {
  SolveCertifyReport out;
  const SlpSystem sys = assemble(instance, tracker.chart_seed);
  out.solve = solve_total_degree(sys, tracker);
  out.certification = certify_solutions(instance, out.solve, certify);
  const auto paths = static_cast<int>(out.solve.paths);
  while (expected && out.certification.summary.nondegenerate < *expected && out.passes < max_passes) {
    TrackerSettings t = tracker;
    t.rng_seed = derive_seed(tracker.rng_seed, 100 + static_cast<std::uint64_t>(out.passes));
    SolveReport more = solve_total_degree(sys, t);
    for (auto& s : more.solutions) {
      s.path_index += out.passes * paths;
      out.solve.solutions.push_back(std::move(s));
    }
    out.solve.attempts += more.attempts;
    ++out.passes;
    out.certification = certify_solutions(instance, out.solve, certify);
  }
  return out;
}

}  // namespace tq
