// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "cli_commands.hpp"

using namespace belltomo;

namespace {

const double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Runs one criterion; a thrown error or an exceeded time limit counts as FAIL.
bool criterion(int id, const char* name, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    v.pass = false;
    v.detail += " [over time limit]";
  }
  std::printf("%s %2d %-34s %8.2fs / %4.0fs  %s\n", v.pass ? "PASS" : "FAIL", id, name, secs, limit_s,
              v.detail.c_str());
  std::fflush(stdout);
  return v.pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double violate_value(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::run_cli(args, out, err) != 0) throw Error("violate failed: " + err.str());
  return cli::Json::parse(out.str())["result"]["value"].get<double>();
}

SettingPairs spin_pairs(const std::vector<std::array<double, 4>>& rows) {
  SettingPairs s;
  for (const auto& r : rows) s.push_back({EulerAngles{r[0], r[1], 0.0}, EulerAngles{r[2], r[3], 0.0}});
  return s;
}

// a_kj: party k, setting j
double pn_chsh(double a11, double a21, double a12, double a22) {
  const SettingPairs s = {{Displacement{a11, 0.0}, Displacement{a12, 0.0}},
                          {Displacement{a21, 0.0}, Displacement{a22, 0.0}}};
  return bell_value(SchemeConfig::photon_number(0), mermin_inequality(2), s);
}

}  // namespace

int main() {
  bool all = true;

  all &= criterion(1, "spin CHSH maximum", 10, [] {
    const double best = violate_value({"violate", "--scheme", "spin", "--n", "2", "--ineq", "mermin"});
    const double target = 2 * std::sqrt(2.0);
    double worst_family = 0;
    for (double phi : {0.0, 0.37, 1.9, -2.4}) {
      const SettingPairs s = spin_pairs({{phi, -kPi / 8, phi, 3 * kPi / 8}, {-phi, kPi / 8, -phi, -3 * kPi / 8}});
      worst_family = std::max(worst_family, std::abs(bell_value(SchemeConfig::spin(), mermin_inequality(2), s) - target));
    }
    return Verdict{std::abs(best - target) <= 1e-6 && worst_family <= 1e-10,
                   fmt("search %.12f, angle family off by %.1e", best, worst_family)};
  });

  all &= criterion(2, "spin Mermin n=3 maximum", 30, [] {
    const double best = violate_value({"violate", "--scheme", "spin", "--n", "3", "--ineq", "mermin"});
    const double a = 5 * kPi / 6, b = kPi / 3;
    const SettingPairs s = spin_pairs({{a, kPi / 2, b, kPi / 2}, {a, kPi / 2, b, kPi / 2}, {a, kPi / 2, b, kPi / 2}});
    const double at_angles = std::abs(bell_value(SchemeConfig::spin(), mermin_inequality(3), s));
    return Verdict{std::abs(best - 4) <= 1e-6 && std::abs(at_angles - 4) <= 1e-10,
                   fmt("search %.12f, explicit angles %.14f", best, at_angles)};
  });

  all &= criterion(3, "optical f_n scan", 5, [] {
    const FnScan f2 = scan_fn(2, -3, 3, 601);
    const FnScan f3 = scan_fn(3, -3, 3, 601);
    bool below = true;
    for (const auto& row : f2.rows) below &= row[1] <= 2.0;
    const double want = 32 * std::pow(2 * kPi, -1.5);
    return Verdict{below && f3.max > 2 && std::abs(f3.max - want) <= 1e-6 && std::abs(f3.argmax) < 1e-12,
                   fmt("max f2 %.10f, max f3 %.10f at x=%g", f2.max, f3.max, f3.argmax)};
  });

  all &= criterion(4, "photon-number CHSH sweep", 20, [] {
    const double a11 = 0.165, a21 = -0.165, a12 = -0.559;
    double best = -1, at = 0;
    const int steps = 4001;
    for (int i = 0; i < steps; ++i) {
      const double a22 = -2.0 + 4.0 * i / (steps - 1);
      const double v = pn_chsh(a11, a21, a12, a22);
      if (v > best) best = v, at = a22;
    }
    const auto peak = boost::math::tools::brent_find_minima(
        [&](double a22) { return -pn_chsh(a11, a21, a12, a22); }, at - 1e-3, at + 1e-3, 52);
    const double refined = -peak.second;
    // regression constants from the high-precision sweep
    const bool frozen = std::abs(best - 2.6852083719498080434) <= 1e-12 && std::abs(at - 0.56) <= 1e-12 &&
                        std::abs(refined - 2.6852087315803729363) <= 1e-12 &&
                        std::abs(peak.first - 0.55959885912135292665) <= 1e-6;
    return Verdict{best > 2 && frozen, fmt("grid max %.12f at %.4f, refined %.13f at %.10f", best, at, refined, peak.first)};
  });

  all &= criterion(5, "photon-number Mermin n=3 no violation", 300, [] {
    SearchSpace space = default_search_space(Scheme::photon_number, 3, 8.0);
    space.max_coarse_points = 1'000'000;
    space.random_coarse = true;
    space.seed = 2024;
    const SearchResult r = maximize_bell(SchemeConfig::photon_number(0), 3, mermin_inequality(3), space);
    return Verdict{r.value <= 2 + 1e-9 && r.evaluations >= 1'000'000,
                   fmt("best %.12f over %zu evaluations", r.value, r.evaluations)};
  });

  all &= criterion(6, "polytope vertices are +-H columns", 5, [] {
    for (int n = 1; n <= 3; ++n) {
      const std::size_t d = std::size_t{1} << n;
      std::set<std::vector<int>> want;
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<int> col(d);
        for (std::size_t r = 0; r < d; ++r) col[r] = std::popcount(r & c) % 2 ? -1 : 1;
        want.insert(col);
        for (int& v : col) v = -v;
        want.insert(col);
      }
      const auto got = classical_vertices(n);
      if (std::set<std::vector<int>>(got.begin(), got.end()) != want || got.size() != want.size())
        return Verdict{false, fmt("vertex set differs at n=%d", n)};
      const auto ineqs = all_inequalities(n);
      for (const auto& v : got) {
        const CorrelationVector e(n, std::vector<double>(v.begin(), v.end()));
        double top = -1e300;
        for (const auto& b : ineqs) top = std::max(top, margin(e, b));
        if (top != 0.0) return Verdict{false, fmt("n=%d vertex has max margin %g", n, top)};
      }
    }
    return Verdict{true, "n=1..3 exhaustive"};
  });

  all &= criterion(7, "separable vectors satisfy all", 30, [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> q(-1, 1);
    std::exponential_distribution<double> ex(1.0);
    std::size_t checked = 0;
    double worst = -1e300;
    for (int n : {2, 3})
      for (int trial = 0; trial < 10'000; ++trial) {
        const int terms = 1 + static_cast<int>(rng() % 4);
        std::vector<double> w(static_cast<std::size_t>(terms));
        double total = 0;
        for (double& x : w) total += (x = ex(rng));
        for (double& x : w) x /= total;
        std::vector<std::vector<LocalResponse>> local(w.size());
        for (auto& t : local)
          for (int k = 0; k < n; ++k) t.push_back({q(rng), q(rng)});
        const Membership m = is_member(separable_e(w, local));
        if (!m.member) return Verdict{false, fmt("n=%d trial %d violates by %g", n, trial, m.margin)};
        worst = std::max(worst, m.margin);
        ++checked;
      }
    return Verdict{true, fmt("%zu vectors, largest margin %.3g", checked, worst)};
  });

  all &= criterion(8, "cosine lemma n=2..5", 120, [] {
    std::string detail;
    bool ok = true;
    for (int n = 2; n <= 5; ++n) {
      const double bound = std::pow(2.0, (n - 1) / 2.0);
      const SearchResult r = verify_appendix_lemma(n);
      ok &= std::abs(r.value - bound) <= 1e-8 && r.value <= bound + 1e-12;
      detail += fmt("n=%d %.3g ", n, r.value - bound);
    }
    return Verdict{ok, detail};
  });

  all &= criterion(9, "closed forms vs tomogram sums", 300, [] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(0, 2 * kPi), half(0, kPi), re(-1.5, 1.5), thr(-1.5, 1.5);
    double spin_err = 0, opt_err = 0, pn_err = 0;
    for (int n : {2, 3})
      for (int draw = 0; draw < 100; ++draw) {
        std::vector<EulerAngles> s;
        for (int k = 0; k < n; ++k) s.push_back({ang(rng), half(rng), ang(rng)});
        spin_err = std::max(spin_err, std::abs(spin_correlation_closed_form(s) -
                                               spin_correlation_from_tomogram(GhzState(n), s)));

        std::vector<double> theta;
        for (int k = 0; k < n; ++k) theta.push_back(ang(rng));
        const double x = thr(rng);
        const std::vector<double> xs(static_cast<std::size_t>(n), x);
        opt_err = std::max(opt_err, std::abs(optical_correlation(GhzState(n), theta, x) -
                                             optical_correlation_from_tomogram(GhzState(n), theta, xs).value));

        std::vector<Displacement> alpha;
        for (int k = 0; k < n; ++k) alpha.emplace_back(re(rng), re(rng));
        pn_err = std::max(pn_err, std::abs(pn_correlation_closed_form(alpha) -
                                           pn_correlation_from_tomogram(GhzState(n), alpha).value));
      }
    return Verdict{spin_err <= 1e-12 && opt_err <= 1e-8 && pn_err <= 1e-8,
                   fmt("spin %.1e, optical %.1e, pn %.1e", spin_err, opt_err, pn_err)};
  });

  all &= criterion(10, "qubit reconstruction round trip", 120, [] {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g;
    double worst = 1;
    for (int i = 0; i < 50; ++i) {
      Eigen::VectorXcd psi(2);
      psi << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
      psi.normalize();
      const Eigen::MatrixXcd rho = psi * psi.adjoint();
      const Reconstruction r = reconstruct_spin(tomogram_of(rho, kHalf), kHalf, QuadratureSpec::uniform(16));
      worst = std::min(worst, fidelity(r.rho, psi));
    }
    return Verdict{worst >= 1 - 1e-8, fmt("lowest fidelity 1 - %.2e", 1 - worst)};
  });

  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
