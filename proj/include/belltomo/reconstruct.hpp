#ifndef BELLTOMO_RECONSTRUCT_HPP
#define BELLTOMO_RECONSTRUCT_HPP

// Spin state reconstruction: rho = sum_s int p(s, Omega) D(s, Omega) dnu(Omega)
// over phi, theta in [0, 2pi) and psi in [0, pi] with dnu = sin(psi).

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "belltomo/error.hpp"
#include "belltomo/parallel.hpp"
#include "belltomo/quadrature.hpp"
#include "belltomo/specfun.hpp"

namespace belltomo {

inline constexpr double kReconstructionTolerance = 1e-6;

struct QuadratureSpec {
  int phi_nodes = 16;
  int psi_nodes = 16;
  int theta_nodes = 16;
  std::string phi_rule = "trapezoid";
  std::string psi_rule = "gauss-legendre-cos";
  std::string theta_rule = "trapezoid";

  static QuadratureSpec uniform(int nodes) { return QuadratureSpec{nodes, nodes, nodes}; }

  void validate() const {
    if (phi_nodes < 2 || psi_nodes < 2 || theta_nodes < 2)
      throw InvalidInput("QuadratureSpec: at least 2 nodes per axis required");
    if (phi_rule != "trapezoid" || theta_rule != "trapezoid" || psi_rule != "gauss-legendre-cos")
      throw InvalidInput("QuadratureSpec: unsupported rule identifier");
  }

  QuadratureSpec refined() const {
    QuadratureSpec r = *this;
    ++r.phi_nodes;
    ++r.psi_nodes;
    ++r.theta_nodes;
    return r;
  }
};

/// Node positions (angles) and weights for each axis; psi weights absorb sin(psi).
struct EulerGrid {
  QuadratureRule phi, psi, theta;

  explicit EulerGrid(const QuadratureSpec& spec) {
    spec.validate();
    phi = trapezoid_periodic(spec.phi_nodes);
    theta = trapezoid_periodic(spec.theta_nodes);
    psi = gauss_legendre(spec.psi_nodes);
    for (double& x : psi.nodes) x = std::acos(x);
    // ascending in psi
    std::reverse(psi.nodes.begin(), psi.nodes.end());
    std::reverse(psi.weights.begin(), psi.weights.end());
  }
};

namespace detail {

inline void check_spin_indices(HalfInteger j, HalfInteger n, HalfInteger m, HalfInteger s) {
  check_projection(j, n, "dequantizer");
  check_projection(j, m, "dequantizer");
  check_projection(j, s, "dequantizer");
}

}  // namespace detail

/// Precomputed expansion of <n|D(s, Omega)|m> into K elements at j3 = 0..2j.
class Dequantizer {
 public:
  explicit Dequantizer(HalfInteger j) : j_(j) {
    if (j.twice < 0) throw InvalidInput("Dequantizer: j must be >= 0");
    const int dim = j.twice + 1;
    terms_.resize(static_cast<std::size_t>(dim * dim * dim));
    for (int si = 0; si < dim; ++si)
      for (int ni = 0; ni < dim; ++ni)
        for (int mi = 0; mi < dim; ++mi) {
          const HalfInteger s{j.twice - 2 * si}, n{j.twice - 2 * ni}, m{j.twice - 2 * mi};
          terms_[slot(si, ni, mi)] = expand(j, n, m, s);
        }
  }

  HalfInteger j() const noexcept { return j_; }
  int dim() const noexcept { return j_.twice + 1; }

  /// Row/column index i carries projection j - i.
  Eigen::MatrixXcd matrix(int s_index, const EulerAngles& omega) const {
    const int d = dim();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int ni = 0; ni < d; ++ni)
      for (int mi = 0; mi < d; ++mi) {
        cplx v = 0;
        for (const Term& t : terms_[slot(s_index, ni, mi)])
          v += t.coefficient * std::conj(wigner_K(t.j3, HalfInteger{0}, t.projection, omega));
        out(ni, mi) = v;
      }
    return out;
  }

  cplx element(HalfInteger n, HalfInteger m, HalfInteger s, const EulerAngles& omega) const {
    detail::check_spin_indices(j_, n, m, s);
    const auto idx = [&](HalfInteger p) { return (j_.twice - p.twice) / 2; };
    cplx v = 0;
    for (const Term& t : terms_[slot(idx(s), idx(n), idx(m))])
      v += t.coefficient * std::conj(wigner_K(t.j3, HalfInteger{0}, t.projection, omega));
    return v;
  }

 private:
  struct Term {
    HalfInteger j3;
    HalfInteger projection;  // n - m
    double coefficient;
  };

  std::size_t slot(int si, int ni, int mi) const {
    const auto d = static_cast<std::size_t>(dim());
    return (static_cast<std::size_t>(si) * d + static_cast<std::size_t>(ni)) * d + static_cast<std::size_t>(mi);
  }

  // (-1)^{2j-s-n}/(8 pi^2) sum_j3 (2j3+1)^2 conj(<j3,0|K|j3,n-m>) (j j j3; n -m k)(j j j3; s -s 0), k = m - n
  static std::vector<Term> expand(HalfInteger j, HalfInteger n, HalfInteger m, HalfInteger s) {
    std::vector<Term> out;
    const HalfInteger k = m - n;
    // 2j - s - n is an integer
    const double sign = ((j.twice - (s.twice + n.twice) / 2) % 2 == 0) ? 1.0 : -1.0;
    for (int j3 = 0; j3 <= j.twice; ++j3) {
      const HalfInteger J3 = HalfInteger::from_int(j3);
      if (std::abs(k.twice) > J3.twice) continue;
      const double w1 = wigner_3j(j, j, J3, n, -m, k);
      const double w2 = wigner_3j(j, j, J3, s, -s, HalfInteger{0});
      const double c = sign * (2.0 * j3 + 1.0) * (2.0 * j3 + 1.0) * w1 * w2 / (8.0 * std::numbers::pi * std::numbers::pi);
      if (c != 0.0) out.push_back(Term{J3, n - m, c});
    }
    return out;
  }

  HalfInteger j_;
  std::vector<std::vector<Term>> terms_;
};

/// Single dequantizer element <n|D(s, omega)|m>.
inline cplx dequantizer_element(HalfInteger j, HalfInteger n, HalfInteger m, HalfInteger s,
                                const EulerAngles& omega) {
  detail::check_spin_indices(j, n, m, s);
  return Dequantizer(j).element(n, m, s, omega);
}

using TomogramFn = std::function<double(HalfInteger, const EulerAngles&)>;

struct Reconstruction {
  Eigen::MatrixXcd rho;
  double hermiticity_residual = 0.0;  // max |rho - rho^dagger|
  double trace_residual = 0.0;        // |tr rho - 1|
  double min_eigenvalue = 0.0;
  double refinement_residual = 0.0;   // max |rho(N) - rho(N+1)|
};

namespace detail {

inline Eigen::MatrixXcd integrate_dequantizer(const TomogramFn& tomogram, const Dequantizer& deq,
                                              const QuadratureSpec& spec) {
  const EulerGrid grid(spec);
  const int d = deq.dim();
  const std::size_t psi_count = grid.psi.nodes.size();
  std::vector<Eigen::MatrixXcd> partial(psi_count, Eigen::MatrixXcd::Zero(d, d));
  parallel_for(psi_count, [&](std::size_t ip) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t ia = 0; ia < grid.phi.nodes.size(); ++ia)
      for (std::size_t it = 0; it < grid.theta.nodes.size(); ++it) {
        const EulerAngles omega{grid.phi.nodes[ia], grid.psi.nodes[ip], grid.theta.nodes[it]};
        const double w = grid.phi.weights[ia] * grid.theta.weights[it];
        for (int si = 0; si < d; ++si) {
          const double p = tomogram(HalfInteger{deq.j().twice - 2 * si}, omega);
          acc += (w * p) * deq.matrix(si, omega);
        }
      }
    partial[ip] = grid.psi.weights[ip] * acc;
  });
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& m : partial) rho += m;
  return rho;
}

}  // namespace detail

/// Reconstructs rho and checks it against a one-node-finer quadrature. Throws
/// AccuracyError when the Hermiticity or refinement residual exceeds `tol`.
inline Reconstruction reconstruct_spin(const TomogramFn& tomogram, HalfInteger j,
                                       const QuadratureSpec& spec = {}, double tol = kReconstructionTolerance) {
  spec.validate();
  const Dequantizer deq(j);
  Reconstruction r;
  r.rho = detail::integrate_dequantizer(tomogram, deq, spec);
  const Eigen::MatrixXcd finer = detail::integrate_dequantizer(tomogram, deq, spec.refined());
  r.hermiticity_residual = (r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff();
  r.trace_residual = std::abs(r.rho.trace() - cplx(1.0));
  r.refinement_residual = (r.rho - finer).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd herm = 0.5 * (r.rho + r.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  r.min_eigenvalue = eig.eigenvalues().minCoeff();
  const double worst = std::max(r.hermiticity_residual, r.refinement_residual);
  if (!(worst <= tol)) throw AccuracyError("reconstruct_spin: quadrature under-resolved", worst);
  return r;
}

/// Reconstruction when only the sampled grid is available (no refinement check).
inline Reconstruction reconstruct_spin_fixed(const TomogramFn& tomogram, HalfInteger j, const QuadratureSpec& spec,
                                             double tol = kReconstructionTolerance) {
  spec.validate();
  const Dequantizer deq(j);
  Reconstruction r;
  r.rho = detail::integrate_dequantizer(tomogram, deq, spec);
  r.hermiticity_residual = (r.rho - r.rho.adjoint()).cwiseAbs().maxCoeff();
  r.trace_residual = std::abs(r.rho.trace() - cplx(1.0));
  const Eigen::MatrixXcd herm = 0.5 * (r.rho + r.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  r.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (!(r.hermiticity_residual <= tol))
    throw AccuracyError("reconstruct_spin: Hermiticity residual too large", r.hermiticity_residual);
  return r;
}

/// Tomogram <s|K rho K^dagger|s> of an arbitrary density matrix.
inline TomogramFn tomogram_of(const Eigen::MatrixXcd& rho, HalfInteger j) {
  if (rho.rows() != j.twice + 1 || rho.cols() != rho.rows())
    throw InvalidInput("tomogram_of: matrix dimension must be 2j + 1");
  return [rho, j](HalfInteger s, const EulerAngles& omega) {
    const Eigen::MatrixXcd k = rotation_matrix(j, omega);
    const Eigen::Index row = (j.twice - s.twice) / 2;
    const Eigen::VectorXcd r = k.row(row).transpose();
    // <s|K rho K^dagger|s> = sum_ab K_sa rho_ab conj(K_sb)
    return (r.transpose() * rho * r.conjugate())(0, 0).real();
  };
}

/// <psi|rho|psi> for a normalized pure target.
inline double fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi) {
  if (psi.size() != rho.rows()) throw InvalidInput("fidelity: dimension mismatch");
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

// ---------------------------------------------------------------------------
// Sampled tomograms (CSV rows s,phi,psi,theta,p)
// ---------------------------------------------------------------------------

class SampledTomogram {
 public:
  struct Row {
    HalfInteger s;
    double phi, psi, theta, p;
  };

  static SampledTomogram parse(std::istream& in) {
    SampledTomogram t;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
        continue;
      if (!header_seen) {
        header_seen = true;
        if (line.find_first_of("abcdefghijklmnopqrstuvwxyz") != std::string::npos) {
          std::string compact;
          for (char ch : line)
            if (ch != ' ' && ch != '\t') compact += ch;
          if (compact != "s,phi,psi,theta,p") throw ParseError("expected header 's,phi,psi,theta,p'", line_no);
          continue;
        }
      }
      t.rows_.push_back(parse_row(line, line_no));
    }
    if (t.rows_.empty()) throw ParseError("no tomogram samples", line_no == 0 ? 1 : line_no);
    t.index();
    return t;
  }

  static SampledTomogram parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  const std::vector<Row>& rows() const noexcept { return rows_; }
  HalfInteger j() const noexcept { return j_; }
  const QuadratureSpec& spec() const noexcept { return spec_; }

  double operator()(HalfInteger s, const EulerAngles& omega) const {
    const auto key = std::make_tuple(s.twice, locate(phis_, omega.phi), locate(psis_, omega.psi),
                                     locate(thetas_, omega.theta));
    const auto it = values_.find(key);
    if (it == values_.end()) throw InvalidInput("SampledTomogram: no sample at the requested node");
    return it->second;
  }

  TomogramFn function() const {
    return [self = *this](HalfInteger s, const EulerAngles& omega) { return self(s, omega); };
  }

 private:
  static Row parse_row(const std::string& line, std::size_t line_no) {
    std::vector<double> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
        fields.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("not a number: '" + cell + "'", line_no);
      }
    }
    if (fields.size() != 5) throw ParseError("expected 5 fields s,phi,psi,theta,p", line_no);
    const double twice = 2.0 * fields[0];
    if (std::abs(twice - std::round(twice)) > 1e-9) throw ParseError("s must be a half-integer", line_no);
    for (double v : fields)
      if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
    return Row{HalfInteger{static_cast<int>(std::lround(twice))}, fields[1], fields[2], fields[3], fields[4]};
  }

  static std::vector<double> distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
      if (out.empty() || std::abs(x - out.back()) > 1e-9) out.push_back(x);
    return out;
  }

  static int locate(const std::vector<double>& grid, double x) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), x - 1e-9);
    if (it == grid.end() || std::abs(*it - x) > 1e-9) return -1;
    return static_cast<int>(it - grid.begin());
  }

  void index() {
    std::vector<double> ph, ps, th;
    int max_twice = 0;
    for (const Row& r : rows_) {
      ph.push_back(r.phi);
      ps.push_back(r.psi);
      th.push_back(r.theta);
      max_twice = std::max(max_twice, std::abs(r.s.twice));
    }
    phis_ = distinct(ph);
    psis_ = distinct(ps);
    thetas_ = distinct(th);
    j_ = HalfInteger{max_twice};
    spec_ = QuadratureSpec{static_cast<int>(phis_.size()), static_cast<int>(psis_.size()),
                           static_cast<int>(thetas_.size())};
    if (spec_.phi_nodes < 2 || spec_.psi_nodes < 2 || spec_.theta_nodes < 2)
      throw ParseError("sample grid needs at least 2 distinct values per angle", rows_.size());

    const EulerGrid grid(spec_);
    auto check = [](const std::vector<double>& got, const std::vector<double>& want, const char* axis) {
      for (std::size_t i = 0; i < got.size(); ++i)
        if (std::abs(got[i] - want[i]) > 1e-9)
          throw InvalidInput(std::string("SampledTomogram: ") + axis + " samples are not quadrature nodes");
    };
    check(phis_, grid.phi.nodes, "phi");
    check(psis_, grid.psi.nodes, "psi");
    check(thetas_, grid.theta.nodes, "theta");

    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Row& r = rows_[i];
      const auto key = std::make_tuple(r.s.twice, locate(phis_, r.phi), locate(psis_, r.psi), locate(thetas_, r.theta));
      if (!values_.emplace(key, r.p).second) throw ParseError("duplicate sample", i + 1);
    }
    const std::size_t expected = static_cast<std::size_t>(j_.twice + 1) * phis_.size() * psis_.size() * thetas_.size();
    if (values_.size() != expected) throw InvalidInput("SampledTomogram: sample grid is incomplete");
  }

  std::vector<Row> rows_;
  std::vector<double> phis_, psis_, thetas_;
  std::map<std::tuple<int, int, int, int>, double> values_;
  HalfInteger j_{};
  QuadratureSpec spec_;
};

/// Writes the tomogram of `fn` at the nodes of `spec` as CSV.
inline std::string sample_tomogram_csv(const TomogramFn& fn, HalfInteger j, const QuadratureSpec& spec) {
  const EulerGrid grid(spec);
  std::ostringstream out;
  out.precision(17);
  out << "s,phi,psi,theta,p\n";
  for (int si = 0; si <= j.twice; ++si) {
    const HalfInteger s{j.twice - 2 * si};
    for (double phi : grid.phi.nodes)
      for (double psi : grid.psi.nodes)
        for (double theta : grid.theta.nodes)
          out << s.value() << ',' << phi << ',' << psi << ',' << theta << ',' << fn(s, EulerAngles{phi, psi, theta})
              << '\n';
  }
  return out.str();
}

}  // namespace belltomo

#endif  // BELLTOMO_RECONSTRUCT_HPP
