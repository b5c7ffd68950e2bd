#pragma once

// Quantum mechanics on a closed timelike curve, two-rail model.
//
// Wiring: a unitary U acts on rail 1 (chronology-respecting input) and
// rail 2 (the CTC-borne system emerging from the past mouth). Rail 1's
// output enters the future mouth and *is* the rail-2 input; rail 2's output
// goes to the detector. Composing U with SWAP gives the uncrossed convention.
//
// Deutsch boundary condition:
//   rho      = Tr_2[ U (rho_in ⊗ rho) U† ]      (consistency)
//   rho_out  = Tr_1[ U (rho_in ⊗ rho) U† ]      (output)
//
// Post-selected (path-integral) boundary condition: the rail contraction
//   <b|C|a> = (1/d) Σ_j <j, b| U |a, j>
// followed by renormalization. A vanishing norm means no consistent history.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ctcsim/errors.hpp"
#include "ctcsim/linalg.hpp"
#include "ctcsim/quantum.hpp"

namespace ctcsim {

inline constexpr double kDefaultParadoxEps = 1e-12;

class CtcWiring {
 public:
  explicit CtcWiring(UnitaryGate u) : unitary_(std::move(u)) {
    const auto& dims = unitary_.shape().dims;
    if (dims.size() != 2) throw ShapeMismatch("CTC wiring needs a two-rail unitary");
    if (dims[0] != dims[1])
      throw ShapeMismatch("CTC rails must have equal dimension (the same system cycles)");
  }

  const UnitaryGate& unitary() const noexcept { return unitary_; }
  std::size_t rail_dim() const noexcept { return unitary_.shape().dims[0]; }

 private:
  UnitaryGate unitary_;
};

enum class CtcMethod { deutsch_iterative, deutsch_nullspace, pctc };

inline std::string_view to_string(CtcMethod m) {
  switch (m) {
    case CtcMethod::deutsch_iterative: return "deutsch_iterative";
    case CtcMethod::deutsch_nullspace: return "deutsch_nullspace";
    case CtcMethod::pctc: return "pctc";
  }
  return "?";
}

enum class FallbackStage { none, damped, cesaro };

inline std::string_view to_string(FallbackStage s) {
  switch (s) {
    case FallbackStage::none: return "none";
    case FallbackStage::damped: return "damped";
    case FallbackStage::cesaro: return "cesaro";
  }
  return "?";
}

struct IterationOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  double damping = 1.0;
  // Window over which a non-decreasing residual triggers the next fallback.
  std::size_t oscillation_window = 50;
};

struct CtcSolution {
  DensityOperator fixed_point;
  DensityOperator output;
  CtcMethod method;
  std::size_t iterations = 0;
  double residual = 0.0;  // trace_distance(fixed_point, deutsch_map(fixed_point))
  double damping = 1.0;
  FallbackStage fallback = FallbackStage::none;
  // Ratio of the last two residuals; close to 1 flags slow convergence.
  double contraction_rate = 0.0;
  // Nullspace solver only: affine dimension of the Hermitian unit-trace
  // fixed-point set (0 means unique).
  std::optional<std::size_t> fixed_point_set_dimension;
  // Nullspace solver only: entropy ascent stalled and the iterative
  // solution was substituted as the selected fixed point.
  bool max_entropy_fallback = false;
};

namespace detail {

inline void require_rail(const DensityOperator& rho, const CtcWiring& w, const char* what) {
  if (rho.dim() != w.rail_dim())
    throw ShapeMismatch(std::string(what) + " has dimension " + std::to_string(rho.dim()) +
                        ", wiring rail dimension is " + std::to_string(w.rail_dim()));
}

inline Matrix joint_evolution(const Matrix& rho_in, const Matrix& rho, const CtcWiring& w) {
  const Matrix& u = w.unitary().matrix();
  return u * kron(rho_in, rho) * u.adjoint();
}

// Linear in `rho`; accepts any square matrix so the map can be vectorized.
inline Matrix rail1_marginal(const Matrix& rho_in, const Matrix& rho, const CtcWiring& w) {
  return partial_trace(joint_evolution(rho_in, rho, w), w.unitary().shape(), 1);
}

inline Matrix rail2_marginal(const Matrix& rho_in, const Matrix& rho, const CtcWiring& w) {
  return partial_trace(joint_evolution(rho_in, rho, w), w.unitary().shape(), 0);
}

inline double trace_norm_hermitian(const Matrix& m) {
  double s = 0.0;
  for (double l : eigvals_hermitian(0.5 * (m + m.adjoint()))) s += std::abs(l);
  return s;
}

// Orthonormal (Hilbert-Schmidt) basis of d×d Hermitian matrices: the
// diagonal units, then symmetric and antisymmetric off-diagonal pairs.
inline std::vector<Matrix> hermitian_basis(std::size_t d) {
  std::vector<Matrix> basis;
  basis.reserve(d * d);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix m(d, d);
    m(i, i) = 1.0;
    basis.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Matrix s(d, d), a(d, d);
      s(i, j) = h;
      s(j, i) = h;
      a(i, j) = Complex(0.0, -h);
      a(j, i) = Complex(0.0, h);
      basis.push_back(std::move(s));
      basis.push_back(std::move(a));
    }
  return basis;
}

inline Matrix from_coefficients(const std::vector<Matrix>& basis, const std::vector<double>& x) {
  Matrix m(basis.front().rows(), basis.front().cols());
  for (std::size_t b = 0; b < basis.size(); ++b)
    if (x[b] != 0.0) m += basis[b] * x[b];
  return m;
}

inline double min_eigenvalue(const Matrix& m) { return eigvals_hermitian(m).front(); }

}  // namespace detail

// Right-hand side of the consistency equation.
inline DensityOperator deutsch_map(const DensityOperator& rho_in, const DensityOperator& rho,
                                   const CtcWiring& w) {
  detail::require_rail(rho_in, w, "rho_in");
  detail::require_rail(rho, w, "rho");
  return DensityOperator::sanitized(detail::rail1_marginal(rho_in.matrix(), rho.matrix(), w),
                                    rho.shape());
}

// Detector state given a CTC-borne state `rho`.
inline DensityOperator deutsch_output(const DensityOperator& rho_in, const DensityOperator& rho,
                                      const CtcWiring& w) {
  detail::require_rail(rho_in, w, "rho_in");
  detail::require_rail(rho, w, "rho");
  return DensityOperator::sanitized(detail::rail2_marginal(rho_in.matrix(), rho.matrix(), w),
                                    rho_in.shape());
}

// Equivalent-circuit iteration from the maximally mixed state:
//   rho_{n+1} = (1 - λ) rho_n + λ M(rho_n),   M = deutsch_map(rho_in, ·).
// If the residual fails to fall over a window, damping drops to λ = 0.5 and
// then to Cesàro averaging of the iterates.
inline CtcSolution solve_deutsch_iterative(const DensityOperator& rho_in, const CtcWiring& w,
                                           const IterationOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0))
    throw std::invalid_argument("damping must lie in (0, 1]");
  if (opts.oscillation_window == 0) throw std::invalid_argument("oscillation_window must be positive");
  detail::require_rail(rho_in, w, "rho_in");

  const std::size_t d = w.rail_dim();
  const Matrix& in = rho_in.matrix();
  const auto map = [&](const Matrix& x) { return detail::rail1_marginal(in, x, w); };

  Matrix rho = Matrix::identity(d) * (1.0 / static_cast<double>(d));
  Matrix cesaro_sum(d, d);
  std::size_t cesaro_count = 0;
  double lambda = opts.damping;
  FallbackStage stage = FallbackStage::none;
  std::vector<double> history;
  std::size_t window_start = 0;

  for (std::size_t it = 0; it <= opts.max_iter; ++it) {
    const Matrix current =
        stage == FallbackStage::cesaro && cesaro_count > 0 ? cesaro_sum * (1.0 / cesaro_count) : rho;
    const Matrix mapped = map(current);
    const double r = 0.5 * detail::trace_norm_hermitian(mapped - current);
    history.push_back(r);

    if (r < opts.tol) {
      const DensityOperator fixed = DensityOperator::sanitized(current, rho_in.shape());
      CtcSolution sol{.fixed_point = fixed, .output = deutsch_output(rho_in, fixed, w), .method = CtcMethod::deutsch_iterative};
      sol.iterations = it;
      sol.residual = trace_distance(fixed, deutsch_map(rho_in, fixed, w));
      sol.damping = lambda;
      sol.fallback = stage;
      sol.contraction_rate =
          history.size() >= 2 && history[history.size() - 2] > 0.0
              ? history.back() / history[history.size() - 2]
              : 0.0;
      return sol;
    }
    if (it == opts.max_iter) break;

    if (history.size() - window_start > opts.oscillation_window) {
      if (r >= history[window_start] && stage != FallbackStage::cesaro) {
        if (stage == FallbackStage::none && lambda > 0.5) {
          stage = FallbackStage::damped;
          lambda = 0.5;
        } else {
          stage = FallbackStage::cesaro;
          cesaro_sum = Matrix(d, d);
          cesaro_count = 0;
        }
      }
      window_start = history.size() - 1;
    }

    // Outside the Cesàro stage `current` is `rho`, so its image is already known.
    const Matrix image = stage == FallbackStage::cesaro ? map(rho) : mapped;
    const Matrix next = (1.0 - lambda) * rho + lambda * image;
    rho = 0.5 * (next + next.adjoint());
    if (stage == FallbackStage::cesaro) {
      cesaro_sum += rho;
      ++cesaro_count;
    }
  }

  std::ostringstream os;
  os << "Deutsch iteration did not converge within " << opts.max_iter
     << " iterations (last residual " << history.back() << ", fallback stage "
     << to_string(stage) << ")";
  throw NonConvergence(os.str(), history.back(), opts.max_iter);
}

struct NullspaceOptions {
  double tol = 1e-10;
  // Singular values of (L - I) below this count toward the fixed-point space.
  double null_threshold = 1e-7;
  std::size_t max_ascent_steps = 5000;
  IterationOptions fallback{};
};

// Vectorizes M(rho) = Tr_2[U (rho_in ⊗ rho) U†] in a real Hermitian basis,
// finds the eigenvalue-1 eigenspace, intersects it with the unit-trace
// hyperplane, and selects the member of maximum von Neumann entropy.
inline CtcSolution solve_deutsch_nullspace(const DensityOperator& rho_in, const CtcWiring& w,
                                           const NullspaceOptions& opts = {}) {
  detail::require_rail(rho_in, w, "rho_in");
  const std::size_t d = w.rail_dim();
  const std::size_t n = d * d;
  const auto basis = detail::hermitian_basis(d);
  const Matrix& in = rho_in.matrix();

  // A = L - I with L_ab = Tr(B_a M(B_b)).
  std::vector<double> a(n * n);
  for (std::size_t b = 0; b < n; ++b) {
    const Matrix image = detail::rail1_marginal(in, basis[b], w);
    for (std::size_t r = 0; r < n; ++r)
      a[r * n + b] = hs_inner(basis[r], image).real() - (r == b ? 1.0 : 0.0);
  }
  Matrix ata(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a[k * n + i] * a[k * n + j];
      ata(i, j) = s;
    }
  const auto eig = eig_hermitian(ata);
  const double thresh = opts.null_threshold * opts.null_threshold;
  std::size_t nullity = 0;
  while (nullity < n && eig.values[nullity] <= thresh) ++nullity;
  nullity = std::max<std::size_t>(nullity, 1);  // existence is guaranteed

  // Null-space basis vectors (columns of V are real up to a phase per column).
  std::vector<std::vector<double>> null_vecs(nullity, std::vector<double>(n));
  for (std::size_t k = 0; k < nullity; ++k) {
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(eig.vectors(i, k)) > std::abs(eig.vectors(pivot, k))) pivot = i;
    const Complex phase = std::conj(eig.vectors(pivot, k)) / std::abs(eig.vectors(pivot, k));
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      null_vecs[k][i] = (eig.vectors(i, k) * phase).real();
      norm += null_vecs[k][i] * null_vecs[k][i];
    }
    norm = std::sqrt(norm);
    for (auto& x : null_vecs[k]) x /= norm;
  }
  // Re-orthonormalize (phase removal can perturb orthogonality slightly).
  for (std::size_t k = 0; k < nullity; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      double p = 0.0;
      for (std::size_t i = 0; i < n; ++i) p += null_vecs[j][i] * null_vecs[k][i];
      for (std::size_t i = 0; i < n; ++i) null_vecs[k][i] -= p * null_vecs[j][i];
    }
    double norm = 0.0;
    for (double x : null_vecs[k]) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : null_vecs[k]) x /= norm;
  }

  // Trace functional in coefficient space: only the diagonal units carry trace.
  std::vector<double> tau(n, 0.0);
  for (std::size_t i = 0; i < d; ++i) tau[i] = 1.0;
  std::vector<double> wvec(nullity);  // N^T tau
  for (std::size_t k = 0; k < nullity; ++k)
    for (std::size_t i = 0; i < n; ++i) wvec[k] += null_vecs[k][i] * tau[i];
  double wnorm2 = 0.0;
  for (double x : wvec) wnorm2 += x * x;
  if (!(wnorm2 > 1e-20)) throw std::runtime_error("fixed-point space has no unit-trace member");

  // Minimum-norm point of the unit-trace slice: the projection of I/d.
  std::vector<double> x0(n, 0.0);
  for (std::size_t k = 0; k < nullity; ++k)
    for (std::size_t i = 0; i < n; ++i) x0[i] += null_vecs[k][i] * wvec[k] / wnorm2;

  // Traceless directions inside the null space.
  std::vector<std::vector<double>> dirs;
  for (std::size_t e = 0; e < nullity && dirs.size() + 1 < nullity; ++e) {
    std::vector<double> c(nullity, 0.0);
    c[e] = 1.0;
    const auto orth = [&](std::vector<double>& v, const std::vector<double>& u) {
      double p = 0.0, uu = 0.0;
      for (std::size_t i = 0; i < nullity; ++i) {
        p += v[i] * u[i];
        uu += u[i] * u[i];
      }
      for (std::size_t i = 0; i < nullity; ++i) v[i] -= p / uu * u[i];
    };
    orth(c, wvec);
    for (const auto& dv : dirs) orth(c, dv);
    double norm = 0.0;
    for (double x : c) norm += x * x;
    if (norm < 1e-12) continue;
    norm = std::sqrt(norm);
    for (auto& x : c) x /= norm;
    dirs.push_back(std::move(c));
  }
  const std::size_t free_dims = nullity - 1;

  std::vector<Matrix> dir_mats;
  for (const auto& c : dirs) {
    std::vector<double> coeff(n, 0.0);
    for (std::size_t k = 0; k < nullity; ++k)
      for (std::size_t i = 0; i < n; ++i) coeff[i] += null_vecs[k][i] * c[k];
    dir_mats.push_back(detail::from_coefficients(basis, coeff));
  }
  const Matrix base = detail::from_coefficients(basis, x0);
  const auto point = [&](const std::vector<double>& y) {
    Matrix m = base;
    for (std::size_t i = 0; i < y.size(); ++i) m += dir_mats[i] * y[i];
    return m;
  };
  const auto entropy_nats = [](const Matrix& m) {
    double s = 0.0;
    for (double l : eigvals_hermitian(m))
      if (l > 0.0) s -= l * std::log(l);
    return s;
  };

  std::vector<double> y(dir_mats.size(), 0.0);
  Matrix x = point(y);
  bool ok = true;

  if (detail::min_eigenvalue(x) < -1e-12) {
    // Alternating projections between the PSD unit-trace set and the slice.
    ok = false;
    for (int rep = 0; rep < 500 && !ok; ++rep) {
      Matrix p = hermitian_function(x, [](double l) { return l > 0.0 ? l : 0.0; });
      p *= 1.0 / p.trace().real();
      const Matrix delta = p - base;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = hs_inner(dir_mats[i], delta).real();
      x = point(y);
      ok = detail::min_eigenvalue(x) >= -1e-12;
    }
  }

  bool converged = free_dims == 0;
  if (ok && free_dims > 0) {
    double s = entropy_nats(x);
    double step = 1.0;
    for (std::size_t iter = 0; iter < opts.max_ascent_steps; ++iter) {
      const Matrix logx = hermitian_function(x, [](double l) { return std::log(std::max(l, 1e-300)); });
      std::vector<double> g(y.size());
      double gnorm2 = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        g[i] = -hs_inner(logx, dir_mats[i]).real();
        gnorm2 += g[i] * g[i];
      }
      if (std::sqrt(gnorm2) < 1e-9) {
        converged = true;
        break;
      }
      bool moved = false;
      step = std::min(1.0, step * 4.0);
      for (int k = 0; k < 80; ++k, step *= 0.5) {
        std::vector<double> yn = y;
        for (std::size_t i = 0; i < y.size(); ++i) yn[i] += step * g[i];
        const Matrix xn = point(yn);
        if (detail::min_eigenvalue(xn) < 0.0) continue;
        const double sn = entropy_nats(xn);
        if (sn >= s + 1e-4 * step * gnorm2) {
          y = std::move(yn);
          x = xn;
          const double gain = sn - s;
          s = sn;
          moved = true;
          if (gain < 1e-16) converged = true;
          break;
        }
      }
      if (!moved || converged) break;
    }
  }

  CtcSolution sol{.fixed_point = DensityOperator::maximally_mixed(rho_in.shape()),
                  .output = DensityOperator::maximally_mixed(rho_in.shape()),
                  .method = CtcMethod::deutsch_nullspace};
  sol.fixed_point_set_dimension = free_dims;
  if (ok && converged) {
    sol.fixed_point = DensityOperator::sanitized(x, rho_in.shape());
  } else {
    IterationOptions it = opts.fallback;
    it.tol = opts.tol;
    const auto iterative = solve_deutsch_iterative(rho_in, w, it);
    sol.fixed_point = iterative.fixed_point;
    sol.iterations = iterative.iterations;
    sol.max_entropy_fallback = true;
  }
  sol.output = deutsch_output(rho_in, sol.fixed_point, w);
  sol.residual = trace_distance(sol.fixed_point, deutsch_map(rho_in, sol.fixed_point, w));
  return sol;
}

// Effective (generally non-unitary) operator on the chronology-respecting
// system, normalized so that U = SWAP gives the identity.
inline Matrix pctc_operator(const CtcWiring& w) {
  const std::size_t d = w.rail_dim();
  const Matrix& u = w.unitary().matrix();
  Matrix c(d, d);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t a = 0; a < d; ++a) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += u(j * d + b, a * d + j);
      c(b, a) = s / static_cast<double>(d);
    }
  return c;
}

template <typename State>
struct PctcResult {
  State state;
  // Pre-normalization weight ||C psi||^2 (or Tr C rho C†): relative
  // likelihood of the consistent history.
  double consistency_weight;
};

namespace detail {

inline void check_weight(double weight, double eps) {
  if (!(weight >= eps)) {
    std::ostringstream os;
    os << "post-selected CTC: consistency weight " << weight << " is below " << eps
       << "; the history is inconsistent and suppressed";
    throw ParadoxError(os.str(), weight);
  }
}

}  // namespace detail

inline PctcResult<PureState> apply_pctc(const PureState& psi, const CtcWiring& w,
                                        double paradox_eps = kDefaultParadoxEps) {
  if (psi.dim() != w.rail_dim()) throw ShapeMismatch("state does not match the CTC rail dimension");
  auto v = pctc_operator(w) * psi.amplitudes();
  double weight = 0.0;
  for (const auto& z : v) weight += std::norm(z);
  detail::check_weight(weight, paradox_eps);
  return {PureState::normalized(std::move(v), psi.shape()), weight};
}

inline PctcResult<DensityOperator> apply_pctc(const DensityOperator& rho, const CtcWiring& w,
                                              double paradox_eps = kDefaultParadoxEps) {
  detail::require_rail(rho, w, "state");
  const Matrix c = pctc_operator(w);
  const Matrix out = c * rho.matrix() * c.adjoint();
  const double weight = out.trace().real();
  detail::check_weight(weight, paradox_eps);
  return {DensityOperator::sanitized(out, rho.shape()), weight};
}

struct EntangledCtcResult {
  DensityOperator state;
  double consistency_weight = 1.0;            // pctc only
  std::optional<DensityOperator> fixed_point;  // deutsch only
};

namespace detail {

// Reorders a bipartite operator from (A, B) to (B, A).
inline Matrix swap_factors(const Matrix& m, std::size_t da, std::size_t db) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t ap = 0; ap < da; ++ap)
        for (std::size_t bp = 0; bp < db; ++bp)
          out(b * da + a, bp * da + ap) = m(a * db + b, ap * db + bp);
  return out;
}

}  // namespace detail

// Sends factor `ctc_on` of a bipartite state through the CTC while the other
// factor is untouched.
inline EntangledCtcResult extend_to_entangled(const DensityOperator& joint, std::size_t ctc_on,
                                              const CtcWiring& w, CtcMethod method,
                                              const IterationOptions& opts = {},
                                              double paradox_eps = kDefaultParadoxEps) {
  const auto& dims = joint.shape().dims;
  if (dims.size() != 2) throw ShapeMismatch("extend_to_entangled needs a bipartite state");
  if (ctc_on > 1) throw ShapeMismatch("ctc_on must be 0 or 1");
  if (dims[ctc_on] != w.rail_dim())
    throw ShapeMismatch("CTC subsystem dimension does not match the wiring");

  const std::size_t d_keep = dims[1 - ctc_on];
  const std::size_t d = w.rail_dim();
  // Work with the CTC subsystem last.
  const Matrix m = ctc_on == 1 ? joint.matrix() : detail::swap_factors(joint.matrix(), dims[0], dims[1]);
  const SubsystemShape work_shape{d_keep, d};
  const auto restore = [&](const Matrix& x) {
    return ctc_on == 1 ? x : detail::swap_factors(x, d_keep, d);
  };

  if (method == CtcMethod::pctc) {
    const Matrix op = kron(Matrix::identity(d_keep), pctc_operator(w));
    const Matrix out = op * m * op.adjoint();
    const double weight = out.trace().real();
    detail::check_weight(weight, paradox_eps);
    return {DensityOperator::sanitized(restore(out), joint.shape()), weight, std::nullopt};
  }

  const DensityOperator rho_b =
      DensityOperator::sanitized(partial_trace(m, work_shape, 0), SubsystemShape{d});
  const CtcSolution sol = method == CtcMethod::deutsch_nullspace
                              ? solve_deutsch_nullspace(rho_b, w, NullspaceOptions{opts.tol})
                              : solve_deutsch_iterative(rho_b, w, opts);

  // Stinespring form of σ ↦ Tr_1[U (σ ⊗ rho*) U†] on the last factor.
  const Matrix big = kron(m, sol.fixed_point.matrix());
  const Matrix ub = kron(Matrix::identity(d_keep), w.unitary().matrix());
  const Matrix evolved = ub * big * ub.adjoint();
  const Matrix out = partial_trace(evolved, SubsystemShape{d_keep, d, d}, 1);
  return {DensityOperator::sanitized(restore(out), joint.shape()), 1.0, sol.fixed_point};
}

}  // namespace ctcsim
