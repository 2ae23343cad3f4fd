#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsg/sine_gordon.hpp"

namespace lsg {

using Complex = std::complex<double>;
using EnvelopeRow = std::vector<Complex>;

/// Requested group-velocity ratio is not attained by any wavenumber;
/// carries the achievable interval found by scanning.
struct WavenumberRangeError : std::runtime_error {
  double attainable_min = 0.0;
  double attainable_max = 0.0;

  WavenumberRangeError(double lo, double hi)
      : std::runtime_error("no wavenumber attains the requested velocity; achievable range [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]"),
        attainable_min(lo), attainable_max(hi) {}
};

/// Finds k in (0, pi) with group_velocity(k, sigma) equal to the target
/// ratio, by scan plus bisection.  At sigma = 1 the velocity is
/// identically -1 and k = pi/2 is returned by convention.
inline double select_wavenumber(double ratio, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("select_wavenumber: sigma must be positive");
  if (std::abs(sigma - 1.0) < 1e-14) {
    if (std::abs(ratio + 1.0) < 1e-10) return M_PI / 2;
    throw WavenumberRangeError(-1.0, -1.0);
  }
  const int samples = 4000;
  const double k_lo = 1e-9, k_hi = M_PI - 1e-9;
  double prev_k = k_lo, prev_g = group_velocity(prev_k, sigma);
  double g_min = prev_g, g_max = prev_g;
  double a = 0.0, b = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= samples; ++i) {
    const double k = k_lo + (k_hi - k_lo) * i / samples;
    const double g = group_velocity(k, sigma);
    g_min = std::min(g_min, g);
    g_max = std::max(g_max, g);
    if (!bracketed && (prev_g - ratio) * (g - ratio) <= 0.0) {
      a = prev_k;
      b = k;
      bracketed = true;
    }
    prev_k = k;
    prev_g = g;
  }
  if (!bracketed) throw WavenumberRangeError(g_min, g_max);
  double fa = group_velocity(a, sigma) - ratio;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = group_velocity(mid, sigma) - ratio;
    if (fa * fm <= 0.0) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
    if (b - a < 1e-14) break;
  }
  return 0.5 * (a + b);
}

struct ScaleFactors {
  Complex S;
  double theta = 0.0;
  double rho = 0.0;
  double M2 = 0.0;  // real by construction; checked
};

/// The free constant S = rho e^{i theta} making M1 = S Omega [(sigma-1)z
/// + sigma+1] the requested integer, and the induced M2 = S z [(sigma-1)
/// Omega + sigma+1] = omega_{,k} M1.  As printed, the theta/rho pair
/// yields -M1; theta carries an extra pi here so the reconstruction
/// comes out with the right sign.  S is invariant under ell -> ell+1:
/// the (-1)^ell in rho cancels against e^{i ell pi}.
inline ScaleFactors compute_S(int M1, double k, double sigma, int ell = 0) {
  if (M1 == 0) throw std::invalid_argument("compute_S: M1 must be a nonzero integer");
  const double radicand = (sigma * sigma - 1.0) * std::cos(k) + sigma * sigma + 1.0;
  if (radicand <= 0.0) throw std::domain_error("compute_S: degenerate modulus, radicand <= 0");
  ScaleFactors out;
  const Complex z = std::polar(1.0, k);
  const Complex a = (sigma + 1.0) * z + (sigma - 1.0);
  out.theta = M_PI - std::arg(a) + ell * M_PI;
  out.rho = (ell % 2 == 0 ? 1.0 : -1.0) * M1 / std::sqrt(2.0 * radicand);
  out.S = out.rho * std::polar(1.0, out.theta);  // equals -M1 / a
  const Complex b = (sigma - 1.0) * z + (sigma + 1.0);
  const Complex omega_cap = -a / b;
  const Complex m1_check = out.S * omega_cap * b;
  if (std::abs(m1_check - static_cast<double>(M1)) > 1e-10)
    throw std::logic_error("compute_S: M1 reconstruction failed");
  const Complex m2 = out.S * z * ((sigma - 1.0) * omega_cap + (sigma + 1.0));
  if (std::abs(m2.imag()) > 1e-10)
    throw std::logic_error("compute_S: M2 failed reality check");
  out.M2 = m2.real();
  return out;
}

struct NLSCoeffs {
  Complex c1_hat;
  Complex c2_hat;
  double c3_hat = 0.0;
  double combined = 0.0;  // 4 c1_hat + c2_hat, real
};

/// Coefficients of the reduced lattice NLS equation.
inline NLSCoeffs nls_coefficients(double sigma, double k, double q, double M2) {
  const double denom = (sigma * sigma - 1.0) * std::cos(k) + sigma * sigma + 1.0;
  if (std::abs(denom) < 1e-300)
    throw std::domain_error("nls_coefficients: vanishing denominator");
  NLSCoeffs c;
  const Complex i(0.0, 1.0);
  const Complex z = std::polar(1.0, k);
  const double m22 = M2 * M2;
  c.c1_hat = i * m22 * (sigma - 1.0) * ((sigma + 1.0) * z + sigma + 1.0) / (16.0 * sigma);
  c.c2_hat = -i * m22 * (sigma - 1.0) * ((sigma + 1.0) * std::cos(k) + sigma + 1.0) /
             (4.0 * sigma);
  c.c3_hat = 2.0 * std::pow(q, 4) * (sigma * sigma - 1.0) * std::pow(std::sin(k), 3) / denom;
  c.combined = -m22 * (sigma * sigma - 1.0) * std::sin(k) / (4.0 * sigma);
  const Complex direct = 4.0 * c.c1_hat + c.c2_hat;
  if (std::abs(direct - c.combined) > 1e-12 * std::max(1.0, std::abs(c.combined)))
    throw std::logic_error("nls_coefficients: coefficient identity violated");
  return c;
}

struct HarmonicFields {
  std::vector<double> psi0;  // background correction, (q/p)|phi|^2
  EnvelopeRow psi2;          // second harmonic, (q/2p) phi^2
};

inline HarmonicFields harmonic_fields(const EnvelopeRow& phi, const SGParams& params) {
  params.validate();
  const double r = params.q / params.p;
  HarmonicFields h;
  h.psi0.reserve(phi.size());
  h.psi2.reserve(phi.size());
  for (const Complex& v : phi) {
    h.psi0.push_back(r * std::norm(v));
    h.psi2.push_back(0.5 * r * v * v);
  }
  return h;
}

/// One explicit step of the reduced three-point NLS equation, periodic in
/// n2.  dt = 1 advances one coarse time unit; fractional dt is used to
/// supply boundary data on the fine time lattice.
inline EnvelopeRow nls_step(const EnvelopeRow& row, const NLSCoeffs& c, double dt = 1.0) {
  if (row.size() < 3) throw std::invalid_argument("nls_step: need at least 3 points");
  const std::size_t n = row.size();
  EnvelopeRow out(n);
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex lap = row[(j + 1) % n] + row[(j + n - 1) % n] - 2.0 * row[j];
    out[j] = row[j] + i * dt * (c.combined * lap + c.c3_hat * row[j] * std::norm(row[j]));
    if (!std::isfinite(out[j].real()) || !std::isfinite(out[j].imag()))
      throw std::overflow_error("nls_step: envelope overflow");
  }
  return out;
}

/// One step of the five-point form; agrees with nls_step exactly on data
/// that is slow varying of order 2 (the wide samples then reduce to the
/// three-point stencil), and differs by c1_hat times the centered fourth
/// difference otherwise.
inline EnvelopeRow nls_wide_step(const EnvelopeRow& row, const NLSCoeffs& c) {
  if (row.size() < 5) throw std::invalid_argument("nls_wide_step: need at least 5 points");
  const std::size_t n = row.size();
  EnvelopeRow out(n);
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex wide = row[(j + 2) % n] + row[(j + n - 2) % n] - 2.0 * row[j];
    const Complex lap = row[(j + 1) % n] + row[(j + n - 1) % n] - 2.0 * row[j];
    out[j] = row[j] + i * (c.c1_hat * wide + c.c2_hat * lap +
                           c.c3_hat * row[j] * std::norm(row[j]));
  }
  return out;
}

/// Max modulus of the order-epsilon^2 secularity expression over the
/// window, for traveling-wave data psi(n1, m1) = phi(n1 - m1); vanishes
/// when (M1, M2) match the scale factors of compute_S.
inline double residual_order2(const EnvelopeRow& phi, double M1, double M2, double k,
                              double sigma) {
  if (phi.size() < 3) throw std::invalid_argument("residual_order2: need at least 3 points");
  const Complex z = std::polar(1.0, k);
  const auto [a, b] = detail::dispersion_factors(z, sigma);
  const Complex omega_cap = -a / b;
  const Complex cn = M1 * z * ((sigma - 1.0) * omega_cap + (sigma + 1.0));
  const Complex cm = M2 * omega_cap * b;
  double worst = 0.0;
  for (std::size_t x = 1; x + 1 < phi.size(); ++x) {
    // shifting m1 by +-1 moves the traveling-wave argument by -+1
    const Complex r = cn * (phi[x + 1] - phi[x - 1]) + cm * (phi[x - 1] - phi[x + 1]);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

/// Periodic Lagrange cubic through the four nearest samples.
inline Complex cubic_interp_periodic(const EnvelopeRow& arr, double x) {
  if (arr.size() < 4) throw std::invalid_argument("cubic_interp_periodic: need >= 4 points");
  const long len = static_cast<long>(arr.size());
  const double fl = std::floor(x);
  long i = static_cast<long>(fl);
  const double t = x - fl;
  auto wrap = [&](long j) { return static_cast<std::size_t>(((j % len) + len) % len); };
  const Complex f0 = arr[wrap(i - 1)], f1 = arr[wrap(i)], f2 = arr[wrap(i + 1)],
                f3 = arr[wrap(i + 2)];
  // Lagrange basis on nodes -1, 0, 1, 2
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * f0 + w1 * f1 + w2 * f2 + w3 * f3;
}

/// Everything needed to set up one reduction experiment at scale N.
/// finalize() derives the carrier wave, the constant S and the NLS
/// coefficients, and checks the integer scale ratios for consistency.
struct ReductionConfig {
  int N = 8;
  double k = M_PI / 2;
  SGParams params{std::pow(2.0, 0.25), std::pow(2.0, 0.25)};
  int M1 = 1;
  int M2 = -1;
  int ell = 0;
  double amplitude = 0.005;

  // demo profile and comparison geometry (envelope lattice is periodic)
  int env_length = 256;
  double gauss_center = 128.0;
  double gauss_width = 6.0;
  int extract_radius = 40;
  int slow_steps = 2;

  // derived by finalize()
  PlaneWave wave;
  Complex S;
  NLSCoeffs coeffs;
  bool finalized = false;

  double epsilon() const { return 1.0 / N; }

  void finalize() {
    params.validate();
    if (N < 2) throw std::invalid_argument("ReductionConfig: N must be >= 2");
    const double sigma = params.sigma();
    wave = dispersion(k, sigma);
    const double gv = group_velocity(k, sigma);
    if (std::abs(static_cast<double>(M2) / M1 - gv) > 1e-8)
      throw std::invalid_argument(
          "ReductionConfig: M2/M1 must equal the group velocity at k (got " +
          std::to_string(gv) + ")");
    const ScaleFactors sf = compute_S(M1, k, sigma, ell);
    S = sf.S;
    if (std::abs(sf.M2 - M2) > 1e-8)
      throw std::invalid_argument("ReductionConfig: M2 inconsistent with compute_S");
    coeffs = nls_coefficients(sigma, k, params.q, M2);
    finalized = true;
  }
};

/// The stock experiment: sigma = 2, k with group velocity exactly -1,
/// M1 = 1, M2 = -1, small Gaussian envelope.
inline ReductionConfig demo_config(int N) {
  ReductionConfig cfg;
  cfg.N = N;
  cfg.params = {std::pow(2.0, 0.25), std::pow(2.0, 0.25)};
  cfg.k = select_wavenumber(-1.0, cfg.params.sigma());
  cfg.M1 = 1;
  cfg.M2 = -1;
  cfg.finalize();
  return cfg;
}

inline EnvelopeRow gaussian_profile(const ReductionConfig& cfg) {
  EnvelopeRow row(static_cast<std::size_t>(cfg.env_length));
  for (std::size_t j = 0; j < row.size(); ++j) {
    const double d = static_cast<double>(j) - cfg.gauss_center;
    row[j] = cfg.amplitude * std::exp(-d * d / (2.0 * cfg.gauss_width * cfg.gauss_width));
  }
  return row;
}

/// The modulated-wave ansatz at a fine lattice point, given the envelope
/// row valid at this m's slow time.  Slow arguments: n1 = M1 n / N,
/// m1 = M2 m / N, n2 = n1 - m1, m2 = m / N^2 (slow time; the envelope row
/// passed in already carries the m2 dependence).
inline double ansatz_value(long n, long m, const EnvelopeRow& phirow,
                           const ReductionConfig& cfg) {
  const double eps = cfg.epsilon();
  const double n2 = (cfg.M1 * static_cast<double>(n) - cfg.M2 * static_cast<double>(m)) / cfg.N;
  const Complex ph = cubic_interp_periodic(phirow, n2);
  const Complex e = std::polar(1.0, cfg.k * n - cfg.wave.omega * m);
  const double r = cfg.params.q / cfg.params.p;
  const double psi0 = r * std::norm(ph);
  const Complex psi2 = 0.5 * r * ph * ph;
  return cfg.params.background() + eps * eps * psi0 +
         2.0 * std::real(eps * ph * e + eps * eps * psi2 * e * e);
}

struct AnsatzData {
  std::vector<double> initial_row;      // m = 0, n = 0 .. n_count-1
  std::vector<double> boundary_column;  // right edge, m = 0 .. m_count-1
};

/// Initial row plus right-edge boundary column for sg_evolve.  The
/// column's slow-time dependence comes from substepping the reduced NLS
/// equation with dt = 1/N^2 per fine row.
inline AnsatzData build_ansatz(const EnvelopeRow& phi0, const ReductionConfig& cfg,
                               std::size_t n_count, std::size_t m_count) {
  if (!cfg.finalized) throw std::logic_error("build_ansatz: config not finalized");
  if (n_count < 2 || m_count < 1) throw std::invalid_argument("build_ansatz: window too small");
  AnsatzData out;
  out.initial_row.reserve(n_count);
  for (std::size_t n = 0; n < n_count; ++n)
    out.initial_row.push_back(ansatz_value(static_cast<long>(n), 0, phi0, cfg));
  const long n_edge = static_cast<long>(n_count) - 1;
  out.boundary_column.reserve(m_count);
  out.boundary_column.push_back(out.initial_row.back());
  EnvelopeRow ph = phi0;
  const double dt = 1.0 / (static_cast<double>(cfg.N) * cfg.N);
  for (std::size_t m = 1; m < m_count; ++m) {
    ph = nls_step(ph, cfg.coeffs, dt);
    out.boundary_column.push_back(ansatz_value(n_edge, static_cast<long>(m), ph, cfg));
  }
  return out;
}

/// Demodulates the first harmonic with a Hann window of width 2N+1
/// centered on the fine point carrying each coarse index n2, at row m.
/// Returns estimates for n2 in [n2_lo, n2_hi]; throws if any window
/// leaves the field.
inline EnvelopeRow extract_envelope(const Field2D& u, const ReductionConfig& cfg, std::size_t m,
                                    long n2_lo, long n2_hi) {
  if (!cfg.finalized) throw std::logic_error("extract_envelope: config not finalized");
  if (n2_hi < n2_lo) throw std::invalid_argument("extract_envelope: empty range");
  const int N = cfg.N;
  const double bg = cfg.params.background();
  std::vector<double> hann(static_cast<std::size_t>(2 * N + 1));
  double wsum = 0.0;
  for (int j = -N; j <= N; ++j) {
    hann[j + N] = 0.5 * (1.0 + std::cos(M_PI * j / N));
    wsum += hann[j + N];
  }
  EnvelopeRow out;
  out.reserve(static_cast<std::size_t>(n2_hi - n2_lo + 1));
  for (long n2 = n2_lo; n2 <= n2_hi; ++n2) {
    const long nc = std::llround(
        (static_cast<double>(N) * n2 + static_cast<double>(cfg.M2) * m) / cfg.M1);
    if (nc - N < u.n_min || nc + N > u.n_max())
      throw std::out_of_range("extract_envelope: demodulation window exceeds field bounds");
    Complex acc = 0.0;
    for (int j = -N; j <= N; ++j) {
      const double dev = u.at(nc + j, m) - bg;
      acc += hann[j + N] * dev *
             std::polar(1.0, -cfg.k * (nc + j) + cfg.wave.omega * static_cast<double>(m));
    }
    out.push_back(acc / wsum / cfg.epsilon());
  }
  return out;
}

/// Removes the leading curvature bias of the windowed demodulation: the
/// Hann average of a curved envelope overshoots by mu2/2 times its second
/// derivative, independent of N.  Input must carry one extra sample on
/// each side; the output is two entries shorter.
inline EnvelopeRow correct_window_bias(const EnvelopeRow& est, int N, int M1) {
  if (est.size() < 3)
    throw std::invalid_argument("correct_window_bias: need at least three samples");
  double mu2 = 0.0, wsum = 0.0;
  for (int j = -N; j <= N; ++j) {
    const double w = 0.5 * (1.0 + std::cos(M_PI * j / N));
    mu2 += w * static_cast<double>(j) * j;
    wsum += w;
  }
  mu2 /= wsum;
  const double scale = static_cast<double>(M1) * M1 * mu2 / (2.0 * N * N);
  EnvelopeRow out(est.size() - 2);
  for (std::size_t i = 1; i + 1 < est.size(); ++i)
    out[i - 1] = est[i] - scale * (est[i + 1] - 2.0 * est[i] + est[i - 1]);
  return out;
}

struct ValidationPoint {
  int N = 0;
  double error = 0.0;
  std::size_t compared_points = 0;
};

struct ValidationReport {
  std::vector<ValidationPoint> points;
  std::vector<double> ratios;  // e(N_i) / e(N_{i+1})
  bool monotone = false;
};

/// Runs the full comparison at one scale N: build the ansatz, evolve the
/// quad map for T N^2 rows, demodulate, and compare with T steps of the
/// reduced NLS equation.  Returns the sup mismatch normalized by the
/// initial envelope peak.  A margin of T N^2 fine columns adjacent to the
/// boundary-data edge is excluded, as is the demodulation half-width; the
/// raw estimate is corrected for the window's second-moment bias.
inline ValidationPoint validate_single(const ReductionConfig& cfg) {
  if (!cfg.finalized) throw std::logic_error("validate_single: config not finalized");
  const int N = cfg.N;
  const int T = cfg.slow_steps;
  const long m_max = static_cast<long>(T) * N * N;
  const EnvelopeRow phi0 = gaussian_profile(cfg);
  double peak = 0.0;
  for (const Complex& v : phi0) peak = std::max(peak, std::abs(v));
  ValidationPoint pt;
  pt.N = N;
  if (peak == 0.0) return pt;

  const long n2_lo = std::lround(cfg.gauss_center) - cfg.extract_radius;
  const long n2_hi = std::lround(cfg.gauss_center) + cfg.extract_radius;
  // room for the initial packet, the demodulation window, and a margin of
  // T N^2 columns between the comparison region and the boundary edge
  const long n_max = static_cast<long>(N) * n2_hi + m_max + N;

  const AnsatzData data =
      build_ansatz(phi0, cfg, static_cast<std::size_t>(n_max) + 1,
                   static_cast<std::size_t>(m_max) + 1);
  const Field2D u =
      sg_evolve(data.initial_row, data.boundary_column, cfg.params, 0, BoundarySide::Right);

  EnvelopeRow target = phi0;
  for (int t = 0; t < T; ++t) target = nls_step(target, cfg.coeffs);

  // usable coarse range after excluding the window half-width at the left
  // edge and the boundary-influence margin at the right edge
  auto usable = [&](long n2) {
    const long nc = std::llround(
        (static_cast<double>(N) * n2 + static_cast<double>(cfg.M2) * m_max) / cfg.M1);
    return nc - N >= 0 && nc + N <= n_max - m_max;
  };
  long lo = n2_lo, hi = n2_hi;
  while (lo <= hi && !usable(lo - 1)) ++lo;
  while (hi >= lo && !usable(hi + 1)) --hi;
  if (lo > hi) throw std::invalid_argument("validate_single: domain too small after margins");

  const EnvelopeRow est = correct_window_bias(
      extract_envelope(u, cfg, static_cast<std::size_t>(m_max), lo - 1, hi + 1), N, cfg.M1);
  double worst = 0.0;
  for (long n2 = lo; n2 <= hi; ++n2) {
    worst = std::max(worst, std::abs(est[static_cast<std::size_t>(n2 - lo)] -
                                     target[static_cast<std::size_t>(n2)]));
    ++pt.compared_points;
  }
  pt.error = worst / peak;
  return pt;
}

/// Convergence study over a list of scales sharing all other settings.
inline ValidationReport validate_reduction(const ReductionConfig& base,
                                           const std::vector<int>& scales) {
  if (scales.empty()) throw std::invalid_argument("validate_reduction: empty scale list");
  ValidationReport rep;
  for (int n : scales) {
    ReductionConfig cfg = base;
    cfg.N = n;
    cfg.finalize();
    rep.points.push_back(validate_single(cfg));
  }
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < rep.points.size(); ++i) {
    const double e0 = rep.points[i].error, e1 = rep.points[i + 1].error;
    rep.ratios.push_back(e1 > 0.0 ? e0 / e1 : 0.0);
    if (!(e1 < e0) && !(e0 == 0.0 && e1 == 0.0)) rep.monotone = false;
  }
  return rep;
}

}  // namespace lsg
