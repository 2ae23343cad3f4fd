#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsg {

struct SGParams {
  double p = 1.0;
  double q = 1.0;

  double sigma() const { return p * p * q * q; }
  double background() const { return p / q; }
  void validate() const {
    if (p == 0.0 || q == 0.0) throw std::invalid_argument("SGParams: p and q must be nonzero");
  }
};

/// Thrown when a quad-map denominator falls within the singular tolerance;
/// carries the lattice location and the offending denominator.
struct SingularStepError : std::runtime_error {
  long n = 0;
  long m = 0;
  double denominator = 0.0;

  SingularStepError(long n_, long m_, double d)
      : std::runtime_error("singular quad-map step at (n=" + std::to_string(n_) +
                           ", m=" + std::to_string(m_) +
                           "), denominator " + std::to_string(d)),
        n(n_), m(m_), denominator(d) {}
};

/// Real field u on the window [n_min .. n_min+n_count) x [0 .. m_count),
/// stored row-major in m.
struct Field2D {
  long n_min = 0;
  std::size_t n_count = 0;
  std::size_t m_count = 0;
  std::vector<double> values;

  Field2D() = default;
  Field2D(long n_min_, std::size_t n_count_, std::size_t m_count_)
      : n_min(n_min_), n_count(n_count_), m_count(m_count_),
        values(n_count_ * m_count_, 0.0) {}

  long n_max() const { return n_min + static_cast<long>(n_count) - 1; }

  double& at(long n, std::size_t m) {
    return values[index(n, m)];
  }
  double at(long n, std::size_t m) const {
    return values[index(n, m)];
  }

 private:
  std::size_t index(long n, std::size_t m) const {
    if (n < n_min || n > n_max() || m >= m_count)
      throw std::out_of_range("Field2D: index outside window");
    return m * n_count + static_cast<std::size_t>(n - n_min);
  }
};

namespace detail {
inline void check_denominator(double d, double tol, double scale, long n, long m) {
  if (std::abs(d) <= tol * scale) throw SingularStepError(n, m, d);
}
}  // namespace detail

/// One step of the quad map, solving for the top-right corner:
/// u11 = (1/u00) (u10 u01 - p^4) / (1 - q^4 u10 u01).
inline double sg_quad_step(double u00, double u10, double u01, const SGParams& params,
                           double tol = 1e-12, long n = 0, long m = 0) {
  const double scale = std::max(1.0, std::abs(params.background()));
  const double q4 = std::pow(params.q, 4);
  const double p4 = std::pow(params.p, 4);
  detail::check_denominator(u00, tol, scale, n, m);
  const double d = 1.0 - q4 * u10 * u01;
  detail::check_denominator(d, tol, scale, n, m);
  return (u10 * u01 - p4) / (u00 * d);
}

/// The same quad relation solved for the top-left corner, used when the
/// column data is given on the right edge:
/// u01 = (u00 u11 + p^4) / (u10 (1 + q^4 u00 u11)).
inline double sg_quad_step_backward(double u00, double u10, double u11, const SGParams& params,
                                    double tol = 1e-12, long n = 0, long m = 0) {
  const double scale = std::max(1.0, std::abs(params.background()));
  const double q4 = std::pow(params.q, 4);
  const double p4 = std::pow(params.p, 4);
  detail::check_denominator(u10, tol, scale, n, m);
  const double d = 1.0 + q4 * u00 * u11;
  detail::check_denominator(d, tol, scale, n, m);
  return (u00 * u11 + p4) / (u10 * d);
}

enum class BoundarySide { Left, Right };

/// Fills the rectangle from the m=0 row plus one boundary column.  The
/// left-column sweep (n increasing) is the textbook formulation but
/// amplifies roundoff by |(sigma+1)/(sigma-1)| per column; all linear modes
/// transport leftward (group velocity < 0), so the right-column sweep
/// (n decreasing) is the stable one and the default.
inline Field2D sg_evolve(const std::vector<double>& initial_row,
                         const std::vector<double>& boundary_column, const SGParams& params,
                         long n_min = 0, BoundarySide side = BoundarySide::Right,
                         double tol = 1e-12) {
  params.validate();
  if (initial_row.size() < 2) throw std::invalid_argument("sg_evolve: initial row too short");
  if (boundary_column.empty()) throw std::invalid_argument("sg_evolve: empty boundary column");
  const std::size_t w = initial_row.size();
  const std::size_t h = boundary_column.size();
  Field2D u(n_min, w, h);
  for (std::size_t i = 0; i < w; ++i) u.values[i] = initial_row[i];
  const long n_b = (side == BoundarySide::Left) ? n_min : u.n_max();
  const double corner = u.at(n_b, 0);
  if (std::abs(boundary_column[0] - corner) > 1e-9 * std::max(1.0, std::abs(corner)))
    throw std::invalid_argument("sg_evolve: boundary column disagrees with initial row at m=0");
  for (std::size_t m = 0; m + 1 < h; ++m) {
    u.at(n_b, m + 1) = boundary_column[m + 1];
    if (side == BoundarySide::Left) {
      for (long n = n_min; n < u.n_max(); ++n)
        u.at(n + 1, m + 1) = sg_quad_step(u.at(n, m), u.at(n + 1, m), u.at(n, m + 1), params,
                                          tol, n, static_cast<long>(m));
    } else {
      for (long n = u.n_max() - 1; n >= n_min; --n)
        u.at(n, m + 1) = sg_quad_step_backward(u.at(n, m), u.at(n + 1, m), u.at(n + 1, m + 1),
                                               params, tol, n, static_cast<long>(m));
    }
  }
  return u;
}

enum class ShiftDirection { ToPerturbation, FromPerturbation };

/// Moves between the field u and its deviation from the background p/q.
inline Field2D background_shift(Field2D u, const SGParams& params, ShiftDirection dir) {
  const double bg = params.background();
  const double s = (dir == ShiftDirection::ToPerturbation) ? -bg : bg;
  for (auto& v : u.values) v += s;
  return u;
}

/// Max residual of the linearized equation over all elementary squares:
/// (sigma-1)(v00 + v11) + (sigma+1)(v10 + v01).
inline double linear_residual(const Field2D& v, double sigma) {
  if (v.n_count < 2 || v.m_count < 2)
    throw std::invalid_argument("linear_residual: window must be at least 2x2");
  double worst = 0.0;
  for (std::size_t m = 0; m + 1 < v.m_count; ++m)
    for (long n = v.n_min; n < v.n_max(); ++n) {
      const double r = (sigma - 1.0) * (v.at(n, m) + v.at(n + 1, m + 1)) +
                       (sigma + 1.0) * (v.at(n + 1, m) + v.at(n, m + 1));
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

struct PlaneWave {
  double k = 0.0;
  std::complex<double> z;      // e^{ik}
  std::complex<double> Omega;  // per-step multiplier in m, |Omega| = 1
  double omega = 0.0;          // Omega = e^{-i omega}, branch continuous from k=0
};

namespace detail {
inline std::pair<std::complex<double>, std::complex<double>> dispersion_factors(
    std::complex<double> z, double sigma) {
  const std::complex<double> a = (sigma + 1.0) * z + (sigma - 1.0);
  const std::complex<double> b = (sigma - 1.0) * z + (sigma + 1.0);
  if (std::abs(b) < 1e-300) throw std::domain_error("dispersion: vanishing denominator");
  return {a, b};
}
}  // namespace detail

/// Omega = -((sigma+1)z + sigma-1)/((sigma-1)z + sigma+1).  The phase
/// omega is unwrapped so that omega(0) = -pi and omega is continuous on
/// k in (-pi, pi); the ratio a/b crosses the cut only at k = +-pi.
inline PlaneWave dispersion(double k, double sigma) {
  PlaneWave w;
  w.k = k;
  w.z = std::polar(1.0, k);
  const auto [a, b] = detail::dispersion_factors(w.z, sigma);
  w.Omega = -a / b;
  w.omega = -M_PI - std::arg(a / b);
  return w;
}

/// Group velocity d omega / d k = Re(-4 sigma z / (a b)); the expression
/// is real on |z| = 1 and the imaginary part is checked.
inline double group_velocity(double k, double sigma) {
  const std::complex<double> z = std::polar(1.0, k);
  const auto [a, b] = detail::dispersion_factors(z, sigma);
  const std::complex<double> g = -4.0 * sigma * z / (a * b);
  if (std::abs(g.imag()) > 1e-10)
    throw std::logic_error("group_velocity: expression failed reality check");
  return g.real();
}

}  // namespace lsg
