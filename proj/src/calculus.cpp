#include "hopf/calculus.hpp"

#include <cmath>

namespace hopf {

namespace {

struct RealDerivatives {
  std::vector<double> first;   // 2n
  Eigen::MatrixXd second;      // 2n x 2n
};

// Central differences in the 2n real coordinates (x_k, y_k) = (Re z_k, Im z_k).
RealDerivatives central_differences(const ScalarField& f, std::span<const Complex> z, double h) {
  const std::size_t n = z.size();
  const std::size_t d = 2 * n;
  std::vector<double> x(d);
  for (std::size_t k = 0; k < n; ++k) {
    x[2 * k] = z[k].real();
    x[2 * k + 1] = z[k].imag();
  }
  Point p(n);
  auto eval_at = [&](const std::vector<double>& y) {
    for (std::size_t k = 0; k < n; ++k) p[k] = Complex(y[2 * k], y[2 * k + 1]);
    return f(p);
  };

  RealDerivatives out{std::vector<double>(d), Eigen::MatrixXd::Zero(d, d)};
  const double f0 = eval_at(x);
  std::vector<double> fp(d), fm(d);
  std::vector<double> y = x;
  for (std::size_t a = 0; a < d; ++a) {
    y[a] = x[a] + h;
    fp[a] = eval_at(y);
    y[a] = x[a] - h;
    fm[a] = eval_at(y);
    y[a] = x[a];
    out.first[a] = (fp[a] - fm[a]) / (2.0 * h);
    out.second(a, a) = (fp[a] - 2.0 * f0 + fm[a]) / (h * h);
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      y[a] = x[a] + h;
      y[b] = x[b] + h;
      const double fpp = eval_at(y);
      y[b] = x[b] - h;
      const double fpm = eval_at(y);
      y[a] = x[a] - h;
      const double fmm = eval_at(y);
      y[b] = x[b] + h;
      const double fmp = eval_at(y);
      y[a] = x[a];
      y[b] = x[b];
      const double mixed = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      out.second(a, b) = mixed;
      out.second(b, a) = mixed;
    }
  }
  return out;
}

RealDerivatives real_derivatives(const ScalarField& f, std::span<const Complex> z, const DerivativeOptions& opts) {
  RealDerivatives coarse = central_differences(f, z, opts.step);
  if (!opts.richardson) return coarse;
  RealDerivatives fine = central_differences(f, z, 0.5 * opts.step);
  for (std::size_t a = 0; a < coarse.first.size(); ++a)
    fine.first[a] = (4.0 * fine.first[a] - coarse.first[a]) / 3.0;
  fine.second = (4.0 * fine.second - coarse.second) / 3.0;
  return fine;
}

std::vector<Complex> to_wirtinger_gradient(const RealDerivatives& d, std::size_t n) {
  std::vector<Complex> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = 0.5 * Complex(d.first[2 * k], -d.first[2 * k + 1]);
  return g;
}

HermitianHessian to_wirtinger_hessian(const RealDerivatives& d, std::size_t n) {
  HermitianHessian h{Eigen::MatrixXcd(n, n)};
  const auto& s = d.second;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = s(2 * i, 2 * j) + s(2 * i + 1, 2 * j + 1);
      const double im = s(2 * i, 2 * j + 1) - s(2 * i + 1, 2 * j);
      h.entries(i, j) = 0.25 * Complex(re, im);
    }
  }
  h.entries = 0.5 * (h.entries + h.entries.adjoint()).eval();
  return h;
}

}  // namespace

double HermitianHessian::hermitian_defect() const {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < entries.rows(); ++i)
    for (Eigen::Index j = 0; j < entries.cols(); ++j)
      worst = std::max(worst, std::abs(entries(i, j) - std::conj(entries(j, i))));
  return worst;
}

WirtingerJet wirtinger_jet(const ScalarField& f, std::span<const Complex> z, const DerivativeOptions& opts) {
  const auto d = real_derivatives(f, z, opts);
  return {to_wirtinger_gradient(d, z.size()), to_wirtinger_hessian(d, z.size())};
}

std::vector<Complex> wirtinger_gradient(const ScalarField& f, std::span<const Complex> z,
                                        const DerivativeOptions& opts) {
  // Only the axis stencils are needed for first derivatives.
  const std::size_t n = z.size();
  auto once = [&](double h) {
    std::vector<double> first(2 * n);
    Point p(z.begin(), z.end());
    for (std::size_t k = 0; k < n; ++k) {
      for (int part = 0; part < 2; ++part) {
        const Complex delta = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
        p[k] = z[k] + delta;
        const double fp = f(p);
        p[k] = z[k] - delta;
        const double fm = f(p);
        p[k] = z[k];
        first[2 * k + part] = (fp - fm) / (2.0 * h);
      }
    }
    return first;
  };
  RealDerivatives d{once(opts.step), {}};
  if (opts.richardson) {
    const auto fine = once(0.5 * opts.step);
    for (std::size_t a = 0; a < fine.size(); ++a) d.first[a] = (4.0 * fine[a] - d.first[a]) / 3.0;
  }
  return to_wirtinger_gradient(d, n);
}

HermitianHessian hermitian_hessian(const ScalarField& f, std::span<const Complex> z, const DerivativeOptions& opts) {
  return to_wirtinger_hessian(real_derivatives(f, z, opts), z.size());
}

std::vector<Complex> radial_gradient(const CutoffProfile& profile, std::span<const Complex> z) {
  double r = 0.0;
  for (const auto& v : z) r += std::norm(v);
  const double du = profile.psi_prime(r) / profile.psi_of_r(r);
  std::vector<Complex> g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = du * std::conj(z[i]);
  return g;
}

HermitianHessian radial_hessian(const CutoffProfile& profile, std::span<const Complex> z) {
  const std::size_t n = z.size();
  double r = 0.0;
  for (const auto& v : z) r += std::norm(v);
  const double p = profile.psi_of_r(r);
  const double du = profile.psi_prime(r) / p;
  const double d2u = profile.psi_second(r) / p - du * du;
  HermitianHessian h{Eigen::MatrixXcd(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h.entries(i, j) = (i == j ? du : 0.0) + d2u * std::conj(z[i]) * z[j];
  return h;
}

RicciDensity ricci_density(const HermitianHessian& h) {
  const std::size_t n = h.dim();
  double factorial = 1.0;
  for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex det = n == 0 ? Complex(1.0) : h.entries.determinant();
  const Complex value = sign * factorial * det;
  return {value.real(), value.imag()};
}

Complex divergence_from_gradient(const PolyVectorField& v, const Polynomial& trace,
                                 std::span<const Complex> log_gradient, std::span<const Complex> z) {
  const Point vz = v.eval(z);
  Complex acc = trace.eval(z);
  for (std::size_t l = 0; l < vz.size(); ++l) acc += vz[l] * log_gradient[l];
  return acc;
}

Complex divergence(const PolyVectorField& v, const ScalarField& log_f, std::span<const Complex> z,
                   const DerivativeOptions& opts) {
  const auto grad = wirtinger_gradient(log_f, z, opts);
  Polynomial trace(v.dim());
  for (std::size_t l = 0; l < v.dim(); ++l) trace += v.component(l).derivative(l);
  return divergence_from_gradient(v, trace, grad, z);
}

ScalarField log_density_field(const EquivariantVolume& vol) {
  return [&vol](std::span<const Complex> z) { return vol.log_density(z); };
}

}  // namespace hopf
