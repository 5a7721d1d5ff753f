#pragma once

// Wirtinger derivatives of a real scalar field on C^n by finite differences,
// the Ricci top-form density and the divergence of a holomorphic field.
//
// Conventions: d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2,
// H_ij = d^2 F / dz_i dzbar_j.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hopf/polynomial.hpp"
#include "hopf/vector_field.hpp"
#include "hopf/volume.hpp"

namespace hopf {

using ScalarField = std::function<double(std::span<const Complex>)>;

struct DerivativeOptions {
  double step = 1e-4;
  bool richardson = true;
};

struct HermitianHessian {
  Eigen::MatrixXcd entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
  /// max_ij |H_ij - conj(H_ji)|.
  double hermitian_defect() const;
};

struct RicciDensity {
  double value = 0.0;
  double imaginary_residue = 0.0;  // Im((-1)^n n! det H), zero up to rounding
};

/// Gradient (d F/dz_i) and Hessian from one shared stencil.
struct WirtingerJet {
  std::vector<Complex> gradient;
  HermitianHessian hessian;
};

WirtingerJet wirtinger_jet(const ScalarField& f, std::span<const Complex> z, const DerivativeOptions& opts = {});

std::vector<Complex> wirtinger_gradient(const ScalarField& f, std::span<const Complex> z,
                                        const DerivativeOptions& opts = {});

HermitianHessian hermitian_hessian(const ScalarField& f, std::span<const Complex> z,
                                   const DerivativeOptions& opts = {});

/// Closed form for log psi at a point where f = psi: with u(r) = log psi(r),
/// r = |z|^2, H_ij = u'(r) delta_ij + u''(r) conj(z_i) z_j.
HermitianHessian radial_hessian(const CutoffProfile& profile, std::span<const Complex> z);

/// u'(r) conj(z_i): the matching closed-form gradient.
std::vector<Complex> radial_gradient(const CutoffProfile& profile, std::span<const Complex> z);

/// (-1)^n n! det H: the coefficient of Ric^n against dz ^ dzbar.
RicciDensity ricci_density(const HermitianHessian& h);

/// V(log f) + sum_l dV_l/dz_l with the gradient of log f supplied.
Complex divergence_from_gradient(const PolyVectorField& v, const Polynomial& trace,
                                 std::span<const Complex> log_gradient, std::span<const Complex> z);

Complex divergence(const PolyVectorField& v, const ScalarField& log_f, std::span<const Complex> z,
                   const DerivativeOptions& opts = {});

/// log f of a volume as a ScalarField.
ScalarField log_density_field(const EquivariantVolume& vol);

}  // namespace hopf
