#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "ricci/errors.hpp"

namespace ricci {

inline constexpr int kDim = 4;

// Relative tolerance for the curvature symmetry and first-Bianchi checks.
inline constexpr double kSymmetryTol = 1e-12;

// Symmetric bilinear form in an orthonormal frame, stored as a full 4x4
// matrix.  set() writes both mirror slots so symmetry holds by construction.
class Sym2Tensor {
 public:
  Sym2Tensor() : c_{} {}

  static Sym2Tensor identity();
  static Sym2Tensor diagonal(double d0, double d1, double d2, double d3);

  double operator()(int i, int j) const { return c_[i * kDim + j]; }
  void set(int i, int j, double v) {
    c_[i * kDim + j] = v;
    c_[j * kDim + i] = v;
  }

  bool is_identity() const;
  double max_abs() const;

 private:
  std::array<double, kDim * kDim> c_;
};

// Inverse of a positive definite metric.  Throws SingularMetric when the
// matrix is not positive definite or a pivot degenerates.
Sym2Tensor inverse_metric(const Sym2Tensor& g);

// One supplied component of an algebraic curvature tensor.
struct RmComponent {
  int i, j, k, l;
  double value;
};

// Algebraic curvature tensor R_{ijkl} in an orthonormal frame, full 4^4
// component storage.  Instances produced by build_curvature satisfy
//   R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij}
// exactly and the first Bianchi identity to kSymmetryTol (relative).
class CurvatureTensor {
 public:
  CurvatureTensor() : c_{} {}

  static constexpr std::size_t index(int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * kDim + j) * kDim + k) * kDim + l);
  }

  double operator()(int i, int j, int k, int l) const {
    return c_[index(i, j, k, l)];
  }

  std::span<const double, 256> components() const { return c_; }
  double max_abs() const;

 private:
  friend CurvatureTensor build_curvature(const std::array<double, 256>& raw);
  std::array<double, 256> c_;
};

// Builds a curvature tensor from supplied components.  Zero entries are
// treated as unspecified; every nonzero entry propagates to its full
// symmetry orbit.  Conflicting values on one orbit, a nonzero value on an
// index pattern forced to vanish, or a Bianchi residual beyond kSymmetryTol
// raise SymmetryViolation.
CurvatureTensor build_curvature(const std::array<double, 256>& raw);
CurvatureTensor build_curvature(std::span<const RmComponent> generators);

// Full-loop re-check of the stored invariants; throws SymmetryViolation.
void validate_curvature(const CurvatureTensor& rm);

// R_{ijkl} = K (g_ik g_jl - g_il g_jk) with g the identity frame metric.
CurvatureTensor constant_curvature(double sectional);

// Deterministic random algebraic curvature tensor: gaussian components
// symmetrized over the pair group, with the totally antisymmetric part
// (the cyclic average) removed so the first Bianchi identity holds.
CurvatureTensor random_curvature(std::uint64_t seed);

// Rc_{ij} = g^{kl} R_{ikjl}.
Sym2Tensor ricci_of(const CurvatureTensor& rm, const Sym2Tensor& g);

// R = g^{ij} Rc_{ij}.
double scalar_of(const Sym2Tensor& rc, const Sym2Tensor& g);

struct Norms {
  double rm2;  // |Rm|^2, all four indices raised against g
  double rc2;  // |Rc|^2
};
Norms norms(const CurvatureTensor& rm, const Sym2Tensor& rc,
            const Sym2Tensor& g);

// Rm(Rc,Rc) = R^{ikjl} Rc_{ij} Rc_{kl}.
double rm_bilinear(const CurvatureTensor& rm, const Sym2Tensor& rc,
                   const Sym2Tensor& g);

// |Rm|^2 - 4|Rc|^2 + R^2; integrates to 32 pi^2 chi on a closed 4-manifold.
double gauss_bonnet_density(const CurvatureTensor& rm, const Sym2Tensor& rc,
                            double scalR, const Sym2Tensor& g);

// f = |Rc|^2 / (R + c).  Throws DenominatorNonpositive when R + c <= 0.
double f_density(double normRc2, double scalR, double c);

// Frame components of (grad Rc)_{kis} (symmetric in i,s) and (grad R)_k.
struct CurvatureDerivatives {
  std::array<double, 64> gradRc{};  // [k][i][s]
  std::array<double, 4> gradR{};

  double rc(int k, int i, int s) const {
    return gradRc[static_cast<std::size_t>((k * kDim + i) * kDim + s)];
  }
  void set_rc(int k, int i, int s, double v) {
    gradRc[static_cast<std::size_t>((k * kDim + i) * kDim + s)] = v;
    gradRc[static_cast<std::size_t>((k * kDim + s) * kDim + i)] = v;
  }
};

// |Z|^2 with Z_{kis} = (grad Rc)_{kis} (R + c) - (grad R)_k Rc_{is}.
// Throws DenominatorNonpositive when R + c <= 0.
double z_norm_sq(const CurvatureDerivatives& d, const Sym2Tensor& rc,
                 double scalR, double c, const Sym2Tensor& g);

struct MarginReport {
  double lhs, rhs, margin;  // margin = rhs - lhs
};

// Pointwise Young-step bound with c = 2:
//   4 Rm(Rc,Rc)/(R+2) <= |Rc|^4 / (2 (R+2)^2) + 8 |Rm|^2.
MarginReport young_pointwise_check(const CurvatureTensor& rm,
                                   const Sym2Tensor& rc, double scalR,
                                   const Sym2Tensor& g, double c = 2.0);

struct PointwiseDensities {
  double normRc2;
  double normRm2;
  double scalR;
  double fDensity;
  double gbDensity;
  double rmBilinear;
  double zNorm2;
};

PointwiseDensities pointwise_densities(const CurvatureTensor& rm,
                                       const Sym2Tensor& rc, double scalR,
                                       const CurvatureDerivatives& d,
                                       const Sym2Tensor& g, double c);

}  // namespace ricci
