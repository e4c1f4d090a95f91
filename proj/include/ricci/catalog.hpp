#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ricci/tensor.hpp"

namespace ricci {

enum class FamilyKind { Homogeneous, Product, Warped };

// Named scalar parameter with an open admissible interval.
struct ParamSpec {
  std::string name;
  double min;
  double max;
};

// One verification family.  Homogeneous entries carry Lie-algebra structure
// constants c^k_{ij} (structure[k][i][j]) for a left-invariant diagonal
// metric; the warped entry evolves two periodic fields on a theta grid.
struct CatalogEntry {
  std::string name;
  FamilyKind kind = FamilyKind::Homogeneous;
  std::array<std::array<std::array<double, 4>, 4>, 4> structure{};
  bool hasStructure = false;
  bool constantCurvatureShortcut = false;  // S4
  int chi = 0;
  std::vector<ParamSpec> paramSpec;
  double latticeVolumeFactor = 1.0;
  int defaultGridN = 128;
  std::map<std::string, double> defaultParams;
  std::vector<std::string> stateLabels;  // labels for state vector components
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& find_family(std::string_view name);  // UnknownFamily

// Verifies antisymmetry and the Jacobi identity of every entry's structure
// constants to kSymmetryTol.  Throws DomainError on failure.
void validate_catalog();

// Snapshot of one family at one time.  Homogeneous/product states store the
// squared frame scales a_i^2; the warped state stores [phi_0..phi_{N-1},
// psi_0..psi_{N-1}] on the uniform periodic theta grid.
struct GeometryState {
  const CatalogEntry* entry = nullptr;
  std::vector<double> params;
  double time = 0.0;

  int gridN() const { return static_cast<int>(params.size() / 2); }
};

// Truncated Fourier series a_0 + sum_k (cosCoef[k-1] cos k theta +
// sinCoef[k-1] sin k theta); supplies warp-field initial data.
struct FourierSeries {
  double constant = 1.0;
  std::vector<double> cosCoef;
  std::vector<double> sinCoef;
  double at(double theta) const;
};

GeometryState make_state(const CatalogEntry& entry,
                         const std::map<std::string, double>& named);
GeometryState make_warped_state(const CatalogEntry& entry,
                                const FourierSeries& phi,
                                const FourierSeries& psi, int gridN = 0);

// DomainError for nonpositive parameters or a bad grid size,
// DegenerateField when a warp sample is <= 1e-8.
void validate_state(const GeometryState& state);

inline constexpr double kWarpFieldFloor = 1e-8;

// Connection coefficients Gamma^k_{ij} = <nabla_{f_i} f_j, f_k> in the
// orthonormal frame; layout [i][j][k].
using ConnectionCoefficients = std::array<double, 64>;

inline double gamma_at(const ConnectionCoefficients& G, int i, int j, int k) {
  return G[static_cast<std::size_t>((i * kDim + j) * kDim + k)];
}

// Levi-Civita connection of the diagonal left-invariant metric given by
// `params` (squared frame scales).  Families without structure constants
// (S4, S2xS2) are evaluated in a normal frame at the base point, where the
// connection coefficients vanish.
ConnectionCoefficients koszul_connection(const CatalogEntry& entry,
                                         std::span<const double> params);

// Everything the estimators need at one quadrature point.
struct PointData {
  CurvatureTensor curvature;
  Sym2Tensor ricci;
  double scalR = 0.0;
  CurvatureDerivatives derivs;
  double weight = 0.0;
};

std::vector<PointData> point_data(const GeometryState& state);

// Scalar curvature data per quadrature point; the cheap path used inside the
// flow right-hand side.  Values match the full point_data route.
struct PointScalars {
  double weight;
  double scalR;
  double rc2;    // |Rc|^2
  double rm2;    // |Rm|^2
  double grad2;  // |grad Rc|^2
};

void density_scalars(const GeometryState& state,
                     std::vector<PointScalars>& out);

// Quadrature of a per-point density; ArityMismatch when sizes differ.
double integrate(const GeometryState& state, std::span<const double> density);

double volume(const GeometryState& state);

// Frame-diagonal Ricci eigenvalues for the parameter families.  Throws
// DomainError if the Ricci tensor of the family is not frame-diagonal.
std::array<double, 4> frame_ricci_diagonal(const CatalogEntry& entry,
                                           std::span<const double> params);

// Per-point warped geometry: w' and w'' are arclength derivatives of the
// warp psi, A = -w''/psi the mixed sectional curvature, B = (1 - w'^2)/psi^2
// the fiber sectional curvature, rho0 = 3A and rho1 = A + 2B the Ricci
// eigenvalues, primes again arclength derivatives.
struct WarpedGeometry {
  int n = 0;
  double dtheta = 0.0;
  std::vector<double> A, B, wprime, scalR;
  std::vector<double> rho0, rho1, rho0prime, rho1prime, scalRprime;
  std::vector<double> weight;
};

WarpedGeometry warped_geometry(const GeometryState& state);

}  // namespace ricci
