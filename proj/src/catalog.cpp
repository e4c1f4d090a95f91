#include "ricci/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ricci {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double epsilon3(int a, int b, int c) {
  // Levi-Civita symbol on {0,1,2}.
  if (a == b || b == c || a == c) return 0.0;
  if ((a == 0 && b == 1 && c == 2) || (a == 1 && b == 2 && c == 0) ||
      (a == 2 && b == 0 && c == 1))
    return 1.0;
  return -1.0;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;

  {
    CatalogEntry e;
    e.name = "S4";
    e.kind = FamilyKind::Homogeneous;
    e.constantCurvatureShortcut = true;
    e.chi = 2;
    e.paramSpec = {{"r2", 0.0, kInf}};
    e.defaultParams = {{"r2", 4.0}};
    e.stateLabels = {"r2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "S2xS2";
    e.kind = FamilyKind::Product;
    e.chi = 4;
    e.paramSpec = {{"a2", 0.0, kInf}, {"b2", 0.0, kInf}};
    e.defaultParams = {{"a2", 1.0}, {"b2", 1.0}};
    e.stateLabels = {"a2", "b2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "T4";
    e.kind = FamilyKind::Homogeneous;
    e.hasStructure = true;  // abelian: all brackets vanish
    e.chi = 0;
    e.paramSpec = {{"a2", 0.0, kInf},
                   {"b2", 0.0, kInf},
                   {"c2", 0.0, kInf},
                   {"d2", 0.0, kInf}};
    e.latticeVolumeFactor = std::pow(2.0 * kPi, 4);
    e.defaultParams = {{"a2", 1.0}, {"b2", 1.0}, {"c2", 1.0}, {"d2", 1.0}};
    e.stateLabels = {"a2", "b2", "c2", "d2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "BergerS3xS1";
    e.kind = FamilyKind::Homogeneous;
    e.hasStructure = true;
    // su(2) with [e0,e1] = 2 e2 cyclic, e3 central (the circle factor).
    e.structure[2][0][1] = 2.0;
    e.structure[2][1][0] = -2.0;
    e.structure[0][1][2] = 2.0;
    e.structure[0][2][1] = -2.0;
    e.structure[1][2][0] = 2.0;
    e.structure[1][0][2] = -2.0;
    e.chi = 0;
    e.paramSpec = {{"lambda2", 0.0, kInf}, {"mu2", 0.0, kInf},
                   {"L2", 0.0, kInf}};
    // Unit parameters give the round S3 of radius 1 (volume 2 pi^2) times a
    // circle of length 2 pi.
    e.latticeVolumeFactor = 2.0 * kPi * kPi * 2.0 * kPi;
    e.defaultParams = {{"lambda2", 1.0}, {"mu2", 1.0}, {"L2", 1.0}};
    e.stateLabels = {"lambda2", "mu2a", "mu2b", "L2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "Nil3xS1";
    e.kind = FamilyKind::Homogeneous;
    e.hasStructure = true;
    // Heisenberg algebra [e0,e1] = e2, e3 central.
    e.structure[2][0][1] = 1.0;
    e.structure[2][1][0] = -1.0;
    e.chi = 0;
    e.paramSpec = {{"a2", 0.0, kInf},
                   {"b2", 0.0, kInf},
                   {"c2", 0.0, kInf},
                   {"L2", 0.0, kInf}};
    e.latticeVolumeFactor = 1.0;  // unit-volume compact quotient at unit params
    e.defaultParams = {{"a2", 1.0}, {"b2", 1.0}, {"c2", 1.0}, {"L2", 1.0}};
    e.stateLabels = {"a2", "b2", "c2", "L2"};
    out.push_back(e);
  }
  {
    CatalogEntry e;
    e.name = "WarpedS1xS3";
    e.kind = FamilyKind::Warped;
    e.chi = 0;
    e.paramSpec = {{"phi_const", 0.0, kInf}, {"psi_const", 0.0, kInf}};
    e.defaultGridN = 128;
    e.defaultParams = {{"phi_const", 3.0},
                       {"psi_const", 3.0},
                       {"psi_sin1", 0.15}};
    e.stateLabels = {"phiMin", "phiMax", "psiMin", "psiMax"};
    out.push_back(e);
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& find_family(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw UnknownFamily("unknown family: " + std::string(name));
}

void validate_catalog() {
  for (const auto& e : catalog()) {
    if (!e.hasStructure) continue;
    const auto& c = e.structure;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) {
          if (std::abs(c[k][i][j] + c[k][j][i]) > kSymmetryTol)
            throw DomainError(e.name + ": structure constants not antisymmetric");
          for (int l = 0; l < kDim; ++l) {
            double jac = 0.0;
            for (int m = 0; m < kDim; ++m)
              jac += c[m][i][j] * c[l][m][k] + c[m][j][k] * c[l][m][i] +
                     c[m][k][i] * c[l][m][j];
            if (std::abs(jac) > kSymmetryTol)
              throw DomainError(e.name + ": Jacobi identity violated");
          }
        }
  }
}

double FourierSeries::at(double theta) const {
  double v = constant;
  for (std::size_t k = 0; k < cosCoef.size(); ++k)
    v += cosCoef[k] * std::cos(static_cast<double>(k + 1) * theta);
  for (std::size_t k = 0; k < sinCoef.size(); ++k)
    v += sinCoef[k] * std::sin(static_cast<double>(k + 1) * theta);
  return v;
}

GeometryState make_state(const CatalogEntry& entry,
                         const std::map<std::string, double>& named) {
  if (entry.kind == FamilyKind::Warped)
    throw DomainError("warped states are built from Fourier data");
  for (const auto& [k, v] : named) {
    bool known = false;
    for (const auto& p : entry.paramSpec) known = known || p.name == k;
    if (!known) throw DomainError(entry.name + ": unknown parameter " + k);
  }
  auto get = [&](const std::string& key) {
    auto it = named.find(key);
    double v = it != named.end() ? it->second : entry.defaultParams.at(key);
    const ParamSpec* spec = nullptr;
    for (const auto& p : entry.paramSpec)
      if (p.name == key) spec = &p;
    if (spec && !(v > spec->min && v < spec->max))
      throw DomainError(entry.name + ": parameter " + key +
                        " outside admissible interval");
    return v;
  };

  GeometryState s;
  s.entry = &entry;
  if (entry.name == "S4") {
    s.params = {get("r2")};
  } else if (entry.name == "S2xS2") {
    s.params = {get("a2"), get("b2")};
  } else if (entry.name == "T4") {
    s.params = {get("a2"), get("b2"), get("c2"), get("d2")};
  } else if (entry.name == "BergerS3xS1") {
    const double mu2 = get("mu2");
    s.params = {get("lambda2"), mu2, mu2, get("L2")};
  } else if (entry.name == "Nil3xS1") {
    s.params = {get("a2"), get("b2"), get("c2"), get("L2")};
  } else {
    throw UnknownFamily("unknown family: " + entry.name);
  }
  validate_state(s);
  return s;
}

GeometryState make_warped_state(const CatalogEntry& entry,
                                const FourierSeries& phi,
                                const FourierSeries& psi, int gridN) {
  if (entry.kind != FamilyKind::Warped)
    throw DomainError(entry.name + ": not a warped family");
  const int n = gridN > 0 ? gridN : entry.defaultGridN;
  GeometryState s;
  s.entry = &entry;
  s.params.resize(static_cast<std::size_t>(2 * n));
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * kPi * j / n;
    s.params[static_cast<std::size_t>(j)] = phi.at(theta);
    s.params[static_cast<std::size_t>(n + j)] = psi.at(theta);
  }
  validate_state(s);
  return s;
}

void validate_state(const GeometryState& state) {
  if (state.entry == nullptr) throw DomainError("state has no family");
  const auto& entry = *state.entry;
  if (entry.kind == FamilyKind::Warped) {
    const std::size_t sz = state.params.size();
    if (sz == 0 || sz % 2 != 0)
      throw DomainError("warped state needs an even sample count");
    const int n = static_cast<int>(sz / 2);
    if (n < 8 || (n & (n - 1)) != 0)
      throw DomainError("warped grid size must be a power of two >= 8");
    for (double v : state.params)
      if (!(v > kWarpFieldFloor))
        throw DegenerateField("warp field sample at or below the floor");
    return;
  }
  const std::size_t expect = entry.name == "S4" ? 1 : entry.name == "S2xS2" ? 2 : 4;
  if (state.params.size() != expect)
    throw DomainError(entry.name + ": wrong parameter count");
  for (double v : state.params)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError(entry.name + ": parameters must be positive");
}

ConnectionCoefficients koszul_connection(const CatalogEntry& entry,
                                         std::span<const double> params) {
  ConnectionCoefficients G{};
  if (!entry.hasStructure) return G;  // normal frame at the base point

  if (params.size() != 4) throw DomainError("need four squared frame scales");
  double a[4];
  for (int i = 0; i < kDim; ++i) {
    if (!(params[static_cast<std::size_t>(i)] > 0.0))
      throw DomainError("frame scales must be positive");
    a[i] = std::sqrt(params[static_cast<std::size_t>(i)]);
  }

  // alpha_{ijk} = <[f_i,f_j], f_k> in the orthonormal frame f_i = e_i / a_i.
  auto alpha = [&](int i, int j, int k) {
    return entry.structure[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)] *
           a[k] / (a[i] * a[j]);
  };
  // Koszul formula for left-invariant fields: constant inner products leave
  // only the bracket terms.
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        G[static_cast<std::size_t>((i * kDim + j) * kDim + k)] =
            0.5 * (alpha(i, j, k) - alpha(i, k, j) - alpha(j, k, i));
  return G;
}

namespace {

// (grad Rc)_{kis} = e_k(Rc_{is}) - Gamma^m_{ki} Rc_{ms} - Gamma^m_{ks} Rc_{im}
// with e_k the orthonormal frame derivative.  e0rc carries e_0(Rc_{is}) for
// the warped family (the only inhomogeneous direction); null means the
// components are constant.
CurvatureDerivatives grad_from_gamma(const ConnectionCoefficients& G,
                                     const Sym2Tensor& rc,
                                     const Sym2Tensor* e0rc, double e0R) {
  CurvatureDerivatives d;
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int s = i; s < kDim; ++s) {
        double v = (k == 0 && e0rc != nullptr) ? (*e0rc)(i, s) : 0.0;
        for (int m = 0; m < kDim; ++m)
          v -= gamma_at(G, k, i, m) * rc(m, s) + gamma_at(G, k, s, m) * rc(i, m);
        d.set_rc(k, i, s, v);
      }
  d.gradR[0] = e0R;
  return d;
}

struct HomogeneousData {
  CurvatureTensor rm;
  Sym2Tensor rc;
  double scalR;
  CurvatureDerivatives derivs;
  double vol;
};

HomogeneousData homogeneous_data(const CatalogEntry& entry,
                                 std::span<const double> params) {
  HomogeneousData out;
  if (entry.constantCurvatureShortcut) {
    const double K = 1.0 / params[0];
    out.rm = constant_curvature(K);
    out.rc = Sym2Tensor::diagonal(3.0 * K, 3.0 * K, 3.0 * K, 3.0 * K);
    out.scalR = 12.0 * K;
    out.vol = (8.0 * kPi * kPi / 3.0) * params[0] * params[0];
    return out;  // Einstein: grad Rc = 0, grad R = 0
  }
  if (entry.kind == FamilyKind::Product) {
    const double Ka = 1.0 / params[0];
    const double Kb = 1.0 / params[1];
    const RmComponent gen[] = {{0, 1, 0, 1, Ka}, {2, 3, 2, 3, Kb}};
    out.rm = build_curvature(gen);
    out.rc = Sym2Tensor::diagonal(Ka, Ka, Kb, Kb);
    out.scalR = 2.0 * Ka + 2.0 * Kb;
    out.vol = 16.0 * kPi * kPi * params[0] * params[1];
    return out;  // symmetric space: grad Rc = 0
  }

  const ConnectionCoefficients G = koszul_connection(entry, params);
  double a[4];
  for (int i = 0; i < kDim; ++i) a[i] = std::sqrt(params[static_cast<std::size_t>(i)]);
  auto alpha = [&](int i, int j, int k) {
    return entry.structure[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)] *
           a[k] / (a[i] * a[j]);
  };

  // <R(f_i,f_j) f_k, f_l> for left-invariant fields, then flipped into the
  // sign convention R_{ijij} = sectional curvature.
  std::array<double, 256> raw{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          double m = 0.0;
          for (int mm = 0; mm < kDim; ++mm)
            m += gamma_at(G, j, k, mm) * gamma_at(G, i, mm, l) -
                 gamma_at(G, i, k, mm) * gamma_at(G, j, mm, l) -
                 alpha(i, j, mm) * gamma_at(G, mm, k, l);
          raw[CurvatureTensor::index(i, j, k, l)] = -m;
        }
  out.rm = build_curvature(raw);
  out.rc = ricci_of(out.rm, Sym2Tensor::identity());
  out.scalR = scalar_of(out.rc, Sym2Tensor::identity());
  out.derivs = grad_from_gamma(G, out.rc, nullptr, 0.0);
  out.vol = entry.latticeVolumeFactor * a[0] * a[1] * a[2] * a[3];
  return out;
}

// 4th-order central differences on the periodic grid.
void fd4_first(std::span<const double> f, double h, std::span<double> out) {
  const int n = static_cast<int>(f.size());
  for (int j = 0; j < n; ++j) {
    const double fp1 = f[static_cast<std::size_t>((j + 1) % n)];
    const double fm1 = f[static_cast<std::size_t>((j - 1 + n) % n)];
    const double fp2 = f[static_cast<std::size_t>((j + 2) % n)];
    const double fm2 = f[static_cast<std::size_t>((j - 2 + n) % n)];
    out[static_cast<std::size_t>(j)] = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
  }
}

void fd4_second(std::span<const double> f, double h, std::span<double> out) {
  const int n = static_cast<int>(f.size());
  for (int j = 0; j < n; ++j) {
    const double f0 = f[static_cast<std::size_t>(j)];
    const double fp1 = f[static_cast<std::size_t>((j + 1) % n)];
    const double fm1 = f[static_cast<std::size_t>((j - 1 + n) % n)];
    const double fp2 = f[static_cast<std::size_t>((j + 2) % n)];
    const double fm2 = f[static_cast<std::size_t>((j - 2 + n) % n)];
    out[static_cast<std::size_t>(j)] =
        (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
  }
}

}  // namespace

WarpedGeometry warped_geometry(const GeometryState& state) {
  validate_state(state);
  const int n = state.gridN();
  const double h = 2.0 * kPi / n;
  std::span<const double> phi(state.params.data(), static_cast<std::size_t>(n));
  std::span<const double> psi(state.params.data() + n, static_cast<std::size_t>(n));

  WarpedGeometry g;
  g.n = n;
  g.dtheta = h;
  const auto sz = static_cast<std::size_t>(n);
  std::vector<double> phiT(sz), psiT(sz), psiTT(sz);
  fd4_first(phi, h, phiT);
  fd4_first(psi, h, psiT);
  fd4_second(psi, h, psiTT);

  g.A.resize(sz);
  g.B.resize(sz);
  g.wprime.resize(sz);
  g.scalR.resize(sz);
  g.rho0.resize(sz);
  g.rho1.resize(sz);
  g.weight.resize(sz);
  for (std::size_t j = 0; j < sz; ++j) {
    const double p = phi[j], w = psi[j];
    // Arclength derivatives of the warp: ds = phi dtheta.
    const double w1 = psiT[j] / p;
    const double w2 = psiTT[j] / (p * p) - psiT[j] * phiT[j] / (p * p * p);
    g.wprime[j] = w1;
    g.A[j] = -w2 / w;
    g.B[j] = (1.0 - w1 * w1) / (w * w);
    g.rho0[j] = 3.0 * g.A[j];
    g.rho1[j] = g.A[j] + 2.0 * g.B[j];
    g.scalR[j] = 6.0 * (g.A[j] + g.B[j]);
    // Fiber volume 2 pi^2 for the unit round S3 cross-section.
    g.weight[j] = p * w * w * w * 2.0 * kPi * kPi * h;
  }
  g.rho0prime.resize(sz);
  g.rho1prime.resize(sz);
  g.scalRprime.resize(sz);
  std::vector<double> tmp(sz);
  fd4_first(g.rho0, h, tmp);
  for (std::size_t j = 0; j < sz; ++j) g.rho0prime[j] = tmp[j] / phi[j];
  fd4_first(g.rho1, h, tmp);
  for (std::size_t j = 0; j < sz; ++j) g.rho1prime[j] = tmp[j] / phi[j];
  fd4_first(g.scalR, h, tmp);
  for (std::size_t j = 0; j < sz; ++j) g.scalRprime[j] = tmp[j] / phi[j];
  return g;
}

namespace {

// Warped-product connection in the orthonormal frame {e_0 = radial, f_a}.
ConnectionCoefficients warped_gamma(double wprime, double psi) {
  ConnectionCoefficients G{};
  const double q = wprime / psi;
  for (int a = 1; a < kDim; ++a) {
    G[static_cast<std::size_t>((a * kDim + 0) * kDim + a)] = q;   // nabla_{f_a} e_0
    G[static_cast<std::size_t>((a * kDim + a) * kDim + 0)] = -q;  // nabla_{f_a} f_a
    for (int b = 1; b < kDim; ++b)
      for (int c = 1; c < kDim; ++c)
        G[static_cast<std::size_t>((a * kDim + b) * kDim + c)] =
            epsilon3(a - 1, b - 1, c - 1) / psi;
  }
  return G;
}

}  // namespace

std::vector<PointData> point_data(const GeometryState& state) {
  validate_state(state);
  const auto& entry = *state.entry;
  std::vector<PointData> out;
  if (entry.kind != FamilyKind::Warped) {
    const HomogeneousData h = homogeneous_data(entry, state.params);
    PointData p;
    p.curvature = h.rm;
    p.ricci = h.rc;
    p.scalR = h.scalR;
    p.derivs = h.derivs;
    p.weight = h.vol;
    out.push_back(std::move(p));
    return out;
  }

  const WarpedGeometry g = warped_geometry(state);
  const auto n = static_cast<std::size_t>(g.n);
  out.reserve(n);
  std::span<const double> psi(state.params.data() + g.n, n);
  for (std::size_t j = 0; j < n; ++j) {
    PointData p;
    const double A = g.A[j], B = g.B[j];
    const RmComponent gen[] = {{0, 1, 0, 1, A}, {0, 2, 0, 2, A},
                               {0, 3, 0, 3, A}, {1, 2, 1, 2, B},
                               {1, 3, 1, 3, B}, {2, 3, 2, 3, B}};
    p.curvature = build_curvature(gen);
    p.ricci = Sym2Tensor::diagonal(g.rho0[j], g.rho1[j], g.rho1[j], g.rho1[j]);
    p.scalR = g.scalR[j];
    const ConnectionCoefficients G = warped_gamma(g.wprime[j], psi[j]);
    Sym2Tensor e0rc = Sym2Tensor::diagonal(g.rho0prime[j], g.rho1prime[j],
                                           g.rho1prime[j], g.rho1prime[j]);
    p.derivs = grad_from_gamma(G, p.ricci, &e0rc, g.scalRprime[j]);
    p.weight = g.weight[j];
    out.push_back(std::move(p));
  }
  return out;
}

void density_scalars(const GeometryState& state,
                     std::vector<PointScalars>& out) {
  const auto& entry = *state.entry;
  out.clear();
  if (entry.kind != FamilyKind::Warped) {
    const HomogeneousData h = homogeneous_data(entry, state.params);
    PointScalars s{};
    s.weight = h.vol;
    s.scalR = h.scalR;
    const Norms nn = norms(h.rm, h.rc, Sym2Tensor::identity());
    s.rc2 = nn.rc2;
    s.rm2 = nn.rm2;
    for (double v : h.derivs.gradRc) s.grad2 += v * v;
    out.push_back(s);
    return;
  }
  const WarpedGeometry g = warped_geometry(state);
  const auto n = static_cast<std::size_t>(g.n);
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    PointScalars& s = out[j];
    const double A = g.A[j], B = g.B[j];
    s.weight = g.weight[j];
    s.scalR = g.scalR[j];
    s.rm2 = 12.0 * (A * A + B * B);
    s.rc2 = g.rho0[j] * g.rho0[j] + 3.0 * g.rho1[j] * g.rho1[j];
    const double psi = state.params[static_cast<std::size_t>(g.n) + j];
    const double mixed = (g.wprime[j] / psi) * (g.rho0[j] - g.rho1[j]);
    s.grad2 = g.rho0prime[j] * g.rho0prime[j] +
              3.0 * g.rho1prime[j] * g.rho1prime[j] + 6.0 * mixed * mixed;
  }
}

double integrate(const GeometryState& state, std::span<const double> density) {
  const auto& entry = *state.entry;
  if (entry.kind != FamilyKind::Warped) {
    if (density.size() != 1)
      throw ArityMismatch("expected one density value for a one-point family");
    return density[0] * volume(state);
  }
  const WarpedGeometry g = warped_geometry(state);
  if (density.size() != static_cast<std::size_t>(g.n))
    throw ArityMismatch("density size does not match the grid");
  double s = 0.0;
  for (std::size_t j = 0; j < density.size(); ++j) s += density[j] * g.weight[j];
  return s;
}

double volume(const GeometryState& state) {
  validate_state(state);
  const auto& entry = *state.entry;
  const auto& x = state.params;
  if (entry.name == "S4") return (8.0 * kPi * kPi / 3.0) * x[0] * x[0];
  if (entry.name == "S2xS2") return 16.0 * kPi * kPi * x[0] * x[1];
  if (entry.kind == FamilyKind::Warped) {
    const int n = state.gridN();
    const double h = 2.0 * kPi / n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = x[static_cast<std::size_t>(j)];
      const double psi = x[static_cast<std::size_t>(n + j)];
      s += phi * psi * psi * psi;
    }
    return s * 2.0 * kPi * kPi * h;
  }
  return entry.latticeVolumeFactor *
         std::sqrt(x[0] * x[1] * x[2] * x[3]);
}

std::array<double, 4> frame_ricci_diagonal(const CatalogEntry& entry,
                                           std::span<const double> params) {
  const HomogeneousData h = homogeneous_data(entry, params);
  double offmax = 0.0;
  double scale = 1.0;
  for (int i = 0; i < kDim; ++i) {
    scale = std::max(scale, std::abs(h.rc(i, i)));
    for (int j = i + 1; j < kDim; ++j) offmax = std::max(offmax, std::abs(h.rc(i, j)));
  }
  if (offmax > 1e-10 * scale)
    throw DomainError(entry.name + ": Ricci not frame-diagonal");
  return {h.rc(0, 0), h.rc(1, 1), h.rc(2, 2), h.rc(3, 3)};
}

}  // namespace ricci
