#include "ricci/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ricci {

namespace {

struct OrbitEntry {
  std::array<int, 4> idx;
  double sign;
};

// The symmetry group of an algebraic curvature tensor acting on one index
// tuple: antisymmetry within each pair, symmetry under pair exchange.
void orbit_of(int i, int j, int k, int l, OrbitEntry out[8]) {
  out[0] = {{i, j, k, l}, +1.0};
  out[1] = {{j, i, k, l}, -1.0};
  out[2] = {{i, j, l, k}, -1.0};
  out[3] = {{j, i, l, k}, +1.0};
  out[4] = {{k, l, i, j}, +1.0};
  out[5] = {{l, k, i, j}, -1.0};
  out[6] = {{k, l, j, i}, -1.0};
  out[7] = {{l, k, j, i}, +1.0};
}

double max_abs_of(const std::array<double, 256>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Sym2Tensor Sym2Tensor::identity() {
  Sym2Tensor t;
  for (int i = 0; i < kDim; ++i) t.set(i, i, 1.0);
  return t;
}

Sym2Tensor Sym2Tensor::diagonal(double d0, double d1, double d2, double d3) {
  Sym2Tensor t;
  t.set(0, 0, d0);
  t.set(1, 1, d1);
  t.set(2, 2, d2);
  t.set(3, 3, d3);
  return t;
}

bool Sym2Tensor::is_identity() const {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if ((*this)(i, j) != (i == j ? 1.0 : 0.0)) return false;
  return true;
}

double Sym2Tensor::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Sym2Tensor inverse_metric(const Sym2Tensor& g) {
  // Cholesky factorization; failure of a pivot means g is not positive
  // definite (or numerically singular).
  const double floor = 1e-13 * std::max(1.0, g.max_abs());
  double L[kDim][kDim] = {};
  for (int j = 0; j < kDim; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= L[j][k] * L[j][k];
    if (!(d > floor)) throw SingularMetric("metric is not positive definite");
    L[j][j] = std::sqrt(d);
    for (int i = j + 1; i < kDim; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
      L[i][j] = s / L[j][j];
    }
  }
  // Invert the lower-triangular factor.
  double Li[kDim][kDim] = {};
  for (int i = 0; i < kDim; ++i) {
    Li[i][i] = 1.0 / L[i][i];
    for (int j = 0; j < i; ++j) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s += L[i][k] * Li[k][j];
      Li[i][j] = -s / L[i][i];
    }
  }
  // g^{-1} = Li^T Li.
  Sym2Tensor inv;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      double s = 0.0;
      for (int k = std::max(i, j); k < kDim; ++k) s += Li[k][i] * Li[k][j];
      inv.set(i, j, s);
    }
  return inv;
}

double CurvatureTensor::max_abs() const { return max_abs_of(c_); }

CurvatureTensor build_curvature(const std::array<double, 256>& raw) {
  const double scale = max_abs_of(raw);
  const double tol = kSymmetryTol * scale;

  CurvatureTensor t;
  std::array<bool, 256> seen{};
  OrbitEntry orbit[8];
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          const double v = raw[CurvatureTensor::index(i, j, k, l)];
          if (v == 0.0) continue;  // unspecified
          orbit_of(i, j, k, l, orbit);
          for (const auto& o : orbit) {
            const std::size_t q = CurvatureTensor::index(o.idx[0], o.idx[1],
                                                         o.idx[2], o.idx[3]);
            const double cand = o.sign * v;
            if (seen[q]) {
              if (std::abs(t.c_[q] - cand) > tol)
                throw SymmetryViolation(
                    "curvature components contradict the index symmetries");
            } else {
              t.c_[q] = cand;
              seen[q] = true;
            }
          }
        }
  validate_curvature(t);
  return t;
}

CurvatureTensor build_curvature(std::span<const RmComponent> generators) {
  std::array<double, 256> raw{};
  for (const auto& gcomp : generators) {
    for (int v : {gcomp.i, gcomp.j, gcomp.k, gcomp.l})
      if (v < 0 || v >= kDim)
        throw SymmetryViolation("curvature index out of range");
    raw[CurvatureTensor::index(gcomp.i, gcomp.j, gcomp.k, gcomp.l)] =
        gcomp.value;
  }
  return build_curvature(raw);
}

void validate_curvature(const CurvatureTensor& rm) {
  const double scale = rm.max_abs();
  if (scale == 0.0) return;
  const double tol = kSymmetryTol * scale;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          const double v = rm(i, j, k, l);
          if (std::abs(v + rm(j, i, k, l)) > tol ||
              std::abs(v + rm(i, j, l, k)) > tol)
            throw SymmetryViolation("pair antisymmetry violated");
          if (std::abs(v - rm(k, l, i, j)) > tol)
            throw SymmetryViolation("pair exchange symmetry violated");
          if (std::abs(v + rm(i, k, l, j) + rm(i, l, j, k)) > 3.0 * tol)
            throw SymmetryViolation("first Bianchi identity violated");
        }
}

CurvatureTensor constant_curvature(double sectional) {
  std::array<double, 256> raw{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          const double v = sectional * ((i == k && j == l ? 1.0 : 0.0) -
                                        (i == l && j == k ? 1.0 : 0.0));
          raw[CurvatureTensor::index(i, j, k, l)] = v;
        }
  return build_curvature(raw);
}

CurvatureTensor random_curvature(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<double, 256> a;
  for (auto& v : a) v = gauss(rng);

  // Symmetrize over the pair group, then drop the totally antisymmetric
  // (cyclic-average) part so the first Bianchi identity holds.
  std::array<double, 256> s{};
  OrbitEntry orbit[8];
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          orbit_of(i, j, k, l, orbit);
          double acc = 0.0;
          for (const auto& o : orbit)
            acc += o.sign * a[CurvatureTensor::index(o.idx[0], o.idx[1],
                                                     o.idx[2], o.idx[3])];
          s[CurvatureTensor::index(i, j, k, l)] = acc / 8.0;
        }
  std::array<double, 256> out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          const double cyc = (s[CurvatureTensor::index(i, j, k, l)] +
                              s[CurvatureTensor::index(i, k, l, j)] +
                              s[CurvatureTensor::index(i, l, j, k)]) /
                             3.0;
          out[CurvatureTensor::index(i, j, k, l)] =
              s[CurvatureTensor::index(i, j, k, l)] - cyc;
        }
  return build_curvature(out);
}

Sym2Tensor ricci_of(const CurvatureTensor& rm, const Sym2Tensor& g) {
  Sym2Tensor rc;
  if (g.is_identity()) {
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) {
        double s = 0.0;
        for (int k = 0; k < kDim; ++k) s += rm(i, k, j, k);
        rc.set(i, j, s);
      }
    return rc;
  }
  const Sym2Tensor ginv = inverse_metric(g);
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      double s = 0.0;
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) s += ginv(k, l) * rm(i, k, j, l);
      rc.set(i, j, s);
    }
  return rc;
}

double scalar_of(const Sym2Tensor& rc, const Sym2Tensor& g) {
  double s = 0.0;
  if (g.is_identity()) {
    for (int i = 0; i < kDim; ++i) s += rc(i, i);
    return s;
  }
  const Sym2Tensor ginv = inverse_metric(g);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) s += ginv(i, j) * rc(i, j);
  return s;
}

namespace {

// Contract index `pos` of a rank-4 component array against ginv.
std::array<double, 256> raise_index(const std::array<double, 256>& t,
                                    const Sym2Tensor& ginv, int pos) {
  std::array<double, 256> out{};
  int idx[4];
  for (idx[0] = 0; idx[0] < kDim; ++idx[0])
    for (idx[1] = 0; idx[1] < kDim; ++idx[1])
      for (idx[2] = 0; idx[2] < kDim; ++idx[2])
        for (idx[3] = 0; idx[3] < kDim; ++idx[3]) {
          double s = 0.0;
          int src[4] = {idx[0], idx[1], idx[2], idx[3]};
          for (int m = 0; m < kDim; ++m) {
            src[pos] = m;
            s += ginv(idx[pos], m) *
                 t[CurvatureTensor::index(src[0], src[1], src[2], src[3])];
          }
          out[CurvatureTensor::index(idx[0], idx[1], idx[2], idx[3])] = s;
        }
  return out;
}

std::array<double, 256> fully_raised(const CurvatureTensor& rm,
                                     const Sym2Tensor& ginv) {
  std::array<double, 256> t;
  std::copy(rm.components().begin(), rm.components().end(), t.begin());
  for (int pos = 0; pos < 4; ++pos) t = raise_index(t, ginv, pos);
  return t;
}

}  // namespace

Norms norms(const CurvatureTensor& rm, const Sym2Tensor& rc,
            const Sym2Tensor& g) {
  Norms n{0.0, 0.0};
  if (g.is_identity()) {
    for (double v : rm.components()) n.rm2 += v * v;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) n.rc2 += rc(i, j) * rc(i, j);
    return n;
  }
  const Sym2Tensor ginv = inverse_metric(g);
  const auto up = fully_raised(rm, ginv);
  const auto lo = rm.components();
  for (std::size_t q = 0; q < up.size(); ++q) n.rm2 += up[q] * lo[q];
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l)
          n.rc2 += ginv(i, k) * ginv(j, l) * rc(i, j) * rc(k, l);
  return n;
}

double rm_bilinear(const CurvatureTensor& rm, const Sym2Tensor& rc,
                   const Sym2Tensor& g) {
  double s = 0.0;
  if (g.is_identity()) {
    for (int i = 0; i < kDim; ++i)
      for (int k = 0; k < kDim; ++k)
        for (int j = 0; j < kDim; ++j)
          for (int l = 0; l < kDim; ++l)
            s += rm(i, k, j, l) * rc(i, j) * rc(k, l);
    return s;
  }
  const auto up = fully_raised(rm, inverse_metric(g));
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k)
      for (int j = 0; j < kDim; ++j)
        for (int l = 0; l < kDim; ++l)
          s += up[CurvatureTensor::index(i, k, j, l)] * rc(i, j) * rc(k, l);
  return s;
}

double gauss_bonnet_density(const CurvatureTensor& rm, const Sym2Tensor& rc,
                            double scalR, const Sym2Tensor& g) {
  const Norms n = norms(rm, rc, g);
  return n.rm2 - 4.0 * n.rc2 + scalR * scalR;
}

double f_density(double normRc2, double scalR, double c) {
  const double den = scalR + c;
  if (!(den > 0.0))
    throw DenominatorNonpositive("f density requires R + c > 0");
  return normRc2 / den;
}

double z_norm_sq(const CurvatureDerivatives& d, const Sym2Tensor& rc,
                 double scalR, double c, const Sym2Tensor& g) {
  const double den = scalR + c;
  if (!(den > 0.0)) throw DenominatorNonpositive("Z requires R + c > 0");
  std::array<double, 64> z;
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int s = 0; s < kDim; ++s)
        z[static_cast<std::size_t>((k * kDim + i) * kDim + s)] =
            d.rc(k, i, s) * den - d.gradR[static_cast<std::size_t>(k)] * rc(i, s);

  double out = 0.0;
  if (g.is_identity()) {
    for (double v : z) out += v * v;
    return out;
  }
  const Sym2Tensor ginv = inverse_metric(g);
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int s = 0; s < kDim; ++s)
        for (int a = 0; a < kDim; ++a)
          for (int b = 0; b < kDim; ++b)
            for (int e = 0; e < kDim; ++e)
              out += ginv(k, a) * ginv(i, b) * ginv(s, e) *
                     z[static_cast<std::size_t>((k * kDim + i) * kDim + s)] *
                     z[static_cast<std::size_t>((a * kDim + b) * kDim + e)];
  return out;
}

MarginReport young_pointwise_check(const CurvatureTensor& rm,
                                   const Sym2Tensor& rc, double scalR,
                                   const Sym2Tensor& g, double c) {
  const double den = scalR + c;
  if (!(den > 0.0))
    throw DenominatorNonpositive("Young step requires R + c > 0");
  const Norms n = norms(rm, rc, g);
  const double lhs = 4.0 * rm_bilinear(rm, rc, g) / den;
  const double rhs = n.rc2 * n.rc2 / (2.0 * den * den) + 8.0 * n.rm2;
  return {lhs, rhs, rhs - lhs};
}

PointwiseDensities pointwise_densities(const CurvatureTensor& rm,
                                       const Sym2Tensor& rc, double scalR,
                                       const CurvatureDerivatives& d,
                                       const Sym2Tensor& g, double c) {
  PointwiseDensities out;
  const Norms n = norms(rm, rc, g);
  out.normRc2 = n.rc2;
  out.normRm2 = n.rm2;
  out.scalR = scalR;
  out.gbDensity = n.rm2 - 4.0 * n.rc2 + scalR * scalR;
  out.rmBilinear = rm_bilinear(rm, rc, g);
  out.fDensity = f_density(n.rc2, scalR, c);
  out.zNorm2 = z_norm_sq(d, rc, scalR, c, g);
  return out;
}

}  // namespace ricci
