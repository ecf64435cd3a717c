#include "tracemono/matcore.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace tracemono {

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

Matrix symmetrize(const Matrix& h) {
  return 0.5 * (h + h.adjoint());
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

HermitianMatrix::HermitianMatrix(Matrix m, double herm_tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw InvalidInput("HermitianMatrix: square nonempty matrix required");
  if (!all_finite(m_)) throw InvalidInput("HermitianMatrix: non-finite entries");
  double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (hermiticity_defect(m_) > herm_tol * scale)
    throw InvalidInput("HermitianMatrix: hermiticity defect above tolerance");
}

PsdMatrix::PsdMatrix(Matrix m, double psd_tol) : HermitianMatrix(std::move(m), psd_tol) {
  double lo = min_eigenvalue(mat());
  if (lo < -psd_tol * std::max(1.0, spectral_norm(mat())))
    throw InvalidInput("PsdMatrix: negative eigenvalue " + std::to_string(lo));
}

PdMatrix::PdMatrix(Matrix m, double pd_floor)
    : PsdMatrix(std::move(m), pd_floor), floor_(pd_floor) {
  if (pd_floor <= 0.0) throw InvalidInput("PdMatrix: pd_floor must be positive");
  double lo = min_eigenvalue(mat());
  if (lo < pd_floor)
    throw InvalidInput("PdMatrix: minimum eigenvalue below floor");
}

SpectralDecomposition herm_eig(const Matrix& h) {
  if (!all_finite(h)) throw InvalidInput("herm_eig: non-finite entries");
  if (h.rows() != h.cols()) throw InvalidInput("herm_eig: square matrix required");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(h));
  if (es.info() != Eigen::Success) throw InvalidInput("herm_eig: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

SpectralDecomposition herm_eig(const HermitianMatrix& h) {
  return herm_eig(h.mat());
}

namespace {

double effective_floor(const RealVector& eigs, double pd_floor) {
  if (pd_floor > 0.0) return pd_floor;
  double norm = eigs.cwiseAbs().maxCoeff();
  return 1e-10 * std::max(norm, 1e-300);
}

Matrix rebuild(const SpectralDecomposition& sd, const RealVector& mapped) {
  return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

}  // namespace

Matrix mat_pow(const Matrix& a, double p, double pd_floor) {
  SpectralDecomposition sd = herm_eig(a);
  Index n = sd.eigenvalues.size();
  RealVector mapped(n);
  if (p > 0.0) {
    double norm = sd.eigenvalues.cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i) {
      double lam = sd.eigenvalues(i);
      if (lam < -1e-10 * std::max(1.0, norm))
        throw InvalidInput("mat_pow: input not PSD");
      mapped(i) = lam > 0.0 ? std::pow(lam, p) : 0.0;
    }
  } else {
    double floor = effective_floor(sd.eigenvalues, pd_floor);
    for (Index i = 0; i < n; ++i) {
      double lam = sd.eigenvalues(i);
      if (lam < floor)
        throw SingularMatrix("mat_pow: eigenvalue below pd_floor for p <= 0");
      mapped(i) = p == 0.0 ? 1.0 : std::pow(lam, p);
    }
  }
  return rebuild(sd, mapped);
}

Matrix mat_pow(const PsdMatrix& a, double p) {
  if (p < 0.0) throw SingularMatrix("mat_pow: negative power needs PdMatrix");
  return mat_pow(a.mat(), p);
}

Matrix mat_pow(const PdMatrix& a, double p) {
  return mat_pow(a.mat(), p, a.floor());
}

Matrix mat_pow_complex(const Matrix& a, Complex z, double pd_floor) {
  SpectralDecomposition sd = herm_eig(a);
  double floor = effective_floor(sd.eigenvalues, pd_floor);
  Index n = sd.eigenvalues.size();
  Vector mapped(n);
  for (Index i = 0; i < n; ++i) {
    double lam = sd.eigenvalues(i);
    if (lam < floor) throw SingularMatrix("mat_pow_complex: input not PD");
    mapped(i) = std::exp(z * std::log(lam));
  }
  return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

Matrix mat_log(const Matrix& a, double pd_floor) {
  SpectralDecomposition sd = herm_eig(a);
  double floor = effective_floor(sd.eigenvalues, pd_floor);
  Index n = sd.eigenvalues.size();
  RealVector mapped(n);
  for (Index i = 0; i < n; ++i) {
    double lam = sd.eigenvalues(i);
    if (lam < floor) throw SingularMatrix("mat_log: input not PD");
    mapped(i) = std::log(lam);
  }
  return rebuild(sd, mapped);
}

Matrix pinv(const Matrix& a, double pinv_cut) {
  SpectralDecomposition sd = herm_eig(a);
  double cut = pinv_cut * sd.eigenvalues.cwiseAbs().maxCoeff();
  Index n = sd.eigenvalues.size();
  RealVector mapped(n);
  for (Index i = 0; i < n; ++i) {
    double lam = sd.eigenvalues(i);
    mapped(i) = lam > cut ? 1.0 / lam : 0.0;
  }
  return rebuild(sd, mapped);
}

Matrix pinv(const PsdMatrix& a, double pinv_cut) {
  return pinv(a.mat(), pinv_cut);
}

double schatten(const Matrix& x, double p) {
  if (!(p > 0.0)) throw DomainError("schatten: p must be positive");
  if (!all_finite(x)) throw InvalidInput("schatten: non-finite entries");
  // Singular values via the Gram matrix; dimensions here never exceed ~64.
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(x.adjoint() * x),
                                           Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = std::max(es.eigenvalues()(i), 0.0);
    sum += std::pow(lam, 0.5 * p);
  }
  return std::pow(sum, 1.0 / p);
}

LoewnerResult loewner_geq(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("loewner_geq: dimension mismatch");
  double lo = min_eigenvalue(a - b);
  double scale = std::max({1.0, spectral_norm(a), spectral_norm(b)});
  return {lo >= -tol * scale, lo};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  Index rows = j.at("rows").get<Index>();
  Index cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (rows <= 0 || cols <= 0 || static_cast<Index>(data.size()) != rows * cols)
    throw InvalidInput("matrix_from_json: inconsistent shape");
  Matrix m(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index jj = 0; jj < cols; ++jj, ++k)
      m(i, jj) = Complex(data[k][0].get<double>(), data[k][1].get<double>());
  if (!all_finite(m)) throw InvalidInput("matrix_from_json: non-finite entries");
  return m;
}

}  // namespace tracemono
