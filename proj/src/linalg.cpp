#include "qsl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qsl {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(op) + ": shapes differ");
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.square()) throw DimensionMismatch(std::string(op) + ": matrix is not square");
}

void require_composite(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b, const char* op) {
  require_square(m, op);
  if (d_a == 0 || d_b == 0 || m.rows() != d_a * d_b)
    throw DimensionMismatch(std::string(op) + ": dimension is not d_a * d_b");
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!square()) throw DimensionMismatch("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return d;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("operator*: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex(0.0)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }
ComplexMatrix operator*(ComplexMatrix m, Complex scale) { return m *= scale; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Complex v = a(ra, ca);
      if (v == Complex(0.0)) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          out(ra * b.rows() + rb, ca * b.cols() + cb) = v * b(rb, cb);
    }
  return out;
}

double distance_2(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "distance_2");
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s += std::norm(a(r, c) - b(r, c));
  return std::sqrt(s);
}

/* Cyclic Jacobi sweeps for a complex Hermitian matrix.  Each rotation zeroes
   one off-diagonal pair (p, q) with the unitary

       J = I  except  J_pp = c,  J_pq = sigma,  J_qp = -conj(sigma),  J_qq = c

   where sigma = s * exp(i phase(a_pq)) and (c, s) are the classic real Jacobi
   cosine/sine for the magnitude |a_pq|.  A <- J^dagger A J preserves
   hermiticity and strictly reduces the off-diagonal Frobenius mass. */
EigResult eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
        throw NotHermitian("eig_hermitian: non-finite entry");
  if (m.hermiticity_defect() > tol_herm)
    throw NotHermitian("eig_hermitian: input deviates from Hermitian beyond 1e-10");

  const std::size_t n = m.rows();
  // Symmetrise so the iteration works on an exactly Hermitian matrix.
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(a(r, c)));
  const double threshold = 1e-13 * std::max(1.0, scale);

  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= threshold) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq <= threshold * 1e-2) continue;
        const Complex phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex sigma = s * phase;

        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = c * arp - std::conj(sigma) * arq;
          a(r, q) = sigma * arp + c * arq;
        }
        for (std::size_t cidx = 0; cidx < n; ++cidx) {
          const Complex apc = a(p, cidx);
          const Complex aqc = a(q, cidx);
          a(p, cidx) = c * apc - sigma * aqc;
          a(q, cidx) = std::conj(sigma) * apc + c * aqc;
        }
        // Clean the rotated pair: exact zeros on the target entries and real
        // diagonal keep roundoff from accumulating across sweeps.
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);

        for (std::size_t r = 0; r < n; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = c * vrp - std::conj(sigma) * vrq;
          v(r, q) = sigma * vrp + c * vrq;
        }
      }
    }
  }
  if (sweep == max_sweeps)
    throw NoConvergence("eig_hermitian: no convergence within 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigResult result;
  result.values.resize(n);
  result.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) result.vectors(r, k) = v(r, order[k]);
  }
  return result;
}

double schatten_norm(const ComplexMatrix& m, SchattenOrder order) {
  require_square(m, "schatten_norm");
  if (order == SchattenOrder::two) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) s += std::norm(m(r, c));
    return std::sqrt(s);
  }

  std::vector<double> singular;
  if (m.is_hermitian()) {
    const EigResult eig = eig_hermitian(m);
    singular.reserve(eig.values.size());
    for (double lambda : eig.values) singular.push_back(std::abs(lambda));
  } else {
    const EigResult eig = eig_hermitian(m.adjoint() * m);
    singular.reserve(eig.values.size());
    for (double lambda : eig.values) singular.push_back(std::sqrt(std::max(lambda, 0.0)));
  }
  if (order == SchattenOrder::one)
    return std::accumulate(singular.begin(), singular.end(), 0.0);
  return *std::max_element(singular.begin(), singular.end());
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b,
                                Subsystem which) {
  require_composite(m, d_a, d_b, "partial_transpose");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a1 = 0; a1 < d_a; ++a1)
    for (std::size_t b1 = 0; b1 < d_b; ++b1)
      for (std::size_t a2 = 0; a2 < d_a; ++a2)
        for (std::size_t b2 = 0; b2 < d_b; ++b2) {
          const std::size_t row = a1 * d_b + b1;
          const std::size_t col = a2 * d_b + b2;
          const std::size_t src_row = (which == Subsystem::a ? a2 : a1) * d_b +
                                      (which == Subsystem::b ? b2 : b1);
          const std::size_t src_col = (which == Subsystem::a ? a1 : a2) * d_b +
                                      (which == Subsystem::b ? b1 : b2);
          out(row, col) = m(src_row, src_col);
        }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b,
                            Subsystem traced) {
  require_composite(m, d_a, d_b, "partial_trace");
  if (traced == Subsystem::b) {
    ComplexMatrix out(d_a, d_a);
    for (std::size_t a1 = 0; a1 < d_a; ++a1)
      for (std::size_t a2 = 0; a2 < d_a; ++a2) {
        Complex s = 0.0;
        for (std::size_t b = 0; b < d_b; ++b) s += m(a1 * d_b + b, a2 * d_b + b);
        out(a1, a2) = s;
      }
    return out;
  }
  ComplexMatrix out(d_b, d_b);
  for (std::size_t b1 = 0; b1 < d_b; ++b1)
    for (std::size_t b2 = 0; b2 < d_b; ++b2) {
      Complex s = 0.0;
      for (std::size_t a = 0; a < d_a; ++a) s += m(a * d_b + b1, a * d_b + b2);
      out(b1, b2) = s;
    }
  return out;
}

LogOnSupport matrix_log_on_support(const ComplexMatrix& m, double eps) {
  const EigResult eig = eig_hermitian(m);
  const std::size_t n = m.rows();
  for (double lambda : eig.values)
    if (lambda < -eps)
      throw NotPSD("matrix_log_on_support: eigenvalue below -" + std::to_string(eps));

  LogOnSupport out{ComplexMatrix(n, n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda <= eps) continue;
    const double log_lambda = std::log(lambda);
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = eig.vectors(r, k);
      if (vr == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const Complex term = vr * std::conj(eig.vectors(c, k));
        out.log(r, c) += log_lambda * term;
        out.projector(r, c) += term;
      }
    }
  }
  return out;
}

}  // namespace qsl
