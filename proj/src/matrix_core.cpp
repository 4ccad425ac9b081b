#include "intranoise/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "intranoise/error.hpp"

namespace intranoise {

CMat4 tensor2x2(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

CMat4 outer(const CVec4& u, const CVec4& v) {
  CMat4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

CMat2 pauli_x() { return CMat2{0.0, 1.0, 1.0, 0.0}; }
CMat2 pauli_y() { return CMat2{0.0, Complex(0, -1), Complex(0, 1), 0.0}; }
CMat2 pauli_z() { return CMat2{1.0, 0.0, 0.0, -1.0}; }

const CMat4& spin_flip() {
  static const CMat4 u = tensor2x2(pauli_y(), pauli_y());
  return u;
}

namespace {

double off_diagonal_norm(const CMat4& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Unitary rotation in the (p, q) plane that diagonalizes the Hermitian 2x2
// block [[app, apq], [conj(apq), aqq]] when applied as J^dagger A J.
// apq = |apq| e^{i phi}; J = [[c, s e], [-s conj(e), c]] with the real
// Jacobi angle computed from |apq|.
struct PlaneRotation {
  std::size_t p, q;
  double c, s;
  Complex phase;
};

PlaneRotation make_rotation(std::size_t p, std::size_t q, double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {p, q, c, t * c, apq / mag};
}

// m <- m J (acts on columns p and q).
void rotate_columns(CMat4& m, const PlaneRotation& r) {
  const Complex se = r.s * r.phase;
  const Complex sce = r.s * std::conj(r.phase);
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex mp = m(i, r.p);
    const Complex mq = m(i, r.q);
    m(i, r.p) = r.c * mp - sce * mq;
    m(i, r.q) = se * mp + r.c * mq;
  }
}

// m <- J^dagger m (acts on rows p and q).
void rotate_rows(CMat4& m, const PlaneRotation& r) {
  const Complex se = r.s * r.phase;
  const Complex sce = r.s * std::conj(r.phase);
  for (std::size_t j = 0; j < 4; ++j) {
    const Complex mp = m(r.p, j);
    const Complex mq = m(r.q, j);
    m(r.p, j) = r.c * mp - std::conj(sce) * mq;
    m(r.q, j) = std::conj(se) * mp + r.c * mq;
  }
}

}  // namespace

HermitianEigensystem eigh4(const CMat4& h) {
  const double herm_err = hermiticity_error(h);
  if (!(herm_err <= tolerance::kHermitian)) {
    std::ostringstream os;
    os << "eigh4: matrix is not Hermitian (max |h - h^dagger| = " << herm_err << ")";
    throw Error(ErrorKind::NotHermitian, os.str());
  }

  // Work on the exactly Hermitian part.
  CMat4 a = (h + adjoint(h)) * Complex(0.5);
  CMat4 v = CMat4::identity();
  const double scale = frobenius_norm(a);

  int sweep = 0;
  for (; sweep < tolerance::kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tolerance::kJacobiRelative * scale) break;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        if (a(p, q) == Complex{}) continue;
        const auto r = make_rotation(p, q, a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, r);
        rotate_rows(a, r);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, r);
      }
    }
  }
  if (sweep == tolerance::kJacobiMaxSweeps &&
      off_diagonal_norm(a) > tolerance::kJacobiRelative * scale)
    throw Error(ErrorKind::NoConvergence, "eigh4: Jacobi did not converge in 100 sweeps");

  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEigensystem out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < 4; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

RealArray4 eig_hermitian4(const CMat4& h) { return eigh4(h).values; }

CMat4 psd_sqrt(const CMat4& h) {
  const auto es = eigh4(h);
  CMat4 out;
  for (std::size_t k = 0; k < 4; ++k) {
    double lambda = es.values[k];
    if (lambda < -tolerance::kPsdClamp) {
      std::ostringstream os;
      os << "psd_sqrt: eigenvalue " << lambda << " below -1e-9";
      throw Error(ErrorKind::NotPSD, os.str());
    }
    if (lambda <= 0.0) continue;
    const double root = std::sqrt(lambda);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        out(i, j) += root * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return out;
}

RealArray4 singular_values4(const CMat4& m) {
  CMat4 a = m;
  const double scale = frobenius_norm(a);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto column_dot = [&](std::size_t p, std::size_t q) {
    Complex s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(a(i, p)) * a(i, q);
    return s;
  };

  if (scale > 0.0) {
    for (int sweep = 0; sweep < tolerance::kJacobiMaxSweeps; ++sweep) {
      bool rotated = false;
      for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t q = p + 1; q < 4; ++q) {
          const double alpha = column_dot(p, p).real();
          const double beta = column_dot(q, q).real();
          const Complex gamma = column_dot(p, q);
          if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) ||
              std::abs(gamma) <= eps * eps * scale * scale)
            continue;
          rotated = true;
          rotate_columns(a, make_rotation(p, q, alpha, beta, gamma));
        }
      }
      if (!rotated) break;
    }
  }

  RealArray4 sv;
  for (std::size_t k = 0; k < 4; ++k) sv[k] = std::sqrt(column_dot(k, k).real());
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace intranoise
