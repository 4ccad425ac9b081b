#include <doctest.h>

#include <random>

#include "intranoise/error.hpp"
#include "intranoise/matrix_core.hpp"
#include "oracles.hpp"

using namespace intranoise;

TEST_CASE("pauli algebra and spin flip") {
  const Complex i(0, 1);
  CHECK(pauli_x() * pauli_y() == pauli_z() * i);
  CHECK(pauli_y() * pauli_z() == pauli_x() * i);
  CHECK(pauli_x() * pauli_x() == CMat2::identity());

  const CMat4 expected{0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0};
  CHECK(max_abs_diff(spin_flip(), expected) == 0.0);
  CHECK(max_abs_diff(spin_flip() * spin_flip(), CMat4::identity()) == 0.0);
}

TEST_CASE("tensor product follows the |a1b1>,|a1b2>,|a2b1>,|a2b2> order") {
  const CMat2 a{1, 2, 3, 4};
  const CMat2 b{5, 6, 7, 8};
  const CMat4 k = tensor2x2(a, b);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(k(i, j) == a(i / 2, j / 2) * b(i % 2, j % 2));
}

TEST_CASE("outer product and matrix identities") {
  const CVec4 u{Complex(1, 1), 2, Complex(0, -1), 0.5};
  const CVec4 v{0.5, Complex(0, 2), 1, Complex(-1, 1)};
  const CMat4 m = outer(u, v);
  CHECK(m(0, 1) == u[0] * std::conj(v[1]));
  CHECK(max_abs_diff(adjoint(m), outer(v, u)) == 0.0);

  std::mt19937_64 gen(7);
  for (int t = 0; t < 50; ++t) {
    const CMat4 a = oracle::random_hermitian(gen);
    const CMat4 b = oracle::random_hermitian(gen) * Complex(0.3, 1.1);
    CHECK(std::abs(trace(a * b) - trace(b * a)) < 1e-12);
    CHECK(max_abs_diff(adjoint(a * b), adjoint(b) * adjoint(a)) < 1e-12);
    CHECK(max_abs_diff(mat_mul(a, b), a * b) == 0.0);
    CHECK(max_abs_diff(transpose(b), conjugate(adjoint(b))) == 0.0);
  }
}

TEST_CASE("initializer size is checked") {
  CHECK_THROWS_AS((CMat2{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("eigh4 agrees with the characteristic-polynomial oracle") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    const CMat4 h = oracle::random_hermitian(gen);
    const auto es = eigh4(h);
    const auto ref = oracle::eigenvalues(h);
    for (std::size_t k = 0; k < 4; ++k) CHECK(es.values[k] == doctest::Approx(ref[k]).epsilon(1e-9));
    CHECK(std::is_sorted(es.values.rbegin(), es.values.rend()));
    // H V = V diag(lambda), V unitary
    const CMat4 lhs = h * es.vectors;
    CMat4 rhs = es.vectors * CMat4::diagonal({es.values[0], es.values[1], es.values[2], es.values[3]});
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * frobenius_norm(h) + 1e-14);
    CHECK(max_abs_diff(adjoint(es.vectors) * es.vectors, CMat4::identity()) < 1e-13);
    double sum = 0.0;
    for (double l : es.values) sum += l;
    CHECK(sum == doctest::Approx(trace(h).real()).epsilon(1e-12));
  }
}

TEST_CASE("eigh4 handles degenerate and diagonal input") {
  CHECK(eig_hermitian4(CMat4::identity()) == RealArray4{1, 1, 1, 1});
  const auto d = eig_hermitian4(CMat4::diagonal({0.1, 0.7, -2.0, 0.7}));
  CHECK(d == RealArray4{0.7, 0.7, 0.1, -2.0});
  CHECK(eig_hermitian4(CMat4{}) == RealArray4{0, 0, 0, 0});
}

TEST_CASE("eigh4 rejects non-Hermitian input") {
  CMat4 m = CMat4::identity();
  m(0, 1) = 1e-6;
  try {
    (void)eigh4(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("psd_sqrt squares back for 100 random PSD matrices") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 100; ++t) {
    const CMat4 rho = oracle::random_density(gen);
    const CMat4 root = psd_sqrt(rho);
    CHECK(max_abs_diff(root * root, rho) < 1e-12);
    CHECK(hermiticity_error(root) < 1e-14);
    for (double l : eig_hermitian4(root)) CHECK(l >= 0.0);
  }
}

TEST_CASE("psd_sqrt clamps rounding negatives and rejects real ones") {
  const CMat4 nearly = CMat4::diagonal({0.5, 0.5, 0.0, -5e-10});
  const CMat4 root = psd_sqrt(nearly);
  CHECK(root(3, 3) == 0.0);
  CHECK(root(0, 0).real() == doctest::Approx(std::sqrt(0.5)));
  try {
    (void)psd_sqrt(CMat4::diagonal({1.0, 0.0, 0.0, -1e-6}));
    FAIL("expected NotPSD");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPSD);
  }
}

TEST_CASE("singular values match eigenvalues of m^dagger m") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> n;
  for (int t = 0; t < 100; ++t) {
    CMat4 m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const double re = n(gen);
        const double im = n(gen);
        m(i, j) = {re, im};
      }
    const auto sv = singular_values4(m);
    const auto ev = oracle::eigenvalues(adjoint(m) * m);
    for (std::size_t k = 0; k < 4; ++k)
      CHECK(sv[k] * sv[k] == doctest::Approx(ev[k]).epsilon(1e-9));
    CHECK(std::is_sorted(sv.rbegin(), sv.rend()));
  }
}

TEST_CASE("singular values keep absolute accuracy near zero") {
  // rank-2 matrix with a tiny third singular value
  const CMat4 m = CMat4::diagonal({1.0, 0.5, 1e-13, 0.0});
  const CMat4 u = tensor2x2(pauli_x(), CMat2{Complex(0.6, 0), Complex(0, 0.8), Complex(0, 0.8), Complex(0.6, 0)});
  const auto sv = singular_values4(u * m * adjoint(u));
  CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sv[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(sv[2] - 1e-13) < 1e-16);
  CHECK(std::abs(sv[3]) < 1e-16);
}
