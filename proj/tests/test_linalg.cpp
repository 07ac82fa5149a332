#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dgw/chain.hpp"
#include "dgw/linalg.hpp"

using namespace dgw;

namespace {

Matrix zmat(const std::vector<std::vector<long>>& r) { return Matrix::from_ints(Ring::integers(), r); }

// gcd of all k x k minors, by brute force over row/column subsets
mpz_class determinantal_divisor(const Matrix& m, std::size_t k) {
  mpz_class g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::function<void(std::size_t, std::size_t)> pick_rows, pick_cols;
  pick_cols = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      Matrix sub(Ring::integers(), k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.set(i, j, m.at(rows[i], cols[j]));
      mpz_class d = determinant(sub).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (std::size_t c = start; c < m.cols(); ++c) {
      cols[depth] = c;
      pick_cols(c + 1, depth + 1);
    }
  };
  pick_rows = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows(); ++r) {
      rows[depth] = r;
      pick_rows(r + 1, depth + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("ring parsing and normalization") {
    CHECK(Ring::parse("F3") == Ring::fp(3));
    CHECK(Ring::parse("Fp:5") == Ring::fp(5));
    CHECK(Ring::parse("Q") == Ring::rationals());
    CHECK_THROWS_AS(Ring::parse("F4"), InputError);
    CHECK_THROWS_AS(Ring::parse("R"), InputError);
    CHECK(Ring::fp(5).normalize(Scalar(-1)) == 4);
    CHECK(Ring::fp(5).normalize(Scalar(1, 2)) == 3);
    CHECK_THROWS_AS(Ring::integers().normalize(Scalar(1, 2)), InputError);
    CHECK(scalar_from_string("-2/6") == Scalar(-1, 3));
    CHECK(scalar_to_string(Scalar(-1, 3)) == "-1/3");
  }

  TEST_CASE("smith normal form fixed cases") {
    Smith e = smith_normal_form(Matrix(Ring::integers(), 0, 0));
    CHECK(e.D.rows() == 0);
    Smith id = smith_normal_form(Matrix::identity(Ring::integers(), 2));
    CHECK(id.D == Matrix::identity(Ring::integers(), 2));
    Smith s = smith_normal_form(zmat({{2, 4}, {6, 8}}));
    CHECK(s.D == zmat({{2, 0}, {0, 4}}));
    CHECK(s.U * zmat({{2, 4}, {6, 8}}) * s.V == s.D);
  }

  TEST_CASE("smith normal form random against determinantal divisors") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int t = 0; t < 60; ++t) {
      std::size_t r = dim(rng), c = dim(rng);
      Matrix m = random_matrix(rng, Ring::integers(), r, c, 5);
      Smith s = smith_normal_form(m);
      REQUIRE(s.U * m * s.V == s.D);
      CHECK(abs(determinant(s.U)) == 1);
      CHECK(abs(determinant(s.V)) == 1);
      CHECK(s.U * s.U_inv == Matrix::identity(Ring::integers(), r));
      CHECK(s.V * s.V_inv == Matrix::identity(Ring::integers(), c));
      for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
          if (i != j) CHECK(s.D.is_zero_at(i, j));
      for (std::size_t i = 1; i < s.divisors.size(); ++i) {
        mpz_class a = s.divisors[i - 1].get_num(), b = s.divisors[i].get_num();
        CHECK(b % a == 0);
      }
      mpz_class prod = 1;
      for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        mpz_class dk = determinantal_divisor(m, k);
        if (k <= s.divisors.size()) {
          prod *= s.divisors[k - 1].get_num();
          CHECK(prod == dk);
        } else {
          CHECK(dk == 0);
        }
      }
    }
  }

  TEST_CASE("solve_linear examples") {
    Ring Z = Ring::integers(), Q = Ring::rationals();
    Matrix b = Matrix::from_ints(Q, {{3}, {-7}});
    CHECK(*solve_linear(Matrix::identity(Q, 2), b) == b);
    CHECK_FALSE(solve_linear(zmat({{2}}), zmat({{3}})).has_value());
    CHECK(*solve_linear(Matrix::from_ints(Q, {{2}}), Matrix::from_ints(Q, {{3}})) ==
          Matrix::from_rows(Q, {{Scalar(3, 2)}}));
    CHECK_THROWS_AS(solve_linear(Matrix::identity(Q, 2), Matrix(Q, 3, 1)), InputError);
    CHECK(*solve_linear(zmat({{2, 4}, {6, 8}}), zmat({{2}, {6}})) == zmat({{1}, {0}}));
    CHECK_FALSE(solve_linear(Matrix(Z, 1, 1), zmat({{1}})).has_value());
  }

  TEST_CASE("solve_linear random consistency") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(1, 6);
    for (Ring R : {Ring::fp(2), Ring::fp(3), Ring::fp(5), Ring::rationals(), Ring::integers()}) {
      for (int t = 0; t < 40; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        Matrix a = random_matrix(rng, R, r, c, 3);
        Matrix x0 = random_matrix(rng, R, c, 2, 3);
        Matrix b = a * x0;
        auto x = solve_linear(a, b);
        REQUIRE(x.has_value());
        CHECK(a * *x == b);
        Matrix b2 = random_matrix(rng, R, r, 1, 3);
        auto y = solve_linear(a, b2);
        if (y) CHECK(a * *y == b2);
        else if (R.is_field()) CHECK(rank(a) < rank(a.hcat(b2)));
      }
    }
  }

  TEST_CASE("kernel, image, cokernel") {
    for (Ring R : {Ring::fp(3), Ring::rationals(), Ring::integers()}) {
      CHECK(kernel_basis(Matrix::identity(R, 3)).cols() == 0);
      CHECK(kernel_basis(Matrix(R, 3, 3)).cols() == 3);
    }
    CokernelData c = cokernel_data(zmat({{2}}));
    CHECK(c.free_rank == 0);
    REQUIRE(c.torsion.size() == 1);
    CHECK(c.torsion[0] == 2);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dim(1, 6);
    for (Ring R : {Ring::fp(2), Ring::fp(5), Ring::rationals(), Ring::integers()}) {
      for (int t = 0; t < 40; ++t) {
        std::size_t r = dim(rng), cc = dim(rng);
        Matrix m = random_matrix(rng, R, r, cc, 2) * random_matrix(rng, R, cc, cc, 1);
        Matrix K = kernel_basis(m);
        CHECK((m * K).is_zero());
        CHECK(rank(K) == K.cols());
        CHECK(K.cols() == cc - rank(m));
        Matrix I = image_basis(m);
        CHECK(I.cols() == rank(m));
        CHECK(rank(I) == I.cols());
        CHECK(rank(m.hcat(I)) == rank(m));
        if (!R.is_field()) {
          // image columns lie in the integer span of m
          for (std::size_t j = 0; j < I.cols(); ++j) CHECK(solve_linear(m, I.column(j)).has_value());
        }
        Matrix L = left_kernel(m);
        CHECK((L * m).is_zero());
        CHECK(L.rows() == r - rank(m));
      }
    }
  }

  TEST_CASE("split monos and epis") {
    CHECK_FALSE(is_split_mono(zmat({{2}})));
    CHECK(is_split_mono(Matrix::from_ints(Ring::rationals(), {{2}})));
    CHECK(is_split_mono(zmat({{1}, {3}})));
    CHECK_FALSE(is_split_mono(zmat({{2}, {4}})));
    CHECK(is_split_epi(zmat({{2, 3}})));
    CHECK_FALSE(is_split_epi(zmat({{2, 4}})));
  }

  TEST_CASE("inverse and determinant") {
    Matrix m = zmat({{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(m * *inv == Matrix::identity(Ring::integers(), 2));
    CHECK_FALSE(inverse(zmat({{2, 0}, {0, 1}})).has_value());
    CHECK(determinant(Matrix::from_ints(Ring::fp(3), {{1, 2}, {2, 1}})) == 0);
  }
}
