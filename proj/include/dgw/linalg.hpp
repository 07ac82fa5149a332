#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dgw {

using Scalar = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed user input, bad shapes, d^2 != 0 and friends
struct InputError : Error {
  using Error::Error;
};

struct OutOfWindow : Error {
  using Error::Error;
};

class Ring {
 public:
  enum class Kind { Fp, Q, Z };

  Ring() = default;
  static Ring fp(std::int64_t p);
  static Ring rationals() { return Ring(Kind::Q, 0); }
  static Ring integers() { return Ring(Kind::Z, 0); }
  // accepts "Fp:3", "F3", "Q", "Z"
  static Ring parse(const std::string& s);

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Z; }
  bool is_fp() const { return kind_ == Kind::Fp; }

  Scalar normalize(const Scalar& x) const;
  std::int64_t to_fp(const Scalar& x) const;
  std::string name() const;

  bool operator==(const Ring&) const = default;

 private:
  Ring(Kind k, std::int64_t p) : kind_(k), p_(p) {}
  Kind kind_ = Kind::Q;
  std::int64_t p_ = 0;
};

std::string scalar_to_string(const Scalar& x);
Scalar scalar_from_string(const std::string& s);

class Matrix {
 public:
  Matrix() = default;
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix identity(Ring ring, std::size_t n);
  static Matrix from_rows(Ring ring, const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_ints(Ring ring, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add_to(std::size_t r, std::size_t c, const Scalar& v);
  // fast paths; only valid for the matching storage
  std::int64_t fp_at(std::size_t r, std::size_t c) const { return fp_[r * cols_ + c]; }
  void fp_add(std::size_t r, std::size_t c, std::int64_t v);
  bool is_zero_at(std::size_t r, std::size_t c) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Scalar& coeff);
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix hcat(const Matrix& o) const;
  Matrix vcat(const Matrix& o) const;
  Matrix select_columns(const std::vector<std::size_t>& cs) const;

  std::vector<std::vector<std::string>> to_strings() const;
  std::string debug() const;

  std::vector<std::int64_t>& fp_data() { return fp_; }
  const std::vector<std::int64_t>& fp_data() const { return fp_; }
  std::vector<Scalar>& q_data() { return q_; }
  const std::vector<Scalar>& q_data() const { return q_; }

 private:
  Ring ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> fp_;
  std::vector<Scalar> q_;
};

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

struct Smith {
  Matrix U, D, V;        // U * m * V = D
  Matrix U_inv, V_inv;
  std::vector<Scalar> divisors;  // nonzero diagonal entries
};

struct CokernelData {
  std::size_t free_rank = 0;
  std::vector<Scalar> torsion;  // non-unit invariant factors, ascending divisibility
};

std::size_t rank(const Matrix& m);
Rref rref(const Matrix& m);  // fields only
Smith smith_normal_form(const Matrix& m);  // Z only
Matrix kernel_basis(const Matrix& m);
Matrix image_basis(const Matrix& m);
CokernelData cokernel_data(const Matrix& m);
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);
// rows spanning the annihilator of the column space: L * m = 0, L full row rank
Matrix left_kernel(const Matrix& m);
// degreewise split-ness of a single module map between free modules
bool is_split_mono(const Matrix& m);
bool is_split_epi(const Matrix& m);

}  // namespace dgw
