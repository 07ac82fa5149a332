#include "dgw/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace dgw {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

struct FpOps {
  using T = std::int64_t;
  std::int64_t p;
  static bool is_zero(T a) { return a == 0; }
  T add(T a, T b) const { T s = a + b; return s >= p ? s - p : s; }
  T sub(T a, T b) const { T s = a - b; return s < 0 ? s + p : s; }
  T mul(T a, T b) const { return a * b % p; }
  T inv(T a) const { return pow_mod(a, p - 2, p); }
  static T zero() { return 0; }
  static T one() { return 1; }
};

struct QOps {
  using T = Scalar;
  static bool is_zero(const T& a) { return sgn(a) == 0; }
  static T add(const T& a, const T& b) { return a + b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T inv(const T& a) { return 1 / a; }
  static T zero() { return 0; }
  static T one() { return 1; }
};

// Gauss-Jordan in place on a row-major buffer; pivots searched in columns [0, col_limit)
template <class Ops>
std::vector<std::size_t> gauss_jordan(const Ops& ops, std::vector<typename Ops::T>& a, std::size_t rows,
                                      std::size_t cols, std::size_t col_limit) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!Ops::is_zero(a[i * cols + c])) { piv = i; break; }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    T iv = ops.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], iv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      T f = a[i * cols + c];
      if (Ops::is_zero(f)) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (Ops::is_zero(a[r * cols + j])) continue;
        a[i * cols + j] = ops.sub(a[i * cols + j], ops.mul(f, a[r * cols + j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// forward elimination only, for rank
template <class Ops>
std::size_t echelon_rank(const Ops& ops, std::vector<typename Ops::T> a, std::size_t rows, std::size_t cols) {
  using T = typename Ops::T;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!Ops::is_zero(a[i * cols + c])) { piv = i; break; }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    T iv = ops.inv(a[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      T f = a[i * cols + c];
      if (Ops::is_zero(f)) continue;
      f = ops.mul(f, iv);
      for (std::size_t j = c; j < cols; ++j) {
        if (Ops::is_zero(a[r * cols + j])) continue;
        a[i * cols + j] = ops.sub(a[i * cols + j], ops.mul(f, a[r * cols + j]));
      }
    }
    ++r;
  }
  return r;
}

void require_field(const Matrix& m, const char* what) {
  if (!m.ring().is_field()) throw Error(std::string(what) + ": requires a field");
}

Matrix from_buffer_fp(Ring ring, std::size_t rows, std::size_t cols, std::vector<std::int64_t> buf) {
  Matrix m(ring, rows, cols);
  m.fp_data() = std::move(buf);
  return m;
}

Matrix from_buffer_q(Ring ring, std::size_t rows, std::size_t cols, std::vector<Scalar> buf) {
  Matrix m(ring, rows, cols);
  m.q_data() = std::move(buf);
  return m;
}

Rref rref_impl(const Matrix& m, std::size_t col_limit) {
  Rref out;
  if (m.ring().is_fp()) {
    auto buf = m.fp_data();
    out.pivots = gauss_jordan(FpOps{m.ring().characteristic()}, buf, m.rows(), m.cols(), col_limit);
    out.reduced = from_buffer_fp(m.ring(), m.rows(), m.cols(), std::move(buf));
  } else {
    auto buf = m.q_data();
    out.pivots = gauss_jordan(QOps{}, buf, m.rows(), m.cols(), col_limit);
    out.reduced = from_buffer_q(m.ring(), m.rows(), m.cols(), std::move(buf));
  }
  return out;
}

// ---- integer Smith form ----

using Z = mpz_class;
using ZMat = std::vector<std::vector<Z>>;

ZMat zidentity(std::size_t n) {
  ZMat m(n, std::vector<Z>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct SnfWork {
  ZMat a, u, uinv, v, vinv;
  std::size_t rows, cols;

  // row_i += k * row_j
  void row_add(std::size_t i, std::size_t j, const Z& k) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += k * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) u[i][c] += k * u[j][c];
    for (std::size_t r = 0; r < rows; ++r) uinv[r][j] -= k * uinv[r][i];
  }
  void row_swap(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (std::size_t r = 0; r < rows; ++r) std::swap(uinv[r][i], uinv[r][j]);
  }
  void row_neg(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (std::size_t r = 0; r < rows; ++r) uinv[r][i] = -uinv[r][i];
  }
  // col_i += k * col_j
  void col_add(std::size_t i, std::size_t j, const Z& k) {
    for (std::size_t r = 0; r < rows; ++r) a[r][i] += k * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) v[r][i] += k * v[r][j];
    for (std::size_t c = 0; c < cols; ++c) vinv[j][c] -= k * vinv[i][c];
  }
  void col_swap(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(v[r][i], v[r][j]);
    std::swap(vinv[i], vinv[j]);
  }
};

Matrix zmat_to_matrix(const ZMat& z, std::size_t rows, std::size_t cols) {
  Matrix m(Ring::integers(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.q_data()[i * cols + j] = Scalar(z[i][j]);
  return m;
}

}  // namespace

// ---- Ring ----

Ring Ring::fp(std::int64_t p) {
  if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  if (p > 2147483647LL) throw InputError("prime too large: " + std::to_string(p));
  return Ring(Kind::Fp, p);
}

Ring Ring::parse(const std::string& s) {
  if (s == "Q") return rationals();
  if (s == "Z") return integers();
  std::string digits;
  if (s.rfind("Fp:", 0) == 0) digits = s.substr(3);
  else if (s.size() > 1 && s[0] == 'F') digits = s.substr(1);
  else throw InputError("unknown ring: " + s);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw InputError("unknown ring: " + s);
  return fp(std::stoll(digits));
}

Scalar Ring::normalize(const Scalar& x) const {
  switch (kind_) {
    case Kind::Q:
      return x;
    case Kind::Z:
      if (x.get_den() != 1) throw InputError("non-integer entry over Z: " + scalar_to_string(x));
      return x;
    case Kind::Fp:
      return Scalar(to_fp(x));
  }
  return x;
}

std::int64_t Ring::to_fp(const Scalar& x) const {
  mpz_class pz(static_cast<long>(p_));
  mpz_class num = x.get_num() % pz;
  mpz_class den = x.get_den() % pz;
  if (num < 0) num += pz;
  if (den == 0) throw InputError("denominator divisible by " + std::to_string(p_));
  std::int64_t n = num.get_si(), d = den.get_si();
  return n * pow_mod(d, p_ - 2, p_) % p_;
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Q: return "Q";
    case Kind::Z: return "Z";
    case Kind::Fp: return "Fp:" + std::to_string(p_);
  }
  return "?";
}

std::string scalar_to_string(const Scalar& x) { return x.get_str(); }

Scalar scalar_from_string(const std::string& s) {
  Scalar x;
  if (s.empty() || x.set_str(s, 10) != 0) throw InputError("bad scalar: '" + s + "'");
  x.canonicalize();
  return x;
}

// ---- Matrix ----

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols) : ring_(ring), rows_(rows), cols_(cols) {
  if (ring_.is_fp()) fp_.assign(rows * cols, 0);
  else q_.assign(rows * cols, Scalar(0));
}

Matrix Matrix::identity(Ring ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Matrix m(ring, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_ints(Ring ring, const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Scalar>> s;
  for (auto& r : rows) {
    s.emplace_back();
    for (long v : r) s.back().emplace_back(v);
  }
  return from_rows(ring, s);
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (ring_.is_fp()) return Scalar(static_cast<long>(fp_[r * cols_ + c]));
  return q_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (ring_.is_fp()) fp_[r * cols_ + c] = ring_.to_fp(v);
  else q_[r * cols_ + c] = ring_.normalize(v);
}

void Matrix::add_to(std::size_t r, std::size_t c, const Scalar& v) {
  if (ring_.is_fp()) fp_add(r, c, ring_.to_fp(v));
  else q_[r * cols_ + c] += ring_.normalize(v);
}

void Matrix::fp_add(std::size_t r, std::size_t c, std::int64_t v) {
  auto& x = fp_[r * cols_ + c];
  std::int64_t p = ring_.characteristic();
  v %= p;
  if (v < 0) v += p;
  x += v;
  if (x >= p) x -= p;
}

bool Matrix::is_zero_at(std::size_t r, std::size_t c) const {
  if (ring_.is_fp()) return fp_[r * cols_ + c] == 0;
  return sgn(q_[r * cols_ + c]) == 0;
}

bool Matrix::is_zero() const {
  if (ring_.is_fp()) return std::all_of(fp_.begin(), fp_.end(), [](auto x) { return x == 0; });
  return std::all_of(q_.begin(), q_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && fp_ == o.fp_ && q_ == o.q_;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) {
    throw InputError("matrix product shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                     " * " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  }
  if (!(ring_ == o.ring_)) throw InputError("matrix product ring mismatch");
  Matrix out(ring_, rows_, o.cols_);
  if (ring_.is_fp()) {
    const std::int64_t p = ring_.characteristic();
    // accumulate in unsigned 128-free fashion: reduce every few steps
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint64_t a = static_cast<std::uint64_t>(fp_[i * cols_ + k]);
        if (a == 0) continue;
        const std::int64_t* row = &o.fp_[k * o.cols_];
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (row[j] == 0) continue;
          acc[j] = (acc[j] + a * static_cast<std::uint64_t>(row[j])) % static_cast<std::uint64_t>(p);
        }
      }
      for (std::size_t j = 0; j < o.cols_; ++j) out.fp_[i * o.cols_ + j] = static_cast<std::int64_t>(acc[j]);
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = q_[i * cols_ + k];
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Scalar& b = o.q_[k * o.cols_ + j];
          if (sgn(b) == 0) continue;
          out.q_[i * o.cols_ + j] += a * b;
        }
      }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(ring_ == o.ring_)) throw InputError("matrix sum shape mismatch");
  Matrix out = *this;
  if (ring_.is_fp()) {
    std::int64_t p = ring_.characteristic();
    for (std::size_t i = 0; i < fp_.size(); ++i) {
      auto s = fp_[i] + o.fp_[i];
      out.fp_[i] = s >= p ? s - p : s;
    }
  } else {
    for (std::size_t i = 0; i < q_.size(); ++i) out.q_[i] += o.q_[i];
  }
  return out;
}

Matrix Matrix::operator-() const { return scaled(-1); }

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out = *this;
  if (ring_.is_fp()) {
    std::int64_t k = ring_.to_fp(s), p = ring_.characteristic();
    for (auto& x : out.fp_) x = x * k % p;
  } else {
    Scalar k = ring_.normalize(s);
    for (auto& x : out.q_) x *= k;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (ring_.is_fp()) out.fp_[j * rows_ + i] = fp_[i * cols_ + j];
      else out.q_[j * rows_ + i] = q_[i * cols_ + j];
    }
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("block out of range");
  Matrix out(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      if (ring_.is_fp()) out.fp_[i * nc + j] = fp_[(r0 + i) * cols_ + c0 + j];
      else out.q_[i * nc + j] = q_[(r0 + i) * cols_ + c0 + j];
    }
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InputError("set_block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (ring_.is_fp()) fp_[(r0 + i) * cols_ + c0 + j] = b.fp_[i * b.cols_ + j];
      else q_[(r0 + i) * cols_ + c0 + j] = b.q_[i * b.cols_ + j];
    }
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b, const Scalar& coeff) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw InputError("add_block out of range");
  if (ring_.is_fp()) {
    std::int64_t k = ring_.to_fp(coeff), p = ring_.characteristic();
    if (k == 0) return;
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        auto v = b.fp_[i * b.cols_ + j];
        if (v == 0) continue;
        auto& x = fp_[(r0 + i) * cols_ + c0 + j];
        x = (x + v * k) % p;
      }
  } else {
    Scalar k = ring_.normalize(coeff);
    if (sgn(k) == 0) return;
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& v = b.q_[i * b.cols_ + j];
        if (sgn(v) == 0) continue;
        q_[(r0 + i) * cols_ + c0 + j] += v * k;
      }
  }
}

Matrix Matrix::hcat(const Matrix& o) const {
  if (rows_ != o.rows_) throw InputError("hcat row mismatch");
  Matrix out(ring_, rows_, cols_ + o.cols_);
  out.set_block(0, 0, *this);
  out.set_block(0, cols_, o);
  return out;
}

Matrix Matrix::vcat(const Matrix& o) const {
  if (cols_ != o.cols_) throw InputError("vcat column mismatch");
  Matrix out(ring_, rows_ + o.rows_, cols_);
  out.set_block(0, 0, *this);
  out.set_block(rows_, 0, o);
  return out;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cs) const {
  Matrix out(ring_, rows_, cs.size());
  for (std::size_t j = 0; j < cs.size(); ++j) out.set_block(0, j, column(cs[j]));
  return out;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(scalar_to_string(at(i, j)));
  return out;
}

std::string Matrix::debug() const {
  std::ostringstream os;
  os << ring_.name() << " " << rows_ << "x" << cols_ << "\n";
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << scalar_to_string(at(i, j));
    os << "\n";
  }
  return os.str();
}

// ---- solvers ----

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  if (m.ring().is_fp()) return echelon_rank(FpOps{m.ring().characteristic()}, m.fp_data(), m.rows(), m.cols());
  return echelon_rank(QOps{}, m.q_data(), m.rows(), m.cols());
}

Rref rref(const Matrix& m) {
  require_field(m, "rref");
  return rref_impl(m, m.cols());
}

Smith smith_normal_form(const Matrix& m) {
  if (m.ring().kind() != Ring::Kind::Z) throw Error("smith_normal_form: requires Z");
  SnfWork w;
  w.rows = m.rows();
  w.cols = m.cols();
  w.a.assign(w.rows, std::vector<Z>(w.cols));
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) w.a[i][j] = m.q_data()[i * w.cols + j].get_num();
  w.u = zidentity(w.rows);
  w.uinv = zidentity(w.rows);
  w.v = zidentity(w.cols);
  w.vinv = zidentity(w.cols);

  std::size_t t = 0;
  const std::size_t lim = std::min(w.rows, w.cols);
  while (t < lim) {
    // smallest nonzero entry of the trailing block
    std::size_t bi = w.rows, bj = w.cols;
    for (std::size_t i = t; i < w.rows; ++i)
      for (std::size_t j = t; j < w.cols; ++j)
        if (w.a[i][j] != 0 && (bi == w.rows || abs(w.a[i][j]) < abs(w.a[bi][bj]))) { bi = i; bj = j; }
    if (bi == w.rows) break;
    if (bi != t) w.row_swap(t, bi);
    if (bj != t) w.col_swap(t, bj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < w.rows; ++i) {
        if (w.a[i][t] == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
        w.row_add(i, t, -q);
        if (w.a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < w.cols; ++j) {
        if (w.a[t][j] == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
        w.col_add(j, t, -q);
        if (w.a[t][j] != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t + 1; i < w.rows; ++i)
          if (w.a[i][t] != 0 && abs(w.a[i][t]) < abs(w.a[bi2][bj2])) { bi2 = i; bj2 = t; }
        for (std::size_t j = t + 1; j < w.cols; ++j)
          if (w.a[t][j] != 0 && abs(w.a[t][j]) < abs(w.a[bi2][bj2])) { bi2 = t; bj2 = j; }
        if (bi2 != t) w.row_swap(t, bi2);
        if (bj2 != t) w.col_swap(t, bj2);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < w.rows && divides; ++i)
        for (std::size_t j = t + 1; j < w.cols; ++j)
          if (w.a[i][j] % w.a[t][t] != 0) {
            w.row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (w.a[t][t] < 0) w.row_neg(t);
    ++t;
  }

  Smith s;
  s.U = zmat_to_matrix(w.u, w.rows, w.rows);
  s.U_inv = zmat_to_matrix(w.uinv, w.rows, w.rows);
  s.V = zmat_to_matrix(w.v, w.cols, w.cols);
  s.V_inv = zmat_to_matrix(w.vinv, w.cols, w.cols);
  s.D = zmat_to_matrix(w.a, w.rows, w.cols);
  for (std::size_t i = 0; i < lim; ++i)
    if (w.a[i][i] != 0) s.divisors.emplace_back(w.a[i][i]);
  return s;
}

Matrix kernel_basis(const Matrix& m) {
  if (!m.ring().is_field()) {
    Smith s = smith_normal_form(m);
    std::vector<std::size_t> cs;
    for (std::size_t j = s.divisors.size(); j < m.cols(); ++j) cs.push_back(j);
    return s.V.select_columns(cs);
  }
  Rref r = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : r.pivots) is_piv[c] = true;
  std::size_t nfree = m.cols() - r.pivots.size();
  Matrix k(m.ring(), m.cols(), nfree);
  std::size_t col = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    k.set(f, col, 1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      if (r.reduced.is_zero_at(i, f)) continue;
      k.set(r.pivots[i], col, -r.reduced.at(i, f));
    }
    ++col;
  }
  return k;
}

Matrix image_basis(const Matrix& m) {
  if (!m.ring().is_field()) {
    Smith s = smith_normal_form(m);
    Matrix out(m.ring(), m.rows(), s.divisors.size());
    for (std::size_t j = 0; j < s.divisors.size(); ++j) out.set_block(0, j, s.U_inv.column(j).scaled(s.divisors[j]));
    return out;
  }
  Rref r = rref(m);
  return m.select_columns(r.pivots);
}

CokernelData cokernel_data(const Matrix& m) {
  CokernelData out;
  if (m.ring().is_field()) {
    out.free_rank = m.rows() - rank(m);
    return out;
  }
  Smith s = smith_normal_form(m);
  out.free_rank = m.rows() - s.divisors.size();
  for (auto& d : s.divisors)
    if (d != 1) out.torsion.push_back(d);
  return out;
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InputError("solve_linear: shape mismatch");
  if (!(a.ring() == b.ring())) throw InputError("solve_linear: ring mismatch");
  const std::size_t n = a.cols(), k = b.cols();
  if (a.ring().is_field()) {
    Matrix aug = a.hcat(b);
    Rref r = rref_impl(aug, n);
    const std::size_t rk = r.pivots.size();
    for (std::size_t i = rk; i < a.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!r.reduced.is_zero_at(i, n + j)) return std::nullopt;
    Matrix x(a.ring(), n, k);
    for (std::size_t i = 0; i < rk; ++i)
      for (std::size_t j = 0; j < k; ++j) x.set(r.pivots[i], j, r.reduced.at(i, n + j));
    return x;
  }
  Smith s = smith_normal_form(a);
  Matrix c = s.U * b;
  Matrix y(a.ring(), n, k);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Scalar cij = c.at(i, j);
      if (i < s.divisors.size()) {
        Scalar q = cij / s.divisors[i];
        if (q.get_den() != 1) return std::nullopt;
        y.set(i, j, q);
      } else if (sgn(cij) != 0) {
        return std::nullopt;
      }
    }
  return s.V * y;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (m.ring().is_field()) {
    if (rank(m) != m.rows()) return std::nullopt;
    return solve_linear(m, Matrix::identity(m.ring(), m.rows()));
  }
  Smith s = smith_normal_form(m);
  if (s.divisors.size() != m.rows()) return std::nullopt;
  for (auto& d : s.divisors)
    if (d != 1) return std::nullopt;
  return s.V * s.U;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Scalar> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (sgn(a[i * n + c]) != 0) { piv = i; break; }
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Scalar f = a[i * n + c] / a[c * n + c];
      if (sgn(f) == 0) continue;
      for (std::size_t j = c; j < n; ++j) a[i * n + j] -= f * a[c * n + j];
    }
  }
  return m.ring().normalize(det);
}

Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

bool is_split_mono(const Matrix& m) {
  if (m.ring().is_field()) return rank(m) == m.cols();
  Smith s = smith_normal_form(m);
  if (s.divisors.size() != m.cols()) return false;
  return std::all_of(s.divisors.begin(), s.divisors.end(), [](const Scalar& d) { return d == 1; });
}

bool is_split_epi(const Matrix& m) {
  if (m.ring().is_field()) return rank(m) == m.rows();
  Smith s = smith_normal_form(m);
  if (s.divisors.size() != m.rows()) return false;
  return std::all_of(s.divisors.begin(), s.divisors.end(), [](const Scalar& d) { return d == 1; });
}

}  // namespace dgw
