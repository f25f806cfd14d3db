#ifndef BELLTOMO_MULTIINDEX_HPP
#define BELLTOMO_MULTIINDEX_HPP

// Binary multi-index codecs and the sign matrices of the correlation polytope:
// the Hadamard matrix H_{2^n}, the coefficient matrix E_n mapping joint
// probabilities to correlation functions, and the block matrix A_n with
// E_n = H_{2^n} A_n after a column rearrangement.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "belltomo/error.hpp"

namespace belltomo {

/// Largest party count for which the dense matrices are built (E_6 is 64 x 4096).
inline constexpr int kMaxMatrixParties = 6;
/// Largest digit count the 64-bit linear codecs accept.
inline constexpr int kMaxIndexDigits = 62;

/// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  DenseMatrix transpose() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product: inner dimensions differ");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T v = a(r, k);
        if (v == T{}) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += v * b(k, c);
      }
    return out;
  }

  friend DenseMatrix operator-(const DenseMatrix& a) {
    DenseMatrix out = a;
    for (auto& v : out.data_) v = -v;
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = DenseMatrix<int>;

/// True when every entry is exactly +1 or -1.
inline bool is_sign_matrix(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 1 && m(r, c) != -1) return false;
  return true;
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

template <class T>
DenseMatrix<T> kronecker(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

/// Kronecker product of two-component vectors, first factor outermost.
template <class T>
std::vector<T> kronecker_pairs(std::span<const T> pairs) {
  std::vector<T> out{T{1}};
  for (std::size_t k = 0; k + 1 < pairs.size(); k += 2) {
    std::vector<T> next;
    next.reserve(out.size() * 2);
    for (const T& v : out) {
      next.push_back(v * pairs[k]);
      next.push_back(v * pairs[k + 1]);
    }
    out = std::move(next);
  }
  return out;
}

namespace detail {

inline void check_matrix_parties(int n, int min_n, const char* what) {
  if (n < min_n) throw InvalidInput(std::string(what) + ": n must be >= " + std::to_string(min_n));
  if (n > kMaxMatrixParties)
    throw CapacityError(std::string(what) + ": n > " + std::to_string(kMaxMatrixParties) +
                        " is not supported");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Setting indices: digits j_k in {1, 2}, linear j = (j_1-1)2^{n-1} + ... + j_n.
// ---------------------------------------------------------------------------

inline std::uint64_t encode_setting(std::span<const int> digits) {
  if (digits.empty()) throw InvalidInput("encode_setting: at least one digit required");
  if (digits.size() > static_cast<std::size_t>(kMaxIndexDigits))
    throw CapacityError("encode_setting: too many digits");
  std::uint64_t linear = 0;
  for (int d : digits) {
    if (d != 1 && d != 2) throw InvalidInput("encode_setting: digit outside {1,2}");
    linear = (linear << 1) | static_cast<std::uint64_t>(d - 1);
  }
  return linear + 1;
}

inline std::vector<int> decode_setting(std::uint64_t linear, int n) {
  if (n < 1) throw InvalidInput("decode_setting: n must be >= 1");
  if (n > kMaxIndexDigits) throw CapacityError("decode_setting: too many digits");
  const std::uint64_t count = std::uint64_t{1} << n;
  if (linear < 1 || linear > count) throw InvalidInput("decode_setting: linear index out of range");
  std::vector<int> digits(static_cast<std::size_t>(n));
  std::uint64_t bits = linear - 1;
  for (int k = n - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(bits & 1u) + 1;
    bits >>= 1;
  }
  return digits;
}

// ---------------------------------------------------------------------------
// Outcome indices: 2n values i_k(j_k) = +-1 in the order
// (i_1(1), i_1(2), i_2(1), ..., i_n(1), i_n(2)); +1 is digit 1, -1 digit 2.
// ---------------------------------------------------------------------------

inline int outcome_digit(int value) {
  if (value == 1) return 1;
  if (value == -1) return 2;
  throw InvalidInput("outcome value must be +1 or -1");
}

inline int outcome_value(int digit) { return digit == 1 ? 1 : -1; }

inline std::uint64_t encode_outcome(std::span<const int> values) {
  if (values.empty() || values.size() % 2 != 0)
    throw InvalidInput("encode_outcome: expected 2n values");
  std::vector<int> digits;
  digits.reserve(values.size());
  for (int v : values) digits.push_back(outcome_digit(v));
  return encode_setting(digits);
}

inline std::vector<int> decode_outcome(std::uint64_t linear, int n) {
  if (n < 1) throw InvalidInput("decode_outcome: n must be >= 1");
  std::vector<int> digits = decode_setting(linear, 2 * n);
  for (int& d : digits) d = outcome_value(d);
  return digits;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// H_{2^n} = H_2 (x) ... (x) H_2, with H_1 = [[1]].
inline IntMatrix hadamard(int n) {
  if (n < 0) throw InvalidInput("hadamard: n must be >= 0");
  detail::check_matrix_parties(n, 0, "hadamard");
  IntMatrix h2(2, 2, 1);
  h2(1, 1) = -1;
  IntMatrix out(1, 1, 1);
  for (int k = 0; k < n; ++k) out = kronecker(out, h2);
  return out;
}

/// E_n: entry (j, i) = i_1(j_1) ... i_n(j_n), rows in setting order and
/// columns in outcome order (both 0-based here).
inline IntMatrix emat(int n) {
  detail::check_matrix_parties(n, 1, "emat");
  const std::size_t rows = std::size_t{1} << n;
  const std::size_t cols = std::size_t{1} << (2 * n);
  IntMatrix out(rows, cols);
  for (std::size_t i = 0; i < cols; ++i) {
    const std::vector<int> outcome = decode_outcome(i + 1, n);
    for (std::size_t j = 0; j < rows; ++j) {
      const std::vector<int> setting = decode_setting(j + 1, n);
      int prod = 1;
      for (int k = 0; k < n; ++k)
        prod *= outcome[static_cast<std::size_t>(2 * k + setting[static_cast<std::size_t>(k)] - 1)];
      out(j, i) = prod;
    }
  }
  return out;
}

/// A_n = (I, -I, ..., I, -I) with 2^n identity blocks of size 2^n.
inline IntMatrix amat(int n) {
  detail::check_matrix_parties(n, 1, "amat");
  const std::size_t dim = std::size_t{1} << n;
  IntMatrix out(dim, dim * dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const int sign = (b % 2 == 0) ? 1 : -1;
    for (std::size_t r = 0; r < dim; ++r) out(r, b * dim + r) = sign;
  }
  return out;
}

inline IntMatrix permute_columns(const IntMatrix& m, std::span<const std::size_t> perm) {
  if (perm.size() != m.cols()) throw InvalidInput("permute_columns: size mismatch");
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t c = 0; c < perm.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m(r, perm[c]);
  return out;
}

/// Column rearrangement of E_n into (H, -H, ..., H, -H).
///
/// Entry c of the result is the 0-based E_n column placed at position c.
/// Each E_n column is the Kronecker product of the pairs (i_k(1), i_k(2)) =
/// i_k(1) * (1, i_k(1) i_k(2)), i.e. sign * (H column r) with sign = prod i_k(1)
/// and r given by the pattern of i_k(1) i_k(2). Every (r, sign) pair occurs
/// 2^(n-1) times; the m-th occurrence in outcome order goes to block 2m (sign +)
/// or 2m+1 (sign -). The result is verified entry-wise before returning.
inline std::vector<std::size_t> block_permutation(int n) {
  detail::check_matrix_parties(n, 1, "block_permutation");
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t cols = dim * dim;
  std::vector<std::size_t> perm(cols, cols);
  std::vector<std::size_t> next_plus(dim, 0), next_minus(dim, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    const std::vector<int> outcome = decode_outcome(i + 1, n);
    int sign = 1;
    std::size_t r = 0;
    for (int k = 0; k < n; ++k) {
      const int first = outcome[static_cast<std::size_t>(2 * k)];
      const int second = outcome[static_cast<std::size_t>(2 * k + 1)];
      sign *= first;
      r = (r << 1) | (first * second == 1 ? 0u : 1u);
    }
    std::size_t block;
    if (sign == 1) {
      block = 2 * next_plus[r]++;
    } else {
      block = 2 * next_minus[r]++ + 1;
    }
    if (block >= dim || perm[block * dim + r] != cols)
      throw ConsistencyError("block_permutation: column multiplicities do not match the block form");
    perm[block * dim + r] = i;
  }

  const IntMatrix arranged = permute_columns(emat(n), perm);
  const IntMatrix h = hadamard(n);
  for (std::size_t b = 0; b < dim; ++b) {
    const int sign = (b % 2 == 0) ? 1 : -1;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (arranged(r, b * dim + c) != sign * h(r, c))
          throw ConsistencyError("block_permutation: arranged E_n differs from (H, -H, ...)");
  }
  return perm;
}

}  // namespace belltomo

#endif  // BELLTOMO_MULTIINDEX_HPP
