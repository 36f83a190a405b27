#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pseudoadder {

using BigInt = boost::multiprecision::cpp_int;

/// Widest operand for which pair-level operations (simulation, enumeration,
/// per-pair error) are supported: the (n+1)-bit sum and the signed error must
/// fit in 64-bit machine words.
inline constexpr int kMaxPairWidth = 62;

/// Widest adder the counting and statistics paths accept.
inline constexpr int kMaxTableWidth = 256;

/// Raised when an operation is called outside its documented precondition
/// (as opposed to a malformed argument, which raises std::invalid_argument).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Two n-bit operands. Bit n of both is implicitly 0, so every value has
/// n+1 meaningful positions 0..n.
class InputPair {
 public:
  InputPair(int n, std::uint64_t a, std::uint64_t b);

  int width() const { return n_; }
  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }

  int a_bit(int k) const;
  int b_bit(int k) const;

  InputPair swapped() const { return InputPair(n_, b_, a_); }

  friend bool operator==(const InputPair&, const InputPair&) = default;

 private:
  int n_;
  std::uint64_t a_;
  std::uint64_t b_;
};

/// The carry chain (i, j): generate at i-1, propagate at i..j-1, equal bits
/// at j. Positions satisfy 1 <= i <= j <= n.
struct CarryChain {
  int i = 1;
  int j = 1;

  friend auto operator<=>(const CarryChain&, const CarryChain&) = default;
};

std::string to_string(const CarryChain& c);

/// Throws std::invalid_argument unless 1 <= i <= j <= n.
void validate_chain(const CarryChain& c, int n);

/// Number of chains for width n, i.e. n(n+1)/2.
std::size_t chain_count(int n);

/// All chains of width n in lexicographic (i, j) order.
std::vector<CarryChain> all_chains(int n);

/// Signed chain errors EC(i, j) = s - s' for every chain of a width-n adder.
/// Entries default to zero.
class ChainErrorTable {
 public:
  explicit ChainErrorTable(int n);

  int width() const { return n_; }

  const BigInt& at(const CarryChain& c) const;
  const BigInt& at(int i, int j) const { return at(CarryChain{i, j}); }

  /// Throws std::invalid_argument when |value| >= 2^(n+1).
  void set(const CarryChain& c, BigInt value);

  bool all_zero() const;
  bool any_negative() const;

  /// Entries as 64-bit integers; requires n <= kMaxPairWidth.
  std::vector<std::int64_t> to_int64() const;

  /// Dense index of a chain in [0, chain_count(n)).
  std::size_t index(const CarryChain& c) const;

  friend bool operator==(const ChainErrorTable&, const ChainErrorTable&) = default;

 private:
  int n_;
  std::vector<BigInt> values_;
};

/// Exact rational in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(BigInt numerator, BigInt denominator);

  const BigInt& numerator() const { return numerator_; }
  const BigInt& denominator() const { return denominator_; }

  double to_double() const;
  /// "num/den", or just "num" when the denominator is 1.
  std::string to_string() const;

  friend bool operator==(const ExactRational&, const ExactRational&) = default;

 private:
  BigInt numerator_ = 0;
  BigInt denominator_ = 1;
};

BigInt pow2(int exponent);
BigInt pow4(int exponent);

/// Number of operand pairs of width n, 4^n.
inline BigInt pair_space(int n) { return pow4(n); }

int sign_of(const BigInt& v);

/// Bit k of x for a width-n operand. Position n is the implicit zero bit.
/// Throws std::invalid_argument unless 0 <= k <= n.
int bit(std::uint64_t x, int k, int n);

struct ReferenceSum {
  std::uint64_t sum = 0;
  /// carries[k] is c_k for k = 0..n; carries[0] = 0.
  std::vector<std::uint8_t> carries;
};

/// Ripple evaluation of the majority carry recurrence with c_0 = 0.
ReferenceSum reference_add(const InputPair& p);

/// c'_k = s'_k xor a_k xor b_k for k = 1..n, c'_0 = 0.
std::vector<std::uint8_t> carries_from_sum(const InputPair& p, std::uint64_t s_prime);

}  // namespace pseudoadder
