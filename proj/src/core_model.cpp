#include "pseudoadder/core_model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace pseudoadder {

namespace {

void check_pair_width(int n) {
  if (n < 1 || n > kMaxPairWidth) {
    throw std::invalid_argument("operand width must be in [1, " + std::to_string(kMaxPairWidth) +
                                "], got " + std::to_string(n));
  }
}

}  // namespace

InputPair::InputPair(int n, std::uint64_t a, std::uint64_t b) : n_(n), a_(a), b_(b) {
  check_pair_width(n);
  const std::uint64_t limit = std::uint64_t{1} << n;
  if (a >= limit || b >= limit) {
    throw std::invalid_argument("operand out of range for width " + std::to_string(n));
  }
}

int InputPair::a_bit(int k) const { return bit(a_, k, n_); }
int InputPair::b_bit(int k) const { return bit(b_, k, n_); }

std::string to_string(const CarryChain& c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

void validate_chain(const CarryChain& c, int n) {
  if (c.i < 1 || c.i > c.j || c.j > n) {
    throw std::invalid_argument("invalid carry chain " + to_string(c) + " for width " +
                                std::to_string(n));
  }
}

std::size_t chain_count(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2;
}

std::vector<CarryChain> all_chains(int n) {
  std::vector<CarryChain> out;
  out.reserve(chain_count(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) out.push_back({i, j});
  }
  return out;
}

ChainErrorTable::ChainErrorTable(int n) : n_(n) {
  if (n < 1 || n > kMaxTableWidth) {
    throw std::invalid_argument("table width must be in [1, " + std::to_string(kMaxTableWidth) +
                                "], got " + std::to_string(n));
  }
  values_.assign(chain_count(n), BigInt(0));
}

std::size_t ChainErrorTable::index(const CarryChain& c) const {
  validate_chain(c, n_);
  // Rows i = 1..i-1 hold n, n-1, ..., n-i+2 entries.
  const auto i = static_cast<std::size_t>(c.i - 1);
  const auto n = static_cast<std::size_t>(n_);
  return i * n - i * (i - 1) / 2 + static_cast<std::size_t>(c.j - c.i);
}

const BigInt& ChainErrorTable::at(const CarryChain& c) const { return values_[index(c)]; }

void ChainErrorTable::set(const CarryChain& c, BigInt value) {
  const auto idx = index(c);
  if (abs(value) >= pow2(n_ + 1)) {
    throw std::invalid_argument("chain error " + value.str() + " at " + to_string(c) +
                                " exceeds 2^(n+1)");
  }
  values_[idx] = std::move(value);
}

bool ChainErrorTable::all_zero() const {
  for (const auto& v : values_) {
    if (v != 0) return false;
  }
  return true;
}

bool ChainErrorTable::any_negative() const {
  for (const auto& v : values_) {
    if (v < 0) return true;
  }
  return false;
}

std::vector<std::int64_t> ChainErrorTable::to_int64() const {
  if (n_ > kMaxPairWidth) {
    throw std::invalid_argument("table too wide for 64-bit entries");
  }
  std::vector<std::int64_t> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.convert_to<std::int64_t>());
  return out;
}

ExactRational::ExactRational(BigInt numerator, BigInt denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  BigInt g = gcd(abs(numerator), denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (numerator == 0) denominator = 1;
  numerator_ = std::move(numerator);
  denominator_ = std::move(denominator);
}

double ExactRational::to_double() const {
  boost::multiprecision::cpp_rational q(numerator_, denominator_);
  return q.convert_to<double>();
}

std::string ExactRational::to_string() const {
  if (denominator_ == 1) return numerator_.str();
  return numerator_.str() + "/" + denominator_.str();
}

BigInt pow2(int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  BigInt r = 1;
  r <<= exponent;
  return r;
}

BigInt pow4(int exponent) { return pow2(2 * exponent); }

int sign_of(const BigInt& v) { return v.sign(); }

int bit(std::uint64_t x, int k, int n) {
  if (k < 0 || k > n) {
    throw std::invalid_argument("bit position " + std::to_string(k) + " outside [0, " +
                                std::to_string(n) + "]");
  }
  if (k >= 64) return 0;
  return static_cast<int>((x >> k) & 1U);
}

ReferenceSum reference_add(const InputPair& p) {
  const int n = p.width();
  ReferenceSum r;
  r.carries.assign(static_cast<std::size_t>(n) + 1, 0);
  std::uint8_t c = 0;
  for (int k = 0; k <= n; ++k) {
    r.carries[static_cast<std::size_t>(k)] = c;
    const int ak = p.a_bit(k);
    const int bk = p.b_bit(k);
    const auto s = static_cast<std::uint64_t>(ak ^ bk ^ c);
    r.sum |= s << k;
    c = static_cast<std::uint8_t>((ak & bk) | (ak & c) | (bk & c));
  }
  return r;
}

std::vector<std::uint8_t> carries_from_sum(const InputPair& p, std::uint64_t s_prime) {
  const int n = p.width();
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 1; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>(((s_prime >> k) & 1U) ^ p.a_bit(k) ^ p.b_bit(k));
  }
  return c;
}

}  // namespace pseudoadder
