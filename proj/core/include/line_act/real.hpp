#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>
#include <mpfr.h>

namespace lineact {

using Precision = unsigned;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kPrecisionCeiling = 4096;

/// Mantissa bits used for tracked results on the calling thread.
Precision working_precision();

/// Sets the working precision for the current thread until destroyed.
class PrecisionScope {
 public:
  explicit PrecisionScope(Precision bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Precision saved_;
};

/// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(Precision bits = working_precision());
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_rational(const mpq_class& q, mpfr_rnd_t rnd, Precision bits = working_precision());
  static BigFloat from_long(long v, Precision bits = working_precision());

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  Precision precision() const { return static_cast<Precision>(mpfr_get_prec(value_)); }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Exact rational value; the number must be finite.
  mpq_class to_rational() const;

  int compare(const BigFloat& other) const { return mpfr_cmp(value_, other.value_); }

 private:
  mpfr_t value_;
  bool live_ = false;
};

/// A real number that is either an exact rational or an enclosure [lo, hi]
/// whose endpoints were produced with outward rounding.
///
/// Exact values stay exact through +, -, *, / and integer powers. Any operation
/// that leaves the rationals yields a tracked enclosure at the thread's working
/// precision. Tracked values report a midpoint and an absolute error bound.
class RealNum {
 public:
  struct Bounds {
    BigFloat lo;
    BigFloat hi;
  };

  RealNum() : value_(mpq_class(0)) {}
  RealNum(long v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  RealNum(int v) : value_(mpq_class(v)) {}   // NOLINT(google-explicit-constructor)
  explicit RealNum(mpq_class q);

  static RealNum rational(long num, long den);
  static RealNum from_bounds(BigFloat lo, BigFloat hi);
  static RealNum point(const BigFloat& x);

  /// Accepts integers, `p/q`, decimals with optional exponent, named constants
  /// (`sqrt2`, `sqrt3`, `pi`, `e`), and `value±err` / `value+-err` literals.
  static RealNum parse(std::string_view text, Precision bits = working_precision());
  static std::optional<RealNum> named_constant(std::string_view name, Precision bits);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  const Bounds& bounds() const { return std::get<Bounds>(value_); }

  /// Lower and upper bounds rounded outward to `bits`.
  BigFloat lower(Precision bits = working_precision()) const;
  BigFloat upper(Precision bits = working_precision()) const;

  BigFloat midpoint() const;
  /// Absolute error bound (zero for exact values), rounded up.
  BigFloat error() const;
  double error_double() const;
  double to_double() const;

  /// Exact rational approximation: the value itself or the tracked midpoint.
  mpq_class midpoint_rational() const;

  bool is_point() const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool is_exact_zero() const { return is_exact() && sgn(rational()) == 0; }

  /// `p/q` for exact values, `decimal±err` for tracked ones.
  std::string to_string() const;

  friend bool identical(const RealNum& a, const RealNum& b);

 private:
  explicit RealNum(Bounds b) : value_(std::move(b)) {}

  std::variant<mpq_class, Bounds> value_;
};

RealNum operator+(const RealNum& a, const RealNum& b);
RealNum operator-(const RealNum& a, const RealNum& b);
RealNum operator*(const RealNum& a, const RealNum& b);
RealNum operator/(const RealNum& a, const RealNum& b);
RealNum operator-(const RealNum& a);

RealNum abs(const RealNum& x);
RealNum pow_int(const RealNum& x, unsigned long e);
/// Real p-th root; odd p accepts any sign, even p requires x >= 0.
RealNum root(const RealNum& x, unsigned long p);
/// base^exponent for base >= 0 and exponent > 0; exact when the exponent is a
/// small integer or a unit fraction with a perfect-power base.
RealNum pow_real(const RealNum& base, const RealNum& exponent);
RealNum exp2(const RealNum& x);

/// Smallest enclosure of both arguments' lower/upper bounds.
RealNum hull(const RealNum& a, const RealNum& b);
/// Enclosure spanning a.lower to b.upper (requires a <= b in value).
RealNum span(const RealNum& low, const RealNum& high);

enum class Order { Less, Equal, Greater, Unknown };

Order compare(const RealNum& a, const RealNum& b);
bool certainly_less(const RealNum& a, const RealNum& b);
bool certainly_less_equal(const RealNum& a, const RealNum& b);
/// True when |a - b| <= tol holds for every value in the enclosures.
bool certainly_within(const RealNum& a, const RealNum& b, const RealNum& tol);
/// Upper bound on |a - b|.
RealNum abs_diff_bound(const RealNum& a, const RealNum& b);

/// floor(x) when every value of x lies in one cell [n, n+1].
std::optional<mpz_class> common_floor(const RealNum& x);

}  // namespace lineact
